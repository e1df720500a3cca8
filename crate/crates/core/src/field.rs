//! Arithmetic of the odd finite field 𝔽_q, q = p^k.
//!
//! Elements are coefficient vectors of length k over ℤ/p (polynomial basis
//! modulo a fixed monic irreducible).  Construction fixes, deterministically:
//! the modulus (first irreducible in index order), a generator of 𝔽_q^*
//! (first element of full multiplicative order), a discrete-log table, and an
//! absolute-trace table.  Multiplicative characters χ_m and the additive
//! character ψ are evaluated through these tables; χ_m(a) = ζ_{q−1}^{m·ind(a)}
//! and ψ(a) = ζ_p^{Tr(a)} where Tr is the trace down to the prime field.
//!
//! Even characteristic is rejected outright: the witness constructions need a
//! non-square, and 𝔽_q^* has odd order when q is even.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Default cap on q for directly constructed fields.  Extension towers used
/// by the restriction explorer pass an explicit larger bound.
pub const DEFAULT_FIELD_BOUND: u64 = 49;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    EvenCharacteristic,
    NotPrime(u64),
    ZeroDegree,
    BoundExceeded { q: u64, bound: u64 },
    /// χ is only defined on 𝔽_q^*; sums over the multiplicative group must
    /// skip zero before evaluating.
    CharAtZero,
    DivisionByZero,
    /// No embedding exists (different characteristic or degree not dividing).
    NoEmbedding { base: u64, ext: u64 },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::EvenCharacteristic => write!(f, "characteristic 2 is not supported"),
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::ZeroDegree => write!(f, "extension degree must be at least 1"),
            FieldError::BoundExceeded { q, bound } => {
                write!(f, "field size {q} exceeds the configured bound {bound}")
            }
            FieldError::CharAtZero => write!(f, "multiplicative character evaluated at 0"),
            FieldError::DivisionByZero => write!(f, "division by zero field element"),
            FieldError::NoEmbedding { base, ext } => {
                write!(f, "no field embedding F_{base} -> F_{ext}")
            }
        }
    }
}

/// Immutable description of 𝔽_q with its precomputed tables.  Shared by
/// reference; all element operations are pure.
pub struct FieldSpec {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus, low-to-high coefficients, length k+1.  For k = 1 this
    /// is the placeholder polynomial x, which never participates in
    /// reduction (products of constants need none).
    modulus: Vec<u64>,
    generator: Vec<u64>,
    /// dlog[index(a)] = j with generator^j = a; u32::MAX at index 0.
    dlog: Vec<u32>,
    /// powers[j] = index(generator^j) for j in 0..q-1.
    powers: Vec<u64>,
    /// Absolute trace to ℤ/p, indexed by element index.
    trace: Vec<u64>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec(q={}={}^{})", self.q, self.p, self.k)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// Dense polynomial helpers over ℤ/p (low-to-high coefficient vectors)
// ---------------------------------------------------------------------------

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of a modulo the monic polynomial m.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
    let deg_m = m.len() - 1;
    let mut r: Vec<u64> = a.to_vec();
    while r.len() > deg_m {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - deg_m;
        if lead != 0 {
            for (i, &mi) in m.iter().enumerate().take(deg_m) {
                let sub = (lead * mi) % p;
                let idx = shift + i;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
    }
    poly_trim(&mut r);
    r
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Irreducibility over 𝔽_p by trial division against every monic polynomial
/// of degree 1..=deg/2.
fn poly_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            // Candidate divisor x^d + (digits of idx).
            let mut cand = vec![0u64; d + 1];
            let mut t = idx;
            for c in cand.iter_mut().take(d) {
                *c = t % p;
                t /= p;
            }
            cand[d] = 1;
            if poly_is_zero(&poly_rem(m, &cand, p)) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Build 𝔽_{p^k} under the default size bound.
    pub fn new(p: u64, k: u32) -> Result<Arc<FieldSpec>, FieldError> {
        Self::with_bound(p, k, DEFAULT_FIELD_BOUND)
    }

    /// Build 𝔽_{p^k} with an explicit size bound (extension towers).
    pub fn with_bound(p: u64, k: u32, bound: u64) -> Result<Arc<FieldSpec>, FieldError> {
        if p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(p)).unwrap_or(u64::MAX);
        if q > bound {
            return Err(FieldError::BoundExceeded { q, bound });
        }

        // Deterministic modulus: first monic irreducible of degree k in
        // index order (lower coefficients read as little-endian base-p
        // digits).  Identity-like placeholder x for k = 1.
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            for idx in 0..q {
                let mut cand = vec![0u64; k as usize + 1];
                let mut t = idx;
                for c in cand.iter_mut().take(k as usize) {
                    *c = t % p;
                    t /= p;
                }
                cand[k as usize] = 1;
                if poly_irreducible(&cand, p) {
                    found = Some(cand);
                    break;
                }
            }
            // A monic irreducible of every degree exists over any F_p.
            found.expect("irreducible modulus exists")
        };

        let mut spec = FieldSpec {
            p,
            k,
            q,
            modulus,
            generator: vec![0],
            dlog: Vec::new(),
            powers: Vec::new(),
            trace: Vec::new(),
        };

        // Deterministic generator: first element (index order) of full
        // multiplicative order, checked against the prime factors of q-1.
        let order = q - 1;
        let factors = distinct_prime_factors(order);
        let mut gen_coeffs = None;
        'cand: for idx in 1..q {
            let c = spec.coeffs_from_index(idx);
            for &r in &factors {
                if spec.raw_pow(&c, order / r) == spec.coeffs_from_index(1) {
                    continue 'cand;
                }
            }
            gen_coeffs = Some(c);
            break;
        }
        spec.generator = gen_coeffs.expect("F_q^* is cyclic");

        // Discrete-log and power tables.
        let mut dlog = vec![u32::MAX; q as usize];
        let mut powers = vec![0u64; order as usize];
        let mut cur = spec.coeffs_from_index(1);
        for j in 0..order {
            let idx = spec.index_of(&cur);
            debug_assert_eq!(dlog[idx as usize], u32::MAX, "generator order too small");
            dlog[idx as usize] = j as u32;
            powers[j as usize] = idx;
            cur = spec.raw_mul(&cur, &spec.generator);
        }
        debug_assert_eq!(spec.index_of(&cur), 1, "generator order mismatch");
        spec.dlog = dlog;
        spec.powers = powers;

        // Absolute trace table: Tr(a) = a + a^p + ... + a^{p^{k-1}}.
        let mut trace = vec![0u64; q as usize];
        for idx in 0..q {
            let a = spec.coeffs_from_index(idx);
            let mut acc = vec![0u64];
            let mut frob = a.clone();
            for _ in 0..k {
                acc = spec.raw_add(&acc, &frob);
                frob = spec.raw_pow(&frob, p);
            }
            debug_assert!(acc.iter().skip(1).all(|&c| c == 0), "trace lands in the prime field");
            trace[idx as usize] = acc[0];
        }
        spec.trace = trace;

        Ok(Arc::new(spec))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic modulus polynomial, low-to-high coefficients (placeholder x for k = 1).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator_coeffs(&self) -> &[u64] {
        &self.generator
    }

    // Raw coefficient-vector arithmetic, used during construction and by the
    // element wrappers below.

    fn coeffs_from_index(&self, mut idx: u64) -> Vec<u64> {
        let mut c = vec![0u64; self.k as usize];
        for ci in c.iter_mut() {
            *ci = idx % self.p;
            idx /= self.p;
        }
        c
    }

    fn index_of(&self, coeffs: &[u64]) -> u64 {
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    fn raw_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = (x + y) % self.p;
        }
        out
    }

    fn raw_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let prod = poly_mul(a, b, self.p);
        let mut r = if self.k == 1 {
            prod
        } else {
            poly_rem(&prod, &self.modulus, self.p)
        };
        r.resize(self.k as usize, 0);
        r
    }

    fn raw_pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        base.resize(self.k as usize, 0);
        let mut acc = self.coeffs_from_index(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(&acc, &base);
            }
            base = self.raw_mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    // Element constructors.

    pub fn element(self: &Arc<Self>, coeffs: &[u64]) -> FieldElement {
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % self.p).collect();
        c.resize(self.k as usize, 0);
        FieldElement { spec: Arc::clone(self), coeffs: c }
    }

    pub fn from_index(self: &Arc<Self>, idx: u64) -> FieldElement {
        debug_assert!(idx < self.q);
        FieldElement { spec: Arc::clone(self), coeffs: self.coeffs_from_index(idx) }
    }

    /// Integer constant in the prime subfield.
    pub fn from_int(self: &Arc<Self>, n: i64) -> FieldElement {
        let p = self.p as i64;
        let r = ((n % p) + p) % p;
        self.from_index(r as u64)
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        self.from_index(0)
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_index(1)
    }

    /// The fixed primitive root of 𝔽_q^*.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        FieldElement { spec: Arc::clone(self), coeffs: self.generator.clone() }
    }

    /// ε ∈ 𝔽 ∖ 𝔽²: the fixed generator, which is never a square for odd q.
    pub fn canonical_nonsquare(self: &Arc<Self>) -> FieldElement {
        self.generator()
    }

    /// All q elements in canonical index order (zero first).
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElement> + '_ {
        let spec = Arc::clone(self);
        (0..self.q).map(move |i| spec.from_index(i))
    }

    /// generator^j for j taken mod q−1.
    pub fn generator_power(self: &Arc<Self>, j: u64) -> FieldElement {
        self.from_index(self.powers[(j % (self.q - 1)) as usize])
    }

    pub fn same_field(&self, other: &FieldSpec) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

/// An element of 𝔽_q carrying a handle to its field.  Equality and ordering
/// are on the reduced coefficient vector.
#[derive(Clone)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    coeffs: Vec<u64>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(self.spec.same_field(&other.spec));
        self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.index().cmp(&other.index())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spec.k == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{:?}", self.coeffs)
        }
    }
}

impl FieldElement {
    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Canonical index in 0..q (little-endian base-p digits).
    pub fn index(&self) -> u64 {
        self.spec.index_of(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.index() == 1
    }

    /// True iff the element is a square in 𝔽_q (zero counts).  Nonzero a is
    /// a square exactly when its discrete log is even, the generator being a
    /// non-square.
    pub fn is_square(&self) -> bool {
        match self.dlog() {
            Err(_) => true, // zero
            Ok(j) => j % 2 == 0,
        }
    }

    /// Tr_{𝔽_q/𝔽_p}(a) as an integer in 0..p.
    pub fn absolute_trace(&self) -> u64 {
        self.spec.trace[self.index() as usize]
    }

    /// Discrete log base the fixed generator; error at zero.
    pub fn dlog(&self) -> Result<u64, FieldError> {
        let v = self.spec.dlog[self.index() as usize];
        if v == u32::MAX {
            Err(FieldError::CharAtZero)
        } else {
            Ok(v as u64)
        }
    }

    /// Exponent of χ_m at this element: m·ind(a) mod (q−1), so that
    /// χ_m(a) = ζ_{q−1}^{char_log}.  Error at zero.
    pub fn char_log(&self, m: u64) -> Result<u64, FieldError> {
        let order = self.spec.q - 1;
        Ok((m % order) * self.dlog()? % order)
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        let j = self.dlog().map_err(|_| FieldError::DivisionByZero)?;
        let order = self.spec.q - 1;
        Ok(self.spec.generator_power((order - j) % order))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        FieldElement {
            spec: Arc::clone(&self.spec),
            coeffs: self.spec.raw_pow(&self.coeffs, e),
        }
    }

    pub fn double(&self) -> FieldElement {
        self + self
    }
}

impl core::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        debug_assert!(self.spec.same_field(&rhs.spec));
        FieldElement {
            spec: Arc::clone(&self.spec),
            coeffs: self.spec.raw_add(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl core::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl core::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.spec.p;
        FieldElement {
            spec: Arc::clone(&self.spec),
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }
}

impl core::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        debug_assert!(self.spec.same_field(&rhs.spec));
        FieldElement {
            spec: Arc::clone(&self.spec),
            coeffs: self.spec.raw_mul(&self.coeffs, &rhs.coeffs),
        }
    }
}

// ---------------------------------------------------------------------------
// Subfield embeddings (extension towers)
// ---------------------------------------------------------------------------

/// Embedding 𝔽_{p^k} ↪ 𝔽_{p^m}, k | m, sending the base polynomial
/// generator to the first root (index order) of the base modulus in the
/// extension.  For k = 1 the placeholder modulus x has root 0 and the map is
/// the constant embedding.
pub struct FieldEmbedding {
    base: Arc<FieldSpec>,
    ext: Arc<FieldSpec>,
    root_powers: Vec<FieldElement>,
}

impl FieldEmbedding {
    pub fn new(base: &Arc<FieldSpec>, ext: &Arc<FieldSpec>) -> Result<FieldEmbedding, FieldError> {
        let no_embedding = FieldError::NoEmbedding { base: base.q(), ext: ext.q() };
        if base.p() != ext.p() || !ext.k().is_multiple_of(base.k()) {
            return Err(no_embedding);
        }
        // Evaluate the base modulus at each extension element; take the
        // first root in index order.
        let root = ext
            .elements()
            .find(|cand| {
                let mut acc = ext.zero();
                for &c in base.modulus().iter().rev() {
                    acc = &(&acc * cand) + &ext.from_int(c as i64);
                }
                acc.is_zero()
            })
            .ok_or(no_embedding)?;
        let mut root_powers = Vec::with_capacity(base.k() as usize);
        let mut cur = ext.one();
        for _ in 0..base.k() {
            root_powers.push(cur.clone());
            cur = &cur * &root;
        }
        Ok(FieldEmbedding { base: Arc::clone(base), ext: Arc::clone(ext), root_powers })
    }

    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<FieldSpec> {
        &self.ext
    }

    pub fn map(&self, a: &FieldElement) -> FieldElement {
        debug_assert!(a.spec().same_field(&self.base));
        let mut acc = self.ext.zero();
        for (i, &c) in a.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = &self.root_powers[i] * &self.ext.from_int(c as i64);
            acc = &acc + &term;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldSpec::new(2, 1).unwrap_err(), FieldError::EvenCharacteristic);
        assert_eq!(FieldSpec::new(9, 1).unwrap_err(), FieldError::NotPrime(9));
        assert!(matches!(FieldSpec::new(11, 2).unwrap_err(), FieldError::BoundExceeded { .. }));
        assert_eq!(FieldSpec::new(3, 0).unwrap_err(), FieldError::ZeroDegree);
    }

    #[test]
    fn generators_of_small_prime_fields() {
        // Brute-force order check over {1,2} gives generator 2 for F_3;
        // 2 has order 4 mod 5; the least primitive root of 7 is 3.
        assert_eq!(FieldSpec::new(3, 1).unwrap().generator().index(), 2);
        assert_eq!(FieldSpec::new(5, 1).unwrap().generator().index(), 2);
        assert_eq!(FieldSpec::new(7, 1).unwrap().generator().index(), 3);
    }

    #[test]
    fn squares_by_enumeration() {
        // Squares of F_3 are {0,1}; of F_5 are {0,1,4}; of F_7 are {0,1,2,4}.
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert!(f3.from_index(1).is_square());
        assert!(!f3.from_index(2).is_square());
        let f5 = FieldSpec::new(5, 1).unwrap();
        assert!(f5.from_index(0).is_square());
        assert_eq!(f5.canonical_nonsquare().index(), 2);
        let f7 = FieldSpec::new(7, 1).unwrap();
        assert_eq!(f7.canonical_nonsquare().index(), 3);
        for q in [3u64, 5, 7, 9, 25, 27, 49] {
            let k = if q == 9 || q == 25 || q == 49 { 2 } else if q == 27 { 3 } else { 1 };
            let p = match q {
                9 | 27 => 3,
                25 => 5,
                49 => 7,
                other => other,
            };
            let f = FieldSpec::new(p, k).unwrap();
            let squares = f.elements().skip(1).filter(|a| a.is_square()).count() as u64;
            assert_eq!(squares, (q - 1) / 2, "q={q}");
            assert!(!f.canonical_nonsquare().is_square());
        }
    }

    #[test]
    fn trace_examples() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f3.from_index(2).absolute_trace(), 2); // identity on the prime field
        assert_eq!(f3.zero().absolute_trace(), 0);

        // F_9 = F_3[t]/(t^2+1): the first irreducible in index order.
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        // Tr(t) = t + t^3 = t - t = 0 by direct expansion.
        let t = f9.element(&[0, 1]);
        assert_eq!(t.absolute_trace(), 0);
    }

    #[test]
    fn trace_is_additive() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        let p = f9.p();
        for a in f9.elements() {
            for b in f9.elements() {
                assert_eq!(
                    (&a + &b).absolute_trace(),
                    (a.absolute_trace() + b.absolute_trace()) % p
                );
            }
        }
    }

    #[test]
    fn char_log_examples() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        // 2 = g^1, so chi_1(2) = zeta_2 = -1.
        assert_eq!(f3.from_index(2).char_log(1).unwrap(), 1);
        assert_eq!(f3.from_index(2).char_log(0).unwrap(), 0);
        let f5 = FieldSpec::new(5, 1).unwrap();
        // 4 = 2^2 so dlog = 2; 2*2 mod 4 = 0.
        assert_eq!(f5.from_index(4).char_log(2).unwrap(), 0);
        assert_eq!(f5.zero().char_log(1).unwrap_err(), FieldError::CharAtZero);
    }

    #[test]
    fn char_log_is_multiplicative() {
        let f7 = FieldSpec::new(7, 1).unwrap();
        let order = f7.q() - 1;
        for m in 0..order {
            for a in f7.elements().skip(1) {
                for b in f7.elements().skip(1) {
                    let lhs = (&a * &b).char_log(m).unwrap();
                    let rhs = (a.char_log(m).unwrap() + b.char_log(m).unwrap()) % order;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn generator_powers_are_a_bijection() {
        for (p, k) in [(3u64, 1u32), (5, 1), (3, 2), (7, 1)] {
            let f = FieldSpec::with_bound(p, k, 1 << 20).unwrap();
            let mut seen = vec![false; f.q() as usize];
            for j in 0..f.q() - 1 {
                let idx = f.generator_power(j).index() as usize;
                assert!(!seen[idx]);
                seen[idx] = true;
            }
            assert!(!seen[0]);
            assert_eq!(seen.iter().filter(|&&s| s).count() as u64, f.q() - 1);
        }
    }

    #[test]
    fn inverse_and_pow() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        for a in f9.elements().skip(1) {
            let inv = a.inv().unwrap();
            assert!((&a * &inv).is_one());
            assert_eq!(a.pow(f9.q() - 1), f9.one());
        }
        assert_eq!(f9.zero().inv().unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn embedding_respects_arithmetic() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        let f25 = FieldSpec::with_bound(5, 2, 1 << 10).unwrap();
        let emb = FieldEmbedding::new(&f5, &f25).unwrap();
        for a in f5.elements() {
            for b in f5.elements() {
                assert_eq!(emb.map(&(&a + &b)), &emb.map(&a) + &emb.map(&b));
                assert_eq!(emb.map(&(&a * &b)), &emb.map(&a) * &emb.map(&b));
            }
        }

        let f9 = FieldSpec::new(3, 2).unwrap();
        let f81 = FieldSpec::with_bound(3, 4, 1 << 10).unwrap();
        let emb = FieldEmbedding::new(&f9, &f81).unwrap();
        let t = f9.element(&[0, 1]);
        // The image of t must be a root of t^2 + 1 in F_81.
        let img = emb.map(&t);
        assert!((&(&img * &img) + &f81.one()).is_zero());
    }
}
