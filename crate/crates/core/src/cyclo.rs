//! Exact arithmetic in cyclotomic fields ℚ(ζ_n).
//!
//! An element is a polynomial in ζ_n reduced modulo the n-th cyclotomic
//! polynomial Φ_n, stored as an integer coefficient vector of length
//! deg Φ_n = φ(n) over a single positive denominator.  Reduction mod Φ_n
//! (rather than mod x^n − 1) makes the representation canonical, so zero
//! testing and equality are syntactic.  Mixed-conductor arithmetic lifts both
//! operands into ℚ(ζ_lcm) first.
//!
//! Values produced by the finite-field pipelines live in conductors p, q−1,
//! lcm(p, q−1), or q²−1; the Gauss-sum sweep reaches a few thousand.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Conductors above this are refused; the largest one exercised in practice
/// is lcm(47, 46) = 2162 from the Gauss-sum sweep.
pub const MAX_CONDUCTOR: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycError {
    ConductorBound { n: u64 },
    /// Embedding requires the source conductor to divide the target.
    NotASubfield { from: u64, into: u64 },
    DivisionByZero,
}

impl fmt::Display for CycError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycError::ConductorBound { n } => {
                write!(f, "conductor {n} exceeds the supported bound {MAX_CONDUCTOR}")
            }
            CycError::NotASubfield { from, into } => {
                write!(f, "Q(zeta_{from}) does not embed in Q(zeta_{into})")
            }
            CycError::DivisionByZero => write!(f, "division by zero cyclotomic number"),
        }
    }
}

// ---------------------------------------------------------------------------
// Integer polynomial helpers (low-to-high coefficient vectors)
// ---------------------------------------------------------------------------

fn int_poly_trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    int_poly_trim(&mut out);
    out
}

/// Exact division of integer polynomials; panics if the division is inexact,
/// which cannot happen for the cyclotomic factorizations it serves.
fn int_poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let lead = den.last().unwrap().clone();
    let mut rem: Vec<BigInt> = num.to_vec();
    int_poly_trim(&mut rem);
    let dn = rem.len() - 1;
    assert!(dn >= dd, "degree underflow in exact polynomial division");
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for shift in (0..=dn - dd).rev() {
        let top = rem[shift + dd].clone();
        if top.is_zero() {
            continue;
        }
        let (qc, r) = top.div_rem(&lead);
        assert!(r.is_zero(), "inexact polynomial division");
        quot[shift] = qc.clone();
        for (i, dc) in den.iter().enumerate() {
            let delta = &qc * dc;
            rem[shift + i] -= delta;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "nonzero remainder in exact division");
    quot
}

/// Φ_n as an integer coefficient vector, via Φ_n = (x^n − 1) / ∏_{d|n, d<n} Φ_d
/// with all proper divisors resolved iteratively.
pub fn cyclotomic_polynomial(n: u64) -> Result<Vec<BigInt>, CycError> {
    if n == 0 || n > MAX_CONDUCTOR {
        return Err(CycError::ConductorBound { n });
    }
    let mut cache: alloc::collections::BTreeMap<u64, Vec<BigInt>> = alloc::collections::BTreeMap::new();
    cache.insert(1, vec![BigInt::from(-1), BigInt::one()]);
    let mut divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    divisors.sort_unstable();
    for &d in &divisors {
        if cache.contains_key(&d) {
            continue;
        }
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = BigInt::from(-1);
        num[d as usize] = BigInt::one();
        let mut acc = num;
        for e in 1..d {
            if d % e == 0 {
                acc = int_poly_exact_div(&acc, &cache[&e]);
            }
        }
        cache.insert(d, acc);
    }
    Ok(cache.remove(&n).unwrap())
}

// ---------------------------------------------------------------------------
// The field ℚ(ζ_n)
// ---------------------------------------------------------------------------

/// Shared, immutable data of ℚ(ζ_n): the conductor and Φ_n.
pub struct CycField {
    n: u64,
    degree: usize,
    /// Φ_n, monic, low-to-high, length degree+1.
    phi: Vec<BigInt>,
}

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.n)
    }
}

impl CycField {
    pub fn new(n: u64) -> Result<Arc<CycField>, CycError> {
        let phi = cyclotomic_polynomial(n)?;
        let degree = phi.len() - 1;
        Ok(Arc::new(CycField { n, degree, phi }))
    }

    /// The rationals, as ℚ(ζ_1).
    pub fn rationals() -> Arc<CycField> {
        CycField::new(1).expect("conductor 1 is always valid")
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn phi(&self) -> &[BigInt] {
        &self.phi
    }

    /// In-place reduction of a dense coefficient vector mod Φ_n; truncates to
    /// the field degree.
    fn reduce(&self, v: &mut Vec<BigInt>) {
        let d = self.degree;
        for j in (d..v.len()).rev() {
            if v[j].is_zero() {
                continue;
            }
            let c = core::mem::replace(&mut v[j], BigInt::zero());
            for i in 0..d {
                if self.phi[i].is_zero() {
                    continue;
                }
                let delta = &c * &self.phi[i];
                v[j - d + i] -= delta;
            }
        }
        v.truncate(d);
        v.resize(d, BigInt::zero());
    }

    pub fn zero(self: &Arc<Self>) -> CycNumber {
        CycNumber {
            field: Arc::clone(self),
            num: vec![BigInt::zero(); self.degree],
            den: BigInt::one(),
        }
    }

    pub fn one(self: &Arc<Self>) -> CycNumber {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> CycNumber {
        self.from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(self: &Arc<Self>, v: BigInt) -> CycNumber {
        let mut num = vec![BigInt::zero(); self.degree];
        num[0] = v;
        CycNumber { field: Arc::clone(self), num, den: BigInt::one() }
    }

    pub fn from_rational(self: &Arc<Self>, r: BigRational) -> CycNumber {
        let (n, d) = r.into();
        let mut num = vec![BigInt::zero(); self.degree];
        num[0] = n;
        let mut out = CycNumber { field: Arc::clone(self), num, den: d };
        out.normalize();
        out
    }

    /// ζ_n^j (j taken mod n), reduced mod Φ_n.
    pub fn root_of_unity(self: &Arc<Self>, j: i64) -> CycNumber {
        let n = self.n as i64;
        let e = (j % n + n) % n;
        self.from_integer_exponent_sum([(e as u64, BigInt::one())])
    }

    /// Σ c_e ζ_n^e for integer weights; one dense reduction at the end, which
    /// keeps big sums (Fourier coefficients, Gauss sums) cheap.
    pub fn from_integer_exponent_sum(
        self: &Arc<Self>,
        terms: impl IntoIterator<Item = (u64, BigInt)>,
    ) -> CycNumber {
        let mut v = vec![BigInt::zero(); self.n as usize];
        for (e, c) in terms {
            let idx = (e % self.n) as usize;
            v[idx] += c;
        }
        self.reduce(&mut v);
        let mut out = CycNumber { field: Arc::clone(self), num: v, den: BigInt::one() };
        out.normalize();
        out
    }

    /// Σ w_e ζ_n^e for rational weights.
    pub fn from_exponent_sum(
        self: &Arc<Self>,
        terms: impl IntoIterator<Item = (u64, BigRational)>,
    ) -> CycNumber {
        let terms: Vec<(u64, BigRational)> = terms.into_iter().collect();
        let mut den = BigInt::one();
        for (_, w) in &terms {
            den = den.lcm(w.denom());
        }
        let int_terms = terms
            .into_iter()
            .map(|(e, w)| {
                let scale = &den / w.denom();
                (e, w.numer() * scale)
            })
            .collect::<Vec<_>>();
        let mut out = self.from_integer_exponent_sum(int_terms);
        out.den *= den;
        out.normalize();
        out
    }
}

/// Least common field ℚ(ζ_lcm) of two conductors.
pub fn common_field(a: &Arc<CycField>, b: &Arc<CycField>) -> Result<Arc<CycField>, CycError> {
    if a.n == b.n {
        return Ok(Arc::clone(a));
    }
    CycField::new(a.n.lcm(&b.n))
}

/// An exact element of ℚ(ζ_n): integer coefficients over one positive
/// denominator, fully reduced (content coprime to the denominator).
#[derive(Clone)]
pub struct CycNumber {
    field: Arc<CycField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNumber {
    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.n
    }

    /// Reduced integer coefficient vector (length φ(n)).
    pub fn numerator_coeffs(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    fn normalize(&mut self) {
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        if !g.is_one() {
            self.den = &self.den / &g;
            for c in &mut self.num {
                *c = &*c / &g;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one()
            && self.num[0].is_one()
            && self.num.iter().skip(1).all(|c| c.is_zero())
    }

    /// The value as a rational if it lies in ℚ ⊂ ℚ(ζ_n).
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        let r = self.to_rational()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    /// Image in ℚ(ζ_m) for n | m.
    pub fn embed(&self, target: &Arc<CycField>) -> Result<CycNumber, CycError> {
        if target.n == self.field.n {
            return Ok(self.clone());
        }
        if !target.n.is_multiple_of(self.field.n) {
            return Err(CycError::NotASubfield { from: self.field.n, into: target.n });
        }
        let stride = target.n / self.field.n;
        let mut out = target.from_integer_exponent_sum(
            self.num
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as u64 * stride, c.clone())),
        );
        out.den *= &self.den;
        out.normalize();
        Ok(out)
    }

    /// Complex conjugation, i.e. the Galois map ζ_n ↦ ζ_n^{n−1}.
    pub fn conjugate(&self) -> CycNumber {
        let n = self.field.n;
        let mut out = self.field.from_integer_exponent_sum(
            self.num
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| ((n - i as u64) % n, c.clone())),
        );
        out.den *= &self.den;
        out.normalize();
        out
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Φ_n over ℚ[x].
    pub fn inv(&self) -> Result<CycNumber, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        type RatPoly = Vec<BigRational>;
        let trim = |v: &mut RatPoly| {
            while v.len() > 1 && v.last().unwrap().is_zero() {
                v.pop();
            }
        };
        let divmod = |a: &RatPoly, b: &RatPoly| -> (RatPoly, RatPoly) {
            let db = b.len() - 1;
            let lead = b.last().unwrap().clone();
            let mut r = a.clone();
            trim(&mut r);
            if r.len() - 1 < db && !(r.len() == 1 && db == 0) {
                return (vec![BigRational::zero()], r);
            }
            let dq = r.len().saturating_sub(1).saturating_sub(db);
            let mut q = vec![BigRational::zero(); dq + 1];
            for shift in (0..=dq).rev() {
                if r.len() <= shift + db {
                    continue;
                }
                let c = &r[shift + db] / &lead;
                if c.is_zero() {
                    continue;
                }
                q[shift] = c.clone();
                for (i, bc) in b.iter().enumerate() {
                    let delta = &c * bc;
                    r[shift + i] -= delta;
                }
            }
            trim(&mut r);
            (q, r)
        };

        let mut r0: RatPoly = self
            .num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect();
        trim(&mut r0);
        let mut r1: RatPoly = self.field.phi.iter().map(|c| BigRational::from(c.clone())).collect();
        // Invariant: r_i ≡ t_i · self  (mod Φ_n).
        let mut t0: RatPoly = vec![BigRational::one()];
        let mut t1: RatPoly = vec![BigRational::zero()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r2) = divmod(&r0, &r1);
            // t2 = t0 − q·t1
            let mut t2 = t0.clone();
            let prod_len = q.len() + t1.len() - 1;
            t2.resize(t2.len().max(prod_len), BigRational::zero());
            for (i, qc) in q.iter().enumerate() {
                if qc.is_zero() {
                    continue;
                }
                for (j, tc) in t1.iter().enumerate() {
                    let delta = qc * tc;
                    t2[i + j] -= delta;
                }
            }
            trim(&mut t2);
            r0 = r1;
            r1 = r2;
            t0 = t1;
            t1 = t2;
        }
        // Φ_n is irreducible, so the gcd is a nonzero constant.
        debug_assert!(r0.len() == 1 && !r0[0].is_zero(), "cyclotomic polynomial must be irreducible");
        let g = r0[0].clone();
        let inv_terms = t0.into_iter().enumerate().map(|(i, c)| (i as u64, c / &g));
        Ok(self.field.from_exponent_sum(inv_terms))
    }

    /// Scale by an exact rational.
    pub fn scale(&self, r: &BigRational) -> CycNumber {
        let mut out = CycNumber {
            field: Arc::clone(&self.field),
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        out.normalize();
        out
    }
}

fn lift_pair(a: &CycNumber, b: &CycNumber) -> (CycNumber, CycNumber) {
    if a.field.n == b.field.n {
        (a.clone(), b.clone())
    } else {
        let f = common_field(&a.field, &b.field).expect("lcm conductor within bound");
        (a.embed(&f).unwrap(), b.embed(&f).unwrap())
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.field.n == other.field.n {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = lift_pair(self, other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for CycNumber {}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*z{}^{i}", self.field.n)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if !self.den.is_one() {
            write!(f, " / {}", self.den)?;
        }
        Ok(())
    }
}

impl core::ops::Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        let (a, b) = if self.field.n == rhs.field.n {
            return add_same_field(self, rhs);
        } else {
            lift_pair(self, rhs)
        };
        add_same_field(&a, &b)
    }
}

fn add_same_field(a: &CycNumber, b: &CycNumber) -> CycNumber {
    let mut out = if a.den == b.den {
        CycNumber {
            field: Arc::clone(&a.field),
            num: a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect(),
            den: a.den.clone(),
        }
    } else {
        let l = a.den.lcm(&b.den);
        let sa = &l / &a.den;
        let sb = &l / &b.den;
        CycNumber {
            field: Arc::clone(&a.field),
            num: a.num.iter().zip(&b.num).map(|(x, y)| x * &sa + y * &sb).collect(),
            den: l,
        }
    };
    out.normalize();
    out
}

impl core::ops::Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            field: Arc::clone(&self.field),
            num: self.num.iter().map(|c| -c.clone()).collect(),
            den: self.den.clone(),
        }
    }
}

impl core::ops::Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self + &(-rhs)
    }
}

impl core::ops::Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        let (a, b) = if self.field.n == rhs.field.n {
            return mul_same_field(self, rhs);
        } else {
            lift_pair(self, rhs)
        };
        mul_same_field(&a, &b)
    }
}

fn mul_same_field(a: &CycNumber, b: &CycNumber) -> CycNumber {
    if a.is_zero() || b.is_zero() {
        return a.field().zero_like();
    }
    let mut v = int_poly_mul(&a.num, &b.num);
    a.field.reduce(&mut v);
    let mut out = CycNumber { field: Arc::clone(&a.field), num: v, den: &a.den * &b.den };
    out.normalize();
    out
}

trait ZeroLike {
    fn zero_like(&self) -> CycNumber;
}

impl ZeroLike for Arc<CycField> {
    fn zero_like(&self) -> CycNumber {
        self.zero()
    }
}

/// Total deterministic order (by conductor, then denominator, then
/// coefficients); used only for canonical tie-breaking, it has no numeric
/// meaning.
impl PartialOrd for CycNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(
            self.field
                .n
                .cmp(&other.field.n)
                .then_with(|| self.den.cmp(&other.den))
                .then_with(|| self.num.cmp(&other.num)),
        )
    }
}
