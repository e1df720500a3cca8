//! Explicit models of g = sl₂(𝔽_q) and G = PGL(2,𝔽_q).
//!
//! Elements of g are trace-zero matrices [[a, b], [c, −a]]; elements of G are
//! canonical coset representatives (first nonzero entry in scan order
//! (1,1),(1,2),(2,1),(2,2) normalized to 1), so equality is syntactic.  The
//! module enumerates both sets deterministically, computes conjugation
//! orbits by a full-group sweep, realizes orbit closures by the rank-1 rule
//! (same invariant fiber, smaller-or-equal orbit size), and builds the q+1
//! nilradical lines / unipotent radicals indexed by P¹(𝔽_q) together with
//! the incidence pairs whose translates stay inside a closure.
//!
//! The adjoint action is PGL(2,𝔽_q)-conjugation (equivalently GL₂), so the
//! regular nilpotents form a single orbit.  For odd q the Lie algebra of
//! PGL₂ is identified with sl₂.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::field::{FieldElement, FieldSpec};

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// Trace-zero matrix [[a, b], [c, −a]] in sl₂(𝔽_q).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgElement {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
}

impl AlgElement {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> AlgElement {
        AlgElement { a, b, c }
    }

    pub fn zero(spec: &Arc<FieldSpec>) -> AlgElement {
        AlgElement::new(spec.zero(), spec.zero(), spec.zero())
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        self.a.spec()
    }

    /// det [[a,b],[c,−a]] = −a² − bc.
    pub fn det(&self) -> FieldElement {
        -&(&(&self.a * &self.a) + &(&self.b * &self.c))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// Nilpotent ⟺ det = 0 for trace-zero 2×2 matrices.
    pub fn is_nilpotent(&self) -> bool {
        self.det().is_zero()
    }

    /// Canonical index: (index(a)·q + index(b))·q + index(c).
    pub fn key(&self) -> u64 {
        let q = self.spec().q();
        (self.a.index() * q + self.b.index()) * q + self.c.index()
    }

    pub fn from_key(spec: &Arc<FieldSpec>, key: u64) -> AlgElement {
        let q = spec.q();
        AlgElement::new(
            spec.from_index(key / (q * q)),
            spec.from_index((key / q) % q),
            spec.from_index(key % q),
        )
    }

    pub fn scale(&self, s: &FieldElement) -> AlgElement {
        AlgElement::new(s * &self.a, s * &self.b, s * &self.c)
    }

    fn as_mat(&self) -> [FieldElement; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), -&self.a]
    }
}

impl core::ops::Add for &AlgElement {
    type Output = AlgElement;
    fn add(self, rhs: &AlgElement) -> AlgElement {
        AlgElement::new(&self.a + &rhs.a, &self.b + &rhs.b, &self.c + &rhs.c)
    }
}

impl core::ops::Neg for &AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        AlgElement::new(-&self.a, -&self.b, -&self.c)
    }
}

/// tr(x·y) = 2·a_x·a_y + b_x·c_y + c_x·b_y — the pairing identifying sl₂
/// with its dual and feeding the Fourier kernel.
pub fn trace_pairing(x: &AlgElement, y: &AlgElement) -> FieldElement {
    let two_aa = (&x.a * &y.a).double();
    &(&two_aa + &(&x.b * &y.c)) + &(&x.c * &y.b)
}

fn mat_mul(a: &[FieldElement; 4], b: &[FieldElement; 4]) -> [FieldElement; 4] {
    [
        &(&a[0] * &b[0]) + &(&a[1] * &b[2]),
        &(&a[0] * &b[1]) + &(&a[1] * &b[3]),
        &(&a[2] * &b[0]) + &(&a[3] * &b[2]),
        &(&a[2] * &b[1]) + &(&a[3] * &b[3]),
    ]
}

fn mat_det(m: &[FieldElement; 4]) -> FieldElement {
    &(&m[0] * &m[3]) - &(&m[1] * &m[2])
}

/// Inverse up to scalar: the adjugate.  Conjugation only needs the inverse
/// modulo the center, which spares a division.
fn mat_adjugate(m: &[FieldElement; 4]) -> [FieldElement; 4] {
    [m[3].clone(), -&m[1], -&m[2], m[0].clone()]
}

/// An element of PGL(2,𝔽_q) in canonical coset form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupElement {
    m: [FieldElement; 4],
}

impl GroupElement {
    /// Canonicalize an invertible matrix: scale so the first nonzero entry
    /// in scan order is 1.
    pub fn new(m: [FieldElement; 4]) -> GroupElement {
        debug_assert!(!mat_det(&m).is_zero(), "group element must be invertible");
        let lead = m.iter().find(|e| !e.is_zero()).expect("invertible matrix is nonzero");
        let inv = lead.inv().expect("nonzero entry");
        GroupElement { m: [&m[0] * &inv, &m[1] * &inv, &m[2] * &inv, &m[3] * &inv] }
    }

    pub fn identity(spec: &Arc<FieldSpec>) -> GroupElement {
        GroupElement::new([spec.one(), spec.zero(), spec.zero(), spec.one()])
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        self.m[0].spec()
    }

    pub fn entries(&self) -> &[FieldElement; 4] {
        &self.m
    }

    pub fn key(&self) -> u64 {
        let q = self.spec().q();
        self.m.iter().fold(0u64, |acc, e| acc * q + e.index())
    }

    pub fn trace(&self) -> FieldElement {
        &self.m[0] + &self.m[3]
    }

    pub fn det(&self) -> FieldElement {
        mat_det(&self.m)
    }

    /// tr²/det of the canonical lift; invariant under scaling, so well
    /// defined on PGL₂.
    pub fn class_label(&self) -> FieldElement {
        let t = self.trace();
        &(&t * &t) * &self.det().inv().expect("det is nonzero")
    }

    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        GroupElement::new(mat_mul(&self.m, &rhs.m))
    }

    pub fn inv(&self) -> GroupElement {
        GroupElement::new(mat_adjugate(&self.m))
    }

    /// g·x·g^{-1} on the Lie algebra (adjugate suffices: scalars cancel up
    /// to det, and det·x conjugates to det·(gxg^{-1})).
    pub fn adjoint(&self, x: &AlgElement) -> AlgElement {
        let adj = mat_adjugate(&self.m);
        let prod = mat_mul(&mat_mul(&self.m, &x.as_mat()), &adj);
        let dinv = self.det().inv().expect("det is nonzero");
        let out = [&prod[0] * &dinv, &prod[1] * &dinv, &prod[2] * &dinv];
        debug_assert!((&out[0] + &(&prod[3] * &dinv)).is_zero(), "conjugation preserves trace zero");
        AlgElement::new(out[0].clone(), out[1].clone(), out[2].clone())
    }

    pub fn conjugate_group(&self, x: &GroupElement) -> GroupElement {
        GroupElement::new(mat_mul(&mat_mul(&self.m, &x.m), &mat_adjugate(&self.m)))
    }
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// All q³ trace-zero matrices in canonical key order; the first is 0.
pub fn enumerate_algebra(spec: &Arc<FieldSpec>) -> Vec<AlgElement> {
    let q = spec.q();
    (0..q * q * q).map(|k| AlgElement::from_key(spec, k)).collect()
}

/// All q³ − q elements of PGL(2,𝔽_q) in canonical key order.
pub fn enumerate_group(spec: &Arc<FieldSpec>) -> Vec<GroupElement> {
    let q = spec.q();
    let mut out = Vec::with_capacity((q * q * q - q) as usize);
    for k in 0..q * q * q * q {
        let m = [
            spec.from_index(k / (q * q * q)),
            spec.from_index((k / (q * q)) % q),
            spec.from_index((k / q) % q),
            spec.from_index(k % q),
        ];
        if mat_det(&m).is_zero() {
            continue;
        }
        // Keep only canonical representatives: first nonzero entry is 1.
        let lead = m.iter().find(|e| !e.is_zero()).unwrap();
        if lead.is_one() {
            out.push(GroupElement { m });
        }
    }
    debug_assert!(out.windows(2).all(|w| w[0].key() < w[1].key()));
    out
}

// ---------------------------------------------------------------------------
// Orbits and closures
// ---------------------------------------------------------------------------

/// Points that PGL₂ acts on by conjugation.
pub trait OrbitPoint: Clone + Eq {
    fn point_key(&self) -> u64;
    fn conjugated_by(&self, g: &GroupElement) -> Self;
    /// The conjugation invariant labelling the orbit's fiber: det for the
    /// Lie algebra, tr²/det for the group.
    fn invariant_label(&self) -> FieldElement;
    /// Composition law used by incidence translates: x + n on g, g·u on G.
    fn translate(&self, by: &Self) -> Self;
}

impl OrbitPoint for AlgElement {
    fn point_key(&self) -> u64 {
        self.key()
    }

    fn conjugated_by(&self, g: &GroupElement) -> Self {
        g.adjoint(self)
    }

    fn invariant_label(&self) -> FieldElement {
        self.det()
    }

    fn translate(&self, by: &Self) -> Self {
        self + by
    }
}

impl OrbitPoint for GroupElement {
    fn point_key(&self) -> u64 {
        self.key()
    }

    fn conjugated_by(&self, g: &GroupElement) -> Self {
        g.conjugate_group(self)
    }

    fn invariant_label(&self) -> FieldElement {
        self.class_label()
    }

    fn translate(&self, by: &Self) -> Self {
        self.mul(by)
    }
}

/// One conjugation orbit: sorted points, their keys, and the invariant
/// label shared by every point.
#[derive(Clone, Debug)]
pub struct Orbit<P> {
    pub points: Vec<P>,
    pub keys: Vec<u64>,
    pub label: FieldElement,
}

impl<P: OrbitPoint> Orbit<P> {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn contains_key(&self, key: u64) -> bool {
        self.keys.binary_search(&key).is_ok()
    }

    pub fn representative(&self) -> &P {
        &self.points[0]
    }
}

/// The adjoint orbits of sl₂(𝔽_q) under PGL₂-conjugation.
pub fn adjoint_orbits(spec: &Arc<FieldSpec>) -> Vec<Orbit<AlgElement>> {
    conjugation_orbits(&enumerate_algebra(spec), &enumerate_group(spec))
}

/// The conjugacy classes of PGL(2,𝔽_q).
pub fn conjugacy_classes(spec: &Arc<FieldSpec>) -> Vec<Orbit<GroupElement>> {
    let group = enumerate_group(spec);
    conjugation_orbits(&group, &group)
}

/// Partition of the point set into conjugation orbits, by full-group sweep
/// from each unvisited point in key order.  Orbits are listed by least
/// representative key.
pub fn conjugation_orbits<P: OrbitPoint>(all: &[P], group: &[GroupElement]) -> Vec<Orbit<P>> {
    let keys: Vec<u64> = all.iter().map(P::point_key).collect();
    debug_assert!(keys.windows(2).all(|w| w[0] < w[1]));
    let mut visited = alloc::vec![false; all.len()];
    let mut orbits = Vec::new();
    for start in 0..all.len() {
        if visited[start] {
            continue;
        }
        let base = &all[start];
        let mut orbit_keys: Vec<u64> = group
            .iter()
            .map(|g| base.conjugated_by(g).point_key())
            .collect();
        orbit_keys.sort_unstable();
        orbit_keys.dedup();
        let points: Vec<P> = orbit_keys
            .iter()
            .map(|k| {
                let pos = keys.binary_search(k).expect("orbit stays inside the point set");
                visited[pos] = true;
                all[pos].clone()
            })
            .collect();
        orbits.push(Orbit { points, keys: orbit_keys, label: base.invariant_label() });
    }
    orbits
}

/// An orbit together with its closure: the union of all orbits in the same
/// invariant fiber of smaller or equal size.  This is the rank-1 realization
/// of closure on 𝔽_q-points; reports must disclose the rule.
#[derive(Clone, Debug)]
pub struct ClosedOrbit<P> {
    pub orbit: Orbit<P>,
    pub closure: Vec<P>,
    pub closure_keys: Vec<u64>,
    pub added_orbits: Vec<Orbit<P>>,
}

pub fn orbit_closure<P: OrbitPoint>(orbit: &Orbit<P>, all_orbits: &[Orbit<P>]) -> ClosedOrbit<P> {
    let mut added_orbits = Vec::new();
    let mut merged: Vec<(u64, P)> = orbit
        .points
        .iter()
        .map(|p| (p.point_key(), p.clone()))
        .collect();
    for o in all_orbits {
        if o.label == orbit.label && o.size() <= orbit.size() && o.keys != orbit.keys {
            added_orbits.push(o.clone());
            merged.extend(o.points.iter().map(|p| (p.point_key(), p.clone())));
        }
    }
    merged.sort_by_key(|(k, _)| *k);
    merged.dedup_by_key(|(k, _)| *k);
    let closure_keys: Vec<u64> = merged.iter().map(|(k, _)| *k).collect();
    let closure: Vec<P> = merged.into_iter().map(|(_, p)| p).collect();
    ClosedOrbit { orbit: orbit.clone(), closure, closure_keys, added_orbits }
}

/// Deterministic display name for a Lie-algebra orbit.
pub fn lie_orbit_name(o: &Orbit<AlgElement>) -> String {
    if o.size() == 1 {
        return String::from("zero");
    }
    if o.label.is_zero() {
        return String::from("nilpotent");
    }
    let kind = if is_elliptic(o.representative()) { "elliptic" } else { "split" };
    format!("det{}_{}", o.label.index(), kind)
}

/// Deterministic display name for a PGL₂ conjugacy class.
pub fn group_orbit_name(o: &Orbit<GroupElement>) -> String {
    if o.size() == 1 {
        return String::from("identity");
    }
    let spec = o.representative().spec();
    if o.label == spec.from_int(4) {
        return String::from("unipotent");
    }
    format!("tr2det{}_size{}", o.label.index(), o.size())
}

// ---------------------------------------------------------------------------
// Elliptic set
// ---------------------------------------------------------------------------

/// x is elliptic iff its characteristic polynomial t² + det(x) is
/// irreducible over 𝔽_q, i.e. −det(x) is a nonzero non-square.  Equivalent
/// to the stabilizer in G being the non-split torus (order q+1), which
/// `centralizer_order` cross-checks.
pub fn is_elliptic(x: &AlgElement) -> bool {
    let minus_det = -&x.det();
    !minus_det.is_zero() && !minus_det.is_square()
}

/// Order of the centralizer {g ∈ PGL₂ : g·x·g^{-1} = x}; brute force over
/// the whole group.
pub fn centralizer_order<P: OrbitPoint>(x: &P, group: &[GroupElement]) -> u64 {
    group.iter().filter(|g| x.conjugated_by(g) == *x).count() as u64
}

/// The rank-1 identity behind the coset-sum characterization of
/// cuspidality: the complement of the elliptic set equals the union over
/// nilradical lines N of the trace-pairing annihilators N^⊥ (the Borel
/// subalgebras).  Returns true when the identity holds pointwise.
pub fn elliptic_complement_is_annihilator_union(spec: &Arc<FieldSpec>) -> bool {
    let radicals = nil_radicals(spec);
    let bases: Vec<AlgElement> = radicals.iter().map(|r| r.base_point().clone()).collect();
    enumerate_algebra(spec).iter().all(|x| {
        let in_some_annihilator = bases.iter().any(|e| trace_pairing(x, e).is_zero());
        in_some_annihilator != is_elliptic(x)
    })
}

// ---------------------------------------------------------------------------
// Radicals (nilradical lines and unipotent radicals), indexed by P¹
// ---------------------------------------------------------------------------

/// A point of P¹(𝔽_q), as a normalized direction vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P1Point {
    pub index: u64,
    pub direction: (FieldElement, FieldElement),
}

/// The q+1 points of P¹: (1 : t) for t ∈ 𝔽_q in index order, then (0 : 1).
pub fn p1_points(spec: &Arc<FieldSpec>) -> Vec<P1Point> {
    let mut out: Vec<P1Point> = (0..spec.q())
        .map(|t| P1Point { index: t, direction: (spec.one(), spec.from_index(t)) })
        .collect();
    out.push(P1Point { index: spec.q(), direction: (spec.zero(), spec.one()) });
    out
}

/// Image of a P¹ point under g, re-normalized.
pub fn p1_apply(g: &GroupElement, v: &P1Point) -> (FieldElement, FieldElement) {
    let m = g.entries();
    let x = &(&m[0] * &v.direction.0) + &(&m[1] * &v.direction.1);
    let y = &(&m[2] * &v.direction.0) + &(&m[3] * &v.direction.1);
    if x.is_zero() {
        (x.spec().zero(), x.spec().one())
    } else {
        let inv = x.inv().unwrap();
        (x.spec().one(), &y * &inv)
    }
}

/// Number of fixed points of g on P¹(𝔽_q).
pub fn p1_fixed_count(g: &GroupElement, points: &[P1Point]) -> u64 {
    points
        .iter()
        .filter(|v| p1_apply(g, v) == v.direction)
        .count() as u64
}

/// The nilradical line or unipotent radical attached to one Borel, i.e. one
/// point of P¹.  Lie form: the q nilpotent matrices with image inside the
/// direction line.  Group form: {1 + t·e}, a subgroup of order q since
/// e² = 0.
#[derive(Clone, Debug)]
pub struct Radical<P> {
    pub label: P1Point,
    pub elements: Vec<P>,
    base_index: usize,
}

impl<P: OrbitPoint> Radical<P> {
    /// The canonical nonzero (resp. non-identity) element: least key.
    pub fn base_point(&self) -> &P {
        &self.elements[self.base_index]
    }
}

/// Rank-one trace-zero matrix with image F·(a, b): [[−ab, a²], [−b², ab]].
fn line_nilpotent(v: &P1Point) -> AlgElement {
    let (a, b) = &v.direction;
    AlgElement::new(-&(a * b), a * a, -&(b * b))
}

/// The q+1 nilradical lines N_v = 𝔽·e_v.
pub fn nil_radicals(spec: &Arc<FieldSpec>) -> Vec<Radical<AlgElement>> {
    p1_points(spec)
        .into_iter()
        .map(|v| {
            let e = line_nilpotent(&v);
            let mut elements: Vec<AlgElement> =
                spec.elements().map(|s| e.scale(&s)).collect();
            elements.sort_by_key(AlgElement::key);
            let base_index = elements
                .iter()
                .position(|x| !x.is_zero())
                .expect("a line has nonzero points");
            debug_assert!(elements.iter().all(AlgElement::is_nilpotent));
            Radical { label: v, elements, base_index }
        })
        .collect()
}

/// The q+1 unipotent radicals U_v = {1 + t·e_v} = exp(N_v); the exponential
/// truncates exactly at degree 2 because e_v² = 0.
pub fn unipotent_radicals(spec: &Arc<FieldSpec>) -> Vec<Radical<GroupElement>> {
    let one = GroupElement::identity(spec);
    p1_points(spec)
        .into_iter()
        .map(|v| {
            let e = line_nilpotent(&v);
            let mut elements: Vec<GroupElement> = spec
                .elements()
                .map(|t| {
                    let n = e.scale(&t);
                    GroupElement::new([
                        &spec.one() + &n.a,
                        n.b.clone(),
                        n.c.clone(),
                        &spec.one() - &n.a,
                    ])
                })
                .collect();
            elements.sort_by_key(GroupElement::key);
            elements.dedup();
            debug_assert_eq!(elements.len(), spec.q() as usize, "U_v is a subgroup of order q");
            let base_index = elements.iter().position(|g| *g != one).expect("q > 1");
            Radical { label: v, elements, base_index }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Incidence sets
// ---------------------------------------------------------------------------

/// The pairs (base, radical) whose full translate set stays inside the
/// closure: x + N ⊆ Ō in the Lie algebra, gU ⊆ Ō in the group.  Radicals
/// are referenced by index into the caller's radical list.
#[derive(Clone, Debug)]
pub struct IncidenceSet<P> {
    pub pairs: Vec<(P, usize)>,
}

pub fn incidence_set<P: OrbitPoint>(
    closed: &ClosedOrbit<P>,
    radicals: &[Radical<P>],
) -> IncidenceSet<P> {
    let mut pairs = Vec::new();
    for base in &closed.closure {
        for (ri, rad) in radicals.iter().enumerate() {
            let inside = rad.elements.iter().all(|n| {
                closed.closure_keys.binary_search(&base.translate(n).point_key()).is_ok()
            });
            if inside {
                pairs.push((base.clone(), ri));
            }
        }
    }
    IncidenceSet { pairs }
}

impl<P: OrbitPoint> IncidenceSet<P> {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Re-verify that every translate of every pair lands in the closure.
    pub fn verify(&self, closed: &ClosedOrbit<P>, radicals: &[Radical<P>]) -> bool {
        self.pairs.iter().all(|(base, ri)| {
            radicals[*ri].elements.iter().all(|n| {
                closed.closure_keys.binary_search(&base.translate(n).point_key()).is_ok()
            })
        })
    }
}
