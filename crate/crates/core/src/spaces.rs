//! Function spaces on finite point sets, the trace-pairing Fourier
//! transform, and the three subspaces whose comparison is the engine of the
//! verdicts: cuspidal functions, weightless functions on an orbit closure,
//! and restrictions of cuspidal functions to the closure.
//!
//! Conventions: the Fourier transform is the unnormalized forward sum
//! F(f)(x) = Σ_ξ f(ξ)·ψ(tr(ξx)) with ψ(t) = ζ_p^{Tr(t)}; applying it twice
//! gives q³·(f ∘ negation) exactly.  Cuspidality on the Lie algebra has two
//! equivalent characterizations computed by independent routes: Fourier
//! support inside the elliptic set (cyclotomic constraint matrix), and
//! vanishing of all coset sums over nilradical lines (rational constraint
//! matrix).  The rational route is the default; the cyclotomic route is the
//! cross-check oracle.
//!
//! Weightless constraints are deduplicated by coset: x + N = x' + N for
//! every x' in the coset, so one row per coset suffices.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;

use crate::cyclo::{CycField, CycNumber};
use crate::field::FieldSpec;
use crate::linalg::{PointList, SubspaceBasis, SubspaceRelation};
use crate::sl2::{
    conjugation_orbits, enumerate_algebra, enumerate_group, group_orbit_name, incidence_set,
    is_elliptic, lie_orbit_name, nil_radicals, orbit_closure, trace_pairing, unipotent_radicals,
    AlgElement, ClosedOrbit, GroupElement, IncidenceSet, Orbit, OrbitPoint, Radical,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceMode {
    Lie,
    Group,
}

impl fmt::Display for SpaceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceMode::Lie => write!(f, "lie"),
            SpaceMode::Group => write!(f, "group"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpacesError {
    /// Restricted-cuspidal ⊄ weightless would contradict a containment that
    /// holds by construction; it can only mean an implementation bug.
    ContainmentViolation { orbit: String },
}

impl fmt::Display for SpacesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpacesError::ContainmentViolation { orbit } => {
                write!(f, "containment gate failed on orbit {orbit} (internal bug)")
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

/// Everything the Lie-mode pipelines need about sl₂(𝔽_q), built once per
/// field and shared read-only.
pub struct LieModel {
    pub spec: Arc<FieldSpec>,
    pub elements: Vec<AlgElement>,
    pub points: Arc<PointList>,
    pub group: Vec<GroupElement>,
    pub radicals: Vec<Radical<AlgElement>>,
    pub orbits: Vec<Orbit<AlgElement>>,
    elliptic: Vec<bool>,
    /// ψ-exponent table Tr(tr(x_i·x_j)) when the point count is small enough
    /// to afford q⁶ bytes.
    pairing_table: Option<Vec<u8>>,
}

impl LieModel {
    pub fn new(spec: &Arc<FieldSpec>) -> LieModel {
        let elements = enumerate_algebra(spec);
        let points = PointList::new(elements.iter().map(AlgElement::key).collect());
        let group = enumerate_group(spec);
        let radicals = nil_radicals(spec);
        let orbits = conjugation_orbits(&elements, &group);
        let elliptic = elements.iter().map(is_elliptic).collect();
        let n = elements.len();
        let pairing_table = (n <= 2200).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for x in &elements {
                for y in &elements {
                    t.push(trace_pairing(x, y).absolute_trace() as u8);
                }
            }
            t
        });
        LieModel {
            spec: Arc::clone(spec),
            elements,
            points,
            group,
            radicals,
            orbits,
            elliptic,
            pairing_table,
        }
    }

    pub fn q(&self) -> u64 {
        self.spec.q()
    }

    /// Exponent e with ψ(tr(x_i·x_j)) = ζ_p^e.
    pub fn psi_exponent(&self, i: usize, j: usize) -> u64 {
        match &self.pairing_table {
            Some(t) => t[i * self.elements.len() + j] as u64,
            None => trace_pairing(&self.elements[i], &self.elements[j]).absolute_trace(),
        }
    }

    pub fn is_elliptic_at(&self, i: usize) -> bool {
        self.elliptic[i]
    }

    pub fn elliptic_count(&self) -> usize {
        self.elliptic.iter().filter(|&&e| e).count()
    }

    /// The regular nilpotent orbit 𝒩 (all nonzero nilpotents) as an ordered
    /// ambient of its own.
    pub fn regular_nilpotent_ambient(&self) -> (Arc<PointList>, Vec<AlgElement>) {
        let pts: Vec<AlgElement> = self
            .elements
            .iter()
            .filter(|x| x.is_nilpotent() && !x.is_zero())
            .cloned()
            .collect();
        let keys = pts.iter().map(AlgElement::key).collect();
        (PointList::new(keys), pts)
    }
}

/// Group-mode companion: PGL(2,𝔽_q) with its unipotent radicals and
/// conjugacy classes.
pub struct GroupModel {
    pub spec: Arc<FieldSpec>,
    pub elements: Vec<GroupElement>,
    pub points: Arc<PointList>,
    pub radicals: Vec<Radical<GroupElement>>,
    pub classes: Vec<Orbit<GroupElement>>,
}

impl GroupModel {
    pub fn new(spec: &Arc<FieldSpec>) -> GroupModel {
        let elements = enumerate_group(spec);
        let points = PointList::new(elements.iter().map(GroupElement::key).collect());
        let radicals = unipotent_radicals(spec);
        let classes = conjugation_orbits(&elements, &elements);
        GroupModel { spec: Arc::clone(spec), elements, points, radicals, classes }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

// ---------------------------------------------------------------------------
// Function vectors
// ---------------------------------------------------------------------------

/// A function on an ordered point list, with exact cyclotomic values.
#[derive(Clone, Debug)]
pub struct FunctionVector {
    points: Arc<PointList>,
    values: Vec<CycNumber>,
}

impl FunctionVector {
    pub fn new(points: Arc<PointList>, values: Vec<CycNumber>) -> FunctionVector {
        debug_assert_eq!(points.len(), values.len());
        FunctionVector { points, values }
    }

    pub fn zero(points: Arc<PointList>, ring: &Arc<CycField>) -> FunctionVector {
        let values = alloc::vec![ring.zero(); points.len()];
        FunctionVector { points, values }
    }

    pub fn delta(points: Arc<PointList>, ring: &Arc<CycField>, position: usize) -> FunctionVector {
        let mut f = FunctionVector::zero(points, ring);
        f.values[position] = ring.one();
        f
    }

    pub fn points(&self) -> &Arc<PointList> {
        &self.points
    }

    pub fn values(&self) -> &[CycNumber] {
        &self.values
    }

    pub fn set_value(&mut self, position: usize, v: CycNumber) {
        self.values[position] = v;
    }

    pub fn value_at_key(&self, key: u64) -> Option<&CycNumber> {
        self.points.position(key).map(|p| &self.values[p])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycNumber::is_zero)
    }

    pub fn sum(&self, ring: &Arc<CycField>) -> CycNumber {
        self.values.iter().fold(ring.zero(), |acc, v| &acc + v)
    }

    /// Coordinate projection onto a sub-ambient (keys must be a subset).
    pub fn restrict(&self, sub: &Arc<PointList>) -> FunctionVector {
        let values = sub
            .keys()
            .iter()
            .map(|k| {
                let pos = self.points.position(*k).expect("restriction target is a subset");
                self.values[pos].clone()
            })
            .collect();
        FunctionVector { points: Arc::clone(sub), values }
    }
}

// ---------------------------------------------------------------------------
// Fourier transform
// ---------------------------------------------------------------------------

/// Unnormalized Fourier transform on sl₂: F(f)(x) = Σ_ξ f(ξ)·ζ_p^{Tr(tr(ξx))}.
/// The involution constant is q³: F(F(f)) = q³·(f ∘ negation).
pub fn fourier(model: &LieModel, f: &FunctionVector) -> FunctionVector {
    debug_assert!(PointList::same_points(f.points(), &model.points));
    let p = model.spec.p();
    let ring = CycField::new(p).expect("prime conductor");
    let support: Vec<(usize, &CycNumber)> = f
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .collect();
    let n = model.elements.len();
    let mut out = Vec::with_capacity(n);
    if support.iter().all(|(_, v)| v.to_rational().is_some()) {
        // Rational input: bucket the weights per ψ-exponent and reduce once
        // per output point.
        let rational_support: Vec<(usize, BigRational)> = support
            .iter()
            .map(|(i, v)| (*i, v.to_rational().unwrap()))
            .collect();
        for x in 0..n {
            let mut weights =
                alloc::vec![BigRational::from_integer(0.into()); p as usize];
            for (i, w) in &rational_support {
                weights[model.psi_exponent(*i, x) as usize] += w;
            }
            out.push(
                ring.from_exponent_sum(
                    weights.into_iter().enumerate().map(|(e, w)| (e as u64, w)),
                ),
            );
        }
    } else {
        let roots: Vec<CycNumber> = (0..p).map(|e| ring.root_of_unity(e as i64)).collect();
        for x in 0..n {
            let mut acc = ring.zero();
            for (i, v) in &support {
                acc = &acc + &(*v * &roots[model.psi_exponent(*i, x) as usize]);
            }
            out.push(acc);
        }
    }
    FunctionVector::new(Arc::clone(&model.points), out)
}

/// f ∘ negation on the full sl₂ ambient.
pub fn negation_pullback(model: &LieModel, f: &FunctionVector) -> FunctionVector {
    let values = model
        .elements
        .iter()
        .map(|x| {
            let neg_key = (-x).key();
            f.value_at_key(neg_key).expect("full ambient").clone()
        })
        .collect();
    FunctionVector::new(Arc::clone(&model.points), values)
}

// ---------------------------------------------------------------------------
// Cuspidal spaces
// ---------------------------------------------------------------------------

/// Cuspidal functions on g by the Fourier-support definition: kernel of
/// {F(f)(ξ) = 0 : ξ non-elliptic}, a cyclotomic constraint matrix over
/// ℚ(ζ_p).  The dimension equals the number of elliptic points because the
/// Fourier transform is a bijection.
pub fn cuspidal_space_fourier(model: &LieModel) -> SubspaceBasis {
    let p = model.spec.p();
    let ring = CycField::new(p).expect("prime conductor");
    let roots: Vec<CycNumber> = (0..p).map(|e| ring.root_of_unity(e as i64)).collect();
    let n = model.elements.len();
    let rows: Vec<Vec<CycNumber>> = (0..n)
        .filter(|&xi| !model.is_elliptic_at(xi))
        .map(|xi| {
            (0..n)
                .map(|x| roots[model.psi_exponent(xi, x) as usize].clone())
                .collect()
        })
        .collect();
    SubspaceBasis::kernel(Arc::clone(&model.points), ring, rows)
}

/// One 0/1 indicator row per coset of each radical over the whole ambient,
/// deduplicated (cosets of a fixed radical partition the space).
fn coset_rows<P: OrbitPoint>(
    ambient: &Arc<PointList>,
    all: &[P],
    radicals: &[Radical<P>],
    ring: &Arc<CycField>,
) -> Vec<Vec<CycNumber>> {
    let mut rows = Vec::new();
    for rad in radicals {
        let mut seen = alloc::vec![false; all.len()];
        for base in all {
            let positions: Vec<usize> = rad
                .elements
                .iter()
                .map(|n| {
                    ambient
                        .position(base.translate(n).point_key())
                        .expect("ambient is closed under radical translation")
                })
                .collect();
            let least = *positions.iter().min().unwrap();
            if seen[least] {
                continue;
            }
            let mut row = alloc::vec![ring.zero(); ambient.len()];
            for pos in &positions {
                seen[*pos] = true;
                row[*pos] = ring.one();
            }
            rows.push(row);
        }
    }
    rows
}

/// Cuspidal functions on g by the coset-sum characterization: kernel of
/// {Σ_{n∈N} f(x+n) = 0 : x ∈ g, N a nilradical line} over ℚ.  Must agree
/// with `cuspidal_space_fourier` exactly; the two routes form an oracle
/// pair.
pub fn cuspidal_space_cosets(model: &LieModel) -> SubspaceBasis {
    let ring = CycField::rationals();
    let rows = coset_rows(&model.points, &model.elements, &model.radicals, &ring);
    SubspaceBasis::kernel(Arc::clone(&model.points), ring, rows)
}

/// Cuspidal functions on G: kernel of {Σ_{u∈U} f(gu) = 0 : g ∈ G, U a
/// unipotent radical} over ℚ.
pub fn cuspidal_space_group(model: &GroupModel) -> SubspaceBasis {
    let ring = CycField::rationals();
    let rows = coset_rows(&model.points, &model.elements, &model.radicals, &ring);
    SubspaceBasis::kernel(Arc::clone(&model.points), ring, rows)
}

// ---------------------------------------------------------------------------
// Per-closure spaces and the conjecture verdict
// ---------------------------------------------------------------------------

/// Weightless functions on a closure: kernel of the coset-sum constraints
/// indexed by the incidence pairs, one row per distinct coset.
pub fn weightless_space<P: OrbitPoint>(
    closed: &ClosedOrbit<P>,
    incidence: &IncidenceSet<P>,
    radicals: &[Radical<P>],
) -> SubspaceBasis {
    let ring = CycField::rationals();
    let ambient = PointList::new(closed.closure_keys.clone());
    let mut seen: alloc::collections::BTreeSet<(usize, usize)> =
        alloc::collections::BTreeSet::new();
    let mut rows = Vec::new();
    for (base, ri) in &incidence.pairs {
        let positions: Vec<usize> = radicals[*ri]
            .elements
            .iter()
            .map(|n| {
                ambient
                    .position(base.translate(n).point_key())
                    .expect("incidence translates stay in the closure")
            })
            .collect();
        let least = *positions.iter().min().unwrap();
        if !seen.insert((*ri, least)) {
            continue;
        }
        let mut row = alloc::vec![ring.zero(); ambient.len()];
        for pos in positions {
            row[pos] = ring.one();
        }
        rows.push(row);
    }
    SubspaceBasis::kernel(ambient, ring, rows)
}

/// Echelonized coordinate projection of a space of functions onto a
/// sub-ambient given by closure keys.
pub fn restricted_space(closure_keys: &[u64], source: &SubspaceBasis) -> SubspaceBasis {
    let ambient = PointList::new(closure_keys.to_vec());
    let rows: Vec<Vec<CycNumber>> = source
        .rows()
        .iter()
        .map(|row| {
            closure_keys
                .iter()
                .map(|k| {
                    let pos = source.points().position(*k).expect("closure inside the ambient");
                    row[pos].clone()
                })
                .collect()
        })
        .collect();
    SubspaceBasis::echelonize(ambient, Arc::clone(source.ring()), rows)
}

/// Restriction of the cuspidal space to a closure.
pub fn restricted_cuspidal<P: OrbitPoint>(
    closed: &ClosedOrbit<P>,
    cuspidal_full: &SubspaceBasis,
) -> SubspaceBasis {
    restricted_space(&closed.closure_keys, cuspidal_full)
}

/// Verdict record for one orbit closure.  `containment_holds` is a sanity
/// gate (true in every emitted report; a violation raises an error instead);
/// `equality_holds` is the experimental verdict.
#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub mode: SpaceMode,
    pub orbit_name: String,
    pub orbit_size: usize,
    pub closure_size: usize,
    pub added_orbit_sizes: Vec<usize>,
    pub incidence_pairs: usize,
    pub coset_constraints: usize,
    pub dim_weightless: usize,
    pub dim_restricted_cuspidal: usize,
    pub containment_holds: bool,
    pub equality_holds: bool,
    /// A weightless function outside the restricted-cuspidal space, present
    /// exactly when equality fails: the first echelon basis row failing the
    /// membership test.
    pub witness: Option<FunctionVector>,
}

/// Build both subspaces attached to one orbit closure, compare them, and
/// enforce the containment gate.
pub fn verify_orbit<P: OrbitPoint>(
    mode: SpaceMode,
    name: String,
    closed: &ClosedOrbit<P>,
    radicals: &[Radical<P>],
    cuspidal_full: &SubspaceBasis,
) -> Result<ConjectureReport, SpacesError> {
    let incidence = incidence_set(closed, radicals);
    debug_assert!(incidence.verify(closed, radicals), "incidence translates re-verified");
    let weightless = weightless_space(closed, &incidence, radicals);
    let restricted = restricted_cuspidal(closed, cuspidal_full);
    let comparison = restricted
        .compare(&weightless)
        .expect("both spaces share the closure ambient");
    let contained = matches!(
        comparison.relation,
        SubspaceRelation::Equal | SubspaceRelation::FirstInSecond
    );
    if !contained {
        return Err(SpacesError::ContainmentViolation { orbit: name });
    }
    let equality = comparison.relation == SubspaceRelation::Equal;
    let witness = if equality {
        None
    } else {
        weightless
            .rows()
            .iter()
            .find(|row| !restricted.contains_vector(row))
            .map(|row| FunctionVector::new(Arc::clone(weightless.points()), row.clone()))
    };
    let coset_constraints = weightless.points().len() - weightless.dim();
    Ok(ConjectureReport {
        mode,
        orbit_name: name,
        orbit_size: closed.orbit.size(),
        closure_size: closed.closure.len(),
        added_orbit_sizes: closed.added_orbits.iter().map(Orbit::size).collect(),
        incidence_pairs: incidence.len(),
        coset_constraints,
        dim_weightless: weightless.dim(),
        dim_restricted_cuspidal: restricted.dim(),
        containment_holds: true,
        equality_holds: equality,
        witness,
    })
}

/// All Lie-mode reports for one field, in orbit order.
pub fn verify_conjecture_lie(model: &LieModel) -> Result<Vec<ConjectureReport>, SpacesError> {
    let cuspidal = cuspidal_space_cosets(model);
    model
        .orbits
        .iter()
        .map(|o| {
            let closed = orbit_closure(o, &model.orbits);
            verify_orbit(SpaceMode::Lie, lie_orbit_name(o), &closed, &model.radicals, &cuspidal)
        })
        .collect()
}

/// All group-mode reports for one field, in class order.
pub fn verify_conjecture_group(model: &GroupModel) -> Result<Vec<ConjectureReport>, SpacesError> {
    let cuspidal = cuspidal_space_group(model);
    model
        .classes
        .iter()
        .map(|o| {
            let closed = orbit_closure(o, &model.classes);
            verify_orbit(
                SpaceMode::Group,
                group_orbit_name(o),
                &closed,
                &model.radicals,
                &cuspidal,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lie3() -> LieModel {
        LieModel::new(&FieldSpec::new(3, 1).unwrap())
    }

    #[test]
    fn fourier_of_delta_and_constant() {
        let m = lie3();
        let ring = CycField::new(3).unwrap();
        // F(delta_0) = 1 everywhere.
        let d0 = FunctionVector::delta(Arc::clone(&m.points), &ring, 0);
        let fd0 = fourier(&m, &d0);
        assert!(fd0.values().iter().all(CycNumber::is_one));
        // F(1) = q^3 * delta_0 by character orthogonality.
        let ones =
            FunctionVector::new(Arc::clone(&m.points), alloc::vec![ring.one(); m.points.len()]);
        let f1 = fourier(&m, &ones);
        assert_eq!(f1.values()[0], ring.from_int(27));
        assert!(f1.values().iter().skip(1).all(CycNumber::is_zero));
    }

    #[test]
    fn fourier_matches_the_explicit_witness_evaluation() {
        // f_a = F(delta_{ax}) with x = [[0,1],[eps,0]] satisfies
        // f_a(z_u) = psi(a*u) at z_u = [[0,0],[u,0]].
        let m = lie3();
        let spec = &m.spec;
        let ring = CycField::new(3).unwrap();
        let eps = spec.canonical_nonsquare();
        let x = AlgElement::new(spec.zero(), spec.one(), eps);
        for a_idx in 1..3 {
            let a = spec.from_index(a_idx);
            let ax = x.scale(&a);
            let pos = m.points.position(ax.key()).unwrap();
            let f = fourier(&m, &FunctionVector::delta(Arc::clone(&m.points), &ring, pos));
            for u_idx in 1..3 {
                let u = spec.from_index(u_idx);
                let z_u = AlgElement::new(spec.zero(), spec.zero(), u.clone());
                let expected = ring.root_of_unity((&a * &u).absolute_trace() as i64);
                assert_eq!(f.value_at_key(z_u.key()).unwrap(), &expected);
            }
        }
    }

    #[test]
    fn fourier_involution_is_scaled_negation() {
        let m = lie3();
        let ring = CycField::new(3).unwrap();
        let f = FunctionVector::delta(Arc::clone(&m.points), &ring, 7);
        let ff = fourier(&m, &fourier(&m, &f));
        let neg = negation_pullback(&m, &f);
        let scale = BigRational::from_integer(27.into());
        for (lhs, rhs) in ff.values().iter().zip(neg.values()) {
            assert_eq!(*lhs, rhs.scale(&scale));
        }
    }

    #[test]
    fn cuspidal_dimension_is_the_elliptic_count() {
        let m = lie3();
        assert_eq!(m.elliptic_count(), 6);
        let by_fourier = cuspidal_space_fourier(&m);
        assert_eq!(by_fourier.dim(), 6);
        let by_cosets = cuspidal_space_cosets(&m);
        assert_eq!(by_cosets.dim(), 6);
        // Oracle equivalence: the two routes agree as subspaces.
        let cmp = by_cosets.compare(&by_fourier).unwrap();
        assert_eq!(cmp.relation, SubspaceRelation::Equal);
        // Every basis element sums to zero: F(f)(0) = 0 since 0 is not
        // elliptic.
        let ring = CycField::rationals();
        for row in by_cosets.rows() {
            assert!(row.iter().fold(ring.zero(), |a, c| &a + c).is_zero());
        }
    }

    #[test]
    fn fourier_delta_at_elliptic_point_is_cuspidal() {
        let m = lie3();
        let ring = CycField::new(3).unwrap();
        let cusp = cuspidal_space_cosets(&m);
        let xi = (0..m.elements.len()).find(|&i| m.is_elliptic_at(i)).unwrap();
        let f = fourier(&m, &FunctionVector::delta(Arc::clone(&m.points), &ring, xi));
        assert!(cusp.contains_vector(f.values()));
    }

    #[test]
    fn weightless_dimensions_q3() {
        let m = lie3();
        let reports = verify_conjecture_lie(&m).unwrap();
        assert_eq!(reports.len(), 4);
        for r in &reports {
            assert!(r.containment_holds);
            match r.orbit_name.as_str() {
                // 9 points, 4 independent line sums (distinct lines meet
                // only at 0).
                "nilpotent" => {
                    assert_eq!(r.closure_size, 9);
                    assert_eq!(r.dim_weightless, 5);
                    assert_eq!(r.incidence_pairs, 12);
                    assert_eq!(r.coset_constraints, 4);
                }
                // Empty incidence set: no constraints; restriction is
                // onto because F(delta_xi)(0) = 1 for elliptic xi.
                "zero" => {
                    assert_eq!(r.closure_size, 1);
                    assert_eq!(r.dim_weightless, 1);
                    assert_eq!(r.dim_restricted_cuspidal, 1);
                }
                "det1_elliptic" => {
                    assert_eq!(r.closure_size, 6);
                    assert_eq!(r.dim_weightless, 6);
                }
                "det2_split" => {
                    assert_eq!(r.closure_size, 12);
                }
                other => panic!("unexpected orbit {other}"),
            }
        }
    }

    #[test]
    fn restriction_of_full_space_is_itself() {
        let m = lie3();
        let cusp = cuspidal_space_cosets(&m);
        let all_keys: Vec<u64> = m.points.keys().to_vec();
        let again = restricted_space(&all_keys, &cusp);
        assert_eq!(again.compare(&cusp).unwrap().relation, SubspaceRelation::Equal);
    }

    #[test]
    fn group_mode_reports_q3() {
        let gm = GroupModel::new(&FieldSpec::new(3, 1).unwrap());
        let cusp = cuspidal_space_group(&gm);
        // Constant functions are not cuspidal: each coset row sums to q.
        let ring = CycField::rationals();
        let ones = alloc::vec![ring.one(); gm.points.len()];
        assert!(!cusp.contains_vector(&ones));
        let reports = verify_conjecture_group(&gm).unwrap();
        assert_eq!(reports.len(), 5);
        for r in &reports {
            assert!(r.containment_holds);
        }
    }
}
