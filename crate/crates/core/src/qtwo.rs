//! Fourier-restriction surjectivity sweeps over extension towers 𝔽_{q^n}.
//!
//! Given polynomial maps P : V → 𝔸^r and Q : V^∨ → 𝔸^r over 𝔽_q and an
//! open set U = {D ≠ 0}, each tower level n asks whether every function on
//! X_n = P⁻¹(0)(𝔽_{q^n}) is the restriction of the Fourier transform of a
//! function supported on Q⁻¹(U)(𝔽_{q^n}).  That holds exactly when the
//! character matrix M[x, ξ] = ζ_p^{Tr(⟨ξ,x⟩)} (coordinate dot pairing
//! composed with the absolute trace) has full row rank |X_n| over the
//! streamed columns ξ ∈ Q⁻¹(U); the sweep streams columns through the
//! incremental rank accumulator and stops early at saturation.
//!
//! The geometric hypotheses on P and Q (flatness, no affine lines in X,
//! absolutely irreducible fibers) are not decidable at this scale; configs
//! carry a user attestation and reports restate the unchecked hypotheses.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::cyclo::{CycField, CycNumber};
use crate::field::{FieldElement, FieldEmbedding, FieldSpec};
use crate::linalg::StreamingRank;

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QtwoError {
    BudgetExceeded { points: u64, budget: u64 },
    /// The fiber X_n is empty, so the surjectivity question is vacuous.
    EmptyFiber { level: u32 },
    ArityMismatch,
    TowerConstruction,
}

impl fmt::Display for QtwoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QtwoError::BudgetExceeded { points, budget } => {
                write!(f, "enumerating {points} points exceeds the budget {budget}")
            }
            QtwoError::EmptyFiber { level } => {
                write!(f, "X_n is empty at tower level {level}")
            }
            QtwoError::ArityMismatch => write!(f, "polynomial arity does not match the map"),
            QtwoError::TowerConstruction => write!(f, "could not construct the extension field"),
        }
    }
}

/// One monomial: a base-field coefficient and one exponent per variable.
#[derive(Debug, Clone)]
pub struct Monomial {
    pub coeff: FieldElement,
    pub exponents: Vec<u32>,
}

/// A multivariate polynomial over 𝔽_q as an explicit monomial list.
#[derive(Debug, Clone)]
pub struct Poly {
    pub vars: usize,
    pub terms: Vec<Monomial>,
}

impl Poly {
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|m| m.exponents.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_zero_poly(&self) -> bool {
        self.terms.is_empty() || self.terms.iter().all(|m| m.coeff.is_zero())
    }

    /// Evaluate over the extension, coefficients mapped through the
    /// embedding.
    fn eval(&self, emb: &FieldEmbedding, point: &[FieldElement]) -> FieldElement {
        debug_assert_eq!(point.len(), self.vars);
        let ext = emb.ext();
        let mut acc = ext.zero();
        for mono in &self.terms {
            if mono.coeff.is_zero() {
                continue;
            }
            let mut term = emb.map(&mono.coeff);
            for (x, &e) in point.iter().zip(&mono.exponents) {
                if e > 0 {
                    term = &term * &x.pow(e as u64);
                }
            }
            acc = &acc + &term;
        }
        acc
    }
}

/// A polynomial map 𝔸^m → 𝔸^r over 𝔽_q.
#[derive(Debug, Clone)]
pub struct PolyMap {
    pub vars: usize,
    pub polys: Vec<Poly>,
}

impl PolyMap {
    pub fn outputs(&self) -> usize {
        self.polys.len()
    }

    pub fn degree(&self) -> u32 {
        self.polys.iter().map(Poly::degree).max().unwrap_or(0)
    }
}

/// A nonempty Zariski-open subset of 𝔸^r, as the complement of the
/// hypersurface {D = 0}.
#[derive(Debug, Clone)]
pub struct OpenSetSpec {
    pub denominator: Poly,
}

/// The tower level 𝔽_{q^n} together with the embedding of the base field.
pub struct TowerLevel {
    pub n: u32,
    pub embedding: FieldEmbedding,
}

impl TowerLevel {
    pub fn build(base: &Arc<FieldSpec>, n: u32, budget: u64) -> Result<TowerLevel, QtwoError> {
        let ext = FieldSpec::with_bound(base.p(), base.k() * n, budget)
            .map_err(|_| QtwoError::TowerConstruction)?;
        let embedding =
            FieldEmbedding::new(base, &ext).map_err(|_| QtwoError::TowerConstruction)?;
        Ok(TowerLevel { n, embedding })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.embedding.ext()
    }
}

fn checked_point_count(q_ext: u64, vars: usize, budget: u64) -> Result<u64, QtwoError> {
    let mut total: u64 = 1;
    for _ in 0..vars {
        total = total
            .checked_mul(q_ext)
            .filter(|&t| t <= budget)
            .ok_or(QtwoError::BudgetExceeded { points: u64::MAX, budget })?;
    }
    if total > budget {
        return Err(QtwoError::BudgetExceeded { points: total, budget });
    }
    Ok(total)
}

/// All points of (𝔽_{q^n})^m in mixed-radix index order.
fn enumerate_points(level: &TowerLevel, vars: usize, budget: u64) -> Result<Vec<Vec<FieldElement>>, QtwoError> {
    let ext = level.field();
    let qn = ext.q();
    let total = checked_point_count(qn, vars, budget)?;
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut rem = idx;
        let mut pt = Vec::with_capacity(vars);
        for _ in 0..vars {
            pt.push(ext.from_index(rem % qn));
            rem /= qn;
        }
        out.push(pt);
    }
    Ok(out)
}

/// X_n = P⁻¹(0)(𝔽_{q^n}), by brute-force enumeration of the source space.
pub fn fiber_points(
    pmap: &PolyMap,
    level: &TowerLevel,
    budget: u64,
) -> Result<Vec<Vec<FieldElement>>, QtwoError> {
    let pts = enumerate_points(level, pmap.vars, budget)?;
    Ok(pts
        .into_iter()
        .filter(|pt| pmap.polys.iter().all(|p| p.eval(&level.embedding, pt).is_zero()))
        .collect())
}

/// Q⁻¹(U)(𝔽_{q^n}) = {ξ : D(Q(ξ)) ≠ 0}.
pub fn open_preimage_points(
    qmap: &PolyMap,
    open: &OpenSetSpec,
    level: &TowerLevel,
    budget: u64,
) -> Result<Vec<Vec<FieldElement>>, QtwoError> {
    if open.denominator.vars != qmap.outputs() {
        return Err(QtwoError::ArityMismatch);
    }
    let pts = enumerate_points(level, qmap.vars, budget)?;
    Ok(pts
        .into_iter()
        .filter(|pt| {
            let image: Vec<FieldElement> =
                qmap.polys.iter().map(|p| p.eval(&level.embedding, pt)).collect();
            !open.denominator.eval(&level.embedding, &image).is_zero()
        })
        .collect())
}

/// Per-level record of the streamed rank computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRecord {
    pub n: u32,
    pub field_size: u64,
    pub x_count: usize,
    pub source_count: usize,
    pub rank: usize,
    pub surjective: bool,
    /// Columns consumed before saturation (equals source_count when the
    /// rank never saturates).
    pub columns_streamed: usize,
}

/// Build the character-matrix columns over Q⁻¹(U) and stream them through
/// the incremental rank with early stop at |X_n|.
pub fn surjectivity_check(
    pmap: &PolyMap,
    qmap: &PolyMap,
    open: &OpenSetSpec,
    base: &Arc<FieldSpec>,
    n: u32,
    budget: u64,
) -> Result<LevelRecord, QtwoError> {
    if pmap.vars != qmap.vars || pmap.outputs() != qmap.outputs() {
        return Err(QtwoError::ArityMismatch);
    }
    let level = TowerLevel::build(base, n, budget)?;
    let xs = fiber_points(pmap, &level, budget)?;
    if xs.is_empty() {
        return Err(QtwoError::EmptyFiber { level: n });
    }
    let sources = open_preimage_points(qmap, open, &level, budget)?;
    let p = base.p();
    let ring = CycField::new(p).expect("prime conductor");
    let roots: Vec<CycNumber> = (0..p).map(|e| ring.root_of_unity(e as i64)).collect();
    let mut rank = StreamingRank::new(xs.len());
    let mut streamed = 0usize;
    for xi in &sources {
        if rank.saturated() {
            break;
        }
        let col: Vec<CycNumber> = xs
            .iter()
            .map(|x| {
                let mut dot = level.field().zero();
                for (a, b) in xi.iter().zip(x) {
                    dot = &dot + &(a * b);
                }
                roots[dot.absolute_trace() as usize].clone()
            })
            .collect();
        rank.push_column(col);
        streamed += 1;
    }
    Ok(LevelRecord {
        n,
        field_size: level.field().q(),
        x_count: xs.len(),
        source_count: sources.len(),
        rank: rank.rank(),
        surjective: rank.rank() == xs.len(),
        columns_streamed: streamed,
    })
}

/// Sweep levels n = 1..=n_max, recording the first surjective level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepResult {
    pub levels: Vec<LevelRecord>,
    pub first_surjective_n: Option<u32>,
}

pub fn sweep(
    pmap: &PolyMap,
    qmap: &PolyMap,
    open: &OpenSetSpec,
    base: &Arc<FieldSpec>,
    n_max: u32,
    budget: u64,
) -> Result<SweepResult, QtwoError> {
    let mut levels = Vec::new();
    let mut first = None;
    for n in 1..=n_max {
        let rec = surjectivity_check(pmap, qmap, open, base, n, budget)?;
        if rec.surjective && first.is_none() {
            first = Some(n);
        }
        levels.push(rec);
    }
    Ok(SweepResult { levels, first_surjective_n: first })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Arc<FieldSpec> {
        FieldSpec::new(5, 1).unwrap()
    }

    fn poly(spec: &Arc<FieldSpec>, vars: usize, terms: &[(i64, &[u32])]) -> Poly {
        Poly {
            vars,
            terms: terms
                .iter()
                .map(|(c, e)| Monomial { coeff: spec.from_int(*c), exponents: e.to_vec() })
                .collect(),
        }
    }

    /// y^2 - x^3 - x as a map A^2 -> A^1.
    fn curve_map(spec: &Arc<FieldSpec>) -> PolyMap {
        PolyMap {
            vars: 2,
            polys: alloc::vec![poly(
                spec,
                2,
                &[(1, &[0, 2]), (-1, &[3, 0]), (-1, &[1, 0])],
            )],
        }
    }

    #[test]
    fn curve_point_counts() {
        // Affine points of y^2 = x^3 + x over F_5: x = 0, 2, 3 each give
        // y = 0 and no other x contributes — 3 points.  (Character-sum
        // oracle: sum over x of 1 + chi2(x^3+x) = 3.)
        let spec = f5();
        let pmap = curve_map(&spec);
        let level = TowerLevel::build(&spec, 1, DEFAULT_ENUMERATION_BUDGET).unwrap();
        let pts = fiber_points(&pmap, &level, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(pts.len(), 3);

        // Independent census route within the field layer: quadratic
        // character count of y^2 = c solutions.
        let mut by_charsum = 0u64;
        for x in spec.elements() {
            let rhs = &(&(&x * &x) * &x) + &x;
            by_charsum += match (rhs.is_zero(), rhs.is_square()) {
                (true, _) => 1,
                (false, true) => 2,
                (false, false) => 0,
            };
        }
        assert_eq!(by_charsum, 3);

        // F_25: #E(F_25) = 25 + 1 + 6 = 32 projective, 31 affine
        // (a_25 = a_5^2 - 2*5 = -6).
        let level2 = TowerLevel::build(&spec, 2, DEFAULT_ENUMERATION_BUDGET).unwrap();
        let pts2 = fiber_points(&pmap, &level2, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(pts2.len(), 31);
    }

    #[test]
    fn single_variable_fibers() {
        let spec = f5();
        let level = TowerLevel::build(&spec, 1, 100).unwrap();
        // P = x: fiber {0}.
        let pmap = PolyMap { vars: 1, polys: alloc::vec![poly(&spec, 1, &[(1, &[1])])] };
        let pts = fiber_points(&pmap, &level, 100).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0][0].is_zero());
        // P = 1: empty fiber.
        let one = PolyMap { vars: 1, polys: alloc::vec![poly(&spec, 1, &[(1, &[0])])] };
        assert!(fiber_points(&one, &level, 100).unwrap().is_empty());
    }

    #[test]
    fn open_preimages() {
        let spec = f5();
        let level = TowerLevel::build(&spec, 1, 100).unwrap();
        let qmap = PolyMap { vars: 1, polys: alloc::vec![poly(&spec, 1, &[(1, &[1])])] };
        // D = t: all nonzero points.
        let d_t = OpenSetSpec { denominator: poly(&spec, 1, &[(1, &[1])]) };
        assert_eq!(open_preimage_points(&qmap, &d_t, &level, 100).unwrap().len(), 4);
        // D = 1: everything.
        let d_one = OpenSetSpec { denominator: poly(&spec, 1, &[(1, &[0])]) };
        assert_eq!(open_preimage_points(&qmap, &d_one, &level, 100).unwrap().len(), 5);
    }

    #[test]
    fn curve_open_preimage_complement() {
        // Q = P on the curve and D = t: complement of the fiber over 0,
        // 25 - 3 = 22 points at n = 1.
        let spec = f5();
        let qmap = curve_map(&spec);
        let level = TowerLevel::build(&spec, 1, DEFAULT_ENUMERATION_BUDGET).unwrap();
        let open = OpenSetSpec { denominator: poly(&spec, 1, &[(1, &[1])]) };
        let pts = open_preimage_points(&qmap, &open, &level, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(pts.len(), 22);
    }

    #[test]
    fn full_source_is_always_surjective() {
        // D = 1 makes the source all of V^dual, whose character matrix has
        // full rank (Fourier invertibility).
        let spec = f5();
        let pmap = curve_map(&spec);
        let open = OpenSetSpec { denominator: poly(&spec, 1, &[(1, &[0])]) };
        let rec = surjectivity_check(&pmap, &pmap, &open, &spec, 1, DEFAULT_ENUMERATION_BUDGET)
            .unwrap();
        assert!(rec.surjective);
        assert_eq!(rec.rank, rec.x_count);
        // Early stop engaged before the full column supply.
        assert!(rec.columns_streamed < rec.source_count);
    }

    #[test]
    fn empty_open_set_gives_rank_zero() {
        // D = t^25 - t vanishes on all of F_25, hence on F_5: the source is
        // empty at n = 1 and 2 while X_n = {0} is nonempty.
        let spec = f5();
        let pmap = PolyMap { vars: 1, polys: alloc::vec![poly(&spec, 1, &[(1, &[1])])] };
        let open = OpenSetSpec { denominator: poly(&spec, 1, &[(1, &[25]), (-1, &[1])]) };
        for n in [1u32, 2] {
            let rec =
                surjectivity_check(&pmap, &pmap, &open, &spec, n, DEFAULT_ENUMERATION_BUDGET)
                    .unwrap();
            assert_eq!(rec.source_count, 0, "n={n}");
            assert_eq!(rec.rank, 0);
            assert!(!rec.surjective);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let spec = f5();
        let pmap = curve_map(&spec);
        let open = OpenSetSpec { denominator: poly(&spec, 1, &[(1, &[0])]) };
        let err = surjectivity_check(&pmap, &pmap, &open, &spec, 2, 100).unwrap_err();
        assert!(matches!(err, QtwoError::BudgetExceeded { .. } | QtwoError::TowerConstruction));
    }

    #[test]
    fn sweep_is_deterministic() {
        let spec = f5();
        let pmap = curve_map(&spec);
        let open = OpenSetSpec { denominator: poly(&spec, 1, &[(1, &[1])]) };
        let s1 = sweep(&pmap, &pmap, &open, &spec, 2, DEFAULT_ENUMERATION_BUDGET).unwrap();
        let s2 = sweep(&pmap, &pmap, &open, &spec, 2, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.levels.len(), 2);
    }
}
