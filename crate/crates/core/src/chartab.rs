//! The exact character table of PGL(2,q) and multiplicity diagnostics for
//! the permutation representations on conjugacy classes.
//!
//! The table comes from the classical GL(2,q) families filtered to the
//! characters trivial on the center: two one-dimensional characters
//! (trivial and sign-of-determinant), two of dimension q (Steinberg and its
//! sign twist), (q−3)/2 principal-series characters W_{α,α⁻¹} of dimension
//! q+1, and (q−1)/2 cuspidal characters of dimension q−1 attached to
//! characters of 𝔽_{q²}^* trivial on 𝔽_q^*.  Values are exact elements of
//! ℚ(ζ_{q²−1}); the table is validated at construction by row orthonormality
//! and Σ(dim)² = |PGL₂| = q³ − q.
//!
//! Multiplicities of irreducibles in ℂ[O] (conjugation action on a class O)
//! are inner products of the fixed-point character with the table rows;
//! they must land in non-negative integers, and Σ m² must reproduce the
//! Burnside orbit count on O×O.  The Steinberg multiplicity also has an
//! independent route through fixed points on P¹ (perm character of P¹
//! minus 1), used as an oracle.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cyclo::{CycField, CycNumber};
use crate::field::{FieldElement, FieldEmbedding, FieldSpec};
use crate::sl2::{p1_fixed_count, p1_points, GroupElement, Orbit, OrbitPoint};
use crate::spaces::GroupModel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChartabError {
    /// Characters failed exact row orthonormality — an internal bug.
    OrthogonalityFailure { row: usize, col: usize },
    DimensionSumMismatch,
    /// An inner product that must be a non-negative integer was not.
    NonIntegerMultiplicity { char_index: usize },
    UnsupportedField,
}

impl fmt::Display for ChartabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartabError::OrthogonalityFailure { row, col } => {
                write!(f, "character rows {row} and {col} are not orthonormal")
            }
            ChartabError::DimensionSumMismatch => {
                write!(f, "sum of squared dimensions does not match the group order")
            }
            ChartabError::NonIntegerMultiplicity { char_index } => {
                write!(f, "multiplicity of character {char_index} is not a non-negative integer")
            }
            ChartabError::UnsupportedField => {
                write!(f, "character table construction needs q^2 within the field bound")
            }
        }
    }
}

/// GL₂-type of one PGL₂ conjugacy class, with the eigenvalue data the value
/// formulas need.
#[derive(Debug, Clone)]
pub enum ClassKind {
    /// The image of the center: the identity class.
    Central,
    /// Equal eigenvalues x, non-diagonalizable.
    Unipotent { x: FieldElement },
    /// Distinct eigenvalues x ≠ y in 𝔽_q.
    Split { x: FieldElement, y: FieldElement },
    /// Conjugate eigenvalues z, z^q in 𝔽_{q²} ∖ 𝔽_q.
    Elliptic { z: FieldElement },
}

#[derive(Debug, Clone)]
pub struct ClassData {
    pub rep: GroupElement,
    pub size: u64,
    pub kind: ClassKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharKind {
    Trivial,
    DetSign,
    Steinberg,
    SteinbergSign,
    /// Induced from α ⊠ α⁻¹ with α = χ_r on 𝔽_q^*, α² ≠ 1, r ≤ (q−3)/2.
    PrincipalSeries { r: u64 },
    /// Attached to the character of 𝔽_{q²}^* of exponent (q−1)·t, trivial
    /// on 𝔽_q^*, t ≤ (q−1)/2.
    Cuspidal { t: u64 },
}

impl fmt::Display for CharKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharKind::Trivial => write!(f, "trivial"),
            CharKind::DetSign => write!(f, "det_sign"),
            CharKind::Steinberg => write!(f, "steinberg"),
            CharKind::SteinbergSign => write!(f, "steinberg_sign"),
            CharKind::PrincipalSeries { r } => write!(f, "principal_series_{r}"),
            CharKind::Cuspidal { t } => write!(f, "cuspidal_{t}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct IrredChar {
    pub kind: CharKind,
    pub dim: u64,
    /// One exact value per conjugacy class, in class order.
    pub values: Vec<CycNumber>,
}

pub struct CharacterTable {
    /// ℚ(ζ_{q²−1}).
    pub ring: Arc<CycField>,
    pub classes: Vec<ClassData>,
    pub chars: Vec<IrredChar>,
}

/// Square root of a nonzero square, via the discrete log.
fn field_sqrt(a: &FieldElement) -> FieldElement {
    let j = a.dlog().expect("nonzero");
    debug_assert!(j.is_multiple_of(2), "square expected");
    a.spec().generator_power(j / 2)
}

fn classify(rep: &GroupElement, ext: &FieldSpec, emb: &FieldEmbedding) -> ClassKind {
    let spec = rep.spec();
    let t = rep.trace();
    let d = rep.det();
    let disc = &(&t * &t) - &(&spec.from_int(4) * &d);
    if disc.is_zero() {
        if *rep == GroupElement::identity(spec) {
            return ClassKind::Central;
        }
        let half = spec.from_int(2).inv().expect("odd characteristic");
        return ClassKind::Unipotent { x: &t * &half };
    }
    if disc.is_square() {
        let s = field_sqrt(&disc);
        let half = spec.from_int(2).inv().unwrap();
        let x = &(&t + &s) * &half;
        let y = &(&t - &s) * &half;
        ClassKind::Split { x, y }
    } else {
        // First root of X^2 - tX + d in F_{q^2}, index order.
        let te = emb.map(&t);
        let de = emb.map(&d);
        let ext_arc = emb.ext();
        let z = ext_arc
            .elements()
            .find(|z| (&(&(z * z) - &(&te * z)) + &de).is_zero())
            .expect("irreducible quadratic splits in the quadratic extension");
        let _ = ext;
        ClassKind::Elliptic { z }
    }
}

/// Build and validate the table.  Values use the conductor q²−1; α-characters
/// of 𝔽_q^* embed through ζ_{q−1} = ζ_{q²−1}^{q+1}.
pub fn character_table(model: &GroupModel) -> Result<CharacterTable, ChartabError> {
    let spec = &model.spec;
    let q = spec.q();
    let ext = FieldSpec::with_bound(spec.p(), 2 * spec.k(), q * q)
        .map_err(|_| ChartabError::UnsupportedField)?;
    let emb = FieldEmbedding::new(spec, &ext).map_err(|_| ChartabError::UnsupportedField)?;
    let n = q * q - 1;
    let ring = CycField::new(n).map_err(|_| ChartabError::UnsupportedField)?;

    let classes: Vec<ClassData> = model
        .classes
        .iter()
        .map(|o| ClassData {
            rep: o.representative().clone(),
            size: o.size() as u64,
            kind: classify(o.representative(), &ext, &emb),
        })
        .collect();

    // Character of F_q^* with exponent r, evaluated at a nonzero x.
    let alpha = |r: u64, x: &FieldElement| -> CycNumber {
        ring.root_of_unity((r * (q + 1) % n * x.dlog().expect("nonzero") % n) as i64)
    };
    // Character of F_{q^2}^* with exponent s, at nonzero z.
    let phi = |s: u64, z: &FieldElement| -> CycNumber {
        ring.root_of_unity((s % n * z.dlog().expect("nonzero") % n) as i64)
    };
    let eta_exp = (q - 1) / 2; // the quadratic character of F_q^*

    let mut chars: Vec<IrredChar> = Vec::new();

    // One-dimensional characters alpha(det) with alpha^2 = 1.
    for (kind, r) in [(CharKind::Trivial, 0u64), (CharKind::DetSign, eta_exp)] {
        let values = classes.iter().map(|c| alpha(r, &c.rep.det())).collect();
        chars.push(IrredChar { kind, dim: 1, values });
    }

    // Steinberg and its sign twist: q on the center, 0 on unipotents,
    // alpha(det) on split classes, -alpha(det) on elliptic ones.
    for (kind, r) in [(CharKind::Steinberg, 0u64), (CharKind::SteinbergSign, eta_exp)] {
        let values = classes
            .iter()
            .map(|c| match &c.kind {
                ClassKind::Central => ring.from_int(q as i64),
                ClassKind::Unipotent { .. } => ring.zero(),
                ClassKind::Split { .. } => alpha(r, &c.rep.det()),
                ClassKind::Elliptic { .. } => -&alpha(r, &c.rep.det()),
            })
            .collect();
        chars.push(IrredChar { kind, dim: q, values });
    }

    // Principal series W_{alpha, alpha^{-1}} for alpha^2 != 1, one
    // representative per inverse pair.
    for r in 1..=q.saturating_sub(3) / 2 {
        let values = classes
            .iter()
            .map(|c| match &c.kind {
                ClassKind::Central => ring.from_int((q + 1) as i64),
                ClassKind::Unipotent { .. } => ring.one(),
                ClassKind::Split { x, y } => {
                    let ratio = x * &y.inv().expect("nonzero eigenvalue");
                    &alpha(r, &ratio) + &alpha(r, &ratio.inv().unwrap())
                }
                ClassKind::Elliptic { .. } => ring.zero(),
            })
            .collect();
        chars.push(IrredChar { kind: CharKind::PrincipalSeries { r }, dim: q + 1, values });
    }

    // Cuspidal characters attached to phi of exponent (q-1)t, trivial on
    // F_q^*, phi^2 != 1, one per Galois pair.
    for t in 1..=(q - 1) / 2 {
        let s = (q - 1) * t;
        let values = classes
            .iter()
            .map(|c| match &c.kind {
                ClassKind::Central => ring.from_int((q - 1) as i64),
                ClassKind::Unipotent { .. } => ring.from_int(-1),
                ClassKind::Split { .. } => ring.zero(),
                ClassKind::Elliptic { z } => {
                    let frob = z.pow(q);
                    -&(&phi(s, z) + &phi(s, &frob))
                }
            })
            .collect();
        chars.push(IrredChar { kind: CharKind::Cuspidal { t }, dim: q - 1, values });
    }

    let table = CharacterTable { ring, classes, chars };
    table.validate(model)?;
    Ok(table)
}

impl CharacterTable {
    /// Exact validation: class/character counts match, Σ(dim)² = |G|, and
    /// the rows are orthonormal under (1/|G|)Σ_cl |cl|·χ_i·χ̄_j.
    fn validate(&self, model: &GroupModel) -> Result<(), ChartabError> {
        let g_order = model.order() as u64;
        if self.chars.len() != self.classes.len() {
            return Err(ChartabError::DimensionSumMismatch);
        }
        let dim_sq: u64 = self.chars.iter().map(|c| c.dim * c.dim).sum();
        if dim_sq != g_order {
            return Err(ChartabError::DimensionSumMismatch);
        }
        for i in 0..self.chars.len() {
            for j in i..self.chars.len() {
                let ip = self.inner_product(&self.chars[i].values, &self.chars[j].values, g_order);
                let expected = if i == j { 1 } else { 0 };
                if ip != Some(BigInt::from(expected)) {
                    return Err(ChartabError::OrthogonalityFailure { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// (1/|G|) Σ_cl |cl| · a(cl) · conj(b(cl)), as an integer if it is one.
    fn inner_product(&self, a: &[CycNumber], b: &[CycNumber], g_order: u64) -> Option<BigInt> {
        let mut acc = self.ring.zero();
        for (cl, (va, vb)) in self.classes.iter().zip(a.iter().zip(b)) {
            let term = &(va * &vb.conjugate()).scale(&BigRational::from_integer(cl.size.into()));
            acc = &acc + term;
        }
        acc.scale(&BigRational::new(1.into(), g_order.into())).to_integer()
    }

    pub fn steinberg_index(&self) -> usize {
        self.chars
            .iter()
            .position(|c| c.kind == CharKind::Steinberg)
            .expect("the table always contains the Steinberg character")
    }
}

/// Fixed-point counts of the conjugation action on an orbit, one per class
/// (a class function, so the representative suffices).
pub fn conjugation_fixed_counts<P: OrbitPoint>(
    table_classes: &[ClassData],
    orbit: &Orbit<P>,
) -> Vec<u64> {
    table_classes
        .iter()
        .map(|c| {
            orbit
                .points
                .iter()
                .filter(|x| x.conjugated_by(&c.rep) == **x)
                .count() as u64
        })
        .collect()
}

/// m_π = ⟨perm character of O, χ_π⟩ for every table row; every entry must be
/// a non-negative integer.
pub fn multiplicities<P: OrbitPoint>(
    table: &CharacterTable,
    model: &GroupModel,
    orbit: &Orbit<P>,
) -> Result<Vec<u64>, ChartabError> {
    let fixed = conjugation_fixed_counts(&table.classes, orbit);
    let g_order = model.order() as u64;
    table
        .chars
        .iter()
        .enumerate()
        .map(|(i, ch)| {
            let theta: Vec<CycNumber> =
                fixed.iter().map(|&f| table.ring.from_int(f as i64)).collect();
            let m = table
                .inner_product(&theta, &ch.values, g_order)
                .filter(|m| !m.is_negative())
                .ok_or(ChartabError::NonIntegerMultiplicity { char_index: i })?;
            Ok(m.try_into().expect("small multiplicity"))
        })
        .collect()
}

/// Independent Burnside route for the Steinberg multiplicity:
/// (1/|G|) Σ_g fix_O(g)·(fix_{P¹}(g) − 1), exact rational arithmetic.
pub fn steinberg_multiplicity<P: OrbitPoint>(
    model: &GroupModel,
    table_classes: &[ClassData],
    orbit: &Orbit<P>,
) -> Result<u64, ChartabError> {
    let p1 = p1_points(&model.spec);
    let fixed = conjugation_fixed_counts(table_classes, orbit);
    let mut acc = BigRational::zero();
    for (c, f) in table_classes.iter().zip(&fixed) {
        let st_char = BigInt::from(p1_fixed_count(&c.rep, &p1)) - 1;
        acc += BigRational::from_integer((c.size * f).into()) * BigRational::from_integer(st_char);
    }
    acc /= BigRational::from_integer((model.order() as u64).into());
    if !acc.is_integer() || acc.is_negative() {
        return Err(ChartabError::NonIntegerMultiplicity { char_index: usize::MAX });
    }
    Ok(acc.to_integer().try_into().expect("small multiplicity"))
}

/// dim End_G ℂ[O] = number of diagonal G-orbits on O×O, by Burnside:
/// (1/|G|) Σ_g fix_O(g)².
pub fn end_dimension<P: OrbitPoint>(
    model: &GroupModel,
    table_classes: &[ClassData],
    orbit: &Orbit<P>,
) -> u64 {
    let fixed = conjugation_fixed_counts(table_classes, orbit);
    let total: u64 = table_classes.iter().zip(&fixed).map(|(c, f)| c.size * f * f).sum();
    debug_assert_eq!(total % model.order() as u64, 0, "Burnside count must divide");
    total / model.order() as u64
}

/// Multiplicity verdict for one conjugacy class: every irreducible other
/// than the Steinberg must appear at most once in ℂ[O].
#[derive(Debug, Clone)]
pub struct MultiplicityReport {
    pub orbit_name: alloc::string::String,
    pub orbit_size: usize,
    pub multiplicities: Vec<(CharKind, u64)>,
    pub steinberg_multiplicity: u64,
    pub steinberg_burnside: u64,
    pub max_non_steinberg: u64,
    pub end_dimension: u64,
    pub sum_m_squared: u64,
    pub sum_m_dim: u64,
    pub bound_holds: bool,
}

impl MultiplicityReport {
    /// Arithmetic cross-checks only; the multiplicity bound itself is a
    /// separate verdict.
    pub fn consistent(&self) -> bool {
        self.sum_m_squared == self.end_dimension
            && self.sum_m_dim == self.orbit_size as u64
            && self.steinberg_multiplicity == self.steinberg_burnside
    }
}

pub fn verify_multiplicity_bound(
    table: &CharacterTable,
    model: &GroupModel,
    orbit: &Orbit<GroupElement>,
    name: alloc::string::String,
) -> Result<MultiplicityReport, ChartabError> {
    let ms = multiplicities(table, model, orbit)?;
    let st = table.steinberg_index();
    let max_non_steinberg = ms
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != st)
        .map(|(_, &m)| m)
        .max()
        .unwrap_or(0);
    let end_dim = end_dimension(model, &table.classes, orbit);
    let st_burnside = steinberg_multiplicity(model, &table.classes, orbit)?;
    let sum_m_squared = ms.iter().map(|m| m * m).sum();
    let sum_m_dim = ms.iter().zip(&table.chars).map(|(m, c)| m * c.dim).sum();
    Ok(MultiplicityReport {
        orbit_name: name,
        orbit_size: orbit.size(),
        multiplicities: table
            .chars
            .iter()
            .map(|c| c.kind.clone())
            .zip(ms.iter().copied())
            .collect(),
        steinberg_multiplicity: ms[st],
        steinberg_burnside: st_burnside,
        max_non_steinberg,
        end_dimension: end_dim,
        sum_m_squared,
        sum_m_dim,
        bound_holds: max_non_steinberg <= 1,
    })
}

/// The finite Steinberg model: sum-zero functions on P¹.  Used by tests to
/// pin the identification of the table's Steinberg row.
pub fn steinberg_character_values(model: &GroupModel, table: &CharacterTable) -> Vec<BigInt> {
    let p1 = p1_points(&model.spec);
    table
        .classes
        .iter()
        .map(|c| BigInt::from(p1_fixed_count(&c.rep, &p1)) - 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::group_orbit_name;

    fn model3() -> GroupModel {
        GroupModel::new(&FieldSpec::new(3, 1).unwrap())
    }

    #[test]
    fn table_q3_shape_and_values() {
        // PGL(2,3) = S4: 5 irreducibles with dims 1,1,3,3,2.
        let m = model3();
        let t = character_table(&m).unwrap();
        assert_eq!(t.chars.len(), 5);
        let mut dims: Vec<u64> = t.chars.iter().map(|c| c.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, [1, 1, 2, 3, 3]);
        let dim_sq: u64 = t.chars.iter().map(|c| c.dim * c.dim).sum();
        assert_eq!(dim_sq, 24);
        // The trivial row is all ones.
        let trivial = t.chars.iter().find(|c| c.kind == CharKind::Trivial).unwrap();
        assert!(trivial.values.iter().all(CycNumber::is_one));
        // The Steinberg row agrees with the P1 model (perm char minus 1).
        let st = &t.chars[t.steinberg_index()];
        let expected = steinberg_character_values(&m, &t);
        for (v, e) in st.values.iter().zip(expected) {
            assert_eq!(v.to_integer(), Some(e));
        }
    }

    #[test]
    fn table_q5_shape() {
        let m = GroupModel::new(&FieldSpec::new(5, 1).unwrap());
        let t = character_table(&m).unwrap();
        assert_eq!(t.chars.len(), 7);
        let dim_sq: u64 = t.chars.iter().map(|c| c.dim * c.dim).sum();
        assert_eq!(dim_sq, 120);
    }

    #[test]
    fn identity_class_multiplicities() {
        // C[point] is the trivial representation: m_triv = 1, all else 0.
        let m = model3();
        let t = character_table(&m).unwrap();
        let identity_class = m.classes.iter().find(|o| o.size() == 1).unwrap();
        let ms = multiplicities(&t, &m, identity_class).unwrap();
        for (i, mult) in ms.iter().enumerate() {
            let expected = u64::from(t.chars[i].kind == CharKind::Trivial);
            assert_eq!(*mult, expected);
        }
        assert_eq!(steinberg_multiplicity(&m, &t.classes, identity_class).unwrap(), 0);
        assert_eq!(end_dimension(&m, &t.classes, identity_class), 1);
    }

    #[test]
    fn multiplicity_bound_all_classes_q3() {
        let m = model3();
        let t = character_table(&m).unwrap();
        for class in &m.classes {
            let report =
                verify_multiplicity_bound(&t, &m, class, group_orbit_name(class)).unwrap();
            assert!(report.bound_holds, "{}: {:?}", report.orbit_name, report.multiplicities);
            assert!(report.consistent(), "{}: {:?}", report.orbit_name, report);
        }
    }

    #[test]
    fn p1_fixed_counts_q3() {
        let m = model3();
        let p1 = p1_points(&m.spec);
        let id = GroupElement::identity(&m.spec);
        assert_eq!(p1_fixed_count(&id, &p1), 4); // q + 1
    }
}
