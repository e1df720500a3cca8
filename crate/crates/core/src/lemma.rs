//! Gauss sums, the κ_χ transform on the regular nilpotent orbit, and the
//! explicit two-point witness functions h_χ = δ_{ax} − δ_{bx}.
//!
//! With the fixed generator g of 𝔽_q^*, the multiplicative character χ_m
//! sends g^j to ζ_{q−1}^{mj}.  The Gauss sum is Δ = Σ_{u∈𝔽^*} ψ(u)·χ(u⁻¹),
//! an element of ℚ(ζ_{lcm(p,q−1)}) with Δ·Δ̄ = q for nontrivial χ and
//! Δ = −1 for the trivial one.  The κ_χ transform averages a function on
//! the nonzero nilpotents against χ⁻¹ along scaling orbits:
//! κ_χ(f)(z) = Σ_{a∈𝔽^*} f(az)·χ⁻¹(a), evaluated at one base point per
//! line.  Norm factors are identically 1 over a finite field, so they
//! appear nowhere.
//!
//! The witness pipeline: pick x = [[0,1],[ε,0]] with ε a non-square, the
//! least pair (a,b) in generator-power order with χ(a/b) ≠ 1, and
//! h_χ = δ_{ax} − δ_{bx}.  Then F(h_χ)(0) = 0, the support is elliptic, and
//! κ_χ(F(h_χ)|_𝒩)(z₁) = (χ(a) − χ(b))·Δ ≠ 0 — the closed form follows
//! from f_a(z_u) = ψ(au) by substituting w = au in the character sum.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::cyclo::{CycField, CycNumber};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{SubspaceBasis, SubspaceRelation};
use crate::sl2::{incidence_set, is_elliptic, orbit_closure, AlgElement};
use crate::spaces::{fourier, restricted_space, weightless_space, FunctionVector, LieModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaError {
    /// No pair (a,b) separates the values of χ; impossible for nontrivial χ,
    /// kept as a defensive error.
    NoSeparatingPair,
    TrivialCharacter,
}

impl fmt::Display for LemmaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaError::NoSeparatingPair => write!(f, "no pair separates the character values"),
            LemmaError::TrivialCharacter => {
                write!(f, "the witness construction needs a nontrivial character")
            }
        }
    }
}

/// The multiplicative character χ_m of 𝔽_q^*, χ_m(g^j) = ζ_{q−1}^{mj}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultChar {
    pub m: u64,
}

impl MultChar {
    pub fn is_trivial(&self, spec: &FieldSpec) -> bool {
        self.m.is_multiple_of(spec.q() - 1)
    }

    /// Exponent e with χ(a) = ζ_{q−1}^e.
    pub fn exponent(&self, a: &FieldElement) -> u64 {
        a.char_log(self.m).expect("character argument must be nonzero")
    }

    /// Exponent of χ⁻¹(a) = χ(a⁻¹).
    pub fn inverse_exponent(&self, a: &FieldElement, spec: &FieldSpec) -> u64 {
        let order = spec.q() - 1;
        (order - self.exponent(a)) % order
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Conductor shared by ψ- and χ-values: lcm(p, q−1).
pub fn character_ring(spec: &FieldSpec) -> Arc<CycField> {
    let p = spec.p();
    let order = spec.q() - 1;
    CycField::new(p / gcd_u64(p, order) * order).expect("character conductor within bound")
}

/// χ(a) as a value of the character ring.
pub fn chi_value(
    ring: &Arc<CycField>,
    spec: &FieldSpec,
    chi: MultChar,
    a: &FieldElement,
) -> CycNumber {
    let order = spec.q() - 1;
    let stride = ring.conductor() / order;
    ring.root_of_unity((chi.exponent(a) * stride) as i64)
}

/// The Gauss sum Δ = Σ_{u∈𝔽^*} ψ(u)·χ(u⁻¹) in ℚ(ζ_{lcm(p,q−1)}).
#[derive(Debug, Clone)]
pub struct GaussSum {
    pub chi: MultChar,
    pub value: CycNumber,
}

pub fn gauss_sum(spec: &Arc<FieldSpec>, chi: MultChar) -> GaussSum {
    let ring = character_ring(spec);
    let n = ring.conductor();
    let p = spec.p();
    let order = spec.q() - 1;
    let psi_stride = n / p;
    let chi_stride = n / order;
    let value = ring.from_integer_exponent_sum(spec.elements().skip(1).map(|u| {
        let e_psi = u.absolute_trace() * psi_stride;
        let e_chi = chi.inverse_exponent(&u, spec) * chi_stride;
        ((e_psi + e_chi) % n, BigInt::from(1))
    }));
    GaussSum { chi, value }
}

/// The χ-equivariant projection of a function on 𝒩, recorded at one base
/// point per scaling line (P¹-label order): the full function is recovered
/// through f(a·z) = χ(a)·f(z).
#[derive(Debug, Clone)]
pub struct KappaImage {
    pub chi: MultChar,
    /// (base point, κ_χ(f) evaluated there), one entry per nilpotent line.
    pub line_values: Vec<(AlgElement, CycNumber)>,
}

impl KappaImage {
    pub fn is_zero(&self) -> bool {
        self.line_values.iter().all(|(_, v)| v.is_zero())
    }

    pub fn value_at(&self, z: &AlgElement) -> Option<&CycNumber> {
        self.line_values.iter().find(|(b, _)| b == z).map(|(_, v)| v)
    }
}

/// κ_χ(f)(z) = Σ_{a∈𝔽^*} f(az)·χ⁻¹(a) for f on the regular nilpotent
/// orbit, evaluated at the canonical base point of each line.
pub fn kappa(model: &LieModel, chi: MultChar, f: &FunctionVector) -> KappaImage {
    let spec = &model.spec;
    let ring = character_ring(spec);
    let order = spec.q() - 1;
    let chi_stride = ring.conductor() / order;
    let chi_inv_roots: Vec<CycNumber> = (0..order)
        .map(|j| ring.root_of_unity(((chi.m % order) * ((order - j) % order) % order * chi_stride) as i64))
        .collect();
    let line_values = model
        .radicals
        .iter()
        .map(|rad| {
            let z = rad.base_point().clone();
            let mut acc = ring.zero();
            for a in spec.elements().skip(1) {
                let az = z.scale(&a);
                let value = f.value_at_key(az.key()).expect("f lives on the nilpotent orbit");
                if value.is_zero() {
                    continue;
                }
                let j = a.dlog().expect("a is nonzero");
                acc = &acc + &(value * &chi_inv_roots[j as usize]);
            }
            (z, acc)
        })
        .collect();
    KappaImage { chi, line_values }
}

/// The witness function h_χ = δ_{ax} − δ_{bx} with x = [[0,1],[ε,0]],
/// ε the canonical non-square, and (a,b) the least pair in generator-power
/// order with χ(a/b) ≠ 1.
#[derive(Debug, Clone)]
pub struct WitnessFunction {
    pub chi: MultChar,
    pub x: AlgElement,
    pub a: FieldElement,
    pub b: FieldElement,
    pub function: FunctionVector,
}

pub fn build_h_chi(model: &LieModel, chi: MultChar) -> Result<WitnessFunction, LemmaError> {
    let spec = &model.spec;
    if chi.is_trivial(spec) {
        return Err(LemmaError::TrivialCharacter);
    }
    let order = spec.q() - 1;
    let mut pair = None;
    'outer: for i in 0..order {
        for j in i + 1..order {
            // chi(g^i / g^j) = zeta_{q-1}^{m(i-j)} != 1
            if !((chi.m % order) * ((j - i) % order)).is_multiple_of(order) {
                pair = Some((spec.generator_power(i), spec.generator_power(j)));
                break 'outer;
            }
        }
    }
    let (a, b) = pair.ok_or(LemmaError::NoSeparatingPair)?;
    let eps = spec.canonical_nonsquare();
    let x = AlgElement::new(spec.zero(), spec.one(), eps);
    let ring = CycField::rationals();
    let mut function = FunctionVector::zero(Arc::clone(&model.points), &ring);
    let pos_a = model.points.position(x.scale(&a).key()).unwrap();
    let pos_b = model.points.position(x.scale(&b).key()).unwrap();
    function.set_value(pos_a, ring.one());
    function.set_value(pos_b, ring.from_int(-1));
    Ok(WitnessFunction { chi, x, a, b, function })
}

/// Clause-by-clause verification record for one nontrivial χ.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub m: u64,
    pub a_power: u64,
    pub b_power: u64,
    pub fourier_vanishes_at_zero: bool,
    pub support_is_elliptic: bool,
    pub kappa_at_z1: CycNumber,
    pub closed_form: CycNumber,
    pub closed_form_matches: bool,
    pub kappa_nonzero: bool,
    pub kappa_image_nonzero: bool,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.fourier_vanishes_at_zero
            && self.support_is_elliptic
            && self.closed_form_matches
            && self.kappa_nonzero
            && self.kappa_image_nonzero
    }
}

/// Run the full witness pipeline for every nontrivial character: build h_χ,
/// check F(h_χ)(0) = 0 and elliptic support, transform the restriction to
/// 𝒩 by κ_χ, and match the value at z₁ = [[0,0],[1,0]] against
/// (χ(a) − χ(b))·Δ computed independently from the character data.
pub fn verify_witnesses(model: &LieModel) -> Vec<WitnessReport> {
    let spec = &model.spec;
    let order = spec.q() - 1;
    let ring = character_ring(spec);
    let (nil_points, _) = model.regular_nilpotent_ambient();
    let z1 = AlgElement::new(spec.zero(), spec.zero(), spec.one());
    (1..order)
        .map(|m| {
            let chi = MultChar { m };
            let witness = build_h_chi(model, chi).expect("nontrivial character");
            let transformed = fourier(model, &witness.function);
            let zero_key = AlgElement::zero(spec).key();
            let fourier_vanishes_at_zero = transformed.value_at_key(zero_key).unwrap().is_zero();
            let support_is_elliptic =
                spec.elements().skip(1).all(|c| is_elliptic(&witness.x.scale(&c)));
            let restricted = transformed.restrict(&nil_points);
            let image = kappa(model, chi, &restricted);
            let kappa_at_z1 = image.value_at(&z1).expect("z1 is a line base point").clone();
            let delta = gauss_sum(spec, chi);
            let chi_a = chi_value(&ring, spec, chi, &witness.a);
            let chi_b = chi_value(&ring, spec, chi, &witness.b);
            let closed_form = &(&chi_a - &chi_b) * &delta.value;
            WitnessReport {
                m,
                a_power: witness.a.dlog().unwrap(),
                b_power: witness.b.dlog().unwrap(),
                fourier_vanishes_at_zero,
                support_is_elliptic,
                closed_form_matches: kappa_at_z1 == closed_form,
                kappa_nonzero: !kappa_at_z1.is_zero(),
                kappa_image_nonzero: !image.is_zero(),
                kappa_at_z1,
                closed_form,
            }
        })
        .collect()
}

/// Relationship between ker κ_triv ⊂ S(𝒩) and the weightless space of the
/// nilpotent-cone closure restricted to 𝒩.  Reported as a diagnostic only;
/// the two sit in a codimension-one inclusion (restricted weightless
/// functions have equal line sums, kernel elements have vanishing ones).
#[derive(Debug, Clone)]
pub struct ScalingKernelReport {
    pub dim_kappa_trivial_kernel: usize,
    pub dim_weightless_restricted: usize,
    pub relation: SubspaceRelation,
}

pub fn scaling_kernel_diagnostic(model: &LieModel) -> ScalingKernelReport {
    let (nil_points, nil_elements) = model.regular_nilpotent_ambient();
    let ring = CycField::rationals();
    // One constraint per line: the sum over the scaling orbit vanishes.
    let rows: Vec<Vec<CycNumber>> = model
        .radicals
        .iter()
        .map(|rad| {
            let mut row = alloc::vec![ring.zero(); nil_points.len()];
            for n in rad.elements.iter().filter(|n| !n.is_zero()) {
                row[nil_points.position(n.key()).unwrap()] = ring.one();
            }
            row
        })
        .collect();
    let kernel = SubspaceBasis::kernel(Arc::clone(&nil_points), ring, rows);

    let cone = model
        .orbits
        .iter()
        .find(|o| o.label.is_zero() && o.size() > 1)
        .expect("regular nilpotent orbit exists");
    let closed = orbit_closure(cone, &model.orbits);
    let incidence = incidence_set(&closed, &model.radicals);
    let weightless = weightless_space(&closed, &incidence, &model.radicals);
    let nil_keys: Vec<u64> = nil_elements.iter().map(AlgElement::key).collect();
    let restricted = restricted_space(&nil_keys, &weightless);
    let relation = kernel.compare(&restricted).expect("same nilpotent ambient").relation;
    ScalingKernelReport {
        dim_kappa_trivial_kernel: kernel.dim(),
        dim_weightless_restricted: restricted.dim(),
        relation,
    }
}
