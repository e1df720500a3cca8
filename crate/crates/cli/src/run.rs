//! Orchestration: build models per field, run the requested verifications,
//! and assemble the report.
//!
//! Exit-code contract: containment-gate violations, Lie-mode equality
//! failures, witness-clause failures, multiplicity-bound failures, and
//! selftest failures are hard (nonzero exit); group-mode equality verdicts
//! are recorded as evidence and never affect the exit code, and neither do
//! the open-question sweep outcomes.

use std::time::Instant;

use anyhow::{Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cuspidal_core::cyclo::{cyclotomic_polynomial, CycField};
use cuspidal_core::field::FieldSpec;
use cuspidal_core::lemma::{
    gauss_sum, scaling_kernel_diagnostic, verify_witnesses, MultChar,
};
use cuspidal_core::linalg::{PointList, SubspaceBasis, SubspaceRelation};
use cuspidal_core::num_bigint::BigInt;
use cuspidal_core::num_rational::BigRational;
use cuspidal_core::num_traits::{One, Zero};
use cuspidal_core::qtwo;
use cuspidal_core::sl2::{
    centralizer_order, elliptic_complement_is_annihilator_union, enumerate_algebra,
    enumerate_group, group_orbit_name, is_elliptic,
};
use cuspidal_core::spaces::{
    cuspidal_space_cosets, cuspidal_space_fourier, cuspidal_space_group, fourier,
    negation_pullback, verify_conjecture_group, verify_conjecture_lie, FunctionVector,
    GroupModel, LieModel,
};
use cuspidal_core::chartab::{character_table, verify_multiplicity_bound};

use crate::config::{field_for_q, Experiment, ModeOpt};
use crate::report::{
    AssertionSection, ClassMultiplicityJson, ConjectureRecordJson, CycNumberJson, FieldSection,
    GaussSection, Invocation, LemmaSection, LevelRecordJson, ModeSection, QuestionTwoSection,
    ReportBody, SelftestSection, WitnessClauseJson, GlobalReport,
};

pub struct Outcome {
    pub report: GlobalReport,
    pub hard_failure: bool,
}

fn relation_name(r: SubspaceRelation) -> &'static str {
    match r {
        SubspaceRelation::Equal => "equal",
        SubspaceRelation::FirstInSecond => "first_strictly_in_second",
        SubspaceRelation::SecondInFirst => "second_strictly_in_first",
        SubspaceRelation::Incomparable => "incomparable",
    }
}

fn field_section_shell(spec: &FieldSpec) -> FieldSection {
    FieldSection {
        q: spec.q(),
        p: spec.p(),
        k: spec.k(),
        modulus: spec.modulus().to_vec(),
        generator: spec.generator_coeffs().to_vec(),
        lie: None,
        group: None,
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

pub struct VerifyOptions {
    pub q_values: Vec<u64>,
    pub mode: ModeOpt,
    /// Run the cyclotomic Fourier-support oracle against the rational
    /// coset-sum route for q up to this bound (0 disables).
    pub fourier_cross_check_max_q: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { q_values: vec![3, 5], mode: ModeOpt::Both, fourier_cross_check_max_q: 5 }
    }
}

pub fn run_verify(opts: &VerifyOptions) -> Result<Outcome> {
    let mut body = ReportBody::new(Invocation {
        command: "verify".into(),
        q_values: Some(opts.q_values.clone()),
        mode: Some(format!("{:?}", opts.mode).to_lowercase()),
        fourier_cross_check_max_q: Some(opts.fourier_cross_check_max_q),
        enumeration_budget: None,
        experiment: None,
    });
    let mut timings = Vec::new();
    for &q in &opts.q_values {
        let start = Instant::now();
        let spec = field_for_q(q)?;
        let mut section = field_section_shell(&spec);
        if opts.mode.includes_lie() {
            let model = LieModel::new(&spec);
            let cuspidal = cuspidal_space_cosets(&model);
            let cross_check = if q <= opts.fourier_cross_check_max_q {
                let by_fourier = cuspidal_space_fourier(&model);
                let rel = cuspidal.compare(&by_fourier).expect("same ambient").relation;
                if rel != SubspaceRelation::Equal {
                    body.hard_failures.push(format!(
                        "q={q} lie: coset-sum and fourier-support cuspidal spaces differ ({})",
                        relation_name(rel)
                    ));
                }
                Some(relation_name(rel).to_string())
            } else {
                Some("skipped".to_string())
            };
            let reports = verify_conjecture_lie(&model)
                .map_err(|e| anyhow::anyhow!("containment gate: {e}"))?;
            for r in &reports {
                if !r.equality_holds {
                    body.hard_failures.push(format!(
                        "q={q} lie orbit {}: S_cusp(closure) != S_w(closure) \
                         (dim {} vs {})",
                        r.orbit_name, r.dim_restricted_cuspidal, r.dim_weightless
                    ));
                }
            }
            section.lie = Some(ModeSection {
                dim_cuspidal: cuspidal.dim(),
                elliptic_count: Some(model.elliptic_count()),
                fourier_cross_check: cross_check,
                orbits: reports.iter().map(ConjectureRecordJson::from_report).collect(),
            });
        }
        if opts.mode.includes_group() {
            let model = GroupModel::new(&spec);
            let cuspidal = cuspidal_space_group(&model);
            let reports = verify_conjecture_group(&model)
                .map_err(|e| anyhow::anyhow!("containment gate: {e}"))?;
            // Equality verdicts are evidence here, never hard assertions.
            section.group = Some(ModeSection {
                dim_cuspidal: cuspidal.dim(),
                elliptic_count: None,
                fourier_cross_check: None,
                orbits: reports.iter().map(ConjectureRecordJson::from_report).collect(),
            });
        }
        body.field_sections.push(section);
        timings.push((format!("verify_q{q}"), start.elapsed().as_millis()));
    }
    let hard_failure = !body.hard_failures.is_empty();
    Ok(Outcome { report: GlobalReport::assemble(body, timings), hard_failure })
}

// ---------------------------------------------------------------------------
// lemma-chi
// ---------------------------------------------------------------------------

pub fn run_lemma_chi(q_values: &[u64]) -> Result<Outcome> {
    let mut body = ReportBody::new(Invocation {
        command: "lemma-chi".into(),
        q_values: Some(q_values.to_vec()),
        mode: None,
        fourier_cross_check_max_q: None,
        enumeration_budget: None,
        experiment: None,
    });
    let mut timings = Vec::new();
    for &q in q_values {
        let start = Instant::now();
        let spec = field_for_q(q)?;
        body.field_sections.push(field_section_shell(&spec));
        let model = LieModel::new(&spec);
        let witnesses = verify_witnesses(&model);
        let diag = scaling_kernel_diagnostic(&model);
        let all_passed = witnesses.iter().all(|w| w.passed());
        if !all_passed {
            for w in witnesses.iter().filter(|w| !w.passed()) {
                body.hard_failures.push(format!(
                    "q={q} chi_{}: clause failure (F(h)(0)=0: {}, elliptic support: {}, \
                     closed form: {}, nonzero: {})",
                    w.m,
                    w.fourier_vanishes_at_zero,
                    w.support_is_elliptic,
                    w.closed_form_matches,
                    w.kappa_nonzero
                ));
            }
        }
        body.lemma_chi.push(LemmaSection {
            q,
            nontrivial_characters: q - 2,
            trivial_character: "skipped: not covered by the witness construction",
            witnesses: witnesses
                .iter()
                .map(|w| WitnessClauseJson {
                    m: w.m,
                    a_power: w.a_power,
                    b_power: w.b_power,
                    fourier_vanishes_at_zero: w.fourier_vanishes_at_zero,
                    support_is_elliptic: w.support_is_elliptic,
                    kappa_at_z1: CycNumberJson::from_value(&w.kappa_at_z1),
                    closed_form: CycNumberJson::from_value(&w.closed_form),
                    closed_form_matches: w.closed_form_matches,
                    kappa_nonzero: w.kappa_nonzero,
                    passed: w.passed(),
                })
                .collect(),
            scaling_kernel_dim: diag.dim_kappa_trivial_kernel,
            weightless_restricted_dim: diag.dim_weightless_restricted,
            scaling_kernel_relation: relation_name(diag.relation).to_string(),
            all_passed,
        });
        timings.push((format!("lemma_chi_q{q}"), start.elapsed().as_millis()));
    }
    let hard_failure = !body.hard_failures.is_empty();
    Ok(Outcome { report: GlobalReport::assemble(body, timings), hard_failure })
}

// ---------------------------------------------------------------------------
// gauss (part of selftest and the acceptance surface)
// ---------------------------------------------------------------------------

pub fn gauss_section(q: u64) -> Result<GaussSection> {
    let spec = field_for_q(q)?;
    let rationals = CycField::rationals();
    let expected_norm = rationals.from_int(q as i64);
    let mut all_norms = true;
    for m in 1..q - 1 {
        let delta = gauss_sum(&spec, MultChar { m });
        let norm = &delta.value * &delta.value.conjugate();
        if norm != expected_norm {
            all_norms = false;
        }
    }
    let trivial = gauss_sum(&spec, MultChar { m: 0 });
    Ok(GaussSection {
        q,
        checked_characters: q - 1,
        all_nontrivial_modulus_q: all_norms,
        trivial_is_minus_one: trivial.value == rationals.from_int(-1),
    })
}

// ---------------------------------------------------------------------------
// assertion (multiplicity bound)
// ---------------------------------------------------------------------------

pub fn run_assertion(q_values: &[u64]) -> Result<Outcome> {
    let mut body = ReportBody::new(Invocation {
        command: "assertion".into(),
        q_values: Some(q_values.to_vec()),
        mode: None,
        fourier_cross_check_max_q: None,
        enumeration_budget: None,
        experiment: None,
    });
    let mut timings = Vec::new();
    for &q in q_values {
        let start = Instant::now();
        let spec = field_for_q(q)?;
        body.field_sections.push(field_section_shell(&spec));
        let model = GroupModel::new(&spec);
        let table = character_table(&model)
            .map_err(|e| anyhow::anyhow!("character table q={q}: {e}"))?;
        let mut classes = Vec::new();
        let mut all_hold = true;
        for class in &model.classes {
            let rep = verify_multiplicity_bound(&table, &model, class, group_orbit_name(class))
                .map_err(|e| anyhow::anyhow!("multiplicities q={q}: {e}"))?;
            if !rep.bound_holds {
                all_hold = false;
                body.hard_failures.push(format!(
                    "q={q} class {}: some non-Steinberg multiplicity exceeds 1",
                    rep.orbit_name
                ));
            }
            if !rep.consistent() {
                all_hold = false;
                body.hard_failures.push(format!(
                    "q={q} class {}: multiplicity bookkeeping inconsistent (sum m^2 = {}, \
                     end dim = {}, sum m*dim = {}, |O| = {})",
                    rep.orbit_name,
                    rep.sum_m_squared,
                    rep.end_dimension,
                    rep.sum_m_dim,
                    rep.orbit_size
                ));
            }
            classes.push(ClassMultiplicityJson {
                orbit: rep.orbit_name.clone(),
                orbit_size: rep.orbit_size,
                multiplicities: rep
                    .multiplicities
                    .iter()
                    .map(|(k, m)| (k.to_string(), *m))
                    .collect(),
                steinberg_multiplicity: rep.steinberg_multiplicity,
                steinberg_burnside: rep.steinberg_burnside,
                max_non_steinberg: rep.max_non_steinberg,
                end_dimension: rep.end_dimension,
                sum_m_squared: rep.sum_m_squared,
                bound_holds: rep.bound_holds,
            });
        }
        let dims: Vec<u64> = table.chars.iter().map(|c| c.dim).collect();
        body.assertion.push(AssertionSection {
            q,
            character_count: table.chars.len(),
            sum_dim_squared: dims.iter().map(|d| d * d).sum(),
            dims,
            table_validated: true,
            classes,
            all_bounds_hold: all_hold,
        });
        timings.push((format!("assertion_q{q}"), start.elapsed().as_millis()));
    }
    let hard_failure = !body.hard_failures.is_empty();
    Ok(Outcome { report: GlobalReport::assemble(body, timings), hard_failure })
}

// ---------------------------------------------------------------------------
// question2
// ---------------------------------------------------------------------------

pub fn unchecked_hypotheses() -> Vec<String> {
    [
        "P is flat and surjective onto A^r",
        "X = P^{-1}(0) contains no images of non-constant affine morphisms A^1 -> V over \
         the algebraic closure",
        "Q is flat of the same degree with absolutely irreducible fibers",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

pub fn run_question2(exp: &Experiment, budget: u64) -> Result<Outcome> {
    let mut body = ReportBody::new(Invocation {
        command: "question2".into(),
        q_values: None,
        mode: None,
        fourier_cross_check_max_q: None,
        enumeration_budget: Some(budget),
        experiment: Some(exp.name.clone()),
    });
    let start = Instant::now();
    body.field_sections.push(field_section_shell(&exp.base));
    let sweep = qtwo::sweep(&exp.p_map, &exp.q_map, &exp.open, &exp.base, exp.n_max, budget)
        .map_err(|e| anyhow::anyhow!("sweep failed: {e}"))?;
    body.question2 = Some(QuestionTwoSection {
        name: exp.name.clone(),
        q: exp.base.q(),
        variables: exp.p_map.vars,
        outputs: exp.p_map.outputs(),
        degree_p: exp.p_map.degree(),
        degree_q: exp.q_map.degree(),
        budget,
        hypotheses_attested: exp.hypotheses_attested,
        unchecked_hypotheses: unchecked_hypotheses(),
        levels: sweep
            .levels
            .iter()
            .map(|l| LevelRecordJson {
                n: l.n,
                field_size: l.field_size,
                x_count: l.x_count,
                source_count: l.source_count,
                rank: l.rank,
                surjective: l.surjective,
                columns_streamed: l.columns_streamed,
            })
            .collect(),
        first_surjective_n: sweep.first_surjective_n,
    });
    let timings = vec![("question2".to_string(), start.elapsed().as_millis())];
    // Open-question verdicts never fail the run.
    Ok(Outcome { report: GlobalReport::assemble(body, timings), hard_failure: false })
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

/// Test-only independent polynomial division: remainder of x^n − 1 by a
/// monic divisor over ℤ.
fn remainder_xn_minus_one(n: u64, divisor: &[BigInt]) -> Vec<BigInt> {
    let mut rem = vec![BigInt::zero(); n as usize + 1];
    rem[0] = BigInt::from(-1);
    rem[n as usize] = BigInt::one();
    let d = divisor.len() - 1;
    while rem.len() > d {
        let lead = rem.last().unwrap().clone();
        let shift = rem.len() - 1 - d;
        if !lead.is_zero() {
            for (i, c) in divisor.iter().enumerate() {
                let delta = &lead * c;
                rem[shift + i] -= delta;
            }
        }
        rem.pop();
    }
    rem
}

fn check_phi_divides(limit: u64) -> bool {
    (1..=limit).all(|n| {
        let phi = cyclotomic_polynomial(n).expect("within bound");
        remainder_xn_minus_one(n, &phi).iter().all(BigInt::is_zero)
    })
}

fn check_fourier_involution(q: u64, cases: u32, seed: u64) -> bool {
    let spec = field_for_q(q).expect("valid q");
    let model = LieModel::new(&spec);
    let ring = CycField::new(spec.p()).expect("prime conductor");
    let n = model.points.len();
    let scale = BigRational::from_integer(BigInt::from((q * q * q) as i64));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        // Sparse random function: a handful of small integer values.
        let mut f = FunctionVector::zero(std::sync::Arc::clone(&model.points), &ring);
        for _ in 0..5 {
            let pos = rng.gen_range(0..n);
            let val = rng.gen_range(-3i64..=3);
            f.set_value(pos, ring.from_int(val));
        }
        let ff = fourier(&model, &fourier(&model, &f));
        let expected = negation_pullback(&model, &f);
        let ok = ff
            .values()
            .iter()
            .zip(expected.values())
            .all(|(lhs, rhs)| *lhs == rhs.scale(&scale));
        if !ok {
            return false;
        }
    }
    true
}

fn check_echelon_canonicity(seed: u64) -> bool {
    let ring = CycField::new(3).expect("conductor 3");
    let points = PointList::new((0..8).collect());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        // A random basis-free generating set and a reshuffled, rescaled,
        // recombined copy of it must echelonize identically.
        let rows: Vec<Vec<_>> = (0..5)
            .map(|_| {
                (0..8)
                    .map(|_| {
                        let e = rng.gen_range(0..3);
                        let c = rng.gen_range(-2i64..=2);
                        ring.root_of_unity(e).scale(&BigRational::from_integer(c.into()))
                    })
                    .collect()
            })
            .collect();
        let mut shuffled = rows.clone();
        // Add a multiple of one row to another and swap a pair.
        let extra: Vec<_> = rows[0]
            .iter()
            .zip(&rows[1])
            .map(|(a, b)| &(a * &ring.root_of_unity(1)) + b)
            .collect();
        shuffled.push(extra);
        shuffled.swap(0, 4);
        let b1 = SubspaceBasis::echelonize(points.clone(), ring.clone(), rows);
        let b2 = SubspaceBasis::echelonize(points.clone(), ring.clone(), shuffled);
        if b1.dim() != b2.dim() {
            return false;
        }
        let identical = b1
            .rows()
            .iter()
            .zip(b2.rows())
            .all(|(r1, r2)| r1.iter().zip(r2).all(|(a, b)| a == b));
        if !identical {
            return false;
        }
    }
    true
}

fn check_oracle_equivalence(q: u64) -> bool {
    let spec = field_for_q(q).expect("valid q");
    let model = LieModel::new(&spec);
    let a = cuspidal_space_cosets(&model);
    let b = cuspidal_space_fourier(&model);
    a.compare(&b).map(|c| c.relation == SubspaceRelation::Equal).unwrap_or(false)
}

fn check_elliptic_criterion(q: u64) -> bool {
    let spec = field_for_q(q).expect("valid q");
    let group = enumerate_group(&spec);
    enumerate_algebra(&spec)
        .iter()
        .all(|x| is_elliptic(x) == (centralizer_order(x, &group) == q + 1))
}

pub fn run_selftest() -> Result<Outcome> {
    let mut body = ReportBody::new(Invocation {
        command: "selftest".into(),
        q_values: None,
        mode: None,
        fourier_cross_check_max_q: None,
        enumeration_budget: None,
        experiment: None,
    });
    let start = Instant::now();
    let mut checks: Vec<(String, bool)> = Vec::new();
    checks.push(("cyclotomic_divides_xn_minus_1_n_le_120".into(), check_phi_divides(120)));
    checks.push(("echelon_canonicity".into(), check_echelon_canonicity(7)));
    for q in [3u64, 5] {
        checks.push((format!("fourier_involution_q{q}"), check_fourier_involution(q, 25, q)));
        checks.push((format!("cuspidal_oracle_equivalence_q{q}"), check_oracle_equivalence(q)));
    }
    for q in [3u64, 5, 7] {
        checks.push((format!("elliptic_centralizer_criterion_q{q}"), check_elliptic_criterion(q)));
    }
    for q in [3u64, 5, 7, 9] {
        let spec = field_for_q(q)?;
        checks.push((
            format!("elliptic_complement_is_borel_union_q{q}"),
            elliptic_complement_is_annihilator_union(&spec),
        ));
    }
    for q in [3u64, 5, 7, 11, 13] {
        let sec = gauss_section(q)?;
        checks.push((
            format!("gauss_modulus_q{q}"),
            sec.all_nontrivial_modulus_q && sec.trivial_is_minus_one,
        ));
        body.gauss.push(sec);
    }
    for q in [3u64, 5] {
        let spec = field_for_q(q)?;
        let model = LieModel::new(&spec);
        checks.push((
            format!("witness_pipeline_q{q}"),
            verify_witnesses(&model).iter().all(|w| w.passed()),
        ));
    }
    for (name, ok) in &checks {
        if !ok {
            body.hard_failures.push(format!("selftest failure: {name}"));
        }
    }
    let all_passed = checks.iter().all(|(_, ok)| *ok);
    body.selftest = Some(SelftestSection { checks, all_passed });
    let timings = vec![("selftest".to_string(), start.elapsed().as_millis())];
    Ok(Outcome { report: GlobalReport::assemble(body, timings), hard_failure: !all_passed })
}

/// Run the Gauss-sum sweep as its own section list (used by tests).
pub fn run_gauss_sweep(q_values: &[u64]) -> Result<Vec<GaussSection>> {
    q_values.iter().map(|&q| gauss_section(q)).collect()
}

pub fn write_output(path: Option<&std::path::Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)
            .with_context(|| format!("cannot write output to {}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
