//! Report types and emitters.
//!
//! One `GlobalReport` covers every subcommand; sections are optional.  The
//! JSON body is fully deterministic for a fixed configuration — no
//! timestamps, stable key order, canonical orbit and character orders — and
//! carries a SHA-256 determinism hash of itself.  Wall-clock timings live in
//! a sidecar field excluded from the hash.
//!
//! CSV uses the fixed conjecture schema
//! `q,group,mode,orbit,closure_size,dim_Sw,dim_Scusp,contained,equal`; the
//! text emitter prints aligned tables followed by the design-decision
//! disclosure block.

use serde::Serialize;
use sha2::{Digest, Sha256};

use cuspidal_core::cyclo::CycNumber;
use cuspidal_core::spaces::{ConjectureReport, FunctionVector};

pub const SCHEMA_VERSION: u32 = 1;

/// The disclosures shipped with every report, restating conventions that a
/// reader needs to interpret the numbers.
pub fn standard_disclosures() -> Vec<String> {
    [
        "closure rule: the closure of an orbit is realized as the union of orbits with the \
         same invariant label (det on sl2, tr^2/det on PGL2) and smaller-or-equal size; exact \
         for sl2 fibers, and for PGL2 it merges the two involution classes (label 0) into the \
         closure of the larger one only",
        "norm convention: all norm factors |a|^{1/2} are identically 1 over a finite field \
         and appear in no formula",
        "fourier convention: unnormalized forward kernel psi(tr(xi*x)); applying the \
         transform twice multiplies by q^3 and pulls back along negation",
        "lie algebra: for odd q the Lie algebra of PGL2 is identified with sl2 \
         (gl2 = sl2 + center)",
        "question 2 hypotheses NOT machine-checked: P flat and surjective, X = P^{-1}(0) \
         contains no images of non-constant affine maps over the algebraic closure, Q flat \
         with absolutely irreducible fibers; configs carry a user attestation flag",
        "even q excluded: the witness construction needs a non-square, so characteristic 2 \
         is rejected at field construction",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for ToolInfo {
    fn default() -> Self {
        ToolInfo { name: "cuspidal", version: env!("CARGO_PKG_VERSION") }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Invocation {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_values: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fourier_cross_check_max_q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumeration_budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
}

/// Exact cyclotomic scalar as JSON: conductor, integer numerator
/// coefficients (strings, low-to-high powers of ζ), one denominator.
#[derive(Debug, Clone, Serialize)]
pub struct CycNumberJson {
    pub conductor: u64,
    pub numerator_coeffs: Vec<String>,
    pub denominator: String,
}

impl CycNumberJson {
    pub fn from_value(v: &CycNumber) -> CycNumberJson {
        CycNumberJson {
            conductor: v.conductor(),
            numerator_coeffs: v.numerator_coeffs().iter().map(|c| c.to_string()).collect(),
            denominator: v.denominator().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub conductor: u64,
    pub point_keys: Vec<u64>,
    pub values: Vec<CycNumberJson>,
}

impl WitnessJson {
    pub fn from_function(f: &FunctionVector) -> WitnessJson {
        let conductor = f
            .values()
            .iter()
            .map(CycNumber::conductor)
            .max()
            .unwrap_or(1);
        WitnessJson {
            conductor,
            point_keys: f.points().keys().to_vec(),
            values: f.values().iter().map(CycNumberJson::from_value).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureRecordJson {
    pub mode: String,
    pub orbit: String,
    pub orbit_size: usize,
    pub closure_size: usize,
    pub added_orbit_sizes: Vec<usize>,
    pub incidence_pairs: usize,
    pub coset_constraints: usize,
    pub dim_weightless: usize,
    pub dim_restricted_cuspidal: usize,
    pub contained: bool,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

impl ConjectureRecordJson {
    pub fn from_report(r: &ConjectureReport) -> ConjectureRecordJson {
        ConjectureRecordJson {
            mode: r.mode.to_string(),
            orbit: r.orbit_name.clone(),
            orbit_size: r.orbit_size,
            closure_size: r.closure_size,
            added_orbit_sizes: r.added_orbit_sizes.clone(),
            incidence_pairs: r.incidence_pairs,
            coset_constraints: r.coset_constraints,
            dim_weightless: r.dim_weightless,
            dim_restricted_cuspidal: r.dim_restricted_cuspidal,
            contained: r.containment_holds,
            equal: r.equality_holds,
            witness: r.witness.as_ref().map(WitnessJson::from_function),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModeSection {
    pub dim_cuspidal: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elliptic_count: Option<usize>,
    /// "equal" when the Fourier-support oracle ran and matched, "skipped"
    /// when above the cross-check bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fourier_cross_check: Option<String>,
    pub orbits: Vec<ConjectureRecordJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldSection {
    pub q: u64,
    pub p: u64,
    pub k: u32,
    /// Monic modulus polynomial, low-to-high coefficients (placeholder x
    /// for prime fields); with the generator this pins every derived table.
    pub modulus: Vec<u64>,
    pub generator: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lie: Option<ModeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<ModeSection>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessClauseJson {
    pub m: u64,
    pub a_power: u64,
    pub b_power: u64,
    pub fourier_vanishes_at_zero: bool,
    pub support_is_elliptic: bool,
    pub kappa_at_z1: CycNumberJson,
    pub closed_form: CycNumberJson,
    pub closed_form_matches: bool,
    pub kappa_nonzero: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaSection {
    pub q: u64,
    pub nontrivial_characters: u64,
    pub trivial_character: &'static str,
    pub witnesses: Vec<WitnessClauseJson>,
    pub scaling_kernel_dim: usize,
    pub weightless_restricted_dim: usize,
    pub scaling_kernel_relation: String,
    pub all_passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GaussSection {
    pub q: u64,
    pub checked_characters: u64,
    pub all_nontrivial_modulus_q: bool,
    pub trivial_is_minus_one: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassMultiplicityJson {
    pub orbit: String,
    pub orbit_size: usize,
    pub multiplicities: Vec<(String, u64)>,
    pub steinberg_multiplicity: u64,
    pub steinberg_burnside: u64,
    pub max_non_steinberg: u64,
    pub end_dimension: u64,
    pub sum_m_squared: u64,
    pub bound_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AssertionSection {
    pub q: u64,
    pub character_count: usize,
    pub dims: Vec<u64>,
    pub sum_dim_squared: u64,
    pub table_validated: bool,
    pub classes: Vec<ClassMultiplicityJson>,
    pub all_bounds_hold: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelRecordJson {
    pub n: u32,
    pub field_size: u64,
    pub x_count: usize,
    pub source_count: usize,
    pub rank: usize,
    pub surjective: bool,
    pub columns_streamed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuestionTwoSection {
    pub name: String,
    pub q: u64,
    pub variables: usize,
    pub outputs: usize,
    pub degree_p: u32,
    pub degree_q: u32,
    pub budget: u64,
    pub hypotheses_attested: bool,
    pub unchecked_hypotheses: Vec<String>,
    pub levels: Vec<LevelRecordJson>,
    pub first_surjective_n: Option<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestSection {
    pub checks: Vec<(String, bool)>,
    pub all_passed: bool,
}

/// Everything except the determinism hash and the timing sidecar; this is
/// the hashed payload.
#[derive(Debug, Clone, Serialize)]
pub struct ReportBody {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub invocation: Invocation,
    pub disclosures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub field_sections: Vec<FieldSection>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lemma_chi: Vec<LemmaSection>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub gauss: Vec<GaussSection>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assertion: Vec<AssertionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub question2: Option<QuestionTwoSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selftest: Option<SelftestSection>,
    /// Hard-assertion failures that drive a nonzero exit code.
    pub hard_failures: Vec<String>,
}

impl ReportBody {
    pub fn new(invocation: Invocation) -> ReportBody {
        ReportBody {
            schema_version: SCHEMA_VERSION,
            tool: ToolInfo::default(),
            invocation,
            disclosures: standard_disclosures(),
            field_sections: Vec::new(),
            lemma_chi: Vec::new(),
            gauss: Vec::new(),
            assertion: Vec::new(),
            question2: None,
            selftest: None,
            hard_failures: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GlobalReport {
    #[serde(flatten)]
    pub body: ReportBody,
    pub determinism: DeterminismInfo,
    /// Wall-clock milliseconds per phase; excluded from the hash.
    pub timings_ms: Vec<(String, u128)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeterminismInfo {
    pub hash_sha256: String,
}

impl GlobalReport {
    pub fn assemble(body: ReportBody, timings_ms: Vec<(String, u128)>) -> GlobalReport {
        let canonical = serde_json::to_string(&body).expect("report body serializes");
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        let hash = hasher.finalize();
        let hash_sha256 = hash.iter().map(|b| format!("{b:02x}")).collect();
        GlobalReport { body, determinism: DeterminismInfo { hash_sha256 }, timings_ms }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("report body serializes")
    }

    /// Fixed-schema CSV: conjecture rows, then sections with their own
    /// headers when present.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("q,group,mode,orbit,closure_size,dim_Sw,dim_Scusp,contained,equal\n");
        for fs in &self.body.field_sections {
            for section in [&fs.lie, &fs.group].into_iter().flatten() {
                for r in &section.orbits {
                    out.push_str(&format!(
                        "{},PGL2,{},{},{},{},{},{},{}\n",
                        fs.q,
                        r.mode,
                        r.orbit,
                        r.closure_size,
                        r.dim_weightless,
                        r.dim_restricted_cuspidal,
                        r.contained,
                        r.equal
                    ));
                }
            }
        }
        if !self.body.lemma_chi.is_empty() {
            out.push_str("\nq,m,a_power,b_power,fourier_zero,support_elliptic,closed_form,nonzero,passed\n");
            for sec in &self.body.lemma_chi {
                for w in &sec.witnesses {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{}\n",
                        sec.q,
                        w.m,
                        w.a_power,
                        w.b_power,
                        w.fourier_vanishes_at_zero,
                        w.support_is_elliptic,
                        w.closed_form_matches,
                        w.kappa_nonzero,
                        w.passed
                    ));
                }
            }
        }
        if !self.body.assertion.is_empty() {
            out.push_str("\nq,orbit,max_non_steinberg,m_steinberg,end_dimension,bound_holds\n");
            for sec in &self.body.assertion {
                for c in &sec.classes {
                    out.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        sec.q,
                        c.orbit,
                        c.max_non_steinberg,
                        c.steinberg_multiplicity,
                        c.end_dimension,
                        c.bound_holds
                    ));
                }
            }
        }
        if let Some(q2) = &self.body.question2 {
            out.push_str("\nn,field_size,x_count,source_count,rank,surjective\n");
            for l in &q2.levels {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    l.n, l.field_size, l.x_count, l.source_count, l.rank, l.surjective
                ));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let b = &self.body;
        out.push_str(&format!(
            "{} {} — command: {}\n",
            b.tool.name, b.tool.version, b.invocation.command
        ));
        for fs in &b.field_sections {
            out.push_str(&format!(
                "\nfield q = {} (p = {}, k = {}), modulus {:?}, generator {:?}\n",
                fs.q, fs.p, fs.k, fs.modulus, fs.generator
            ));
            for (label, section) in [("lie", &fs.lie), ("group", &fs.group)] {
                let Some(sec) = section else { continue };
                out.push_str(&format!(
                    "  {label}: dim cuspidal = {}{}{}\n",
                    sec.dim_cuspidal,
                    sec.elliptic_count
                        .map(|e| format!(", elliptic points = {e}"))
                        .unwrap_or_default(),
                    sec.fourier_cross_check
                        .as_ref()
                        .map(|c| format!(", fourier cross-check: {c}"))
                        .unwrap_or_default(),
                ));
                out.push_str(
                    "  orbit                    size  closure  dim_Sw  dim_Scusp  contained  equal\n",
                );
                for r in &sec.orbits {
                    out.push_str(&format!(
                        "  {:<24} {:>4}  {:>7}  {:>6}  {:>9}  {:>9}  {:>5}\n",
                        r.orbit,
                        r.orbit_size,
                        r.closure_size,
                        r.dim_weightless,
                        r.dim_restricted_cuspidal,
                        r.contained,
                        r.equal
                    ));
                }
            }
        }
        for sec in &b.lemma_chi {
            out.push_str(&format!(
                "\nwitness pipeline q = {} ({} nontrivial characters; trivial character {})\n",
                sec.q, sec.nontrivial_characters, sec.trivial_character
            ));
            out.push_str("  m   (a,b) powers  F(h)(0)=0  elliptic  closed-form  nonzero  passed\n");
            for w in &sec.witnesses {
                out.push_str(&format!(
                    "  {:<3} ({},{})         {:<9} {:<9} {:<12} {:<8} {}\n",
                    w.m,
                    w.a_power,
                    w.b_power,
                    w.fourier_vanishes_at_zero,
                    w.support_is_elliptic,
                    w.closed_form_matches,
                    w.kappa_nonzero,
                    w.passed
                ));
            }
            out.push_str(&format!(
                "  scaling-kernel diagnostic: dim ker kappa_triv = {}, dim weightless|N = {}, relation = {}\n",
                sec.scaling_kernel_dim, sec.weightless_restricted_dim, sec.scaling_kernel_relation
            ));
        }
        for sec in &b.gauss {
            out.push_str(&format!(
                "\ngauss sums q = {}: {} nontrivial characters, |Delta|^2 = q: {}, trivial = -1: {}\n",
                sec.q, sec.checked_characters, sec.all_nontrivial_modulus_q, sec.trivial_is_minus_one
            ));
        }
        for sec in &b.assertion {
            out.push_str(&format!(
                "\nmultiplicity bound q = {}: {} irreducibles, dims {:?}, sum dim^2 = {} (validated: {})\n",
                sec.q, sec.character_count, sec.dims, sec.sum_dim_squared, sec.table_validated
            ));
            out.push_str("  orbit                    size  max m (pi != St)  m_St  end dim  holds\n");
            for c in &sec.classes {
                out.push_str(&format!(
                    "  {:<24} {:>4}  {:>16}  {:>4}  {:>7}  {}\n",
                    c.orbit,
                    c.orbit_size,
                    c.max_non_steinberg,
                    c.steinberg_multiplicity,
                    c.end_dimension,
                    c.bound_holds
                ));
            }
        }
        if let Some(q2) = &b.question2 {
            out.push_str(&format!(
                "\nrestriction sweep '{}' over F_{}: degrees ({}, {}), budget {}, attested: {}\n",
                q2.name, q2.q, q2.degree_p, q2.degree_q, q2.budget, q2.hypotheses_attested
            ));
            out.push_str("  n  field  |X_n|  |source|  rank  surjective\n");
            for l in &q2.levels {
                out.push_str(&format!(
                    "  {}  {:>5}  {:>5}  {:>8}  {:>4}  {}\n",
                    l.n, l.field_size, l.x_count, l.source_count, l.rank, l.surjective
                ));
            }
            out.push_str(&format!("  first surjective level: {:?}\n", q2.first_surjective_n));
            out.push_str("  unchecked hypotheses:\n");
            for h in &q2.unchecked_hypotheses {
                out.push_str(&format!("    - {h}\n"));
            }
        }
        if let Some(st) = &b.selftest {
            out.push('\n');
            for (name, ok) in &st.checks {
                out.push_str(&format!("selftest {name}: {}\n", if *ok { "ok" } else { "FAIL" }));
            }
        }
        if !b.hard_failures.is_empty() {
            out.push_str("\nHARD FAILURES:\n");
            for f in &b.hard_failures {
                out.push_str(&format!("  - {f}\n"));
            }
        }
        out.push_str("\ndesign decisions in effect:\n");
        for d in &b.disclosures {
            out.push_str(&format!("  - {d}\n"));
        }
        out.push_str(&format!("\ndeterminism hash: {}\n", self.determinism.hash_sha256));
        out
    }

    pub fn emit(&self, format: crate::config::OutputFormat) -> String {
        match format {
            crate::config::OutputFormat::Json => self.to_json(),
            crate::config::OutputFormat::Csv => self.to_csv(),
            crate::config::OutputFormat::Text => self.to_text(),
        }
    }
}
