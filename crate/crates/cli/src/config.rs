//! Run configuration and the structured experiment-file format.
//!
//! Experiment files are JSON with explicit monomial lists — a coefficient
//! and one exponent per variable — so there is no expression parsing and no
//! ambiguity.  Coefficients are integers (prime subfield) or coefficient
//! vectors in the polynomial basis of 𝔽_q for extension base fields.

use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use cuspidal_core::field::FieldSpec;
use cuspidal_core::qtwo::{Monomial, OpenSetSpec, Poly, PolyMap, DEFAULT_ENUMERATION_BUDGET};

/// Environment variable overriding the point-enumeration budget.
pub const BUDGET_ENV_VAR: &str = "CUSPIDAL_ENUM_BUDGET";

/// Largest q accepted by the orbit-closure verification commands; the
/// exact kernel of the coset matrix grows like q³ columns (q = 9 is the
/// intended optional extension-field run).
pub const VERIFY_MAX_Q: u64 = 9;
/// Largest q for the witness pipeline (lemma-chi).
pub const LEMMA_MAX_Q: u64 = 49;
/// Hard cap for the character-table command.
pub const ASSERTION_MAX_Q: u64 = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeOpt {
    Lie,
    Group,
    Both,
}

impl ModeOpt {
    pub fn includes_lie(self) -> bool {
        matches!(self, ModeOpt::Lie | ModeOpt::Both)
    }

    pub fn includes_group(self) -> bool {
        matches!(self, ModeOpt::Group | ModeOpt::Both)
    }
}

impl std::str::FromStr for ModeOpt {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lie" => Ok(ModeOpt::Lie),
            "group" => Ok(ModeOpt::Group),
            "both" => Ok(ModeOpt::Both),
            other => bail!("unknown mode {other:?} (expected lie, group, or both)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for OutputFormat {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => bail!("unknown format {other:?} (expected json, csv, or text)"),
        }
    }
}

/// Parse a comma-separated q list and check every value is an odd prime
/// power within the command's bound.
pub fn parse_q_list(raw: &str, max_q: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in raw.split(',') {
        let q: u64 = part.trim().parse().with_context(|| format!("bad q value {part:?}"))?;
        out.push(validate_q(q, max_q)?);
    }
    if out.is_empty() {
        bail!("empty q list");
    }
    Ok(out)
}

/// Odd prime powers only; returns q back for chaining.
pub fn validate_q(q: u64, max_q: u64) -> Result<u64> {
    let (p, k) = factor_prime_power(q)
        .with_context(|| format!("q = {q} is not a prime power"))?;
    if p == 2 {
        bail!("q = {q} is even; odd prime powers required");
    }
    if q > max_q {
        bail!("q = {q} exceeds the supported bound {max_q} for this command");
    }
    let _ = k;
    Ok(q)
}

/// q = p^k with p prime, or None.
pub fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 0;
    let mut n = q;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((q, 1)); // q itself is prime
    }
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    (n == 1).then_some((p, k))
}

pub fn field_for_q(q: u64) -> Result<Arc<FieldSpec>> {
    let (p, k) = factor_prime_power(q).context("q must be a prime power")?;
    FieldSpec::with_bound(p, k, q.max(cuspidal_core::field::DEFAULT_FIELD_BOUND))
        .map_err(|e| anyhow::anyhow!("field construction failed: {e}"))
}

/// Budget resolution order: explicit flag, then the environment variable,
/// then the experiment file, then the built-in default.
pub fn resolve_budget(flag: Option<u64>, from_file: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var(BUDGET_ENV_VAR).ok().and_then(|v| v.parse().ok()))
        .or(from_file)
        .unwrap_or(DEFAULT_ENUMERATION_BUDGET)
}

// ---------------------------------------------------------------------------
// Experiment files
// ---------------------------------------------------------------------------

/// A coefficient: an integer in the prime subfield, or a coefficient vector
/// in the polynomial basis of 𝔽_q.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffSpec {
    Int(i64),
    Vector(Vec<i64>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermSpec {
    pub coeff: CoeffSpec,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u64,
    #[serde(default = "default_k")]
    pub k: u32,
}

fn default_k() -> u32 {
    1
}

/// On-disk experiment description for the restriction-surjectivity sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    pub field: FieldParams,
    pub variables: usize,
    /// The map P: one polynomial per output coordinate.
    pub p_map: Vec<Vec<TermSpec>>,
    /// The map Q, same arity and output count as P.
    pub q_map: Vec<Vec<TermSpec>>,
    /// D in the output coordinates; U = {D ≠ 0}.
    pub denominator: Vec<TermSpec>,
    pub n_max: u32,
    #[serde(default)]
    pub budget: Option<u64>,
    /// User attestation that the geometric hypotheses (flat surjective P,
    /// no affine lines in X, flat Q with absolutely irreducible fibers)
    /// hold; they are not machine-checked.
    #[serde(default)]
    pub hypotheses_attested: bool,
}

fn build_poly(spec: &Arc<FieldSpec>, vars: usize, terms: &[TermSpec]) -> Result<Poly> {
    let monomials = terms
        .iter()
        .map(|t| {
            if t.exponents.len() != vars {
                bail!(
                    "term has {} exponents, expected {} (one per variable)",
                    t.exponents.len(),
                    vars
                );
            }
            let coeff = match &t.coeff {
                CoeffSpec::Int(c) => spec.from_int(*c),
                CoeffSpec::Vector(v) => {
                    if v.len() > spec.k() as usize {
                        bail!("coefficient vector longer than the field degree");
                    }
                    let p = spec.p() as i64;
                    let coeffs: Vec<u64> =
                        v.iter().map(|c| (((c % p) + p) % p) as u64).collect();
                    spec.element(&coeffs)
                }
            };
            Ok(Monomial { coeff, exponents: t.exponents.clone() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly { vars, terms: monomials })
}

pub struct Experiment {
    pub name: String,
    pub base: Arc<FieldSpec>,
    pub p_map: PolyMap,
    pub q_map: PolyMap,
    pub open: OpenSetSpec,
    pub n_max: u32,
    pub budget: Option<u64>,
    pub hypotheses_attested: bool,
}

impl ExperimentConfig {
    pub fn load(path: &std::path::Path) -> Result<ExperimentConfig> {
        let raw = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read experiment file {}", path.display()))?;
        serde_json::from_str(&raw)
            .with_context(|| format!("cannot parse experiment file {}", path.display()))
    }

    pub fn build(&self) -> Result<Experiment> {
        let q = self
            .field
            .p
            .checked_pow(self.field.k)
            .context("field size overflow")?;
        validate_q(q, LEMMA_MAX_Q)?;
        let base = field_for_q(q)?;
        let outputs = self.p_map.len();
        if outputs == 0 || self.q_map.len() != outputs {
            bail!("P and Q must have the same (positive) number of output polynomials");
        }
        let p_polys = self
            .p_map
            .iter()
            .map(|terms| build_poly(&base, self.variables, terms))
            .collect::<Result<Vec<_>>>()?;
        let q_polys = self
            .q_map
            .iter()
            .map(|terms| build_poly(&base, self.variables, terms))
            .collect::<Result<Vec<_>>>()?;
        let denominator = build_poly(&base, outputs, &self.denominator)?;
        if denominator.is_zero_poly() {
            bail!("the open-set denominator must be a nonzero polynomial");
        }
        for poly in p_polys.iter().chain(&q_polys) {
            if poly.is_zero_poly() {
                bail!("every output polynomial must be nonzero");
            }
        }
        Ok(Experiment {
            name: self.name.clone(),
            base,
            p_map: PolyMap { vars: self.variables, polys: p_polys },
            q_map: PolyMap { vars: self.variables, polys: q_polys },
            open: OpenSetSpec { denominator },
            n_max: self.n_max,
            budget: self.budget,
            hypotheses_attested: self.hypotheses_attested,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_validation() {
        assert!(parse_q_list("3,5,7", VERIFY_MAX_Q).is_ok());
        assert!(parse_q_list("9", VERIFY_MAX_Q).is_ok());
        assert!(parse_q_list("4", VERIFY_MAX_Q).is_err()); // even
        assert!(parse_q_list("6", VERIFY_MAX_Q).is_err()); // not a prime power
        assert!(parse_q_list("13", VERIFY_MAX_Q).is_err()); // over the verify bound
        assert!(parse_q_list("", VERIFY_MAX_Q).is_err());
        assert_eq!(factor_prime_power(27), Some((3, 3)));
        assert_eq!(factor_prime_power(49), Some((7, 2)));
        assert_eq!(factor_prime_power(12), None);
    }

    #[test]
    fn experiment_roundtrip() {
        let json = r#"{
            "name": "probe",
            "field": {"p": 5},
            "variables": 1,
            "p_map": [[{"coeff": 1, "exponents": [1]}]],
            "q_map": [[{"coeff": 1, "exponents": [1]}]],
            "denominator": [{"coeff": 1, "exponents": [0]}],
            "n_max": 1
        }"#;
        let cfg: ExperimentConfig = serde_json::from_str(json).unwrap();
        let exp = cfg.build().unwrap();
        assert_eq!(exp.base.q(), 5);
        assert_eq!(exp.p_map.degree(), 1);
        assert!(!exp.hypotheses_attested);
    }

    #[test]
    fn experiment_rejections() {
        let base = r#"{
            "name": "bad",
            "field": {"p": 5},
            "variables": 2,
            "p_map": [[{"coeff": 1, "exponents": [1]}]],
            "q_map": [[{"coeff": 1, "exponents": [1, 0]}]],
            "denominator": [{"coeff": 1, "exponents": [0]}],
            "n_max": 1
        }"#;
        let cfg: ExperimentConfig = serde_json::from_str(base).unwrap();
        assert!(cfg.build().is_err()); // P term has the wrong arity
    }
}
