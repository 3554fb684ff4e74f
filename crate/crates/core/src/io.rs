//! Serializable forms of instances and results.
//!
//! Rationals travel as `"p/q"` strings (`"p"` for integers, `"inf"` for
//! `+∞`), so every value survives a round trip exactly.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::interp::{Certificate, Condition, Decision, InterpResult, PairCheck, SequenceReport};
use crate::intersect::CurveGerm;
use crate::lp::LpOutcome;
use crate::monomial::{FracMonomialWeight, MonomialDecision, TianValue};
use crate::parse::parse_poly;
use crate::rat::{serde_rat, serde_rat_vec, ExtRat, Rat};
use crate::valtree::QMValuation;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IrreducibleMode {
    /// Trust the caller's claim.
    Asserted,
    /// Require the Newton-polygon test to succeed.
    #[default]
    Verify,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub poly: String,
    #[serde(with = "serde_rat")]
    pub b: Rat,
    #[serde(default)]
    pub irreducible: IrreducibleMode,
}

fn default_vars() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default = "default_vars")]
    pub vars: Vec<String>,
    pub curves: Vec<CurveSpec>,
}

/// Parses a curve and applies the irreducibility policy.
pub fn load_curve(poly: &str, vars: &[String], mode: IrreducibleMode) -> Result<CurveGerm, Error> {
    let p = parse_poly(poly, vars)?;
    match mode {
        IrreducibleMode::Asserted => CurveGerm::irreducible(p),
        IrreducibleMode::Verify => CurveGerm::verified(p),
    }
}

impl InstanceFile {
    /// Curves paired with their targets. `mode` overrides the per-curve
    /// setting when given.
    pub fn load(&self, mode: Option<IrreducibleMode>) -> Result<Vec<(CurveGerm, Rat)>, Error> {
        if self.vars.len() != 2 {
            return Err(Error::NotBivariate(self.vars.len()));
        }
        self.curves
            .iter()
            .map(|c| {
                let m = mode.unwrap_or(c.irreducible);
                Ok((load_curve(&c.poly, &self.vars, m)?, c.b.clone()))
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecisionDto {
    Yes,
    No,
}

impl From<Decision> for DecisionDto {
    fn from(d: Decision) -> Self {
        match d {
            Decision::Yes => DecisionDto::Yes,
            Decision::No => DecisionDto::No,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationDto {
    pub curve: String,
    pub t: ExtRat,
}

impl ValuationDto {
    pub fn from_valuation(v: &QMValuation, vars: &[String]) -> Self {
        ValuationDto {
            curve: v.curve().poly().to_string_with(vars),
            t: v.t().clone(),
        }
    }

    /// Rebuilds the valuation; the curve is taken as asserted irreducible.
    pub fn to_valuation(&self, vars: &[String]) -> Result<QMValuation, Error> {
        let germ = CurveGerm::irreducible(parse_poly(&self.curve, vars)?)?;
        QMValuation::new(germ, self.t.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheckDto {
    pub condition: String,
    pub i: usize,
    pub j: usize,
    pub skewness: ExtRat,
    #[serde(with = "serde_rat")]
    pub required: Rat,
    pub holds: bool,
}

impl From<&PairCheck> for PairCheckDto {
    fn from(c: &PairCheck) -> Self {
        PairCheckDto {
            condition: match c.condition {
                Condition::TopCluster => "top_cluster",
                Condition::LowerBranch => "lower_branch",
            }
            .into(),
            i: c.i,
            j: c.j,
            skewness: c.skewness.clone(),
            required: c.required.clone(),
            holds: c.holds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDto {
    pub checks: Vec<PairCheckDto>,
    pub violation: Option<PairCheckDto>,
    #[serde(with = "serde_rat_vec")]
    pub values: Vec<Rat>,
}

impl From<&Certificate> for CertificateDto {
    fn from(c: &Certificate) -> Self {
        CertificateDto {
            checks: c.checks.iter().map(PairCheckDto::from).collect(),
            violation: c.violation.as_ref().map(PairCheckDto::from),
            values: c.values.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IrreducibilityDto {
    Verified,
    Asserted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpOutput {
    pub decision: DecisionDto,
    pub minimal_solution: Option<ValuationDto>,
    pub certificate: CertificateDto,
    pub irreducibility: Vec<IrreducibilityDto>,
}

impl InterpOutput {
    pub fn new(result: &InterpResult, curves: &[CurveGerm], vars: &[String]) -> Self {
        InterpOutput {
            decision: result.decision.into(),
            minimal_solution: result
                .minimal_solution
                .as_ref()
                .map(|v| ValuationDto::from_valuation(v, vars)),
            certificate: (&result.certificate).into(),
            irreducibility: curves
                .iter()
                .map(|c| {
                    if c.machine_verified() {
                        IrreducibilityDto::Verified
                    } else {
                        IrreducibilityDto::Asserted
                    }
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialInput {
    pub vars: usize,
    #[serde(with = "serde_rat_vec")]
    pub a: Vec<Rat>,
    #[serde(default)]
    pub f: Option<String>,
    #[serde(default)]
    pub g: Option<String>,
    #[serde(default, with = "opt_rat")]
    pub t: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDto {
    pub beta: Vec<u32>,
    #[serde(with = "serde_rat")]
    pub a: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairsInput {
    pub pairs: Vec<PairDto>,
}

impl PairsInput {
    pub fn to_weight(&self) -> Result<FracMonomialWeight, Error> {
        FracMonomialWeight::new(
            self.pairs
                .iter()
                .map(|p| (p.beta.clone(), p.a.clone()))
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialDecisionOutput {
    pub decision: DecisionDto,
    #[serde(with = "serde_rat")]
    pub criterion: Rat,
    #[serde(with = "serde_rat")]
    pub target: Rat,
    /// Weight of an interpolating monomial valuation.
    #[serde(default, with = "opt_rat_vec")]
    pub witness: Option<Vec<Rat>>,
    /// Farkas multipliers proving that no such weight exists.
    #[serde(default, with = "opt_rat_vec")]
    pub certificate: Option<Vec<Rat>>,
}

impl From<&MonomialDecision> for MonomialDecisionOutput {
    fn from(d: &MonomialDecision) -> Self {
        let (witness, certificate) = match &d.lp {
            LpOutcome::Feasible(w) => (Some(w.clone()), None),
            LpOutcome::Infeasible(c) => (None, Some(c.y.clone())),
        };
        MonomialDecisionOutput {
            decision: d.decision.into(),
            criterion: d.criterion.clone(),
            target: d.target.clone(),
            witness,
            certificate,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceFailureDto {
    pub i: usize,
    pub j: usize,
    pub imult: ExtRat,
    #[serde(with = "serde_rat")]
    pub required: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceOutput {
    pub passed: bool,
    pub pairs_checked: usize,
    pub first_failure: Option<SequenceFailureDto>,
    #[serde(with = "serde_rat")]
    pub max_normalized: Rat,
    pub growth_at_least_linear: bool,
    pub denominators: Vec<String>,
    pub denominators_strictly_increasing: bool,
}

impl From<&SequenceReport> for SequenceOutput {
    fn from(r: &SequenceReport) -> Self {
        SequenceOutput {
            passed: r.passed(),
            pairs_checked: r.pairs_checked,
            first_failure: r.first_failure.as_ref().map(|f| SequenceFailureDto {
                i: f.i,
                j: f.j,
                imult: f.imult.clone(),
                required: f.required.clone(),
            }),
            max_normalized: r.hints.max_normalized.clone(),
            growth_at_least_linear: r.hints.growth_at_least_linear,
            denominators: r.hints.denominators.iter().map(ToString::to_string).collect(),
            denominators_strictly_increasing: r.hints.denominators_strictly_increasing,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TianOutput {
    #[serde(with = "serde_rat")]
    pub formula: Rat,
    #[serde(default, with = "opt_rat")]
    pub exact: Option<Rat>,
    pub discrepancy: bool,
}

impl From<&TianValue> for TianOutput {
    fn from(v: &TianValue) -> Self {
        TianOutput {
            formula: v.formula.clone(),
            exact: v.exact.clone(),
            discrepancy: v.discrepancy(),
        }
    }
}

mod opt_rat {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rat::{parse_rat, Rat};

    pub fn serialize<S: Serializer>(v: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(ToString::to_string).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rat(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

mod opt_rat_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rat::{parse_rat, Rat};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rat>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rat>>, D::Error> {
        Option::<Vec<String>>::deserialize(d)?
            .map(|v| {
                v.iter()
                    .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
                    .collect()
            })
            .transpose()
    }
}
