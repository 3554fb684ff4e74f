//! Valuative interpolation on plane curve germs.
//!
//! Given distinct irreducible germs `f_j` and rational targets `b_j`, decide
//! whether some normalized centered valuation `v` satisfies `v(f_j) = b_j`
//! for all `j`, and if so return the minimal one as a quasimonomial
//! valuation. Indices in reports are 0-based positions in the input list.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;
use crate::intersect::{imult, CurveGerm};
use crate::rat::{ExtRat, Rat};
use crate::valtree::{qm_eval_irreducible, QMValuation};

/// Why an instance violates the standing hypotheses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    Empty,
    NotIrreducible { index: usize },
    TargetBelowOne { index: usize, b: Rat },
    TargetBelowMultiplicity { index: usize, b: Rat, mult: u64 },
    DuplicateCurve { first: usize, second: usize },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Empty => write!(f, "no curves given"),
            Rejection::NotIrreducible { index } => {
                write!(f, "curve {index} is not asserted irreducible")
            }
            Rejection::TargetBelowOne { index, b } => {
                write!(f, "target b_{index} = {b} is below 1")
            }
            Rejection::TargetBelowMultiplicity { index, b, mult } => write!(
                f,
                "target b_{index} = {b} is below the multiplicity {mult}, but v(f) >= m(f) for every valuation"
            ),
            Rejection::DuplicateCurve { first, second } => {
                write!(f, "curves {first} and {second} define the same germ")
            }
        }
    }
}

/// A validated interpolation problem with its derived data.
#[derive(Clone, Debug)]
pub struct InterpInstance {
    items: Vec<(CurveGerm, Rat)>,
    normalized: Vec<Rat>,
    max_normalized: Rat,
    top: Vec<usize>,
    lower: Vec<usize>,
    skewness: Vec<Vec<ExtRat>>,
}

fn mult_rat(g: &CurveGerm) -> Rat {
    Rat::from_integer(BigInt::from(g.mult()))
}

/// Checks the hypotheses and computes `B_j = b_j / m(f_j)`, `B̃ = max B_j`
/// and the split into indices attaining `B̃` and the rest.
pub fn validate_instance(items: Vec<(CurveGerm, Rat)>) -> Result<InterpInstance, Error> {
    let reject = |r| Err(Error::Invalid(r));
    if items.is_empty() {
        return reject(Rejection::Empty);
    }
    for (index, (g, b)) in items.iter().enumerate() {
        if !g.irreducible_asserted() {
            return reject(Rejection::NotIrreducible { index });
        }
        if *b < Rat::one() {
            return reject(Rejection::TargetBelowOne {
                index,
                b: b.clone(),
            });
        }
        if *b < mult_rat(g) {
            return reject(Rejection::TargetBelowMultiplicity {
                index,
                b: b.clone(),
                mult: g.mult(),
            });
        }
    }
    let k = items.len();
    let mut skewness = vec![vec![ExtRat::Infinite; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let (fi, fj) = (&items[i].0, &items[j].0);
            let n = imult(fi.poly(), fj.poly())?;
            if n.is_infinite() {
                return reject(Rejection::DuplicateCurve {
                    first: i,
                    second: j,
                });
            }
            let s = n.scale(&Rat::from_integer(BigInt::from(fi.mult() * fj.mult())).recip());
            skewness[i][j] = s.clone();
            skewness[j][i] = s;
        }
    }
    let normalized: Vec<Rat> = items.iter().map(|(g, b)| b / mult_rat(g)).collect();
    let max_normalized = normalized.iter().max().unwrap().clone();
    let (top, lower) = (0..k).partition(|&j| normalized[j] == max_normalized);
    Ok(InterpInstance {
        items,
        normalized,
        max_normalized,
        top,
        lower,
        skewness,
    })
}

impl InterpInstance {
    pub fn items(&self) -> &[(CurveGerm, Rat)] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// `B_j = b_j / m(f_j)`.
    pub fn normalized_targets(&self) -> &[Rat] {
        &self.normalized
    }

    /// `B̃ = max_j B_j`.
    pub fn max_normalized(&self) -> &Rat {
        &self.max_normalized
    }

    /// Indices with `B_j = B̃`, ascending.
    pub fn top_indices(&self) -> &[usize] {
        &self.top
    }

    /// Indices with `B_j < B̃`, ascending.
    pub fn lower_indices(&self) -> &[usize] {
        &self.lower
    }

    /// Cached pairwise skewness `α(v_i ∧ v_j)`.
    pub fn skewness(&self, i: usize, j: usize) -> &ExtRat {
        &self.skewness[i][j]
    }

    /// Whether each germ's irreducibility was machine-verified (`true`) or
    /// only asserted by the caller (`false`).
    pub fn irreducibility_verified(&self) -> Vec<bool> {
        self.items.iter().map(|(g, _)| g.machine_verified()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// `α(v_i ∧ v_j) ≥ B̃` for two indices attaining the maximum.
    TopCluster,
    /// `α(v_i ∧ v_j) = B_j` for `i` attaining the maximum and `j` below it.
    LowerBranch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub condition: Condition,
    pub i: usize,
    pub j: usize,
    pub skewness: ExtRat,
    pub required: Rat,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Every pair condition examined, in evaluation order.
    pub checks: Vec<PairCheck>,
    /// First violated check, for a negative decision.
    pub violation: Option<PairCheck>,
    /// `v_min(f_j)` for every `j`, for a positive decision.
    pub values: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub struct InterpResult {
    pub decision: Decision,
    pub minimal_solution: Option<QMValuation>,
    pub certificate: Certificate,
}

/// Decides a finite interpolation problem.
///
/// Solvable iff the curves attaining `B̃` pairwise have skewness `≥ B̃`,
/// and each lower curve `f_j` meets every top curve with skewness exactly
/// `B_j`. The minimal solution is `v_{f_i, B̃}` for the first top index `i`;
/// it is re-evaluated on every `f_j` before being returned.
pub fn decide_finite(inst: &InterpInstance) -> Result<InterpResult, Error> {
    let btilde = &inst.max_normalized;
    let mut checks = Vec::new();
    for (a, &i) in inst.top.iter().enumerate() {
        for &j in &inst.top[a + 1..] {
            let s = inst.skewness(i, j).clone();
            let holds = s >= ExtRat::Finite(btilde.clone());
            checks.push(PairCheck {
                condition: Condition::TopCluster,
                i,
                j,
                skewness: s,
                required: btilde.clone(),
                holds,
            });
        }
    }
    for &i in &inst.top {
        for &j in &inst.lower {
            let s = inst.skewness(i, j).clone();
            let holds = s == inst.normalized[j];
            checks.push(PairCheck {
                condition: Condition::LowerBranch,
                i,
                j,
                skewness: s,
                required: inst.normalized[j].clone(),
                holds,
            });
        }
    }
    if let Some(bad) = checks.iter().find(|c| !c.holds).cloned() {
        return Ok(InterpResult {
            decision: Decision::No,
            minimal_solution: None,
            certificate: Certificate {
                checks,
                violation: Some(bad),
                values: Vec::new(),
            },
        });
    }
    let anchor = inst.top[0];
    let vmin = QMValuation::new(
        inst.items[anchor].0.clone(),
        ExtRat::Finite(btilde.clone()),
    )?;
    let mut values = Vec::with_capacity(inst.len());
    for (j, (g, b)) in inst.items.iter().enumerate() {
        let got = qm_eval_irreducible(&vmin, g)?;
        if got != *b {
            return Err(Error::Inconsistency(format!(
                "minimal solution gives v(f_{j}) = {got}, expected {b}"
            )));
        }
        values.push(b.clone());
    }
    Ok(InterpResult {
        decision: Decision::Yes,
        minimal_solution: Some(vmin),
        certificate: Certificate {
            checks,
            violation: None,
            values,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceFailure {
    pub i: usize,
    pub j: usize,
    pub imult: ExtRat,
    pub required: Rat,
}

/// Heuristic classification data for an increasing target sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceHints {
    pub max_normalized: Rat,
    /// Consecutive increments of `B_j` never shrink, so the sequence grows
    /// at least linearly and no quasimonomial valuation can interpolate
    /// its continuation.
    pub growth_at_least_linear: bool,
    pub denominators: Vec<BigInt>,
    /// Denominators of `b_j` strictly increase along the prefix, the
    /// finite trace of an infinitely singular solution.
    pub denominators_strictly_increasing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceReport {
    pub pairs_checked: usize,
    pub first_failure: Option<SequenceFailure>,
    pub hints: SequenceHints,
}

impl SequenceReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks `(f_i · f_j) = m(f_i) b_j` for all `i > j` on a prefix with
/// strictly increasing `B_j`.
pub fn check_sequence_prefix(items: Vec<(CurveGerm, Rat)>) -> Result<SequenceReport, Error> {
    let inst = validate_instance(items)?;
    let norm = inst.normalized_targets();
    if let Some(index) = (1..norm.len()).find(|&j| norm[j] <= norm[j - 1]) {
        return Err(Error::NonMonotone { index });
    }
    let mut pairs_checked = 0;
    let mut first_failure = None;
    'outer: for i in 1..inst.len() {
        for j in 0..i {
            let (fi, _) = &inst.items[i];
            let (fj, bj) = &inst.items[j];
            pairs_checked += 1;
            let n = imult(fi.poly(), fj.poly())?;
            let required = mult_rat(fi) * bj;
            if n != required {
                first_failure = Some(SequenceFailure {
                    i,
                    j,
                    imult: n,
                    required,
                });
                break 'outer;
            }
        }
    }
    let increments: Vec<Rat> = norm.windows(2).map(|w| &w[1] - &w[0]).collect();
    let growth_at_least_linear =
        increments.len() >= 2 && increments.windows(2).all(|w| w[1] >= w[0]);
    let denominators: Vec<BigInt> = inst.items.iter().map(|(_, b)| b.denom().clone()).collect();
    let denominators_strictly_increasing =
        denominators.len() >= 2 && denominators.windows(2).all(|w| w[1] > w[0]);
    Ok(SequenceReport {
        pairs_checked,
        first_failure,
        hints: SequenceHints {
            max_normalized: inst.max_normalized.clone(),
            growth_at_least_linear,
            denominators,
            denominators_strictly_increasing,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::rat::{int, rat};

    fn germ(s: &str) -> CurveGerm {
        CurveGerm::irreducible(parse_poly(s, &["x", "y"]).unwrap()).unwrap()
    }

    fn factorial(j: u32) -> CurveGerm {
        let mut text = String::from("y");
        let mut fact: u64 = 1;
        for k in 1..=j {
            fact *= u64::from(k);
            text.push_str(&format!(" - {fact}*x^{k}"));
        }
        germ(&text)
    }

    fn factorial_items(bs: &[Rat]) -> Vec<(CurveGerm, Rat)> {
        bs.iter()
            .enumerate()
            .map(|(j, b)| (factorial(j as u32 + 1), b.clone()))
            .collect()
    }

    #[test]
    fn validation() {
        let inst = validate_instance(vec![(germ("y"), int(5))]).unwrap();
        assert_eq!(inst.normalized_targets(), &[int(5)]);
        assert_eq!(inst.top_indices(), &[0]);
        assert!(matches!(
            validate_instance(vec![(germ("y^2-x^3"), int(1))]),
            Err(Error::Invalid(Rejection::TargetBelowMultiplicity { index: 0, mult: 2, .. }))
        ));
        assert!(matches!(
            validate_instance(vec![(germ("y"), int(1)), (germ("2*y"), int(1))]),
            Err(Error::Invalid(Rejection::DuplicateCurve { first: 0, second: 1 }))
        ));
        assert!(matches!(
            validate_instance(vec![(germ("y"), rat(1, 2))]),
            Err(Error::Invalid(Rejection::TargetBelowOne { .. }))
        ));
        assert!(matches!(
            validate_instance(vec![]),
            Err(Error::Invalid(Rejection::Empty))
        ));
        let unasserted = CurveGerm::new(parse_poly("y", &["x", "y"]).unwrap(), false).unwrap();
        assert!(matches!(
            validate_instance(vec![(unasserted, int(2))]),
            Err(Error::Invalid(Rejection::NotIrreducible { index: 0 }))
        ));
    }

    #[test]
    fn factorial_three_accepts() {
        let inst = validate_instance(factorial_items(&[int(2), int(3), int(5)])).unwrap();
        assert_eq!(inst.top_indices(), &[2]);
        let res = decide_finite(&inst).unwrap();
        assert_eq!(res.decision, Decision::Yes);
        let v = res.minimal_solution.unwrap();
        assert_eq!(v.t(), &ExtRat::from_int(5));
        assert_eq!(v.curve(), &inst.items()[2].0);
        let skews: Vec<_> = res.certificate.checks.iter().map(|c| c.skewness.clone()).collect();
        assert_eq!(skews, vec![ExtRat::from_int(2), ExtRat::from_int(3)]);
        assert_eq!(res.certificate.values, vec![int(2), int(3), int(5)]);
    }

    #[test]
    fn factorial_three_rejects() {
        let inst = validate_instance(factorial_items(&[int(2), int(2), int(5)])).unwrap();
        let res = decide_finite(&inst).unwrap();
        assert_eq!(res.decision, Decision::No);
        assert!(res.minimal_solution.is_none());
        let bad = res.certificate.violation.unwrap();
        assert_eq!((bad.condition, bad.i, bad.j), (Condition::LowerBranch, 2, 1));
        assert_eq!(bad.skewness, ExtRat::from_int(3));
        assert_eq!(bad.required, int(2));
    }

    #[test]
    fn single_curve() {
        let inst = validate_instance(vec![(germ("y"), int(5))]).unwrap();
        let res = decide_finite(&inst).unwrap();
        assert_eq!(res.decision, Decision::Yes);
        assert_eq!(res.minimal_solution.unwrap().t(), &ExtRat::from_int(5));
        assert!(res.certificate.checks.is_empty());
    }

    #[test]
    fn multiplicity_valuation() {
        let inst = validate_instance(vec![
            (germ("x"), int(1)),
            (germ("y"), int(1)),
            (germ("y-x"), int(1)),
        ])
        .unwrap();
        assert!(inst.lower_indices().is_empty());
        let res = decide_finite(&inst).unwrap();
        assert_eq!(res.decision, Decision::Yes);
        let v = res.minimal_solution.unwrap();
        assert_eq!(v.curve(), &inst.items()[0].0);
        assert_eq!(v.t(), &ExtRat::from_int(1));
        assert!(res.certificate.checks.iter().all(|c| c.skewness == ExtRat::from_int(1)));
    }

    #[test]
    fn top_cluster_violation() {
        // tangent lines y and y - x meet with skewness 1 < 2
        let inst = validate_instance(vec![(germ("y"), int(2)), (germ("y-x"), int(2))]).unwrap();
        let res = decide_finite(&inst).unwrap();
        assert_eq!(res.decision, Decision::No);
        let bad = res.certificate.violation.unwrap();
        assert_eq!(bad.condition, Condition::TopCluster);
        assert_eq!(bad.skewness, ExtRat::from_int(1));
    }

    #[test]
    fn sequence_prefix() {
        let good: Vec<Rat> = (1..=6).map(|j| int(j + 1)).collect();
        let rep = check_sequence_prefix(factorial_items(&good)).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.pairs_checked, 15);
        assert!(rep.hints.growth_at_least_linear);
        assert!(!rep.hints.denominators_strictly_increasing);

        let bad = [int(2), int(3), int(4), int(6), int(7)];
        let rep = check_sequence_prefix(factorial_items(&bad)).unwrap();
        let fail = rep.first_failure.unwrap();
        assert_eq!((fail.i, fail.j), (4, 3));
        assert_eq!(fail.imult, ExtRat::from_int(5));
        assert_eq!(fail.required, int(6));

        let one = check_sequence_prefix(factorial_items(&[int(2)])).unwrap();
        assert!(one.passed());
        assert_eq!(one.pairs_checked, 0);

        assert_eq!(
            check_sequence_prefix(factorial_items(&[int(3), int(2)])).unwrap_err(),
            Error::NonMonotone { index: 1 }
        );
    }

    #[test]
    fn denominator_hint() {
        let bs = [rat(3, 2), rat(5, 3), rat(7, 4)];
        let items = vec![
            (germ("y"), bs[0].clone()),
            (germ("y-x^2"), bs[1].clone()),
            (germ("y-x^2-x^3"), bs[2].clone()),
        ];
        let rep = check_sequence_prefix(items).unwrap();
        assert!(rep.hints.denominators_strictly_increasing);
        assert!(!rep.passed());
    }
}
