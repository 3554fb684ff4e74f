//! Monomial weights in `n` variables.
//!
//! For `φ = max_j a_j log|z_j|` over the active variables, integrability of
//! `|z^α|² e^{-2φ}` near the origin depends only on `Σ (α_j + 1)/a_j`, so
//! multiplier ideals, jumping numbers and Kiselman numbers all reduce to
//! minima over the support of a polynomial.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::Error;
use crate::interp::Decision;
use crate::lp::{solve_rational, LpOutcome};
use crate::poly::MPoly;
use crate::polyhedron::{newton_facets, NewtonPolyhedron};
use crate::rat::Rat;

/// Largest integer `t` for which [`tian_monomial`] expands `g·f^t`.
pub const TIAN_EXACT_MAX_T: u32 = 64;

/// `φ_a = max{a_j log|z_j| : j active}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialWeight {
    a: Vec<Rat>,
    active: Vec<bool>,
}

impl MonomialWeight {
    /// All variables active.
    pub fn new(a: Vec<Rat>) -> Result<Self, Error> {
        let active = vec![true; a.len()];
        Self::with_mask(a, active)
    }

    /// Only variables with `active[j]` enter the weight; their `a_j` must
    /// be positive.
    pub fn with_mask(a: Vec<Rat>, active: Vec<bool>) -> Result<Self, Error> {
        if a.is_empty() {
            return Err(Error::Empty("weight vector"));
        }
        if a.len() != active.len() {
            return Err(Error::NvarsMismatch {
                left: a.len(),
                right: active.len(),
            });
        }
        if !active.iter().any(|&b| b) {
            return Err(Error::Empty("active variable set"));
        }
        if a.iter().zip(&active).any(|(c, &on)| on && !c.is_positive()) {
            return Err(Error::NonPositive("weight a_j"));
        }
        Ok(MonomialWeight { a, active })
    }

    pub fn nvars(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Rat] {
        &self.a
    }

    pub fn active(&self) -> &[bool] {
        &self.active
    }

    /// The weight `c·φ_a = φ_{c·a}`.
    pub fn scaled(&self, c: &Rat) -> Result<Self, Error> {
        if !c.is_positive() {
            return Err(Error::NonPositive("scaling factor"));
        }
        Ok(MonomialWeight {
            a: self.a.iter().map(|x| x * c).collect(),
            active: self.active.clone(),
        })
    }

    /// `Σ_active (α_j + shift) / a_j`.
    fn weigh(&self, alpha: &[u32], shift: u32) -> Rat {
        self.a
            .iter()
            .zip(&self.active)
            .zip(alpha)
            .filter(|((_, &on), _)| on)
            .map(|((a, _), &e)| Rat::from_integer(BigInt::from(e + shift)) / a)
            .sum()
    }

    fn support_min(&self, f: &MPoly, shift: u32) -> Result<Rat, Error> {
        self.check(f)?;
        Ok(f.support()
            .map(|alpha| self.weigh(alpha, shift))
            .min()
            .expect("nonzero polynomial has a support point"))
    }

    fn check(&self, f: &MPoly) -> Result<(), Error> {
        if f.nvars() != self.nvars() {
            return Err(Error::NvarsMismatch {
                left: f.nvars(),
                right: self.nvars(),
            });
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(())
    }
}

/// Whether `f` lies in the multiplier ideal of `c·φ_a`: every support
/// point satisfies `Σ (α_j + 1)/(c a_j) > 1`.
pub fn ideal_member(f: &MPoly, w: &MonomialWeight, c: &Rat) -> Result<bool, Error> {
    if !c.is_positive() {
        return Err(Error::NonPositive("c"));
    }
    w.check(f)?;
    let one = Rat::one();
    Ok(f.support().all(|alpha| w.weigh(alpha, 1) / c > one))
}

/// `sup{c : |f|² e^{-2cφ} integrable}`, the support minimum of
/// `Σ (α_j + 1)/a_j`.
pub fn jumping_number(f: &MPoly, w: &MonomialWeight) -> Result<Rat, Error> {
    w.support_min(f, 1)
}

/// Relative type of `log|f|` with respect to `φ_a`, the support minimum of
/// `Σ α_j / a_j`.
pub fn kiselman_sigma(f: &MPoly, w: &MonomialWeight) -> Result<Rat, Error> {
    w.support_min(f, 0)
}

/// Tian function value at `t`, by formula and (for small integer `t`) by
/// direct expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TianValue {
    /// `c(g) + t·σ(f)`.
    pub formula: Rat,
    /// `c(g·f^t)`, when `t` is an integer not above [`TIAN_EXACT_MAX_T`].
    pub exact: Option<Rat>,
}

impl TianValue {
    /// True when the expansion exhibits cancellation the formula misses.
    pub fn discrepancy(&self) -> bool {
        self.exact.as_ref().is_some_and(|e| *e != self.formula)
    }
}

/// `t ↦ c(g·f^t)` under the no-cancellation formula. Initial forms with
/// respect to a monomial weight multiply, so the expansion should never
/// disagree; it is kept as a guard against implementation errors.
pub fn tian_monomial(g: &MPoly, f: &MPoly, w: &MonomialWeight, t: &Rat) -> Result<TianValue, Error> {
    if t.is_negative() {
        return Err(Error::Negative("t"));
    }
    let jump_g = jumping_number(g, w)?;
    let sigma_f = kiselman_sigma(f, w)?;
    let formula = jump_g + t * sigma_f;
    let exact = match t.is_integer().then(|| t.to_integer().to_u32()).flatten() {
        Some(k) if k <= TIAN_EXACT_MAX_T => {
            let prod = g.checked_mul(&f.checked_pow(k)?)?;
            Some(jumping_number(&prod, w)?)
        }
        _ => None,
    };
    Ok(TianValue { formula, exact })
}

/// `log Σ_j |z^{β_j}|^{1/a_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracMonomialWeight {
    pairs: Vec<(Vec<u32>, Rat)>,
}

impl FracMonomialWeight {
    pub fn new(pairs: Vec<(Vec<u32>, Rat)>) -> Result<Self, Error> {
        let Some(n) = pairs.first().map(|p| p.0.len()) else {
            return Err(Error::Empty("weight terms"));
        };
        for (beta, a) in &pairs {
            if beta.len() != n {
                return Err(Error::NvarsMismatch {
                    left: n,
                    right: beta.len(),
                });
            }
            if beta.iter().all(|&e| e == 0) {
                return Err(Error::DegenerateWeight("exponent vector β_j = 0".into()));
            }
            if !a.is_positive() {
                return Err(Error::NonPositive("a_j"));
            }
        }
        Ok(FracMonomialWeight { pairs })
    }

    pub fn pairs(&self) -> &[(Vec<u32>, Rat)] {
        &self.pairs
    }

    pub fn nvars(&self) -> usize {
        self.pairs[0].0.len()
    }

    /// The points `β_j / a_j`.
    pub fn points(&self) -> Vec<Vec<Rat>> {
        self.pairs
            .iter()
            .map(|(beta, a)| beta.iter().map(|&e| Rat::from_integer(e.into()) / a).collect())
            .collect()
    }

    pub fn polyhedron(&self) -> Result<NewtonPolyhedron, Error> {
        newton_facets(&self.points())
    }

    /// `Σ_j a_j`.
    pub fn total(&self) -> Rat {
        self.pairs.iter().map(|p| &p.1).sum()
    }

    /// `Σ_j β_j`, the exponent of `Π_j z^{β_j}`.
    pub fn total_exponent(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.nvars()];
        for (beta, _) in &self.pairs {
            for (o, &e) in out.iter_mut().zip(beta) {
                *o += e;
            }
        }
        out
    }
}

fn rat_vec(v: &[u32]) -> Vec<Rat> {
    v.iter().map(|&e| Rat::from_integer(e.into())).collect()
}

/// `sup{c : |z^γ| ≤ C e^{cφ}}`, the largest `c` with `γ` in `c` times the
/// Newton polyhedron of the points `β_j / a_j`.
pub fn relative_type_frac(gamma: &[u32], w: &FracMonomialWeight) -> Result<Rat, Error> {
    if gamma.len() != w.nvars() {
        return Err(Error::NvarsMismatch {
            left: gamma.len(),
            right: w.nvars(),
        });
    }
    if gamma.iter().all(|&e| e == 0) {
        return Err(Error::DegenerateWeight("exponent γ = 0".into()));
    }
    w.polyhedron()?
        .scaling_to(&rat_vec(gamma))
        .ok_or_else(|| Error::DegenerateWeight("no facet with positive offset".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialDecision {
    pub decision: Decision,
    /// `σ(log|Π z^{β_j}|, φ)`.
    pub criterion: Rat,
    /// `Σ_j a_j`.
    pub target: Rat,
    /// Outcome of `β_j·w = a_j, w ≥ 0`.
    pub lp: LpOutcome,
}

impl MonomialDecision {
    /// Weight `w` of an interpolating monomial valuation `z^γ ↦ γ·w`.
    pub fn witness(&self) -> Option<&[Rat]> {
        self.lp.solution()
    }
}

/// Decides whether a monomial valuation takes the value `a_j` on every
/// `z^{β_j}`, both through the relative-type criterion and through exact
/// linear feasibility. The two must agree; disagreement is reported as an
/// internal inconsistency.
pub fn monomial_interp_decide(w: &FracMonomialWeight) -> Result<MonomialDecision, Error> {
    let target = w.total();
    let criterion = relative_type_frac(&w.total_exponent(), w)?;
    let rows: Vec<(Vec<Rat>, Rat)> = w
        .pairs()
        .iter()
        .map(|(b, a)| (rat_vec(b), a.clone()))
        .collect();
    let lp = solve_rational(&rows)?;
    let by_criterion = criterion == target;
    if by_criterion != lp.is_feasible() {
        return Err(Error::Inconsistency(format!(
            "relative type {criterion} vs target {target} disagrees with linear feasibility ({})",
            if lp.is_feasible() { "feasible" } else { "infeasible" }
        )));
    }
    match &lp {
        LpOutcome::Feasible(sol) => {
            let bad = rows
                .iter()
                .any(|(b, a)| crate::linalg::dot(b, sol) != *a || sol.iter().any(Signed::is_negative));
            if bad {
                return Err(Error::Inconsistency("feasible witness fails substitution".into()));
            }
        }
        LpOutcome::Infeasible(cert) => {
            if !cert.verify(&rows) {
                return Err(Error::Inconsistency("infeasibility certificate fails substitution".into()));
            }
        }
    }
    Ok(MonomialDecision {
        decision: if by_criterion { Decision::Yes } else { Decision::No },
        criterion,
        target,
        lp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::indexed_var_names;
    use crate::rat::{int, rat};

    fn p(s: &str, n: usize) -> MPoly {
        parse_poly(s, &indexed_var_names(n)).unwrap()
    }

    fn w(a: &[Rat]) -> MonomialWeight {
        MonomialWeight::new(a.to_vec()).unwrap()
    }

    #[test]
    fn membership() {
        assert!(ideal_member(&p("1", 2), &w(&[int(1), int(1)]), &int(1)).unwrap());
        assert!(!ideal_member(&p("1", 2), &w(&[int(2), int(2)]), &int(1)).unwrap());
        assert!(ideal_member(&p("z1", 2), &w(&[int(1), int(1)]), &int(2)).unwrap());
        assert_eq!(
            ideal_member(&p("z1", 2), &w(&[int(1), int(1)]), &int(0)),
            Err(Error::NonPositive("c"))
        );
    }

    #[test]
    fn jumping_numbers() {
        assert_eq!(jumping_number(&p("1", 1), &w(&[int(2)])).unwrap(), rat(1, 2));
        assert_eq!(jumping_number(&p("z1", 2), &w(&[int(2), int(2)])).unwrap(), rat(3, 2));
        assert_eq!(
            jumping_number(&p("z1 + z2^2", 2), &w(&[int(1), int(2)])).unwrap(),
            rat(5, 2)
        );
        assert_eq!(jumping_number(&p("0", 2), &w(&[int(1), int(1)])), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn kiselman_numbers() {
        assert_eq!(kiselman_sigma(&p("z1^4*z2^4", 2), &w(&[int(1), int(1)])).unwrap(), int(8));
        assert_eq!(
            kiselman_sigma(&p("z1^2*z2 - z1*z2^2", 2), &w(&[rat(1, 3), rat(1, 2)])).unwrap(),
            int(7)
        );
        assert_eq!(kiselman_sigma(&p("3", 2), &w(&[int(1), int(1)])).unwrap(), int(0));
    }

    #[test]
    fn inactive_variables_are_ignored() {
        let m = MonomialWeight::with_mask(vec![int(1), int(0)], vec![true, false]).unwrap();
        assert_eq!(jumping_number(&p("z2^5", 2), &m).unwrap(), int(1));
        assert_eq!(kiselman_sigma(&p("z1*z2^5", 2), &m).unwrap(), int(1));
        assert!(MonomialWeight::with_mask(vec![int(1), int(0)], vec![true, true]).is_err());
    }

    #[test]
    fn tian() {
        let a = w(&[int(1), int(1)]);
        let v = tian_monomial(&p("1", 2), &p("z1", 2), &a, &int(3)).unwrap();
        assert_eq!(v.formula, int(5));
        assert_eq!(v.exact, Some(int(5)));
        let v = tian_monomial(&p("1", 2), &p("z1 + z2", 2), &w(&[int(1), int(2)]), &int(2)).unwrap();
        assert_eq!(v.formula, rat(5, 2));
        assert_eq!(v.exact, Some(rat(5, 2)));
        assert!(!v.discrepancy());
        let v = tian_monomial(&p("z2", 2), &p("z1", 2), &a, &rat(1, 2)).unwrap();
        assert_eq!(v.formula, rat(7, 2));
        assert_eq!(v.exact, None);
        assert_eq!(
            tian_monomial(&p("1", 2), &p("z1", 2), &a, &int(-1)),
            Err(Error::Negative("t"))
        );
    }

    #[test]
    fn tian_exact_survives_cancellation() {
        // (z1 + z2)(z1 - z2) cancels the mixed terms but not the initial form
        let a = w(&[int(1), int(1)]);
        let v = tian_monomial(&p("z1 + z2", 2), &p("z1 - z2", 2), &a, &int(1)).unwrap();
        assert_eq!(v.formula, int(4));
        assert_eq!(v.exact, Some(int(4)));
        assert!(!v.discrepancy());
    }

    #[test]
    fn relative_types() {
        let single = FracMonomialWeight::new(vec![(vec![2, 1], rat(3, 2))]).unwrap();
        assert_eq!(relative_type_frac(&[2, 1], &single).unwrap(), rat(3, 2));
        let tri = FracMonomialWeight::new(vec![
            (vec![1, 0], int(1)),
            (vec![0, 1], int(1)),
            (vec![1, 1], int(1)),
        ])
        .unwrap();
        assert_eq!(relative_type_frac(&[4, 4], &tri).unwrap(), int(8));
        assert_eq!(relative_type_frac(&[3, 3], &tri).unwrap(), int(6));
    }

    #[test]
    fn decisions() {
        let yes = FracMonomialWeight::new(vec![
            (vec![1, 0], int(1)),
            (vec![0, 1], int(2)),
            (vec![1, 1], int(3)),
        ])
        .unwrap();
        let d = monomial_interp_decide(&yes).unwrap();
        assert_eq!(d.decision, Decision::Yes);
        assert_eq!(d.witness(), Some(&[int(1), int(2)][..]));

        let no = FracMonomialWeight::new(vec![
            (vec![1, 0], int(1)),
            (vec![0, 1], int(2)),
            (vec![1, 1], int(4)),
        ])
        .unwrap();
        let d = monomial_interp_decide(&no).unwrap();
        assert_eq!(d.decision, Decision::No);
        assert_eq!(d.criterion, int(8));
        assert_eq!(d.target, int(7));
        assert!(d.witness().is_none());

        let one = FracMonomialWeight::new(vec![(vec![2, 1], int(4))]).unwrap();
        let d = monomial_interp_decide(&one).unwrap();
        assert_eq!(d.witness(), Some(&[int(2), int(0)][..]));
    }

    #[test]
    fn weight_validation() {
        assert!(FracMonomialWeight::new(vec![]).is_err());
        assert!(FracMonomialWeight::new(vec![(vec![0, 0], int(1))]).is_err());
        assert!(FracMonomialWeight::new(vec![(vec![1, 0], int(0))]).is_err());
        assert!(MonomialWeight::new(vec![int(1), rat(-1, 2)]).is_err());
    }
}
