//! Exact feasibility of `B·w = a, w ≥ 0` by Fourier–Motzkin elimination.
//!
//! Every derived constraint carries the multipliers that produced it, so an
//! infeasible system yields a Farkas certificate `y` with `yᵀB ≥ 0` and
//! `y·a < 0`. A feasible system is answered with a vertex of the feasible
//! region: the first basic solution in lexicographic order of column sets.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::linalg::{dot, rank, solve_unique};
use crate::rat::Rat;

/// Largest number of unknowns accepted.
pub const MAX_DIM: usize = 6;

/// `y` with `yᵀB ≥ 0` componentwise and `y·a < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub y: Vec<Rat>,
}

impl FarkasCertificate {
    /// Re-checks the certificate against the system by substitution.
    pub fn verify(&self, rows: &[(Vec<Rat>, Rat)]) -> bool {
        if self.y.len() != rows.len() {
            return false;
        }
        let n = rows.first().map_or(0, |r| r.0.len());
        let combined_rhs: Rat = self.y.iter().zip(rows).map(|(y, r)| y * &r.1).sum();
        let nonneg = (0..n).all(|i| {
            let s: Rat = self.y.iter().zip(rows).map(|(y, r)| y * &r.0[i]).sum();
            !s.is_negative()
        });
        nonneg && combined_rhs.is_negative()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Feasible(Vec<Rat>),
    Infeasible(FarkasCertificate),
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible(_))
    }

    pub fn solution(&self) -> Option<&[Rat]> {
        match self {
            LpOutcome::Feasible(w) => Some(w),
            LpOutcome::Infeasible(_) => None,
        }
    }
}

/// `coef·w (≤ or =) rhs`, obtained as `Σ y_j (β_j·w − a_j) − Σ μ_i w_i`.
#[derive(Clone, Debug)]
struct Tracked {
    coef: Vec<Rat>,
    rhs: Rat,
    y: Vec<Rat>,
}

impl Tracked {
    fn axpy(&mut self, s: &Rat, other: &Tracked) {
        for (a, b) in self.coef.iter_mut().zip(&other.coef) {
            *a += s * b;
        }
        self.rhs += s * &other.rhs;
        for (a, b) in self.y.iter_mut().zip(&other.y) {
            *a += s * b;
        }
    }

    fn scaled(&self, s: &Rat) -> Tracked {
        Tracked {
            coef: self.coef.iter().map(|c| c * s).collect(),
            rhs: &self.rhs * s,
            y: self.y.iter().map(|c| c * s).collect(),
        }
    }

    fn is_trivial(&self) -> bool {
        self.coef.iter().all(Zero::is_zero)
    }

    /// Positive rescaling making the first nonzero coefficient ±1.
    fn normalized(self) -> Tracked {
        match self.coef.iter().find(|c| !c.is_zero()) {
            Some(c) => {
                let s = c.abs().recip();
                self.scaled(&s)
            }
            None => self,
        }
    }
}

fn certificate_from(y: Vec<Rat>, rhs: &Rat) -> FarkasCertificate {
    if rhs.is_negative() {
        FarkasCertificate { y }
    } else {
        FarkasCertificate {
            y: y.into_iter().map(|v| -v).collect(),
        }
    }
}

/// Decides `B·w = a, w ≥ 0` for rational rows `(β_j, a_j)`.
pub fn solve_rational(rows: &[(Vec<Rat>, Rat)]) -> Result<LpOutcome, Error> {
    if rows.is_empty() {
        return Err(Error::Empty("linear system"));
    }
    let n = rows[0].0.len();
    if n > MAX_DIM {
        return Err(Error::DimensionBound {
            dim: n,
            bound: MAX_DIM,
        });
    }
    if let Some(r) = rows.iter().find(|r| r.0.len() != n) {
        return Err(Error::NvarsMismatch {
            left: n,
            right: r.0.len(),
        });
    }
    let m = rows.len();
    let unit = |len: usize, i: usize| {
        let mut v = vec![Rat::zero(); len];
        v[i] = Rat::from_integer(1.into());
        v
    };
    let mut eqs: Vec<Tracked> = rows
        .iter()
        .enumerate()
        .map(|(j, (b, a))| Tracked {
            coef: b.clone(),
            rhs: a.clone(),
            y: unit(m, j),
        })
        .collect();
    let mut ineqs: Vec<Tracked> = (0..n)
        .map(|i| Tracked {
            coef: unit(n, i).into_iter().map(|v| -v).collect(),
            rhs: Rat::zero(),
            y: vec![Rat::zero(); m],
        })
        .collect();

    // Equalities first: each one with a nonzero coefficient eliminates a
    // variable everywhere else and is then dropped.
    for v in 0..n {
        let Some(p) = eqs.iter().position(|e| !e.coef[v].is_zero()) else {
            continue;
        };
        let pivot = eqs.remove(p);
        for c in eqs.iter_mut().chain(ineqs.iter_mut()) {
            if !c.coef[v].is_zero() {
                let s = -(&c.coef[v] / &pivot.coef[v]);
                c.axpy(&s, &pivot);
            }
        }
    }
    if let Some(bad) = eqs.iter().find(|e| !e.rhs.is_zero()) {
        return Ok(LpOutcome::Infeasible(certificate_from(bad.y.clone(), &bad.rhs)));
    }

    for v in 0..n {
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for c in ineqs {
            if c.coef[v].is_positive() {
                pos.push(c);
            } else if c.coef[v].is_negative() {
                neg.push(c);
            } else {
                keep.push(c);
            }
        }
        for p in &pos {
            for q in &neg {
                let mut c = p.scaled(&-q.coef[v].clone());
                c.axpy(&p.coef[v], q);
                c.coef[v] = Rat::zero();
                keep.push(c);
            }
        }
        let mut seen = HashSet::new();
        ineqs = Vec::new();
        for c in keep {
            let c = c.normalized();
            if c.is_trivial() {
                if c.rhs.is_negative() {
                    return Ok(LpOutcome::Infeasible(FarkasCertificate { y: c.y }));
                }
                continue;
            }
            if seen.insert((c.coef.clone(), c.rhs.clone())) {
                ineqs.push(c);
            }
        }
    }
    if let Some(bad) = ineqs.iter().find(|c| c.rhs.is_negative()) {
        return Ok(LpOutcome::Infeasible(FarkasCertificate { y: bad.y.clone() }));
    }

    first_basic_solution(rows, n)
        .map(LpOutcome::Feasible)
        .ok_or_else(|| {
            Error::Inconsistency("elimination reports feasible but no basic solution exists".into())
        })
}

/// First nonnegative basic solution, scanning column sets of size
/// `rank(B)` in lexicographic order.
fn first_basic_solution(rows: &[(Vec<Rat>, Rat)], n: usize) -> Option<Vec<Rat>> {
    let b: Vec<Vec<Rat>> = rows.iter().map(|r| r.0.clone()).collect();
    let rhs: Vec<Rat> = rows.iter().map(|r| r.1.clone()).collect();
    let r = rank(&b);
    for cols in combinations(n, r) {
        let sub: Vec<Vec<Rat>> = b
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let Some(ws) = solve_unique(&sub, &rhs) else {
            continue;
        };
        if ws.iter().any(Signed::is_negative) {
            continue;
        }
        let mut w = vec![Rat::zero(); n];
        for (&c, v) in cols.iter().zip(ws) {
            w[c] = v;
        }
        debug_assert!(rows.iter().all(|(beta, a)| dot(beta, &w) == *a));
        return Some(w);
    }
    None
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Exponent-vector rows, as used by monomial interpolation.
pub fn feasibility_lp(rows: &[(Vec<u32>, Rat)]) -> Result<LpOutcome, Error> {
    solve_rational(&to_rational_rows(rows))
}

pub(crate) fn to_rational_rows(rows: &[(Vec<u32>, Rat)]) -> Vec<(Vec<Rat>, Rat)> {
    rows.iter()
        .map(|(b, a)| {
            (
                b.iter().map(|&e| Rat::from_integer(e.into())).collect(),
                a.clone(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn unique_solution() {
        let rows = vec![(vec![1, 0], int(1)), (vec![0, 1], int(2))];
        assert_eq!(feasibility_lp(&rows).unwrap(), LpOutcome::Feasible(vec![int(1), int(2)]));
    }

    #[test]
    fn scaled_contradiction() {
        let rows = vec![(vec![1, 1], int(1)), (vec![2, 2], int(3))];
        let out = feasibility_lp(&rows).unwrap();
        let LpOutcome::Infeasible(cert) = out else {
            panic!("expected infeasible");
        };
        assert_eq!(cert.y, vec![int(2), int(-1)]);
        assert!(cert.verify(&to_rational_rows(&rows)));
    }

    #[test]
    fn lexicographic_basis_tie_break() {
        let rows = vec![(vec![2, 1], int(4))];
        assert_eq!(feasibility_lp(&rows).unwrap(), LpOutcome::Feasible(vec![int(2), int(0)]));
    }

    #[test]
    fn sign_infeasibility_needs_inequalities() {
        // w1 - w2 = 1 and w2 - w1 = 1/2 is inconsistent already as equations;
        // w1 + w2 = 1, w1 + 2 w2 = 3 forces w1 = -1.
        let rows = vec![
            (vec![int(1), int(1)], int(1)),
            (vec![int(1), int(2)], int(3)),
        ];
        let LpOutcome::Infeasible(cert) = solve_rational(&rows).unwrap() else {
            panic!("expected infeasible");
        };
        assert!(cert.verify(&rows));
        let rows = vec![
            (vec![int(1), int(0), int(-1)], rat(-1, 2)),
            (vec![int(0), int(1), int(1)], int(1)),
        ];
        assert!(solve_rational(&rows).unwrap().is_feasible());
    }

    #[test]
    fn dimension_bound() {
        let rows = vec![(vec![1; 7], int(1))];
        assert_eq!(
            feasibility_lp(&rows),
            Err(Error::DimensionBound { dim: 7, bound: 6 })
        );
    }

    #[test]
    fn combination_order() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
