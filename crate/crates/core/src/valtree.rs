//! Quasimonomial and curve valuations on the valuative tree.
//!
//! A valuation is stored as a pair `(C, t)` of an irreducible germ and a
//! skewness parameter `t ∈ [1, +∞]`; `t = +∞` is the curve valuation of
//! `C`. Representations are not canonical: use [`qm_equal`] to compare.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;
use crate::intersect::{imult, CurveGerm};
use crate::rat::{ExtRat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMValuation {
    curve: CurveGerm,
    t: ExtRat,
}

impl QMValuation {
    pub fn new(curve: CurveGerm, t: ExtRat) -> Result<Self, Error> {
        curve.require_irreducible()?;
        if let ExtRat::Finite(r) = &t {
            if *r < Rat::one() {
                return Err(Error::BadSkewness(r.to_string()));
            }
        }
        Ok(QMValuation { curve, t })
    }

    /// The curve valuation `f ↦ (C·f) / m(C)`.
    pub fn curve_valuation(curve: CurveGerm) -> Result<Self, Error> {
        Self::new(curve, ExtRat::Infinite)
    }

    pub fn curve(&self) -> &CurveGerm {
        &self.curve
    }

    /// The skewness of the valuation.
    pub fn t(&self) -> &ExtRat {
        &self.t
    }
}

fn mult_rat(g: &CurveGerm) -> Rat {
    Rat::from_integer(BigInt::from(g.mult()))
}

/// Skewness of the infimum of two curve valuations:
/// `(f·g) / (m(f) m(g))`, or `+∞` when they define the same curve.
pub fn skewness_pair(f: &CurveGerm, g: &CurveGerm) -> Result<ExtRat, Error> {
    f.require_irreducible()?;
    g.require_irreducible()?;
    let i = imult(f.poly(), g.poly())?;
    let denom = Rat::from_integer(BigInt::from(f.mult() * g.mult()));
    Ok(i.scale(&denom.recip()))
}

/// Skewness of the infimum of the curve valuations of `curves`.
pub fn inf_skewness(curves: &[CurveGerm]) -> Result<ExtRat, Error> {
    if curves.is_empty() {
        return Err(Error::Empty("curve list"));
    }
    for c in curves {
        c.require_irreducible()?;
    }
    let mut best = ExtRat::Infinite;
    for (i, f) in curves.iter().enumerate() {
        for g in &curves[i + 1..] {
            best = best.min(skewness_pair(f, g)?);
        }
    }
    Ok(best)
}

/// `v(g) = m(g) · min{t, α(v_C ∧ v_g)}` for an irreducible germ `g`.
pub fn qm_eval_irreducible(v: &QMValuation, g: &CurveGerm) -> Result<ExtRat, Error> {
    g.require_irreducible()?;
    let s = skewness_pair(&v.curve, g)?;
    Ok(v.t.clone().min(s).scale(&mult_rat(g)))
}

/// Value on a product `Π g_k^{e_k}` of irreducible germs; the empty product
/// (a unit) has value 0.
pub fn qm_eval_product(v: &QMValuation, factors: &[(CurveGerm, u32)]) -> Result<ExtRat, Error> {
    factors.iter().try_fold(ExtRat::zero(), |acc, (g, e)| {
        let val = qm_eval_irreducible(v, g)?;
        Ok(acc + val.scale(&Rat::from_integer(BigInt::from(*e))))
    })
}

/// `v_{C,s} = v_{D,t}` iff `s = t ≤ (C·D)/(m(C) m(D))`.
pub fn qm_equal(v1: &QMValuation, v2: &QMValuation) -> Result<bool, Error> {
    let (ExtRat::Finite(s), ExtRat::Finite(t)) = (&v1.t, &v2.t) else {
        return Err(Error::InfiniteParameter);
    };
    if s != t {
        return Ok(false);
    }
    Ok(ExtRat::Finite(t.clone()) <= skewness_pair(&v1.curve, &v2.curve)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::rat::{int, rat};

    fn germ(s: &str) -> CurveGerm {
        CurveGerm::irreducible(parse_poly(s, &["x", "y"]).unwrap()).unwrap()
    }

    fn qm(s: &str, t: Rat) -> QMValuation {
        QMValuation::new(germ(s), ExtRat::Finite(t)).unwrap()
    }

    #[test]
    fn skewness_examples() {
        assert_eq!(skewness_pair(&germ("y"), &germ("y-x^2")).unwrap(), ExtRat::from_int(2));
        assert_eq!(
            skewness_pair(&germ("y-x^2"), &germ("y^2-x^3")).unwrap(),
            ExtRat::Finite(rat(3, 2))
        );
        assert_eq!(
            skewness_pair(&germ("(y^2-x^3)^3-x^10"), &germ("y^2-x^3")).unwrap(),
            ExtRat::Finite(rat(5, 3))
        );
        assert_eq!(skewness_pair(&germ("y^2-x^3"), &germ("y^2-x^3")).unwrap(), ExtRat::Infinite);
    }

    #[test]
    fn reducible_input_rejected() {
        let f = CurveGerm::new(parse_poly("x*y", &["x", "y"]).unwrap(), false).unwrap();
        assert_eq!(skewness_pair(&f, &germ("y")), Err(Error::NotIrreducible));
    }

    #[test]
    fn infimum_examples() {
        assert_eq!(inf_skewness(&[germ("y")]).unwrap(), ExtRat::Infinite);
        assert_eq!(inf_skewness(&[germ("y"), germ("y-x^2")]).unwrap(), ExtRat::from_int(2));
        assert_eq!(
            inf_skewness(&[germ("y"), germ("y-x^2"), germ("y^2-x^3")]).unwrap(),
            ExtRat::Finite(rat(3, 2))
        );
        assert_eq!(inf_skewness(&[germ("y"), germ("2*y")]).unwrap(), ExtRat::Infinite);
        assert_eq!(inf_skewness(&[]), Err(Error::Empty("curve list")));
    }

    #[test]
    fn evaluation() {
        let v = qm("y^2-x^3", rat(3, 2));
        assert_eq!(qm_eval_irreducible(&v, &germ("y-x^2")).unwrap(), ExtRat::Finite(rat(3, 2)));
        assert_eq!(qm_eval_irreducible(&v, &germ("y^2-x^3")).unwrap(), ExtRat::from_int(3));
        let vc = QMValuation::curve_valuation(germ("y^2-x^3")).unwrap();
        assert_eq!(qm_eval_irreducible(&vc, &germ("y^2-x^3")).unwrap(), ExtRat::Infinite);

        let w = qm("y", int(2));
        assert_eq!(
            qm_eval_product(&w, &[(germ("x"), 1), (germ("y"), 1)]).unwrap(),
            ExtRat::from_int(3)
        );
        assert_eq!(qm_eval_product(&w, &[]).unwrap(), ExtRat::zero());
        assert_eq!(qm_eval_product(&v, &[(germ("y-x^2"), 2)]).unwrap(), ExtRat::from_int(3));
    }

    #[test]
    fn equality_rule() {
        assert!(qm_equal(&qm("y", rat(3, 2)), &qm("y-x^2", rat(3, 2))).unwrap());
        assert!(!qm_equal(&qm("y", int(3)), &qm("y-x^2", int(3))).unwrap());
        assert!(!qm_equal(&qm("y", int(1)), &qm("y", int(2))).unwrap());
        let v = qm("y^2-x^3", rat(7, 4));
        assert!(qm_equal(&v, &v).unwrap());
        let vc = QMValuation::curve_valuation(germ("y")).unwrap();
        assert_eq!(qm_equal(&vc, &v), Err(Error::InfiniteParameter));
    }

    #[test]
    fn parameter_bounds() {
        assert!(matches!(
            QMValuation::new(germ("y"), ExtRat::Finite(rat(1, 2))),
            Err(Error::BadSkewness(_))
        ));
        let f = CurveGerm::new(parse_poly("y", &["x", "y"]).unwrap(), false).unwrap();
        assert_eq!(QMValuation::new(f, ExtRat::from_int(2)), Err(Error::NotIrreducible));
    }
}
