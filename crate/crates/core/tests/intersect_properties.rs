use proptest::prelude::*;
use valint_core::gcd::gcd_bivariate;
use valint_core::intersect::{
    imult, imult_oracle, irreducible_sufficient, CurveGerm, Irreducibility, OracleConfig,
};
use valint_core::rat::{int, ExtRat};
use valint_core::valtree::{qm_eval_irreducible, qm_equal, skewness_pair, QMValuation};
use valint_core::MPoly;

/// Bivariate polynomial vanishing at the origin, degree ≤ 4, integer
/// coefficients in [-5, 5].
fn germ_poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((1u32..=4, 0u32..=4, -5i64..=5), 1..5)
        .prop_map(|terms| {
            MPoly::from_terms(
                2,
                terms.into_iter().map(|(d, i, c)| (vec![i.min(d), d - i.min(d)], int(c))),
            )
            .unwrap()
        })
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// Smooth germ `y - p(x)` or `x - p(y)`, hence irreducible.
fn smooth_germ() -> impl Strategy<Value = CurveGerm> {
    (prop::collection::vec(-4i64..=4, 4), any::<bool>()).prop_map(|(cs, swap)| {
        let mut terms = vec![(vec![0, 1], int(1))];
        for (k, c) in cs.into_iter().enumerate() {
            terms.push((vec![k as u32 + 1, 0], int(c)));
        }
        if swap {
            for t in &mut terms {
                t.0.reverse();
            }
        }
        CurveGerm::verified(MPoly::from_terms(2, terms).unwrap()).unwrap()
    })
}

fn skew() -> impl Strategy<Value = valint_core::Rat> {
    (0i64..=12, 1i64..=4).prop_map(|(k, d)| int(1) + valint_core::rat::rat(k, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fulton_axioms(f in germ_poly(), g in germ_poly(), h in germ_poly()) {
        let fg = imult(&f, &g).unwrap();
        prop_assert_eq!(imult(&g, &f).unwrap(), fg.clone());
        let gh = g.checked_mul(&h).unwrap();
        prop_assert_eq!(imult(&f, &gh).unwrap(), fg.clone() + imult(&f, &h).unwrap());
        let shifted = g.checked_add(&h.checked_mul(&f).unwrap()).unwrap();
        if !shifted.is_zero() {
            prop_assert_eq!(imult(&f, &shifted).unwrap(), fg.clone());
        }
        if let ExtRat::Finite(v) = &fg {
            prop_assert!(*v >= int((f.order().unwrap() * g.order().unwrap()) as i64));
        }
    }

    #[test]
    fn oracle_agrees(f in germ_poly(), g in germ_poly()) {
        prop_assume!(gcd_bivariate(&f, &g).unwrap().is_constant());
        let n = imult_oracle(&f, &g, OracleConfig::default()).unwrap();
        prop_assert_eq!(imult(&f, &g).unwrap(), ExtRat::from_int(n as i64));
    }

    #[test]
    fn products_are_never_certified_irreducible(f in germ_poly(), g in germ_poly()) {
        let p = f.checked_mul(&g).unwrap();
        prop_assert_eq!(irreducible_sufficient(&p).unwrap(), Irreducibility::Unknown);
    }

    #[test]
    fn skewness_symmetric_and_at_least_one(c in smooth_germ(), d in smooth_germ()) {
        let s = skewness_pair(&c, &d).unwrap();
        prop_assert_eq!(skewness_pair(&d, &c).unwrap(), s.clone());
        prop_assert!(s >= ExtRat::from_int(1));
        prop_assert_eq!(s.is_infinite(), imult(c.poly(), d.poly()).unwrap().is_infinite());
    }

    #[test]
    fn evaluation_monotone_and_dominates_multiplicity(
        c in smooth_germ(), g in smooth_germ(), s in skew(), t in skew()
    ) {
        let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
        let vlo = QMValuation::new(c.clone(), ExtRat::Finite(lo)).unwrap();
        let vhi = QMValuation::new(c, ExtRat::Finite(hi)).unwrap();
        let a = qm_eval_irreducible(&vlo, &g).unwrap();
        prop_assert!(a <= qm_eval_irreducible(&vhi, &g).unwrap());
        prop_assert!(a >= ExtRat::from_int(g.mult() as i64));
    }

    #[test]
    fn qm_equal_is_an_equivalence(a in smooth_germ(), b in smooth_germ(), c in smooth_germ(), t in skew()) {
        let v = |g: &CurveGerm| QMValuation::new(g.clone(), ExtRat::Finite(t.clone())).unwrap();
        let (va, vb, vc) = (v(&a), v(&b), v(&c));
        prop_assert!(qm_equal(&va, &va).unwrap());
        prop_assert_eq!(qm_equal(&va, &vb).unwrap(), qm_equal(&vb, &va).unwrap());
        if qm_equal(&va, &vb).unwrap() && qm_equal(&vb, &vc).unwrap() {
            prop_assert!(qm_equal(&va, &vc).unwrap());
        }
    }
}
