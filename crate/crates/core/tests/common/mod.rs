//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use num_integer::Integer;
use rand::rngs::StdRng;
use rand::Rng;
use valint_core::intersect::CurveGerm;
use valint_core::rat::{int, rat, Rat};
use valint_core::MPoly;

pub fn small_coeff(rng: &mut StdRng) -> Rat {
    loop {
        let c = rng.gen_range(-5..=5);
        if c != 0 {
            return int(c);
        }
    }
}

/// Bivariate polynomial of total degree ≤ `max_deg` with up to five terms
/// and integer coefficients in [-5, 5]. Usually vanishes at the origin.
pub fn random_bivariate(rng: &mut StdRng, max_deg: u32) -> MPoly {
    loop {
        let nterms = rng.gen_range(1..=5);
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let d = rng.gen_range(1..=max_deg);
            let i = rng.gen_range(0..=d);
            terms.push((vec![i, d - i], small_coeff(rng)));
        }
        if rng.gen_bool(0.15) {
            terms.push((vec![0, 0], small_coeff(rng)));
        }
        let p = MPoly::from_terms(2, terms).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

/// A germ whose irreducibility the Newton-polygon test certifies: a smooth
/// graph, or a quasi-homogeneous cusp `y^p - c x^q` with coprime `p, q`
/// plus terms strictly above the segment.
pub fn random_germ(rng: &mut StdRng) -> CurveGerm {
    loop {
        let p = match rng.gen_range(0..3) {
            0 | 1 => {
                let mut terms = vec![(vec![0, 1], int(1))];
                for k in 1..=4 {
                    if rng.gen_bool(0.5) {
                        terms.push((vec![k, 0], small_coeff(rng)));
                    }
                }
                let p = MPoly::from_terms(2, terms).unwrap();
                if rng.gen_bool(0.5) {
                    swap_xy(&p)
                } else {
                    p
                }
            }
            _ => {
                let (a, b) = [(2, 3), (2, 5), (3, 4), (3, 5), (2, 7)][rng.gen_range(0..5)];
                let mut terms = vec![(vec![0, a], int(1)), (vec![b, 0], small_coeff(rng))];
                for _ in 0..rng.gen_range(0..3) {
                    let i = rng.gen_range(0..=b);
                    let j = rng.gen_range(0..=a);
                    if a * i + b * j > a * b {
                        terms.push((vec![i, j], small_coeff(rng)));
                    }
                }
                MPoly::from_terms(2, terms).unwrap()
            }
        };
        if let Ok(g) = CurveGerm::verified(p) {
            return g;
        }
    }
}

pub fn swap_xy(p: &MPoly) -> MPoly {
    MPoly::from_terms(2, p.terms().map(|(e, c)| (vec![e[1], e[0]], c.clone()))).unwrap()
}

/// A rational `≥ 1` with denominator at most 6.
pub fn random_skewness(rng: &mut StdRng) -> Rat {
    let d = rng.gen_range(1..=6);
    let k = rng.gen_range(0..=3 * d);
    int(1) + rat(k, d)
}

/// A positive rational with denominator at most 6 and value at most 4.
pub fn random_positive(rng: &mut StdRng) -> Rat {
    let d = rng.gen_range(1..=6i64);
    let n = rng.gen_range(1..=4 * d);
    let g = n.gcd(&d);
    rat(n / g, d / g)
}

/// Random polynomial in `n` variables with exponents ≤ `max_exp` per
/// variable and up to four terms.
pub fn random_npoly(rng: &mut StdRng, n: usize, max_exp: u32, allow_constant: bool) -> MPoly {
    loop {
        let nterms = rng.gen_range(1..=4);
        let terms: Vec<_> = (0..nterms)
            .map(|_| {
                let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
                (e, small_coeff(rng))
            })
            .collect();
        let p = MPoly::from_terms(n, terms).unwrap();
        if !p.is_zero() && (allow_constant || p.vanishes_at_origin()) {
            return p;
        }
    }
}

pub fn random_exponent(rng: &mut StdRng, n: usize, max_exp: u32) -> Vec<u32> {
    loop {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        if e.iter().any(|&x| x > 0) {
            return e;
        }
    }
}
