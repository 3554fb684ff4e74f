//! Local intersection multiplicity at the origin and plane curve germs.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::gcd::gcd_bivariate;
use crate::poly::{Exponent, MPoly};
use crate::rat::{ExtRat, Rat};

/// A plane curve germ at the origin, given by a bivariate polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveGerm {
    poly: MPoly,
    irreducible_asserted: bool,
    verified: bool,
    mult: u64,
}

impl CurveGerm {
    /// Wraps `poly`; `irreducible_asserted` records the caller's claim that
    /// the germ is analytically irreducible.
    pub fn new(poly: MPoly, irreducible_asserted: bool) -> Result<Self, Error> {
        if poly.nvars() != 2 {
            return Err(Error::NotBivariate(poly.nvars()));
        }
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !poly.vanishes_at_origin() {
            return Err(Error::NotThroughOrigin);
        }
        let mult = poly.order()?;
        let verified = irreducible_sufficient(&poly)? == Irreducibility::Irreducible;
        Ok(CurveGerm {
            poly,
            irreducible_asserted,
            verified,
            mult,
        })
    }

    /// Asserted irreducible germ.
    pub fn irreducible(poly: MPoly) -> Result<Self, Error> {
        Self::new(poly, true)
    }

    /// Irreducible germ whose irreducibility must be machine-checkable.
    pub fn verified(poly: MPoly) -> Result<Self, Error> {
        let germ = Self::new(poly, true)?;
        if !germ.verified {
            return Err(Error::IrreducibilityUnverified(germ.poly.to_string()));
        }
        Ok(germ)
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn mult(&self) -> u64 {
        self.mult
    }

    pub fn irreducible_asserted(&self) -> bool {
        self.irreducible_asserted
    }

    /// Whether the Newton-polygon test proved irreducibility.
    pub fn machine_verified(&self) -> bool {
        self.verified
    }

    pub(crate) fn require_irreducible(&self) -> Result<(), Error> {
        if self.irreducible_asserted {
            Ok(())
        } else {
            Err(Error::NotIrreducible)
        }
    }
}

fn check_bivariate(f: &MPoly) -> Result<(), Error> {
    if f.nvars() != 2 {
        return Err(Error::NotBivariate(f.nvars()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(())
}

/// `f(x, 0)` as a map from `x`-degree to coefficient.
fn restrict_to_x_axis(f: &MPoly) -> BTreeMap<Exponent, Rat> {
    f.terms()
        .filter(|(e, _)| e[1] == 0)
        .map(|(e, c)| (e[0], c.clone()))
        .collect()
}

/// `f / y`, assuming every term has positive `y`-degree.
fn divide_by_y(f: &MPoly) -> MPoly {
    MPoly::from_terms(2, f.terms().map(|(e, c)| (vec![e[0], e[1] - 1], c.clone())))
        .expect("bivariate")
}

/// Intersection multiplicity `dim Q[[x,y]]/(f, g)`, or `+∞` when `f` and `g`
/// share a component through the origin.
///
/// Uses the axiomatic reduction: while both vanish at the origin, either
/// peel off a factor `y` (contributing the `x`-order of the other
/// polynomial on the axis), or cancel the leading term of the higher-degree
/// restriction to `y = 0`, which strictly lowers its degree.
pub fn imult(f: &MPoly, g: &MPoly) -> Result<ExtRat, Error> {
    check_bivariate(f)?;
    check_bivariate(g)?;
    if !f.vanishes_at_origin() || !g.vanishes_at_origin() {
        return Ok(ExtRat::zero());
    }
    let h = gcd_bivariate(f, g)?;
    if !h.is_constant() && h.vanishes_at_origin() {
        return Ok(ExtRat::Infinite);
    }
    let (mut f, mut g) = (f.clone(), g.clone());
    let mut acc: u64 = 0;
    loop {
        if f.is_zero() || g.is_zero() {
            return Ok(ExtRat::Infinite);
        }
        if !f.vanishes_at_origin() || !g.vanishes_at_origin() {
            return Ok(ExtRat::from(acc));
        }
        let f0 = restrict_to_x_axis(&f);
        let g0 = restrict_to_x_axis(&g);
        match (f0.is_empty(), g0.is_empty()) {
            (true, true) => return Ok(ExtRat::Infinite),
            (true, false) => {
                acc += u64::from(*g0.keys().next().unwrap());
                f = divide_by_y(&f);
            }
            (false, true) => {
                acc += u64::from(*f0.keys().next().unwrap());
                g = divide_by_y(&g);
            }
            (false, false) => {
                let (r, a) = f0.last_key_value().unwrap();
                let (s, b) = g0.last_key_value().unwrap();
                if r > s {
                    std::mem::swap(&mut f, &mut g);
                    continue;
                }
                let c = b / a;
                let shifted = f.shift(&[s - r, 0])?.scale(&c);
                g = g.checked_sub(&shifted)?;
            }
        }
    }
}

/// Settings for [`imult_oracle`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// First truncation degree tried.
    pub start: usize,
    /// Largest truncation degree tried before giving up.
    pub ceiling: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            start: 1,
            ceiling: 64,
        }
    }
}

fn monomial_index(a: usize, b: usize) -> usize {
    let d = a + b;
    d * (d + 1) / 2 + b
}

/// `dim Q[x,y] / ((f, g) + m^D)` by row reduction of the truncated
/// multiples `x^a y^b f`, `x^a y^b g` over monomials of degree `< D`.
pub fn truncated_quotient_dim(f: &MPoly, g: &MPoly, d: usize) -> usize {
    let ncols = d * (d + 1) / 2;
    let mut pivots: HashMap<usize, Vec<(usize, Rat)>> = HashMap::new();
    for deg in 0..d {
        for b in 0..=deg {
            let a = deg - b;
            for p in [f, g] {
                let mut row: BTreeMap<usize, Rat> = BTreeMap::new();
                for (e, c) in p.terms() {
                    let (ea, eb) = (e[0] as usize + a, e[1] as usize + b);
                    if ea + eb < d {
                        row.insert(monomial_index(ea, eb), c.clone());
                    }
                }
                reduce_and_insert(&mut pivots, row);
            }
        }
    }
    ncols - pivots.len()
}

fn reduce_and_insert(pivots: &mut HashMap<usize, Vec<(usize, Rat)>>, mut row: BTreeMap<usize, Rat>) {
    while let Some((&col, coef)) = row.first_key_value() {
        match pivots.get(&col) {
            Some(prow) => {
                let coef = coef.clone();
                for (k, v) in prow {
                    let entry = row.entry(*k).or_insert_with(Rat::zero);
                    *entry -= &coef * v;
                    if entry.is_zero() {
                        row.remove(k);
                    }
                }
            }
            None => {
                let inv = coef.recip();
                let normalized = row
                    .into_iter()
                    .map(|(k, v)| {
                        let v = if k == col { Rat::one() } else { v * &inv };
                        (k, v)
                    })
                    .collect();
                pivots.insert(col, normalized);
                return;
            }
        }
    }
}

/// Independent linear-algebra computation of the intersection multiplicity.
///
/// Escalates the truncation degree from `config.start` until two
/// consecutive quotient dimensions agree; by Nakayama's lemma that value is
/// the local intersection number.
pub fn imult_oracle(f: &MPoly, g: &MPoly, config: OracleConfig) -> Result<u64, Error> {
    check_bivariate(f)?;
    check_bivariate(g)?;
    let mut d = config.start.max(1);
    let mut prev = truncated_quotient_dim(f, g, d);
    while d < config.ceiling {
        d += 1;
        let cur = truncated_quotient_dim(f, g, d);
        if cur == prev {
            return Ok(cur as u64);
        }
        prev = cur;
    }
    Err(Error::OracleUndecided {
        ceiling: config.ceiling,
    })
}

/// Compact faces of the Newton polygon of a germ at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Vertices with strictly increasing first and strictly decreasing
    /// second coordinate.
    pub vertices: Vec<(u64, u64)>,
}

fn cross(o: (i128, i128), a: (i128, i128), b: (i128, i128)) -> i128 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

pub fn newton_polygon(f: &MPoly) -> Result<NewtonPolygon, Error> {
    check_bivariate(f)?;
    if !f.vanishes_at_origin() {
        return Err(Error::NotThroughOrigin);
    }
    let mut lowest: BTreeMap<u64, u64> = BTreeMap::new();
    for e in f.support() {
        let (a, b) = (u64::from(e[0]), u64::from(e[1]));
        lowest
            .entry(a)
            .and_modify(|v| *v = (*v).min(b))
            .or_insert(b);
    }
    let min_y = *lowest.values().min().unwrap();
    let mut hull: Vec<(i128, i128)> = Vec::new();
    for (&a, &b) in &lowest {
        let p = (a as i128, b as i128);
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
        if b == min_y {
            break;
        }
    }
    Ok(NewtonPolygon {
        vertices: hull.into_iter().map(|(a, b)| (a as u64, b as u64)).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Unknown,
}

/// Sufficient test for analytic irreducibility of a germ: smooth germs, and
/// germs whose Newton polygon is the single segment `(0,m)–(n,0)` with
/// `gcd(m, n) = 1`. Never reports a reducible germ as irreducible.
pub fn irreducible_sufficient(f: &MPoly) -> Result<Irreducibility, Error> {
    let np = newton_polygon(f)?;
    if f.order()? == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    if let [(0, m), (n, 0)] = np.vertices[..] {
        if m.gcd(&n) == 1 {
            return Ok(Irreducibility::Irreducible);
        }
    }
    Ok(Irreducibility::Unknown)
}
