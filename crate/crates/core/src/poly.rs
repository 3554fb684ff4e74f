//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::linalg;
use crate::rat::Rat;

/// Exponent of a single variable in a monomial.
pub type Exponent = u32;

/// Exponent vector; its length is the number of variables.
pub type Monomial = Vec<Exponent>;

/// Sparse polynomial in `nvars` variables with exact rational coefficients.
///
/// No zero coefficient is ever stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

fn total_degree(m: &[Exponent]) -> u64 {
    m.iter().map(|&e| u64::from(e)).sum()
}

/// Graded lexicographic comparison of exponent vectors.
pub fn grlex_cmp(a: &[Exponent], b: &[Exponent]) -> Ordering {
    total_degree(a)
        .cmp(&total_degree(b))
        .then_with(|| a.cmp(b))
}

fn mul_monomials(a: &[Exponent], b: &[Exponent]) -> Result<Monomial, Error> {
    let m: Monomial = a
        .iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::ExponentOverflow))
        .collect::<Result<_, _>>()?;
    if total_degree(&m) > u64::from(Exponent::MAX) {
        return Err(Error::ExponentOverflow);
    }
    Ok(m)
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    /// The variable with index `i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rat::one())
    }

    pub fn monomial(exps: Monomial, c: Rat) -> Self {
        let mut p = Self::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Builds a polynomial from (exponent vector, coefficient) pairs,
    /// summing repeated monomials and dropping zeros.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Rat)>,
    ) -> Result<Self, Error> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::NvarsMismatch {
                    left: nvars,
                    right: e.len(),
                });
            }
            if total_degree(&e) > u64::from(Exponent::MAX) {
                return Err(Error::ExponentOverflow);
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, e: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[Exponent]) -> Option<&Rat> {
        self.terms.get(e)
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    /// Multiplicity at the origin: the least total degree in the support.
    pub fn order(&self) -> Result<u64, Error> {
        self.terms
            .keys()
            .map(|e| total_degree(e))
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Leading term under graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    fn check_nvars(&self, other: &MPoly) -> Result<(), Error> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly, Error> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly, Error> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly, Error> {
        self.check_nvars(other)?;
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(mul_monomials(ea, eb)?, ca * cb);
            }
        }
        Ok(out)
    }

    /// `self^k` by repeated squaring; `f^0 = 1`.
    pub fn checked_pow(&self, mut k: u32) -> Result<MPoly, Error> {
        let mut result = MPoly::one(self.nvars);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^e`.
    pub fn shift(&self, e: &[Exponent]) -> Result<MPoly, Error> {
        if e.len() != self.nvars {
            return Err(Error::NvarsMismatch {
                left: self.nvars,
                right: e.len(),
            });
        }
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(mul_monomials(m, e)?, c.clone());
        }
        Ok(out)
    }

    /// Substitutes `z = M·w`: variable `i` becomes `Σ_k M[i][k] w_k`.
    pub fn subst_linear(&self, m: &[Vec<Rat>]) -> Result<MPoly, Error> {
        let n = self.nvars;
        for row in m {
            if row.len() != n {
                return Err(Error::MatrixShape {
                    rows: m.len(),
                    cols: row.len(),
                    expected: n,
                });
            }
        }
        if m.len() != n {
            return Err(Error::MatrixShape {
                rows: m.len(),
                cols: n,
                expected: n,
            });
        }
        if linalg::rank(m) < n {
            return Err(Error::SingularMatrix);
        }
        let images: Vec<MPoly> = m
            .iter()
            .map(|row| {
                MPoly::from_terms(
                    n,
                    row.iter().enumerate().map(|(k, c)| {
                        let mut e = vec![0; n];
                        e[k] = 1;
                        (e, c.clone())
                    }),
                )
            })
            .collect::<Result<_, _>>()?;
        let mut powers: Vec<Vec<MPoly>> = images
            .iter()
            .map(|p| vec![MPoly::one(n), p.clone()])
            .collect();
        let mut out = MPoly::zero(n);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(n, c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap().checked_mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.checked_mul(&powers[i][k])?;
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Renders with the given variable names, largest graded-lex term first.
    pub fn to_string_with(&self, vars: &[impl AsRef<str>]) -> String {
        assert_eq!(vars.len(), self.nvars, "variable name count");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| grlex_cmp(b.0, a.0));
        let mut out = String::new();
        for (idx, (e, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&x| x == 0);
            if !abs.is_one() || is_const {
                factors.push(abs.to_string());
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(vars[i].as_ref().to_string()),
                    _ => factors.push(format!("{}^{}", vars[i].as_ref(), k)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Default variable names: `x, y` for two variables, `z1..zn` otherwise.
pub fn default_var_names(nvars: usize) -> Vec<String> {
    if nvars == 2 {
        vec!["x".into(), "y".into()]
    } else {
        indexed_var_names(nvars)
    }
}

/// `z1, …, zn`.
pub fn indexed_var_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("z{i}")).collect()
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_var_names(self.nvars)))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

pub fn poly_add(f: &MPoly, g: &MPoly) -> Result<MPoly, Error> {
    f.checked_add(g)
}

pub fn poly_mul(f: &MPoly, g: &MPoly) -> Result<MPoly, Error> {
    f.checked_mul(g)
}

pub fn poly_pow(f: &MPoly, k: u32) -> Result<MPoly, Error> {
    f.checked_pow(k)
}

pub fn poly_subst_linear(f: &MPoly, m: &[Vec<Rat>]) -> Result<MPoly, Error> {
    f.subst_linear(m)
}
