//! Polynomial gcd in `Q[x, y]`.
//!
//! A bivariate polynomial is viewed as a polynomial in `y` with coefficients
//! in `Q[x]`. The gcd is the gcd of the contents times the gcd of the
//! primitive parts, the latter computed by a primitive pseudo-remainder
//! sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::poly::MPoly;
use crate::rat::{common_denominator, Rat};

/// Dense univariate polynomial in `x`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct UPoly(Vec<Rat>);

impl UPoly {
    fn zero() -> Self {
        UPoly(Vec::new())
    }

    fn trimmed(mut v: Vec<Rat>) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        UPoly(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lc(&self) -> &Rat {
        self.0.last().expect("nonzero polynomial")
    }

    fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = Rat::zero();
        UPoly::trimmed(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::trimmed(v)
    }

    fn scale(&self, c: &Rat) -> UPoly {
        UPoly::trimmed(self.0.iter().map(|a| a * c).collect())
    }

    fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.deg().expect("division by zero polynomial");
        let mut r = self.0.clone();
        let mut q = vec![Rat::zero(); self.0.len().saturating_sub(dd)];
        let inv = d.lc().recip();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() * &inv;
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UPoly::trimmed(q), UPoly::trimmed(r))
    }

    fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Polynomial in `y` over `Q[x]`, lowest `y`-degree first.
#[derive(Clone, Debug)]
struct BiPoly(Vec<UPoly>);

impl BiPoly {
    fn from_mpoly(f: &MPoly) -> Self {
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for (e, c) in f.terms() {
            let (dx, dy) = (e[0] as usize, e[1] as usize);
            if rows.len() <= dy {
                rows.resize(dy + 1, Vec::new());
            }
            if rows[dy].len() <= dx {
                rows[dy].resize(dx + 1, Rat::zero());
            }
            rows[dy][dx] = c.clone();
        }
        BiPoly::trimmed(rows.into_iter().map(UPoly::trimmed).collect())
    }

    fn to_mpoly(&self) -> MPoly {
        MPoly::from_terms(
            2,
            self.0.iter().enumerate().flat_map(|(dy, u)| {
                u.0.iter()
                    .enumerate()
                    .map(move |(dx, c)| (vec![dx as u32, dy as u32], c.clone()))
            }),
        )
        .expect("bivariate terms")
    }

    fn trimmed(mut v: Vec<UPoly>) -> Self {
        while v.last().is_some_and(UPoly::is_zero) {
            v.pop();
        }
        BiPoly(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lc(&self) -> &UPoly {
        self.0.last().expect("nonzero polynomial")
    }

    fn content(&self) -> UPoly {
        self.0
            .iter()
            .fold(UPoly::zero(), |acc, c| acc.gcd(c))
    }

    fn primitive_part(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        BiPoly(self.0.iter().map(|u| u.divrem(&c).0).collect())
    }

    fn scale(&self, c: &UPoly) -> BiPoly {
        BiPoly::trimmed(self.0.iter().map(|u| u.mul(c)).collect())
    }

    /// `lc(d)^k · self` reduced modulo `d` in `y`.
    fn pseudo_rem(&self, d: &BiPoly) -> BiPoly {
        let dd = d.deg();
        let lcd = d.lc().clone();
        let mut r = self.clone();
        while !r.is_zero() && r.deg() >= dd {
            let shift = r.deg() - dd;
            let lcr = r.lc().clone();
            let mut next = r.scale(&lcd).0;
            for (i, u) in d.0.iter().enumerate() {
                next[shift + i] = next[shift + i].add(&u.mul(&lcr).neg());
            }
            r = BiPoly::trimmed(next);
        }
        r
    }

    fn gcd(&self, o: &BiPoly) -> BiPoly {
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }
}

/// Scales to integer coefficients with gcd 1 and a positive leading
/// coefficient in graded lexicographic order.
pub fn normalize_primitive(f: &MPoly) -> MPoly {
    if f.is_zero() {
        return f.clone();
    }
    let den = common_denominator(f.terms().map(|(_, c)| c));
    let scaled = f.scale(&Rat::from_integer(den));
    let g = scaled
        .terms()
        .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()));
    let mut factor = Rat::from_integer(g).recip();
    if scaled.leading_term().expect("nonzero").1.is_negative() {
        factor = -factor;
    }
    scaled.scale(&factor)
}

/// Normalized gcd of two nonzero bivariate polynomials over the rationals.
pub fn gcd_bivariate(f: &MPoly, g: &MPoly) -> Result<MPoly, Error> {
    for p in [f, g] {
        if p.nvars() != 2 {
            return Err(Error::NotBivariate(p.nvars()));
        }
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
    }
    let h = BiPoly::from_mpoly(f).gcd(&BiPoly::from_mpoly(g));
    if h.is_zero() {
        return Ok(MPoly::one(2));
    }
    Ok(normalize_primitive(&h.to_mpoly()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str) -> MPoly {
        parse_poly(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(gcd_bivariate(&p("x*y"), &p("x^2")).unwrap(), p("x"));
        assert_eq!(gcd_bivariate(&p("y^2-x^3"), &p("y-x^2")).unwrap(), p("1"));
        assert_eq!(
            gcd_bivariate(&p("-2*y^2+2*x^3"), &p("-2*y^2+2*x^3")).unwrap(),
            p("x^3-y^2")
        );
    }

    #[test]
    fn shared_factor_is_found() {
        let a = p("(x^2 + y - 3*x*y)*(x - y^2)");
        let b = p("(x^2 + y - 3*x*y)*(y + 1)^2");
        assert_eq!(gcd_bivariate(&a, &b).unwrap(), p("x^2 - 3*x*y + y"));
        let c = p("(1/2*x + 1)*(y-x)");
        let d = p("(x + 2)*(y+x)");
        assert_eq!(gcd_bivariate(&c, &d).unwrap(), p("x + 2"));
    }

    #[test]
    fn constants() {
        assert_eq!(gcd_bivariate(&p("6"), &p("x")).unwrap(), p("1"));
        assert_eq!(gcd_bivariate(&p("x^2"), &p("x^3*y")).unwrap(), p("x^2"));
    }

    #[test]
    fn wrong_arity() {
        let f = parse_poly("z1", &["z1", "z2", "z3"]).unwrap();
        assert_eq!(gcd_bivariate(&f, &f), Err(Error::NotBivariate(3)));
    }
}
