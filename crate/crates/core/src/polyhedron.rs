//! Newton polyhedra `conv(points) + R^n_{≥0}` in facet form.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::linalg::{dot, nullspace};
use crate::lp::combinations;
use crate::rat::{common_denominator, Rat};

/// Largest ambient dimension accepted by [`newton_facets`].
pub const MAX_DIM: usize = 6;

/// The half-space `normal · x ≥ offset`; `normal` is a primitive
/// nonnegative integer vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

impl Facet {
    pub fn contains(&self, x: &[Rat]) -> bool {
        dot(&self.normal, x) >= self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    pub generators: Vec<Vec<Rat>>,
    pub facets: Vec<Facet>,
}

impl NewtonPolyhedron {
    pub fn dim(&self) -> usize {
        self.generators.first().map_or(0, Vec::len)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|f| f.contains(x))
    }

    /// Largest `c` with `γ ∈ c · P`, i.e. `min (u·γ)/d` over facets with
    /// `d > 0`.
    pub fn scaling_to(&self, gamma: &[Rat]) -> Option<Rat> {
        self.facets
            .iter()
            .filter(|f| f.offset.is_positive())
            .map(|f| dot(&f.normal, gamma) / &f.offset)
            .min()
    }
}

fn primitive_integer(u: &[Rat]) -> Vec<Rat> {
    let den = common_denominator(u);
    let ints: Vec<BigInt> = u
        .iter()
        .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    ints.into_iter()
        .map(|v| Rat::from_integer(v / &g))
        .collect()
}

/// Facets of `conv(points) + R^n_{≥0}`.
///
/// Each candidate hyperplane passes through `k ≥ 1` of the points and
/// contains `n - k` coordinate directions; it is kept when its normal is
/// determined up to scale, can be oriented nonnegative, and leaves every
/// point on its upper side. Facets come out sorted by `(normal, offset)`.
pub fn newton_facets(points: &[Vec<Rat>]) -> Result<NewtonPolyhedron, Error> {
    let Some(first) = points.first() else {
        return Err(Error::Empty("point set"));
    };
    let n = first.len();
    if n > MAX_DIM {
        return Err(Error::DimensionBound {
            dim: n,
            bound: MAX_DIM,
        });
    }
    if let Some(p) = points.iter().find(|p| p.len() != n) {
        return Err(Error::NvarsMismatch {
            left: n,
            right: p.len(),
        });
    }
    if points.iter().flatten().any(Signed::is_negative) {
        return Err(Error::DegenerateWeight("negative coordinate".into()));
    }
    let mut uniq: Vec<Vec<Rat>> = Vec::new();
    for p in points {
        if !uniq.contains(p) {
            uniq.push(p.clone());
        }
    }
    let mut facets = BTreeSet::new();
    for k in 1..=n.min(uniq.len()) {
        for chosen in combinations(uniq.len(), k) {
            let base = &uniq[chosen[0]];
            for dirs in combinations(n, n - k) {
                let mut eqs: Vec<Vec<Rat>> = chosen[1..]
                    .iter()
                    .map(|&i| uniq[i].iter().zip(base).map(|(a, b)| a - b).collect())
                    .collect();
                for &d in &dirs {
                    let mut e = vec![Rat::zero(); n];
                    e[d] = Rat::from_integer(1.into());
                    eqs.push(e);
                }
                let ns = if eqs.is_empty() {
                    // n = 1: the normal is the single coordinate direction
                    vec![vec![Rat::from_integer(1.into())]]
                } else {
                    nullspace(&eqs, n)
                };
                let [u] = &ns[..] else {
                    continue;
                };
                let u = if u.iter().any(Signed::is_positive) {
                    u.clone()
                } else {
                    u.iter().map(|c| -c).collect()
                };
                if u.iter().any(Signed::is_negative) {
                    continue;
                }
                let u = primitive_integer(&u);
                let d = dot(&u, base);
                if uniq.iter().all(|p| dot(&u, p) >= d) {
                    facets.insert(Facet {
                        normal: u,
                        offset: d,
                    });
                }
            }
        }
    }
    Ok(NewtonPolyhedron {
        generators: uniq,
        facets: facets.into_iter().collect(),
    })
}
