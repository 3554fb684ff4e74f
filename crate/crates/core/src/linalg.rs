//! Small dense linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::rat::Rat;

pub type Matrix = Vec<Vec<Rat>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect()
}

pub fn inverse(m: &[Vec<Rat>]) -> Result<Matrix, Error> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| {
            if row.len() != n {
                return Err(Error::MatrixShape {
                    rows: n,
                    cols: row.len(),
                    expected: n,
                });
            }
            Ok(row.iter().cloned().chain(id).collect())
        })
        .collect::<Result<_, _>>()?;
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::SingularMatrix);
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Basis of the right null space `{u : m·u = 0}`.
pub fn nullspace(m: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut u = vec![Rat::zero(); ncols];
            u[fc] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                u[pc] = -a[r][fc].clone();
            }
            u
        })
        .collect()
}

/// Unique solution of a square or overdetermined system `m·u = rhs`, if the
/// system is consistent and has full column rank.
pub fn solve_unique(m: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut aug: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| row.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) || pivots.len() != ncols {
        return None;
    }
    Some((0..ncols).map(|r| aug[r][ncols].clone()).collect())
}

pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
