//! Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use super::Rational;

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in col..ncols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub(crate) fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    rref(&mut rows).len()
}

/// Affine solution set of `a · x = b`: a particular solution plus a basis of
/// the null space of `a`. `None` when the system is inconsistent.
#[derive(Debug, Clone)]
pub(crate) struct Solution {
    pub particular: Vec<Rational>,
    pub null_space: Vec<Vec<Rational>>,
}

pub(crate) fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Solution> {
    let nvars = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&nvars) {
        return None;
    }
    let mut particular = vec![Rational::zero(); nvars];
    for (row, &col) in pivots.iter().enumerate() {
        particular[col] = aug[row][nvars].clone();
    }
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    let null_space = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); nvars];
            v[f] = Rational::one();
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = -aug[row][f].clone();
            }
            v
        })
        .collect();
    Some(Solution {
        particular,
        null_space,
    })
}
