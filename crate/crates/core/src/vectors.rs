//! f-, h-, k- and e-vectors. Vectors indexed from −1 store `f_{−1}` at
//! position 0.

use num_integer::binomial;
use serde::Serialize;

use crate::triangulation::Complex;

fn choose(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        0
    } else {
        binomial(n, k)
    }
}

/// `(f_{−1}, f_0, ..., f_d)`.
pub fn f_vector(c: &Complex, d: usize) -> Vec<i64> {
    let mut f = vec![0; d + 2];
    for s in c {
        let i = (s.dim() + 1) as usize;
        if i < f.len() {
            f[i] += 1;
        }
    }
    f
}

/// `(e_0, ..., e_d)`: simplex counts of the interior complex by dimension.
pub fn e_vector(interior: &Complex, d: usize) -> Vec<i64> {
    f_vector(interior, d)[1..].to_vec()
}

/// `h_k = Σ_{i=0}^{k} (−1)^{k−i} C(d+1−i, k−i) f_{i−1}` for `k = 0..=d+1`.
pub fn h_from_f(f: &[i64], d: usize) -> Vec<i64> {
    assert_eq!(f.len(), d + 2, "f must have entries −1..=d");
    let d = d as i64;
    (0..=d + 1)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * choose(d + 1 - i, k - i) * f[i as usize]
                })
                .sum()
        })
        .collect()
}

/// `f_i = Σ_{j=0}^{i+1} h_j C(d+1−j, i+1−j)` for `i = −1..=d`.
pub fn f_from_h(h: &[i64], d: usize) -> Vec<i64> {
    assert_eq!(h.len(), d + 2, "h must have entries 0..=d+1");
    let d = d as i64;
    (-1..=d)
        .map(|i| {
            (0..=i + 1)
                .map(|j| h[j as usize] * choose(d + 1 - j, i + 1 - j))
                .sum()
        })
        .collect()
}

/// `k_i = h_{d+1−i}`.
pub fn k_from_h(h: &[i64]) -> Vec<i64> {
    h.iter().rev().copied().collect()
}

/// `e_i = Σ_{j=0}^{i+1} k_j C(d+1−j, i+1−j)` for `i = 0..=d`.
pub fn e_from_k(k: &[i64], d: usize) -> Vec<i64> {
    f_from_h(k, d)[1..].to_vec()
}

/// `Σ_{j≥0} (−1)^j f_j`, skipping `f_{−1}`.
pub fn euler_characteristic(f: &[i64]) -> i64 {
    f.iter()
        .skip(1)
        .enumerate()
        .map(|(j, &x)| if j % 2 == 0 { x } else { -x })
        .sum()
}

/// All four vectors of a pointed triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VectorSet {
    pub f: Vec<i64>,
    pub h: Vec<i64>,
    pub k: Vec<i64>,
    pub e: Vec<i64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::{closure, Simplex};
    use crate::vertex_set::VertexSet;

    #[test]
    fn cube_three_vectors() {
        let f = vec![1, 8, 19, 18, 6];
        let h = h_from_f(&f, 3);
        assert_eq!(h, vec![1, 4, 1, 0, 0]);
        assert_eq!(f_from_h(&h, 3), f);
        let k = k_from_h(&h);
        assert_eq!(k, vec![0, 0, 1, 4, 1]);
        assert_eq!(e_from_k(&k, 3), vec![0, 1, 6, 6]);
        assert_eq!(euler_characteristic(&f), 1);
        assert_eq!(euler_characteristic(&[1, 8, 18, 12]), 2);
    }

    #[test]
    fn simplex_and_segment() {
        for d in 0..=6usize {
            let c = closure([Simplex(VertexSet::full(d + 1))]);
            let f = f_vector(&c, d);
            let expected: Vec<i64> = (0..=d + 1)
                .map(|k| choose(d as i64 + 1, k as i64))
                .collect();
            assert_eq!(f, expected);
            let mut h = vec![0; d + 2];
            h[0] = 1;
            assert_eq!(h_from_f(&f, d), h);
        }
        let seg = closure([Simplex(VertexSet::full(2))]);
        assert_eq!(f_vector(&seg, 1), vec![1, 2, 1]);
    }

    #[test]
    fn cross_three_h() {
        // boundary-of-octahedron cone: 8 tetrahedra through the apex
        assert_eq!(h_from_f(&[1, 6, 13, 12, 4], 3), vec![1, 2, 1, 0, 0]);
    }
}
