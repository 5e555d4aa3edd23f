//! Polytope number sequences `P(n)` and interior sequences `P(n)^#`.
//!
//! The face recursion is the reference; simplex sums and h/k decompositions
//! are independent routes that must reproduce it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::builtin::BuiltinSpec;
use crate::error::{Error, Result};
use crate::geometry::{rational, LinearFunctional, Point, Rational};
use crate::lattice::Polytope;
use crate::partition::{generic_point, vector_set};
use crate::triangulation::{
    assign_apexes, build_pointed_triangulation, check_apex_consistency, generic_functional,
    ApexAssignment, PointedTriangulation,
};
use crate::vectors::VectorSet;

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `α^d(n) = C(n+d−1, d)` for `n ≥ 1`, and 0 for `n ≤ 0`.
pub fn simplex_number(d: usize, n: i64) -> BigInt {
    if n <= 0 {
        BigInt::zero()
    } else {
        binomial(n + d as i64 - 1, d as i64)
    }
}

/// `α^d(n)^# = α^d(n−d−1)`; a point has `α^0(n)^# = 1` for every `n ≥ 1`.
pub fn simplex_interior(d: usize, n: i64) -> BigInt {
    if d == 0 {
        return if n >= 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    simplex_number(d, n - d as i64 - 1)
}

/// `n (n+1) ⋯ (n+d−1) / d!` for every integer `n`, with no zero-extension.
pub fn simplex_polynomial(d: usize, n: i64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..d as i64 {
        num *= BigInt::from(n + i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `α^d(n−d−1)` as a polynomial in `n`.
pub fn simplex_interior_polynomial(d: usize, n: i64) -> BigInt {
    simplex_polynomial(d, n - d as i64 - 1)
}

/// Permutations of `[d]` with exactly `i` descents.
pub fn eulerian_number(d: usize, i: i64) -> BigInt {
    if d == 0 || i < 0 || i >= d as i64 {
        return BigInt::zero();
    }
    let i = i as usize;
    let mut row = vec![BigInt::one()];
    for m in 2..=d {
        let mut next = vec![BigInt::zero(); m];
        for (j, slot) in next.iter_mut().enumerate() {
            if j < row.len() {
                *slot += BigInt::from(j + 1) * &row[j];
            }
            if j >= 1 {
                *slot += BigInt::from(m - j) * &row[j - 1];
            }
        }
        row = next;
    }
    row[i].clone()
}

/// `β^d(n) = Σ_{i<d} C(d−1, i) α^d(n−i)`.
pub fn cross_number(d: usize, n: i64) -> BigInt {
    (0..d as i64)
        .map(|i| binomial(d as i64 - 1, i) * simplex_number(d, n - i))
        .sum()
}

/// `γ^d(n) = Σ_{i<d} ⟨d, i⟩ α^d(n−i)`.
pub fn measure_number(d: usize, n: i64) -> BigInt {
    (0..d as i64)
        .map(|i| eulerian_number(d, i) * simplex_number(d, n - i))
        .sum()
}

/// `α^d(n) − Σ_{i<k} α^{d−1}(n−i) = α^d(n−k)`.
pub fn facet_cut_check(d: usize, n: i64, k: i64) -> bool {
    assert!(d >= 1);
    let cut: BigInt = (0..k).map(|i| simplex_number(d - 1, n - i)).sum();
    simplex_number(d, n) - cut == simplex_number(d, n - k)
}

/// `α^d(n) − α^d(n−1) = α^{d−1}(n)`.
pub fn difference_check(d: usize, n: i64) -> bool {
    assert!(d >= 1);
    simplex_number(d, n) - simplex_number(d, n - 1) == simplex_number(d - 1, n)
}

fn kim_sum(d: usize, j: usize, n: i64, interior: impl Fn(usize, i64) -> BigInt) -> BigInt {
    let (d, j) = (d as i64, j as i64);
    ((j - 1).max(0)..=d)
        .map(|i| binomial(d + 1 - j, i + 1 - j) * interior(i as usize, n))
        .sum()
}

/// `Σ_{i=j−1}^{d} C(d+1−j, i+1−j) α^i(n)^# = α^d(n−j)` with zero-extended
/// simplex numbers. Both sides, left first.
pub fn vandermonde_sides(d: usize, j: usize, n: i64) -> (BigInt, BigInt) {
    (
        kim_sum(d, j, n, simplex_interior),
        simplex_number(d, n - j as i64),
    )
}

pub fn vandermonde_check(d: usize, j: usize, n: i64) -> bool {
    let (l, r) = vandermonde_sides(d, j, n);
    l == r
}

/// The same identity with every simplex number read as its polynomial.
pub fn vandermonde_polynomial_check(d: usize, j: usize, n: i64) -> bool {
    kim_sum(d, j, n, simplex_interior_polynomial) == simplex_polynomial(d, n - j as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `Σ_j c_j α^d(n−j)`
    AlphaShifted,
    /// `Σ_j c_j α^d(n−d−1+j)`
    AlphaShiftedInterior,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub d: usize,
    pub coeffs: Vec<i64>,
    pub basis: Basis,
}

impl Decomposition {
    pub fn evaluate(&self, n: i64) -> BigInt {
        let shift = match self.basis {
            Basis::AlphaShifted => |j: i64, _d: i64| -j,
            Basis::AlphaShiftedInterior => |j: i64, d: i64| j - d - 1,
        };
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(j, &c)| {
                BigInt::from(c) * simplex_number(self.d, n + shift(j as i64, self.d as i64))
            })
            .sum()
    }

    /// Leading coefficient 1 and all coefficients nonnegative.
    pub fn is_normalized(&self) -> bool {
        self.coeffs.first() == Some(&1) && self.coeffs.iter().all(|&c| c >= 0)
    }
}

/// `P(n) = Σ_j h_j α^d(n−j)`.
pub fn polytope_number_from_h(h: &[i64], d: usize, n: i64) -> BigInt {
    Decomposition {
        d,
        coeffs: h.to_vec(),
        basis: Basis::AlphaShifted,
    }
    .evaluate(n)
}

/// `P(n)^# = Σ_j k_j α^d(n−j)`.
pub fn interior_from_k(k: &[i64], d: usize, n: i64) -> BigInt {
    Decomposition {
        d,
        coeffs: k.to_vec(),
        basis: Basis::AlphaShifted,
    }
    .evaluate(n)
}

/// `P(n)^# = Σ_j h_j α^d(n−d−1+j)`.
pub fn interior_from_h_reversed(h: &[i64], d: usize, n: i64) -> BigInt {
    Decomposition {
        d,
        coeffs: h.to_vec(),
        basis: Basis::AlphaShiftedInterior,
    }
    .evaluate(n)
}

/// `F(n)` and `F(n)^#` for every face `F`, indexed by face id then `n`.
#[derive(Debug, Clone)]
pub struct FaceSequences {
    pub exterior: Vec<Vec<BigInt>>,
    pub interior: Vec<Vec<BigInt>>,
}

/// Evaluates the face recursion bottom-up over the lattice:
/// `P(n) = P(n−1) + Σ_{v_P ∉ F} F(n)^#` and
/// `P(n)^# = P(n) − Σ_{F ≠ P} F(n)^#` for `n ≥ 2`.
pub fn face_sequences(
    p: &Polytope,
    apexes: &ApexAssignment,
    n_max: usize,
) -> Result<FaceSequences> {
    let lattice = p.lattice();
    check_apex_consistency(lattice, apexes)?;
    let len = n_max + 1;
    let mut ext: Vec<Vec<BigInt>> = Vec::with_capacity(lattice.len());
    let mut int: Vec<Vec<BigInt>> = Vec::with_capacity(lattice.len());
    for f in lattice.faces() {
        let mut e = vec![BigInt::zero(); len];
        let mut i = vec![BigInt::zero(); len];
        match f.dim {
            -1 => {}
            0 => {
                for n in 1..len {
                    e[n] = BigInt::one();
                    i[n] = BigInt::one();
                }
            }
            _ => {
                let v = apexes.apex(f.id);
                let proper: Vec<usize> = lattice
                    .subfaces(f.id)
                    .filter(|&g| g != f.id && lattice.face(g).dim >= 0)
                    .collect();
                let avoiding: Vec<usize> = proper
                    .iter()
                    .copied()
                    .filter(|&g| !lattice.face(g).vertices.contains(v))
                    .collect();
                if len > 1 {
                    e[1] = BigInt::one();
                }
                for n in 2..len {
                    let grow: BigInt = avoiding.iter().map(|&g| &int[g][n]).sum();
                    e[n] = &e[n - 1] + grow;
                    let boundary: BigInt = proper.iter().map(|&g| &int[g][n]).sum();
                    i[n] = &e[n] - boundary;
                }
            }
        }
        ext.push(e);
        int.push(i);
    }
    Ok(FaceSequences {
        exterior: ext,
        interior: int,
    })
}

pub fn polytope_number_recursive(
    p: &Polytope,
    apexes: &ApexAssignment,
    n_max: usize,
    interior: bool,
) -> Result<Vec<BigInt>> {
    let mut s = face_sequences(p, apexes, n_max)?;
    let top = p.lattice().top();
    Ok(if interior {
        std::mem::take(&mut s.interior[top])
    } else {
        std::mem::take(&mut s.exterior[top])
    })
}

/// `P(n) = Σ_i f_i α^i(n)^#` over `C_P`, or `Σ_i e_i α^i(n)^#` over `I_P`.
///
/// At `n = 1` every vertex of `C_P` would contribute 1, so the exterior sum
/// returns the base value `P(1) = 1` there.
pub fn polytope_number_simplex_sum(v: &VectorSet, n_max: usize, interior: bool) -> Vec<BigInt> {
    let counts: &[i64] = if interior { &v.e } else { &v.f[1..] };
    (0..=n_max as i64)
        .map(|n| {
            if !interior && n == 1 {
                return BigInt::one();
            }
            counts
                .iter()
                .enumerate()
                .map(|(i, &c)| BigInt::from(c) * simplex_interior(i, n))
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceMethod {
    Recursive,
    SimplexSum,
    HDecomposition,
    KDecomposition,
    HReversed,
    ClosedForm,
}

impl SequenceMethod {
    pub const ALL: [SequenceMethod; 6] = [
        SequenceMethod::Recursive,
        SequenceMethod::SimplexSum,
        SequenceMethod::HDecomposition,
        SequenceMethod::KDecomposition,
        SequenceMethod::HReversed,
        SequenceMethod::ClosedForm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SequenceMethod::Recursive => "recursive",
            SequenceMethod::SimplexSum => "simplex_sum",
            SequenceMethod::HDecomposition => "h_decomposition",
            SequenceMethod::KDecomposition => "k_decomposition",
            SequenceMethod::HReversed => "h_reversed",
            SequenceMethod::ClosedForm => "closed_form",
        }
    }
}

impl fmt::Display for SequenceMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SequenceMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recursive" => Ok(SequenceMethod::Recursive),
            "simplex-sum" | "simplex_sum" => Ok(SequenceMethod::SimplexSum),
            "h" | "h_decomposition" => Ok(SequenceMethod::HDecomposition),
            "k" | "k_decomposition" => Ok(SequenceMethod::KDecomposition),
            "h-reversed" | "h_reversed" => Ok(SequenceMethod::HReversed),
            "closed-form" | "closed_form" => Ok(SequenceMethod::ClosedForm),
            _ => Err(Error::UnknownMethod(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceResult {
    pub polytope: String,
    pub method: SequenceMethod,
    pub interior: bool,
    pub h: Option<Vec<i64>>,
    pub k: Option<Vec<i64>>,
    pub decomposition: Option<Decomposition>,
    pub values: Vec<BigInt>,
}

/// Serializes arbitrary-precision integers as bare JSON numbers.
pub fn serialize_big_ints<S: Serializer>(
    values: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| {
        v.to_string()
            .parse::<serde_json::Number>()
            .expect("decimal integers are JSON numbers")
    }))
}

impl Serialize for SequenceResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            polytope: &'a str,
            method: SequenceMethod,
            interior: bool,
            h: &'a Option<Vec<i64>>,
            k: &'a Option<Vec<i64>>,
            #[serde(serialize_with = "serialize_big_ints")]
            values: &'a [BigInt],
        }
        Out {
            polytope: &self.polytope,
            method: self.method,
            interior: self.interior,
            h: &self.h,
            k: &self.k,
            values: &self.values,
        }
        .serialize(s)
    }
}

/// Runs one method on a triangulation whose vectors are already known.
pub fn sequence(
    t: &PointedTriangulation,
    v: &VectorSet,
    method: SequenceMethod,
    interior: bool,
    n_max: usize,
) -> Result<SequenceResult> {
    let d = t.dim();
    let range = 0..=n_max as i64;
    let (values, decomposition) = match (method, interior) {
        (SequenceMethod::Recursive, _) => (
            polytope_number_recursive(t.polytope(), t.apexes(), n_max, interior)?,
            None,
        ),
        (SequenceMethod::SimplexSum, _) => (polytope_number_simplex_sum(v, n_max, interior), None),
        (SequenceMethod::HDecomposition, false) => {
            let dec = Decomposition {
                d,
                coeffs: v.h.clone(),
                basis: Basis::AlphaShifted,
            };
            (range.map(|n| dec.evaluate(n)).collect(), Some(dec))
        }
        (SequenceMethod::HDecomposition | SequenceMethod::HReversed, true) => {
            let dec = Decomposition {
                d,
                coeffs: v.h.clone(),
                basis: Basis::AlphaShiftedInterior,
            };
            (range.map(|n| dec.evaluate(n)).collect(), Some(dec))
        }
        (SequenceMethod::KDecomposition, true) => {
            let dec = Decomposition {
                d,
                coeffs: v.k.clone(),
                basis: Basis::AlphaShifted,
            };
            (range.map(|n| dec.evaluate(n)).collect(), Some(dec))
        }
        (SequenceMethod::KDecomposition | SequenceMethod::HReversed, false) => {
            return Err(Error::MethodUnavailable {
                method: method.to_string(),
                reason: "only defined for interior sequences".into(),
            })
        }
        (SequenceMethod::ClosedForm, _) => {
            return Err(Error::MethodUnavailable {
                method: method.to_string(),
                reason: "closed forms exist only for builtin simplex, cube and cross families"
                    .into(),
            })
        }
    };
    let method = if interior && method == SequenceMethod::HDecomposition {
        SequenceMethod::HReversed
    } else {
        method
    };
    Ok(SequenceResult {
        polytope: t.polytope().name().to_string(),
        method,
        interior,
        h: Some(v.h.clone()),
        k: Some(v.k.clone()),
        decomposition,
        values,
    })
}

/// Closed forms for simplices, cubes and cross-polytopes.
pub fn closed_form(spec: &BuiltinSpec, interior: bool, n_max: usize) -> Result<SequenceResult> {
    let unavailable = |reason: &str| Error::MethodUnavailable {
        method: SequenceMethod::ClosedForm.to_string(),
        reason: reason.to_string(),
    };
    let ns = 0..=n_max as i64;
    let (name, values): (String, Vec<BigInt>) = match (spec, interior) {
        (BuiltinSpec::Simplex(d), false) => (
            format!("simplex({d})"),
            ns.map(|n| simplex_number(*d, n)).collect(),
        ),
        (BuiltinSpec::Simplex(d), true) => (
            format!("simplex({d})"),
            ns.map(|n| simplex_interior(*d, n)).collect(),
        ),
        (BuiltinSpec::Cube(0), _) => (
            "cube(0)".into(),
            ns.map(|n| simplex_interior(0, n)).collect(),
        ),
        (BuiltinSpec::Cube(d), false) => (
            format!("cube({d})"),
            ns.map(|n| measure_number(*d, n)).collect(),
        ),
        (BuiltinSpec::Cube(d), true) => (
            format!("cube({d})"),
            ns.map(|n| {
                if n < 2 {
                    BigInt::zero()
                } else {
                    BigInt::from(n - 2).pow(*d as u32)
                }
            })
            .collect(),
        ),
        (BuiltinSpec::Cross(d), false) if *d >= 1 => (
            format!("cross({d})"),
            ns.map(|n| cross_number(*d, n)).collect(),
        ),
        (BuiltinSpec::Cross(_), true) => {
            return Err(unavailable("no interior closed form for cross-polytopes"))
        }
        _ => {
            return Err(unavailable(
                "closed forms exist only for simplex, cube and cross families",
            ))
        }
    };
    Ok(SequenceResult {
        polytope: name,
        method: SequenceMethod::ClosedForm,
        interior,
        h: None,
        k: None,
        decomposition: None,
        values,
    })
}

/// h-vector and sequence for one apex choice of `v_P`.
#[derive(Debug, Clone, Serialize)]
pub struct ApexTrial {
    pub apex: usize,
    pub functional: LinearFunctional,
    pub h: Vec<i64>,
    #[serde(serialize_with = "serialize_big_ints")]
    pub values: Vec<BigInt>,
}

fn with_apex(p: &Polytope, v: usize) -> Option<LinearFunctional> {
    let centre = Point::barycenter(p.vertices());
    let toward: Vec<Rational> = centre.diff(p.vertex(v));
    let tie_break = generic_functional(p, 0);
    let mut eps = Rational::one();
    for _ in 0..48 {
        let c = LinearFunctional::new(
            toward
                .iter()
                .zip(tie_break.coeffs())
                .map(|(a, b)| a + &eps * b)
                .collect(),
        );
        if let Ok(a) = assign_apexes(p, &c) {
            if a.apex(p.lattice().top()) == v {
                return Some(c);
            }
        }
        eps /= rational(2);
    }
    None
}

/// For every vertex that some nearby functional makes the global apex, the
/// resulting h-vector and recursive sequence.
pub fn apex_trials(p: &Polytope, n_max: usize) -> Result<Vec<ApexTrial>> {
    let mut out = Vec::new();
    for v in 0..p.vertices().len() {
        let Some(c) = with_apex(p, v) else { continue };
        let apexes = assign_apexes(p, &c)?;
        let t = build_pointed_triangulation(p, &apexes)?;
        let x = generic_point(&t, 0)?;
        let vs = vector_set(&t, &x)?;
        out.push(ApexTrial {
            apex: v,
            functional: c,
            h: vs.h,
            values: polytope_number_recursive(p, &apexes, n_max, false)?,
        });
    }
    Ok(out)
}

/// True when `values[n] = n^d` (or `(n−2)^d` clamped at 0 for the interior)
/// for `1 ≤ n`.
pub fn matches_grid(values: &[BigInt], d: usize, interior: bool) -> bool {
    values.iter().enumerate().skip(1).all(|(n, v)| {
        let side = if interior { n as i64 - 2 } else { n as i64 };
        let expected = if side <= 0 && d > 0 {
            BigInt::zero()
        } else {
            BigInt::from(side.max(0)).pow(d as u32)
        };
        *v == expected || (d == 0 && v.is_one())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Points of `{0..n-1}^d`, optionally only those off the boundary.
    fn grid_count(d: u32, n: i64, interior: bool) -> i64 {
        if n <= 0 {
            return 0;
        }
        let side = n;
        let mut count = 0;
        for idx in 0..side.pow(d) {
            let mut rest = idx;
            let mut inside = true;
            for _ in 0..d {
                let c = rest % side;
                rest /= side;
                if c == 0 || c == side - 1 {
                    inside = false;
                }
            }
            if !interior || inside {
                count += 1;
            }
        }
        count
    }

    /// Nonnegative integer points with coordinates summing to `n − 1` in
    /// `d + 1` variables, i.e. the `n`-th layer of a `d`-simplex.
    fn simplex_lattice_count(d: usize, n: i64, interior: bool) -> i64 {
        if n <= 0 {
            return 0;
        }
        fn go(vars: usize, left: i64, min: i64) -> i64 {
            if vars == 1 {
                return (left >= min) as i64;
            }
            (min..=left).map(|c| go(vars - 1, left - c, min)).sum()
        }
        go(d + 1, n - 1, if interior { 1 } else { 0 })
    }

    fn permutation_descents(d: usize) -> Vec<i64> {
        let mut counts = vec![0i64; d.max(1)];
        let mut perm: Vec<usize> = (0..d).collect();
        // Heap's algorithm
        fn heap(k: usize, perm: &mut Vec<usize>, counts: &mut Vec<i64>) {
            if k <= 1 {
                let desc = perm.windows(2).filter(|w| w[0] > w[1]).count();
                counts[desc] += 1;
                return;
            }
            for i in 0..k {
                heap(k - 1, perm, counts);
                if k.is_multiple_of(2) {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
            }
        }
        heap(d, &mut perm, &mut counts);
        counts
    }

    #[test]
    fn simplex_number_examples() {
        assert_eq!(simplex_number(2, 3), BigInt::from(6));
        assert_eq!(simplex_number(3, 4), BigInt::from(20));
        for d in 0..8 {
            assert_eq!(simplex_number(d, 1), BigInt::one());
            assert!(simplex_number(d, 0).is_zero());
            assert!(simplex_number(d, -5).is_zero());
        }
        assert!(simplex_interior(3, 4).is_zero());
        assert_eq!(simplex_interior(1, 4), BigInt::from(2));
        for n in 1..10 {
            assert_eq!(simplex_interior(0, n), BigInt::one());
        }
        assert!(simplex_interior(0, 0).is_zero());
    }

    #[test]
    fn simplex_numbers_count_lattice_points() {
        for d in 0..=4 {
            for n in 0..=8 {
                assert_eq!(
                    simplex_number(d, n),
                    BigInt::from(simplex_lattice_count(d, n, false)),
                    "{d} {n}"
                );
                if d >= 1 {
                    assert_eq!(
                        simplex_interior(d, n),
                        BigInt::from(simplex_lattice_count(d, n, true)),
                        "{d} {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn eulerian_numbers_count_descents() {
        assert_eq!(eulerian_number(3, 1), BigInt::from(4));
        assert!(eulerian_number(3, 3).is_zero());
        assert!(eulerian_number(3, -1).is_zero());
        for d in 1..=6 {
            let brute = permutation_descents(d);
            let ours: Vec<BigInt> = (0..d as i64).map(|i| eulerian_number(d, i)).collect();
            assert_eq!(ours, big(&brute));
            let total: i64 = brute.iter().sum();
            assert_eq!(total, (1..=d as i64).product::<i64>());
        }
    }

    #[test]
    fn family_examples() {
        assert_eq!(cross_number(3, 3), BigInt::from(19));
        assert_eq!(
            (1..=4).map(|n| cross_number(3, n)).collect::<Vec<_>>(),
            big(&[1, 6, 19, 44])
        );
        assert_eq!(measure_number(3, 2), BigInt::from(8));
        for d in 1..=6 {
            assert_eq!(measure_number(d, 1), BigInt::one());
            for n in 1..=20 {
                assert_eq!(measure_number(d, n), BigInt::from(n).pow(d as u32));
            }
        }
    }

    #[test]
    fn facet_cut_and_difference() {
        assert_eq!(simplex_number(3, 5), BigInt::from(35));
        assert!(facet_cut_check(3, 5, 4));
        for d in 1..=8 {
            for n in 0..=30 {
                assert!(difference_check(d, n));
                assert!(facet_cut_check(d, n, 0));
                for k in 0..=n.min(d as i64 + 1) {
                    assert!(facet_cut_check(d, n, k), "{d} {n} {k}");
                }
            }
        }
    }

    /// Zero-extension breaks the identity only at `n = 1`, where every
    /// vertex of the sum counts as an interior point.
    #[test]
    fn vandermonde_holds_except_at_one() {
        for d in 0..=6 {
            for j in 0..=d + 1 {
                for n in 0..=20 {
                    assert!(vandermonde_polynomial_check(d, j, n), "poly {d} {j} {n}");
                    if n != 1 {
                        assert!(vandermonde_check(d, j, n), "{d} {j} {n}");
                    }
                }
            }
        }
        assert_eq!(vandermonde_sides(3, 0, 1), (BigInt::from(4), BigInt::one()));
        assert_eq!(vandermonde_sides(3, 1, 1), (BigInt::one(), BigInt::zero()));
        assert!(vandermonde_check(3, 2, 1));
        assert!(vandermonde_check(0, 0, 1));
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(
            polytope_number_from_h(&[1, 4, 1, 0, 0], 3, 2),
            BigInt::from(8)
        );
        assert_eq!(
            polytope_number_from_h(&[1, 2, 1, 0, 0], 3, 3),
            BigInt::from(19)
        );
        assert_eq!(
            polytope_number_from_h(&[1, 7, 3, 0, 0], 3, 1),
            BigInt::one()
        );
        assert_eq!(interior_from_k(&[0, 0, 1, 4, 1], 3, 4), BigInt::from(8));
        assert_eq!(
            interior_from_h_reversed(&[1, 4, 1, 0, 0], 3, 3),
            BigInt::one()
        );
        for d in 1..=5 {
            let mut k = vec![0; d + 2];
            k[d + 1] = 1;
            for n in 0..15 {
                assert_eq!(interior_from_k(&k, d, n), simplex_interior(d, n));
            }
        }
    }

    #[test]
    fn recursion_on_squares_and_cubes_counts_grid_points() {
        for d in 1..=4u32 {
            let p = builtin::cube(d as usize).unwrap();
            let a = assign_apexes(&p, &generic_functional(&p, 0)).unwrap();
            let s = face_sequences(&p, &a, 6).unwrap();
            let top = p.lattice().top();
            for n in 0..=6 {
                assert_eq!(
                    s.exterior[top][n],
                    BigInt::from(grid_count(d, n as i64, false)),
                    "{d} {n}"
                );
                assert_eq!(
                    s.interior[top][n],
                    BigInt::from(grid_count(d, n as i64, true)),
                    "{d} {n}"
                );
            }
        }
        let sq = builtin::cube(2).unwrap();
        let a = assign_apexes(&sq, &generic_functional(&sq, 0)).unwrap();
        assert_eq!(
            polytope_number_recursive(&sq, &a, 3, false).unwrap(),
            big(&[0, 1, 4, 9])
        );
    }

    #[test]
    fn simplex_sum_examples() {
        let cube = VectorSet {
            f: vec![1, 8, 19, 18, 6],
            h: vec![],
            k: vec![],
            e: vec![0, 1, 6, 6],
        };
        assert_eq!(
            polytope_number_simplex_sum(&cube, 3, false)[3],
            BigInt::from(27)
        );
        assert_eq!(
            polytope_number_simplex_sum(&cube, 5, true),
            big(&[0, 0, 0, 1, 8, 27])
        );
        let square = VectorSet {
            f: vec![1, 4, 5, 2],
            h: vec![],
            k: vec![],
            e: vec![],
        };
        assert_eq!(
            polytope_number_simplex_sum(&square, 2, false),
            big(&[0, 1, 4])
        );
    }

    #[test]
    fn methods_agree_on_small_builtins() {
        for name in [
            "simplex:3",
            "cube:3",
            "cross:3",
            "pyramid:square",
            "prism:triangle",
        ] {
            let spec: BuiltinSpec = name.parse().unwrap();
            let p = spec.build().unwrap();
            let t = PointedTriangulation::new(&p, 0).unwrap();
            let v = vector_set(&t, &generic_point(&t, 0).unwrap()).unwrap();
            let rec = sequence(&t, &v, SequenceMethod::Recursive, false, 12)
                .unwrap()
                .values;
            for m in [SequenceMethod::SimplexSum, SequenceMethod::HDecomposition] {
                assert_eq!(
                    sequence(&t, &v, m, false, 12).unwrap().values,
                    rec,
                    "{name} {m}"
                );
            }
            let rec = sequence(&t, &v, SequenceMethod::Recursive, true, 12)
                .unwrap()
                .values;
            for m in [
                SequenceMethod::SimplexSum,
                SequenceMethod::KDecomposition,
                SequenceMethod::HReversed,
            ] {
                assert_eq!(
                    sequence(&t, &v, m, true, 12).unwrap().values,
                    rec,
                    "{name} {m} interior"
                );
            }
            if let Ok(cf) = closed_form(&spec, false, 12) {
                assert_eq!(
                    cf.values,
                    sequence(&t, &v, SequenceMethod::Recursive, false, 12)
                        .unwrap()
                        .values
                );
            }
        }
    }

    #[test]
    fn method_availability() {
        let t = PointedTriangulation::new(&builtin::cube(2).unwrap(), 0).unwrap();
        let v = vector_set(&t, &generic_point(&t, 0).unwrap()).unwrap();
        assert!(matches!(
            sequence(&t, &v, SequenceMethod::KDecomposition, false, 3),
            Err(Error::MethodUnavailable { .. })
        ));
        assert!(closed_form(&BuiltinSpec::Cross(3), true, 3).is_err());
        assert!(matches!(
            "bogus".parse::<SequenceMethod>(),
            Err(Error::UnknownMethod(_))
        ));
        let h = sequence(&t, &v, SequenceMethod::HDecomposition, true, 3).unwrap();
        assert_eq!(h.method, SequenceMethod::HReversed);
    }

    #[test]
    fn sequence_json_uses_plain_numbers() {
        let r = closed_form(&BuiltinSpec::Cube(3), false, 3).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"polytope":"cube(3)","method":"closed_form","interior":false,"h":null,"k":null,"values":[0,1,8,27]}"#
        );
        let huge = closed_form(&BuiltinSpec::Cube(7), false, 10000).unwrap();
        let s = serde_json::to_string(&huge).unwrap();
        assert!(s.ends_with("10000000000000000000000000000]}"));
    }

    #[test]
    fn closed_form_interior_cube_is_shifted_cube() {
        let r = closed_form(&BuiltinSpec::Cube(3), true, 5).unwrap();
        assert_eq!(r.values, big(&[0, 0, 0, 1, 8, 27]));
        assert!(matches_grid(&r.values, 3, true));
    }
}
