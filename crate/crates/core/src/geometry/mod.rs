//! Exact rational points, functionals, hyperplanes and the predicates built on
//! them. Nothing in this crate uses floating point.

pub(crate) mod linalg;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    Rational::from_str(t).map_err(|_| Error::ParseRational(s.to_string()))
}

/// Formats as `"p"` when integral and `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn rational_from_json(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::ParseRational(other.to_string())),
    }
}

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative = -1,
    Zero = 0,
    Positive = 1,
}

impl Sign {
    pub fn of(q: &Rational) -> Sign {
        if q.is_positive() {
            Sign::Positive
        } else if q.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// A point of ℚ^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| rational(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `self - other` as a coordinate vector.
    pub fn diff(&self, other: &Point) -> Vec<Rational> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    /// Appends a coordinate, lifting the point into one more dimension.
    pub fn lifted(&self, last: Rational) -> Point {
        let mut c = self.0.clone();
        c.push(last);
        Point(c)
    }

    /// Affine combination `Σ w_i p_i`; the weights are not required to sum to 1.
    pub fn combination(points: &[Point], weights: &[Rational]) -> Point {
        let dim = points.first().map_or(0, Point::dim);
        let mut acc = vec![Rational::zero(); dim];
        for (p, w) in points.iter().zip(weights) {
            for (a, c) in acc.iter_mut().zip(&p.0) {
                *a += w * c;
            }
        }
        Point(acc)
    }

    pub fn barycenter(points: &[Point]) -> Point {
        let w = Rational::new(BigInt::one(), BigInt::from(points.len()));
        Point::combination(points, &vec![w; points.len()])
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        raw.iter()
            .map(rational_from_json)
            .collect::<Result<Vec<_>>>()
            .map(Point)
            .map_err(serde::de::Error::custom)
    }
}

/// Row vector `c`, evaluated as `c · x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearFunctional(Vec<Rational>);

impl LinearFunctional {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        LinearFunctional(coeffs)
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        LinearFunctional(coeffs.iter().map(|&c| rational(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        LinearFunctional(self.0.iter().map(|c| c * factor).collect())
    }
}

impl Serialize for LinearFunctional {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(format_rational))
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub fn evaluate_functional(c: &LinearFunctional, p: &Point) -> Result<Rational> {
    check_dim(c.dim(), p.dim())?;
    Ok(dot(&c.0, &p.0))
}

/// The locus `normal · x = offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vec<Rational>,
    offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::ZeroNormal);
        }
        Ok(Hyperplane { normal, offset })
    }

    /// Canonical hyperplane through `points`, which must span an affine
    /// subspace of codimension one. The normal is a primitive integer vector
    /// whose first nonzero entry is positive.
    pub fn through(points: &[Point]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let n = first.dim();
        for p in points {
            check_dim(n, p.dim())?;
        }
        let rows: Vec<Vec<Rational>> = points[1..].iter().map(|p| p.diff(first)).collect();
        let zeros = vec![Rational::zero(); rows.len()];
        let sol = if rows.is_empty() {
            // A single point in ℚ^1 is its own hyperplane.
            linalg::Solution {
                particular: vec![Rational::zero(); n],
                null_space: (0..n)
                    .map(|i| {
                        let mut v = vec![Rational::zero(); n];
                        v[i] = Rational::one();
                        v
                    })
                    .collect(),
            }
        } else {
            linalg::solve(&rows, &zeros).expect("homogeneous systems are consistent")
        };
        if sol.null_space.len() != 1 {
            return Err(Error::DegenerateSimplex);
        }
        let normal = primitive_integer_vector(&sol.null_space[0]);
        let offset = dot(&normal, &first.0);
        Ok(Hyperplane { normal, offset })
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn negated(&self) -> Hyperplane {
        Hyperplane {
            normal: self.normal.iter().map(|c| -c).collect(),
            offset: -self.offset.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }
}

/// Scales to coprime integers with the first nonzero entry positive.
fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &gcd * &sign))
        .collect()
}

pub fn side_of_hyperplane(h: &Hyperplane, p: &Point) -> Result<Sign> {
    check_dim(h.dim(), p.dim())?;
    Ok(Sign::of(&(dot(&h.normal, &p.0) - &h.offset)))
}

fn difference_rows(points: &[Point]) -> Result<Vec<Vec<Rational>>> {
    let first = points.first().ok_or(Error::EmptyPointSet)?;
    for p in points {
        check_dim(first.dim(), p.dim())?;
    }
    Ok(points[1..].iter().map(|p| p.diff(first)).collect())
}

/// Dimension of the affine hull.
pub fn affine_rank(points: &[Point]) -> Result<usize> {
    Ok(linalg::rank(difference_rows(points)?))
}

pub fn affine_hull_contains(points: &[Point], q: &Point) -> Result<bool> {
    let mut rows = difference_rows(points)?;
    check_dim(points[0].dim(), q.dim())?;
    let base = linalg::rank(rows.clone());
    rows.push(q.diff(&points[0]));
    Ok(linalg::rank(rows) == base)
}

fn check_simplex(simplex: &[Point]) -> Result<()> {
    if affine_rank(simplex)? + 1 != simplex.len() {
        return Err(Error::DegenerateSimplex);
    }
    Ok(())
}

/// Barycentric coordinates of `x` with respect to an affinely independent
/// point set, or `None` when `x` is outside its affine hull.
pub fn barycentric(simplex: &[Point], x: &Point) -> Result<Option<Vec<Rational>>> {
    check_simplex(simplex)?;
    let n = simplex[0].dim();
    check_dim(n, x.dim())?;
    let k = simplex.len();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|c| simplex.iter().map(|v| v.0[c].clone()).collect())
        .collect();
    a.push(vec![Rational::one(); k]);
    let mut b = x.0.clone();
    b.push(Rational::one());
    Ok(linalg::solve(&a, &b).map(|s| s.particular))
}

/// Where the ray from `x` through `y` first meets a closed simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RayHit {
    BeforeY,
    AtOrAfterY,
    Misses,
}

/// Classifies the first parameter `t ≥ 0` at which `x + t (y - x)` lies in the
/// closed simplex, relative to `t = 1` (the point `y`).
pub fn segment_first_hit(x: &Point, y: &Point, simplex: &[Point]) -> Result<RayHit> {
    check_simplex(simplex)?;
    let n = x.dim();
    check_dim(n, y.dim())?;
    check_dim(n, simplex[0].dim())?;
    if x == y {
        return Err(Error::DegenerateSegment);
    }
    let k = simplex.len();
    // Unknowns (t, λ_0..λ_{k-1}):  t (y - x) - Σ λ_i v_i = -x,  Σ λ_i = 1.
    let dir = y.diff(x);
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|c| {
            let mut row = Vec::with_capacity(k + 1);
            row.push(dir[c].clone());
            row.extend(simplex.iter().map(|v| -v.0[c].clone()));
            row
        })
        .collect();
    let mut sum_row = vec![Rational::one(); k + 1];
    sum_row[0] = Rational::zero();
    a.push(sum_row);
    let mut b: Vec<Rational> = x.0.iter().map(|c| -c).collect();
    b.push(Rational::one());

    let Some(sol) = linalg::solve(&a, &b) else {
        return Ok(RayHit::Misses);
    };
    let t_min = match sol.null_space.len() {
        0 => {
            if sol.particular.iter().any(Signed::is_negative) {
                return Ok(RayHit::Misses);
            }
            sol.particular[0].clone()
        }
        1 => {
            let p = &sol.particular;
            let dirn = &sol.null_space[0];
            if dirn[0].is_zero() {
                return Err(Error::DegenerateSimplex);
            }
            // Every coordinate (t and each λ) must stay nonnegative.
            let mut lo: Option<Rational> = None;
            let mut hi: Option<Rational> = None;
            for (a0, b0) in p.iter().zip(dirn) {
                if b0.is_zero() {
                    if a0.is_negative() {
                        return Ok(RayHit::Misses);
                    }
                    continue;
                }
                let bound = -a0 / b0;
                if b0.is_positive() {
                    lo = Some(lo.map_or(bound.clone(), |l: Rational| l.max(bound)));
                } else {
                    hi = Some(hi.map_or(bound.clone(), |h: Rational| h.min(bound)));
                }
            }
            if let (Some(l), Some(h)) = (&lo, &hi) {
                if l > h {
                    return Ok(RayHit::Misses);
                }
            }
            let s = if dirn[0].is_positive() { lo } else { hi }
                .expect("t >= 0 bounds the parameter on the side that minimizes t");
            &p[0] + &s * &dirn[0]
        }
        _ => return Err(Error::DegenerateSimplex),
    };
    if t_min < Rational::one() {
        Ok(RayHit::BeforeY)
    } else {
        Ok(RayHit::AtOrAfterY)
    }
}
