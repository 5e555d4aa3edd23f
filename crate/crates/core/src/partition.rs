//! Visibility partitions of a pointed triangulation from a generic point.
//!
//! For a top simplex `F` and barycentric coordinates `λ` of `x` with respect
//! to `F`, the facet opposite `v_i` is visible from `x` exactly when
//! `λ_i < 0`. The exterior interval is `[{v_i : λ_i < 0}, F]` and the interior
//! interval is `[{v_i : λ_i > 0}, F]`.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{self, rational, Point, Rational};
use crate::lattice::Polytope;
use crate::triangulation::{Complex, PointedTriangulation, Simplex};
use crate::vectors::{self, VectorSet};
use crate::vertex_set::VertexSet;

/// Hull-avoidance record for a generic point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericCertificate {
    /// Number of simplex hulls of each dimension `0..d` checked and avoided.
    pub hulls_avoided: Vec<usize>,
    /// First simplex whose hull contains the point, if any.
    pub violation: Option<Vec<usize>>,
    /// A top simplex whose interior contains the point.
    pub containing: Vec<usize>,
}

impl GenericCertificate {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct GenericPoint {
    x: Point,
    attempts: usize,
    certificate: GenericCertificate,
}

impl GenericPoint {
    pub fn point(&self) -> &Point {
        &self.x
    }

    /// Number of candidate points tried before this one passed.
    pub fn attempts(&self) -> usize {
        self.attempts
    }

    pub fn certificate(&self) -> &GenericCertificate {
        &self.certificate
    }

    /// Accepts a caller-supplied point after checking every hull.
    pub fn check(t: &PointedTriangulation, x: Point) -> Result<GenericPoint> {
        if !all_nonzero(t, &x)? {
            let cert = hull_certificate(t, &x)?;
            return Err(Error::NonGenericPoint(
                cert.violation.unwrap_or_else(|| cert.containing.clone()),
            ));
        }
        let certificate = hull_certificate(t, &x)?;
        if let Some(v) = &certificate.violation {
            return Err(Error::NonGenericPoint(v.clone()));
        }
        Ok(GenericPoint {
            x,
            attempts: 1,
            certificate,
        })
    }
}

fn coordinates(p: &Polytope, s: Simplex, x: &Point) -> Result<Vec<Rational>> {
    geometry::barycentric(&p.points_of(s.0), x)?.ok_or_else(|| Error::NonGenericPoint(s.0.to_vec()))
}

fn all_nonzero(t: &PointedTriangulation, x: &Point) -> Result<bool> {
    let tops = t.top_simplices();
    let p = t.polytope();
    tops.par_iter()
        .map(|&s| Ok(coordinates(p, s, x)?.iter().all(|l| !l.is_zero())))
        .try_reduce(|| true, |a, b| Ok(a && b))
}

/// Checks `x` against the affine hull of every simplex of dimension `< d`.
fn hull_certificate(t: &PointedTriangulation, x: &Point) -> Result<GenericCertificate> {
    let d = t.dim();
    let p = t.polytope();
    let low: Vec<Simplex> = t
        .simplices()
        .iter()
        .copied()
        .filter(|s| s.dim() >= 0 && (s.dim() as usize) < d)
        .collect();
    let hits: Vec<bool> = low
        .par_iter()
        .map(|s| geometry::affine_hull_contains(&p.points_of(s.0), x))
        .collect::<Result<_>>()?;
    let mut hulls_avoided = vec![0; d];
    let mut violation = None;
    for (s, hit) in low.iter().zip(hits) {
        if hit {
            violation.get_or_insert_with(|| s.0.to_vec());
        } else {
            hulls_avoided[s.dim() as usize] += 1;
        }
    }
    let mut containing = Vec::new();
    for s in t.top_simplices() {
        if coordinates(p, s, x)?.iter().all(Signed::is_positive) {
            containing = s.0.to_vec();
            break;
        }
    }
    Ok(GenericCertificate {
        hulls_avoided,
        violation,
        containing,
    })
}

/// Deterministic search for a generic point inside the first top simplex.
///
/// Starts at that simplex's barycenter and moves along a seeded direction
/// `r` with `Σ r_i = 0` in barycentric coordinates, halving the step on
/// failure and redrawing `r` from a wider range every few halvings.
pub fn generic_point(t: &PointedTriangulation, seed: u64) -> Result<GenericPoint> {
    let p = t.polytope();
    let base = t.top_simplices()[0];
    let pts = p.points_of(base.0);
    let k = pts.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut range: i64 = 16;
    let mut attempts = 0;
    loop {
        let mut r: Vec<i64> = (0..k).map(|_| rng.gen_range(-range..=range)).collect();
        let total: i64 = r[..k - 1].iter().sum();
        r[k - 1] = -total;
        let max = r.iter().map(|v| v.abs()).max().unwrap_or(0);
        let mut step = Rational::one() / rational(2 * k as i64 * (max + 1));
        for _ in 0..8 {
            attempts += 1;
            let weights: Vec<Rational> = r
                .iter()
                .map(|&ri| Rational::one() / rational(k as i64) + &step * rational(ri))
                .collect();
            let x = Point::combination(&pts, &weights);
            if all_nonzero(t, &x)? {
                let certificate = hull_certificate(t, &x)?;
                debug_assert!(certificate.passed());
                return Ok(GenericPoint {
                    x,
                    attempts,
                    certificate,
                });
            }
            step /= rational(2);
        }
        range = range.saturating_mul(2);
    }
}

/// Facets of the top simplex `f` visible from `x`.
pub fn visible_facets(p: &Polytope, f: Simplex, x: &Point) -> Result<Vec<Simplex>> {
    let lambda = coordinates(p, f, x)?;
    let mut out = Vec::new();
    for (v, l) in f.0.iter().zip(&lambda) {
        if l.is_zero() {
            return Err(Error::NonGenericPoint(f.0.without(v).to_vec()));
        }
        if l.is_negative() {
            out.push(Simplex(f.0.without(v)));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionKind {
    Exterior,
    Interior,
}

/// `[lower, upper] = {G : lower ⊆ G ⊆ upper}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lower: VertexSet,
    pub upper: Simplex,
}

impl Interval {
    pub fn len(&self) -> usize {
        1 << (self.upper.0.len() - self.lower.len())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, s: Simplex) -> bool {
        self.lower.is_subset(s.0) && s.0.is_subset(self.upper.0)
    }

    pub fn elements(&self) -> impl Iterator<Item = Simplex> {
        self.lower.interval(self.upper.0).map(Simplex)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub kind: PartitionKind,
    pub dim: usize,
    pub intervals: Vec<Interval>,
}

fn build(t: &PointedTriangulation, x: &GenericPoint, kind: PartitionKind) -> Result<Partition> {
    let p = t.polytope();
    let intervals = t
        .top_simplices()
        .par_iter()
        .map(|&f| {
            let lambda = coordinates(p, f, x.point())?;
            let mut lower = VertexSet::EMPTY;
            for (v, l) in f.0.iter().zip(&lambda) {
                if l.is_zero() {
                    return Err(Error::NonGenericPoint(f.0.without(v).to_vec()));
                }
                let take = match kind {
                    PartitionKind::Exterior => l.is_negative(),
                    PartitionKind::Interior => l.is_positive(),
                };
                if take {
                    lower.insert(v);
                }
            }
            Ok(Interval { lower, upper: f })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition {
        kind,
        dim: t.dim(),
        intervals,
    })
}

/// `[G_F, F]` over all top simplices, where `G_F` is the set of vertices
/// opposite facets visible from `x`.
pub fn exterior_partition(t: &PointedTriangulation, x: &GenericPoint) -> Result<Partition> {
    build(t, x, PartitionKind::Exterior)
}

/// `[D_F, F]` over all top simplices, where `D_F` is the set of vertices
/// opposite facets not visible from `x`.
pub fn interior_partition(t: &PointedTriangulation, x: &GenericPoint) -> Result<Partition> {
    build(t, x, PartitionKind::Interior)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionCertificate {
    pub passed: bool,
    pub elements_checked: usize,
    /// A target simplex in no interval.
    pub uncovered: Option<Vec<usize>>,
    /// A simplex lying in two intervals.
    pub overlap: Option<Vec<usize>>,
    /// An interval element outside the target.
    pub stray: Option<Vec<usize>>,
}

/// A partition that has been checked against its target complex.
#[derive(Debug, Clone)]
pub struct VerifiedPartition(Partition);

impl VerifiedPartition {
    pub fn partition(&self) -> &Partition {
        &self.0
    }

    fn histogram(&self) -> Vec<i64> {
        let mut h = vec![0; self.0.dim + 2];
        for i in &self.0.intervals {
            h[i.lower.len()] += 1;
        }
        h
    }
}

impl Partition {
    /// Enumerates every interval element by element.
    pub fn verify(&self, target: &Complex) -> PartitionCertificate {
        let mut seen: HashMap<Simplex, usize> = HashMap::new();
        let mut stray = None;
        let mut elements_checked = 0;
        for i in &self.intervals {
            for s in i.elements() {
                elements_checked += 1;
                if !target.contains(&s) && stray.is_none() {
                    stray = Some(s);
                }
                *seen.entry(s).or_default() += 1;
            }
        }
        let uncovered = target.iter().find(|s| !seen.contains_key(s)).copied();
        let overlap = target
            .iter()
            .find(|s| seen.get(s).is_some_and(|&n| n > 1))
            .copied();
        PartitionCertificate {
            passed: uncovered.is_none() && overlap.is_none() && stray.is_none(),
            elements_checked,
            uncovered: uncovered.map(|s| s.0.to_vec()),
            overlap: overlap.map(|s| s.0.to_vec()),
            stray: stray.map(|s| s.0.to_vec()),
        }
    }

    pub fn verified(self, target: &Complex) -> Result<VerifiedPartition> {
        let cert = self.verify(target);
        if !cert.passed {
            return Err(Error::InvalidPartition(format!("{cert:?}")));
        }
        Ok(VerifiedPartition(self))
    }

    pub fn total_len(&self) -> usize {
        self.intervals.iter().map(Interval::len).sum()
    }
}

/// `h_i = |{F : |G_F| = i}|` for `i = 0..=d+1`.
pub fn h_from_partition(p: &VerifiedPartition) -> Result<Vec<i64>> {
    if p.0.kind != PartitionKind::Exterior {
        return Err(Error::InvalidPartition(
            "h needs an exterior partition".into(),
        ));
    }
    Ok(p.histogram())
}

/// `k_i = |{F : |D_F| = i}|` for `i = 0..=d+1`.
pub fn k_from_partition(p: &VerifiedPartition) -> Result<Vec<i64>> {
    if p.0.kind != PartitionKind::Interior {
        return Err(Error::InvalidPartition(
            "k needs an interior partition".into(),
        ));
    }
    Ok(p.histogram())
}

/// Counts f and e directly; takes h and k from verified partitions.
pub fn vector_set(t: &PointedTriangulation, x: &GenericPoint) -> Result<VectorSet> {
    let d = t.dim();
    let split = t.split_boundary_interior();
    let h = h_from_partition(&exterior_partition(t, x)?.verified(t.simplices())?)?;
    let k = k_from_partition(&interior_partition(t, x)?.verified(&split.interior)?)?;
    Ok(VectorSet {
        f: vectors::f_vector(t.simplices(), d),
        h,
        k,
        e: vectors::e_vector(&split.interior, d),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionInterval {
    pub upper: Simplex,
    pub lower: VertexSet,
    pub interior_lower: VertexSet,
}

/// Both partitions for one point, interval by interval.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionFile {
    pub point: Point,
    pub intervals: Vec<PartitionInterval>,
    pub h: Vec<i64>,
    pub k: Vec<i64>,
}

pub fn partition_file(t: &PointedTriangulation, x: &GenericPoint) -> Result<PartitionFile> {
    let ext = exterior_partition(t, x)?.verified(t.simplices())?;
    let int = interior_partition(t, x)?.verified(&t.split_boundary_interior().interior)?;
    let intervals = ext
        .partition()
        .intervals
        .iter()
        .zip(&int.partition().intervals)
        .map(|(e, i)| PartitionInterval {
            upper: e.upper,
            lower: e.lower,
            interior_lower: i.lower,
        })
        .collect();
    Ok(PartitionFile {
        point: x.point().clone(),
        intervals,
        h: h_from_partition(&ext)?,
        k: k_from_partition(&int)?,
    })
}
