//! Pointed triangulations: every face gets an apex (the argmin of a generic
//! linear functional) and is triangulated by coning its apex over the
//! triangulations of the facets that avoid it.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{self, rational, LinearFunctional, Rational};
use crate::lattice::{FaceId, FaceLattice, Polytope};
use crate::vertex_set::VertexSet;

/// A simplex spanned by polytope vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Simplex(pub VertexSet);

impl Simplex {
    pub const EMPTY: Simplex = Simplex(VertexSet::EMPTY);

    pub fn vertices(self) -> VertexSet {
        self.0
    }

    /// `|vertices| - 1`; the empty simplex has dimension -1.
    pub fn dim(self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(self, v: usize) -> bool {
        self.0.contains(v)
    }

    pub fn is_face_of(self, other: Simplex) -> bool {
        self.0.is_subset(other.0)
    }

    /// Codimension-one faces together with the vertex each one omits.
    pub fn facets(self) -> impl Iterator<Item = (usize, Simplex)> {
        self.0.iter().map(move |v| (v, Simplex(self.0.without(v))))
    }
}

impl std::fmt::Debug for Simplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl From<VertexSet> for Simplex {
    fn from(s: VertexSet) -> Self {
        Simplex(s)
    }
}

impl Serialize for Simplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// A finite abstract simplicial complex, ordered by dimension.
pub type Complex = BTreeSet<Simplex>;

/// Downward closure of a family of simplices, including the empty simplex.
pub fn closure(simplices: impl IntoIterator<Item = Simplex>) -> Complex {
    let mut out = Complex::new();
    for s in simplices {
        if out.contains(&s) {
            continue;
        }
        out.extend(s.0.subsets().map(Simplex));
    }
    out.insert(Simplex::EMPTY);
    out
}

/// Simplices of `c` not properly contained in another simplex of `c`.
pub fn maximal_simplices(c: &Complex) -> Vec<Simplex> {
    let vertices: VertexSet = c.iter().fold(VertexSet::EMPTY, |acc, s| acc.union(s.0));
    c.iter()
        .copied()
        .filter(|s| {
            vertices
                .difference(s.0)
                .iter()
                .all(|v| !c.contains(&Simplex(s.0.with(v))))
        })
        .collect()
}

pub fn star(v: usize, c: &Complex) -> Result<Complex> {
    let vs = Simplex(VertexSet::singleton(v));
    if !c.contains(&vs) {
        return Err(Error::VertexNotInComplex(v));
    }
    Ok(closure(c.iter().copied().filter(|s| s.contains(v))))
}

pub fn link(v: usize, c: &Complex) -> Result<Complex> {
    let st = star(v, c)?;
    Ok(st.into_iter().filter(|s| !s.contains(v)).collect())
}

/// The apex `v_F` of every nonempty face, and the functional that chose them.
#[derive(Debug, Clone)]
pub struct ApexAssignment {
    functional: LinearFunctional,
    apex: Vec<Option<usize>>,
}

impl ApexAssignment {
    pub fn functional(&self) -> &LinearFunctional {
        &self.functional
    }

    /// Apex of a nonempty face.
    pub fn apex(&self, face: FaceId) -> usize {
        self.apex[face].expect("the empty face has no apex")
    }

    pub fn get(&self, face: FaceId) -> Option<usize> {
        self.apex.get(face).copied().flatten()
    }

    /// Builds an assignment from explicit apexes, one per face id (`None` for
    /// the empty face). Consistency is checked when triangulating.
    pub fn from_apexes(functional: LinearFunctional, apex: Vec<Option<usize>>) -> Self {
        ApexAssignment { functional, apex }
    }
}

fn values_distinct(values: &[Rational]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].cmp(&values[b]));
    order
        .windows(2)
        .find(|w| values[w[0]] == values[w[1]])
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
}

fn functional_values(p: &Polytope, c: &LinearFunctional) -> Result<Vec<Rational>> {
    p.vertices()
        .iter()
        .map(|v| geometry::evaluate_functional(c, v))
        .collect()
}

/// A functional taking pairwise distinct values on the vertices.
///
/// Tries the weights `(1, M, M², ...)` with `M = 1 + ` the largest coordinate
/// spread first; otherwise draws integer coefficients from a ChaCha stream
/// seeded with `seed`, widening the range on each retry.
pub fn generic_functional(p: &Polytope, seed: u64) -> LinearFunctional {
    let n = p.ambient_dim();
    let spread = (0..n)
        .map(|i| {
            let col = p.vertices().iter().map(|v| &v.coords()[i]);
            let max = col.clone().max().cloned().unwrap_or_else(Rational::zero);
            let min = col.min().cloned().unwrap_or_else(Rational::zero);
            max - min
        })
        .max()
        .unwrap_or_else(Rational::zero);
    let m = Rational::one() + spread;
    let mut coeffs = Vec::with_capacity(n);
    let mut w = Rational::one();
    for _ in 0..n {
        coeffs.push(w.clone());
        w *= &m;
    }
    let horner = LinearFunctional::new(coeffs);
    if values_distinct(&functional_values(p, &horner).expect("dimensions agree")).is_none() {
        return horner;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut range: i64 = 1_000;
    loop {
        let c = LinearFunctional::new(
            (0..n)
                .map(|_| rational(rng.gen_range(-range..=range)))
                .collect(),
        );
        if values_distinct(&functional_values(p, &c).expect("dimensions agree")).is_none() {
            return c;
        }
        range = range.saturating_mul(2);
    }
}

/// `v_F = argmin_{w ∈ Vert(F)} c·w` for every nonempty face.
pub fn assign_apexes(p: &Polytope, c: &LinearFunctional) -> Result<ApexAssignment> {
    let values = functional_values(p, c)?;
    let lattice = p.lattice();
    let mut apex = vec![None; lattice.len()];
    for f in lattice.faces().iter().filter(|f| f.dim >= 0) {
        let verts = f.vertices.to_vec();
        let face_values: Vec<Rational> = verts.iter().map(|&v| values[v].clone()).collect();
        if let Some((a, b)) = values_distinct(&face_values) {
            return Err(Error::NonGenericFunctional(verts[a], verts[b]));
        }
        apex[f.id] = verts.into_iter().min_by(|&a, &b| values[a].cmp(&values[b]));
    }
    Ok(ApexAssignment {
        functional: c.clone(),
        apex,
    })
}

/// First violated pointedness condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointedViolation {
    pub condition: u8,
    pub face: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointedCertificate {
    pub passed: bool,
    pub violation: Option<PointedViolation>,
}

/// A pointed triangulation `C_P` together with the polytope it triangulates.
#[derive(Debug, Clone)]
pub struct PointedTriangulation {
    polytope: Polytope,
    apexes: ApexAssignment,
    simplices: Complex,
    per_face: Vec<Vec<Simplex>>,
}

/// `C_P = I_P ⊎ C_∂P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexSplit {
    pub boundary: Complex,
    pub interior: Complex,
}

pub(crate) fn check_apex_consistency(lattice: &FaceLattice, apexes: &ApexAssignment) -> Result<()> {
    for f in lattice.faces().iter().filter(|f| f.dim >= 0) {
        let Some(v) = apexes.get(f.id) else {
            return Err(Error::ApexInconsistency(format!(
                "face {:?} has no apex",
                f.vertices
            )));
        };
        if !f.vertices.contains(v) {
            return Err(Error::ApexInconsistency(format!(
                "apex {v} is not a vertex of face {:?}",
                f.vertices
            )));
        }
        for &g in lattice.covers(f.id) {
            let gv = lattice.face(g).vertices;
            if gv.contains(v) && apexes.get(g) != Some(v) {
                return Err(Error::ApexInconsistency(format!(
                    "apex {v} of {:?} lies in facet {:?} whose apex differs",
                    f.vertices, gv
                )));
            }
        }
    }
    Ok(())
}

/// Triangulates every face: a vertex is its own triangulation, and a face `G`
/// is the cone from `v_G` over the triangulations of the facets of `G` that do
/// not contain `v_G`, together with the triangulations of all its facets.
pub fn build_pointed_triangulation(
    p: &Polytope,
    apexes: &ApexAssignment,
) -> Result<PointedTriangulation> {
    let lattice = p.lattice();
    check_apex_consistency(lattice, apexes)?;
    let mut per_face: Vec<Vec<Simplex>> = vec![Vec::new(); lattice.len()];
    for f in lattice.faces().iter().filter(|f| f.dim >= 0) {
        let v = apexes.apex(f.id);
        let mut acc: HashSet<Simplex> = HashSet::new();
        acc.insert(Simplex(VertexSet::singleton(v)));
        for &g in lattice.covers(f.id) {
            let cone = !lattice.face(g).vertices.contains(v);
            for &s in &per_face[g] {
                acc.insert(s);
                if cone {
                    acc.insert(Simplex(s.0.with(v)));
                }
            }
        }
        let mut list: Vec<Simplex> = acc.into_iter().collect();
        list.sort();
        per_face[f.id] = list;
    }
    let mut simplices: Complex = per_face[lattice.top()].iter().copied().collect();
    simplices.insert(Simplex::EMPTY);
    let t = PointedTriangulation {
        polytope: p.clone(),
        apexes: apexes.clone(),
        simplices,
        per_face,
    };
    if cfg!(debug_assertions) {
        let cert = verify_pointed(&t);
        debug_assert!(cert.passed, "construction produced {:?}", cert.violation);
    }
    Ok(t)
}

impl PointedTriangulation {
    /// Generic functional, apexes and triangulation in one step.
    pub fn new(p: &Polytope, seed: u64) -> Result<Self> {
        let c = generic_functional(p, seed);
        let a = assign_apexes(p, &c)?;
        build_pointed_triangulation(p, &a)
    }

    /// A triangulation given by its maximal simplices, with per-face
    /// subcomplexes taken as the simplices lying in each face. Nothing is
    /// verified; see [`verify_pointed`].
    pub fn from_maximal_simplices(
        p: &Polytope,
        apexes: ApexAssignment,
        maximal: impl IntoIterator<Item = VertexSet>,
    ) -> Self {
        let simplices = closure(maximal.into_iter().map(Simplex));
        let per_face = p
            .lattice()
            .faces()
            .iter()
            .map(|f| {
                if f.dim < 0 {
                    return Vec::new();
                }
                simplices
                    .iter()
                    .copied()
                    .filter(|s| !s.0.is_empty() && s.0.is_subset(f.vertices))
                    .collect()
            })
            .collect();
        PointedTriangulation {
            polytope: p.clone(),
            apexes,
            simplices,
            per_face,
        }
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn apexes(&self) -> &ApexAssignment {
        &self.apexes
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    /// All simplices of `C_P`, the empty simplex included.
    pub fn simplices(&self) -> &Complex {
        &self.simplices
    }

    /// `v_P`.
    pub fn apex(&self) -> usize {
        self.apexes.apex(self.polytope.lattice().top())
    }

    /// The `d`-simplices of `C_P`, in sorted order.
    pub fn top_simplices(&self) -> Vec<Simplex> {
        let d = self.dim() as isize;
        self.simplices
            .iter()
            .copied()
            .filter(|s| s.dim() == d)
            .collect()
    }

    /// `C_F`, including the empty simplex.
    pub fn face_complex(&self, face: FaceId) -> Complex {
        let mut c: Complex = self.per_face[face].iter().copied().collect();
        c.insert(Simplex::EMPTY);
        c
    }

    /// `C_F` evaluated literally: the empty simplex and `{v_{G_1}, ..., v_{G_k}}`
    /// for every chain of faces `G_1 ⊋ ... ⊋ G_k` of `F` with
    /// `v_{G_i} ∉ G_{i+1}`.
    pub fn chain_complex(&self, face: FaceId) -> Complex {
        let lattice = self.polytope.lattice();
        let faces: Vec<FaceId> = lattice
            .subfaces(face)
            .filter(|&g| lattice.face(g).dim >= 0)
            .collect();
        let mut out = Complex::new();
        out.insert(Simplex::EMPTY);
        let mut stack: Vec<(FaceId, VertexSet)> = faces
            .iter()
            .map(|&g| (g, VertexSet::singleton(self.apexes.apex(g))))
            .collect();
        while let Some((g, acc)) = stack.pop() {
            out.insert(Simplex(acc));
            let gv = lattice.face(g).vertices;
            let vg = self.apexes.apex(g);
            for &h in &faces {
                let hv = lattice.face(h).vertices;
                if hv.is_proper_subset(gv) && !hv.contains(vg) {
                    stack.push((h, acc.with(self.apexes.apex(h))));
                }
            }
        }
        out
    }

    /// Boundary simplices lie in a proper face of `P`; the rest are interior.
    pub fn split_boundary_interior(&self) -> ComplexSplit {
        let lattice = self.polytope.lattice();
        let top = lattice.top();
        let proper: Vec<VertexSet> = if self.dim() == 0 {
            vec![VertexSet::EMPTY]
        } else {
            lattice
                .by_dim(self.dim() as isize - 1)
                .iter()
                .map(|&f| lattice.face(f).vertices)
                .collect()
        };
        debug_assert!(proper.iter().all(|&f| lattice.id_of(f) != Some(top)));
        let (boundary, interior) = self
            .simplices
            .iter()
            .partition(|s| proper.iter().any(|&f| s.0.is_subset(f)));
        ComplexSplit { boundary, interior }
    }

    pub fn link_of_apex(&self) -> Complex {
        link(self.apex(), &self.simplices).expect("the apex is a vertex of C_P")
    }

    pub fn to_file(&self) -> TriangulationFile {
        let lattice = self.polytope.lattice();
        let split = self.split_boundary_interior();
        TriangulationFile {
            faces: lattice
                .faces()
                .iter()
                .map(|f| (f.id, f.vertices.to_vec()))
                .collect(),
            apexes: lattice
                .faces()
                .iter()
                .filter_map(|f| self.apexes.get(f.id).map(|v| (f.id, v)))
                .collect(),
            simplices: self.simplices.iter().copied().collect(),
            boundary: split.boundary.into_iter().collect(),
            interior: split.interior.into_iter().collect(),
        }
    }
}

/// Serialized triangulation. Face ids index `faces`.
#[derive(Debug, Clone, Serialize)]
pub struct TriangulationFile {
    pub faces: BTreeMap<FaceId, Vec<usize>>,
    pub apexes: BTreeMap<FaceId, usize>,
    pub simplices: Vec<Simplex>,
    pub boundary: Vec<Simplex>,
    pub interior: Vec<Simplex>,
}

/// Checks the three pointedness conditions in order and reports the first
/// failure.
pub fn verify_pointed(t: &PointedTriangulation) -> PointedCertificate {
    let lattice = t.polytope.lattice();
    let fail = |condition: u8, face: VertexSet, detail: String| PointedCertificate {
        passed: false,
        violation: Some(PointedViolation {
            condition,
            face: face.to_vec(),
            detail,
        }),
    };
    let faces: Vec<_> = lattice.faces().iter().filter(|f| f.dim >= 0).collect();

    for f in &faces {
        let Some(v) = t.apexes.get(f.id) else {
            return fail(1, f.vertices, "face has no apex".into());
        };
        let cf = t.face_complex(f.id);
        for s in maximal_simplices(&cf) {
            if s.dim() != f.dim {
                return fail(
                    1,
                    f.vertices,
                    format!("maximal simplex {s:?} has wrong dimension"),
                );
            }
            if !s.contains(v) {
                return fail(
                    1,
                    f.vertices,
                    format!("maximal simplex {s:?} misses apex {v}"),
                );
            }
        }
    }

    for a in &faces {
        for b in &faces {
            let (va, vb) = (t.apexes.get(a.id), t.apexes.get(b.id));
            let (Some(va), Some(vb)) = (va, vb) else {
                continue;
            };
            let common = a.vertices.intersection(b.vertices);
            if common.contains(va) && common.contains(vb) && va != vb {
                return fail(
                    2,
                    a.vertices,
                    format!("apexes {va} and {vb} both lie in {common:?}"),
                );
            }
        }
    }

    for f in &faces {
        let v = t.apexes.apex(f.id);
        let cf = &t.per_face[f.id];
        for w in f.vertices.without(v).iter() {
            let edge = Simplex(VertexSet::singleton(v).with(w));
            if cf.binary_search(&edge).is_err() {
                return fail(3, f.vertices, format!("edge {edge:?} missing"));
            }
        }
    }

    PointedCertificate {
        passed: true,
        violation: None,
    }
}

/// Result of the pseudomanifold-with-boundary check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PseudomanifoldCertificate {
    pub passed: bool,
    pub ridges_checked: usize,
    /// First ridge with the wrong number of cofaces: (ridge, on boundary, cofaces).
    pub violation: Option<(Vec<usize>, bool, usize)>,
}

/// Every `(d-1)`-simplex lies in exactly one `d`-simplex if it is on the
/// boundary and in exactly two otherwise.
pub fn pseudomanifold_check(t: &PointedTriangulation) -> PseudomanifoldCertificate {
    let d = t.dim() as isize;
    let split = t.split_boundary_interior();
    let tops = t.top_simplices();
    let mut counts: BTreeMap<Simplex, usize> = t
        .simplices
        .iter()
        .filter(|s| s.dim() == d - 1)
        .map(|s| (*s, 0))
        .collect();
    for s in &tops {
        for (_, r) in s.facets() {
            *counts.entry(r).or_default() += 1;
        }
    }
    let ridges_checked = counts.len();
    for (r, n) in counts {
        let on_boundary = split.boundary.contains(&r);
        let expected = if on_boundary { 1 } else { 2 };
        if n != expected {
            return PseudomanifoldCertificate {
                passed: false,
                ridges_checked,
                violation: Some((r.0.to_vec(), on_boundary, n)),
            };
        }
    }
    PseudomanifoldCertificate {
        passed: true,
        ridges_checked,
        violation: None,
    }
}

/// Closure under faces, closure under intersection, and affine independence
/// of every top simplex.
pub fn is_simplicial_complex(t: &PointedTriangulation) -> bool {
    let c = &t.simplices;
    let closed = c
        .iter()
        .all(|s| s.0.subsets().all(|f| c.contains(&Simplex(f))));
    let tops = maximal_simplices(c);
    let meets = tops.iter().all(|a| {
        tops.iter()
            .all(|b| c.contains(&Simplex(a.0.intersection(b.0))))
    });
    let independent = tops.iter().all(|s| {
        let pts = t.polytope.points_of(s.0);
        geometry::affine_rank(&pts).is_ok_and(|r| r + 1 == pts.len())
    });
    closed && meets && independent
}
