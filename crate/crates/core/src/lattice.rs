//! Face lattices of convex polytopes, either computed from vertex coordinates
//! by brute-force facet search or ingested from supplied face data.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, linalg, Hyperplane, Point, Sign};
use crate::vertex_set::VertexSet;

pub type FaceId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub vertices: VertexSet,
    /// `-1` for the empty face.
    pub dim: isize,
}

/// All faces of a polytope, identified by their vertex sets and graded by
/// dimension. Face ids follow the order `(dim, vertex set)`, so the empty face
/// is id 0 and the polytope itself is the last id.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    faces: Vec<Face>,
    index: HashMap<VertexSet, FaceId>,
    by_dim: Vec<Vec<FaceId>>,
    covers: Vec<Vec<FaceId>>,
}

impl FaceLattice {
    /// Assembles a lattice from vertex sets and their dimensions. The empty set
    /// must be present with dimension -1.
    pub(crate) fn assemble(dims: HashMap<VertexSet, isize>) -> Result<Self> {
        if dims.get(&VertexSet::EMPTY) != Some(&-1) {
            return Err(Error::InvalidPolytope(
                "face data lacks the empty face".into(),
            ));
        }
        let mut order: Vec<(isize, VertexSet)> = dims.iter().map(|(s, d)| (*d, *s)).collect();
        order.sort();
        let top_dim = order.last().map_or(-1, |(d, _)| *d);
        let faces: Vec<Face> = order
            .iter()
            .enumerate()
            .map(|(id, &(dim, vertices))| Face { id, vertices, dim })
            .collect();
        let index = faces.iter().map(|f| (f.vertices, f.id)).collect();
        let mut by_dim = vec![Vec::new(); (top_dim + 2) as usize];
        for f in &faces {
            by_dim[(f.dim + 1) as usize].push(f.id);
        }
        let covers = faces
            .iter()
            .map(|f| {
                if f.dim < 0 {
                    return Vec::new();
                }
                by_dim[f.dim as usize]
                    .iter()
                    .copied()
                    .filter(|&g| faces[g].vertices.is_proper_subset(f.vertices))
                    .collect()
            })
            .collect();
        Ok(FaceLattice {
            faces,
            index,
            by_dim,
            covers,
        })
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn id_of(&self, vertices: VertexSet) -> Option<FaceId> {
        self.index.get(&vertices).copied()
    }

    /// Dimension of the polytope (the top face).
    pub fn dim(&self) -> isize {
        self.by_dim.len() as isize - 2
    }

    pub fn top(&self) -> FaceId {
        self.faces.len() - 1
    }

    pub fn empty(&self) -> FaceId {
        0
    }

    /// Faces of dimension `k`, `-1 <= k <= dim`.
    pub fn by_dim(&self, k: isize) -> &[FaceId] {
        usize::try_from(k + 1)
            .ok()
            .and_then(|i| self.by_dim.get(i))
            .map_or(&[], Vec::as_slice)
    }

    /// Faces covered by `id`, i.e. its facets.
    pub fn covers(&self, id: FaceId) -> &[FaceId] {
        &self.covers[id]
    }

    /// All faces contained in `id`, including `id` and the empty face.
    pub fn subfaces(&self, id: FaceId) -> impl Iterator<Item = FaceId> + '_ {
        let top = self.faces[id].vertices;
        self.faces
            .iter()
            .filter(move |f| f.vertices.is_subset(top))
            .map(|f| f.id)
    }

    /// Face counts `f_{-1}, f_0, ..., f_d`.
    pub fn face_counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn is_closed_under_intersection(&self) -> bool {
        self.faces.iter().all(|a| {
            self.faces.iter().all(|b| {
                self.index
                    .contains_key(&a.vertices.intersection(b.vertices))
            })
        })
    }

    /// Euler's relation for the boundary: `Σ_{k<d} (-1)^k f_k = 1 - (-1)^d`.
    pub fn satisfies_euler_relation(&self) -> bool {
        let d = self.dim();
        let lhs: i64 = (0..d)
            .map(|k| {
                let n = self.by_dim(k).len() as i64;
                if k % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum();
        let rhs = if d % 2 == 0 { 0 } else { 2 };
        lhs == rhs
    }

    /// The set of vertex sets, for comparing lattices.
    pub fn vertex_sets(&self) -> BTreeSet<VertexSet> {
        self.faces.iter().map(|f| f.vertices).collect()
    }
}

/// A convex polytope with rational vertices and its face lattice.
#[derive(Debug, Clone)]
pub struct Polytope {
    name: String,
    ambient_dim: usize,
    vertices: Vec<Point>,
    dim: usize,
    lattice: FaceLattice,
}

fn validate_vertices(vertices: &[Point]) -> Result<usize> {
    let first = vertices.first().ok_or(Error::EmptyPointSet)?;
    if vertices.len() > VertexSet::MAX_VERTICES {
        return Err(Error::TooManyVertices {
            max: VertexSet::MAX_VERTICES,
            found: vertices.len(),
        });
    }
    for p in vertices {
        if p.dim() != first.dim() {
            return Err(Error::DimensionMismatch {
                expected: first.dim(),
                found: p.dim(),
            });
        }
    }
    let distinct: HashSet<&Point> = vertices.iter().collect();
    if distinct.len() != vertices.len() {
        return Err(Error::InvalidPolytope(
            "vertices are not pairwise distinct".into(),
        ));
    }
    Ok(first.dim())
}

impl Polytope {
    /// Computes the face lattice from the coordinates by facet search.
    pub fn from_vertices(name: impl Into<String>, vertices: Vec<Point>) -> Result<Self> {
        let ambient_dim = validate_vertices(&vertices)?;
        let lattice = build_face_lattice(&vertices)?;
        Self::checked(name.into(), ambient_dim, vertices, lattice)
    }

    /// Uses supplied faces (facets, or any family whose intersection closure
    /// is the full lattice) instead of searching for facets.
    pub fn with_faces(
        name: impl Into<String>,
        vertices: Vec<Point>,
        faces: &[Vec<usize>],
    ) -> Result<Self> {
        let ambient_dim = validate_vertices(&vertices)?;
        let n = vertices.len();
        let mut sets = Vec::with_capacity(faces.len());
        for f in faces {
            if let Some(&bad) = f.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidPolytope(format!(
                    "face refers to vertex {bad}"
                )));
            }
            sets.push(f.iter().copied().collect::<VertexSet>());
        }
        let all = VertexSet::full(n);
        let closed = intersection_closure(sets.into_iter().filter(|s| *s != all), all);
        let lattice = FaceLattice::assemble(dims_by_affine_rank(&vertices, closed)?)?;
        if !lattice.satisfies_euler_relation() {
            return Err(Error::InvalidPolytope(
                "supplied faces violate Euler's relation".into(),
            ));
        }
        Self::checked(name.into(), ambient_dim, vertices, lattice)
    }

    /// Trusted constructor for combinatorially built lattices.
    pub(crate) fn from_parts(
        name: String,
        vertices: Vec<Point>,
        lattice: FaceLattice,
    ) -> Result<Self> {
        let ambient_dim = validate_vertices(&vertices)?;
        Self::checked(name, ambient_dim, vertices, lattice)
    }

    fn checked(
        name: String,
        ambient_dim: usize,
        vertices: Vec<Point>,
        lattice: FaceLattice,
    ) -> Result<Self> {
        for v in 0..vertices.len() {
            let id = lattice.id_of(VertexSet::singleton(v));
            if id.map(|i| lattice.face(i).dim) != Some(0) {
                return Err(Error::InvalidPolytope(format!(
                    "vertex {v} is not extremal"
                )));
            }
        }
        let dim = lattice.dim().max(0) as usize;
        if dim > ambient_dim {
            return Err(Error::InvalidPolytope(
                "dimension exceeds ambient dimension".into(),
            ));
        }
        Ok(Polytope {
            name,
            ambient_dim,
            vertices,
            dim,
            lattice,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    pub fn points_of(&self, set: VertexSet) -> Vec<Point> {
        set.iter().map(|i| self.vertices[i].clone()).collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertices.len())
    }

    pub fn to_file(&self) -> PolytopeFile {
        PolytopeFile {
            name: self.name.clone(),
            vertices: self.vertices.clone(),
            faces: Some(
                self.lattice
                    .faces()
                    .iter()
                    .filter(|f| f.dim >= 0)
                    .map(|f| f.vertices.to_vec())
                    .collect(),
            ),
        }
    }
}

/// On-disk polytope: rational vertex strings and optional face vertex lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub name: String,
    pub vertices: Vec<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<usize>>>,
}

impl PolytopeFile {
    pub fn into_polytope(self) -> Result<Polytope> {
        match self.faces {
            Some(faces) => Polytope::with_faces(self.name, self.vertices, &faces),
            None => Polytope::from_vertices(self.name, self.vertices),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Coordinate indices onto which the affine hull projects isomorphically.
fn hull_coordinates(vertices: &[Point]) -> Vec<usize> {
    let mut rows: Vec<_> = vertices[1..].iter().map(|p| p.diff(&vertices[0])).collect();
    linalg::rref(&mut rows)
}

fn project(p: &Point, coords: &[usize]) -> Point {
    Point::new(coords.iter().map(|&c| p.coords()[c].clone()).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Facets of `conv(vertices)` as canonical hyperplanes in affine-hull
/// coordinates together with their incident vertex sets, sorted by vertex set.
pub fn enumerate_facets(vertices: &[Point]) -> Result<Vec<(Hyperplane, VertexSet)>> {
    validate_vertices(vertices)?;
    let coords = hull_coordinates(vertices);
    let d = coords.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    if vertices.len() < d + 1 {
        return Err(Error::TooFewVertices {
            needed: d + 1,
            found: vertices.len(),
        });
    }
    let projected: Vec<Point> = vertices.iter().map(|p| project(p, &coords)).collect();
    let candidates = combinations(vertices.len(), d);
    let found: Vec<(Hyperplane, VertexSet)> = candidates
        .par_iter()
        .filter_map(|subset| {
            let pts: Vec<Point> = subset.iter().map(|&i| projected[i].clone()).collect();
            let h = Hyperplane::through(&pts).ok()?;
            let mut incident = VertexSet::EMPTY;
            let (mut pos, mut neg) = (false, false);
            for (i, p) in projected.iter().enumerate() {
                match geometry::side_of_hyperplane(&h, p).ok()? {
                    Sign::Zero => incident.insert(i),
                    Sign::Positive => pos = true,
                    Sign::Negative => neg = true,
                }
                if pos && neg {
                    return None;
                }
            }
            Some((h, incident))
        })
        .collect();
    let mut seen = HashSet::new();
    let mut facets: Vec<(Hyperplane, VertexSet)> = found
        .into_iter()
        .filter(|(h, _)| seen.insert(h.clone()))
        .collect();
    facets.sort_by_key(|(_, s)| *s);
    Ok(facets)
}

fn intersection_closure(
    generators: impl IntoIterator<Item = VertexSet>,
    all: VertexSet,
) -> BTreeSet<VertexSet> {
    let gens: Vec<VertexSet> = generators
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut closed: BTreeSet<VertexSet> = gens.iter().copied().collect();
    let mut work: Vec<VertexSet> = gens.clone();
    while let Some(s) = work.pop() {
        for g in &gens {
            let t = s.intersection(*g);
            if closed.insert(t) {
                work.push(t);
            }
        }
    }
    closed.insert(VertexSet::EMPTY);
    closed.insert(all);
    closed
}

fn dims_by_affine_rank(
    vertices: &[Point],
    sets: BTreeSet<VertexSet>,
) -> Result<HashMap<VertexSet, isize>> {
    sets.into_iter()
        .map(|s| {
            let d = if s.is_empty() {
                -1
            } else {
                let pts: Vec<Point> = s.iter().map(|i| vertices[i].clone()).collect();
                geometry::affine_rank(&pts)? as isize
            };
            Ok((s, d))
        })
        .collect()
}

/// Full face lattice: every intersection of facets, plus the polytope and the
/// empty face, each graded by the affine rank of its vertices.
pub fn build_face_lattice(vertices: &[Point]) -> Result<FaceLattice> {
    let facets = enumerate_facets(vertices)?;
    let all = VertexSet::full(vertices.len());
    let closed = intersection_closure(facets.into_iter().map(|(_, s)| s), all);
    FaceLattice::assemble(dims_by_affine_rank(vertices, closed)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_vertices(d: usize) -> Vec<Point> {
        (0..1u32 << d)
            .map(|m| {
                Point::from_integers(&(0..d).map(|i| i64::from(m >> i & 1)).collect::<Vec<_>>())
            })
            .collect()
    }

    fn simplex_vertices(d: usize) -> Vec<Point> {
        let mut v = vec![Point::origin(d)];
        for i in 0..d {
            let mut c = vec![0; d];
            c[i] = 1;
            v.push(Point::from_integers(&c));
        }
        v
    }

    fn cross_vertices(d: usize) -> Vec<Point> {
        let mut v = Vec::new();
        for i in 0..d {
            for s in [1, -1] {
                let mut c = vec![0; d];
                c[i] = s;
                v.push(Point::from_integers(&c));
            }
        }
        v
    }

    /// Brute force over vertex triples: a triple spans a facet plane of the
    /// 3-cube iff the plane fixes one coordinate.
    #[test]
    fn cube_has_six_facets_of_four_vertices() {
        let facets = enumerate_facets(&cube_vertices(3)).unwrap();
        assert_eq!(facets.len(), 6);
        assert!(facets.iter().all(|(_, s)| s.len() == 4));
        let mut oracle = BTreeSet::new();
        for axis in 0..3 {
            for val in 0..2u32 {
                oracle.insert(
                    (0..8u32)
                        .filter(|m| m >> axis & 1 == val)
                        .map(|m| m as usize)
                        .collect::<VertexSet>(),
                );
            }
        }
        let got: BTreeSet<VertexSet> = facets.into_iter().map(|(_, s)| s).collect();
        assert_eq!(got, oracle);
    }

    #[test]
    fn simplex_has_d_plus_one_facets() {
        for d in 1..=4 {
            let facets = enumerate_facets(&simplex_vertices(d)).unwrap();
            assert_eq!(facets.len(), d + 1);
            assert!(facets.iter().all(|(_, s)| s.len() == d));
        }
    }

    #[test]
    fn cross_polytope_has_eight_triangles() {
        let facets = enumerate_facets(&cross_vertices(3)).unwrap();
        assert_eq!(facets.len(), 8);
        // each facet picks one of ±e_i per axis
        for (_, s) in &facets {
            assert_eq!(s.len(), 3);
            for axis in 0..3 {
                assert!(s.contains(2 * axis) ^ s.contains(2 * axis + 1));
            }
        }
    }

    #[test]
    fn lattice_counts() {
        let cube = build_face_lattice(&cube_vertices(3)).unwrap();
        assert_eq!(cube.len(), 28);
        assert_eq!(cube.face_counts(), vec![1, 8, 12, 6, 1]);
        for d in 0..=4 {
            assert_eq!(
                build_face_lattice(&simplex_vertices(d)).unwrap().len(),
                1 << (d + 1)
            );
        }
        let seg = build_face_lattice(&simplex_vertices(1)).unwrap();
        assert_eq!(seg.face_counts(), vec![1, 2, 1]);
        assert!(cube.is_closed_under_intersection());
        assert!(cube.satisfies_euler_relation());
    }

    #[test]
    fn embedded_square_is_projected_to_its_hull() {
        // a square lying in the plane x + y + z = 1 of ℚ^3
        let v = vec![
            Point::from_integers(&[1, 0, 0]),
            Point::from_integers(&[0, 1, 0]),
            Point::from_integers(&[1, 1, -1]),
            Point::from_integers(&[0, 0, 1]),
        ];
        let p = Polytope::from_vertices("tilted", v).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.lattice().face_counts(), vec![1, 4, 4, 1]);
    }

    #[test]
    fn rejects_bad_vertex_sets() {
        assert!(matches!(
            Polytope::from_vertices("e", vec![]),
            Err(Error::EmptyPointSet)
        ));
        let dup = vec![Point::from_integers(&[0]), Point::from_integers(&[0])];
        assert!(Polytope::from_vertices("d", dup).is_err());
        let interior = vec![
            Point::from_integers(&[0]),
            Point::from_integers(&[1]),
            Point::from_integers(&[2]),
        ];
        assert!(matches!(
            Polytope::from_vertices("i", interior),
            Err(Error::InvalidPolytope(_))
        ));
        let mixed = vec![Point::from_integers(&[0]), Point::from_integers(&[0, 1])];
        assert!(matches!(
            Polytope::from_vertices("m", mixed),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn supplied_facets_skip_the_search() {
        let v = cube_vertices(2);
        let p = Polytope::with_faces(
            "sq",
            v.clone(),
            &[vec![0, 1], vec![2, 3], vec![0, 2], vec![1, 3]],
        )
        .unwrap();
        assert_eq!(p.lattice().face_counts(), vec![1, 4, 4, 1]);
        // a single diagonal is not a valid facet description
        assert!(Polytope::with_faces("bad", v, &[vec![0, 3]]).is_err());
    }

    #[test]
    fn single_point_lattice() {
        let p = Polytope::from_vertices("pt", vec![Point::from_integers(&[3, 4])]).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.lattice().face_counts(), vec![1, 1]);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }
}
