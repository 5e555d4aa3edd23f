//! Builtin polytope families. Their face lattices are built combinatorially,
//! never by facet search, so large cubes stay cheap.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{rational, Point};
use crate::lattice::{FaceLattice, Polytope};
use crate::vertex_set::VertexSet;

/// A parsed builtin description such as `cube:3` or `pyramid:square`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuiltinSpec {
    Simplex(usize),
    Cube(usize),
    Cross(usize),
    Pyramid(Box<BuiltinSpec>),
    Prism(Box<BuiltinSpec>),
    Bipyramid(Box<BuiltinSpec>),
}

impl BuiltinSpec {
    pub fn build(&self) -> Result<Polytope> {
        match self {
            BuiltinSpec::Simplex(d) => simplex(*d),
            BuiltinSpec::Cube(d) => cube(*d),
            BuiltinSpec::Cross(d) => cross(*d),
            BuiltinSpec::Pyramid(b) => pyramid(&b.build()?),
            BuiltinSpec::Prism(b) => prism(&b.build()?),
            BuiltinSpec::Bipyramid(b) => bipyramid(&b.build()?),
        }
    }
}

impl fmt::Display for BuiltinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinSpec::Simplex(d) => write!(f, "simplex:{d}"),
            BuiltinSpec::Cube(d) => write!(f, "cube:{d}"),
            BuiltinSpec::Cross(d) => write!(f, "cross:{d}"),
            BuiltinSpec::Pyramid(b) => write!(f, "pyramid:{b}"),
            BuiltinSpec::Prism(b) => write!(f, "prism:{b}"),
            BuiltinSpec::Bipyramid(b) => write!(f, "bipyramid:{b}"),
        }
    }
}

impl FromStr for BuiltinSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownBuiltin(s.to_string());
        let s = s.trim();
        match s {
            "point" => return Ok(BuiltinSpec::Simplex(0)),
            "segment" => return Ok(BuiltinSpec::Simplex(1)),
            "triangle" => return Ok(BuiltinSpec::Simplex(2)),
            "square" => return Ok(BuiltinSpec::Cube(2)),
            _ => {}
        }
        let (family, rest) = s.split_once(':').ok_or_else(bad)?;
        let dim = || rest.trim().parse::<usize>().map_err(|_| bad());
        match family.trim() {
            "simplex" => Ok(BuiltinSpec::Simplex(dim()?)),
            "cube" => Ok(BuiltinSpec::Cube(dim()?)),
            "cross" => Ok(BuiltinSpec::Cross(dim()?)),
            "pyramid" => Ok(BuiltinSpec::Pyramid(Box::new(rest.parse()?))),
            "prism" => Ok(BuiltinSpec::Prism(Box::new(rest.parse()?))),
            "bipyramid" => Ok(BuiltinSpec::Bipyramid(Box::new(rest.parse()?))),
            _ => Err(bad()),
        }
    }
}

fn too_many(found: usize) -> Error {
    Error::TooManyVertices {
        max: VertexSet::MAX_VERTICES,
        found,
    }
}

fn finish(name: String, vertices: Vec<Point>, dims: HashMap<VertexSet, isize>) -> Result<Polytope> {
    Polytope::from_parts(name, vertices, FaceLattice::assemble(dims)?)
}

/// Standard simplex: the origin and the unit vectors of ℚ^d.
pub fn simplex(d: usize) -> Result<Polytope> {
    if d + 1 > VertexSet::MAX_VERTICES {
        return Err(too_many(d + 1));
    }
    let mut vertices = vec![Point::origin(d)];
    for i in 0..d {
        let mut c = vec![0; d];
        c[i] = 1;
        vertices.push(Point::from_integers(&c));
    }
    let full = VertexSet::full(d + 1);
    let dims = full.subsets().map(|s| (s, s.len() as isize - 1)).collect();
    finish(format!("simplex({d})"), vertices, dims)
}

/// Unit cube `{0,1}^d`; vertex `m` has coordinate `i` equal to bit `i` of `m`.
pub fn cube(d: usize) -> Result<Polytope> {
    if d > 7 {
        return Err(too_many(1usize.checked_shl(d as u32).unwrap_or(usize::MAX)));
    }
    let n = 1usize << d;
    let vertices = (0..n)
        .map(|m| Point::from_integers(&(0..d).map(|i| (m >> i & 1) as i64).collect::<Vec<_>>()))
        .collect();
    let mut dims = HashMap::new();
    dims.insert(VertexSet::EMPTY, -1);
    // Each face fixes the coordinates in `fixed` to the bits of `values`.
    for fixed in 0..n {
        let mut values = fixed;
        loop {
            let set: VertexSet = (0..n).filter(|m| m & fixed == values).collect();
            dims.insert(set, (d - fixed.count_ones() as usize) as isize);
            if values == 0 {
                break;
            }
            values = (values - 1) & fixed;
        }
    }
    finish(format!("cube({d})"), vertices, dims)
}

/// Cross-polytope with vertex `2i` at `+e_i` and `2i+1` at `-e_i`.
pub fn cross(d: usize) -> Result<Polytope> {
    if d == 0 {
        return Err(Error::InvalidDimension(
            "cross-polytope needs d >= 1".into(),
        ));
    }
    if 2 * d > VertexSet::MAX_VERTICES {
        return Err(too_many(2 * d));
    }
    let mut vertices = Vec::with_capacity(2 * d);
    for i in 0..d {
        for s in [1, -1] {
            let mut c = vec![0; d];
            c[i] = s;
            vertices.push(Point::from_integers(&c));
        }
    }
    // Proper faces choose at most one of ±e_i per axis: 3^d sets, built axis by axis.
    let mut proper = vec![VertexSet::EMPTY];
    for i in 0..d {
        proper = proper
            .into_iter()
            .flat_map(|s| [s, s.with(2 * i), s.with(2 * i + 1)])
            .collect();
    }
    let mut dims: HashMap<VertexSet, isize> = proper
        .into_iter()
        .map(|s| (s, s.len() as isize - 1))
        .collect();
    dims.insert(VertexSet::full(2 * d), d as isize);
    finish(format!("cross({d})"), vertices, dims)
}

fn lift(base: &Polytope, height: i64) -> Vec<Point> {
    base.vertices()
        .iter()
        .map(|p| p.lifted(rational(height)))
        .collect()
}

/// Cone over `base` with apex above its barycenter.
pub fn pyramid(base: &Polytope) -> Result<Polytope> {
    let m = base.vertices().len();
    if m + 1 > VertexSet::MAX_VERTICES {
        return Err(too_many(m + 1));
    }
    let mut vertices = lift(base, 0);
    vertices.push(Point::barycenter(base.vertices()).lifted(rational(1)));
    let mut dims = HashMap::new();
    for f in base.lattice().faces() {
        dims.insert(f.vertices, f.dim);
        dims.insert(f.vertices.with(m), f.dim + 1);
    }
    finish(format!("pyramid({})", base.name()), vertices, dims)
}

/// `base × [0, 1]`; vertex `i + m` is the top copy of base vertex `i`.
pub fn prism(base: &Polytope) -> Result<Polytope> {
    let m = base.vertices().len();
    if 2 * m > VertexSet::MAX_VERTICES {
        return Err(too_many(2 * m));
    }
    let mut vertices = lift(base, 0);
    vertices.extend(lift(base, 1));
    let shift = |s: VertexSet| -> VertexSet { s.iter().map(|i| i + m).collect() };
    let mut dims = HashMap::new();
    dims.insert(VertexSet::EMPTY, -1);
    for f in base.lattice().faces().iter().filter(|f| f.dim >= 0) {
        let top = shift(f.vertices);
        dims.insert(f.vertices, f.dim);
        dims.insert(top, f.dim);
        dims.insert(f.vertices.union(top), f.dim + 1);
    }
    finish(format!("prism({})", base.name()), vertices, dims)
}

/// Two cones over `base`, apexes above and below its barycenter.
pub fn bipyramid(base: &Polytope) -> Result<Polytope> {
    let m = base.vertices().len();
    if base.dim() == 0 {
        return Err(Error::InvalidDimension(
            "bipyramid base needs dimension >= 1".into(),
        ));
    }
    if m + 2 > VertexSet::MAX_VERTICES {
        return Err(too_many(m + 2));
    }
    let center = Point::barycenter(base.vertices());
    let mut vertices = lift(base, 0);
    vertices.push(center.lifted(rational(1)));
    vertices.push(center.lifted(rational(-1)));
    let top = base.lattice().top();
    let mut dims = HashMap::new();
    for f in base.lattice().faces().iter().filter(|f| f.id != top) {
        dims.insert(f.vertices, f.dim);
        dims.insert(f.vertices.with(m), f.dim + 1);
        dims.insert(f.vertices.with(m + 1), f.dim + 1);
    }
    dims.insert(VertexSet::full(m + 2), base.dim() as isize + 1);
    finish(format!("bipyramid({})", base.name()), vertices, dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_face_lattice;

    fn spec(s: &str) -> Polytope {
        s.parse::<BuiltinSpec>().unwrap().build().unwrap()
    }

    #[test]
    fn cube_three_has_28_faces() {
        let c = spec("cube:3");
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c.lattice().len(), 28);
        assert_eq!(c.lattice().face_counts(), vec![1, 8, 12, 6, 1]);
    }

    #[test]
    fn cross_three_has_eight_facets() {
        let c = spec("cross:3");
        assert_eq!(c.vertices().len(), 6);
        assert_eq!(c.lattice().by_dim(2).len(), 8);
        assert_eq!(spec("cross:4").lattice().by_dim(3).len(), 16);
    }

    #[test]
    fn square_pyramid_has_five_facets() {
        let p = spec("pyramid:square");
        assert_eq!(p.vertices().len(), 5);
        let facets = p.lattice().by_dim(2);
        assert_eq!(facets.len(), 5);
        let sizes: Vec<usize> = facets
            .iter()
            .map(|&f| p.lattice().face(f).vertices.len())
            .collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 3).count(), 4);
        assert_eq!(sizes.iter().filter(|&&s| s == 4).count(), 1);
    }

    #[test]
    fn derived_families_match_facet_search() {
        for s in [
            "pyramid:square",
            "prism:triangle",
            "bipyramid:square",
            "prism:square",
            "pyramid:triangle",
        ] {
            let p = spec(s);
            let searched = build_face_lattice(p.vertices()).unwrap();
            assert_eq!(searched.vertex_sets(), p.lattice().vertex_sets(), "{s}");
            assert!(p.lattice().satisfies_euler_relation(), "{s}");
        }
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(
            "cube:3".parse::<BuiltinSpec>().unwrap(),
            BuiltinSpec::Cube(3)
        );
        assert_eq!(
            "pyramid:cube:2".parse::<BuiltinSpec>().unwrap(),
            BuiltinSpec::Pyramid(Box::new(BuiltinSpec::Cube(2)))
        );
        assert_eq!(
            "bipyramid:square"
                .parse::<BuiltinSpec>()
                .unwrap()
                .to_string(),
            "bipyramid:cube:2"
        );
        for bad in ["cube", "cube:x", "dodecahedron:3", ""] {
            assert!(bad.parse::<BuiltinSpec>().is_err(), "{bad}");
        }
        assert!(matches!(cross(0), Err(Error::InvalidDimension(_))));
        assert!(matches!(cube(8), Err(Error::TooManyVertices { .. })));
        assert!(bipyramid(&simplex(0).unwrap()).is_err());
    }

    #[test]
    fn zero_dimensional_builtins() {
        assert_eq!(spec("cube:0").lattice().face_counts(), vec![1, 1]);
        assert_eq!(spec("simplex:0").lattice().face_counts(), vec![1, 1]);
        assert_eq!(spec("cross:1").lattice().face_counts(), vec![1, 2, 1]);
    }
}
