//! Tropical curves as weighted rational-slope complexes in the plane.

mod json;
mod loops;
mod overlay;

pub use json::{CurveFile, EdgeJson, RayJson};
pub use loops::{global_balance_sum, moment_sum};
pub use overlay::union;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{primitive_decompose, IntVector, PrimitiveVector, Rational, RationalPoint, RationalVector};
use crate::shape::{Meet, Shape};

/// Finite edge between two distinct vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub ends: [usize; 2],
    pub weight: u64,
}

/// Unbounded edge leaving `vertex` in `direction`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray {
    pub vertex: usize,
    pub direction: PrimitiveVector,
    pub weight: u64,
}

/// Reference to a finite edge or a ray of a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Edge(usize),
    Ray(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Edge(i) => write!(f, "edge {i}"),
            Element::Ray(i) => write!(f, "ray {i}"),
        }
    }
}

/// An element seen from one of its vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outgoing {
    pub element: Element,
    pub direction: PrimitiveVector,
    pub weight: u64,
    /// Vertex at the far end, `None` for rays.
    pub target: Option<usize>,
}

impl Outgoing {
    /// Weighted primitive vector starting at the vertex.
    pub fn vector(&self) -> IntVector {
        self.direction.scaled(self.weight)
    }
}

/// Where a point sits on a curve. Edge and ray positions are interior.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Vertex(usize),
    Edge(usize),
    Ray(usize),
}

/// Result of balancing validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    /// Sum of weighted primitive vectors leaving each vertex.
    pub residuals: Vec<IntVector>,
    pub balanced: bool,
}

impl BalanceReport {
    pub fn unbalanced_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.residuals.iter().enumerate().filter(|(_, r)| !r.is_zero()).map(|(i, _)| i)
    }
}

/// A weighted 1-complex with rational vertices, finite edges and rays.
///
/// Construction checks structure only (indices, weights, distinct points).
/// Balancing and embedding are checked by [`TropicalCurve::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCurve {
    vertices: Vec<RationalPoint>,
    edges: Vec<Edge>,
    rays: Vec<Ray>,
    // primitive direction from ends[0] to ends[1] and lattice length, per edge
    geometry: Vec<(PrimitiveVector, Rational)>,
}

impl TropicalCurve {
    pub fn new(vertices: Vec<RationalPoint>, edges: Vec<Edge>, rays: Vec<Ray>) -> Result<Self> {
        let n = vertices.len();
        let mut seen = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if let Some(j) = seen.insert(v.clone(), i) {
                return Err(Error::Structure(format!("vertices {j} and {i} coincide at {v}")));
            }
        }
        let mut geometry = Vec::with_capacity(edges.len());
        for (k, e) in edges.iter().enumerate() {
            let [a, b] = e.ends;
            if a >= n || b >= n {
                return Err(Error::Structure(format!("edge {k} references a missing vertex")));
            }
            if a == b {
                return Err(Error::Structure(format!("edge {k} has equal endpoints")));
            }
            if e.weight == 0 {
                return Err(Error::Structure(format!("edge {k} has weight 0")));
            }
            geometry.push(vertices[a].vector_to(&vertices[b]).primitive()?);
        }
        for (k, r) in rays.iter().enumerate() {
            if r.vertex >= n {
                return Err(Error::Structure(format!("ray {k} references a missing vertex")));
            }
            if r.weight == 0 {
                return Err(Error::Structure(format!("ray {k} has weight 0")));
            }
        }
        Ok(Self { vertices, edges, rays, geometry })
    }

    pub fn empty() -> Self {
        Self { vertices: vec![], edges: vec![], rays: vec![], geometry: vec![] }
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &RationalPoint {
        &self.vertices[i]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Primitive direction of edge `e` pointing from `ends[0]` to `ends[1]`.
    pub fn edge_direction(&self, e: usize) -> PrimitiveVector {
        self.geometry[e].0
    }

    /// Lattice length of edge `e`: Euclidean length divided by `|u|`.
    pub fn edge_lattice_length(&self, e: usize) -> &Rational {
        &self.geometry[e].1
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.edges.len()).map(Element::Edge).chain((0..self.rays.len()).map(Element::Ray))
    }

    pub fn weight(&self, el: Element) -> u64 {
        match el {
            Element::Edge(i) => self.edges[i].weight,
            Element::Ray(i) => self.rays[i].weight,
        }
    }

    /// Primitive direction of an element (edges oriented `ends[0] -> ends[1]`).
    pub fn direction(&self, el: Element) -> PrimitiveVector {
        match el {
            Element::Edge(i) => self.geometry[i].0,
            Element::Ray(i) => self.rays[i].direction,
        }
    }

    pub fn element_vertices(&self, el: Element) -> Vec<usize> {
        match el {
            Element::Edge(i) => self.edges[i].ends.to_vec(),
            Element::Ray(i) => vec![self.rays[i].vertex],
        }
    }

    pub(crate) fn shape(&self, el: Element) -> Shape {
        match el {
            Element::Edge(i) => {
                let [a, b] = self.edges[i].ends;
                Shape::Segment { a: self.vertices[a].clone(), b: self.vertices[b].clone() }
            }
            Element::Ray(i) => {
                let r = &self.rays[i];
                Shape::Ray { a: self.vertices[r.vertex].clone(), dir: r.direction.vector() }
            }
        }
    }

    pub(crate) fn shapes(&self) -> Vec<(Element, Shape)> {
        self.elements().map(|el| (el, self.shape(el))).collect()
    }

    /// Elements leaving vertex `v`, sorted counterclockwise.
    pub fn star(&self, v: usize) -> Vec<Outgoing> {
        let mut out = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            let u = self.geometry[k].0;
            if e.ends[0] == v {
                out.push(Outgoing { element: Element::Edge(k), direction: u, weight: e.weight, target: Some(e.ends[1]) });
            }
            if e.ends[1] == v {
                out.push(Outgoing { element: Element::Edge(k), direction: -u, weight: e.weight, target: Some(e.ends[0]) });
            }
        }
        for (k, r) in self.rays.iter().enumerate() {
            if r.vertex == v {
                out.push(Outgoing { element: Element::Ray(k), direction: r.direction, weight: r.weight, target: None });
            }
        }
        out.sort_by(|a, b| a.direction.angle().cmp(&b.direction.angle()).then(a.element.cmp(&b.element)));
        out
    }

    /// Sum of weighted primitive vectors leaving `v`.
    pub fn residual(&self, v: usize) -> IntVector {
        self.star(v).iter().fold(IntVector::ZERO, |acc, o| acc + o.vector())
    }

    /// Checks the embedding invariants and reports the balancing residual at
    /// every vertex. Structural and embedding problems are errors; imbalance
    /// is reported in the returned value.
    pub fn validate(&self) -> Result<BalanceReport> {
        self.check_embedding()?;
        let residuals: Vec<IntVector> = (0..self.vertices.len()).map(|v| self.residual(v)).collect();
        let balanced = residuals.iter().all(|r| r.is_zero());
        Ok(BalanceReport { residuals, balanced })
    }

    /// `validate` plus a balancing requirement, as an error.
    pub fn ensure_balanced(&self) -> Result<()> {
        let report = self.validate()?;
        if let Some(v) = report.unbalanced_vertices().next() {
            return Err(Error::Structure(format!(
                "vertex {v} is not balanced (residual {})",
                report.residuals[v]
            )));
        }
        Ok(())
    }

    fn check_embedding(&self) -> Result<()> {
        for v in 0..self.vertices.len() {
            let star = self.star(v);
            if star.is_empty() {
                return Err(Error::Structure(format!("vertex {v} is isolated")));
            }
            for w in star.windows(2) {
                if w[0].direction == w[1].direction {
                    return Err(Error::Structure(format!(
                        "{} and {} overlap at vertex {v}",
                        w[0].element, w[1].element
                    )));
                }
            }
        }
        let shapes = self.shapes();
        for i in 0..shapes.len() {
            for j in i + 1..shapes.len() {
                let (ea, sa) = &shapes[i];
                let (eb, sb) = &shapes[j];
                match sa.meet(sb) {
                    Meet::None => {}
                    Meet::Point { at, .. } => {
                        let va = self.element_vertices(*ea);
                        let shared = self
                            .element_vertices(*eb)
                            .into_iter()
                            .any(|v| va.contains(&v) && self.vertices[v] == at);
                        if !shared {
                            return Err(Error::Structure(format!("{ea} and {eb} intersect at {at}")));
                        }
                    }
                    Meet::Overlap { from, .. } => {
                        return Err(Error::Structure(format!("{ea} and {eb} overlap from {from}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Where `p` lies on the curve, if it does.
    pub fn locate(&self, p: &RationalPoint) -> Option<Location> {
        if let Some(v) = self.vertices.iter().position(|q| q == p) {
            return Some(Location::Vertex(v));
        }
        for el in self.elements() {
            if self.shape(el).locate(p).is_some() {
                return Some(match el {
                    Element::Edge(i) => Location::Edge(i),
                    Element::Ray(i) => Location::Ray(i),
                });
            }
        }
        None
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.locate(p).is_some()
    }

    pub fn vertex_index(&self, p: &RationalPoint) -> Option<usize> {
        self.vertices.iter().position(|q| q == p)
    }

    /// All weights equal to one.
    pub fn is_reduced(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1) && self.rays.iter().all(|r| r.weight == 1)
    }

    pub fn translate(&self, t: &RationalVector) -> TropicalCurve {
        TropicalCurve {
            vertices: self.vertices.iter().map(|v| v.offset(t)).collect(),
            edges: self.edges.clone(),
            rays: self.rays.clone(),
            geometry: self.geometry.clone(),
        }
    }

    /// Point reflection through the origin.
    pub fn negate(&self) -> TropicalCurve {
        TropicalCurve {
            vertices: self.vertices.iter().map(RationalPoint::neg).collect(),
            edges: self.edges.clone(),
            rays: self.rays.iter().map(|r| Ray { direction: -r.direction, ..*r }).collect(),
            geometry: self.geometry.iter().map(|(u, l)| (-*u, l.clone())).collect(),
        }
    }

    /// Same curve with every weight multiplied by `k`.
    pub fn scale_weights(&self, k: u64) -> TropicalCurve {
        assert!(k > 0, "weights must stay positive");
        TropicalCurve {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|e| Edge { weight: e.weight * k, ..*e }).collect(),
            rays: self.rays.iter().map(|r| Ray { weight: r.weight * k, ..*r }).collect(),
            geometry: self.geometry.clone(),
        }
    }

    /// Inserts a 2-valent vertex at an interior point of edge `e`.
    pub fn subdivide_edge(&self, e: usize, p: &RationalPoint) -> Result<TropicalCurve> {
        let edge = self.edges[e];
        let s = self.shape(Element::Edge(e)).locate(p);
        match s {
            Some(s) if !s.is_zero() && s < crate::exact::rational_one() => {}
            _ => return Err(Error::NotOnCurve(format!("{p} is not interior to edge {e}"))),
        }
        let mut vertices = self.vertices.clone();
        vertices.push(p.clone());
        let mid = vertices.len() - 1;
        let mut edges = self.edges.clone();
        edges[e] = Edge { ends: [edge.ends[0], mid], weight: edge.weight };
        edges.push(Edge { ends: [mid, edge.ends[1]], weight: edge.weight });
        TropicalCurve::new(vertices, edges, self.rays.clone())
    }

    /// Fuses every 2-valent vertex whose two elements are opposite and of
    /// equal weight. Lines consisting of two opposite rays keep their vertex.
    pub fn normalize(&self) -> TropicalCurve {
        let mut curve = self.clone();
        'outer: loop {
            for v in 0..curve.vertices.len() {
                let star = curve.star(v);
                if star.len() != 2 || star[0].direction != -star[1].direction || star[0].weight != star[1].weight {
                    continue;
                }
                let w = star[0].weight;
                let (first, second) = (star[0], star[1]);
                let mut edges = Vec::new();
                let mut rays = Vec::new();
                match (first.target, second.target) {
                    (Some(a), Some(b)) => edges.push(Edge { ends: [a, b], weight: w }),
                    (Some(a), None) => rays.push(Ray { vertex: a, direction: second.direction, weight: w }),
                    (None, Some(b)) => rays.push(Ray { vertex: b, direction: first.direction, weight: w }),
                    (None, None) => continue,
                }
                let drop = [first.element, second.element];
                edges.extend(
                    curve.edges.iter().enumerate().filter(|(k, _)| !drop.contains(&Element::Edge(*k))).map(|(_, e)| *e),
                );
                rays.extend(
                    curve.rays.iter().enumerate().filter(|(k, _)| !drop.contains(&Element::Ray(*k))).map(|(_, r)| *r),
                );
                curve = curve.without_vertex(v, edges, rays);
                continue 'outer;
            }
            return curve;
        }
    }

    fn without_vertex(&self, v: usize, edges: Vec<Edge>, rays: Vec<Ray>) -> TropicalCurve {
        let remap = |i: usize| if i > v { i - 1 } else { i };
        let mut vertices = self.vertices.clone();
        vertices.remove(v);
        let edges = edges.into_iter().map(|e| Edge { ends: [remap(e.ends[0]), remap(e.ends[1])], ..e }).collect();
        let rays = rays.into_iter().map(|r| Ray { vertex: remap(r.vertex), ..r }).collect();
        TropicalCurve::new(vertices, edges, rays).expect("fusing a vertex keeps the structure valid")
    }

    /// Relabels vertices in lexicographic order and sorts edges and rays, so
    /// that curves equal up to relabeling compare equal.
    pub fn canonical(&self) -> TropicalCurve {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by(|a, b| self.vertices[*a].cmp(&self.vertices[*b]));
        let mut new_index = vec![0; order.len()];
        for (new, old) in order.iter().enumerate() {
            new_index[*old] = new;
        }
        let vertices = order.iter().map(|&i| self.vertices[i].clone()).collect();
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (new_index[e.ends[0]], new_index[e.ends[1]]);
                Edge { ends: [a.min(b), a.max(b)], weight: e.weight }
            })
            .collect();
        edges.sort();
        let mut rays: Vec<Ray> = self.rays.iter().map(|r| Ray { vertex: new_index[r.vertex], ..*r }).collect();
        rays.sort();
        TropicalCurve::new(vertices, edges, rays).expect("relabeling keeps the structure valid")
    }

    pub fn same_up_to_relabeling(&self, other: &TropicalCurve) -> bool {
        self.canonical() == other.canonical()
    }

    /// Deterministic fingerprint of the curve, used to tag divisors.
    pub fn host_tag(&self) -> u64 {
        // FNV-1a over the canonical file form
        let text = self.canonical().to_json();
        text.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
    }

    /// Builds a curve from vertex positions and integer element vectors: each
    /// finite edge is given by its endpoints, each ray by a (possibly
    /// non-primitive) integer vector whose content becomes the weight.
    pub fn from_rays_and_edges(
        vertices: Vec<RationalPoint>,
        edges: Vec<([usize; 2], u64)>,
        rays: Vec<(usize, IntVector)>,
    ) -> Result<Self> {
        let edges = edges.into_iter().map(|(ends, weight)| Edge { ends, weight }).collect();
        let rays = rays
            .into_iter()
            .map(|(vertex, v)| {
                let (direction, weight) = primitive_decompose(v)?;
                Ok(Ray { vertex, direction, weight })
            })
            .collect::<Result<Vec<_>>>()?;
        TropicalCurve::new(vertices, edges, rays)
    }

    /// Rational bounding box of the vertices, `None` for the empty curve.
    pub fn bounding_box(&self) -> Option<(RationalPoint, RationalPoint)> {
        let first = self.vertices.first()?;
        let (mut lo, mut hi) = (first.clone(), first.clone());
        for v in &self.vertices[1..] {
            if v.x < lo.x {
                lo.x = v.x.clone();
            }
            if v.y < lo.y {
                lo.y = v.y.clone();
            }
            if v.x > hi.x {
                hi.x = v.x.clone();
            }
            if v.y > hi.y {
                hi.y = v.y.clone();
            }
        }
        Some((lo, hi))
    }

    /// Number of elements leaving `v`.
    pub fn valence(&self, v: usize) -> usize {
        self.star(v).len()
    }

    /// Lattice length of the portion of edge `e` between `ends[0]` and `p`.
    pub(crate) fn lattice_offset(&self, e: usize, p: &RationalPoint) -> Rational {
        let start = &self.vertices[self.edges[e].ends[0]];
        let d = start.vector_to(p);
        let u = self.geometry[e].0;
        if u.x() != 0 {
            d.x / crate::exact::int(u.x())
        } else {
            d.y / crate::exact::int(u.y())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::fixtures;

    fn v(x: i64, y: i64) -> IntVector {
        IntVector::new(x, y)
    }

    #[test]
    fn tropical_line_balances() {
        let line = fixtures::tropical_line();
        let report = line.validate().unwrap();
        assert!(report.balanced);
        assert_eq!(report.residuals, vec![v(0, 0)]);
    }

    #[test]
    fn two_rays_do_not_balance() {
        let c = TropicalCurve::from_rays_and_edges(vec![RationalPoint::origin()], vec![], vec![(0, v(1, 0)), (0, v(0, 1))])
            .unwrap();
        let report = c.validate().unwrap();
        assert!(!report.balanced);
        assert_eq!(report.residuals, vec![v(1, 1)]);
    }

    #[test]
    fn cycle_fixtures_balance() {
        for c in [fixtures::triangle_cycle(), fixtures::figure_eight(), fixtures::dumbbell(), fixtures::tailed_cycle()] {
            assert!(c.validate().unwrap().balanced);
        }
    }

    #[test]
    fn structural_errors_are_distinct_from_imbalance() {
        let o = RationalPoint::origin();
        let err = TropicalCurve::new(vec![o.clone()], vec![Edge { ends: [0, 1], weight: 1 }], vec![]).unwrap_err();
        assert!(matches!(err, Error::Structure(_)));
        let err = TropicalCurve::new(
            vec![o.clone()],
            vec![],
            vec![Ray { vertex: 0, direction: PrimitiveVector::new(1, 0).unwrap(), weight: 0 }],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Structure(_)));
        let err = TropicalCurve::new(vec![o.clone(), o], vec![], vec![]).unwrap_err();
        assert!(matches!(err, Error::Structure(_)));
    }

    #[test]
    fn embedding_violations_are_rejected() {
        // two rays crossing away from their vertices
        let c = TropicalCurve::from_rays_and_edges(
            vec![RationalPoint::from_ints(0, 0), RationalPoint::from_ints(2, 0)],
            vec![],
            vec![(0, v(1, 1)), (1, v(-1, 1))],
        )
        .unwrap();
        assert!(matches!(c.validate(), Err(Error::Structure(_))));
        // a vertex lying inside a ray
        let c = TropicalCurve::from_rays_and_edges(
            vec![RationalPoint::from_ints(0, 0), RationalPoint::from_ints(2, 0)],
            vec![],
            vec![(0, v(1, 0)), (1, v(0, 1))],
        )
        .unwrap();
        assert!(matches!(c.validate(), Err(Error::Structure(_))));
        // overlapping rays at one vertex
        let c = TropicalCurve::from_rays_and_edges(vec![RationalPoint::origin()], vec![], vec![(0, v(1, 0)), (0, v(2, 0))])
            .unwrap();
        assert!(matches!(c.validate(), Err(Error::Structure(_))));
    }

    #[test]
    fn translate_moves_vertices_only() {
        let line = fixtures::tropical_line();
        assert_eq!(line.translate(&RationalVector::zero()), line);
        let moved = line.translate(&RationalVector::new(int(1), int(2)));
        assert_eq!(moved.vertex(0), &RationalPoint::from_ints(1, 2));
        assert_eq!(moved.rays(), line.rays());
    }

    #[test]
    fn locate_points() {
        let c = fixtures::triangle_cycle();
        assert_eq!(c.locate(&RationalPoint::origin()), Some(Location::Vertex(0)));
        assert!(matches!(c.locate(&RationalPoint::new(rat(1, 2), int(0))), Some(Location::Edge(_))));
        assert!(matches!(c.locate(&RationalPoint::from_ints(-3, -3)), Some(Location::Ray(_))));
        assert_eq!(c.locate(&RationalPoint::new(rat(1, 4), rat(1, 4))), None);
    }

    #[test]
    fn subdivide_then_normalize_round_trips() {
        let c = fixtures::triangle_cycle();
        let sub = c.subdivide_edge(0, &RationalPoint::new(rat(1, 3), int(0))).unwrap();
        assert_eq!(sub.vertices().len(), 4);
        assert!(sub.validate().unwrap().balanced);
        assert!(sub.normalize().same_up_to_relabeling(&c));
    }

    #[test]
    fn normalize_turns_edge_plus_ray_into_ray() {
        let c = TropicalCurve::from_rays_and_edges(
            vec![RationalPoint::origin(), RationalPoint::from_ints(1, 0)],
            vec![([0, 1], 1)],
            vec![(0, v(-1, 0)), (1, v(1, 0))],
        )
        .unwrap();
        let n = c.normalize();
        assert_eq!(n.vertices().len(), 1);
        assert_eq!(n.rays().len(), 2);
        assert!(n.edges().is_empty());
    }

    #[test]
    fn canonical_ignores_labels() {
        let c = fixtures::triangle_cycle();
        let relabeled = TropicalCurve::from_rays_and_edges(
            vec![RationalPoint::from_ints(0, 1), RationalPoint::from_ints(1, 0), RationalPoint::origin()],
            vec![([2, 1], 1), ([0, 1], 1), ([0, 2], 1)],
            vec![(0, v(-1, 2)), (2, v(-1, -1)), (1, v(2, -1))],
        )
        .unwrap();
        assert!(c.same_up_to_relabeling(&relabeled));
        assert_eq!(c.host_tag(), relabeled.host_tag());
    }
}
