//! Newton complex, Newton polygon and dual cells.
//!
//! Chirality: crossing an element from the face on its left to the face on
//! its right moves the dual point by `w * rot_cw(u)`. With this choice the
//! dual point of a face of the corner locus of a max-plus polynomial is the
//! exponent of the monomial that dominates there, and the tropical line gets
//! the standard unit triangle.

mod faces;
mod polygon;

pub use faces::{face_structure, Face, FaceStructure, HalfEdge};
pub use polygon::{minkowski_sum, LatticePolygon};

use std::collections::{BTreeSet, VecDeque};

use serde_json::{json, Value};

use crate::curve::{Element, TropicalCurve};
use crate::error::{Error, Result};
use crate::exact::{angle_cmp, IntVector, LatticePoint, RationalPoint};

/// Dual edge crossing `element`, from the face on its left to the face on its right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualEdge {
    pub faces: [usize; 2],
    pub element: Element,
}

/// One lattice point per face of the complement, joined across every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonComplex {
    pub points: Vec<LatticePoint>,
    pub edges: Vec<DualEdge>,
}

impl NewtonComplex {
    /// Translate so that the lexicographically smallest point is the origin.
    pub fn normalized(&self) -> NewtonComplex {
        let min = *self.points.iter().min().expect("a complex has at least one face");
        NewtonComplex { points: self.points.iter().map(|&p| p - min).collect(), edges: self.edges.clone() }
    }

    pub fn vertex_set(&self) -> BTreeSet<LatticePoint> {
        self.points.iter().copied().collect()
    }

    /// Dual edges as unordered lattice segments.
    pub fn segments(&self) -> BTreeSet<(LatticePoint, LatticePoint)> {
        self.edges
            .iter()
            .map(|e| {
                let (a, b) = (self.points[e.faces[0]], self.points[e.faces[1]]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    pub fn hull(&self) -> LatticePolygon {
        LatticePolygon::hull(self.points.iter().copied())
    }

    /// Same point set and segments, ignoring face and element labels.
    pub fn same_shape(&self, other: &NewtonComplex) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        a.vertex_set() == b.vertex_set() && a.segments() == b.segments()
    }

    /// Every point of `self` is a point of `other`, and every segment of
    /// `self` is a chain of segments of `other`. Both are compared as given,
    /// without translating.
    pub fn is_subcomplex_of(&self, other: &NewtonComplex) -> bool {
        let points = other.vertex_set();
        if !self.vertex_set().is_subset(&points) {
            return false;
        }
        let segments = other.segments();
        self.segments().into_iter().all(|(a, b)| {
            let d = b - a;
            let mut on: Vec<LatticePoint> =
                points.iter().copied().filter(|&p| (p - a).cross(d) == 0 && (p - a).dot(d) >= 0 && (b - p).dot(d) >= 0).collect();
            on.sort_by_key(|p| (*p - a).dot(d));
            on.windows(2).all(|w| segments.contains(&(w[0].min(w[1]), w[0].max(w[1]))))
        })
    }

    pub fn to_json(&self) -> Value {
        let n = self.normalized();
        json!({
            "vertices": n.vertex_set().iter().map(|p| [p.x, p.y]).collect::<Vec<_>>(),
            "edges": n.segments().iter().map(|(a, b)| [[a.x, a.y], [b.x, b.y]]).collect::<Vec<_>>(),
        })
    }
}

/// Step across `el` from its left face to its right face.
fn crossing(curve: &TropicalCurve, el: Element) -> IntVector {
    curve.direction(el).scaled(curve.weight(el)).rot_cw()
}

/// Newton complex, normalized.
pub fn newton_complex(curve: &TropicalCurve) -> Result<NewtonComplex> {
    Ok(newton_complex_from(curve, 0, false)?.normalized())
}

/// Propagates dual points breadth-first from `start`, visiting neighbours in
/// element order or in reverse. Not normalized; `start` sits at the origin.
pub fn newton_complex_from(curve: &TropicalCurve, start: usize, reverse: bool) -> Result<NewtonComplex> {
    let fs = face_structure(curve);
    let n = fs.faces.len();
    let mut adjacency: Vec<Vec<(usize, IntVector)>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for el in curve.elements() {
        let (l, r) = fs.sides(el);
        let step = crossing(curve, el);
        adjacency[l].push((r, step));
        adjacency[r].push((l, -step));
        edges.push(DualEdge { faces: [l, r], element: el });
    }
    if reverse {
        for a in &mut adjacency {
            a.reverse();
        }
    }
    let mut points: Vec<Option<LatticePoint>> = vec![None; n];
    points[start] = Some(IntVector::ZERO);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        let here = points[f].expect("queued faces are placed");
        for &(g, step) in &adjacency[f] {
            match points[g] {
                None => {
                    points[g] = Some(here + step);
                    queue.push_back(g);
                }
                Some(there) if there != here + step => {
                    return Err(Error::Inconsistent(format!(
                        "face {g} placed at {there} but reached again at {}",
                        here + step
                    )));
                }
                Some(_) => {}
            }
        }
    }
    let points = points
        .into_iter()
        .map(|p| p.ok_or_else(|| Error::Inconsistent("face graph is disconnected".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(NewtonComplex { points, edges })
}

/// `Δ(C)`: the convex hull of the Newton complex, normalized.
pub fn newton_polygon(curve: &TropicalCurve) -> Result<LatticePolygon> {
    Ok(newton_complex(curve)?.hull().normalized())
}

/// `Δ(C)` from the rays alone: each weighted ray direction turned a quarter
/// counterclockwise, sorted by angle and chained. Normalized.
pub fn newton_polygon_from_rays(curve: &TropicalCurve) -> LatticePolygon {
    let mut sides: Vec<IntVector> = curve.rays().iter().map(|r| r.direction.scaled(r.weight).rot_ccw()).collect();
    sides.sort_by(|a, b| angle_cmp(*a, *b));
    let mut at = IntVector::ZERO;
    let mut points = vec![at];
    for s in sides {
        at = at + s;
        points.push(at);
    }
    LatticePolygon::hull(points).normalized()
}

/// The polygon `T_V` dual to a vertex, normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCell {
    pub polygon: LatticePolygon,
}

impl DualCell {
    pub fn area2(&self) -> i64 {
        self.polygon.area2()
    }
}

/// `T_V` built by chaining the quarter-turned weighted vectors at `v` in
/// angular order. The chain closes because `v` is balanced.
pub fn dual_cell(curve: &TropicalCurve, v: usize) -> Result<DualCell> {
    if v >= curve.vertices().len() {
        return Err(Error::NotAVertex(v));
    }
    let mut at = IntVector::ZERO;
    let mut points = Vec::new();
    for o in curve.star(v) {
        at = at + o.vector().rot_ccw();
        points.push(at);
    }
    if !at.is_zero() {
        return Err(Error::Inconsistent(format!("dual cell of vertex {v} does not close; residual {}", at.rot_cw())));
    }
    Ok(DualCell { polygon: LatticePolygon::hull(points).normalized() })
}

/// `Mult(V; C) = 2 area(T_V)`.
pub fn vertex_multiplicity(curve: &TropicalCurve, v: usize) -> Result<u64> {
    Ok(dual_cell(curve, v)?.area2() as u64)
}

/// Multiplicity at an arbitrary point: zero unless the point is a vertex.
pub fn multiplicity_at(curve: &TropicalCurve, p: &RationalPoint) -> Result<u64> {
    match curve.vertex_index(p) {
        Some(v) => vertex_multiplicity(curve, v),
        None => Ok(0),
    }
}
