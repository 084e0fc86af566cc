use std::cmp::Ordering;

use serde_json::{json, Value};

use crate::exact::{angle_cmp, cross, IntVector, LatticePoint};

/// Convex lattice polygon, stored as its extreme points in counterclockwise
/// order starting from the lexicographically smallest one. Segments and
/// single points are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

impl LatticePolygon {
    /// Convex hull of a nonempty point set.
    pub fn hull<I: IntoIterator<Item = LatticePoint>>(points: I) -> Self {
        let mut pts: Vec<LatticePoint> = points.into_iter().collect();
        assert!(!pts.is_empty(), "hull of an empty point set");
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return Self { vertices: pts };
        }
        // Andrew's monotone chain, dropping collinear points
        let mut lower: Vec<LatticePoint> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 1] - lower[lower.len() - 2], p - lower[lower.len() - 1]) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<LatticePoint> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 1] - upper[upper.len() - 2], p - upper[upper.len() - 1]) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self { vertices: lower }
    }

    pub fn point(p: LatticePoint) -> Self {
        Self { vertices: vec![p] }
    }

    /// `Conv{(0,0), (d,0), (0,d)}`, the polygon of a projective curve of degree `d`.
    pub fn simplex(d: i64) -> Self {
        Self::hull([IntVector::new(0, 0), IntVector::new(d, 0), IntVector::new(0, d)])
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// 0 for a point, 1 for a segment, 2 otherwise.
    pub fn dimension(&self) -> usize {
        self.vertices.len().min(3) - 1
    }

    /// Twice the area; always an integer.
    pub fn area2(&self) -> i64 {
        let n = self.vertices.len();
        (0..n).map(|i| cross(self.vertices[i], self.vertices[(i + 1) % n])).sum()
    }

    /// Boundary edge vectors in counterclockwise order. A segment has two
    /// opposite edges, a point none.
    pub fn edge_vectors(&self) -> Vec<IntVector> {
        let n = self.vertices.len();
        if n == 1 {
            return vec![];
        }
        (0..n).map(|i| self.vertices[(i + 1) % n] - self.vertices[i]).collect()
    }

    pub fn translate(&self, t: IntVector) -> Self {
        Self { vertices: self.vertices.iter().map(|&p| p + t).collect() }
    }

    /// Translate so that the first (lexicographically smallest) vertex is the origin.
    pub fn normalized(&self) -> Self {
        self.translate(-self.vertices[0])
    }

    pub fn to_json(&self) -> Value {
        json!(self.vertices.iter().map(|p| [p.x, p.y]).collect::<Vec<_>>())
    }
}

// Sort key for walking a boundary from its lexicographically smallest vertex:
// the first edge out of that vertex points strictly right-and-down or has
// the smallest angle in [0, 3pi/2].
fn walk_order(a: IntVector, b: IntVector) -> Ordering {
    let group = |v: IntVector| if v.x > 0 && v.y < 0 { 0 } else { 1 };
    group(a).cmp(&group(b)).then_with(|| angle_cmp(a, b))
}

/// Minkowski sum by merging the two edge sequences by angle.
pub fn minkowski_sum(p: &LatticePolygon, q: &LatticePolygon) -> LatticePolygon {
    let mut edges: Vec<IntVector> = p.edge_vectors();
    edges.extend(q.edge_vectors());
    edges.sort_by(|a, b| walk_order(*a, *b));
    let mut merged: Vec<IntVector> = Vec::new();
    for e in edges {
        match merged.last_mut() {
            Some(last) if cross(*last, e) == 0 && last.dot(e) > 0 => *last = *last + e,
            _ => merged.push(e),
        }
    }
    let mut at = p.vertices[0] + q.vertices[0];
    let mut vertices = vec![at];
    for e in &merged[..merged.len().saturating_sub(1)] {
        at = at + *e;
        vertices.push(at);
    }
    let sum = LatticePolygon { vertices };
    debug_assert_eq!(sum, LatticePolygon::hull(sum.vertices.clone()));
    sum
}
