//! Faces of the complement of a curve, traced with half-edges.
//!
//! Unbounded faces are closed up at infinity: after running out along a ray
//! the walk comes back in along the next ray in counterclockwise order, so no
//! bounding box is needed.

use std::collections::BTreeMap;

use crate::curve::{Element, TropicalCurve};
use crate::exact::{angle_cmp, PrimitiveVector, Rational};

/// An element traversed in one direction. For edges `forward` runs from
/// `ends[0]` to `ends[1]`; for rays it runs out to infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub element: Element,
    pub forward: bool,
}

impl HalfEdge {
    pub fn twin(self) -> Self {
        HalfEdge { forward: !self.forward, ..self }
    }
}

/// A connected component of the complement; the face lies to the left of
/// every half-edge of its boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<HalfEdge>,
    pub bounded: bool,
}

#[derive(Clone, Debug)]
pub struct FaceStructure {
    pub faces: Vec<Face>,
    left: BTreeMap<HalfEdge, usize>,
}

impl FaceStructure {
    pub fn left_face(&self, h: HalfEdge) -> usize {
        self.left[&h]
    }

    /// Faces to the left and to the right of an element's forward half-edge.
    pub fn sides(&self, el: Element) -> (usize, usize) {
        let h = HalfEdge { element: el, forward: true };
        (self.left[&h], self.left[&h.twin()])
    }

    pub fn bounded_count(&self) -> usize {
        self.faces.iter().filter(|f| f.bounded).count()
    }
}

pub fn face_structure(curve: &TropicalCurve) -> FaceStructure {
    if curve.elements().next().is_none() {
        return FaceStructure { faces: vec![Face { boundary: vec![], bounded: false }], left: BTreeMap::new() };
    }
    // outgoing half-edges at each vertex, counterclockwise
    let stars: Vec<Vec<HalfEdge>> = (0..curve.vertices().len())
        .map(|v| {
            curve
                .star(v)
                .iter()
                .map(|o| {
                    let forward = match o.element {
                        Element::Edge(k) => curve.edges()[k].ends[0] == v,
                        Element::Ray(_) => true,
                    };
                    HalfEdge { element: o.element, forward }
                })
                .collect()
        })
        .collect();
    let mut position: BTreeMap<HalfEdge, (usize, usize)> = BTreeMap::new();
    for (v, star) in stars.iter().enumerate() {
        for (i, h) in star.iter().enumerate() {
            position.insert(*h, (v, i));
        }
    }
    // rays in counterclockwise order at infinity; parallel rays are ordered
    // by how far left they sit
    let mut at_infinity: Vec<usize> = (0..curve.rays().len()).collect();
    let offset = |r: usize| -> Rational {
        let ray = &curve.rays()[r];
        let p = curve.vertex(ray.vertex);
        let d = ray.direction;
        crate::exact::int(d.x()) * &p.y - crate::exact::int(d.y()) * &p.x
    };
    at_infinity.sort_by(|&a, &b| {
        let (da, db): (PrimitiveVector, PrimitiveVector) = (curve.rays()[a].direction, curve.rays()[b].direction);
        angle_cmp(da.vector(), db.vector()).then_with(|| offset(a).cmp(&offset(b)))
    });
    let mut infinity_rank = vec![0; curve.rays().len()];
    for (i, &r) in at_infinity.iter().enumerate() {
        infinity_rank[r] = i;
    }

    let next = |h: HalfEdge| -> HalfEdge {
        match (h.element, h.forward) {
            (Element::Ray(r), true) => {
                let r2 = at_infinity[(infinity_rank[r] + 1) % at_infinity.len()];
                HalfEdge { element: Element::Ray(r2), forward: false }
            }
            _ => {
                let (v, i) = position[&h.twin()];
                let star = &stars[v];
                star[(i + star.len() - 1) % star.len()]
            }
        }
    };

    let mut left = BTreeMap::new();
    let mut faces = Vec::new();
    let all: Vec<HalfEdge> =
        curve.elements().flat_map(|el| [true, false].map(|forward| HalfEdge { element: el, forward })).collect();
    for start in all {
        if left.contains_key(&start) {
            continue;
        }
        let id = faces.len();
        let mut boundary = Vec::new();
        let mut h = start;
        loop {
            left.insert(h, id);
            boundary.push(h);
            h = next(h);
            if h == start {
                break;
            }
        }
        let bounded = boundary.iter().all(|h| matches!(h.element, Element::Edge(_)));
        faces.push(Face { boundary, bounded });
    }
    FaceStructure { faces, left }
}
