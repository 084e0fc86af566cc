//! Overlay of two curves as a single weighted complex.

use std::collections::{BTreeMap, BTreeSet};

use super::{Edge, Ray, TropicalCurve};
use crate::error::Result;
use crate::exact::{primitive_decompose, IntVector, Rational, RationalPoint};
use crate::shape::{Meet, Shape};

/// `C1 ∪ C2`: every element is split at crossings and at vertices of the
/// other curve, and collinear overlapping pieces are merged with their
/// weights added. Ray data of the result is the union of the ray data of
/// the inputs.
pub fn union(c1: &TropicalCurve, c2: &TropicalCurve) -> Result<TropicalCurve> {
    let mut pieces: Vec<(Shape, u64)> = Vec::new();
    for c in [c1, c2] {
        for (el, shape) in c.shapes() {
            pieces.push((shape, c.weight(el)));
        }
    }
    let mut cut_points: BTreeSet<RationalPoint> = c1.vertices().iter().chain(c2.vertices()).cloned().collect();
    let split = c1.shapes().len();
    for (a, _) in &pieces[..split] {
        for (b, _) in &pieces[split..] {
            match a.meet(b) {
                Meet::None => {}
                Meet::Point { at, .. } => {
                    cut_points.insert(at);
                }
                Meet::Overlap { from, to } => {
                    cut_points.insert(from);
                    if let Some(to) = to {
                        cut_points.insert(to);
                    }
                }
            }
        }
    }
    Ok(assemble(&pieces, &cut_points))
}

/// Splits every piece at the given points and merges coincident pieces.
pub(crate) fn assemble(pieces: &[(Shape, u64)], cut_points: &BTreeSet<RationalPoint>) -> TropicalCurve {
    let mut segments: BTreeMap<(RationalPoint, RationalPoint), u64> = BTreeMap::new();
    let mut rays: BTreeMap<(RationalPoint, IntVector), u64> = BTreeMap::new();
    for (shape, w) in pieces {
        let mut stops: Vec<(Rational, RationalPoint)> =
            cut_points.iter().filter_map(|p| shape.locate(p).map(|s| (s, p.clone()))).collect();
        stops.sort();
        stops.dedup_by(|a, b| a.0 == b.0);
        for pair in stops.windows(2) {
            let (a, b) = (pair[0].1.clone(), pair[1].1.clone());
            let key = if a < b { (a, b) } else { (b, a) };
            *segments.entry(key).or_default() += w;
        }
        if let Shape::Ray { dir, .. } = shape {
            let last = stops.last().expect("a ray always contains its start").1.clone();
            let (u, m) = primitive_decompose(*dir).expect("rays have nonzero direction");
            *rays.entry((last, u.vector())).or_default() += w * m;
        }
    }
    let mut index: BTreeMap<RationalPoint, usize> = BTreeMap::new();
    for (a, b) in segments.keys() {
        index.entry(a.clone()).or_default();
        index.entry(b.clone()).or_default();
    }
    for (a, _) in rays.keys() {
        index.entry(a.clone()).or_default();
    }
    for (i, slot) in index.values_mut().enumerate() {
        *slot = i;
    }
    let vertices: Vec<RationalPoint> = index.keys().cloned().collect();
    let edges = segments.iter().map(|((a, b), w)| Edge { ends: [index[a], index[b]], weight: *w }).collect();
    let rays = rays
        .iter()
        .map(|((a, u), w)| Ray {
            vertex: index[a],
            direction: primitive_decompose(*u).expect("nonzero").0,
            weight: *w,
        })
        .collect();
    TropicalCurve::new(vertices, edges, rays).expect("overlay pieces form a valid complex")
}
