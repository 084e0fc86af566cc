//! Small hand-built curves shared by tests, examples and the CLI.

use crate::curve::TropicalCurve;
use crate::exact::{rat, IntVector, RationalPoint, RationalVector};

fn build(points: &[(i64, i64)], edges: &[([usize; 2], u64)], rays: &[(usize, (i64, i64))]) -> TropicalCurve {
    TropicalCurve::from_rays_and_edges(
        points.iter().map(|&(x, y)| RationalPoint::from_ints(x, y)).collect(),
        edges.to_vec(),
        rays.iter().map(|&(v, (x, y))| (v, IntVector::new(x, y))).collect(),
    )
    .expect("fixture is well formed")
}

/// `max(0, x, y)`: one vertex at the origin.
pub fn tropical_line() -> TropicalCurve {
    build(&[(0, 0)], &[], &[(0, (-1, 0)), (0, (0, -1)), (0, (1, 1))])
}

/// Genus one: the unit triangle with one ray at each corner. Cycle lattice
/// length 3.
pub fn triangle_cycle() -> TropicalCurve {
    build(
        &[(0, 0), (1, 0), (0, 1)],
        &[([0, 1], 1), ([1, 2], 1), ([2, 0], 1)],
        &[(0, (-1, -1)), (1, (2, -1)), (2, (-1, 2))],
    )
}

/// Two triangles sharing the 4-valent vertex at the origin; genus two.
pub fn figure_eight() -> TropicalCurve {
    build(
        &[(0, 0), (1, 0), (0, 1), (-1, 0), (0, -1)],
        &[([0, 1], 1), ([1, 2], 1), ([2, 0], 1), ([0, 3], 1), ([3, 4], 1), ([4, 0], 1)],
        &[(1, (2, -1)), (2, (-1, 2)), (3, (-2, 1)), (4, (1, -2))],
    )
}

/// Two triangles joined by a tentacle; genus two, and a bouquet once the
/// tentacle is contracted.
pub fn dumbbell() -> TropicalCurve {
    build(
        &[(0, 0), (1, 0), (0, 1), (3, -1), (4, -1), (3, 0)],
        &[([0, 1], 1), ([1, 2], 1), ([2, 0], 1), ([1, 3], 1), ([3, 4], 1), ([4, 5], 1), ([5, 3], 1)],
        &[(0, (-1, -1)), (2, (-1, 2)), (3, (1, -2)), (4, (2, -1)), (5, (-1, 2))],
    )
}

/// The triangle cycle with a two-edge tail in place of one of its rays.
pub fn tailed_cycle() -> TropicalCurve {
    build(
        &[(0, 0), (1, 0), (0, 1), (3, -1), (4, 0)],
        &[([0, 1], 1), ([1, 2], 1), ([2, 0], 1), ([1, 3], 1), ([3, 4], 1)],
        &[(0, (-1, -1)), (2, (-1, 2)), (3, (1, -2)), (4, (1, 0)), (4, (0, 1))],
    )
}

/// One 4-valent vertex with rays along the coordinate axes.
pub fn cross_vertex() -> TropicalCurve {
    build(&[(0, 0)], &[], &[(0, (1, 0)), (0, (0, 1)), (0, (-1, 0)), (0, (0, -1))])
}

/// Two unit squares sharing a side; the bunch is a theta graph.
pub fn theta() -> TropicalCurve {
    build(
        &[(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)],
        &[([0, 1], 1), ([1, 2], 1), ([3, 4], 1), ([4, 5], 1), ([0, 3], 1), ([1, 4], 1), ([2, 5], 1)],
        &[(0, (-1, -1)), (1, (0, -1)), (2, (1, -1)), (3, (-1, 1)), (4, (0, 1)), (5, (1, 1))],
    )
}

/// A genus-one curve whose bottom cycle edge has weight 2.
pub fn non_reduced_cycle() -> TropicalCurve {
    build(
        &[(0, 0), (1, 0), (0, 1)],
        &[([0, 1], 2), ([1, 2], 1), ([2, 0], 1)],
        &[(0, (-2, -1)), (1, (3, -1)), (2, (-1, 2))],
    )
}

/// A host curve `C` and two curves `L`, `M` with Newton polygons
/// `Conv{(0,0),(1,0),(1,1)}` and `Conv{(0,0),(0,1),(1,1)}` such that
/// `C·L − C·M = P − Q` for two distinct points `P`, `Q` of the cycle.
///
/// Here `C` is the triangle cycle, `C·L = (−½,−½) + (0,½) + (½,½)` and
/// `C·M = (−½,−½) + (½,0) + (½,½)`, so `P = (0,½)` and `Q = (½,0)`.
pub fn two_conics() -> (TropicalCurve, TropicalCurve, TropicalCurve) {
    let half = |x: i64, y: i64| RationalVector::new(rat(x, 2), rat(y, 2));
    let l = build(&[(0, 0)], &[], &[(0, (0, -1)), (0, (1, 0)), (0, (-1, 1))]).translate(&half(-1, 1));
    let m = build(&[(0, 0)], &[], &[(0, (1, -1)), (0, (0, 1)), (0, (-1, 0))]).translate(&half(1, -1));
    (triangle_cycle(), l, m)
}

/// Every named fixture that is a valid tropical curve.
pub fn all() -> Vec<(&'static str, TropicalCurve)> {
    let (c, l, m) = two_conics();
    vec![
        ("line", tropical_line()),
        ("triangle", triangle_cycle()),
        ("figure-eight", figure_eight()),
        ("dumbbell", dumbbell()),
        ("tailed", tailed_cycle()),
        ("cross", cross_vertex()),
        ("theta", theta()),
        ("non-reduced", non_reduced_cycle()),
        ("conic-host", c),
        ("conic-l", l),
        ("conic-m", m),
    ]
}
