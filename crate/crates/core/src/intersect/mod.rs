//! Stable intersection of two curves and tropical Bezout.

mod divisor;

pub use divisor::{Divisor, DivisorTerm};

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::curve::{union, Element, TropicalCurve};
use crate::error::{Error, Result};
use crate::exact::{cross, IntVector, PrimitiveVector, Rational, RationalPoint, RationalVector};
use crate::newton::{minkowski_sum, multiplicity_at, LatticePolygon};
use crate::shape::{Meet, Shape};

/// `|u × v|` for weighted primitive vectors of two crossing edges.
pub fn crossing_multiplicity(u: IntVector, v: IntVector) -> u64 {
    cross(u, v).unsigned_abs()
}

fn weighted(c: &TropicalCurve, el: Element) -> IntVector {
    c.direction(el).scaled(c.weight(el))
}

/// Multiplicity of a transversal crossing of element `e` of `c1` with
/// element `f` of `c2`.
pub fn transversal_multiplicity(c1: &TropicalCurve, e: Element, c2: &TropicalCurve, f: Element) -> Result<u64> {
    match c1.shape(e).meet(&c2.shape(f)) {
        Meet::Point { s, t, at } => {
            if c1.shape(e).is_endpoint_param(&s) || c2.shape(f).is_endpoint_param(&t) {
                return Err(Error::NotTransversal(format!("{e} and {f} meet at {at}, an endpoint")));
            }
            Ok(crossing_multiplicity(weighted(c1, e), weighted(c2, f)))
        }
        Meet::None => Err(Error::NotTransversal(format!("{e} and {f} do not meet"))),
        Meet::Overlap { from, .. } => Err(Error::NotTransversal(format!("{e} and {f} overlap from {from}"))),
    }
}

enum Contact {
    Points(BTreeSet<RationalPoint>),
    Overlap,
}

fn contact(c1: &TropicalCurve, c2: &TropicalCurve) -> Contact {
    let s2 = c2.shapes();
    let mut points = BTreeSet::new();
    for (_, a) in c1.shapes() {
        for (_, b) in &s2 {
            match a.meet(b) {
                Meet::None => {}
                Meet::Point { at, .. } => {
                    points.insert(at);
                }
                Meet::Overlap { .. } => return Contact::Overlap,
            }
        }
    }
    Contact::Points(points)
}

/// True when every common point is an interior point of one element of each
/// curve (no shared segments, no vertex of either curve on the other).
pub fn is_transversal(c1: &TropicalCurve, c2: &TropicalCurve) -> bool {
    let s2 = c2.shapes();
    c1.shapes().iter().all(|(_, a)| {
        s2.iter().all(|(_, b)| match a.meet(b) {
            Meet::None => true,
            Meet::Point { s, t, .. } => !a.is_endpoint_param(&s) && !b.is_endpoint_param(&t),
            Meet::Overlap { .. } => false,
        })
    })
}

/// `C1·C2`. Isolated common points get
/// `μ_V = (Mult(V; C1 ∪ C2) − Mult(V; C1) − Mult(V; C2)) / 2`; when the
/// curves share a segment the divisor is the limit of a generic translation
/// instead (see [`perturbation_oracle`]). Tagged with the host `c1`.
pub fn stable_intersection(c1: &TropicalCurve, c2: &TropicalCurve) -> Result<Divisor> {
    let points = match contact(c1, c2) {
        Contact::Overlap => return perturbation_oracle(c1, c2, &generic_direction(c1, c2)),
        Contact::Points(points) => points,
    };
    let mut out = Divisor::on(c1);
    if points.is_empty() {
        return Ok(out);
    }
    let overlay = union(c1, c2)?;
    for p in points {
        let total = multiplicity_at(&overlay, &p)? as i64;
        let twice = total - multiplicity_at(c1, &p)? as i64 - multiplicity_at(c2, &p)? as i64;
        if twice % 2 != 0 || twice < 0 {
            return Err(Error::Inconsistent(format!("local intersection number at {p} is {twice}/2")));
        }
        out.add_point(p, twice / 2);
    }
    Ok(out)
}

/// Where a parameter `x0 + x1·ε` sits for all small `ε > 0`.
#[derive(PartialEq, Eq)]
enum Status {
    Inside,
    Outside,
    /// Pinned to an endpoint for every `ε`.
    Stuck,
}

fn status(x0: &Rational, x1: &Rational, shape: &Shape) -> Status {
    let zero = Rational::zero();
    let one = Rational::one();
    if x0 == &zero || (!shape.is_ray() && x0 == &one) {
        if x1.is_zero() {
            return Status::Stuck;
        }
        let inward = if x0 == &zero { x1 > &zero } else { x1 < &zero };
        return if inward { Status::Inside } else { Status::Outside };
    }
    if shape.in_range(x0) {
        Status::Inside
    } else {
        Status::Outside
    }
}

/// Limit as `ε → 0⁺` of the transversal intersection of `c1` with `c2`
/// translated by `ε·direction`.
///
/// Parameters of every crossing are affine in `ε`, so a crossing exists for
/// all small `ε` exactly when the pair (constant term, slope) of each
/// parameter is lexicographically inside its range. The direction is
/// rejected when some contact does not become transversal: a vertex that
/// stays on the other curve, or a shared segment that slides along itself.
pub fn perturbation_oracle(c1: &TropicalCurve, c2: &TropicalCurve, direction: &RationalVector) -> Result<Divisor> {
    let non_generic = |reason: String| Error::NonGeneric { direction: direction.to_string(), reason };
    if direction.is_zero() {
        return Err(non_generic("zero translation".into()));
    }
    let s2 = c2.shapes();
    let mut out = Divisor::on(c1);
    for (ea, a) in c1.shapes() {
        let e = a.span();
        for (eb, b) in &s2 {
            let f = b.span();
            let q = a.start().vector_to(b.start());
            let denom = e.cross(&f);
            if denom.is_zero() {
                let collinear = q.cross(&e).is_zero() && direction.cross(&e).is_zero();
                if collinear && !matches!(a.meet(b), Meet::None) {
                    return Err(non_generic(format!("{ea} of the first curve and {eb} of the second slide along each other")));
                }
                continue;
            }
            let s0 = q.cross(&f) / &denom;
            let s1 = direction.cross(&f) / &denom;
            let t0 = q.cross(&e) / &denom;
            let t1 = direction.cross(&e) / &denom;
            let (ss, ts) = (status(&s0, &s1, &a), status(&t0, &t1, b));
            if ss == Status::Outside || ts == Status::Outside {
                continue;
            }
            if ss == Status::Stuck || ts == Status::Stuck {
                return Err(non_generic(format!("{ea} of the first curve and {eb} of the second keep meeting at a vertex")));
            }
            let mult = crossing_multiplicity(weighted(c1, ea), weighted(c2, *eb)) as i64;
            out.add_point(a.at(&s0), mult);
        }
    }
    Ok(out)
}

/// A translation direction not parallel to any element of either curve;
/// every such direction is accepted by [`perturbation_oracle`].
pub fn generic_direction(c1: &TropicalCurve, c2: &TropicalCurve) -> RationalVector {
    let dirs: BTreeSet<PrimitiveVector> = c1
        .elements()
        .map(|el| c1.direction(el))
        .chain(c2.elements().map(|el| c2.direction(el)))
        .collect();
    for size in 1i64.. {
        for p in 1..=size {
            for q in [size, -size] {
                let cand = IntVector::new(p, q);
                if cand.content() != 1 {
                    continue;
                }
                if dirs.iter().all(|u| cross(u.vector(), cand) != 0) {
                    return cand.to_rational();
                }
            }
        }
    }
    unreachable!("finitely many directions are excluded")
}

/// `area(Δ1 + Δ2) − area(Δ1) − area(Δ2)`.
pub fn bezout_degree(d1: &LatticePolygon, d2: &LatticePolygon) -> i64 {
    let twice = minkowski_sum(d1, d2).area2() - d1.area2() - d2.area2();
    debug_assert!(twice % 2 == 0, "mixed area of lattice polygons is an integer");
    twice / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::fixtures;
    use crate::newton::newton_polygon;

    fn v(x: i64, y: i64) -> IntVector {
        IntVector::new(x, y)
    }

    fn p(x: i64, y: i64) -> RationalPoint {
        RationalPoint::from_ints(x, y)
    }

    fn star(at: RationalPoint, rays: &[(i64, i64)]) -> TropicalCurve {
        TropicalCurve::from_rays_and_edges(vec![at], vec![], rays.iter().map(|&(x, y)| (0, v(x, y))).collect()).unwrap()
    }

    fn shift(c: &TropicalCurve, x: Rational, y: Rational) -> TropicalCurve {
        c.translate(&RationalVector::new(x, y))
    }

    #[test]
    fn transversal_examples() {
        assert_eq!(crossing_multiplicity(v(1, 0), v(0, 1)), 1);
        assert_eq!(crossing_multiplicity(v(2, 0), v(1, 2)), 4);
        assert_eq!(crossing_multiplicity(v(1, 1), v(1, -1)), 2);
        let h = star(p(0, 0), &[(1, 0), (-1, 0)]).scale_weights(2);
        let s = star(p(1, -2), &[(1, 2), (-1, -2)]);
        let right = (0..2).find(|&i| h.rays()[i].direction.x() > 0).unwrap();
        let up = (0..2).find(|&i| s.rays()[i].direction.x() > 0).unwrap();
        assert_eq!(transversal_multiplicity(&h, Element::Ray(right), &s, Element::Ray(up)).unwrap(), 4);
        assert!(matches!(
            transversal_multiplicity(&h, Element::Ray(right), &h, Element::Ray(right)),
            Err(Error::NotTransversal(_))
        ));
    }

    #[test]
    fn two_lines_in_general_position() {
        let a = fixtures::tropical_line();
        let b = shift(&a, int(1), int(2));
        let d = stable_intersection(&a, &b).unwrap();
        assert_eq!(d.degree(), 1);
        assert_eq!(d.multiplicity(&p(1, 1)), 1);
        for dir in [v(2, 1), v(-1, 3), v(5, -2)] {
            assert_eq!(perturbation_oracle(&a, &b, &dir.to_rational()).unwrap(), d);
        }
    }

    #[test]
    fn line_with_itself() {
        let a = fixtures::tropical_line();
        let d = stable_intersection(&a, &a).unwrap();
        assert_eq!(d, Divisor::point(p(0, 0)).with_host(&a));
        assert_eq!(perturbation_oracle(&a, &a, &v(2, 1).to_rational()).unwrap(), d);
        // sliding along a shared ray never separates it
        assert!(matches!(perturbation_oracle(&a, &a, &v(1, 0).to_rational()), Err(Error::NonGeneric { .. })));
    }

    #[test]
    fn vertex_on_vertex_and_vertex_on_edge() {
        let cross = fixtures::cross_vertex();
        let skew = star(p(0, 0), &[(1, 1), (-2, 1), (1, -2)]);
        let d = stable_intersection(&cross, &skew).unwrap();
        assert_eq!(d.len(), 1);
        let bezout = bezout_degree(&newton_polygon(&cross).unwrap(), &newton_polygon(&skew).unwrap());
        assert_eq!(d.degree(), bezout);
        assert_eq!(perturbation_oracle(&cross, &skew, &generic_direction(&cross, &skew)).unwrap(), d);

        let line = shift(&fixtures::tropical_line(), int(-1), int(-1));
        let d = stable_intersection(&cross, &line).unwrap();
        // the diagonal ray passes through the 4-valent vertex and crosses two of its rays
        assert_eq!(d, Divisor::from_terms([(p(0, 0), 2)]).with_host(&cross));
        assert_eq!(perturbation_oracle(&cross, &line, &generic_direction(&cross, &line)).unwrap(), d);
    }

    #[test]
    fn shared_segments_use_the_limit() {
        let c = fixtures::triangle_cycle();
        // the leftward ray of the shifted line runs along the bottom edge of the cycle
        let l = shift(&fixtures::tropical_line(), int(1), int(0));
        let d = stable_intersection(&c, &l).unwrap();
        assert_eq!(d.degree(), 4);
        assert_eq!(d.degree(), bezout_degree(&newton_polygon(&c).unwrap(), &newton_polygon(&l).unwrap()));
        for dir in [v(3, 1), v(1, 3), v(-2, 5)] {
            assert_eq!(perturbation_oracle(&c, &l, &dir.to_rational()).unwrap(), d, "direction {dir}");
        }
    }

    #[test]
    fn symmetric_up_to_host() {
        let c = fixtures::triangle_cycle();
        let l = shift(&fixtures::tropical_line(), rat(1, 3), rat(1, 5));
        let a = stable_intersection(&c, &l).unwrap();
        let b = stable_intersection(&l, &c).unwrap();
        assert_eq!(a.terms().collect::<Vec<_>>(), b.terms().collect::<Vec<_>>());
    }

    #[test]
    fn bezout_examples() {
        for c in 1..5 {
            for d in 1..5 {
                assert_eq!(bezout_degree(&LatticePolygon::simplex(c), &LatticePolygon::simplex(d)), c * d);
            }
        }
        assert_eq!(bezout_degree(&LatticePolygon::simplex(3), &LatticePolygon::point(v(2, 2))), 0);
        let l = LatticePolygon::hull([v(0, 0), v(1, 0), v(1, 1)]);
        let m = LatticePolygon::hull([v(0, 0), v(0, 1), v(1, 1)]);
        // area of the hexagon l + m is 3, each triangle 1/2
        assert_eq!(bezout_degree(&l, &m), 2);
        let (_, lc, mc) = fixtures::two_conics();
        assert_eq!(stable_intersection(&lc, &mc).unwrap().degree(), 2);
    }

    #[test]
    fn oracle_and_formula_agree_on_fixture_pairs() {
        let all = fixtures::all();
        let shifts = [(int(0), int(0)), (int(1), int(0)), (rat(1, 2), int(-1)), (rat(2, 7), rat(3, 11))];
        for (na, a) in &all {
            for (nb, b) in &all {
                for (x, y) in &shifts {
                    let b = shift(b, x.clone(), y.clone());
                    let d = stable_intersection(a, &b).unwrap();
                    let bezout = bezout_degree(&newton_polygon(a).unwrap(), &newton_polygon(&b).unwrap());
                    assert_eq!(d.degree(), bezout, "{na} · {nb} shifted by ({x}, {y})");
                    let oracle = perturbation_oracle(a, &b, &generic_direction(a, &b)).unwrap();
                    assert_eq!(oracle, d, "{na} · {nb} shifted by ({x}, {y})");
                    assert!(d.terms().all(|(_, m)| m >= 1));
                }
            }
        }
    }
}
