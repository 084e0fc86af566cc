//! Sums over the edges crossing a closed loop.

use num_traits::Zero;

use super::TropicalCurve;
use crate::error::{Error, Result};
use crate::exact::{moment, IntVector, Rational, RationalPoint};
use crate::shape::{inside_polygon, Meet, Shape};

struct Crossing {
    at: RationalPoint,
    /// Weighted primitive vector oriented from the inside of the loop to the outside.
    outward: IntVector,
}

fn loop_sides(poly: &[RationalPoint]) -> Vec<Shape> {
    (0..poly.len())
        .map(|i| Shape::Segment { a: poly[i].clone(), b: poly[(i + 1) % poly.len()].clone() })
        .collect()
}

fn check_loop(poly: &[RationalPoint]) -> Result<()> {
    if poly.len() < 3 {
        return Err(Error::Loop("a loop needs at least three corners".into()));
    }
    let sides = loop_sides(poly);
    let n = sides.len();
    for i in 0..n {
        if poly[i] == poly[(i + 1) % n] {
            return Err(Error::Loop(format!("loop corner {i} is repeated")));
        }
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            match sides[i].meet(&sides[j]) {
                Meet::None => {}
                Meet::Point { .. } if adjacent => {}
                _ => return Err(Error::Loop(format!("loop sides {i} and {j} touch; the loop is not simple"))),
            }
        }
    }
    Ok(())
}

fn crossings(curve: &TropicalCurve, poly: &[RationalPoint]) -> Result<Vec<Crossing>> {
    check_loop(poly)?;
    let sides = loop_sides(poly);
    for (i, v) in curve.vertices().iter().enumerate() {
        if sides.iter().any(|s| s.locate(v).is_some()) {
            return Err(Error::Loop(format!("loop passes through vertex {i}")));
        }
    }
    let mut out = Vec::new();
    for (el, shape) in curve.shapes() {
        let mut params: Vec<(Rational, RationalPoint)> = Vec::new();
        for side in &sides {
            match shape.meet(side) {
                Meet::None => {}
                Meet::Point { at, s, t } => {
                    if side.is_endpoint_param(&t) {
                        return Err(Error::Loop(format!("loop corner {at} lies on {el}")));
                    }
                    params.push((s, at));
                }
                Meet::Overlap { .. } => {
                    return Err(Error::Loop(format!("loop runs along {el}")));
                }
            }
        }
        if params.is_empty() {
            continue;
        }
        params.sort();
        let vector = curve.direction(el).scaled(curve.weight(el));
        let start_inside = inside_polygon(poly, shape.start());
        for (k, (_, at)) in params.into_iter().enumerate() {
            let before_inside = start_inside ^ (k % 2 == 1);
            let outward = if before_inside { vector } else { -vector };
            out.push(Crossing { at, outward });
        }
    }
    Ok(out)
}

/// Sum of the weighted primitive vectors of the edges crossed by `poly`,
/// each taken from its side inside the loop.
///
/// `poly` is a simple closed polygon (the closing side is implicit) that
/// meets the curve transversally away from its vertices.
pub fn global_balance_sum(curve: &TropicalCurve, poly: &[RationalPoint]) -> Result<IntVector> {
    Ok(crossings(curve, poly)?.iter().fold(IntVector::ZERO, |acc, c| acc + c.outward))
}

/// Sum of the moments about `p0` of the same tangent vectors as
/// [`global_balance_sum`]. Each moment is evaluated at the crossing point,
/// which gives the same value as at the inside vertex.
pub fn moment_sum(curve: &TropicalCurve, poly: &[RationalPoint], p0: &RationalPoint) -> Result<Rational> {
    Ok(crossings(curve, poly)?.iter().fold(Rational::zero(), |acc, c| acc + moment(c.outward, &c.at, p0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::fixtures;

    fn p(x: i64, y: i64) -> RationalPoint {
        RationalPoint::from_ints(x, y)
    }

    fn square(cx: Rational, cy: Rational, r: Rational) -> Vec<RationalPoint> {
        vec![
            RationalPoint::new(&cx - &r, &cy - &r),
            RationalPoint::new(&cx + &r, &cy - &r),
            RationalPoint::new(&cx + &r, &cy + &r),
            RationalPoint::new(&cx - &r, &cy + &r),
        ]
    }

    #[test]
    fn loop_around_the_line() {
        let line = fixtures::tropical_line();
        let big = square(int(1), int(0), int(5));
        assert_eq!(global_balance_sum(&line, &big).unwrap(), IntVector::ZERO);
        assert_eq!(moment_sum(&line, &big, &p(0, 0)).unwrap(), int(0));
        assert_eq!(moment_sum(&line, &big, &p(5, 7)).unwrap(), int(0));
    }

    #[test]
    fn loop_crossing_one_edge_twice() {
        let line = fixtures::tropical_line();
        // a box straddling the ray (1,1) far from the vertex
        let poly = vec![p(9, 11), p(11, 11), p(11, 9), p(9, 9)];
        let poly: Vec<RationalPoint> = poly.into_iter().map(|q| RationalPoint::new(q.x + rat(1, 2), q.y)).collect();
        let crossings_found = crossings(&line, &poly).unwrap();
        assert_eq!(crossings_found.len(), 2);
        assert_eq!(global_balance_sum(&line, &poly).unwrap(), IntVector::ZERO);
        assert_eq!(moment_sum(&line, &poly, &p(-3, 2)).unwrap(), int(0));
    }

    #[test]
    fn unbalanced_vertex_shows_up() {
        let c = TropicalCurve::from_rays_and_edges(vec![p(0, 0)], vec![], vec![(0, IntVector::new(1, 0)), (0, IntVector::new(0, 1))])
            .unwrap();
        let s = global_balance_sum(&c, &square(int(0), int(0), int(1))).unwrap();
        assert_eq!(s, IntVector::new(1, 1));
    }

    #[test]
    fn loop_around_triangle_cycle() {
        let c = fixtures::triangle_cycle();
        let poly = vec![
            RationalPoint::new(rat(-1, 3), rat(-1, 4)),
            RationalPoint::new(rat(8, 5), rat(-1, 4)),
            RationalPoint::new(rat(-1, 4), rat(8, 5)),
        ];
        assert_eq!(global_balance_sum(&c, &poly).unwrap(), IntVector::ZERO);
        for p0 in [p(0, 0), p(5, -3), RationalPoint::new(rat(7, 3), rat(-2, 9))] {
            assert_eq!(moment_sum(&c, &poly, &p0).unwrap(), int(0));
        }
    }

    #[test]
    fn precondition_errors() {
        let line = fixtures::tropical_line();
        // through the vertex
        let poly = vec![p(0, 0), p(1, -2), p(2, 3)];
        assert!(matches!(global_balance_sum(&line, &poly), Err(Error::Loop(_))));
        // side along a ray
        let poly = vec![p(1, 1), p(3, 3), p(0, 5)];
        assert!(matches!(global_balance_sum(&line, &poly), Err(Error::Loop(_))));
        // corner on a ray
        let poly = vec![p(-2, 0), p(-3, 2), p(-4, -1)];
        assert!(matches!(global_balance_sum(&line, &poly), Err(Error::Loop(_))));
        // self-intersecting bow tie
        let poly = vec![p(5, 0), p(6, 1), p(6, 0), p(5, 1)];
        assert!(matches!(global_balance_sum(&line, &poly), Err(Error::Loop(_))));
    }
}
