//! Closed segments and rays with exact incidence tests.

use num_traits::{One, Signed, Zero};

use crate::exact::{IntVector, Rational, RationalPoint, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Shape {
    Segment { a: RationalPoint, b: RationalPoint },
    Ray { a: RationalPoint, dir: IntVector },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Meet {
    None,
    /// A single common point, with its parameters on the first and second shape.
    Point { at: RationalPoint, s: Rational, t: Rational },
    /// Collinear overlap of positive length; `to == None` means unbounded.
    Overlap { from: RationalPoint, to: Option<RationalPoint> },
}

impl Shape {
    pub(crate) fn start(&self) -> &RationalPoint {
        match self {
            Shape::Segment { a, .. } | Shape::Ray { a, .. } => a,
        }
    }

    /// Direction vector `d` with the shape equal to `start + s d`, s in
    /// `[0, 1]` for segments and `[0, inf)` for rays.
    pub(crate) fn span(&self) -> RationalVector {
        match self {
            Shape::Segment { a, b } => a.vector_to(b),
            Shape::Ray { dir, .. } => dir.to_rational(),
        }
    }

    pub(crate) fn at(&self, s: &Rational) -> RationalPoint {
        self.start().offset(&self.span().scale(s))
    }

    pub(crate) fn is_ray(&self) -> bool {
        matches!(self, Shape::Ray { .. })
    }

    pub(crate) fn in_range(&self, s: &Rational) -> bool {
        !s.is_negative() && (self.is_ray() || *s <= Rational::one())
    }

    pub(crate) fn is_endpoint_param(&self, s: &Rational) -> bool {
        s.is_zero() || (!self.is_ray() && s.is_one())
    }

    /// Parameter of `p` if it lies on the shape.
    pub(crate) fn locate(&self, p: &RationalPoint) -> Option<Rational> {
        let d = self.span();
        let w = self.start().vector_to(p);
        if !w.cross(&d).is_zero() {
            return None;
        }
        let s = w.dot(&d) / d.dot(&d);
        self.in_range(&s).then_some(s)
    }

    pub(crate) fn meet(&self, other: &Shape) -> Meet {
        let a = self.span();
        let b = other.span();
        let q = self.start().vector_to(other.start());
        let denom = a.cross(&b);
        if !denom.is_zero() {
            let s = q.cross(&b) / &denom;
            let t = q.cross(&a) / &denom;
            if self.in_range(&s) && other.in_range(&t) {
                return Meet::Point { at: self.at(&s), s, t };
            }
            return Meet::None;
        }
        if !q.cross(&a).is_zero() {
            return Meet::None;
        }
        // Collinear: express `other` as an s-interval on `self`.
        let aa = a.dot(&a);
        let s0 = q.dot(&a) / &aa;
        let (lo, hi): (Option<Rational>, Option<Rational>) = match other {
            Shape::Segment { b: ob, .. } => {
                let s1 = self.start().vector_to(ob).dot(&a) / &aa;
                if s0 <= s1 {
                    (Some(s0), Some(s1))
                } else {
                    (Some(s1), Some(s0))
                }
            }
            Shape::Ray { .. } => {
                if b.dot(&a).is_positive() {
                    (Some(s0), None)
                } else {
                    (None, Some(s0))
                }
            }
        };
        let own_hi = if self.is_ray() { None } else { Some(Rational::one()) };
        let lo = match lo {
            Some(l) if l > Rational::zero() => l,
            _ => Rational::zero(),
        };
        let hi = match (hi, own_hi) {
            (Some(h), Some(o)) => Some(if h < o { h } else { o }),
            (Some(h), None) => Some(h),
            (None, o) => o,
        };
        match hi {
            Some(h) if h < lo => Meet::None,
            Some(h) if h == lo => {
                let t = other.locate(&self.at(&lo)).unwrap_or_else(Rational::zero);
                Meet::Point { at: self.at(&lo), s: lo, t }
            }
            Some(h) => Meet::Overlap { from: self.at(&lo), to: Some(self.at(&h)) },
            None => Meet::Overlap { from: self.at(&lo), to: None },
        }
    }
}

/// Strict point-in-polygon test; `p` must not lie on the boundary.
pub(crate) fn inside_polygon(poly: &[RationalPoint], p: &RationalPoint) -> bool {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            // x-coordinate of the crossing compared with p.x, without division sign issues
            let lhs = (&p.x - &a.x) * (&b.y - &a.y);
            let rhs = (&b.x - &a.x) * (&p.y - &a.y);
            let crosses = if b.y > a.y { lhs < rhs } else { lhs > rhs };
            if crosses {
                inside = !inside;
            }
        }
    }
    inside
}

/// Twice the signed area of a closed polygon.
pub(crate) fn signed_area2(poly: &[RationalPoint]) -> Rational {
    let n = poly.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        acc += &a.x * &b.y - &b.x * &a.y;
    }
    acc
}
