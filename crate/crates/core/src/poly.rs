//! Tropical polynomials in two variables and their corner loci.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := number | '(' number ')' | ('x' | 'y') ('^' digits)?
//! number := '-'? digits ('/' digits)?
//! ```
//!
//! `+` is the tropical sum (max, or min under [`Convention::Min`]) and `*` is
//! the tropical product, so `2*x^2*y` is the monomial `2 + 2x + y`. A term
//! without a number has coefficient 0.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::curve::TropicalCurve;
use crate::error::{Error, Result};
use crate::exact::{format_rational, int, IntVector, LatticePoint, Rational, RationalPoint, RationalVector};
use crate::newton::LatticePolygon;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    #[default]
    Max,
    Min,
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(Convention::Max),
            "min" => Ok(Convention::Min),
            _ => Err(Error::Syntax { pos: 0, msg: format!("unknown convention {s:?}, expected max or min") }),
        }
    }
}

/// Exponent → coefficient. Absent exponents have coefficient −∞ (or +∞).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    terms: BTreeMap<LatticePoint, Rational>,
    convention: Convention,
}

impl TropicalPolynomial {
    /// Duplicate exponents are merged by the tropical sum.
    pub fn new<I: IntoIterator<Item = (LatticePoint, Rational)>>(terms: I, convention: Convention) -> Result<Self> {
        let mut map: BTreeMap<LatticePoint, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e.x < 0 || e.y < 0 {
                return Err(Error::Syntax { pos: 0, msg: format!("negative exponent in {e:?}") });
            }
            map.entry(e)
                .and_modify(|old| {
                    let keep_new = match convention {
                        Convention::Max => c > *old,
                        Convention::Min => c < *old,
                    };
                    if keep_new {
                        *old = c.clone();
                    }
                })
                .or_insert(c);
        }
        if map.is_empty() {
            return Err(Error::Syntax { pos: 0, msg: "polynomial has no terms".into() });
        }
        Ok(Self { terms: map, convention })
    }

    pub fn terms(&self) -> &BTreeMap<LatticePoint, Rational> {
        &self.terms
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn support(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.terms.keys().copied()
    }

    /// `Conv(support)`.
    pub fn newton_polygon(&self) -> LatticePolygon {
        LatticePolygon::hull(self.support())
    }

    pub fn evaluate(&self, p: &RationalPoint) -> Rational {
        let values = self.terms.iter().map(|(e, c)| c + int(e.x) * &p.x + int(e.y) * &p.y);
        match self.convention {
            Convention::Max => values.max(),
            Convention::Min => values.min(),
        }
        .expect("at least one term")
    }

    /// Exponents whose terms attain the optimum at `p`.
    pub fn dominant_terms(&self, p: &RationalPoint) -> Vec<LatticePoint> {
        let best = self.evaluate(p);
        self.terms.iter().filter(|(e, c)| *c + int(e.x) * &p.x + int(e.y) * &p.y == best).map(|(e, _)| *e).collect()
    }

    /// The max-plus polynomial with the same corner locus up to `(x,y) ↦ (−x,−y)`.
    fn mirrored(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(), convention: Convention::Max }
    }

    /// The regular subdivision of `Conv(support)` induced by the lifting.
    /// Under the min convention the subdivision of the mirrored polynomial is
    /// returned, which is the one dual to the corner locus.
    pub fn dual_subdivision(&self) -> DualSubdivision {
        match self.convention {
            Convention::Max => subdivide(&self.terms),
            Convention::Min => subdivide(&self.mirrored().terms),
        }
    }

    /// The set where the optimum is attained at least twice, as a weighted
    /// balanced curve.
    pub fn corner_locus(&self) -> Result<TropicalCurve> {
        match self.convention {
            Convention::Max => max_corner_locus(&self.terms),
            Convention::Min => Ok(max_corner_locus(&self.mirrored().terms)?.negate()),
        }
    }
}

impl fmt::Display for TropicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut parts = Vec::new();
            if !c.is_zero() || (e.x == 0 && e.y == 0) {
                let s = format_rational(c);
                parts.push(if c.is_negative() { format!("({s})") } else { s });
            }
            for (name, n) in [("x", e.x), ("y", e.y)] {
                match n {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{n}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

pub fn parse(text: &str, convention: Convention) -> Result<TropicalPolynomial> {
    let mut p = Parser { text: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    loop {
        terms.push(p.term()?);
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'+') => p.pos += 1,
            Some(c) => return Err(p.error(format!("expected '+' or end of input, found {:?}", c as char))),
        }
    }
    TropicalPolynomial::new(terms, convention)
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn term(&mut self) -> Result<(LatticePoint, Rational)> {
        let mut exponent = IntVector::ZERO;
        let mut coefficient = Rational::zero();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'x') | Some(b'y') => {
                    let var = self.peek().unwrap();
                    self.pos += 1;
                    let n = self.power()?;
                    exponent = if var == b'x' { exponent + IntVector::new(n, 0) } else { exponent + IntVector::new(0, n) };
                }
                Some(b'(') => {
                    self.pos += 1;
                    self.skip_ws();
                    coefficient += self.number()?;
                    self.skip_ws();
                    if self.peek() != Some(b')') {
                        return Err(self.error("expected ')'"));
                    }
                    self.pos += 1;
                }
                Some(c) if c == b'-' || c.is_ascii_digit() => coefficient += self.number()?,
                Some(c) => return Err(self.error(format!("unexpected {:?}", c as char))),
                None => return Err(self.error("unexpected end of input")),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((exponent, coefficient));
            }
        }
    }

    fn power(&mut self) -> Result<i64> {
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        if self.peek() == Some(b'-') {
            return Err(self.error("negative exponent"));
        }
        let digits = self.digits()?;
        digits.parse().map_err(|_| self.error("exponent out of range"))
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<Rational> {
        let start = self.pos;
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let numer: num_bigint::BigInt = self.digits()?.parse().expect("digits");
        let mut value = Rational::from_integer(numer);
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let denom: num_bigint::BigInt = self.digits()?.parse().expect("digits");
            if denom.is_zero() {
                return Err(Error::Syntax { pos: start, msg: "zero denominator".into() });
            }
            value /= Rational::from_integer(denom);
        }
        Ok(if negative { -value } else { value })
    }
}

/// A regular subdivision: its maximal cells, each with the support points
/// lying on its lifted face and the affine function `(β, γ)` of that face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSubdivision {
    pub cells: Vec<SubdivisionCell>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionCell {
    /// Hull of the lifted points on this face (a segment for collinear
    /// support).
    pub polygon: LatticePolygon,
    /// All support points on the face, including non-extreme ones.
    pub marked: Vec<LatticePoint>,
}

impl DualSubdivision {
    /// Points and edges of the 1-skeleton.
    pub fn skeleton(&self) -> (BTreeSet<LatticePoint>, BTreeSet<(LatticePoint, LatticePoint)>) {
        let mut points = BTreeSet::new();
        let mut segments = BTreeSet::new();
        for cell in &self.cells {
            let vs = cell.polygon.vertices();
            points.extend(vs.iter().copied());
            if vs.len() == 2 {
                segments.insert((vs[0].min(vs[1]), vs[0].max(vs[1])));
            } else if vs.len() > 2 {
                for k in 0..vs.len() {
                    let (a, b) = (vs[k], vs[(k + 1) % vs.len()]);
                    segments.insert((a.min(b), a.max(b)));
                }
            }
        }
        (points, segments)
    }

    /// The skeleton translated so its lexicographically smallest point is the
    /// origin, matching [`crate::newton::NewtonComplex::normalized`].
    pub fn normalized_skeleton(&self) -> (BTreeSet<LatticePoint>, BTreeSet<(LatticePoint, LatticePoint)>) {
        let (points, segments) = self.skeleton();
        let Some(&min) = points.iter().next() else { return (points, segments) };
        (points.iter().map(|&p| p - min).collect(), segments.iter().map(|&(a, b)| (a - min, b - min)).collect())
    }
}

// An upper face of the lifted support: the plane c = α + β i + γ j.
struct Face {
    beta: Rational,
    gamma: Rational,
    marked: Vec<LatticePoint>,
}

fn upper_faces(terms: &BTreeMap<LatticePoint, Rational>) -> Vec<Face> {
    let pts: Vec<(LatticePoint, &Rational)> = terms.iter().map(|(e, c)| (*e, c)).collect();
    let mut seen: BTreeSet<(Rational, Rational)> = BTreeSet::new();
    let mut faces = Vec::new();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            for c in b + 1..pts.len() {
                let (p, q, r) = (pts[a].0, pts[b].0, pts[c].0);
                let det = (q - p).cross(r - p);
                if det == 0 {
                    continue;
                }
                // solve β (q−p) + γ (q−p)_y = c_q − c_p, same for r
                let (dq, dr) = (pts[b].1 - pts[a].1, pts[c].1 - pts[a].1);
                let det = int(det);
                let beta = (&dq * int((r - p).y) - &dr * int((q - p).y)) / &det;
                let gamma = (&dr * int((q - p).x) - &dq * int((r - p).x)) / &det;
                if seen.contains(&(beta.clone(), gamma.clone())) {
                    continue;
                }
                let alpha = pts[a].1 - &beta * int(p.x) - &gamma * int(p.y);
                let height = |e: LatticePoint| &alpha + &beta * int(e.x) + &gamma * int(e.y);
                if pts.iter().any(|(e, c)| **c > height(*e)) {
                    continue;
                }
                let marked = pts.iter().filter(|(e, c)| **c == height(*e)).map(|(e, _)| *e).collect();
                seen.insert((beta.clone(), gamma.clone()));
                faces.push(Face { beta, gamma, marked });
            }
        }
    }
    faces
}

// Collinear support: the upper chain of (position along the line, coefficient).
fn upper_chain(terms: &BTreeMap<LatticePoint, Rational>) -> Vec<LatticePoint> {
    let mut pts: Vec<(LatticePoint, &Rational)> = terms.iter().map(|(e, c)| (*e, c)).collect();
    pts.sort_by_key(|(e, _)| *e);
    let origin = pts[0].0;
    let dir = pts[pts.len() - 1].0 - origin;
    let pos = |e: LatticePoint| int((e - origin).dot(dir));
    let mut chain: Vec<(LatticePoint, &Rational)> = Vec::new();
    for &(e, c) in &pts {
        // pop while the last point lies on or below the segment chain[-2] → e
        while chain.len() >= 2 {
            let (a, ca) = chain[chain.len() - 2];
            let (b, cb) = chain[chain.len() - 1];
            let lhs = (cb - ca) * (pos(e) - pos(a));
            let rhs = (c - ca) * (pos(b) - pos(a));
            if lhs <= rhs {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push((e, c));
    }
    chain.into_iter().map(|(e, _)| e).collect()
}

fn subdivide(terms: &BTreeMap<LatticePoint, Rational>) -> DualSubdivision {
    let polygon = LatticePolygon::hull(terms.keys().copied());
    let cells = match polygon.dimension() {
        0 => vec![],
        1 => upper_chain(terms)
            .windows(2)
            .map(|w| SubdivisionCell { polygon: LatticePolygon::hull([w[0], w[1]]), marked: vec![w[0], w[1]] })
            .collect(),
        _ => upper_faces(terms)
            .into_iter()
            .map(|f| SubdivisionCell { polygon: LatticePolygon::hull(f.marked.iter().copied()), marked: f.marked })
            .collect(),
    };
    DualSubdivision { cells }
}

fn max_corner_locus(terms: &BTreeMap<LatticePoint, Rational>) -> Result<TropicalCurve> {
    let polygon = LatticePolygon::hull(terms.keys().copied());
    match polygon.dimension() {
        0 => Err(Error::EmptyLocus("a single term never ties".into())),
        1 => parallel_lines(terms),
        _ => planar_locus(terms),
    }
}

fn parallel_lines(terms: &BTreeMap<LatticePoint, Rational>) -> Result<TropicalCurve> {
    let chain = upper_chain(terms);
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for (k, w) in chain.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let d = b - a;
        // the line (b − a)·p = c_a − c_b, through t·d
        let t = (&terms[&a] - &terms[&b]) / int(d.dot(d));
        vertices.push(RationalPoint::origin().offset(&RationalVector::new(&t * int(d.x), &t * int(d.y))));
        rays.push((k, d.rot_ccw()));
        rays.push((k, d.rot_cw()));
    }
    TropicalCurve::from_rays_and_edges(vertices, vec![], rays)
}

fn planar_locus(terms: &BTreeMap<LatticePoint, Rational>) -> Result<TropicalCurve> {
    let faces = upper_faces(terms);
    let vertices: Vec<RationalPoint> = faces.iter().map(|f| RationalPoint::new(-&f.beta, -&f.gamma)).collect();
    // subdivision edge → the cells containing it
    let mut owners: BTreeMap<(LatticePoint, LatticePoint), Vec<usize>> = BTreeMap::new();
    let mut orientation: BTreeMap<(usize, (LatticePoint, LatticePoint)), IntVector> = BTreeMap::new();
    for (k, f) in faces.iter().enumerate() {
        let cell = LatticePolygon::hull(f.marked.iter().copied());
        let vs = cell.vertices();
        for i in 0..vs.len() {
            let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
            let key = (a.min(b), a.max(b));
            owners.entry(key).or_default().push(k);
            orientation.insert((k, key), b - a);
        }
    }
    let mut edges = Vec::new();
    let mut rays = Vec::new();
    for (key, cells) in &owners {
        let weight = (key.1 - key.0).content();
        match cells.as_slice() {
            [a, b] => edges.push(([*a, *b], weight)),
            [a] => rays.push((*a, orientation[&(*a, *key)].rot_cw())),
            _ => unreachable!("a subdivision edge bounds one or two cells"),
        }
    }
    TropicalCurve::from_rays_and_edges(vertices, edges, rays)
}

/// `max over i + j ≤ d` of `c_ij + i x + j y` with `c_ij = −(i² + ij + j²)`:
/// strictly concave coefficients, so the subdivision is unimodular and the
/// locus is a smooth curve of degree `d`.
pub fn smooth_of_degree(d: i64) -> TropicalPolynomial {
    let terms = (0..=d).flat_map(|i| (0..=d - i).map(move |j| (IntVector::new(i, j), int(-(i * i + i * j + j * j)))));
    TropicalPolynomial::new(terms, Convention::Max).expect("nonempty support")
}
