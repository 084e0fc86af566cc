//! Exact planar arithmetic.
//!
//! Coordinates are arbitrary-precision rationals, directions are machine
//! integers. Every predicate in the crate bottoms out in [`cross`] and
//! [`dot`] on these types, so nothing here ever rounds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-1.25"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim().replace('\u{2212}', "-");
    let err = || Error::Parse(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mut numer = BigInt::from_str(&format!("{}{}", if digits.is_empty() { "0" } else { digits }, frac))
            .map_err(|_| err())?;
        if negative {
            numer = -numer;
        }
        return Ok(Rational::new(numer, scale));
    }
    let r = Rational::from_str(&s).map_err(|_| err())?;
    Ok(r)
}

/// Lossy conversion used only for display output.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn to_i64(b: &BigInt, what: &str) -> Result<i64> {
    b.to_i64().ok_or_else(|| Error::Overflow(format!("{what} does not fit in 64 bits")))
}

/// Integer vector in the plane. Also used for lattice points.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector {
    pub x: i64,
    pub y: i64,
}

pub type LatticePoint = IntVector;

impl IntVector {
    pub const ZERO: IntVector = IntVector { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn cross(self, other: IntVector) -> i64 {
        cross(self, other)
    }

    pub fn dot(self, other: IntVector) -> i64 {
        dot(self, other)
    }

    /// Counterclockwise quarter turn.
    pub fn rot_ccw(self) -> Self {
        Self::new(-self.y, self.x)
    }

    /// Clockwise quarter turn.
    pub fn rot_cw(self) -> Self {
        Self::new(self.y, -self.x)
    }

    pub fn to_rational(self) -> RationalVector {
        RationalVector::new(int(self.x), int(self.y))
    }

    /// Greatest common divisor of the absolute coordinates.
    pub fn content(self) -> u64 {
        (self.x.unsigned_abs()).gcd(&self.y.unsigned_abs())
    }
}

impl Add for IntVector {
    type Output = IntVector;
    fn add(self, o: IntVector) -> IntVector {
        IntVector::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for IntVector {
    type Output = IntVector;
    fn sub(self, o: IntVector) -> IntVector {
        IntVector::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector::new(-self.x, -self.y)
    }
}

impl Mul<i64> for IntVector {
    type Output = IntVector;
    fn mul(self, k: i64) -> IntVector {
        IntVector::new(self.x * k, self.y * k)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Integer vector with coprime coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimitiveVector(IntVector);

impl PrimitiveVector {
    pub fn new(x: i64, y: i64) -> Result<Self> {
        let v = IntVector::new(x, y);
        match primitive_decompose(v)? {
            (u, 1) => Ok(u),
            _ => Err(Error::Structure(format!("direction {v} is not primitive"))),
        }
    }

    pub fn vector(self) -> IntVector {
        self.0
    }

    pub fn x(self) -> i64 {
        self.0.x
    }

    pub fn y(self) -> i64 {
        self.0.y
    }

    /// The weighted vector `m * u`.
    pub fn scaled(self, m: u64) -> IntVector {
        self.0 * m as i64
    }

    pub fn angle(self) -> PseudoAngle {
        PseudoAngle(self)
    }
}

impl Neg for PrimitiveVector {
    type Output = PrimitiveVector;
    fn neg(self) -> PrimitiveVector {
        PrimitiveVector(-self.0)
    }
}

impl fmt::Display for PrimitiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn cross(u: IntVector, v: IntVector) -> i64 {
    u.x * v.y - v.x * u.y
}

pub fn dot(u: IntVector, v: IntVector) -> i64 {
    u.x * v.x + u.y * v.y
}

/// Splits `v` into `(u, m)` with `v = m * u` and `u` primitive.
pub fn primitive_decompose(v: IntVector) -> Result<(PrimitiveVector, u64)> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let m = v.content();
    let u = IntVector::new(v.x / m as i64, v.y / m as i64);
    Ok((PrimitiveVector(u), m))
}

/// Rational vector (a displacement between rational points).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector {
    pub x: Rational,
    pub y: Rational,
}

impl RationalVector {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn cross(&self, o: &RationalVector) -> Rational {
        &self.x * &o.y - &o.x * &self.y
    }

    pub fn dot(&self, o: &RationalVector) -> Rational {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn scale(&self, k: &Rational) -> RationalVector {
        RationalVector::new(&self.x * k, &self.y * k)
    }

    /// Primitive direction of a nonzero rational vector together with its
    /// lattice length, i.e. `self = length * u`.
    pub fn primitive(&self) -> Result<(PrimitiveVector, Rational)> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let denom = self.x.denom().lcm(self.y.denom());
        let ix = self.x.numer() * (&denom / self.x.denom());
        let iy = self.y.numer() * (&denom / self.y.denom());
        let g = ix.gcd(&iy);
        let u = IntVector::new(to_i64(&(&ix / &g), "direction")?, to_i64(&(&iy / &g), "direction")?);
        Ok((PrimitiveVector(u), Rational::new(g, denom)))
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<IntVector> for RationalVector {
    fn from(v: IntVector) -> Self {
        v.to_rational()
    }
}

/// Point of the plane with exact rational coordinates. Ordered
/// lexicographically (x, then y).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RationalPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(int(x), int(y))
    }

    pub fn origin() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn vector_to(&self, other: &RationalPoint) -> RationalVector {
        RationalVector::new(&other.x - &self.x, &other.y - &self.y)
    }

    pub fn offset(&self, v: &RationalVector) -> RationalPoint {
        RationalPoint::new(&self.x + &v.x, &self.y + &v.y)
    }

    pub fn offset_int(&self, v: IntVector, k: &Rational) -> RationalPoint {
        RationalPoint::new(&self.x + k * int(v.x), &self.y + k * int(v.y))
    }

    pub fn neg(&self) -> RationalPoint {
        RationalPoint::new(-&self.x, -&self.y)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `P0P x v`, the moment of the tangent vector `(v, P)` about `P0`.
pub fn moment(v: IntVector, p: &RationalPoint, p0: &RationalPoint) -> Rational {
    p0.vector_to(p).cross(&v.to_rational())
}

/// Exact angular sort key for nonzero integer vectors.
///
/// Orders by counterclockwise angle from the positive x-axis in `[0, 2pi)`:
/// first by quadrant, then by the sign of the cross product. Two keys are
/// equal exactly when the vectors are positive multiples of each other.
#[derive(Clone, Copy, Debug)]
pub struct PseudoAngle(PrimitiveVector);

impl PseudoAngle {
    pub fn of(v: IntVector) -> Result<Self> {
        Ok(PseudoAngle(primitive_decompose(v)?.0))
    }

    pub fn direction(self) -> PrimitiveVector {
        self.0
    }
}

fn quadrant(v: IntVector) -> u8 {
    if v.x > 0 && v.y >= 0 {
        0
    } else if v.x <= 0 && v.y > 0 {
        1
    } else if v.x < 0 && v.y <= 0 {
        2
    } else {
        3
    }
}

/// Counterclockwise angular comparison of two nonzero vectors.
pub fn angle_cmp(a: IntVector, b: IntVector) -> Ordering {
    quadrant(a).cmp(&quadrant(b)).then_with(|| 0.cmp(&cross(a, b)))
}

impl PartialEq for PseudoAngle {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for PseudoAngle {}

impl PartialOrd for PseudoAngle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PseudoAngle {
    fn cmp(&self, other: &Self) -> Ordering {
        angle_cmp(self.0.vector(), other.0.vector())
    }
}

pub(crate) fn rational_one() -> Rational {
    Rational::one()
}
