//! Exact tropical plane curves.
//!
//! Curves are weighted rational-slope complexes with exact rational vertices.
//! The crate checks balancing, builds the dual Newton complex, computes
//! stable intersections, contracts a curve to its bunch, and maps divisors
//! to per-cycle lattice-length coordinates on the Jacobian torus.

pub mod bunch;
pub mod curve;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod intersect;
pub mod jacobian;
pub mod newton;
pub mod params;
pub mod poly;
mod shape;

pub use curve::{BalanceReport, Element, Location, TropicalCurve};
pub use error::{Error, Result};
pub use exact::{IntVector, LatticePoint, PrimitiveVector, PseudoAngle, Rational, RationalPoint, RationalVector};
pub use intersect::Divisor;
