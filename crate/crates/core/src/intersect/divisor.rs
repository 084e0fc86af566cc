use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::TropicalCurve;
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, RationalPoint};

/// Finite formal sum of points with integer multiplicities.
///
/// A divisor may carry the [`TropicalCurve::host_tag`] of the curve it lives
/// on; arithmetic between divisors with different tags is refused. Untagged
/// divisors combine with anything.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    host: Option<u64>,
    terms: BTreeMap<RationalPoint, i64>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    /// Empty divisor on `host`.
    pub fn on(host: &TropicalCurve) -> Self {
        Self { host: Some(host.host_tag()), terms: BTreeMap::new() }
    }

    /// The divisor `1·p`, untagged.
    pub fn point(p: RationalPoint) -> Self {
        let mut d = Self::new();
        d.add_point(p, 1);
        d
    }

    pub fn from_terms<I: IntoIterator<Item = (RationalPoint, i64)>>(terms: I) -> Self {
        let mut d = Self::new();
        for (p, m) in terms {
            d.add_point(p, m);
        }
        d
    }

    pub fn host(&self) -> Option<u64> {
        self.host
    }

    pub fn with_host(mut self, host: &TropicalCurve) -> Self {
        self.host = Some(host.host_tag());
        self
    }

    pub fn add_point(&mut self, p: RationalPoint, m: i64) {
        let entry = self.terms.entry(p).or_insert(0);
        *entry += m;
        if *entry == 0 {
            self.terms.retain(|_, m| *m != 0);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RationalPoint, i64)> + '_ {
        self.terms.iter().map(|(p, m)| (p, *m))
    }

    pub fn multiplicity(&self, p: &RationalPoint) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.values().sum()
    }

    fn join_host(&self, other: &Divisor) -> Result<Option<u64>> {
        match (self.host, other.host) {
            (Some(a), Some(b)) if a != b => Err(Error::HostMismatch),
            (a, b) => Ok(a.or(b)),
        }
    }

    pub fn checked_add(&self, other: &Divisor) -> Result<Divisor> {
        let mut out = Divisor { host: self.join_host(other)?, terms: self.terms.clone() };
        for (p, m) in other.terms() {
            out.add_point(p.clone(), m);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Divisor) -> Result<Divisor> {
        self.checked_add(&other.scaled(-1))
    }

    pub fn scaled(&self, k: i64) -> Divisor {
        Divisor::from_terms(self.terms().map(|(p, m)| (p.clone(), k * m))).tagged(self.host)
    }

    fn tagged(mut self, host: Option<u64>) -> Self {
        self.host = host;
        self
    }

    /// First support point not on `curve`, if any.
    pub fn off_curve_point(&self, curve: &TropicalCurve) -> Option<&RationalPoint> {
        self.terms.keys().find(|p| !curve.contains(p))
    }

    pub fn to_file(&self) -> Vec<DivisorTerm> {
        self.terms()
            .map(|(p, m)| DivisorTerm { point: [format_rational(&p.x), format_rational(&p.y)], multiplicity: m })
            .collect()
    }

    pub fn from_file(terms: &[DivisorTerm]) -> Result<Divisor> {
        let mut d = Divisor::new();
        for (i, t) in terms.iter().enumerate() {
            let coord = |k: usize| {
                parse_rational(&t.point[k]).map_err(|_| Error::Structure(format!("[{i}].point[{k}]: bad rational {:?}", t.point[k])))
            };
            d.add_point(RationalPoint::new(coord(0)?, coord(1)?), t.multiplicity);
        }
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("divisors always serialize")
    }

    pub fn from_json(text: &str) -> Result<Divisor> {
        let terms: Vec<DivisorTerm> = serde_json::from_str(text).map_err(|e| Error::Structure(e.to_string()))?;
        Divisor::from_file(&terms)
    }
}

/// One entry of the divisor file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorTerm {
    pub point: [String; 2],
    pub multiplicity: i64,
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, m)) in self.terms().enumerate() {
            match (i, m) {
                (0, m) if m < 0 => write!(f, "-")?,
                (0, _) => {}
                (_, m) if m < 0 => write!(f, " - ")?,
                _ => write!(f, " + ")?,
            }
            if m.abs() != 1 {
                write!(f, "{}·", m.abs())?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}
