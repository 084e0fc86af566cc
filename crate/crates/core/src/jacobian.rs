//! Cycle parametrizations by lattice length and the Abel coordinate map.
//!
//! For a reduced curve whose bunch is a bouquet of `g` circles, the map
//! `(P_1, ..., P_g) ↦ P_1 + ... + P_g − g·O` from the product of the cycles
//! to the Jacobian is a bijection. Each cycle `Λ_i` is parametrized by
//! lattice length, which identifies it with `R / ℓ_i Z`, so a divisor class
//! is determined by its degree and one residue modulo `ℓ_i` per cycle.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::bunch::{bouquet_structure, bunch, BouquetCycle, BouquetStructure, BouquetVerdict, BunchGraph, EdgeKind};
use crate::curve::{Location, TropicalCurve};
use crate::error::{Error, Result};
use crate::exact::{Rational, RationalPoint};
use crate::intersect::{stable_intersection, Divisor};

/// `x mod m` in `[0, m)`.
pub fn reduce(x: &Rational, m: &Rational) -> Rational {
    let q = (x / m).floor();
    x - q * m
}

/// The map `π: R → Λ` of one cycle: `π(t)` is the point at lattice length
/// `t + origin` from the first cycle vertex along the cycle's orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleParametrization {
    pub cycle: BouquetCycle,
    /// Lattice length of each cycle edge, in traversal order.
    pub edge_lengths: Vec<Rational>,
    /// Parameter of `cycle.vertices[k]` measured from `cycle.vertices[0]`.
    starts: Vec<Rational>,
    pub length: Rational,
    /// Arc position of `π(0)`.
    origin: Rational,
}

impl CycleParametrization {
    fn new(curve: &TropicalCurve, cycle: BouquetCycle) -> Self {
        let edge_lengths: Vec<Rational> = cycle.edges.iter().map(|&(e, _)| curve.edge_lattice_length(e).clone()).collect();
        let mut starts = Vec::with_capacity(edge_lengths.len());
        let mut acc = Rational::zero();
        for l in &edge_lengths {
            starts.push(acc.clone());
            acc += l;
        }
        Self { cycle, edge_lengths, starts, length: acc, origin: Rational::zero() }
    }

    /// `π(t)`; periodic with period `ℓ`.
    pub fn point_at(&self, curve: &TropicalCurve, t: &Rational) -> RationalPoint {
        let arc = reduce(&(t + &self.origin), &self.length);
        let k = self.starts.iter().rposition(|s| *s <= arc).expect("starts[0] is zero");
        let (e, forward) = self.cycle.edges[k];
        let u = curve.edge_direction(e).vector();
        let u = if forward { u } else { -u };
        curve.vertex(self.cycle.vertices[k]).offset_int(u, &(arc - &self.starts[k]))
    }

    /// Parameter of a point of the cycle, in `[0, ℓ)`.
    pub fn param_of(&self, curve: &TropicalCurve, p: &RationalPoint) -> Option<Rational> {
        for (k, &(e, forward)) in self.cycle.edges.iter().enumerate() {
            let start = curve.vertex(self.cycle.vertices[k]);
            if start == p {
                return Some(reduce(&(&self.starts[k] - &self.origin), &self.length));
            }
            if curve.shape(crate::curve::Element::Edge(e)).locate(p).is_some() {
                let along = curve.lattice_offset(e, p);
                let along = if forward { along } else { &self.edge_lengths[k] - along };
                return Some(reduce(&(&self.starts[k] + along - &self.origin), &self.length));
            }
        }
        None
    }

    pub fn base_point(&self, curve: &TropicalCurve) -> RationalPoint {
        self.point_at(curve, &Rational::zero())
    }

    /// Same base point, opposite orientation.
    pub fn reversed(&self, curve: &TropicalCurve) -> Self {
        let base = self.base_point(curve);
        let mut cycle = self.cycle.clone();
        cycle.edges.reverse();
        for e in &mut cycle.edges {
            e.1 = !e.1;
        }
        cycle.vertices = cycle.edges.iter().map(|&(k, fwd)| curve.edges()[k].ends[if fwd { 0 } else { 1 }]).collect();
        let mut out = Self::new(curve, cycle);
        out.origin = out.param_of(curve, &base).expect("base point is on the cycle");
        out
    }

    /// `π'(t) = π(t + shift)`.
    pub fn rebased(&self, shift: &Rational) -> Self {
        Self { origin: reduce(&(&self.origin + shift), &self.length), ..self.clone() }
    }
}

/// Where the quotient map sends a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Projection {
    /// The bouquet center `O`.
    Center,
    Cycle { index: usize, residue: Rational },
}

/// Degree and one residue per cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelCoordinate {
    pub residues: Vec<Rational>,
    pub degree: i64,
}

impl AbelCoordinate {
    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "residues": self.residues.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for AbelCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}, residues (", self.degree)?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// Cycle parametrizations of a curve whose bunch is a bouquet.
#[derive(Clone, Debug)]
pub struct Jacobian {
    curve: TropicalCurve,
    bunch: BunchGraph,
    bouquet: BouquetStructure,
    pub cycles: Vec<CycleParametrization>,
    cycle_of_edge: BTreeMap<usize, usize>,
    // for blobs other than the center: the cycle and vertex where they attach
    attachment: BTreeMap<usize, (usize, usize)>,
}

impl Jacobian {
    /// Fails with [`Error::Unsupported`] when the bunch is not a bouquet.
    pub fn new(curve: &TropicalCurve) -> Result<Self> {
        let bunch = bunch(curve)?;
        let bouquet = match bouquet_structure(curve, &bunch) {
            BouquetVerdict::Bouquet(b) => b,
            BouquetVerdict::NotABouquet(why) => return Err(Error::Unsupported(format!("bunch is not a bouquet: {why}"))),
        };
        let cycles: Vec<CycleParametrization> =
            bouquet.cycles.iter().map(|c| CycleParametrization::new(curve, c.clone())).collect();
        let mut cycle_of_edge = BTreeMap::new();
        let mut attachment = BTreeMap::new();
        for (i, c) in bouquet.cycles.iter().enumerate() {
            for &(e, _) in &c.edges {
                cycle_of_edge.insert(e, i);
            }
            for &v in &c.vertices {
                let node = bunch.node_of_vertex[v];
                if node != bouquet.center {
                    attachment.insert(node, (i, v));
                }
            }
        }
        Ok(Self { curve: curve.clone(), bunch, bouquet, cycles, cycle_of_edge, attachment })
    }

    /// Like [`Jacobian::new`] but also enforces the remaining hypotheses of
    /// the bijectivity theorem: the curve is balanced and reduced.
    pub fn for_theorem(curve: &TropicalCurve) -> Result<Self> {
        curve.ensure_balanced()?;
        if !curve.is_reduced() {
            return Err(Error::Unsupported("curve is not reduced (some weight exceeds 1)".into()));
        }
        Self::new(curve)
    }

    pub fn curve(&self) -> &TropicalCurve {
        &self.curve
    }

    pub fn bouquet(&self) -> &BouquetStructure {
        &self.bouquet
    }

    pub fn genus(&self) -> usize {
        self.cycles.len()
    }

    /// `(ℓ_1, ..., ℓ_g)`.
    pub fn lengths(&self) -> Vec<Rational> {
        self.cycles.iter().map(|c| c.length.clone()).collect()
    }

    fn project_vertex(&self, v: usize) -> Projection {
        let node = self.bunch.node_of_vertex[v];
        if node == self.bouquet.center {
            return Projection::Center;
        }
        let (i, x) = self.attachment[&node];
        let residue = self.cycles[i].param_of(&self.curve, self.curve.vertex(x)).expect("attachment vertex is on its cycle");
        Projection::Cycle { index: i, residue }
    }

    /// The quotient map followed by the cycle parameter.
    pub fn project_point(&self, p: &RationalPoint) -> Result<Projection> {
        let loc = self.curve.locate(p).ok_or_else(|| Error::NotOnCurve(p.to_string()))?;
        Ok(match loc {
            Location::Edge(e) if self.bunch.classification.edges[e] == EdgeKind::Cycle => {
                let i = self.cycle_of_edge[&e];
                Projection::Cycle { index: i, residue: self.cycles[i].param_of(&self.curve, p).expect("point is on its cycle") }
            }
            Location::Edge(e) => self.project_vertex(self.curve.edges()[e].ends[0]),
            Location::Ray(r) => self.project_vertex(self.curve.rays()[r].vertex),
            Location::Vertex(v) => self.project_vertex(v),
        })
    }

    /// `i`-th residue is `Σ m_P λ_i(P) mod ℓ_i`, where points off `Λ_i`
    /// contribute the parameter of the center.
    pub fn abel_coordinate(&self, d: &Divisor) -> Result<AbelCoordinate> {
        let g = self.genus();
        let centers: Vec<Rational> = self
            .cycles
            .iter()
            .map(|c| c.param_of(&self.curve, self.curve.vertex(c.cycle.base)).expect("base is on the cycle"))
            .collect();
        let mut sums = vec![Rational::zero(); g];
        for (p, m) in d.terms() {
            let m = Rational::from_integer(m.into());
            let proj = self.project_point(p)?;
            for (i, sum) in sums.iter_mut().enumerate() {
                let r = match &proj {
                    Projection::Cycle { index, residue } if *index == i => residue,
                    _ => &centers[i],
                };
                *sum += &m * r;
            }
        }
        let residues = sums.iter().zip(&self.cycles).map(|(s, c)| reduce(s, &c.length)).collect();
        Ok(AbelCoordinate { residues, degree: d.degree() })
    }

    /// Decides `D ~ D'` by comparing Abel coordinates. Refuses unless the
    /// curve is reduced (the bouquet condition is checked at construction).
    pub fn linearly_equivalent(&self, d1: &Divisor, d2: &Divisor) -> Result<bool> {
        if !self.curve.is_reduced() {
            return Err(Error::Unsupported("curve is not reduced (some weight exceeds 1)".into()));
        }
        d1.checked_sub(d2)?;
        Ok(self.abel_coordinate(d1)? == self.abel_coordinate(d2)?)
    }

    /// `σ(L)`: the Abel coordinate of `C·L`.
    pub fn sigma(&self, mobile: &TropicalCurve) -> Result<AbelCoordinate> {
        self.abel_coordinate(&stable_intersection(&self.curve, mobile)?)
    }

    /// Same Jacobian with cycle `i` traversed the other way.
    pub fn with_cycle_reversed(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.cycles[i] = self.cycles[i].reversed(&self.curve);
        out
    }

    /// Same Jacobian with the origin of cycle `i` moved by `shift`.
    pub fn with_cycle_rebased(&self, i: usize, shift: &Rational) -> Self {
        let mut out = self.clone();
        out.cycles[i] = self.cycles[i].rebased(shift);
        out
    }
}

/// Free-standing form of [`Jacobian::linearly_equivalent`] that also checks
/// every theorem hypothesis.
pub fn linearly_equivalent(d1: &Divisor, d2: &Divisor, curve: &TropicalCurve) -> Result<bool> {
    Jacobian::for_theorem(curve)?.linearly_equivalent(d1, d2)
}
