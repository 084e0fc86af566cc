//! The parameter space of curves with a fixed combinatorial type.
//!
//! A curve with fixed graph, edge directions and weights is determined by its
//! edge lattice lengths `a_1, ..., a_l > 0` and the position `b` of one
//! anchor vertex, subject to one vector closure equation per independent
//! cycle. The admissible parameters form a relatively open convex cone.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::curve::{Edge, Ray, TropicalCurve};
use crate::error::{Error, Result};
use crate::exact::{format_rational, int, rat, IntVector, PrimitiveVector, Rational, RationalPoint, RationalVector};
use crate::intersect::is_transversal;
use crate::jacobian::{AbelCoordinate, Jacobian};
use crate::newton::{newton_complex, newton_polygon};
use crate::shape::Meet;

/// The labelled graph of a curve with its edge directions, weights and rays,
/// plus a fundamental cycle basis rooted at the anchor vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialType {
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
    /// Primitive direction from `ends[0]` to `ends[1]`.
    pub directions: Vec<PrimitiveVector>,
    pub rays: Vec<Ray>,
    pub anchor: usize,
    /// Each cycle as `(edge, traversed forward)`.
    pub cycles: Vec<Vec<(usize, bool)>>,
    // spanning-tree edge used to reach each vertex, in BFS order
    tree: Vec<(usize, usize, bool)>,
}

impl CombinatorialType {
    fn of(curve: &TropicalCurve, anchor: usize) -> Result<Self> {
        let n = curve.vertices().len();
        if anchor >= n {
            return Err(Error::NotAVertex(anchor));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (k, e) in curve.edges().iter().enumerate() {
            adjacency[e.ends[0]].push((k, e.ends[1], true));
            adjacency[e.ends[1]].push((k, e.ends[0], false));
        }
        // parent edge of each vertex: (edge, parent, forward from parent)
        let mut parent: Vec<Option<(usize, usize, bool)>> = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[anchor] = 0;
        let mut tree = Vec::new();
        let mut in_tree = vec![false; curve.edges().len()];
        let mut queue = VecDeque::from([anchor]);
        while let Some(v) = queue.pop_front() {
            for &(k, w, fwd) in &adjacency[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((k, v, fwd));
                    in_tree[k] = true;
                    tree.push((k, w, fwd));
                    queue.push_back(w);
                }
            }
        }
        if depth.iter().any(|&d| d == usize::MAX) {
            return Err(Error::Disconnected);
        }
        let mut cycles = Vec::new();
        for (k, e) in curve.edges().iter().enumerate() {
            if in_tree[k] {
                continue;
            }
            // e from a to b, then the tree path from b back to a
            let (mut a, mut b) = (e.ends[0], e.ends[1]);
            let mut up_from_b = Vec::new();
            let mut up_from_a = Vec::new();
            while a != b {
                if depth[b] >= depth[a] {
                    let (pk, pv, fwd) = parent[b].expect("non-root vertex has a parent");
                    up_from_b.push((pk, !fwd));
                    b = pv;
                } else {
                    let (pk, pv, fwd) = parent[a].expect("non-root vertex has a parent");
                    up_from_a.push((pk, fwd));
                    a = pv;
                }
            }
            let mut cycle = vec![(k, true)];
            cycle.extend(up_from_b);
            cycle.extend(up_from_a.into_iter().rev());
            cycles.push(cycle);
        }
        Ok(Self {
            vertex_count: n,
            edges: curve.edges().to_vec(),
            directions: (0..curve.edges().len()).map(|e| curve.edge_direction(e)).collect(),
            rays: curve.rays().to_vec(),
            anchor,
            cycles,
            tree,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `Σ ± a_e u_e` around cycle `j`.
    fn closure_defect(&self, j: usize, lengths: &[Rational]) -> RationalVector {
        let mut sum = RationalVector::zero();
        for &(e, fwd) in &self.cycles[j] {
            let u = self.directions[e].vector();
            let u = if fwd { u } else { -u };
            let step = u.to_rational().scale(&lengths[e]);
            sum = RationalVector::new(sum.x + step.x, sum.y + step.y);
        }
        sum
    }

    /// Rows of the closure equations as a `2c × l` matrix.
    fn closure_matrix(&self) -> Vec<Vec<Rational>> {
        let l = self.edges.len();
        let mut rows = Vec::new();
        for cycle in &self.cycles {
            let mut rx = vec![Rational::zero(); l];
            let mut ry = vec![Rational::zero(); l];
            for &(e, fwd) in cycle {
                let u = self.directions[e].vector();
                let s = if fwd { 1 } else { -1 };
                rx[e] += int(s * u.x);
                ry[e] += int(s * u.y);
            }
            rows.push(rx);
            rows.push(ry);
        }
        rows
    }
}

/// A point of the parameter space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPoint {
    pub kind: CombinatorialType,
    pub lengths: Vec<Rational>,
    pub anchor: RationalPoint,
}

impl ParamPoint {
    pub fn to_json(&self) -> Value {
        json!({
            "lengths": self.lengths.iter().map(format_rational).collect::<Vec<_>>(),
            "anchor": [format_rational(&self.anchor.x), format_rational(&self.anchor.y)],
        })
    }

    /// `self + t·(dl, db)`, without any validity check.
    fn step(&self, dl: &[Rational], db: &RationalVector, t: &Rational) -> ParamPoint {
        ParamPoint {
            kind: self.kind.clone(),
            lengths: self.lengths.iter().zip(dl).map(|(a, d)| a + d * t).collect(),
            anchor: self.anchor.offset(&db.scale(t)),
        }
    }
}

pub fn params_from_curve(curve: &TropicalCurve, anchor_vertex: usize) -> Result<ParamPoint> {
    let kind = CombinatorialType::of(curve, anchor_vertex)?;
    let lengths = (0..curve.edges().len()).map(|e| curve.edge_lattice_length(e).clone()).collect();
    Ok(ParamPoint { kind, lengths, anchor: curve.vertex(anchor_vertex).clone() })
}

/// Rebuilds the curve by walking the spanning tree from the anchor.
pub fn curve_from_params(p: &ParamPoint) -> Result<TropicalCurve> {
    let kind = &p.kind;
    if p.lengths.len() != kind.edge_count() {
        return Err(Error::TypeMismatch(format!("{} lengths for {} edges", p.lengths.len(), kind.edge_count())));
    }
    if let Some(e) = p.lengths.iter().position(|a| !a.is_positive()) {
        return Err(Error::NonPositiveLength(e));
    }
    for j in 0..kind.cycles.len() {
        if !kind.closure_defect(j, &p.lengths).is_zero() {
            return Err(Error::Closure(kind.cycles[j].iter().map(|&(e, _)| e).collect()));
        }
    }
    let mut positions = vec![None; kind.vertex_count];
    positions[kind.anchor] = Some(p.anchor.clone());
    for &(e, w, fwd) in &kind.tree {
        let from = kind.edges[e].ends[if fwd { 0 } else { 1 }];
        let u = kind.directions[e].vector();
        let u = if fwd { u } else { -u };
        let at = positions[from].as_ref().expect("tree order visits parents first").offset_int(u, &p.lengths[e]);
        positions[w] = Some(at);
    }
    let vertices = positions.into_iter().map(|v| v.expect("connected type")).collect();
    let curve = TropicalCurve::new(vertices, kind.edges.clone(), kind.rays.clone())?;
    if let Some(why) = embedding_defect(&curve) {
        return Err(Error::Structure(why));
    }
    Ok(curve)
}

/// Describes the first place where two elements meet away from a shared
/// vertex, if any.
pub fn embedding_defect(curve: &TropicalCurve) -> Option<String> {
    let shapes = curve.shapes();
    for (i, (e1, s1)) in shapes.iter().enumerate() {
        for (e2, s2) in &shapes[i + 1..] {
            match s1.meet(s2) {
                Meet::None => {}
                Meet::Point { at, .. } => {
                    let shared = curve.vertex_index(&at).is_some_and(|v| {
                        curve.element_vertices(*e1).contains(&v) && curve.element_vertices(*e2).contains(&v)
                    });
                    if !shared {
                        return Some(format!("{e1} meets {e2} at {at}"));
                    }
                }
                Meet::Overlap { .. } => return Some(format!("{e1} overlaps {e2}")),
            }
        }
    }
    None
}

/// Basis of the null space of `m` (columns `cols`), by exact row reduction.
fn null_space(mut m: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(r) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(row, r);
        let inv = m[row][c].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..cols {
                    let d = &f * &m[row][k];
                    m[r][k] -= d;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// A random direction in the tangent space of the cone: an integer
/// combination of null-space vectors for the lengths, quarter-integer steps
/// for the anchor.
fn random_direction<R: Rng>(p: &ParamPoint, rng: &mut R) -> (Vec<Rational>, RationalVector) {
    let l = p.kind.edge_count();
    let mut dl = vec![Rational::zero(); l];
    for v in null_space(p.kind.closure_matrix(), l) {
        let k = int(rng.gen_range(-2..=2));
        for (d, x) in dl.iter_mut().zip(&v) {
            *d += &k * x;
        }
    }
    let db = RationalVector::new(rat(rng.gen_range(-2..=2), 4), rat(rng.gen_range(-2..=2), 4));
    (dl, db)
}

/// Moves along a random direction, halving the step until the result is a
/// valid embedded curve of the same type. Returns `p` itself if no step
/// within 40 halvings is valid.
pub fn perturb(p: &ParamPoint, seed: u64) -> ParamPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    perturb_with(p, &mut rng)
}

fn perturb_with<R: Rng>(p: &ParamPoint, rng: &mut R) -> ParamPoint {
    let (dl, db) = random_direction(p, rng);
    shrink_until_valid(p, &dl, &db)
}

fn shrink_until_valid(p: &ParamPoint, dl: &[Rational], db: &RationalVector) -> ParamPoint {
    let mut t = Rational::one();
    for _ in 0..40 {
        let q = p.step(dl, db, &t);
        if curve_from_params(&q).is_ok() {
            return q;
        }
        t /= int(2);
    }
    p.clone()
}

/// One step of a σ walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkRecord {
    pub step: usize,
    pub params: ParamPoint,
    pub sigma: AbelCoordinate,
    pub transversal: bool,
}

impl WalkRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "step": self.step,
            "params": self.params.to_json(),
            "sigma": self.sigma.to_json(),
            "transversal": self.transversal,
        })
    }
}

/// Random walk of the mobile curve through its cone, recording `σ` at every
/// step. The mobile anchor is kept within a box around the host so the walk
/// keeps crossing the host's cells and walls.
pub fn sigma_walk(host: &Jacobian, mobile: &TropicalCurve, steps: usize, seed: u64) -> Result<Vec<WalkRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = params_from_curve(mobile, 0)?;
    let (lo, hi) = host.curve().bounding_box().unwrap_or((RationalPoint::origin(), RationalPoint::origin()));
    let margin = int(2);
    let inside = |q: &RationalPoint| {
        q.x >= &lo.x - &margin && q.x <= &hi.x + &margin && q.y >= &lo.y - &margin && q.y <= &hi.y + &margin
    };
    let mut trace = Vec::with_capacity(steps + 1);
    for step in 0..=steps {
        if step > 0 {
            let (dl, mut db) = random_direction(&p, &mut rng);
            if !inside(&p.anchor.offset(&db)) {
                db = RationalVector::new(-db.x, -db.y);
            }
            p = shrink_until_valid(&p, &dl, &db);
        }
        let curve = curve_from_params(&p)?;
        trace.push(WalkRecord {
            step,
            sigma: host.sigma(&curve)?,
            transversal: is_transversal(host.curve(), &curve),
            params: p.clone(),
        });
    }
    Ok(trace)
}

/// Same Newton polygon, and the Newton complex of `candidate` is a
/// subcomplex of that of `reference`.
pub fn is_degeneration(candidate: &TropicalCurve, reference: &TropicalCurve) -> Result<bool> {
    if newton_polygon(candidate)?.normalized() != newton_polygon(reference)?.normalized() {
        return Ok(false);
    }
    Ok(newton_complex(candidate)?.is_subcomplex_of(&newton_complex(reference)?))
}

/// The one-vertex curve at `center` with the rays of `curve`, parallel rays
/// merged: the limit of shrinking every finite edge to zero.
pub fn collapse(curve: &TropicalCurve, center: RationalPoint) -> Result<TropicalCurve> {
    let mut merged: BTreeMap<PrimitiveVector, u64> = BTreeMap::new();
    for r in curve.rays() {
        *merged.entry(r.direction).or_default() += r.weight;
    }
    let rays: Vec<(usize, IntVector)> = merged.into_iter().map(|(d, w)| (0, d.scaled(w))).collect();
    TropicalCurve::from_rays_and_edges(vec![center], vec![], rays)
}

/// Whether two curves lie in the same connected component of the space of
/// all curves: exactly when their Newton polygons agree up to translation.
pub fn same_component(l1: &TropicalCurve, l2: &TropicalCurve) -> Result<bool> {
    Ok(newton_polygon(l1)?.normalized() == newton_polygon(l2)?.normalized())
}
