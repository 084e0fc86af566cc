//! Tentacles, the bunch quotient and bouquet detection.

use std::fmt;

use crate::curve::{Location, TropicalCurve};
use crate::error::{Error, Result};
use crate::exact::RationalPoint;
use crate::shape::signed_area2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// A bridge: removing its interior disconnects the curve.
    Tentacle,
    /// Lies on a cycle.
    Cycle,
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeKind::Tentacle => "tentacle",
            EdgeKind::Cycle => "cycle",
        })
    }
}

/// Kind of every finite edge; rays are a class of their own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub edges: Vec<EdgeKind>,
    pub rays: usize,
}

impl Classification {
    pub fn count(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|k| **k == kind).count()
    }
}

fn adjacency(n: usize, edges: &[[usize; 2]]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); n];
    for (k, &[a, b]) in edges.iter().enumerate() {
        adj[a].push((b, k));
        adj[b].push((a, k));
    }
    adj
}

/// Connected components of the finite-edge graph.
pub fn components(curve: &TropicalCurve) -> usize {
    let edges: Vec<[usize; 2]> = curve.edges().iter().map(|e| e.ends).collect();
    let n = curve.vertices().len();
    let adj = adjacency(n, &edges);
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Bridges of a multigraph by low-link; parallel edges are never bridges.
pub(crate) fn bridges(n: usize, edges: &[[usize; 2]]) -> Vec<bool> {
    let adj = adjacency(n, edges);
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_bridge = vec![false; edges.len()];
    let mut clock = 0;
    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        // (vertex, edge used to enter it, next adjacency index)
        let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
        order[root] = clock;
        low[root] = clock;
        clock += 1;
        while let Some(&mut (v, parent_edge, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let (w, k) = adj[v][*i];
                *i += 1;
                if Some(k) == parent_edge {
                    continue;
                }
                if order[w] == usize::MAX {
                    order[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    stack.push((w, Some(k), 0));
                } else {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                stack.pop();
                if let (Some(&(u, _, _)), Some(k)) = (stack.last(), parent_edge) {
                    low[u] = low[u].min(low[v]);
                    if low[v] > order[u] {
                        is_bridge[k] = true;
                    }
                }
            }
        }
    }
    is_bridge
}

pub fn classify_edges(curve: &TropicalCurve) -> Result<Classification> {
    if components(curve) > 1 {
        return Err(Error::Disconnected);
    }
    let edges: Vec<[usize; 2]> = curve.edges().iter().map(|e| e.ends).collect();
    let kinds = bridges(curve.vertices().len(), &edges)
        .into_iter()
        .map(|b| if b { EdgeKind::Tentacle } else { EdgeKind::Cycle })
        .collect();
    Ok(Classification { edges: kinds, rays: curve.rays().len() })
}

/// Surviving edge of the quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub edge: usize,
    pub nodes: [usize; 2],
}

/// The quotient of a curve by its tentacles and rays. Each node is a blob of
/// vertices joined by tentacles; each arc is a cycle edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BunchGraph {
    pub classification: Classification,
    pub node_of_vertex: Vec<usize>,
    pub node_count: usize,
    pub arcs: Vec<Arc>,
}

/// Image of a curve point in the bunch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BunchPoint {
    Node(usize),
    /// Interior point of the arc of a cycle edge.
    Arc { edge: usize, point: RationalPoint },
}

impl BunchGraph {
    /// First Betti number of the quotient.
    pub fn genus(&self) -> usize {
        self.arcs.len() + 1 - self.node_count
    }

    pub fn degree(&self, node: usize) -> usize {
        self.arcs.iter().map(|a| a.nodes.iter().filter(|&&n| n == node).count()).sum()
    }

    /// The quotient map.
    pub fn image(&self, curve: &TropicalCurve, p: &RationalPoint) -> Result<BunchPoint> {
        match curve.locate(p).ok_or_else(|| Error::NotOnCurve(p.to_string()))? {
            Location::Vertex(v) => Ok(BunchPoint::Node(self.node_of_vertex[v])),
            Location::Ray(r) => Ok(BunchPoint::Node(self.node_of_vertex[curve.rays()[r].vertex])),
            Location::Edge(e) => match self.classification.edges[e] {
                EdgeKind::Tentacle => Ok(BunchPoint::Node(self.node_of_vertex[curve.edges()[e].ends[0]])),
                EdgeKind::Cycle => Ok(BunchPoint::Arc { edge: e, point: p.clone() }),
            },
        }
    }
}

pub fn bunch(curve: &TropicalCurve) -> Result<BunchGraph> {
    let classification = classify_edges(curve)?;
    let n = curve.vertices().len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (e, kind) in curve.edges().iter().zip(&classification.edges) {
        if *kind == EdgeKind::Tentacle {
            let (a, b) = (find(&mut parent, e.ends[0]), find(&mut parent, e.ends[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut node_of_root = vec![usize::MAX; n];
    let mut node_of_vertex = vec![0; n];
    let mut node_count = 0;
    for v in 0..n {
        let r = find(&mut parent, v);
        if node_of_root[r] == usize::MAX {
            node_of_root[r] = node_count;
            node_count += 1;
        }
        node_of_vertex[v] = node_of_root[r];
    }
    let arcs = curve
        .edges()
        .iter()
        .enumerate()
        .filter(|(k, _)| classification.edges[*k] == EdgeKind::Cycle)
        .map(|(k, e)| Arc { edge: k, nodes: [node_of_vertex[e.ends[0]], node_of_vertex[e.ends[1]]] })
        .collect();
    Ok(BunchGraph { classification, node_of_vertex, node_count, arcs })
}

/// A cycle `Λ_i` of a bouquet as a closed path of curve edges, oriented
/// counterclockwise and starting at its attachment vertex `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BouquetCycle {
    pub base: usize,
    /// `(edge, forward)`; `forward` means traversed from `ends[0]` to `ends[1]`.
    pub edges: Vec<(usize, bool)>,
    /// `vertices[k]` is where `edges[k]` starts; `vertices[0] == base`.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BouquetStructure {
    pub center: usize,
    pub genus: usize,
    pub cycles: Vec<BouquetCycle>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BouquetVerdict {
    Bouquet(BouquetStructure),
    NotABouquet(String),
}

/// Decides whether the bunch is a wedge of circles and, if so, recovers its
/// cycles in the curve. With one cycle the center is the blob of the
/// lowest-numbered vertex on the cycle.
pub fn bouquet_structure(curve: &TropicalCurve, b: &BunchGraph) -> BouquetVerdict {
    let genus = b.genus();
    if genus == 0 {
        return BouquetVerdict::Bouquet(BouquetStructure { center: 0, genus, cycles: vec![] });
    }
    let branching: Vec<usize> = (0..b.node_count).filter(|&n| b.degree(n) > 2).collect();
    let center = match branching.as_slice() {
        [] => {
            let first = b.arcs.iter().flat_map(|a| curve.edges()[a.edge].ends).min().expect("genus > 0 has arcs");
            b.node_of_vertex[first]
        }
        [c] => *c,
        [x, y, ..] => {
            return BouquetVerdict::NotABouquet(format!(
                "bunch nodes {x} and {y} both have degree at least 3, so two cycles share more than one point"
            ))
        }
    };
    // cycle edges at each vertex
    let n = curve.vertices().len();
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in &b.arcs {
        let [p, q] = curve.edges()[a.edge].ends;
        at[p].push(a.edge);
        at[q].push(a.edge);
    }
    let mut used = vec![false; curve.edges().len()];
    let mut cycles = Vec::new();
    for start in 0..n {
        if b.node_of_vertex[start] != center {
            continue;
        }
        for &first in &at[start] {
            if used[first] {
                continue;
            }
            let mut edges = Vec::new();
            let mut vertices = Vec::new();
            let (mut cur, mut e) = (start, first);
            loop {
                used[e] = true;
                let ends = curve.edges()[e].ends;
                let forward = ends[0] == cur;
                edges.push((e, forward));
                vertices.push(cur);
                cur = if forward { ends[1] } else { ends[0] };
                if b.node_of_vertex[cur] == center {
                    break;
                }
                match at[cur].iter().find(|&&k| !used[k]) {
                    Some(&k) if at[cur].len() == 2 => e = k,
                    _ => return BouquetVerdict::NotABouquet(format!("vertex {cur} joins more than one cycle away from the center")),
                }
            }
            if cur != start {
                return BouquetVerdict::NotABouquet(format!("a cycle leaves the center at vertex {start} and returns at {cur}"));
            }
            let poly: Vec<RationalPoint> = vertices.iter().map(|&v| curve.vertex(v).clone()).collect();
            if signed_area2(&poly) < num_traits::Zero::zero() {
                edges.reverse();
                for edge in &mut edges {
                    edge.1 = !edge.1;
                }
                vertices = edges
                    .iter()
                    .map(|&(k, fwd)| curve.edges()[k].ends[if fwd { 0 } else { 1 }])
                    .collect();
            }
            cycles.push(BouquetCycle { base: start, edges, vertices });
        }
    }
    if cycles.len() != genus {
        return BouquetVerdict::NotABouquet(format!("found {} cycles through the center but the genus is {genus}", cycles.len()));
    }
    BouquetVerdict::Bouquet(BouquetStructure { center, genus, cycles })
}
