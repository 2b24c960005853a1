//! Cubic graphs and the small structural queries built on them.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Largest order a [`CubicGraph`] may have; adjacency is kept as `u64` masks.
pub const MAX_ORDER: usize = 64;

/// An undirected graph as sorted neighbor lists, exactly as decoded from input.
///
/// Nothing is assumed about it; [`validate_cubic`] decides whether it can
/// become a [`CubicGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    adj: Vec<Vec<Vertex>>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Repeated edges and loops are kept so
    /// that validation can report them.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = SimpleGraph::empty(n);
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            g.adj[u].push(v);
            if u != v {
                g.adj[v].push(u);
            }
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        g
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Distinct edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            let mut last = None;
            for &v in list {
                if u < v && last != Some(v) {
                    out.push((u, v));
                }
                last = Some(v);
            }
        }
        out
    }

    fn components(&self) -> usize {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        count
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    NotThreeRegular { vertex: Vertex, degree: usize },
    NotSimple { vertex: Vertex, neighbor: Vertex },
    Disconnected { components: usize },
    BadOrder { n: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| match v {
                Violation::NotThreeRegular { vertex, degree } => {
                    format!("vertex {vertex} has degree {degree}")
                }
                Violation::NotSimple { vertex, neighbor } => {
                    format!("repeated edge or loop at {vertex}-{neighbor}")
                }
                Violation::Disconnected { components } => {
                    format!("disconnected ({components} components)")
                }
                Violation::BadOrder { n } => format!("order {n} is not even and at least 4"),
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks the cubic-graph invariants: 3-regular, simple, connected, even order >= 4.
pub fn validate_cubic(g: &SimpleGraph) -> ValidationReport {
    let mut violations = Vec::new();
    let n = g.order();
    if n < 4 || n % 2 == 1 {
        violations.push(Violation::BadOrder { n });
    }
    for v in 0..n {
        let list = g.neighbors(v);
        for (i, &w) in list.iter().enumerate() {
            if w == v || (i > 0 && list[i - 1] == w) {
                violations.push(Violation::NotSimple { vertex: v, neighbor: w });
            }
        }
        if list.len() != 3 {
            violations.push(Violation::NotThreeRegular { vertex: v, degree: list.len() });
        }
    }
    if n > 0 {
        let components = g.components();
        if components > 1 {
            violations.push(Violation::Disconnected { components });
        }
    }
    ValidationReport { violations }
}

/// A simple connected 3-regular graph.
///
/// Neighbor lists are sorted, so slot `i` of vertex `v` is its `i`-th smallest
/// neighbor. Edges are numbered by their position in the sorted edge list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CubicGraph {
    adj: Vec<[Vertex; 3]>,
    masks: Vec<u64>,
    edges: Vec<(Vertex, Vertex)>,
    edge_ids: Vec<[usize; 3]>,
}

impl fmt::Debug for CubicGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CubicGraph").field("n", &self.order()).field("edges", &self.edges).finish()
    }
}

impl CubicGraph {
    pub fn new(g: &SimpleGraph) -> Result<Self> {
        if g.order() > MAX_ORDER {
            return Err(Error::TooLarge { n: g.order(), max: MAX_ORDER });
        }
        let report = validate_cubic(g);
        if !report.is_ok() {
            return Err(Error::NotCubic(report));
        }
        let n = g.order();
        let adj: Vec<[Vertex; 3]> = (0..n)
            .map(|v| {
                let l = g.neighbors(v);
                [l[0], l[1], l[2]]
            })
            .collect();
        let masks = adj.iter().map(|ns| ns.iter().fold(0u64, |m, &w| m | (1 << w))).collect();
        let edges = g.edges();
        let edge_ids = adj
            .iter()
            .enumerate()
            .map(|(v, ns)| {
                ns.map(|w| {
                    let key = (v.min(w), v.max(w));
                    edges.binary_search(&key).expect("edge present")
                })
            })
            .collect();
        Ok(CubicGraph { adj, masks, edges, edge_ids })
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        CubicGraph::new(&SimpleGraph::from_edges(n, edges))
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex; 3] {
        &self.adj[v]
    }

    pub fn neighbor_mask(&self, v: Vertex) -> u64 {
        self.masks[v]
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.masks[u] >> v & 1 == 1
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.slot(u, v).map(|i| self.edge_ids[u][i])
    }

    /// Edge id of the `slot`-th edge at `v`.
    pub fn edge_at(&self, v: Vertex, slot: usize) -> usize {
        self.edge_ids[v][slot]
    }

    /// Position of `w` in the sorted neighbor list of `v`.
    pub fn slot(&self, v: Vertex, w: Vertex) -> Option<usize> {
        self.adj[v].iter().position(|&x| x == w)
    }

    /// The two neighbors of `v` other than `w`.
    pub fn others(&self, v: Vertex, w: Vertex) -> [Vertex; 2] {
        let ns = &self.adj[v];
        match ns.iter().position(|&x| x == w) {
            Some(0) => [ns[1], ns[2]],
            Some(1) => [ns[0], ns[2]],
            Some(2) => [ns[0], ns[1]],
            _ => panic!("{w} is not adjacent to {v}"),
        }
    }

    pub fn to_simple(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.order(), &self.edges)
    }

    /// The graph with vertex `v` renamed to `perm.image(v)`.
    pub fn relabel(&self, perm: &crate::iso::VertexPermutation) -> CubicGraph {
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm.image(u), perm.image(v))).collect();
        CubicGraph::from_edges(self.order(), &edges).expect("relabeling preserves cubicity")
    }
}

/// A path `t0 t1 t2 t3` of length three with four distinct vertices, stored as
/// the lexicographically smaller of its two orientations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[Vertex; 4]", into = "[Vertex; 4]")]
pub struct Path3([Vertex; 4]);

impl Path3 {
    pub fn new(t0: Vertex, t1: Vertex, t2: Vertex, t3: Vertex) -> Self {
        let fwd = [t0, t1, t2, t3];
        let rev = [t3, t2, t1, t0];
        Path3(fwd.min(rev))
    }

    pub fn vertices(&self) -> [Vertex; 4] {
        self.0
    }

    /// End vertices as `(min, max)`.
    pub fn endpoints(&self) -> (Vertex, Vertex) {
        let [a, _, _, d] = self.0;
        (a.min(d), a.max(d))
    }

    pub fn interior(&self) -> [Vertex; 2] {
        [self.0[1], self.0[2]]
    }

    /// Whether the quadruple is a path of `g` meeting the distinctness rule.
    pub fn is_valid_in(&self, g: &CubicGraph) -> bool {
        let [a, b, c, d] = self.0;
        let n = g.order();
        a < n
            && b < n
            && c < n
            && d < n
            && g.adjacent(a, b)
            && g.adjacent(b, c)
            && g.adjacent(c, d)
            && a != d
            && b != d
            && c != a
    }
}

impl From<[Vertex; 4]> for Path3 {
    fn from(v: [Vertex; 4]) -> Self {
        Path3::new(v[0], v[1], v[2], v[3])
    }
}

impl From<Path3> for [Vertex; 4] {
    fn from(p: Path3) -> Self {
        p.0
    }
}

impl fmt::Display for Path3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a} {b} {c} {d})")
    }
}

/// Every 3-path with end vertices `u` and `v`, sorted.
pub fn three_paths_between(g: &CubicGraph, u: Vertex, v: Vertex) -> Vec<Path3> {
    assert_ne!(u, v, "three_paths_between needs distinct end vertices");
    let mut out = Vec::new();
    for &a in g.neighbors(u) {
        if a == v {
            continue;
        }
        for &b in g.neighbors(v) {
            if b != u && b != a && g.adjacent(a, b) {
                out.push(Path3::new(u, a, b, v));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Every 3-path of `g`, sorted. Each path is found once, from its middle edge.
pub fn all_three_paths(g: &CubicGraph) -> Vec<Path3> {
    let mut out = Vec::with_capacity(4 * g.size());
    for &(b, c) in g.edges() {
        for a in g.others(b, c) {
            for d in g.others(c, b) {
                if a != d {
                    out.push(Path3::new(a, b, c, d));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// All simple cycles of length `k`, each reported once: it starts at its
/// smallest vertex and runs towards the smaller of that vertex's two cycle
/// neighbors.
pub fn cycles_of_length(g: &CubicGraph, k: usize) -> Vec<Vec<Vertex>> {
    assert!(k >= 3, "cycles have length at least 3");
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(k);
    for s in 0..g.order() {
        path.clear();
        path.push(s);
        extend_cycle(g, k, 1u64 << s, &mut path, &mut out);
    }
    out.sort();
    out
}

fn extend_cycle(g: &CubicGraph, k: usize, used: u64, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
    let s = path[0];
    let last = *path.last().unwrap();
    if path.len() == k {
        if g.adjacent(last, s) && path[1] < path[k - 1] {
            out.push(path.clone());
        }
        return;
    }
    for &w in g.neighbors(last) {
        if w > s && used >> w & 1 == 0 {
            path.push(w);
            extend_cycle(g, k, used | 1 << w, path, out);
            path.pop();
        }
    }
}

/// True iff deleting any two vertices leaves the rest connected.
pub fn is_three_connected(g: &CubicGraph) -> bool {
    let n = g.order();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for a in 0..n {
        for b in a + 1..n {
            let alive = all & !(1 << a) & !(1 << b);
            if alive != 0 && !connected_within(g, alive) {
                return false;
            }
        }
    }
    true
}

fn connected_within(g: &CubicGraph, alive: u64) -> bool {
    let start = alive.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = g.neighbor_mask(v) & alive & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == alive
}
