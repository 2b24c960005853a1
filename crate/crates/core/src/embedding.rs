//! Signed rotation systems, face tracing and the polyhedrality test.
//!
//! An embedding scheme fixes, at every vertex, a cyclic order of its three
//! edges and gives every edge a sign. Faces are traced on flags: a flag is a
//! vertex, one of its edge-ends and a side of that edge-end. Two involutions
//! act on flags: `across` moves to the other end of the edge (keeping the
//! side for negative edges, switching it for positive ones) and `corner`
//! moves to the neighboring edge-end in the rotation. Faces are the orbits of
//! the group they generate.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CubicGraph, Vertex};
use crate::iso::{automorphisms, VertexPermutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Per-vertex cyclic order of neighbors plus a sign per edge (indexed by edge id).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmbeddingScheme {
    rotation: Vec<[Vertex; 3]>,
    signature: Vec<Sign>,
}

impl EmbeddingScheme {
    pub fn new(g: &CubicGraph, rotation: Vec<[Vertex; 3]>, signature: Vec<Sign>) -> Result<Self> {
        if rotation.len() != g.order() {
            return Err(Error::InvalidScheme(format!("{} rotations for {} vertices", rotation.len(), g.order())));
        }
        if signature.len() != g.size() {
            return Err(Error::InvalidScheme(format!("{} signs for {} edges", signature.len(), g.size())));
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = *rot;
            sorted.sort_unstable();
            if &sorted != g.neighbors(v) {
                return Err(Error::InvalidScheme(format!(
                    "rotation {rot:?} at {v} is not a cyclic order of its neighbors"
                )));
            }
        }
        Ok(EmbeddingScheme { rotation, signature })
    }

    /// Scheme from bit masks: bit `v` of `rot` reverses the default
    /// (ascending) rotation at `v`; bit `e` of `sig` makes edge `e` negative.
    pub fn from_bits(g: &CubicGraph, rot: u64, sig: u128) -> Self {
        let rotation = (0..g.order())
            .map(|v| {
                let [a, b, c] = *g.neighbors(v);
                if rot >> v & 1 == 0 {
                    [a, b, c]
                } else {
                    [a, c, b]
                }
            })
            .collect();
        let signature = (0..g.size()).map(|e| if sig >> e & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect();
        EmbeddingScheme { rotation, signature }
    }

    pub fn to_bits(&self, g: &CubicGraph) -> (u64, u128) {
        let mut rot = 0u64;
        for (v, r) in self.rotation.iter().enumerate() {
            let sorted = g.neighbors(v);
            let start = r.iter().position(|&x| x == sorted[0]).unwrap();
            if r[(start + 1) % 3] != sorted[1] {
                rot |= 1 << v;
            }
        }
        let mut sig = 0u128;
        for (e, s) in self.signature.iter().enumerate() {
            if *s == Sign::Minus {
                sig |= 1 << e;
            }
        }
        (rot, sig)
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex; 3] {
        &self.rotation[v]
    }

    pub fn sign(&self, edge: usize) -> Sign {
        self.signature[edge]
    }

    /// Local switch at `v`: reverse its rotation and flip the signs of its edges.
    /// The traced faces do not change.
    pub fn switch(&mut self, g: &CubicGraph, v: Vertex) {
        self.rotation[v].swap(1, 2);
        for slot in 0..3 {
            let e = g.edge_at(v, slot);
            self.signature[e] = self.signature[e].flip();
        }
    }

    /// Switches vertices until every edge of the BFS tree from vertex 0 is positive.
    pub fn normalize(&mut self, g: &CubicGraph) {
        for (child, parent) in bfs_tree(g) {
            let e = g.edge_id(parent, child).unwrap();
            if self.signature[e] == Sign::Minus {
                self.switch(g, child);
            }
        }
    }

    pub fn is_normalized(&self, g: &CubicGraph) -> bool {
        bfs_tree(g).into_iter().all(|(c, p)| self.signature[g.edge_id(p, c).unwrap()] == Sign::Plus)
    }
}

/// Tree edges `(child, parent)` of the BFS tree rooted at 0, neighbors visited
/// in ascending order, listed in discovery order.
pub fn bfs_tree(g: &CubicGraph) -> Vec<(Vertex, Vertex)> {
    let mut seen = vec![false; g.order()];
    let mut queue = std::collections::VecDeque::from([0]);
    seen[0] = true;
    let mut out = Vec::with_capacity(g.order() - 1);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                out.push((w, v));
                queue.push_back(w);
            }
        }
    }
    out
}

/// Precomputed flag involutions for one graph; schemes enter as bit masks.
#[derive(Clone, Debug)]
pub(crate) struct FlagTable {
    /// For edge-end `v*3 + i`: the matching edge-end at the far vertex, and the edge id.
    far: Vec<(u32, u32)>,
}

impl FlagTable {
    pub(crate) fn new(g: &CubicGraph) -> Self {
        let mut far = Vec::with_capacity(3 * g.order());
        for v in 0..g.order() {
            for (i, &w) in g.neighbors(v).iter().enumerate() {
                let j = g.slot(w, v).unwrap();
                far.push(((w * 3 + j) as u32, g.edge_at(v, i) as u32));
            }
        }
        FlagTable { far }
    }

    pub(crate) fn flag_count(&self) -> usize {
        self.far.len() * 2
    }

    #[inline]
    pub(crate) fn vertex(f: usize) -> Vertex {
        f / 6
    }

    #[inline]
    pub(crate) fn edge(&self, f: usize) -> usize {
        self.far[f >> 1].1 as usize
    }

    #[inline]
    pub(crate) fn across(&self, f: usize, sig: u128) -> usize {
        let (end, e) = self.far[f >> 1];
        let side = (f & 1) ^ (!(sig >> e) as usize & 1);
        (end as usize) << 1 | side
    }

    #[inline]
    pub(crate) fn corner(f: usize, rot: u64) -> usize {
        let v = f / 6;
        let i = (f >> 1) % 3;
        let step = if rot >> v & 1 == 0 { 1 } else { 2 };
        if f & 1 == 0 {
            (v * 3 + (i + step) % 3) << 1 | 1
        } else {
            (v * 3 + (i + 3 - step) % 3) << 1
        }
    }

    /// Calls `on_walk` with the vertex sequence of every face; stops early
    /// when it returns `false`. Returns whether all faces were visited.
    pub(crate) fn for_each_face(&self, rot: u64, sig: u128, mut on_walk: impl FnMut(&[Vertex]) -> bool) -> bool {
        let mut visited = vec![false; self.flag_count()];
        let mut walk = Vec::new();
        for start in 0..self.flag_count() {
            if visited[start] {
                continue;
            }
            walk.clear();
            let mut f = start;
            loop {
                visited[f] = true;
                let g = self.across(f, sig);
                visited[g] = true;
                walk.push(Self::vertex(f));
                f = Self::corner(g, rot);
                if f == start {
                    break;
                }
            }
            if !on_walk(&walk) {
                return false;
            }
        }
        true
    }
}

/// A closed walk stored as its vertex sequence, in the least rotation and
/// direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct FacialWalk(Vec<Vertex>);

impl FacialWalk {
    pub fn new(seq: Vec<Vertex>) -> Self {
        FacialWalk(canonical_cycle(&seq))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether no vertex repeats.
    pub fn is_cycle(&self) -> bool {
        let set: HashSet<_> = self.0.iter().collect();
        set.len() == self.0.len()
    }

    /// Consecutive vertex pairs, closing back to the start.
    pub fn darts(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| (self.0[i], self.0[(i + 1) % k]))
    }

    /// Undirected edges `(min, max)` traversed by the walk, with repetition.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.darts().map(|(u, v)| (u.min(v), u.max(v)))
    }

    pub fn relabel(&self, perm: &VertexPermutation) -> FacialWalk {
        FacialWalk::new(self.0.iter().map(|&v| perm.image(v)).collect())
    }
}

impl From<Vec<Vertex>> for FacialWalk {
    fn from(v: Vec<Vertex>) -> Self {
        FacialWalk::new(v)
    }
}

impl From<FacialWalk> for Vec<Vertex> {
    fn from(w: FacialWalk) -> Self {
        w.0
    }
}

fn canonical_cycle(seq: &[Vertex]) -> Vec<Vertex> {
    let k = seq.len();
    let mut best: Option<Vec<Vertex>> = None;
    let mut consider = |cand: Vec<Vertex>| {
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    };
    for start in 0..k {
        consider((0..k).map(|i| seq[(start + i) % k]).collect());
        consider((0..k).map(|i| seq[(start + k - i) % k]).collect());
    }
    best.unwrap_or_default()
}

/// The set of facial walks of one embedding, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FacialSystemRepr")]
pub struct FacialSystem {
    n: usize,
    #[serde(rename = "faces")]
    walks: Vec<FacialWalk>,
}

#[derive(Deserialize)]
struct FacialSystemRepr {
    n: usize,
    faces: Vec<Vec<Vertex>>,
}

impl TryFrom<FacialSystemRepr> for FacialSystem {
    type Error = Error;

    fn try_from(r: FacialSystemRepr) -> Result<Self> {
        for face in &r.faces {
            if face.is_empty() {
                return Err(Error::MalformedSystem("empty face".into()));
            }
            if let Some(&v) = face.iter().find(|&&v| v >= r.n) {
                return Err(Error::MalformedSystem(format!("vertex {v} out of range for n = {}", r.n)));
            }
        }
        Ok(FacialSystem::new(r.n, r.faces))
    }
}

impl FacialSystem {
    pub fn new(n: usize, walks: Vec<Vec<Vertex>>) -> Self {
        let mut walks: Vec<FacialWalk> = walks.into_iter().map(FacialWalk::new).collect();
        walks.sort();
        FacialSystem { n, walks }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn walks(&self) -> &[FacialWalk] {
        &self.walks
    }

    pub fn face_count(&self) -> usize {
        self.walks.len()
    }

    pub fn relabel(&self, perm: &VertexPermutation) -> FacialSystem {
        let mut walks: Vec<_> = self.walks.iter().map(|w| w.relabel(perm)).collect();
        walks.sort();
        FacialSystem { n: self.n, walks }
    }

    /// Checks that walks follow edges of `g` and cover every edge exactly twice.
    pub fn check_cover(&self, g: &CubicGraph) -> Result<()> {
        if self.n != g.order() {
            return Err(Error::MalformedSystem(format!("system on {} vertices, graph on {}", self.n, g.order())));
        }
        let mut count = vec![0u32; g.size()];
        for w in &self.walks {
            for (u, v) in w.darts() {
                let e = g.edge_id(u, v).ok_or_else(|| Error::MalformedSystem(format!("{u}-{v} is not an edge")))?;
                count[e] += 1;
            }
        }
        if let Some(e) = count.iter().position(|&c| c != 2) {
            let (u, v) = g.edges()[e];
            return Err(Error::MalformedSystem(format!("edge {u}-{v} covered {} times", count[e])));
        }
        Ok(())
    }

    /// Compact byte encoding: each walk as its length followed by its vertices.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for w in &self.walks {
            out.push(w.len() as u8);
            out.extend(w.vertices().iter().map(|&v| v as u8));
        }
        out
    }
}

/// Traces the faces of `s` on `g`. Panics if `s` was built for another graph.
pub fn trace_faces(g: &CubicGraph, s: &EmbeddingScheme) -> FacialSystem {
    assert_eq!(s.rotation.len(), g.order(), "scheme does not fit the graph");
    let (rot, sig) = s.to_bits(g);
    trace_bits(g, &FlagTable::new(g), rot, sig)
}

pub(crate) fn trace_bits(g: &CubicGraph, table: &FlagTable, rot: u64, sig: u128) -> FacialSystem {
    let mut walks = Vec::new();
    table.for_each_face(rot, sig, |w| {
        walks.push(w.to_vec());
        true
    });
    FacialSystem::new(g.order(), walks)
}

/// Euler genus `2 - n + m - f`.
pub fn euler_genus(g: &CubicGraph, fs: &FacialSystem) -> Result<u32> {
    let value = 2 - g.order() as i64 + g.size() as i64 - fs.face_count() as i64;
    u32::try_from(value).map_err(|_| Error::MalformedSystem(format!("negative Euler genus {value}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PolyhedralityViolation {
    WalkNotCycle { walk: usize, repeated: Vec<Vertex> },
    ImproperPair { walks: [usize; 2], shared_vertices: Vec<Vertex>, shared_edges: Vec<(Vertex, Vertex)> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedralityReport {
    pub violations: Vec<PolyhedralityViolation>,
}

impl PolyhedralityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every walk must be a cycle and any two walks must share nothing, one
/// vertex, or one edge together with its two ends.
pub fn is_polyhedral(g: &CubicGraph, fs: &FacialSystem) -> PolyhedralityReport {
    let _ = g;
    let mut violations = Vec::new();
    let vsets: Vec<BTreeSet<Vertex>> = fs.walks.iter().map(|w| w.vertices().iter().copied().collect()).collect();
    let esets: Vec<BTreeSet<(Vertex, Vertex)>> = fs.walks.iter().map(|w| w.edges().collect()).collect();
    for (i, w) in fs.walks.iter().enumerate() {
        if vsets[i].len() != w.len() {
            let mut seen = HashSet::new();
            let mut repeated: Vec<Vertex> = w.vertices().iter().copied().filter(|v| !seen.insert(*v)).collect();
            repeated.sort_unstable();
            repeated.dedup();
            violations.push(PolyhedralityViolation::WalkNotCycle { walk: i, repeated });
        }
    }
    for i in 0..fs.walks.len() {
        for j in i + 1..fs.walks.len() {
            let shared_vertices: Vec<Vertex> = vsets[i].intersection(&vsets[j]).copied().collect();
            let shared_edges: Vec<(Vertex, Vertex)> = esets[i].intersection(&esets[j]).copied().collect();
            let proper = match shared_vertices.len() {
                0 | 1 => true,
                2 => shared_edges.len() == 1,
                _ => false,
            };
            if !proper {
                violations.push(PolyhedralityViolation::ImproperPair { walks: [i, j], shared_vertices, shared_edges });
            }
        }
    }
    PolyhedralityReport { violations }
}

/// Edge cover and polyhedrality together, as an error.
pub fn check_system(g: &CubicGraph, fs: &FacialSystem) -> Result<()> {
    fs.check_cover(g)?;
    let report = is_polyhedral(g, fs);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::MalformedSystem(format!("not polyhedral: {v:?}"))),
    }
}

/// Whether some automorphism of `g` carries the walks of `a` onto those of `b`.
pub fn systems_equivalent(g: &CubicGraph, a: &FacialSystem, b: &FacialSystem) -> bool {
    systems_equivalent_with(&automorphisms(g), a, b)
}

pub fn systems_equivalent_with(auts: &[VertexPermutation], a: &FacialSystem, b: &FacialSystem) -> bool {
    a.face_count() == b.face_count() && auts.iter().any(|p| &a.relabel(p) == b)
}

/// Least encoding of `fs` over all automorphisms of `g`.
pub fn canonical_system(g: &CubicGraph, fs: &FacialSystem) -> Vec<u8> {
    canonical_system_with(&automorphisms(g), fs).0
}

/// Least encoding over `auts`, with the relabeled system that attains it.
pub fn canonical_system_with(auts: &[VertexPermutation], fs: &FacialSystem) -> (Vec<u8>, FacialSystem) {
    auts.iter()
        .map(|p| {
            let image = fs.relabel(p);
            (image.encode(), image)
        })
        .min()
        .unwrap_or_else(|| (fs.encode(), fs.clone()))
}
