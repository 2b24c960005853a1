//! Extended graphs: a cubic graph plus the scaffold edges recorded by the
//! facial 3-paths of one of its polyhedral embeddings.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::embedding::FacialSystem;
use crate::enumeration::graph6_serde;
use crate::error::{Error, Result};
use crate::graph::{CubicGraph, Path3, Vertex};
use crate::iso::VertexPermutation;

/// Scaffold edge `[u w]` (or `[[u w]]` when doubled) with the facial
/// 3-paths that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaffoldEdge {
    pub u: Vertex,
    pub w: Vertex,
    pub multiplicity: u8,
    /// Diagnostic only; ignored by comparison and reconstruction.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Path3>,
    /// Set when `u w` is also an edge of the graph. Output only.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub parallel: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ExtendedRepr", into = "ExtendedRepr")]
pub struct ExtendedGraph {
    graph: CubicGraph,
    scaffold: BTreeMap<(Vertex, Vertex), ScaffoldEdge>,
}

#[derive(Serialize, Deserialize)]
struct ExtendedRepr {
    #[serde(with = "graph6_serde")]
    graph6: CubicGraph,
    scaffold: Vec<ScaffoldEdge>,
}

impl TryFrom<ExtendedRepr> for ExtendedGraph {
    type Error = Error;

    fn try_from(r: ExtendedRepr) -> Result<Self> {
        let pairs = r.scaffold.into_iter().map(|e| (e.u, e.w, e.multiplicity));
        ExtendedGraph::from_pairs(r.graph6, pairs)
    }
}

impl From<ExtendedGraph> for ExtendedRepr {
    fn from(x: ExtendedGraph) -> Self {
        ExtendedRepr { graph6: x.graph, scaffold: x.scaffold.into_values().collect() }
    }
}

impl ExtendedGraph {
    /// Builds an extended graph from `(u, w, multiplicity)` triples, without
    /// witnesses. Rejects loops, out-of-range vertices, repeated pairs and
    /// multiplicities outside `1..=2`.
    pub fn from_pairs(graph: CubicGraph, pairs: impl IntoIterator<Item = (Vertex, Vertex, u8)>) -> Result<Self> {
        let mut scaffold = BTreeMap::new();
        for (u, w, multiplicity) in pairs {
            if u >= graph.order() || w >= graph.order() {
                return Err(Error::InvalidExtended(format!("scaffold [{u} {w}] out of range")));
            }
            if u == w {
                return Err(Error::InvalidExtended(format!("scaffold self-loop at {u}")));
            }
            if !(1..=2).contains(&multiplicity) {
                return Err(Error::InvalidExtended(format!("scaffold [{u} {w}] has multiplicity {multiplicity}")));
            }
            let key = (u.min(w), u.max(w));
            let edge = ScaffoldEdge {
                u: key.0,
                w: key.1,
                multiplicity,
                witnesses: Vec::new(),
                parallel: graph.adjacent(u, w),
            };
            if scaffold.insert(key, edge).is_some() {
                return Err(Error::InvalidExtended(format!("scaffold [{} {}] listed twice", key.0, key.1)));
            }
        }
        Ok(ExtendedGraph { graph, scaffold })
    }

    pub fn graph(&self) -> &CubicGraph {
        &self.graph
    }

    pub fn scaffold(&self) -> impl Iterator<Item = &ScaffoldEdge> {
        self.scaffold.values()
    }

    pub fn scaffold_len(&self) -> usize {
        self.scaffold.len()
    }

    /// Multiplicity of `[u w]`, 0 when absent.
    pub fn multiplicity(&self, u: Vertex, w: Vertex) -> u8 {
        self.scaffold.get(&(u.min(w), u.max(w))).map_or(0, |e| e.multiplicity)
    }

    pub fn contains(&self, u: Vertex, w: Vertex) -> bool {
        self.multiplicity(u, w) > 0
    }

    /// Endpoint pair to multiplicity, the part that identifies the extended graph.
    pub fn multiplicities(&self) -> BTreeMap<(Vertex, Vertex), u8> {
        self.scaffold.iter().map(|(&k, e)| (k, e.multiplicity)).collect()
    }

    pub fn remove(&mut self, u: Vertex, w: Vertex) -> Option<ScaffoldEdge> {
        self.scaffold.remove(&(u.min(w), u.max(w)))
    }

    /// Sets `[u w]` to `multiplicity`, removing it at 0. Witnesses are dropped.
    pub fn set_multiplicity(&mut self, u: Vertex, w: Vertex, multiplicity: u8) -> Result<()> {
        let key = (u.min(w), u.max(w));
        if u == w || w >= self.graph.order() || u >= self.graph.order() || multiplicity > 2 {
            return Err(Error::InvalidExtended(format!("cannot set [{u} {w}] to {multiplicity}")));
        }
        if multiplicity == 0 {
            self.scaffold.remove(&key);
        } else {
            let parallel = self.graph.adjacent(u, w);
            self.scaffold
                .insert(key, ScaffoldEdge { u: key.0, w: key.1, multiplicity, witnesses: Vec::new(), parallel });
        }
        Ok(())
    }

    /// Byte key of the scaffold map after relabeling by `perm`.
    pub fn encode_relabeled(&self, perm: &VertexPermutation) -> Vec<u8> {
        let mut items: Vec<(Vertex, Vertex, u8)> = self
            .scaffold
            .values()
            .map(|e| {
                let (a, b) = (perm.image(e.u), perm.image(e.w));
                (a.min(b), a.max(b), e.multiplicity)
            })
            .collect();
        items.sort_unstable();
        items.into_iter().flat_map(|(a, b, m)| [a as u8, b as u8, m]).collect()
    }

    /// Least scaffold key over `auts`; equal keys mean the extended graphs
    /// differ only by an automorphism of the graph.
    pub fn canonical_key(&self, auts: &[VertexPermutation]) -> Vec<u8> {
        auts.iter()
            .map(|p| self.encode_relabeled(p))
            .min()
            .unwrap_or_else(|| self.encode_relabeled(&VertexPermutation::identity(self.graph.order())))
    }
}

/// Every 3-path appearing as four consecutive vertices of some walk. Closed
/// windows (triangles) are skipped.
pub fn facial_three_paths(fs: &FacialSystem) -> Vec<Path3> {
    let mut out = BTreeSet::new();
    for w in fs.walks() {
        let vs = w.vertices();
        let k = vs.len();
        if k < 4 {
            continue;
        }
        for i in 0..k {
            let (a, b, c, d) = (vs[i], vs[(i + 1) % k], vs[(i + 2) % k], vs[(i + 3) % k]);
            if a != d && b != d && a != c {
                out.insert(Path3::new(a, b, c, d));
            }
        }
    }
    out.into_iter().collect()
}

pub fn build_extended(g: &CubicGraph, fs: &FacialSystem) -> Result<ExtendedGraph> {
    if fs.order() != g.order() {
        return Err(Error::GraphMismatch);
    }
    let mut witnesses: BTreeMap<(Vertex, Vertex), Vec<Path3>> = BTreeMap::new();
    for p in facial_three_paths(fs) {
        if !p.is_valid_in(g) {
            return Err(Error::CorruptSystem(format!("facial subwalk {p} is not a 3-path of the graph")));
        }
        witnesses.entry(p.endpoints()).or_default().push(p);
    }
    let mut scaffold = BTreeMap::new();
    for ((u, w), paths) in witnesses {
        if paths.len() > 2 {
            return Err(Error::CorruptSystem(format!(
                "[{u} {w}] has {} facial 3-paths; scaffold edges are at most double",
                paths.len()
            )));
        }
        if let [p, q] = paths.as_slice() {
            let (pi, qi) = (p.interior(), q.interior());
            if pi.iter().any(|x| qi.contains(x)) {
                return Err(Error::CorruptSystem(format!(
                    "witnesses {p} and {q} of [{u} {w}] share an interior vertex"
                )));
            }
        }
        let edge = ScaffoldEdge { u, w, multiplicity: paths.len() as u8, parallel: g.adjacent(u, w), witnesses: paths };
        scaffold.insert((u, w), edge);
    }
    Ok(ExtendedGraph { graph: g.clone(), scaffold })
}

/// Same graph, same scaffold pairs with the same multiplicities.
pub fn extended_equal(a: &ExtendedGraph, b: &ExtendedGraph) -> Result<bool> {
    if a.graph != b.graph {
        return Err(Error::GraphMismatch);
    }
    Ok(a.scaffold.len() == b.scaffold.len()
        && a.scaffold
            .iter()
            .zip(&b.scaffold)
            .all(|((ka, ea), (kb, eb))| ka == kb && ea.multiplicity == eb.multiplicity))
}
