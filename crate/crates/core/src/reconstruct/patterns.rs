//! Fork and butterfly occurrences in an extended graph, and recognition of
//! the two graphs whose forks can stay undecided.

use serde::{Deserialize, Serialize};

use crate::extended::ExtendedGraph;
use crate::graph::{CubicGraph, Path3, Vertex};
use crate::iso::is_isomorphic;
use crate::named;

/// Path `t1 t2 t3` whose last vertex branches to `t4` and `t4'`, with both
/// `[t1 t4]` and `[t1 t4']` in the scaffold. Stored with `t4 < t4'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fork {
    pub t1: Vertex,
    pub t2: Vertex,
    pub t3: Vertex,
    pub t4: Vertex,
    pub t4p: Vertex,
}

impl Fork {
    /// The two 3-paths of the disjunction: `(t1 t2 t3 t4)` and `(t1 t2 t3 t4')`.
    pub fn disjunction(&self) -> [Path3; 2] {
        [Path3::new(self.t1, self.t2, self.t3, self.t4), Path3::new(self.t1, self.t2, self.t3, self.t4p)]
    }
}

pub fn find_forks(ext: &ExtendedGraph) -> Vec<Fork> {
    let g = ext.graph();
    let mut out = Vec::new();
    for t1 in 0..g.order() {
        for &t2 in g.neighbors(t1) {
            for t3 in g.others(t2, t1) {
                let [t4, t4p] = g.others(t3, t2);
                if t4 == t1 || t4p == t1 {
                    continue;
                }
                if ext.contains(t1, t4) && ext.contains(t1, t4p) {
                    out.push(Fork { t1, t2, t3, t4, t4p });
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ButterflyKind {
    B1,
    B2,
}

/// Two 6-cycles `t0 t1 t2 t3 t4 t5` and `t0' t1 t2 t3 t4' t5'` on nine
/// distinct vertices with scaffold `[t1 t4]`, `[t1 t4']`, `[t0 t3]`; kind B1
/// when `[t0' t3]` is present as well, B2 otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Butterfly {
    pub kind: ButterflyKind,
    pub t0: Vertex,
    pub t0p: Vertex,
    pub t1: Vertex,
    pub t2: Vertex,
    pub t3: Vertex,
    pub t4: Vertex,
    pub t4p: Vertex,
    pub t5: Vertex,
    pub t5p: Vertex,
}

fn common_neighbors(g: &CubicGraph, a: Vertex, b: Vertex) -> impl Iterator<Item = Vertex> {
    let mut mask = g.neighbor_mask(a) & g.neighbor_mask(b);
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            v
        })
    })
}

pub fn detect_butterflies(ext: &ExtendedGraph) -> Vec<Butterfly> {
    let g = ext.graph();
    let mut out = Vec::new();
    for t1 in 0..g.order() {
        for &t2 in g.neighbors(t1) {
            for t3 in g.others(t2, t1) {
                let ends = g.others(t3, t2);
                let starts = g.others(t1, t2);
                if ends.iter().any(|v| starts.contains(v)) {
                    continue;
                }
                for (t0, t0p) in [(starts[0], starts[1]), (starts[1], starts[0])] {
                    for (t4, t4p) in [(ends[0], ends[1]), (ends[1], ends[0])] {
                        if !(ext.contains(t1, t4) && ext.contains(t1, t4p) && ext.contains(t0, t3)) {
                            continue;
                        }
                        let kind = if ext.contains(t0p, t3) { ButterflyKind::B1 } else { ButterflyKind::B2 };
                        if kind == ButterflyKind::B1 && t0 > t0p {
                            continue;
                        }
                        let base = [t0, t0p, t1, t2, t3, t4, t4p];
                        for t5 in common_neighbors(g, t0, t4).filter(|v| !base.contains(v)) {
                            for t5p in common_neighbors(g, t0p, t4p).filter(|v| !base.contains(v) && *v != t5) {
                                out.push(Butterfly { kind, t0, t0p, t1, t2, t3, t4, t4p, t5, t5p });
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Special {
    #[default]
    None,
    Petersen,
    Franklin,
}

pub fn recognize_special(g: &CubicGraph) -> Special {
    match g.order() {
        10 if is_isomorphic(g, &named::petersen()).is_some() => Special::Petersen,
        12 if is_isomorphic(g, &named::franklin()).is_some() => Special::Franklin,
        _ => Special::None,
    }
}
