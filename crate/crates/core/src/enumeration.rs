//! Exhaustive scan of the normalized scheme space of a cubic graph.
//!
//! With every BFS-tree edge held positive there are `2^n` rotation choices
//! and `2^(m-n+1)` signatures, and every embedding appears at least once.
//! Scheme `k` takes its rotation bits from the low `n` bits of `k` and its
//! non-tree signs from the rest.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embedding::{
    bfs_tree, canonical_system_with, euler_genus, trace_bits, EmbeddingScheme, FacialSystem, FlagTable,
};
use crate::error::{Error, Result};
use crate::graph::CubicGraph;
use crate::graph6::emit_graph6;
use crate::iso::{automorphisms, VertexPermutation};

pub const DEFAULT_MAX_N: usize = 14;

/// Edges whose sign is free after normalization, ascending by edge id.
pub fn non_tree_edges(g: &CubicGraph) -> Vec<usize> {
    let mut tree = vec![false; g.size()];
    for (c, p) in bfs_tree(g) {
        tree[g.edge_id(p, c).unwrap()] = true;
    }
    (0..g.size()).filter(|&e| !tree[e]).collect()
}

pub fn scheme_count(g: &CubicGraph) -> u64 {
    1u64 << (g.order() + g.size() - g.order() + 1)
}

/// The scheme space as a stream, in a fixed order.
pub fn enumerate_schemes(g: &CubicGraph) -> impl Iterator<Item = EmbeddingScheme> + '_ {
    let space = SchemeSpace::new(g);
    (0..scheme_count(g)).map(move |k| {
        let (rot, sig) = space.bits(k);
        EmbeddingScheme::from_bits(g, rot, sig)
    })
}

struct SchemeSpace {
    n: usize,
    free: Vec<usize>,
}

impl SchemeSpace {
    fn new(g: &CubicGraph) -> Self {
        SchemeSpace { n: g.order(), free: non_tree_edges(g) }
    }

    fn bits(&self, k: u64) -> (u64, u128) {
        let rot = if self.n == 64 { k } else { k & ((1u64 << self.n) - 1) };
        let mut rest = if self.n == 64 { 0 } else { k >> self.n };
        let mut sig = 0u128;
        for &e in &self.free {
            if rest & 1 == 1 {
                sig |= 1 << e;
            }
            rest >>= 1;
        }
        (rot, sig)
    }
}

/// Traces faces, stopping at the first repeated vertex, then checks that any
/// two faces meet in nothing, a vertex, or an edge.
pub(crate) fn polyhedral_fast(table: &FlagTable, rot: u64, sig: u128) -> bool {
    let mut faces: Vec<(u64, u128)> = Vec::with_capacity(16);
    let mut visited = [0u64; 6];
    let flags = table.flag_count();
    for start in 0..flags {
        if visited[start >> 6] >> (start & 63) & 1 == 1 {
            continue;
        }
        let mut vmask = 0u64;
        let mut emask = 0u128;
        let mut f = start;
        loop {
            let v = FlagTable::vertex(f);
            if vmask >> v & 1 == 1 {
                return false;
            }
            vmask |= 1 << v;
            emask |= 1 << table.edge(f);
            visited[f >> 6] |= 1 << (f & 63);
            let g = table.across(f, sig);
            visited[g >> 6] |= 1 << (g & 63);
            f = FlagTable::corner(g, rot);
            if f == start {
                break;
            }
        }
        for &(vm, em) in &faces {
            match (vm & vmask).count_ones() {
                0 | 1 => {}
                2 if (em & emask).count_ones() == 1 => {}
                _ => return false,
            }
        }
        faces.push((vmask, emask));
    }
    true
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub max_n: usize,
    /// Number of shards the scheme range is split into.
    pub shards: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { max_n: DEFAULT_MAX_N, shards: 64 }
    }
}

/// All inequivalent polyhedral facial systems of one graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmbeddingCensus {
    #[serde(rename = "graph6", with = "graph6_serde")]
    pub graph: CubicGraph,
    /// Canonical representatives, ordered by canonical key.
    pub systems: Vec<FacialSystem>,
    pub genus_histogram: BTreeMap<u32, usize>,
    pub schemes_scanned: u64,
}

pub(crate) mod graph6_serde {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::graph::CubicGraph;
    use crate::graph6::{emit_graph6, parse_graph6};

    pub fn serialize<S: Serializer>(g: &CubicGraph, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&emit_graph6(&g.to_simple()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CubicGraph, D::Error> {
        let text = String::deserialize(d)?;
        let g = parse_graph6(&text).map_err(D::Error::custom)?;
        CubicGraph::new(&g).map_err(D::Error::custom)
    }
}

pub fn enumerate_polyhedral(g: &CubicGraph) -> Result<EmbeddingCensus> {
    enumerate_polyhedral_with(g, &automorphisms(g), &CensusOptions::default())
}

pub fn enumerate_polyhedral_with(
    g: &CubicGraph,
    auts: &[VertexPermutation],
    opts: &CensusOptions,
) -> Result<EmbeddingCensus> {
    if g.order() > opts.max_n {
        return Err(Error::TooLarge { n: g.order(), max: opts.max_n });
    }
    let total = scheme_count(g);
    let space = SchemeSpace::new(g);
    let table = FlagTable::new(g);
    let shards = (opts.shards.max(1) as u64).min(total);
    let per = total.div_ceil(shards);

    let found: Vec<BTreeMap<Vec<u8>, FacialSystem>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut local: BTreeMap<Vec<u8>, FacialSystem> = BTreeMap::new();
            let mut seen_labeled = std::collections::HashSet::new();
            for k in s * per..((s + 1) * per).min(total) {
                let (rot, sig) = space.bits(k);
                if !polyhedral_fast(&table, rot, sig) {
                    continue;
                }
                let fs = trace_bits(g, &table, rot, sig);
                if !seen_labeled.insert(fs.encode()) {
                    continue;
                }
                let (key, canon) = canonical_system_with(auts, &fs);
                local.entry(key).or_insert(canon);
            }
            local
        })
        .collect();

    let mut merged: BTreeMap<Vec<u8>, FacialSystem> = BTreeMap::new();
    for shard in found {
        merged.extend(shard);
    }
    let mut genus_histogram = BTreeMap::new();
    for fs in merged.values() {
        *genus_histogram.entry(euler_genus(g, fs)?).or_insert(0) += 1;
    }
    Ok(EmbeddingCensus {
        graph: g.clone(),
        systems: merged.into_values().collect(),
        genus_histogram,
        schemes_scanned: total,
    })
}

/// Every labeled polyhedral facial system of `g` (not reduced by automorphisms).
pub fn labeled_polyhedral_systems(g: &CubicGraph) -> Vec<FacialSystem> {
    let space = SchemeSpace::new(g);
    let table = FlagTable::new(g);
    let mut out = std::collections::BTreeSet::new();
    for k in 0..scheme_count(g) {
        let (rot, sig) = space.bits(k);
        if polyhedral_fast(&table, rot, sig) {
            out.insert(trace_bits(g, &table, rot, sig));
        }
    }
    out.into_iter().collect()
}

/// Convenience for diagnostics: the graph6 line of a census graph.
pub fn census_graph6(c: &EmbeddingCensus) -> String {
    emit_graph6(&c.graph.to_simple())
}
