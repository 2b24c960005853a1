//! Automorphisms and isomorphisms of cubic graphs by refined backtracking.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::graph::{cycles_of_length, CubicGraph, Vertex};

/// A bijection on `0..n`; `image(v)` is where `v` goes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexPermutation(Vec<Vertex>);

impl VertexPermutation {
    pub fn identity(n: usize) -> Self {
        VertexPermutation((0..n).collect())
    }

    /// Panics unless `images` is a permutation of `0..images.len()`.
    pub fn from_images(images: Vec<Vertex>) -> Self {
        let mut seen = vec![false; images.len()];
        for &v in &images {
            assert!(v < images.len() && !seen[v], "not a permutation: {images:?}");
            seen[v] = true;
        }
        VertexPermutation(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, v: Vertex) -> Vertex {
        self.0[v]
    }

    pub fn images(&self) -> &[Vertex] {
        &self.0
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &VertexPermutation) -> VertexPermutation {
        VertexPermutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut inv = vec![0; self.0.len()];
        for (v, &w) in self.0.iter().enumerate() {
            inv[w] = v;
        }
        VertexPermutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Whether the map sends edges of `g` onto edges of `h`.
    pub fn is_isomorphism(&self, g: &CubicGraph, h: &CubicGraph) -> bool {
        self.len() == g.order()
            && g.order() == h.order()
            && g.edges().iter().all(|&(u, v)| h.adjacent(self.image(u), self.image(v)))
    }
}

/// Per-vertex counts of the 3-, 4-, 5- and 6-cycles through it.
fn vertex_invariants(g: &CubicGraph) -> Vec<[u32; 4]> {
    let mut inv = vec![[0u32; 4]; g.order()];
    for (slot, k) in (3..=6).enumerate() {
        for cycle in cycles_of_length(g, k) {
            for v in cycle {
                inv[v][slot] += 1;
            }
        }
    }
    inv
}

fn bfs_order(g: &CubicGraph, root: Vertex) -> Vec<(Vertex, Option<Vertex>)> {
    let mut seen = vec![false; g.order()];
    let mut order = Vec::with_capacity(g.order());
    let mut queue = VecDeque::from([(root, None)]);
    seen[root] = true;
    while let Some((v, parent)) = queue.pop_front() {
        order.push((v, parent));
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back((w, Some(v)));
            }
        }
    }
    order
}

struct Matcher<'a> {
    g: &'a CubicGraph,
    h: &'a CubicGraph,
    inv_g: Vec<[u32; 4]>,
    inv_h: Vec<[u32; 4]>,
    order: Vec<(Vertex, Option<Vertex>)>,
    map: Vec<Option<Vertex>>,
    used: u64,
}

impl<'a> Matcher<'a> {
    fn new(g: &'a CubicGraph, h: &'a CubicGraph) -> Option<Self> {
        if g.order() != h.order() {
            return None;
        }
        let inv_g = vertex_invariants(g);
        let inv_h = vertex_invariants(h);
        let mut sg = inv_g.clone();
        let mut sh = inv_h.clone();
        sg.sort_unstable();
        sh.sort_unstable();
        if sg != sh {
            return None;
        }
        // Root the search at a vertex of the rarest invariant class.
        let root = (0..g.order()).min_by_key(|&v| (inv_g.iter().filter(|&&x| x == inv_g[v]).count(), v)).unwrap();
        Some(Matcher { g, h, inv_g, inv_h, order: bfs_order(g, root), map: vec![None; g.order()], used: 0 })
    }

    fn consistent(&self, v: Vertex, img: Vertex) -> bool {
        if self.inv_g[v] != self.inv_h[img] || self.used >> img & 1 == 1 {
            return false;
        }
        for &w in self.g.neighbors(v) {
            if let Some(wi) = self.map[w] {
                if !self.h.adjacent(img, wi) {
                    return false;
                }
            }
        }
        // Non-edges must go to non-edges: count mapped neighbors on both sides.
        let mapped_g = self.g.neighbors(v).iter().filter(|&&w| self.map[w].is_some()).count();
        let mapped_h = self.h.neighbors(img).iter().filter(|&&x| self.used >> x & 1 == 1).count();
        mapped_g == mapped_h
    }

    fn candidates(&self, depth: usize) -> Vec<Vertex> {
        let (v, parent) = self.order[depth];
        let pool: Vec<Vertex> = match parent {
            Some(p) => self.h.neighbors(self.map[p].unwrap()).to_vec(),
            None => (0..self.h.order()).collect(),
        };
        pool.into_iter().filter(|&x| self.consistent(v, x)).collect()
    }

    fn search(&mut self, depth: usize, out: &mut Vec<VertexPermutation>, first_only: bool) -> bool {
        if depth == self.order.len() {
            out.push(VertexPermutation(self.map.iter().map(|m| m.unwrap()).collect()));
            return first_only;
        }
        let v = self.order[depth].0;
        for img in self.candidates(depth) {
            self.map[v] = Some(img);
            self.used |= 1 << img;
            let stop = self.search(depth + 1, out, first_only);
            self.used &= !(1 << img);
            self.map[v] = None;
            if stop {
                return true;
            }
        }
        false
    }
}

/// The full automorphism group of `g`, sorted.
pub fn automorphisms(g: &CubicGraph) -> Vec<VertexPermutation> {
    let mut out = Vec::new();
    if let Some(mut m) = Matcher::new(g, g) {
        m.search(0, &mut out, false);
    }
    out.sort();
    out
}

/// An isomorphism from `g` onto `h`, if one exists.
pub fn is_isomorphic(g: &CubicGraph, h: &CubicGraph) -> Option<VertexPermutation> {
    let mut m = Matcher::new(g, h)?;
    let mut out = Vec::new();
    m.search(0, &mut out, true);
    out.pop()
}
