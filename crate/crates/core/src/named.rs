//! Small named cubic graphs used as references and test subjects.

use crate::graph::{CubicGraph, Vertex};

fn build(n: usize, edges: &[(Vertex, Vertex)]) -> CubicGraph {
    CubicGraph::from_edges(n, edges).expect("named graph is cubic")
}

pub fn k4() -> CubicGraph {
    build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

pub fn k33() -> CubicGraph {
    let mut edges = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            edges.push((a, b));
        }
    }
    build(6, &edges)
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
pub fn petersen() -> CubicGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    build(10, &edges)
}

/// The prism over a `k`-cycle: vertices `0..k` and `k..2k`.
pub fn prism(k: usize) -> CubicGraph {
    assert!(k >= 3);
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((i, (i + 1) % k));
        edges.push((k + i, k + (i + 1) % k));
        edges.push((i, k + i));
    }
    build(2 * k, &edges)
}

/// The 3-cube `Q3`; vertices are bit strings, edges flip one bit.
pub fn cube() -> CubicGraph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in 0..3 {
            let w = v ^ (1 << bit);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    build(8, &edges)
}

/// Graph from an LCF notation `[jumps]^repeat` on a Hamiltonian cycle.
pub fn lcf(jumps: &[isize], repeat: usize) -> CubicGraph {
    let n = jumps.len() * repeat;
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        let j = (i as isize + jumps[i % jumps.len()]).rem_euclid(n as isize) as usize;
        if i < j {
            edges.push((i, j));
        }
    }
    build(n, &edges)
}

/// The Franklin graph, LCF `[5, -5]^6`.
pub fn franklin() -> CubicGraph {
    lcf(&[5, -5], 6)
}

/// Two copies of `K4` minus an edge, joined by two edges into a cubic graph
/// with a 2-vertex cut.
pub fn two_k4_gadget() -> CubicGraph {
    build(8, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (2, 6), (3, 7)])
}

/// Vertex names of the labeled Franklin graph used by [`franklin_labeled`].
pub const FRANKLIN_LABELS: [&str; 12] = ["t0", "t0'", "t1", "t2", "t3", "t4", "t4'", "t5", "t5'", "x0", "x2", "x5"];

/// Index of a name in [`FRANKLIN_LABELS`].
pub fn franklin_label(name: &str) -> Vertex {
    FRANKLIN_LABELS.iter().position(|&l| l == name).unwrap_or_else(|| panic!("unknown Franklin label {name}"))
}

/// The Franklin graph labeled around a butterfly: the 6-cycles
/// `t0 t1 t2 t3 t4 t5` and `t0' t1 t2 t3 t4' t5'`, with `x0`, `x2`, `x5`
/// hanging off `t0`, `t2`, `t5`.
pub fn franklin_labeled() -> CubicGraph {
    const EDGES: [(&str, &str); 18] = [
        ("t0", "t1"),
        ("t1", "t2"),
        ("t2", "t3"),
        ("t3", "t4"),
        ("t4", "t5"),
        ("t5", "t0"),
        ("t0'", "t1"),
        ("t3", "t4'"),
        ("t4'", "t5'"),
        ("t5'", "t0'"),
        ("t0", "x0"),
        ("t2", "x2"),
        ("t5", "x5"),
        ("x0", "t4'"),
        ("x0", "x5"),
        ("x2", "t0'"),
        ("x2", "x5"),
        ("t4", "t5'"),
    ];
    let edges: Vec<_> = EDGES.iter().map(|&(a, b)| (franklin_label(a), franklin_label(b))).collect();
    build(12, &edges)
}

/// Scaffold pairs of the Franklin extended graph in [`franklin_labeled`]
/// names: `(u, w, multiplicity)`.
pub fn franklin_scaffold() -> Vec<(Vertex, Vertex, u8)> {
    const SINGLE: [(&str, &str); 12] = [
        ("t0", "t5"),
        ("t5", "x5"),
        ("x5", "x0"),
        ("x0", "t0"),
        ("t1", "t2"),
        ("t2", "x2"),
        ("x2", "t0'"),
        ("t0'", "t1"),
        ("t3", "t4'"),
        ("t4'", "t5'"),
        ("t5'", "t4"),
        ("t4", "t3"),
    ];
    const DOUBLE: [(&str, &str); 12] = [
        ("t0", "t3"),
        ("x0", "t2"),
        ("t1", "t4'"),
        ("t0'", "t5"),
        ("t4", "x2"),
        ("x5", "t5'"),
        ("t0", "t5'"),
        ("t1", "t4"),
        ("t2", "t5"),
        ("t3", "x5"),
        ("t4'", "x2"),
        ("x0", "t0'"),
    ];
    let pair = |a: &str, b: &str| {
        let (u, w) = (franklin_label(a), franklin_label(b));
        (u.min(w), u.max(w))
    };
    let mut out: Vec<_> = SINGLE
        .iter()
        .map(|&(a, b)| {
            let (u, w) = pair(a, b);
            (u, w, 1)
        })
        .chain(DOUBLE.iter().map(|&(a, b)| {
            let (u, w) = pair(a, b);
            (u, w, 2)
        }))
        .collect();
    out.sort_unstable();
    out
}
