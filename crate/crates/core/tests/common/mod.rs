//! Naive reference implementations, the comparisons against the library,
//! and corpus helpers shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use scaffoldkit::enumeration::{enumerate_schemes, labeled_polyhedral_systems};
use scaffoldkit::graph::{all_three_paths, cycles_of_length, three_paths_between};
use scaffoldkit::{automorphisms, emit_graph6, read_corpus, trace_faces, CubicGraph, EmbeddingScheme, Sign};

pub const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

pub fn corpus(name: &str) -> Vec<CubicGraph> {
    let text = std::fs::read_to_string(format!("{DATA}/{name}")).unwrap();
    read_corpus(&text).into_iter().map(|e| CubicGraph::new(&e.graph.unwrap()).unwrap()).collect()
}

/// Every corpus graph on at most `max_n` vertices.
pub fn corpus_upto(max_n: usize) -> Vec<CubicGraph> {
    [4, 6, 8, 10, 12, 14]
        .into_iter()
        .filter(|&n| n <= max_n)
        .flat_map(|n| corpus(&format!("cubic_n{n:02}.g6")))
        .collect()
}

pub fn matrix(g: &CubicGraph) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut m = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Least rotation and direction of a cyclic sequence.
pub fn canon_cycle(seq: &[usize]) -> Vec<usize> {
    let k = seq.len();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..k {
        for dir in [1isize, -1] {
            let cand: Vec<usize> =
                (0..k as isize).map(|i| seq[(start as isize + dir * i).rem_euclid(k as isize) as usize]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Face tracing by darts and a running local orientation: entering `v`
/// along edge `e` multiplies the orientation by the sign of `e`, then the
/// walk leaves by the rotation successor (orientation +1) or predecessor
/// (orientation -1) of the arrival vertex. Returns canonical walks, sorted.
pub fn naive_faces(g: &CubicGraph, s: &EmbeddingScheme) -> Vec<Vec<usize>> {
    let n = g.order();
    let rot: Vec<[usize; 3]> = (0..n).map(|v| *s.rotation(v)).collect();
    let sign = |u: usize, v: usize| -> i8 {
        let e = g.edges().iter().position(|&(a, b)| (a, b) == (u.min(v), u.max(v))).unwrap();
        if s.sign(e) == Sign::Plus {
            1
        } else {
            -1
        }
    };
    let step = |v: usize, from: usize, eps: i8| -> usize {
        let i = rot[v].iter().position(|&x| x == from).unwrap();
        if eps > 0 {
            rot[v][(i + 1) % 3]
        } else {
            rot[v][(i + 2) % 3]
        }
    };
    let mut used: BTreeSet<(usize, usize, i8)> = BTreeSet::new();
    let mut walks = Vec::new();
    for (u, nbrs) in rot.iter().enumerate() {
        for &v in nbrs {
            for eps0 in [1i8, -1] {
                if used.contains(&(u, v, eps0)) {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut a, mut b, mut eps) = (u, v, eps0);
                loop {
                    used.insert((a, b, eps));
                    walk.push(a);
                    eps *= sign(a, b);
                    let c = step(b, a, eps);
                    a = b;
                    b = c;
                    if (a, b, eps) == (u, v, eps0) {
                        break;
                    }
                }
                walks.push(walk);
            }
        }
    }
    // Each face is traced once per orientation; keep one copy per pair.
    let mut canon: Vec<Vec<usize>> = walks.iter().map(|w| canon_cycle(w)).collect();
    canon.sort();
    let mut out = Vec::new();
    let mut i = 0;
    while i < canon.len() {
        let mut j = i;
        while j < canon.len() && canon[j] == canon[i] {
            j += 1;
        }
        assert_eq!((j - i) % 2, 0, "face {:?} traced an odd number of times", canon[i]);
        for _ in 0..(j - i) / 2 {
            out.push(canon[i].clone());
        }
        i = j;
    }
    out
}

/// Polyhedrality straight from the definition.
pub fn naive_polyhedral(m: &[Vec<bool>], faces: &[Vec<usize>]) -> bool {
    let vsets: Vec<BTreeSet<usize>> = faces.iter().map(|f| f.iter().copied().collect()).collect();
    if faces.iter().zip(&vsets).any(|(f, s)| s.len() != f.len()) {
        return false;
    }
    let edges = |f: &Vec<usize>| -> BTreeSet<(usize, usize)> {
        (0..f.len()).map(|i| (f[i].min(f[(i + 1) % f.len()]), f[i].max(f[(i + 1) % f.len()]))).collect()
    };
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            let common: Vec<usize> = vsets[i].intersection(&vsets[j]).copied().collect();
            match common.len() {
                0 | 1 => {}
                2 => {
                    let e = (common[0], common[1]);
                    if !m[e.0][e.1] || !edges(&faces[i]).contains(&e) || !edges(&faces[j]).contains(&e) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    true
}

/// Cycles of length `k` found by brute-force DFS from every vertex in
/// every direction, deduplicated by canonical form.
pub fn naive_cycles(m: &[Vec<bool>], k: usize) -> BTreeSet<Vec<usize>> {
    fn go(m: &[Vec<bool>], k: usize, path: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        let last = *path.last().unwrap();
        if path.len() == k {
            if m[last][path[0]] {
                out.insert(canon_cycle(path));
            }
            return;
        }
        for w in 0..m.len() {
            if m[last][w] && !path.contains(&w) {
                path.push(w);
                go(m, k, path, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in 0..m.len() {
        go(m, k, &mut vec![s], &mut out);
    }
    out
}

/// Every 4-tuple of distinct vertices forming a path, with the two
/// orientations identified by keeping the smaller.
pub fn naive_three_paths(m: &[Vec<bool>]) -> BTreeSet<[usize; 4]> {
    let n = m.len();
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                    if distinct && m[a][b] && m[b][c] && m[c][d] {
                        out.insert([a, b, c, d].min([d, c, b, a]));
                    }
                }
            }
        }
    }
    out
}

/// Automorphisms by assigning images to vertices 0, 1, 2, ... in order and
/// checking adjacency against everything already placed.
pub fn naive_automorphisms(m: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn go(m: &[Vec<bool>], img: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let v = img.len();
        if v == m.len() {
            out.push(img.clone());
            return;
        }
        for x in 0..m.len() {
            if used[x] || (0..v).any(|u| m[u][v] != m[img[u]][x]) {
                continue;
            }
            used[x] = true;
            img.push(x);
            go(m, img, used, out);
            img.pop();
            used[x] = false;
        }
    }
    let mut out = Vec::new();
    go(m, &mut Vec::new(), &mut vec![false; m.len()], &mut out);
    out.sort();
    out
}

/// graph6 written bit by bit from the format description: order byte(s),
/// then the upper triangle column by column, six bits per character.
pub fn naive_graph6(n: usize, edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    let push6 = |out: &mut String, x: usize| out.push((x as u8 + 63) as char);
    if n <= 62 {
        push6(&mut out, n);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            push6(&mut out, (n >> shift) & 63);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            push6(&mut out, (n >> shift) & 63);
        }
    }
    let set: BTreeSet<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(set.contains(&(i, j)));
        }
    }
    while bits.len() % 6 != 0 {
        bits.push(false);
    }
    for chunk in bits.chunks(6) {
        let x = chunk.iter().fold(0, |acc, &b| acc << 1 | usize::from(b));
        push6(&mut out, x);
    }
    out
}

/// Face tracing and the labeled polyhedral census against the naive tracer,
/// over every normalized scheme. Returns the number of schemes compared.
pub fn check_faces(g: &CubicGraph) -> Result<usize, String> {
    let m = matrix(g);
    let mut naive_census = BTreeSet::new();
    let mut count = 0;
    for s in enumerate_schemes(g) {
        count += 1;
        let naive = naive_faces(g, &s);
        let lib: Vec<Vec<usize>> = trace_faces(g, &s).walks().iter().map(|w| w.vertices().to_vec()).collect();
        if naive != lib {
            return Err(format!("faces differ on {s:?}: naive {naive:?}, library {lib:?}"));
        }
        if naive_polyhedral(&m, &naive) {
            naive_census.insert(naive);
        }
    }
    let lib_census: BTreeSet<Vec<Vec<usize>>> = labeled_polyhedral_systems(g)
        .iter()
        .map(|fs| fs.walks().iter().map(|w| w.vertices().to_vec()).collect())
        .collect();
    if naive_census != lib_census {
        return Err(format!(
            "labeled polyhedral systems differ: naive {}, library {}",
            naive_census.len(),
            lib_census.len()
        ));
    }
    Ok(count)
}

pub fn check_cycles(g: &CubicGraph) -> Result<usize, String> {
    let m = matrix(g);
    let mut total = 0;
    for k in 3..=g.order() {
        let naive = naive_cycles(&m, k);
        let lib = cycles_of_length(g, k);
        let lib_set: BTreeSet<Vec<usize>> = lib.iter().map(|c| canon_cycle(c)).collect();
        if lib_set.len() != lib.len() || lib_set != naive {
            return Err(format!("{k}-cycles differ: naive {}, library {}", naive.len(), lib.len()));
        }
        total += lib.len();
    }
    Ok(total)
}

pub fn check_three_paths(g: &CubicGraph) -> Result<usize, String> {
    let naive = naive_three_paths(&matrix(g));
    let lib = all_three_paths(g);
    let lib_set: BTreeSet<[usize; 4]> = lib.iter().map(|p| p.vertices()).collect();
    if lib_set.len() != lib.len() || lib_set != naive {
        return Err(format!("3-paths differ: naive {}, library {}", naive.len(), lib.len()));
    }
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            let between: BTreeSet<[usize; 4]> = three_paths_between(g, u, v).iter().map(|p| p.vertices()).collect();
            let expect: BTreeSet<[usize; 4]> =
                naive.iter().copied().filter(|p| (p[0].min(p[3]), p[0].max(p[3])) == (u, v)).collect();
            if between != expect {
                return Err(format!("3-paths between {u} and {v} differ"));
            }
        }
    }
    Ok(lib.len())
}

pub fn check_automorphisms(g: &CubicGraph) -> Result<usize, String> {
    let naive = naive_automorphisms(&matrix(g));
    let lib: Vec<Vec<usize>> = automorphisms(g).iter().map(|p| p.images().to_vec()).collect();
    if naive != lib {
        return Err(format!("automorphism groups differ: naive {}, library {}", naive.len(), lib.len()));
    }
    Ok(lib.len())
}

pub fn check_graph6(g: &CubicGraph) -> Result<(), String> {
    let naive = naive_graph6(g.order(), g.edges());
    let lib = emit_graph6(&g.to_simple());
    if naive != lib {
        return Err(format!("graph6 differs: naive {naive}, library {lib}"));
    }
    Ok(())
}
