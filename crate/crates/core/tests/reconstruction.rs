mod common;

use std::collections::BTreeSet;

use common::*;
use scaffoldkit::reconstruct::{
    detect_butterflies, find_forks, init_state, propagate, unresolved_forks, ButterflyKind, PathIndex, Rule, Value,
};
use scaffoldkit::verify::{verify_graph, VerifyOptions};
use scaffoldkit::{
    automorphisms, build_extended, enumerate_polyhedral, euler_genus, named, reconstruct, reconstruct_with,
    systems_equivalent, CubicGraph, ExtendedGraph, FacialSystem, ReconstructError, ReconstructOptions, Special,
};

fn only_system(g: &CubicGraph) -> FacialSystem {
    let mut systems = enumerate_polyhedral(g).unwrap().systems;
    assert_eq!(systems.len(), 1);
    systems.remove(0)
}

fn petersen_ext() -> ExtendedGraph {
    let g = named::petersen();
    build_extended(&g, &only_system(&g)).unwrap()
}

fn franklin_golden() -> ExtendedGraph {
    ExtendedGraph::from_pairs(named::franklin_labeled(), named::franklin_scaffold()).unwrap()
}

#[test]
fn petersen_init_only_fixes_pairs_without_scaffold() {
    let ext = petersen_ext();
    let g = ext.graph();
    let idx = PathIndex::new(g);
    let st = init_state(&idx, &ext);
    for (i, p) in idx.paths().iter().enumerate() {
        let (u, w) = p.endpoints();
        let expect = if ext.contains(u, w) { Value::Unknown } else { Value::NonFacial };
        assert_eq!(st.value(i), expect, "{p}");
    }
    assert!(st.trail().iter().all(|d| d.rule == Rule::NoScaffold));
}

#[test]
fn franklin_golden_initializes_and_propagates_cleanly() {
    let ext = franklin_golden();
    let g = ext.graph();
    let idx = PathIndex::new(g);
    let mut st = init_state(&idx, &ext);
    propagate(g, &idx, &ext, &mut st).unwrap();
    assert!(!st.is_complete());
}

#[test]
fn petersen_reconstructs_to_six_pentagons() {
    let g = named::petersen();
    let fs = only_system(&g);
    let out = reconstruct(&petersen_ext()).unwrap();
    assert!(systems_equivalent(&g, &out.system, &fs));
    assert!(out.system.walks().iter().all(|w| w.len() == 5));
    assert_eq!(out.system.face_count(), 6);
    assert_eq!(euler_genus(&g, &out.system).unwrap(), 1);
    assert_eq!(out.special, Special::Petersen);
    assert_eq!(out.branch_count, 1);
    assert_eq!(out.completions, 2);
}

#[test]
fn franklin_golden_reconstructs_with_special() {
    let ext = franklin_golden();
    let out = reconstruct(&ext).unwrap();
    assert_eq!(out.special, Special::Franklin);
    assert!(out.branch_count > 0);
    let rebuilt = build_extended(ext.graph(), &out.system).unwrap();
    assert_eq!(rebuilt.multiplicities(), ext.multiplicities());
    let mut lengths: Vec<usize> = out.system.walks().iter().map(|w| w.len()).collect();
    lengths.sort_unstable();
    assert_eq!(lengths, [4, 4, 4, 6, 6, 6, 6]);
}

#[test]
fn hexagonal_prism_resolves_by_quadrilaterals() {
    let g = named::prism(6);
    let c = enumerate_polyhedral(&g).unwrap();
    let planar: Vec<&FacialSystem> = c.systems.iter().filter(|fs| euler_genus(&g, fs).unwrap() == 0).collect();
    assert_eq!(planar.len(), 1);
    let ext = build_extended(&g, planar[0]).unwrap();
    let out = reconstruct(&ext).unwrap();
    assert_eq!(out.branch_count, 0);
    assert!(systems_equivalent(&g, &out.system, planar[0]));
    assert_eq!(out.used_rules.get(&Rule::Quadrilateral), Some(&24));
    assert!(out.used_rules.contains_key(&Rule::Continuation), "{:?}", out.used_rules);
    assert!(!out.used_rules.contains_key(&Rule::Branch));
}

#[test]
fn k4_empty_scaffold_resolves_by_triangles() {
    let g = named::k4();
    let ext = build_extended(&g, &only_system(&g)).unwrap();
    assert_eq!(ext.scaffold_len(), 0);
    let out = reconstruct(&ext).unwrap();
    assert_eq!(out.branch_count, 0);
    assert!(out.system.walks().iter().all(|w| w.len() == 3));
    assert!(find_forks(&ext).is_empty());
    assert!(detect_butterflies(&ext).is_empty());
}

#[test]
fn fork_and_butterfly_examples() {
    let pet = petersen_ext();
    assert!(!find_forks(&pet).is_empty());
    assert!(detect_butterflies(&pet).iter().any(|b| b.kind == ButterflyKind::B1));
    let fr = franklin_golden();
    assert!(detect_butterflies(&fr).iter().any(|b| b.kind == ButterflyKind::B2));
}

#[test]
fn forks_satisfy_their_definition() {
    for ext in [petersen_ext(), franklin_golden()] {
        let g = ext.graph();
        for f in find_forks(&ext) {
            assert!(g.adjacent(f.t1, f.t2) && g.adjacent(f.t2, f.t3));
            assert!(g.adjacent(f.t3, f.t4) && g.adjacent(f.t3, f.t4p));
            assert!(f.t4 < f.t4p);
            assert!(ext.contains(f.t1, f.t4) && ext.contains(f.t1, f.t4p));
        }
        for b in detect_butterflies(&ext) {
            let distinct: BTreeSet<usize> = [b.t0, b.t0p, b.t1, b.t2, b.t3, b.t4, b.t4p, b.t5, b.t5p].into();
            assert_eq!(distinct.len(), 9);
            for cyc in [[b.t0, b.t1, b.t2, b.t3, b.t4, b.t5], [b.t0p, b.t1, b.t2, b.t3, b.t4p, b.t5p]] {
                for i in 0..6 {
                    assert!(g.adjacent(cyc[i], cyc[(i + 1) % 6]));
                }
            }
            assert!(ext.contains(b.t1, b.t4) && ext.contains(b.t1, b.t4p) && ext.contains(b.t0, b.t3));
            assert_eq!(b.kind == ButterflyKind::B1, ext.contains(b.t0p, b.t3));
        }
    }
}

#[test]
fn unresolved_forks_only_on_special_graphs() {
    let opts = VerifyOptions::default();
    let mut seen = BTreeSet::new();
    for (i, g) in corpus_upto(12).iter().enumerate() {
        let rec = verify_graph(i + 1, g, &opts);
        assert_eq!(rec.counters.shape_violations, 0, "{}", rec.graph6);
        if rec.counters.unresolved_fork_instances > 0 {
            seen.insert(scaffoldkit::reconstruct::recognize_special(g));
        }
    }
    assert_eq!(seen, BTreeSet::from([Special::Petersen, Special::Franklin]));
    assert!(!unresolved_forks(&petersen_ext()).is_empty());
}

#[test]
fn depth_cap_is_enforced() {
    let err =
        reconstruct_with(&petersen_ext(), &automorphisms(&named::petersen()), &ReconstructOptions { max_depth: 0 })
            .unwrap_err();
    assert!(matches!(err, ReconstructError::DepthExceeded { cap: 0 }));
}

#[test]
fn contradiction_carries_a_trail() {
    let g = named::cube();
    let ext = ExtendedGraph::from_pairs(g, []).unwrap();
    match reconstruct(&ext).unwrap_err() {
        ReconstructError::Contradiction { contradiction } => {
            assert!(!contradiction.trail.is_empty());
            assert!(!contradiction.detail.is_empty());
        }
        other => panic!("expected a contradiction, got {other}"),
    }
}

#[test]
fn flipping_one_path_breaks_assembly() {
    let g = named::prism(3);
    let fs = only_system(&g);
    let ext = build_extended(&g, &fs).unwrap();
    let idx = PathIndex::new(&g);
    let mut st = init_state(&idx, &ext);
    propagate(&g, &idx, &ext, &mut st).unwrap();
    assert!(st.is_complete());
    let mut facial: Vec<bool> = st.values().iter().map(|&v| v == Value::Facial).collect();
    scaffoldkit::reconstruct::assemble_walks(&g, &idx, &facial).unwrap();
    for i in 0..facial.len() {
        facial[i] = !facial[i];
        let broken = scaffoldkit::reconstruct::assemble_walks(&g, &idx, &facial);
        let rejected = match broken {
            Err(_) => true,
            Ok(other) => !scaffoldkit::is_polyhedral(&g, &other).ok() || other != fs,
        };
        assert!(rejected, "flip {i}");
        facial[i] = !facial[i];
    }
}
