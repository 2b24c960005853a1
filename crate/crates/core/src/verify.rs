//! Corpus-wide verification: census, extended graphs, injectivity,
//! round-trip reconstruction and the structural properties that go with
//! them, reported one record per graph.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::AddAssign;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::embedding::{euler_genus, systems_equivalent_with, FacialSystem, FacialWalk};
use crate::enumeration::{enumerate_polyhedral_with, CensusOptions, DEFAULT_MAX_N};
use crate::error::Error;
use crate::extended::{build_extended, ExtendedGraph};
use crate::graph::{cycles_of_length, three_paths_between, CubicGraph, SimpleGraph, Vertex};
use crate::graph6::{emit_graph6, CorpusEntry};
use crate::iso::automorphisms;
use crate::reconstruct::{
    detect_butterflies, recognize_special, reconstruct_with, unresolved_forks, ReconstructOptions,
    ReconstructionOutcome, Rule, Special, DEFAULT_MAX_DEPTH,
};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_n: usize,
    pub max_depth: usize,
    /// Graphs verified concurrently before their records are released.
    pub batch: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_n: DEFAULT_MAX_N, max_depth: DEFAULT_MAX_DEPTH, batch: 64 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    InvalidInput,
    Injectivity,
    Roundtrip,
    Structure,
    Determinism,
    NoSixCycle,
    Butterfly,
    SpecialShape,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub kind: FailureKind,
    /// Census index of the offending system, when there is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<usize>,
    pub detail: String,
    pub witness: serde_json::Value,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub systems: usize,
    pub invalid_inputs: usize,
    pub injectivity_failures: usize,
    pub roundtrip_failures: usize,
    pub structure_violations: usize,
    /// Round-trips whose scaffold edges each have exactly as many 3-paths
    /// in the graph as their multiplicity.
    pub unique_witness_instances: usize,
    pub determinism_violations: usize,
    pub no_six_cycle_violations: usize,
    pub branched_roundtrips: usize,
    pub butterfly_violations: usize,
    pub unresolved_fork_instances: usize,
    pub shape_violations: usize,
}

impl Counters {
    pub fn violations(&self) -> usize {
        self.invalid_inputs
            + self.injectivity_failures
            + self.roundtrip_failures
            + self.structure_violations
            + self.determinism_violations
            + self.no_six_cycle_violations
            + self.butterfly_violations
            + self.shape_violations
    }
}

impl AddAssign for Counters {
    fn add_assign(&mut self, o: Counters) {
        self.systems += o.systems;
        self.invalid_inputs += o.invalid_inputs;
        self.injectivity_failures += o.injectivity_failures;
        self.roundtrip_failures += o.roundtrip_failures;
        self.structure_violations += o.structure_violations;
        self.unique_witness_instances += o.unique_witness_instances;
        self.determinism_violations += o.determinism_violations;
        self.no_six_cycle_violations += o.no_six_cycle_violations;
        self.branched_roundtrips += o.branched_roundtrips;
        self.butterfly_violations += o.butterfly_violations;
        self.unresolved_fork_instances += o.unresolved_fork_instances;
        self.shape_violations += o.shape_violations;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphRecord {
    /// 1-based line in the corpus file.
    pub line: usize,
    pub graph6: String,
    pub order: usize,
    pub census_size: usize,
    pub genus_histogram: BTreeMap<u32, usize>,
    pub injectivity_ok: bool,
    pub roundtrip_ok: bool,
    /// `branch_count` value to number of round-trips with that value.
    pub branch_histogram: BTreeMap<usize, usize>,
    /// Special graphs recognized on round-trips that branched.
    pub specials: BTreeSet<Special>,
    pub rules: BTreeMap<Rule, usize>,
    pub counters: Counters,
    pub failures: Vec<Failure>,
}

impl GraphRecord {
    pub fn ok(&self) -> bool {
        self.counters.violations() == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub graphs: usize,
    pub failing_graphs: usize,
    pub counters: Counters,
    pub branch_histogram: BTreeMap<usize, usize>,
    pub specials: BTreeMap<Special, usize>,
    pub rules: BTreeMap<Rule, usize>,
}

impl Aggregate {
    pub fn add(&mut self, r: &GraphRecord) {
        self.graphs += 1;
        self.failing_graphs += usize::from(!r.ok());
        self.counters += r.counters;
        for (&k, &v) in &r.branch_histogram {
            *self.branch_histogram.entry(k).or_insert(0) += v;
        }
        for &s in &r.specials {
            *self.specials.entry(s).or_insert(0) += 1;
        }
        for (&k, &v) in &r.rules {
            *self.rules.entry(k).or_insert(0) += v;
        }
    }

    pub fn from_records<'a>(records: impl IntoIterator<Item = &'a GraphRecord>) -> Self {
        let mut a = Aggregate::default();
        for r in records {
            a.add(r);
        }
        a
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub corpus: String,
    pub records: Vec<GraphRecord>,
    pub aggregate: Aggregate,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.aggregate.counters.violations() == 0
    }

    /// Whether the aggregate equals the sum of the records.
    pub fn is_consistent(&self) -> bool {
        Aggregate::from_records(&self.records) == self.aggregate
    }
}

pub fn verify_corpus(corpus: &str, entries: &[CorpusEntry], opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let mut records = Vec::with_capacity(entries.len());
    verify_entries(entries, opts, |r| records.push(r));
    let aggregate = Aggregate::from_records(&records);
    VerificationReport {
        corpus: corpus.to_owned(),
        records,
        aggregate,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

/// Verifies `entries` in parallel batches and hands records to `sink` in
/// corpus order.
pub fn verify_entries(entries: &[CorpusEntry], opts: &VerifyOptions, mut sink: impl FnMut(GraphRecord)) {
    for chunk in entries.chunks(opts.batch.max(1)) {
        let records: Vec<GraphRecord> = chunk.par_iter().map(|e| verify_entry(e, opts)).collect();
        records.into_iter().for_each(&mut sink);
    }
}

pub fn verify_entry(e: &CorpusEntry, opts: &VerifyOptions) -> GraphRecord {
    match &e.graph {
        Ok(g) => verify_simple(e.line, g, opts),
        Err(err) => invalid_record(e.line, e.text.clone(), 0, err),
    }
}

fn invalid_record(line: usize, graph6: String, order: usize, err: &Error) -> GraphRecord {
    GraphRecord {
        line,
        graph6: graph6.clone(),
        order,
        census_size: 0,
        genus_histogram: BTreeMap::new(),
        injectivity_ok: false,
        roundtrip_ok: false,
        branch_histogram: BTreeMap::new(),
        specials: BTreeSet::new(),
        rules: BTreeMap::new(),
        counters: Counters { invalid_inputs: 1, ..Counters::default() },
        failures: vec![Failure {
            kind: FailureKind::InvalidInput,
            system: None,
            detail: err.to_string(),
            witness: json!({ "graph6": graph6 }),
        }],
    }
}

fn verify_simple(line: usize, g: &SimpleGraph, opts: &VerifyOptions) -> GraphRecord {
    let text = emit_graph6(g);
    let cubic = match CubicGraph::new(g) {
        Ok(c) => c,
        Err(err) => return invalid_record(line, text, g.order(), &err),
    };
    verify_graph(line, &cubic, opts)
}

/// Full verification of one graph.
pub fn verify_graph(line: usize, g: &CubicGraph, opts: &VerifyOptions) -> GraphRecord {
    let text = emit_graph6(&g.to_simple());
    let auts = automorphisms(g);
    let census_opts = CensusOptions { max_n: opts.max_n, ..CensusOptions::default() };
    let census = match enumerate_polyhedral_with(g, &auts, &census_opts) {
        Ok(c) => c,
        Err(err) => return invalid_record(line, text, g.order(), &err),
    };

    let mut rec = GraphRecord {
        line,
        graph6: text,
        order: g.order(),
        census_size: census.systems.len(),
        genus_histogram: census.genus_histogram.clone(),
        injectivity_ok: true,
        roundtrip_ok: true,
        branch_histogram: BTreeMap::new(),
        specials: BTreeSet::new(),
        rules: BTreeMap::new(),
        counters: Counters { systems: census.systems.len(), ..Counters::default() },
        failures: Vec::new(),
    };
    let no_six_cycles = cycles_of_length(g, 6).is_empty();
    let special = recognize_special(g);
    let ropts = ReconstructOptions { max_depth: opts.max_depth };

    let mut exts: Vec<Option<ExtendedGraph>> = Vec::with_capacity(census.systems.len());
    for (i, fs) in census.systems.iter().enumerate() {
        for v in check_scaffold_structure(g, fs) {
            rec.counters.structure_violations += 1;
            rec.failures.push(Failure {
                kind: FailureKind::Structure,
                system: Some(i),
                detail: v,
                witness: json!({ "faces": fs }),
            });
        }
        let ext = match build_extended(g, fs) {
            Ok(x) => x,
            Err(err) => {
                rec.counters.structure_violations += 1;
                rec.failures.push(Failure {
                    kind: FailureKind::Structure,
                    system: Some(i),
                    detail: err.to_string(),
                    witness: json!({ "faces": fs }),
                });
                exts.push(None);
                continue;
            }
        };

        match reconstruct_with(&ext, &auts, &ropts) {
            Ok(out) => check_roundtrip(g, &auts, i, fs, &ext, &out, no_six_cycles, special, &mut rec),
            Err(err) => {
                rec.roundtrip_ok = false;
                rec.counters.roundtrip_failures += 1;
                rec.failures.push(Failure {
                    kind: FailureKind::Roundtrip,
                    system: Some(i),
                    detail: format!("{}: {err}", err.kind()),
                    witness: json!({ "faces": fs, "extended": ext }),
                });
            }
        }

        if !unresolved_forks(&ext).is_empty() {
            rec.counters.unresolved_fork_instances += 1;
            if special == Special::None {
                rec.counters.shape_violations += 1;
                rec.failures.push(Failure {
                    kind: FailureKind::SpecialShape,
                    system: Some(i),
                    detail: "fork disjunction survives propagation outside the special graphs".into(),
                    witness: json!({ "extended": ext }),
                });
            }
        }
        exts.push(Some(ext));
    }

    let mut by_key: HashMap<Vec<u8>, usize> = HashMap::new();
    for (i, ext) in exts.iter().enumerate() {
        let Some(ext) = ext else { continue };
        if let Some(&j) = by_key.get(&ext.canonical_key(&auts)) {
            rec.injectivity_ok = false;
            rec.counters.injectivity_failures += 1;
            rec.failures.push(Failure {
                kind: FailureKind::Injectivity,
                system: Some(i),
                detail: format!("systems {j} and {i} share an extended graph"),
                witness: json!({ "systems": [&census.systems[j], &census.systems[i]], "extended": ext }),
            });
        } else {
            by_key.insert(ext.canonical_key(&auts), i);
        }
    }
    rec
}

#[allow(clippy::too_many_arguments)]
fn check_roundtrip(
    g: &CubicGraph,
    auts: &[crate::iso::VertexPermutation],
    i: usize,
    fs: &FacialSystem,
    ext: &ExtendedGraph,
    out: &ReconstructionOutcome,
    no_six_cycles: bool,
    special: Special,
    rec: &mut GraphRecord,
) {
    *rec.branch_histogram.entry(out.branch_count).or_insert(0) += 1;
    for (&k, &v) in &out.used_rules {
        *rec.rules.entry(k).or_insert(0) += v;
    }
    let rebuilt = build_extended(g, &out.system).map(|x| x.multiplicities());
    let same_ext = rebuilt.as_ref().is_ok_and(|m| *m == ext.multiplicities());
    if !systems_equivalent_with(auts, &out.system, fs) || !same_ext {
        rec.roundtrip_ok = false;
        rec.counters.roundtrip_failures += 1;
        rec.failures.push(Failure {
            kind: FailureKind::Roundtrip,
            system: Some(i),
            detail: "reconstructed system differs from the census system".into(),
            witness: json!({ "expected": fs, "got": out.system, "extended": ext }),
        });
    }
    let unique = has_unique_witnesses(ext);
    rec.counters.unique_witness_instances += usize::from(unique);
    if out.branch_count == 0 {
        return;
    }
    rec.counters.branched_roundtrips += 1;
    if special != Special::None {
        rec.specials.insert(special);
    }
    let mut flag = |kind: FailureKind, detail: &str, counter: fn(&mut Counters) -> &mut usize| {
        *counter(&mut rec.counters) += 1;
        rec.failures.push(Failure {
            kind,
            system: Some(i),
            detail: format!("{detail} (branch_count {})", out.branch_count),
            witness: json!({ "extended": ext }),
        });
    };
    if unique {
        flag(FailureKind::Determinism, "search branched although every scaffold edge has unique witnesses", |c| {
            &mut c.determinism_violations
        });
    }
    if no_six_cycles {
        flag(FailureKind::NoSixCycle, "search branched on a graph without 6-cycles", |c| {
            &mut c.no_six_cycle_violations
        });
    }
    if detect_butterflies(ext).is_empty() {
        flag(FailureKind::Butterfly, "search branched but no butterfly occurs", |c| &mut c.butterfly_violations);
    }
}

/// Every scaffold edge has exactly as many 3-paths in the graph as its
/// multiplicity.
pub fn has_unique_witnesses(ext: &ExtendedGraph) -> bool {
    ext.scaffold().all(|e| three_paths_between(ext.graph(), e.u, e.w).len() == e.multiplicity as usize)
}

/// Structural facts every polyhedral facial system must satisfy; returns
/// one message per violation.
pub fn check_scaffold_structure(g: &CubicGraph, fs: &FacialSystem) -> Vec<String> {
    let mut out = Vec::new();
    let faces: BTreeSet<&FacialWalk> = fs.walks().iter().collect();

    for c in cycles_of_length(g, 3) {
        if !faces.contains(&FacialWalk::new(c.clone())) {
            out.push(format!("3-cycle {c:?} is not facial"));
        }
    }
    if g.order() != 4 {
        for c in cycles_of_length(g, 4) {
            if !faces.contains(&FacialWalk::new(c.clone())) {
                out.push(format!("4-cycle {c:?} is not facial"));
            }
        }
    }

    for w in fs.walks().iter().filter(|w| w.len() >= 5) {
        let vs = w.vertices();
        let k = vs.len();
        let pos: HashMap<Vertex, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let far = |i: usize, j: usize| {
            let d = i.abs_diff(j);
            d.min(k - d) >= 2
        };
        for (i, &v) in vs.iter().enumerate() {
            for &u in g.neighbors(v) {
                if let Some(&j) = pos.get(&u) {
                    if i < j && far(i, j) {
                        out.push(format!("facial cycle {vs:?} has chord {v}-{u}"));
                    }
                }
            }
        }
        for t in (0..g.order()).filter(|t| !pos.contains_key(t)) {
            let on: Vec<usize> = g.neighbors(t).iter().filter_map(|u| pos.get(u).copied()).collect();
            for a in 0..on.len() {
                for b in a + 1..on.len() {
                    if far(on[a], on[b]) {
                        out.push(format!("facial cycle {vs:?} has shortcut {}-{t}-{}", vs[on[a]], vs[on[b]]));
                    }
                }
            }
        }
    }

    match build_extended(g, fs) {
        Err(err) => out.push(err.to_string()),
        Ok(ext) => {
            let mut expected: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
            for w in fs.walks().iter().filter(|w| w.len() == 6) {
                let v = w.vertices();
                for i in 0..3 {
                    expected.insert((v[i].min(v[i + 3]), v[i].max(v[i + 3])));
                }
            }
            let mut quad_edges: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
            for w in fs.walks().iter().filter(|w| w.len() == 4) {
                for e in w.edges() {
                    *quad_edges.entry(e).or_insert(0) += 1;
                }
            }
            expected.extend(quad_edges.into_iter().filter(|&(_, c)| c == 2).map(|(e, _)| e));
            let doubles: BTreeSet<(Vertex, Vertex)> =
                ext.scaffold().filter(|e| e.multiplicity == 2).map(|e| (e.u, e.w)).collect();
            for p in doubles.symmetric_difference(&expected) {
                if doubles.contains(p) {
                    out.push(format!(
                        "double scaffold edge [[{} {}]] is neither a hexagon chord nor a shared quad edge",
                        p.0, p.1
                    ));
                } else {
                    out.push(format!("[{} {}] should be a double scaffold edge", p.0, p.1));
                }
            }
        }
    }
    out
}

/// Result of reconstructing one extended graph that is claimed to be valid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtendedRecord {
    pub line: usize,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcome: Option<ReconstructionOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
}

/// Reconstructs `ext` and confirms the result rebuilds it exactly.
pub fn verify_extended(line: usize, ext: &ExtendedGraph, opts: &VerifyOptions) -> ExtendedRecord {
    let g = ext.graph();
    if g.order() > opts.max_n {
        let err = Error::TooLarge { n: g.order(), max: opts.max_n };
        return ExtendedRecord {
            line,
            ok: false,
            outcome: None,
            error: Some("invalid-input".into()),
            detail: Some(err.to_string()),
            genus: None,
        };
    }
    let ropts = ReconstructOptions { max_depth: opts.max_depth };
    match reconstruct_with(ext, &automorphisms(g), &ropts) {
        Ok(out) => {
            let same = build_extended(g, &out.system).is_ok_and(|x| x.multiplicities() == ext.multiplicities());
            ExtendedRecord {
                line,
                ok: same,
                genus: euler_genus(g, &out.system).ok(),
                detail: (!same).then(|| "reconstructed system rebuilds a different extended graph".to_owned()),
                error: None,
                outcome: Some(out),
            }
        }
        Err(err) => ExtendedRecord {
            line,
            ok: false,
            outcome: None,
            error: Some(err.kind().into()),
            detail: Some(err.to_string()),
            genus: None,
        },
    }
}
