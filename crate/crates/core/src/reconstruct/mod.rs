//! Recovery of the facial system from an extended graph.
//!
//! Each 3-path of the graph is a variable: facial or not. Propagation fixes
//! most of them; the rest are settled by a bounded depth-first search whose
//! leaves must assemble into a polyhedral system rebuilding the same
//! extended graph.

mod assemble;
mod patterns;
mod state;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::embedding::{canonical_system_with, is_polyhedral, FacialSystem};
use crate::extended::{build_extended, ExtendedGraph};
use crate::graph::{CubicGraph, Path3};
use crate::iso::{automorphisms, VertexPermutation};

pub use assemble::assemble_walks;
pub use patterns::{detect_butterflies, find_forks, recognize_special, Butterfly, ButterflyKind, Fork, Special};
pub use state::{init_state, propagate, Contradiction, Decision, PathIndex, ReconstructionState, Rule, Value};

pub const DEFAULT_MAX_DEPTH: usize = 32;

#[derive(Clone, Debug)]
pub struct ReconstructOptions {
    pub max_depth: usize,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        ReconstructOptions { max_depth: DEFAULT_MAX_DEPTH }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReconstructError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not an extended graph: {contradiction}")]
    Contradiction { contradiction: Contradiction },
    #[error("not an extended graph: {reason}")]
    NoCompletion { reason: String },
    #[error("{} inequivalent facial systems share this extended graph", systems.len())]
    UniquenessViolation { systems: Vec<FacialSystem> },
    #[error("search exceeded depth {cap}")]
    DepthExceeded { cap: usize },
}

impl ReconstructError {
    /// True when the input was rejected as not arising from any polyhedral
    /// embedding.
    pub fn is_rejection(&self) -> bool {
        matches!(self, ReconstructError::Contradiction { .. } | ReconstructError::NoCompletion { .. })
    }

    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            ReconstructError::InvalidInput(_) => "invalid-input",
            ReconstructError::Contradiction { .. } => "contradiction",
            ReconstructError::NoCompletion { .. } => "no-completion",
            ReconstructError::UniquenessViolation { .. } => "uniqueness-violation",
            ReconstructError::DepthExceeded { .. } => "depth-exceeded",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReconstructionOutcome {
    #[serde(rename = "faces", with = "faces_serde")]
    pub system: FacialSystem,
    /// Branching decisions made over the whole search tree.
    pub branch_count: usize,
    /// Set only when the search had to branch.
    pub special: Special,
    /// Rule tally along the accepted leaf's trail.
    #[serde(rename = "rules")]
    pub used_rules: BTreeMap<Rule, usize>,
    /// Accepted leaves, counted before identifying automorphic ones.
    pub completions: usize,
}

mod faces_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::embedding::FacialSystem;

    pub fn serialize<S: Serializer>(fs: &FacialSystem, s: S) -> Result<S::Ok, S::Error> {
        fs.walks().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<FacialSystem, D::Error> {
        let walks: Vec<Vec<usize>> = Vec::deserialize(d)?;
        let n = walks.iter().flatten().max().map_or(0, |&m| m + 1);
        Ok(FacialSystem::new(n, walks))
    }
}

struct Search<'a> {
    g: &'a CubicGraph,
    idx: PathIndex,
    ext: &'a ExtendedGraph,
    forks: Vec<[usize; 2]>,
    max_depth: usize,
    branch_count: usize,
    leaves: Vec<(FacialSystem, Vec<Decision>)>,
    first_contradiction: Option<Contradiction>,
    first_rejected_leaf: Option<String>,
}

impl Search<'_> {
    fn run(&mut self, mut st: ReconstructionState) -> Result<(), ReconstructError> {
        if let Err(c) = propagate(self.g, &self.idx, self.ext, &mut st) {
            self.first_contradiction.get_or_insert(c);
            return Ok(());
        }
        let Some(var) = self.choose(&st) else {
            self.accept_leaf(&st);
            return Ok(());
        };
        if st.branch_depth >= self.max_depth {
            return Err(ReconstructError::DepthExceeded { cap: self.max_depth });
        }
        self.branch_count += 1;
        for value in [Value::Facial, Value::NonFacial] {
            let mut child = st.clone();
            child.branch_depth += 1;
            match child.decide(&self.idx, var, value) {
                Ok(()) => self.run(child)?,
                Err(c) => {
                    self.first_contradiction.get_or_insert(c);
                }
            }
        }
        Ok(())
    }

    /// Fork disjunctions with both sides open come first, then the least
    /// open 3-path.
    fn choose(&self, st: &ReconstructionState) -> Option<usize> {
        self.forks
            .iter()
            .find(|[a, b]| st.value(*a) == Value::Unknown && st.value(*b) == Value::Unknown)
            .map(|f| f[0])
            .or_else(|| st.values().iter().position(|&v| v == Value::Unknown))
    }

    fn accept_leaf(&mut self, st: &ReconstructionState) {
        let facial: Vec<bool> = st.values().iter().map(|&v| v == Value::Facial).collect();
        let fs = match assemble_walks(self.g, &self.idx, &facial) {
            Ok(fs) => fs,
            Err(e) => {
                self.first_rejected_leaf.get_or_insert_with(|| e.to_string());
                return;
            }
        };
        let report = is_polyhedral(self.g, &fs);
        if !report.ok() {
            self.first_rejected_leaf
                .get_or_insert_with(|| format!("completion is not polyhedral: {:?}", report.violations[0]));
            return;
        }
        match build_extended(self.g, &fs) {
            Ok(rebuilt) if rebuilt.multiplicities() == self.ext.multiplicities() => {
                self.leaves.push((fs, st.trail().to_vec()));
            }
            Ok(_) => {
                self.first_rejected_leaf.get_or_insert_with(|| "completion rebuilds a different scaffold".into());
            }
            Err(e) => {
                self.first_rejected_leaf.get_or_insert_with(|| e.to_string());
            }
        }
    }
}

pub fn reconstruct(ext: &ExtendedGraph) -> Result<ReconstructionOutcome, ReconstructError> {
    reconstruct_with(ext, &automorphisms(ext.graph()), &ReconstructOptions::default())
}

pub fn reconstruct_with(
    ext: &ExtendedGraph,
    auts: &[VertexPermutation],
    opts: &ReconstructOptions,
) -> Result<ReconstructionOutcome, ReconstructError> {
    let g = ext.graph();
    if auts.iter().any(|p| p.len() != g.order()) {
        return Err(ReconstructError::InvalidInput("automorphism group does not match the graph order".into()));
    }
    let idx = PathIndex::new(g);
    let forks = fork_variables(&idx, ext);
    let root = init_state(&idx, ext);
    let mut search = Search {
        g,
        idx,
        ext,
        forks,
        max_depth: opts.max_depth,
        branch_count: 0,
        leaves: Vec::new(),
        first_contradiction: None,
        first_rejected_leaf: None,
    };
    search.run(root)?;

    if search.leaves.is_empty() {
        return Err(match (search.first_rejected_leaf, search.first_contradiction) {
            (Some(reason), _) => ReconstructError::NoCompletion { reason },
            (None, Some(contradiction)) => ReconstructError::Contradiction { contradiction },
            (None, None) => ReconstructError::NoCompletion { reason: "search produced no leaf".into() },
        });
    }

    let completions = search.leaves.len();
    let mut classes: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for (i, (fs, _)) in search.leaves.iter().enumerate() {
        classes.entry(canonical_system_with(auts, fs).0).or_insert(i);
    }
    if classes.len() > 1 {
        let mut systems: Vec<FacialSystem> = Vec::new();
        for &i in classes.values() {
            systems.push(search.leaves[i].0.clone());
        }
        return Err(ReconstructError::UniquenessViolation { systems });
    }

    let (system, trail) = search.leaves.swap_remove(0);
    let mut used_rules = BTreeMap::new();
    for d in &trail {
        *used_rules.entry(d.rule).or_insert(0) += 1;
    }
    Ok(ReconstructionOutcome {
        system,
        branch_count: search.branch_count,
        special: if search.branch_count > 0 { recognize_special(g) } else { Special::None },
        used_rules,
        completions,
    })
}

fn fork_variables(idx: &PathIndex, ext: &ExtendedGraph) -> Vec<[usize; 2]> {
    find_forks(ext)
        .iter()
        .filter_map(|f| {
            let [p, q] = f.disjunction();
            Some([idx.id(&p)?, idx.id(&q)?])
        })
        .collect()
}

/// Forks left open by propagation at the root: both sides still open, and
/// neither side is refuted by assuming it facial and propagating.
pub fn unresolved_forks(ext: &ExtendedGraph) -> Vec<Fork> {
    let g = ext.graph();
    let idx = PathIndex::new(g);
    let mut root = init_state(&idx, ext);
    if propagate(g, &idx, ext, &mut root).is_err() {
        return Vec::new();
    }
    let survives = |id: usize| {
        let mut st = root.clone();
        st.decide(&idx, id, Value::Facial).is_ok() && propagate(g, &idx, ext, &mut st).is_ok()
    };
    find_forks(ext)
        .into_iter()
        .filter(|f| {
            let [p, q]: [Path3; 2] = f.disjunction();
            match (idx.id(&p), idx.id(&q)) {
                (Some(a), Some(b)) => {
                    root.value(a) == Value::Unknown && root.value(b) == Value::Unknown && survives(a) && survives(b)
                }
                _ => false,
            }
        })
        .collect()
}
