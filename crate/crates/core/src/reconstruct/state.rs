//! Tri-valued assignment over the 3-paths of a graph and the propagation
//! rules that drive it to a fixpoint.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::extended::ExtendedGraph;
use crate::graph::{all_three_paths, cycles_of_length, CubicGraph, Path3, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Value {
    Unknown,
    Facial,
    NonFacial,
}

/// Why a 3-path received its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    /// End vertices carry no scaffold edge.
    #[serde(rename = "no-scaffold")]
    NoScaffold,
    /// A 2-path continues into exactly one of its two 3-paths.
    #[serde(rename = "R1")]
    Continuation,
    /// The scaffold edge has exactly as many candidate 3-paths as its multiplicity.
    #[serde(rename = "R2")]
    UniqueWitness,
    /// Triangles are faces, so their 2-paths do not continue outwards.
    #[serde(rename = "R3")]
    Triangle,
    /// 4-cycles are faces (outside `K4`).
    #[serde(rename = "R4")]
    Quadrilateral,
    /// A facial 3-path whose ends are adjacent, or share one outside
    /// neighbor, closes into a 4- or 5-face.
    #[serde(rename = "R5")]
    ChordShortcut,
    /// Both witnesses of a double scaffold edge with non-adjacent ends are
    /// facial: their union is a facial 6-cycle.
    #[serde(rename = "R6")]
    HexagonClosure,
    /// The scaffold edge already has its full count of facial 3-paths.
    #[serde(rename = "R7")]
    Multiplicity,
    /// The scaffold edge needs all of its remaining candidates after others
    /// were ruled out.
    #[serde(rename = "R8")]
    Elimination,
    #[serde(rename = "branch")]
    Branch,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        f.write_str(&s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub path: Path3,
    pub value: Value,
    pub rule: Rule,
}

/// One continuation of a directed 2-path `(a b c)` into `d`; `None` when
/// `d == a` and the triangle closes.
pub(crate) type AngleOption = Option<usize>;

/// Static structure shared by every state over one graph.
#[derive(Debug)]
pub struct PathIndex {
    paths: Vec<Path3>,
    lookup: HashMap<Path3, usize>,
    /// Directed 2-path `(a, b, c)` and its two continuations.
    angles: Vec<([Vertex; 3], [AngleOption; 2])>,
    /// Paths grouped by end-vertex pair.
    pairs: Vec<((Vertex, Vertex), Vec<usize>)>,
    quads: Vec<[usize; 4]>,
    is_k4: bool,
}

impl PathIndex {
    pub fn new(g: &CubicGraph) -> Self {
        let paths = all_three_paths(g);
        let lookup: HashMap<Path3, usize> = paths.iter().enumerate().map(|(i, &p)| (p, i)).collect();

        let mut angles = Vec::with_capacity(6 * g.order());
        for b in 0..g.order() {
            for &a in g.neighbors(b) {
                for &c in g.neighbors(b) {
                    if a == c {
                        continue;
                    }
                    let opts =
                        g.others(c, b).map(|d| if d == a { None } else { Some(lookup[&Path3::new(a, b, c, d)]) });
                    angles.push(([a, b, c], opts));
                }
            }
        }

        let mut grouped: std::collections::BTreeMap<(Vertex, Vertex), Vec<usize>> = Default::default();
        for (i, p) in paths.iter().enumerate() {
            grouped.entry(p.endpoints()).or_default().push(i);
        }

        let quads = cycles_of_length(g, 4)
            .into_iter()
            .map(|c| {
                let at = |i: usize| c[i % 4];
                [0, 1, 2, 3].map(|i| lookup[&Path3::new(at(i), at(i + 1), at(i + 2), at(i + 3))])
            })
            .collect();

        PathIndex { paths, lookup, angles, pairs: grouped.into_iter().collect(), quads, is_k4: g.order() == 4 }
    }

    pub fn paths(&self) -> &[Path3] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn id(&self, p: &Path3) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    pub(crate) fn angles(&self) -> &[([Vertex; 3], [AngleOption; 2])] {
        &self.angles
    }
}

/// A clash found during propagation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contradiction {
    pub rule: Rule,
    pub path: Option<Path3>,
    pub detail: String,
    pub trail: Vec<Decision>,
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.path {
            Some(p) => write!(f, "{} at {}: {}", self.rule, p, self.detail),
            None => write!(f, "{}: {}", self.rule, self.detail),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReconstructionState {
    values: Vec<Value>,
    trail: Vec<Decision>,
    pub branch_depth: usize,
}

struct Clash {
    rule: Rule,
    path: Option<usize>,
    detail: String,
}

impl ReconstructionState {
    pub fn value(&self, id: usize) -> Value {
        self.values[id]
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn trail(&self) -> &[Decision] {
        &self.trail
    }

    pub fn unknown_count(&self) -> usize {
        self.values.iter().filter(|&&v| v == Value::Unknown).count()
    }

    pub fn is_complete(&self) -> bool {
        self.unknown_count() == 0
    }

    /// Replays the trail onto a blank assignment.
    pub fn replay(&self, idx: &PathIndex) -> Vec<Value> {
        let mut out = vec![Value::Unknown; idx.len()];
        for d in &self.trail {
            out[idx.id(&d.path).expect("trail path belongs to the index")] = d.value;
        }
        out
    }

    fn set(&mut self, idx: &PathIndex, id: usize, value: Value, rule: Rule) -> Result<bool, Clash> {
        match self.values[id] {
            Value::Unknown => {
                self.values[id] = value;
                self.trail.push(Decision { path: idx.paths[id], value, rule });
                Ok(true)
            }
            v if v == value => Ok(false),
            v => Err(Clash {
                rule,
                path: Some(id),
                detail: format!("{rule} requires {value:?} but it is already {v:?}"),
            }),
        }
    }

    /// Assigns a branch decision.
    pub fn decide(&mut self, idx: &PathIndex, id: usize, value: Value) -> Result<(), Contradiction> {
        self.set(idx, id, value, Rule::Branch).map(|_| ()).map_err(|c| self.report(idx, c))
    }

    fn report(&self, idx: &PathIndex, c: Clash) -> Contradiction {
        Contradiction { rule: c.rule, path: c.path.map(|i| idx.paths[i]), detail: c.detail, trail: self.trail.clone() }
    }
}

/// Every 3-path starts unknown, except those whose end vertices carry no
/// scaffold edge.
pub fn init_state(idx: &PathIndex, ext: &ExtendedGraph) -> ReconstructionState {
    let mut st = ReconstructionState { values: vec![Value::Unknown; idx.len()], trail: Vec::new(), branch_depth: 0 };
    for ((u, w), ids) in &idx.pairs {
        if !ext.contains(*u, *w) {
            for &id in ids {
                st.set(idx, id, Value::NonFacial, Rule::NoScaffold).ok();
            }
        }
    }
    st
}

/// Drives the state to the least fixpoint of the propagation rules.
pub fn propagate(
    g: &CubicGraph,
    idx: &PathIndex,
    ext: &ExtendedGraph,
    st: &mut ReconstructionState,
) -> Result<(), Contradiction> {
    match fixpoint(g, idx, ext, st) {
        Ok(()) => Ok(()),
        Err(c) => Err(st.report(idx, c)),
    }
}

fn fixpoint(g: &CubicGraph, idx: &PathIndex, ext: &ExtendedGraph, st: &mut ReconstructionState) -> Result<(), Clash> {
    use Value::*;

    if !idx.is_k4 {
        for quad in &idx.quads {
            for &id in quad {
                st.set(idx, id, Facial, Rule::Quadrilateral)?;
            }
        }
    }

    loop {
        let mut changed = false;

        for &(corner, opts) in &idx.angles {
            let value = |o: AngleOption| o.map_or(Facial, |id| st.values[id]);
            let vals = opts.map(value);
            let facial = vals.iter().filter(|&&v| v == Facial).count();
            let unknown = vals.iter().filter(|&&v| v == Unknown).count();
            let closed = opts.iter().any(Option::is_none);
            match (facial, unknown) {
                (2, _) => {
                    return Err(Clash {
                        rule: if closed { Rule::Triangle } else { Rule::Continuation },
                        path: opts.iter().flatten().next().copied(),
                        detail: format!("2-path {corner:?} continues both ways"),
                    })
                }
                (0, 0) => {
                    return Err(Clash {
                        rule: Rule::Continuation,
                        path: opts[0],
                        detail: format!("2-path {corner:?} has no continuation"),
                    })
                }
                (1, 1) => {
                    let rule = if closed { Rule::Triangle } else { Rule::Continuation };
                    for (o, v) in opts.iter().zip(vals) {
                        if v == Unknown {
                            changed |= st.set(idx, o.unwrap(), NonFacial, rule)?;
                        }
                    }
                }
                (0, 1) => {
                    for (o, v) in opts.iter().zip(vals) {
                        if v == Unknown {
                            changed |= st.set(idx, o.unwrap(), Facial, Rule::Continuation)?;
                        }
                    }
                }
                _ => {}
            }
        }

        for ((u, w), ids) in &idx.pairs {
            let need = ext.multiplicity(*u, *w) as usize;
            if need == 0 {
                continue;
            }
            let facial = ids.iter().filter(|&&i| st.values[i] == Facial).count();
            let unknown = ids.iter().filter(|&&i| st.values[i] == Unknown).count();
            if facial > need || facial + unknown < need {
                return Err(Clash {
                    rule: Rule::Multiplicity,
                    path: ids.first().copied(),
                    detail: format!("[{u} {w}] needs {need} facial 3-paths, has {facial} facial and {unknown} open"),
                });
            }
            if unknown == 0 {
                continue;
            }
            if facial == need {
                for &i in ids {
                    if st.values[i] == Unknown {
                        changed |= st.set(idx, i, NonFacial, Rule::Multiplicity)?;
                    }
                }
            } else if facial + unknown == need {
                let rule = if ids.len() == need { Rule::UniqueWitness } else { Rule::Elimination };
                for &i in ids {
                    if st.values[i] == Unknown {
                        changed |= st.set(idx, i, Facial, rule)?;
                    }
                }
            }
        }

        for id in 0..idx.len() {
            if st.values[id] != Facial {
                continue;
            }
            let [a, b, c, d] = idx.paths[id].vertices();
            if g.adjacent(a, d) {
                for p in [Path3::new(b, c, d, a), Path3::new(c, d, a, b), Path3::new(d, a, b, c)] {
                    changed |= st.set(idx, idx.lookup[&p], Facial, Rule::ChordShortcut)?;
                }
            } else {
                let mut common = g.neighbor_mask(a) & g.neighbor_mask(d) & !(1 << b) & !(1 << c);
                if common.count_ones() == 1 {
                    let k = common.trailing_zeros() as usize;
                    common &= common - 1;
                    debug_assert_eq!(common, 0);
                    for p in
                        [Path3::new(b, c, d, k), Path3::new(c, d, k, a), Path3::new(d, k, a, b), Path3::new(k, a, b, c)]
                    {
                        changed |= st.set(idx, idx.lookup[&p], Facial, Rule::ChordShortcut)?;
                    }
                }
            }
        }

        for ((u, w), ids) in &idx.pairs {
            if g.adjacent(*u, *w) {
                continue;
            }
            let facial: Vec<usize> = ids.iter().copied().filter(|&i| st.values[i] == Facial).collect();
            if facial.len() != 2 {
                continue;
            }
            let (p, q) = (idx.paths[facial[0]], idx.paths[facial[1]]);
            let (pi, qi) = (p.interior(), q.interior());
            if pi.iter().any(|x| qi.contains(x)) {
                return Err(Clash {
                    rule: Rule::HexagonClosure,
                    path: Some(facial[0]),
                    detail: format!("facial witnesses {p} and {q} of [{u} {w}] share an interior vertex"),
                });
            }
            let hex = hexagon(p, q);
            for i in 0..6 {
                let path = Path3::new(hex[i], hex[(i + 1) % 6], hex[(i + 2) % 6], hex[(i + 3) % 6]);
                changed |= st.set(idx, idx.lookup[&path], Facial, Rule::HexagonClosure)?;
            }
        }

        if !changed {
            return Ok(());
        }
    }
}

/// The 6-cycle formed by two internally disjoint 3-paths with common ends.
fn hexagon(p: Path3, q: Path3) -> [Vertex; 6] {
    let [a, b, c, d] = p.vertices();
    let qv = q.vertices();
    let [_, x, y, _] = if qv[0] == d { qv } else { [qv[3], qv[2], qv[1], qv[0]] };
    [a, b, c, d, x, y]
}
