use std::collections::{BTreeMap, HashMap};

use crate::embedding::{FacialSystem, FacialWalk};
use crate::error::{Error, Result};
use crate::graph::{CubicGraph, Vertex};

use super::state::PathIndex;

/// Chains the facial 3-paths of a total assignment into closed walks.
///
/// Every directed 2-path must continue into exactly one facial 3-path, or
/// close a triangle. Each face is then an orbit of the continuation map,
/// found once in each direction.
pub fn assemble_walks(g: &CubicGraph, idx: &PathIndex, facial: &[bool]) -> Result<FacialSystem> {
    if facial.len() != idx.len() {
        return Err(Error::Assembly(format!("assignment has {} entries for {} paths", facial.len(), idx.len())));
    }
    let angles = idx.angles();
    let position: HashMap<[Vertex; 3], usize> = angles.iter().enumerate().map(|(i, (c, _))| (*c, i)).collect();

    let mut next = vec![usize::MAX; angles.len()];
    let mut incoming = vec![0u32; angles.len()];
    for (i, &([a, b, c], opts)) in angles.iter().enumerate() {
        let others = g.others(c, b);
        let chosen: Vec<Vertex> =
            opts.iter().zip(others).filter(|(o, _)| o.is_none_or(|id| facial[id])).map(|(_, d)| d).collect();
        match chosen.as_slice() {
            [] => return Err(Error::Assembly(format!("open chain: 2-path ({a} {b} {c}) has no facial continuation"))),
            [d] => {
                let j = position[&[b, c, *d]];
                next[i] = j;
                incoming[j] += 1;
            }
            _ => {
                return Err(Error::Assembly(format!(
                    "2-path ({a} {b} {c}) continues both ways: dart {b}->{c} covered twice"
                )))
            }
        }
    }
    if let Some(j) = incoming.iter().position(|&k| k != 1) {
        let [a, b, c] = angles[j].0;
        return Err(Error::Assembly(format!("2-path ({a} {b} {c}) is reached {} times", incoming[j])));
    }

    let mut seen = vec![false; angles.len()];
    let mut tally: BTreeMap<FacialWalk, usize> = BTreeMap::new();
    for start in 0..angles.len() {
        if seen[start] {
            continue;
        }
        let mut seq = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            seq.push(angles[i].0[1]);
            i = next[i];
        }
        if seq.len() < 3 {
            return Err(Error::Assembly(format!("walk {seq:?} is shorter than 3")));
        }
        *tally.entry(FacialWalk::new(seq)).or_default() += 1;
    }
    let mut walks = Vec::new();
    for (w, count) in tally {
        if count % 2 == 1 {
            return Err(Error::Assembly(format!("walk {:?} is not traced in both directions", w.vertices())));
        }
        for _ in 0..count / 2 {
            walks.push(w.vertices().to_vec());
        }
    }
    let fs = FacialSystem::new(g.order(), walks);
    fs.check_cover(g).map_err(|e| Error::Assembly(e.to_string()))?;
    Ok(fs)
}
