use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{LatticeError, LatticeOptions, Offsets, PartialColoring, Window};
use crate::distset::DistanceSet;
use crate::exact::LatticeVector;

/// One application of the forcing rule: `point` has colored neighbors
/// carrying `t − 1` distinct colors (one witness each), so it must take the
/// remaining `color`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingStep {
    pub point: LatticeVector,
    pub color: usize,
    pub witnesses: Vec<(LatticeVector, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Propagation {
    pub coloring: PartialColoring,
    pub fully_forced: bool,
    pub transcript: Vec<ForcingStep>,
}

/// Extends `seed` by the forcing rule until nothing changes.
///
/// Only neighbors inside `w` are consulted. The rule is sound for every
/// proper `t`-coloring extending the seed, so a contradiction (a point whose
/// neighbors already use all `t` colors) proves that no such coloring exists.
pub fn propagate_forced(
    ds: &DistanceSet,
    t: usize,
    seed: &PartialColoring,
    w: &Window,
) -> Result<Propagation, LatticeError> {
    propagate_in_order(ds, t, seed, w, &LatticeOptions::default(), None)
}

pub(crate) fn propagate_in_order(
    ds: &DistanceSet,
    t: usize,
    seed: &PartialColoring,
    w: &Window,
    opts: &LatticeOptions,
    order: Option<&[usize]>,
) -> Result<Propagation, LatticeError> {
    if t == 0 {
        return Err(LatticeError::InvalidT(0));
    }
    w.check(ds, opts)?;
    let offsets = Offsets::new(ds);
    seed.check_proper_fast(&offsets)?;

    let n = w.len();
    let mut color = vec![None::<usize>; n];
    for (p, c) in seed.iter() {
        let i = w.index(p).ok_or(LatticeError::OutsideWindow(p))?;
        if c >= t {
            return Err(LatticeError::ColorOutOfRange { point: p, color: c, t });
        }
        color[i] = Some(c);
    }

    let neighbors = |i: usize| {
        let p = w.point(i);
        offsets.offsets.iter().filter_map(move |&o| w.index(p + o))
    };

    let mut queue: VecDeque<usize> = match order {
        Some(o) => o.iter().copied().collect(),
        None => (0..n).collect(),
    };
    let mut queued = vec![true; n];
    let mut transcript = Vec::new();
    let mut witness: Vec<Option<LatticeVector>> = vec![None; t];

    while let Some(i) = queue.pop_front() {
        queued[i] = false;
        if color[i].is_some() {
            continue;
        }
        witness.iter_mut().for_each(|x| *x = None);
        for j in neighbors(i) {
            if let Some(c) = color[j] {
                let q = w.point(j);
                if witness[c].is_none_or(|old| q < old) {
                    witness[c] = Some(q);
                }
            }
        }
        let seen = witness.iter().filter(|x| x.is_some()).count();
        if seen == t {
            let point = w.point(i);
            let witnesses = witness.iter().enumerate().map(|(c, q)| (q.expect("all seen"), c)).collect();
            return Err(LatticeError::Contradiction { point, witnesses });
        }
        if seen + 1 < t {
            continue;
        }
        let forced = witness.iter().position(|x| x.is_none()).expect("one color missing");
        color[i] = Some(forced);
        transcript.push(ForcingStep {
            point: w.point(i),
            color: forced,
            witnesses: witness.iter().enumerate().filter_map(|(c, q)| q.map(|q| (q, c))).collect(),
        });
        for j in neighbors(i) {
            if color[j].is_none() && !queued[j] {
                queued[j] = true;
                queue.push_back(j);
            }
        }
    }

    let fully_forced = color.iter().all(Option::is_some);
    let coloring = PartialColoring::from_pairs(
        t,
        color.iter().enumerate().filter_map(|(i, c)| c.map(|c| (w.point(i), c))),
    )?;
    Ok(Propagation { coloring, fully_forced, transcript })
}

/// Re-applies a transcript to `seed`, checking every step against the
/// forcing rule with exact adjacency. Returns the resulting coloring.
pub fn replay_transcript(
    ds: &DistanceSet,
    t: usize,
    seed: &PartialColoring,
    w: &Window,
    transcript: &[ForcingStep],
) -> Result<PartialColoring, String> {
    seed.check_proper(ds).map_err(|e| format!("seed: {e}"))?;
    let mut coloring = seed.clone();
    for (k, step) in transcript.iter().enumerate() {
        let fail = |msg: &str| format!("step {k} at {}: {msg}", step.point);
        if !w.contains(step.point) {
            return Err(fail("outside window"));
        }
        if coloring.get(step.point).is_some() {
            return Err(fail("already colored"));
        }
        if step.witnesses.len() + 1 != t {
            return Err(fail("wrong number of witnesses"));
        }
        let mut used = vec![false; t];
        for &(q, c) in &step.witnesses {
            if !w.contains(q) || coloring.get(q) != Some(c) {
                return Err(fail("witness not colored as claimed"));
            }
            if !super::adjacent(step.point, q, ds) {
                return Err(fail("witness not adjacent"));
            }
            if std::mem::replace(&mut used[c], true) {
                return Err(fail("repeated witness color"));
            }
        }
        if step.color >= t || used[step.color] {
            return Err(fail("forced color is not the missing one"));
        }
        coloring.set(step.point, step.color).map_err(|e| fail(&e.to_string()))?;
    }
    Ok(coloring)
}
