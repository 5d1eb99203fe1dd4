use super::{LatticeError, LatticeOptions, Offsets};
use crate::distset::DistanceSet;
use crate::exact::LatticeVector;

pub fn find_clique(ds: &DistanceSet, t: usize) -> Result<Option<Vec<LatticeVector>>, LatticeError> {
    find_clique_with(ds, t, &LatticeOptions::default())
}

/// Searches for `t` lattice points with all pairwise distances in `D`.
///
/// Cliques are normalized so that their smallest member (by real value) is
/// the origin. Every other member is then at a positive distance from the
/// origin, i.e. it *is* one of the distances, so the search runs over subsets
/// of `D` in increasing order. The returned witness is sorted by value.
/// `Ok(None)` means the exhaustive search found nothing.
pub fn find_clique_with(
    ds: &DistanceSet,
    t: usize,
    opts: &LatticeOptions,
) -> Result<Option<Vec<LatticeVector>>, LatticeError> {
    if t == 0 {
        return Err(LatticeError::InvalidT(0));
    }
    let offsets = Offsets::new(ds);
    let candidates = ds.lattice_coords();
    let mut chosen = Vec::with_capacity(t);
    let mut visits = 0u64;
    if extend(&offsets, candidates, t - 1, 0, &mut chosen, &mut visits, opts.clique_budget)? {
        let mut witness = vec![LatticeVector::ZERO];
        witness.extend(chosen);
        Ok(Some(witness))
    } else {
        Ok(None)
    }
}

fn extend(
    offsets: &Offsets,
    candidates: &[LatticeVector],
    need: usize,
    from: usize,
    chosen: &mut Vec<LatticeVector>,
    visits: &mut u64,
    budget: u64,
) -> Result<bool, LatticeError> {
    if chosen.len() == need {
        return Ok(true);
    }
    *visits += 1;
    if *visits > budget {
        return Err(LatticeError::CliqueBudget(budget));
    }
    if candidates.len() - from < need - chosen.len() {
        return Ok(false);
    }
    for i in from..candidates.len() {
        let v = candidates[i];
        if chosen.iter().all(|&u| offsets.adjacent(u, v)) {
            chosen.push(v);
            if extend(offsets, candidates, need, i + 1, chosen, visits, budget)? {
                return Ok(true);
            }
            chosen.pop();
        }
    }
    Ok(false)
}
