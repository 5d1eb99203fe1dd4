use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{LatticeError, LatticeOptions, PartialColoring, Window};
use crate::distset::DistanceSet;
use crate::exact::{QuadExt, Rational};

/// How finely the colors of a window coloring interleave on the real line.
///
/// `core` is the central half `[lo + span/4, hi − span/4]` of the embedded
/// span. For each color `c`, `per_color_max_gap[c]` is the largest distance
/// between consecutive `c`-points whose open interval meets the core (a core
/// endpoint stands in when no `c`-point lies beyond it).
/// `ell` is the maximum over colors: every open sub-interval of the core
/// longer than `ell` contains all colors, so no interval of length `> ell`
/// there can be monochromatic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityGap {
    pub ell: QuadExt,
    pub per_color_max_gap: BTreeMap<usize, QuadExt>,
    pub core: (QuadExt, QuadExt),
}

pub fn density_gap(ds: &DistanceSet, coloring: &PartialColoring, w: &Window) -> Result<DensityGap, LatticeError> {
    w.check(ds, &LatticeOptions { max_window_points: usize::MAX, ..Default::default() })?;
    let missing = w.points().filter(|&p| coloring.get(p).is_none()).count();
    if missing > 0 {
        return Err(LatticeError::NotTotal { missing });
    }
    let t = coloring.t();
    let present = coloring.colors_used();
    if present < t {
        return Err(LatticeError::FewerColors { present, t });
    }

    let mut embedded: Vec<(QuadExt, usize)> = w
        .points()
        .map(|p| (ds.embed(p), coloring.get(p).expect("total")))
        .collect();
    embedded.sort_by(|x, y| x.0.cmp(&y.0));

    let lo = &embedded[0].0;
    let hi = &embedded[embedded.len() - 1].0;
    let quarter = (hi - lo).scale(&Rational::new(1.into(), 4.into()));
    let core_lo = lo + &quarter;
    let core_hi = hi - &quarter;

    let mut per_color_max_gap = BTreeMap::new();
    for c in 0..t {
        let pts: Vec<&QuadExt> = embedded.iter().filter(|(_, k)| *k == c).map(|(v, _)| v).collect();
        // Points of color c that bound a gap meeting the core: the last one
        // at or below core_lo through the first one at or above core_hi.
        let first = pts.iter().rposition(|v| **v <= core_lo);
        let last = pts.iter().position(|v| **v >= core_hi);
        let mut chain: Vec<&QuadExt> = Vec::new();
        if first.is_none() {
            chain.push(&core_lo);
        }
        let start = first.unwrap_or(0);
        let end = last.map_or(pts.len(), |i| i + 1);
        chain.extend(pts[start..end].iter().copied().filter(|v| first.is_some() || **v > core_lo));
        if last.is_none() {
            chain.push(&core_hi);
        }
        let gap = chain
            .windows(2)
            .map(|pair| pair[1] - pair[0])
            .max()
            .unwrap_or_else(|| &core_hi - &core_lo);
        per_color_max_gap.insert(c, gap);
    }
    let ell = per_color_max_gap.values().max().expect("t >= 1").clone();
    Ok(DensityGap { ell, per_color_max_gap, core: (core_lo, core_hi) })
}
