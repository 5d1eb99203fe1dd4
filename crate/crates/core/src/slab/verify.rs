use serde::{Deserialize, Serialize};

use super::{SlabColoring, SlabMode};
use crate::distset::DistanceSet;
use crate::exact::QuadExt;

/// `x` and `x + d` share a color. Every `x` in `[range.0, range.1)` lies in
/// slab `slab_i` with `x + d` in slab `slab_j` (reduced by the period), and
/// `x` is the midpoint of that range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub x: QuadExt,
    pub d: QuadExt,
    pub slab_i: usize,
    pub slab_j: usize,
    pub range: (QuadExt, QuadExt),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlabVerdict {
    Proper,
    Violation(Violation),
}

impl SlabVerdict {
    pub fn is_proper(&self) -> bool {
        matches!(self, SlabVerdict::Proper)
    }
}

/// Decides properness exactly. On failure the reported violation is the one
/// whose feasible range starts leftmost, ties going to the smaller distance
/// and then the smaller slab indices.
pub fn verify_slab(c: &SlabColoring, ds: &DistanceSet) -> SlabVerdict {
    all_violations(c, ds)
        .into_iter()
        .min_by(|u, v| {
            u.range.0.cmp(&v.range.0).then_with(|| u.d.cmp(&v.d)).then_with(|| (u.slab_i, u.slab_j).cmp(&(v.slab_i, v.slab_j)))
        })
        .map_or(SlabVerdict::Proper, SlabVerdict::Violation)
}

/// One entry per (distance, slab, target piece) with a nonempty feasible
/// range, where `x` ranges over one period (periodic) or the span (windowed).
pub fn all_violations(c: &SlabColoring, ds: &DistanceSet) -> Vec<Violation> {
    let b = c.breakpoints();
    let mut out = Vec::new();
    for d in ds.elements() {
        for i in 0..c.len() {
            for (arc_lo, arc_hi, offset) in shifted_arcs(c, i, d) {
                for j in (0..c.len()).filter(|&j| c.colors()[j] == c.colors()[i]) {
                    // [arc_lo, arc_hi) ∩ [b_j, b_{j+1}) ≠ ∅  ⟺  arc_lo < b_{j+1} ∧ b_j < arc_hi
                    if !(arc_lo < b[j + 1] && b[j] < arc_hi) {
                        continue;
                    }
                    let lo = std::cmp::max(&arc_lo, &b[j]) + &offset - d;
                    let hi = std::cmp::min(&arc_hi, &b[j + 1]) + &offset - d;
                    out.push(Violation { x: lo.midpoint(&hi), d: d.clone(), slab_i: i, slab_j: j, range: (lo, hi) });
                }
            }
        }
    }
    out
}

/// Pieces of `[b_i + d, b_{i+1} + d)` as `(lo, hi, offset)` with the piece
/// `[lo, hi)` inside the span and `offset` added back to recover `x + d`.
fn shifted_arcs(c: &SlabColoring, i: usize, d: &QuadExt) -> Vec<(QuadExt, QuadExt, QuadExt)> {
    let b = c.breakpoints();
    let lo = &b[i] + d;
    let hi = &b[i + 1] + d;
    match c.mode() {
        SlabMode::Windowed => {
            let (span_lo, span_hi) = c.span();
            let lo = std::cmp::max(lo, span_lo.clone());
            let hi = std::cmp::min(hi, span_hi.clone());
            if lo < hi {
                vec![(lo, hi, QuadExt::zero(d.radicand()))]
            } else {
                vec![]
            }
        }
        SlabMode::Periodic => {
            let p = c.span_length();
            let k = lo.checked_div(&p).expect("period is positive").floor();
            let offset = p.scale(&k.into());
            let s = &lo - &offset;
            let e = &hi - &offset;
            if e <= p {
                vec![(s, e, offset)]
            } else {
                let next = &offset + &p;
                vec![(s, p.clone(), offset), (QuadExt::zero(d.radicand()), &e - &p, next)]
            }
        }
    }
}
