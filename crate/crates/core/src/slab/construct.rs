use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{SlabColoring, SlabError};
use crate::distset::DistanceSet;
use crate::exact::{quad_ceil_div, QuadExt, Rational};
use crate::zgraph::PeriodicColoring;

/// Slabs of width `d_1` colored `0, 1, …, m−1` cyclically, where
/// `m = ⌈d_k / d_1⌉ + 1`.
///
/// Two points in one slab are closer than `d_1`; two points in different
/// slabs of one color are more than `(m − 1)·d_1 ≥ d_k` apart.
pub fn unit_slab_coloring(ds: &DistanceSet) -> SlabColoring {
    let d1 = ds.min();
    let ratio = quad_ceil_div(ds.max(), d1).expect("distances are positive");
    let m = (ratio + BigInt::from(1)).to_usize().expect("color count fits in usize");
    let breakpoints = (0..=m).map(|k| d1.scale(&Rational::from_integer(k.into()))).collect();
    SlabColoring::periodic(breakpoints, (0..m).collect(), m).expect("valid by construction")
}

/// Copies a periodic coloring of ℤ onto intervals: `[n/α, (n+1)/α)` gets
/// `pc.colors[n mod p]`. If `pc` is proper for `αD` then the result is a
/// proper slab coloring for `D`.
pub fn integer_slab_from_periodic(pc: &PeriodicColoring, alpha: &QuadExt) -> Result<SlabColoring, SlabError> {
    if !alpha.is_positive() {
        return Err(SlabError::NonPositiveAlpha(alpha.to_string()));
    }
    let width = alpha.recip().expect("alpha is nonzero");
    let breakpoints = (0..=pc.period()).map(|n| width.scale(&Rational::from_integer(n.into()))).collect();
    SlabColoring::periodic(breakpoints, pc.colors.clone(), pc.num_colors())
}
