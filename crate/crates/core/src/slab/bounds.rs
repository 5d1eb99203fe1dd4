use serde::{Deserialize, Serialize};

use super::{integer_slab_from_periodic, unit_slab_coloring, verify_slab, SlabColoring, SlabError};
use crate::distset::DistanceSet;
use crate::lattice::{
    certify_no_t_slab_with, find_linear_coloring, window_chromatic_with, Certificate, LatticeOptions,
    LinearColoring, Window, WindowChromatic,
};
use crate::zgraph::{chi_integer_with, PeriodicColoring, ZGraphOptions};

/// Half-width of the window used for the exact chromatic lower bound.
pub const CHI_WINDOW: i64 = 3;

#[derive(Debug, Clone, Copy)]
pub struct ChiMOptions {
    /// Half-width of the no-slab certificate window.
    pub certificate_window: i64,
    pub lattice: LatticeOptions,
    pub zgraph: ZGraphOptions,
}

impl Default for ChiMOptions {
    fn default() -> Self {
        ChiMOptions { certificate_window: 20, lattice: LatticeOptions::default(), zgraph: ZGraphOptions::default() }
    }
}

/// Bounds `lower ≤ χ_m ≤ upper` together with their evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiMBounds {
    pub lower: usize,
    pub upper: usize,
    /// `lower == upper`.
    pub exact: bool,
    /// χ of the integer model (commensurable sets only).
    pub integer_chi: Option<usize>,
    pub integer_witness: Option<PeriodicColoring>,
    /// Exact chromatic number of the small window (rank-2 sets only).
    pub window_chi: Option<usize>,
    pub linear: Option<LinearColoring>,
    pub certificate: Option<Certificate>,
    /// Verified slab coloring with `upper` colors.
    pub upper_witness: SlabColoring,
    /// `|D| + 1`, known from the literature; no witness is constructed.
    pub literature_bound: usize,
}

pub fn chi_m_bounds(ds: &DistanceSet) -> Result<ChiMBounds, SlabError> {
    chi_m_bounds_with(ds, &ChiMOptions::default())
}

/// Commensurable sets get the exact value from the integer model and its
/// copied slab coloring. Otherwise the lower bound is the window chromatic
/// number, plus one when the no-slab certificate holds at that many colors,
/// and the upper bound is the unit-slab construction.
pub fn chi_m_bounds_with(ds: &DistanceSet, opts: &ChiMOptions) -> Result<ChiMBounds, SlabError> {
    let literature_bound = ds.len() + 1;
    if let (Some(alpha), Some(ints)) = (ds.alpha(), ds.integer_form()) {
        let (chi, pc) = chi_integer_with(ints, &opts.zgraph)?;
        let witness = integer_slab_from_periodic(&pc, alpha)?;
        assert!(verify_slab(&witness, ds).is_proper(), "copied integer coloring must be proper");
        return Ok(ChiMBounds {
            lower: chi,
            upper: chi,
            exact: true,
            integer_chi: Some(chi),
            integer_witness: Some(pc),
            window_chi: None,
            linear: None,
            certificate: None,
            upper_witness: witness,
            literature_bound,
        });
    }

    let unit = unit_slab_coloring(ds);
    assert!(verify_slab(&unit, ds).is_proper(), "unit slab coloring must be proper");
    let upper = unit.t();

    let chi = match window_chromatic_with(ds, &Window::centered(ds, CHI_WINDOW), upper, &opts.lattice)? {
        WindowChromatic::Exact { chi, .. } => chi,
        WindowChromatic::Exceeds { .. } => unreachable!("the unit slab coloring restricts to a proper coloring"),
    };
    let linear = find_linear_coloring(ds, chi);
    let w = Window::centered(ds, opts.certificate_window);
    let cert = certify_no_t_slab_with(ds, chi, &w, &opts.lattice)?;
    let lower = if cert.certified { chi + 1 } else { chi };
    Ok(ChiMBounds {
        lower,
        upper,
        exact: lower == upper,
        integer_chi: None,
        integer_witness: None,
        window_chi: Some(chi),
        linear,
        certificate: Some(cert),
        upper_witness: unit,
        literature_bound,
    })
}
