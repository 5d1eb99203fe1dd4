//! Slab colorings of the real line: finitely many half-open intervals
//! `[b_i, b_{i+1})` with a color each, either repeated with a period or
//! restricted to a bounded span.

mod bounds;
mod construct;
mod text;
mod verify;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distset::DistError;
use crate::exact::QuadExt;
use crate::lattice::LatticeError;
use crate::zgraph::ZGraphError;

pub use bounds::{chi_m_bounds, chi_m_bounds_with, ChiMBounds, ChiMOptions, CHI_WINDOW};
pub use construct::{integer_slab_from_periodic, unit_slab_coloring};
pub use text::{parse_slab_coloring, write_slab_csv};
pub use verify::{all_violations, verify_slab, SlabVerdict, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlabError {
    #[error("a slab coloring needs at least one slab")]
    NoSlabs,
    #[error("{breakpoints} breakpoints cannot bound {colors} slabs")]
    ColorCount { breakpoints: usize, colors: usize },
    #[error("breakpoint {index} does not exceed the one before it")]
    NotIncreasing { index: usize },
    #[error("a periodic coloring must start at 0, not {0}")]
    PeriodicStart(String),
    #[error("slab {index} has color {color}, but t = {t}")]
    ColorOutOfRange { index: usize, color: usize, t: usize },
    #[error("scaling factor must be positive, got {0}")]
    NonPositiveAlpha(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    ZGraph(#[from] ZGraphError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlabMode {
    /// Slabs cover `[0, period)` and repeat.
    Periodic,
    /// Slabs cover `[L, R)`; nothing outside is colored.
    Windowed,
}

/// `n` slabs `[b_i, b_{i+1})` with colors `colors[i] < t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlabColoring {
    mode: SlabMode,
    breakpoints: Vec<QuadExt>,
    colors: Vec<usize>,
    t: usize,
}

impl SlabColoring {
    /// Breakpoints `0 = b_0 < … < b_n = period`.
    pub fn periodic(breakpoints: Vec<QuadExt>, colors: Vec<usize>, t: usize) -> Result<Self, SlabError> {
        if let Some(b0) = breakpoints.first() {
            if !b0.is_zero() {
                return Err(SlabError::PeriodicStart(b0.to_string()));
            }
        }
        Self::build(SlabMode::Periodic, breakpoints, colors, t)
    }

    /// Breakpoints `L = b_0 < … < b_n = R`.
    pub fn windowed(breakpoints: Vec<QuadExt>, colors: Vec<usize>, t: usize) -> Result<Self, SlabError> {
        Self::build(SlabMode::Windowed, breakpoints, colors, t)
    }

    fn build(mode: SlabMode, breakpoints: Vec<QuadExt>, colors: Vec<usize>, t: usize) -> Result<Self, SlabError> {
        if colors.is_empty() {
            return Err(SlabError::NoSlabs);
        }
        if breakpoints.len() != colors.len() + 1 {
            return Err(SlabError::ColorCount { breakpoints: breakpoints.len(), colors: colors.len() });
        }
        if let Some(index) = (1..breakpoints.len()).find(|&i| breakpoints[i] <= breakpoints[i - 1]) {
            return Err(SlabError::NotIncreasing { index });
        }
        if let Some((index, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= t) {
            return Err(SlabError::ColorOutOfRange { index, color, t });
        }
        Ok(SlabColoring { mode, breakpoints, colors, t })
    }

    pub fn mode(&self) -> SlabMode {
        self.mode
    }

    pub fn breakpoints(&self) -> &[QuadExt] {
        &self.breakpoints
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// `[b_0, b_n)`.
    pub fn span(&self) -> (&QuadExt, &QuadExt) {
        (&self.breakpoints[0], &self.breakpoints[self.len()])
    }

    /// Length of the span, which is the period in periodic mode.
    pub fn span_length(&self) -> QuadExt {
        self.span().1 - self.span().0
    }

    pub fn period(&self) -> Option<QuadExt> {
        (self.mode == SlabMode::Periodic).then(|| self.span_length())
    }

    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.t];
        for &c in &self.colors {
            seen[c] = true;
        }
        seen.into_iter().filter(|&s| s).count()
    }

    /// Slab containing `x`: the last `i` with `b_i ≤ x`, after reducing
    /// modulo the period. `None` outside a windowed span.
    pub fn slab_of(&self, x: &QuadExt) -> Option<usize> {
        let r = match self.mode {
            SlabMode::Periodic => {
                let p = self.span_length();
                let k = x.checked_div(&p).expect("period is positive").floor();
                x - &p.scale(&k.into())
            }
            SlabMode::Windowed => {
                let (lo, hi) = self.span();
                if x < lo || x >= hi {
                    return None;
                }
                x.clone()
            }
        };
        let i = self.breakpoints.partition_point(|b| *b <= r);
        Some(i - 1)
    }

    pub fn color_of(&self, x: &QuadExt) -> Option<usize> {
        self.slab_of(x).map(|i| self.colors[i])
    }

    /// Multiplies every breakpoint by a positive `factor`.
    pub fn scaled(&self, factor: &QuadExt) -> Result<Self, SlabError> {
        if !factor.is_positive() {
            return Err(SlabError::NonPositiveAlpha(factor.to_string()));
        }
        Ok(SlabColoring {
            mode: self.mode,
            breakpoints: self.breakpoints.iter().map(|b| b * factor).collect(),
            colors: self.colors.clone(),
            t: self.t,
        })
    }
}
