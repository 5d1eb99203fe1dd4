//! The lattice `ℤ[D]` as a graph.
//!
//! Points are integer coordinate pairs in the basis of a [`DistanceSet`];
//! two points are adjacent when their embedded distance lies in `D`. Since
//! `G(ℝ, D)` and `G(ℤ[D], D)` have the same chromatic number, everything
//! here works on finite rectangular windows of the lattice.

mod certificate;
mod chromatic;
mod clique;
mod density;
mod linear;
mod points;
mod propagate;

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distset::DistanceSet;
use crate::exact::LatticeVector;

pub use certificate::{
    certify_no_t_slab, certify_no_t_slab_with, seed_from_clique, Certificate, CertificateKind, LinearMatch, ReplayError,
    Verdicts, SLAB_INTERPRETATION,
};
pub use chromatic::{window_chromatic, window_chromatic_with, WindowChromatic};
pub use clique::{find_clique, find_clique_with};
pub use density::{density_gap, DensityGap};
pub use linear::{find_linear_coloring, LinearColoring};
pub use points::{write_points_csv, POINTS_CSV_HEADER};
pub use propagate::{propagate_forced, replay_transcript, ForcingStep, Propagation};

/// Default window budget: an 81×81 rectangle.
pub const DEFAULT_MAX_WINDOW_POINTS: usize = 81 * 81;
pub const DEFAULT_CLIQUE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("window has an empty coordinate range")]
    EmptyWindow,
    #[error("window has {points} points, budget is {budget}")]
    WindowTooLarge { points: usize, budget: usize },
    #[error("a rank-1 lattice only has points with b = 0")]
    RankOneWindow,
    #[error("need at least one color, got t = {0}")]
    InvalidT(usize),
    #[error("clique search exceeded its budget of {0} visited subsets")]
    CliqueBudget(u64),
    #[error("forced propagation hit a contradiction at {point}: neighbors carry all colors")]
    Contradiction { point: LatticeVector, witnesses: Vec<(LatticeVector, usize)> },
    #[error("coloring is improper: {0} and {1} are adjacent and share a color")]
    Improper(LatticeVector, LatticeVector),
    #[error("point {0} lies outside the window")]
    OutsideWindow(LatticeVector),
    #[error("color {color} at {point} is not below t = {t}")]
    ColorOutOfRange { point: LatticeVector, color: usize, t: usize },
    #[error("coloring is not total on the window ({missing} points uncolored)")]
    NotTotal { missing: usize },
    #[error("only {present} of {t} colors occur")]
    FewerColors { present: usize, t: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct LatticeOptions {
    pub max_window_points: usize,
    pub clique_budget: u64,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions {
            max_window_points: DEFAULT_MAX_WINDOW_POINTS,
            clique_budget: DEFAULT_CLIQUE_BUDGET,
        }
    }
}

/// Inclusive rectangle `[a_min, a_max] × [b_min, b_max]` of lattice points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub a_min: i64,
    pub a_max: i64,
    pub b_min: i64,
    pub b_max: i64,
}

impl Window {
    pub fn new(a: (i64, i64), b: (i64, i64)) -> Result<Self, LatticeError> {
        if a.0 > a.1 || b.0 > b.1 {
            return Err(LatticeError::EmptyWindow);
        }
        Ok(Window { a_min: a.0, a_max: a.1, b_min: b.0, b_max: b.1 })
    }

    /// `[−w, w]²`.
    pub fn square(w: i64) -> Self {
        Window { a_min: -w, a_max: w, b_min: -w, b_max: w }
    }

    /// `[−w, w]²` for rank-2 sets and `[−w, w] × {0}` for rank-1 sets.
    pub fn centered(ds: &DistanceSet, w: i64) -> Self {
        if ds.rank() == 1 {
            Window { a_min: -w, a_max: w, b_min: 0, b_max: 0 }
        } else {
            Window::square(w)
        }
    }

    pub fn width(&self) -> usize {
        (self.a_max - self.a_min + 1) as usize
    }

    pub fn height(&self) -> usize {
        (self.b_max - self.b_min + 1) as usize
    }

    pub fn len(&self) -> usize {
        self.width() * self.height()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: LatticeVector) -> bool {
        (self.a_min..=self.a_max).contains(&p.a) && (self.b_min..=self.b_max).contains(&p.b)
    }

    /// Points in lexicographic `(a, b)` order.
    pub fn points(&self) -> impl Iterator<Item = LatticeVector> + '_ {
        (self.a_min..=self.a_max)
            .flat_map(move |a| (self.b_min..=self.b_max).map(move |b| LatticeVector::new(a, b)))
    }

    /// Dense index in [`Self::points`] order.
    pub(crate) fn index(&self, p: LatticeVector) -> Option<usize> {
        self.contains(p)
            .then(|| (p.a - self.a_min) as usize * self.height() + (p.b - self.b_min) as usize)
    }

    pub(crate) fn point(&self, i: usize) -> LatticeVector {
        let h = self.height();
        LatticeVector::new(self.a_min + (i / h) as i64, self.b_min + (i % h) as i64)
    }

    pub(crate) fn check(&self, ds: &DistanceSet, opts: &LatticeOptions) -> Result<(), LatticeError> {
        if self.a_min > self.a_max || self.b_min > self.b_max {
            return Err(LatticeError::EmptyWindow);
        }
        if ds.rank() == 1 && (self.b_min != 0 || self.b_max != 0) {
            return Err(LatticeError::RankOneWindow);
        }
        let points = self.width().saturating_mul(self.height());
        if points > opts.max_window_points {
            return Err(LatticeError::WindowTooLarge { points, budget: opts.max_window_points });
        }
        Ok(())
    }
}

/// Adjacency in `G(ℤ[D], D)`: `|value(x) − value(y)| ∈ D`, decided by exact
/// comparison of the embedded values.
pub fn adjacent(x: LatticeVector, y: LatticeVector, ds: &DistanceSet) -> bool {
    if x == y {
        return false;
    }
    let diff = (&ds.embed(x) - &ds.embed(y)).abs();
    ds.elements().binary_search(&diff).is_ok()
}

/// Neighborhood structure of the lattice graph: `y ~ x` iff `y − x` is
/// `±` the coordinates of some distance.
#[derive(Debug, Clone)]
pub(crate) struct Offsets {
    pub(crate) offsets: Vec<LatticeVector>,
    set: HashSet<LatticeVector>,
}

impl Offsets {
    pub(crate) fn new(ds: &DistanceSet) -> Self {
        let mut offsets: Vec<LatticeVector> =
            ds.lattice_coords().iter().flat_map(|&c| [c, -c]).collect();
        offsets.sort();
        offsets.dedup();
        let set = offsets.iter().copied().collect();
        Offsets { offsets, set }
    }

    pub(crate) fn adjacent(&self, x: LatticeVector, y: LatticeVector) -> bool {
        self.set.contains(&(y - x))
    }
}

/// Finite assignment of colors `0..t` to lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ColoringRepr", try_from = "ColoringRepr")]
pub struct PartialColoring {
    t: usize,
    assignments: BTreeMap<LatticeVector, usize>,
}

#[derive(Serialize, Deserialize)]
struct ColoringRepr {
    t: usize,
    points: Vec<(LatticeVector, usize)>,
}

impl From<PartialColoring> for ColoringRepr {
    fn from(c: PartialColoring) -> Self {
        ColoringRepr { t: c.t, points: c.assignments.into_iter().collect() }
    }
}

impl TryFrom<ColoringRepr> for PartialColoring {
    type Error = LatticeError;
    fn try_from(r: ColoringRepr) -> Result<Self, LatticeError> {
        let mut c = PartialColoring::new(r.t);
        for (p, col) in r.points {
            c.set(p, col)?;
        }
        Ok(c)
    }
}

impl PartialColoring {
    pub fn new(t: usize) -> Self {
        PartialColoring { t, assignments: BTreeMap::new() }
    }

    pub fn from_pairs(t: usize, pairs: impl IntoIterator<Item = (LatticeVector, usize)>) -> Result<Self, LatticeError> {
        let mut c = PartialColoring::new(t);
        for (p, col) in pairs {
            c.set(p, col)?;
        }
        Ok(c)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn set(&mut self, p: LatticeVector, color: usize) -> Result<(), LatticeError> {
        if color >= self.t {
            return Err(LatticeError::ColorOutOfRange { point: p, color, t: self.t });
        }
        self.assignments.insert(p, color);
        Ok(())
    }

    pub fn get(&self, p: LatticeVector) -> Option<usize> {
        self.assignments.get(&p).copied()
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    /// Assignments in lexicographic point order.
    pub fn iter(&self) -> impl Iterator<Item = (LatticeVector, usize)> + '_ {
        self.assignments.iter().map(|(&p, &c)| (p, c))
    }

    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.t];
        for &c in self.assignments.values() {
            seen[c] = true;
        }
        seen.iter().filter(|&&s| s).count()
    }

    pub fn is_total_on(&self, w: &Window) -> bool {
        w.points().all(|p| self.assignments.contains_key(&p))
    }

    /// Pairwise scan over the domain using exact adjacency.
    pub fn check_proper(&self, ds: &DistanceSet) -> Result<(), LatticeError> {
        let pts: Vec<_> = self.iter().collect();
        for (i, &(x, cx)) in pts.iter().enumerate() {
            for &(y, cy) in &pts[i + 1..] {
                if cx == cy && adjacent(x, y, ds) {
                    return Err(LatticeError::Improper(x, y));
                }
            }
        }
        Ok(())
    }

    /// Same check via coordinate offsets; linear in the domain size.
    pub(crate) fn check_proper_fast(&self, offsets: &Offsets) -> Result<(), LatticeError> {
        for (&x, &cx) in &self.assignments {
            for &off in &offsets.offsets {
                let y = x + off;
                if y > x && self.assignments.get(&y) == Some(&cx) {
                    return Err(LatticeError::Improper(x, y));
                }
            }
        }
        Ok(())
    }
}
