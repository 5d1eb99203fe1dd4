use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::density::{density_gap, DensityGap};
use super::linear::LinearColoring;
use super::propagate::{propagate_in_order, replay_transcript, ForcingStep};
use super::{adjacent, find_clique_with, LatticeError, LatticeOptions, PartialColoring, Window};
use crate::distset::DistanceSet;
use crate::exact::{LatticeVector, QuadExt};

/// Reading of "slab coloring" that the no-slab certificate addresses.
pub const SLAB_INTERPRETATION: &str = "A slab coloring is a proper coloring whose color classes are unions of \
intervals of positive length. The certificate bounds the length of any monochromatic interval inside the \
window core by ell; it is finite evidence for one window, not a proof for all of the real line.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Clique,
    ForcedUnique,
    Density,
    NoTSlab,
}

/// The forced coloring equals `renaming[linear.color(p)]` on the window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearMatch {
    pub weights: (i64, i64),
    pub renaming: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub clique: bool,
    pub fully_forced: bool,
    pub linear_match: bool,
    pub dense_lattice: bool,
}

impl Verdicts {
    pub fn all(&self) -> bool {
        self.clique && self.fully_forced && self.linear_match && self.dense_lattice
    }
}

/// Replayable evidence that no `t`-slab coloring is compatible with the
/// window.
///
/// The chain is: a `t`-clique fixes `t` colors up to renaming, propagation
/// forces every other window point, the forced coloring is a linear one,
/// and on a rank-2 lattice the colors then interleave at scale `ell`.
/// `ell_half_window` is the same measurement on the central half of the
/// window, so `ell_shrinks` reports the trend.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub distances: String,
    pub radicand: u64,
    pub t: usize,
    pub window: Window,
    pub clique: Option<Vec<LatticeVector>>,
    pub seed: Option<PartialColoring>,
    pub transcript: Vec<ForcingStep>,
    pub linear: Option<LinearMatch>,
    pub density: Option<DensityGap>,
    pub ell_half_window: Option<QuadExt>,
    pub ell_shrinks: Option<bool>,
    pub verdicts: Verdicts,
    pub certified: bool,
    pub interpretation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("certificate is for {found:?}, not {expected:?}")]
    WrongInput { expected: String, found: String },
    #[error("{field} does not replay: {reason}")]
    Invalid { field: &'static str, reason: String },
}

fn invalid(field: &'static str, reason: impl Into<String>) -> ReplayError {
    ReplayError::Invalid { field, reason: reason.into() }
}

pub fn certify_no_t_slab(ds: &DistanceSet, t: usize, w: &Window) -> Result<Certificate, LatticeError> {
    certify_no_t_slab_with(ds, t, w, &LatticeOptions::default())
}

pub fn certify_no_t_slab_with(
    ds: &DistanceSet,
    t: usize,
    w: &Window,
    opts: &LatticeOptions,
) -> Result<Certificate, LatticeError> {
    if t == 0 {
        return Err(LatticeError::InvalidT(0));
    }
    w.check(ds, opts)?;
    let clique = find_clique_with(ds, t, opts)?;
    let mut cert = Certificate::blank(CertificateKind::NoTSlab, ds, t, w);
    cert.clique = clique.clone();
    cert.verdicts.clique = clique.is_some();
    let Some(clique) = clique else {
        return Ok(cert);
    };
    if let Some(&p) = clique.iter().find(|&&p| !w.contains(p)) {
        return Err(LatticeError::OutsideWindow(p));
    }
    let seed = seed_from_clique(t, &clique)?;
    let prop = propagate_in_order(ds, t, &seed, w, opts, None)?;
    cert.seed = Some(seed);
    cert.transcript = prop.transcript;
    cert.verdicts.fully_forced = prop.fully_forced;
    if prop.fully_forced {
        cert.linear = match_linear(ds, &prop.coloring, w);
        cert.verdicts.linear_match = cert.linear.is_some();
        let (density, half) = measure(ds, &prop.coloring, w);
        cert.ell_shrinks = match (&density, &half) {
            (Some(d), Some(h)) => Some(d.ell < *h),
            _ => None,
        };
        cert.density = density;
        cert.ell_half_window = half;
    }
    cert.certified = cert.verdicts.all();
    Ok(cert)
}

impl Certificate {
    fn blank(kind: CertificateKind, ds: &DistanceSet, t: usize, w: &Window) -> Self {
        Certificate {
            kind,
            distances: ds.to_string(),
            radicand: ds.radicand().get(),
            t,
            window: *w,
            clique: None,
            seed: None,
            transcript: Vec::new(),
            linear: None,
            density: None,
            ell_half_window: None,
            ell_shrinks: None,
            verdicts: Verdicts { clique: false, fully_forced: false, linear_match: false, dense_lattice: ds.rank() == 2 },
            certified: false,
            interpretation: SLAB_INTERPRETATION.to_string(),
        }
    }

    /// Wraps a clique search result. Only the clique verdict is set.
    pub fn for_clique(ds: &DistanceSet, t: usize, clique: Option<Vec<LatticeVector>>) -> Self {
        let w = match &clique {
            Some(c) => bounding_window(c),
            None => Window { a_min: 0, a_max: 0, b_min: 0, b_max: 0 },
        };
        let mut cert = Certificate::blank(CertificateKind::Clique, ds, t, &w);
        cert.verdicts.clique = clique.is_some();
        cert.clique = clique;
        cert
    }

    /// Wraps a propagation run from an arbitrary seed.
    pub fn for_propagation(
        ds: &DistanceSet,
        seed: &PartialColoring,
        w: &Window,
        prop: &super::Propagation,
    ) -> Self {
        let mut cert = Certificate::blank(CertificateKind::ForcedUnique, ds, seed.t(), w);
        cert.seed = Some(seed.clone());
        cert.transcript = prop.transcript.clone();
        cert.verdicts.fully_forced = prop.fully_forced;
        cert
    }
}

fn bounding_window(points: &[LatticeVector]) -> Window {
    let a = points.iter().map(|p| p.a);
    let b = points.iter().map(|p| p.b);
    Window {
        a_min: a.clone().min().unwrap_or(0),
        a_max: a.max().unwrap_or(0),
        b_min: b.clone().min().unwrap_or(0),
        b_max: b.max().unwrap_or(0),
    }
}

/// Gives the `j`-th clique member color `j`.
pub fn seed_from_clique(t: usize, clique: &[LatticeVector]) -> Result<PartialColoring, LatticeError> {
    PartialColoring::from_pairs(t, clique.iter().enumerate().map(|(j, &p)| (p, j)))
}

/// Central half of each coordinate range.
fn half_window(w: &Window) -> Window {
    let shrink = |lo: i64, hi: i64| {
        let quarter = (hi - lo) / 4;
        (lo + quarter, hi - quarter)
    };
    let (a_min, a_max) = shrink(w.a_min, w.a_max);
    let (b_min, b_max) = shrink(w.b_min, w.b_max);
    Window { a_min, a_max, b_min, b_max }
}

fn restrict(coloring: &PartialColoring, w: &Window) -> PartialColoring {
    PartialColoring::from_pairs(coloring.t(), coloring.iter().filter(|&(p, _)| w.contains(p)))
        .expect("colors already in range")
}

fn measure(ds: &DistanceSet, coloring: &PartialColoring, w: &Window) -> (Option<DensityGap>, Option<QuadExt>) {
    let full = density_gap(ds, coloring, w).ok();
    let hw = half_window(w);
    let half = density_gap(ds, &restrict(coloring, &hw), &hw).ok().map(|g| g.ell);
    (full, half)
}

/// First proper weight pair (lexicographic) whose coloring agrees with
/// `coloring` on `w` after a bijective renaming of colors.
fn match_linear(ds: &DistanceSet, coloring: &PartialColoring, w: &Window) -> Option<LinearMatch> {
    let t = coloring.t() as i64;
    (0..t)
        .flat_map(|wa| (0..t).map(move |wb| (wa, wb)))
        .map(|weights| LinearColoring { t: coloring.t(), weights })
        .filter(|lc| lc.is_proper_for(ds))
        .find_map(|lc| renaming_for(&lc, coloring, w).map(|renaming| LinearMatch { weights: lc.weights, renaming }))
}

fn renaming_for(lc: &LinearColoring, coloring: &PartialColoring, w: &Window) -> Option<Vec<usize>> {
    let t = lc.t;
    let mut map = vec![None::<usize>; t];
    let mut used = vec![false; t];
    for p in w.points() {
        let target = coloring.get(p)?;
        match map[lc.color(p)] {
            Some(c) if c != target => return None,
            Some(_) => {}
            None => {
                if std::mem::replace(&mut used[target], true) {
                    return None;
                }
                map[lc.color(p)] = Some(target);
            }
        }
    }
    // Colors of the linear map that never occur are sent to the unused targets.
    let mut spare = (0..t).filter(|&c| !used[c]);
    Some(map.into_iter().map(|m| m.unwrap_or_else(|| spare.next().expect("bijection"))).collect())
}

impl Certificate {
    /// Re-checks every component against `ds` without repeating any search:
    /// clique adjacency, the seed, each forcing step, the linear match point
    /// by point, and the density values.
    pub fn replay(&self, ds: &DistanceSet) -> Result<(), ReplayError> {
        if self.distances != ds.to_string() || self.radicand != ds.radicand().get() {
            return Err(ReplayError::WrongInput {
                expected: format!("{} (m = {})", ds, ds.radicand()),
                found: format!("{} (m = {})", self.distances, self.radicand),
            });
        }
        let t = self.t;
        if self.interpretation != SLAB_INTERPRETATION {
            return Err(invalid("interpretation", "unexpected text"));
        }
        if self.verdicts.dense_lattice != (ds.rank() == 2) {
            return Err(invalid("verdicts.dense_lattice", "does not match the lattice rank"));
        }

        if self.verdicts.clique != self.clique.is_some() {
            return Err(invalid("verdicts.clique", "disagrees with the witness"));
        }
        if let Some(clique) = &self.clique {
            if clique.len() != t {
                return Err(invalid("clique", format!("{} points, expected {t}", clique.len())));
            }
            for (i, &x) in clique.iter().enumerate() {
                for &y in &clique[i + 1..] {
                    if !adjacent(x, y, ds) {
                        return Err(invalid("clique", format!("{x} and {y} are not adjacent")));
                    }
                }
            }
        }

        if self.kind == CertificateKind::NoTSlab {
            let expected = match &self.clique {
                Some(clique) => Some(seed_from_clique(t, clique).map_err(|e| invalid("seed", e.to_string()))?),
                None => None,
            };
            if self.seed != expected {
                return Err(invalid("seed", "does not color the clique in order"));
            }
        }
        if self.seed.is_none() && !self.transcript.is_empty() {
            return Err(invalid("transcript", "present without a seed"));
        }
        let forced = match &self.seed {
            Some(seed) => Some(
                replay_transcript(ds, t, seed, &self.window, &self.transcript)
                    .map_err(|e| invalid("transcript", e))?,
            ),
            None => None,
        };

        let total = forced.as_ref().is_some_and(|f| f.is_total_on(&self.window));
        if self.verdicts.fully_forced != total {
            return Err(invalid("verdicts.fully_forced", "disagrees with the replayed transcript"));
        }

        match (&self.linear, &forced) {
            (Some(lm), Some(f)) if total => {
                let lc = LinearColoring { t, weights: lm.weights };
                if !lc.is_proper_for(ds) {
                    return Err(invalid("linear", "weights are not proper for the distances"));
                }
                let mut seen = vec![false; t];
                if lm.renaming.len() != t || lm.renaming.iter().any(|&c| c >= t || std::mem::replace(&mut seen[c], true)) {
                    return Err(invalid("linear", "renaming is not a permutation"));
                }
                if let Some(p) = self.window.points().find(|&p| f.get(p) != Some(lm.renaming[lc.color(p)])) {
                    return Err(invalid("linear", format!("disagrees with the forced coloring at {p}")));
                }
            }
            (Some(_), _) => return Err(invalid("linear", "present without a fully forced coloring")),
            (None, _) => {}
        }
        if self.verdicts.linear_match != self.linear.is_some() {
            return Err(invalid("verdicts.linear_match", "disagrees with the linear match"));
        }

        let (density, half) = match (&forced, total) {
            (Some(f), true) if self.kind == CertificateKind::NoTSlab || self.density.is_some() => {
                measure(ds, f, &self.window)
            }
            _ => (None, None),
        };
        if density != self.density {
            return Err(invalid("density", "recomputed gap differs"));
        }
        if half != self.ell_half_window {
            return Err(invalid("ell_half_window", "recomputed gap differs"));
        }
        let shrinks = match (&density, &half) {
            (Some(d), Some(h)) => Some(d.ell < *h),
            _ => None,
        };
        if shrinks != self.ell_shrinks {
            return Err(invalid("ell_shrinks", "does not follow from the gaps"));
        }

        if self.certified != self.verdicts.all() {
            return Err(invalid("certified", "does not follow from the verdicts"));
        }
        Ok(())
    }
}
