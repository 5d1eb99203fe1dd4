use super::{LatticeError, LatticeOptions, Offsets, PartialColoring, Window};
use crate::distset::DistanceSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WindowChromatic {
    /// Exact chromatic number of the window with a proper witness.
    Exact { chi: usize, witness: PartialColoring },
    /// The window needs more than `t_max` colors.
    Exceeds { t_max: usize },
}

pub fn window_chromatic(ds: &DistanceSet, w: &Window, t_max: usize) -> Result<WindowChromatic, LatticeError> {
    window_chromatic_with(ds, w, t_max, &LatticeOptions::default())
}

/// Exact chromatic number of the subgraph of `G(ℤ[D], D)` induced by `w`,
/// which is a lower bound for χ(G(ℝ, D)).
///
/// Backtracking with saturation-degree vertex order, ties broken by
/// lexicographic `(a, b)`, and the usual symmetry breaking (a new color is
/// only ever the next unused index).
pub fn window_chromatic_with(
    ds: &DistanceSet,
    w: &Window,
    t_max: usize,
    opts: &LatticeOptions,
) -> Result<WindowChromatic, LatticeError> {
    w.check(ds, opts)?;
    let offsets = Offsets::new(ds);
    let n = w.len();
    let adj: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let p = w.point(i);
            offsets.offsets.iter().filter_map(|&o| w.index(p + o)).map(|j| j as u32).collect()
        })
        .collect();
    let has_edge = adj.iter().any(|a| !a.is_empty());
    for k in (if has_edge { 2 } else { 1 })..=t_max {
        if let Some(colors) = k_color(&adj, k) {
            let witness = PartialColoring::from_pairs(k, colors.iter().enumerate().map(|(i, &c)| (w.point(i), c)))?;
            return Ok(WindowChromatic::Exact { chi: k, witness });
        }
    }
    Ok(WindowChromatic::Exceeds { t_max })
}

const NONE: usize = usize::MAX;

struct Search<'a> {
    adj: &'a [Vec<u32>],
    k: usize,
    color: Vec<usize>,
    // count[v * k + c]: neighbors of v currently colored c
    count: Vec<u32>,
    sat: Vec<usize>,
}

impl Search<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for &u in &self.adj[v] {
            let slot = &mut self.count[u as usize * self.k + c];
            if *slot == 0 {
                self.sat[u as usize] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = NONE;
        for &u in &self.adj[v] {
            let slot = &mut self.count[u as usize * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[u as usize] -= 1;
            }
        }
    }

    /// Uncolored vertex of maximum saturation; lowest index wins ties.
    fn select(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for v in 0..self.color.len() {
            if self.color[v] == NONE && best.is_none_or(|b| self.sat[v] > self.sat[b]) {
                best = Some(v);
            }
        }
        best
    }

    fn next_color(&self, v: usize, from: usize, limit: usize) -> Option<usize> {
        (from..limit).find(|&c| self.count[v * self.k + c] == 0)
    }
}

struct Frame {
    v: usize,
    next: usize,
    used_before: usize,
}

fn k_color(adj: &[Vec<u32>], k: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut s = Search { adj, k, color: vec![NONE; n], count: vec![0; n * k], sat: vec![0; n] };
    let mut stack: Vec<Frame> = Vec::new();
    let mut used = 0usize;
    'select: loop {
        let Some(v) = s.select() else {
            return Some(s.color);
        };
        stack.push(Frame { v, next: 0, used_before: used });
        loop {
            let top = stack.last_mut().expect("nonempty stack");
            let limit = (top.used_before + 1).min(k);
            if let Some(c) = s.next_color(top.v, top.next, limit) {
                top.next = c + 1;
                used = top.used_before.max(c + 1);
                let v = top.v;
                s.assign(v, c);
                continue 'select;
            }
            stack.pop();
            let prev = stack.last()?;
            s.unassign(prev.v);
        }
    }
}
