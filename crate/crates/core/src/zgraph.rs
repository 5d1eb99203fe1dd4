//! Exact chromatic numbers of integer distance graphs `G(ℤ, D′)`.
//!
//! A proper coloring of ℤ is a bi-infinite sequence whose every window of
//! `d_max` consecutive colors is internally proper. Windows form a finite
//! transfer graph (window `w` steps to `w[1..] + c` when `c` is compatible),
//! and bi-infinite proper colorings correspond to bi-infinite walks in it.
//! A finite graph carries a bi-infinite walk iff it has a directed cycle, and
//! a cycle is a periodic coloring.
//!
//! Windows are stored up to renaming of colors (first occurrences appear in
//! increasing order), which shrinks the graph by up to `t!`. A cycle in the
//! quotient lifts to a closed walk in the full graph after at most `t!`
//! turns.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_STATE_BUDGET: u64 = 10_000_000;

/// Node budget for the minimal-period witness search before falling back to
/// the lifted transfer-graph cycle.
const PERIOD_SEARCH_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZGraphError {
    #[error("distance set is empty")]
    Empty,
    #[error("integer distances must be positive")]
    ZeroDistance,
    #[error("need at least one color")]
    NoColors,
    #[error("transfer graph would need up to {estimate} window states, budget is {budget}")]
    StateBudget { estimate: u128, budget: u64 },
}

/// A coloring of ℤ given by one period: `n ↦ colors[n mod p]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicColoring {
    pub colors: Vec<usize>,
}

impl PeriodicColoring {
    pub fn new(colors: Vec<usize>) -> Self {
        assert!(!colors.is_empty(), "period must be positive");
        PeriodicColoring { colors }
    }

    pub fn period(&self) -> usize {
        self.colors.len()
    }

    pub fn color_at(&self, n: i64) -> usize {
        self.colors[n.rem_euclid(self.period() as i64) as usize]
    }

    pub fn num_colors(&self) -> usize {
        self.colors.iter().max().map_or(0, |&c| c + 1)
    }

    /// Residue-pair scan: `colors[r] != colors[(r + d) mod p]` for all `r`
    /// and all `d`.
    pub fn is_proper(&self, dprime: &[u64]) -> bool {
        let p = self.period() as u64;
        dprime.iter().all(|&d| {
            (0..p).all(|r| self.colors[r as usize] != self.colors[((r + d) % p) as usize])
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ZGraphOptions {
    pub state_budget: u64,
}

impl Default for ZGraphOptions {
    fn default() -> Self {
        ZGraphOptions { state_budget: DEFAULT_STATE_BUDGET }
    }
}

fn normalize(dprime: &[u64]) -> Result<Vec<usize>, ZGraphError> {
    if dprime.is_empty() {
        return Err(ZGraphError::Empty);
    }
    if dprime.contains(&0) {
        return Err(ZGraphError::ZeroDistance);
    }
    let mut v: Vec<usize> = dprime.iter().map(|&d| d as usize).collect();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

/// Upper bound on the number of canonical windows: `Σ_{k<=t} S(d, k)`.
fn canonical_window_bound(d: usize, t: usize) -> u128 {
    let kmax = t.min(d);
    // Stirling numbers of the second kind, row by row, saturating.
    let mut row = vec![0u128; kmax + 1];
    row[0] = 1;
    for n in 1..=d {
        for k in (1..=kmax.min(n)).rev() {
            row[k] = (k as u128).saturating_mul(row[k]).saturating_add(row[k - 1]);
        }
        row[0] = 0;
    }
    row[1..].iter().fold(0u128, |acc, &x| acc.saturating_add(x))
}

fn canonicalize(window: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    window
        .iter()
        .map(|&c| {
            if map[c as usize] == u8::MAX {
                map[c as usize] = next;
                next += 1;
            }
            map[c as usize]
        })
        .collect()
}

struct TransferGraph {
    states: Vec<Vec<u8>>,
    succ: Vec<Vec<u32>>,
}

impl TransferGraph {
    fn build(dist: &[usize], t: usize) -> Self {
        let d = *dist.last().expect("nonempty");
        let mut states = Vec::new();
        let mut buf = Vec::with_capacity(d);
        enumerate_windows(dist, t, d, &mut buf, 0, &mut states);
        let index: HashMap<Vec<u8>, u32> =
            states.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();

        let mut succ = Vec::with_capacity(states.len());
        let mut next = vec![0u8; d];
        for w in &states {
            let mut out = Vec::new();
            for c in 0..t as u8 {
                if dist.iter().any(|&delta| w[d - delta] == c) {
                    continue;
                }
                next[..d - 1].copy_from_slice(&w[1..]);
                next[d - 1] = c;
                let target = index[&canonicalize(&next)];
                if !out.contains(&target) {
                    out.push(target);
                }
            }
            succ.push(out);
        }
        TransferGraph { states, succ }
    }

    /// Repeatedly removes states without successors or predecessors.
    /// Survivors are exactly the states on bi-infinite walks.
    fn prune(&self) -> Vec<bool> {
        let n = self.states.len();
        let mut pred: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for (u, out) in self.succ.iter().enumerate() {
            outdeg[u] = out.len();
            for &v in out {
                pred[v as usize].push(u as u32);
                indeg[v as usize] += 1;
            }
        }
        let mut alive = vec![true; n];
        let mut queue: VecDeque<usize> =
            (0..n).filter(|&u| indeg[u] == 0 || outdeg[u] == 0).collect();
        while let Some(u) = queue.pop_front() {
            if !alive[u] {
                continue;
            }
            alive[u] = false;
            for &v in &self.succ[u] {
                let v = v as usize;
                indeg[v] -= 1;
                if alive[v] && indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
            for &v in &pred[u] {
                let v = v as usize;
                outdeg[v] -= 1;
                if alive[v] && outdeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        alive
    }
}

fn enumerate_windows(
    dist: &[usize],
    t: usize,
    len: usize,
    buf: &mut Vec<u8>,
    used: usize,
    out: &mut Vec<Vec<u8>>,
) {
    let i = buf.len();
    if i == len {
        out.push(buf.clone());
        return;
    }
    for c in 0..(used + 1).min(t) {
        let c8 = c as u8;
        if dist.iter().take_while(|&&delta| delta <= i).any(|&delta| buf[i - delta] == c8) {
            continue;
        }
        buf.push(c8);
        enumerate_windows(dist, t, len, buf, used.max(c + 1), out);
        buf.pop();
    }
}

pub fn is_t_colorable_integer(dprime: &[u64], t: usize) -> Result<Option<PeriodicColoring>, ZGraphError> {
    is_t_colorable_integer_with(dprime, t, &ZGraphOptions::default())
}

/// Decides whether `G(ℤ, D′)` has a proper `t`-coloring and returns a
/// periodic one if so. The witness has the smallest possible period when
/// that search fits its budget, and is lexicographically first among
/// colorings of that period with colors introduced in increasing order.
pub fn is_t_colorable_integer_with(
    dprime: &[u64],
    t: usize,
    opts: &ZGraphOptions,
) -> Result<Option<PeriodicColoring>, ZGraphError> {
    let dist = normalize(dprime)?;
    if t == 0 {
        return Err(ZGraphError::NoColors);
    }
    if t > 255 {
        // t > d_max colors always suffice greedily; 255 is far past that
        // for anything the budget admits.
        return Err(ZGraphError::StateBudget { estimate: u128::MAX, budget: opts.state_budget });
    }
    let d = *dist.last().expect("nonempty");
    let estimate = canonical_window_bound(d, t);
    if estimate > opts.state_budget as u128 {
        return Err(ZGraphError::StateBudget { estimate, budget: opts.state_budget });
    }

    let graph = TransferGraph::build(&dist, t);
    let alive = graph.prune();
    let Some(start) = alive.iter().position(|&a| a) else {
        return Ok(None);
    };

    // Walk along surviving successors until a state repeats.
    let mut seen = HashMap::new();
    let mut path = Vec::new();
    let mut u = start;
    while !seen.contains_key(&u) {
        seen.insert(u, path.len());
        path.push(u);
        u = graph.succ[u]
            .iter()
            .map(|&v| v as usize)
            .find(|&v| alive[v])
            .expect("surviving state has a surviving successor");
    }
    let cycle = &path[seen[&u]..];

    let lifted = lift_cycle(&graph, &dist, t, cycle);
    debug_assert!(lifted.is_proper(dprime));

    let witness = minimal_period_witness(&dist, t, lifted.period()).unwrap_or(lifted);
    Ok(Some(witness))
}

/// Turns a cycle of canonical windows into actual colors, going round until
/// the color names return to where they started.
fn lift_cycle(graph: &TransferGraph, dist: &[usize], t: usize, cycle: &[usize]) -> PeriodicColoring {
    let d = *dist.last().expect("nonempty");
    let start = graph.states[cycle[0]].clone();
    let mut window = start.clone();
    let mut colors = Vec::new();
    loop {
        for i in 0..cycle.len() {
            let target = &graph.states[cycle[(i + 1) % cycle.len()]];
            let mut next = window[1..].to_vec();
            next.push(0);
            let c = (0..t as u8)
                .find(|&c| {
                    if dist.iter().any(|&delta| window[d - delta] == c) {
                        return false;
                    }
                    next[d - 1] = c;
                    canonicalize(&next) == *target
                })
                .expect("quotient edge lifts");
            next[d - 1] = c;
            window = next;
            colors.push(c as usize);
        }
        if window == start {
            return PeriodicColoring::new(colors);
        }
    }
}

/// Lexicographically first proper coloring of the circulant graph on
/// `ℤ_p` for the smallest `p <= max_period`, if the search stays in budget.
fn minimal_period_witness(dist: &[usize], t: usize, max_period: usize) -> Option<PeriodicColoring> {
    let mut budget = PERIOD_SEARCH_BUDGET;
    for p in 1..=max_period {
        let mut forbidden = vec![false; p];
        for &delta in dist {
            forbidden[delta % p] = true;
            forbidden[(p - delta % p) % p] = true;
        }
        if forbidden[0] {
            continue;
        }
        let mut colors = Vec::with_capacity(p);
        match circulant_search(&forbidden, t, &mut colors, 0, &mut budget) {
            Some(true) => return Some(PeriodicColoring::new(colors)),
            Some(false) => {}
            None => return None,
        }
    }
    None
}

fn circulant_search(
    forbidden: &[bool],
    t: usize,
    colors: &mut Vec<usize>,
    used: usize,
    budget: &mut u64,
) -> Option<bool> {
    let p = forbidden.len();
    let i = colors.len();
    if i == p {
        return Some(true);
    }
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    for c in 0..(used + 1).min(t) {
        if (0..i).any(|j| forbidden[i - j] && colors[j] == c) {
            continue;
        }
        colors.push(c);
        match circulant_search(forbidden, t, colors, used.max(c + 1), budget) {
            Some(false) => {
                colors.pop();
            }
            other => return other,
        }
    }
    Some(false)
}

/// Smallest `t` for which `G(ℤ, D′)` is `t`-colorable, with a witness.
/// The scan starts at the clique number; `|D′| + 1` colors always suffice.
pub fn chi_integer(dprime: &[u64]) -> Result<(usize, PeriodicColoring), ZGraphError> {
    chi_integer_with(dprime, &ZGraphOptions::default())
}

pub fn chi_integer_with(
    dprime: &[u64],
    opts: &ZGraphOptions,
) -> Result<(usize, PeriodicColoring), ZGraphError> {
    let dist = normalize(dprime)?;
    let (omega, _) = clique_number_integer(dprime)?;
    for t in omega..=dist.len() + 1 {
        if let Some(pc) = is_t_colorable_integer_with(dprime, t, opts)? {
            return Ok((t, pc));
        }
    }
    unreachable!("greedy coloring uses at most |D′| + 1 colors")
}

/// Maximum clique of `G(ℤ, D′)`, translated to contain 0.
///
/// After translating the smallest member to 0, every other member is itself
/// an element of `D′`, so the search runs over subsets of `D′`.
pub fn clique_number_integer(dprime: &[u64]) -> Result<(usize, Vec<u64>), ZGraphError> {
    let dist = normalize(dprime)?;
    let mut best = Vec::new();
    let mut current = Vec::new();
    grow_clique(&dist, 0, &mut current, &mut best);
    let mut witness = vec![0u64];
    witness.extend(best.iter().map(|&x| x as u64));
    Ok((witness.len(), witness))
}

fn grow_clique(dist: &[usize], from: usize, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    if current.len() + (dist.len() - from) <= best.len() {
        return;
    }
    for i in from..dist.len() {
        let x = dist[i];
        if current.iter().all(|&y| dist.binary_search(&(x - y)).is_ok()) {
            current.push(x);
            grow_clique(dist, i + 1, current, best);
            current.pop();
        }
    }
}
