use std::fmt;
use std::io::{self, Write};

use super::{SlabColoring, SlabError, SlabMode};
use crate::distset::parse_expression;
use crate::exact::{QuadExt, Radicand};
use crate::lattice::POINTS_CSV_HEADER;

/// ```text
/// period 4
/// [0, 1) 0
/// [1, 2) 1
/// ```
/// or `window <L> <R>` as the header. Blank lines and `#` comments are skipped.
impl fmt::Display for SlabColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.span();
        match self.mode {
            SlabMode::Periodic => writeln!(f, "period {hi}")?,
            SlabMode::Windowed => writeln!(f, "window {lo} {hi}")?,
        }
        for (i, c) in self.colors.iter().enumerate() {
            writeln!(f, "[{}, {}) {}", self.breakpoints[i], self.breakpoints[i + 1], c)?;
        }
        Ok(())
    }
}

pub fn parse_slab_coloring(text: &str, m: Radicand) -> Result<SlabColoring, SlabError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line: usize, message: String| SlabError::Parse { line, message };
    let expr = |line: usize, s: &str| parse_expression(s, m).map_err(|e| err(line, e.to_string()));

    let (hline, header) = lines.next().ok_or_else(|| err(0, "missing header".into()))?;
    let (mode, lo, hi) = if let Some(rest) = header.strip_prefix("period") {
        (SlabMode::Periodic, QuadExt::zero(m), expr(hline, rest)?)
    } else if let Some(rest) = header.strip_prefix("window") {
        let parts: Vec<&str> = rest.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(err(hline, "expected `window <L> <R>`".into()));
        }
        (SlabMode::Windowed, expr(hline, parts[0])?, expr(hline, parts[1])?)
    } else {
        return Err(err(hline, "expected `period <P>` or `window <L> <R>`".into()));
    };

    let mut breakpoints = vec![lo];
    let mut colors = Vec::new();
    for (n, line) in lines {
        let body = line.strip_prefix('[').ok_or_else(|| err(n, "slab must start with `[`".into()))?;
        let (interval, color) = body.split_once(')').ok_or_else(|| err(n, "missing `)`".into()))?;
        let (a, b) = interval.split_once(',').ok_or_else(|| err(n, "missing `,`".into()))?;
        let (a, b) = (expr(n, a)?, expr(n, b)?);
        if a != *breakpoints.last().expect("nonempty") {
            return Err(err(n, format!("slab starts at {a}, previous slab ends at {}", breakpoints.last().unwrap())));
        }
        let color: usize = color.trim().parse().map_err(|e| err(n, format!("color index: {e}")))?;
        breakpoints.push(b);
        colors.push(color);
    }
    if breakpoints.last() != Some(&hi) {
        return Err(err(0, format!("slabs end at {}, header says {hi}", breakpoints.last().unwrap())));
    }
    let t = colors.iter().max().map_or(0, |&c| c + 1);
    match mode {
        SlabMode::Periodic => SlabColoring::periodic(breakpoints, colors, t),
        SlabMode::Windowed => SlabColoring::windowed(breakpoints, colors, t),
    }
}

/// One row per slab, sampled at its midpoint, in the lattice point-dump
/// format with the coordinate columns left empty.
pub fn write_slab_csv<W: Write>(c: &SlabColoring, out: &mut W) -> io::Result<()> {
    writeln!(out, "{POINTS_CSV_HEADER}")?;
    for (i, &color) in c.colors().iter().enumerate() {
        let x = c.breakpoints()[i].midpoint(&c.breakpoints()[i + 1]);
        writeln!(out, ",,{},{:.12},{}", x.to_fraction_string(), x.approx(), color)?;
    }
    Ok(())
}
