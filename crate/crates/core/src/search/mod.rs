//! Greedy packing, multi-grid sweeps and exhaustive window search.

mod exhaustive;
mod greedy;
mod sweep;

use std::fmt;
use std::str::FromStr;

pub use exhaustive::{
    exhaustive, exhaustive_sweep, exhaustive_with, grid_restrictions, subset_count,
    ExhaustiveOptions, ExhaustiveProgress, ExhaustiveResult,
};
pub use greedy::{greedy, greedy_run, GreedyParams, GreedyRun, TieRule};
pub use sweep::{greedy_sweep, SweepParams, SweepRecord};

use crate::error::{Error, Result};
use crate::lattice::{parse_span, LatticePoint};

/// Tag written for exhaustive results.
pub const EXHAUSTIVE_TAG: &str = "exhaustive";

/// Inclusive integer interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: i32,
    pub hi: i32,
}

impl Span {
    pub fn new(lo: i32, hi: i32) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidParams(format!("empty interval {lo}..{hi}")));
        }
        Ok(Self { lo, hi })
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: i32) -> bool {
        (self.lo..=self.hi).contains(&v)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for Span {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) =
            parse_span(s).ok_or_else(|| Error::InvalidParams(format!("bad interval {s:?}")))?;
        Span::new(lo, hi)
    }
}

/// A box of grid points `i_range × j_range × k_range`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub i_range: Span,
    pub j_range: Span,
    pub k_range: Span,
}

impl Window {
    pub fn new(i_range: Span, j_range: Span, k_range: Span) -> Self {
        Self {
            i_range,
            j_range,
            k_range,
        }
    }

    /// `−r..r` on every axis.
    pub fn cube(r: i32) -> Self {
        let s = Span { lo: -r, hi: r };
        Self::new(s, s, s)
    }

    pub fn point_count(&self) -> usize {
        self.i_range.len() * self.j_range.len() * self.k_range.len()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.i_range.contains(p.i) && self.j_range.contains(p.j) && self.k_range.contains(p.k)
    }

    /// Window points sorted by `(k, i, j)`.
    pub fn points(&self) -> Vec<LatticePoint> {
        let mut out = Vec::with_capacity(self.point_count());
        for k in self.k_range.lo..=self.k_range.hi {
            for i in self.i_range.lo..=self.i_range.hi {
                for j in self.j_range.lo..=self.j_range.hi {
                    out.push(LatticePoint::new(i, j, k));
                }
            }
        }
        out
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.i_range, self.j_range, self.k_range)
    }
}

impl FromStr for Window {
    type Err = Error;

    /// Parses `i_lo..i_hi,j_lo..j_hi,k_lo..k_hi`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidParams(format!(
                "window {s:?} needs three comma-separated intervals"
            )));
        }
        Ok(Window::new(
            parts[0].parse()?,
            parts[1].parse()?,
            parts[2].parse()?,
        ))
    }
}
