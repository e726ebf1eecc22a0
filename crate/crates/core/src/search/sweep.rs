use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use super::greedy::{greedy_run, GreedyParams, TieRule};
use crate::contact::{prefix, Configuration};
use crate::error::{Error, Result};
use crate::lattice::LatticeRef;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepParams {
    pub n_max: usize,
    /// Seeded restarts per grid on top of the lexicographic run.
    pub restarts: usize,
    pub base_seed: u64,
    pub horizontal_bound: i32,
}

impl SweepParams {
    pub fn new(n_max: usize) -> Self {
        Self {
            n_max,
            restarts: 0,
            base_seed: 0,
            horizontal_bound: 0,
        }
    }

    pub fn with_restarts(mut self, restarts: usize, base_seed: u64) -> Self {
        self.restarts = restarts;
        self.base_seed = base_seed;
        self
    }

    /// Restart 0 is lexicographic; restart `r ≥ 1` is seeded with `base_seed + r`.
    pub fn tie_rule(&self, restart: usize) -> TieRule {
        if restart == 0 {
            TieRule::Lexicographic
        } else {
            TieRule::SeededRandom(self.base_seed.wrapping_add(restart as u64))
        }
    }
}

/// Best result for one ball count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRecord {
    pub n: usize,
    pub best_contacts: u64,
    pub best_grid_id: u64,
    /// Descriptor of the winning grid.
    pub grid: String,
    pub configuration: Configuration,
    pub algorithm: String,
    pub restarts_used: usize,
    pub runtime_ms: u128,
}

// Larger is better: contacts desc, then grid id, grid position and restart asc.
type Rank = (u64, Reverse<u64>, Reverse<usize>, Reverse<usize>);

/// Runs greedy on every grid with every restart and keeps, for each
/// `n = 1..=n_max`, the best prefix. Winners are ranked by contacts, then
/// lower grid id, earlier grid in `grids`, lower restart index.
pub fn greedy_sweep(grids: &[LatticeRef], params: &SweepParams) -> Result<Vec<SweepRecord>> {
    if params.n_max == 0 {
        return Err(Error::InvalidParams("n_max must be at least 1".into()));
    }
    if grids.is_empty() {
        return Err(Error::InvalidParams("no grids to sweep".into()));
    }
    let started = Instant::now();
    let jobs: Vec<(usize, usize)> = (0..grids.len())
        .flat_map(|g| (0..=params.restarts).map(move |r| (g, r)))
        .collect();

    let run = |g: usize, r: usize| {
        let mut gp =
            GreedyParams::new(grids[g].clone(), params.n_max).with_tie_rule(params.tie_rule(r));
        gp.horizontal_bound = params.horizontal_bound;
        greedy_run(&gp)
    };

    let best: Vec<Option<Rank>> = jobs
        .par_iter()
        .map(|&(g, r)| -> Result<Vec<Option<Rank>>> {
            let counts = run(g, r)?.cumulative_contacts();
            let id = grids[g].grid_id();
            Ok(counts[1..]
                .iter()
                .map(|&c| Some((c, Reverse(id), Reverse(g), Reverse(r))))
                .collect())
        })
        .try_reduce(
            || vec![None; params.n_max],
            |a, b| Ok(a.into_iter().zip(b).map(|(x, y)| x.max(y)).collect()),
        )?;

    // re-run each distinct winner once and cut its prefixes
    let mut winners: BTreeMap<(usize, usize), Configuration> = BTreeMap::new();
    for rank in best.iter().flatten() {
        let (_, _, Reverse(g), Reverse(r)) = *rank;
        if let std::collections::btree_map::Entry::Vacant(e) = winners.entry((g, r)) {
            e.insert(run(g, r)?.configuration);
        }
    }
    let runtime_ms = started.elapsed().as_millis();

    best.into_iter()
        .enumerate()
        .map(|(idx, rank)| {
            let (contacts, Reverse(id), Reverse(g), Reverse(r)) =
                rank.expect("every job covers every n");
            let n = idx + 1;
            Ok(SweepRecord {
                n,
                best_contacts: contacts,
                best_grid_id: id,
                grid: grids[g].descriptor(),
                configuration: prefix(&winners[&(g, r)], n)?,
                algorithm: params.tie_rule(r).tag(),
                restarts_used: params.restarts,
                runtime_ms,
            })
        })
        .collect()
}
