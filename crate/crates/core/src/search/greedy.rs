use std::collections::{BTreeSet, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::contact::{Configuration, Provenance};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticeRef};

/// How the greedy step picks among candidates with equal contact gain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieRule {
    /// Smallest `(k, σ·i, σ·j)`, with `σ` the grid's orientation sign.
    Lexicographic,
    /// Uniform choice among the tied candidates, driven by ChaCha8 seeded with
    /// the given value.
    SeededRandom(u64),
}

impl TieRule {
    pub fn tag(&self) -> String {
        match self {
            TieRule::Lexicographic => "greedy-lex".to_string(),
            TieRule::SeededRandom(seed) => format!("greedy-seed-{seed}"),
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            TieRule::Lexicographic => None,
            TieRule::SeededRandom(seed) => Some(*seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyParams {
    pub lattice: LatticeRef,
    pub n_max: usize,
    pub tie_rule: TieRule,
    pub start: LatticePoint,
    /// Candidates need `|i|, |j| ≤ horizontal_bound`; 0 disables the bound.
    pub horizontal_bound: i32,
}

impl GreedyParams {
    /// Lexicographic ties, origin start, no horizontal bound.
    pub fn new(lattice: LatticeRef, n_max: usize) -> Self {
        Self {
            lattice,
            n_max,
            tie_rule: TieRule::Lexicographic,
            start: LatticePoint::ORIGIN,
            horizontal_bound: 0,
        }
    }

    pub fn with_tie_rule(mut self, tie_rule: TieRule) -> Self {
        self.tie_rule = tie_rule;
        self
    }

    fn in_bounds(&self, p: LatticePoint) -> bool {
        self.horizontal_bound == 0
            || (p.i.abs() <= self.horizontal_bound && p.j.abs() <= self.horizontal_bound)
    }
}

/// A greedy configuration together with the contact gain of every step.
#[derive(Debug, Clone)]
pub struct GreedyRun {
    pub configuration: Configuration,
    /// `gains[m]` is the number of earlier balls touched by ball `m`.
    pub gains: Vec<u32>,
}

impl GreedyRun {
    /// Contact count of the first `n` balls, for `n = 0..=len`.
    pub fn cumulative_contacts(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.gains.len() + 1);
        out.push(0);
        let mut acc = 0u64;
        for &g in &self.gains {
            acc += g as u64;
            out.push(acc);
        }
        out
    }
}

pub fn greedy(params: &GreedyParams) -> Result<Configuration> {
    greedy_run(params).map(|run| run.configuration)
}

/// Places `n_max` balls, each maximising its contacts with the balls already
/// placed. Candidates are the unoccupied neighbours of placed balls.
pub fn greedy_run(params: &GreedyParams) -> Result<GreedyRun> {
    if params.n_max == 0 {
        return Err(Error::InvalidParams("n_max must be at least 1".into()));
    }
    let lattice = &params.lattice;
    lattice.check_point(params.start)?;
    if !params.in_bounds(params.start) {
        return Err(Error::InvalidParams(format!(
            "start {} violates the horizontal bound",
            params.start
        )));
    }

    let sigma = lattice.orientation();
    let key = |p: LatticePoint| (p.k, sigma * p.i, sigma * p.j);
    let unkey = |(k, a, b): (i32, i32, i32)| LatticePoint::new(sigma * a, sigma * b, k);

    // buckets[g] holds the frontier points that would gain g contacts
    let mut buckets: Vec<BTreeSet<(i32, i32, i32)>> = vec![BTreeSet::new(); 13];
    let mut gain_of: HashMap<LatticePoint, u32> = HashMap::new();
    let mut placed: HashSet<LatticePoint> = HashSet::with_capacity(params.n_max);
    let mut balls = Vec::with_capacity(params.n_max);
    let mut gains = Vec::with_capacity(params.n_max);
    let mut rng = params.tie_rule.seed().map(ChaCha8Rng::seed_from_u64);
    let mut scratch = Vec::with_capacity(12);

    let mut next = Some((params.start, 0u32));
    while let Some((p, g)) = next {
        balls.push(p);
        gains.push(g);
        placed.insert(p);
        if balls.len() == params.n_max {
            break;
        }

        scratch.clear();
        lattice.push_neighbors(p, &mut scratch);
        for &q in &scratch {
            if placed.contains(&q) || !params.in_bounds(q) {
                continue;
            }
            let old = gain_of.entry(q).or_insert(0);
            if *old > 0 {
                buckets[*old as usize].remove(&key(q));
            }
            *old += 1;
            buckets[*old as usize].insert(key(q));
        }

        next = None;
        if let Some(top) = (1..buckets.len()).rev().find(|&g| !buckets[g].is_empty()) {
            let bucket = &mut buckets[top];
            let chosen = match rng.as_mut() {
                Some(rng) if bucket.len() > 1 => {
                    let idx = rng.gen_range(0..bucket.len());
                    *bucket.iter().nth(idx).expect("index in range")
                }
                _ => *bucket.first().expect("non-empty bucket"),
            };
            bucket.remove(&chosen);
            let q = unkey(chosen);
            gain_of.remove(&q);
            next = Some((q, top as u32));
        }
    }

    if balls.len() < params.n_max {
        return Err(Error::FrontierExhausted {
            placed: balls.len(),
            wanted: params.n_max,
        });
    }
    let provenance = Provenance::new(params.tie_rule.tag(), params.tie_rule.seed());
    Ok(GreedyRun {
        configuration: Configuration::new(lattice.clone(), balls).with_provenance(provenance),
        gains,
    })
}
