//! Ball configurations and their contact counts.
//!
//! The pairwise scan in [`contact_count`] is the reference count; every faster
//! path in the crate (incremental deltas, the greedy frontier, the exhaustive
//! gain counters) is tested against it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticeRef};

/// Which procedure produced a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub algorithm: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(algorithm: impl Into<String>, seed: Option<u64>) -> Self {
        Self {
            algorithm: algorithm.into(),
            seed,
        }
    }
}

/// An ordered list of unit-ball centres on one grid.
///
/// Construction does not validate; use [`verify`] (or [`Configuration::checked`])
/// before trusting a configuration read from outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    lattice: LatticeRef,
    balls: Vec<LatticePoint>,
    provenance: Option<Provenance>,
}

impl Configuration {
    pub fn new(lattice: LatticeRef, balls: Vec<LatticePoint>) -> Self {
        Self {
            lattice,
            balls,
            provenance: None,
        }
    }

    pub fn empty(lattice: LatticeRef) -> Self {
        Self::new(lattice, Vec::new())
    }

    /// Like [`new`](Self::new) but rejects duplicates and out-of-range layers.
    pub fn checked(lattice: LatticeRef, balls: Vec<LatticePoint>) -> Result<Self> {
        let c = Self::new(lattice, balls);
        check_balls(&c)?;
        Ok(c)
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn lattice(&self) -> &LatticeRef {
        &self.lattice
    }

    pub fn balls(&self) -> &[LatticePoint] {
        &self.balls
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.balls.contains(&p)
    }

    /// A copy with `p` appended.
    pub fn extended(&self, p: LatticePoint) -> Result<Self> {
        self.lattice.check_point(p)?;
        if self.contains(p) {
            return Err(Error::AlreadyPresent(p));
        }
        let mut next = self.clone();
        next.balls.push(p);
        Ok(next)
    }

    /// The configuration mapped onto the mirror grid (x and y negated).
    pub fn mirrored(&self) -> Self {
        Self {
            lattice: self.lattice.mirrored(),
            balls: self
                .balls
                .iter()
                .map(|&p| self.lattice.mirror_point(p))
                .collect(),
            provenance: self.provenance.clone(),
        }
    }

    /// Cartesian centres in ball order.
    pub fn cartesian(&self) -> Result<Vec<[f64; 3]>> {
        self.balls
            .iter()
            .map(|&p| self.lattice.to_cartesian(p))
            .collect()
    }
}

/// Summary produced by [`verify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContactReport {
    pub n: usize,
    pub contacts: u64,
    pub degree_sequence: Vec<u32>,
    /// Smallest scaled squared centre distance; `None` below two balls.
    pub min_scaled_dist: Option<i64>,
}

fn check_balls(c: &Configuration) -> Result<()> {
    let mut seen = std::collections::HashMap::with_capacity(c.balls.len());
    for (index, &point) in c.balls.iter().enumerate() {
        if !c.lattice.contains(point) {
            return Err(Error::BallOutOfRange { index, point });
        }
        if let Some(first) = seen.insert(point, index) {
            return Err(Error::DuplicateBall(first, index));
        }
    }
    Ok(())
}

/// Number of touching pairs, by exhaustive pairwise comparison.
pub fn contact_count(c: &Configuration) -> Result<u64> {
    check_balls(c)?;
    let threshold = c.lattice.contact_threshold();
    let mut count = 0;
    for (a, &p) in c.balls.iter().enumerate() {
        for &q in &c.balls[a + 1..] {
            if c.lattice.scaled_sq_dist(p, q)? == threshold {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Full contact report; fails on duplicate or out-of-range balls and on any
/// pair closer than the contact distance.
pub fn verify(c: &Configuration) -> Result<ContactReport> {
    check_balls(c)?;
    let threshold = c.lattice.contact_threshold();
    let n = c.balls.len();
    let mut degrees = vec![0u32; n];
    let mut contacts = 0;
    let mut min_dist: Option<i64> = None;
    for a in 0..n {
        for b in a + 1..n {
            let d = c.lattice.scaled_sq_dist(c.balls[a], c.balls[b])?;
            min_dist = Some(min_dist.map_or(d, |m| m.min(d)));
            if d == threshold {
                degrees[a] += 1;
                degrees[b] += 1;
                contacts += 1;
            }
        }
    }
    if let Some(m) = min_dist {
        if m < threshold {
            return Err(Error::InvariantViolation(format!(
                "balls overlap: scaled distance {m} below {threshold}"
            )));
        }
    }
    if let Some((index, d)) = degrees.iter().enumerate().find(|(_, &d)| d > 12) {
        return Err(Error::InvariantViolation(format!(
            "ball {index} has {d} contacts"
        )));
    }
    Ok(ContactReport {
        n,
        contacts,
        degree_sequence: degrees,
        min_scaled_dist: min_dist,
    })
}

/// The first `n` balls, keeping lattice and provenance.
pub fn prefix(c: &Configuration, n: usize) -> Result<Configuration> {
    if n > c.balls.len() {
        return Err(Error::PrefixOutOfRange {
            n,
            len: c.balls.len(),
        });
    }
    Ok(Configuration {
        lattice: c.lattice.clone(),
        balls: c.balls[..n].to_vec(),
        provenance: c.provenance.clone(),
    })
}

/// Number of balls of `c` touching `p`, i.e. the contacts gained by adding `p`.
pub fn incremental_delta(c: &Configuration, p: LatticePoint) -> Result<u64> {
    c.lattice.check_point(p)?;
    let mut delta = 0;
    for &q in &c.balls {
        if q == p {
            return Err(Error::AlreadyPresent(p));
        }
        if c.lattice.is_contact(p, q)? {
            delta += 1;
        }
    }
    Ok(delta)
}
