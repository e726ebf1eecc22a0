//! Contact numbers of unit-ball packings on the family of 3-dimensional
//! hexagonal grids and on the octahedral lattice.
//!
//! - [`lattice`]: sign sequences, grid coordinates, exact contact metric.
//! - [`contact`]: configurations, pairwise and incremental contact counts.
//! - [`search`]: greedy packing with restarts, grid sweeps, exhaustive
//!   branch-and-bound over small windows.
//! - [`bounds`]: literature values, the Bezdek bound and table comparison.
//! - [`io`]: JSON-lines configurations and CSV tables.

pub mod bounds;
pub mod contact;
pub mod error;
pub mod io;
pub mod lattice;
pub mod search;

pub use contact::{contact_count, incremental_delta, prefix, verify, Configuration, ContactReport};
pub use error::{Error, Result};
pub use lattice::{enumerate_grids, EpsilonSeq, LatticePoint, LatticeRef};

/// The 128 grids over layers `−4..=4` with `ε_1 = +1`, as lattice refs.
pub fn normalized_hex_grids(t1: i32, t2: i32) -> Result<Vec<LatticeRef>> {
    Ok(enumerate_grids(t1, t2, true)?
        .into_iter()
        .map(LatticeRef::Hexagonal)
        .collect())
}
