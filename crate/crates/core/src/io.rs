//! File formats: configuration JSON lines, sweep and comparison CSV, and the
//! plain Cartesian export.
//!
//! A configuration file starts with one header object
//! `{"lattice": <descriptor>, "n": <count>, "provenance": {...}}` followed by
//! one object per ball `{"index", "i", "j", "k", "x", "y", "z"}`. The integer
//! coordinates are authoritative; `x, y, z` are rounded to 12 decimals and
//! only informational.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bounds::{Comparison, DeltaRow};
use crate::contact::{Configuration, Provenance};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticeRef};
use crate::search::SweepRecord;

/// One line of a sweep CSV.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub best_contacts: u64,
    pub grid: String,
    pub algorithm: String,
    pub restarts: usize,
    pub runtime_ms: u128,
}

impl From<&SweepRecord> for SweepRow {
    fn from(r: &SweepRecord) -> Self {
        Self {
            n: r.n,
            best_contacts: r.best_contacts,
            grid: r.grid.clone(),
            algorithm: r.algorithm.clone(),
            restarts: r.restarts_used,
            runtime_ms: r.runtime_ms,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    lattice: String,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

#[derive(Debug, Serialize, Deserialize)]
struct BallRecord {
    index: usize,
    i: i32,
    j: i32,
    k: i32,
    x: f64,
    y: f64,
    z: f64,
}

fn round12(v: f64) -> f64 {
    let r = (v * 1e12).round() / 1e12;
    // avoid writing -0.0
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// File name used for a sweep winner: `c<n>_<descriptor>.jsonl`.
pub fn config_file_name(n: usize, lattice: &LatticeRef) -> String {
    format!("c{n}_{}.jsonl", lattice.descriptor())
}

pub fn write_configuration<W: Write>(c: &Configuration, mut out: W) -> Result<()> {
    let header = Header {
        lattice: c.lattice().descriptor(),
        n: c.len(),
        provenance: c.provenance().cloned(),
    };
    serde_json::to_writer(&mut out, &header).map_err(std::io::Error::from)?;
    out.write_all(b"\n")?;
    for (index, (&p, xyz)) in c.balls().iter().zip(c.cartesian()?).enumerate() {
        let rec = BallRecord {
            index,
            i: p.i,
            j: p.j,
            k: p.k,
            x: round12(xyz[0]),
            y: round12(xyz[1]),
            z: round12(xyz[2]),
        };
        serde_json::to_writer(&mut out, &rec).map_err(std::io::Error::from)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_configuration<R: Read>(input: R) -> Result<Configuration> {
    let mut lines = BufReader::new(input)
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));
    let parse_err = |line: usize, message: String| Error::Parse { line, message };

    let (line, text) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty configuration file".into()))?;
    let header: Header =
        serde_json::from_str(&text?).map_err(|e| parse_err(line, format!("bad header: {e}")))?;
    let lattice: LatticeRef = header
        .lattice
        .parse()
        .map_err(|e: Error| parse_err(line, e.to_string()))?;

    let mut balls = Vec::with_capacity(header.n);
    for (line, text) in lines {
        let rec: BallRecord =
            serde_json::from_str(&text?).map_err(|e| parse_err(line, format!("bad ball: {e}")))?;
        if rec.index != balls.len() {
            return Err(parse_err(
                line,
                format!("expected ball index {}, found {}", balls.len(), rec.index),
            ));
        }
        balls.push(LatticePoint::new(rec.i, rec.j, rec.k));
    }
    if balls.len() != header.n {
        return Err(parse_err(
            1,
            format!(
                "header declares {} balls, file has {}",
                header.n,
                balls.len()
            ),
        ));
    }
    let c = Configuration::new(lattice, balls);
    Ok(match header.provenance {
        Some(p) => c.with_provenance(p),
        None => c,
    })
}

pub fn save_configuration(c: &Configuration, path: &Path) -> Result<()> {
    write_configuration(c, BufWriter::new(File::create(path)?))
}

pub fn load_configuration(path: &Path) -> Result<Configuration> {
    read_configuration(File::open(path)?)
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_sweep_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut rdr = csv::Reader::from_reader(input);
    rdr.deserialize()
        .enumerate()
        .map(|(i, r)| {
            r.map_err(|e| Error::Parse {
                // header is line 1
                line: e.position().map_or(i + 2, |p| p.line() as usize),
                message: e.to_string(),
            })
        })
        .collect()
}

#[derive(Serialize)]
struct ComparisonCsvRow {
    n: usize,
    hex_best: u64,
    oct_best: u64,
    winner: &'static str,
}

pub fn write_comparison_csv<W: Write>(cmp: &Comparison, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in &cmp.rows {
        w.serialize(ComparisonCsvRow {
            n: r.n,
            hex_best: r.hex_best,
            oct_best: r.oct_best,
            winner: match r.winner {
                crate::bounds::Winner::Hex => "hex",
                crate::bounds::Winner::Oct => "oct",
                crate::bounds::Winner::Tie => "tie",
            },
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_delta_csv<W: Write>(rows: &[DeltaRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Cartesian centres as CSV: `index,i,j,k,x,y,z` with 12 decimals.
pub fn write_cartesian_csv<W: Write>(c: &Configuration, mut out: W) -> Result<()> {
    writeln!(out, "index,i,j,k,x,y,z")?;
    for (index, (&p, xyz)) in c.balls().iter().zip(c.cartesian()?).enumerate() {
        writeln!(
            out,
            "{index},{},{},{},{:.12},{:.12},{:.12}",
            p.i,
            p.j,
            p.k,
            round12(xyz[0]),
            round12(xyz[1]),
            round12(xyz[2])
        )?;
    }
    out.flush()?;
    Ok(())
}
