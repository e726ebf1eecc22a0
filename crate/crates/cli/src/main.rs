use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hexpack::bounds::{compare_tables, format_decades, reference_delta, Winner};
use hexpack::io::{
    config_file_name, load_configuration, read_sweep_csv, save_configuration, write_cartesian_csv,
    write_comparison_csv, write_configuration, write_delta_csv, write_sweep_csv, SweepRow,
};
use hexpack::lattice::{enumerate_grids, parse_span, LatticeRef};
use hexpack::search::{
    exhaustive_with, greedy_sweep, grid_restrictions, subset_count, ExhaustiveOptions,
    ExhaustiveProgress, SweepParams, Window,
};
use hexpack::{verify, Configuration, Error};

/// Subsets above this count need --force.
const SUBSET_CAP: u128 = 10_000_000_000;
/// Subsets above this count get a warning before the run.
const SUBSET_WARN: u128 = 10_000_000;

#[derive(Parser)]
#[command(
    name = "hexpack",
    version,
    about = "Contact numbers of ball packings on hexagonal grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LatticeKind {
    Hex,
    Oct,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Csv,
    Jsonl,
}

#[derive(clap::Args)]
struct GridArgs {
    #[arg(long, value_enum, default_value = "hex")]
    lattice: LatticeKind,
    /// Layer span of the hexagonal grids
    #[arg(long, default_value = "-4..4", allow_hyphen_values = true)]
    layers: String,
    /// Use every sign sequence instead of only those with ε₁ = +1
    #[arg(long)]
    all_grids: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy packing over every grid with seeded restarts
    Sweep {
        #[command(flatten)]
        grids: GridArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep |i|, |j| within this bound (0 = unbounded)
        #[arg(long, default_value_t = 0)]
        horizontal_bound: i32,
        /// Worker threads (default: available parallelism)
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, env = "HEXPACK_OUT", default_value = "hexpack-out")]
        out: PathBuf,
    },
    /// Exact optimum over a window by branch and bound
    Exhaustive {
        #[command(flatten)]
        grids: GridArgs,
        /// Window as i_lo..i_hi,j_lo..j_hi,k_lo..k_hi
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 60)]
        max_points: usize,
        /// Run even when the subset count exceeds the hard cap
        #[arg(long)]
        force: bool,
        /// Write every optimal configuration
        #[arg(long)]
        all: bool,
        #[arg(long, env = "HEXPACK_OUT", default_value = "hexpack-out")]
        out: PathBuf,
    },
    /// Check a configuration file and print its contact report
    Verify {
        path: PathBuf,
        /// Fail unless the contact count equals this value
        #[arg(long)]
        expect: Option<u64>,
    },
    /// Join a hexagonal and an octahedral sweep table
    Compare {
        hex: PathBuf,
        oct: PathBuf,
        /// Comparison CSV (default: standard output)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a configuration file
    Export {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a sweep table and its deltas against the published greedy values
    Table {
        sweep: PathBuf,
        /// Delta CSV
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn hex_grids(args: &GridArgs) -> Result<Vec<LatticeRef>> {
    let (t1, t2) = parse_span(&args.layers)
        .with_context(|| format!("invalid layer span {:?}", args.layers))?;
    Ok(enumerate_grids(t1, t2, !args.all_grids)?
        .into_iter()
        .map(LatticeRef::Hexagonal)
        .collect())
}

fn lattices(args: &GridArgs) -> Result<Vec<LatticeRef>> {
    match args.lattice {
        LatticeKind::Hex => hex_grids(args),
        LatticeKind::Oct => Ok(vec![LatticeRef::Octahedral]),
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    grids: &GridArgs,
    n: usize,
    restarts: usize,
    seed: u64,
    horizontal_bound: i32,
    threads: Option<usize>,
    out: &Path,
) -> Result<()> {
    let lattices = lattices(grids)?;
    let mut params = SweepParams::new(n).with_restarts(restarts, seed);
    params.horizontal_bound = horizontal_bound;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()?;
    let records = pool.install(|| greedy_sweep(&lattices, &params))?;

    create_dir(out)?;
    let rows: Vec<SweepRow> = records.iter().map(SweepRow::from).collect();
    let csv_path = out.join("sweep.csv");
    write_sweep_csv(&rows, BufWriter::new(File::create(&csv_path)?))?;
    for r in &records {
        let path = out.join(config_file_name(r.n, r.configuration.lattice()));
        save_configuration(&r.configuration, &path)?;
    }

    let cells: Vec<(usize, String)> = rows
        .iter()
        .map(|r| (r.n, r.best_contacts.to_string()))
        .collect();
    println!("{}", format_decades("n", &cells));
    println!(
        "{} lattice(s), {} run(s) each, {} ms; table in {}",
        lattices.len(),
        restarts + 1,
        records.first().map_or(0, |r| r.runtime_ms),
        csv_path.display()
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_exhaustive(
    grids: &GridArgs,
    window: &str,
    n: usize,
    max_points: usize,
    force: bool,
    all: bool,
    out: &Path,
) -> Result<()> {
    let window: Window = window.parse()?;
    let points = window.point_count();
    if points > max_points {
        bail!(Error::InvalidParams(format!(
            "window has {points} points, limit is {max_points} (--max-points)"
        )));
    }
    if n > points {
        bail!(Error::WindowTooSmall { n, points });
    }
    let lattices = match grids.lattice {
        LatticeKind::Hex => grid_restrictions(&hex_grids(grids)?, &window)?,
        LatticeKind::Oct => vec![LatticeRef::Octahedral],
    };
    let subsets = subset_count(points, n).saturating_mul(lattices.len() as u128);
    if subsets > SUBSET_CAP && !force {
        bail!(Error::InvalidParams(format!(
            "about {subsets} subsets to search, above the cap of {SUBSET_CAP}; use --force"
        )));
    }
    if subsets > SUBSET_WARN {
        eprintln!(
            "warning: up to {subsets} subsets over {} grid restriction(s)",
            lattices.len()
        );
    }

    let started = Instant::now();
    let mut best: Option<(u64, u64, Vec<Configuration>)> = None;
    let (mut nodes, mut pruned) = (0u64, 0u64);
    for g in &lattices {
        let report = |p: &ExhaustiveProgress| {
            let rate = if p.nodes == 0 {
                0.0
            } else {
                100.0 * p.pruned as f64 / p.nodes as f64
            };
            eprintln!(
                "{g}: {} nodes, best {}, {rate:.1}% pruned",
                p.nodes,
                p.best.map_or("-".to_string(), |b| b.to_string())
            );
        };
        let result = exhaustive_with(
            g,
            &window,
            n,
            &ExhaustiveOptions {
                collect_all: all,
                progress: Some(&report),
                ..Default::default()
            },
        )?;
        nodes += result.nodes;
        pruned += result.pruned;
        match &mut best {
            Some((b, _, configs)) if result.best == *b && all => {
                configs.extend(result.configurations)
            }
            Some((b, id, _)) if result.best < *b || (result.best == *b && g.grid_id() >= *id) => {}
            _ => best = Some((result.best, g.grid_id(), result.configurations)),
        }
    }
    let (contacts, _, configs) = best.expect("at least one lattice");

    create_dir(out)?;
    for (idx, c) in configs.iter().enumerate() {
        let mut name = config_file_name(n, c.lattice());
        if all {
            name = name.replace(".jsonl", &format!("_{idx}.jsonl"));
        }
        save_configuration(c, &out.join(name))?;
    }
    println!(
        "n={n} window={window} best={contacts} grid={} optima_written={} nodes={nodes} pruned={pruned} runtime_ms={}",
        configs[0].lattice(),
        configs.len(),
        started.elapsed().as_millis()
    );
    Ok(())
}

fn cmd_verify(path: &Path, expect: Option<u64>) -> Result<()> {
    let c = load_configuration(path).with_context(|| format!("reading {}", path.display()))?;
    let report = verify(&c)?;
    let mut histogram = [0usize; 13];
    for &d in &report.degree_sequence {
        histogram[d as usize] += 1;
    }
    println!("lattice: {}", c.lattice());
    println!("balls: {}", report.n);
    println!("contacts: {}", report.contacts);
    if let Some(m) = report.min_scaled_dist {
        println!(
            "min scaled distance: {m} (contact at {})",
            c.lattice().contact_threshold()
        );
    }
    let degrees: Vec<String> = histogram
        .iter()
        .enumerate()
        .filter(|(_, &count)| count > 0)
        .map(|(d, count)| format!("{d}:{count}"))
        .collect();
    println!("degrees: {}", degrees.join(" "));
    if let Some(p) = c.provenance() {
        println!("algorithm: {}", p.algorithm);
    }
    if let Some(e) = expect {
        if e != report.contacts {
            bail!(Error::InvariantViolation(format!(
                "expected {e} contacts, found {}",
                report.contacts
            )));
        }
    }
    Ok(())
}

fn read_table(path: &Path) -> Result<Vec<SweepRow>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(read_sweep_csv(file)?)
}

fn cmd_compare(hex: &Path, oct: &Path, out: Option<&Path>) -> Result<()> {
    let cmp = compare_tables(&read_table(hex)?, &read_table(oct)?)?;
    write_comparison_csv(&cmp, output(out)?)?;

    let mut summary: Box<dyn Write> = if out.is_some() {
        Box::new(io::stdout().lock())
    } else {
        Box::new(io::stderr().lock())
    };
    let exceptions: Vec<String> = cmp.exceptions().iter().map(|r| r.n.to_string()).collect();
    writeln!(
        summary,
        "octahedral better at n = {}",
        exceptions.join(", ")
    )?;
    let hex_wins = cmp.rows.iter().filter(|r| r.winner == Winner::Hex).count();
    let ties = cmp.rows.iter().filter(|r| r.winner == Winner::Tie).count();
    writeln!(
        summary,
        "hexagonal better: {hex_wins}, ties: {ties}, octahedral better: {}",
        exceptions.len()
    )?;
    for f in &cmp.literature {
        writeln!(
            summary,
            "n = {}: {} value {} exceeds hex {} and oct {}",
            f.n, f.source, f.value, f.hex_best, f.oct_best
        )?;
    }
    Ok(())
}

fn cmd_export(config: &Path, format: ExportFormat, out: Option<&Path>) -> Result<()> {
    let c = load_configuration(config).with_context(|| format!("reading {}", config.display()))?;
    let w = output(out)?;
    match format {
        ExportFormat::Csv => write_cartesian_csv(&c, w)?,
        ExportFormat::Jsonl => write_configuration(&c, w)?,
    }
    Ok(())
}

fn cmd_table(sweep: &Path, out: Option<&Path>) -> Result<()> {
    let rows = read_table(sweep)?;
    let deltas = reference_delta(&rows);
    let values: Vec<(usize, String)> = rows
        .iter()
        .map(|r| (r.n, r.best_contacts.to_string()))
        .collect();
    let cells: Vec<(usize, String)> = deltas
        .iter()
        .map(|d| (d.n, format!("{:+}", d.delta)))
        .collect();
    println!("{}", format_decades("n", &values));
    println!("{}", format_decades("delta", &cells));
    if let (Some(lo), Some(hi)) = (
        deltas.iter().map(|d| d.delta).min(),
        deltas.iter().map(|d| d.delta).max(),
    ) {
        let below = deltas.iter().filter(|d| d.delta < 0).count();
        let above = deltas.iter().filter(|d| d.delta > 0).count();
        println!("delta range {lo}..{hi}; {below} below, {above} above the reference");
    }
    if let Some(p) = out {
        write_delta_csv(&deltas, output(Some(p))?)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep {
            grids,
            n,
            restarts,
            seed,
            horizontal_bound,
            threads,
            out,
        } => cmd_sweep(&grids, n, restarts, seed, horizontal_bound, threads, &out),
        Command::Exhaustive {
            grids,
            window,
            n,
            max_points,
            force,
            all,
            out,
        } => cmd_exhaustive(&grids, &window, n, max_points, force, all, &out),
        Command::Verify { path, expect } => cmd_verify(&path, expect),
        Command::Compare { hex, oct, out } => cmd_compare(&hex, &oct, out.as_deref()),
        Command::Export {
            config,
            format,
            out,
        } => cmd_export(&config, format, out.as_deref()),
        Command::Table { sweep, out } => cmd_table(&sweep, out.as_deref()),
    }
}

fn broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|e| {
        e.downcast_ref::<io::Error>()
            .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
            || matches!(e.downcast_ref::<Error>(), Some(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe)
    })
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::InvariantViolation(_)
            | Error::DuplicateBall(..)
            | Error::SameBall(_)
            | Error::BallOutOfRange { .. },
        ) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
