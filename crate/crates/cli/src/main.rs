//! `rfree`: count relatively r-prime tuples, evaluate Jordan totients, and
//! scan the error term from the command line.

mod output;

use std::fs::File;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_rational::BigRational;
use rfree_core::identities::{identity_check_with, IdentityVerdict};
use rfree_core::jordan::{jordan, jordan_oracle, partial_sum_bernoulli, partial_sum_direct};
use rfree_core::lattice::{count_oracle, Counter};
use rfree_core::omega::{
    error_scan_with, lemma_check, omega_ratio_report, scan_points, witness_large, witness_small,
    Verdict, WitnessReport,
};
use rfree_core::rows::WireRow;
use rfree_core::{
    iroot, parse_tolerance, read_csv, write_csv, zeta_value, CountParams, Decimal, Error,
    Execution, MobiusTable, ScanRow, TotientParams,
};

use output::{Format, Sink, Table};

#[derive(Parser)]
#[command(
    name = "rfree",
    version,
    about = "Relatively r-prime k-tuples: exact counts and error-term scans"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Target radius for ζ enclosures; also sets the printed decimal places.
    #[arg(long, global = true, env = "RFREE_PRECISION", default_value = "1e-30")]
    precision: String,
    /// Largest Möbius table the run may build.
    #[arg(
        long,
        global = true,
        env = "RFREE_SIEVE_LIMIT",
        default_value_t = 10_000_000
    )]
    sieve_limit: u64,
    /// Largest number of tuples an enumeration oracle may visit.
    #[arg(
        long,
        global = true,
        env = "RFREE_BUDGET",
        default_value_t = 100_000_000
    )]
    budget: u64,
    /// Worker threads for parallel loops (0 = available parallelism).
    #[arg(long, global = true, env = "RFREE_WORKERS", default_value_t = 0)]
    workers: usize,
    #[arg(long, global = true, env = "RFREE_FORMAT", value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true, env = "RFREE_OUTPUT")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// V_k^r(x) with main term, error and normalized error.
    Count {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        x: u64,
        /// Also enumerate the box and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Generalized Jordan totient J_k^r(n).
    Jordan {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        oracle: bool,
    },
    /// Σ_{n≤x} J_{k-1}^r(n) by direct summation and by the Bernoulli expansion.
    PartialSum {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: u32,
    },
    /// Check the polynomial identity against the count for x = 0..=x_max.
    Identity {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        x_max: u64,
    },
    /// Error-term records for x_min..=x_max.
    Scan {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        x_min: u64,
        #[arg(long)]
        x_max: u64,
        #[arg(long, default_value_t = 1)]
        step: u64,
    },
    /// Evaluate the fractional-part sum at constructed witnesses.
    Witness(WitnessArgs),
    /// ζ(s) with its error radius.
    Zeta {
        #[arg(long)]
        s: u32,
    },
    /// Two-window non-decay summary of a scan file.
    Report {
        /// Scan CSV; stdin when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        split: u64,
    },
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("branch").required(true).args(["large", "small"]))]
struct WitnessArgs {
    /// x ≡ 2^r − 1 (mod 2^r), x ≥ 3^r; needs r ≥ 2 and rk ≥ 4.
    #[arg(long)]
    large: bool,
    /// x = m² ∏_{3≤p<100} p^r; needs r ∈ {2, 3} (k = 1).
    #[arg(long)]
    small: bool,
    #[arg(long)]
    r: u32,
    #[arg(long, required_if_eq("large", "true"))]
    k: Option<u32>,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    m: u64,
    /// Number of leading d summed exactly.
    #[arg(long, default_value_t = 100)]
    cutoff: u64,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Passed,
    ChecksFailed,
}

impl RunConfig {
    fn tolerance(&self) -> Result<BigRational> {
        Ok(parse_tolerance(&self.precision)?)
    }

    /// Decimal places printed for enclosed values: smallest p with 10^-p ≤ precision.
    fn places(&self) -> Result<u32> {
        let tol = self.tolerance()?;
        let mut p = 0u32;
        while BigRational::new(1.into(), BigUint::from(10u32).pow(p).into()) > tol {
            p += 1;
        }
        Ok(p)
    }

    fn table(&self, needed: u64) -> Result<MobiusTable> {
        if needed > self.sieve_limit {
            return Err(Error::ResourceLimit(format!(
                "need a Möbius table up to {needed}, above --sieve-limit {}",
                self.sieve_limit
            ))
            .into());
        }
        Ok(MobiusTable::new(needed.max(1))?)
    }
}

fn yes_no(b: bool) -> String {
    b.to_string()
}

fn run(cli: Cli) -> Result<Outcome> {
    let cfg = &cli.config;
    if cfg.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build_global()
            .context("cannot configure the worker pool")?;
    }
    let mut sink = Sink::open(cfg.output.as_deref())?;
    let outcome = match cli.command {
        Command::Count { r, k, x, oracle } => cmd_count(cfg, &mut sink, r, k, x, oracle)?,
        Command::Jordan { n, r, k, oracle } => cmd_jordan(cfg, &mut sink, n, r, k, oracle)?,
        Command::PartialSum { x, r, k } => cmd_partial_sum(cfg, &mut sink, x, r, k)?,
        Command::Identity { r, k, x_max } => cmd_identity(cfg, &mut sink, r, k, x_max)?,
        Command::Scan {
            r,
            k,
            x_min,
            x_max,
            step,
        } => cmd_scan(cfg, &mut sink, r, k, x_min, x_max, step)?,
        Command::Witness(args) => cmd_witness(cfg, &mut sink, &args)?,
        Command::Zeta { s } => cmd_zeta(cfg, &mut sink, s)?,
        Command::Report { input, split } => cmd_report(cfg, &mut sink, input, split)?,
    };
    sink.finish()?;
    Ok(outcome)
}

fn cmd_count(
    cfg: &RunConfig,
    sink: &mut Sink,
    r: u32,
    k: u32,
    x: u64,
    oracle: bool,
) -> Result<Outcome> {
    let params = CountParams::new(r, k, x)?;
    cfg.table(params.sieve_bound())?;
    let counter = Counter::new(r, k, x, &cfg.tolerance()?)?;
    let rec = counter.record_with(x, Execution::default())?;
    let row = ScanRow::from_record(&rec, cfg.places()?);
    let wire = WireRow::from(&row);
    let mut columns = vec![
        "r",
        "k",
        "x",
        "V",
        "main_term",
        "error",
        "normalized_error",
        "density",
    ];
    let mut cells = vec![
        r.to_string(),
        k.to_string(),
        wire.x,
        wire.v,
        wire.main_term,
        wire.error,
        wire.normalized_error,
        wire.density,
    ];
    let mut outcome = Outcome::Passed;
    if oracle {
        let enumerated = count_oracle(params, cfg.budget)?;
        let agree = enumerated == rec.v;
        if !agree {
            outcome = Outcome::ChecksFailed;
        }
        columns.extend(["oracle", "agreement"]);
        cells.extend([enumerated.to_string(), yes_no(agree)]);
    }
    let mut t = Table::new(&columns);
    t.push(cells);
    t.write(cfg.format, sink.writer())?;
    Ok(outcome)
}

fn cmd_jordan(
    cfg: &RunConfig,
    sink: &mut Sink,
    n: u64,
    r: u32,
    k: u32,
    oracle: bool,
) -> Result<Outcome> {
    let p = TotientParams::new(r, k)?;
    let value = jordan(n, p)?;
    let mut columns = vec!["n", "r", "k", "J"];
    let mut cells = vec![
        n.to_string(),
        r.to_string(),
        k.to_string(),
        value.to_string(),
    ];
    let mut outcome = Outcome::Passed;
    if oracle {
        let enumerated = jordan_oracle(n, p, cfg.budget)?;
        let agree = enumerated == value;
        if !agree {
            outcome = Outcome::ChecksFailed;
        }
        columns.extend(["oracle", "agreement"]);
        cells.extend([enumerated.to_string(), yes_no(agree)]);
    }
    let mut t = Table::new(&columns);
    t.push(cells);
    t.write(cfg.format, sink.writer())?;
    Ok(outcome)
}

fn cmd_partial_sum(cfg: &RunConfig, sink: &mut Sink, x: u64, r: u32, k: u32) -> Result<Outcome> {
    let p = TotientParams::new(r, k)?;
    let table = cfg.table(iroot(x, r))?;
    let direct = partial_sum_direct(x, p)?;
    let expansion = partial_sum_bernoulli(x, p, &table)?;
    let agree = direct == expansion;
    let mut t = Table::new(&["x", "r", "k", "direct", "bernoulli", "agreement"]);
    t.push(vec![
        x.to_string(),
        r.to_string(),
        k.to_string(),
        direct.to_string(),
        expansion.to_string(),
        yes_no(agree),
    ]);
    t.write(cfg.format, sink.writer())?;
    Ok(if agree {
        Outcome::Passed
    } else {
        Outcome::ChecksFailed
    })
}

fn cmd_identity(cfg: &RunConfig, sink: &mut Sink, r: u32, k: u32, x_max: u64) -> Result<Outcome> {
    CountParams::new(r, k, x_max)?;
    let table = cfg.table(iroot(x_max, r))?;
    let mut t = Table::new(&["x", "umbral", "count", "oracle", "verdict"]);
    let mut all_equal = true;
    for x in 0..=x_max {
        let params = CountParams::new(r, k, x)?;
        let fast = rfree_core::lattice::count_fast(params, &table)?;
        match identity_check_with(params, &table, cfg.budget)? {
            IdentityVerdict::Equal => {
                t.push(vec![
                    x.to_string(),
                    fast.to_string(),
                    fast.to_string(),
                    String::new(),
                    "equal".into(),
                ]);
            }
            IdentityVerdict::Mismatch {
                umbral,
                fast,
                oracle,
                combinatorial,
            } => {
                all_equal = false;
                let verdict = match combinatorial {
                    Some(c) => format!("mismatch (combinatorial form: {c})"),
                    None => "mismatch".to_string(),
                };
                t.push(vec![
                    x.to_string(),
                    umbral.to_string(),
                    fast.to_string(),
                    oracle.map(|o| o.to_string()).unwrap_or_default(),
                    verdict,
                ]);
            }
        }
    }
    t.write(cfg.format, sink.writer())?;
    Ok(if all_equal {
        Outcome::Passed
    } else {
        Outcome::ChecksFailed
    })
}

fn cmd_scan(
    cfg: &RunConfig,
    sink: &mut Sink,
    r: u32,
    k: u32,
    x_min: u64,
    x_max: u64,
    step: u64,
) -> Result<Outcome> {
    let points = scan_points(x_min, x_max, step)?;
    cfg.table(CountParams::new(r, k, x_max)?.sieve_bound())?;
    let counter = Counter::new(r, k, x_max, &cfg.tolerance()?)?;
    let records = error_scan_with(&counter, &points, Execution::default())?;
    let places = cfg.places()?;
    let rows: Vec<ScanRow> = records
        .iter()
        .map(|rec| ScanRow::from_record(rec, places))
        .collect();
    match cfg.format {
        Format::Csv => write_csv(&rows, sink.writer())?,
        Format::Json => {
            let wire: Vec<WireRow> = rows.iter().map(WireRow::from).collect();
            serde_json::to_writer_pretty(sink.writer(), &wire)?;
            writeln!(sink.writer())?;
        }
    }
    Ok(Outcome::Passed)
}

fn witness_row(rep: &WitnessReport, places: u32) -> Vec<String> {
    let dec = |q: &BigRational| Decimal::round_rational(q, places).to_string();
    vec![
        rep.x.to_string(),
        rep.r.to_string(),
        rep.k.to_string(),
        rep.cutoff.to_string(),
        rep.finite_part.to_string(),
        dec(&rep.finite_part),
        rep.tail_bound.to_string(),
        rep.upper_bound.to_string(),
        dec(&rep.upper_bound),
        rep.verdict.to_string(),
        rep.reference_bound
            .as_ref()
            .map(ToString::to_string)
            .unwrap_or_default(),
        rep.meets_reference().map(yes_no).unwrap_or_default(),
    ]
}

fn cmd_witness(cfg: &RunConfig, sink: &mut Sink, args: &WitnessArgs) -> Result<Outcome> {
    let places = cfg.places()?;
    let reports: Vec<WitnessReport> = if args.large {
        let k = args.k.context("--large needs --k")?;
        witness_large(args.r, k, args.count)?
            .into_iter()
            .map(|x| lemma_check(&BigUint::from(x), args.r, k, args.cutoff))
            .collect::<Result<_, _>>()?
    } else {
        let x = witness_small(args.r, &BigUint::from(args.m))?;
        vec![lemma_check(&x, args.r, 1, args.cutoff)?]
    };
    let mut t = Table::new(&[
        "x",
        "r",
        "k",
        "cutoff",
        "finite_part",
        "finite_part_decimal",
        "tail_bound",
        "upper_bound",
        "upper_bound_decimal",
        "verdict",
        "reference_bound",
        "meets_reference",
    ]);
    for rep in &reports {
        t.push(witness_row(rep, places));
    }
    t.write(cfg.format, sink.writer())?;
    let all_negative = reports.iter().all(|r| r.verdict == Verdict::Negative);
    Ok(if all_negative {
        Outcome::Passed
    } else {
        Outcome::ChecksFailed
    })
}

fn cmd_zeta(cfg: &RunConfig, sink: &mut Sink, s: u32) -> Result<Outcome> {
    let z = zeta_value(s, &cfg.tolerance()?)?;
    let places = cfg.places()?;
    let mut t = Table::new(&["s", "value", "error_radius", "depth", "corrections"]);
    t.push(vec![
        s.to_string(),
        Decimal::round_rational(&z.value(), places + 5).to_string(),
        Decimal::round_rational(&z.error_radius(), places + 5).to_string(),
        z.depth().to_string(),
        z.corrections().to_string(),
    ]);
    t.write(cfg.format, sink.writer())?;
    Ok(Outcome::Passed)
}

fn cmd_report(
    cfg: &RunConfig,
    sink: &mut Sink,
    input: Option<PathBuf>,
    split: u64,
) -> Result<Outcome> {
    let rows = match &input {
        Some(path) => {
            let f = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
            read_csv(f).with_context(|| format!("cannot parse {}", path.display()))?
        }
        None => {
            let mut buf = Vec::new();
            io::stdin()
                .read_to_end(&mut buf)
                .context("cannot read stdin")?;
            read_csv(buf.as_slice()).context("cannot parse scan from stdin")?
        }
    };
    let samples = rows
        .iter()
        .filter_map(|row| row.normalized_error.as_ref().map(|n| (row.x, n.to_f64())));
    let summary = omega_ratio_report(samples, split)?;
    let mut t = Table::new(&["split", "max_early", "max_late", "ratio"]);
    t.push(vec![
        split.to_string(),
        summary.max_early.to_string(),
        summary.max_late.to_string(),
        summary.ratio.to_string(),
    ]);
    t.write(cfg.format, sink.writer())?;
    Ok(Outcome::Passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Passed) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(err) => {
            // argument errors raised after parsing are still usage errors
            if let Some(Error::InvalidArgument(msg)) = err.downcast_ref::<Error>() {
                eprintln!("usage error: {msg}");
                return ExitCode::from(2);
            }
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
