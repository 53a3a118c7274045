use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use toric_mld::arith::{self, Rat};
use toric_mld::error::{Result, ToricError};
use toric_mld::explorer::{self, Format, MldRecord, Window};
use toric_mld::io::ConeSpec;
use toric_mld::reports::{self, AutRequest, PairQuery, QuotientRequest};

#[derive(Parser)]
#[command(name = "explorer", version, about = "Minimal log discrepancies of toric and cyclic quotient singularities")]
struct Cli {
    /// JSON file whose keys supply defaults for the subcommand flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Ceiling on sweep bounds and group closures.
    #[arg(long, global = true, env = "TORIC_MLD_CAP")]
    cap: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// mld and witness of a cone pair.
    Mld(PairInput),
    /// Cartier index of K + B.
    Index(PairInput),
    /// Class group and Cox grading.
    Cox(PairInput),
    /// Log quotient by a finite torus subgroup.
    Quotient(PairInput),
    /// Fan automorphisms and the Jordan report of an outer-toric group.
    Aut(PairInput),
    /// mld spectrum of cyclic quotients in a window.
    Sweep(SweepArgs),
    /// Cartier indices per mld window.
    IndexTable(SweepArgs),
    /// Accumulation candidates matched against lower-dimensional pairs.
    Accumulate(SweepArgs),
}

#[derive(Args)]
struct PairInput {
    /// JSON input; `-` or absent reads stdin.
    input: Option<PathBuf>,
}

#[derive(Args, Default, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
struct SweepArgs {
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    #[serde(deserialize_with = "number_or_string")]
    rmax: Option<String>,
    /// Smaller sweep bound for stabilization checks; default rmax/5.
    #[arg(long)]
    #[serde(deserialize_with = "number_or_string")]
    r1: Option<String>,
    /// `lo:hi` (open) or brackets like `[1/2,1)`; repeatable for index-table.
    #[arg(long)]
    #[serde(deserialize_with = "one_or_many")]
    window: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the records, as csv or json by extension.
    #[arg(long)]
    records: Option<PathBuf>,
    #[arg(long)]
    no_dedupe: bool,
    /// Recheck every record through the general lattice path.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    #[serde(deserialize_with = "number_or_string")]
    resolution: Option<String>,
    #[arg(long)]
    #[serde(deserialize_with = "number_or_string")]
    denominator_cap: Option<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(u64),
    Str(String),
}

fn number_or_string<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Option<String>, D::Error> {
    Ok(Option::<Scalar>::deserialize(d)?.map(|v| match v {
        Scalar::Int(n) => n.to_string(),
        Scalar::Str(s) => s,
    }))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(String),
    Many(Vec<String>),
}

fn one_or_many<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<String>, D::Error> {
    Ok(match OneOrMany::deserialize(d)? {
        OneOrMany::One(s) => vec![s],
        OneOrMany::Many(v) => v,
    })
}

impl SweepArgs {
    fn merge(mut self, config: SweepArgs) -> SweepArgs {
        self.dim = self.dim.or(config.dim);
        self.rmax = self.rmax.or(config.rmax);
        self.r1 = self.r1.or(config.r1);
        if self.window.is_empty() {
            self.window = config.window;
        }
        self.out = self.out.or(config.out);
        self.records = self.records.or(config.records);
        self.no_dedupe |= config.no_dedupe;
        self.verify |= config.verify;
        self.resolution = self.resolution.or(config.resolution);
        self.denominator_cap = self.denominator_cap.or(config.denominator_cap);
        self
    }
}

/// Integer flags go through the rational parser, so `1000/2` reads as 500.
fn parse_count(s: &str) -> Result<u64> {
    let q = arith::parse_rat(s)?;
    if !q.is_integer() || q < Rat::from_integer(0.into()) {
        return Err(ToricError::Parse(format!("expected a non-negative integer, got {s}")));
    }
    arith::to_i64(&q.to_integer()).map(|x| x as u64).ok_or_else(|| ToricError::Parse(format!("{s} is too large")))
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => text = fs::read_to_string(p)?,
        _ => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn write_output(path: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut f = io::BufWriter::new(fs::File::create(p)?);
            body(&mut f)?;
            f.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock)?;
        }
    }
    Ok(())
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    write_output(None, |w| explorer::emit_json(value, w))
}

const CLOSURE_CAP: usize = 10_000;

struct Sweep {
    dim: usize,
    rmax: u64,
    r1: u64,
    records: Vec<MldRecord>,
}

fn run_sweep(args: &SweepArgs, cap: u64, default_dim: usize, default_rmax: u64) -> Result<Sweep> {
    let dim = args.dim.unwrap_or(default_dim);
    let rmax = args.rmax.as_deref().map(parse_count).transpose()?.unwrap_or(default_rmax);
    let r1 = args.r1.as_deref().map(parse_count).transpose()?.unwrap_or((rmax / 5).max(1));
    let dedupe = !args.no_dedupe;
    let records: Vec<MldRecord> = explorer::enumerate_cyclic(dim, rmax, None, dedupe, cap)?.collect();
    if args.verify {
        for rec in &records {
            rec.verify()?;
        }
    }
    if let Some(path) = &args.records {
        let format = match path.extension().and_then(|e| e.to_str()) {
            Some(ext) => ext.parse()?,
            None => Format::Csv,
        };
        write_output(Some(path), |w| explorer::emit_records(&records, format, w))?;
    }
    Ok(Sweep { dim, rmax, r1, records })
}

fn windows(args: &SweepArgs) -> Result<Vec<Window>> {
    args.window.iter().map(|w| w.parse()).collect()
}

fn run(cli: Cli) -> Result<()> {
    let (config, config_cap): (SweepArgs, Option<u64>) = match &cli.config {
        Some(p) => {
            let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(p)?)?;
            let cap = value.get("cap").and_then(serde_json::Value::as_u64);
            (serde_json::from_value(value)?, cap)
        }
        None => (SweepArgs::default(), None),
    };
    let user_cap = cli.cap.or(config_cap);
    let cap = user_cap.unwrap_or(explorer::DEFAULT_CAP);
    let closure_cap = user_cap.map_or(CLOSURE_CAP, |c| c as usize);
    match cli.command {
        Command::Mld(input) => pair_command(PairQuery::Mld, &input),
        Command::Index(input) => pair_command(PairQuery::Index, &input),
        Command::Cox(input) => pair_command(PairQuery::Cox, &input),
        Command::Quotient(input) => {
            let request = QuotientRequest::from_json(&read_input(&input.input)?)?;
            print_json(&reports::quotient_report(&request)?)
        }
        Command::Aut(input) => {
            let request = AutRequest::from_json(&read_input(&input.input)?)?;
            print_json(&reports::aut_report(&request, closure_cap)?)
        }
        Command::Sweep(args) => {
            let args = args.merge(config);
            let sweep = run_sweep(&args, cap, 2, 100)?;
            let window = match windows(&args)?.into_iter().next() {
                Some(w) => w,
                None => Window::default_for(sweep.dim),
            };
            let report = explorer::spectrum(&sweep.records, &window, sweep.r1, sweep.rmax);
            write_output(args.out.as_deref(), |w| explorer::emit_json(&report, w))
        }
        Command::IndexTable(args) => {
            let args = args.merge(config);
            let sweep = run_sweep(&args, cap, 2, 50)?;
            let mut ws = windows(&args)?;
            if ws.is_empty() {
                let r = sweep.rmax.max(1) as i64;
                ws = vec![
                    Window { lo: arith::rat(0, 1), lo_closed: false, hi: Some(arith::rat(1, r)), hi_closed: true },
                    Window::default_for(sweep.dim),
                    Window::half_open(arith::rat(1, 2), arith::rat(1, 1)),
                    Window::closed(arith::rat(1, 1), arith::rat(1, 1)),
                    Window::above(arith::rat(1, 1)),
                ];
            }
            let table = explorer::index_table(&sweep.records, &ws, sweep.r1, sweep.rmax);
            write_output(args.out.as_deref(), |w| explorer::emit_json(&table, w))
        }
        Command::Accumulate(args) => {
            let args = args.merge(config);
            let sweep = run_sweep(&args, cap, 3, 40)?;
            let resolution = match &args.resolution {
                Some(s) => arith::parse_rat(s)?,
                None => arith::rat(1, 20),
            };
            let den_cap = args.denominator_cap.as_deref().map(parse_count).transpose()?.unwrap_or(6);
            let report = explorer::accumulation_scan(&sweep.records, sweep.dim, &resolution, den_cap as i64)?;
            write_output(args.out.as_deref(), |w| explorer::emit_json(&report, w))
        }
    }
}

fn pair_command(query: PairQuery, input: &PairInput) -> Result<()> {
    let spec = ConeSpec::from_json(&read_input(&input.input)?)?;
    print_json(&reports::pair_report(&spec.pair()?, query)?)
}

fn exit_code(e: &ToricError) -> u8 {
    match e {
        ToricError::Verification(_) => 2,
        ToricError::CapExceeded { .. } | ToricError::OrderCapExceeded { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
