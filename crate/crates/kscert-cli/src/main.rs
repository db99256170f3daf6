//! `kscert`: sampled-disk certification from the command line.
//!
//! Every subcommand writes one JSON report (to `--out` or stdout) and signals
//! its verdict through the exit status: 0 pass, 1 fail, 2 usage or parse
//! error.  Series arguments accept either a JSON file path or a catalog name
//! (optionally prefixed `catalog:`), so every reference example can be
//! reproduced without shipping data files.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use kscert::bounds::{
    fekete_szego_bound, sufficient_condition, verify_coefficient_bounds, FsBoundInputs,
    PhiExpansion,
};
use kscert::classes::{
    build_gk, certify_membership, certify_starlike_order, normalize_gk, ClassParams, MoebiusTarget,
};
use kscert::disk::{DiskGrid, GridConfig};
use kscert::suite::run_suite;
use kscert::synthesis::{bernardi_transform, catalog, random_member, TransformParam};
use kscert::TruncatedSeries;

#[derive(Parser)]
#[command(
    name = "kscert",
    version,
    about = "Sampled-disk certificates for close-to-convex function classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify membership (--f with --g) or a starlike order (--g alone)
    Check(CheckArgs),
    /// Draw a random class member and write the full synthesis record
    Synth(SynthArgs),
    /// Verify per-coefficient bounds for a member
    Bounds(BoundsArgs),
    /// Evaluate the closed-form three-term weighted coefficient estimate
    Fs(FsArgs),
    /// Evaluate the coefficient-sum sufficient criterion
    Sufficient(SufficientArgs),
    /// Run the seeded deterministic property suite
    Suite(SuiteArgs),
    /// Print a catalog series, optionally passed through the integral transform
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct ClassOpts {
    /// Witness symmetry order
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
    #[arg(long, default_value_t = 0.0)]
    mu: f64,
}

impl ClassOpts {
    fn params(&self) -> Result<ClassParams, CliError> {
        Ok(ClassParams::new(self.k, self.lambda, self.mu)?)
    }
}

#[derive(Args)]
struct TargetOpts {
    /// Target numerator coefficient
    #[arg(long = "A", default_value_t = 1.0, allow_negative_numbers = true)]
    a: f64,
    /// Target denominator coefficient
    #[arg(long = "B", default_value_t = -1.0, allow_negative_numbers = true)]
    b: f64,
}

impl TargetOpts {
    fn target(&self) -> Result<MoebiusTarget, CliError> {
        Ok(MoebiusTarget::new(self.a, self.b)?)
    }
}

#[derive(Args)]
struct GridOpts {
    /// Grid configuration JSON file: {"radii": [...], "angles": n}
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Comma-separated circle radii in (0, 1)
    #[arg(long, value_delimiter = ',')]
    grid_radii: Option<Vec<f64>>,
    /// Samples per circle
    #[arg(long)]
    grid_angles: Option<usize>,
}

impl GridOpts {
    fn build(&self) -> Result<DiskGrid, CliError> {
        if let Some(path) = &self.grid {
            if self.grid_radii.is_some() || self.grid_angles.is_some() {
                return Err(CliError::usage(
                    "--grid conflicts with --grid-radii/--grid-angles",
                ));
            }
            let config: GridConfig = serde_json::from_str(&fs::read_to_string(path)?)?;
            return Ok(DiskGrid::from_config(&config, "cli")?);
        }
        if self.grid_radii.is_none() && self.grid_angles.is_none() {
            return Ok(DiskGrid::default_grid());
        }
        let radii = self
            .grid_radii
            .clone()
            .unwrap_or_else(|| DiskGrid::default_grid().radii().to_vec());
        let angles = self.grid_angles.unwrap_or(720);
        Ok(DiskGrid::new(radii, angles, "cli")?)
    }
}

#[derive(Args)]
struct OrderOpt {
    /// Truncation order of every series built by this run
    #[arg(long, default_value_t = 2048, value_parser = clap::value_parser!(u64).range(8..=4096))]
    order: u64,
}

impl OrderOpt {
    fn get(&self) -> usize {
        self.order as usize
    }
}

#[derive(Args)]
struct OutOpt {
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Member series (file or catalog name); omit to certify only the witness
    #[arg(long)]
    f: Option<String>,
    /// Starlike witness series (file or catalog name)
    #[arg(long)]
    g: String,
    /// Starlike order to certify when no member is given
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    #[command(flatten)]
    class: ClassOpts,
    #[command(flatten)]
    target: TargetOpts,
    #[command(flatten)]
    grid: GridOpts,
    #[command(flatten)]
    order: OrderOpt,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    class: ClassOpts,
    #[command(flatten)]
    target: TargetOpts,
    #[command(flatten)]
    order: OrderOpt,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct BoundsArgs {
    /// Synthesis record JSON (as written by `synth`)
    #[arg(long, conflicts_with = "f")]
    member: Option<PathBuf>,
    /// Bare member series (file or catalog name); class flags supply the rest
    #[arg(long)]
    f: Option<String>,
    /// Largest coefficient index to verify
    #[arg(long, default_value_t = 16)]
    nmax: usize,
    #[command(flatten)]
    class: ClassOpts,
    #[command(flatten)]
    target: TargetOpts,
    #[command(flatten)]
    order: OrderOpt,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct FsArgs {
    /// Weight of the squared coefficient in the functional
    #[arg(long, allow_negative_numbers = true)]
    delta: f64,
    /// First coefficient of the positive-real witness
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    d1: f64,
    #[command(flatten)]
    class: ClassOpts,
    #[command(flatten)]
    target: TargetOpts,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct SufficientArgs {
    /// Member series (file or catalog name)
    #[arg(long)]
    f: String,
    /// Starlike witness series (file or catalog name)
    #[arg(long)]
    g: String,
    #[command(flatten)]
    class: ClassOpts,
    #[command(flatten)]
    target: TargetOpts,
    #[command(flatten)]
    order: OrderOpt,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[command(flatten)]
    out: OutOpt,
}

#[derive(Args)]
struct CatalogArgs {
    /// Catalog name, e.g. koebe, gen_koebe(0.5), moebius(1,-1)
    name: String,
    /// Integral-transform parameter applied to the catalog series
    #[arg(long)]
    gamma: Option<f64>,
    #[command(flatten)]
    order: OrderOpt,
    #[command(flatten)]
    out: OutOpt,
}

/// Everything the `synth` command knows about a generated member; `bounds`
/// consumes it without further flags.
#[derive(Serialize, Deserialize)]
struct MemberRecord {
    k: u32,
    lambda: f64,
    mu: f64,
    target_a: f64,
    target_b: f64,
    order: usize,
    seed: u64,
    f: TruncatedSeries,
    p: TruncatedSeries,
    w: TruncatedSeries,
    g: TruncatedSeries,
}

struct CliError(String);

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<kscert::Error> for CliError {
    fn from(e: kscert::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError(e.to_string())
    }
}

fn load_series(source: &str, order: usize) -> Result<TruncatedSeries, CliError> {
    if let Some(name) = source.strip_prefix("catalog:") {
        return Ok(catalog(name, order)?);
    }
    if Path::new(source).exists() {
        return Ok(serde_json::from_str(&fs::read_to_string(source)?)?);
    }
    catalog(source, order).map_err(|_| {
        CliError::usage(format!(
            "{source:?} is neither a readable series file nor a catalog name"
        ))
    })
}

fn emit<T: Serialize>(out: &OutOpt, report: &T) -> Result<(), CliError> {
    let mut json = serde_json::to_string_pretty(report)?;
    json.push('\n');
    match &out.out {
        Some(path) => fs::write(path, json)?,
        None => print!("{json}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Check(args) => check(args),
        Command::Synth(args) => synth(args),
        Command::Bounds(args) => bounds(args),
        Command::Fs(args) => fs_cmd(args),
        Command::Sufficient(args) => sufficient(args),
        Command::Suite(args) => suite_cmd(args),
        Command::Catalog(args) => catalog_cmd(args),
    }
}

fn check(args: CheckArgs) -> Result<bool, CliError> {
    let order = args.order.get();
    let params = args.class.params()?;
    let grid = args.grid.build()?;
    let g = load_series(&args.g, order)?;
    match &args.f {
        Some(fsrc) => {
            let f = load_series(fsrc, order)?;
            let target = args.target.target()?;
            let report = certify_membership(&f, &g, &params, &target, &grid)?;
            emit(&args.out, &report)?;
            Ok(report.passed())
        }
        None => {
            let big = normalize_gk(&build_gk(&g, params.k())?, params.k())?;
            let report = certify_starlike_order(&big, args.alpha, &grid)?;
            emit(&args.out, &report)?;
            Ok(report.passed())
        }
    }
}

fn synth(args: SynthArgs) -> Result<bool, CliError> {
    let order = args.order.get();
    let params = args.class.params()?;
    let target = args.target.target()?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let member = random_member(&mut rng, &params, &target, order)?;
    let record = MemberRecord {
        k: params.k(),
        lambda: params.lambda(),
        mu: params.mu(),
        target_a: target.a(),
        target_b: target.b(),
        order,
        seed: args.seed,
        f: member.f,
        p: member.p,
        w: member.w,
        g: member.g,
    };
    emit(&args.out, &record)?;
    Ok(true)
}

fn bounds(args: BoundsArgs) -> Result<bool, CliError> {
    let (f, params, target) = match (&args.member, &args.f) {
        (Some(path), None) => {
            let record: MemberRecord = serde_json::from_str(&fs::read_to_string(path)?)?;
            let params = ClassParams::new(record.k, record.lambda, record.mu)?;
            let target = MoebiusTarget::new(record.target_a, record.target_b)?;
            (record.f, params, target)
        }
        (None, Some(fsrc)) => {
            let f = load_series(fsrc, args.order.get())?;
            (f, args.class.params()?, args.target.target()?)
        }
        _ => return Err(CliError::usage("bounds needs exactly one of --member or --f")),
    };
    let phi = PhiExpansion::from_target(&target);
    let report = verify_coefficient_bounds(&f, &params, &phi, args.nmax)?;
    emit(&args.out, &report)?;
    Ok(report.pass)
}

fn fs_cmd(args: FsArgs) -> Result<bool, CliError> {
    let params = args.class.params()?;
    let target = args.target.target()?;
    let phi = PhiExpansion::from_target(&target);
    let inputs = FsBoundInputs::new(
        Complex64::new(args.delta, 0.0),
        Complex64::new(args.d1, 0.0),
    )?;
    let report = fekete_szego_bound(&params, &phi, &inputs)?;
    emit(&args.out, &report)?;
    Ok(true)
}

fn sufficient(args: SufficientArgs) -> Result<bool, CliError> {
    let order = args.order.get();
    let params = args.class.params()?;
    let target = args.target.target()?;
    let f = load_series(&args.f, order)?;
    let g = load_series(&args.g, order)?;
    let report = sufficient_condition(&f, &g, &params, &target)?;
    emit(&args.out, &report)?;
    Ok(report.satisfied)
}

fn suite_cmd(args: SuiteArgs) -> Result<bool, CliError> {
    let report = run_suite(args.seed, args.trials);
    emit(&args.out, &report)?;
    Ok(report.all_pass())
}

fn catalog_cmd(args: CatalogArgs) -> Result<bool, CliError> {
    let name = args.name.strip_prefix("catalog:").unwrap_or(&args.name);
    let mut series = catalog(name, args.order.get())
        .map_err(|e| CliError::usage(format!("unknown catalog entry: {e}")))?;
    if let Some(gamma) = args.gamma {
        series = bernardi_transform(&series, TransformParam::new(gamma)?)?;
    }
    emit(&args.out, &series)?;
    Ok(true)
}
