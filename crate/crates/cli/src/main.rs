use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use harmap::criteria::{convex_criterion, gh0_margin, ph0_margin, SamplingConfig};
use harmap::expr::parse_series;
use harmap::figures::{render, RenderSpec};
use harmap::harmonic::{catalog, catalog_entry, shear, ShearMode, ShearSpec, CATALOG};
use harmap::radii::{
    circle_min, convexity_radius, dcp_radius, default_t_grid, local_univalence_radius, RadiusSearch,
};
use harmap::verify::{run_suite, CHECK_IDS};
use harmap::HarmonicMap;
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "harmap",
    version,
    about = "Harmonic mapping sections: criteria, radii and figures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the built-in map catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Estimate a radius by bisection.
    Radius(RadiusArgs),
    /// Minimum of a pointwise criterion on one circle.
    Scan(ScanArgs),
    /// Run the reference check suite and write a JSON report.
    Verify(VerifyArgs),
    /// Render disk and annulus images as SVG.
    Plot(PlotArgs),
    /// Harmonic convolution of two maps, written as a map spec.
    Convolve(ConvolveArgs),
    /// Shear construction from a target and a dilatation.
    Shear(ShearArgs),
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show {
        name: String,
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
}

#[derive(Args)]
struct MapRef {
    /// Catalog name, e.g. `f0` or `example1(0.8,0)`.
    #[arg(long, conflicts_with = "map_file")]
    map: Option<String>,
    /// JSON map spec `{"h": [[re,im],...], "g": [...], "class": "H0"}`.
    #[arg(long)]
    map_file: Option<PathBuf>,
    /// Truncation degree for catalog maps.
    #[arg(long, default_value_t = 64)]
    degree: usize,
    /// Replace the map by its section s_{p,q}.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    section: Option<Vec<usize>>,
}

#[derive(Args)]
struct Sampling {
    /// Angular samples per circle (overrides HARMAP_NTHETA).
    #[arg(long)]
    n_theta: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RadiusCriterion {
    Convex,
    Localuniv,
    /// DCP radius of the analytic part of the map.
    Dcp,
}

#[derive(Args)]
struct RadiusArgs {
    #[command(flatten)]
    map: MapRef,
    #[arg(long, value_enum)]
    criterion: RadiusCriterion,
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    #[arg(long, default_value_t = 1e-3)]
    lo0: f64,
    #[arg(long, default_value_t = 0.999)]
    hi0: f64,
    #[command(flatten)]
    sampling: Sampling,
    /// Also write the estimate to this file.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanCriterion {
    Convex,
    Localuniv,
    Ph0,
    Gh0,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    map: MapRef,
    #[arg(long, value_enum)]
    criterion: ScanCriterion,
    #[arg(long)]
    r: f64,
    /// α for `ph0`, β for `gh0`.
    #[arg(long, default_value_t = 0.0)]
    order: f64,
    #[command(flatten)]
    sampling: Sampling,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    #[value(alias = "paper")]
    Reference,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "reference")]
    suite: Suite,
    /// Report path; defaults to reports/verify-<unix time>.json.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run only these check ids.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CHECK_IDS))]
    only: Vec<String>,
    #[command(flatten)]
    sampling: Sampling,
}

#[derive(Args)]
struct PlotArgs {
    #[command(flatten)]
    map: MapRef,
    /// Semicolon-separated `r_inner,r_outer` pairs.
    #[arg(long, default_value = "0,0.25;0.25,0.3333;0.3333,0.5")]
    bands: String,
    #[arg(long, default_value_t = 8)]
    n_circles: usize,
    #[arg(long, default_value_t = 24)]
    n_rays: usize,
    #[arg(long, default_value_t = 256)]
    samples: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ConvolveArgs {
    #[arg(long, conflicts_with = "a_file", required_unless_present = "a_file")]
    a: Option<String>,
    #[arg(long)]
    a_file: Option<PathBuf>,
    #[arg(long, conflicts_with = "b_file", required_unless_present = "b_file")]
    b: Option<String>,
    #[arg(long)]
    b_file: Option<PathBuf>,
    #[arg(long, default_value_t = 64)]
    degree: usize,
    /// Output map spec; printed to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sum,
    Diff,
}

#[derive(Args)]
struct ShearArgs {
    /// Rational expression in z for h + g (sum) or h - g (diff).
    #[arg(long)]
    target: String,
    /// Rational expression in z for the dilatation.
    #[arg(long, allow_hyphen_values = true)]
    dilatation: String,
    #[arg(long, value_enum, default_value = "sum")]
    mode: Mode,
    #[arg(long, default_value_t = 64)]
    degree: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] harmap::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(harmap::Error::BadBracket { .. })
            | CliError::Lib(harmap::Error::InconsistentBracket { .. }) => 3,
            CliError::Io { .. } => 4,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_map(path: &Path) -> CliResult<HarmonicMap> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.into(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.into(),
            source,
        })?;
    }
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn resolve(name: Option<&str>, file: Option<&Path>, degree: usize) -> CliResult<HarmonicMap> {
    match (name, file) {
        (Some(name), _) => Ok(catalog(name, degree)?),
        (None, Some(path)) => read_map(path),
        (None, None) => Err(CliError::Usage("give --map or --map-file".into())),
    }
}

impl MapRef {
    fn load(&self) -> CliResult<HarmonicMap> {
        let f = resolve(self.map.as_deref(), self.map_file.as_deref(), self.degree)?;
        match self.section.as_deref() {
            Some(&[p, q]) => Ok(f.section(p, q)?),
            _ => Ok(f),
        }
    }
}

impl Sampling {
    fn config(&self) -> CliResult<SamplingConfig> {
        let mut cfg = SamplingConfig::default().with_env_overrides()?;
        if let Some(n) = self.n_theta {
            cfg.n_theta = n;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn to_json<T: serde::Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize") + "\n"
}

fn cmd_catalog(action: CatalogAction) -> CliResult<()> {
    match action {
        CatalogAction::List => {
            for info in CATALOG {
                println!("{:<18} {}", info.name, info.provenance);
            }
        }
        CatalogAction::Show { name, degree } => {
            let entry = catalog_entry(&name, degree)?;
            let body = serde_json::json!({
                "name": entry.name,
                "provenance": entry.provenance,
                "map": entry.map,
            });
            print!("{}", to_json(&body));
        }
    }
    Ok(())
}

fn cmd_radius(args: RadiusArgs) -> CliResult<()> {
    let f = args.map.load()?;
    let cfg = args.sampling.config()?;
    let search = RadiusSearch {
        lo0: args.lo0,
        hi0: args.hi0,
        tol: args.tol,
        ..Default::default()
    };
    let est = match args.criterion {
        RadiusCriterion::Convex => convexity_radius(&f, &cfg, &search)?,
        RadiusCriterion::Localuniv => local_univalence_radius(&f, &cfg, &search)?,
        RadiusCriterion::Dcp => {
            let kernel = f.h();
            dcp_radius(kernel, &default_t_grid(kernel.degree()), &cfg, &search)?
        }
    };
    let text = to_json(&est);
    print!("{text}");
    if let Some(path) = &args.json {
        write_file(path, &text)?;
    }
    Ok(())
}

fn cmd_scan(args: ScanArgs) -> CliResult<()> {
    let f = args.map.load()?;
    let cfg = args.sampling.config()?;
    if !(args.r > 0.0 && args.r < 1.0) {
        return Err(CliError::Usage("--r must lie in (0, 1)".into()));
    }
    let order = args.order;
    let report = match args.criterion {
        ScanCriterion::Convex => circle_min("convex", |z| convex_criterion(&f, z), args.r, &cfg),
        ScanCriterion::Localuniv => circle_min(
            "localuniv",
            |z| Ok(1.0 - f.dilatation(z)?.norm()),
            args.r,
            &cfg,
        ),
        ScanCriterion::Ph0 => circle_min("ph0", |z| Ok(ph0_margin(&f, order, z)), args.r, &cfg),
        ScanCriterion::Gh0 => circle_min("gh0", |z| Ok(gh0_margin(&f, order, z)), args.r, &cfg),
    };
    print!("{}", to_json(&report));
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> CliResult<bool> {
    let _ = args.suite;
    let cfg = args.sampling.config()?;
    let report = run_suite(&cfg, &args.only)?;
    for c in &report.checks {
        println!(
            "{:<14} {}  ({:.0} ms)",
            c.id,
            if c.pass { "PASS" } else { "FAIL" },
            c.wall_time_ms
        );
    }
    let path = args.out.unwrap_or_else(|| {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        PathBuf::from("reports").join(format!("verify-{secs}.json"))
    });
    write_file(&path, &to_json(&report))?;
    println!("report written to {}", path.display());
    Ok(report.pass)
}

fn parse_bands(src: &str) -> CliResult<Vec<(f64, f64)>> {
    src.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let nums: Vec<f64> = pair
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::Usage(format!("bad band `{pair}`")))?;
            match nums[..] {
                [a, b] => Ok((a, b)),
                _ => Err(CliError::Usage(format!("bad band `{pair}`"))),
            }
        })
        .collect()
}

fn cmd_plot(args: PlotArgs) -> CliResult<()> {
    let f = args.map.load()?;
    let mut spec = RenderSpec::with_defaults(f, &parse_bands(&args.bands)?);
    spec.n_circles = args.n_circles;
    spec.n_rays = args.n_rays;
    spec.samples_per_curve = args.samples;
    let svg = render(&spec)?;
    write_file(&args.out, &svg)
}

fn emit_map(f: &HarmonicMap, out: Option<&Path>) -> CliResult<()> {
    let text = to_json(f);
    match out {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_convolve(args: ConvolveArgs) -> CliResult<()> {
    let a = resolve(args.a.as_deref(), args.a_file.as_deref(), args.degree)?;
    let b = resolve(args.b.as_deref(), args.b_file.as_deref(), args.degree)?;
    emit_map(&a.convolve(&b), args.out.as_deref())
}

fn cmd_shear(args: ShearArgs) -> CliResult<()> {
    let target = parse_series(&args.target, args.degree)?;
    let dilatation = parse_series(&args.dilatation, args.degree)?;
    let mode = match args.mode {
        Mode::Sum => ShearMode::Sum,
        Mode::Diff => ShearMode::Difference,
    };
    let f = shear(&ShearSpec::new(target, dilatation, mode)?)?;
    emit_map(&f, args.out.as_deref())
}

fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Catalog { action } => cmd_catalog(action)?,
        Command::Radius(a) => cmd_radius(a)?,
        Command::Scan(a) => cmd_scan(a)?,
        Command::Verify(a) => return cmd_verify(a),
        Command::Plot(a) => cmd_plot(a)?,
        Command::Convolve(a) => cmd_convolve(a)?,
        Command::Shear(a) => cmd_shear(a)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
