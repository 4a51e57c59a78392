//! `hecke`: structure-constant tables, invariant checks and root data.
//!
//! Exit status: 0 when everything holds, 1 when a verified invariant fails,
//! 2 for usage errors and unsupported input.

mod job;
mod show;
mod table;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hecke_core::affweyl::ClassMode;
use hecke_core::building::BuildingError;
use hecke_core::coeff::CoeffError;
use hecke_core::spherical::SphericalError;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl From<SphericalError> for CliError {
    fn from(e: SphericalError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<CoeffError> for CliError {
    fn from(e: CoeffError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<BuildingError> for CliError {
    fn from(e: BuildingError) -> Self {
        match e {
            BuildingError::BadParams(m) => CliError::Usage(m),
            e => CliError::Compute(e.to_string()),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// c′ positivity on the grid.
    Positivity,
    /// Symmetric vs Hecke route for c, plus commutativity and star symmetry.
    Routes,
    /// Bernstein relations for every λ in the box and every i.
    Bernstein,
    /// Satake identities for dominant λ on the grid.
    Satake,
    /// P_λ as a polynomial in the fundamental P_{λ_i}.
    Generation,
    /// d′ positivity and Σd = 1 for ℓ(w₁), ℓ(w₂) ≤ --length.
    Hecke,
    /// Building oracle for tree:q0=..,q1=..,r=.. or thin:SYSTEM,r=..
    Building,
    /// positivity, routes, bernstein, satake and generation.
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ShowWhat {
    Classes,
    Rootdata,
    Spherical,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    W,
    Extended,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Output format; json for table, pretty otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Parser, Debug)]
#[command(name = "hecke", version, about = "Exact affine Hecke algebra and spherical function computations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Structure constants c_{λ,μ;ν} by both routes over a grid of dominant coweights.
    Table {
        /// Root system, e.g. A2, C~2, BC1.
        #[arg(required_unless_present = "system_flag")]
        system: Option<String>,
        #[arg(long = "system", conflicts_with = "system")]
        system_flag: Option<String>,
        /// Largest coordinate of λ and μ in the fundamental coweight basis.
        #[arg(long, default_value_t = 1)]
        grid: i32,
        /// Numeric parameters, e.g. q0=2,q1=3. Symbolic when omitted.
        #[arg(long)]
        eval: Option<String>,
        /// Cache directory (default: $HECKE_CACHE_DIR, else no cache).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Write here instead of standard output.
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Run an invariant suite; exit status 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Root system, or a building for the building suite.
        #[arg(required_unless_present = "system_flag")]
        target: Option<String>,
        #[arg(long = "system", conflicts_with = "target")]
        system_flag: Option<String>,
        #[arg(long, default_value_t = 1)]
        grid: i32,
        /// Ball radius for buildings (overrides r= in the target).
        #[arg(long)]
        radius: Option<usize>,
        /// Word length bound for the hecke suite.
        #[arg(long, default_value_t = 3)]
        length: usize,
        /// Root system a building is compared with.
        #[arg(long)]
        against: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Root data, parameter classes or spherical function expansions.
    Show {
        #[arg(value_enum)]
        what: ShowWhat,
        #[arg(required_unless_present = "system_flag")]
        system: Option<String>,
        #[arg(long = "system", conflicts_with = "system")]
        system_flag: Option<String>,
        /// Conjugacy used for parameter classes.
        #[arg(long, value_enum, default_value_t = Mode::Extended)]
        mode: Mode,
        #[arg(long, default_value_t = 1)]
        grid: i32,
        #[command(flatten)]
        common: Common,
    },
}

fn setup_jobs(jobs: Option<usize>) -> Result<(), CliError> {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--jobs: {}", e)))?;
    }
    Ok(())
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {}", p.display(), e))),
        None => {
            let mut o = std::io::stdout().lock();
            o.write_all(text.as_bytes()).map_err(|e| CliError::Usage(e.to_string()))
        }
    }
}

fn csv_string(f: impl FnOnce(&mut Vec<u8>) -> Result<(), CliError>) -> Result<String, CliError> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

fn run_table(
    system: &str,
    grid: i32,
    eval: Option<&str>,
    cache: Option<PathBuf>,
    out: Option<&PathBuf>,
    format: Format,
) -> Result<ExitCode, CliError> {
    if grid < 0 {
        return Err(CliError::Usage("--grid must be nonnegative".into()));
    }
    let rs = job::root_system(system)?;
    let aw = show::affine(system)?;
    let q = eval.map(|e| job::parse_eval(e).and_then(|m| job::class_values(&aw, &m))).transpose()?;
    let spec = job::JobSpec {
        command: "table".into(),
        system: rs.label(),
        parameters: match &q {
            Some(q) => aw.vars(ClassMode::Extended).labels().iter().zip(q).map(|(l, v)| (format!("q{}", l), v.to_string())).collect(),
            None => Default::default(),
        },
        grid,
        radius: None,
    };
    let key = spec.digest();
    let cached = cache.as_deref().and_then(|d| job::cache_read(d, &key)).and_then(|v| {
        serde_json::from_value::<table::Table>(v)
            .map_err(|e| eprintln!("warning: cache entry {} has the wrong shape: {}", key, e))
            .ok()
    });
    let t = match cached {
        Some(t) => t,
        None => {
            let sph = hecke_core::spherical::Spherical::new(rs)?;
            let t = table::build(&sph, grid, q.as_deref())?;
            if let Some(d) = &cache {
                job::cache_write(d, &key, &serde_json::to_value(&t).expect("table serializes"))?;
            }
            t
        }
    };
    let text = match format {
        Format::Json => json(&t),
        Format::Csv => csv_string(|b| table::write_csv(&t, b))?,
        Format::Pretty => table::pretty(&t),
    };
    emit(&text, out)?;
    Ok(if t.routes_agree { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    suite: Suite,
    target: &str,
    grid: i32,
    radius: Option<usize>,
    length: usize,
    against: Option<&str>,
    format: Format,
) -> Result<ExitCode, CliError> {
    if grid < 0 {
        return Err(CliError::Usage("--grid must be nonnegative".into()));
    }
    if against.is_some() && suite != Suite::Building {
        return Err(CliError::Usage("--against applies to the building suite".into()));
    }
    let (name, checks) = match suite {
        Suite::Positivity => ("positivity", verify::positivity(target, grid)?),
        Suite::Routes => ("routes", verify::routes(target, grid)?),
        Suite::Bernstein => ("bernstein", verify::bernstein(target, grid)?),
        Suite::Satake => ("satake", verify::satake(target, grid)?),
        Suite::Generation => ("generation", verify::generation(target, grid)?),
        Suite::Hecke => ("hecke", verify::hecke(target, length)?),
        Suite::Building => {
            let spec = verify::parse_building(target, radius)?;
            let spec = match (spec, radius) {
                (verify::BuildingSpec::Tree { q0, q1, .. }, Some(r)) => verify::BuildingSpec::Tree { q0, q1, radius: r as u32 },
                (verify::BuildingSpec::Thin { system, .. }, Some(r)) => verify::BuildingSpec::Thin { system, radius: r },
                (s, None) => s,
            };
            ("building", verify::building(&spec, against, grid)?)
        }
        Suite::All => {
            let mut c = verify::positivity(target, grid)?;
            c.extend(verify::routes(target, grid)?);
            c.extend(verify::bernstein(target, grid)?);
            c.extend(verify::satake(target, grid)?);
            c.extend(verify::generation(target, grid)?);
            ("all", c)
        }
    };
    let r = verify::report(name, target, checks);
    let text = match format {
        Format::Json => json(&r),
        Format::Csv => csv_string(|b| verify::write_csv(&r, b))?,
        Format::Pretty => verify::pretty(&r),
    };
    emit(&text, None)?;
    Ok(if r.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_show(what: ShowWhat, system: &str, mode: Mode, grid: i32, format: Format) -> Result<ExitCode, CliError> {
    if format == Format::Csv {
        return Err(CliError::Usage("show supports json and pretty output".into()));
    }
    let mode = match mode {
        Mode::W => ClassMode::W,
        Mode::Extended => ClassMode::Extended,
    };
    let text = match what {
        ShowWhat::Classes => {
            let c = show::classes(system, mode)?;
            if format == Format::Json {
                json(&c)
            } else {
                show::classes_pretty(&c)
            }
        }
        ShowWhat::Rootdata => {
            let d = job::root_system(system)?.dump();
            if format == Format::Json {
                json(&d)
            } else {
                show::rootdata_pretty(&d)
            }
        }
        ShowWhat::Spherical => {
            let d = show::spherical(system, grid)?;
            if format == Format::Json {
                json(&d)
            } else {
                show::spherical_pretty(&d)
            }
        }
    };
    emit(&text, None)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let pick = |a: Option<String>, b: Option<String>| a.or(b).expect("clap requires one of them");
    match cli.cmd {
        Cmd::Table { system, system_flag, grid, eval, cache_dir, out, common } => {
            setup_jobs(common.jobs)?;
            let system = pick(system, system_flag);
            let cache = job::cache_dir(cache_dir.as_deref());
            run_table(&system, grid, eval.as_deref(), cache, out.as_ref(), common.format.unwrap_or(Format::Json))
        }
        Cmd::Verify { suite, target, system_flag, grid, radius, length, against, common } => {
            setup_jobs(common.jobs)?;
            let target = pick(target, system_flag);
            run_verify(suite, &target, grid, radius, length, against.as_deref(), common.format.unwrap_or(Format::Pretty))
        }
        Cmd::Show { what, system, system_flag, mode, grid, common } => {
            setup_jobs(common.jobs)?;
            run_show(what, &pick(system, system_flag), mode, grid, common.format.unwrap_or(Format::Pretty))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(2)
        }
        Err(CliError::Compute(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(2)
        }
    }
}
