//! `mvlab`: exact Masur–Veech volumes and related quantities from the command line.

mod output;
mod values;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use mvlab::agn::{agn, build_table, load_table, save_table, Method};
use mvlab::asymptotics::{compare_report, Target, DEFAULT_GMAX, DEFAULT_ORDER};
use mvlab::exact::DEFAULT_PRECISION;
use mvlab::genus::coeffs_c;
use mvlab::volumes::{sv_constant, volume};

use output::{render, Format, Render};
use values::{fraction, AgnOut, AsymOut, AsymRow, CacheFile, CacheOut, GenusOut, PiOut, TableOut};

const CACHE_ENV: &str = "MVLAB_CACHE";

#[derive(Parser)]
#[command(
    name = "mvlab",
    version,
    about = "Exact Masur-Veech volumes of principal strata Q_{g,n}"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "plain")]
    format: Format,

    /// Directory for persisted tables (default: $MVLAB_CACHE, then the platform data directory).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Alt,
    Series,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Alt => Method::Alternative,
            MethodArg::Series => Method::Series,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Vol,
    Sv,
}

#[derive(Subcommand)]
enum Command {
    /// Print a_{g,n}.
    Agn {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "direct")]
        method: MethodArg,
    },
    /// Build a table of a_{g,n} and save it.
    Table {
        #[arg(long)]
        gmax: usize,
        #[arg(long)]
        nmax: usize,
        /// Output file (default: a file in the cache directory).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "direct")]
        method: MethodArg,
    },
    /// Print Vol Q_{g,n}.
    Volume {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        /// Also print a decimal approximation at this many bits.
        #[arg(long, value_name = "BITS", num_args = 0..=1, default_missing_value = "0")]
        numeric: Option<u32>,
    },
    /// Print the area Siegel-Veech constant of Q_{g,n}.
    Sv {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_name = "BITS", num_args = 0..=1, default_missing_value = "0")]
        numeric: Option<u32>,
    },
    /// Print the coefficients C_{g,j}, j = 0..g.
    Genus {
        #[arg(long)]
        g: usize,
    },
    /// Run a verification suite; exits nonzero on any failure.
    Verify {
        #[arg(long, value_enum)]
        suite: verify::Suite,
        #[arg(long)]
        gmax: Option<usize>,
        /// Largest n (or x-power for funceq) checked.
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Extrapolate large-genus coefficients and compare with the published ones.
    Asym {
        #[arg(long, value_enum, default_value = "vol")]
        target: TargetArg,
        /// Values of n (repeat or separate with commas).
        #[arg(long, value_delimiter = ',', default_value = "0")]
        n: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_GMAX)]
        gmax: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Inspect or clear the table cache.
    Cache {
        /// Cache directory (overrides --cache-dir).
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long)]
        clear: bool,
    },
}

fn cache_dir(flag: Option<PathBuf>) -> anyhow::Result<PathBuf> {
    if let Some(dir) = flag {
        return Ok(dir);
    }
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
        return Ok(PathBuf::from(dir));
    }
    dirs::data_dir()
        .map(|d| d.join("mvlab"))
        .context("no cache directory: pass --cache-dir or set MVLAB_CACHE")
}

fn is_table_file(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "tsv")
}

fn cache(dir: PathBuf, clear: bool) -> anyhow::Result<CacheOut> {
    let mut files = Vec::new();
    let mut removed = 0;
    if dir.exists() {
        let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
            .with_context(|| format!("cannot read cache directory {}", dir.display()))?
            .map(|e| e.map(|e| e.path()))
            .collect::<Result<_, _>>()?;
        paths.sort();
        for path in paths.into_iter().filter(|p| is_table_file(p)) {
            let name = path
                .file_name()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            if clear {
                std::fs::remove_file(&path)?;
                removed += 1;
            } else {
                let table =
                    load_table(&path).with_context(|| format!("unreadable cache file {name}"))?;
                files.push(CacheFile {
                    entries: table.len(),
                    name,
                });
            }
        }
    }
    Ok(CacheOut {
        dir: dir.display().to_string(),
        files,
        removed,
    })
}

fn asym(
    target: TargetArg,
    ns: &[usize],
    gmax: usize,
    order: usize,
    precision: u32,
) -> anyhow::Result<AsymOut> {
    let target = match target {
        TargetArg::Vol => Target::Volume,
        TargetArg::Sv => Target::SiegelVeech,
    };
    let report = compare_report(ns, target, gmax, order, precision)?;
    let digits = values::digits_for(precision).min(20);
    let cases = report
        .rows
        .iter()
        .map(|r| AsymRow {
            error: r.error.to_sci_string(2),
            estimate: r.estimate.to_sci_string(digits),
            k: r.k,
            n: r.n,
            paper: r.paper.to_sci_string(digits),
            pass: r.pass,
            relative_deviation: format!("{:.2e}", r.relative_deviation),
            tolerance: r.tolerance.to_string(),
        })
        .collect();
    Ok(AsymOut {
        cases,
        gmax,
        order,
        pass: report.pass(),
        precision,
        target: target.to_string(),
        widened: report.widened,
    })
}

fn emit(format: Format, value: &impl Render) -> anyhow::Result<()> {
    println!("{}", render(format, value)?);
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let format = cli.format;
    match cli.command {
        Command::Agn { g, n, method } => {
            let value = agn(g, n, method.into())?;
            emit(
                format,
                &AgnOut {
                    g,
                    n,
                    value: fraction(&value),
                },
            )?;
        }
        Command::Table {
            gmax,
            nmax,
            out,
            method,
        } => {
            let method: Method = method.into();
            let path = match out {
                Some(p) => p,
                None => {
                    let dir = cache_dir(cli.cache_dir)?;
                    std::fs::create_dir_all(&dir)
                        .with_context(|| format!("cannot create {}", dir.display()))?;
                    dir.join(format!("agn-{gmax}-{nmax}.tsv"))
                }
            };
            let table = build_table(gmax, nmax, method)?;
            save_table(&table, &path)
                .with_context(|| format!("cannot write {}", path.display()))?;
            emit(
                format,
                &TableOut {
                    entries: table.len(),
                    gmax,
                    method: method.to_string(),
                    nmax,
                    path: path.display().to_string(),
                },
            )?;
        }
        Command::Volume { g, n, numeric } => {
            emit(format, &PiOut::new(g, n, &volume(g, n)?, numeric))?
        }
        Command::Sv { g, n, numeric } => {
            emit(format, &PiOut::new(g, n, &sv_constant(g, n)?, numeric))?
        }
        Command::Genus { g } => {
            let c = coeffs_c(g)?;
            emit(
                format,
                &GenusOut {
                    c: c.c.iter().map(fraction).collect(),
                    g,
                },
            )?;
        }
        Command::Verify { suite, gmax, nmax } => {
            let out = verify::run(suite, gmax, nmax)?;
            emit(format, &out)?;
            return Ok(out.pass);
        }
        Command::Asym {
            target,
            n,
            gmax,
            order,
            precision,
        } => {
            let out = asym(target, &n, gmax, order, precision)?;
            emit(format, &out)?;
            return Ok(out.pass);
        }
        Command::Cache { dir, clear } => {
            let dir = cache_dir(dir.or(cli.cache_dir))?;
            emit(format, &cache(dir, clear)?)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
