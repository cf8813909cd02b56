//! Batch verification harness: argument and config handling, dispatch, and
//! JSON/CSV report output.
//!
//! Every setting can come from a flat TOML file (`--config`); flags given on
//! the command line win. Reports carry no timestamps, so a fixed seed gives a
//! byte-identical report. Exit status: 0 when every check passes, 1 when any
//! fails, 2 on usage or configuration errors.

pub mod checks;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::classify::{CaseId, FlowRow};
use crate::error::GeoError;
pub use checks::CheckRecord;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Product and complex structure identities, sectional curvatures
    Identities,
    /// Series vs closed-form derivatives of det Q, det Q and trace identities
    Detq,
    /// Case systems, constancy polynomials and their roots
    Cases,
    /// Isoparametric checks of the example hypersurfaces
    Gallery,
    /// H(l), C and principal curvatures along the normal flow of one example
    Flow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Psi,
    Curve,
    Factor,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "prodform-geo",
    version,
    about = "Verification harness for hypersurfaces in products of 2-dimensional space forms"
)]
#[command(allow_negative_numbers = true)]
pub struct Args {
    /// Command to run (may also come from the config file)
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// Flat TOML file with any of the settings below
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_parser = parse_case)]
    pub case: Option<CaseId>,
    #[arg(long)]
    pub samples: Option<i64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides every check tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    /// Grid points per axis on [-1, 1]^3
    #[arg(long)]
    pub grid: Option<i64>,
    /// Flow parameters, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub l: Option<Vec<f64>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Psi parameter c in (0, 1)
    #[arg(long)]
    pub c: Option<f64>,
    /// Curve curvature for the curve and factor families
    #[arg(long)]
    pub k: Option<f64>,
}

fn parse_case(s: &str) -> Result<CaseId, String> {
    s.parse::<CaseId>().map_err(|e| e.to_string())
}

/// Contents of a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    command: Option<Command>,
    case: Option<String>,
    samples: Option<i64>,
    seed: Option<u64>,
    tol: Option<f64>,
    grid: Option<i64>,
    l: Option<Vec<f64>>,
    out: Option<PathBuf>,
    format: Option<Format>,
    family: Option<Family>,
    c: Option<f64>,
    k: Option<f64>,
}

/// A validated run configuration; echoed into every report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub case: Option<CaseId>,
    pub samples: usize,
    pub seed: u64,
    pub tol: Option<f64>,
    pub grid: usize,
    pub l: Vec<f64>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub format: Format,
    pub family: Option<Family>,
    pub c: f64,
    pub k: Option<f64>,
}

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_GRID: usize = 5;
pub const DEFAULT_L: [f64; 4] = [-0.2, -0.1, 0.1, 0.2];
pub const DEFAULT_C: f64 = 0.25;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Geo(#[from] GeoError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_FAIL,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl RunConfig {
    /// Merges the config file (if any) under the flags and validates the result.
    pub fn resolve(args: Args) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
                toml::from_str::<FileConfig>(&text)
                    .map_err(|e| usage(format!("bad config {}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let command = args
            .command
            .or(file.command)
            .ok_or_else(|| usage("no command given (identities, detq, cases, gallery or flow)"))?;
        let case = match (args.case, file.case) {
            (Some(c), _) => Some(c),
            (None, Some(s)) => Some(s.parse::<CaseId>().map_err(|e| usage(e.to_string()))?),
            (None, None) => None,
        };
        let samples = args
            .samples
            .or(file.samples)
            .unwrap_or(DEFAULT_SAMPLES as i64);
        if samples < 1 {
            return Err(usage(format!(
                "--samples must be at least 1, got {samples}"
            )));
        }
        let grid = args.grid.or(file.grid).unwrap_or(DEFAULT_GRID as i64);
        if grid < 1 {
            return Err(usage(format!("--grid must be at least 1, got {grid}")));
        }
        let tol = args.tol.or(file.tol);
        if let Some(t) = tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(usage(format!("--tol must be positive, got {t}")));
            }
        }
        let l = args.l.or(file.l).unwrap_or_else(|| DEFAULT_L.to_vec());
        if l.iter().any(|x| !x.is_finite()) {
            return Err(usage("--l values must be finite"));
        }
        let c = args.c.or(file.c).unwrap_or(DEFAULT_C);
        if !(c > 0.0 && c < 1.0) {
            return Err(usage(format!("--c must lie in (0, 1), got {c}")));
        }
        let k = args.k.or(file.k);
        if let Some(k) = k {
            if !k.is_finite() {
                return Err(usage("--k must be finite"));
            }
        }
        Ok(Self {
            command,
            case,
            samples: samples as usize,
            seed: args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            tol,
            grid: grid as usize,
            l,
            out: args.out.or(file.out),
            format: args.format.or(file.format).unwrap_or_default(),
            family: args.family.or(file.family),
            c,
            k,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub seed: u64,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<FlowRow>>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }
}

pub fn run(cfg: &RunConfig) -> Result<VerificationReport, CliError> {
    let (checks, rows) = match cfg.command {
        Command::Identities => (checks::identities(cfg)?, None),
        Command::Detq => (checks::detq(cfg)?, None),
        Command::Cases => (checks::cases(cfg)?, None),
        Command::Gallery => (checks::gallery(cfg)?, None),
        Command::Flow => {
            let (checks, rep) = checks::flow(cfg)?;
            (checks, Some(rep.rows))
        }
    };
    let passed = checks.iter().filter(|c| c.pass).count();
    Ok(VerificationReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: cfg.seed,
        config: cfg.clone(),
        summary: Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        },
        checks,
        rows,
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// 17 significant digits.
fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

pub fn render(report: &VerificationReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)
                .map_err(|e| usage(format!("serialization: {e}")))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut s = String::new();
            if let Some(rows) = &report.rows {
                s.push_str("u1,u2,u3,l,H,C,k1,k2,k3\n");
                for r in rows {
                    let cols = [
                        r.u[0], r.u[1], r.u[2], r.l, r.h, r.c, r.k[0], r.k[1], r.k[2],
                    ]
                    .map(num);
                    s.push_str(&cols.join(","));
                    s.push('\n');
                }
            } else {
                s.push_str("name,anchor,samples,max_abs_err,max_rel_err,tol,pass\n");
                for c in &report.checks {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{},{}",
                        csv_field(&c.name),
                        csv_field(&c.anchor),
                        c.samples,
                        num(c.max_abs_err),
                        num(c.max_rel_err),
                        num(c.tol),
                        c.pass
                    );
                }
            }
            Ok(s)
        }
    }
}

/// Writes to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

/// Parses `argv`, runs, writes the report and returns the exit status.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
        }
    };
    match execute(args) {
        Ok(pass) => {
            if pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("prodform-geo: {e}");
            e.exit_code()
        }
    }
}

fn execute(args: Args) -> Result<bool, CliError> {
    let cfg = RunConfig::resolve(args)?;
    let report = run(&cfg)?;
    let text = render(&report, cfg.format)?;
    match &cfg.out {
        Some(path) => write_atomic(path, &text)?,
        None => print!("{text}"),
    }
    for c in report.checks.iter().filter(|c| !c.pass) {
        eprintln!(
            "FAIL {} (max abs {:e}, max rel {:e}, tol {:e})",
            c.name, c.max_abs_err, c.max_rel_err, c.tol
        );
    }
    Ok(report.all_pass())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(argv: &[&str]) -> Result<RunConfig, CliError> {
        let mut full = vec!["prodform-geo"];
        full.extend_from_slice(argv);
        RunConfig::resolve(Args::try_parse_from(full).unwrap())
    }

    #[test]
    fn defaults() {
        let c = cfg(&["detq"]).unwrap();
        assert_eq!(
            (c.samples, c.seed, c.grid, c.c),
            (DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_GRID, DEFAULT_C)
        );
        assert_eq!(c.l, DEFAULT_L.to_vec());
        assert_eq!(c.format, Format::Json);
    }

    #[test]
    fn negative_flow_parameters_parse() {
        let c = cfg(&["flow", "--l", "-0.3,0.15", "--k", "-2"]).unwrap();
        assert_eq!(c.l, vec![-0.3, 0.15]);
        assert_eq!(c.k, Some(-2.0));
    }

    #[test]
    fn usage_errors() {
        for argv in [
            &["identities", "--samples", "0"][..],
            &["gallery", "--grid", "0"],
            &["gallery", "--c", "1.5"],
            &["cases", "--tol", "-1"],
            &[],
        ] {
            assert!(matches!(cfg(argv), Err(CliError::Usage(_))), "{argv:?}");
        }
    }

    #[test]
    fn config_file_is_overridden_by_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        fs::write(
            &path,
            "command = \"cases\"\ncase = \"h2r2\"\nsamples = 12\nseed = 5\nl = [0.05]\n",
        )
        .unwrap();
        let p = path.to_str().unwrap();
        let c = cfg(&["--config", p, "--seed", "9"]).unwrap();
        assert_eq!(
            (c.command, c.case, c.samples, c.seed),
            (Command::Cases, Some(CaseId::H2xR2), 12, 9)
        );
        assert_eq!(c.l, vec![0.05]);

        fs::write(&path, "sample = 3\n").unwrap();
        assert!(matches!(
            cfg(&["detq", "--config", p]),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn csv_quoting_and_digits() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(f64::NAN), "NaN");
    }

    #[test]
    fn atomic_write_replaces_target() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        write_atomic(&path, "one").unwrap();
        write_atomic(&path, "two").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "two");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
