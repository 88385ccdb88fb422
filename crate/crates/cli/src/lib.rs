//! Command-line front end for confdisk: reads a scene file, runs one
//! analysis and writes a JSON envelope or CSV table.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use confdisk::{Exec, C64};
use serde::Serialize;
use sha2::{Digest, Sha256};

mod commands;
pub mod scene;

pub use scene::SceneSpec;

pub const DEFAULT_SEED: u64 = 0xC0FFEE;
pub const DEFAULT_N: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Radius,
    Map,
    Hmeasure,
    Decompose,
    Energy,
    Equilibrium,
    Wos,
    Zhukovskii,
    Fitness,
    Harmonicity,
    MotionScan,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "confdisk", version, about = "Riemann maps, harmonic measure and holomorphic motions of pointed disks")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long)]
    pub scene: PathBuf,
    /// Motion parameter as `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub t: Option<C64>,
    /// Boundary resolution.
    #[arg(long)]
    pub n: Option<usize>,
    /// Decimal or 0x-prefixed hexadecimal.
    #[arg(long, value_parser = parse_seed)]
    pub seed: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Omit wall-clock timing so reruns are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
}

pub fn parse_complex(s: &str) -> Result<C64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected re,im, got {s:?}"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("{re:?}: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("{im:?}: {e}"))?;
    Ok(C64::new(re, im))
}

pub fn parse_seed(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("{s:?}: {e}"))
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
    #[error("invalid scene: {0}")]
    Scene(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Scene(_) => 3,
        }
    }
}

impl From<confdisk::Error> for CliError {
    fn from(e: confdisk::Error) -> Self {
        match e {
            confdisk::Error::Numeric(_) | confdisk::Error::Unconverged { .. } => CliError::Numeric(e.to_string()),
            other => CliError::Scene(other.to_string()),
        }
    }
}

/// Options after merging flags, scene options and defaults.
#[derive(Debug, Clone, Serialize)]
pub struct Resolved {
    pub n: usize,
    pub seed: u64,
    pub threads: usize,
    pub tol: Option<f64>,
    pub t: C64,
    pub format: Format,
    #[serde(skip)]
    pub exec: Exec,
}

/// What a command produced: results for the envelope and a CSV table.
pub struct Outcome {
    pub results: serde_json::Value,
    pub csv: String,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct Timing {
    elapsed_seconds: f64,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: String,
    scene_digest: String,
    options: &'a Resolved,
    results: &'a serde_json::Value,
    warnings: &'a [String],
    timing: Option<Timing>,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs a command and renders its output in the requested format.
pub fn run(args: &Args) -> Result<String, CliError> {
    let start = Instant::now();
    let text = std::fs::read_to_string(&args.scene)
        .map_err(|e| CliError::Scene(format!("{}: {e}", args.scene.display())))?;
    let scene = SceneSpec::parse(&text)?;
    let threads = match args.threads {
        Some(0) => return Err(CliError::Usage("--threads must be positive".into())),
        Some(k) => k,
        None => std::thread::available_parallelism().map_or(1, |k| k.get()),
    };
    let t = args.t.or(scene.options.t).unwrap_or_default();
    if !(t.norm() < 1.0) {
        return Err(CliError::Usage(format!("--t {t} is not inside the unit disk")));
    }
    if args.n == Some(0) {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let opts = Resolved {
        n: args.n.or(scene.options.n).unwrap_or(DEFAULT_N),
        seed: args.seed.or(scene.options.seed).unwrap_or(DEFAULT_SEED),
        threads,
        tol: args.tol.or(scene.options.tol),
        t,
        format: args.format,
        exec: if threads > 1 { Exec::Parallel } else { Exec::Sequential },
    };
    let outcome = in_pool(threads, || commands::dispatch(args.command, &scene, &opts))??;
    Ok(match args.format {
        Format::Csv => outcome.csv,
        Format::Json => {
            let envelope = Envelope {
                command: args.command.name(),
                scene_digest: hex(&Sha256::digest(text.as_bytes())),
                options: &opts,
                results: &outcome.results,
                warnings: &outcome.warnings,
                timing: (!args.no_timing).then(|| Timing {
                    elapsed_seconds: start.elapsed().as_secs_f64(),
                }),
            };
            let mut s = serde_json::to_string_pretty(&envelope).expect("envelope serializes");
            s.push('\n');
            s
        }
    })
}

#[cfg(feature = "parallel")]
fn in_pool<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

#[cfg(not(feature = "parallel"))]
fn in_pool<R: Send>(_threads: usize, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    Ok(f())
}

/// Runs and writes to `--out` or stdout; returns the process exit code.
pub fn main_with(args: &Args) -> i32 {
    let result = run(args).and_then(|s| match &args.out {
        Some(path) => std::fs::write(path, s).map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{s}");
            Ok(())
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("confdisk: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_parsing() {
        assert_eq!(parse_complex("0.5,-0.25").unwrap(), C64::new(0.5, -0.25));
        assert!(parse_complex("0.5").is_err());
        assert_eq!(parse_seed("0xC0FFEE").unwrap(), 12_648_430);
        assert_eq!(parse_seed("17").unwrap(), 17);
        let a = Args::try_parse_from(["confdisk", "motion-scan", "--scene", "s.json", "--t", "-0.3,0.1", "--no-timing"]).unwrap();
        assert_eq!(a.command, Command::MotionScan);
        assert_eq!(a.t, Some(C64::new(-0.3, 0.1)));
        assert!(Args::try_parse_from(["confdisk", "plot", "--scene", "s.json"]).is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(confdisk::Error::numeric("x")).exit_code(), 2);
        assert_eq!(CliError::from(confdisk::Error::invalid("x")).exit_code(), 3);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
    }
}
