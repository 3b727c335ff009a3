//! The `s2` command line: expression expansion, verification suites, exports.

pub mod config;
pub mod expr;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::error::{Error, Result};
use crate::honda::{honda_fgl, MAX_DEGREE};
use crate::quotient::cache_dir_from_env;
use crate::resolution::{DualityComplex, ThetaExport};

pub use config::{Config, Overrides};
pub use expr::{expand, parse_expr, Expr};
pub use report::{CheckRecord, Outcome, Report, Status, Summary};
pub use suites::{verify, SUITES};

#[derive(Debug, Parser)]
#[command(name = "s2", version, about = "Exact computations in the height-two Morava stabilizer group at p = 2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the S-adic digits of an expression.
    Expand {
        expr: String,
        #[arg(long, default_value_t = 16)]
        s_digits: u32,
    },
    /// Run a verification suite and emit a JSON-lines report.
    Verify {
        /// congruences, lie, subgroups, quotients, theta, duality, n1, honda or all
        suite: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// TOML or JSON file with run parameters; flags take precedence.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Build Theta and export it with the differentials as JSON.
    Theta {
        #[arg(long, default_value_t = 8)]
        level: u32,
        #[arg(long, default_value_t = 3)]
        coeff_bits: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an element conjugating G24 to its pi-conjugate at a finite level.
    Conjsearch {
        #[arg(long, default_value_t = 6)]
        level: u32,
    },
    /// Dump the mod-2 Honda formal group law up to a total degree.
    Fgl {
        #[arg(long, default_value_t = 64)]
        degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub level: Option<u32>,
    #[arg(long)]
    pub coeff_bits: Option<u32>,
    #[arg(long)]
    pub s_precision: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub theta_level: Option<u32>,
    /// Record elapsed_ms in each check (reports are then no longer byte-identical).
    #[arg(long)]
    pub timings: bool,
}

impl ParamArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            level: self.level,
            coeff_bits: self.coeff_bits,
            s_precision: self.s_precision,
            seed: self.seed,
            trials: self.trials,
            theta_level: self.theta_level,
            timings: self.timings,
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Resolve the run configuration: defaults, then the file, then flags.
pub fn resolve_config(params: &ParamArgs, file: Option<&Path>) -> Result<Config> {
    let base = match file {
        Some(p) => Config::from_file(p)?,
        None => Config::default(),
    };
    let mut cfg = base.apply(&params.overrides());
    if cfg.cache_dir.is_none() {
        cfg.cache_dir = cache_dir_from_env();
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Execute a parsed command; returns true when nothing failed.
pub fn execute<W: Write>(cli: &Cli, out: &mut W) -> Result<bool> {
    match &cli.command {
        Command::Expand { expr, s_digits } => {
            writeln!(out, "{}", expand(expr, *s_digits)?).map_err(io)?;
            Ok(true)
        }
        Command::Verify { suite, params, report, config } => {
            suites::check_suite_name(suite)?;
            let cfg = resolve_config(params, config.as_deref())?;
            let r = verify(suite, &cfg)?;
            match report {
                Some(path) => {
                    write_file(path, &r.to_jsonl(suite))?;
                    writeln!(out, "{}", serde_json::to_string(&r.summary(suite)).expect("summary serializes"))
                        .map_err(io)?;
                }
                None => r.write_jsonl(suite, &mut *out)?,
            }
            Ok(!r.failed())
        }
        Command::Theta { level, coeff_bits, out: path } => {
            let cx = DualityComplex::with_cache(*level, *coeff_bits, cache_dir_from_env().as_deref())?;
            let build = cx.build_theta()?;
            let checks = cx.check_theta(&build.theta)?;
            let export = ThetaExport::new(&cx, &build);
            let text = serde_json::to_string_pretty(&export).expect("export serializes");
            match path {
                Some(p) => {
                    write_file(p, &text)?;
                    let line = json!({ "level": level, "coeff_bits": coeff_bits, "terms": export.element.len(), "checks": checks });
                    writeln!(out, "{line}").map_err(io)?;
                }
                None => writeln!(out, "{text}").map_err(io)?,
            }
            Ok(checks.all())
        }
        Command::Conjsearch { level } => {
            let r = suites::conjsearch(*level, cache_dir_from_env())?;
            writeln!(out, "{r}").map_err(io)?;
            Ok(true)
        }
        Command::Fgl { degree, out: path } => {
            if *degree == 0 || *degree > MAX_DEGREE {
                return Err(Error::Config(format!("degree must be in 1..={MAX_DEGREE}")));
            }
            let f = honda_fgl(*degree)?;
            let text = serde_json::to_string(&f.dump()).expect("dump serializes");
            match path {
                Some(p) => {
                    write_file(p, &text)?;
                    writeln!(out, "{}", json!({ "degree": degree, "terms": f.terms().len() })).map_err(io)?;
                }
                None => writeln!(out, "{text}").map_err(io)?,
            }
            Ok(true)
        }
    }
}

/// Parse arguments and run; exit code 0 iff no check failed, 2 on usage or configuration errors.
pub fn run_from<I, T, W>(args: I, out: &mut W, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(if code == 0 { &mut *out as &mut dyn Write } else { err as &mut dyn Write }, "{e}");
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e @ (Error::Config(_) | Error::Parse { .. } | Error::UnknownIdentifier { .. })) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn main_exit() -> ExitCode {
    let code = run_from(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_from(std::iter::once("s2").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn expand_alpha() {
        let (code, out, _) = run(&["expand", "alpha", "--s-digits", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1 + w*S^2 (mod S^4)\n");
    }

    #[test]
    fn parse_errors_exit_two() {
        let (code, _, err) = run(&["expand", "alpha +", "--s-digits", "4"]);
        assert_eq!(code, 2);
        assert!(err.contains("byte 7"), "{err}");
        assert_eq!(run(&["verify", "bogus"]).0, 2);
        assert_eq!(run(&["verify", "n1", "--coeff-bits", "0"]).0, 2);
    }

    #[test]
    fn verify_n1_report() {
        let (code, out, _) = run(&["verify", "n1"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 2);
        let rec: CheckRecord = serde_json::from_str(lines[0]).unwrap();
        assert_eq!((rec.check.as_str(), rec.status), ("n1.identities", Status::Pass));
        let s: Summary = serde_json::from_str(lines[1]).unwrap();
        assert_eq!(s.summary.pass, 1);
    }
}
