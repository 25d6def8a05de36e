//! `rde-lab` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 singular orbit,
//! 3 forbidden verdict.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classify::{classify_analytic, detect_period, Classification};
use crate::demo::{write_demo, DETECT_BURN_IN, DETECT_P_MAX, DETECT_TOL};
use crate::dynamics::{iterate_direct, ClosedForm, InitWindow, Orbit, Params};
use crate::error::{Error, Result};
use crate::forbidden::{enumerate_roots, membership_with_cap, nearest_root, write_roots_csv, DEFAULT_M_MAX};
use crate::sampling::{random_window, rng, DEFAULT_SEED};
use crate::scalar::{Backend, Rational, Scalar};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_SINGULAR: u8 = 2;
pub const EXIT_FORBIDDEN: u8 = 3;

pub const SEED_ENV: &str = "RDE_LAB_SEED";

/// RNG stream used by `--random` outside the demo.
const CLI_STREAM: u64 = 0;

#[derive(Debug, Parser)]
#[command(
    name = "rde-lab",
    version,
    about = "Orbits, closed forms and forbidden sets of x_{n+1} = x_n x_{n-k} / (x_{n-k+1} (a + x_n x_{n-k}))"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Iterate the recurrence directly and write the orbit CSV.
    Iterate {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, default_value_t = 100)]
        steps: u64,
        #[arg(long, value_enum, default_value_t = BackendArg::Rational)]
        backend: BackendArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Evaluate the closed form at one index (--n) or as an orbit (--steps).
    ClosedForm {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "steps")]
        n: Option<i64>,
        #[arg(long)]
        steps: Option<u64>,
        #[arg(long, value_enum, default_value_t = BackendArg::Rational)]
        backend: BackendArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Exact forbidden-set membership; prints a JSON verdict.
    Check {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        m_max: u64,
        #[arg(long, value_enum, default_value_t = BackendArg::Rational)]
        backend: BackendArg,
    },
    /// Analytic long-run classification, optionally confirmed numerically.
    Classify {
        #[command(flatten)]
        problem: Problem,
        /// Also run the float orbit and detect its period.
        #[arg(long)]
        confirm: bool,
        #[arg(long, default_value_t = 2000)]
        steps: u64,
        #[arg(long, default_value_t = DETECT_BURN_IN)]
        burn_in: usize,
        #[arg(long, default_value_t = DETECT_P_MAX)]
        p_max: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = DETECT_TOL)]
        tol: f64,
    },
    /// List the forbidden products -a^m (a-1)/(a^m-1) for m <= m_max as CSV.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 20)]
        m_max: u64,
        #[arg(long, value_enum, default_value_t = BackendArg::Rational)]
        backend: BackendArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Float distance from P to the nearest forbidden product with m <= m_max.
    Distance {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, default_value_t = 1000)]
        m_max: u64,
    },
    /// Regenerate the six figure panels as CSV, metadata and optional SVG.
    DemoFigure {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        plots: bool,
    },
}

#[derive(Debug, Args)]
struct Problem {
    #[arg(long)]
    k: usize,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Comma-separated x_{-k}, ..., x_0.
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "random",
        conflicts_with = "random"
    )]
    init: Option<String>,
    /// Draw x_{-k}, ..., x_0 as dyadic rationals in (-1, 1).
    #[arg(long)]
    random: bool,
    #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug, Args)]
struct OutArg {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Rational,
    Float,
}

impl From<BackendArg> for Backend {
    fn from(value: BackendArg) -> Self {
        match value {
            BackendArg::Rational => Backend::Rational,
            BackendArg::Float => Backend::Float,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Usage(err.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure::Io(err)
    }
}

type CmdResult = std::result::Result<u8, Failure>;

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            EXIT_USAGE
        }
        Err(Failure::Io(err)) => {
            eprintln!("error: {err}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Iterate {
            problem,
            steps,
            backend,
            out,
        } => {
            let (params, init) = problem.resolve()?;
            let orbit_code = match backend.into() {
                Backend::Rational => emit_orbit(&iterate_direct(&params, &init, steps), &out)?,
                Backend::Float => {
                    emit_orbit(&iterate_direct(&params.to_float(), &init.to_float(), steps), &out)?
                }
            };
            Ok(orbit_code)
        }
        Command::ClosedForm {
            problem,
            n,
            steps,
            backend,
            out,
        } => {
            let (params, init) = problem.resolve()?;
            match backend.into() {
                Backend::Rational => closed_form_cmd(&params, &init, n, steps, &out),
                Backend::Float => closed_form_cmd(&params.to_float(), &init.to_float(), n, steps, &out),
            }
        }
        Command::Check {
            problem,
            m_max,
            backend,
        } => {
            let (params, init) = problem.resolve()?;
            let verdict = match backend.into() {
                Backend::Rational => membership_with_cap(&params, &init, m_max)?,
                Backend::Float => membership_with_cap(&params.to_float(), &init.to_float(), m_max)?,
            };
            print_json(&verdict.to_json())?;
            Ok(if verdict.is_forbidden() {
                EXIT_FORBIDDEN
            } else {
                EXIT_OK
            })
        }
        Command::Classify {
            problem,
            confirm,
            steps,
            burn_in,
            p_max,
            tol,
        } => {
            let (params, init) = problem.resolve()?;
            let analytic = classify_analytic(&params, &init)?;
            let mut report = serde_json::json!({ "analytic": analytic.to_json() });
            if confirm {
                if !(tol.is_finite() && tol >= 0.0) {
                    return Err(Failure::Usage(format!("invalid tolerance {tol}")));
                }
                let orbit = iterate_direct(&params.to_float(), &init.to_float(), steps);
                let detected = if orbit.terminator.is_singular() {
                    None
                } else {
                    detect_period(&orbit, burn_in, p_max, &tol)?
                };
                report["empirical"] = serde_json::json!({
                    "steps": steps,
                    "burn_in": burn_in,
                    "p_max": p_max,
                    "tol": tol,
                    "terminator": orbit.terminator.comment().trim_start_matches("# "),
                    "period": detected.map(|d| d.period),
                    "onset": detected.map(|d| d.onset),
                    "final_abs": orbit.points.last().map(|x| x.abs()),
                });
            }
            print_json(&report)?;
            Ok(match analytic {
                Classification::Singular { .. } => EXIT_SINGULAR,
                _ => EXIT_OK,
            })
        }
        Command::Enumerate {
            k,
            a,
            m_max,
            backend,
            out,
        } => {
            let mut buffer = Vec::new();
            match backend.into() {
                Backend::Rational => {
                    let params = Params::new(k, parse_scalar::<Rational>(&a, "--a")?)?;
                    write_roots_csv(&mut buffer, &enumerate_roots(&params, m_max))?;
                }
                Backend::Float => {
                    let params = Params::new(k, parse_scalar::<f64>(&a, "--a")?)?;
                    write_roots_csv(&mut buffer, &enumerate_roots(&params, m_max))?;
                }
            }
            write_output(&buffer, &out)?;
            Ok(EXIT_OK)
        }
        Command::Distance { problem, m_max } => {
            let (params, init) = problem.resolve()?;
            let params = params.to_float();
            let product = init.to_float().product();
            let report = match nearest_root(&params, product, m_max) {
                Some(near) => serde_json::json!({
                    "product": product,
                    "m": near.m,
                    "root": near.value,
                    "distance": near.distance,
                }),
                None => serde_json::json!({ "product": product, "m": null, "root": null, "distance": null }),
            };
            print_json(&report)?;
            Ok(EXIT_OK)
        }
        Command::DemoFigure { out, seed, plots } => {
            write_demo(&out, seed, plots)
                .map_err(|err| Failure::Usage(format!("cannot write {}: {err}", out.display())))?;
            Ok(EXIT_OK)
        }
    }
}

impl Problem {
    /// Parameters and window on the exact backend. Float commands convert
    /// afterwards, so `--init 0.1` means the exact decimal in both cases.
    fn resolve(&self) -> Result<(Params<Rational>, InitWindow<Rational>), Failure> {
        let a = parse_scalar::<Rational>(&self.a, "--a")?;
        let params = Params::new(self.k, a)?;
        let values = match (&self.init, self.random) {
            (Some(list), false) => list
                .split(',')
                .map(|item| parse_scalar::<Rational>(item.trim(), "--init"))
                .collect::<Result<Vec<_>, _>>()?,
            (None, true) => random_window(&mut rng(self.seed, CLI_STREAM), self.k),
            _ => return Err(Failure::Usage("give exactly one of --init or --random".into())),
        };
        let init = InitWindow::new(self.k, values)?;
        Ok((params, init))
    }
}

fn parse_scalar<T: Scalar>(text: &str, flag: &str) -> Result<T, Failure> {
    T::parse_text(text).map_err(|err| Failure::Usage(format!("{flag}: {err}")))
}

fn closed_form_cmd<T: Scalar>(
    params: &Params<T>,
    init: &InitWindow<T>,
    n: Option<i64>,
    steps: Option<u64>,
    out: &OutArg,
) -> CmdResult {
    let solver = match ClosedForm::new(params, init) {
        Ok(solver) => solver,
        Err(Error::ZeroInitial(i)) => {
            eprintln!("error: x_{i} = 0, the orbit is singular");
            return Ok(EXIT_SINGULAR);
        }
        Err(err) => return Err(err.into()),
    };
    match (n, steps) {
        (Some(n), None) => match solver.term(n) {
            Ok(value) => {
                write_output(format!("{}\n", value.to_text()).as_bytes(), out)?;
                Ok(EXIT_OK)
            }
            Err(Error::KernelRoot(m)) => {
                eprintln!("error: singular at step {m} (kernel root)");
                Ok(EXIT_SINGULAR)
            }
            Err(err) => Err(err.into()),
        },
        (None, steps) => emit_orbit(&solver.orbit(steps.unwrap_or(100)), out),
        (Some(_), Some(_)) => Err(Failure::Usage("--n and --steps are exclusive".into())),
    }
}

fn emit_orbit<T: Scalar>(orbit: &Orbit<T>, out: &OutArg) -> CmdResult {
    write_output(orbit.to_csv().as_bytes(), out)?;
    Ok(if orbit.terminator.is_singular() {
        EXIT_SINGULAR
    } else {
        EXIT_OK
    })
}

fn write_output(bytes: &[u8], out: &OutArg) -> std::result::Result<(), Failure> {
    match &out.out {
        Some(path) => write_file(path, bytes),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> std::result::Result<(), Failure> {
    fs::write(path, bytes).map_err(|err| Failure::Usage(format!("cannot write {}: {err}", path.display())))
}

fn print_json(value: &serde_json::Value) -> std::result::Result<(), Failure> {
    let mut stdout = io::stdout().lock();
    serde_json::to_writer(&mut stdout, value).map_err(io::Error::from)?;
    writeln!(stdout)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(args: &[&str]) -> u8 {
        run(std::iter::once("rde-lab").chain(args.iter().copied()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            code(&[
                "iterate",
                "--k",
                "1",
                "--a",
                "2",
                "--init",
                "1,1",
                "--steps",
                "3",
                "--out",
                "/dev/null"
            ]),
            0
        );
        assert_eq!(
            code(&[
                "iterate",
                "--k",
                "1",
                "--a",
                "2",
                "--init",
                "1,-2",
                "--steps",
                "5",
                "--out",
                "/dev/null"
            ]),
            2
        );
        assert_eq!(
            code(&["iterate", "--k", "1", "--a", "2", "--init", "1,1,1", "--steps", "3"]),
            1
        );
        assert_eq!(code(&["check", "--k", "1", "--a", "2", "--init", "2,1"]), 0);
        assert_eq!(code(&["check", "--k", "1", "--a", "2", "--init", "1,-4/3"]), 3);
        assert_eq!(
            code(&[
                "check",
                "--k",
                "1",
                "--a",
                "2",
                "--init",
                "1,1",
                "--backend",
                "float"
            ]),
            1
        );
        assert_eq!(code(&["iterate", "--k", "1"]), 1);
        assert_eq!(code(&["--help"]), 0);
    }
}
