use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use turan_core::bounds::{
    ex_cliques_no_star, ex_stars_no_star, star_star_supersat, supersat_delta, theta_clique_bound,
};
use turan_core::format::scan_csv;
use turan_core::graphon::{crossover_scan, solve, OptParams};
use turan_core::{edgelist, Error};
use turan_cli::report::{BoundReport, SolveReport};
use turan_cli::verify::{self, Suite};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PARAMETER: u8 = 3;
const EXIT_OUTPUT: u8 = 4;

#[derive(Parser)]
#[command(name = "turan", version, about = "Generalized Turán numbers for stars and cliques")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count cliques or stars in an edge-list graph.
    Count {
        kind: CountKind,
        size: usize,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Evaluate a closed-form bound; prints JSON.
    Bounds {
        bound: BoundKind,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long)]
        eps: Option<f64>,
        /// Clique count for `theta`.
        #[arg(long)]
        kt: Option<u128>,
        /// Target clique order for `theta`.
        #[arg(long)]
        s: Option<u32>,
    },
    /// Compare the Turán and skew critical points; prints JSON.
    Optimize {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        t: u32,
    },
    /// Solve for every t in a range; writes CSV.
    Scan {
        #[arg(long)]
        r: u32,
        /// Inclusive range `LO:HI`.
        #[arg(long, value_parser = parse_range)]
        range: (u32, u32),
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run brute-force verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    Clique,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundKind {
    CliquesNoStar,
    StarsNoStar,
    SupersatDelta,
    Theta,
    StarStarSupersat,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo: u32 = lo.parse().map_err(|e| format!("bad LO: {e}"))?;
    let hi: u32 = hi.parse().map_err(|e| format!("bad HI: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

enum Failure {
    Core(Error),
    Output(String),
    Verify(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Core(Error::InvalidParameter(format!("missing --{flag}"))))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types always serialize")
}

fn write_stdout(text: &str) -> Result<(), Failure> {
    io::stdout()
        .lock()
        .write_all(text.as_bytes())
        .map_err(|e| Failure::Output(format!("stdout: {e}")))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Count { kind, size, graph } => {
            let text = fs::read_to_string(&graph).map_err(|e| {
                Error::InvalidParameter(format!("cannot read {}: {e}", graph.display()))
            })?;
            let g = edgelist::parse(&text)?;
            let count = match kind {
                CountKind::Clique => g.count_cliques(size),
                CountKind::Star => g.count_stars(size),
            };
            write_stdout(&format!("{count}\n"))
        }
        Command::Bounds {
            bound,
            n,
            r,
            t,
            eps,
            kt,
            s,
        } => {
            let small = |v: u64, flag: &str| {
                u32::try_from(v).map_err(|_| Error::InvalidParameter(format!("--{flag} too large")))
            };
            let report = match bound {
                BoundKind::CliquesNoStar => {
                    let (n, r, t) = (require(n, "n")?, require(r, "r")?, require(t, "t")?);
                    let v = ex_cliques_no_star(n, r, t)?;
                    let value = if *v.denom() == 1 {
                        v.numer().to_string()
                    } else {
                        format!("{}/{}", v.numer(), v.denom())
                    };
                    BoundReport::CliquesNoStar { n, r, t, value }
                }
                BoundKind::StarsNoStar => {
                    let (n, r, t) = (require(n, "n")?, require(r, "r")?, require(t, "t")?);
                    BoundReport::StarsNoStar {
                        n,
                        r,
                        t,
                        value: ex_stars_no_star(n, r, t)?,
                    }
                }
                BoundKind::SupersatDelta => {
                    let (r, t) = (small(require(r, "r")?, "r")?, small(require(t, "t")?, "t")?);
                    let eps = require(eps, "eps")?;
                    let b = supersat_delta(r, t, eps)?;
                    BoundReport::SupersatDelta {
                        r,
                        t,
                        eps,
                        threshold: b.threshold,
                        delta: b.delta,
                    }
                }
                BoundKind::Theta => {
                    let n = require(n, "n")?;
                    let kt = require(kt, "kt")?;
                    let t = small(require(t, "t")?, "t")?;
                    let s = require(s, "s")?;
                    BoundReport::Theta {
                        n,
                        kt,
                        t,
                        s,
                        value: theta_clique_bound(n, kt, t, s)?,
                    }
                }
                BoundKind::StarStarSupersat => {
                    let (n, r, t) = (require(n, "n")?, require(r, "r")?, require(t, "t")?);
                    let eps = require(eps, "eps")?;
                    BoundReport::StarStarSupersat {
                        n,
                        r,
                        t,
                        eps,
                        value: star_star_supersat(n, r, t, eps)?,
                    }
                }
            };
            write_stdout(&format!("{}\n", to_json(&report)))
        }
        Command::Optimize { r, t } => {
            let sol = solve(&OptParams::new(r, t)?)?;
            if !sol.legal {
                eprintln!("warning: (r, t) = ({r}, {t}) is not a legal pair; result is best-effort");
            }
            write_stdout(&format!("{}\n", to_json(&SolveReport::from(&sol))))
        }
        Command::Scan { r, range, out } => {
            OptParams::new(r, range.0.max(2))?;
            let csv = scan_csv(&crossover_scan(r, range.0, range.1)?);
            match out {
                Some(path) => fs::write(&path, csv)
                    .map_err(|e| Failure::Output(format!("{}: {e}", path.display()))),
                None => write_stdout(&csv),
            }
        }
        Command::Verify { suite, max_n, seed } => {
            let checks = verify::run(suite, max_n, seed)?;
            let mut text = String::new();
            for c in &checks {
                text.push_str(&c.to_string());
                text.push('\n');
            }
            let failed = checks.iter().filter(|c| !c.pass).count();
            text.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
            write_stdout(&text)?;
            if failed > 0 {
                Err(Failure::Verify(failed))
            } else {
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARAMETER } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let outcome = run(cli.command);
    eprintln!("wall time: {:.3}s", start.elapsed().as_secs_f64());
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e @ Error::Parse { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_PARAMETER)
        }
        Err(Failure::Output(msg)) => {
            eprintln!("error: cannot write output: {msg}");
            ExitCode::from(EXIT_OUTPUT)
        }
        Err(Failure::Verify(n)) => {
            eprintln!("{n} verification checks failed");
            ExitCode::from(EXIT_VERIFY_FAILED)
        }
    }
}
