use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use symconn::composition::Pattern;
use symconn::engine::{auto_canonicalize, Engine, EngineConfig, Verdict};
use symconn::oracle::OracleConfig;
use symconn::problem::{parse_point, read_problem, ProblemFile};
use symconn::rational::{format_rational, parse_rational, Q};
use symconn::sympoly::vandermonde_map;
use symconn::vandermonde::canonical_value;
use symconn::verify::{run_verify, VerifyConfig};
use symconn::{Error, Result};

/// Connectivity queries on symmetric semi-algebraic sets.
#[derive(Parser)]
#[command(name = "symconn", version)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Initial grid pitch of the connectivity oracle (rational, e.g. 1/16)
    #[arg(long, global = true, value_parser = rational)]
    grid_h: Option<Q>,
    /// Half-width of the slab standing in for each equality (default: the pitch)
    #[arg(long, global = true, value_parser = rational)]
    eq_delta: Option<Q>,
    /// Number of grid halvings after the first level
    #[arg(long, global = true)]
    max_depth: Option<u32>,
    /// Pinned positions of the face pattern: minimizer, definition or mirrored
    #[arg(long, global = true, default_value = "minimizer")]
    pattern: Pattern,
}

#[derive(Subcommand)]
enum Cmd {
    /// Are x and y in one connected component of S?
    Check {
        problem: PathBuf,
        x: String,
        y: String,
        /// Sort x and move y by the same permutation first
        #[arg(long)]
        auto_canonicalize: bool,
    },
    /// Are the orbits of x and y connected (both points are sorted first)?
    CheckOrbit { problem: PathBuf, x: String, y: String },
    /// Can sorted x reach the wall x_i = x_{i+1} inside the chamber?
    Wall { problem: PathBuf, x: String, i: usize },
    /// Minimizer of p_{d+1} on the fiber through x, or over --target.
    MinCanonical {
        problem: PathBuf,
        x: Option<String>,
        /// Power-sum values `a_1,...,a_d` instead of a point
        #[arg(long, value_delimiter = ',', value_parser = rational)]
        target: Option<Vec<Q>>,
    },
    /// Component graph of S over the alternate odd faces.
    Graph { problem: PathBuf },
    /// Engine against the full-dimensional grid on every pair of every problem in a directory.
    Verify { dir: PathBuf },
}

fn rational(s: &str) -> std::result::Result<Q, String> {
    parse_rational(s)
}

impl Opts {
    fn engine(&self) -> EngineConfig {
        let mut oracle = OracleConfig::default();
        if let Some(h) = &self.grid_h {
            oracle.h = h.clone();
        }
        if self.eq_delta.is_some() {
            oracle.eq_delta = self.eq_delta.clone();
        }
        if let Some(k) = self.max_depth {
            oracle.max_depth = k;
        }
        EngineConfig { oracle, pattern: self.pattern }
    }
}

/// A point given as a name from the problem file, a JSON file, or inline JSON.
fn point(problem: &ProblemFile, arg: &str) -> Result<Vec<Q>> {
    if let Some(x) = problem.points.get(arg) {
        return Ok(x.clone());
    }
    let path = Path::new(arg);
    if path.is_file() {
        let bytes = std::fs::read(path)
            .map_err(|source| Error::Io { path: arg.to_string(), source })?;
        return parse_point(&bytes);
    }
    parse_point(arg.as_bytes())
}

fn engine(problem: &ProblemFile, opts: &Opts) -> Result<Engine> {
    Engine::new(problem.system.clone(), opts.engine())
}

fn verdict(v: Verdict) -> (Value, ExitCode) {
    let code = if v.connected { 0 } else { 1 };
    (serde_json::to_value(&v).expect("verdicts serialize"), ExitCode::from(code))
}

fn run(cli: &Cli) -> Result<(Value, ExitCode)> {
    let opts = &cli.opts;
    match &cli.cmd {
        Cmd::Check { problem, x, y, auto_canonicalize: canon } => {
            let p = read_problem(problem)?;
            let (mut x, mut y) = (point(&p, x)?, point(&p, y)?);
            if *canon {
                (x, y) = auto_canonicalize(&x, &y)?;
            }
            Ok(verdict(engine(&p, opts)?.connectivity_symmetric(&x, &y)?))
        }
        Cmd::CheckOrbit { problem, x, y } => {
            let p = read_problem(problem)?;
            Ok(verdict(engine(&p, opts)?.check_orbit(&point(&p, x)?, &point(&p, y)?)?))
        }
        Cmd::Wall { problem, x, i } => {
            let p = read_problem(problem)?;
            Ok(verdict(engine(&p, opts)?.connected_wall(&point(&p, x)?, *i)?))
        }
        Cmd::MinCanonical { problem, x, target } => {
            let p = read_problem(problem)?;
            let sys = &p.system;
            let a = match (x, target) {
                (_, Some(a)) => a.clone(),
                (Some(x), None) => vandermonde_map(&point(&p, x)?, sys.d, None)?,
                (None, None) => {
                    return Err(Error::Precondition("give a point or --target".into()));
                }
            };
            let e = engine(&p, opts)?;
            let out = match e.min_canonical(&a)? {
                None => json!({ "target": a.iter().map(format_rational).collect::<Vec<_>>(), "point": null }),
                Some(c) => {
                    let mut value = canonical_value(&c, a.len())?;
                    json!({
                        "target": a.iter().map(format_rational).collect::<Vec<_>>(),
                        "face": c.face,
                        "multiplicity": c.point.multiplicity_composition()?,
                        "decimal": c.point.decimal_preview(12)?,
                        "next_power_sum": value.to_f64(),
                        "point": c.point,
                    })
                }
            };
            Ok((out, ExitCode::SUCCESS))
        }
        Cmd::Graph { problem } => {
            let p = read_problem(problem)?;
            let g = engine(&p, opts)?.graph()?;
            Ok((serde_json::to_value(g.report(12)).expect("reports serialize"), ExitCode::SUCCESS))
        }
        Cmd::Verify { dir } => {
            let cfg = VerifyConfig { engine: opts.engine(), ..VerifyConfig::default() };
            let r = run_verify(dir, &cfg)?;
            let code = if r.all_agree() { 0 } else { 1 };
            Ok((serde_json::to_value(&r).expect("reports serialize"), ExitCode::from(code)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
