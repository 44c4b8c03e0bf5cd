//! Engine against the full-dimensional grid on a directory of problem files.

use rayon::prelude::*;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::engine::{auto_canonicalize, Certificate, Engine, EngineConfig};
use crate::error::{Error, Result};
use crate::oracle::{ConnectivityOracle, GridOracle, OracleConfig, Region, Resolution};
use crate::problem::{read_problem, ProblemFile};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub engine: EngineConfig,
    /// Grid used on `S ⊂ ℝⁿ` directly.
    pub brute: OracleConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            engine: EngineConfig::default(),
            brute: OracleConfig { max_cells: 1 << 23, ..OracleConfig::default() },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairOutcome {
    pub x: String,
    pub y: String,
    pub engine: Option<bool>,
    pub brute: Option<bool>,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub engine_ms: f64,
    pub brute_ms: f64,
    /// Kept only for disagreements.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub path: String,
    pub pairs: Vec<PairOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_resolution: Option<Resolution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub ms: f64,
}

/// Counts indexed `[engine][brute]`, `true` first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AgreementMatrix {
    pub both_connected: usize,
    pub engine_only: usize,
    pub brute_only: usize,
    pub neither: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub fixtures: Vec<FixtureReport>,
    pub pairs: usize,
    pub agreed: usize,
    pub errors: usize,
    pub matrix: AgreementMatrix,
}

impl VerifyReport {
    pub fn all_agree(&self) -> bool {
        self.agreed == self.pairs && self.fixtures.iter().all(|f| f.error.is_none())
    }

    /// `(fixture, pair)` for every disagreement or error.
    pub fn flagged(&self) -> Vec<(&FixtureReport, &PairOutcome)> {
        self.fixtures
            .iter()
            .flat_map(|f| f.pairs.iter().filter(|p| !p.agree).map(move |p| (f, p)))
            .collect()
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Run every pair of one problem through both deciders.
pub fn verify_problem(problem: &ProblemFile, cfg: &VerifyConfig) -> Result<(Vec<PairOutcome>, Resolution)> {
    let engine = Engine::new(problem.system.clone(), cfg.engine.clone())?;
    let brute = GridOracle::new(cfg.brute.clone()).analyze(&Region::ambient(&problem.system))?;
    let mut out = Vec::with_capacity(problem.pairs.len());
    for (a, b) in &problem.pairs {
        let (x, y) = auto_canonicalize(problem.point(a)?, problem.point(b)?)?;
        let t = Instant::now();
        let verdict = engine.connectivity_symmetric(&x, &y);
        let engine_ms = ms(t);
        let t = Instant::now();
        let reference = brute.connected(&x, &y);
        let brute_ms = ms(t);
        let mut errors = Vec::new();
        let (e, certificate) = match verdict {
            Ok(v) => (Some(v.connected), Some(v.certificate)),
            Err(err) => {
                errors.push(format!("engine: {err}"));
                (None, None)
            }
        };
        let r = reference
            .map_err(|err| errors.push(format!("brute force: {err}")))
            .ok();
        let agree = e.is_some() && e == r;
        out.push(PairOutcome {
            x: a.clone(),
            y: b.clone(),
            engine: e,
            brute: r,
            agree,
            error: (!errors.is_empty()).then(|| errors.join("; ")),
            engine_ms,
            brute_ms,
            certificate: if agree { None } else { certificate },
        });
    }
    Ok((out, brute.resolution()))
}

fn problem_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let io = |source| Error::Io { path: dir.display().to_string(), source };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Verify every `*.json` problem in `dir`, fixtures in parallel.
pub fn run_verify(dir: &Path, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let files = problem_files(dir)?;
    let fixtures: Vec<FixtureReport> = files
        .par_iter()
        .map(|path| {
            let t = Instant::now();
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let mut report = FixtureReport {
                name: stem,
                path: path.display().to_string(),
                pairs: Vec::new(),
                brute_resolution: None,
                error: None,
                ms: 0.0,
            };
            match read_problem(path).and_then(|p| {
                if let Some(name) = &p.name {
                    report.name = name.clone();
                }
                verify_problem(&p, cfg)
            }) {
                Ok((pairs, res)) => {
                    report.pairs = pairs;
                    report.brute_resolution = Some(res);
                }
                Err(e) => report.error = Some(e.to_string()),
            }
            report.ms = ms(t);
            report
        })
        .collect();

    let mut report = VerifyReport { fixtures, ..VerifyReport::default() };
    for p in report.fixtures.iter().flat_map(|f| &f.pairs) {
        report.pairs += 1;
        report.agreed += p.agree as usize;
        report.errors += p.error.is_some() as usize;
        let m = &mut report.matrix;
        match (p.engine, p.brute) {
            (Some(true), Some(true)) => m.both_connected += 1,
            (Some(true), Some(false)) => m.engine_only += 1,
            (Some(false), Some(true)) => m.brute_only += 1,
            (Some(false), Some(false)) => m.neither += 1,
            _ => {}
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus() {
        let dir = std::env::temp_dir().join(format!("symconn-empty-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let r = run_verify(&dir, &VerifyConfig::default()).unwrap();
        assert!(r.fixtures.is_empty() && r.pairs == 0 && r.all_agree());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn missing_corpus() {
        let r = run_verify(Path::new("/nonexistent/corpus"), &VerifyConfig::default());
        assert!(matches!(r, Err(Error::Io { .. })));
    }
}
