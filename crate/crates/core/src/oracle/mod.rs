//! Low-dimensional connectivity oracle: one representative per connected
//! component of a region, and same-component queries.
//!
//! The engine depends only on [`ConnectivityOracle`] and [`RegionAnalysis`];
//! [`GridOracle`] is the shipped backend.

pub mod grid;
pub mod region;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rational, q, qr, Q};
use crate::sympoly::SymmetricSystem;
pub use grid::GridAnalysis;
pub use region::{AtomFn, Pred, Region};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("point ({point}) is not in {region}: violates {violated}")]
    Infeasible { region: String, point: String, violated: String },

    #[error("grid of {cells} cells exceeds the cap of {cap}; raise --grid-h")]
    TooManyCells { cells: u128, cap: usize },

    #[error("expected a point of dimension {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("no feasible cell near ({point}) in {region}; refine the grid")]
    Unlocatable { region: String, point: String },

    #[error("invalid oracle configuration: {0}")]
    Config(String),
}

/// Grid parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Initial pitch.
    pub h: Q,
    /// Half-width of the slab replacing `g = 0`; defaults to the current pitch.
    pub eq_delta: Option<Q>,
    /// `g > 0` is read as `g >= gt_margin * pitch`.
    pub gt_margin: Q,
    /// Number of halvings after the first level.
    pub max_depth: u32,
    pub max_cells: usize,
    /// Chebyshev radius, in cells, searched when a query point's own cell is infeasible.
    pub snap_radius: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            h: qr(1, 8),
            eq_delta: None,
            gt_margin: q(1),
            max_depth: 2,
            max_cells: 1 << 22,
            snap_radius: 2,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<(), OracleError> {
        if !self.h.is_positive() {
            return Err(OracleError::Config("grid pitch h must be positive".into()));
        }
        if self.eq_delta.as_ref().is_some_and(|d| d.is_negative()) {
            return Err(OracleError::Config("equality slab width must be non-negative".into()));
        }
        if self.gt_margin.is_negative() {
            return Err(OracleError::Config("strict-inequality margin must be non-negative".into()));
        }
        Ok(())
    }
}

/// Resolution actually used for one region, recorded in certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub h_final: String,
    pub levels: u32,
    pub cells: usize,
    pub classes: usize,
    /// Whether the class count agreed on the last two levels.
    pub stabilized: bool,
    pub eq_delta: String,
    pub gt_margin: String,
}

/// The component structure of one region.
pub trait RegionAnalysis: Send + Sync {
    /// One rational point per detected component, indexed by component id.
    fn representatives(&self) -> &[Vec<Q>];

    /// Component id of a feasible point.
    fn component_of(&self, x: &[Q]) -> Result<usize, OracleError>;

    /// Component nearest to `x` without the membership check; for points the
    /// oracle produced itself, which may sit just outside an equality.
    fn nearest_component(&self, x: &[Q]) -> Result<usize, OracleError> {
        self.component_of(x)
    }

    fn connected(&self, x: &[Q], y: &[Q]) -> Result<bool, OracleError> {
        Ok(self.component_of(x)? == self.component_of(y)?)
    }

    fn resolution(&self) -> Resolution;

    fn region(&self) -> &Region;
}

pub trait ConnectivityOracle: Send + Sync {
    fn analyze(&self, region: &Region) -> Result<Box<dyn RegionAnalysis>, OracleError>;

    fn config(&self) -> &OracleConfig;
}

#[derive(Clone, Debug, Default)]
pub struct GridOracle {
    pub cfg: OracleConfig,
}

impl GridOracle {
    pub fn new(cfg: OracleConfig) -> Self {
        GridOracle { cfg }
    }
}

impl ConnectivityOracle for GridOracle {
    fn analyze(&self, region: &Region) -> Result<Box<dyn RegionAnalysis>, OracleError> {
        Ok(Box::new(grid::analyze(region, &self.cfg)?))
    }

    fn config(&self) -> &OracleConfig {
        &self.cfg
    }
}

/// One point per connected component of `r`.
pub fn sample_components(r: &Region, cfg: &OracleConfig) -> Result<Vec<Vec<Q>>, OracleError> {
    Ok(grid::analyze(r, cfg)?.representatives().to_vec())
}

/// Whether `x` and `y` lie in one component of `r`.
pub fn connected(r: &Region, x: &[Q], y: &[Q], cfg: &OracleConfig) -> Result<bool, OracleError> {
    grid::analyze(r, cfg)?.connected(x, y)
}

/// The same grid procedure run directly on `S ⊂ ℝⁿ`, with no symmetry reduction.
pub fn brute_force_connected(
    sys: &SymmetricSystem,
    x: &[Q],
    y: &[Q],
    cfg: &OracleConfig,
) -> Result<bool, OracleError> {
    connected(&Region::ambient(sys), x, y, cfg)
}

/// Text form of a point for diagnostics.
pub fn show_point(x: &[Q]) -> String {
    x.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiPoly;
    use crate::sympoly::Relation;

    fn line() -> MultiPoly {
        MultiPoly::var(1, 0)
    }

    #[test]
    fn two_rays() {
        let x = line();
        let r = Region::new(1, q(-2), q(2), "x^2 >= 1")
            .with_poly(&(&x * &x) - &MultiPoly::constant(1, q(1)), Relation::Ge);
        let cfg = OracleConfig::default();
        let reps = sample_components(&r, &cfg).unwrap();
        assert_eq!(reps.len(), 2);
        assert!(reps[0][0] <= q(-1) && reps[1][0] >= q(1));
        assert!(!connected(&r, &[qr(3, 2)], &[qr(-3, 2)], &cfg).unwrap());
        assert!(connected(&r, &[qr(3, 2)], &[qr(3, 2)], &cfg).unwrap());
    }

    #[test]
    fn disc_and_empty() {
        let cfg = OracleConfig::default();
        let d = Region::disc((q(0), q(0)), q(1), q(-2), q(2));
        assert_eq!(sample_components(&d, &cfg).unwrap().len(), 1);
        assert!(connected(&d, &[qr(1, 2), q(0)], &[qr(-1, 2), q(0)], &cfg).unwrap());
        let x = line();
        let empty = Region::new(1, q(-2), q(2), "x^2 <= -1")
            .with_poly((&(&x * &x) + &MultiPoly::constant(1, q(1))).scale(&q(-1)), Relation::Ge);
        assert!(sample_components(&empty, &cfg).unwrap().is_empty());
    }

    #[test]
    fn infeasible_query_names_constraint() {
        let cfg = OracleConfig::default();
        let d = Region::disc((q(0), q(0)), q(1), q(-2), q(2));
        let err = connected(&d, &[q(2), q(2)], &[q(0), q(0)], &cfg).unwrap_err();
        assert!(matches!(err, OracleError::Infeasible { .. }), "{err}");
        assert!(err.to_string().contains(">= 0"));
    }

    #[test]
    fn bad_config_rejected() {
        let cfg = OracleConfig { h: q(0), ..OracleConfig::default() };
        assert!(sample_components(&Region::interval(q(0), q(1), q(-1), q(2)), &cfg).is_err());
    }
}
