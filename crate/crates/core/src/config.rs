//! Numerical thresholds shared by every routine in the crate.

use serde::{Deserialize, Serialize};

/// Every tolerance the library uses. Thresholds that decide a structural
/// fact (a rank, a vanishing block) are separate from the pass/fail
/// tolerances for residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Scalars with `|s| <= appreciable * max(1, scale)` count as zero.
    pub appreciable: f64,
    /// Relative rank cutoff, applied against the largest singular value.
    /// The default 1e-10 keeps rounding in computed products out of the
    /// rank; `None` means `max(rows, cols) * f64::EPSILON`.
    pub rank_rtol: Option<f64>,
    /// Cutoff for infinitesimal quantities (e.g. the infinitesimal singular
    /// values), relative to the dual scale of the input.
    pub zero: f64,
    /// Pass/fail tolerance for residuals and equalities, relative to scale.
    pub residual: f64,
    /// Pass/fail tolerance for composite identities and the relation
    /// checks built from several inverses, relative to scale.
    pub identity: f64,
    /// Relative gap below which two standard singular values are treated as
    /// one repeated value.
    pub cluster_gap: f64,
    /// Sweep cap for the Jacobi iterations.
    pub max_sweeps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            appreciable: 1e-12,
            rank_rtol: Some(1e-10),
            zero: 1e-10,
            residual: 1e-9,
            identity: 1e-8,
            cluster_gap: 1e-8,
            max_sweeps: 100,
        }
    }
}

impl Tolerances {
    pub fn with_residual(mut self, residual: f64) -> Self {
        self.residual = residual;
        self
    }

    /// Absolute rank threshold for a matrix of the given shape whose largest
    /// singular value is `sigma_max`.
    pub fn rank_threshold(&self, rows: usize, cols: usize, sigma_max: f64) -> f64 {
        let rtol = self.rank_rtol.unwrap_or(rows.max(cols) as f64 * f64::EPSILON);
        rtol * sigma_max
    }
}
