//! Numeric knobs. Every threshold the analysis depends on lives here so
//! that sweeps can override them without touching the algorithms.

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// Tolerances used by root finding, certification and screening.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Tolerances<T> {
    /// Backward-error bound a polished root must meet.
    pub root_residual_tol: T,
    /// Roots closer than this are merged into one multiple root.
    pub cluster_tol: T,
    /// Half-width of the band around the unit circle treated as "on" it.
    pub boundary_band: T,
    /// Accepted deviation of `z^2 p'(z)` from `(n+2)/(n+1)`.
    pub eigen_condition_tol: T,
    /// `|v - 1|` below this cannot be resolved against every `n`.
    pub indeterminacy_band: T,
    /// Eigenvalue candidates closer than this are the same point.
    pub dedup_tol: T,
    pub series_margin: T,
    pub screen_margin: T,
    pub range_tol: T,
    /// Distance from the unit circle a limiting double zero must keep
    /// for the tail-exclusion argument to be accepted.
    pub tail_margin: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        T::default_tolerances()
    }
}

impl<T: Real> Tolerances<T> {
    pub fn validate(&self) -> Result<(), String> {
        let named = [
            ("root_residual_tol", self.root_residual_tol),
            ("cluster_tol", self.cluster_tol),
            ("boundary_band", self.boundary_band),
            ("eigen_condition_tol", self.eigen_condition_tol),
            ("indeterminacy_band", self.indeterminacy_band),
            ("dedup_tol", self.dedup_tol),
            ("series_margin", self.series_margin),
            ("screen_margin", self.screen_margin),
            ("range_tol", self.range_tol),
            ("tail_margin", self.tail_margin),
        ];
        for (name, v) in named {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(format!("tolerance {name} must be positive and finite"));
            }
        }
        Ok(())
    }
}

/// Full analysis configuration: tolerances plus the integer knobs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Config<T> {
    pub tol: Tolerances<T>,
    /// Largest `n` scanned when enumerating isolated eigenvalues.
    pub n_max: usize,
    /// Largest `n` the eigenvalue condition is resolved against.
    pub n_cap: usize,
    /// Samples for the discrete argument-variation winding check.
    pub arg_samples: usize,
    /// Cap for the doubling retry of the argument check.
    pub max_arg_samples: usize,
    /// Iteration cap for the simultaneous root iteration.
    pub root_max_iter: usize,
    /// Series length for eigenvector recurrences.
    pub series_len: usize,
    /// Finite-section size.
    pub section_size: usize,
    /// Samples of the essential curve kept in reports.
    pub essential_samples: usize,
    /// Side length of the winding atlas grid stored in reports.
    pub atlas_grid: usize,
    pub seed: u64,
}

impl<T: Real> Default for Config<T> {
    fn default() -> Self {
        Config {
            tol: Tolerances::default(),
            n_max: 100,
            n_cap: 10_000,
            arg_samples: 4096,
            max_arg_samples: 1 << 16,
            root_max_iter: 500,
            series_len: 400,
            section_size: 200,
            essential_samples: 1024,
            atlas_grid: 32,
            seed: 20_240_601,
        }
    }
}

impl<T: Real> Config<T> {
    pub fn validate(&self) -> Result<(), String> {
        self.tol.validate()?;
        if self.arg_samples < 16 {
            return Err("arg_samples must be at least 16".into());
        }
        if self.max_arg_samples < self.arg_samples {
            return Err("max_arg_samples must be >= arg_samples".into());
        }
        if self.series_len < 50 {
            return Err("series_len must be at least 50".into());
        }
        if self.section_size < 2 {
            return Err("section_size must be at least 2".into());
        }
        if self.essential_samples < 16 {
            return Err("essential_samples must be at least 16".into());
        }
        Ok(())
    }
}
