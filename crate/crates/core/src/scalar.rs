//! Scalar abstraction shared by every numeric kernel in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::config::Tolerances;

/// Real floating-point scalar underlying the complex arithmetic.
///
/// Implemented for `f32` and `f64`. Each implementation carries its own
/// default tolerance set, since the certification thresholds only make
/// sense relative to the working precision.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + Sum
    + Serialize
    + DeserializeOwned
    + 'static
{
    fn default_tolerances() -> Tolerances<Self>;

    /// Converts an `f64` literal. Panics only if the literal is not
    /// representable, which never happens for the finite constants we use.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize fits in float")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn default_tolerances() -> Tolerances<f64> {
        Tolerances {
            root_residual_tol: 1e-11,
            cluster_tol: 1e-7,
            boundary_band: 1e-9,
            eigen_condition_tol: 1e-8,
            indeterminacy_band: 1e-4,
            dedup_tol: 1e-9,
            series_margin: 0.02,
            screen_margin: 1e-6,
            range_tol: 1e-9,
            tail_margin: 1e-3,
        }
    }
}

impl Real for f32 {
    fn default_tolerances() -> Tolerances<f32> {
        Tolerances {
            root_residual_tol: 2e-5,
            cluster_tol: 1e-3,
            boundary_band: 1e-5,
            eigen_condition_tol: 1e-4,
            indeterminacy_band: 1e-2,
            dedup_tol: 1e-5,
            series_margin: 0.02,
            screen_margin: 1e-3,
            range_tol: 1e-5,
            tail_margin: 1e-2,
        }
    }
}
