use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{eigen_test, winding, EigenCertificate, EigenOutcome, HarmonicSymbol};
use crate::config::Config;
use crate::scalar::Real;

/// Where a point sits in the spectral picture.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", tag = "class", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PointClass<T> {
    /// On the essential curve, within the boundary band.
    Essential,
    /// Index-zero hole and not an eigenvalue.
    Resolvent,
    /// Positive winding: Fredholm of negative index, inside the spectrum.
    FilledWinding {
        winding: i64,
    },
    /// Winding -1: every such point is an eigenvalue.
    EigenRegionIndexPositive,
    IsolatedEigen {
        certificate: EigenCertificate<T>,
    },
    Ambiguous {
        reason: String,
    },
}

impl<T> PointClass<T> {
    pub fn label(&self) -> &'static str {
        match self {
            PointClass::Essential => "ESSENTIAL",
            PointClass::Resolvent => "RESOLVENT",
            PointClass::FilledWinding { .. } => "FILLED_WINDING",
            PointClass::EigenRegionIndexPositive => "EIGEN_REGION_INDEX_POSITIVE",
            PointClass::IsolatedEigen { .. } => "ISOLATED_EIGEN",
            PointClass::Ambiguous { .. } => "AMBIGUOUS",
        }
    }

    pub fn in_spectrum(&self) -> Option<bool> {
        match self {
            PointClass::Resolvent => Some(false),
            PointClass::Ambiguous { .. } => None,
            _ => Some(true),
        }
    }
}

pub fn classify_point<T: Real>(
    s: &HarmonicSymbol<T>,
    lambda: Complex<T>,
    cfg: &Config<T>,
) -> PointClass<T> {
    let w = match winding(s, lambda, cfg) {
        Ok(w) => w,
        Err(e) => {
            return PointClass::Ambiguous {
                reason: e.to_string(),
            }
        }
    };
    if w.on_curve {
        return PointClass::Essential;
    }
    match w.w {
        -1 => PointClass::EigenRegionIndexPositive,
        0 => match eigen_test(s, lambda, cfg) {
            Ok(EigenOutcome::Certified(certificate)) => PointClass::IsolatedEigen { certificate },
            Ok(EigenOutcome::NotEigenvalue(_)) => PointClass::Resolvent,
            Err(e) => PointClass::Ambiguous {
                reason: e.to_string(),
            },
        },
        winding => PointClass::FilledWinding { winding },
    }
}
