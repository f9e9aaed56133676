//! Eigenvalue certification off the essential curve.
//!
//! λ is an eigenvalue of `T_{z̄+p}` exactly when `F_λ = 1 + z(p - λ)` has no
//! zeros in the disk, or all its zeros there are simple and each satisfies
//! `z^2 p'(z) = (n+2)/(n+1)` for some integer `n >= 0`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{condition_value, root_options, HarmonicSymbol};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::polynomial::find_roots;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branch {
    NoZeros,
    SimpleZeros,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ZeroRecord<T> {
    #[serde(with = "crate::wire::pair")]
    pub z: Complex<T>,
    pub n: usize,
    /// `|F_λ(z)|`
    pub zero_residual: T,
    /// `|z^2 p'(z) - (n+2)/(n+1)|`
    pub condition_residual: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct EigenCertificate<T> {
    #[serde(with = "crate::wire::pair")]
    pub lambda: Complex<T>,
    pub branch: Branch,
    pub zeros: Vec<ZeroRecord<T>>,
    pub winding: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", tag = "kind", rename_all = "snake_case")]
pub enum NotEigenvalue<T> {
    /// An in-disk zero of `F_λ` is not simple.
    MultipleZero {
        #[serde(with = "crate::wire::pair")]
        z: Complex<T>,
        multiplicity: usize,
    },
    /// `v = z^2 p'(z)` is not of the form `(n+2)/(n+1)`.
    ConditionFails {
        #[serde(with = "crate::wire::pair")]
        z: Complex<T>,
        #[serde(with = "crate::wire::pair")]
        v: Complex<T>,
        nearest_n: usize,
        condition_residual: T,
    },
}

impl<T: Real> NotEigenvalue<T> {
    pub fn zero(&self) -> Complex<T> {
        match self {
            NotEigenvalue::MultipleZero { z, .. } | NotEigenvalue::ConditionFails { z, .. } => *z,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", tag = "outcome", rename_all = "snake_case")]
pub enum EigenOutcome<T> {
    Certified(EigenCertificate<T>),
    NotEigenvalue(NotEigenvalue<T>),
}

impl<T: Real> EigenOutcome<T> {
    pub fn certificate(&self) -> Option<&EigenCertificate<T>> {
        match self {
            EigenOutcome::Certified(c) => Some(c),
            EigenOutcome::NotEigenvalue(_) => None,
        }
    }
}

/// Nearest `n` with `(n+2)/(n+1)` closest to `v`, and the distance to it.
/// `None` when `v` is too close to 1 to resolve within `n_cap`.
pub(crate) fn resolve_condition<T: Real>(v: Complex<T>, cfg: &Config<T>) -> Option<(usize, T)> {
    let one = Complex::new(T::one(), T::zero());
    if (v - one).norm() < cfg.tol.indeterminacy_band {
        return None;
    }
    let two = Complex::new(T::lit(2.0), T::zero());
    let raw = ((two - v) / (v - one)).re;
    let guess = if raw.is_finite() && raw > T::zero() {
        raw.round().to_usize().unwrap_or(usize::MAX)
    } else {
        0
    };
    if guess > cfg.n_cap {
        return None;
    }
    [guess.saturating_sub(1), guess, guess + 1]
        .into_iter()
        .map(|n| (n, (v - condition_value::<T>(n)).norm()))
        .fold(None::<(usize, T)>, |acc, cur| match acc {
            Some(a) if a.1 <= cur.1 => Some(a),
            _ => Some(cur),
        })
}

pub fn eigen_test<T: Real>(
    s: &HarmonicSymbol<T>,
    lambda: Complex<T>,
    cfg: &Config<T>,
) -> Result<EigenOutcome<T>> {
    let f = s.f_lambda(lambda);
    let roots = find_roots(&f, &root_options(cfg))?;
    if roots.any_on_circle() {
        return Err(Error::PreconditionViolated(format!(
            "lambda = {lambda} lies on the essential curve"
        )));
    }
    let winding = roots.inside_count() as i64 - 1;
    let inside: Vec<_> = roots.inside().collect();
    if inside.is_empty() {
        return Ok(EigenOutcome::Certified(EigenCertificate {
            lambda,
            branch: Branch::NoZeros,
            zeros: Vec::new(),
            winding,
        }));
    }

    let dp = s.p.derivative();
    let mut zeros = Vec::with_capacity(inside.len());
    let mut undecided = None;
    for root in inside {
        let z = root.location;
        if root.multiplicity > 1 {
            return Ok(EigenOutcome::NotEigenvalue(NotEigenvalue::MultipleZero {
                z,
                multiplicity: root.multiplicity,
            }));
        }
        let v = z * z * dp.eval(z);
        match resolve_condition(v, cfg) {
            None => {
                undecided.get_or_insert((z, v));
            }
            Some((n, residual)) if residual <= cfg.tol.eigen_condition_tol => {
                zeros.push(ZeroRecord {
                    z,
                    n,
                    zero_residual: f.eval(z).norm(),
                    condition_residual: residual,
                });
            }
            Some((n, residual)) => {
                return Ok(EigenOutcome::NotEigenvalue(NotEigenvalue::ConditionFails {
                    z,
                    v,
                    nearest_n: n,
                    condition_residual: residual,
                }));
            }
        }
    }
    if let Some((z, v)) = undecided {
        return Err(Error::Indeterminate(format!(
            "z^2 p'(z) = {v} at zero {z} is within the indeterminacy band of 1"
        )));
    }
    Ok(EigenOutcome::Certified(EigenCertificate {
        lambda,
        branch: Branch::SimpleZeros,
        zeros,
        winding,
    }))
}
