use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::eigen::resolve_condition;
use super::{root_options, HarmonicSymbol};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::polynomial::find_roots;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", tag = "kind", rename_all = "snake_case")]
pub enum InvertibilityWitness<T> {
    /// `1 + z p` has a zero on the unit circle: 0 is in the essential spectrum.
    ZeroOnCircle {
        #[serde(with = "crate::wire::pair")]
        z: Complex<T>,
    },
    /// Number of in-disk zeros differs from one: nonzero index.
    WrongZeroCount { inside: usize },
    MultipleZero {
        #[serde(with = "crate::wire::pair")]
        z: Complex<T>,
        multiplicity: usize,
    },
    /// The unique zero satisfies `z0^2 p'(z0) = (n+2)/(n+1)`: 0 is an eigenvalue.
    ConditionSatisfied {
        #[serde(with = "crate::wire::pair")]
        z0: Complex<T>,
        n: usize,
        condition_residual: T,
    },
    /// Unique simple zero away from every `(n+2)/(n+1)`.
    Invertible {
        #[serde(with = "crate::wire::pair")]
        z0: Complex<T>,
        #[serde(with = "crate::wire::pair")]
        v: Complex<T>,
        /// True for `deg p <= 2`, where the eigenvalue condition cannot bind.
        condition_skipped: bool,
    },
}

impl<T: Real> InvertibilityWitness<T> {
    pub fn describe(&self) -> String {
        match self {
            Self::ZeroOnCircle { z } => format!("1 + z p(z) vanishes on the unit circle at {z}"),
            Self::WrongZeroCount { inside } => {
                format!("1 + z p(z) has {inside} zeros in the disk, need exactly one")
            }
            Self::MultipleZero { z, multiplicity } => {
                format!("zero {z} of 1 + z p(z) has multiplicity {multiplicity}")
            }
            Self::ConditionSatisfied { n, .. } => {
                format!("eigenvalue condition z0^2 p'(z0) = (n+2)/(n+1) satisfied at n = {n}")
            }
            Self::Invertible { z0, .. } => {
                format!("unique simple zero {z0} fails every eigenvalue condition")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Invertibility<T> {
    pub verdict: bool,
    pub witness: InvertibilityWitness<T>,
}

/// Invertibility of `T_{z̄+p}` from the zeros of `1 + z p(z)`.
pub fn invertible<T: Real>(s: &HarmonicSymbol<T>, cfg: &Config<T>) -> Result<Invertibility<T>> {
    let f = s.f_lambda(Complex::new(T::zero(), T::zero()));
    let roots = find_roots(&f, &root_options(cfg))?;
    let fail = |witness| {
        Ok(Invertibility {
            verdict: false,
            witness,
        })
    };
    if let Some(r) = roots
        .roots
        .iter()
        .find(|r| r.class == crate::polynomial::DiskClass::OnCircle)
    {
        return fail(InvertibilityWitness::ZeroOnCircle { z: r.location });
    }
    let inside: Vec<_> = roots.inside().collect();
    let count: usize = inside.iter().map(|r| r.multiplicity).sum();
    if inside.len() != 1 {
        return fail(InvertibilityWitness::WrongZeroCount { inside: count });
    }
    let z0 = inside[0].location;
    if inside[0].multiplicity > 1 {
        return fail(InvertibilityWitness::MultipleZero {
            z: z0,
            multiplicity: inside[0].multiplicity,
        });
    }
    let v = z0 * z0 * s.p.derivative().eval(z0);
    if s.degree() <= 2 {
        return Ok(Invertibility {
            verdict: true,
            witness: InvertibilityWitness::Invertible {
                z0,
                v,
                condition_skipped: true,
            },
        });
    }
    match resolve_condition(v, cfg) {
        None => Err(Error::Indeterminate(format!(
            "z0^2 p'(z0) = {v} is within the indeterminacy band of 1"
        ))),
        Some((n, residual)) if residual <= cfg.tol.eigen_condition_tol => {
            fail(InvertibilityWitness::ConditionSatisfied {
                z0,
                n,
                condition_residual: residual,
            })
        }
        Some(_) => Ok(Invertibility {
            verdict: true,
            witness: InvertibilityWitness::Invertible {
                z0,
                v,
                condition_skipped: false,
            },
        }),
    }
}
