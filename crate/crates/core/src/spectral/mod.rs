//! Spectral picture of `T_{z̄+p}`: essential curve, winding numbers,
//! eigenvalue certificates, invertibility and Weyl data.

mod classify;
mod eigen;
mod invertible;
mod lambda;
mod report;
mod screen;
mod winding;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::polynomial::{ComplexPoly, RootOptions};
use crate::scalar::Real;

pub use classify::{classify_point, PointClass};
pub use eigen::{eigen_test, Branch, EigenCertificate, EigenOutcome, NotEigenvalue, ZeroRecord};
pub use invertible::{invertible, Invertibility, InvertibilityWitness};
pub use lambda::{enumerate_lambda, scan_candidates, Candidate, CandidateLevel, LambdaSet};
pub(crate) use report::default_bbox;
pub use report::{
    analyze, weyl_report, AtlasEntry, SpectralReport, Truncation, WeylReport, REPORT_SCHEMA,
};
pub use screen::{
    hyponormal_screen, range_inclusion_check, HyponormalScreen, HyponormalVerdict, RangeInclusion,
};
pub use winding::{curve_distance, essential_membership, winding, winding_by_argument, Winding};

/// The symbol `φ(z) = z̄ + p(z)`; only the analytic part is stored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct HarmonicSymbol<T> {
    pub p: ComplexPoly<T>,
}

impl<T: Real> HarmonicSymbol<T> {
    pub fn new(p: ComplexPoly<T>) -> Self {
        HarmonicSymbol { p }
    }

    pub fn degree(&self) -> usize {
        self.p.degree()
    }

    /// `φ(z)` for `z` in the closed disk.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        z.conj() + self.p.eval(z)
    }

    /// `φ(e^{iθ})`
    pub fn boundary(&self, theta: T) -> Complex<T> {
        let z = Complex::from_polar(T::one(), theta);
        z.conj() + self.p.eval(z)
    }

    /// Uniform samples of the essential curve `φ(∂𝔻)`.
    pub fn essential_curve(&self, samples: usize) -> Vec<Complex<T>> {
        let step = T::TAU() / T::from_usize_lossy(samples);
        (0..samples)
            .map(|j| self.boundary(step * T::from_usize_lossy(j)))
            .collect()
    }

    /// `F_λ(z) = 1 + z (p(z) - λ)`. On the circle `φ(z) - λ = F_λ(z) / z`.
    pub fn f_lambda(&self, lambda: Complex<T>) -> ComplexPoly<T> {
        let shifted = &self.p - &ComplexPoly::constant(lambda);
        &shifted.mul_z() + &ComplexPoly::one()
    }

    /// The symbol of `T_φ - λ`, i.e. `z̄ + (p - λ)`.
    pub fn translate(&self, lambda: Complex<T>) -> Self {
        HarmonicSymbol::new(&self.p - &ComplexPoly::constant(lambda))
    }

    /// `z^2 p'(z) - c`; its in-disk roots generate the eigenvalue candidates.
    pub fn condition_poly(&self, c: T) -> ComplexPoly<T> {
        let zz = ComplexPoly::monomial(Complex::new(T::one(), T::zero()), 2);
        &(&zz * &self.p.derivative()) - &ComplexPoly::constant(Complex::new(c, T::zero()))
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.p.coeffs().iter().all(|c| c.im == T::zero())
    }

    /// Bounding box `(re_min, re_max, im_min, im_max)` of the sampled curve.
    pub fn curve_bbox(&self, samples: usize) -> (T, T, T, T) {
        let pts = self.essential_curve(samples);
        let mut b = (
            T::infinity(),
            T::neg_infinity(),
            T::infinity(),
            T::neg_infinity(),
        );
        for z in pts {
            b.0 = b.0.min(z.re);
            b.1 = b.1.max(z.re);
            b.2 = b.2.min(z.im);
            b.3 = b.3.max(z.im);
        }
        b
    }
}

pub(crate) fn root_options<T: Real>(cfg: &Config<T>) -> RootOptions<T> {
    RootOptions::from_tolerances(&cfg.tol, cfg.root_max_iter)
}

/// `(n + 2) / (n + 1)`
pub(crate) fn condition_value<T: Real>(n: usize) -> T {
    T::from_usize_lossy(n + 2) / T::from_usize_lossy(n + 1)
}
