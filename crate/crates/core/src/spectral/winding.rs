use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{root_options, HarmonicSymbol};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::polynomial::count_in_disk;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Winding {
    /// Winding number of `φ(∂𝔻)` about λ; minus the Fredholm index.
    pub w: i64,
    /// λ lies within the numeric band of the essential curve; `w` is then
    /// only the count of strictly interior zeros minus one.
    pub on_curve: bool,
}

/// Winding number from the discrete total argument variation of
/// `φ(e^{iθ}) - λ` over `samples` equispaced points.
pub fn winding_by_argument<T: Real>(
    s: &HarmonicSymbol<T>,
    lambda: Complex<T>,
    samples: usize,
) -> i64 {
    let step = T::TAU() / T::from_usize_lossy(samples);
    let first = s.boundary(T::zero()) - lambda;
    let mut prev = first;
    let mut total = T::zero();
    for j in 1..=samples {
        let cur = if j == samples {
            first
        } else {
            s.boundary(step * T::from_usize_lossy(j)) - lambda
        };
        total = total + (cur / prev).arg();
        prev = cur;
    }
    (total / T::TAU()).round().to_i64().unwrap_or(i64::MIN)
}

/// Winding number by counting zeros of `F_λ` in the disk, cross-checked
/// against the argument variation when λ is off the curve.
pub fn winding<T: Real>(
    s: &HarmonicSymbol<T>,
    lambda: Complex<T>,
    cfg: &Config<T>,
) -> Result<Winding> {
    let (inside, on_curve) = count_in_disk(&s.f_lambda(lambda), &root_options(cfg))?;
    let w = inside as i64 - 1;
    if on_curve {
        return Ok(Winding { w, on_curve });
    }
    let mut samples = cfg.arg_samples;
    loop {
        let by_arg = winding_by_argument(s, lambda, samples);
        if by_arg == w {
            return Ok(Winding { w, on_curve });
        }
        if samples >= cfg.max_arg_samples {
            return Err(Error::CrossCheckMismatch {
                lambda: format!("{lambda}"),
                by_roots: w,
                by_arg,
            });
        }
        samples = (samples * 2).min(cfg.max_arg_samples);
    }
}

/// λ ∈ φ(∂𝔻) up to the boundary band.
pub fn essential_membership<T: Real>(
    s: &HarmonicSymbol<T>,
    lambda: Complex<T>,
    cfg: &Config<T>,
) -> Result<bool> {
    Ok(count_in_disk(&s.f_lambda(lambda), &root_options(cfg))?.1)
}

/// Lower bound on the distance from λ to the essential curve, within a
/// relative factor `1 - rel` of the true distance.
///
/// Uses `|φ(e^{iθ}) - λ| = |F_λ(e^{iθ})| = |G(θ)|`. On each θ-interval the
/// linear Taylor part of `G` is minimized exactly over the interval and the
/// rest is bounded with `|G''(m)|` and `sup |G'''| <= Σ j^3 |a_j|`; only
/// intervals that could still hold the minimum are bisected.
pub fn curve_distance<T: Real>(s: &HarmonicSymbol<T>, lambda: Complex<T>, rel: T) -> T {
    let f = s.f_lambda(lambda);
    let fp = f.derivative();
    let fpp = fp.derivative();
    let m3 = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, a)| T::from_usize_lossy(j).powi(3) * a.norm())
        .fold(T::zero(), |acc, x| acc + x);
    let half = T::lit(0.5);
    let sixth = T::one() / T::lit(6.0);
    // (|G(m)|, lower bound of |G| on [m - h, m + h])
    let bound = |m: T, h: T| {
        let z = Complex::from_polar(T::one(), m);
        let g = f.eval(z);
        let zf1 = z * fp.eval(z);
        let g1 = zf1 * Complex::i();
        let g2 = -(zf1 + z * z * fpp.eval(z));
        let b2 = g1.norm_sqr();
        let t = if b2 > T::zero() {
            (-(g.conj() * g1).re / b2).max(-h).min(h)
        } else {
            T::zero()
        };
        let lin = (g + g1 * t).norm();
        (
            g.norm(),
            lin - g2.norm() * h * h * half - m3 * h * h * h * sixth,
        )
    };
    let n = 4096;
    let width = T::TAU() / T::from_usize_lossy(n);
    let mut upper = T::infinity();
    let mut pending: Vec<(T, T, T)> = (0..n)
        .map(|j| {
            let m = width * (T::from_usize_lossy(j) + half);
            let (g, lb) = bound(m, width * half);
            upper = upper.min(g);
            (m, width * half, lb)
        })
        .collect();
    let mut lower = upper;
    let min_half = T::epsilon() * T::lit(16.0);
    while let Some((m, h, lb)) = pending.pop() {
        if lb >= upper * (T::one() - rel) || h <= min_half {
            lower = lower.min(lb.max(T::zero()).min(upper));
            continue;
        }
        let h2 = h * half;
        for c in [m - h2, m + h2] {
            let (g, lb) = bound(c, h2);
            upper = upper.min(g);
            pending.push((c, h2, lb));
        }
    }
    lower.max(T::zero())
}
