use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{HarmonicSymbol, SpectralReport};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HyponormalVerdict {
    NotHyponormal,
    /// The boundary condition `|p'| >= 1` holds; it is only necessary.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct HyponormalScreen<T> {
    pub verdict: HyponormalVerdict,
    /// `min |p'(e^{iθ})|`
    pub min_modulus: T,
    pub theta_at_min: T,
}

/// Necessary condition for hyponormality of `T_{z̄+p}`: `|p'| >= 1` on the circle.
pub fn hyponormal_screen<T: Real>(
    s: &HarmonicSymbol<T>,
    samples: usize,
    cfg: &Config<T>,
) -> Result<HyponormalScreen<T>> {
    if samples < 16 {
        return Err(Error::PreconditionViolated(
            "hyponormal screen needs >= 16 samples".into(),
        ));
    }
    let dp = s.p.derivative();
    let f = |t: T| dp.eval(Complex::from_polar(T::one(), t)).norm();
    let step = T::TAU() / T::from_usize_lossy(samples);
    let (best_j, _) = (0..samples)
        .map(|j| (j, f(step * T::from_usize_lossy(j))))
        .fold(
            (0, T::infinity()),
            |acc, cur| if cur.1 < acc.1 { cur } else { acc },
        );

    // Golden-section refinement on the bracketing interval.
    let centre = step * T::from_usize_lossy(best_j);
    let (mut a, mut b) = (centre - step, centre + step);
    let ratio = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    let sampled_min = f(centre);
    let (theta, min_modulus) = if fc.min(fd) < sampled_min {
        if fc < fd {
            (c, fc)
        } else {
            (d, fd)
        }
    } else {
        (centre, sampled_min)
    };
    let verdict = if min_modulus < T::one() - cfg.tol.screen_margin {
        HyponormalVerdict::NotHyponormal
    } else {
        HyponormalVerdict::Inconclusive
    };
    Ok(HyponormalScreen {
        verdict,
        min_modulus,
        theta_at_min: theta,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct RangeInclusion<T> {
    pub holds: bool,
    pub checked_points: usize,
    /// Largest nearest-sample distance among checked points.
    pub worst_distance: T,
    /// Distance allowed by the sampling density of `φ(𝔻)`.
    pub allowed_distance: T,
}

/// Checks that every spectrum point of the report lies in the closure of
/// `φ(𝔻)`, sampled on a `grid × grid` polar mesh.
pub fn range_inclusion_check<T: Real>(
    s: &HarmonicSymbol<T>,
    report: &SpectralReport<T>,
    grid: usize,
    cfg: &Config<T>,
) -> Result<RangeInclusion<T>> {
    if s.degree() > 2 {
        return Err(Error::UnsupportedDegree(s.degree()));
    }
    let grid = grid.max(2);
    let gm1 = T::from_usize_lossy(grid - 1);
    let step = T::TAU() / T::from_usize_lossy(grid);
    let mut mesh = vec![Complex::new(T::zero(), T::zero()); grid * grid];
    for i in 0..grid {
        let r = T::from_usize_lossy(i) / gm1;
        for j in 0..grid {
            mesh[i * grid + j] = s.eval(Complex::from_polar(r, step * T::from_usize_lossy(j)));
        }
    }
    let mut h = T::zero();
    for i in 0..grid {
        for j in 0..grid {
            let here = mesh[i * grid + j];
            let around = mesh[i * grid + (j + 1) % grid];
            h = h.max((around - here).norm());
            if i + 1 < grid {
                h = h.max((mesh[(i + 1) * grid + j] - here).norm());
            }
        }
    }
    let allowed = h + cfg.tol.range_tol;

    let points = report
        .essential_samples
        .iter()
        .copied()
        .chain(report.lambda_set.iter().map(|c| c.lambda))
        .chain(
            report
                .winding_atlas
                .iter()
                .filter(|a| !a.on_curve && a.winding.is_some_and(|w| w != 0))
                .map(|a| a.point),
        );
    let mut worst = T::zero();
    let mut checked = 0usize;
    for q in points {
        let d = mesh
            .iter()
            .map(|m| (*m - q).norm())
            .fold(T::infinity(), T::min);
        worst = worst.max(d);
        checked += 1;
    }
    Ok(RangeInclusion {
        holds: worst <= allowed,
        checked_points: checked,
        worst_distance: worst,
        allowed_distance: allowed,
    })
}
