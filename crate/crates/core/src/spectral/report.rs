use std::fmt::Write as _;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{
    enumerate_lambda, essential_membership, hyponormal_screen, invertible, winding,
    EigenCertificate, HarmonicSymbol, HyponormalScreen, LambdaSet,
};
use crate::config::Config;
use crate::error::Result;
use crate::polynomial::format_complex;
use crate::scalar::Real;

pub const REPORT_SCHEMA: &str = "bergman-spectra/v1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct AtlasEntry<T> {
    #[serde(with = "crate::wire::pair")]
    pub point: Complex<T>,
    /// `None` when the winding could not be decided.
    pub winding: Option<i64>,
    pub on_curve: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct WeylReport<T> {
    pub omega_description: String,
    /// Isolated eigenvalues of finite multiplicity; equal to Λ.
    #[serde(with = "crate::wire::pairs")]
    pub pi00: Vec<Complex<T>>,
    pub weyl_theorem_holds: bool,
    /// Set when Λ was not proven complete beyond `n_max`.
    pub conditional_on_n_max: bool,
    /// Distinct nonzero winding numbers seen on the atlas grid.
    pub omega_windings: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    pub n_max: usize,
    pub complete: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Verdicts<T> {
    pub invertible: Option<bool>,
    pub invertibility_detail: String,
    pub hyponormal_screen: HyponormalScreen<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct SpectralReport<T> {
    pub schema: String,
    pub kind: String,
    pub symbol: HarmonicSymbol<T>,
    pub degree: usize,
    pub config: Config<T>,
    #[serde(with = "crate::wire::pairs")]
    pub essential_samples: Vec<Complex<T>>,
    pub lambda_set: Vec<EigenCertificate<T>>,
    pub winding_atlas: Vec<AtlasEntry<T>>,
    pub weyl: WeylReport<T>,
    pub verdicts: Verdicts<T>,
    pub hardy_relation_note: String,
    pub truncation: Truncation,
}

/// Curve bounding box inflated by 25% on each axis, padded if degenerate.
pub(crate) fn default_bbox<T: Real>(s: &HarmonicSymbol<T>, samples: usize) -> (T, T, T, T) {
    let (a, b, c, d) = s.curve_bbox(samples);
    let quarter = T::lit(0.125);
    let pad_x = ((b - a) * quarter).max(T::lit(0.05));
    let pad_y = ((d - c) * quarter).max(T::lit(0.05));
    (a - pad_x, b + pad_x, c - pad_y, d + pad_y)
}

pub(crate) fn atlas<T: Real>(s: &HarmonicSymbol<T>, cfg: &Config<T>) -> Vec<AtlasEntry<T>> {
    let g = cfg.atlas_grid.max(1);
    let (x0, x1, y0, y1) = default_bbox(s, cfg.essential_samples);
    let gf = T::from_usize_lossy(g);
    let half = T::lit(0.5);
    let mut out = Vec::with_capacity(g * g);
    for row in 0..g {
        for col in 0..g {
            let re = x0 + (x1 - x0) * (T::from_usize_lossy(col) + half) / gf;
            let im = y1 - (y1 - y0) * (T::from_usize_lossy(row) + half) / gf;
            let point = Complex::new(re, im);
            let (winding, on_curve) = match winding(s, point, cfg) {
                Ok(w) => (Some(w.w), w.on_curve),
                Err(_) => (None, false),
            };
            out.push(AtlasEntry {
                point,
                winding,
                on_curve,
            });
        }
    }
    out
}

fn weyl_from<T: Real>(
    s: &HarmonicSymbol<T>,
    lambda: &LambdaSet<T>,
    atlas: &[AtlasEntry<T>],
    cfg: &Config<T>,
) -> Result<WeylReport<T>> {
    let mut holds = true;
    for cert in &lambda.certificates {
        let off_curve = !essential_membership(s, cert.lambda, cfg)?;
        let w = winding(s, cert.lambda, cfg)?;
        holds &= off_curve && !w.on_curve && w.w == 0 && cert.winding == 0;
    }
    let mut omega_windings: Vec<i64> = atlas
        .iter()
        .filter(|a| !a.on_curve)
        .filter_map(|a| a.winding)
        .filter(|&w| w != 0)
        .collect();
    omega_windings.sort_unstable();
    omega_windings.dedup();
    Ok(WeylReport {
        omega_description: format!(
            "essential curve phi(unit circle) ({} samples) union {{lambda off the curve with winding != 0}}; winding values seen: {:?}",
            cfg.essential_samples, omega_windings
        ),
        pi00: lambda.lambdas(),
        weyl_theorem_holds: holds,
        conditional_on_n_max: !lambda.complete,
        omega_windings,
    })
}

/// Weyl spectrum description, `π₀₀ = Λ`, and the Weyl's-theorem verdict.
pub fn weyl_report<T: Real>(s: &HarmonicSymbol<T>, cfg: &Config<T>) -> Result<WeylReport<T>> {
    let lambda = enumerate_lambda(s, cfg)?;
    weyl_from(s, &lambda, &atlas(s, cfg), cfg)
}

/// Full spectral report for one symbol.
pub fn analyze<T: Real>(s: &HarmonicSymbol<T>, cfg: &Config<T>) -> Result<SpectralReport<T>> {
    let lambda = enumerate_lambda(s, cfg)?;
    let atlas = atlas(s, cfg);
    let weyl = weyl_from(s, &lambda, &atlas, cfg)?;
    let (inv, detail) = match invertible(s, cfg) {
        Ok(i) => (Some(i.verdict), i.witness.describe()),
        Err(e) => (None, e.to_string()),
    };
    let hardy_relation_note = format!(
        "Bergman spectrum = Hardy-Toeplitz spectrum (curve union nonzero winding) union Lambda; Lambda has {} point(s){}",
        lambda.certificates.len(),
        if lambda.complete { "" } else { " found up to n_max" }
    );
    Ok(SpectralReport {
        schema: REPORT_SCHEMA.to_string(),
        kind: "spectral_report".into(),
        symbol: s.clone(),
        degree: s.degree(),
        config: *cfg,
        essential_samples: s.essential_curve(cfg.essential_samples),
        lambda_set: lambda.certificates.clone(),
        winding_atlas: atlas,
        weyl,
        verdicts: Verdicts {
            invertible: inv,
            invertibility_detail: detail,
            hyponormal_screen: hyponormal_screen(s, 256, cfg)?,
        },
        hardy_relation_note,
        truncation: Truncation {
            n_max: lambda.n_max,
            complete: lambda.complete,
            reason: lambda.reason,
        },
    })
}

impl<T: Real> SpectralReport<T> {
    /// `index,theta,re,im`
    pub fn essential_csv(&self) -> String {
        let mut out = String::from("index,theta,re,im\n");
        let n = self.essential_samples.len();
        for (j, z) in self.essential_samples.iter().enumerate() {
            let theta = T::TAU() * T::from_usize_lossy(j) / T::from_usize_lossy(n);
            let _ = writeln!(out, "{j},{theta},{},{}", z.re, z.im);
        }
        out
    }

    /// `re,im,branch,winding,zeros` with zeros as `z:n` joined by `;`.
    pub fn lambda_csv(&self) -> String {
        let mut out = String::from("re,im,branch,winding,zeros\n");
        for c in &self.lambda_set {
            let zeros: Vec<String> = c
                .zeros
                .iter()
                .map(|z| format!("{}:{}", format_complex(z.z), z.n))
                .collect();
            let branch = match c.branch {
                super::Branch::NoZeros => "NO_ZEROS",
                super::Branch::SimpleZeros => "SIMPLE_ZEROS",
            };
            let _ = writeln!(
                out,
                "{},{},{branch},{},{}",
                c.lambda.re,
                c.lambda.im,
                c.winding,
                zeros.join(";")
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::ComplexPoly;

    #[test]
    fn conjugate_symbol_report() {
        let s = HarmonicSymbol::new(ComplexPoly::<f64>::zero());
        let cfg = Config {
            atlas_grid: 8,
            ..Config::default()
        };
        let r = analyze(&s, &cfg).unwrap();
        assert!(r.lambda_set.is_empty());
        assert!(r.weyl.weyl_theorem_holds);
        assert!(r.weyl.pi00.is_empty());
        assert_eq!(r.weyl.omega_windings, vec![-1]);
        assert!(r.truncation.complete);
        assert_eq!(r.verdicts.invertible, Some(false));

        let json = serde_json::to_string(&r).unwrap();
        let back: SpectralReport<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), json);

        let csv = r.essential_csv();
        assert_eq!(csv.lines().count(), cfg.essential_samples + 1);
        assert_eq!(r.lambda_csv().lines().count(), 1);
    }
}
