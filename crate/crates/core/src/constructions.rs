//! Polynomials `p` of each degree `k >= 3` for which 0 is an isolated point
//! of the spectrum of `T_{z̄+p}`, with machine-checked certificates.
//!
//! With `β^{k+1} = 1 / (1 - (n+1)^{-1/k} e^{iπ/k})` and `α = -β^{-k}`,
//! `p(z) = ((z - α)(z + β)^k - 1) / z`, so `F_0 = (z - α)(z + β)^k` has the
//! single in-disk zero α and `α^2 p'(α) = (n+2)/(n+1)`.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::polynomial::{count_in_disk, ComplexPoly, RootOptions};
use crate::scalar::Real;
use crate::spectral::{
    condition_value, curve_distance, eigen_test, enumerate_lambda, scan_candidates, winding,
    Branch, CandidateLevel, EigenOutcome, HarmonicSymbol, LambdaSet, REPORT_SCHEMA,
};

/// Validation threshold `x`, floored at a few thousand ulps for `f32`.
fn thresh<T: Real>(x: f64) -> T {
    T::lit(x).max(T::epsilon() * T::lit(1e4))
}

fn c<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Residuals<T> {
    /// Coefficient-wise `|1 + z p - (z - α)(z + β)^k|`, relative to the largest coefficient.
    pub identity: T,
    /// `|α^2 p'(α) - (n+2)/(n+1)|`
    pub alpha_condition: T,
    /// `|(1 + α/β)^k + 1/(n+1)|`
    pub pivot: T,
    /// Backward error of `z_∞`, `w_∞` as roots of `z^2 p' - 1`.
    pub z_inf_limit: T,
    pub w_inf_limit: T,
    /// Scaled `max(|F(z_∞)|, |F'(z_∞)|)` for `F = F_{λ_∞}`; same for `w_∞`.
    pub z_inf_double: T,
    pub w_inf_double: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ConstructionParams<T> {
    pub schema: String,
    pub kind: String,
    pub k: usize,
    pub n: usize,
    #[serde(with = "crate::wire::pair")]
    pub beta: Complex<T>,
    #[serde(with = "crate::wire::pair")]
    pub alpha: Complex<T>,
    pub p: ComplexPoly<T>,
    #[serde(with = "crate::wire::pair")]
    pub z_inf: Complex<T>,
    #[serde(with = "crate::wire::pair")]
    pub w_inf: Complex<T>,
    #[serde(with = "crate::wire::pair")]
    pub lambda_inf: Complex<T>,
    #[serde(with = "crate::wire::pair")]
    pub mu_inf: Complex<T>,
    /// `1 / (2k|β|^k)`, the lower modulus bound for `z_∞`, `w_∞`.
    pub c_k: T,
    pub residuals: Residuals<T>,
}

impl<T: Real> ConstructionParams<T> {
    pub fn symbol(&self) -> HarmonicSymbol<T> {
        HarmonicSymbol::new(self.p.clone())
    }
}

/// Principal-branch `β = (1 - (n+1)^{-1/k} e^{iπ/k})^{-1/(k+1)}`.
pub fn beta<T: Real>(k: usize, n: usize) -> Complex<T> {
    let kt = T::from_usize_lossy(k);
    let root = (T::one() / T::from_usize_lossy(n + 1)).powf(T::one() / kt);
    let w = c(T::one()) - Complex::from_polar(root, T::PI() / kt);
    (-w.ln() / T::from_usize_lossy(k + 1)).exp()
}

/// `(z - α)(z + β)^k` from the binomial expansion.
fn product_expanded<T: Real>(k: usize, alpha: Complex<T>, beta: Complex<T>) -> ComplexPoly<T> {
    let mut binom = vec![c(T::zero()); k + 1];
    let mut coef = T::one();
    for (j, slot) in binom.iter_mut().enumerate() {
        *slot = beta.powu((k - j) as u32) * coef;
        coef = coef * T::from_usize_lossy(k - j) / T::from_usize_lossy(j + 1);
    }
    let mut out = vec![c(T::zero()); k + 2];
    for (j, b) in binom.iter().enumerate() {
        out[j + 1] = out[j + 1] + *b;
        out[j] = out[j] - alpha * *b;
    }
    ComplexPoly::new(out)
}

fn core_params<T: Real>(k: usize, n: usize, beta: Complex<T>) -> Result<ConstructionParams<T>> {
    let alpha = -beta.inv().powu(k as u32);
    let mut prod = ComplexPoly::one().mul_linear(-alpha);
    for _ in 0..k {
        prod = prod.mul_linear(beta);
    }
    let p = (&prod - &ComplexPoly::one()).div_z(thresh(1e-12))?;

    let lhs = &p.mul_z() + &ComplexPoly::one();
    let rhs = product_expanded(k, alpha, beta);
    let scale = rhs.max_abs_coeff().max(T::one());
    let identity = (0..=k + 1)
        .map(|i| (lhs.coeff(i) - rhs.coeff(i)).norm())
        .fold(T::zero(), T::max)
        / scale;
    let alpha_condition =
        (alpha * alpha * p.derivative().eval(alpha) - c(condition_value::<T>(n))).norm();
    let pivot = ((c(T::one()) + alpha / beta).powu(k as u32)
        + c(T::one() / T::from_usize_lossy(n + 1)))
    .norm()
        * T::from_usize_lossy(n + 1);
    let zero = c(T::zero());
    Ok(ConstructionParams {
        schema: REPORT_SCHEMA.into(),
        kind: "construction".into(),
        k,
        n,
        beta,
        alpha,
        c_k: T::one() / (T::lit(2.0) * T::from_usize_lossy(k) * beta.norm().powi(k as i32)),
        p,
        z_inf: zero,
        w_inf: zero,
        lambda_inf: zero,
        mu_inf: zero,
        residuals: Residuals {
            identity,
            alpha_condition,
            pivot,
            z_inf_limit: T::zero(),
            w_inf_limit: T::zero(),
            z_inf_double: T::zero(),
            w_inf_double: T::zero(),
        },
    })
}

fn check_invariants<T: Real>(params: &ConstructionParams<T>) -> Result<()> {
    let fail = |what: String| Err(Error::ValidationFailed(what));
    if params.beta.norm() <= T::one() {
        return fail(format!("|beta| = {} is not > 1", params.beta.norm()));
    }
    if params.alpha.norm() >= T::one() {
        return fail(format!("|alpha| = {} is not < 1", params.alpha.norm()));
    }
    let r = &params.residuals;
    if r.identity >= thresh(1e-10) {
        return fail(format!("factorization residual {:e}", r.identity));
    }
    if r.alpha_condition >= thresh(1e-10) {
        return fail(format!("alpha condition residual {:e}", r.alpha_condition));
    }
    if r.pivot >= thresh(1e-10) {
        return fail(format!("(1 + alpha/beta)^k residual {:e}", r.pivot));
    }
    Ok(())
}

/// Backward error of `z` as a root of `q`.
fn backward<T: Real>(q: &ComplexPoly<T>, z: Complex<T>) -> T {
    q.eval(z).norm() / q.abs_eval(z.norm()).max(T::min_positive_value())
}

/// Closed-form in-disk roots `z_∞`, `w_∞` of `z^2 p'(z) - 1` and the limit
/// values `λ_∞ = 1/z_∞ + p(z_∞)`, `μ_∞ = 1/w_∞ + p(w_∞)`.
#[allow(clippy::type_complexity)]
pub fn limit_roots<T: Real>(
    params: &ConstructionParams<T>,
) -> Result<(Complex<T>, Complex<T>, Complex<T>, Complex<T>)> {
    let (_, _, z, w, lz, lw) = limit_with_residuals(params)?;
    Ok((z, w, lz, lw))
}

#[allow(clippy::type_complexity)]
fn limit_with_residuals<T: Real>(
    params: &ConstructionParams<T>,
) -> Result<(
    (T, T),
    (T, T),
    Complex<T>,
    Complex<T>,
    Complex<T>,
    Complex<T>,
)> {
    let k = params.k;
    let kt = T::from_usize_lossy(k);
    let km1 = c(kt - T::one());
    let beta = params.beta;
    let bk = beta.powu(k as u32);
    let disc = (km1 * km1 + beta * bk * T::lit(4.0) * kt).sqrt();
    let denom = bk * (T::lit(2.0) * kt);
    let z = -(disc + km1) / denom;
    let w = (disc - km1) / denom;

    let s = params.symbol();
    let q = s.condition_poly(T::one());
    let (rz, rw) = (backward(&q, z), backward(&q, w));
    let lz = z.inv() + params.p.eval(z);
    let lw = w.inv() + params.p.eval(w);
    let double = |point: Complex<T>, lambda: Complex<T>| {
        let f = s.f_lambda(lambda);
        let (v, d) = f.eval_with_derivative(point);
        let scale = f.abs_eval(point.norm()).max(T::one());
        v.norm().max(d.norm()) / scale
    };
    let (dz, dw) = (double(z, lz), double(w, lw));
    let tol = thresh(1e-9);
    if rz >= tol || rw >= tol {
        return Err(Error::ValidationFailed(format!(
            "limit roots fail z^2 p'(z) = 1: residuals {rz:e}, {rw:e}"
        )));
    }
    if dz >= thresh(1e-8) || dw >= thresh(1e-8) {
        return Err(Error::ValidationFailed(format!(
            "F at the limit values lacks a double zero: residuals {dz:e}, {dw:e}"
        )));
    }
    Ok(((rz, rw), (dz, dw), z, w, lz, lw))
}

/// The degree-`k` polynomial making 0 an isolated eigenvalue with `n_1 = n`.
pub fn build_counterexample<T: Real>(k: usize, n: usize) -> Result<ConstructionParams<T>> {
    if k < 3 {
        return Err(Error::InvalidParams(format!("k = {k}: need k >= 3")));
    }
    if n < 1 {
        return Err(Error::InvalidParams("n must be >= 1".into()));
    }
    let mut params = core_params(k, n, beta(k, n))?;
    check_invariants(&params)?;
    let ((rz, rw), (dz, dw), z, w, lz, lw) = limit_with_residuals(&params)?;
    params.z_inf = z;
    params.w_inf = w;
    params.lambda_inf = lz;
    params.mu_inf = lw;
    params.residuals.z_inf_limit = rz;
    params.residuals.w_inf_limit = rw;
    params.residuals.z_inf_double = dz;
    params.residuals.w_inf_double = dw;
    Ok(params)
}

/// Same construction from an explicitly supplied β, e.g. another branch.
pub fn construction_from_beta<T: Real>(
    k: usize,
    n: usize,
    beta: Complex<T>,
) -> Result<ConstructionParams<T>> {
    core_params(k, n, beta)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Check<T> {
    pub name: String,
    pub passed: bool,
    pub residual: Option<T>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct ConstructionCertificate<T> {
    pub k: usize,
    pub n: usize,
    pub checks: Vec<Check<T>>,
}

/// Independent re-verification of a construction. Fails on the first
/// failing check.
pub fn verify_construction<T: Real>(
    params: &ConstructionParams<T>,
    cfg: &Config<T>,
) -> Result<ConstructionCertificate<T>> {
    check_invariants(params)?;
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, residual: Option<T>, note: String| {
        checks.push(Check {
            name: name.into(),
            passed,
            residual,
            note,
        });
        if passed {
            Ok(())
        } else {
            Err(Error::ValidationFailed(format!(
                "check {name} failed: {}",
                checks.last().unwrap().note
            )))
        }
    };

    // (a) z^2 p' - 1 = (z+β)^{k-1} (k z^2 + ((k-1)/β^k) z - 1/β^{k-1})
    let k = params.k;
    let kt = T::from_usize_lossy(k);
    let beta = params.beta;
    let s = params.symbol();
    let lhs = s.condition_poly(T::one());
    let quad = ComplexPoly::new(vec![
        -beta.inv().powu(k as u32 - 1),
        c(kt - T::one()) / beta.powu(k as u32),
        c(kt),
    ]);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = T::zero();
    for _ in 0..100 {
        let r = T::lit(rng.gen::<f64>().sqrt());
        let t = T::lit(rng.gen::<f64>()) * T::TAU();
        let z = Complex::from_polar(r, t);
        let rhs = (z + beta).powu(k as u32 - 1) * quad.eval(z);
        let l = lhs.eval(z);
        let scale = l.norm().max(rhs.norm()).max(T::one());
        worst = worst.max((l - rhs).norm() / scale);
    }
    push(
        "factorization",
        worst < thresh(1e-9),
        Some(worst),
        format!("max relative residual {worst:e} over 100 in-disk points"),
    )?;

    // (b) 0 is certified with the single zero α and index n.
    let zero = c(T::zero());
    let (ok, res, note) = match eigen_test(&s, zero, cfg)? {
        EigenOutcome::Certified(cert) => {
            let single = cert.branch == Branch::SimpleZeros && cert.zeros.len() == 1;
            let d = cert.zeros.first().map(|z| (z.z - params.alpha).norm());
            let good = single && d.is_some_and(|d| d < thresh(1e-8)) && cert.zeros[0].n == params.n;
            let note = format!(
                "{} zero(s), n = {:?}",
                cert.zeros.len(),
                cert.zeros.iter().map(|z| z.n).collect::<Vec<_>>()
            );
            (good, cert.zeros.first().map(|z| z.condition_residual), note)
        }
        EigenOutcome::NotEigenvalue(why) => (false, None, format!("not an eigenvalue: {why:?}")),
    };
    push("eigen_at_zero", ok, res, note)?;

    // (c) index zero at 0.
    let w = winding(&s, zero, cfg)?;
    push(
        "winding_at_zero",
        w.w == 0 && !w.on_curve,
        None,
        format!("winding {} (on_curve = {})", w.w, w.on_curve),
    )?;

    // (d) modulus bounds.
    let (z, wv, _, _) = limit_roots(params)?;
    let sep = (z - wv).norm();
    push(
        "distinct_limits",
        sep > thresh(1e-8),
        Some(sep),
        format!("|z_inf - w_inf| = {sep:e}"),
    )?;
    if params.n == 1 {
        let upper = T::lit(0.98);
        let inside = |m: T| params.c_k <= m && m < upper;
        push(
            "modulus_bounds",
            inside(z.norm()) && inside(wv.norm()),
            None,
            format!(
                "c_k = {}, |z_inf| = {}, |w_inf| = {}, upper 49/50",
                params.c_k,
                z.norm(),
                wv.norm()
            ),
        )?;
    } else {
        push(
            "modulus_bounds",
            true,
            None,
            "skipped: bounds are established for n = 1 only".into(),
        )?;
    }
    Ok(ConstructionCertificate {
        k: params.k,
        n: params.n,
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct IsolatedPoints<T> {
    pub lambda_set: LambdaSet<T>,
    pub complete: bool,
    /// Least `n` after which every scanned candidate has `>= 2` in-disk zeros.
    pub n_detect: usize,
    /// Largest scanned `n`.
    pub n_max: usize,
    /// Candidate counts per level above `n_detect`, all with winding `>= 1`.
    pub tail_candidates: usize,
    /// Distance from 0 to the rest of the spectrum found.
    pub gap_radius: T,
    pub gap_witness: String,
}

/// Λ for the construction, the empirical tail threshold `N_detect`, and a
/// certified gap around 0.
pub fn isolated_points<T: Real>(
    params: &ConstructionParams<T>,
    cfg: &Config<T>,
) -> Result<IsolatedPoints<T>> {
    let s = params.symbol();
    let lambda_set = enumerate_lambda(&s, cfg)?;
    let zero = c(T::zero());
    if !lambda_set.contains(zero, cfg.tol.dedup_tol) {
        return Err(Error::ValidationFailed(
            "0 was not certified as an eigenvalue".into(),
        ));
    }
    let levels: Vec<CandidateLevel<T>> = scan_candidates(&s, 0..=cfg.n_max, cfg)?;
    let good = |l: &CandidateLevel<T>| l.candidates.iter().all(|c| !c.on_curve && c.inside >= 2);
    let n_detect = levels
        .iter()
        .rposition(|l| !good(l))
        .map_or(0, |i| levels[i].n);
    let tail_candidates = levels
        .iter()
        .filter(|l| l.n > n_detect)
        .map(|l| l.candidates.len())
        .sum();
    if let Some(cert) = lambda_set
        .certificates
        .iter()
        .find(|c| c.zeros.iter().any(|z| z.n > n_detect))
    {
        return Err(Error::ValidationFailed(format!(
            "certified {} uses n beyond N_detect = {n_detect}",
            cert.lambda
        )));
    }

    let curve_dist = curve_distance(&s, zero, T::lit(1e-3));
    let mut gap = curve_dist;
    let mut witness = format!("essential curve at distance >= {curve_dist:e}");
    for cert in &lambda_set.certificates {
        let d = cert.lambda.norm();
        if d > cfg.tol.dedup_tol && d < gap {
            gap = d;
            witness = format!("other eigenvalue {}", cert.lambda);
        }
    }
    // Ring probe: winding 0 inside the gap. Eigenvalues there are already
    // excluded through Λ.
    let opts = RootOptions::from_tolerances(&cfg.tol, cfg.root_max_iter);
    if gap > T::zero() {
        'rings: for j in 1..=8 {
            let r = gap * T::from_usize_lossy(j) / T::lit(8.0);
            for a in 0..64 {
                let pt = Complex::from_polar(r, T::TAU() * T::from_usize_lossy(a) / T::lit(64.0));
                let (inside, on_curve) = count_in_disk(&s.f_lambda(pt), &opts)?;
                if on_curve || inside != 1 {
                    gap = r * T::from_usize_lossy(j - 1) / T::from_usize_lossy(j);
                    witness = format!("ring probe hit spectrum at {pt}");
                    break 'rings;
                }
            }
        }
    }
    if gap <= T::zero() {
        return Err(Error::ValidationFailed(format!(
            "0 is not isolated: {witness}"
        )));
    }
    Ok(IsolatedPoints {
        complete: lambda_set.complete,
        lambda_set,
        n_detect,
        n_max: cfg.n_max,
        tail_candidates,
        gap_radius: gap,
        gap_witness: witness,
    })
}
