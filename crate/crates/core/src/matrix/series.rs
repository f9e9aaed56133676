use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::FiniteSection;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::polynomial::ComplexPoly;
use crate::scalar::Real;
use crate::spectral::{eigen_test, Branch, EigenOutcome, HarmonicSymbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesMethod {
    /// Forward recurrence on the equation as stated.
    Direct,
    /// `f = Π (z - z_j)^{n_j} g` with the in-disk zeros of `F_λ` split off,
    /// so the recurrence for `g` only sees singularities outside the disk.
    Factored,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SeriesVerdict {
    Decaying,
    Growing,
    Undecided,
}

/// Taylor coefficients of the solution of
/// `(1 + z(p - λ)) f' = -(2(p - λ) + z p') f`, `f(0) = 1`.
///
/// Stored coefficients are the true ones times `exp(-log_scale)`; the scale
/// only moves when the recurrence would overflow.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct SeriesEigenvector<T> {
    #[serde(with = "crate::wire::pair")]
    pub lambda: Complex<T>,
    #[serde(with = "crate::wire::pairs")]
    pub coeffs: Vec<Complex<T>>,
    pub log_scale: T,
    pub growth_ratio: T,
    pub verdict: SeriesVerdict,
    pub method: SeriesMethod,
    /// Set when the first pass was undecided and the length was doubled.
    pub retried: bool,
}

fn recurrence<T: Real>(
    s: &HarmonicSymbol<T>,
    lambda: Complex<T>,
    len: usize,
) -> (Vec<Complex<T>>, T) {
    let k = s.degree();
    let q: Vec<Complex<T>> = (0..=k)
        .map(|m| {
            if m == 0 {
                s.p.coeff(0) - lambda
            } else {
                s.p.coeff(m)
            }
        })
        .collect();
    let zero = Complex::new(T::zero(), T::zero());
    let mut c = vec![zero; len + 1];
    c[0] = Complex::new(T::one(), T::zero());
    let mut log_scale = T::zero();
    let big = T::max_value().sqrt().sqrt();
    for j in 0..len {
        let mut acc = zero;
        for m in 0..=k.min(j) {
            acc = acc + q[m] * c[j - m];
        }
        let factor = T::from_usize_lossy(j + 2) / T::from_usize_lossy(j + 1);
        c[j + 1] = -acc * factor;
        if c[j + 1].norm() > big {
            let inv = T::one() / big;
            for x in c.iter_mut().take(j + 2) {
                *x = *x * inv;
            }
            log_scale = log_scale + big.ln();
        }
    }
    (c, log_scale)
}

/// Series for `f = Π (z - z_j)^{n_j} g`, normalized to `f(0) = 1`.
///
/// With `F_λ = D E`, `D = Π (z - z_j)`, the equation for `g` reads
/// `E g' = Ñ g` where `Ñ = (-(2q + z p') - E Σ n_j D/(z - z_j)) / D` is a
/// polynomial exactly when every `z_j` satisfies the eigenvalue condition.
fn factored<T: Real>(
    s: &HarmonicSymbol<T>,
    lambda: Complex<T>,
    zeros: &[(Complex<T>, usize)],
    len: usize,
) -> Vec<Complex<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let f = s.f_lambda(lambda);
    let mut e = f.clone();
    let mut d = ComplexPoly::one();
    for &(z, _) in zeros {
        e = e.deflate(z).0;
        d = d.mul_linear(-z);
    }
    let mut sum = ComplexPoly::zero();
    for &(z, n) in zeros {
        let dj = d.deflate(z).0;
        sum = &sum + &dj.scale(Complex::new(T::from_usize_lossy(n), T::zero()));
    }
    let q = &s.p - &ComplexPoly::constant(lambda);
    let lead = &q.scale(Complex::new(T::lit(2.0), T::zero())) + &s.p.derivative().mul_z();
    let mut ntil = -&(&lead + &(&e * &sum));
    for &(z, _) in zeros {
        ntil = ntil.deflate(z).0;
    }

    let mut g = vec![zero; len + 1];
    g[0] = Complex::new(T::one(), T::zero());
    let (ec, nc) = (e.coeffs(), ntil.coeffs());
    for j in 0..len {
        let mut acc = zero;
        for (m, nm) in nc.iter().enumerate().take(j + 1) {
            acc = acc + *nm * g[j - m];
        }
        for (m, em) in ec.iter().enumerate().skip(1).take(j + 1) {
            acc = acc - *em * g[j + 1 - m] * T::from_usize_lossy(j + 1 - m);
        }
        g[j + 1] = acc / (ec[0] * T::from_usize_lossy(j + 1));
    }
    let mut pre = ComplexPoly::one();
    for &(z, n) in zeros {
        for _ in 0..n {
            pre = pre.mul_linear(-z);
        }
    }
    let norm = pre.coeff(0);
    let pc = pre.coeffs();
    (0..=len)
        .map(|j| {
            let mut acc = zero;
            for (m, a) in pc.iter().enumerate().take(j + 1) {
                acc = acc + *a * g[j - m];
            }
            acc / norm
        })
        .collect()
}

/// `(‖last block‖∞ / ‖first block‖∞)^{1/gap}` over the final window.
fn growth<T: Real>(c: &[Complex<T>]) -> T {
    let m = c.len() - 1;
    let window = 100.min(m / 4).max(4);
    let block = (window / 5).max(1);
    let start = m + 1 - window;
    let norm = |r: std::ops::Range<usize>| c[r].iter().map(|z| z.norm()).fold(T::zero(), T::max);
    let first = norm(start..start + block);
    let last = norm(m + 1 - block..m + 1);
    if last == T::zero() {
        return T::zero();
    }
    if first == T::zero() {
        return T::infinity();
    }
    (last / first).powf(T::one() / T::from_usize_lossy(window - block))
}

fn verdict<T: Real>(ratio: T, margin: T) -> SeriesVerdict {
    if ratio < T::one() - margin {
        SeriesVerdict::Decaying
    } else if ratio > T::one() + margin {
        SeriesVerdict::Growing
    } else {
        SeriesVerdict::Undecided
    }
}

/// Power-series solution of the eigenvector equation with `len + 1`
/// coefficients, retried once at twice the length when undecided.
///
/// When λ is a certified eigenvalue with zeros of `F_λ` in the disk, the
/// direct recurrence amplifies rounding by `|1/z_j|^j`; the factored form
/// is used instead.
pub fn series_eigenvector<T: Real>(
    s: &HarmonicSymbol<T>,
    lambda: Complex<T>,
    len: usize,
    cfg: &Config<T>,
) -> Result<SeriesEigenvector<T>> {
    if len < 50 {
        return Err(Error::PreconditionViolated(
            "series length must be >= 50".into(),
        ));
    }
    let zeros: Option<Vec<(Complex<T>, usize)>> = match eigen_test(s, lambda, cfg) {
        Ok(EigenOutcome::Certified(cert)) if cert.branch == Branch::SimpleZeros => {
            Some(cert.zeros.iter().map(|z| (z.z, z.n)).collect())
        }
        _ => None,
    };
    let method = if zeros.is_some() {
        SeriesMethod::Factored
    } else {
        SeriesMethod::Direct
    };
    let run = |len: usize| match &zeros {
        Some(z) => (factored(s, lambda, z, len), T::zero()),
        None => recurrence(s, lambda, len),
    };
    let margin = cfg.tol.series_margin;
    let (mut coeffs, mut log_scale) = run(len);
    let mut ratio = growth(&coeffs);
    let mut retried = false;
    if verdict(ratio, margin) == SeriesVerdict::Undecided {
        (coeffs, log_scale) = run(2 * len);
        ratio = growth(&coeffs);
        retried = true;
    }
    Ok(SeriesEigenvector {
        lambda,
        coeffs,
        log_scale,
        growth_ratio: ratio,
        verdict: verdict(ratio, margin),
        method,
        retried,
    })
}

/// `‖(A - λI) ĉ‖₂ / ‖ĉ‖₂` over rows `0..N-k`, where `ĉ_n = c_n / √(n+1)`.
pub fn residual<T: Real>(section: &FiniteSection<T>, v: &SeriesEigenvector<T>) -> Result<T> {
    let n = section.size;
    let k = section.bandwidth();
    let m = v.coeffs.len() - 1;
    if n + k > m {
        return Err(Error::SizeMismatch(format!(
            "section size {n} needs series length >= {} (have {m})",
            n + k
        )));
    }
    let x: Vec<Complex<T>> = (0..n)
        .map(|i| v.coeffs[i] / T::from_usize_lossy(i + 1).sqrt())
        .collect();
    let y = section.matvec(&x);
    let rows = n - k;
    let num = (0..rows)
        .map(|i| (y[i] - v.lambda * x[i]).norm_sqr())
        .fold(T::zero(), |a, b| a + b)
        .sqrt();
    let den = x
        .iter()
        .map(|z| z.norm_sqr())
        .fold(T::zero(), |a, b| a + b)
        .sqrt();
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_counterexample;
    use crate::matrix::build_section;

    type C = Complex<f64>;

    fn cfg() -> Config<f64> {
        Config::default()
    }

    #[test]
    fn kernel_of_conjugate_shift() {
        let s = HarmonicSymbol::new(ComplexPoly::<f64>::zero());
        let v = series_eigenvector(&s, C::new(0.0, 0.0), 400, &cfg()).unwrap();
        assert_eq!(v.coeffs[0], C::new(1.0, 0.0));
        assert!(v.coeffs[1..].iter().all(|c| *c == C::new(0.0, 0.0)));
        assert_eq!(v.verdict, SeriesVerdict::Decaying);
        let a = build_section(&s, 200).unwrap();
        assert_eq!(residual(&a, &v).unwrap(), 0.0);
    }

    #[test]
    fn reproducing_kernel_eigenvector() {
        let s = HarmonicSymbol::new(ComplexPoly::<f64>::zero());
        let v = series_eigenvector(&s, C::new(0.3, 0.0), 400, &cfg()).unwrap();
        for j in 0..=50 {
            let expect = (j + 1) as f64 * 0.3f64.powi(j as i32);
            assert!((v.coeffs[j].re - expect).abs() <= 1e-15 * expect && v.coeffs[j].im == 0.0);
        }
        assert_eq!(v.verdict, SeriesVerdict::Decaying);
        let a = build_section(&s, 200).unwrap();
        assert!(residual(&a, &v).unwrap() < 1e-8);
        let short = series_eigenvector(&s, C::new(0.3, 0.0), 60, &cfg()).unwrap();
        assert!(matches!(residual(&a, &short), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn recurrence_solves_the_equation() {
        let s = HarmonicSymbol::new(ComplexPoly::new(vec![
            C::new(0.2, -0.1),
            C::new(0.5, 0.3),
            C::new(-0.4, 0.0),
            C::new(0.1, 0.6),
        ]));
        let lambda = C::new(0.1, 0.2);
        let m = 80;
        let v = series_eigenvector(&s, lambda, m, &cfg()).unwrap();
        let f = ComplexPoly::new(v.coeffs.clone());
        let q = &s.p - &ComplexPoly::constant(lambda);
        let lhs = &s.f_lambda(lambda) * &f.derivative();
        let two_q = q.scale(C::new(2.0, 0.0));
        let rhs = -&(&(&two_q + &s.p.derivative().mul_z()) * &f);
        let k = s.degree();
        for j in 0..=(v.coeffs.len() - 1 - k - 2) {
            let d = (lhs.coeff(j) - rhs.coeff(j)).norm();
            let scale = lhs.coeff(j).norm().max(1.0);
            assert!(d <= 1e-12 * scale, "j = {j}: {d}");
        }
    }

    #[test]
    fn factored_series_solves_the_equation() {
        let params = build_counterexample::<f64>(4, 2).unwrap();
        let s = params.symbol();
        let zero = C::new(0.0, 0.0);
        let v = series_eigenvector(&s, zero, 120, &cfg()).unwrap();
        assert_eq!(v.method, SeriesMethod::Factored);
        let f = ComplexPoly::new(v.coeffs.clone());
        let lhs = &s.f_lambda(zero) * &f.derivative();
        let rhs = -&(&(&s.p.scale(C::new(2.0, 0.0)) + &s.p.derivative().mul_z()) * &f);
        for j in 0..=(v.coeffs.len() - 1 - s.degree() - 2) {
            let d = (lhs.coeff(j) - rhs.coeff(j)).norm();
            assert!(d <= 1e-11 * lhs.coeff(j).norm().max(1.0), "j = {j}: {d}");
        }
    }

    #[test]
    fn construction_eigenvector() {
        let params = build_counterexample::<f64>(3, 1).unwrap();
        let s = params.symbol();
        let v = series_eigenvector(&s, C::new(0.0, 0.0), 400, &cfg()).unwrap();
        assert_eq!(v.method, SeriesMethod::Factored);
        assert!((v.coeffs[0] - C::new(1.0, 0.0)).norm() < 1e-15);
        let a = build_section(&s, 200).unwrap();
        let r = residual(&a, &v).unwrap();
        assert!(r < 1e-6, "residual {r}");
        // F_0 has a triple zero at -β just outside the disk, so the
        // coefficients are still in their pre-asymptotic growth phase here.
        assert_eq!(v.verdict, SeriesVerdict::Growing);
    }

    #[test]
    fn resolvent_point_grows() {
        let params = build_counterexample::<f64>(3, 1).unwrap();
        let s = params.symbol();
        // Outside the curve, and inside the small gap around 0.
        for lam in [C::new(-3.0, 0.0), C::new(2e-6, 1e-6)] {
            let w = crate::spectral::winding(&s, lam, &cfg()).unwrap();
            assert_eq!(w.w, 0);
            assert!(crate::spectral::eigen_test(&s, lam, &cfg())
                .unwrap()
                .certificate()
                .is_none());
            let v = series_eigenvector(&s, lam, 400, &cfg()).unwrap();
            assert_eq!(v.method, SeriesMethod::Direct);
            assert_eq!(
                v.verdict,
                SeriesVerdict::Growing,
                "ratio {}",
                v.growth_ratio
            );
        }
    }
}
