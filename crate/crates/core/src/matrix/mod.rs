//! Finite sections of `T_{z̄+p}` in the orthonormal basis
//! `e_n = √(n+1) z^n`, used as a brute-force oracle.
//!
//! Taylor coefficient `c_n` of `f = Σ c_n z^n` is the coordinate
//! `c_n / √(n+1)` in this basis.

mod qr;
mod series;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::ComplexPoly;
use crate::scalar::Real;
use crate::spectral::HarmonicSymbol;

pub use qr::section_eigenvalues;

/// Summary of the radial backward shift example.
pub const RADIAL_SHIFT_NOTE: &str =
    "T_phi with phi = chi_{rD}(z) e^{-i arg z} is a compact weighted backward shift: \
its spectrum and essential spectrum are both {0}, 0 is an eigenvalue of finite multiplicity \
but not isolated in the Weyl sense, so T_phi does not satisfy Weyl's theorem";
pub use series::{residual, series_eigenvector, SeriesEigenvector, SeriesMethod, SeriesVerdict};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", tag = "kind", rename_all = "snake_case")]
pub enum SectionSource<T> {
    Symbol {
        p: ComplexPoly<T>,
    },
    /// `χ_{r𝔻}(z) e^{-i arg z}`
    RadialShift {
        r: T,
    },
}

/// Banded `N × N` section: one superdiagonal and diagonals `0..=k` below.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct FiniteSection<T> {
    pub size: usize,
    pub source: SectionSource<T>,
    /// `upper[j] = entry(j - 1, j)`; `upper[0]` is unused and zero.
    #[serde(with = "crate::wire::pairs")]
    upper: Vec<Complex<T>>,
    /// `lower[m][j] = entry(j + m, j)`.
    lower: Vec<Band<T>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent, bound = "T: Real")]
struct Band<T>(#[serde(with = "crate::wire::pairs")] Vec<Complex<T>>);

impl<T: Real> FiniteSection<T> {
    pub fn bandwidth(&self) -> usize {
        self.lower.len().saturating_sub(1)
    }

    /// `⟨T e_col, e_row⟩`
    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        let zero = Complex::new(T::zero(), T::zero());
        if row >= self.size || col >= self.size {
            return zero;
        }
        if row + 1 == col {
            return self.upper[col];
        }
        if row >= col {
            if let Some(band) = self.lower.get(row - col) {
                return band.0[col];
            }
        }
        zero
    }

    pub fn matvec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.size;
        let mut y = vec![Complex::new(T::zero(), T::zero()); n];
        for col in 0..n.min(x.len()) {
            let v = x[col];
            if col >= 1 {
                y[col - 1] = y[col - 1] + self.upper[col] * v;
            }
            for (m, band) in self.lower.iter().enumerate() {
                if col + m < n {
                    y[col + m] = y[col + m] + band.0[col] * v;
                }
            }
        }
        y
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<Complex<T>>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn frobenius_norm(&self) -> T {
        let sq = self
            .upper
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            + self
                .lower
                .iter()
                .flat_map(|b| b.0.iter())
                .map(|z| z.norm_sqr())
                .fold(T::zero(), |a, b| a + b);
        sq.sqrt()
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.size).map(|i| self.entry(i, i)).collect()
    }

    /// True when every entry off the main diagonal on one side vanishes.
    pub fn is_triangular(&self) -> bool {
        let zero = Complex::new(T::zero(), T::zero());
        let no_upper = self.upper.iter().all(|z| *z == zero);
        let no_lower = self
            .lower
            .iter()
            .skip(1)
            .all(|b| b.0.iter().all(|z| *z == zero));
        no_upper || no_lower
    }
}

fn sqrt_ratio<T: Real>(a: usize, b: usize) -> T {
    (T::from_usize_lossy(a) / T::from_usize_lossy(b)).sqrt()
}

/// Section of `T_{z̄+p}`: `entry(n-1, n) = √(n/(n+1))` and
/// `entry(n+m, n) = p_m √((n+1)/(n+m+1))`.
pub fn build_section<T: Real>(s: &HarmonicSymbol<T>, size: usize) -> Result<FiniteSection<T>> {
    if size < 2 {
        return Err(Error::PreconditionViolated(
            "section size must be >= 2".into(),
        ));
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut upper = vec![zero; size];
    for (n, slot) in upper.iter_mut().enumerate().skip(1) {
        *slot = Complex::new(sqrt_ratio(n, n + 1), T::zero());
    }
    let lower = (0..=s.degree())
        .map(|m| {
            let pm = s.p.coeff(m);
            Band(
                (0..size)
                    .map(|n| {
                        if n + m < size {
                            pm * sqrt_ratio::<T>(n + 1, n + m + 1)
                        } else {
                            zero
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(FiniteSection {
        size,
        source: SectionSource::Symbol { p: s.p.clone() },
        upper,
        lower,
    })
}

/// Section of the compact weighted backward shift `T_φ`,
/// `φ = χ_{r𝔻}(z) e^{-i arg z}`, with weights
/// `w_n = √(n(n+1)) · 2 r^{2n+1} / (2n+1)`.
///
/// Its spectrum and essential spectrum are both `{0}` while 0 is not an
/// eigenvalue of finite multiplicity in the right sense: `T_φ` does not
/// satisfy Weyl's theorem.
pub fn radial_shift_section<T: Real>(r: T, size: usize) -> Result<FiniteSection<T>> {
    if !(r > T::zero() && r < T::one()) {
        return Err(Error::PreconditionViolated(format!(
            "radius {r} must lie in (0, 1)"
        )));
    }
    if size < 2 {
        return Err(Error::PreconditionViolated(
            "section size must be >= 2".into(),
        ));
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut upper = vec![zero; size];
    for (n, slot) in upper.iter_mut().enumerate().skip(1) {
        *slot = Complex::new(radial_weight(r, n), T::zero());
    }
    Ok(FiniteSection {
        size,
        source: SectionSource::RadialShift { r },
        upper,
        lower: vec![Band(vec![zero; size])],
    })
}

/// `w_n = √(n(n+1)) · 2 r^{2n+1} / (2n+1)`
pub fn radial_weight<T: Real>(r: T, n: usize) -> T {
    let nf = T::from_usize_lossy(n);
    (nf * (nf + T::one())).sqrt() * T::lit(2.0) * r.powi(2 * n as i32 + 1)
        / (T::lit(2.0) * nf + T::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    /// Gauss-Legendre nodes and weights on [0, 1].
    fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
        (0..n)
            .map(|i| {
                let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
                let mut dp = 0.0;
                for _ in 0..100 {
                    let (mut p0, mut p1) = (1.0, x);
                    for k in 2..=n {
                        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                    let dx = p1 / dp;
                    x -= dx;
                    if dx.abs() < 1e-16 {
                        break;
                    }
                }
                let w = 2.0 / ((1.0 - x * x) * dp * dp);
                ((x + 1.0) / 2.0, w / 2.0)
            })
            .collect()
    }

    /// `⟨φ e_col, e_row⟩` over `ρ < radius` with normalized area measure.
    fn quad_entry(phi: &dyn Fn(C) -> C, radius: f64, row: usize, col: usize) -> C {
        let gl = gauss_legendre(40);
        let nt = 64;
        let mut acc = C::new(0.0, 0.0);
        for &(u, wu) in &gl {
            let rho = radius * u;
            for t in 0..nt {
                let theta = std::f64::consts::TAU * (t as f64 + 0.5) / nt as f64;
                let z = C::from_polar(rho, theta);
                let en = z.powu(col as u32) * ((col + 1) as f64).sqrt();
                let em = z.powu(row as u32) * ((row + 1) as f64).sqrt();
                acc += phi(z) * en * em.conj() * rho * wu * radius;
            }
        }
        acc * std::f64::consts::TAU / nt as f64 / std::f64::consts::PI
    }

    #[test]
    fn small_sections() {
        let s = HarmonicSymbol::new(ComplexPoly::<f64>::zero());
        let a = build_section(&s, 3).unwrap();
        assert_eq!(a.entry(0, 1), C::new(0.5f64.sqrt(), 0.0));
        assert_eq!(a.entry(1, 2), C::new((2.0f64 / 3.0).sqrt(), 0.0));
        let nonzero = a
            .to_dense()
            .iter()
            .flatten()
            .filter(|z| z.norm() > 0.0)
            .count();
        assert_eq!(nonzero, 2);

        let c = C::new(0.3, -0.2);
        let a = build_section(&HarmonicSymbol::new(ComplexPoly::constant(c)), 5).unwrap();
        assert!(a.diagonal().iter().all(|d| *d == c));

        let a = build_section(
            &HarmonicSymbol::new(ComplexPoly::from_reals(&[0.0, 1.0])),
            3,
        )
        .unwrap();
        assert!((a.entry(1, 0) - C::new(0.5f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!((a.entry(2, 1) - C::new((2.0f64 / 3.0).sqrt(), 0.0)).norm() < 1e-15);
        for i in 0..3 {
            for j in 0..3 {
                assert!((a.entry(i, j) - a.entry(j, i)).norm() < 1e-15);
            }
        }
        assert!(build_section(&s, 1).is_err());
    }

    #[test]
    fn entries_match_quadrature() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3 {
            let deg = rng.gen_range(0..=4);
            let coeffs: Vec<C> = (0..=deg)
                .map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let p = ComplexPoly::new(coeffs);
            let s = HarmonicSymbol::new(p.clone());
            let a = build_section(&s, 12).unwrap();
            let phi = |z: C| z.conj() + p.eval(z);
            for i in 0..12 {
                for j in 0..12 {
                    let q = quad_entry(&phi, 1.0, i, j);
                    assert!(
                        (q - a.entry(i, j)).norm() < 1e-8,
                        "({i},{j}) {q} vs {}",
                        a.entry(i, j)
                    );
                }
            }
        }
    }

    #[test]
    fn radial_weights() {
        for n in 1..=100usize {
            let expect =
                ((n * (n + 1)) as f64).sqrt() * 0.5f64.powi(2 * n as i32) / (2 * n + 1) as f64;
            assert!((radial_weight(0.5, n) - expect).abs() <= 1e-12 * expect.max(1e-300));
        }
        assert!((radial_weight(0.5f64, 1) - 2f64.sqrt() / 12.0).abs() < 1e-15);
        assert!(radial_weight(0.5f64, 200) < 1e-100);
        for r in [0.3f64, 0.5, 0.8] {
            let phi = |z: C| {
                if z.norm() > 0.0 {
                    z.conj() / z.norm()
                } else {
                    C::new(0.0, 0.0)
                }
            };
            for n in 1..6 {
                let q = quad_entry(&phi, r, n - 1, n);
                assert!((q.re - radial_weight(r, n)).abs() < 1e-10 && q.im.abs() < 1e-10);
            }
        }
        assert!(radial_shift_section(1.0f64, 4).is_err());
    }

    #[test]
    fn matvec_agrees_with_dense() {
        let s = HarmonicSymbol::new(ComplexPoly::new(vec![
            C::new(0.1, 0.2),
            C::new(-0.3, 0.0),
            C::new(0.0, 0.7),
        ]));
        let a = build_section(&s, 9).unwrap();
        let x: Vec<C> = (0..9)
            .map(|i| C::new(i as f64, 1.0 - i as f64 * 0.1))
            .collect();
        let y = a.matvec(&x);
        let d = a.to_dense();
        for i in 0..9 {
            let yi: C = (0..9).map(|j| d[i][j] * x[j]).sum();
            assert!((yi - y[i]).norm() < 1e-13);
        }
    }
}
