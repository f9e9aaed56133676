//! Dense complex polynomials, simultaneous root finding, and root pairing.

mod matching;
mod roots;
mod text;

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use matching::{match_roots, Matching, RootPair};
pub use roots::{count_in_disk, find_roots, DiskClass, Root, RootOptions, RootSet};
pub use text::{format_complex, parse_complex};

/// Dense polynomial with complex coefficients, `coeffs[i]` multiplying `z^i`.
///
/// Trailing exact zeros are always trimmed; the zero polynomial is stored
/// as a single zero coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> ComplexPoly<T> {
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex::zero());
        }
        ComplexPoly { coeffs }
    }

    pub fn from_reals(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c])
    }

    pub fn zero() -> Self {
        Self::constant(Complex::zero())
    }

    pub fn one() -> Self {
        Self::constant(Complex::one())
    }

    /// `c * z^power`
    pub fn monomial(c: Complex<T>, power: usize) -> Self {
        let mut coeffs = vec![Complex::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    /// Monic polynomial with the given roots (repeated roots listed repeatedly).
    pub fn from_roots(roots: &[Complex<T>]) -> Self {
        roots.iter().fold(Self::one(), |acc, &r| acc.mul_linear(-r))
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Complex<T> {
        self.coeffs.get(i).copied().unwrap_or_else(Complex::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex<T> {
        self.coeffs[self.degree()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn max_abs_coeff(&self) -> T {
        self.coeffs.iter().map(|c| c.norm()).fold(T::zero(), T::max)
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, &c| acc * z + c)
    }

    /// `(P(z), P'(z))` in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let n = self.degree();
        let mut value = self.coeffs[n];
        let mut deriv = Complex::zero();
        for &c in self.coeffs[..n].iter().rev() {
            deriv = deriv * z + value;
            value = value * z + c;
        }
        (value, deriv)
    }

    /// `sum |a_i| r^i`, the scale against which `|P(z)|` is a backward error
    /// when `|z| = r`.
    pub fn abs_eval(&self, r: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * T::from_usize_lossy(i))
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Multiplies by `z`.
    pub fn mul_z(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex::zero());
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs)
    }

    /// Multiplies by `(z + c)`.
    pub fn mul_linear(&self, c: Complex<T>) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Complex::zero(); n + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[i] = out[i] + a * c;
            out[i + 1] = out[i + 1] + a;
        }
        Self::new(out)
    }

    /// Divides by `z`, requiring `|P(0)| <= tol`. The constant term is dropped.
    pub fn div_z(&self, tol: T) -> Result<Self> {
        let c0 = self.coeffs[0].norm();
        if c0 > tol {
            return Err(Error::ValidationFailed(format!(
                "division by z leaves remainder {c0:e}"
            )));
        }
        if self.degree() == 0 {
            return Ok(Self::zero());
        }
        Ok(Self::new(self.coeffs[1..].to_vec()))
    }

    /// Synthetic division by `(z - r)`: returns the quotient and `P(r)`.
    pub fn deflate(&self, r: Complex<T>) -> (Self, Complex<T>) {
        let n = self.coeffs.len();
        if n == 1 {
            return (Self::zero(), self.coeffs[0]);
        }
        let mut q = vec![Complex::zero(); n - 1];
        let mut acc = self.coeffs[n - 1];
        for i in (0..n - 1).rev() {
            q[i] = acc;
            acc = self.coeffs[i] + acc * r;
        }
        (Self::new(q), acc)
    }

    /// Coefficients of `P(z + c)`.
    pub fn taylor_shift(&self, c: Complex<T>) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let next = a[j + 1];
                a[j] = a[j] + next * c;
            }
        }
        Self::new(a)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl<T: Real> Add for &ComplexPoly<T> {
    type Output = ComplexPoly<T>;
    fn add(self, rhs: Self) -> ComplexPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Real> Sub for &ComplexPoly<T> {
    type Output = ComplexPoly<T>;
    fn sub(self, rhs: Self) -> ComplexPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Real> Mul for &ComplexPoly<T> {
    type Output = ComplexPoly<T>;
    fn mul(self, rhs: Self) -> ComplexPoly<T> {
        let mut out = vec![Complex::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        ComplexPoly::new(out)
    }
}

impl<T: Real> Neg for &ComplexPoly<T> {
    type Output = ComplexPoly<T>;
    fn neg(self) -> ComplexPoly<T> {
        ComplexPoly::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl<T: Real> Serialize for ComplexPoly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::wire::pairs::serialize(&self.coeffs, s)
    }
}

impl<'de, T: Real> Deserialize<'de> for ComplexPoly<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        crate::wire::pairs::deserialize(d).map(ComplexPoly::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    #[test]
    fn eval_with_derivative_small_cases() {
        let p = ComplexPoly::from_reals(&[0.0, -1.0, 1.0]);
        assert_eq!(p.eval_with_derivative(c(1.0)), (c(0.0), c(1.0)));

        let one = ComplexPoly::<f64>::one();
        assert_eq!(
            one.eval_with_derivative(C::new(0.3, -2.0)),
            (c(1.0), c(0.0))
        );

        // F_0 for p = z^2 - z
        let f = ComplexPoly::from_reals(&[1.0, 0.0, -1.0, 1.0]);
        assert_eq!(f.eval_with_derivative(c(-1.0)), (c(-1.0), c(5.0)));
    }

    #[test]
    fn degree_one_is_exact() {
        let p = ComplexPoly::new(vec![C::new(0.1, 0.2), C::new(-0.7, 1.3)]);
        let z = C::new(0.37, -0.91);
        let (v, d) = p.eval_with_derivative(z);
        assert_eq!(v, C::new(0.1, 0.2) + C::new(-0.7, 1.3) * z);
        assert_eq!(d, C::new(-0.7, 1.3));
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = ComplexPoly::from_reals(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        let z = ComplexPoly::<f64>::new(vec![]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), 0);
    }

    #[test]
    fn derivative_degree() {
        let p = ComplexPoly::from_reals(&[1.0, 2.0, 3.0]);
        assert_eq!(p.derivative(), ComplexPoly::from_reals(&[2.0, 6.0]));
        assert_eq!(ComplexPoly::from_reals(&[5.0]).derivative().degree(), 0);
    }

    #[test]
    fn taylor_shift_matches_eval() {
        let p = ComplexPoly::from_reals(&[1.0, -3.0, 0.5, 2.0]);
        let shift = C::new(0.4, -1.1);
        let q = p.taylor_shift(shift);
        for z in [C::new(0.0, 0.0), C::new(0.3, 0.2), C::new(-1.0, 2.0)] {
            assert!((q.eval(z) - p.eval(z + shift)).norm() < 1e-12);
        }
    }

    #[test]
    fn div_z_requires_zero_constant() {
        let p = ComplexPoly::from_reals(&[0.0, 1.0, 2.0]);
        assert_eq!(
            p.div_z(1e-12).unwrap(),
            ComplexPoly::from_reals(&[1.0, 2.0])
        );
        assert!(ComplexPoly::from_reals(&[1e-6, 1.0]).div_z(1e-12).is_err());
    }

    #[test]
    fn from_roots_expands() {
        let p = ComplexPoly::from_roots(&[c(0.5), c(-2.0)]);
        assert_eq!(p, ComplexPoly::from_reals(&[-1.0, 1.5, 1.0]));
    }

    #[test]
    fn serde_pairs() {
        let p = ComplexPoly::new(vec![C::new(1.0, -0.5), c(2.0)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[1.0,-0.5],[2.0,0.0]]");
        let back: ComplexPoly<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn deflate_by_root() {
        let p = ComplexPoly::from_roots(&[C::new(0.5, 0.1), C::new(-2.0, 0.0), C::new(0.0, 1.5)]);
        let (q, r) = p.deflate(C::new(-2.0, 0.0));
        assert!(r.norm() < 1e-14);
        let back = q.mul_linear(C::new(2.0, 0.0));
        for i in 0..=3 {
            assert!((back.coeff(i) - p.coeff(i)).norm() < 1e-14);
        }
        let (_, r) = ComplexPoly::from_reals(&[1.0, 2.0, 3.0]).deflate(C::new(2.0, 0.0));
        assert_eq!(r, C::new(17.0, 0.0));
    }
}
