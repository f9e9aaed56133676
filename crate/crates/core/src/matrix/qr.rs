use std::cmp::Ordering;

use num_complex::Complex;

use super::FiniteSection;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Eigenvalues of a finite section sorted by `(re, im)`.
///
/// Triangular sections return their diagonal exactly. Otherwise the
/// transpose, which is upper Hessenberg, goes through shifted complex QR
/// with Wilkinson shifts and deflation at `1e-12 ‖A‖_F`.
///
/// Finite sections may miss or pollute the spectrum of the operator: the
/// section of `T_{z̄}` is nilpotent although `σ(T_{z̄})` is the closed disk.
pub fn section_eigenvalues<T: Real>(section: &FiniteSection<T>) -> Result<Vec<Complex<T>>> {
    if section.size > 2000 {
        return Err(Error::PreconditionViolated(format!(
            "section size {} exceeds the dense limit 2000",
            section.size
        )));
    }
    let mut eig = if section.is_triangular() {
        section.diagonal()
    } else {
        let n = section.size;
        let mut h: Vec<Vec<Complex<T>>> = (0..n)
            .map(|i| (0..n).map(|j| section.entry(j, i)).collect())
            .collect();
        hessenberg_qr(&mut h, section.frobenius_norm())?
    };
    eig.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
    });
    Ok(eig)
}

fn wilkinson<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    let tr = (a + d) * half;
    let disc = ((a - d) * half * (a - d) * half + b * c).sqrt();
    let (l1, l2) = (tr + disc, tr - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn hessenberg_qr<T: Real>(h: &mut [Vec<Complex<T>>], fro: T) -> Result<Vec<Complex<T>>> {
    let n = h.len();
    let zero = Complex::new(T::zero(), T::zero());
    let mut eig = vec![zero; n];
    let abs_tol = T::lit(1e-12) * fro;
    let mut hi = n - 1;
    let mut iter = 0usize;
    let cap = 60 * n.max(10);
    let mut since_deflation = 0usize;
    loop {
        if hi == 0 {
            eig[0] = h[0][0];
            break;
        }
        // Start of the unreduced block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[lo][lo - 1].norm();
            let local = T::epsilon() * (h[lo][lo].norm() + h[lo - 1][lo - 1].norm());
            if sub <= abs_tol.max(local) {
                h[lo][lo - 1] = zero;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[hi][hi];
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        iter += 1;
        since_deflation += 1;
        if iter > cap {
            return Err(Error::NonConvergence(format!(
                "QR iteration cap reached with {} eigenvalues left",
                hi + 1
            )));
        }
        let mut mu = wilkinson(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi]);
        if since_deflation % 11 == 10 {
            // Exceptional shift to break cycles.
            mu = h[hi][hi] + Complex::new(h[hi][hi - 1].norm() * T::lit(0.75), T::zero());
        }
        for d in lo..=hi {
            h[d][d] = h[d][d] - mu;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            let a = h[i][i];
            let b = h[i + 1][i];
            let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let (c, s) = if r == T::zero() {
                (Complex::new(T::one(), T::zero()), zero)
            } else {
                (a / r, b / r)
            };
            for j in i..=hi {
                let (x, y) = (h[i][j], h[i + 1][j]);
                h[i][j] = c.conj() * x + s.conj() * y;
                h[i + 1][j] = -s * x + c * y;
            }
            rots.push((c, s));
        }
        for (idx, i) in (lo..hi).enumerate() {
            let (c, s) = rots[idx];
            for row in h.iter_mut().take((i + 1).min(hi) + 1).skip(lo) {
                let (x, y) = (row[i], row[i + 1]);
                row[i] = x * c + y * s;
                row[i + 1] = -x * s.conj() + y * c.conj();
            }
        }
        for d in lo..=hi {
            h[d][d] = h[d][d] + mu;
        }
    }
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_section, radial_shift_section};
    use crate::polynomial::{find_roots, ComplexPoly, RootOptions};
    use crate::spectral::HarmonicSymbol;

    type C = Complex<f64>;

    #[test]
    fn nilpotent_sections() {
        let a = radial_shift_section(0.5f64, 60).unwrap();
        assert!(section_eigenvalues(&a)
            .unwrap()
            .iter()
            .all(|z| *z == C::new(0.0, 0.0)));
        let a = build_section(&HarmonicSymbol::new(ComplexPoly::<f64>::zero()), 50).unwrap();
        assert!(section_eigenvalues(&a)
            .unwrap()
            .iter()
            .all(|z| *z == C::new(0.0, 0.0)));
    }

    #[test]
    fn tridiagonal_symmetric_section() {
        // z̄ + z: real symmetric tridiagonal; compare with the roots of the
        // characteristic polynomial from the three-term recurrence.
        let n = 12;
        let a = build_section(
            &HarmonicSymbol::new(ComplexPoly::from_reals(&[0.0, 1.0])),
            n,
        )
        .unwrap();
        let eig = section_eigenvalues(&a).unwrap();
        let mut p0 = ComplexPoly::one();
        let mut p1 = ComplexPoly::from_reals(&[0.0, 1.0]);
        for j in 1..n {
            let b = a.entry(j - 1, j).re;
            let next = &p1.mul_z() - &p0.scale(C::new(b * b, 0.0));
            p0 = p1;
            p1 = next;
        }
        let mut roots = find_roots(&p1, &RootOptions::default()).unwrap().expanded();
        roots.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap());
        for (e, r) in eig.iter().zip(&roots) {
            assert!((e - r).norm() < 1e-9, "{e} vs {r}");
            assert!(e.im.abs() < 1e-9);
        }
    }

    #[test]
    fn dense_oracle_trace_and_determinant() {
        let s = HarmonicSymbol::new(ComplexPoly::new(vec![
            C::new(0.1, 0.3),
            C::new(-0.4, 0.2),
            C::new(0.3, 0.0),
            C::new(0.0, -0.5),
        ]));
        let a = build_section(&s, 30).unwrap();
        let eig = section_eigenvalues(&a).unwrap();
        let trace: C = a.diagonal().iter().sum();
        let sum: C = eig.iter().sum();
        assert!((trace - sum).norm() < 1e-10);
        // Each eigenvalue makes A - λI singular: smallest pivot of an LU with
        // partial pivoting is tiny relative to the matrix scale.
        let dense = a.to_dense();
        for lam in eig.iter().step_by(7) {
            let mut m = dense.clone();
            for (i, row) in m.iter_mut().enumerate() {
                row[i] -= *lam;
            }
            let mut min_pivot = f64::INFINITY;
            let n = m.len();
            for col in 0..n {
                let piv = (col..n)
                    .max_by(|&x, &y| m[x][col].norm().partial_cmp(&m[y][col].norm()).unwrap())
                    .unwrap();
                m.swap(col, piv);
                let p = m[col][col];
                min_pivot = min_pivot.min(p.norm());
                if p.norm() == 0.0 {
                    break;
                }
                for r in col + 1..n {
                    let f = m[r][col] / p;
                    for c in col..n {
                        let v = m[col][c];
                        m[r][c] -= f * v;
                    }
                }
            }
            assert!(min_pivot < 1e-8, "{lam}: {min_pivot}");
        }
    }
}
