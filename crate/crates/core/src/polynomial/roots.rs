//! Aberth–Ehrlich simultaneous iteration with Newton polishing.

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::ComplexPoly;
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Position of a root relative to the unit circle and its ambiguity band.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DiskClass {
    Inside,
    OnCircle,
    Outside,
}

impl DiskClass {
    pub fn classify<T: Real>(z: Complex<T>, band: T) -> Self {
        let r = z.norm();
        if r < T::one() - band {
            DiskClass::Inside
        } else if (r - T::one()).abs() <= band {
            DiskClass::OnCircle
        } else {
            DiskClass::Outside
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Root<T> {
    #[serde(with = "crate::wire::pair")]
    pub location: Complex<T>,
    pub multiplicity: usize,
    /// Backward error `|P(r)| / sum |a_i| |r|^i`.
    pub residual: T,
    pub class: DiskClass,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct RootSet<T> {
    pub roots: Vec<Root<T>>,
}

impl<T: Real> RootSet<T> {
    pub fn degree(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Root locations repeated by multiplicity.
    pub fn expanded(&self) -> Vec<Complex<T>> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.location, r.multiplicity))
            .collect()
    }

    pub fn inside(&self) -> impl Iterator<Item = &Root<T>> {
        self.roots.iter().filter(|r| r.class == DiskClass::Inside)
    }

    pub fn inside_count(&self) -> usize {
        self.inside().map(|r| r.multiplicity).sum()
    }

    pub fn any_on_circle(&self) -> bool {
        self.roots.iter().any(|r| r.class == DiskClass::OnCircle)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootOptions<T> {
    pub cluster_tol: T,
    pub residual_tol: T,
    pub boundary_band: T,
    pub max_iter: usize,
}

impl<T: Real> RootOptions<T> {
    pub fn from_tolerances(tol: &Tolerances<T>, max_iter: usize) -> Self {
        RootOptions {
            cluster_tol: tol.cluster_tol,
            residual_tol: tol.root_residual_tol,
            boundary_band: tol.boundary_band,
            max_iter,
        }
    }
}

impl<T: Real> Default for RootOptions<T> {
    fn default() -> Self {
        Self::from_tolerances(&T::default_tolerances(), 500)
    }
}

fn backward_error<T: Real>(p: &ComplexPoly<T>, z: Complex<T>) -> T {
    let scale = p.abs_eval(z.norm());
    if scale.is_zero() {
        return T::zero();
    }
    p.eval(z).norm() / scale
}

/// Starting points on a circle whose radius is the geometric mean of the
/// root moduli, rotated off the real axis so conjugate pairs do not collide.
fn initial_guesses<T: Real>(p: &ComplexPoly<T>) -> Vec<Complex<T>> {
    let d = p.degree();
    let radius = (p.coeff(0).norm() / p.leading().norm()).powf(T::one() / T::from_usize_lossy(d));
    let radius = if radius.is_finite() && radius > T::zero() {
        radius
    } else {
        T::one()
    };
    let tau = T::TAU();
    let offset = T::lit(0.4);
    (0..d)
        .map(|j| {
            let theta = tau * T::from_usize_lossy(j) / T::from_usize_lossy(d) + offset;
            Complex::from_polar(radius, theta)
        })
        .collect()
}

fn aberth<T: Real>(p: &ComplexPoly<T>, max_iter: usize) -> Vec<Complex<T>> {
    let d = p.degree();
    let mut z = initial_guesses(p);
    let mut done = vec![false; d];
    let eps = T::epsilon();
    let stop = eps * T::lit(4.0) * T::from_usize_lossy(d + 1);
    for _ in 0..max_iter {
        let mut all_done = true;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (v, dv) = p.eval_with_derivative(z[i]);
            let scale = p.abs_eval(z[i].norm());
            if v.norm() <= stop * scale {
                done[i] = true;
                continue;
            }
            all_done = false;
            let sum: Complex<T> = (0..d)
                .filter(|&j| j != i)
                .map(|j| {
                    let diff = z[i] - z[j];
                    if diff.is_zero() {
                        Complex::zero()
                    } else {
                        diff.inv()
                    }
                })
                .fold(Complex::zero(), |a, b| a + b);
            let step = if dv.is_zero() {
                // Stationary point: nudge off it.
                Complex::new(eps.sqrt() * (T::one() + z[i].norm()), eps.sqrt())
            } else {
                let ratio = v / dv;
                let denom = Complex::new(T::one(), T::zero()) - ratio * sum;
                if denom.is_zero() {
                    ratio
                } else {
                    ratio / denom
                }
            };
            z[i] = z[i] - step;
            if step.norm() <= eps * z[i].norm() {
                done[i] = true;
            }
        }
        if all_done {
            break;
        }
    }
    z
}

/// Newton steps that are kept only if they reduce the backward error.
fn polish<T: Real>(p: &ComplexPoly<T>, mut z: Complex<T>, steps: usize) -> Complex<T> {
    let mut err = backward_error(p, z);
    for _ in 0..steps {
        let (v, dv) = p.eval_with_derivative(z);
        if dv.is_zero() || v.is_zero() {
            break;
        }
        let cand = z - v / dv;
        let cand_err = backward_error(p, cand);
        if cand_err < err {
            z = cand;
            err = cand_err;
        } else {
            break;
        }
    }
    z
}

fn cluster<T: Real>(points: &[Complex<T>], tol: T) -> Vec<(Complex<T>, usize)> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = T::one().max(points[i].norm());
            if (points[i] - points[j]).norm() < tol * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b.max(a)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Complex<T>, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 = g.1 + points[i];
                g.2 += 1;
            }
            None => groups.push((r, points[i], 1)),
        }
    }
    groups
        .into_iter()
        .map(|(_, sum, m)| (sum / T::from_usize_lossy(m), m))
        .collect()
}

/// All roots of `p`, clustered into multiple roots and classified against
/// the unit circle. Roots are sorted by modulus, then argument.
pub fn find_roots<T: Real>(p: &ComplexPoly<T>, opts: &RootOptions<T>) -> Result<RootSet<T>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let zeros_at_origin = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let reduced = ComplexPoly::new(p.coeffs()[zeros_at_origin..].to_vec());
    let d = reduced.degree();

    let mut approx: Vec<Complex<T>> = match d {
        0 => Vec::new(),
        1 => vec![-reduced.coeff(0) / reduced.coeff(1)],
        _ => aberth(&reduced, opts.max_iter)
            .into_iter()
            .map(|z| polish(&reduced, z, 3))
            .collect(),
    };
    if approx
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NonConvergence(format!(
            "non-finite iterate for degree {d}"
        )));
    }

    let mut clustered = cluster(&approx, opts.cluster_tol);
    approx.clear();
    if zeros_at_origin > 0 {
        clustered.push((Complex::zero(), zeros_at_origin));
    }

    let mut roots = Vec::with_capacity(clustered.len());
    for (location, multiplicity) in clustered {
        let residual = backward_error(p, location);
        if !(residual <= opts.residual_tol) {
            return Err(Error::NonConvergence(format!(
                "root {location} has backward error {residual:e} > {:e}",
                opts.residual_tol
            )));
        }
        roots.push(Root {
            location,
            multiplicity,
            residual,
            class: DiskClass::classify(location, opts.boundary_band),
        });
    }
    roots.sort_by(|a, b| {
        a.location
            .norm()
            .partial_cmp(&b.location.norm())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(
                a.location
                    .arg()
                    .partial_cmp(&b.location.arg())
                    .unwrap_or(std::cmp::Ordering::Equal),
            )
    });
    Ok(RootSet { roots })
}

/// `(roots strictly inside the disk with multiplicity, any root in the band)`.
pub fn count_in_disk<T: Real>(p: &ComplexPoly<T>, opts: &RootOptions<T>) -> Result<(usize, bool)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Ok((0, false));
    }
    let rs = find_roots(p, opts)?;
    Ok((rs.inside_count(), rs.any_on_circle()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type C = Complex<f64>;

    fn opts() -> RootOptions<f64> {
        RootOptions::default()
    }

    /// Bisection on a real bracket; independent of the complex iteration.
    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        assert!(f(lo) * f(hi) < 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(lo) * f(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn factored_quadratic() {
        let p = ComplexPoly::from_reals(&[-1.0, 1.5, 1.0]);
        let rs = find_roots(&p, &opts()).unwrap();
        assert_eq!(rs.roots.len(), 2);
        assert!((rs.roots[0].location - C::new(0.5, 0.0)).norm() < 1e-14);
        assert_eq!(rs.roots[0].class, DiskClass::Inside);
        assert!((rs.roots[1].location - C::new(-2.0, 0.0)).norm() < 1e-14);
        assert_eq!(rs.roots[1].class, DiskClass::Outside);
        assert!(rs.roots.iter().all(|r| r.multiplicity == 1));
    }

    #[test]
    fn double_root_at_origin() {
        let p = ComplexPoly::from_reals(&[0.0, 0.0, 1.0]);
        let rs = find_roots(&p, &opts()).unwrap();
        assert_eq!(rs.roots.len(), 1);
        assert_eq!(rs.roots[0].multiplicity, 2);
        assert_eq!(rs.roots[0].location, C::new(0.0, 0.0));
        assert_eq!(rs.roots[0].class, DiskClass::Inside);
    }

    #[test]
    fn cubic_against_bisection() {
        let p = ComplexPoly::from_reals(&[1.0, 0.0, -1.0, 1.0]);
        let real_root = bisect(|x| x * x * x - x * x + 1.0, -1.0, 0.0);
        assert!((real_root + 0.7549).abs() < 1e-4);
        let rs = find_roots(&p, &opts()).unwrap();
        assert_eq!(rs.degree(), 3);
        let inside: Vec<_> = rs.inside().collect();
        assert_eq!(inside.len(), 1);
        assert!((inside[0].location - C::new(real_root, 0.0)).norm() < 1e-12);
        let outside_mod = 1.0 / real_root.abs().sqrt();
        for r in rs.roots.iter().filter(|r| r.class == DiskClass::Outside) {
            assert!((r.location.norm() - outside_mod).abs() < 1e-12);
        }
        assert_eq!(count_in_disk(&p, &opts()).unwrap(), (1, false));
    }

    #[test]
    fn count_in_disk_cases() {
        assert_eq!(
            count_in_disk(&ComplexPoly::from_reals(&[1.0, -0.3]), &opts()).unwrap(),
            (0, false)
        );
        assert_eq!(
            count_in_disk(&ComplexPoly::from_reals(&[-1.0, 1.0]), &opts()).unwrap(),
            (0, true)
        );
        assert_eq!(
            count_in_disk(&ComplexPoly::from_reals(&[3.0]), &opts()).unwrap(),
            (0, false)
        );
        assert_eq!(
            count_in_disk(&ComplexPoly::<f64>::zero(), &opts()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn merges_double_root() {
        let r = C::new(0.3, -0.4);
        let p = ComplexPoly::from_roots(&[r, r, C::new(2.0, 1.0)]);
        let rs = find_roots(&p, &opts()).unwrap();
        assert_eq!(rs.roots.len(), 2);
        let double = rs.roots.iter().find(|x| x.multiplicity == 2).unwrap();
        assert!((double.location - r).norm() < 1e-7);
    }

    #[test]
    fn f32_roots() {
        let p = ComplexPoly::<f32>::from_reals(&[-1.0, 1.5, 1.0]);
        let rs = find_roots(&p, &RootOptions::default()).unwrap();
        assert_eq!(rs.inside_count(), 1);
        assert!((rs.roots[0].location.re - 0.5).abs() < 1e-5);
    }

    #[test]
    fn nonconvergence_is_reported() {
        let p = ComplexPoly::from_reals(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let o = RootOptions {
            max_iter: 0,
            ..opts()
        };
        assert!(matches!(find_roots(&p, &o), Err(Error::NonConvergence(_))));
    }

    fn arb_roots(max: usize) -> impl Strategy<Value = Vec<C>> {
        prop::collection::vec((0.2f64..1.8, 0.0f64..std::f64::consts::TAU), 1..=max)
            .prop_map(|v| v.into_iter().map(|(r, t)| C::from_polar(r, t)).collect())
    }

    fn separated(roots: &[C], gap: f64) -> bool {
        roots
            .iter()
            .enumerate()
            .all(|(i, a)| roots[i + 1..].iter().all(|b| (a - b).norm() > gap))
    }

    fn off_circle(roots: &[C]) -> bool {
        roots.iter().all(|r| (r.norm() - 1.0).abs() > 1e-3)
    }

    proptest! {
        #[test]
        fn reconstruction(roots in arb_roots(20)) {
            prop_assume!(separated(&roots, 1e-2));
            let p = ComplexPoly::from_roots(&roots);
            let rs = find_roots(&p, &opts()).unwrap();
            prop_assert_eq!(rs.degree(), roots.len());
            let q = ComplexPoly::from_roots(&rs.expanded());
            let scale = p.max_abs_coeff();
            for i in 0..=p.degree() {
                prop_assert!((q.coeff(i) - p.coeff(i)).norm() <= 1e-8 * scale);
            }
        }

        #[test]
        fn count_is_additive(a in arb_roots(6), b in arb_roots(6)) {
            prop_assume!(off_circle(&a) && off_circle(&b));
            let pa = ComplexPoly::from_roots(&a);
            let pb = ComplexPoly::from_roots(&b);
            let (ia, oa) = count_in_disk(&pa, &opts()).unwrap();
            let (ib, ob) = count_in_disk(&pb, &opts()).unwrap();
            let (iab, oab) = count_in_disk(&(&pa * &pb), &opts()).unwrap();
            prop_assert!(!oa && !ob && !oab);
            prop_assert_eq!(iab, ia + ib);
        }

        #[test]
        fn derivative_matches_finite_difference(
            coeffs in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..=11),
            r in 0.0f64..2.0,
            t in 0.0f64..std::f64::consts::TAU,
        ) {
            let p = ComplexPoly::new(coeffs.iter().map(|&(a, b)| C::new(a, b)).collect());
            let z = C::from_polar(r, t);
            let h = 1e-6;
            let fd = (p.eval(z + h) - p.eval(z - h)) / (2.0 * h);
            let (_, d) = p.eval_with_derivative(z);
            let scale = p.derivative().abs_eval(z.norm()).max(1.0);
            prop_assert!((fd - d).norm() <= 1e-6 * scale);
        }
    }
}
