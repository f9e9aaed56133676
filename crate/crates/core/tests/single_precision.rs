use bergman_spectra::constructions::{build_counterexample, verify_construction};
use bergman_spectra::polynomial::{find_roots, RootOptions};
use bergman_spectra::spectral::{classify_point, invertible, winding, PointClass};
use bergman_spectra::{Config, Poly32, Symbol32};
use num_complex::Complex;

type C = Complex<f32>;

#[test]
fn roots_in_single_precision() {
    let p: Poly32 = "6,-5,1".parse().unwrap();
    let cfg = Config::<f32>::default();
    let roots = find_roots(
        &p,
        &RootOptions::from_tolerances(&cfg.tol, cfg.root_max_iter),
    )
    .unwrap();
    let mut re: Vec<f32> = roots.expanded().iter().map(|z| z.re).collect();
    re.sort_by(f32::total_cmp);
    assert!((re[0] - 2.0).abs() < 1e-4 && (re[1] - 3.0).abs() < 1e-4);
}

#[test]
fn conjugate_shift_in_single_precision() {
    let s = Symbol32::new(Poly32::zero());
    let cfg = Config::<f32>::default();
    assert_eq!(winding(&s, C::new(0.2, 0.1), &cfg).unwrap().w, -1);
    assert_eq!(winding(&s, C::new(1.5, 0.0), &cfg).unwrap().w, 0);
    assert!(matches!(
        classify_point(&s, C::new(0.0, 0.0), &cfg),
        PointClass::EigenRegionIndexPositive
    ));
    assert!(!invertible(&s, &cfg).unwrap().verdict);
}

#[test]
fn construction_in_single_precision() {
    let params = build_counterexample::<f32>(3, 1).unwrap();
    assert!(params.beta.norm() > 1.0 && params.alpha.norm() < 1.0);
    let cert = verify_construction(&params, &Config::default()).unwrap();
    assert!(cert.checks.iter().all(|c| c.passed), "{cert:?}");
}
