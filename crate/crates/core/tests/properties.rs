use bergman_spectra::constructions::build_counterexample;
use bergman_spectra::matrix::{build_section, residual, series_eigenvector};
use bergman_spectra::raster::{rasterize, Bbox};
use bergman_spectra::spectral::{
    classify_point, curve_distance, eigen_test, enumerate_lambda, winding, EigenOutcome,
};
use bergman_spectra::{Complex64, Config, Poly, Symbol};
use proptest::prelude::*;

fn complex(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| Complex64::new(a, b))
}

fn symbol(max_degree: usize) -> impl Strategy<Value = Symbol> {
    prop::collection::vec(complex(1.0), 1..=max_degree + 1).prop_map(|c| Symbol::new(Poly::new(c)))
}

fn real_symbol(max_degree: usize) -> impl Strategy<Value = Symbol> {
    prop::collection::vec(-1.0..1.0f64, 1..=max_degree + 1)
        .prop_map(|c| Symbol::new(Poly::from_reals(&c)))
}

fn cfg() -> Config<f64> {
    Config::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn winding_is_bounded_by_degree(s in symbol(5), lambda in complex(3.0)) {
        prop_assume!(curve_distance(&s, lambda, 1e-3) > 1e-6);
        let w = winding(&s, lambda, &cfg()).unwrap();
        prop_assert!(!w.on_curve);
        prop_assert!(-1 <= w.w && w.w <= s.degree() as i64, "w = {}", w.w);
    }

    #[test]
    fn eigen_test_commutes_with_translation(s in symbol(4), lambda in complex(2.0)) {
        let a = eigen_test(&s, lambda, &cfg());
        let b = eigen_test(&s.translate(lambda), Complex64::new(0.0, 0.0), &cfg());
        match (a, b) {
            (Ok(EigenOutcome::Certified(x)), Ok(EigenOutcome::Certified(y))) => {
                prop_assert_eq!(x.branch, y.branch);
                prop_assert_eq!(x.zeros.len(), y.zeros.len());
                for (zx, zy) in x.zeros.iter().zip(&y.zeros) {
                    prop_assert!((zx.z - zy.z).norm() < 1e-12);
                    prop_assert_eq!(zx.n, zy.n);
                    prop_assert!((zx.condition_residual - zy.condition_residual).abs() < 1e-12);
                }
            }
            (Ok(EigenOutcome::NotEigenvalue(x)), Ok(EigenOutcome::NotEigenvalue(y))) => {
                prop_assert!((x.zero() - y.zero()).norm() < 1e-12);
            }
            (Err(x), Err(y)) => {
                prop_assert_eq!(std::mem::discriminant(&x), std::mem::discriminant(&y));
            }
            (x, y) => prop_assert!(false, "outcomes differ: {:?} / {:?}", x, y),
        }
    }

    #[test]
    fn real_symbols_are_conjugation_symmetric(s in real_symbol(4), lambda in complex(2.5)) {
        let a = classify_point(&s, lambda, &cfg());
        let b = classify_point(&s, lambda.conj(), &cfg());
        prop_assert_eq!(a.label(), b.label());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn raster_counts_partition_the_grid(s in symbol(3), w in 1usize..24, h in 1usize..24) {
        let cfg = Config { n_max: 20, ..cfg() };
        let grid = rasterize(&s, None, w, h, &cfg).unwrap();
        let total: usize = grid.counts().iter().map(|(_, n)| n).sum();
        prop_assert_eq!(total, w * h);
    }

    #[test]
    fn certificates_have_eigenvectors(k in 3usize..=6, n in 1usize..=3) {
        let params = build_counterexample::<f64>(k, n).unwrap();
        let s = params.symbol();
        let cfg = Config { n_max: 3 * n, ..cfg() };
        let set = enumerate_lambda(&s, &cfg).unwrap();
        prop_assert!(!set.certificates.is_empty());
        let section = build_section(&s, 200).unwrap();
        for cert in &set.certificates {
            let v = series_eigenvector(&s, cert.lambda, 400, &cfg).unwrap();
            let r = residual(&section, &v).unwrap();
            prop_assert!(r < 1e-6, "lambda {}: residual {:e}", cert.lambda, r);
        }
    }
}

#[test]
fn bbox_rejects_degenerate_boxes() {
    assert!(Bbox::new(0.0, 0.0, -1.0, 1.0).is_err());
    assert!(Bbox::new(1.0, 0.0, -1.0, 1.0).is_err());
    assert!(Bbox::new(-1.0, 1.0, -1.0, 1.0).is_ok());
}
