//! The certification suite: twelve pass/fail criteria with fixed seeds,
//! shared by the `acceptance` test target and `bergman-spectra selftest`.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Config;
use crate::constructions::{build_counterexample, isolated_points, verify_construction};
use crate::matrix::{
    build_section, radial_shift_section, radial_weight, residual, section_eigenvalues,
    series_eigenvector, SeriesVerdict, RADIAL_SHIFT_NOTE,
};
use crate::polynomial::ComplexPoly;
use crate::raster::{rasterize, render, Bbox, CellCode, Format};
use crate::spectral::{
    analyze, classify_point, curve_distance, eigen_test, enumerate_lambda, hyponormal_screen,
    invertible, scan_candidates, weyl_report, winding, winding_by_argument, Branch, EigenOutcome,
    HarmonicSymbol, HyponormalVerdict, InvertibilityWitness, PointClass,
};

type C = Complex<f64>;
type Outcome = Result<String, String>;

pub const SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:02} {}: {}", self.id, self.name, self.detail)
    }
}

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    run: fn() -> Outcome,
}

impl Criterion {
    pub fn run(&self) -> CriterionResult {
        let (passed, detail) = match (self.run)() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        CriterionResult {
            id: self.id,
            name: self.name,
            passed,
            detail,
        }
    }
}

pub const CRITERIA: [Criterion; 12] = [
    Criterion {
        id: 1,
        name: "construction identity sweep",
        run: construction_sweep,
    },
    Criterion {
        id: 2,
        name: "isolated-point certification (3,1)",
        run: isolated_certification,
    },
    Criterion {
        id: 3,
        name: "limit closed forms and tail",
        run: limit_closed_forms,
    },
    Criterion {
        id: 4,
        name: "quadratic emptiness",
        run: quadratic_emptiness,
    },
    Criterion {
        id: 5,
        name: "invertibility vectors",
        run: invertibility_vectors,
    },
    Criterion {
        id: 6,
        name: "conjugate shift picture",
        run: conjugate_shift,
    },
    Criterion {
        id: 7,
        name: "finite-section residuals",
        run: oracle_residuals,
    },
    Criterion {
        id: 8,
        name: "radial backward shift",
        run: radial_shift,
    },
    Criterion {
        id: 9,
        name: "weyl verdicts",
        run: weyl_verdicts,
    },
    Criterion {
        id: 10,
        name: "winding cross-check",
        run: winding_cross_check,
    },
    Criterion {
        id: 11,
        name: "hyponormality screen",
        run: hyponormal_vectors,
    },
    Criterion {
        id: 12,
        name: "determinism",
        run: determinism,
    },
];

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().map(Criterion::run).collect()
}

fn cfg() -> Config<f64> {
    Config {
        seed: SEED,
        ..Config::default()
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn zero() -> C {
    C::new(0.0, 0.0)
}

/// Uniform point in the closed disk of radius `r`.
fn in_disk(rng: &mut ChaCha8Rng, r: f64) -> C {
    C::from_polar(
        r * rng.gen::<f64>().sqrt(),
        std::f64::consts::TAU * rng.gen::<f64>(),
    )
}

fn random_quadratics(count: usize) -> Vec<HarmonicSymbol<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count)
        .map(|_| {
            let coeffs: Vec<C> = (0..3).map(|_| in_disk(&mut rng, 2.0)).collect();
            HarmonicSymbol::new(ComplexPoly::new(coeffs))
        })
        .collect()
}

fn construction_sweep() -> Outcome {
    let mut worst = 0.0f64;
    for k in 3..=10 {
        for n in 1..=5 {
            let p = build_counterexample::<f64>(k, n).map_err(err)?;
            ensure(p.beta.norm() > 1.0, || {
                format!("(k,n)=({k},{n}): |beta| = {}", p.beta.norm())
            })?;
            ensure(p.alpha.norm() < 1.0, || {
                format!("(k,n)=({k},{n}): |alpha| = {}", p.alpha.norm())
            })?;
            let a = p.alpha;
            let v = a * a * p.p.derivative().eval(a);
            let r = (v - (n + 2) as f64 / (n + 1) as f64).norm();
            ensure(r < 1e-10, || {
                format!("(k,n)=({k},{n}): condition residual {r:e}")
            })?;
            worst = worst.max(r);
        }
    }
    let p = build_counterexample::<f64>(3, 1).map_err(err)?;
    let v = p.alpha * p.alpha * p.p.derivative().eval(p.alpha);
    let r = (v - 1.5).norm();
    ensure(r < 1e-10, || {
        format!("(3,1): |alpha^2 p'(alpha) - 3/2| = {r:e}")
    })?;
    Ok(format!(
        "40 constructions, max condition residual {worst:.2e}; (3,1) value 3/2 to {r:.1e}"
    ))
}

fn isolated_certification() -> Outcome {
    let params = build_counterexample::<f64>(3, 1).map_err(err)?;
    let s = params.symbol();
    let c = cfg();
    let cert = match eigen_test(&s, zero(), &c).map_err(err)? {
        EigenOutcome::Certified(cert) => cert,
        EigenOutcome::NotEigenvalue(why) => return Err(format!("0 not certified: {why:?}")),
    };
    ensure(
        cert.branch == Branch::SimpleZeros && cert.zeros.len() == 1,
        || format!("branch {:?} with {} zeros", cert.branch, cert.zeros.len()),
    )?;
    let z = &cert.zeros[0];
    ensure((z.z - params.alpha).norm() < 1e-10 && z.n == 1, || {
        format!("zero {} (alpha {}), n = {}", z.z, params.alpha, z.n)
    })?;
    let w = winding(&s, zero(), &c).map_err(err)?;
    ensure(w.w == 0 && !w.on_curve, || format!("winding(0) = {:?}", w))?;
    let iso = isolated_points(&params, &Config { n_max: 200, ..c }).map_err(err)?;
    ensure(iso.gap_radius > 0.0, || "gap radius is zero".into())?;
    ensure(iso.complete, || {
        format!("incomplete: {}", iso.lambda_set.reason)
    })?;
    Ok(format!(
        "0 certified (zero alpha, n = 1), winding 0, |Lambda| = {}, complete at n_max = 200, gap radius {:.3e}",
        iso.lambda_set.certificates.len(),
        iso.gap_radius
    ))
}

fn limit_closed_forms() -> Outcome {
    let c = cfg();
    let mut worst_fact = 0.0f64;
    for k in 3..=10 {
        let params = build_counterexample::<f64>(k, 1).map_err(err)?;
        let cert = verify_construction(&params, &c).map_err(err)?;
        let fact = cert
            .checks
            .iter()
            .find(|ch| ch.name == "factorization")
            .and_then(|ch| ch.residual)
            .unwrap_or(f64::INFINITY);
        ensure(fact < 1e-9, || {
            format!("k = {k}: factorization residual {fact:e}")
        })?;
        if let Some(bad) = cert.checks.iter().find(|ch| !ch.passed) {
            return Err(format!("k = {k}: check {} failed: {}", bad.name, bad.note));
        }
        worst_fact = worst_fact.max(fact);
        ensure((params.z_inf - params.w_inf).norm() > 1e-8, || {
            format!("k = {k}: z_inf = w_inf")
        })?;
        for m in [params.z_inf.norm(), params.w_inf.norm()] {
            ensure(params.c_k <= m && m < 0.98, || {
                format!("k = {k}: modulus {m} outside [{}, 0.98)", params.c_k)
            })?;
        }
    }
    let mut checked = 0;
    let mut detect = Vec::new();
    for k in 3..=10 {
        let params = build_counterexample::<f64>(k, 1).map_err(err)?;
        let iso = isolated_points(&params, &Config { n_max: 200, ..c }).map_err(err)?;
        let levels = scan_candidates(&params.symbol(), iso.n_detect + 1..=200, &c).map_err(err)?;
        for lvl in &levels {
            for cand in &lvl.candidates {
                ensure(cand.inside >= 2 && !cand.on_curve, || {
                    format!(
                        "k = {k}, n = {}: candidate {} has {} in-disk zeros",
                        lvl.n, cand.lambda, cand.inside
                    )
                })?;
                checked += 1;
            }
        }
        detect.push(iso.n_detect);
    }
    ensure(checked > 0, || "no tail candidates examined".into())?;
    Ok(format!(
        "k = 3..10: factorization residual <= {worst_fact:.1e}, moduli in [c_k, 49/50); N_detect = {detect:?}, {checked} tail candidates with >= 2 zeros"
    ))
}

fn quadratic_emptiness() -> Outcome {
    let c = Config {
        n_max: 50,
        atlas_grid: 12,
        essential_samples: 256,
        ..cfg()
    };
    for (i, s) in random_quadratics(200).iter().enumerate() {
        let set = enumerate_lambda(s, &c).map_err(|e| format!("quadratic #{i}: {e}"))?;
        ensure(set.certificates.is_empty(), || {
            format!("quadratic #{i} {}: Lambda = {:?}", s.p, set.lambdas())
        })?;
        let report = analyze(s, &c).map_err(|e| format!("quadratic #{i}: {e}"))?;
        ensure(
            report.lambda_set.is_empty() && report.weyl.pi00.is_empty(),
            || format!("quadratic #{i}: report lists isolated eigenvalues"),
        )?;
        for a in &report.winding_atlas {
            let class = classify_point(s, a.point, &c);
            let in_omega = a.on_curve || a.winding.is_some_and(|w| w != 0);
            if let Some(in_sigma) = class.in_spectrum() {
                ensure(in_sigma == in_omega, || {
                    format!(
                        "quadratic #{i}: {} classified {} but winding {:?}",
                        a.point,
                        class.label(),
                        a.winding
                    )
                })?;
            }
        }
    }
    Ok(
        "200 random quadratics: Lambda empty at n_max = 50; spectrum = curve plus nonzero winding"
            .into(),
    )
}

fn invertibility_vectors() -> Outcome {
    let c = cfg();
    let q = HarmonicSymbol::new(ComplexPoly::from_reals(&[0.0, -1.0, 1.0]));
    let r = invertible(&q, &c).map_err(err)?;
    ensure(r.verdict, || format!("z^2 - z: {}", r.witness.describe()))?;
    let z = HarmonicSymbol::new(ComplexPoly::<f64>::zero());
    let r = invertible(&z, &c).map_err(err)?;
    ensure(!r.verdict, || "p = 0 reported invertible".into())?;
    let params = build_counterexample::<f64>(3, 1).map_err(err)?;
    let r = invertible(&params.symbol(), &c).map_err(err)?;
    let text = r.witness.describe();
    ensure(
        !r.verdict
            && matches!(
                r.witness,
                InvertibilityWitness::ConditionSatisfied { n: 1, .. }
            ),
        || format!("(3,1): verdict {}, {text}", r.verdict),
    )?;
    Ok(format!("z^2 - z invertible; p = 0 not; (3,1) not: {text}"))
}

fn conjugate_shift() -> Outcome {
    let s = HarmonicSymbol::new(ComplexPoly::<f64>::zero());
    let c = cfg();
    let band = c.tol.boundary_band;
    let grid = rasterize(
        &s,
        Some(Bbox::new(-2.0, 2.0, -2.0, 2.0).map_err(err)?),
        256,
        256,
        &c,
    )
    .map_err(err)?;
    let mut exceptions = 0usize;
    for row in 0..256 {
        for col in 0..256 {
            let r = grid.center(col, row).norm();
            let code = grid.cell(col, row);
            if (r < 1.0 - band && code != CellCode::EigenRegion)
                || (r > 1.0 + band && code != CellCode::Resolvent)
            {
                exceptions += 1;
            }
        }
    }
    let frac = exceptions as f64 / (256.0 * 256.0);
    ensure(frac <= 0.005, || {
        format!("{exceptions} exceptions ({:.3}%)", frac * 100.0)
    })?;
    let v = series_eigenvector(&s, C::new(0.3, 0.0), 400, &c).map_err(err)?;
    for j in 0..=50 {
        let expect = (j + 1) as f64 * 0.3f64.powi(j as i32);
        let got = v.coeffs[j];
        ensure(
            (got.re - expect).abs() <= 1e-14 * expect && got.im == 0.0,
            || format!("c_{j} = {got}, expected {expect}"),
        )?;
    }
    Ok(format!(
        "256^2 grid: {exceptions} exceptions ({:.3}%); c_j = (j+1) 0.3^j for j <= 50",
        frac * 100.0
    ))
}

fn oracle_residuals() -> Outcome {
    let c = cfg();
    let params = build_counterexample::<f64>(3, 1).map_err(err)?;
    let s = params.symbol();
    let v = series_eigenvector(&s, zero(), 400, &c).map_err(err)?;
    let r1 = residual(&build_section(&s, 200).map_err(err)?, &v).map_err(err)?;
    ensure(r1 < 1e-6, || format!("(3,1) residual {r1:e}"))?;

    let z = HarmonicSymbol::new(ComplexPoly::<f64>::zero());
    let v = series_eigenvector(&z, C::new(0.3, 0.0), 400, &c).map_err(err)?;
    let r2 = residual(&build_section(&z, 200).map_err(err)?, &v).map_err(err)?;
    ensure(r2 < 1e-8, || format!("p = 0, lambda = 0.3 residual {r2:e}"))?;

    let lam = C::new(-3.0, 0.0);
    let class = classify_point(&s, lam, &c);
    ensure(matches!(class, PointClass::Resolvent), || {
        format!("{lam} classified {}", class.label())
    })?;
    let v = series_eigenvector(&s, lam, 400, &c).map_err(err)?;
    ensure(v.verdict == SeriesVerdict::Growing, || {
        format!("verdict {:?} at {lam}", v.verdict)
    })?;
    Ok(format!(
        "(3,1) lambda = 0: {r1:.2e}; p = 0, lambda = 0.3: {r2:.2e}; resolvent {lam}: GROWING (ratio {:.3})",
        v.growth_ratio
    ))
}

fn radial_shift() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=100usize {
        let expect = ((n * (n + 1)) as f64).sqrt() * 0.5f64.powi(2 * n as i32) / (2 * n + 1) as f64;
        let got = radial_weight(0.5, n);
        let rel = (got - expect).abs() / expect;
        ensure(rel <= 1e-12, || {
            format!("w_{n} = {got:e}, expected {expect:e}")
        })?;
        worst = worst.max(rel);
    }
    let a = radial_shift_section(0.5, 100).map_err(err)?;
    for n in 1..100 {
        ensure(a.entry(n - 1, n).re == radial_weight(0.5, n), || {
            format!("section entry {n} differs")
        })?;
    }
    let eig = section_eigenvalues(&a).map_err(err)?;
    ensure(eig.iter().all(|z| *z == zero()), || {
        "nonzero section eigenvalue".into()
    })?;
    ensure(
        RADIAL_SHIFT_NOTE.contains("does not satisfy Weyl's theorem"),
        || "missing Weyl note".into(),
    )?;
    Ok(format!(
        "weights match to {worst:.1e} relative for n <= 100; all 100 eigenvalues exactly 0"
    ))
}

fn weyl_verdicts() -> Outcome {
    let c = Config {
        atlas_grid: 12,
        essential_samples: 256,
        ..cfg()
    };
    let params = build_counterexample::<f64>(3, 1).map_err(err)?;
    let w = weyl_report(&params.symbol(), &Config { n_max: 200, ..c }).map_err(err)?;
    ensure(w.weyl_theorem_holds, || {
        "(3,1): Weyl's theorem fails".into()
    })?;
    ensure(w.pi00.iter().any(|z| z.norm() < 1e-9), || {
        "(3,1): 0 missing from pi00".into()
    })?;
    let n_pi = w.pi00.len();
    let w0 = weyl_report(&HarmonicSymbol::new(ComplexPoly::<f64>::zero()), &c).map_err(err)?;
    ensure(w0.weyl_theorem_holds && w0.pi00.is_empty(), || {
        "p = 0: unexpected Weyl data".into()
    })?;
    let qc = Config { n_max: 50, ..c };
    for (i, s) in random_quadratics(200).iter().enumerate() {
        let w = weyl_report(s, &qc).map_err(|e| format!("quadratic #{i}: {e}"))?;
        ensure(w.weyl_theorem_holds, || {
            format!("quadratic #{i}: Weyl's theorem fails")
        })?;
    }
    Ok(format!(
        "holds for (3,1) (|pi00| = {n_pi}), p = 0 (pi00 empty), 200 quadratics"
    ))
}

fn winding_cross_check() -> Outcome {
    let c = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x5eed);
    let mut pairs = 0;
    let mut skipped = 0;
    while pairs < 1000 {
        let deg = rng.gen_range(0..=5usize);
        let coeffs: Vec<C> = (0..=deg).map(|_| in_disk(&mut rng, 1.0)).collect();
        let s = HarmonicSymbol::new(ComplexPoly::new(coeffs));
        let (a, b, lo, hi) = s.curve_bbox(512);
        let lam = C::new(
            a - 0.5 + (b - a + 1.0) * rng.gen::<f64>(),
            lo - 0.5 + (hi - lo + 1.0) * rng.gen::<f64>(),
        );
        if curve_distance(&s, lam, 1e-3) <= 1e-3 {
            skipped += 1;
            continue;
        }
        let w = winding(&s, lam, &c).map_err(|e| format!("pair {pairs}: {e}"))?;
        let by_arg = winding_by_argument(&s, lam, c.max_arg_samples);
        ensure(w.w == by_arg && !w.on_curve, || {
            format!(
                "pair {pairs}: roots {} vs argument {by_arg} at {lam} for {}",
                w.w, s.p
            )
        })?;
        pairs += 1;
    }
    Ok(format!(
        "1000 pairs, 0 mismatches ({skipped} draws within 1e-3 of the curve skipped)"
    ))
}

fn hyponormal_vectors() -> Outcome {
    let c = cfg();
    let a = hyponormal_screen(
        &HarmonicSymbol::new(ComplexPoly::from_reals(&[0.0, 0.3])),
        256,
        &c,
    )
    .map_err(err)?;
    ensure(a.verdict == HyponormalVerdict::NotHyponormal, || {
        format!("0.3z: {:?}", a.verdict)
    })?;
    let b = hyponormal_screen(
        &HarmonicSymbol::new(ComplexPoly::from_reals(&[0.0, 2.0])),
        256,
        &c,
    )
    .map_err(err)?;
    ensure(b.verdict == HyponormalVerdict::Inconclusive, || {
        format!("2z: {:?}", b.verdict)
    })?;
    Ok(format!(
        "0.3z: NOT_HYPONORMAL (min |p'| = {}); 2z: INCONCLUSIVE (min |p'| = {})",
        a.min_modulus, b.min_modulus
    ))
}

/// Bytes whose equality across runs and thread counts is required.
pub fn determinism_digest() -> Result<Vec<u8>, String> {
    let c = Config { n_max: 60, ..cfg() };
    let params = build_counterexample::<f64>(3, 1).map_err(err)?;
    let s = params.symbol();
    let grid = rasterize(&s, None, 64, 48, &c).map_err(err)?;
    let mut out = render(&grid, Format::Json);
    let set = enumerate_lambda(&s, &c).map_err(err)?;
    out.extend(serde_json::to_vec(&set).map_err(|e| e.to_string())?);
    let q = &random_quadratics(4)[3];
    out.extend(
        serde_json::to_vec(&analyze(q, &Config { atlas_grid: 8, ..c }).map_err(err)?)
            .map_err(|e| e.to_string())?,
    );
    Ok(out)
}

fn determinism() -> Outcome {
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?
            .install(determinism_digest)
    };
    let base = run(1)?;
    for threads in [1, 2, 4, 8] {
        ensure(run(threads)? == base, || {
            format!("output differs with {threads} worker(s)")
        })?;
    }
    Ok(format!(
        "raster, Lambda and report bytes identical over 5 runs with 1..8 workers ({} bytes)",
        base.len()
    ))
}
