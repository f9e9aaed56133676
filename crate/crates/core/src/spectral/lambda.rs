//! Enumeration of Λ, the eigenvalues sitting in index-zero holes of the
//! essential spectrum.
//!
//! Any such λ has an in-disk zero `z` of `F_λ` with `z^2 p'(z) = (n+2)/(n+1)`,
//! hence `λ = 1/z + p(z)` for an in-disk root `z` of `z^2 p'(z) - (n+2)/(n+1)`.
//! Scanning `n = 0..=n_max` yields a finite candidate list per level.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    condition_value, eigen_test, root_options, EigenCertificate, EigenOutcome, HarmonicSymbol,
};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::polynomial::{count_in_disk, find_roots};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Candidate<T> {
    /// In-disk root of `z^2 p'(z) - (n+2)/(n+1)`.
    #[serde(with = "crate::wire::pair")]
    pub z: Complex<T>,
    /// `1/z + p(z)`
    #[serde(with = "crate::wire::pair")]
    pub lambda: Complex<T>,
    /// In-disk zeros of `F_λ`, with multiplicity.
    pub inside: usize,
    pub on_curve: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct CandidateLevel<T> {
    pub n: usize,
    pub candidates: Vec<Candidate<T>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct LambdaSet<T> {
    pub certificates: Vec<EigenCertificate<T>>,
    /// True when the tail `n > n_max` is excluded by the limiting argument.
    pub complete: bool,
    pub reason: String,
    pub n_max: usize,
    /// Candidates whose certification was indeterminate.
    #[serde(with = "crate::wire::pairs")]
    pub unresolved: Vec<Complex<T>>,
}

impl<T: Real> LambdaSet<T> {
    pub fn lambdas(&self) -> Vec<Complex<T>> {
        self.certificates.iter().map(|c| c.lambda).collect()
    }

    pub fn contains(&self, lambda: Complex<T>, tol: T) -> bool {
        self.certificates
            .iter()
            .any(|c| (c.lambda - lambda).norm() <= tol)
    }
}

fn level<T: Real>(
    s: &HarmonicSymbol<T>,
    n: usize,
    c: T,
    cfg: &Config<T>,
) -> Result<CandidateLevel<T>> {
    let opts = root_options(cfg);
    let q = s.condition_poly(c);
    let roots = find_roots(&q, &opts)?;
    let mut candidates = Vec::new();
    for root in roots.inside() {
        let z = root.location;
        let lambda = z.inv() + s.p.eval(z);
        let (inside, on_curve) = count_in_disk(&s.f_lambda(lambda), &opts)?;
        for _ in 0..root.multiplicity {
            candidates.push(Candidate {
                z,
                lambda,
                inside,
                on_curve,
            });
        }
    }
    Ok(CandidateLevel { n, candidates })
}

/// Candidate eigenvalues for every `n` in `ns`, in order.
pub fn scan_candidates<T: Real>(
    s: &HarmonicSymbol<T>,
    ns: std::ops::RangeInclusive<usize>,
    cfg: &Config<T>,
) -> Result<Vec<CandidateLevel<T>>> {
    if s.degree() == 0 {
        return Ok(ns
            .map(|n| CandidateLevel {
                n,
                candidates: Vec::new(),
            })
            .collect());
    }
    ns.into_par_iter()
        .map(|n| level(s, n, condition_value(n), cfg))
        .collect()
}

/// Tail exclusion for `n > n_max`. Every in-disk root of the limit
/// `z^2 p'(z) = 1` must give a double zero of `F_λ` off the curve, and the
/// last scanned level plus geometric probe levels up to `n_cap` must hold
/// only candidates with winding `>= 1`; the final probe must match the limit.
fn tail_exclusion<T: Real>(
    s: &HarmonicSymbol<T>,
    last: Option<&CandidateLevel<T>>,
    cfg: &Config<T>,
) -> Result<(bool, String)> {
    let opts = root_options(cfg);
    let limit = level(s, usize::MAX, T::one(), cfg)?;
    let limit_roots = find_roots(&s.condition_poly(T::one()), &opts)?;
    let margin = cfg.tol.tail_margin;
    if let Some(r) = limit_roots
        .roots
        .iter()
        .find(|r| (r.location.norm() - T::one()).abs() <= margin)
    {
        return Ok((
            false,
            format!(
                "limit root {} lies within the tail margin of the circle",
                r.location
            ),
        ));
    }
    if let Some(c) = limit.candidates.iter().find(|c| c.on_curve || c.inside < 2) {
        return Ok((
            false,
            format!(
                "limit candidate {} has {} in-disk zeros (need >= 2 off the curve)",
                c.lambda, c.inside
            ),
        ));
    }
    let Some(last) = last else {
        return Ok((false, "no levels scanned".into()));
    };
    let mut probes = vec![last.clone()];
    let mut n = last.n.max(1);
    while n < cfg.n_cap {
        n = (n * 2).min(cfg.n_cap);
        probes.push(level(s, n, condition_value(n), cfg)?);
    }
    for lvl in &probes {
        if let Some(c) = lvl.candidates.iter().find(|c| c.on_curve || c.inside < 2) {
            return Ok((
                false,
                format!(
                    "level n = {} candidate {} has winding {}",
                    lvl.n,
                    c.lambda,
                    c.inside as i64 - 1
                ),
            ));
        }
    }
    let end = probes.last().unwrap();
    if end.candidates.len() != limit.candidates.len() {
        return Ok((
            false,
            format!(
                "probe level n = {} has {} in-disk roots, limit has {}",
                end.n,
                end.candidates.len(),
                limit.candidates.len()
            ),
        ));
    }
    Ok((
        true,
        format!(
            "{} limit root(s) in the disk, each a double zero of F_lambda; levels {}..={} probed with winding >= 1",
            limit.candidates.len(),
            last.n,
            end.n
        ),
    ))
}

pub fn enumerate_lambda<T: Real>(s: &HarmonicSymbol<T>, cfg: &Config<T>) -> Result<LambdaSet<T>> {
    let n_max = cfg.n_max;
    if s.degree() == 0 {
        return Ok(LambdaSet {
            certificates: Vec::new(),
            complete: true,
            reason: "p is constant: z^2 p'(z) vanishes identically".into(),
            n_max,
            unresolved: Vec::new(),
        });
    }
    let levels = scan_candidates(s, 0..=n_max, cfg)?;
    let mut certificates: Vec<EigenCertificate<T>> = Vec::new();
    let mut unresolved: Vec<Complex<T>> = Vec::new();
    for cand in levels.iter().flat_map(|l| &l.candidates) {
        if cand.on_curve || cand.inside != 1 {
            continue;
        }
        let dedup = cfg.tol.dedup_tol;
        if certificates
            .iter()
            .any(|c| (c.lambda - cand.lambda).norm() <= dedup)
        {
            continue;
        }
        match eigen_test(s, cand.lambda, cfg) {
            Ok(EigenOutcome::Certified(cert)) if cert.winding == 0 => certificates.push(cert),
            Ok(_) | Err(Error::PreconditionViolated(_)) => {}
            Err(Error::Indeterminate(_)) => {
                if !unresolved
                    .iter()
                    .any(|u| (*u - cand.lambda).norm() <= dedup)
                {
                    unresolved.push(cand.lambda);
                }
            }
            Err(e) => return Err(e),
        }
    }
    let (mut complete, mut reason) = tail_exclusion(s, levels.last(), cfg)?;
    if !unresolved.is_empty() {
        complete = false;
        reason = format!("{} candidate(s) indeterminate; {reason}", unresolved.len());
    }
    Ok(LambdaSet {
        certificates,
        complete,
        reason,
        n_max,
        unresolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::ComplexPoly;

    type C = Complex<f64>;

    #[test]
    fn constant_symbol_has_empty_lambda() {
        let s = HarmonicSymbol::new(ComplexPoly::constant(C::new(0.4, 0.1)));
        let set = enumerate_lambda(&s, &Config::default()).unwrap();
        assert!(set.certificates.is_empty());
        assert!(set.complete);
    }

    #[test]
    fn candidates_are_zeros_of_f_lambda() {
        let s = HarmonicSymbol::new(ComplexPoly::from_reals(&[0.3, 0.2, -0.5, 1.2]));
        let cfg = Config::default();
        for lvl in scan_candidates(&s, 0..=5, &cfg).unwrap() {
            for c in lvl.candidates {
                assert!(s.f_lambda(c.lambda).eval(c.z).norm() < 1e-12);
                let v = c.z * c.z * s.p.derivative().eval(c.z);
                assert!((v - condition_value::<f64>(lvl.n)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn quadratic_sample_is_empty() {
        let s = HarmonicSymbol::new(ComplexPoly::new(vec![
            C::new(0.3, -0.4),
            C::new(1.2, 0.5),
            C::new(-0.8, 1.1),
        ]));
        let cfg = Config {
            n_max: 30,
            ..Config::default()
        };
        assert!(enumerate_lambda(&s, &cfg).unwrap().certificates.is_empty());
    }
}
