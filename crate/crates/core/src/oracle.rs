//! Durand–Kerner simultaneous iteration for quadratics and cubics.
//!
//! Shares nothing with the closed-form paths beyond Horner evaluation, so
//! it serves as ground truth in tests and as the `oracle` CLI method.

use num_complex::Complex64;
use thiserror::Error;

use crate::poly::{eval_ascending, ComplexRoot};
use crate::roots::canonical_sort;

/// Cluster radius (relative to `1 + max|x|`) under which roots are
/// reported as a multiple root.
pub const MULTIPLE_ROOT_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub max_iterations: usize,
    /// Stop once the largest update is at most `convergence_tol * (1 + max|x|)`.
    pub convergence_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            convergence_tol: 1e-14,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("degree {0} is not supported (expected 2 or 3)")]
    UnsupportedDegree(usize),
    #[error("leading coefficient is zero")]
    ZeroLeading,
    #[error("coefficients must be finite")]
    NonFinite,
    #[error("invalid oracle configuration")]
    InvalidConfig,
    #[error("no convergence after {iterations} iterations (last step {last_step:e})")]
    NonConvergence {
        iterations: usize,
        last_step: f64,
        roots: Vec<ComplexRoot>,
    },
}

/// Result of a Durand–Kerner run.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleRoots {
    /// All roots with multiplicity, canonically sorted.
    pub roots: Vec<ComplexRoot>,
    pub iterations: usize,
    /// Set when two or more iterates cluster within [`MULTIPLE_ROOT_TOL`].
    /// Iterates converge only linearly there, so each cluster is replaced by
    /// a Newton-refined root of the matching derivative of the polynomial
    /// when that point is a root of the polynomial to rounding level.
    pub multiple_root: bool,
}

/// Default starting points `(0.4 + 0.9i)^k`.
pub fn initial_guesses(n: usize) -> Vec<Complex64> {
    let w = Complex64::new(0.4, 0.9);
    (0..n).map(|k| w.powu(k as u32)).collect()
}

/// All roots of the polynomial with `coefficients` in ascending powers.
pub fn durand_kerner(coefficients: &[f64], cfg: &OracleConfig) -> Result<OracleRoots, OracleError> {
    let degree = coefficients.len().saturating_sub(1);
    durand_kerner_from(coefficients, &initial_guesses(degree), cfg)
}

/// Same as [`durand_kerner`] with caller-supplied starting points.
pub fn durand_kerner_from(
    coefficients: &[f64],
    guesses: &[Complex64],
    cfg: &OracleConfig,
) -> Result<OracleRoots, OracleError> {
    let degree = coefficients.len().saturating_sub(1);
    if !(2..=3).contains(&degree) || guesses.len() != degree {
        return Err(OracleError::UnsupportedDegree(degree));
    }
    if coefficients.iter().any(|c| !c.is_finite()) {
        return Err(OracleError::NonFinite);
    }
    let lead = coefficients[degree];
    if lead == 0.0 {
        return Err(OracleError::ZeroLeading);
    }
    if cfg.max_iterations == 0 || !(cfg.convergence_tol > 0.0) {
        return Err(OracleError::InvalidConfig);
    }
    let monic: Vec<f64> = coefficients.iter().map(|c| c / lead).collect();

    let mut x = guesses.to_vec();
    let mut last_step = f64::INFINITY;
    for iter in 1..=cfg.max_iterations {
        last_step = 0.0;
        for k in 0..degree {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..degree {
                if j != k {
                    denom *= x[k] - x[j];
                }
            }
            let step = eval_ascending(&monic, x[k]) / denom;
            if !step.is_finite() {
                // coincident iterates; nudge apart and keep going
                let nudge = Complex64::new(1e-8, 1e-8) * (1.0 + x[k].norm());
                x[k] += nudge;
                last_step = f64::INFINITY;
                continue;
            }
            x[k] -= step;
            last_step = last_step.max(step.norm());
        }
        let radius = x.iter().fold(0.0_f64, |m, r| m.max(r.norm()));
        if last_step <= cfg.convergence_tol * (1.0 + radius)
            || (!clustered(&x) && at_noise_floor(&monic, &x))
        {
            return Ok(finish(&monic, x, iter));
        }
    }

    let out = finish(&monic, x, cfg.max_iterations);
    if out.multiple_root {
        // linear convergence near a multiple root; accepted at the relaxed
        // tolerance and flagged
        return Ok(out);
    }
    Err(OracleError::NonConvergence {
        iterations: cfg.max_iterations,
        last_step,
        roots: out.roots,
    })
}

/// True when every `|p(x_k)|` is within the rounding error of evaluating
/// `p` at `x_k`, so further steps only move the iterates around in noise.
fn at_noise_floor(monic: &[f64], x: &[Complex64]) -> bool {
    x.iter()
        .all(|&xk| eval_ascending(monic, xk).norm() <= rounding_bound(monic, xk))
}

/// Bound on the rounding error of evaluating `p` at `x`.
fn rounding_bound(monic: &[f64], x: Complex64) -> f64 {
    let r = x.norm();
    let magnitude = monic.iter().rev().fold(0.0_f64, |acc, c| acc * r + c.abs());
    4.0 * monic.len() as f64 * f64::EPSILON * magnitude
}

fn cluster_radius(x: &[Complex64]) -> f64 {
    MULTIPLE_ROOT_TOL * (1.0 + x.iter().fold(0.0_f64, |m, r| m.max(r.norm())))
}

fn clustered(x: &[Complex64]) -> bool {
    let tol = cluster_radius(x);
    x.iter()
        .enumerate()
        .any(|(i, a)| x[i + 1..].iter().any(|b| (a - b).norm() <= tol))
}

/// Groups iterates lying within the cluster radius of each other.
fn clusters(x: &[Complex64]) -> Vec<Vec<usize>> {
    let tol = cluster_radius(x);
    let mut label: Vec<usize> = (0..x.len()).collect();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if (x[i] - x[j]).norm() <= tol {
                let (from, to) = (label[j], label[i]);
                label
                    .iter_mut()
                    .filter(|l| **l == from)
                    .for_each(|l| *l = to);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &l) in label.iter().enumerate() {
        match groups.iter_mut().find(|g| label[g[0]] == l) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    groups
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c)
        .collect()
}

/// A root of multiplicity `m` is a simple root of the `(m-1)`-th
/// derivative; Newton on that derivative from the cluster mean.
fn refine_multiple(monic: &[f64], start: Complex64, m: usize) -> Complex64 {
    let mut g = monic.to_vec();
    for _ in 1..m {
        g = derivative(&g);
    }
    let dg = derivative(&g);
    let mut x = start;
    let mut best = eval_ascending(&g, x).norm();
    for _ in 0..20 {
        let step = eval_ascending(&g, x) / eval_ascending(&dg, x);
        if !step.is_finite() {
            break;
        }
        let next = x - step;
        let val = eval_ascending(&g, next).norm();
        if val >= best {
            break;
        }
        (x, best) = (next, val);
    }
    x
}

fn finish(monic: &[f64], mut x: Vec<Complex64>, iterations: usize) -> OracleRoots {
    let multiple_root = clustered(&x);
    if multiple_root {
        for group in clusters(&x).into_iter().filter(|g| g.len() > 1) {
            let mean = group.iter().map(|&i| x[i]).sum::<Complex64>() / group.len() as f64;
            let root = refine_multiple(monic, mean, group.len());
            // close but distinct roots leave |p| well above rounding level at
            // the refined point; those iterates are kept as they are
            if eval_ascending(monic, root).norm() <= 16.0 * rounding_bound(monic, root) {
                group.iter().for_each(|&i| x[i] = root);
            }
        }
    }
    let mut roots: Vec<ComplexRoot> = x.into_iter().map(ComplexRoot::from).collect();
    canonical_sort(&mut roots);
    OracleRoots {
        roots,
        iterations,
        multiple_root,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::root_distance;
    use proptest::prelude::*;

    fn r(re: f64, im: f64) -> ComplexRoot {
        ComplexRoot::new(re, im)
    }

    #[test]
    fn roots_one_two_three() {
        let out = durand_kerner(&[-6.0, 11.0, -6.0, 1.0], &OracleConfig::default()).unwrap();
        assert!(root_distance(&out.roots, &[r(1.0, 0.0), r(2.0, 0.0), r(3.0, 0.0)]) < 1e-12);
        assert!(!out.multiple_root);
    }

    #[test]
    fn cube_roots_of_unity() {
        let h = 3.0_f64.sqrt() / 2.0;
        let out = durand_kerner(&[-1.0, 0.0, 0.0, 1.0], &OracleConfig::default()).unwrap();
        assert!(root_distance(&out.roots, &[r(1.0, 0.0), r(-0.5, h), r(-0.5, -h)]) < 1e-12);
        // canonical order: by real part, then imaginary part
        assert!(out.roots[0].im < 0.0 && out.roots[2].re > 0.9);
    }

    #[test]
    fn triple_root_converges_loosely_and_is_flagged() {
        let out = durand_kerner(&[0.0, 0.0, 0.0, 1.0], &OracleConfig::default()).unwrap();
        assert!(out.roots.iter().all(|x| x.norm() < 1e-4));
        assert!(out.multiple_root);

        // (x - 1)^3 expanded: rounding noise keeps the step above tolerance
        let out = durand_kerner(&[-1.0, 3.0, -3.0, 1.0], &OracleConfig::default()).unwrap();
        assert!(out
            .roots
            .iter()
            .all(|x| (Complex64::from(*x) - 1.0).norm() < 1e-4));
        assert!(out.multiple_root);
    }

    #[test]
    fn clusters_are_refined_to_the_multiple_root() {
        let out = durand_kerner(&[-125.0, 75.0, -15.0, 1.0], &OracleConfig::default()).unwrap();
        assert!(out.multiple_root);
        assert!(out
            .roots
            .iter()
            .all(|x| (Complex64::from(*x) - 5.0).norm() < 1e-12));

        // (x - 1)^2 (x - 2)
        let out = durand_kerner(&[-2.0, 5.0, -4.0, 1.0], &OracleConfig::default()).unwrap();
        assert!(root_distance(&out.roots, &[r(1.0, 0.0), r(1.0, 0.0), r(2.0, 0.0)]) < 1e-12);
    }

    #[test]
    fn close_distinct_roots_are_not_merged() {
        // (x - 1)(x - 1.00001)(x + 2)
        let (p, q) = (1.0, 1.00001);
        let coeffs = [2.0 * p * q, p * q - 2.0 * (p + q), 2.0 - (p + q), 1.0];
        let out = durand_kerner(&coeffs, &OracleConfig::default()).unwrap();
        assert!(out.multiple_root);
        assert!(root_distance(&out.roots, &[r(-2.0, 0.0), r(p, 0.0), r(q, 0.0)]) < 1e-9);
    }

    #[test]
    fn ill_conditioned_simple_roots_stop_at_noise_floor() {
        let out = durand_kerner(&[-1.0000001, 3.0, -3.0, 1.0], &OracleConfig::default()).unwrap();
        assert!(!out.multiple_root);
        let c = 1e-7_f64.cbrt();
        let h = 3.0_f64.sqrt() / 2.0;
        let expected = [
            r(1.0 - c / 2.0, -c * h),
            r(1.0 - c / 2.0, c * h),
            r(1.0 + c, 0.0),
        ];
        assert!(root_distance(&out.roots, &expected) < 1e-10);
    }

    #[test]
    fn quadratic() {
        let out = durand_kerner(&[1.0, 0.0, 1.0], &OracleConfig::default()).unwrap();
        assert!(root_distance(&out.roots, &[r(0.0, 1.0), r(0.0, -1.0)]) < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        let cfg = OracleConfig::default();
        assert_eq!(
            durand_kerner(&[1.0, 2.0], &cfg),
            Err(OracleError::UnsupportedDegree(1))
        );
        assert_eq!(
            durand_kerner(&[1.0, 2.0, 3.0, 0.0], &cfg),
            Err(OracleError::ZeroLeading)
        );
        assert_eq!(
            durand_kerner(&[1.0, f64::NAN, 3.0], &cfg),
            Err(OracleError::NonFinite)
        );
        let bad = OracleConfig {
            max_iterations: 0,
            ..cfg
        };
        assert_eq!(
            durand_kerner(&[1.0, 2.0, 3.0], &bad),
            Err(OracleError::InvalidConfig)
        );
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let cfg = OracleConfig {
            max_iterations: 2,
            convergence_tol: 1e-14,
        };
        let err = durand_kerner(&[-6.0, 11.0, -6.0, 1.0], &cfg).unwrap_err();
        assert!(matches!(
            err,
            OracleError::NonConvergence { iterations: 2, .. }
        ));
    }

    fn coeff() -> impl Strategy<Value = f64> {
        -1e3..1e3_f64
    }

    proptest! {
        #[test]
        fn converged_roots_have_small_residuals(a in coeff().prop_filter("lead", |a| a.abs() > 1e-3),
                                                b in coeff(), c in coeff(), d in coeff()) {
            let coeffs = [d, c, b, a];
            let out = durand_kerner(&coeffs, &OracleConfig::default());
            prop_assume!(matches!(&out, Ok(o) if !o.multiple_root));
            let out = out.unwrap();
            let scale_c = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
            for x in &out.roots {
                let scale = scale_c * x.norm().max(1.0).powi(3);
                prop_assert!(eval_ascending(&coeffs, (*x).into()).norm() / scale <= 1e-10);
            }
        }

        #[test]
        fn guess_order_does_not_matter(b in coeff(), c in coeff(), d in coeff(), perm in 0usize..6) {
            let coeffs = [d, c, b, 1.0];
            let g = initial_guesses(3);
            let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let permuted: Vec<Complex64> = orders[perm].iter().map(|&i| g[i]).collect();
            let cfg = OracleConfig::default();
            let (Ok(x), Ok(y)) = (durand_kerner(&coeffs, &cfg), durand_kerner_from(&coeffs, &permuted, &cfg)) else {
                return Ok(());
            };
            prop_assume!(!x.multiple_root);
            prop_assert!(root_distance(&x.roots, &y.roots) < 1e-9);
        }
    }
}
