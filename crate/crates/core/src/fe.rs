//! Closed-form cubic solver working only from `z`, `f(z)/a` and `f'(z)/a`.
//!
//! With `Q = f'(z) / 3a` and `R = -f(z) / 2a`, the shifted variable
//! `t = x - z` satisfies `t³ + 3Q t - 2R = 0`, and the sign of
//! `D = Q³ + R²` selects the solution path:
//!
//! * `D < 0`: three distinct real roots, via the cosine form
//!   `x = 2√(-Q) cos((θ + 2πk) / 3) + z` with `cos θ = R / √((-Q)³)`.
//! * `D > 0`: one real root `z + B` with `B = ∛(R + √D) + ∛(R - √D)` and a
//!   conjugate pair `z - B/2 ± (√3/2) i √(B² + 4Q)`.
//! * `D = 0`: a double or triple root.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{ComplexRoot, Cubic, EvalPoint, Quadratic};
use crate::roots::{output_order, residuals, Classification, RootSet};

/// Smallest value the `D ≈ 0` threshold can take.
pub const D_FLOOR: f64 = f64::MIN_POSITIVE * 10.0;

/// Slack allowed on the arccos argument before it is clamped.
const ACOS_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SolveError {
    /// A solution path was called with invariants that belong to another path.
    #[error("internal contract violation: {0}")]
    Contract(&'static str),
    /// Intermediate values overflowed; the roots are outside the f64 range.
    #[error("intermediate values are not finite (z = {z}, Q = {q}, R = {r})")]
    NonFinite { z: f64, q: f64, r: f64 },
}

/// `Q`, `R` and `D = Q³ + R²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedInvariants {
    pub q: f64,
    pub r: f64,
    pub d: f64,
}

impl ReducedInvariants {
    pub fn is_finite(&self) -> bool {
        self.q.is_finite() && self.r.is_finite() && self.d.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Apply up to two Newton steps per simple root.
    pub polish: bool,
    /// Relative threshold for treating `D` as zero.
    pub tol_d: f64,
    /// Residuals above this are reported as suspect by callers.
    pub residual_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            polish: true,
            tol_d: 1e-12,
            residual_tol: 1e-10,
        }
    }
}

pub fn reduced_invariants(ep: &EvalPoint) -> ReducedInvariants {
    let q = ep.fpz / 3.0;
    let r = -ep.fz / 2.0;
    ReducedInvariants {
        q,
        r,
        d: q * q * q + r * r,
    }
}

pub fn classify(inv: &ReducedInvariants, tol_d: f64) -> Classification {
    let thresh = tol_d * (inv.q.abs().powi(3) + inv.r * inv.r + D_FLOOR);
    if inv.d < -thresh {
        Classification::ThreeRealDistinct
    } else if inv.d > thresh {
        Classification::OneRealTwoComplex
    } else if inv.q.abs() > tol_d {
        Classification::RealWithDouble
    } else {
        Classification::TripleRoot
    }
}

/// `t³ + fpz t + fz` evaluated at `t = x - z`, normalized like
/// [`crate::roots::normalized_residual`].
fn reduced_residual(ep: &EvalPoint, x: ComplexRoot) -> f64 {
    let t = Complex64::from(x) - ep.z;
    let value = (t * t + ep.fpz) * t + ep.fz;
    let scale = ep.fz.abs().max(ep.fpz.abs()).max(1.0) * t.norm().max(1.0).powi(3);
    value.norm() / scale
}

fn root_set(ep: &EvalPoint, roots: [ComplexRoot; 3], classification: Classification) -> RootSet {
    let roots = output_order(roots, classification);
    RootSet {
        roots,
        classification,
        residuals: roots.map(|x| reduced_residual(ep, x)),
    }
}

/// The angle `θ = arccos(R / √((-Q)³))` of the three-real-root path.
pub fn trig_angle(inv: &ReducedInvariants) -> Result<f64, SolveError> {
    if !(inv.q < 0.0) {
        return Err(SolveError::Contract("trigonometric path requires Q < 0"));
    }
    let arg = inv.r / (-inv.q).powi(3).sqrt();
    debug_assert!(
        arg.abs() <= 1.0 + ACOS_SLACK || inv.d >= 0.0,
        "arccos argument {arg} outside [-1, 1] for D = {}",
        inv.d
    );
    Ok(arg.clamp(-1.0, 1.0).acos())
}

/// Three distinct real roots via the cosine form.
pub fn solve_trig(ep: &EvalPoint, inv: &ReducedInvariants) -> Result<RootSet, SolveError> {
    let theta = trig_angle(inv)?;
    let amp = 2.0 * (-inv.q).sqrt();
    let roots = [0.0, 1.0, 2.0]
        .map(|k| ComplexRoot::real(amp * ((theta + 2.0 * PI * k) / 3.0).cos() + ep.z));
    Ok(root_set(ep, roots, Classification::ThreeRealDistinct))
}

/// The two real cube-root terms `(u, v)` with `u + v = B` and `u v = -Q`.
///
/// `u` is taken from the radicand `R ± √D` of larger magnitude and
/// `v = -Q / u`, so neither term suffers cancellation.
pub fn cube_root_terms(inv: &ReducedInvariants) -> Result<(f64, f64), SolveError> {
    if !(inv.d > 0.0) {
        return Err(SolveError::Contract("cube-root path requires D > 0"));
    }
    let sqrt_d = inv.d.sqrt();
    let u = if inv.r >= 0.0 {
        (inv.r + sqrt_d).cbrt()
    } else {
        (inv.r - sqrt_d).cbrt()
    };
    Ok((u, -inv.q / u))
}

/// One real root and a conjugate pair.
pub fn solve_cardano(ep: &EvalPoint, inv: &ReducedInvariants) -> Result<RootSet, SolveError> {
    let (u, v) = cube_root_terms(inv)?;
    let b = u + v;
    // (u - v)² = B² + 4Q; the difference form avoids cancelling B² against 4Q.
    let im = 0.5 * 3.0_f64.sqrt() * (u - v).abs();
    let re = ep.z - 0.5 * b;
    let roots = [
        ComplexRoot::real(ep.z + b),
        ComplexRoot::new(re, im),
        ComplexRoot::new(re, -im),
    ];
    Ok(root_set(ep, roots, Classification::OneRealTwoComplex))
}

/// Double and triple roots (`D = 0`).
pub fn solve_repeated(
    ep: &EvalPoint,
    inv: &ReducedInvariants,
    cls: Classification,
) -> Result<RootSet, SolveError> {
    let roots = match cls {
        Classification::TripleRoot => [ComplexRoot::real(ep.z); 3],
        Classification::RealWithDouble => {
            let c = inv.r.cbrt();
            let double = ComplexRoot::real(ep.z - c);
            [ComplexRoot::real(ep.z + 2.0 * c), double, double]
        }
        _ => {
            return Err(SolveError::Contract(
                "repeated-root path requires a D = 0 classification",
            ))
        }
    };
    Ok(root_set(ep, roots, cls))
}

/// Solves `cubic` by the inflection-point reduction.
///
/// Residuals in the result are taken against `cubic` itself. Fails only
/// when intermediate values overflow.
pub fn solve(cubic: &Cubic, options: &SolveOptions) -> Result<RootSet, SolveError> {
    let ep = cubic.inflection_point();
    let inv = reduced_invariants(&ep);
    if !ep.is_finite() || !inv.is_finite() {
        return Err(SolveError::NonFinite {
            z: ep.z,
            q: inv.q,
            r: inv.r,
        });
    }
    let cls = classify(&inv, options.tol_d);
    let set = solve_path(cubic, &ep, &inv, cls, options)?;
    if !matches!(
        cls,
        Classification::RealWithDouble | Classification::TripleRoot
    ) || set.max_residual() <= options.residual_tol
    {
        return Ok(set);
    }
    // A relative D threshold also catches cubics whose roots differ by many
    // orders of magnitude (the reduction at a far-away z leaves |D| tiny
    // relative to Q³). Those are not repeated roots; fall back to the path
    // picked by the sign of D and keep whichever fits better.
    let alt = if inv.d < 0.0 {
        Classification::ThreeRealDistinct
    } else if inv.d > 0.0 {
        Classification::OneRealTwoComplex
    } else {
        return Ok(set);
    };
    let alt = solve_path(cubic, &ep, &inv, alt, options)?;
    Ok(if alt.max_residual() < set.max_residual() {
        alt
    } else {
        set
    })
}

fn solve_path(
    cubic: &Cubic,
    ep: &EvalPoint,
    inv: &ReducedInvariants,
    cls: Classification,
    options: &SolveOptions,
) -> Result<RootSet, SolveError> {
    let mut set = match cls {
        Classification::ThreeRealDistinct => solve_trig(ep, inv)?,
        Classification::OneRealTwoComplex => solve_cardano(ep, inv)?,
        Classification::RealWithDouble | Classification::TripleRoot => {
            solve_repeated(ep, inv, cls)?
        }
    };
    if options.polish
        && matches!(
            cls,
            Classification::ThreeRealDistinct | Classification::OneRealTwoComplex
        )
    {
        set.roots = polish(cubic, set.roots, cls);
    }
    set.residuals = residuals(cubic, &set.roots);
    Ok(set)
}

const POLISH_STEPS: usize = 2;

fn polish(cubic: &Cubic, roots: [ComplexRoot; 3], cls: Classification) -> [ComplexRoot; 3] {
    let mut out = roots;
    match cls {
        Classification::ThreeRealDistinct => {
            for i in 0..3 {
                let others = [0, 1, 2].into_iter().filter(|&j| j != i).map(|j| roots[j]);
                let max_step = 0.5
                    * others
                        .map(|o| (o.re - roots[i].re).abs())
                        .fold(f64::INFINITY, f64::min);
                out[i] = ComplexRoot::real(newton_real(cubic, roots[i].re, max_step));
            }
        }
        Classification::OneRealTwoComplex => {
            let gap = (Complex64::from(roots[1]) - Complex64::from(roots[0])).norm();
            let max_step = 0.5 * gap.min(roots[1].im.abs());
            out[0] = ComplexRoot::real(newton_real(cubic, roots[0].re, 0.5 * gap));
            let upper = newton_complex(cubic, roots[1].into(), max_step);
            // keep the pair exact conjugates with the positive part first
            out[1] = ComplexRoot::new(upper.re, upper.im.abs());
            out[2] = out[1].conj();
        }
        _ => {}
    }
    out
}

fn newton_real(cubic: &Cubic, mut x: f64, max_step: f64) -> f64 {
    let mut fx = cubic.eval(x);
    for _ in 0..POLISH_STEPS {
        let dfx = cubic.eval_derivative(x);
        if fx == 0.0 || dfx == 0.0 {
            break;
        }
        let step = fx / dfx;
        if !step.is_finite() || step.abs() > max_step {
            break;
        }
        let next = x - step;
        let f_next = cubic.eval(next);
        if !(f_next.abs() < fx.abs()) {
            break;
        }
        x = next;
        fx = f_next;
    }
    x
}

fn newton_complex(cubic: &Cubic, mut x: Complex64, max_step: f64) -> Complex64 {
    let mut fx = cubic.eval_complex(x);
    for _ in 0..POLISH_STEPS {
        let dfx = cubic.eval_derivative_complex(x);
        if fx.norm() == 0.0 || dfx.norm() == 0.0 {
            break;
        }
        let step = fx / dfx;
        if !step.is_finite() || step.norm() > max_step {
            break;
        }
        let next = x - step;
        let f_next = cubic.eval_complex(next);
        if !(f_next.norm() < fx.norm()) {
            break;
        }
        x = next;
        fx = f_next;
    }
    x
}

/// Quadratic counterpart: evaluate at the stationary point `z = -b / 2a`,
/// then the roots are `z ± √v` with `v = -f(z) / a`.
///
/// Real roots come back larger first; the smaller-magnitude one is
/// recovered from the product of roots `c / a`.
pub fn solve_quadratic_fe(q: &Quadratic) -> (ComplexRoot, ComplexRoot) {
    let z = -q.b() / (2.0 * q.a());
    let v = -q.eval(z) / q.a();
    if v >= 0.0 {
        let s = v.sqrt();
        let big = if z >= 0.0 { z + s } else { z - s };
        let small = if big == 0.0 {
            0.0
        } else {
            (q.c() / q.a()) / big
        };
        let (hi, lo) = if big >= small {
            (big, small)
        } else {
            (small, big)
        };
        (ComplexRoot::real(hi), ComplexRoot::real(lo))
    } else {
        let s = (-v).sqrt();
        (ComplexRoot::new(z, s), ComplexRoot::new(z, -s))
    }
}
