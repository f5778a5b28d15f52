//! Cubic and quadratic value types, Horner evaluation, and the inflection
//! point reduction used by every solver in this crate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PolyError {
    /// Coefficient at `index` (descending powers) is NaN or infinite.
    #[error("coefficient {index} is not finite")]
    NonFinite { index: usize },
    /// The leading coefficient is zero, so the polynomial has lower degree.
    #[error("leading coefficient is zero; polynomial has lower degree")]
    ZeroLeading,
}

fn check_finite(coeffs: &[f64]) -> Result<(), PolyError> {
    match coeffs.iter().position(|c| !c.is_finite()) {
        Some(index) => Err(PolyError::NonFinite { index }),
        None => Ok(()),
    }
}

/// `a x³ + b x² + c x + d` with finite coefficients and `a != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cubic {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Cubic {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, PolyError> {
        check_finite(&[a, b, c, d])?;
        if a == 0.0 {
            return Err(PolyError::ZeroLeading);
        }
        Ok(Self { a, b, c, d })
    }

    /// Builds a cubic from coefficients in ascending powers `[d, c, b, a]`.
    pub fn from_ascending(coeffs: [f64; 4]) -> Result<Self, PolyError> {
        let [d, c, b, a] = coeffs;
        Self::new(a, b, c, d)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// `[a, b, c, d]`
    pub fn descending(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// `[d, c, b, a]`
    pub fn ascending(&self) -> [f64; 4] {
        [self.d, self.c, self.b, self.a]
    }

    /// Largest coefficient magnitude.
    pub fn coefficient_scale(&self) -> f64 {
        self.descending()
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// `f(x)` by Horner's rule.
    pub fn eval(&self, x: f64) -> f64 {
        ((self.a * x + self.b) * x + self.c) * x + self.d
    }

    /// `f'(x) = 3a x² + 2b x + c` by Horner's rule.
    pub fn eval_derivative(&self, x: f64) -> f64 {
        (3.0 * self.a * x + 2.0 * self.b) * x + self.c
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        ((x * self.a + self.b) * x + self.c) * x + self.d
    }

    pub fn eval_derivative_complex(&self, x: Complex64) -> Complex64 {
        (x * (3.0 * self.a) + 2.0 * self.b) * x + self.c
    }

    /// Evaluates the cubic at the abscissa where its second derivative
    /// vanishes and returns the values normalized by the leading coefficient.
    pub fn inflection_point(&self) -> EvalPoint {
        let z = -self.b / (3.0 * self.a);
        EvalPoint {
            z,
            fz: self.eval(z) / self.a,
            fpz: self.eval_derivative(z) / self.a,
        }
    }

    /// Returns `g` with `g(x) = f(x + h)`.
    ///
    /// The expanded coefficients are the Taylor coefficients of `f` at `h`,
    /// so a shift to the inflection point has an exactly vanishing quadratic
    /// term whenever `3ah + b` rounds to zero.
    pub fn shift(&self, h: f64) -> Cubic {
        Cubic {
            a: self.a,
            b: 3.0 * self.a * h + self.b,
            c: self.eval_derivative(h),
            d: self.eval(h),
        }
    }

    /// Multiplies every coefficient by `lambda`.
    pub fn scale(&self, lambda: f64) -> Result<Cubic, PolyError> {
        Cubic::new(
            lambda * self.a,
            lambda * self.b,
            lambda * self.c,
            lambda * self.d,
        )
    }
}

/// `a x² + b x + c` with finite coefficients and `a != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quadratic {
    a: f64,
    b: f64,
    c: f64,
}

impl Quadratic {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, PolyError> {
        check_finite(&[a, b, c])?;
        if a == 0.0 {
            return Err(PolyError::ZeroLeading);
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `[a, b, c]`
    pub fn descending(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.a * x + self.b) * x + self.c
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        (x * self.a + self.b) * x + self.c
    }

    pub fn coefficient_scale(&self) -> f64 {
        self.descending()
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

/// The inflection abscissa `z` (where `f''(z) = 0`) together with `f(z)/a`
/// and `f'(z)/a`. This is all the closed-form solver ever needs to know
/// about the cubic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    pub z: f64,
    pub fz: f64,
    pub fpz: f64,
}

impl EvalPoint {
    pub fn is_finite(&self) -> bool {
        self.z.is_finite() && self.fz.is_finite() && self.fpz.is_finite()
    }
}

/// One root as a `(re, im)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexRoot {
    pub re: f64,
    pub im: f64,
}

impl ComplexRoot {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub const fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    pub fn is_real(&self) -> bool {
        self.im == 0.0
    }

    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re, -self.im)
    }
}

impl From<Complex64> for ComplexRoot {
    fn from(c: Complex64) -> Self {
        Self::new(c.re, c.im)
    }
}

impl From<ComplexRoot> for Complex64 {
    fn from(r: ComplexRoot) -> Self {
        Complex64::new(r.re, r.im)
    }
}

/// Horner evaluation of a polynomial given in ascending powers.
pub fn eval_ascending(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Independent of Horner: sum of c_k * x^k with explicit powers.
    fn term_sum(f: &Cubic, x: f64) -> (f64, f64) {
        let terms = [f.a() * x.powi(3), f.b() * x.powi(2), f.c() * x, f.d()];
        let sum: f64 = terms.iter().sum();
        let mag = terms.iter().fold(0.0_f64, |m, t| m.max(t.abs()));
        (sum, mag)
    }

    fn cubic(a: f64, b: f64, c: f64, d: f64) -> Cubic {
        Cubic::new(a, b, c, d).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(cubic(1.0, -6.0, 11.0, -6.0).eval(2.0), 0.0);
        assert_eq!(cubic(1.0, 0.0, 0.0, 0.0).eval(0.0), 0.0);

        let f = cubic(2.0, -1.0, 3.0, 5.0);
        let (oracle, mag) = term_sum(&f, 1.7);
        // 2*4.913 - 2.89 + 5.1 + 5 = 17.036
        assert!((oracle - 17.036).abs() < 1e-12);
        assert!((f.eval(1.7) - oracle).abs() <= 8.0 * f64::EPSILON * mag);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(cubic(1.0, -6.0, 11.0, -6.0).eval_derivative(2.0), -1.0);
        assert_eq!(cubic(1.0, 0.0, -15.0, -4.0).eval_derivative(0.0), -15.0);
        assert_eq!(cubic(1.0, 0.0, 0.0, 0.0).eval_derivative(0.0), 0.0);
    }

    #[test]
    fn inflection_point_examples() {
        let ep = cubic(1.0, -6.0, 11.0, -6.0).inflection_point();
        assert_eq!((ep.z, ep.fz, ep.fpz), (2.0, 0.0, -1.0));

        let ep = cubic(1.0, -5.0, 9.0, -9.0).inflection_point();
        assert!((ep.z - 5.0 / 3.0).abs() < 1e-15);
        assert!((ep.fz + 88.0 / 27.0).abs() < 1e-14);
        assert!((ep.fpz - 2.0 / 3.0).abs() < 1e-14);

        let ep = cubic(3.0, -18.0, 33.0, -18.0).inflection_point();
        assert_eq!((ep.z, ep.fz, ep.fpz), (2.0, 0.0, -1.0));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(
            cubic(1.0, 0.0, 0.0, 0.0).shift(1.0).descending(),
            [1.0, 3.0, 3.0, 1.0]
        );
        let g = cubic(1.0, -6.0, 11.0, -6.0).shift(2.0);
        assert_eq!(g.b(), 0.0);
        // (x+2)^3 - 6(x+2)^2 + 11(x+2) - 6 = x^3 - x
        assert_eq!(g.descending(), [1.0, 0.0, -1.0, 0.0]);
        let f = cubic(2.5, -1.25, 7.0, 3.0);
        assert_eq!(f.shift(0.0), f);
    }

    #[test]
    fn construction_rejects_bad_coefficients() {
        assert_eq!(Cubic::new(0.0, 1.0, 2.0, 3.0), Err(PolyError::ZeroLeading));
        assert_eq!(
            Cubic::new(1.0, f64::NAN, 2.0, 3.0),
            Err(PolyError::NonFinite { index: 1 })
        );
        assert_eq!(
            Cubic::new(1.0, 0.0, 0.0, f64::INFINITY),
            Err(PolyError::NonFinite { index: 3 })
        );
        assert_eq!(Quadratic::new(0.0, 1.0, 1.0), Err(PolyError::ZeroLeading));
    }

    fn coeff() -> impl Strategy<Value = f64> {
        -1e3..1e3_f64
    }

    fn nonzero_coeff() -> impl Strategy<Value = f64> {
        coeff().prop_filter("nonzero leading", |a| a.abs() > 1e-9)
    }

    proptest! {
        #[test]
        fn horner_matches_term_sum(a in nonzero_coeff(), b in coeff(), c in coeff(), d in coeff(), x in -1e2..1e2_f64) {
            let f = cubic(a, b, c, d);
            let (oracle, mag) = term_sum(&f, x);
            prop_assert!((f.eval(x) - oracle).abs() <= 8.0 * f64::EPSILON * mag);
        }

        #[test]
        fn inflection_zeroes_second_derivative(a in nonzero_coeff(), b in coeff(), c in coeff(), d in coeff()) {
            let f = cubic(a, b, c, d);
            let z = f.inflection_point().z;
            let resid = (6.0 * a * z + 2.0 * b).abs();
            prop_assert!(resid <= 4.0 * f64::EPSILON * (6.0 * a.abs() * z.abs() + 2.0 * b.abs()));
        }

        #[test]
        fn shift_is_composition(a in nonzero_coeff(), b in coeff(), c in coeff(), d in coeff(),
                                x in -1e2..1e2_f64, h in -1e2..1e2_f64) {
            let f = cubic(a, b, c, d);
            let g = f.shift(h);
            let lhs = g.eval(x);
            let rhs = f.eval(x + h);
            // relative to the magnitude of the terms summed at x + h
            let (_, mag) = term_sum(&f, x + h);
            let (_, mag_g) = term_sum(&g, x);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * mag.max(mag_g).max(1.0));
        }

        #[test]
        fn inflection_is_scale_covariant(a in nonzero_coeff(), b in coeff(), c in coeff(), d in coeff(),
                                         lambda in prop::sample::select(vec![1e-6, 0.5, 3.0, -7.0, 1e6])) {
            let f = cubic(a, b, c, d);
            let g = f.scale(lambda).unwrap();
            let (p, q) = (f.inflection_point(), g.inflection_point());
            let close = |x: f64, y: f64, mag: f64| (x - y).abs() <= 8.0 * f64::EPSILON * mag;
            prop_assert!(close(p.z, q.z, p.z.abs()));
            // fz, fpz are sums of terms of size up to |z|^3, |b z^2|...
            let za = p.z.abs();
            let fz_mag = za.powi(3) + (b / a).abs() * za * za + (c / a).abs() * za + (d / a).abs();
            let fpz_mag = 3.0 * za * za + 2.0 * (b / a).abs() * za + (c / a).abs();
            prop_assert!(close(p.fz, q.fz, 4.0 * fz_mag));
            prop_assert!(close(p.fpz, q.fpz, 4.0 * fpz_mag));
        }
    }
}
