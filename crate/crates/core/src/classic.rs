//! The textbook route: depress the monic cubic with `x = y - b/3`, then
//! `y = A + B`, `ωA + ω²B`, `ωB + ω²A` with
//! `A, B = ∛(-q/2 ± √R)` and `R = (p/3)³ + (q/2)²`.
//!
//! Kept independent of [`crate::fe`] so the two can check each other.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::poly::{ComplexRoot, Cubic, Quadratic};
use crate::roots::{classify_roots, residuals, RootSet};

/// Primitive cube root of unity `-1/2 + (√3/2) i`.
pub const OMEGA: Complex64 = Complex64::new(-0.5, 0.866_025_403_784_438_6);

/// Imaginary parts below this (relative to the root scale) are rounding noise.
pub const SNAP_TOL: f64 = 1e-9;

/// `y³ + p y + q`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepressedCubic {
    pub p: f64,
    pub q: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CardanoRadicals {
    pub a: Complex64,
    pub b: Complex64,
    pub r_classic: f64,
}

/// Returns the depressed form of the monic-normalized cubic and the shift
/// `-b / 3a` that maps its roots back.
pub fn depress(cubic: &Cubic) -> (DepressedCubic, f64) {
    let b = cubic.b() / cubic.a();
    let c = cubic.c() / cubic.a();
    let d = cubic.d() / cubic.a();
    let p = c - b * b / 3.0;
    let q = d - b * c / 3.0 + 2.0 * b * b * b / 27.0;
    (DepressedCubic { p, q }, -cubic.b() / (3.0 * cubic.a()))
}

/// Principal cube root, argument in `(-π/3, π/3]`.
pub fn principal_cbrt(w: Complex64) -> Complex64 {
    if w.re == 0.0 && w.im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let (r, arg) = w.to_polar();
    Complex64::from_polar(r.cbrt(), arg / 3.0)
}

/// The radicals `A` and `B`, with `B` tied to `A` by `A·B = -p/3`.
///
/// `A` is taken from whichever of `-q/2 ± √R` has the larger magnitude;
/// swapping the roles of `A` and `B` only permutes the last two roots.
pub fn radicals(dc: &DepressedCubic) -> CardanoRadicals {
    let r_classic = (dc.p / 3.0).powi(3) + (dc.q / 2.0).powi(2);
    let half_q = -dc.q / 2.0;
    let sqrt_r = if r_classic >= 0.0 {
        Complex64::new(r_classic.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-r_classic).sqrt())
    };
    let (plus, minus) = (half_q + sqrt_r, half_q - sqrt_r);
    let (big, small) = if plus.norm() >= minus.norm() {
        (plus, minus)
    } else {
        (minus, plus)
    };
    let a = principal_cbrt(big);
    let b = if a.norm() > 0.0 {
        -dc.p / (3.0 * a)
    } else {
        principal_cbrt(small)
    };
    CardanoRadicals { a, b, r_classic }
}

/// Solves with the classical formulas. Classification comes from the root
/// geometry after snapping imaginary parts below [`SNAP_TOL`].
pub fn solve_classic(cubic: &Cubic) -> RootSet {
    let (dc, shift) = depress(cubic);
    let CardanoRadicals { a, b, .. } = radicals(&dc);
    let w2 = OMEGA * OMEGA;
    let ys = [a + b, OMEGA * a + w2 * b, OMEGA * b + w2 * a];
    let roots = ys.map(|y| ComplexRoot::from(y + shift));
    let (roots, classification) = classify_roots(roots, SNAP_TOL);
    RootSet {
        roots,
        classification,
        residuals: residuals(cubic, &roots),
    }
}

/// Textbook quadratic formula `(-b ± √(b² - 4ac)) / 2a`, larger real root
/// (or positive imaginary part) first.
pub fn solve_quadratic_classic(q: &Quadratic) -> (ComplexRoot, ComplexRoot) {
    let disc = q.b() * q.b() - 4.0 * q.a() * q.c();
    let two_a = 2.0 * q.a();
    if disc >= 0.0 {
        let s = disc.sqrt();
        let (x1, x2) = ((-q.b() + s) / two_a, (-q.b() - s) / two_a);
        (ComplexRoot::real(x1.max(x2)), ComplexRoot::real(x1.min(x2)))
    } else {
        let re = -q.b() / two_a;
        let im = ((-disc).sqrt() / two_a).abs();
        (ComplexRoot::new(re, im), ComplexRoot::new(re, -im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{root_distance, Classification};
    use proptest::prelude::*;

    fn cubic(a: f64, b: f64, c: f64, d: f64) -> Cubic {
        Cubic::new(a, b, c, d).unwrap()
    }

    fn reals(xs: &[f64]) -> Vec<ComplexRoot> {
        xs.iter().map(|&x| ComplexRoot::real(x)).collect()
    }

    #[test]
    fn quadratic_formula() {
        let q = Quadratic::new(1.0, 0.0, -1.0).unwrap();
        assert_eq!(
            solve_quadratic_classic(&q),
            (ComplexRoot::real(1.0), ComplexRoot::real(-1.0))
        );
        let q = Quadratic::new(-2.0, 4.0, -4.0).unwrap();
        assert_eq!(
            solve_quadratic_classic(&q),
            (ComplexRoot::new(1.0, 1.0), ComplexRoot::new(1.0, -1.0))
        );
    }

    #[test]
    fn depress_examples() {
        let (dc, s) = depress(&cubic(1.0, -6.0, 11.0, -6.0));
        assert_eq!((dc.p, dc.q, s), (-1.0, 0.0, 2.0));
        let (dc, s) = depress(&cubic(1.0, 0.0, -15.0, -4.0));
        assert_eq!((dc.p, dc.q), (-15.0, -4.0));
        assert_eq!(s, 0.0);
        let (dc, s) = depress(&cubic(1.0, 3.0, 3.0, 1.0));
        assert_eq!((dc.p, dc.q, s), (0.0, 0.0, -1.0));
    }

    #[test]
    fn solve_examples() {
        let s3 = 3.0_f64.sqrt();
        let set = solve_classic(&cubic(1.0, -6.0, 11.0, -6.0));
        assert_eq!(set.classification, Classification::ThreeRealDistinct);
        assert!(root_distance(&set.roots, &reals(&[1.0, 2.0, 3.0])) < 1e-12);

        let set = solve_classic(&cubic(1.0, 0.0, -15.0, -4.0));
        assert!(root_distance(&set.roots, &reals(&[4.0, -2.0 - s3, -2.0 + s3])) < 1e-12);

        let s2 = 2.0_f64.sqrt();
        let set = solve_classic(&cubic(1.0, -5.0, 9.0, -9.0));
        assert_eq!(set.classification, Classification::OneRealTwoComplex);
        let expected = [
            ComplexRoot::real(3.0),
            ComplexRoot::new(1.0, s2),
            ComplexRoot::new(1.0, -s2),
        ];
        assert!(root_distance(&set.roots, &expected) < 1e-12);
        assert_eq!(set.roots[1], set.roots[2].conj());
    }

    #[test]
    fn repeated_roots() {
        let set = solve_classic(&cubic(1.0, 3.0, 3.0, 1.0));
        assert_eq!(set.classification, Classification::TripleRoot);
        assert_eq!(set.roots, [ComplexRoot::real(-1.0); 3]);
        let set = solve_classic(&cubic(1.0, 0.0, -3.0, -2.0));
        assert_eq!(set.classification, Classification::RealWithDouble);
        assert!(root_distance(&set.roots, &reals(&[2.0, -1.0, -1.0])) < 1e-15);
    }

    #[test]
    fn omega_identities() {
        let ulp4 = 4.0 * f64::EPSILON;
        let cube = OMEGA * OMEGA * OMEGA;
        assert!((cube - 1.0).norm() <= ulp4);
        assert!((1.0 + OMEGA + OMEGA * OMEGA).norm() <= ulp4);
        assert_eq!(OMEGA.im, 3.0_f64.sqrt() / 2.0);
    }

    #[test]
    fn principal_branch() {
        let c = principal_cbrt(Complex64::new(-8.0, 0.0));
        assert!((c - Complex64::new(1.0, 3.0_f64.sqrt())).norm() < 1e-15);
        assert_eq!(
            principal_cbrt(Complex64::new(27.0, 0.0)),
            Complex64::new(3.0, 0.0)
        );
    }

    proptest! {
        #[test]
        fn radicals_satisfy_pairing(p in -1e3..1e3_f64, q in -1e3..1e3_f64) {
            let dc = DepressedCubic { p, q };
            let rad = radicals(&dc);
            prop_assume!(rad.a.norm() > 0.0);
            let prod = rad.a * rad.b;
            prop_assert!((prod + p / 3.0).norm() <= 1e-10 * (p / 3.0).abs().max(f64::MIN_POSITIVE));
        }
    }
}
