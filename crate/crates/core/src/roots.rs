//! Root sets, their classification tags, canonical ordering and the
//! distance used to compare the outputs of different solvers.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::poly::{ComplexRoot, Cubic};

/// Root structure of a real cubic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    ThreeRealDistinct,
    OneRealTwoComplex,
    RealWithDouble,
    TripleRoot,
}

impl Classification {
    pub const ALL: [Classification; 4] = [
        Classification::ThreeRealDistinct,
        Classification::OneRealTwoComplex,
        Classification::RealWithDouble,
        Classification::TripleRoot,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::ThreeRealDistinct => "three_real_distinct",
            Classification::OneRealTwoComplex => "one_real_two_complex",
            Classification::RealWithDouble => "real_with_double",
            Classification::TripleRoot => "triple_root",
        }
    }

    pub fn all_real(&self) -> bool {
        !matches!(self, Classification::OneRealTwoComplex)
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Three roots (with multiplicity), their classification and the normalized
/// residual `|f(x)|` of each root.
///
/// Roots are stored in output order: for all-real classifications by
/// descending value, for [`Classification::OneRealTwoComplex`] the real
/// root first followed by the conjugate pair with the positive imaginary
/// part first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: [ComplexRoot; 3],
    pub classification: Classification,
    pub residuals: [f64; 3],
}

impl RootSet {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0_f64, |m, r| m.max(*r))
    }

    pub fn complex_roots(&self) -> [Complex64; 3] {
        self.roots.map(Complex64::from)
    }
}

/// `|f(x)| / (max|coeff| * max(1, |x|)^3)`.
pub fn normalized_residual(cubic: &Cubic, x: ComplexRoot) -> f64 {
    let scale = cubic.coefficient_scale() * x.norm().max(1.0).powi(3);
    cubic.eval_complex(x.into()).norm() / scale
}

pub fn residuals(cubic: &Cubic, roots: &[ComplexRoot; 3]) -> [f64; 3] {
    roots.map(|x| normalized_residual(cubic, x))
}

/// Puts roots into output order (see [`RootSet`]).
pub fn output_order(
    mut roots: [ComplexRoot; 3],
    classification: Classification,
) -> [ComplexRoot; 3] {
    if classification == Classification::OneRealTwoComplex {
        // real root is the one with the smallest |im|
        let real_idx = (0..3)
            .min_by(|&i, &j| roots[i].im.abs().total_cmp(&roots[j].im.abs()))
            .unwrap_or(0);
        roots.swap(0, real_idx);
        if roots[1].im < roots[2].im {
            roots.swap(1, 2);
        }
        roots
    } else {
        roots.sort_by(|x, y| y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im)));
        roots
    }
}

/// Sorts by real part, then imaginary part, ascending.
pub fn canonical_sort(roots: &mut [ComplexRoot]) {
    roots.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Largest absolute distance between matched roots of two equally sized
/// root lists.
///
/// Roots are matched by the permutation that minimizes the largest
/// distance, so conjugate pairs whose real parts differ in the last bit
/// still line up. Returns `f64::INFINITY` if the lengths differ.
pub fn matched_distance(x: &[ComplexRoot], y: &[ComplexRoot]) -> f64 {
    if x.len() != y.len() {
        return f64::INFINITY;
    }
    permutations(x.len())
        .into_iter()
        .map(|perm| {
            perm.iter()
                .enumerate()
                .map(|(i, &j)| (Complex64::from(x[i]) - Complex64::from(y[j])).norm())
                .fold(0.0_f64, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Largest root magnitude across the given lists, at least 1.
pub fn root_scale<'a>(lists: impl IntoIterator<Item = &'a [ComplexRoot]>) -> f64 {
    lists
        .into_iter()
        .flatten()
        .fold(1.0_f64, |m, r| m.max(r.norm()))
}

/// [`matched_distance`] divided by `max(1, largest root magnitude)`.
pub fn root_distance(x: &[ComplexRoot], y: &[ComplexRoot]) -> f64 {
    matched_distance(x, y) / root_scale([x, y])
}

/// Classifies roots by their geometry: imaginary parts at or below
/// `snap_tol * max(1, max |x|)` are set to zero, then coincident real roots
/// (within `snap_tol` of the same scale) are counted.
///
/// A one-real/two-complex result is re-symmetrized so the pair are exact
/// conjugates.
pub fn classify_roots(
    roots: [ComplexRoot; 3],
    snap_tol: f64,
) -> ([ComplexRoot; 3], Classification) {
    let scale = roots.iter().fold(1.0_f64, |m, r| m.max(r.norm()));
    let mut snapped = roots.map(|r| {
        if r.im.abs() <= snap_tol * scale {
            ComplexRoot::real(r.re)
        } else {
            r
        }
    });
    let n_real = snapped.iter().filter(|r| r.is_real()).count();
    if n_real != 3 {
        // one real root and a pair; if more than one root kept an imaginary
        // part the smaller one is treated as real
        let (real_idx, _) = snapped
            .iter()
            .enumerate()
            .min_by(|(_, x), (_, y)| x.im.abs().total_cmp(&y.im.abs()))
            .expect("three roots");
        snapped[real_idx].im = 0.0;
        let mut pair = [0usize, 1, 2].into_iter().filter(|&i| i != real_idx);
        let (i, j) = (pair.next().unwrap(), pair.next().unwrap());
        let re = 0.5 * (snapped[i].re + snapped[j].re);
        let im = 0.5 * (snapped[i].im.abs() + snapped[j].im.abs());
        snapped[i] = ComplexRoot::new(re, im);
        snapped[j] = ComplexRoot::new(re, -im);
        let cls = Classification::OneRealTwoComplex;
        return (output_order(snapped, cls), cls);
    }
    let cls = {
        let mut re = snapped.map(|r| r.re);
        re.sort_by(f64::total_cmp);
        let close = |x: f64, y: f64| (x - y).abs() <= snap_tol * scale;
        match (close(re[0], re[1]), close(re[1], re[2])) {
            (true, true) => Classification::TripleRoot,
            (true, false) | (false, true) => Classification::RealWithDouble,
            (false, false) => Classification::ThreeRealDistinct,
        }
    };
    (output_order(snapped, cls), cls)
}
