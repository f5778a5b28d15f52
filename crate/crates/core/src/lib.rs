//! Closed-form solutions of real cubic equations from the value and slope
//! of the cubic at its inflection point.
//!
//! The primary solver ([`fe::solve`]) only ever looks at `z = -b/3a`,
//! `f(z)/a` and `f'(z)/a`. Two independent solvers are provided for
//! cross-checking: the classical depressed-cubic formulas
//! ([`classic::solve_classic`]) and Durand–Kerner iteration
//! ([`oracle::durand_kerner`]).
//!
//! ```
//! use cubic_core::{fe, Cubic, SolveOptions};
//!
//! let f = Cubic::new(1.0, -6.0, 11.0, -6.0).unwrap();
//! let roots = fe::solve(&f, &SolveOptions::default()).unwrap();
//! let re: Vec<f64> = roots.roots.iter().map(|r| r.re).collect();
//! assert!((re[0] - 3.0).abs() < 1e-12 && (re[2] - 1.0).abs() < 1e-12);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classic;
pub mod fe;
pub mod oracle;
pub mod parser;
pub mod poly;
pub mod roots;

pub use fe::{SolveError, SolveOptions};
pub use parser::{parse, ParseError, ParseErrorKind, ParsedPolynomial};
pub use poly::{ComplexRoot, Cubic, EvalPoint, PolyError, Quadratic};
pub use roots::{Classification, RootSet};
