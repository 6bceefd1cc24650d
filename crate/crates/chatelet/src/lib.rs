//! Exact point counting and local-global diagnostics for Chatelet surfaces
//! x^2 + delta*y^2 = f(z) with f separable of degree 3 or 4.
//!
//! The crate is organized around five layers:
//!
//! - [`arith`]: exact integer and polynomial base arithmetic;
//! - [`quadring`]: the form class group of discriminant -4*delta, genus
//!   characters, representation and ideal-norm counts, theta coefficients;
//! - [`counting`]: the height-ball counting function N(B), by literal
//!   enumeration and independently by class-group combinatorics;
//! - [`localglobal`]: local densities, torsor enumeration, solvability at
//!   every place, and the leading-constant vanishing verdict;
//! - [`sievelab`]: desk-scale sieve statistics (Hooley delta functions,
//!   level-of-distribution scans, character sums).
//!
//! Counting kernels are data-parallel over deterministic partitions (rayon
//! behind the `parallel` feature, on by default) and reduce by exact integer
//! sums, so parallel and sequential runs agree bit for bit.

pub mod arith;
pub mod error;
pub mod par;

pub mod quadring;
pub mod counting;
pub mod localglobal;
pub mod sievelab;

pub use error::{Error, Result};
pub use par::ExecMode;
