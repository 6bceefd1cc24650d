//! Desk-scale verification of the sieve-theoretic estimates: Hooley Delta
//! statistics, level-of-distribution scans, Eisenstein multiplicativity, and
//! cuspidal character sums. Soft bounds become frozen-threshold
//! regressions; exact identities fail hard.

pub mod charsums;
pub mod hooley;
pub mod lod;
pub mod multiplicativity;

pub use charsums::{cusp_partial_sum, grossen_partial_sum, psi_on_ideal, CuspSums, GrossenSums};
pub use hooley::{hooley_average_report, hooley_delta, hooley_delta_twisted, HooleyReport};
pub use lod::{lod_scan, LodParams, LodScanResult};
pub use multiplicativity::{eisenstein_mult_check, genus_sum_check};
