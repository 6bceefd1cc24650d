//! Exact evaluation of the counting function
//!
//!   N(X, B) = (1/2) #{((x,y),(u,v),t): x^2 + delta y^2 = t^2 F(u,v),
//!             gcd(x,y,t) = gcd(u,v) = 1, heights <= nu B}
//!
//! by two independent methods: literal enumeration (`count_brute`) and
//! factorization plus class-group combinatorics (`count_fast`). Both return
//! the doubled count 2N, which is always an even integer here since
//! norm-zero fibers are excluded and (x,y) -> (-x,-y) pairs tuples.

pub mod brute;
pub mod fast;
pub mod orbits;
pub mod series;
pub mod surface;

pub use brute::count_brute;
pub use fast::count_fast;
pub use orbits::{orbit_interval_len, unit_orbit_count};
pub use series::{count_series, fit_exponent, CountSeries, ExponentFit, Method, SeriesPoint};
pub use surface::ChateletSurface;

use crate::par::ExecMode;

#[derive(Debug, Clone)]
pub struct CountConfig {
    /// refuse the brute path above this height
    pub brute_ceiling: u64,
    /// Pollard-rho iteration budget per factorization
    pub factor_budget: u64,
    pub mode: ExecMode,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig {
            brute_ceiling: 20_000,
            factor_budget: 1 << 22,
            mode: ExecMode::Parallel,
        }
    }
}
