//! Fundamental solution of x^2 + delta*y^2 = 1 for delta < 0, i.e. the
//! classical Pell equation x^2 - |delta| y^2 = 1, via the continued
//! fraction expansion of sqrt(|delta|).

use crate::error::{Error, Result};
use crate::arith::poly::{add_i, mul_i};
use crate::arith::primes::{is_square, isqrt};

/// Fundamental unit data for the order Z[sqrt(|delta|)], delta < 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PellSolution {
    pub x0: i128,
    pub y0: i128,
    /// log(x0 + y0*sqrt(|delta|)), natural log.
    pub eps_log: f64,
}

impl PellSolution {
    pub fn eps(&self) -> f64 {
        self.eps_log.exp()
    }
}

/// Minimal positive (x0, y0) with x0^2 + delta*y0^2 = 1. Requires delta < 0
/// and -delta nonsquare.
pub fn pell_fundamental(delta: i128) -> Result<PellSolution> {
    if delta >= 0 {
        return Err(Error::InvalidInput(format!(
            "pell_fundamental needs delta < 0, got {delta}"
        )));
    }
    let d = -delta;
    if is_square(d) {
        return Err(Error::InvalidDelta(delta));
    }
    let a0 = isqrt(d);
    // CF state
    let (mut m, mut den, mut a) = (0i128, 1i128, a0);
    // convergents
    let (mut p_prev, mut p) = (1i128, a0);
    let (mut q_prev, mut q) = (0i128, 1i128);
    let mut period = 0usize;
    loop {
        m = den * a - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
        period += 1;
        let p_next = add_i(mul_i(a, p)?, p_prev)?;
        let q_next = add_i(mul_i(a, q)?, q_prev)?;
        p_prev = p;
        p = p_next;
        q_prev = q;
        q = q_next;
        if den == 1 {
            break;
        }
        if period > 100_000 {
            return Err(Error::GuardExceeded("pell period".into()));
        }
    }
    // After a full period, (p_prev, q_prev) solves x^2 - d y^2 = (-1)^period.
    let (mut x, mut y) = (p_prev, q_prev);
    if period % 2 == 1 {
        // negative Pell solution; square it: (x + y sqrt d)^2
        let nx = add_i(mul_i(x, x)?, mul_i(d, mul_i(y, y)?)?)?;
        let ny = mul_i(2, mul_i(x, y)?)?;
        x = nx;
        y = ny;
    }
    debug_assert_eq!(x * x - d * y * y, 1);
    let eps_log = ((x as f64) + (y as f64) * (d as f64).sqrt()).ln();
    Ok(PellSolution { x0: x, y0: y, eps_log })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(d: i128) -> (i128, i128) {
        for y in 1.. {
            let n = 1 + d * y * y;
            let x = isqrt(n);
            if x * x == n {
                return (x, y);
            }
        }
        unreachable!()
    }

    #[test]
    fn small_cases() {
        let s = pell_fundamental(-2).unwrap();
        assert_eq!((s.x0, s.y0), (3, 2));
        let s = pell_fundamental(-3).unwrap();
        assert_eq!((s.x0, s.y0), (2, 1));
        let s = pell_fundamental(-5).unwrap();
        assert_eq!((s.x0, s.y0), (9, 4));
    }

    #[test]
    fn rejects_positive_definite_and_square() {
        assert!(pell_fundamental(5).is_err());
        assert!(pell_fundamental(-4).is_err());
    }

    #[test]
    fn matches_brute_scan_and_minimality() {
        for d in [2i128, 3, 5, 6, 7, 10, 13, 61] {
            let s = pell_fundamental(-d).unwrap();
            assert_eq!(s.x0 * s.x0 - d * s.y0 * s.y0, 1, "d={d}");
            if d < 20 {
                assert_eq!((s.x0, s.y0), brute(d), "d={d}");
                // no smaller positive y works
                for y in 1..s.y0 {
                    assert!(!is_square(1 + d * y * y), "d={d} y={y}");
                }
            }
        }
        // the classical large case
        let s = pell_fundamental(-61).unwrap();
        assert_eq!((s.x0, s.y0), (1_766_319_049, 226_153_980));
    }
}
