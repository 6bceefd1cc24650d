//! Pole-order diagnostic for the Dirichlet series with Euler factors
//! 1 + chi(p) rho_f(p) / p^s: the partial sums of chi(p) rho_f(p)/p grow
//! like (pole order) * loglog X, and the pole order is the Manin exponent
//! minus 2.

use crate::error::{Error, Result};
use crate::arith::kronecker::QuadraticCharacter;
use crate::arith::primes::primes_up_to;
use crate::counting::ChateletSurface;
use crate::localglobal::rho::roots_mod_p;
use crate::par::{self, ExecMode};

#[derive(Debug, Clone)]
pub struct XiReport {
    pub x: u64,
    /// sum over p <= X of chi(p) rho_f(p) / p (each term exact, summed in f64)
    pub partial_sum: f64,
    /// least-squares slope of the partial sums against loglog, over the grid
    pub slope: f64,
    pub grid: Vec<(u64, f64)>,
}

pub const XI_GUARD: u64 = 10_000_000;

pub fn xi_partial(s: &ChateletSurface, x: u64, mode: ExecMode) -> Result<XiReport> {
    if x > XI_GUARD {
        return Err(Error::GuardExceeded(format!("xi_partial at X={x}")));
    }
    let chi = QuadraticCharacter::new(s.delta())?;
    let primes = primes_up_to(x as usize);
    if primes.is_empty() {
        return Ok(XiReport { x, partial_sum: 0.0, slope: 0.0, grid: Vec::new() });
    }
    let f = s.poly().clone();
    let terms: Vec<f64> = par::collect_over(mode, 0..primes.len(), |i| {
        let p = primes[i];
        let c = chi.eval(p as i128);
        if c == 0 {
            return 0.0;
        }
        let rho = roots_mod_p(&f, p);
        c as f64 * rho as f64 / p as f64
    });
    // checkpoints: geometric grid from ~50 up to X
    let mut checkpoints: Vec<u64> = Vec::new();
    let mut c = 50u64;
    while c < x {
        checkpoints.push(c);
        c = (c as f64 * 2.1) as u64;
    }
    checkpoints.push(x);
    let mut grid: Vec<(u64, f64)> = Vec::new();
    let mut acc = 0.0;
    let mut ci = 0;
    for (i, &p) in primes.iter().enumerate() {
        while ci < checkpoints.len() && p > checkpoints[ci] {
            grid.push((checkpoints[ci], acc));
            ci += 1;
        }
        acc += terms[i];
    }
    while ci < checkpoints.len() {
        grid.push((checkpoints[ci], acc));
        ci += 1;
    }
    // slope of acc against loglog
    let pts: Vec<(f64, f64)> = grid
        .iter()
        .filter(|&&(b, _)| b >= 50)
        .map(|&(b, v)| ((b as f64).ln().ln(), v))
        .collect();
    let slope = if pts.len() >= 2 {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    } else {
        0.0
    };
    Ok(XiReport { x, partial_sum: acc, slope, grid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::IntPoly;

    #[test]
    fn empty_below_first_prime() {
        let s = ChateletSurface::new(1, IntPoly::new(vec![-2, 0, 0, 1])).unwrap();
        let r = xi_partial(&s, 1, ExecMode::Sequential).unwrap();
        assert_eq!(r.partial_sum, 0.0);
    }

    #[test]
    fn pole_orders_small_scale() {
        // z^3 - 2 over delta 1: pole order 0; z^4 + 1: pole order 1
        let s0 = ChateletSurface::new(1, IntPoly::new(vec![-2, 0, 0, 1])).unwrap();
        let s1 = ChateletSurface::new(1, IntPoly::new(vec![1, 0, 0, 0, 1])).unwrap();
        let r0 = xi_partial(&s0, 200_000, ExecMode::Parallel).unwrap();
        let r1 = xi_partial(&s1, 200_000, ExecMode::Parallel).unwrap();
        assert!(r0.slope.abs() < 0.6, "slope={}", r0.slope);
        assert!((r1.slope - 1.0).abs() < 0.6, "slope={}", r1.slope);
    }
}
