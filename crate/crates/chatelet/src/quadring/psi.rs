//! The Hecke character tracking the argument of alpha = x + y*sqrt(-delta)
//! in the indefinite case: sgn(N(alpha)) * exp(pi*i*(log|alpha| -
//! log|conj alpha|)/log(eps)). Multiplying alpha by eps shifts the exponent
//! by 2*pi*i, so the value only depends on the unit orbit.

use crate::error::{Error, Result};
use crate::arith::pell::PellSolution;
use num_complex::Complex64;

pub fn psi_argument(delta: i128, x: i128, y: i128, pell: &PellSolution) -> Result<Complex64> {
    if delta >= 0 {
        return Err(Error::InvalidInput("psi_argument needs delta < 0".into()));
    }
    let dd = (-delta) as f64;
    let norm = (x * x + delta * y * y) as f64;
    if norm == 0.0 {
        return Err(Error::InvalidInput("psi_argument of norm zero".into()));
    }
    let root = dd.sqrt();
    let alpha = (x as f64 + y as f64 * root).abs();
    let alpha_bar = (x as f64 - y as f64 * root).abs();
    let sign = if norm > 0.0 { 1.0 } else { -1.0 };
    let theta = std::f64::consts::PI * (alpha.ln() - alpha_bar.ln()) / pell.eps_log;
    Ok(sign * Complex64::from_polar(1.0, theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::pell::pell_fundamental;
    use crate::quadring::reps::unit_mul;

    #[test]
    fn unit_maps_to_one() {
        let pell = pell_fundamental(-2).unwrap();
        let v = psi_argument(-2, pell.x0, pell.y0, &pell).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn sqrt_minus_delta_maps_to_minus_one() {
        let pell = pell_fundamental(-2).unwrap();
        let v = psi_argument(-2, 0, 1, &pell).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn unit_modulus_and_eps_invariance() {
        let pell = pell_fundamental(-5).unwrap();
        for (x, y) in [(1i128, 1i128), (2, 1), (7, 3), (4, -1), (-3, 2)] {
            let v = psi_argument(-5, x, y, &pell).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-12);
            let (xs, ys) = unit_mul(-5, x, y, pell.x0, pell.y0).unwrap();
            let w = psi_argument(-5, xs, ys, &pell).unwrap();
            assert!((v - w).norm() < 1e-9, "eps invariance at ({x},{y})");
        }
    }

    #[test]
    fn multiplicative_on_elements() {
        let pell = pell_fundamental(-2).unwrap();
        let pairs = [(3i128, 1i128), (5, 2), (1, 1), (3, -2), (7, 1)];
        for &(a, b) in &pairs {
            for &(c, d) in &pairs {
                let (e, f) = unit_mul(-2, a, b, c, d).unwrap();
                let lhs = psi_argument(-2, a, b, &pell).unwrap()
                    * psi_argument(-2, c, d, &pell).unwrap();
                let rhs = psi_argument(-2, e, f, &pell).unwrap();
                assert!((lhs - rhs).norm() < 1e-9);
            }
        }
    }
}
