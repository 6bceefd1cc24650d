//! The local factor of the leading constant at a prime p:
//!
//!   L_p((p^{e_i})) = sum over i_1..i_r >= 0 of
//!       chi(p)^{sum i} rho((p^{e_1+i_1}, ..)) / p^{sum i},
//!
//! where rho((p^{j_i})) counts z mod p^(sum j) with p^{j_i} | f_i(z): the
//! affine local solution counts (so a prime dividing the content of f_i
//! shows up as rho(p) = p, and the factor can vanish - that is exactly the
//! local obstruction). The sum is evaluated level by level in exact
//! rationals until Hensel stabilization makes the tail an exact geometric
//! series, which is then summed in closed form; failing to stabilize within
//! the depth guard is an explicit error.

use crate::error::{Error, Result};
use crate::arith::kronecker::QuadraticCharacter;
use crate::counting::ChateletSurface;
use crate::localglobal::rho::valuation_density;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub const LP_DEPTH: u32 = 12;

/// L_p(c) for the torsor scaling vector c (only the p-parts of c matter).
pub fn local_factor_lp(s: &ChateletSurface, c: &[i128], p: u64) -> Result<BigRational> {
    if c.len() != s.num_factors() {
        return Err(Error::InvalidInput("c vector length mismatch".into()));
    }
    let chi = QuadraticCharacter::new(s.delta())?;
    let chip = chi.eval_prime(p);
    let r = s.num_factors();
    let base: Vec<u32> = c
        .iter()
        .map(|&ci| {
            let mut v = 0u32;
            let mut m = ci.unsigned_abs();
            while m % p as u128 == 0 {
                m /= p as u128;
                v += 1;
            }
            v
        })
        .collect();
    // T(s) = chi^s / p^s * sum_{|i| = s} rho(base + i)
    let mut levels: Vec<BigRational> = Vec::new();
    let pb = BigInt::from(p);
    let pi = p as i128;
    for s_level in 0..=LP_DEPTH {
        let mut msum = BigRational::zero();
        for iv in compositions(r, s_level) {
            let targets: Vec<u32> = base.iter().zip(iv.iter()).map(|(&b, &i)| b + i).collect();
            let total: u32 = targets.iter().sum();
            let polys: Vec<(Vec<i128>, u32)> = s
                .factors()
                .iter()
                .zip(targets.iter())
                .map(|(f, &j)| (f.coeffs().to_vec(), j))
                .collect();
            let dens = valuation_density(&polys, p);
            // rho = p^total * density, an integer
            let m = dens * num_rational::Ratio::from_integer(pi.pow(total));
            debug_assert!(m.is_integer());
            msum += BigRational::new(BigInt::from(*m.numer()), BigInt::from(*m.denom()));
        }
        let mut term = msum / BigRational::from_integer(pb.pow(s_level));
        if chip == -1 && s_level % 2 == 1 {
            term = -term;
        }
        if chip == 0 && s_level > 0 {
            term = BigRational::zero();
        }
        levels.push(term);
    }
    if chip == 0 {
        // only the s = 0 term survives
        return Ok(levels[0].clone());
    }
    // zero tail: once a level is exactly zero, all deeper levels are zero
    // (the valuation conditions are nested)
    if let Some(k) = levels.iter().position(|t| t.is_zero()) {
        return Ok(levels[..k].iter().sum());
    }
    // geometric tail detection on the last three levels
    let n = levels.len();
    let (a, b, c3) = (&levels[n - 3], &levels[n - 2], &levels[n - 1]);
    if a * c3 == b * b {
        let ratio = b / a;
        if ratio.clone().abs() < BigRational::new(BigInt::from(1), BigInt::from(1)) {
            let head: BigRational = levels[..n - 3].iter().sum();
            // tail = a / (1 - ratio) starting at level n-3
            let tail = a / (BigRational::new(BigInt::from(1), BigInt::from(1)) - ratio);
            return Ok(head + tail);
        }
    }
    Err(Error::GuardExceeded(format!(
        "L_p stabilization not reached within depth {LP_DEPTH} at p={p}"
    )))
}

/// All r-tuples of non-negative integers summing to s.
fn compositions(r: usize, s: u32) -> Vec<Vec<u32>> {
    fn rec(r: usize, s: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if r == 1 {
            prefix.push(s);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=s {
            prefix.push(k);
            rec(r - 1, s - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(r.max(1), s, &mut Vec::new(), &mut out);
    out
}
