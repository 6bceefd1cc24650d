//! Literal enumeration of N(B): every (t, u, v) in the height box, every
//! (x, y) with x^2 + delta y^2 = t^2 F(u,v) and gcd(x,y,t) = 1, both
//! conjugate norms inside the ball. Doubled count 2N is returned so all
//! identities stay in integers.

use crate::error::{Error, Result};
use crate::arith::pell::pell_fundamental;
use crate::arith::poly::gcd_i;
use crate::arith::primes::isqrt;
use crate::counting::orbits::{is_canonical_rep, orbit_interval_len};
use crate::counting::surface::ChateletSurface;
use crate::counting::CountConfig;
use crate::par;

/// 2 * N(X, B) by literal enumeration.
pub fn count_brute(s: &ChateletSurface, b: u64, cfg: &CountConfig) -> Result<u128> {
    if b == 0 {
        return Ok(0);
    }
    if b > cfg.brute_ceiling {
        return Err(Error::GuardExceeded(format!(
            "brute count at B={b} exceeds ceiling {}",
            cfg.brute_ceiling
        )));
    }
    let m_max = max_uv(s, b);
    let pell = if s.delta() < 0 { Some(pell_fundamental(s.delta())?) } else { None };
    // parallel over v; deterministic integer reduction
    par::try_sum_over(cfg.mode, 0..(m_max + 1) as usize, |vi| {
        let v = vi as i128;
        let mut row: u128 = 0;
        for u in -(m_max as i128)..=(m_max as i128) {
            if v == 0 && u != 1 {
                continue;
            }
            if gcd_i(u, v) != 1 {
                continue;
            }
            let m2 = (u * u).max(v * v);
            let tmax = s.t_bound(b, m2);
            if tmax == 0 {
                continue;
            }
            let m0 = s.form().eval(u, v)?;
            if m0 == 0 {
                continue;
            }
            for t in 1..=tmax {
                let n = (t as i128) * (t as i128) * m0;
                let cnt = if s.delta() > 0 {
                    if n < 0 || !s.within_norm_ball(n, b) {
                        break;
                    }
                    count_xy_definite(s.delta(), n, t)
                } else {
                    if n.unsigned_abs() > (b as u128) * (b as u128) {
                        break;
                    }
                    count_xy_indefinite(s.delta(), n, t, pell.as_ref().unwrap(), b as i128)?
                };
                // (u, v) and (-u, -v) carry the same fiber
                row += 2 * cnt as u128;
            }
        }
        Ok(row)
    })
}

/// #{(x, y): x^2 + delta y^2 = n, gcd(x, y, t) = 1} for delta > 0, n > 0,
/// by a two-pointer scan over y with x descending.
fn count_xy_definite(delta: i128, n: i128, t: u64) -> u64 {
    let mut count = 0u64;
    let mut x = isqrt(n);
    let ymax = isqrt(n / delta);
    let t = t as i128;
    for y in 0..=ymax {
        let target = n - delta * y * y;
        while x * x > target {
            x -= 1;
        }
        if x * x == target && gcd_i(gcd_i(x, y), t) == 1 {
            let cx = if x == 0 { 1 } else { 2 };
            let cy = if y == 0 { 1 } else { 2 };
            count += cx * cy;
        }
    }
    count
}

/// #{(x, y): x^2 + delta y^2 = n, gcd(x,y,t) = 1, |x +- y sqrt(-delta)| <= b}
/// for delta < 0, via canonical orbit representatives expanded exactly.
fn count_xy_indefinite(
    delta: i128,
    n: i128,
    t: u64,
    pell: &crate::arith::pell::PellSolution,
    b: i128,
) -> Result<u64> {
    let dd = -delta;
    let ymax = ((pell.eps() + 1.0) * (n.unsigned_abs() as f64).sqrt()
        / (2.0 * (dd as f64).sqrt()))
    .ceil() as i128
        + 2;
    let t = t as i128;
    let mut total = 0u64;
    for y in -ymax..=ymax {
        let m = n + dd * y * y;
        if m < 0 {
            continue;
        }
        let x = isqrt(m);
        if x * x != m {
            continue;
        }
        let xs: &[i128] = if x == 0 { &[0] } else { &[x, -x] };
        for &xv in xs {
            if xv == 0 && y == 0 {
                continue;
            }
            if gcd_i(gcd_i(xv, y), t) != 1 {
                continue;
            }
            if is_canonical_rep(delta, xv, y, pell)? {
                total += 2 * orbit_interval_len(delta, xv, y, pell, b)?;
            }
        }
    }
    Ok(total)
}

/// Largest m with m^2 <= nu * B (the t = 1 box).
pub(crate) fn max_uv(s: &ChateletSurface, b: u64) -> u64 {
    match s.nu_sq_exact() {
        Some(n2) => {
            // m^4 <= n2 * B^2
            let rhs = n2 as u128 * (b as u128) * (b as u128);
            let mut m = ((rhs as f64).powf(0.25)) as u128;
            while m > 0 && m * m * m * m > rhs {
                m -= 1;
            }
            while (m + 1) * (m + 1) * (m + 1) * (m + 1) <= rhs {
                m += 1;
            }
            m as u64
        }
        None => (s.nu() * b as f64).sqrt().floor() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::IntPoly;

    fn surface(delta: i128, coeffs: &[i128]) -> ChateletSurface {
        ChateletSurface::new(delta, IntPoly::new(coeffs.to_vec())).unwrap()
    }

    #[test]
    fn spec_value_b1() {
        // delta=1, f = z^4+1, B=1: N = 16
        let s = surface(1, &[1, 0, 0, 0, 1]);
        let two_n = count_brute(&s, 1, &CountConfig::default()).unwrap();
        assert_eq!(two_n, 32);
    }

    #[test]
    fn b_zero_is_empty() {
        let s = surface(1, &[1, 0, 0, 0, 1]);
        assert_eq!(count_brute(&s, 0, &CountConfig::default()).unwrap(), 0);
    }

    #[test]
    fn local_obstruction_gives_zero() {
        let s = surface(1, &[3, 0, 0, 0, 3]);
        assert_eq!(count_brute(&s, 50, &CountConfig::default()).unwrap(), 0);
    }

    #[test]
    fn ceiling_guard() {
        let s = surface(1, &[1, 0, 0, 0, 1]);
        let cfg = CountConfig { brute_ceiling: 10, ..CountConfig::default() };
        assert!(count_brute(&s, 11, &cfg).is_err());
    }

    #[test]
    fn monotone_in_b() {
        let s = surface(5, &[1, 0, 0, 0, 1]);
        let cfg = CountConfig::default();
        let mut prev = 0u128;
        for b in [0u64, 1, 2, 5, 10, 20, 40] {
            let n = count_brute(&s, b, &cfg).unwrap();
            assert!(n >= prev);
            prev = n;
        }
    }

    #[test]
    fn indefinite_small() {
        let s = surface(-2, &[1, 0, 0, 0, 1]);
        let cfg = CountConfig::default();
        // hand check B = 1: t = 1, (u,v) in {(1,0) w2, (0,1) w2, (1,1) w2, (-1,1) w2}
        // F = 1, 1, 2, 2; x^2-2y^2 = 1: orbit of 1: |eps^k| <= 1: k=0 only: 2 elements.
        // x^2-2y^2 = 2: (2, 1)? 4-2=2: orbit reps: (2,1) canonical? and bound
        // |2 + sqrt2| = 3.41 > 1: no elements in box. so N(1) = (2+2)*? hmm:
        // (1,0) and (0,1) fibers give 2 elements each, weight 2 per pair: 2N = 8
        let two_n = count_brute(&s, 1, &cfg).unwrap();
        assert_eq!(two_n, 8);
        // sanity at larger B: strictly growing
        let a = count_brute(&s, 10, &cfg).unwrap();
        let b = count_brute(&s, 30, &cfg).unwrap();
        assert!(a > 0 && b > a);
    }
}
