//! Unit-orbit bookkeeping for the indefinite case: exact membership tests
//! |s + t*sqrt(dd)| <= B via integer comparisons, canonical minimal
//! representatives, and the count of unit translates inside the height box.

use crate::error::{Error, Result};
use crate::arith::pell::PellSolution;
use crate::arith::poly::mul_i;
use crate::quadring::reps::unit_mul;

/// Exact test |s + t*sqrt(dd)| <= b for integers s, t, dd > 0 nonsquare.
pub fn abs_le(s: i128, t: i128, dd: i128, b: i128) -> Result<bool> {
    // square both sides: s^2 + dd t^2 + 2 s t sqrt(dd) <= b^2
    let lhs = mul_i(s, s)?
        .checked_add(mul_i(dd, mul_i(t, t)?)?)
        .ok_or(Error::Overflow("abs_le"))?;
    let a = mul_i(b, b)?.checked_sub(lhs).ok_or(Error::Overflow("abs_le"))?;
    let c = mul_i(2, mul_i(s, t)?)?;
    // condition: c * sqrt(dd) <= a
    if c <= 0 {
        if a >= 0 {
            return Ok(true);
        }
        // both negative: |c| sqrt(dd) >= |a| i.e. c^2 dd >= a^2
        return Ok(mul_i(mul_i(c, c)?, dd)? >= mul_i(a, a)?);
    }
    if a < 0 {
        return Ok(false);
    }
    Ok(mul_i(mul_i(c, c)?, dd)? <= mul_i(a, a)?)
}

/// Is (x, y) the canonical minimal representative of its +-eps^k orbit?
/// Canonical: |alpha| >= |conj alpha| (i.e. x*y >= 0), shifting down by eps
/// leaves the window (the shifted pair has x'y' < 0), and the sign is
/// normalized to x > 0 (or x = 0, y > 0).
pub fn is_canonical_rep(delta: i128, x: i128, y: i128, pell: &PellSolution) -> Result<bool> {
    if x == 0 && y == 0 {
        return Err(Error::InvalidInput("zero element".into()));
    }
    if x < 0 || (x == 0 && y < 0) {
        return Ok(false);
    }
    if x.checked_mul(y).ok_or(Error::Overflow("xy"))? < 0 {
        return Ok(false);
    }
    let (dx, dy) = unit_mul(delta, x, y, pell.x0, -pell.y0)?;
    Ok(dx.checked_mul(dy).ok_or(Error::Overflow("xy"))? < 0)
}

/// Exact number of k with |eps^k alpha| <= B and |eps^-k conj(alpha)| <= B,
/// for alpha = s + t*sqrt(-delta) with nonzero norm. Each valid k carries
/// the two elements +-eps^k alpha.
pub fn orbit_interval_len(
    delta: i128,
    s: i128,
    t: i128,
    pell: &PellSolution,
    b: i128,
) -> Result<u64> {
    let dd = -delta;
    debug_assert!(dd > 0);
    let cond1 = |s: i128, t: i128| abs_le(s, t, dd, b);
    let cond2 = |s: i128, t: i128| abs_le(s, -t, dd, b);
    let up = (pell.x0, pell.y0);
    let down = (pell.x0, -pell.y0);
    let guard_max = 20_000;

    // K1: largest k with cond1 (|eps^k alpha| grows with k)
    let mut k1: i64;
    {
        let (mut cs, mut ct) = (s, t);
        if cond1(cs, ct)? {
            k1 = 0;
            let mut g = 0;
            loop {
                let (ns, nt) = unit_mul(delta, cs, ct, up.0, up.1)?;
                if !cond1(ns, nt)? {
                    break;
                }
                cs = ns;
                ct = nt;
                k1 += 1;
                g += 1;
                if g > guard_max {
                    return Err(Error::GuardExceeded("orbit walk".into()));
                }
            }
        } else {
            k1 = 0;
            let mut g = 0;
            loop {
                let (ns, nt) = unit_mul(delta, cs, ct, down.0, down.1)?;
                cs = ns;
                ct = nt;
                k1 -= 1;
                if cond1(cs, ct)? {
                    break;
                }
                g += 1;
                if g > guard_max {
                    return Err(Error::GuardExceeded("orbit walk".into()));
                }
            }
        }
    }
    // K0: smallest k with cond2 (|eps^-k conj| shrinks as k grows)
    let mut k0: i64;
    {
        let (mut cs, mut ct) = (s, t);
        if cond2(cs, ct)? {
            k0 = 0;
            let mut g = 0;
            loop {
                let (ns, nt) = unit_mul(delta, cs, ct, down.0, down.1)?;
                if !cond2(ns, nt)? {
                    break;
                }
                cs = ns;
                ct = nt;
                k0 -= 1;
                g += 1;
                if g > guard_max {
                    return Err(Error::GuardExceeded("orbit walk".into()));
                }
            }
        } else {
            k0 = 0;
            let mut g = 0;
            loop {
                let (ns, nt) = unit_mul(delta, cs, ct, up.0, up.1)?;
                cs = ns;
                ct = nt;
                k0 += 1;
                if cond2(cs, ct)? {
                    break;
                }
                g += 1;
                if g > guard_max {
                    return Err(Error::GuardExceeded("orbit walk".into()));
                }
            }
        }
    }
    Ok(if k1 >= k0 { (k1 - k0 + 1) as u64 } else { 0 })
}

/// Closed-form unit-orbit count from real absolute values:
/// #{k: eps^k*|alpha| <= B and eps^-k*|conj alpha| <= B}.
pub fn unit_orbit_count(pell: &PellSolution, alpha_abs: f64, alphabar_abs: f64, b: f64) -> Result<u64> {
    if !(alpha_abs > 0.0) || !(alphabar_abs > 0.0) {
        return Err(Error::InvalidInput("unit_orbit_count needs nonzero norms".into()));
    }
    if b <= 0.0 {
        return Ok(0);
    }
    let l = pell.eps_log;
    let k1 = ((b / alpha_abs).ln() / l).floor();
    let k0 = ((alphabar_abs / b).ln() / l).ceil();
    let n = k1 - k0 + 1.0;
    Ok(if n > 0.0 { n as u64 } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::pell::pell_fundamental;

    #[test]
    fn abs_le_matches_float() {
        for dd in [2i128, 3, 5] {
            let r = (dd as f64).sqrt();
            for s in -30i128..=30 {
                for t in -30i128..=30 {
                    for b in [1i128, 5, 20, 43] {
                        let exact = abs_le(s, t, dd, b).unwrap();
                        let fl = (s as f64 + t as f64 * r).abs() <= b as f64 + 1e-9;
                        let fl_strict = (s as f64 + t as f64 * r).abs() <= b as f64 - 1e-9;
                        // floats agree except possibly within the noise band
                        if fl_strict {
                            assert!(exact, "s={s} t={t} dd={dd} b={b}");
                        }
                        if !fl {
                            assert!(!exact, "s={s} t={t} dd={dd} b={b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn spec_orbit_examples() {
        let pell = pell_fundamental(-2).unwrap();
        let eps = pell.eps();
        // |alpha| = |conj| = 1, B = eps: k in {-1, 0, 1}
        assert_eq!(unit_orbit_count(&pell, 1.0, 1.0, eps).unwrap(), 3);
        // |alpha| = B, |conj| = 1: k = 0 is included (boundary), k = 1 is not
        let at_boundary = unit_orbit_count(&pell, 100.0, 1.0, 100.0).unwrap();
        let past_boundary = unit_orbit_count(&pell, 100.0 * 1.001, 1.0, 100.0).unwrap();
        assert_eq!(at_boundary, 3); // k in {-2, -1, 0}
        assert_eq!(past_boundary, 2); // k = 0 drops out
        let no_room = unit_orbit_count(&pell, 100.0 * eps, 1.0, 100.0).unwrap();
        assert_eq!(no_room, 2); // k in {-3, ..., -1}? |eps^k a| <= B needs k <= -1
    }

    #[test]
    fn interval_matches_closed_form_within_one() {
        let delta = -2i128;
        let pell = pell_fundamental(delta).unwrap();
        let r = 2.0f64.sqrt();
        for (s, t) in [(3i128, 1i128), (1, 1), (5, 2), (3, -2), (7, 5), (1, 0)] {
            for b in [3i128, 10, 50, 500] {
                let exact = orbit_interval_len(delta, s, t, &pell, b).unwrap();
                let aa = (s as f64 + t as f64 * r).abs();
                let cc = (s as f64 - t as f64 * r).abs();
                let approx = 2.0 * ((b as f64) / (aa * cc).sqrt()).ln() / pell.eps_log + 1.0;
                let approx = approx.max(0.0);
                // the two floors lose strictly less than 2 between them
                assert!(
                    (exact as f64 - approx).abs() < 2.0,
                    "s={s} t={t} b={b}: exact={exact} approx={approx}"
                );
                // also against the closed-form float count
                let viaf = unit_orbit_count(&pell, aa, cc, b as f64).unwrap();
                assert!((exact as i64 - viaf as i64).abs() <= 1, "s={s} t={t} b={b}");
            }
        }
    }

    #[test]
    fn canonical_rep_unique_in_orbit() {
        let delta = -3i128;
        let pell = pell_fundamental(delta).unwrap();
        let (mut x, mut y) = (1i128, 1i128); // norm 1 - 3 = -2
        let mut canon = 0;
        for _ in 0..7 {
            for (a, b) in [(x, y), (-x, -y)] {
                if is_canonical_rep(delta, a, b, &pell).unwrap() {
                    canon += 1;
                }
            }
            let (nx, ny) = unit_mul(delta, x, y, pell.x0, pell.y0).unwrap();
            x = nx;
            y = ny;
        }
        assert_eq!(canon, 1);
    }
}
