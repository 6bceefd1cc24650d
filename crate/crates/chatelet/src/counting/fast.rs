//! Class-group route to N(B): for each (t, u, v) the fiber count comes from
//! the ideals of norm t^2 F(u,v). The gcd(x, y, t) = 1 condition forces
//! every prime of t to split and to avoid the scalar part of the ideal; for
//! delta > 0 each principal-class ideal carries |U| representations, for
//! delta < 0 each ideal of the right narrow class contributes its exact
//! unit-orbit slice of the ball.

use crate::error::{Error, Result};
use crate::arith::kronecker::QuadraticCharacter;
use crate::arith::pell::pell_fundamental;
use crate::arith::poly::gcd_i;
use crate::arith::primes::{factorize_with_budget, spf_table};
use crate::counting::orbits::orbit_interval_len;
use crate::counting::surface::ChateletSurface;
use crate::counting::CountConfig;
use crate::par;
use crate::quadring::class_group::FormClassGroup;
use crate::quadring::ideals::IdealContext;
use crate::quadring::unit_count;

/// 2 * N(X, B) via factorization and ideal combinatorics. Must agree with
/// `count_brute` wherever both run.
pub fn count_fast(s: &ChateletSurface, b: u64, cfg: &CountConfig) -> Result<u128> {
    if b == 0 {
        return Ok(0);
    }
    let delta = s.delta();
    let group = FormClassGroup::new(delta)?;
    let ctx = IdealContext::new(&group);
    let chi = QuadraticCharacter::new(delta)?;
    let pell = if delta < 0 { Some(pell_fundamental(delta)?) } else { None };
    let m_max = super::brute::max_uv(s, b);
    let t_global = s.t_bound(b, 1);
    // t is admissible iff all its prime factors split; factorizations of
    // admissible t read off the spf table
    let spf = spf_table(t_global as usize);
    // a prime of t kills the fiber unless it splits; the exception is p = 2
    // when delta = 3 mod 4, where 2 divides the conductor of Z[sqrt(-delta)]
    // and invertible ideals of even norm exist with unit scalar part
    let two_singular = delta.rem_euclid(4) == 3;
    let mut t_ok = vec![false; t_global as usize + 1];
    if t_global >= 1 {
        t_ok[1] = true;
    }
    for t in 2..=t_global as usize {
        let p = spf[t] as u64;
        let p_ok = chi.eval_prime(p) == 1 || (p == 2 && two_singular);
        t_ok[t] = t_ok[t / p as usize] && p_ok;
    }
    let h_one = group.class_number() == 1;
    let principal = group.principal();
    let sign_class = group.sign_class();
    let units = if delta > 0 { unit_count(delta) } else { 0 };

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
            if delta > 0 && m0 < 0 {
                continue;
            }
            let m0_abs = m0.unsigned_abs();
            if m0_abs > u64::MAX as u128 {
                return Err(Error::Overflow("form value"));
            }
            let fac_m = factorize_with_budget(m0_abs as u64, cfg.factor_budget)?;
            for t in 1..=tmax {
                if !t_ok[t as usize] {
                    continue;
                }
                let n = (t as i128) * (t as i128) * m0;
                if delta > 0 && !s.within_norm_ball(n, b) {
                    break;
                }
                if delta < 0 && n.unsigned_abs() > (b as u128) * (b as u128) {
                    break;
                }
                // merge factorization of t^2 into fac_m
                let mut fac_n = fac_m.clone();
                let mut t_primes: Vec<u64> = Vec::new();
                let mut tt = t as usize;
                while tt > 1 {
                    let p = spf[tt] as u64;
                    let mut e = 0u32;
                    while tt > 1 && spf[tt] as u64 == p {
                        tt /= p as usize;
                        e += 1;
                    }
                    t_primes.push(p);
                    match fac_n.iter_mut().find(|(q, _)| *q == p) {
                        Some((_, ex)) => *ex += 2 * e,
                        None => fac_n.push((p, 2 * e)),
                    }
                }
                fac_n.sort_unstable();
                let ideals = ctx.ideals_of_norm(n.unsigned_abs() as u64, &fac_n, &t_primes)?;
                let cnt: u64 = if delta > 0 {
                    let principal_ideals = if h_one {
                        ideals.len() as u64
                    } else {
                        let mut c = 0u64;
                        for ideal in &ideals {
                            if ctx.class_of(ideal)? == principal {
                                c += 1;
                            }
                        }
                        c
                    };
                    units * principal_ideals
                } else {
                    let pell = pell.as_ref().unwrap();
                    let want_positive = n > 0;
                    let target = if want_positive { principal } else { sign_class };
                    let mut c = 0u64;
                    for ideal in &ideals {
                        if !h_one && ctx.class_of(ideal)? != target {
                            continue;
                        }
                        if let Some((gs, gt)) = ctx.generator(ideal, want_positive)? {
                            let a = ideal.scalar as i128;
                            c += 2 * orbit_interval_len(delta, a * gs, a * gt, pell, b as i128)?;
                        }
                    }
                    c
                };
                row += 2 * cnt as u128;
            }
        }
        Ok(row)
    })
}
