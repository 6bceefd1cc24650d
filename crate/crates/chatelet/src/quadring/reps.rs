//! Representation counts for x^2 + delta*y^2 = n, ideal-norm counts, and
//! principal counts, each with an independent route for cross-checking.

use crate::error::{Error, Result};
use crate::arith::pell::{pell_fundamental, PellSolution};
use crate::arith::poly::{add_i, gcd_i, mul_i};
use crate::arith::primes::{factorize, isqrt};
use crate::quadring::class_group::FormClassGroup;
use crate::quadring::ideals::IdealContext;
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepMode {
    /// all (x, y); delta > 0 only, n >= 1
    All,
    /// all (x, y) with gcd(x, y, t) = 1; delta > 0 only
    Primitive { t: u64 },
    /// minimal representatives per unit orbit; delta < 0, n != 0
    ModuloUnits,
    /// minimal representatives with gcd(x, y, t) = 1; delta < 0
    ModuloUnitsPrimitive { t: u64 },
}

/// Exact representation count by exhaustive search over the forced-finite
/// region.
pub fn representation_count(delta: i128, n: i128, mode: RepMode) -> Result<u64> {
    crate::arith::kronecker::validate_delta(delta)?;
    match mode {
        RepMode::All => count_definite(delta, n, None),
        RepMode::Primitive { t } => count_definite(delta, n, Some(t)),
        RepMode::ModuloUnits => count_mod_units(delta, n, None),
        RepMode::ModuloUnitsPrimitive { t } => count_mod_units(delta, n, Some(t)),
    }
}

fn count_definite(delta: i128, n: i128, t: Option<u64>) -> Result<u64> {
    if delta <= 0 {
        return Err(Error::InvalidInput(
            "representation mode All needs delta > 0 (use ModuloUnits)".into(),
        ));
    }
    if n < 1 {
        return Err(Error::InvalidInput("representation count needs n >= 1".into()));
    }
    let mut count = 0u64;
    let ymax = isqrt(n / delta);
    for y in 0..=ymax {
        let m = n - delta * y * y;
        let x = isqrt(m);
        if x * x != m {
            continue;
        }
        if let Some(t) = t {
            if gcd_i(gcd_i(x, y), t as i128) != 1 {
                continue;
            }
        }
        let cx = if x == 0 { 1 } else { 2 };
        let cy = if y == 0 { 1 } else { 2 };
        count += cx * cy;
    }
    Ok(count)
}

/// Multiply (x, y) by (a, b) in Z[sqrt(-delta)]: (x + y r)(a + b r) with
/// r^2 = -delta.
pub fn unit_mul(delta: i128, x: i128, y: i128, a: i128, b: i128) -> Result<(i128, i128)> {
    let r2 = -delta;
    let s = add_i(mul_i(x, a)?, mul_i(r2, mul_i(y, b)?)?)?;
    let t = add_i(mul_i(x, b)?, mul_i(y, a)?)?;
    Ok((s, t))
}

/// Canonical minimal representative of the orbit of (x, y) under +-eps^k:
/// x >= 0 and 1 <= |alpha/conj| < eps^2, decided with exact integer tests.
pub fn minimal_rep(
    delta: i128,
    mut x: i128,
    mut y: i128,
    pell: &PellSolution,
) -> Result<(i128, i128)> {
    debug_assert!(delta < 0);
    if x == 0 && y == 0 {
        return Err(Error::InvalidInput("minimal_rep of zero".into()));
    }
    let (e1, e2) = (pell.x0, pell.y0);
    let mut guard = 0;
    // |alpha| >= |conj alpha| iff x*y >= 0
    while x.checked_mul(y).ok_or(Error::Overflow("xy"))? < 0 {
        let (nx, ny) = unit_mul(delta, x, y, e1, e2)?;
        x = nx;
        y = ny;
        guard += 1;
        if guard > 10_000 {
            return Err(Error::GuardExceeded("minimal_rep".into()));
        }
    }
    loop {
        let (dx, dy) = unit_mul(delta, x, y, e1, -e2)?;
        if dx.checked_mul(dy).ok_or(Error::Overflow("xy"))? >= 0 {
            x = dx;
            y = dy;
        } else {
            break;
        }
        guard += 1;
        if guard > 10_000 {
            return Err(Error::GuardExceeded("minimal_rep".into()));
        }
    }
    if x < 0 || (x == 0 && y < 0) {
        x = -x;
        y = -y;
    }
    Ok((x, y))
}

fn count_mod_units(delta: i128, n: i128, t: Option<u64>) -> Result<u64> {
    if delta >= 0 {
        return Err(Error::InvalidInput("ModuloUnits needs delta < 0".into()));
    }
    if n == 0 {
        return Err(Error::InvalidInput("ModuloUnits rejects n = 0".into()));
    }
    let pell = pell_fundamental(delta)?;
    let dd = -delta; // positive
    let eps = pell.eps();
    let ymax = ((eps + 1.0) * (n.unsigned_abs() as f64).sqrt() / (2.0 * (dd as f64).sqrt()))
        .ceil() as i128
        + 2;
    let mut set: HashSet<(i128, i128)> = HashSet::new();
    for y in -ymax..=ymax {
        let m = n + dd * y * y;
        if m < 0 {
            continue;
        }
        let x = isqrt(m);
        if x * x != m {
            continue;
        }
        for xs in if x == 0 { vec![0] } else { vec![x, -x] } {
            if xs == 0 && y == 0 {
                continue;
            }
            if let Some(t) = t {
                if gcd_i(gcd_i(xs, y), t as i128) != 1 {
                    continue;
                }
            }
            set.insert(minimal_rep(delta, xs, y, &pell)?);
        }
    }
    Ok(set.len() as u64)
}

/// Number of invertible ideals of norm n, for n coprime to 2*delta:
/// equals sum over d | n of chi(d).
pub fn ideal_norm_count(delta: i128, n: u64) -> Result<u64> {
    let chi = crate::arith::QuadraticCharacter::new(delta)?;
    if gcd_i(n as i128, 2 * delta) != 1 {
        return Err(Error::InvalidInput(format!(
            "ideal_norm_count needs gcd(n, 2 delta) = 1, got n={n}"
        )));
    }
    let v = chi.one_star_chi(n)?;
    debug_assert!(v >= 0);
    Ok(v as u64)
}

/// Number of invertible ideals of norm n whose class is principal, for n
/// coprime to 2*delta. Computed by direct enumeration and cross-checked
/// against the class group character sum; disagreement is an error.
pub fn principal_count(group: &FormClassGroup, n: u64) -> Result<u64> {
    let delta = group.delta();
    if gcd_i(n as i128, 2 * delta) != 1 {
        return Err(Error::InvalidInput(format!(
            "principal_count needs gcd(n, 2 delta) = 1, got n={n}"
        )));
    }
    let ctx = IdealContext::new(group);
    let fac = factorize(n)?;
    let ideals = ctx.ideals_of_norm(n, &fac, &[])?;
    let mut direct = 0u64;
    let mut char_sum = num_complex::Complex64::new(0.0, 0.0);
    for ideal in &ideals {
        let class = ctx.class_of(ideal)?;
        if class == group.principal() {
            direct += 1;
        }
        for k in 0..group.num_characters() {
            char_sum += group.character_value(k, class);
        }
    }
    let via_chars = char_sum.re / group.class_number() as f64;
    if (via_chars - direct as f64).abs() > 1e-6 || char_sum.im.abs() > 1e-6 {
        return Err(Error::InvalidInput(format!(
            "principal_count routes disagree at n={n}: direct={direct} chars={via_chars}"
        )));
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definite_counts() {
        assert_eq!(representation_count(1, 25, RepMode::All).unwrap(), 12);
        assert_eq!(representation_count(5, 6, RepMode::All).unwrap(), 4);
        assert_eq!(representation_count(5, 9, RepMode::All).unwrap(), 6);
        // primitive-to-t: gcd(x, y, t) = 1
        assert_eq!(representation_count(1, 25, RepMode::Primitive { t: 5 }).unwrap(), 8);
    }

    #[test]
    fn unit_orbit_count_simple() {
        // x^2 - 2y^2 = 1: orbit of 1 under units
        assert_eq!(representation_count(-2, 1, RepMode::ModuloUnits).unwrap(), 1);
        // x^2 - 2y^2 = -1: (1, 1): one orbit
        assert_eq!(representation_count(-2, -1, RepMode::ModuloUnits).unwrap(), 1);
        // x^2 - 2y^2 = 7: (3, 1) and (3, -1) are in different orbits? both
        // minimal candidates; brute count orbits:
        let c = representation_count(-2, 7, RepMode::ModuloUnits).unwrap();
        assert_eq!(c, 2);
        // delta = -3: x^2 - 3y^2 = -3: (0, 1): single orbit (times sign class)
        assert_eq!(representation_count(-3, -3, RepMode::ModuloUnits).unwrap(), 1);
        // delta = -3: x^2 - 3y^2 = -1 has no solutions (no norm -1 unit)
        assert_eq!(representation_count(-3, -1, RepMode::ModuloUnits).unwrap(), 0);
    }

    #[test]
    fn minimal_rep_is_orbit_invariant() {
        let pell = pell_fundamental(-2).unwrap();
        let (x, y) = (3i128, 1i128);
        let m0 = minimal_rep(-2, x, y, &pell).unwrap();
        // multiply by eps a few times, same orbit
        let mut cur = (x, y);
        for _ in 0..4 {
            cur = unit_mul(-2, cur.0, cur.1, pell.x0, pell.y0).unwrap();
            assert_eq!(minimal_rep(-2, cur.0, cur.1, &pell).unwrap(), m0);
            assert_eq!(minimal_rep(-2, -cur.0, -cur.1, &pell).unwrap(), m0);
        }
    }

    #[test]
    fn ideal_norm_counts() {
        assert_eq!(ideal_norm_count(5, 3).unwrap(), 2);
        assert_eq!(ideal_norm_count(5, 11).unwrap(), 0);
        assert_eq!(ideal_norm_count(5, 1).unwrap(), 1);
        assert_eq!(ideal_norm_count(23, 1).unwrap(), 1);
        assert!(ideal_norm_count(5, 10).is_err());
    }

    #[test]
    fn principal_counts_delta5() {
        let g = FormClassGroup::new(5).unwrap();
        assert_eq!(principal_count(&g, 3).unwrap(), 0);
        assert_eq!(principal_count(&g, 1).unwrap(), 1);
        // n = 9: ideals (3), p^2, conj(p)^2 are all principal
        assert_eq!(principal_count(&g, 9).unwrap(), 3);
        // n = 21 = 3 * 7: both split into non-principal primes; products
        // pairing p3 with p7-bar etc: 4 ideals, classes multiply to principal
        let c = principal_count(&g, 21).unwrap();
        assert_eq!(c, 4);
    }

    #[test]
    fn representation_sum_equals_unit_times_ideals() {
        // sum over classes of per-class representation data: for delta > 0,
        // total representations r(n) = |U| * #principal ideals; summing the
        // analogous count over all classes gives |U| * #ideals.
        for delta in [1i128, 2, 5, 6] {
            let g = FormClassGroup::new(delta).unwrap();
            let units = if delta == 1 { 4 } else { 2 };
            for n in 2..300u64 {
                if gcd_i(n as i128, 2 * delta) != 1 {
                    continue;
                }
                let r = representation_count(delta, n as i128, RepMode::All).unwrap();
                let pc = principal_count(&g, n).unwrap();
                assert_eq!(r, units * pc, "delta={delta} n={n}");
            }
        }
    }

    #[test]
    fn indefinite_orbits_match_ideals() {
        // delta < 0: orbit count of norm n>0 = #ideals with class principal;
        // norm -n = #ideals with class = sign class
        for delta in [-2i128, -3, -5] {
            let g = FormClassGroup::new(delta).unwrap();
            let ctx = IdealContext::new(&g);
            for n in 2..120u64 {
                if gcd_i(n as i128, 2 * delta) != 1 {
                    continue;
                }
                let fac = factorize(n).unwrap();
                let ideals = ctx.ideals_of_norm(n, &fac, &[]).unwrap();
                let mut pos = 0u64;
                let mut neg = 0u64;
                for ideal in &ideals {
                    let c = ctx.class_of(ideal).unwrap();
                    if c == g.principal() {
                        pos += 1;
                    }
                    if c == g.sign_class() {
                        neg += 1;
                    }
                }
                let rp = representation_count(delta, n as i128, RepMode::ModuloUnits).unwrap();
                let rn = representation_count(delta, -(n as i128), RepMode::ModuloUnits).unwrap();
                assert_eq!(rp, pos, "delta={delta} n={n}");
                assert_eq!(rn, neg, "delta={delta} n=-{n}");
            }
        }
    }
}
