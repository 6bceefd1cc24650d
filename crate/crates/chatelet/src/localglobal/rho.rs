//! Local root and solution counts: rho_f(m) by residue scan, fast distinct
//! root counts mod p via gcd(x^p - x, f), and exact p-adic valuation-class
//! densities for binary forms (the input to the local factors L_p and the
//! constant nabla).

use crate::error::{Error, Result};
use crate::arith::forms::BinaryForm;
use crate::arith::poly::IntPoly;
use num_rational::Ratio;

pub const RHO_SCAN_GUARD: u64 = 1_000_000;

/// #{x mod m: f(x) = 0 mod m} by exhaustive scan.
pub fn rho_poly(f: &IntPoly, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidInput("rho_poly modulus 0".into()));
    }
    if m > RHO_SCAN_GUARD {
        return Err(Error::GuardExceeded(format!("rho_poly scan at m={m}")));
    }
    if m == 1 {
        return Ok(1);
    }
    let mi = m as i128;
    Ok((0..mi).filter(|&x| f.eval_mod(x, mi) == 0).count() as u64)
}

/// Number of distinct roots of f mod p (p prime), via gcd(x^p - x, f).
/// Returns p when f vanishes identically mod p.
pub fn roots_mod_p(f: &IntPoly, p: u64) -> u64 {
    let fp: Vec<u64> = f.coeffs().iter().map(|&c| c.rem_euclid(p as i128) as u64).collect();
    let fp = trim(fp);
    if fp.is_empty() {
        return p;
    }
    if fp.len() == 1 {
        return 0;
    }
    if p < 60 {
        // small p: direct scan is cheaper than the powmod
        let mi = p as i128;
        return (0..mi).filter(|&x| f.eval_mod(x, mi) == 0).count() as u64;
    }
    // g = x^p mod fp, then gcd(g - x, fp)
    let g = powmod_x(&fp, p);
    let mut gx = g;
    // subtract x
    if gx.len() < 2 {
        gx.resize(2, 0);
    }
    gx[1] = (gx[1] + p - 1) % p;
    let gx = trim(gx);
    let d = poly_gcd_mod(fp, gx, p);
    (d.len().max(1) - 1) as u64
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_rem_mod(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    debug_assert!(!b.is_empty());
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while a.len() > db {
        let k = a.len() - 1;
        let c = (a[k] as u128 * lead_inv as u128 % p as u128) as u64;
        if c != 0 {
            for j in 0..=db {
                let idx = k - db + j;
                let sub = (c as u128 * b[j] as u128 % p as u128) as u64;
                a[idx] = (a[idx] + p - sub) % p;
            }
        }
        a.pop();
        a = trim(a);
        if a.is_empty() {
            break;
        }
    }
    a
}

fn poly_gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    a = trim(a);
    b = trim(b);
    while !b.is_empty() {
        let r = poly_rem_mod(a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = (result as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    result
}

/// x^p mod f over F_p by repeated squaring on polynomials.
fn powmod_x(f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut base = poly_rem_mod(vec![0, 1], f, p);
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_rem(&result, &base, f, p);
        }
        base = poly_mul_rem(&base, &base, f, p);
        e >>= 1;
    }
    result
}

fn poly_mul_rem(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    poly_rem_mod(trim(prod), f, p)
}

pub const RHO_FORM_GUARD: u64 = 10_000;

/// Projective count of the spec: #{(u, v) mod d : d_i | F_i(u, v),
/// gcd(u, v, d) = 1} / ~ with (u, v) ~ lambda (u, v), d = prod d_i.
/// Exhaustive scan; d <= 10^4.
pub fn rho_form_vector(forms: &[BinaryForm], ds: &[u64]) -> Result<u64> {
    if forms.len() != ds.len() {
        return Err(Error::InvalidInput("rho_form_vector length mismatch".into()));
    }
    if ds.iter().any(|&d| d == 0) {
        return Err(Error::InvalidInput("zero modulus".into()));
    }
    let d: u64 = ds.iter().try_fold(1u64, |acc, &x| acc.checked_mul(x)).ok_or(
        Error::GuardExceeded("rho_form_vector modulus overflow".into()),
    )?;
    if d > RHO_FORM_GUARD {
        return Err(Error::GuardExceeded(format!("rho_form_vector at d={d}")));
    }
    if d == 1 {
        return Ok(1);
    }
    let di = d as i128;
    let mut count = 0u64;
    for u in 0..di {
        for v in 0..di {
            if crate::arith::poly::gcd_i(crate::arith::poly::gcd_i(u, v), di) != 1 {
                continue;
            }
            let ok = forms
                .iter()
                .zip(ds.iter())
                .all(|(fm, &m)| fm.eval_mod(u, v, m as i128) == 0);
            if ok {
                count += 1;
            }
        }
    }
    // free scaling action of the units
    let phi = euler_phi(d);
    debug_assert_eq!(count % phi, 0);
    Ok(count / phi)
}

pub fn euler_phi(n: u64) -> u64 {
    let mut out = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out -= out / p;
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// Exact density in Z_p of {w : v_p(g_i(w)) >= j_i for all i}.
/// Coefficients are reduced mod p^(max target) as the recursion proceeds, so
/// nothing overflows.
pub fn valuation_density(polys: &[(Vec<i128>, u32)], p: u64) -> Ratio<i128> {
    let live: Vec<(Vec<i128>, u32)> = polys
        .iter()
        .filter(|(_, j)| *j > 0)
        .map(|(c, j)| (c.clone(), *j))
        .collect();
    if live.is_empty() {
        return Ratio::from_integer(1);
    }
    let pi = p as i128;
    let mut total = Ratio::new(0, 1);
    for w0 in 0..pi {
        let mut branch: Vec<(Vec<i128>, u32)> = Vec::new();
        let mut dead = false;
        for (coeffs, j) in &live {
            // g(w0 + p t), coefficients via Taylor shift then p-powers
            let shifted = taylor_shift(coeffs, w0, pi.pow(*j));
            let mut scaled: Vec<i128> = shifted
                .iter()
                .enumerate()
                .map(|(k, &c)| {
                    let pk = pi.pow((k as u32).min(*j));
                    (c * pk).rem_euclid(pi.pow(*j))
                })
                .collect();
            // content valuation up to the target
            let mut e = *j;
            for &c in &scaled {
                if c != 0 {
                    e = e.min(valuation_i(c, pi));
                }
            }
            if e >= *j {
                continue; // condition holds identically on this branch
            }
            if e == 0 {
                dead = true;
                break;
            }
            let pe = pi.pow(e);
            for c in &mut scaled {
                *c /= pe;
            }
            branch.push((scaled, j - e));
        }
        if dead {
            continue;
        }
        total += valuation_density(&branch, p) / Ratio::from_integer(pi);
    }
    total
}

fn valuation_i(mut c: i128, p: i128) -> u32 {
    let mut v = 0;
    while c != 0 && c % p == 0 {
        c /= p;
        v += 1;
    }
    v
}

/// Coefficients of g(x + a) mod m.
fn taylor_shift(coeffs: &[i128], a: i128, m: i128) -> Vec<i128> {
    let n = coeffs.len();
    let mut out = vec![0i128; n];
    // Horner: g(x+a) built from the top coefficient down
    for &c in coeffs.iter().rev() {
        // out = out * (x + a) + c
        for k in (1..n).rev() {
            out[k] = (out[k - 1] + out[k] * a).rem_euclid(m);
        }
        out[0] = (out[0] * a + c).rem_euclid(m);
    }
    out
}

/// The projective-primitive count rho_F((p^{j_i})): classes of (u, v) mod
/// p^(sum j), gcd(u, v, p) = 1, modulo unit scaling, with v_p(F_i) >= j_i.
pub fn rho_form_prime_power(forms: &[BinaryForm], targets: &[u32], p: u64) -> Result<u64> {
    debug_assert_eq!(forms.len(), targets.len());
    let total: u32 = targets.iter().sum();
    if total == 0 {
        return Ok(1);
    }
    let pi = p as i128;
    // branch u unit: w = v/u, polys F_i(1, w)
    let polys1: Vec<(Vec<i128>, u32)> = forms
        .iter()
        .zip(targets.iter())
        .map(|(fm, &j)| (form_poly_u1(fm), j))
        .collect();
    // branch v unit, u = p w
    let polys2: Vec<(Vec<i128>, u32)> = forms
        .iter()
        .zip(targets.iter())
        .map(|(fm, &j)| (form_poly_v1_scaled(fm, pi), j))
        .collect();
    let d1 = valuation_density(&polys1, p);
    let d2 = valuation_density(&polys2, p);
    // M = p^N * d1 + p^(N-1) * d2, N = total
    let pn = Ratio::from_integer(pi.pow(total));
    let m = &pn * &d1 + &pn / Ratio::from_integer(pi) * &d2;
    if !m.is_integer() {
        return Err(Error::InvalidInput("non-integer projective count".into()));
    }
    Ok(*m.numer() as u64)
}

/// Exact density in Z_p^2 of {(u, v): v_p(F_i(u, v)) >= j_i}.
pub fn affine_valuation_density(forms: &[BinaryForm], targets: &[u32], p: u64) -> Ratio<i128> {
    let total: u32 = targets.iter().sum();
    if total == 0 {
        return Ratio::from_integer(1);
    }
    let pi = p as i128;
    let polys1: Vec<(Vec<i128>, u32)> = forms
        .iter()
        .zip(targets.iter())
        .map(|(fm, &j)| (form_poly_u1(fm), j))
        .collect();
    let polys2: Vec<(Vec<i128>, u32)> = forms
        .iter()
        .zip(targets.iter())
        .map(|(fm, &j)| (form_poly_v1_scaled(fm, pi), j))
        .collect();
    let d1 = valuation_density(&polys1, p);
    let d2 = valuation_density(&polys2, p);
    let unit = Ratio::new(pi - 1, pi);
    // u unit; u = pw with v unit; both divisible (recurse with j - deg)
    let reduced: Vec<u32> = forms
        .iter()
        .zip(targets.iter())
        .map(|(fm, &j)| j.saturating_sub(fm.degree() as u32))
        .collect();
    let recur = affine_valuation_density(forms, &reduced, p);
    unit.clone() * d1 + unit * d2 / Ratio::from_integer(pi)
        + recur / Ratio::from_integer(pi * pi)
}

fn form_poly_u1(fm: &BinaryForm) -> Vec<i128> {
    // F(1, w): coefficient of w^k is coeffs[d - k]
    let d = fm.degree();
    (0..=d).map(|k| fm.coeffs()[d - k]).collect()
}

fn form_poly_v1_scaled(fm: &BinaryForm, p: i128) -> Vec<i128> {
    // F(p w, 1): coefficient of w^k is coeffs[k] * p^k
    fm.coeffs()
        .iter()
        .enumerate()
        .map(|(k, &c)| c * p.pow(k as u32))
        .collect()
}
