//! Ideals of the order Z[sqrt(-delta)] enumerated by norm.
//!
//! An ideal of norm n splits uniquely as a scalar times a primitive ideal:
//! n = a^2 q, and primitive invertible ideals of norm q correspond to
//! residues b mod 2q with b^2 = disc mod 4q such that the attached form
//! (q, b, (b^2 - disc)/(4q)) is primitive. The rational prime p divides the
//! ideal iff p divides the scalar a, which makes gcd conditions against an
//! auxiliary t cheap. Square roots of the discriminant modulo prime powers
//! are cached per prime power; everything downstream is exact.

use crate::error::{Error, Result};
use crate::arith::poly::gcd_i;
use crate::arith::primes::factorize;
use crate::quadring::class_group::FormClassGroup;
use crate::quadring::qform::{cycle_with_transforms, reduce_with_transform, QForm};
use std::collections::HashMap;
use std::sync::RwLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ideal {
    /// scalar part; the ideal is scalar * (primitive of norm q)
    pub scalar: u64,
    pub q: u64,
    /// 0 <= b < 2q, b^2 = disc mod 4q
    pub b: u64,
}

impl Ideal {
    pub fn norm(&self) -> u64 {
        self.scalar * self.scalar * self.q
    }

    pub fn conjugate(&self) -> Ideal {
        let b = if self.b == 0 { 0 } else { 2 * self.q - self.b };
        Ideal { scalar: self.scalar, q: self.q, b }
    }
}

pub struct IdealContext<'g> {
    group: &'g FormClassGroup,
    sqrt_cache: RwLock<HashMap<(u64, u32), Vec<u64>>>,
    class_cache: RwLock<HashMap<(u64, u64), usize>>,
}

impl<'g> IdealContext<'g> {
    pub fn new(group: &'g FormClassGroup) -> Self {
        IdealContext {
            group,
            sqrt_cache: RwLock::new(HashMap::new()),
            class_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &FormClassGroup {
        self.group
    }

    fn sqrts_mod_pe(&self, p: u64, e: u32) -> Result<Vec<u64>> {
        if let Some(v) = self.sqrt_cache.read().unwrap().get(&(p, e)) {
            return Ok(v.clone());
        }
        let v = sqrts_mod_prime_power(self.group.disc(), p, e)?;
        self.sqrt_cache.write().unwrap().insert((p, e), v.clone());
        Ok(v)
    }

    /// All invertible ideals of norm n. `fac` is the factorization of n.
    /// If `coprime_scalar_to` is nonempty, only ideals whose scalar part is
    /// coprime to all listed primes are returned (the gcd(x, y, t) = 1
    /// condition in the counting problem).
    pub fn ideals_of_norm(
        &self,
        n: u64,
        fac: &[(u64, u32)],
        coprime_scalar_to: &[u64],
    ) -> Result<Vec<Ideal>> {
        debug_assert_eq!(fac.iter().map(|&(p, e)| p.checked_pow(e).unwrap()).product::<u64>(), n);
        let mut out = Vec::new();
        // enumerate a with a^2 | n
        let mut a_choices: Vec<u64> = vec![1];
        for &(p, e) in fac {
            let half = e / 2;
            if half == 0 {
                continue;
            }
            let len = a_choices.len();
            let mut pk = 1u64;
            for _ in 0..half {
                pk *= p;
                for i in 0..len {
                    a_choices.push(a_choices[i] * pk);
                }
            }
        }
        for a in a_choices {
            if coprime_scalar_to.iter().any(|&p| a % p == 0) {
                continue;
            }
            let q = n / (a * a);
            for b in self.primitive_b_values(q)? {
                out.push(Ideal { scalar: a, q, b });
            }
        }
        Ok(out)
    }

    /// b values (mod 2q) of primitive invertible ideals of norm q.
    pub fn primitive_b_values(&self, q: u64) -> Result<Vec<u64>> {
        let disc = self.group.disc();
        let fac_4q = merge_factor(&factorize(q)?, 2, 2);
        // solutions of x^2 = disc mod 4q via CRT over prime powers
        let mut sols: Vec<i128> = vec![0];
        let mut modulus: i128 = 1;
        for &(p, e) in &fac_4q {
            let roots = self.sqrts_mod_pe(p, e)?;
            if roots.is_empty() {
                return Ok(Vec::new());
            }
            let pe = (p as i128).pow(e);
            let mut next = Vec::with_capacity(sols.len() * roots.len());
            for &s in &sols {
                for &r in &roots {
                    next.push(crt(s, modulus, r as i128, pe));
                }
            }
            modulus *= pe;
            sols = next;
            if sols.len() > 100_000 {
                return Err(Error::GuardExceeded("too many square roots".into()));
            }
        }
        debug_assert_eq!(modulus, 4 * q as i128);
        let twoq = 2 * q as i128;
        let mut bs: Vec<u64> = Vec::new();
        for x in sols {
            let b = x.rem_euclid(twoq);
            let bu = b as u64;
            if bs.contains(&bu) {
                continue;
            }
            // primitivity of (q, b, c)
            let c = (b * b - disc) / (4 * q as i128);
            debug_assert_eq!((b * b - disc).rem_euclid(4 * q as i128), 0);
            if gcd_i(gcd_i(q as i128, b), c) == 1 {
                bs.push(bu);
            }
        }
        bs.sort_unstable();
        Ok(bs)
    }

    pub fn form_of(&self, ideal: &Ideal) -> QForm {
        let disc = self.group.disc();
        let q = ideal.q as i128;
        let b = ideal.b as i128;
        QForm::new(q, b, (b * b - disc) / (4 * q))
    }

    pub fn class_of(&self, ideal: &Ideal) -> Result<usize> {
        let key = (ideal.q, ideal.b);
        if let Some(&c) = self.class_cache.read().unwrap().get(&key) {
            return Ok(c);
        }
        let c = self.group.class_index(self.form_of(ideal))?;
        let mut w = self.class_cache.write().unwrap();
        if w.len() > 1_000_000 {
            w.clear();
        }
        w.insert(key, c);
        Ok(c)
    }

    /// The distinguished prime ideal above a split or ramified p: the one
    /// with the smaller b parameter.
    pub fn prime_ideal(&self, p: u64) -> Result<Option<Ideal>> {
        let bs = self.primitive_b_values(p)?;
        Ok(bs.first().map(|&b| Ideal { scalar: 1, q: p, b }))
    }

    /// For delta < 0: a generator of the primitive ideal with norm sign
    /// `positive`, as coordinates (s, t) meaning s + t*sqrt(-delta).
    /// None if the ideal's narrow class does not allow that sign.
    pub fn generator(&self, ideal: &Ideal, positive: bool) -> Result<Option<(i128, i128)>> {
        debug_assert!(self.group.delta() < 0);
        let form = self.form_of(ideal);
        let (red, t0) = reduce_with_transform(form)?;
        let target: i128 = if positive { 1 } else { -1 };
        for (g, t1) in cycle_with_transforms(red)? {
            if g.a == target {
                let t = t0.mul(&t1)?;
                let (x, y) = t.e1();
                debug_assert_eq!(form.eval(x, y)?, target);
                return Ok(Some(element_from_form_coords(ideal, x, y)?));
            }
        }
        Ok(None)
    }
}

/// gamma = q*x + y*(b + sqrt(disc))/2 as (s, t) over 1, sqrt(-delta).
fn element_from_form_coords(ideal: &Ideal, x: i128, y: i128) -> Result<(i128, i128)> {
    let q = ideal.q as i128;
    let b = ideal.b as i128;
    debug_assert_eq!(b % 2, 0);
    let s = crate::arith::poly::add_i(
        crate::arith::poly::mul_i(q, x)?,
        crate::arith::poly::mul_i(y, b / 2)?,
    )?;
    Ok((s, y))
}

fn merge_factor(fac: &[(u64, u32)], p: u64, add: u32) -> Vec<(u64, u32)> {
    let mut out = fac.to_vec();
    match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += add,
        None => {
            out.push((p, add));
            out.sort_unstable();
        }
    }
    out
}

/// Chinese remainder: x = a mod m, x = b mod n, gcd(m, n) = 1.
pub(crate) fn crt(a: i128, m: i128, b: i128, n: i128) -> i128 {
    let (g, u, _v) = crate::quadring::class_group::extgcd(m, n);
    debug_assert_eq!(g, 1);
    // x = a + m * u * (b - a) mod mn
    let mn = m * n;
    let diff = (b - a).rem_euclid(mn);
    let t = mul_mod_i128(u.rem_euclid(mn), diff, mn);
    (a + mul_mod_i128(m.rem_euclid(mn), t, mn)).rem_euclid(mn)
}

fn mul_mod_i128(a: i128, b: i128, m: i128) -> i128 {
    // moduli here stay below 2^45, so plain multiplication is safe
    debug_assert!(m > 0 && m < (1i128 << 62));
    (a % m) * (b % m) % m
}

fn pow_u64(p: u64, e: u32) -> u64 {
    p.pow(e)
}

/// All x mod p^e with x^2 = d mod p^e.
pub fn sqrts_mod_prime_power(d: i128, p: u64, e: u32) -> Result<Vec<u64>> {
    let pe = pow_u64(p, e);
    if pe <= 64 {
        let dd = d.rem_euclid(pe as i128) as u64;
        return Ok((0..pe).filter(|&x| (x as u128 * x as u128) % pe as u128 == dd as u128).collect());
    }
    if p == 2 {
        return sqrts_mod_2e(d, e);
    }
    let v = valuation(d, p);
    if v >= e {
        // x must vanish to order ceil(e/2)
        let k = pe / pow_u64(p, e.div_ceil(2));
        let step = pow_u64(p, e.div_ceil(2));
        return Ok((0..k).map(|t| t * step).collect());
    }
    if v % 2 == 1 {
        return Ok(Vec::new());
    }
    let unit = unit_part(d, p, v);
    let f = e - v;
    let roots = odd_unit_sqrts(unit, p, f)?;
    let half = v / 2;
    let ph = pow_u64(p, half);
    let pf = pow_u64(p, f);
    let mut out = Vec::new();
    for r in roots {
        for t in 0..ph {
            out.push((ph as u128 * ((r as u128) + (t as u128) * (pf as u128)) % pe as u128) as u64);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn valuation(d: i128, p: u64) -> u32 {
    let mut v = 0;
    let mut m = d;
    while m != 0 && m % (p as i128) == 0 {
        m /= p as i128;
        v += 1;
    }
    if d == 0 {
        u32::MAX
    } else {
        v
    }
}

fn unit_part(d: i128, p: u64, v: u32) -> i128 {
    d / (p as i128).pow(v)
}

/// Square roots of a unit mod odd p^f: Tonelli-Shanks mod p then Hensel.
fn odd_unit_sqrts(u: i128, p: u64, f: u32) -> Result<Vec<u64>> {
    let um = u.rem_euclid(p as i128) as u64;
    let Some(mut x) = tonelli_shanks(um, p) else {
        return Ok(Vec::new());
    };
    let mut pk: u128 = p as u128;
    let target_mod = (p as u128).pow(f);
    let ubig = |m: u128| (u.rem_euclid(m as i128)) as u128;
    while pk < target_mod {
        let next = (pk * pk).min(target_mod);
        // refine x so that x^2 = u mod next; Newton: x <- x - (x^2-u)/(2x)
        let m = next;
        let xm = x as u128 % m;
        let fx = (xm * xm % m + m - ubig(m) % m) % m;
        let inv2x = mod_inverse((2 * xm) % m, m)
            .ok_or_else(|| Error::InvalidInput("hensel: 2x not invertible".into()))?;
        let delta = fx * inv2x % m;
        x = ((xm + m - delta) % m) as u64;
        pk = next;
    }
    let pf = target_mod as u64;
    let other = pf - x;
    let mut out = vec![x % pf, other % pf];
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn mod_inverse(a: u128, m: u128) -> Option<u128> {
    let (g, x, _) = crate::quadring::class_group::extgcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u128)
}

/// Tonelli-Shanks: square root of a mod odd prime p, smaller root first.
pub fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    let pow = |mut b: u64, mut e: u64| -> u64 {
        let mut r = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = (r as u128 * b as u128 % p as u128) as u64;
            }
            b = (b as u128 * b as u128 % p as u128) as u64;
            e >>= 1;
        }
        r
    };
    if pow(a, (p - 1) / 2) != 1 {
        return None;
    }
    if p % 4 == 3 {
        let r = pow(a, (p + 1) / 4);
        return Some(r.min(p - r));
    }
    // write p-1 = q * 2^s
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    // find a quadratic non-residue deterministically
    let mut z = 2;
    while pow(z, (p - 1) / 2) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow(z, q);
    let mut t = pow(a, q);
    let mut r = pow(a, (q + 1) / 2);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = (tt as u128 * tt as u128 % p as u128) as u64;
            i += 1;
            if i == m {
                return None;
            }
        }
        let mut b = c;
        for _ in 0..m - i - 1 {
            b = (b as u128 * b as u128 % p as u128) as u64;
        }
        m = i;
        c = (b as u128 * b as u128 % p as u128) as u64;
        t = (t as u128 * c as u128 % p as u128) as u64;
        r = (r as u128 * b as u128 % p as u128) as u64;
    }
    Some(r.min(p - r))
}

/// Square roots mod 2^e for e with 2^e > 64 (small cases are brute-forced
/// by the caller).
fn sqrts_mod_2e(d: i128, e: u32) -> Result<Vec<u64>> {
    let m = 1u64 << e;
    let dd = d.rem_euclid(m as i128) as u64;
    if dd == 0 {
        let step = 1u64 << e.div_ceil(2);
        return Ok((0..(m / step)).map(|t| t * step).collect());
    }
    let v = dd.trailing_zeros();
    if v % 2 == 1 {
        return Ok(Vec::new());
    }
    let unit = dd >> v;
    let f = e - v;
    // odd square roots of unit mod 2^f
    let mut roots: Vec<u64> = Vec::new();
    if f == 1 {
        roots.push(1);
    } else if f == 2 {
        if unit % 4 == 1 {
            roots.extend([1, 3]);
        }
    } else {
        if unit % 8 != 1 {
            roots.clear();
        } else {
            // lift from mod 8
            let mut cur: Vec<u64> = vec![1, 3, 5, 7];
            let mut k = 3u32;
            while k < f {
                let next_mod = 1u64 << (k + 1);
                let mut next: Vec<u64> = Vec::new();
                for &r in &cur {
                    for cand in [r, r + (1 << k)] {
                        let c = cand % next_mod;
                        if (c as u128 * c as u128 % next_mod as u128) as u64
                            == unit % next_mod
                            && !next.contains(&c)
                        {
                            next.push(c);
                        }
                    }
                }
                cur = next;
                k += 1;
            }
            roots = cur;
        }
    }
    let half = v / 2;
    let ph = 1u64 << half;
    let pf = 1u64 << f;
    let mut out = Vec::new();
    for r in roots {
        for t in 0..ph {
            out.push((ph as u128 * ((r as u128 + t as u128 * pf as u128) % (m / ph) as u128)
                % m as u128) as u64);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_sqrts(d: i128, m: u64) -> Vec<u64> {
        let dd = d.rem_euclid(m as i128) as u64;
        (0..m).filter(|&x| (x as u128 * x as u128) % m as u128 == dd as u128).collect()
    }

    #[test]
    fn sqrt_mod_prime_powers_match_brute() {
        for d in [-20i128, -4, -8, -92, 8, 12, 20, 0, 5, 45] {
            for (p, e) in [(3u64, 1u32), (3, 2), (3, 3), (5, 2), (7, 2), (2, 3), (2, 5), (2, 7), (11, 2), (13, 1)] {
                let m = p.pow(e);
                let mut got = sqrts_mod_prime_power(d, p, e).unwrap();
                got.sort_unstable();
                assert_eq!(got, brute_sqrts(d, m), "d={d} p={p} e={e}");
            }
        }
    }

    #[test]
    fn tonelli_matches() {
        for p in [5u64, 13, 17, 97, 101, 1009, 65537] {
            for a in 1..50u64 {
                let r = tonelli_shanks(a % p, p);
                let brute: Vec<u64> = (0..p).filter(|&x| x * x % p == a % p).collect();
                match r {
                    Some(x) => assert!(brute.contains(&x), "p={p} a={a}"),
                    None => assert!(brute.is_empty(), "p={p} a={a}"),
                }
            }
        }
    }

    #[test]
    fn ideal_counts_match_divisor_formula() {
        // for gcd(n, 2 delta) = 1, #ideals of norm n = sum chi(d)
        for delta in [1i128, 5, 23, -2, -3] {
            let g = FormClassGroup::new(delta).unwrap();
            let ctx = IdealContext::new(&g);
            let chi = crate::arith::QuadraticCharacter::new(delta).unwrap();
            for n in 1..400u64 {
                if gcd_i(n as i128, 2 * delta) != 1 {
                    continue;
                }
                let fac = factorize(n).unwrap();
                let ideals = ctx.ideals_of_norm(n, &fac, &[]).unwrap();
                let expect = chi.one_star_chi(n).unwrap();
                assert_eq!(ideals.len() as i64, expect, "delta={delta} n={n}");
            }
        }
    }

    #[test]
    fn conductor_two_cases() {
        // delta = 23 (conductor 2 at p = 2): invertible ideals of norm 2: none;
        // of norm 4: only the scalar ideal (2)
        let g = FormClassGroup::new(23).unwrap();
        let ctx = IdealContext::new(&g);
        assert!(ctx.ideals_of_norm(2, &factorize(2).unwrap(), &[]).unwrap().is_empty());
        let of4 = ctx.ideals_of_norm(4, &factorize(4).unwrap(), &[]).unwrap();
        assert_eq!(of4.len(), 1);
        assert_eq!(of4[0].scalar, 2);
        // delta = 3 sanity (conductor 2): norm 4 has (2) and (1 +- sqrt(-3))
        let g3 = FormClassGroup::new(3).unwrap();
        let ctx3 = IdealContext::new(&g3);
        let of4 = ctx3.ideals_of_norm(4, &factorize(4).unwrap(), &[]).unwrap();
        assert_eq!(of4.len(), 3);
    }

    #[test]
    fn split_prime_has_two_conjugate_ideals() {
        let g = FormClassGroup::new(5).unwrap();
        let ctx = IdealContext::new(&g);
        // 3 splits for delta = 5: chi(3) = 1
        let ideals = ctx.ideals_of_norm(3, &factorize(3).unwrap(), &[]).unwrap();
        assert_eq!(ideals.len(), 2);
        assert_eq!(ideals[0].conjugate().b, ideals[1].b);
        // classes are inverse to each other
        let c0 = ctx.class_of(&ideals[0]).unwrap();
        let c1 = ctx.class_of(&ideals[1]).unwrap();
        assert_eq!(g.compose(c0, c1).unwrap(), g.principal());
    }

    #[test]
    fn generators_indefinite() {
        let g = FormClassGroup::new(-2).unwrap();
        let ctx = IdealContext::new(&g);
        // norm 7: 7 = 3^2 - 2*1^2: x^2 - 2y^2 = 7 with alpha = 3 + sqrt2
        let ideals = ctx.ideals_of_norm(7, &factorize(7).unwrap(), &[]).unwrap();
        assert_eq!(ideals.len(), 2);
        for ideal in ideals {
            let gen = ctx.generator(&ideal, true).unwrap().unwrap();
            let (s, t) = gen;
            assert_eq!(s * s - 2 * t * t, 7);
        }
        // negative norm: x^2 - 2y^2 = -7: (1, 2): 1 - 8 = -7
        let ideals = ctx.ideals_of_norm(7, &factorize(7).unwrap(), &[]).unwrap();
        for ideal in ideals {
            let gen = ctx.generator(&ideal, false).unwrap().unwrap();
            let (s, t) = gen;
            assert_eq!(s * s - 2 * t * t, -7);
        }
    }
}
