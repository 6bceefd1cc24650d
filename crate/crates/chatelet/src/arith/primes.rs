//! Prime sieves, deterministic primality, and exact integer factorization.
//!
//! Factorization follows a fixed policy: trial division by a small prime
//! table, then Brent's variant of Pollard rho with a deterministic seed.
//! Failure to split within budget is an explicit error, never a wrong
//! answer.

use crate::error::{Error, Result};
use std::sync::atomic::{AtomicU64, Ordering};

static RHO_SEED: AtomicU64 = AtomicU64::new(1);

/// Fix the Pollard-rho seed (wired to the CHATELET_SEED env var by the CLI).
pub fn set_rho_seed(seed: u64) {
    RHO_SEED.store(seed.max(1), Ordering::Relaxed);
}

pub fn rho_seed() -> u64 {
    RHO_SEED.load(Ordering::Relaxed)
}

/// Primes up to `n` inclusive.
pub fn primes_up_to(n: usize) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut is_comp = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !is_comp[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                is_comp[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Smallest-prime-factor table for 0..=n (spf[0] = spf[1] = 0).
pub fn spf_table(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        for &p in &primes {
            let ip = i * p as usize;
            if p > spf[i] || ip > n {
                break;
            }
            spf[ip] = p;
        }
    }
    spf
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for u64, with witness sets tiered by size.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let witnesses: &[u64] = if n < 3_215_031_751 {
        &[2, 3, 5, 7]
    } else if n < 3_474_749_660_383 {
        &[2, 3, 5, 7, 11, 13]
    } else {
        &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'wit: for &a in witnesses {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'wit;
            }
        }
        return false;
    }
    true
}

fn gcd_u(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Brent's cycle-finding rho. Returns a nontrivial factor of composite n.
fn pollard_rho(n: u64, budget: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let seed = rho_seed();
    let mut c = seed % n;
    if c == 0 {
        c = 1;
    }
    for _attempt in 0..24 {
        let mut x = (seed.wrapping_mul(6364136223846793005).wrapping_add(c)) % n;
        let mut y = x;
        let mut d = 1u64;
        let mut count = 0u64;
        let mut saved_x = x;
        let mut r = 1u64;
        'outer: while d == 1 {
            saved_x = x;
            for _ in 0..r {
                x = (mulmod(x, x, n) + c) % n;
            }
            let mut k = 0;
            while k < r && d == 1 {
                let m = 128.min(r - k);
                let mut q = 1u64;
                y = x;
                for _ in 0..m {
                    x = (mulmod(x, x, n) + c) % n;
                    q = mulmod(q, x.abs_diff(saved_x).max(1), n);
                }
                d = gcd_u(q, n);
                k += m;
                count += m;
                if count > budget {
                    break 'outer;
                }
            }
            r *= 2;
        }
        if d == n {
            // backtrack one by one
            let mut z = y;
            d = 1;
            while d == 1 {
                z = (mulmod(z, z, n) + c) % n;
                d = gcd_u(z.abs_diff(saved_x).max(1), n);
            }
        }
        if d != n && d != 1 {
            return Some(d);
        }
        c = (c + 1) % n;
        if c == 0 {
            c = 1;
        }
    }
    None
}

const TRIAL_PRIMES: usize = 512;

fn small_primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| primes_up_to(8192).into_iter().take(TRIAL_PRIMES).collect())
}

/// Exact factorization of n >= 1 into sorted (prime, exponent) pairs.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    factorize_with_budget(n, 1 << 22)
}

pub fn factorize_with_budget(mut n: u64, budget: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::InvalidInput("factorize(0)".into()));
    }
    let mut out: Vec<(u64, u32)> = Vec::new();
    let table = small_primes();
    let trial_max = *table.last().unwrap();
    for &p in table {
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    // below the trial bound squared the cofactor has no small factors left
    if n > 1 && n <= trial_max * trial_max {
        out.push((n, 1));
        out.sort_unstable();
        return Ok(out);
    }
    let mut stack = vec![n];
    let mut rest: Vec<u64> = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            rest.push(m);
            continue;
        }
        // perfect squares settle quickly
        let r = isqrt(m as i128) as u64;
        if r > 1 && r * r == m {
            stack.push(r);
            stack.push(r);
            continue;
        }
        match pollard_rho(m, budget) {
            Some(d) => {
                stack.push(d);
                stack.push(m / d);
            }
            None => return Err(Error::FactorBudget(m as u128)),
        }
    }
    rest.sort_unstable();
    let mut i = 0;
    while i < rest.len() {
        let p = rest[i];
        let mut e = 0;
        while i < rest.len() && rest[i] == p {
            e += 1;
            i += 1;
        }
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, ex)) => *ex += e,
            None => out.push((p, e)),
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// All positive divisors from a factorization, unsorted order deterministic.
pub fn divisors(fac: &[(u64, u32)]) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in fac {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out
}

pub fn moebius(fac: &[(u64, u32)]) -> i64 {
    if fac.iter().any(|&(_, e)| e > 1) {
        0
    } else if fac.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn is_squarefree(n: i128) -> Result<bool> {
    if n == 0 {
        return Ok(false);
    }
    let a = n.unsigned_abs();
    if a > u64::MAX as u128 {
        return Err(Error::Overflow("squarefree check"));
    }
    Ok(factorize(a as u64)?.iter().all(|&(_, e)| e == 1))
}

/// Integer square root of n >= 0.
pub fn isqrt(n: i128) -> i128 {
    if n <= 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x > 0 && x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = isqrt(n);
    r * r == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_basics() {
        assert_eq!(factorize(1).unwrap(), vec![]);
        assert_eq!(factorize(12).unwrap(), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(97).unwrap(), vec![(97, 1)]);
        let n = 1_000_003u64 * 998_117;
        assert_eq!(factorize(n).unwrap(), vec![(998_117, 1), (1_000_003, 1)]);
    }

    #[test]
    fn primality_edges() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(is_prime(18_446_744_073_709_551_557)); // largest u64 prime
    }

    #[test]
    fn isqrt_boundaries() {
        for n in 0..2000i128 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }

    #[test]
    fn divisor_count() {
        let f = factorize(360).unwrap();
        let mut d = divisors(&f);
        d.sort_unstable();
        assert_eq!(d.len(), 24);
        assert_eq!(d[0], 1);
        assert_eq!(d[23], 360);
    }
}
