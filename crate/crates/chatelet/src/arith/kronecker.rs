//! Kronecker symbol and the real quadratic character of discriminant -4*delta.

use crate::error::{Error, Result};
use crate::arith::primes::{factorize, is_square};
use std::collections::HashMap;
use std::sync::RwLock;

/// Kronecker symbol (a|n), extended to all integers n.
pub fn kronecker(mut a: i128, mut n: i128) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut v = 0u32;
    while n % 2 == 0 {
        n /= 2;
        v += 1;
    }
    let mut k: i32 = if v % 2 == 0 {
        1
    } else {
        match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => return 0,
        }
    };
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    // n odd and positive from here on
    loop {
        a = a.rem_euclid(n);
        if a == 0 {
            return if n > 1 { 0 } else { k };
        }
        let mut w = 0u32;
        while a % 2 == 0 {
            a /= 2;
            w += 1;
        }
        if w % 2 == 1 {
            match n.rem_euclid(8) {
                3 | 5 => k = -k,
                _ => {}
            }
        }
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            k = -k;
        }
        std::mem::swap(&mut a, &mut n);
        if n == 1 {
            return k;
        }
    }
}

/// Check that delta is admissible: squarefree, nonzero, -delta not a square.
pub fn validate_delta(delta: i128) -> Result<()> {
    if delta == 0 || is_square(-delta) {
        return Err(Error::InvalidDelta(delta));
    }
    if !crate::arith::primes::is_squarefree(delta)? {
        return Err(Error::InvalidDelta(delta));
    }
    Ok(())
}

/// chi(n) = (-4*delta | n), the character attached to x^2 + delta*y^2.
pub fn kronecker_chi(delta: i128, n: i128) -> Result<i32> {
    validate_delta(delta)?;
    Ok(kronecker(-4 * delta, n))
}

/// The real quadratic character of discriminant -4*delta, with a small
/// synchronized cache of prime evaluations. Evaluations agree with the
/// cache-free Kronecker symbol.
pub struct QuadraticCharacter {
    delta: i128,
    discriminant: i128,
    cache: RwLock<HashMap<u64, i8>>,
}

impl QuadraticCharacter {
    pub fn new(delta: i128) -> Result<Self> {
        validate_delta(delta)?;
        Ok(QuadraticCharacter {
            delta,
            discriminant: -4 * delta,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn delta(&self) -> i128 {
        self.delta
    }

    pub fn discriminant(&self) -> i128 {
        self.discriminant
    }

    pub fn eval(&self, n: i128) -> i32 {
        kronecker(self.discriminant, n)
    }

    /// chi(p) with memoization; chi(p) = 0 exactly when p | 2*delta.
    pub fn eval_prime(&self, p: u64) -> i32 {
        if let Some(&v) = self.cache.read().unwrap().get(&p) {
            return v as i32;
        }
        let v = self.eval(p as i128);
        self.cache.write().unwrap().insert(p, v as i8);
        v
    }

    /// (1 * chi)(n) = sum over d | n of chi(d); requires n >= 1.
    pub fn one_star_chi(&self, n: u64) -> Result<i64> {
        let fac = factorize(n)?;
        let mut out: i64 = 1;
        for &(p, e) in &fac {
            let cp = self.eval_prime(p) as i64;
            // 1 + cp + cp^2 + ... + cp^e
            let local = match cp {
                1 => e as i64 + 1,
                -1 => {
                    if e % 2 == 0 {
                        1
                    } else {
                        0
                    }
                }
                _ => 1, // cp == 0: only d with no factor p contribute
            };
            out *= local;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes::primes_up_to;

    fn legendre_brute(a: i128, p: u64) -> i32 {
        let am = a.rem_euclid(p as i128);
        if am == 0 {
            return 0;
        }
        for x in 0..p as i128 {
            if (x * x - am).rem_euclid(p as i128) == 0 {
                return 1;
            }
        }
        -1
    }

    #[test]
    fn matches_legendre_on_odd_primes() {
        for p in primes_up_to(200).into_iter().skip(1) {
            for a in -30i128..30 {
                assert_eq!(kronecker(a, p as i128), legendre_brute(a, p), "a={a} p={p}");
            }
        }
    }

    #[test]
    fn spec_values() {
        // delta=5: chi = (-20|.)
        assert_eq!(kronecker_chi(5, 3).unwrap(), 1);
        assert_eq!(kronecker_chi(5, 11).unwrap(), -1);
        assert_eq!(kronecker_chi(7, 1).unwrap(), 1);
        assert_eq!(kronecker_chi(-2, 1).unwrap(), 1);
    }

    #[test]
    fn rejects_bad_delta() {
        assert!(kronecker_chi(0, 3).is_err());
        assert!(kronecker_chi(-1, 3).is_err());
        assert!(kronecker_chi(12, 3).is_err()); // not squarefree
        assert!(kronecker_chi(-4, 3).is_err());
    }

    #[test]
    fn multiplicative_in_n() {
        let chi = QuadraticCharacter::new(5).unwrap();
        for m in 1i128..200 {
            for n in 1i128..200 {
                assert_eq!(chi.eval(m * n), chi.eval(m) * chi.eval(n));
            }
        }
    }

    #[test]
    fn zero_exactly_on_two_delta() {
        let chi = QuadraticCharacter::new(15).unwrap();
        for p in primes_up_to(100) {
            let z = chi.eval_prime(p) == 0;
            assert_eq!(z, 30 % p == 0, "p={p}");
        }
    }
}
