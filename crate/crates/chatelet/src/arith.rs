//! Exact base arithmetic: primes and factorization, Kronecker symbols,
//! polynomial factorization over Q, resultants of binary forms, Pell
//! fundamental solutions, and delta-part splits.

pub mod factorize;
pub mod forms;
pub mod kronecker;
pub mod pell;
pub mod poly;
pub mod primes;
pub mod subfield;

pub use factorize::{factor_poly, is_irreducible, PolyFactorization};
pub use forms::{resultant, BinaryForm};
pub use kronecker::{kronecker, kronecker_chi, validate_delta, QuadraticCharacter};
pub use pell::{pell_fundamental, PellSolution};
pub use poly::IntPoly;
pub use subfield::contains_sqrt_minus_delta;

use crate::error::Result;

/// Split n into its delta-part and the complementary coprime part:
/// p_delta(n) collects the full prime powers of n at primes dividing delta.
pub fn delta_part_split(delta: i128, n: u64) -> Result<(u64, u64)> {
    if n == 0 {
        return Err(crate::error::Error::InvalidInput("delta_part_split(0)".into()));
    }
    let d = delta.unsigned_abs();
    let d64 = u64::try_from(d).map_err(|_| crate::error::Error::Overflow("delta"))?;
    let mut part: u64 = 1;
    let mut rest = n;
    for (p, _) in primes::factorize(d64)? {
        while rest % p == 0 {
            rest /= p;
            part *= p;
        }
    }
    Ok((part, rest))
}

/// Chebotarev-style compatibility probe: if sqrt(-delta) lies in Q[z]/(f),
/// then for every unramified prime p with chi(p) = -1 the factorization of
/// f mod p must have only even-degree irreducible factors. For degrees up to
/// 4 that is equivalent to "no roots mod p" (and impossible in odd degree).
pub fn chebotarev_probe_compatible(f: &IntPoly, p: u64) -> bool {
    match f.degree() {
        1 | 3 => false,
        2 | 4 => {
            let m = p as i128;
            (0..m).all(|x| f.eval_mod(x, m) != 0)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_part_examples() {
        assert_eq!(delta_part_split(5, 50).unwrap(), (25, 2));
        assert_eq!(delta_part_split(5, 7).unwrap(), (1, 7));
        assert_eq!(delta_part_split(6, 12).unwrap(), (12, 1));
        assert_eq!(delta_part_split(-6, 12).unwrap(), (12, 1));
    }

    #[test]
    fn probe_agrees_with_subfield_test() {
        // pairs (f, delta, expected contains)
        let cases: Vec<(Vec<i128>, i128)> = vec![
            (vec![1, 0, 1], 1),
            (vec![1, 0, 0, 0, 1], 1),
            (vec![1, 0, 0, 0, 1], 2),
            (vec![1, 0, -1, 0, 1], 3),
            (vec![-2, 0, 1], -2),
        ];
        for (coeffs, delta) in cases {
            let f = IntPoly::new(coeffs);
            assert!(contains_sqrt_minus_delta(&f, delta).unwrap());
            let chi = QuadraticCharacter::new(delta).unwrap();
            let disc = f.discriminant().unwrap();
            for p in primes::primes_up_to(500) {
                if chi.eval_prime(p) != -1 {
                    continue;
                }
                if (2 * delta * disc * f.leading()).rem_euclid(p as i128) == 0 {
                    continue;
                }
                assert!(
                    chebotarev_probe_compatible(&f, p),
                    "probe failed at p={p} for {:?} delta={delta}",
                    f
                );
            }
        }
    }
}
