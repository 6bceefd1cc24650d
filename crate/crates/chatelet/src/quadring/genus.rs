//! Genus characters of the form class group, realized as coprime splittings
//! (q1, q2) of the discriminant -4*delta.
//!
//! Candidates are factorizations disc = q1*q2 with both parts = 0 or 1 mod 4
//! and coprime; each candidate is evaluated on every class (through a
//! represented value coprime to the discriminant) and kept only if its value
//! vector matches one of the order <= 2 characters computed from the group
//! table. The trivial character is carried by (1, disc).

use crate::error::{Error, Result};
use crate::arith::kronecker::kronecker;
use crate::quadring::class_group::FormClassGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusCharacter {
    pub q1: i128,
    pub q2: i128,
    /// value on each class, +-1
    pub values: Vec<i8>,
}

impl GenusCharacter {
    pub fn is_trivial(&self) -> bool {
        self.q1 == 1
    }

    /// epsilon_{q1,q2}(n) = sum over d | n of chi_{q1}(d) chi_{q2}(n/d).
    pub fn eisenstein_coefficient(&self, n: u64) -> Result<i64> {
        eisenstein_eps(self.q1, self.q2, n)
    }
}

/// Divisor-sum Fourier coefficient of the Eisenstein basis element attached
/// to (q1, q2).
pub fn eisenstein_eps(q1: i128, q2: i128, n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::InvalidInput("eisenstein_eps(0)".into()));
    }
    let fac = crate::arith::primes::factorize(n)?;
    let mut total: i64 = 0;
    for d in crate::arith::primes::divisors(&fac) {
        total += (kronecker(q1, d as i128) * kronecker(q2, (n / d) as i128)) as i64;
    }
    Ok(total)
}

/// A small positive value represented by the class, coprime to 2*disc.
fn represented_value(group: &FormClassGroup, class: usize) -> Result<i128> {
    let f = group.forms()[class];
    let bound = 2 * group.disc().abs();
    for r in 1..=60i128 {
        for x in -r..=r {
            for y in [-r, r] {
                let v = f.eval(x, y)?;
                if v > 0 && crate::arith::poly::gcd_i(v, bound) == 1 {
                    return Ok(v);
                }
            }
        }
        for y in -r..=r {
            for x in [-r, r] {
                let v = f.eval(x, y)?;
                if v > 0 && crate::arith::poly::gcd_i(v, bound) == 1 {
                    return Ok(v);
                }
            }
        }
    }
    Err(Error::InvalidInput(format!(
        "no represented value coprime to disc for class {class}"
    )))
}

/// Exactly the characters of C trivial on C^2, each realized by a (q1, q2)
/// splitting; count = [C : C^2].
pub fn genus_characters(group: &FormClassGroup) -> Result<Vec<GenusCharacter>> {
    let disc = group.disc();
    let h = group.class_number();
    let reps: Vec<i128> = (0..h)
        .map(|c| represented_value(group, c))
        .collect::<Result<Vec<_>>>()?;
    // order <= 2 character value vectors, group-theoretically
    let mut targets: Vec<Vec<i8>> = Vec::new();
    for k in group.characters_of_order_le2() {
        let v: Vec<i8> = (0..h)
            .map(|c| group.character_sign(k, c).map(|s| s as i8))
            .collect::<Result<Vec<_>>>()?;
        if !targets.contains(&v) {
            targets.push(v);
        }
    }
    let mut found: Vec<GenusCharacter> = Vec::new();
    let dabs = disc.unsigned_abs();
    let d64 = u64::try_from(dabs).map_err(|_| Error::Overflow("disc"))?;
    let mut divs = crate::arith::primes::divisors(&crate::arith::primes::factorize(d64)?);
    divs.sort_unstable();
    for d in divs {
        for q1 in [d as i128, -(d as i128)] {
            if disc % q1 != 0 {
                continue;
            }
            let q2 = disc / q1;
            let ok_mod = |q: i128| q.rem_euclid(4) <= 1;
            if !ok_mod(q1) || !ok_mod(q2) {
                continue;
            }
            if crate::arith::poly::gcd_i(q1, q2) != 1 && q1 != 1 && q2 != 1 {
                continue;
            }
            let values: Vec<i8> = reps.iter().map(|&m| kronecker(q1, m) as i8).collect();
            // chi_{q1} and chi_{q2} must agree on represented values
            if reps
                .iter()
                .zip(values.iter())
                .any(|(&m, &v)| kronecker(q2, m) as i8 != v)
            {
                continue;
            }
            if !targets.contains(&values) {
                continue;
            }
            if found.iter().any(|g| g.values == values) {
                continue;
            }
            found.push(GenusCharacter { q1, q2, values });
        }
    }
    if found.len() != targets.len() {
        return Err(Error::InvalidInput(format!(
            "genus character realization found {} of {}",
            found.len(),
            targets.len()
        )));
    }
    // trivial first, then by |q1|
    found.sort_by_key(|g| (g.q1 != 1, g.q1.unsigned_abs(), g.q1 < 0));
    Ok(found)
}
