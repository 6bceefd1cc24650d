//! The corrected multiplicativity of the Eisenstein coefficients:
//!   eps(n m) = sum over c | gcd(n, m) of mu(c) chi(c) eps(n/c) eps(m/c),
//! and the genus-character sum identity against the principal genus.

use crate::error::Result;
use crate::arith::kronecker::kronecker;
use crate::arith::poly::gcd_i;
use crate::arith::primes::{divisors, factorize, moebius};
use crate::quadring::genus::eisenstein_eps;
use crate::quadring::{FormClassGroup, GenusCharacter, IdealContext};

/// Verify eps_{q1,q2}(nm) = sum_{c | gcd(n,m)} mu(c) chi(c) eps(n/c) eps(m/c).
pub fn eisenstein_mult_check(q1: i128, q2: i128, n: u64, m: u64) -> Result<bool> {
    let chi_mod = q1.checked_mul(q2).expect("q1 q2 fits");
    let lhs = eisenstein_eps(q1, q2, n.checked_mul(m).expect("nm fits"))?;
    let g = gcd_i(n as i128, m as i128) as u64;
    let gfac = factorize(g)?;
    let mut rhs = 0i64;
    for c in divisors(&gfac) {
        let cfac = factorize(c)?;
        let mu = moebius(&cfac);
        if mu == 0 {
            continue;
        }
        let chi_c = kronecker(chi_mod, c as i128) as i64;
        if chi_c == 0 {
            continue;
        }
        rhs += mu * chi_c * eisenstein_eps(q1, q2, n / c)? * eisenstein_eps(q1, q2, m / c)?;
    }
    Ok(lhs == rhs)
}

/// sum over genus pairs of eps_{q1,q2}(n) equals the number of genus
/// characters times the count of ideals of norm n in the principal genus,
/// for n coprime to 2*delta.
pub fn genus_sum_check(group: &FormClassGroup, genus: &[GenusCharacter], n: u64) -> Result<bool> {
    let delta = group.delta();
    if gcd_i(n as i128, 2 * delta) != 1 {
        return Err(crate::error::Error::InvalidInput(format!(
            "genus_sum_check needs gcd(n, 2 delta) = 1, got {n}"
        )));
    }
    let mut eps_sum = 0i64;
    for g in genus {
        eps_sum += g.eisenstein_coefficient(n)?;
    }
    let ctx = IdealContext::new(group);
    let fac = factorize(n)?;
    let mut genus_count = 0i64;
    for ideal in ctx.ideals_of_norm(n, &fac, &[])? {
        let class = ctx.class_of(&ideal)?;
        if group.is_in_principal_genus(class) {
            genus_count += 1;
        }
    }
    Ok(eps_sum == genus.len() as i64 * genus_count)
}
