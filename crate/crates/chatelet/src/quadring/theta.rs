//! Eisenstein/cuspidal split of the principal-ideal norm count: the weight
//! one theta attached to the principal class decomposes over class group
//! characters, Eisenstein part from characters of order <= 2, cusp part from
//! order >= 3.

use crate::error::{Error, Result};
use crate::arith::poly::gcd_i;
use crate::arith::primes::factorize;
use crate::quadring::class_group::FormClassGroup;
use crate::quadring::ideals::IdealContext;
use crate::quadring::reps::principal_count;
use num_rational::Ratio;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaCoeffs {
    pub n: u64,
    pub lambda_e: Ratio<i128>,
    pub lambda_c: Ratio<i128>,
    pub principal_count: u64,
}

/// lambda_E(n) + lambda_C(n) = principal_count(n), exactly, with lambda_E
/// the order <= 2 character average and lambda_C the rest.
pub fn theta_decompose(group: &FormClassGroup, n: u64) -> Result<ThetaCoeffs> {
    let delta = group.delta();
    if gcd_i(n as i128, 2 * delta) != 1 {
        return Err(Error::InvalidInput(format!(
            "theta_decompose needs gcd(n, 2 delta) = 1, got n={n}"
        )));
    }
    let ctx = IdealContext::new(group);
    let fac = factorize(n)?;
    let ideals = ctx.ideals_of_norm(n, &fac, &[])?;
    let h = group.class_number() as i128;
    let mut eis_sum: i128 = 0;
    for ideal in &ideals {
        let class = ctx.class_of(ideal)?;
        for k in group.characters_of_order_le2() {
            eis_sum += group.character_sign(k, class)? as i128;
        }
    }
    let pc = principal_count(group, n)?;
    let lambda_e = Ratio::new(eis_sum, h);
    let lambda_c = Ratio::from_integer(pc as i128) - lambda_e;
    Ok(ThetaCoeffs { n, lambda_e, lambda_c, principal_count: pc })
}
