//! Auxiliary torsors: tuples (alpha_1, ..., alpha_r) of squarefree integers
//! supported on inert primes dividing the pairwise resultants, with square
//! product. Up to the standard reductions these are the only candidates
//! whose everywhere-local solvability decides the leading constant.

use crate::error::{Error, Result};
use crate::arith::forms::resultant;
use crate::arith::kronecker::QuadraticCharacter;
use crate::arith::primes::factorize;
use crate::counting::ChateletSurface;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsorSpec {
    pub delta: i128,
    pub alphas: Vec<i128>,
}

impl TorsorSpec {
    pub fn is_trivial(&self) -> bool {
        self.alphas.iter().all(|&a| a == 1)
    }
}

/// All admissible alpha-tuples: squarefree, supported on primes with
/// chi(p) = -1 dividing prod_{j != i} Res(F_i, F_j), even multiplicity
/// across the tuple (square product). Always includes the all-ones tuple.
pub fn torsor_candidates(s: &ChateletSurface) -> Result<Vec<TorsorSpec>> {
    let r = s.num_factors();
    let delta = s.delta();
    let chi = QuadraticCharacter::new(delta)?;
    if r == 1 {
        return Ok(vec![TorsorSpec { delta, alphas: vec![1] }]);
    }
    // per-index resultant products
    let forms = s.factor_forms();
    let mut res_prod = vec![1i128; r];
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let rij = resultant(&forms[i], &forms[j])?;
            if rij == 0 {
                return Err(Error::InvalidPoly("factors share a root".into()));
            }
            res_prod[i] = res_prod[i]
                .checked_mul(rij)
                .ok_or(Error::Overflow("resultant product"))?;
        }
    }
    // the inert primes that can appear at all
    let mut primes: Vec<u64> = Vec::new();
    for &rp in &res_prod {
        let a = rp.unsigned_abs();
        let a64 = u64::try_from(a).map_err(|_| Error::Overflow("resultant"))?;
        for (p, _) in factorize(a64)? {
            if chi.eval_prime(p) == -1 && !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort_unstable();
    // per prime: subsets S of {i : p | res_prod[i]} with |S| even
    let mut per_prime_choices: Vec<Vec<Vec<usize>>> = Vec::new();
    for &p in &primes {
        let allowed: Vec<usize> = (0..r).filter(|&i| res_prod[i] % (p as i128) == 0).collect();
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        for mask in 0..(1u32 << allowed.len()) {
            if mask.count_ones() % 2 != 0 {
                continue;
            }
            let s: Vec<usize> = allowed
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask >> k & 1 == 1)
                .map(|(_, &i)| i)
                .collect();
            subsets.push(s);
        }
        per_prime_choices.push(subsets);
    }
    let mut out: Vec<TorsorSpec> = Vec::new();
    let mut idx = vec![0usize; primes.len()];
    loop {
        let mut alphas = vec![1i128; r];
        for (k, &p) in primes.iter().enumerate() {
            for &i in &per_prime_choices[k][idx[k]] {
                alphas[i] *= p as i128;
            }
        }
        out.push(TorsorSpec { delta, alphas });
        if out.len() > 4096 {
            return Err(Error::GuardExceeded("torsor candidate explosion".into()));
        }
        let mut k = 0;
        loop {
            if k == primes.len() {
                out.sort_by(|a, b| a.alphas.cmp(&b.alphas));
                out.dedup();
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < per_prime_choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
