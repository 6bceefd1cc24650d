//! Factorization of integer polynomials over the rationals.
//!
//! Degrees here are small (production inputs are degree <= 4, the test
//! corpus goes to 6), so the classical toolkit is enough: rational root
//! search for linear factors, then Kronecker's interpolation method for
//! factors of degree 2 and 3. Factors come back primitive with positive
//! leading coefficient, sorted by degree then coefficients; the signed
//! content makes the product exact.

use crate::error::{Error, Result};
use crate::arith::poly::IntPoly;
use crate::arith::primes::{divisors, factorize};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct PolyFactorization {
    /// Signed integer content; product of factors times content equals the input.
    pub content: i128,
    /// (irreducible primitive factor with positive leading coefficient, multiplicity)
    pub factors: Vec<(IntPoly, u32)>,
}

impl PolyFactorization {
    pub fn expand(&self) -> Result<IntPoly> {
        let mut acc = IntPoly::constant(self.content);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f)?;
            }
        }
        Ok(acc)
    }
}

/// Factor f over Q. Errors only on overflow or a blown search budget.
pub fn factor_poly(f: &IntPoly) -> Result<PolyFactorization> {
    if f.is_zero() {
        return Err(Error::InvalidPoly("factor of zero polynomial".into()));
    }
    let content = f.content();
    let mut g = f.primitive_part();
    let mut found: Vec<IntPoly> = Vec::new();
    while g.degree() >= 1 {
        let h = find_irreducible_factor(&g)?;
        g = g.div_exact(&h)?.expect("factor must divide");
        found.push(h.clone());
        // collect full multiplicity right away so order is deterministic
        while let Some(next) = g.div_exact(&h)? {
            found.push(h.clone());
            g = next;
        }
    }
    found.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    for h in found {
        match factors.last_mut() {
            Some((prev, m)) if *prev == h => *m += 1,
            _ => factors.push((h, 1)),
        }
    }
    Ok(PolyFactorization { content, factors })
}

pub fn is_irreducible(f: &IntPoly) -> Result<bool> {
    if f.degree() == 0 {
        return Ok(false);
    }
    let fac = factor_poly(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

/// Some irreducible factor of primitive g with deg >= 1.
fn find_irreducible_factor(g: &IntPoly) -> Result<IntPoly> {
    debug_assert!(g.degree() >= 1);
    if g.degree() == 1 {
        return Ok(normalize(g.clone()));
    }
    if let Some(lin) = rational_root_factor(g)? {
        return Ok(lin);
    }
    // no rational roots: degrees 2 and 3 are now irreducible
    if g.degree() <= 3 {
        return Ok(normalize(g.clone()));
    }
    for d in 2..=g.degree() / 2 {
        if let Some(h) = kronecker_factor(g, d)? {
            return Ok(h);
        }
    }
    Ok(normalize(g.clone()))
}

fn normalize(f: IntPoly) -> IntPoly {
    f.primitive_part()
}

/// Linear factor q*z - p from a rational root p/q, if one exists.
fn rational_root_factor(g: &IntPoly) -> Result<Option<IntPoly>> {
    if g.coeff(0) == 0 {
        return Ok(Some(IntPoly::new(vec![0, 1])));
    }
    let c0 = g.coeff(0).unsigned_abs();
    let cl = g.leading().unsigned_abs();
    if c0 > u64::MAX as u128 || cl > u64::MAX as u128 {
        return Err(Error::Overflow("rational root bound"));
    }
    let ps = divisors(&factorize(c0 as u64)?);
    let qs = divisors(&factorize(cl as u64)?);
    for &q in &qs {
        for &p in &ps {
            if crate::arith::poly::gcd_i(p as i128, q as i128) != 1 {
                continue;
            }
            for sign in [1i128, -1] {
                let pp = sign * p as i128;
                if eval_at_rational_is_zero(g, pp, q as i128) {
                    let lin = IntPoly::new(vec![-pp, q as i128]);
                    return Ok(Some(normalize(lin)));
                }
            }
        }
    }
    Ok(None)
}

/// g(p/q) == 0, computed exactly as sum c_k p^k q^(n-k) with BigInt.
fn eval_at_rational_is_zero(g: &IntPoly, p: i128, q: i128) -> bool {
    let n = g.degree();
    let pb = BigInt::from(p);
    let qb = BigInt::from(q);
    let mut total = BigInt::zero();
    for (k, &c) in g.coeffs().iter().enumerate() {
        total += BigInt::from(c) * pb.pow(k as u32) * qb.pow((n - k) as u32);
    }
    total.is_zero()
}

const KRONECKER_BUDGET: u64 = 4_000_000;

/// Search for a degree-d factor of g via Kronecker interpolation.
/// g must be primitive with no rational roots.
fn kronecker_factor(g: &IntPoly, d: usize) -> Result<Option<IntPoly>> {
    // candidate sample points; g has no integer roots so g(x) != 0
    let pool: Vec<i128> = vec![0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5];
    let mut pts: Vec<(i128, i128)> = pool
        .iter()
        .map(|&x| Ok((x, g.eval(x)?)))
        .collect::<Result<Vec<_>>>()?;
    pts.sort_by_key(|&(_, v)| v.unsigned_abs());
    let pts = &pts[..=d];
    let mut div_lists: Vec<Vec<i128>> = Vec::with_capacity(d + 1);
    let mut combos: u64 = 1;
    for &(_, v) in pts {
        let a = v.unsigned_abs();
        if a > u64::MAX as u128 {
            return Err(Error::Overflow("kronecker sample"));
        }
        let mut ds: Vec<i128> = divisors(&factorize(a as u64)?)
            .into_iter()
            .flat_map(|t| [t as i128, -(t as i128)])
            .collect();
        ds.sort_unstable();
        combos = combos.saturating_mul(ds.len() as u64);
        div_lists.push(ds);
    }
    if combos > KRONECKER_BUDGET {
        return Err(Error::GuardExceeded(format!(
            "kronecker factor search: {combos} candidate tuples"
        )));
    }
    let xs: Vec<BigRational> = pts.iter().map(|&(x, _)| int_rat(x)).collect();
    let mut idx = vec![0usize; d + 1];
    loop {
        let ys: Vec<BigRational> = idx
            .iter()
            .enumerate()
            .map(|(i, &j)| int_rat(div_lists[i][j]))
            .collect();
        if let Some(cand) = interpolate_integer_poly(&xs, &ys) {
            if cand.degree() == d && !cand.is_zero() {
                let cand = normalize(cand);
                if cand.degree() == d {
                    if let Some(_q) = g.div_exact(&cand)? {
                        return Ok(Some(cand));
                    }
                }
            }
        }
        // advance multi-index
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < div_lists[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k > d {
                return Ok(None);
            }
        }
    }
}

fn int_rat(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Lagrange interpolation; Some only if all coefficients are integers.
fn interpolate_integer_poly(xs: &[BigRational], ys: &[BigRational]) -> Option<IntPoly> {
    let n = xs.len();
    // coefficients of the interpolating polynomial, built by Newton's method
    let mut divided = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &divided[i] - &divided[i - 1];
            let den = &xs[i] - &xs[i - level];
            divided[i] = num / den;
        }
    }
    // expand newton form: sum divided[i] * prod_{j<i} (z - x_j)
    let mut coeffs: Vec<BigRational> = vec![BigRational::zero(); n];
    let mut basis: Vec<BigRational> = vec![BigRational::zero(); n];
    basis[0] = BigRational::one();
    let mut basis_len = 1;
    for i in 0..n {
        for (k, b) in basis.iter().enumerate().take(basis_len) {
            coeffs[k] += &divided[i] * b;
        }
        if i + 1 < n {
            // basis *= (z - x_i)
            let mut next: Vec<BigRational> = vec![BigRational::zero(); n];
            for k in 0..basis_len {
                next[k + 1] += &basis[k];
                next[k] -= &basis[k] * &xs[i];
            }
            basis = next;
            basis_len += 1;
        }
    }
    let mut out: Vec<i128> = Vec::with_capacity(n);
    for c in coeffs {
        if !c.denom().is_one() {
            return None;
        }
        let v = c.numer();
        if v.abs() > BigInt::from(i128::MAX) {
            return None;
        }
        out.push(i128::try_from(v.clone()).ok()?);
    }
    Some(IntPoly::new(out))
}
