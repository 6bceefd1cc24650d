//! Dense univariate polynomials with exact `i128` coefficients.
//!
//! Coefficients are stored lowest degree first. The vector is empty for the
//! zero polynomial, otherwise the last entry is nonzero. Arithmetic is
//! checked: anything that would wrap an `i128` returns `Error::Overflow`.

use crate::error::{Error, Result};

pub(crate) fn add_i(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow("add"))
}

pub(crate) fn sub_i(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow("sub"))
}

pub(crate) fn mul_i(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("mul"))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<i128>,
}

impl std::fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IntPoly{:?}", self.coeffs)
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.unsigned_abs();
            match i {
                0 => write!(f, "{a}")?,
                1 => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "z")?;
                }
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "z^{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl IntPoly {
    /// Build from coefficients, constant term first. Trailing zeros stripped.
    pub fn new(coeffs: Vec<i128>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: i128) -> Self {
        IntPoly::new(vec![c])
    }

    /// The monomial c * z^k.
    pub fn monomial(c: i128, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        IntPoly::new(v)
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0 by convention (check `is_zero`).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: i128) -> Result<i128> {
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = add_i(mul_i(acc, x)?, c)?;
        }
        Ok(acc)
    }

    /// Evaluate modulo m (m > 0) without overflow concerns.
    pub fn eval_mod(&self, x: i128, m: i128) -> i128 {
        debug_assert!(m > 0);
        let xm = x.rem_euclid(m);
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * xm + c.rem_euclid(m)).rem_euclid(m);
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as i128)
            .collect();
        IntPoly::new(v)
    }

    pub fn add(&self, other: &IntPoly) -> Result<IntPoly> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(add_i(self.coeff(i), other.coeff(i))?);
        }
        Ok(IntPoly::new(v))
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| -c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> Result<IntPoly> {
        if self.is_zero() || other.is_zero() {
            return Ok(IntPoly::zero());
        }
        let mut v = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = add_i(v[i + j], mul_i(a, b)?)?;
            }
        }
        Ok(IntPoly::new(v))
    }

    pub fn scale(&self, c: i128) -> Result<IntPoly> {
        let mut v = Vec::with_capacity(self.coeffs.len());
        for &a in &self.coeffs {
            v.push(mul_i(a, c)?);
        }
        Ok(IntPoly::new(v))
    }

    /// Exact division over Z. Returns `None` if `other` does not divide
    /// `self` in Z[z].
    pub fn div_exact(&self, other: &IntPoly) -> Result<Option<IntPoly>> {
        if other.is_zero() {
            return Ok(None);
        }
        if self.is_zero() {
            return Ok(Some(IntPoly::zero()));
        }
        if self.degree() < other.degree() {
            return Ok(None);
        }
        let mut rem = self.coeffs.clone();
        let dq = self.degree() - other.degree();
        let mut quot = vec![0i128; dq + 1];
        let lead = other.leading();
        for k in (0..=dq).rev() {
            let top = rem[k + other.degree()];
            if top == 0 {
                continue;
            }
            if top % lead != 0 {
                return Ok(None);
            }
            let q = top / lead;
            quot[k] = q;
            for (j, &b) in other.coeffs.iter().enumerate() {
                rem[k + j] = sub_i(rem[k + j], mul_i(q, b)?)?;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return Ok(None);
        }
        Ok(Some(IntPoly::new(quot)))
    }

    /// gcd of all coefficients, with the sign of the leading coefficient.
    /// Zero polynomial has content 0.
    pub fn content(&self) -> i128 {
        let mut g: i128 = 0;
        for &c in &self.coeffs {
            g = gcd_i(g, c);
        }
        if self.leading() < 0 {
            -g
        } else {
            g
        }
    }

    /// self = content * primitive_part, primitive part has positive leading
    /// coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c == 0 {
            return IntPoly::zero();
        }
        IntPoly::new(self.coeffs.iter().map(|&a| a / c).collect())
    }

    /// Resultant of self and its derivative divided by the leading
    /// coefficient: the discriminant up to the standard sign.
    pub fn discriminant(&self) -> Result<i128> {
        if self.degree() < 1 {
            return Ok(0);
        }
        let n = self.degree() as i128;
        let res = resultant_univ(self, &self.derivative())?;
        let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
        let d = res / self.leading();
        Ok(sign * d)
    }

    /// True iff gcd(f, f') is constant, i.e. no repeated roots.
    pub fn is_separable(&self) -> Result<bool> {
        if self.is_zero() {
            return Ok(false);
        }
        if self.degree() == 0 {
            return Ok(true);
        }
        Ok(resultant_univ(self, &self.derivative())? != 0)
    }
}

pub fn gcd_i(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Resultant of two univariate polynomials over Z, by fraction-free
/// (Bareiss) elimination of the Sylvester matrix.
pub fn resultant_univ(f: &IntPoly, g: &IntPoly) -> Result<i128> {
    if f.is_zero() || g.is_zero() {
        return Ok(0);
    }
    let m = f.degree();
    let n = g.degree();
    if m == 0 {
        return f.leading().checked_pow(n as u32).ok_or(Error::Overflow("pow"));
    }
    if n == 0 {
        return g.leading().checked_pow(m as u32).ok_or(Error::Overflow("pow"));
    }
    let size = m + n;
    let mut mat = vec![vec![0i128; size]; size];
    for row in 0..n {
        for (j, &c) in f.coeffs.iter().rev().enumerate() {
            mat[row][row + j] = c;
        }
    }
    for row in 0..m {
        for (j, &c) in g.coeffs.iter().rev().enumerate() {
            mat[n + row][row + j] = c;
        }
    }
    bareiss_det(mat)
}

/// Fraction-free determinant. Exact over Z; errors on i128 overflow.
pub(crate) fn bareiss_det(mut m: Vec<Vec<i128>>) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| m[r][k] != 0);
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = sub_i(mul_i(m[i][j], m[k][k])?, mul_i(m[i][k], m[k][j])?)?;
                m[i][j] = t / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_div_roundtrip() {
        let f = IntPoly::new(vec![-1, 0, 1]); // z^2 - 1
        let g = IntPoly::new(vec![1, 1]); // z + 1
        let h = f.mul(&g).unwrap();
        assert_eq!(h.coeffs(), &[-1, -1, 1, 1]);
        assert_eq!(h.div_exact(&g).unwrap().unwrap(), f);
        assert_eq!(h.div_exact(&IntPoly::new(vec![2, 1])).unwrap(), None);
    }

    #[test]
    fn content_sign() {
        let f = IntPoly::new(vec![6, 0, -2]);
        assert_eq!(f.content(), -2);
        assert_eq!(f.primitive_part().coeffs(), &[-3, 0, 1]);
    }

    #[test]
    fn discriminant_quadratic() {
        // z^2 + bz + c has discriminant b^2 - 4c
        let f = IntPoly::new(vec![3, 5, 1]);
        assert_eq!(f.discriminant().unwrap(), 25 - 12);
        // z^2 + 1 -> -4
        let g = IntPoly::new(vec![1, 0, 1]);
        assert_eq!(g.discriminant().unwrap(), -4);
    }

    #[test]
    fn separability() {
        let sq = IntPoly::new(vec![1, 2, 1]); // (z+1)^2
        assert!(!sq.is_separable().unwrap());
        let f = IntPoly::new(vec![-2, 0, 0, 1]);
        assert!(f.is_separable().unwrap());
    }

    #[test]
    fn resultant_small() {
        // res(z - 1, z + 1) = f(−1)·? classical: lead(g)^deg f * prod f over roots of g
        let f = IntPoly::new(vec![-1, 1]);
        let g = IntPoly::new(vec![1, 1]);
        assert_eq!(resultant_univ(&f, &g).unwrap(), 2);
    }
}
