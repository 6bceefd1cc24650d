//! Binary forms F(u, v) with a declared degree, and their resultants.
//!
//! `coeffs[i]` is the coefficient of u^i v^(d-i). The declared degree is part
//! of the data: v^4 * f(u/v) for a cubic f is a quartic form with vanishing
//! u^4 coefficient, and its root at infinity is visible to the resultant.

use crate::error::{Error, Result};
use crate::arith::poly::{add_i, bareiss_det, mul_i, IntPoly};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<i128>,
}

impl BinaryForm {
    /// coeffs[i] multiplies u^i v^(degree - i); length must be degree + 1.
    pub fn new(degree: usize, coeffs: Vec<i128>) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return Err(Error::InvalidInput(format!(
                "binary form of degree {degree} needs {} coefficients",
                degree + 1
            )));
        }
        Ok(BinaryForm { degree, coeffs })
    }

    /// Homogenize a polynomial to a form of the given degree:
    /// F(u, v) = v^degree * f(u/v). Requires degree >= deg(f).
    pub fn homogenize(f: &IntPoly, degree: usize) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::InvalidPoly("cannot homogenize zero".into()));
        }
        if f.degree() > degree {
            return Err(Error::InvalidPoly(format!(
                "degree {} exceeds target {degree}",
                f.degree()
            )));
        }
        let mut coeffs = vec![0i128; degree + 1];
        for (i, &c) in f.coeffs().iter().enumerate() {
            coeffs[i] = c;
        }
        Ok(BinaryForm { degree, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Dehomogenize back: f(z) = F(z, 1).
    pub fn dehomogenize(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn content(&self) -> i128 {
        let mut g = 0i128;
        for &c in &self.coeffs {
            g = crate::arith::poly::gcd_i(g, c);
        }
        g
    }

    pub fn eval(&self, u: i128, v: i128) -> Result<i128> {
        let mut total: i128 = 0;
        let mut vp: i128 = 1; // v^(d-i), built from the u^d term down
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            let mut term = c;
            for _ in 0..i {
                term = mul_i(term, u)?;
            }
            term = mul_i(term, vp)?;
            total = add_i(total, term)?;
            vp = mul_i(vp, v)?;
        }
        Ok(total)
    }

    pub fn eval_mod(&self, u: i128, v: i128, m: i128) -> i128 {
        debug_assert!(m > 0);
        let (um, vm) = (u.rem_euclid(m), v.rem_euclid(m));
        let mut total: i128 = 0;
        let mut vp: i128 = 1;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            let mut term = c.rem_euclid(m);
            for _ in 0..i {
                term = term * um % m;
            }
            term = term * vp % m;
            total = (total + term) % m;
            vp = vp * vm % m;
        }
        total.rem_euclid(m)
    }

    pub fn mul(&self, other: &BinaryForm) -> Result<BinaryForm> {
        let d = self.degree + other.degree;
        let mut coeffs = vec![0i128; d + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = add_i(coeffs[i + j], mul_i(a, b)?)?;
            }
        }
        Ok(BinaryForm { degree: d, coeffs })
    }
}

/// Sylvester resultant of two binary forms at their declared degrees.
/// Zero iff the forms share a projective root (possibly at infinity).
pub fn resultant(f1: &BinaryForm, f2: &BinaryForm) -> Result<i128> {
    if f1.is_zero() || f2.is_zero() {
        return Err(Error::InvalidInput("resultant of zero form".into()));
    }
    let (m, n) = (f1.degree(), f2.degree());
    if m == 0 {
        return f1.coeffs[0].checked_pow(n as u32).ok_or(Error::Overflow("pow"));
    }
    if n == 0 {
        return f2.coeffs[0].checked_pow(m as u32).ok_or(Error::Overflow("pow"));
    }
    let size = m + n;
    let mut mat = vec![vec![0i128; size]; size];
    for row in 0..n {
        for j in 0..=m {
            mat[row][row + j] = f1.coeffs[m - j];
        }
    }
    for row in 0..m {
        for j in 0..=n {
            mat[n + row][row + j] = f2.coeffs[n - j];
        }
    }
    bareiss_det(mat)
}
