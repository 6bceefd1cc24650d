//! Chatelet surface data: x^2 + delta*y^2 = f(z) with separable f of degree
//! 3 or 4, its irreducible factorization (content folded into the first
//! factor so the product is exactly f), the degree-4 homogenization, and the
//! height normalization nu.

use crate::error::{Error, Result};
use crate::arith::factorize::factor_poly;
use crate::arith::forms::BinaryForm;
use crate::arith::kronecker::validate_delta;
use crate::arith::poly::IntPoly;

#[derive(Debug, Clone)]
pub struct ChateletSurface {
    delta: i128,
    f: IntPoly,
    /// irreducible integer factors with product exactly f (the signed
    /// content sits in the first factor)
    factors: Vec<IntPoly>,
    /// degree-4 homogenization v^4 f(u/v)
    form: BinaryForm,
    /// per-factor homogenizations at their own degrees
    factor_forms: Vec<BinaryForm>,
    nu: f64,
    nu_sq_exact: Option<i128>,
}

impl ChateletSurface {
    pub fn new(delta: i128, f: IntPoly) -> Result<Self> {
        validate_delta(delta)?;
        if f.is_zero() || (f.degree() != 3 && f.degree() != 4) {
            return Err(Error::InvalidPoly(format!(
                "f must have degree 3 or 4, got degree {} ({f})",
                f.degree()
            )));
        }
        if !f.is_separable()? {
            return Err(Error::InvalidPoly(format!("f = {f} is not separable")));
        }
        let fac = factor_poly(&f)?;
        if fac.factors.iter().any(|&(_, m)| m > 1) {
            return Err(Error::InvalidPoly("repeated factor".into()));
        }
        let mut factors: Vec<IntPoly> = fac.factors.iter().map(|(p, _)| p.clone()).collect();
        factors[0] = factors[0].scale(fac.content)?;
        let form = BinaryForm::homogenize(&f, 4)?;
        let factor_forms = factors
            .iter()
            .map(|p| BinaryForm::homogenize(p, p.degree()))
            .collect::<Result<Vec<_>>>()?;
        let (nu, nu_sq_exact) = if delta > 0 { nu_from_form(&form)? } else { (1.0, Some(1)) };
        Ok(ChateletSurface {
            delta,
            f,
            factors,
            form,
            factor_forms,
            nu,
            nu_sq_exact,
        })
    }

    pub fn delta(&self) -> i128 {
        self.delta
    }

    pub fn poly(&self) -> &IntPoly {
        &self.f
    }

    pub fn factors(&self) -> &[IntPoly] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    pub fn factor_forms(&self) -> &[BinaryForm] {
        &self.factor_forms
    }

    /// nu = max_{[-1,1]^2} |F|^(1/2) for delta > 0, else 1.
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// nu^2 when it is an exact integer (max attained at a corner), which
    /// makes the height cutoffs exact integer comparisons.
    pub fn nu_sq_exact(&self) -> Option<i128> {
        self.nu_sq_exact
    }

    /// Largest t with t * max(u^2, v^2) <= nu * B admissible at (u, v).
    pub fn t_bound(&self, b: u64, maxuv_sq: i128) -> u64 {
        if maxuv_sq == 0 {
            return 0;
        }
        match self.nu_sq_exact {
            Some(n2) => {
                // largest t with t^2 * maxuv_sq^2 <= n2 * B^2
                let rhs = n2 as u128 * (b as u128) * (b as u128);
                let m2 = (maxuv_sq * maxuv_sq) as u128;
                largest_t(rhs, m2)
            }
            None => ((self.nu * b as f64) / maxuv_sq as f64).floor() as u64,
        }
    }

    /// Is n <= nu^2 B^2 (the norm-ball cutoff for delta > 0)?
    pub fn within_norm_ball(&self, n: i128, b: u64) -> bool {
        if n < 0 {
            return false;
        }
        match self.nu_sq_exact {
            Some(n2) => (n as u128) <= n2 as u128 * (b as u128) * (b as u128),
            None => (n as f64) <= self.nu * self.nu * (b as f64) * (b as f64),
        }
    }

    pub fn id(&self) -> String {
        format!("delta={} f={}", self.delta, self.f)
    }
}

/// Largest t with t^2 * m2 <= rhs.
fn largest_t(rhs: u128, m2: u128) -> u64 {
    let mut t = ((rhs / m2) as f64).sqrt() as u128;
    while t > 0 && t * t * m2 > rhs {
        t -= 1;
    }
    while (t + 1) * (t + 1) * m2 <= rhs {
        t += 1;
    }
    t as u64
}

/// Max of |F| over the square [-1,1]^2, attained on the boundary edges by
/// homogeneity. Returns (nu = sqrt(max), Some(max) when the max is the exact
/// integer value at a corner).
fn nu_from_form(form: &BinaryForm) -> Result<(f64, Option<i128>)> {
    let eval = |u: f64, v: f64| -> f64 {
        let mut total = 0.0;
        for (i, &c) in form.coeffs().iter().enumerate() {
            total += c as f64 * u.powi(i as i32) * v.powi((form.degree() - i) as i32);
        }
        total.abs()
    };
    let mut best = 0.0f64;
    for edge in 0..2 {
        // edge 0: (1, s); edge 1: (s, 1); s in [-1, 1]
        let g = |s: f64| if edge == 0 { eval(1.0, s) } else { eval(s, 1.0) };
        let n = 4096;
        for k in 0..=n {
            let s = -1.0 + 2.0 * k as f64 / n as f64;
            if g(s) > best {
                best = g(s);
            }
        }
        for k in 0..n {
            let mut lo = -1.0 + 2.0 * k as f64 / n as f64;
            let mut hi = lo + 2.0 / n as f64;
            for _ in 0..80 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                if g(m1) < g(m2) {
                    lo = m1;
                } else {
                    hi = m2;
                }
            }
            let v = g(0.5 * (lo + hi));
            if v > best {
                best = v;
            }
        }
    }
    let corners = [
        form.eval(1, 1)?.unsigned_abs(),
        form.eval(1, -1)?.unsigned_abs(),
        form.eval(1, 0)?.unsigned_abs(),
        form.eval(0, 1)?.unsigned_abs(),
    ];
    let corner_max = *corners.iter().max().unwrap() as i128;
    let exact = if (corner_max as f64) >= best - 1e-9 {
        best = best.max(corner_max as f64);
        Some(corner_max)
    } else {
        None
    };
    Ok((best.sqrt(), exact))
}
