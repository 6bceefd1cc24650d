//! Binary quadratic forms (a, b, c) of discriminant b^2 - 4ac, with
//! reduction for both definite (disc < 0) and indefinite (disc > 0)
//! forms, reduction cycles, and transform tracking for extracting
//! representations.

use crate::error::{Error, Result};
use crate::arith::poly::{add_i, mul_i};
use crate::arith::primes::isqrt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QForm {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

/// Unimodular substitution (u, v) -> (p u + q v, r u + s v).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transform {
    pub p: i128,
    pub q: i128,
    pub r: i128,
    pub s: i128,
}

impl Transform {
    pub fn identity() -> Self {
        Transform { p: 1, q: 0, r: 0, s: 1 }
    }

    pub fn mul(&self, o: &Transform) -> Result<Transform> {
        Ok(Transform {
            p: add_i(mul_i(self.p, o.p)?, mul_i(self.q, o.r)?)?,
            q: add_i(mul_i(self.p, o.q)?, mul_i(self.q, o.s)?)?,
            r: add_i(mul_i(self.r, o.p)?, mul_i(self.s, o.r)?)?,
            s: add_i(mul_i(self.r, o.q)?, mul_i(self.s, o.s)?)?,
        })
    }

    /// Image of the first basis vector.
    pub fn e1(&self) -> (i128, i128) {
        (self.p, self.r)
    }
}

impl QForm {
    pub fn new(a: i128, b: i128, c: i128) -> Self {
        QForm { a, b, c }
    }

    pub fn disc(&self) -> i128 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        use crate::arith::poly::gcd_i;
        gcd_i(gcd_i(self.a, self.b), self.c) == 1
    }

    pub fn eval(&self, x: i128, y: i128) -> Result<i128> {
        let t1 = mul_i(mul_i(self.a, x)?, x)?;
        let t2 = mul_i(mul_i(self.b, x)?, y)?;
        let t3 = mul_i(mul_i(self.c, y)?, y)?;
        add_i(add_i(t1, t2)?, t3)
    }

    /// Apply substitution: g(u, v) = f(pu + qv, ru + sv).
    pub fn apply(&self, t: &Transform) -> Result<QForm> {
        let a2 = self.eval(t.p, t.r)?;
        let c2 = self.eval(t.q, t.s)?;
        // b' = 2a p q + b (p s + q r) + 2 c r s
        let b2 = add_i(
            add_i(
                mul_i(2, mul_i(self.a, mul_i(t.p, t.q)?)?)?,
                mul_i(self.b, add_i(mul_i(t.p, t.s)?, mul_i(t.q, t.r)?)?)?,
            )?,
            mul_i(2, mul_i(self.c, mul_i(t.r, t.s)?)?)?,
        )?;
        Ok(QForm::new(a2, b2, c2))
    }

    /// Is this form reduced? Definite: |b| <= a <= c with b >= 0 when
    /// |b| = a or a = c (positive definite representative). Indefinite:
    /// 0 < b < sqrt(D) and sqrt(D) - 2|a| < b < sqrt(D) + 2|a|, in exact
    /// integer terms via floor(sqrt(D)).
    pub fn is_reduced(&self) -> bool {
        let d = self.disc();
        if d < 0 {
            if self.a <= 0 {
                return false;
            }
            let ok = self.b.abs() <= self.a && self.a <= self.c;
            if !ok {
                return false;
            }
            if (self.b.abs() == self.a || self.a == self.c) && self.b < 0 {
                return false;
            }
            true
        } else {
            let s = isqrt(d);
            self.b >= 1
                && self.b <= s
                && 2 * self.a.abs() - self.b <= s
                && s < 2 * self.a.abs() + self.b
        }
    }
}

/// Reduce a positive-definite form (disc < 0, a > 0), tracking the transform.
fn reduce_definite(f: QForm) -> Result<(QForm, Transform)> {
    let mut g = f;
    let mut t = Transform::identity();
    if g.a < 0 {
        return Err(Error::InvalidInput("negative definite form".into()));
    }
    loop {
        // normalize b into (-a, a]
        if g.b > g.a || g.b <= -g.a {
            // n = round to bring b + 2an into (-a, a]
            let n = (-(g.b - g.a)).div_euclid(2 * g.a);
            let step = Transform { p: 1, q: n, r: 0, s: 1 };
            g = g.apply(&step)?;
            t = t.mul(&step)?;
        }
        if g.a > g.c {
            let step = Transform { p: 0, q: -1, r: 1, s: 0 };
            g = g.apply(&step)?;
            t = t.mul(&step)?;
            continue;
        }
        break;
    }
    if g.a == g.c && g.b < 0 {
        let step = Transform { p: 0, q: -1, r: 1, s: 0 };
        g = g.apply(&step)?;
        t = t.mul(&step)?;
    }
    debug_assert!(g.is_reduced(), "not reduced: {g:?}");
    Ok((g, t))
}

/// One rho step on an indefinite form: (a, b, c) -> (c, r, (r^2 - D)/(4c)).
fn rho_step(g: QForm, s: i128) -> Result<(QForm, Transform)> {
    let c = g.c;
    debug_assert!(c != 0);
    let ca = c.abs();
    // r = -b mod 2|c| placed in the right window
    let r = if ca > s {
        // r in (-|c|, |c|]
        let mut r = (-g.b).rem_euclid(2 * ca);
        if r > ca {
            r -= 2 * ca;
        }
        r
    } else {
        // r in (s - 2|c|, s]
        let base = (-g.b).rem_euclid(2 * ca);
        let mut r = base + 2 * ca * ((s - base).div_euclid(2 * ca));
        if r > s {
            r -= 2 * ca;
        }
        debug_assert!(r <= s && r > s - 2 * ca);
        r
    };
    let m = (r + g.b) / (2 * c); // exact by construction
    let step = Transform { p: 0, q: -1, r: 1, s: m };
    let out = g.apply(&step)?;
    debug_assert_eq!(out.a, c);
    debug_assert_eq!(out.b, r);
    Ok((out, step))
}

/// Reduce an indefinite form (disc > 0 nonsquare), tracking the transform.
fn reduce_indefinite(f: QForm) -> Result<(QForm, Transform)> {
    let d = f.disc();
    let s = isqrt(d);
    let mut g = f;
    let mut t = Transform::identity();
    let mut guard = 0usize;
    while !g.is_reduced() {
        let (h, step) = rho_step(g, s)?;
        g = h;
        t = t.mul(&step)?;
        guard += 1;
        if guard > 100_000 {
            return Err(Error::GuardExceeded("indefinite reduction".into()));
        }
    }
    Ok((g, t))
}

/// Reduce any primitive form of nonsquare discriminant, with transform.
pub fn reduce_with_transform(f: QForm) -> Result<(QForm, Transform)> {
    if f.disc() < 0 {
        reduce_definite(f)
    } else {
        reduce_indefinite(f)
    }
}

pub fn reduce(f: QForm) -> Result<QForm> {
    Ok(reduce_with_transform(f)?.0)
}

/// The full cycle of reduced forms equivalent to a reduced indefinite form,
/// starting at `f`, with the transform accumulated at each position.
pub fn cycle_with_transforms(f: QForm) -> Result<Vec<(QForm, Transform)>> {
    debug_assert!(f.disc() > 0 && f.is_reduced());
    let s = isqrt(f.disc());
    let mut out = vec![(f, Transform::identity())];
    let (mut g, mut t) = (f, Transform::identity());
    loop {
        let (h, step) = rho_step(g, s)?;
        t = t.mul(&step)?;
        g = h;
        if g == f {
            return Ok(out);
        }
        out.push((g, t));
        if out.len() > 1_000_000 {
            return Err(Error::GuardExceeded("cycle length".into()));
        }
    }
}

/// Canonical representative of the class of a reduced form: for definite
/// forms reduction is already canonical; for indefinite forms take the
/// lexicographic minimum over the reduction cycle.
pub fn canonical(f: QForm) -> Result<QForm> {
    let (g, _) = reduce_with_transform(f)?;
    if g.disc() < 0 {
        return Ok(g);
    }
    let cyc = cycle_with_transforms(g)?;
    Ok(cyc.into_iter().map(|(h, _)| h).min().unwrap())
}
