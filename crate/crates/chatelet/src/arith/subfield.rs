//! Does Q[z]/(f) contain sqrt(-delta)?
//!
//! Degree 1: never. Degree 3: never (a cubic field has no quadratic
//! subfield). Degree 2: iff (-delta)*disc(f) is a rational square. Degree 4:
//! iff f splits over Q(sqrt(-delta)) into conjugate quadratics, which we
//! decide by an exact search for that factorization. Writing the monicized f
//! as z^4 + B z^3 + C z^2 + D z + E and a candidate factor as
//! z^2 + (b1 + b2 w) z + (c1 + c2 w) with w = sqrt(-delta), matching
//! coefficients forces b1 = B/2 and turns the remaining constraints into one
//! rational-root problem in b2 (plus the separate b2 = 0 branch).

use crate::error::{Error, Result};
use crate::arith::factorize::is_irreducible;
use crate::arith::kronecker::validate_delta;
use crate::arith::poly::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

fn q_int(n: i128) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn q_is_square(x: &Q) -> bool {
    if x.is_negative() {
        return false;
    }
    let n = x.numer();
    let d = x.denom();
    big_is_square(n) && big_is_square(d)
}

fn big_is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

fn q_sqrt(x: &Q) -> Option<Q> {
    if !q_is_square(x) {
        return None;
    }
    Some(Q::new(x.numer().sqrt(), x.denom().sqrt()))
}

/// True iff Q[z]/(f) contains sqrt(-delta). f must be irreducible over Q of
/// degree <= 4.
pub fn contains_sqrt_minus_delta(f: &IntPoly, delta: i128) -> Result<bool> {
    validate_delta(delta)?;
    if f.degree() == 0 || f.degree() > 4 {
        return Err(Error::InvalidPoly(format!(
            "subfield test needs degree 1..=4, got {}",
            f.degree()
        )));
    }
    if !is_irreducible(f)? {
        return Err(Error::InvalidPoly("subfield test needs irreducible input".into()));
    }
    match f.degree() {
        1 | 3 => Ok(false),
        2 => {
            let disc = f.discriminant()?;
            Ok(crate::arith::primes::is_square(
                (-delta).checked_mul(disc).ok_or(Error::Overflow("disc product"))?,
            ))
        }
        4 => quartic_splits_over_k(f, delta),
        _ => unreachable!(),
    }
}

/// f irreducible quartic: does it factor as g * conj(g) over Q(sqrt(-delta))?
fn quartic_splits_over_k(f: &IntPoly, delta: i128) -> Result<bool> {
    // monicize: h(z) = a^3 f(z/a) is monic with integer coefficients and
    // defines the same field.
    let a = f.leading();
    let mut h = [Q::zero(), Q::zero(), Q::zero(), Q::zero(), Q::one()];
    // coefficient of z^k in h is f_k * a^(3-k)
    for k in 0..4 {
        let mut c = q_int(f.coeff(k));
        let e = 3 - k as i32;
        if e >= 0 {
            c *= q_int(a).pow(e);
        } else {
            c /= q_int(a).pow(-e);
        }
        h[k] = c;
    }
    let (bb, cc, dd, ee) = (h[3].clone(), h[2].clone(), h[1].clone(), h[0].clone());
    let md = q_int(delta);
    let b1 = &bb / q_int(2);

    // branch b2 = 0: c1 = (C - b1^2)/2, need D = 2 b1 c1 and c2^2 = (E - c1^2)/delta
    {
        let c1 = (&cc - &b1 * &b1) / q_int(2);
        if dd == q_int(2) * &b1 * &c1 {
            let c2sq = (&ee - &c1 * &c1) / &md;
            if !c2sq.is_zero() && q_is_square(&c2sq) {
                return Ok(true);
            }
        }
    }

    // branch b2 = t != 0:
    //   c1(t) = (C - b1^2 - delta t^2) / 2
    //   c2(t) = (D - 2 b1 c1(t)) / (2 delta t)
    //   constraint: 4 delta t^2 c1(t)^2 + (D - 2 b1 c1(t))^2 - 4 delta E t^2 = 0
    // This is an even polynomial in t of degree 6; find its rational roots.
    // Expand with s = t^2 to keep the degree down:
    //   c1 = (K - delta s)/2 where K = C - b1^2
    //   4 delta s c1^2 + (D - 2 b1 c1)^2 - 4 delta E s = 0
    // substituting c1 gives a cubic in s; rational roots s = t^2 must be
    // squares of rationals.
    let k = &cc - &b1 * &b1;
    // c1 = (k - delta*s)/2; write the constraint as a polynomial in s.
    // 4*delta*s*((k - delta s)/2)^2 = delta*s*(k - delta s)^2
    // (D - 2 b1 (k - delta s)/2)^2 = (D - b1 k + b1 delta s)^2
    // total: delta*s*(k - delta s)^2 + (D - b1 k + b1 delta s)^2 - 4 delta E s = 0
    let a3 = &md * &md * &md; // delta^3 s^3 coefficient from delta*s*(delta s)^2
    let a2 = -q_int(2) * &md * &md * &k + &b1 * &b1 * &md * &md;
    let a1 = &md * &k * &k + q_int(2) * (&dd - &b1 * &k) * (&b1 * &md) - q_int(4) * &md * &ee;
    let a0 = (&dd - &b1 * &k) * (&dd - &b1 * &k);
    for s in rational_roots(&[a0, a1, a2, a3])? {
        if s.is_zero() {
            continue;
        }
        if let Some(t) = q_sqrt(&s) {
            // verify the factorization honestly
            for tt in [t.clone(), -t] {
                if tt.is_zero() {
                    continue;
                }
                let c1 = (&k - &md * &s) / q_int(2);
                let c2 = (&dd - q_int(2) * &b1 * &c1) / (q_int(2) * &md * &tt);
                // check E = c1^2 + delta c2^2
                if ee == &c1 * &c1 + &md * &c2 * &c2 {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// All rational roots of sum coeffs[i] x^i with BigRational coefficients.
fn rational_roots(coeffs: &[Q]) -> Result<Vec<Q>> {
    // clear denominators, then strip integer content
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = num_integer::gcd(g, c.clone());
    }
    if !g.is_zero() {
        for c in &mut ints {
            *c /= &g;
        }
    }
    let n = ints.len();
    let mut lead_idx = n;
    for i in (0..n).rev() {
        if !ints[i].is_zero() {
            lead_idx = i;
            break;
        }
    }
    if lead_idx == n {
        return Ok(Vec::new()); // identically zero: no isolated roots to report
    }
    let mut low = 0usize;
    while ints[low].is_zero() {
        low += 1;
    }
    let mut out = Vec::new();
    if low > 0 {
        out.push(Q::zero());
    }
    let c0u: u64 = ints[low]
        .magnitude()
        .clone()
        .try_into()
        .map_err(|_| Error::Overflow("rational root constant"))?;
    let clu: u64 = ints[lead_idx]
        .magnitude()
        .clone()
        .try_into()
        .map_err(|_| Error::Overflow("rational root lead"))?;
    let ps = crate::arith::primes::divisors(&crate::arith::primes::factorize(c0u)?);
    let qs = crate::arith::primes::divisors(&crate::arith::primes::factorize(clu)?);
    for &p in &ps {
        for &q in &qs {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = Q::new(BigInt::from(sign) * BigInt::from(p), BigInt::from(q));
                let mut acc = Q::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * &cand + c;
                }
                if acc.is_zero() && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    Ok(out)
}
