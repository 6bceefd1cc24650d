//! Exact local solvability of the auxiliary systems
//! x_i^2 + delta y_i^2 = alpha_i t_i^2 F_i(u, v) != 0 at a place of Q.
//!
//! Over Q_ell each condition says alpha_i F_i(u, v) is a norm from
//! Q_ell(sqrt(-delta)), i.e. its Hilbert symbol with -delta is 1. The engine
//! searches the residue tree of P^1(Z_ell): on a subtree the symbol of a
//! factor is determined once its valuation stabilizes; branches whose
//! determined symbols contain -1 are pruned exactly; a factor still
//! undetermined past the Hensel bound is tracking a simple root, where both
//! parities and all unit classes occur nearby, so its symbol is free. The
//! search depth is bounded by discriminant and resultant valuations, so
//! "unsolvable" is a proof, never a timeout. Over R the test is an exact
//! sign sweep on the intervals cut by the real roots, isolated by Sturm
//! chains with rational endpoints.

use crate::error::{Error, Result};
use crate::arith::poly::{resultant_univ, IntPoly};
use crate::counting::ChateletSurface;
use crate::localglobal::torsors::TorsorSpec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Place {
    Real,
    Finite(u64),
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// z = num/den with all alpha_i f_i(z) > 0
    RealPoint { num: BigInt, den: BigInt },
    /// the direction at infinity (sign = u sign at (u : 0))
    RealInfinity { sign: i32 },
    /// (u : v) congruent to this mod ell^k; all symbols determined = +1
    PadicResidue { u: i128, v: i128, modulus: i128 },
    /// as above, with factor `deep` vanishing along a simple root where
    /// every square class is attained
    PadicNearRoot { u: i128, v: i128, modulus: i128, deep: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalReport {
    pub place: Place,
    /// None = undecided (precision ceiling hit)
    pub solvable: Option<bool>,
    pub witness: Option<Witness>,
}

pub const DEFAULT_HENSEL_CEILING: u32 = 64;

/// Local solvability of the torsor at one place.
pub fn local_solvable(
    s: &ChateletSurface,
    t: &TorsorSpec,
    place: Place,
    hensel_ceiling: u32,
) -> Result<LocalReport> {
    let targets: Vec<IntPoly> = s
        .factors()
        .iter()
        .zip(t.alphas.iter())
        .map(|(f, &a)| f.scale(a))
        .collect::<Result<Vec<_>>>()?;
    solvable_system(s.delta(), &targets, place, hensel_ceiling)
}

/// Does the surface itself have Q_ell (or real) points: exists z with f(z)
/// a nonzero norm of Q_ell(sqrt(-delta)).
pub fn surface_local_solvable(
    s: &ChateletSurface,
    place: Place,
    hensel_ceiling: u32,
) -> Result<LocalReport> {
    solvable_system(s.delta(), &[s.poly().clone()], place, hensel_ceiling)
}

fn solvable_system(
    delta: i128,
    targets: &[IntPoly],
    place: Place,
    hensel_ceiling: u32,
) -> Result<LocalReport> {
    match place {
        Place::Real => real_solvable(delta, targets),
        Place::Finite(ell) => padic_solvable(delta, targets, ell, hensel_ceiling),
    }
}

// ---- real place ----

fn real_solvable(delta: i128, targets: &[IntPoly]) -> Result<LocalReport> {
    if delta < 0 {
        // indefinite form represents every sign
        return Ok(LocalReport {
            place: Place::Real,
            solvable: Some(true),
            witness: Some(Witness::RealInfinity { sign: 1 }),
        });
    }
    // need z with every target > 0 (x^2 + delta y^2 covers the positives)
    // directions at infinity: (u : v) = (+-1 : 0)
    for sign in [1i32, -1] {
        let ok = targets.iter().all(|f| {
            let lead = f.leading();
            let v = if sign > 0 || f.degree() % 2 == 0 { lead } else { -lead };
            v > 0
        });
        if ok {
            return Ok(LocalReport {
                place: Place::Real,
                solvable: Some(true),
                witness: Some(Witness::RealInfinity { sign }),
            });
        }
    }
    for z in sample_points(targets)? {
        let all_pos = targets.iter().all(|f| eval_rat_sign(f, &z) > 0);
        if all_pos {
            return Ok(LocalReport {
                place: Place::Real,
                solvable: Some(true),
                witness: Some(Witness::RealPoint {
                    num: z.numer().clone(),
                    den: z.denom().clone(),
                }),
            });
        }
    }
    Ok(LocalReport { place: Place::Real, solvable: Some(false), witness: None })
}

/// sign of f(z) at a rational point, exactly
fn eval_rat_sign(f: &IntPoly, z: &BigRational) -> i32 {
    let mut acc = BigRational::zero();
    for &c in f.coeffs().iter().rev() {
        acc = acc * z + BigRational::from_integer(BigInt::from(c));
    }
    match acc.cmp(&BigRational::zero()) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Less => -1,
    }
}

/// One rational sample strictly inside every open interval cut by the real
/// roots of the product of the targets. Interval endpoints are never roots,
/// so after the isolating intervals are made pairwise disjoint, the
/// endpoints themselves are valid samples.
fn sample_points(targets: &[IntPoly]) -> Result<Vec<BigRational>> {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut intervals: Vec<(BigRational, BigRational, usize)> = Vec::new();
    for (idx, f) in targets.iter().enumerate() {
        if f.degree() == 0 {
            continue;
        }
        for (a, b) in isolate_real_roots(f)? {
            intervals.push((a, b, idx));
        }
    }
    let mut guard = 0;
    loop {
        intervals.sort_by(|x, y| x.0.cmp(&y.0));
        let disjoint = intervals.windows(2).all(|w| w[0].1 < w[1].0);
        if disjoint {
            break;
        }
        let mut next = Vec::with_capacity(intervals.len());
        for (a, b, idx) in &intervals {
            let f = &targets[*idx];
            let mut mid = (a + b) / &two;
            let width = b - a;
            while eval_rat_sign(f, &mid) == 0 {
                // exact rational root (linear factor): shrink around it
                let eighth = &width / BigRational::from_integer(BigInt::from(8));
                next.push((mid.clone() - eighth.clone(), mid.clone() + eighth, *idx));
                mid = a.clone(); // sentinel: handled
                break;
            }
            if mid == *a {
                continue;
            }
            let sa = eval_rat_sign(f, a);
            let sm = eval_rat_sign(f, &mid);
            if sa != sm {
                next.push((a.clone(), mid, *idx));
            } else {
                next.push((mid, b.clone(), *idx));
            }
        }
        intervals = next;
        guard += 1;
        if guard > 2048 {
            return Err(Error::GuardExceeded("real root separation".into()));
        }
    }
    let mut samples = Vec::new();
    if intervals.is_empty() {
        samples.push(BigRational::zero());
        return Ok(samples);
    }
    samples.push(intervals[0].0.clone());
    for (_, b, _) in &intervals {
        samples.push(b.clone());
    }
    Ok(samples)
}

/// Isolating intervals (a, b) with rational endpoints, one real root each.
fn isolate_real_roots(f: &IntPoly) -> Result<Vec<(BigRational, BigRational)>> {
    let chain = sturm_chain(f);
    let bound = cauchy_bound(f);
    let a = -bound.clone();
    let b = bound;
    let mut stack = vec![(a, b)];
    let mut out = Vec::new();
    let mut guard = 0;
    while let Some((a, b)) = stack.pop() {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::GuardExceeded("sturm bisection".into()));
        }
        let na = sign_variations(&chain, &a);
        let nb = sign_variations(&chain, &b);
        let count = na.saturating_sub(nb);
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push((a, b));
            continue;
        }
        let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
        // make sure the midpoint is not itself a root
        let mut mid = mid;
        while eval_rat_sign(f, &mid) == 0 {
            mid += (&b - &a) / BigRational::from_integer(BigInt::from(1_000));
        }
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    Ok(out)
}

fn sturm_chain(f: &IntPoly) -> Vec<Vec<BigRational>> {
    let to_rat = |p: &IntPoly| -> Vec<BigRational> {
        p.coeffs().iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()
    };
    let mut chain = vec![to_rat(f), to_rat(&f.derivative())];
    loop {
        let n = chain.len();
        if chain[n - 1].iter().all(|c| c.is_zero()) || chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let rem = rat_poly_rem(&chain[n - 2], &chain[n - 1]);
        if rem.iter().all(|c| c.is_zero()) || rem.is_empty() {
            break;
        }
        chain.push(rem.iter().map(|c| -c.clone()).collect());
    }
    chain
}

fn rat_poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut a = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while a.len() > db && !a.is_empty() {
        let k = a.len() - 1;
        let c = a[k].clone() / lead.clone();
        if !c.is_zero() {
            for j in 0..=db {
                let idx = k - db + j;
                let sub = c.clone() * b[j].clone();
                a[idx] -= sub;
            }
        }
        a.pop();
        while a.last().map(|c| c.is_zero()).unwrap_or(false) {
            a.pop();
        }
    }
    a
}

fn sign_variations(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let mut signs: Vec<i32> = Vec::new();
    for poly in chain {
        let mut acc = BigRational::zero();
        for c in poly.iter().rev() {
            acc = acc * x + c;
        }
        let s = match acc.cmp(&BigRational::zero()) {
            std::cmp::Ordering::Greater => 1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Less => -1,
        };
        if s != 0 {
            signs.push(s);
        }
    }
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn cauchy_bound(f: &IntPoly) -> BigRational {
    let lead = f.leading().unsigned_abs();
    let max = f.coeffs().iter().map(|c| c.unsigned_abs()).max().unwrap_or(1);
    BigRational::from_integer(BigInt::from(1 + max.div_ceil(lead.max(1)) as i128 + 1))
}

// ---- finite places ----

struct PadicCtx {
    ell: i128,
    minus_delta: i128,
    /// unit precision needed to read a square class: ell (odd) or 8
    unit_mod: i128,
    need: u32,
    math_depth: u32,
    user_ceiling: u32,
    prec_exp: u32,
    prec: i128,
}

enum SearchResult {
    Found(Witness),
    NotHere,
    NeedCeiling,
}

fn padic_solvable(
    delta: i128,
    targets: &[IntPoly],
    ell: u64,
    hensel_ceiling: u32,
) -> Result<LocalReport> {
    let place = Place::Finite(ell);
    if !crate::arith::primes::is_prime(ell) {
        return Err(Error::InvalidInput(format!("{ell} is not prime")));
    }
    // if -delta is a square in Q_ell, the norm form is split: always solvable
    if minus_delta_is_square(delta, ell) {
        return Ok(LocalReport {
            place,
            solvable: Some(true),
            witness: Some(Witness::PadicResidue { u: 0, v: 1, modulus: 1 }),
        });
    }
    let elli = ell as i128;
    // good reduction shortcut: for ell >= 5 dividing none of the data,
    // P^1(F_ell) has a point where every target is an ell-unit, and
    // (unit, unit)_ell = 1 at odd unramified ell
    if ell >= 5 && good_reduction(delta, targets, elli)? {
        if let Some((u, v)) = unit_point_mod_ell(targets, elli)? {
            return Ok(LocalReport {
                place,
                solvable: Some(true),
                witness: Some(Witness::PadicResidue { u, v, modulus: elli }),
            });
        }
    }
    // per-branch polynomial systems: (u, v) = (w, 1) and (1, ell*w)
    let forms: Vec<(usize, Vec<i128>)> = targets
        .iter()
        .map(|f| (f.degree(), f.coeffs().to_vec()))
        .collect();
    let branch_a: Vec<Vec<i128>> = forms.iter().map(|(_, c)| c.clone()).collect();
    let branch_b: Vec<Vec<i128>> = forms
        .iter()
        .map(|(d, c)| {
            // g(w) = sum c_k (1)^k (ell w)^(d - k) homogenized at degree d:
            // f(z) = sum c_k z^k -> F(u, v) = sum c_k u^k v^(d-k);
            // F(1, ell w) = sum c_k (ell w)^(d - k)
            (0..=*d)
                .map(|j| {
                    // coefficient of w^j: c_{d-j} * ell^j
                    c.get(*d - j).copied().unwrap_or(0) * elli.pow(j as u32)
                })
                .collect()
        })
        .collect();
    // depth bound from the two unscaled charts F_i(w, 1) and F_i(1, w);
    // the ell-scaling of branch B shifts root data by at most deg levels
    let chart_b: Vec<Vec<i128>> = forms
        .iter()
        .map(|(d, c)| (0..=*d).map(|j| c.get(*d - j).copied().unwrap_or(0)).collect())
        .collect();
    let math_depth = math_depth_bound(&branch_a, &chart_b, delta, elli)? + 9;
    let need = if ell == 2 { 3 } else { 1 };
    let prec_exp = math_depth + need + 2;
    let prec = match elli.checked_pow(prec_exp).filter(|&p| p < (1i128 << 63)) {
        Some(p) => p,
        // required working precision out of range: report undecided rather
        // than guess
        None => return Ok(LocalReport { place, solvable: None, witness: None }),
    };
    let ctx = PadicCtx {
        ell: elli,
        minus_delta: -delta,
        unit_mod: if ell == 2 { 8 } else { elli },
        need,
        math_depth,
        user_ceiling: hensel_ceiling,
        prec_exp,
        prec,
    };
    for (branch, polys) in [(0u8, &branch_a), (1u8, &branch_b)] {
        let reduced: Vec<Vec<i128>> = polys
            .iter()
            .map(|c| c.iter().map(|&x| x.rem_euclid(prec)).collect())
            .collect();
        match search(&ctx, &reduced, 0, 0, 1)? {
            SearchResult::Found(w) => {
                // translate the path residue into (u, v) coordinates
                let witness = relabel_witness(w, branch, elli);
                return Ok(LocalReport { place, solvable: Some(true), witness: Some(witness) });
            }
            SearchResult::NotHere => continue,
            SearchResult::NeedCeiling => {
                return Ok(LocalReport { place, solvable: None, witness: None })
            }
        }
    }
    Ok(LocalReport { place, solvable: Some(false), witness: None })
}

fn relabel_witness(w: Witness, branch: u8, ell: i128) -> Witness {
    match w {
        Witness::PadicResidue { u: path, modulus, .. } => {
            if branch == 0 {
                Witness::PadicResidue { u: path, v: 1, modulus }
            } else {
                Witness::PadicResidue { u: 1, v: (ell * path).rem_euclid(modulus * ell), modulus: modulus * ell }
            }
        }
        Witness::PadicNearRoot { u: path, modulus, deep, .. } => {
            if branch == 0 {
                Witness::PadicNearRoot { u: path, v: 1, modulus, deep }
            } else {
                Witness::PadicNearRoot { u: 1, v: (ell * path).rem_euclid(modulus * ell), modulus: modulus * ell, deep }
            }
        }
        other => other,
    }
}

/// ell divides none of: 2*delta, the contents, leading and constant
/// coefficients, discriminants, pairwise resultants of the targets.
fn good_reduction(delta: i128, targets: &[IntPoly], ell: i128) -> Result<bool> {
    let divides = |x: i128| x != 0 && x % ell == 0;
    if divides(2 * delta) {
        return Ok(false);
    }
    for (i, f) in targets.iter().enumerate() {
        if divides(f.content()) || f.content() == 0 {
            return Ok(false);
        }
        if divides(f.leading()) {
            return Ok(false);
        }
        if f.degree() >= 1 {
            let d = resultant_univ(f, &f.derivative())?;
            if d == 0 || divides(d) {
                return Ok(false);
            }
        }
        for g in targets.iter().skip(i + 1) {
            let r = resultant_univ(f, g)?;
            if r == 0 || divides(r) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A point of P^1(F_ell) where every target is a unit: try (z, 1) for small
/// z, then (1, 0).
fn unit_point_mod_ell(targets: &[IntPoly], ell: i128) -> Result<Option<(i128, i128)>> {
    'z: for z in 0..ell.min(64) {
        for f in targets {
            if f.eval_mod(z, ell) == 0 {
                continue 'z;
            }
        }
        return Ok(Some((z, 1)));
    }
    // targets have at most 4*r roots; with ell >= 5 and the 64-point scan
    // exhausted only if ell < 64, fall back to infinity
    if targets.iter().all(|f| f.leading().rem_euclid(ell) != 0) {
        return Ok(Some((1, 0)));
    }
    Ok(None)
}

fn minus_delta_is_square(delta: i128, ell: u64) -> bool {
    let md = -delta;
    if md > 0 && crate::arith::primes::is_square(md) {
        return true;
    }
    let elli = ell as i128;
    let v = {
        let mut v = 0u32;
        let mut m = md;
        while m % elli == 0 {
            m /= elli;
            v += 1;
        }
        v
    };
    if v % 2 == 1 {
        return false;
    }
    let unit = md / elli.pow(v);
    if ell == 2 {
        unit.rem_euclid(8) == 1
    } else {
        crate::arith::kronecker(unit, elli) == 1
    }
}

fn math_depth_bound(
    branch_a: &[Vec<i128>],
    branch_b: &[Vec<i128>],
    delta: i128,
    ell: i128,
) -> Result<u32> {
    let val = |x: i128| -> u32 {
        if x == 0 {
            return 0;
        }
        let mut v = 0;
        let mut m = x.abs();
        while m % ell == 0 {
            m /= ell;
            v += 1;
        }
        v
    };
    let mut disc_val = 0u32;
    let mut res_val = 0u32;
    for set in [branch_a, branch_b] {
        let polys: Vec<IntPoly> = set.iter().map(|c| IntPoly::new(c.clone())).collect();
        for (i, p) in polys.iter().enumerate() {
            if p.degree() >= 1 && !p.is_zero() {
                let d = resultant_univ(p, &p.derivative()).unwrap_or(0);
                disc_val = disc_val.max(val(d));
                disc_val = disc_val.max(val(p.leading()));
                disc_val = disc_val.max(val(p.coeff(0)));
            }
            for q in polys.iter().skip(i + 1) {
                if !p.is_zero() && !q.is_zero() {
                    let r = resultant_univ(p, q).unwrap_or(0);
                    res_val = res_val.max(val(r));
                }
            }
        }
    }
    Ok(2 * disc_val + res_val + val(2 * delta) + 4)
}

/// Search the residue subtree. `polys` are exact mod ctx.prec polynomials in
/// the branch coordinate; `path`/`depth` describe the residue so far.
fn search(
    ctx: &PadicCtx,
    polys: &[Vec<i128>],
    depth: u32,
    path: i128,
    path_mod: i128,
) -> Result<SearchResult> {
    if depth >= ctx.user_ceiling {
        return Ok(SearchResult::NeedCeiling);
    }
    let mut hit_ceiling = false;
    for w0 in 0..ctx.ell {
        // shift each factor to the subtree w = w0 + ell w'
        let mut shifted: Vec<Vec<i128>> = Vec::with_capacity(polys.len());
        let mut symbols_ok = true;
        let mut undetermined: Vec<usize> = Vec::new();
        for (i, coeffs) in polys.iter().enumerate() {
            let sh = shift_and_scale(coeffs, w0, ctx.ell, ctx.prec);
            let c0 = sh[0];
            let tail = sh
                .iter()
                .skip(1)
                .filter(|&&c| c != 0)
                .map(|&c| val_of(c, ctx.ell))
                .min()
                .unwrap_or(ctx.prec_exp);
            let v0 = if c0 == 0 { ctx.prec_exp } else { val_of(c0, ctx.ell) };
            // the symbol is determined on the subtree once the tail cannot
            // touch the unit class of the constant term
            if c0 == 0 || tail < v0 + ctx.need {
                undetermined.push(i);
                shifted.push(sh);
                continue;
            }
            let unit = (c0 / ctx.ell.pow(v0)).rem_euclid(ctx.unit_mod);
            if hilbert_symbol_parts(ctx.ell, v0, unit, ctx.minus_delta) != 1 {
                symbols_ok = false;
                break;
            }
            shifted.push(sh);
        }
        if !symbols_ok {
            continue;
        }
        if undetermined.is_empty() {
            return Ok(SearchResult::Found(Witness::PadicResidue {
                u: path + w0 * path_mod,
                v: 0,
                modulus: path_mod * ctx.ell,
            }));
        }
        if depth + 1 >= ctx.math_depth {
            if undetermined.len() == 1 {
                return Ok(SearchResult::Found(Witness::PadicNearRoot {
                    u: path + w0 * path_mod,
                    v: 0,
                    modulus: path_mod * ctx.ell,
                    deep: undetermined[0],
                }));
            }
            // two factors vanishing past the resultant bound: bail honestly
            hit_ceiling = true;
            continue;
        }
        match search(ctx, &shifted, depth + 1, path + w0 * path_mod, path_mod * ctx.ell)? {
            SearchResult::Found(w) => return Ok(SearchResult::Found(w)),
            SearchResult::NotHere => {}
            SearchResult::NeedCeiling => hit_ceiling = true,
        }
    }
    Ok(if hit_ceiling { SearchResult::NeedCeiling } else { SearchResult::NotHere })
}

fn val_of(c: i128, ell: i128) -> u32 {
    debug_assert!(c != 0);
    let mut v = 0;
    let mut m = c;
    while m % ell == 0 {
        m /= ell;
        v += 1;
    }
    v
}

/// (a * b) mod m for 0 <= a, b < m < 2^63.
fn mulmod(a: i128, b: i128, m: i128) -> i128 {
    debug_assert!(m > 0 && m < (1i128 << 63));
    ((a as u128).wrapping_mul(b as u128) % m as u128) as i128
}

/// g(w0 + ell w') reduced mod prec.
fn shift_and_scale(coeffs: &[i128], w0: i128, ell: i128, prec: i128) -> Vec<i128> {
    let n = coeffs.len();
    let mut out = vec![0i128; n];
    for &c in coeffs.iter().rev() {
        for k in (1..n).rev() {
            out[k] = (out[k - 1] + mulmod(out[k], w0, prec)).rem_euclid(prec);
        }
        out[0] = (mulmod(out[0], w0, prec) + c.rem_euclid(prec)).rem_euclid(prec);
    }
    // scale w^k by ell^k
    let mut pk = 1i128;
    for (k, o) in out.iter_mut().enumerate() {
        if k > 0 {
            pk = mulmod(pk, ell, prec);
        }
        *o = mulmod(*o, pk, prec);
    }
    out
}

/// Hilbert symbol (a, b)_ell with a given by valuation and unit class.
pub fn hilbert_symbol_parts(ell: i128, va: u32, ua: i128, b: i128) -> i32 {
    let vb = if b == 0 { 0 } else { val_of(b, ell) };
    let ub = b / ell.pow(vb);
    let a_odd = va % 2;
    let b_odd = vb % 2;
    if ell == 2 {
        let eps = |u: i128| ((u.rem_euclid(8) - 1) / 2) % 2;
        let omg = |u: i128| {
            let m = u.rem_euclid(8);
            if m == 1 || m == 7 {
                0
            } else {
                1
            }
        };
        let e = eps(ua) * eps(ub) + (va as i128 % 2) * omg(ub) + (vb as i128 % 2) * omg(ua);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let mut s = 1i32;
        if a_odd == 1 && b_odd == 1 && ell.rem_euclid(4) == 3 {
            s = -s;
        }
        if b_odd == 1 {
            s *= crate::arith::kronecker(ua, ell);
        }
        if a_odd == 1 {
            s *= crate::arith::kronecker(ub, ell);
        }
        s
    }
}
