//! The form class group of discriminant -4*delta: class enumeration, Gauss
//! composition, the character table, and the principal genus.
//!
//! For delta > 0 classes are the reduced positive-definite forms. For
//! delta < 0 they are reduction cycles of indefinite forms, i.e. the narrow
//! classes of the order Z[sqrt(-delta)]; the "sign class" of (-1, 0, -delta)
//! tracks which ideals have a generator of negative norm.

use crate::error::{Error, Result};
use crate::arith::kronecker::validate_delta;

use crate::arith::primes::isqrt;
use crate::quadring::qform::{canonical, cycle_with_transforms, QForm};
use std::collections::HashMap;

pub struct FormClassGroup {
    delta: i128,
    disc: i128,
    forms: Vec<QForm>,
    index: HashMap<QForm, usize>,
    comp: Vec<Vec<usize>>,
    inv: Vec<usize>,
    principal: usize,
    sign_class: usize,
    /// characters: orders and value exponents (value = zeta_order ^ exponent)
    char_order: Vec<u32>,
    char_exp: Vec<Vec<u32>>,
    in_principal_genus: Vec<bool>,
}

impl FormClassGroup {
    /// Enumerate the classes of primitive forms of discriminant -4*delta and
    /// build the full group structure.
    pub fn new(delta: i128) -> Result<Self> {
        validate_delta(delta)?;
        let disc = -4 * delta;
        let mut reps: Vec<QForm> = Vec::new();
        if disc < 0 {
            // reduced definite: |b| <= a <= c, normalized signs
            let amax = isqrt(-disc / 3);
            for a in 1..=amax {
                for b in -a..=a {
                    if (b * b - disc) % (4 * a) != 0 {
                        continue;
                    }
                    let c = (b * b - disc) / (4 * a);
                    let f = QForm::new(a, b, c);
                    if f.is_reduced() && f.is_primitive() {
                        reps.push(f);
                    }
                }
            }
        } else {
            // all reduced indefinite forms, then one canonical rep per cycle
            let s = isqrt(disc);
            let mut seen: HashMap<QForm, ()> = HashMap::new();
            let mut reduced: Vec<QForm> = Vec::new();
            for b in 1..=s {
                if (disc - b * b) % 4 != 0 {
                    continue;
                }
                let m = (b * b - disc) / 4; // = a*c, negative
                let mabs = -m;
                let mut a = 1i128;
                while a * a <= mabs {
                    if mabs % a == 0 {
                        for aa in [a, -a, mabs / a, -(mabs / a)] {
                            let cc = m / aa;
                            let f = QForm::new(aa, b, cc);
                            if f.is_reduced() && f.is_primitive() && seen.insert(f, ()).is_none() {
                                reduced.push(f);
                            }
                        }
                    }
                    a += 1;
                }
            }
            let mut assigned: HashMap<QForm, ()> = HashMap::new();
            for f in reduced {
                if assigned.contains_key(&f) {
                    continue;
                }
                let cyc = cycle_with_transforms(f)?;
                let mut min = f;
                for (g, _) in &cyc {
                    assigned.insert(*g, ());
                    if *g < min {
                        min = *g;
                    }
                }
                reps.push(min);
            }
        }
        reps.sort();
        let principal_form = canonical(QForm::new(1, 0, delta))?;
        let index: HashMap<QForm, usize> = reps.iter().copied().enumerate().map(|(i, f)| (f, i)).collect();
        let principal = *index
            .get(&principal_form)
            .ok_or_else(|| Error::InvalidInput("principal class missing".into()))?;
        let h = reps.len();
        let mut comp = vec![vec![0usize; h]; h];
        for i in 0..h {
            for j in i..h {
                let f = compose_forms(&reps[i], &reps[j])?;
                let k = *index
                    .get(&canonical(f)?)
                    .ok_or_else(|| Error::InvalidInput("composition left the class list".into()))?;
                comp[i][j] = k;
                comp[j][i] = k;
            }
        }
        let mut inv = vec![0usize; h];
        for i in 0..h {
            let j = (0..h)
                .find(|&j| comp[i][j] == principal)
                .ok_or_else(|| Error::InvalidInput("no inverse".into()))?;
            inv[i] = j;
        }
        let sign_class = if delta < 0 {
            let f = canonical(QForm::new(-1, 0, -delta))?;
            *index
                .get(&f)
                .ok_or_else(|| Error::InvalidInput("sign class missing".into()))?
        } else {
            principal
        };
        let (char_order, char_exp) = character_table(&comp, principal)?;
        let mut in_principal_genus = vec![false; h];
        for i in 0..h {
            in_principal_genus[comp[i][i]] = true;
        }
        Ok(FormClassGroup {
            delta,
            disc,
            forms: reps,
            index,
            comp,
            inv,
            principal,
            sign_class,
            char_order,
            char_exp,
            in_principal_genus,
        })
    }

    pub fn delta(&self) -> i128 {
        self.delta
    }

    pub fn disc(&self) -> i128 {
        self.disc
    }

    pub fn class_number(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[QForm] {
        &self.forms
    }

    pub fn principal(&self) -> usize {
        self.principal
    }

    /// Class of ideals all of whose generators have negative norm
    /// (delta < 0); equals the principal class iff the order has a unit of
    /// norm -1.
    pub fn sign_class(&self) -> usize {
        self.sign_class
    }

    pub fn compose(&self, i: usize, j: usize) -> Result<usize> {
        if i >= self.forms.len() || j >= self.forms.len() {
            return Err(Error::IndexOutOfRange(i.max(j)));
        }
        Ok(self.comp[i][j])
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn power(&self, i: usize, e: u64) -> usize {
        let mut acc = self.principal;
        let mut base = i;
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = self.comp[acc][base];
            }
            e >>= 1;
            if e == 0 {
                return acc;
            }
            base = self.comp[base][base];
        }
    }

    pub fn class_index(&self, f: QForm) -> Result<usize> {
        let g = canonical(f)?;
        self.index
            .get(&g)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("form {f:?} not of discriminant {}", self.disc)))
    }

    pub fn is_in_principal_genus(&self, class: usize) -> bool {
        self.in_principal_genus[class]
    }

    /// Number of characters, i.e. the class number.
    pub fn num_characters(&self) -> usize {
        self.char_order.len()
    }

    pub fn character_order(&self, k: usize) -> u32 {
        self.char_order[k]
    }

    /// Value of character k on a class, as a root of unity exponent
    /// (numerator over the character order).
    pub fn character_exponent(&self, k: usize, class: usize) -> u32 {
        self.char_exp[k][class]
    }

    pub fn character_value(&self, k: usize, class: usize) -> num_complex::Complex64 {
        let ord = self.char_order[k] as f64;
        let e = self.char_exp[k][class] as f64;
        num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e / ord)
    }

    /// Value of an order <= 2 character as +-1.
    pub fn character_sign(&self, k: usize, class: usize) -> Result<i64> {
        let ord = self.char_order[k];
        if ord > 2 {
            return Err(Error::InvalidInput("character has order > 2".into()));
        }
        Ok(if self.char_exp[k][class] == 0 { 1 } else { -1 })
    }

    pub fn characters_of_order_le2(&self) -> Vec<usize> {
        (0..self.num_characters()).filter(|&k| self.char_order[k] <= 2).collect()
    }

    pub fn characters_of_order_ge3(&self) -> Vec<usize> {
        (0..self.num_characters()).filter(|&k| self.char_order[k] >= 3).collect()
    }

    pub fn class_order(&self, i: usize) -> u32 {
        let mut n = 1u32;
        let mut acc = i;
        while acc != self.principal {
            acc = self.comp[acc][i];
            n += 1;
        }
        n
    }
}

/// Gauss/Dirichlet composition of two primitive forms of equal discriminant.
pub fn compose_forms(f1: &QForm, f2: &QForm) -> Result<QForm> {
    debug_assert_eq!(f1.disc(), f2.disc());
    let (a1, b1, c1) = (f1.a, f1.b, f1.c);
    let (a2, b2, _c2) = (f2.a, f2.b, f2.c);
    let _ = c1;
    let s = (b1 + b2) / 2;
    let n = (b2 - b1) / 2;
    // d = gcd(a1, a2, s) = u*a1 + v*a2 + w*s
    let (g1, u1, v1) = extgcd(a1, a2);
    let (d, t, w) = extgcd(g1, s);
    let (u, v) = (u1 * t, v1 * t);
    let a3 = (a1 / d) * (a2 / d);
    // B = b2 + 2 (a2/d) (v*(b1-b2)/2 - w*c2)  (Buell, Ch. 4)
    let big = crate::arith::poly::mul_i(
        2 * (a2 / d),
        crate::arith::poly::sub_i(
            crate::arith::poly::mul_i(v, -n)?,
            crate::arith::poly::mul_i(w, f2.c)?,
        )?,
    )?;
    let mut b3 = crate::arith::poly::add_i(b2, big)?;
    let modulus = 2 * a3;
    b3 = b3.rem_euclid(modulus);
    let disc = f1.disc();
    let c3 = (b3 * b3 - disc) / (4 * a3);
    debug_assert_eq!((b3 * b3 - disc) % (4 * a3), 0);
    let _ = u;
    Ok(QForm::new(a3, b3, c3))
}

/// Extended gcd: returns (g, x, y) with g = gcd(a, b) >= 0 and ax + by = g.
pub(crate) fn extgcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            return (-a, -1, 0);
        }
        return (a, 1, 0);
    }
    let (g, x, y) = extgcd(b, a.rem_euclid(b));
    // g = b*x + (a mod b)*y = b*x + (a - b*floor(a/b))*y
    (g, y, x - a.div_euclid(b) * y)
}

/// All characters of a finite abelian group given by its multiplication
/// table. Returns (orders, exponent tables): character k maps class j to
/// zeta_{orders[k]} ^ exps[k][j].
fn character_table(comp: &[Vec<usize>], e: usize) -> Result<(Vec<u32>, Vec<Vec<u32>>)> {
    let h = comp.len();
    let order_of = |g: usize| -> u32 {
        let mut n = 1u32;
        let mut acc = g;
        while acc != e {
            acc = comp[acc][g];
            n += 1;
        }
        n
    };
    // greedy generating set with expressions for every element
    let mut gens: Vec<usize> = Vec::new();
    let mut gen_orders: Vec<u32> = Vec::new();
    // expression[j] = exponents over gens
    let mut expr: HashMap<usize, Vec<u32>> = HashMap::new();
    expr.insert(e, Vec::new());
    while expr.len() < h {
        let mut best = None;
        let mut best_ord = 0;
        for g in 0..h {
            if !expr.contains_key(&g) {
                let o = order_of(g);
                if o > best_ord {
                    best_ord = o;
                    best = Some(g);
                }
            }
        }
        let g = best.ok_or_else(|| Error::InvalidInput("group generation stalled".into()))?;
        gens.push(g);
        gen_orders.push(best_ord);
        // extend expressions: every current element times powers of g
        let old: Vec<(usize, Vec<u32>)> = expr.iter().map(|(k, v)| (*k, v.clone())).collect();
        for (elem, ex) in old {
            let mut acc = elem;
            for k in 1..best_ord {
                acc = comp[acc][g];
                expr.entry(acc).or_insert_with(|| {
                    let mut v = ex.clone();
                    v.resize(gens.len() - 1, 0);
                    v.push(k);
                    v
                });
            }
        }
        for v in expr.values_mut() {
            v.resize(gens.len(), 0);
        }
    }
    // group exponent
    let mut lcm_all = 1u64;
    for &o in &gen_orders {
        lcm_all = num_integer::lcm(lcm_all, o as u64);
    }
    let big_l = lcm_all as u32;
    // candidate characters: assignments k_i mod ord(g_i)
    let mut chars: Vec<Vec<u32>> = Vec::new(); // exponents over zeta_L per class
    let mut idx = vec![0u32; gens.len()];
    'outer: loop {
        // build the value vector
        let mut vals = vec![0u32; h];
        for (j, v) in (0..h).map(|j| (j, &expr[&j])) {
            let mut acc: u64 = 0;
            for (i, &ei) in v.iter().enumerate() {
                acc += (idx[i] as u64) * (ei as u64) * (big_l / gen_orders[i]) as u64;
            }
            vals[j] = (acc % big_l as u64) as u32;
        }
        // verify multiplicativity against the full table
        let mut ok = true;
        'check: for i in 0..h {
            for j in 0..h {
                if (vals[i] + vals[j]) % big_l != vals[comp[i][j]] {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok && !chars.contains(&vals) {
            chars.push(vals);
        }
        // advance
        for i in 0..gens.len() {
            idx[i] += 1;
            if idx[i] < gen_orders[i] {
                continue 'outer;
            }
            idx[i] = 0;
        }
        break;
    }
    if chars.len() != h {
        return Err(Error::InvalidInput(format!(
            "character enumeration found {} of {h}",
            chars.len()
        )));
    }
    chars.sort();
    // reduce each character to its own order
    let mut orders = Vec::with_capacity(h);
    let mut exps = Vec::with_capacity(h);
    for vals in chars {
        let mut g = big_l;
        for &v in &vals {
            g = num_integer::gcd(g, v);
        }
        let ord = if g == 0 { 1 } else { big_l / g };
        let vals2: Vec<u32> = vals.iter().map(|&v| if v == 0 { 0 } else { v / (big_l / ord) }).collect();
        orders.push(ord);
        exps.push(vals2);
    }
    Ok((orders, exps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_numbers() {
        for (delta, h) in [
            (1i128, 1usize),
            (2, 1),
            (5, 2),
            (6, 2),
            (10, 2),
            (23, 3),
            (-2, 1),
            (-3, 2),
            // Z[sqrt5] has the norm -1 unit 2+sqrt5, so narrow = wide = 1
            (-5, 1),
        ] {
            let g = FormClassGroup::new(delta).unwrap();
            assert_eq!(g.class_number(), h, "delta={delta}");
        }
    }

    #[test]
    fn delta5_classes_and_composition() {
        let g = FormClassGroup::new(5).unwrap();
        let mut forms: Vec<(i128, i128, i128)> = g.forms().iter().map(|f| (f.a, f.b, f.c)).collect();
        forms.sort();
        assert_eq!(forms, vec![(1, 0, 5), (2, 2, 3)]);
        let x = g.class_index(QForm::new(2, 2, 3)).unwrap();
        assert_eq!(g.compose(x, x).unwrap(), g.principal());
        assert_eq!(g.compose(g.principal(), x).unwrap(), x);
    }

    #[test]
    fn delta23_is_z3() {
        let g = FormClassGroup::new(23).unwrap();
        assert_eq!(g.class_number(), 3);
        for i in 0..3 {
            let cube = g.compose(g.compose(i, i).unwrap(), i).unwrap();
            assert_eq!(cube, g.principal());
        }
        // characters: one trivial, two of order 3
        let mut ords: Vec<u32> = (0..3).map(|k| g.character_order(k)).collect();
        ords.sort();
        assert_eq!(ords, vec![1, 3, 3]);
    }

    #[test]
    fn group_axioms_exhaustive() {
        for delta in [1i128, 2, 5, 6, 10, 23, -2, -3, -5] {
            let g = FormClassGroup::new(delta).unwrap();
            let h = g.class_number();
            let e = g.principal();
            for i in 0..h {
                assert_eq!(g.compose(e, i).unwrap(), i);
                assert_eq!(g.compose(i, g.inverse(i)).unwrap(), e);
                for j in 0..h {
                    let ij = g.compose(i, j).unwrap();
                    assert_eq!(ij, g.compose(j, i).unwrap());
                    for k in 0..h {
                        let a = g.compose(ij, k).unwrap();
                        let b = g.compose(i, g.compose(j, k).unwrap()).unwrap();
                        assert_eq!(a, b, "associativity delta={delta}");
                    }
                }
            }
        }
    }

    #[test]
    fn characters_orthogonal() {
        let g = FormClassGroup::new(23).unwrap();
        // sum over characters of chi(c) = h * [c = e]
        for c in 0..g.class_number() {
            let mut sum = num_complex::Complex64::new(0.0, 0.0);
            for k in 0..g.num_characters() {
                sum += g.character_value(k, c);
            }
            let expect = if c == g.principal() { 3.0 } else { 0.0 };
            assert!((sum.re - expect).abs() < 1e-9 && sum.im.abs() < 1e-9);
        }
    }

    #[test]
    fn principal_genus_is_squares() {
        let g = FormClassGroup::new(5).unwrap();
        // h = 2: squares = {principal}
        assert!(g.is_in_principal_genus(g.principal()));
        let other = 1 - g.principal();
        assert!(!g.is_in_principal_genus(other));
        let g23 = FormClassGroup::new(23).unwrap();
        // h = 3 odd: C^2 = C
        for i in 0..3 {
            assert!(g23.is_in_principal_genus(i));
        }
    }

    #[test]
    fn sign_class_negative_delta() {
        // delta = -2: norm -1 unit (1+sqrt2) exists: sign class = principal
        let g = FormClassGroup::new(-2).unwrap();
        assert_eq!(g.sign_class(), g.principal());
        // delta = -3: fundamental unit 2+sqrt3 has norm +1, no norm -1 unit
        let g = FormClassGroup::new(-3).unwrap();
        assert_ne!(g.sign_class(), g.principal());
    }
}
