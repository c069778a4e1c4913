//! Multivariate polynomial gcd over the integers.
//!
//! Recursive content/primitive-part reduction with a primitive PRS in a main
//! variable. Cheap exits come first: constants, monomial contents, variables
//! present on one side only, and a modular degree bound that detects when the
//! gcd cannot involve a variable.

use crate::poly::{mulmod, IntPoly};
use crate::var::{Mono, Var, NVARS};

const P: u64 = (1 << 61) - 1;

/// Gcd of two integer polynomials, normalized to a positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive().1.scale(&b.content());
    }
    if b.is_zero() {
        return a.primitive().1.scale(&a.content());
    }
    let ic = a.content().gcd(&b.content());
    let (_, pa) = a.primitive();
    let (_, pb) = b.primitive();
    gcd_prim(&pa, &pb).scale(&ic)
}

/// Gcd of two primitive polynomials; the result is primitive with positive
/// leading coefficient.
pub fn gcd_prim(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_constant() || b.is_constant() {
        return IntPoly::one();
    }
    let ma = a.mono_content();
    let mb = b.mono_content();
    let gm = ma.gcd(mb);
    let a = if ma == Mono::ONE { a.clone() } else { a.div_mono(ma) };
    let b = if mb == Mono::ONE { b.clone() } else { b.div_mono(mb) };
    let rest = gcd_nomono(&a, &b);
    if gm == Mono::ONE {
        rest
    } else {
        rest.mul_mono(gm)
    }
}

fn normalize_sign(p: IntPoly) -> IntPoly {
    if p.lc().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Both arguments primitive with no monomial content.
fn gcd_nomono(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_constant() || b.is_constant() || a.len() == 1 || b.len() == 1 {
        return IntPoly::one();
    }
    if a == b || *a == b.neg() {
        return normalize_sign(a.clone());
    }
    let sa = a.support();
    let sb = b.support();
    if sa & sb == 0 {
        return IntPoly::one();
    }
    if let Some(v) = first_var(sa & !sb) {
        return gcd_many_with(b, a.coeffs_in(v).into_iter().map(|t| t.1).collect());
    }
    if let Some(v) = first_var(sb & !sa) {
        return gcd_many_with(a, b.coeffs_in(v).into_iter().map(|t| t.1).collect());
    }
    // modular degree bounds in each shared variable
    let shared: Vec<Var> = Var::all().filter(|v| sa & (1 << v.index()) != 0).collect();
    for &x in &shared {
        if modular_degree_bound(a, b, x) == Some(0) {
            let mut parts: Vec<IntPoly> = a.coeffs_in(x).into_iter().map(|t| t.1).collect();
            parts.extend(b.coeffs_in(x).into_iter().map(|t| t.1));
            return gcd_list(parts);
        }
    }
    // main variable: smallest degree
    let x = *shared
        .iter()
        .min_by_key(|v| (a.degree(**v).max(b.degree(**v)), a.degree(**v).min(b.degree(**v))))
        .unwrap();
    let (ca, pa) = content_in(a, x);
    let (cb, pb) = content_in(b, x);
    let cg = gcd(&ca, &cb);
    let g = prs(pa, pb, x);
    normalize_sign(g.mul(&cg))
}

fn first_var(mask: u16) -> Option<Var> {
    (0..NVARS).find(|i| mask & (1 << i) != 0).map(|i| Var(i as u8))
}

/// gcd(p, q_1, q_2, ...), stopping early at 1.
fn gcd_many_with(p: &IntPoly, mut qs: Vec<IntPoly>) -> IntPoly {
    qs.sort_by_key(|q| q.len());
    let mut g = p.primitive().1;
    for q in qs {
        if g.is_one() {
            break;
        }
        g = gcd(&g, &q.primitive().1);
    }
    normalize_sign(g)
}

fn gcd_list(mut qs: Vec<IntPoly>) -> IntPoly {
    qs.sort_by_key(|q| q.len());
    let mut it = qs.into_iter();
    let first = match it.next() {
        Some(q) => q.primitive().1,
        None => return IntPoly::zero(),
    };
    gcd_many_with(&first, it.collect())
}

/// Content with respect to `x` (a polynomial free of `x`) and primitive part.
pub fn content_in(p: &IntPoly, x: Var) -> (IntPoly, IntPoly) {
    let mut coeffs: Vec<IntPoly> = p.coeffs_in(x).into_iter().map(|t| t.1).collect();
    let c = if coeffs.len() == 1 { coeffs.pop().unwrap() } else { gcd_list(coeffs).scale(&p.content()) };
    let q = p.div_exact(&c).expect("content divides");
    (c, q)
}

/// Primitive PRS on polynomials primitive with respect to `x`.
fn prs(a: IntPoly, b: IntPoly, x: Var) -> IntPoly {
    let (mut r0, mut r1) = if a.degree(x) >= b.degree(x) { (a, b) } else { (b, a) };
    loop {
        if r1.degree(x) == 0 {
            return IntPoly::one();
        }
        let r = r0.prem(&r1, x);
        if r.is_zero() {
            return r1;
        }
        if r.degree(x) == 0 {
            return IntPoly::one();
        }
        let (_, pr) = content_in(&r, x);
        r0 = r1;
        r1 = pr;
    }
}

fn next_rand(state: &mut u64) -> u64 {
    *state ^= *state << 13;
    *state ^= *state >> 7;
    *state ^= *state << 17;
    *state % (P - 2) + 2
}

/// Upper bound on deg_x gcd(a, b) from one evaluation of the other variables
/// modulo a prime. `None` if no usable evaluation point was found.
pub fn modular_degree_bound(a: &IntPoly, b: &IntPoly, x: Var) -> Option<u32> {
    let mut state = 0x2545_f491_4f6c_dd1d_u64 ^ (x.index() as u64 * 0x9e37_79b9);
    for _ in 0..3 {
        let mut point = [0u64; NVARS];
        for p in point.iter_mut() {
            *p = next_rand(&mut state);
        }
        let ua = univariate_image(a, x, &point);
        let ub = univariate_image(b, x, &point);
        if ua.len() != a.degree(x) as usize + 1 {
            continue;
        }
        let g = uni_gcd(ua, ub);
        return Some(g.len().saturating_sub(1) as u32);
    }
    None
}

fn univariate_image(a: &IntPoly, x: Var, point: &[u64; NVARS]) -> Vec<u64> {
    let d = a.degree(x) as usize;
    let mut out = vec![0u64; d + 1];
    for (m, c) in a.terms() {
        let mut t = c.rem_u64(P);
        for i in 0..NVARS {
            if i == x.index() {
                continue;
            }
            let e = m.exp(Var(i as u8));
            if e > 0 {
                t = mulmod(t, crate::poly::powmod(point[i], e as u64, P), P);
            }
        }
        let e = m.exp(x) as usize;
        out[e] = (out[e] + t) % P;
    }
    trim(&mut out);
    out
}

fn trim(v: &mut Vec<u64>) {
    while let Some(&0) = v.last() {
        v.pop();
    }
}

fn uni_gcd(mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn uni_rem(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = crate::poly::inv_mod(b[db], P);
    while r.len() > db {
        let top = r.len() - 1;
        let f = mulmod(r[top], inv, P);
        if f != 0 {
            for i in 0..=db {
                let s = mulmod(f, b[i], P);
                r[top - db + i] = (r[top - db + i] + P - s) % P;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

impl IntPoly {
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        gcd(self, o)
    }
}
