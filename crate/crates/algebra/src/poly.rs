//! Sparse multivariate polynomials over the global alphabet.

use crate::int::Int;
use crate::var::{Mono, Var, NVARS};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};

/// Exact rational number.
pub type BigRat = BigRational;

/// Coefficient ring of a [`Poly`].
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact quotient if it exists in the ring.
    fn try_div(&self, o: &Self) -> Option<Self>;
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }
    fn is_negative(&self) -> bool;
    fn rem_u64(&self, p: u64) -> Option<u64>;
}

impl Coeff for Int {
    fn zero() -> Self {
        Int::zero()
    }
    fn one() -> Self {
        Int::one()
    }
    fn from_i64(v: i64) -> Self {
        Int::Small(v)
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Int::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        Int::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Int::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Int::mul(self, o)
    }
    fn neg(&self) -> Self {
        Int::neg(self)
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() || !o.divides(self) {
            None
        } else {
            Some(self.div_exact(o))
        }
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        Int::add_mul(self, a, b)
    }
    fn is_negative(&self) -> bool {
        Int::is_negative(self)
    }
    fn rem_u64(&self, p: u64) -> Option<u64> {
        Some(Int::rem_u64(self, p))
    }
}

impl Coeff for BigRat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRat::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            None
        } else {
            Some(self / o)
        }
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn rem_u64(&self, p: u64) -> Option<u64> {
        let n = Int::from_big(self.numer().clone()).rem_u64(p);
        let d = Int::from_big(self.denom().clone()).rem_u64(p);
        if d == 0 {
            None
        } else {
            Some(mulmod(n, inv_mod(d, p), p))
        }
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Hasher for packed monomials.
#[derive(Default)]
pub struct MonoHasher(u64);

impl Hasher for MonoHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(5) ^ b as u64).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
        }
    }
    fn write_u128(&mut self, v: u128) {
        let x = (v as u64) ^ ((v >> 64) as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let x = (x ^ (x >> 29)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        self.0 = x ^ (x >> 32);
    }
}

pub type MonoMap<C> = HashMap<Mono, C, BuildHasherDefault<MonoHasher>>;

/// A polynomial: terms sorted by descending graded-lex monomial, no zero
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<C: Coeff> {
    terms: Vec<(Mono, C)>,
}

/// Polynomial with exact rational coefficients.
pub type MultiPoly = Poly<BigRat>;
/// Polynomial with integer coefficients.
pub type IntPoly = Poly<Int>;

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Poly::term(Mono::ONE, c)
    }

    pub fn from_i64(v: i64) -> Self {
        Poly::constant(C::from_i64(v))
    }

    pub fn term(m: Mono, c: C) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Mono::var(v), C::one())
    }

    /// Builds from terms that are already sorted descending, unique and nonzero.
    pub fn from_sorted_unchecked(terms: Vec<(Mono, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Poly { terms }
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Mono, C)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = last.1.add(&c),
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if last.1.is_zero() {
                out.pop();
            }
        }
        Poly { terms: out }
    }

    pub fn from_map(map: MonoMap<C>) -> Self {
        let mut terms: Vec<(Mono, C)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Mono::ONE)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<C> {
        if self.terms.is_empty() {
            Some(C::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Leading term in graded-lex order.
    pub fn lt(&self) -> Option<&(Mono, C)> {
        self.terms.first()
    }

    pub fn lc(&self) -> C {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(C::zero)
    }

    pub fn lm(&self) -> Mono {
        self.terms.first().map(|t| t.0).unwrap_or(Mono::ONE)
    }

    /// Bit set of variables that occur.
    pub fn support(&self) -> u16 {
        self.terms.iter().fold(0, |s, t| s | t.0.support())
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.iter().any(|t| t.0.exp(v) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let s = self.support();
        Var::all().filter(|v| s & (1 << v.index()) != 0).collect()
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self, v: Var) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    /// Greatest monomial dividing every term.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some(t) => t.0,
            None => return Mono::ONE,
        };
        it.fold(first, |g, t| g.gcd(t.0))
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect() }
    }

    pub fn mul_mono(&self, m: Mono) -> Self {
        Poly { terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect() }
    }

    /// `self * c * m`
    pub fn mul_term(&self, m: Mono, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(a, x)| (a.mul(m), x.mul(c))).collect() }
    }

    /// Divides every monomial by `m`; the caller guarantees divisibility.
    pub fn div_mono(&self, m: Mono) -> Self {
        Poly { terms: self.terms.iter().map(|(a, c)| (a.div(m), c.clone())).collect() }
    }

    fn merge(&self, o: &Self, sign: bool) -> Self {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].0 > b[j].0 {
                out.push(a[i].clone());
                i += 1;
            } else if a[i].0 < b[j].0 {
                let c = if sign { b[j].1.clone() } else { b[j].1.neg() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if sign { a[i].1.add(&b[j].1) } else { a[i].1.sub(&b[j].1) };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if sign { t.1.clone() } else { t.1.neg() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        self.merge(o, true)
    }

    pub fn sub(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        self.merge(o, false)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(*m, c);
        }
        let mut map: MonoMap<C> = MonoMap::default();
        map.reserve(big.len() * 2);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                map.entry(ma.mul(*mb)).or_insert_with(C::zero).add_mul(ca, cb);
            }
        }
        Poly::from_map(map)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Poly::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Sums many polynomials at once.
    pub fn sum<'a, I: IntoIterator<Item = &'a Self>>(items: I) -> Self {
        let mut map: MonoMap<C> = MonoMap::default();
        for p in items {
            for (m, c) in &p.terms {
                match map.get_mut(m) {
                    Some(x) => *x = x.add(c),
                    None => {
                        map.insert(*m, c.clone());
                    }
                }
            }
        }
        Poly::from_map(map)
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))).collect())
    }

    /// Applies a monomial map and recombines.
    pub fn map_monos<F: Fn(Mono) -> Mono>(&self, f: F) -> Self {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (f(*m), c.clone())).collect())
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                out.push((m.with_exp(v, e - 1), c.mul(&C::from_i64(e as i64))));
            }
        }
        Poly::from_terms(out)
    }

    /// Coefficients with respect to `v`, as (exponent, coefficient) pairs in
    /// descending exponent order.
    pub fn coeffs_in(&self, v: Var) -> Vec<(u32, Self)> {
        let mut buckets: Vec<Vec<(Mono, C)>> = vec![Vec::new(); self.degree(v) as usize + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.without(v), c.clone()));
        }
        let mut out = Vec::new();
        for (e, b) in buckets.into_iter().enumerate().rev() {
            if !b.is_empty() {
                // removing one variable preserves relative order only within a
                // fixed exponent of it, which is what each bucket holds
                out.push((e as u32, Poly { terms: b }));
            }
        }
        out
    }

    /// Coefficient of `v^e`.
    pub fn coeff_of(&self, v: Var, e: u32) -> Self {
        let terms: Vec<(Mono, C)> = self
            .terms
            .iter()
            .filter(|t| t.0.exp(v) == e)
            .map(|(m, c)| (m.without(v), c.clone()))
            .collect();
        Poly { terms }
    }

    /// Leading coefficient with respect to `v`.
    pub fn lead_coeff_in(&self, v: Var) -> Self {
        self.coeff_of(v, self.degree(v))
    }

    /// Reassembles `sum c_e * v^e`.
    pub fn from_coeffs_in(v: Var, coeffs: &[(u32, Self)]) -> Self {
        let mut terms = Vec::new();
        for (e, c) in coeffs {
            let mv = Mono::var_pow(v, *e);
            for (m, x) in &c.terms {
                terms.push((m.mul(mv), x.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    /// Sets `v` to the constant `c`.
    pub fn eval_var(&self, v: Var, c: &C) -> Self {
        if c.is_zero() {
            return self.coeff_of(v, 0);
        }
        let d = self.degree(v) as usize;
        let mut pows = vec![C::one(); d + 1];
        for i in 1..=d {
            pows[i] = pows[i - 1].mul(c);
        }
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(m, x)| (m.without(v), x.mul(&pows[m.exp(v) as usize])))
                .collect(),
        )
    }

    /// Replaces `v` by the polynomial `q` (Horner in `v`).
    pub fn compose(&self, v: Var, q: &Self) -> Self {
        let cs = self.coeffs_in(v);
        if cs.is_empty() {
            return Poly::zero();
        }
        let mut acc = Poly::zero();
        let mut prev = cs[0].0 + 1;
        for (e, c) in &cs {
            for _ in 0..(prev - e) {
                acc = acc.mul(q);
            }
            acc = acc.add(c);
            prev = *e;
        }
        for _ in 0..prev {
            acc = acc.mul(q);
        }
        acc
    }

    /// Evaluates at a point given modulo the prime `p`; `None` if a
    /// coefficient is not invertible mod `p`.
    pub fn eval_mod(&self, point: &[u64; NVARS], p: u64) -> Option<u64> {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = c.rem_u64(p)?;
            for (i, &x) in point.iter().enumerate() {
                let e = m.exp(Var(i as u8));
                if e > 0 {
                    t = mulmod(t, powmod(x, e as u64, p), p);
                }
            }
            acc = (acc + t) % p;
        }
        Some(acc)
    }

    /// Exact division by `d`; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut out = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                if !dm.divides(*m) {
                    return None;
                }
                out.push((m.div(*dm), c.try_div(dc)?));
            }
            return Some(Poly { terms: out });
        }
        let (dm, dc) = d.terms[0].clone();
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((rm, rc)) = r.terms.first().cloned() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = rm.div(dm);
            let qc = rc.try_div(&dc)?;
            r = r.sub(&d.mul_term(qm, &qc));
            q.push((qm, qc));
        }
        Some(Poly::from_terms(q))
    }

    /// Pseudo-remainder of `self` by `d` with respect to `v`.
    pub fn prem(&self, d: &Self, v: Var) -> Self {
        let dd = d.degree(v);
        let lcd = d.lead_coeff_in(v);
        let mut r = self.clone();
        let mut steps = (self.degree(v) + 1).saturating_sub(dd);
        while !r.is_zero() && r.degree(v) >= dd {
            let e = r.degree(v);
            let lcr = r.lead_coeff_in(v);
            let shifted = d.mul(&lcr).mul_mono(Mono::var_pow(v, e - dd));
            r = r.mul(&lcd).sub(&shifted);
            steps = steps.saturating_sub(1);
        }
        for _ in 0..steps {
            r = r.mul(&lcd);
        }
        r
    }

    /// Quotient by the linear form `a - b`, or `None` if it does not divide.
    pub fn div_linear(&self, a: Var, b: Var) -> Option<Self> {
        let cs = self.coeffs_in(a);
        let n = match cs.first() {
            Some((n, _)) => *n,
            None => return Some(Poly::zero()),
        };
        if n == 0 {
            return None;
        }
        // dense coefficient list c_n .. c_0
        let mut dense: Vec<Self> = vec![Poly::zero(); n as usize + 1];
        for (e, c) in cs {
            dense[e as usize] = c;
        }
        let xb = Mono::var(b);
        let mut qs: Vec<Self> = vec![Poly::zero(); n as usize];
        let mut carry = Poly::zero();
        for i in (1..=n as usize).rev() {
            let bi = dense[i].add(&carry.mul_mono(xb));
            carry = bi.clone();
            qs[i - 1] = bi;
        }
        let rem = dense[0].add(&carry.mul_mono(xb));
        if !rem.is_zero() {
            return None;
        }
        let coeffs: Vec<(u32, Self)> =
            qs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e as u32, c)).collect();
        Some(Poly::from_coeffs_in(a, &coeffs))
    }

    /// Swaps each variable according to `perm` (indexed by source variable).
    pub fn rename(&self, perm: &[Var; NVARS]) -> Self {
        self.map_monos(|m| rename_mono(m, perm))
    }

    /// True if every monomial has the same total degree in the selected vars.
    pub fn homogeneous_degree_in(&self, mask: u16) -> Option<u32> {
        let mut d = None;
        for (m, _) in &self.terms {
            let e: u32 = (0..NVARS).filter(|i| mask & (1 << i) != 0).map(|i| m.exp(Var(i as u8))).sum();
            match d {
                None => d = Some(e),
                Some(x) if x != e => return None,
                _ => {}
            }
        }
        Some(d.unwrap_or(0))
    }
}

pub fn rename_mono(m: Mono, perm: &[Var; NVARS]) -> Mono {
    let mut e = [0u32; NVARS];
    for i in 0..NVARS {
        let x = m.exp(Var(i as u8));
        if x > 0 {
            e[perm[i].index()] += x;
        }
    }
    Mono::from_exps(&e)
}

/// Identity renaming table.
pub fn identity_perm() -> [Var; NVARS] {
    let mut p = [Var(0); NVARS];
    for (i, x) in p.iter_mut().enumerate() {
        *x = Var(i as u8);
    }
    p
}

impl IntPoly {
    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> (Int, Self) {
        if self.is_zero() {
            return (Int::zero(), Poly::zero());
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = g.neg();
        }
        if g.is_one() {
            return (g, self.clone());
        }
        (g.clone(), Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.div_exact(&g))).collect() })
    }

    pub fn to_rat(&self) -> MultiPoly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, BigRat::from_integer(c.to_big()))).collect() }
    }
}

impl MultiPoly {
    /// Writes `self = c * p` with `p` a primitive integer polynomial whose
    /// leading coefficient is positive.
    pub fn to_int_primitive(&self) -> (BigRat, IntPoly) {
        if self.is_zero() {
            return (<BigRat as Zero>::zero(), Poly::zero());
        }
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            l = num_integer::Integer::lcm(&l, c.denom());
        }
        let ip = Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, Int::from_big(c.numer() * (&l / c.denom()))))
                .collect(),
        };
        let (g, p) = ip.primitive();
        (BigRat::new(g.to_big(), l), p)
    }

    pub fn eval_rat(&self, point: &[(Var, BigRat)]) -> Self {
        let mut p = self.clone();
        for (v, c) in point {
            p = p.eval_var(*v, c);
        }
        p
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if *m == Mono::ONE {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                let s = a.to_string();
                if s.contains('/') {
                    write!(f, "({s})*{m}")?;
                } else {
                    write!(f, "{s}*{m}")?;
                }
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::var::*;

    fn ip(v: Var) -> IntPoly {
        Poly::var(v)
    }

    #[test]
    fn arithmetic_and_order() {
        let x = ip(Z);
        let y = ip(Z1);
        let p = x.add(&y).pow(3);
        assert_eq!(p.len(), 4);
        assert_eq!(p.lm(), Mono::var_pow(Z, 3));
        let q = p.sub(&p);
        assert!(q.is_zero());
        let d = x.sub(&y);
        let prod = p.mul(&d);
        assert_eq!(prod.div_exact(&d).unwrap(), p);
        assert_eq!(prod.div_linear(Z, Z1).unwrap(), p);
        assert!(p.div_linear(Z, Z1).is_none());
    }

    #[test]
    fn compose_and_eval() {
        let x = ip(Z);
        let p = x.pow(2).add(&IntPoly::from_i64(1));
        let q = p.compose(Z, &ip(Z1).add(&IntPoly::one()));
        // (z1+1)^2 + 1
        assert_eq!(q.eval_var(Z1, &Int::from(2)), IntPoly::from_i64(10));
        let r = p.prem(&x.sub(&IntPoly::from_i64(2)), Z);
        assert_eq!(r, IntPoly::from_i64(5));
    }

    #[test]
    fn primitive_from_rationals() {
        let p: MultiPoly = Poly::from_terms(vec![
            (Mono::var(Z), BigRat::new((-2).into(), 3.into())),
            (Mono::ONE, BigRat::new(4.into(), 5.into())),
        ]);
        let (c, q) = p.to_int_primitive();
        assert_eq!(q.lc(), Int::from(5));
        assert_eq!(q.to_rat().scale(&c), p);
    }
}
