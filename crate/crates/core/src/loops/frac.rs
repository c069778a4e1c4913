//! Rational functions whose denominators factor over a fixed set of atoms.
//!
//! Every resolvent coefficient has a denominator made of powers of `kappa`,
//! of single variables and of differences `x_a - x_b`. Keeping that
//! factorization explicit lets sums and products cancel by trial division
//! instead of general gcds.

use cbeta_algebra::poly::identity_perm;
use cbeta_algebra::var::NVARS;
use cbeta_algebra::{BigRat, Int, IntPoly, Mono, Poly, Var, RF};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// An irreducible denominator factor. `Diff(a, b)` is `a - b` with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Atom {
    Var(Var),
    Diff(Var, Var),
}

impl Atom {
    /// `a - b` oriented canonically, with the sign picked up by reorienting.
    pub fn diff(a: Var, b: Var) -> (Atom, bool) {
        assert_ne!(a, b, "difference of a variable with itself");
        if a < b {
            (Atom::Diff(a, b), false)
        } else {
            (Atom::Diff(b, a), true)
        }
    }

    pub fn poly(self) -> IntPoly {
        match self {
            Atom::Var(v) => Poly::var(v),
            Atom::Diff(a, b) => Poly::var(a).sub(&Poly::var(b)),
        }
    }

    fn involves(self, v: Var) -> bool {
        match self {
            Atom::Var(x) => x == v,
            Atom::Diff(a, b) => a == v || b == v,
        }
    }

    /// Partial derivative of the atom with respect to `v` (0 or ±1).
    fn dv(self, v: Var) -> i64 {
        match self {
            Atom::Var(x) if x == v => 1,
            Atom::Diff(a, _) if a == v => 1,
            Atom::Diff(_, b) if b == v => -1,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FracError {
    PoleAtZero,
    NonvanishingAtZero,
    CoincidentPole,
}

/// `scale * num / prod(atom^e)` in reduced form: `num` primitive with
/// positive leading coefficient and not divisible by any listed atom.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Frac {
    scale: BigRat,
    num: IntPoly,
    den: Vec<(Atom, u32)>,
}

const P: u64 = (1 << 61) - 1;

fn mul_atom(p: &IntPoly, a: Atom, e: u32) -> IntPoly {
    let mut r = p.clone();
    for _ in 0..e {
        r = match a {
            Atom::Var(v) => r.mul_mono(Mono::var(v)),
            Atom::Diff(x, y) => r.mul_mono(Mono::var(x)).sub(&r.mul_mono(Mono::var(y))),
        };
    }
    r
}

fn probe_point(salt: u64) -> [u64; NVARS] {
    let mut s = 0x9e37_79b9_7f4a_7c15_u64 ^ salt.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    let mut pt = [0u64; NVARS];
    for x in pt.iter_mut() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        *x = s % (P - 3) + 2;
    }
    pt
}

/// Quotient by the atom if it divides exactly.
fn try_div_atom(p: &IntPoly, a: Atom) -> Option<IntPoly> {
    match a {
        Atom::Var(v) => {
            if p.min_degree(v) > 0 {
                Some(p.div_mono(Mono::var(v)))
            } else {
                None
            }
        }
        Atom::Diff(x, y) => {
            if !p.contains(x) && !p.contains(y) {
                return None;
            }
            let mut pt = probe_point(x.index() as u64 * 31 + y.index() as u64);
            pt[y.index()] = pt[x.index()];
            if p.eval_mod(&pt, P) != Some(0) {
                return None;
            }
            p.div_linear(x, y)
        }
    }
}

impl Frac {
    pub fn zero() -> Frac {
        Frac { scale: BigRat::zero(), num: Poly::zero(), den: Vec::new() }
    }

    pub fn one() -> Frac {
        Frac::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Frac {
        if c.is_zero() {
            return Frac::zero();
        }
        Frac { scale: c, num: Poly::one(), den: Vec::new() }
    }

    pub fn int(n: i64) -> Frac {
        Frac::constant(BigRat::from_integer(n.into()))
    }

    pub fn var(v: Var) -> Frac {
        Frac::from_poly(BigRat::one(), Poly::var(v))
    }

    /// `scale * p`, for an arbitrary integer polynomial.
    pub fn from_poly(scale: BigRat, p: IntPoly) -> Frac {
        Frac::build(scale, p, Vec::new(), false)
    }

    /// `1 / atom^e`.
    pub fn atom_inv(a: Atom, e: u32) -> Frac {
        Frac { scale: BigRat::one(), num: Poly::one(), den: if e > 0 { vec![(a, e)] } else { Vec::new() } }
    }

    /// `1 / (a - b)^e` for arbitrary orientation.
    pub fn inv_diff(a: Var, b: Var, e: u32) -> Frac {
        let (at, flip) = Atom::diff(a, b);
        let f = Frac::atom_inv(at, e);
        if flip && e % 2 == 1 {
            f.neg()
        } else {
            f
        }
    }

    /// Normalizes content and sign; optionally cancels atoms.
    fn build(scale: BigRat, num: IntPoly, den: Vec<(Atom, u32)>, cancel: bool) -> Frac {
        if num.is_zero() || scale.is_zero() {
            return Frac::zero();
        }
        let (c, num) = num.primitive();
        let mut f = Frac { scale: scale * BigRat::from_integer(c.to_big()), num, den };
        f.den.retain(|t| t.1 > 0);
        if cancel {
            f.cancel();
        }
        f
    }

    fn cancel(&mut self) {
        let mut changed = false;
        for t in self.den.iter_mut() {
            while t.1 > 0 {
                match try_div_atom(&self.num, t.0) {
                    Some(q) => {
                        self.num = q;
                        t.1 -= 1;
                        changed = true;
                    }
                    None => break,
                }
            }
        }
        if changed {
            self.den.retain(|t| t.1 > 0);
            let (c, n) = self.num.primitive();
            self.num = n;
            self.scale *= BigRat::from_integer(c.to_big());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den_atoms(&self) -> &[(Atom, u32)] {
        &self.den
    }

    pub fn scale_factor(&self) -> &BigRat {
        &self.scale
    }

    pub fn term_count(&self) -> usize {
        self.num.len()
    }

    pub fn neg(&self) -> Frac {
        let mut f = self.clone();
        f.scale = -f.scale;
        f
    }

    pub fn scale_by(&self, c: &BigRat) -> Frac {
        if c.is_zero() || self.is_zero() {
            return Frac::zero();
        }
        let mut f = self.clone();
        f.scale *= c;
        f
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        if self.is_zero() || o.is_zero() {
            return Frac::zero();
        }
        let mut a = self.num.clone();
        let mut b = o.num.clone();
        let mut da: BTreeMap<Atom, u32> = self.den.iter().cloned().collect();
        let mut db: BTreeMap<Atom, u32> = o.den.iter().cloned().collect();
        for (t, e) in db.iter_mut() {
            while *e > 0 {
                match try_div_atom(&a, *t) {
                    Some(q) => {
                        a = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        for (t, e) in da.iter_mut() {
            while *e > 0 {
                match try_div_atom(&b, *t) {
                    Some(q) => {
                        b = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        for (t, e) in db {
            *da.entry(t).or_insert(0) += e;
        }
        let den: Vec<(Atom, u32)> = da.into_iter().filter(|t| t.1 > 0).collect();
        Frac::build(&self.scale * &o.scale, a.mul(&b), den, false)
    }

    /// Sum of many fractions over the least common atom denominator.
    pub fn sum(items: &[Frac]) -> Frac {
        let items: Vec<&Frac> = items.iter().filter(|f| !f.is_zero()).collect();
        match items.len() {
            0 => return Frac::zero(),
            1 => return items[0].clone(),
            _ => {}
        }
        let mut lcm: BTreeMap<Atom, u32> = BTreeMap::new();
        let mut l = BigInt::one();
        for f in &items {
            for (a, e) in &f.den {
                let x = lcm.entry(*a).or_insert(0);
                *x = (*x).max(*e);
            }
            l = num_integer::Integer::lcm(&l, f.scale.denom());
        }
        // group by missing factor so each multiplier is applied once
        let mut groups: HashMap<Vec<(Atom, u32)>, Vec<IntPoly>> = HashMap::new();
        for f in &items {
            let own: BTreeMap<Atom, u32> = f.den.iter().cloned().collect();
            let missing: Vec<(Atom, u32)> = lcm
                .iter()
                .map(|(a, e)| (*a, e - own.get(a).copied().unwrap_or(0)))
                .filter(|t| t.1 > 0)
                .collect();
            let s = Int::from_big(f.scale.numer() * (&l / f.scale.denom()));
            groups.entry(missing).or_default().push(f.num.scale(&s));
        }
        let mut parts = Vec::with_capacity(groups.len());
        let mut keys: Vec<_> = groups.keys().cloned().collect();
        keys.sort();
        for k in keys {
            let ps = &groups[&k];
            let mut acc = if ps.len() == 1 { ps[0].clone() } else { Poly::sum(ps.iter()) };
            for (a, e) in &k {
                acc = mul_atom(&acc, *a, *e);
            }
            parts.push(acc);
        }
        let num = Poly::sum(parts.iter());
        let den: Vec<(Atom, u32)> = lcm.into_iter().collect();
        Frac::build(BigRat::new(BigInt::one(), l), num, den, true)
    }

    pub fn add(&self, o: &Frac) -> Frac {
        Frac::sum(&[self.clone(), o.clone()])
    }

    pub fn sub(&self, o: &Frac) -> Frac {
        Frac::sum(&[self.clone(), o.neg()])
    }

    pub fn derivative(&self, v: Var) -> Frac {
        if self.is_zero() {
            return Frac::zero();
        }
        let dep: Vec<(Atom, u32)> = self.den.iter().filter(|t| t.0.involves(v)).cloned().collect();
        if dep.is_empty() {
            return Frac::build(self.scale.clone(), self.num.derivative(v), self.den.clone(), true);
        }
        let mut prod_all = self.num.derivative(v);
        for (a, _) in &dep {
            prod_all = mul_atom(&prod_all, *a, 1);
        }
        let mut terms = vec![prod_all];
        for (i, (a, e)) in dep.iter().enumerate() {
            let mut t = self.num.scale(&Int::from(-(a.dv(v) * *e as i64)));
            for (j, (b, _)) in dep.iter().enumerate() {
                if i != j {
                    t = mul_atom(&t, *b, 1);
                }
            }
            terms.push(t);
        }
        let num = Poly::sum(terms.iter());
        let den: Vec<(Atom, u32)> =
            self.den.iter().map(|(a, e)| (*a, if a.involves(v) { e + 1 } else { *e })).collect();
        Frac::build(self.scale.clone(), num, den, true)
    }

    /// Renames variables simultaneously (`perm` is indexed by source).
    pub fn rename(&self, perm: &[Var; NVARS]) -> Result<Frac, FracError> {
        if self.is_zero() {
            return Ok(Frac::zero());
        }
        let mut sign = false;
        let mut den: BTreeMap<Atom, u32> = BTreeMap::new();
        for (a, e) in &self.den {
            let na = match *a {
                Atom::Var(v) => Atom::Var(perm[v.index()]),
                Atom::Diff(x, y) => {
                    let (x2, y2) = (perm[x.index()], perm[y.index()]);
                    if x2 == y2 {
                        return Err(FracError::CoincidentPole);
                    }
                    let (t, flip) = Atom::diff(x2, y2);
                    if flip && e % 2 == 1 {
                        sign = !sign;
                    }
                    t
                }
            };
            *den.entry(na).or_insert(0) += e;
        }
        let supp = self.num.support()
            | self.den.iter().fold(0u16, |s, (a, _)| {
                s | match a {
                    Atom::Var(v) => 1 << v.index(),
                    Atom::Diff(x, y) => (1 << x.index()) | (1 << y.index()),
                }
            });
        let mut seen = 0u16;
        let mut injective = true;
        for i in 0..NVARS {
            if supp & (1 << i) != 0 {
                let t = 1u16 << perm[i].index();
                if seen & t != 0 {
                    injective = false;
                }
                seen |= t;
            }
        }
        let scale = if sign { -self.scale.clone() } else { self.scale.clone() };
        Ok(Frac::build(scale, self.num.rename(perm), den.into_iter().collect(), !injective))
    }

    /// Substitutes `v -> 1/v` for every variable in `mask`.
    pub fn invert(&self, mask: u16) -> Frac {
        if self.is_zero() {
            return Frac::zero();
        }
        let inm = |v: Var| mask & (1 << v.index()) != 0;
        let mut power = [0i64; NVARS];
        let mut degs = [0u32; NVARS];
        for v in Var::all() {
            if inm(v) {
                degs[v.index()] = self.num.degree(v);
                power[v.index()] = degs[v.index()] as i64;
            }
        }
        let num = self.num.map_monos(|m| {
            let mut e = m.exps();
            for i in 0..NVARS {
                if mask & (1 << i) != 0 {
                    e[i] = degs[i] - e[i];
                }
            }
            Mono::from_exps(&e)
        });
        let mut sign = false;
        let mut den: BTreeMap<Atom, u32> = BTreeMap::new();
        for (a, e) in &self.den {
            match *a {
                Atom::Var(v) if inm(v) => power[v.index()] -= *e as i64,
                Atom::Diff(x, y) if inm(x) && inm(y) => {
                    if e % 2 == 1 {
                        sign = !sign;
                    }
                    power[x.index()] -= *e as i64;
                    power[y.index()] -= *e as i64;
                    *den.entry(*a).or_insert(0) += e;
                }
                Atom::Diff(x, y) if inm(x) || inm(y) => panic!("partial inversion of a difference atom"),
                _ => *den.entry(*a).or_insert(0) += e,
            }
        }
        let mut extra = Mono::ONE;
        for v in Var::all() {
            let p = power[v.index()];
            if p > 0 {
                *den.entry(Atom::Var(v)).or_insert(0) += p as u32;
            } else if p < 0 {
                extra = extra.mul(Mono::var_pow(v, (-p) as u32));
            }
        }
        let scale = if sign { -self.scale.clone() } else { self.scale.clone() };
        Frac::build(scale, num.mul_mono(extra), den.into_iter().collect(), true)
    }

    /// `lim_{v -> 0} f / v`.
    pub fn limit_div_at_zero(&self, v: Var) -> Result<Frac, FracError> {
        if self.is_zero() {
            return Ok(Frac::zero());
        }
        if self.den.iter().any(|t| t.0 == Atom::Var(v)) {
            return Err(FracError::PoleAtZero);
        }
        if !self.num.coeff_of(v, 0).is_zero() {
            return Err(FracError::NonvanishingAtZero);
        }
        Ok(self.at_zero_of(self.num.coeff_of(v, 1), v))
    }

    /// `f(v = 0)`.
    pub fn at_zero(&self, v: Var) -> Result<Frac, FracError> {
        if self.is_zero() {
            return Ok(Frac::zero());
        }
        if self.den.iter().any(|t| t.0 == Atom::Var(v)) {
            return Err(FracError::PoleAtZero);
        }
        Ok(self.at_zero_of(self.num.coeff_of(v, 0), v))
    }

    fn at_zero_of(&self, num: IntPoly, v: Var) -> Frac {
        let mut sign = false;
        let mut den: BTreeMap<Atom, u32> = BTreeMap::new();
        for (a, e) in &self.den {
            let na = match *a {
                Atom::Diff(x, y) if x == v => {
                    if e % 2 == 1 {
                        sign = !sign;
                    }
                    Atom::Var(y)
                }
                Atom::Diff(x, y) if y == v => Atom::Var(x),
                other => other,
            };
            *den.entry(na).or_insert(0) += e;
        }
        let scale = if sign { -self.scale.clone() } else { self.scale.clone() };
        Frac::build(scale, num, den.into_iter().collect(), true)
    }

    pub fn to_rf(&self) -> RF {
        if self.is_zero() {
            return RF::zero();
        }
        let mut d: IntPoly = Poly::one();
        for (a, e) in &self.den {
            d = d.mul(&a.poly().pow(*e));
        }
        RF::from_parts_unchecked(self.num.to_rat().scale(&self.scale), d.to_rat())
    }

    /// Factors the denominator over atoms; `None` if it does not factor.
    pub fn from_rf(f: &RF) -> Option<Frac> {
        if f.is_zero() {
            return Some(Frac::zero());
        }
        let (c, n, mut d) = f.int_parts();
        let vars = d.vars();
        let mut den = Vec::new();
        for &v in &vars {
            let e = d.min_degree(v);
            if e > 0 {
                d = d.div_mono(Mono::var_pow(v, e));
                den.push((Atom::Var(v), e));
            }
        }
        for (i, &a) in vars.iter().enumerate() {
            for &b in &vars[i + 1..] {
                let mut e = 0;
                while let Some(q) = try_div_atom(&d, Atom::Diff(a, b)) {
                    d = q;
                    e += 1;
                }
                if e > 0 {
                    den.push((Atom::Diff(a, b), e));
                }
            }
        }
        let rest = d.constant_value()?;
        den.sort();
        let scale = c / BigRat::from_integer(rest.to_big());
        Some(Frac::build(scale, n, den, false))
    }

    /// Total z-degree of numerator minus denominator, if homogeneous in `mask`.
    pub fn homogeneous_degree(&self, mask: u16) -> Option<i64> {
        let dn = self.num.homogeneous_degree_in(mask)? as i64;
        let mut dd = 0i64;
        for (a, e) in &self.den {
            let deg = match a {
                Atom::Var(v) => (mask >> v.index()) & 1,
                Atom::Diff(x, y) => {
                    let bx = (mask >> x.index()) & 1;
                    let by = (mask >> y.index()) & 1;
                    if bx != by {
                        return None;
                    }
                    bx
                }
            } as i64;
            dd += deg * *e as i64;
        }
        Some(dn - dd)
    }

    /// Numerator sign convention check used by tests.
    pub fn is_reduced(&self) -> bool {
        if self.is_zero() {
            return self.den.is_empty();
        }
        !self.num.lc().is_negative()
            && self.num.content().is_one()
            && self.den.iter().all(|(a, e)| *e > 0 && try_div_atom(&self.num, *a).is_none())
    }
}

/// A renaming table sending `from[i] -> to[i]` and fixing everything else.
pub fn renaming(pairs: &[(Var, Var)]) -> [Var; NVARS] {
    let mut p = identity_perm();
    for (a, b) in pairs {
        p[a.index()] = *b;
    }
    p
}

/// Helper for readable construction in tests and seeds.
pub fn ratio(n: i64, d: i64) -> BigRat {
    BigRat::new(n.into(), d.into())
}
