//! Rational functions in canonical form.
//!
//! Canonical form: numerator and denominator coprime, the denominator a
//! primitive integer polynomial with positive graded-lex leading coefficient,
//! the numerator carrying any rational scale. Zero is `0/1`. The form is
//! unique, so structural equality is mathematical equality.

use crate::error::{AlgebraError, Result};
use crate::gcd::{gcd, gcd_prim};
use crate::int::Int;
use crate::poly::{BigRat, IntPoly, MultiPoly, Poly};
use crate::var::{Mono, Var, NVARS};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

pub type RF = RationalFunction;

fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

impl RationalFunction {
    pub fn zero() -> Self {
        RF { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RF { num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(c: BigRat) -> Self {
        RF { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn int(n: i64) -> Self {
        RF::constant(BigRat::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        RF::constant(rat(n, d))
    }

    pub fn var(v: Var) -> Self {
        RF { num: Poly::var(v), den: Poly::one() }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RF { num: p, den: Poly::one() }
    }

    pub fn from_int_poly(p: &IntPoly) -> Self {
        RF::from_poly(p.to_rat())
    }

    /// Builds `num/den` and normalizes.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RF::zero());
        }
        let (cn, n) = num.to_int_primitive();
        let (cd, d) = den.to_int_primitive();
        Ok(RF::from_int_parts(cn / cd, n, d))
    }

    /// `scale * n / d` with `n`, `d` integer polynomials; cancels their gcd.
    pub fn from_int_parts(scale: BigRat, n: IntPoly, d: IntPoly) -> Self {
        if n.is_zero() || scale.is_zero() {
            return RF::zero();
        }
        let g = gcd_prim(&n.primitive().1, &d.primitive().1);
        let (n, d) = if g.is_one() {
            (n, d)
        } else {
            (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
        };
        RF::from_coprime(scale, n, d)
    }

    /// `scale * n / d` where `n` and `d` are already coprime.
    pub fn from_coprime(scale: BigRat, n: IntPoly, d: IntPoly) -> Self {
        if n.is_zero() || scale.is_zero() {
            return RF::zero();
        }
        let (cd, d) = d.primitive();
        let (cn, n) = n.primitive();
        let s = scale * BigRat::new(cn.to_big(), cd.to_big());
        RF { num: n.to_rat().scale(&s), den: d.to_rat() }
    }

    /// Trusts that `(num, den)` is already canonical.
    pub fn from_parts_unchecked(num: MultiPoly, den: MultiPoly) -> Self {
        let r = RF { num, den };
        debug_assert!(r.is_canonical(), "not canonical: {r}");
        r
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    /// Integer primitive parts of numerator and denominator with the scale.
    pub fn int_parts(&self) -> (BigRat, IntPoly, IntPoly) {
        let (c, n) = self.num.to_int_primitive();
        let d = self.den.to_int_primitive().1;
        (c, n, d)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn constant_value(&self) -> Option<BigRat> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn support(&self) -> u16 {
        self.num.support() | self.den.support()
    }

    pub fn vars(&self) -> Vec<Var> {
        let s = self.support();
        Var::all().filter(|v| s & (1 << v.index()) != 0).collect()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    /// Checks the canonical-form invariants.
    pub fn is_canonical(&self) -> bool {
        if self.den.is_zero() {
            return false;
        }
        if self.num.is_zero() {
            return self.den.is_one();
        }
        if !self.den.terms().iter().all(|(_, c)| c.is_integer()) {
            return false;
        }
        let d = self.den.map_coeffs(|c| Int::from_big(c.to_integer()));
        if !d.content().is_one() || d.lc().is_negative() {
            return false;
        }
        let (_, n) = self.num.to_int_primitive();
        gcd_prim(&n, &d).is_one()
    }

    /// Re-derives the canonical form from scratch.
    pub fn normalize(&self) -> Self {
        RF::new(self.num.clone(), self.den.clone()).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        RF { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return RF::zero();
        }
        RF { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RF::new(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        let (ca, a, b) = self.int_parts();
        let (cc, c, d) = o.int_parts();
        // a/b + c/d with g = gcd(b, d): only g can share factors with the sum
        let g = gcd_prim(&b, &d);
        let b1 = b.div_exact(&g).unwrap();
        let d1 = d.div_exact(&g).unwrap();
        let l = lcm_int(ca.denom(), cc.denom());
        let sa = Int::from_big(ca.numer() * (&l / ca.denom()));
        let sc = Int::from_big(cc.numer() * (&l / cc.denom()));
        let num = a.mul(&d1).scale(&sa).add(&c.mul(&b1).scale(&sc));
        let scale = BigRat::new(BigInt::one(), l);
        if num.is_zero() {
            return RF::zero();
        }
        if g.is_one() {
            return RF::from_coprime(scale, num, b.mul(&d1));
        }
        let (cn, num) = num.primitive();
        let h = gcd_prim(&num, &g);
        let num = num.div_exact(&h).unwrap();
        let g1 = g.div_exact(&h).unwrap();
        RF::from_coprime(scale * BigRat::from_integer(cn.to_big()), num, b1.mul(&d1).mul(&g1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RF::zero();
        }
        if self.is_polynomial() && o.is_polynomial() {
            return RF { num: self.num.mul(&o.num), den: Poly::one() };
        }
        let (ca, a, b) = self.int_parts();
        let (cc, c, d) = o.int_parts();
        let g1 = gcd_prim(&a, &d);
        let g2 = gcd_prim(&c, &b);
        let a = a.div_exact(&g1).unwrap();
        let d = d.div_exact(&g1).unwrap();
        let c = c.div_exact(&g2).unwrap();
        let b = b.div_exact(&g2).unwrap();
        RF::from_coprime(ca * cc, a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (c, n, d) = self.int_parts();
        Ok(RF::from_coprime(c.recip(), d, n))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let (c, n, d) = self.int_parts();
        let mut s = BigRat::one();
        for _ in 0..e {
            s *= &c;
        }
        RF::from_coprime(s, n.pow(e as u32), d.pow(e as u32))
    }

    /// Simultaneous substitution of variables by rational functions.
    pub fn substitute(&self, bindings: &[(Var, RF)]) -> Result<Self> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let (nn, nd) = subst_poly(&self.num, bindings);
        let (dn, dd) = subst_poly(&self.den, bindings);
        if dn.is_zero() {
            return Err(AlgebraError::SubstitutionPole);
        }
        // (nn/nd) / (dn/dd)
        RF::new(nn.mul(&dd), nd.mul(&dn))
    }

    /// Substitution by name; fails on names outside the alphabet.
    pub fn substitute_named(&self, bindings: &[(&str, RF)]) -> Result<Self> {
        let mut b = Vec::with_capacity(bindings.len());
        for (name, f) in bindings {
            let v = Var::from_name(name).ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
            b.push((v, f.clone()));
        }
        self.substitute(&b)
    }

    /// Sets variables to rational constants.
    pub fn eval(&self, point: &[(Var, BigRat)]) -> Result<Self> {
        let n = self.num.eval_rat(point);
        let d = self.den.eval_rat(point);
        if d.is_zero() {
            return Err(AlgebraError::SubstitutionPole);
        }
        RF::new(n, d)
    }

    /// Evaluates to a number; every variable must be bound.
    pub fn eval_number(&self, point: &[(Var, BigRat)]) -> Result<BigRat> {
        let r = self.eval(point)?;
        r.constant_value()
            .ok_or_else(|| AlgebraError::UnknownVariable(format!("{:?} left unbound", r.vars())))
    }

    pub fn derivative(&self, v: Var) -> Self {
        if !self.contains(v) {
            return RF::zero();
        }
        let n1 = self.num.derivative(v).mul(&self.den);
        let d1 = self.den.derivative(v);
        if d1.is_zero() {
            return RF::new(self.num.derivative(v), self.den.clone()).unwrap();
        }
        let top = n1.sub(&self.num.mul(&d1));
        RF::new(top, self.den.mul(&self.den)).unwrap()
    }

    /// Derivative with the variable given by name.
    pub fn derivative_named(&self, name: &str) -> Result<Self> {
        let v = Var::from_name(name).ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(self.derivative(v))
    }

    /// `lim_{v -> 0} f / v` for `f` vanishing at `v = 0`.
    pub fn limit_div_at_zero(&self, v: Var) -> Result<Self> {
        if self.is_zero() {
            return Ok(RF::zero());
        }
        let d0 = self.den.coeff_of(v, 0);
        if d0.is_zero() {
            return Err(AlgebraError::PoleAtZero);
        }
        if !self.num.coeff_of(v, 0).is_zero() {
            return Err(AlgebraError::NonvanishingAtZero);
        }
        RF::new(self.num.coeff_of(v, 1), d0)
    }

    /// Decomposes in `v` about `pole`: returns `(m, c_m)` with
    /// `f = sum c_m (v - pole)^(-m)`; a polynomial part is tagged `m = 0`.
    pub fn partial_fractions(&self, v: Var, pole: &BigRat) -> Result<Vec<(u32, RF)>> {
        if self.is_zero() {
            return Ok(Vec::new());
        }
        let (c, n, d) = self.int_parts();
        let p = pole.clone();
        let lin: IntPoly = Poly::from_terms(vec![
            (Mono::var(v), Int::from_big(p.denom().clone())),
            (Mono::ONE, Int::from_big(-p.numer().clone())),
        ]);
        let mut rest = d;
        let mut order = 0u32;
        while rest.contains(v) {
            match rest.div_exact(&lin) {
                Some(q) => {
                    rest = q;
                    order += 1;
                }
                None => return Err(AlgebraError::UnsupportedPoleStructure),
            }
        }
        // f = c * n / (rest * q^order * (v - pole)^order)
        let mut qpow = BigRat::one();
        for _ in 0..order {
            qpow *= BigRat::from_integer(p.denom().clone());
        }
        let restf = RF::new(rest.to_rat().scale(&qpow), Poly::one()).unwrap();
        let shifted = n.to_rat().compose(v, &Poly::var(v).add(&Poly::constant(p.clone())));
        let mut out = Vec::new();
        let mut poly_part: Vec<(u32, MultiPoly)> = Vec::new();
        for (e, a) in shifted.coeffs_in(v).into_iter().rev() {
            if e < order {
                let cf = RF::from_poly(a.scale(&c)).div(&restf).unwrap();
                out.push((order - e, cf));
            } else {
                poly_part.push((e - order, a));
            }
        }
        out.sort_by_key(|t| t.0);
        if !poly_part.is_empty() {
            let pp = MultiPoly::from_coeffs_in(v, &poly_part).compose(v, &Poly::var(v).sub(&Poly::constant(p)));
            out.insert(0, (0, RF::from_poly(pp.scale(&c)).div(&restf).unwrap()));
        }
        Ok(out)
    }

    /// Renames variables via a table indexed by source variable.
    pub fn rename(&self, perm: &[Var; NVARS]) -> Self {
        RF::new(self.num.rename(perm), self.den.rename(perm)).unwrap()
    }

    pub fn total_degree_num(&self) -> u32 {
        self.num.total_degree()
    }
}

/// Inverse of [`RationalFunction::partial_fractions`].
pub fn reassemble_partial_fractions(parts: &[(u32, RF)], v: Var, pole: &BigRat) -> RF {
    let base = RF::from_poly(Poly::var(v).sub(&Poly::constant(pole.clone())));
    let mut acc = RF::zero();
    for (m, c) in parts {
        if *m == 0 {
            acc = acc.add(c);
        } else {
            acc = acc.add(&c.mul(&base.pow(-(*m as i32))));
        }
    }
    acc
}

fn lcm_int(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::lcm(a, b)
}

/// Substitutes into a polynomial; returns (numerator, denominator).
fn subst_poly(p: &MultiPoly, bindings: &[(Var, RF)]) -> (MultiPoly, MultiPoly) {
    let degs: Vec<u32> = bindings.iter().map(|(v, _)| p.degree(*v)).collect();
    let mut nump: Vec<Vec<MultiPoly>> = Vec::new();
    let mut denp: Vec<Vec<MultiPoly>> = Vec::new();
    for ((_, f), &d) in bindings.iter().zip(&degs) {
        let mut np = vec![MultiPoly::one()];
        let mut dp = vec![MultiPoly::one()];
        for i in 1..=d as usize {
            np.push(np[i - 1].mul(f.num()));
            dp.push(dp[i - 1].mul(f.den()));
        }
        nump.push(np);
        denp.push(dp);
    }
    let mut cache: HashMap<Vec<u32>, MultiPoly> = HashMap::new();
    let mut acc: Vec<MultiPoly> = Vec::new();
    for (m, c) in p.terms() {
        let mut rest = *m;
        let mut key = Vec::with_capacity(bindings.len());
        for (v, _) in bindings {
            key.push(m.exp(*v));
            rest = rest.without(*v);
        }
        let factor = cache
            .entry(key.clone())
            .or_insert_with(|| {
                let mut f = MultiPoly::one();
                for (i, &e) in key.iter().enumerate() {
                    f = f.mul(&nump[i][e as usize]).mul(&denp[i][(degs[i] - e) as usize]);
                }
                f
            })
            .clone();
        acc.push(factor.mul_term(rest, c));
    }
    let num = MultiPoly::sum(acc.iter());
    let mut den = MultiPoly::one();
    for (i, &d) in degs.iter().enumerate() {
        den = den.mul(&denp[i][d as usize]);
    }
    (num, den)
}

impl From<BigRat> for RationalFunction {
    fn from(c: BigRat) -> Self {
        RF::constant(c)
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        RF::int(n)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() == 1 {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        // a bare factor may follow `/`; a product or scaled monomial may not
        let bare = self.den.len() == 1
            && (self.den.is_constant() || (self.den.lc().is_one() && self.den.lm().exps().iter().filter(|&&e| e > 0).count() == 1));
        if bare {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer polynomial gcd re-exported for callers holding rational polys.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let (_, x) = a.to_int_primitive();
    let (_, y) = b.to_int_primitive();
    gcd(&x, &y).to_rat()
}
