//! The fixed variable alphabet and packed monomials.
//!
//! Every polynomial in the engine lives over the same ordered alphabet
//! `kappa > N > k > z > z1 > ... > z6 > zeta > alpha`. A monomial packs one
//! byte per variable below a total-degree byte, so comparing the packed
//! integers is graded-lex comparison and multiplying monomials is addition.

use std::fmt;

pub const NVARS: usize = 12;

/// A variable of the global alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub u8);

pub const KAPPA: Var = Var(0);
pub const N: Var = Var(1);
pub const K: Var = Var(2);
pub const Z: Var = Var(3);
pub const Z1: Var = Var(4);
pub const Z2: Var = Var(5);
pub const Z3: Var = Var(6);
pub const Z4: Var = Var(7);
pub const Z5: Var = Var(8);
pub const Z6: Var = Var(9);
pub const ZETA: Var = Var(10);
pub const ALPHA: Var = Var(11);

const NAMES: [&str; NVARS] = [
    "kappa", "N", "k", "z", "z1", "z2", "z3", "z4", "z5", "z6", "zeta", "alpha",
];

impl Var {
    pub fn name(self) -> &'static str {
        NAMES[self.0 as usize]
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Looks a name up; `κ` and `ζ` are accepted as aliases.
    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "κ" => return Some(KAPPA),
            "ζ" => return Some(ZETA),
            "α" => return Some(ALPHA),
            _ => {}
        }
        NAMES.iter().position(|n| *n == s).map(|i| Var(i as u8))
    }

    /// The i-th resolvent argument: 0 is `z`, then `z1`, `z2`, ...
    pub fn arg(i: usize) -> Var {
        assert!(i <= 6, "resolvent arity beyond the alphabet");
        Var(3 + i as u8)
    }

    pub fn all() -> impl Iterator<Item = Var> {
        (0..NVARS as u8).map(Var)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

const TOTAL_SHIFT: u32 = 8 * NVARS as u32;

#[inline]
fn shift(v: usize) -> u32 {
    8 * (NVARS - 1 - v) as u32
}

/// A packed monomial. Ordering is graded lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub u128);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn var(v: Var) -> Mono {
        Mono::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Mono {
        assert!(e < 256, "exponent overflow");
        Mono(((e as u128) << TOTAL_SHIFT) | ((e as u128) << shift(v.index())))
    }

    pub fn from_exps(exps: &[u32]) -> Mono {
        let mut m = Mono::ONE;
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                m = m.mul(Mono::var_pow(Var(i as u8), e));
            }
        }
        m
    }

    #[inline]
    pub fn exp(self, v: Var) -> u32 {
        ((self.0 >> shift(v.index())) & 0xff) as u32
    }

    #[inline]
    pub fn degree(self) -> u32 {
        ((self.0 >> TOTAL_SHIFT) & 0xff) as u32
    }

    pub fn exps(self) -> [u32; NVARS] {
        let mut out = [0; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.exp(Var(i as u8));
        }
        out
    }

    #[inline]
    pub fn mul(self, o: Mono) -> Mono {
        let d = self.degree() + o.degree();
        assert!(d < 256, "monomial degree overflow");
        Mono(self.0 + o.0)
    }

    pub fn divides(self, o: Mono) -> bool {
        (0..NVARS).all(|i| self.exp(Var(i as u8)) <= o.exp(Var(i as u8)))
    }

    /// `self / o`; the caller guarantees divisibility.
    #[inline]
    pub fn div(self, o: Mono) -> Mono {
        debug_assert!(o.divides(self));
        Mono(self.0 - o.0)
    }

    pub fn gcd(self, o: Mono) -> Mono {
        let mut e = [0; NVARS];
        for (i, x) in e.iter_mut().enumerate() {
            *x = self.exp(Var(i as u8)).min(o.exp(Var(i as u8)));
        }
        Mono::from_exps(&e)
    }

    pub fn lcm(self, o: Mono) -> Mono {
        let mut e = [0; NVARS];
        for (i, x) in e.iter_mut().enumerate() {
            *x = self.exp(Var(i as u8)).max(o.exp(Var(i as u8)));
        }
        Mono::from_exps(&e)
    }

    /// Drops `v` from the monomial.
    pub fn without(self, v: Var) -> Mono {
        let e = self.exp(v) as u128;
        Mono(self.0 - (e << TOTAL_SHIFT) - (e << shift(v.index())))
    }

    pub fn with_exp(self, v: Var, e: u32) -> Mono {
        self.without(v).mul(Mono::var_pow(v, e))
    }

    /// Bit set of variables that occur.
    pub fn support(self) -> u16 {
        let mut s = 0u16;
        for i in 0..NVARS {
            if self.exp(Var(i as u8)) > 0 {
                s |= 1 << i;
            }
        }
        s
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Mono::ONE {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::all() {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_order_is_graded_lex() {
        let k2 = Mono::var_pow(KAPPA, 2);
        let kz = Mono::var(KAPPA).mul(Mono::var(Z));
        let z3 = Mono::var_pow(Z, 3);
        let z1 = Mono::var(Z1);
        assert!(z3 > k2);
        assert!(k2 > kz);
        assert!(kz > Mono::var(Z));
        assert!(Mono::var(Z) > z1);
        assert!(z1 > Mono::ONE);
    }

    #[test]
    fn exponent_roundtrip() {
        let m = Mono::from_exps(&[1, 0, 2, 0, 3, 0, 0, 0, 0, 0, 4, 5]);
        assert_eq!(m.exps(), [1, 0, 2, 0, 3, 0, 0, 0, 0, 0, 4, 5]);
        assert_eq!(m.degree(), 15);
        assert_eq!(m.without(ZETA).exp(ZETA), 0);
        assert_eq!(m.without(ZETA).degree(), 11);
        assert_eq!(m.with_exp(Z, 7).exp(Z), 7);
        assert!(Mono::var(K).divides(m));
        assert_eq!(m.div(Mono::var(K)).exp(K), 1);
    }
}
