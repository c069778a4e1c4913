//! Integers that stay on the machine word until they overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// An arbitrary-precision integer with an `i64` fast path.
///
/// The `Big` variant never holds a value that fits in an `i64`, so derived
/// equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn into_big(self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(v),
            Int::Big(b) => b,
        }
    }

    #[inline]
    pub fn zero() -> Int {
        Int::Small(0)
    }

    #[inline]
    pub fn one() -> Int {
        Int::Small(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::Big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::Big(b.abs()),
        }
    }

    #[inline]
    pub fn add(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_add(*b) {
                return Int::Small(c);
            }
        }
        Int::from_big(self.to_big() + o.to_big())
    }

    #[inline]
    pub fn sub(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_sub(*b) {
                return Int::Small(c);
            }
        }
        Int::from_big(self.to_big() - o.to_big())
    }

    #[inline]
    pub fn mul(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_mul(*b) {
                return Int::Small(c);
            }
        }
        Int::from_big(self.to_big() * o.to_big())
    }

    #[inline]
    pub fn neg(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b),
        }
    }

    /// `self += a * b`
    #[inline]
    pub fn add_mul(&mut self, a: &Int, b: &Int) {
        if let (Int::Small(s), Int::Small(x), Int::Small(y)) = (&*self, a, b) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(r) = s.checked_add(p) {
                    *self = Int::Small(r);
                    return;
                }
            }
        }
        *self = self.add(&a.mul(b));
    }

    /// Exact division; the caller guarantees `o` divides `self`.
    pub fn div_exact(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_div(*b) {
                debug_assert_eq!(a % b, 0);
                return Int::Small(c);
            }
        }
        let (q, r) = self.to_big().div_rem(&o.to_big());
        debug_assert!(r.is_zero());
        Int::from_big(q)
    }

    pub fn divides(&self, o: &Int) -> bool {
        if self.is_zero() {
            return o.is_zero();
        }
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(r) = b.checked_rem(*a) {
                return r == 0;
            }
        }
        (o.to_big() % self.to_big()).is_zero()
    }

    /// Non-negative gcd.
    pub fn gcd(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if *a != i64::MIN && *b != i64::MIN {
                let mut x = a.unsigned_abs();
                let mut y = b.unsigned_abs();
                while y != 0 {
                    let t = x % y;
                    x = y;
                    y = t;
                }
                return Int::Small(x as i64);
            }
        }
        Int::from_big(self.to_big().gcd(&o.to_big()))
    }

    pub fn lcm(&self, o: &Int) -> Int {
        if self.is_zero() || o.is_zero() {
            return Int::zero();
        }
        let g = self.gcd(o);
        self.div_exact(&g).mul(o).abs()
    }

    pub fn pow(&self, e: u32) -> Int {
        let mut r = Int::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Residue modulo a prime below 2^62.
    pub fn rem_u64(&self, p: u64) -> u64 {
        match self {
            Int::Small(v) => (*v as i128).rem_euclid(p as i128) as u64,
            Int::Big(b) => {
                let r = b.mod_floor(&BigInt::from(p));
                r.to_u64().unwrap()
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Int::Small(v) => *v as f64,
            Int::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Int::Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Int {
        Int::from_big(b)
    }
}

impl Ord for Int {
    fn cmp(&self, o: &Int) -> Ordering {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, o: &Int) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Zero for Int {
    fn zero() -> Int {
        Int::Small(0)
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Int {
        Int::Small(1)
    }
}

impl std::ops::Add for Int {
    type Output = Int;
    fn add(self, o: Int) -> Int {
        Int::add(&self, &o)
    }
}

impl std::ops::Mul for Int {
    type Output = Int;
    fn mul(self, o: Int) -> Int {
        Int::mul(&self, &o)
    }
}
