//! Rewriting of two-point coefficients, symmetric in `(z, z1)`, in terms of
//! `s1 = z + z1` and `s2 = z z1`.

use cbeta_algebra::var::{Z, Z1, Z5, Z6};
use cbeta_algebra::{MultiPoly, Poly, Var, RF};

/// Placeholder variables carrying `s1` and `s2`.
pub const S1: Var = Z5;
pub const S2: Var = Z6;

fn swapped(p: &MultiPoly) -> MultiPoly {
    let mut perm = cbeta_algebra::poly::identity_perm();
    perm[Z.index()] = Z1;
    perm[Z1.index()] = Z;
    p.rename(&perm)
}

/// A symmetric polynomial in `(z, z1)` as a polynomial in `(s1, s2)`.
pub fn symmetric_poly(p: &MultiPoly) -> Option<MultiPoly> {
    if p.contains(S1) || p.contains(S2) || swapped(p) != *p {
        return None;
    }
    let s1 = Poly::var(Z).add(&Poly::var(Z1));
    let s2 = Poly::var(Z).mul(&Poly::var(Z1));
    let mut rest = p.clone();
    let mut out = MultiPoly::zero();
    while !rest.is_zero() {
        let (a, ca) = rest.coeffs_in(Z).into_iter().next()?;
        let (b, d) = ca.coeffs_in(Z1).into_iter().next()?;
        if b > a {
            return None;
        }
        rest = rest.sub(&d.mul(&s1.pow(a - b)).mul(&s2.pow(b)));
        out = out.add(&d.mul(&Poly::var(S1).pow(a - b)).mul(&Poly::var(S2).pow(b)));
    }
    Some(out)
}

/// `f` in `(s1, s2)`; `None` unless `f` is symmetric.
pub fn to_s1s2(f: &RF) -> Option<RF> {
    RF::new(symmetric_poly(f.num())?, symmetric_poly(f.den())?).ok()
}

/// `f = g(s1, s2)/(z - z1)^e` with `g` symmetric, as a display string.
pub fn s1s2_string(f: &RF) -> Option<String> {
    let diff = RF::var(Z).sub(&RF::var(Z1));
    let mut g = f.clone();
    for e in 0..=64 {
        if !g.den().compose(Z1, &Poly::var(Z)).is_zero() {
            let h = to_s1s2(&g)?.to_string().replace(S1.name(), "s1").replace(S2.name(), "s2");
            return Some(if e == 0 { h } else { format!("({h})/(z-z1)^{e}") });
        }
        g = g.mul(&diff);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use cbeta_algebra::{parse, parse_with};
    use std::collections::HashMap;

    #[test]
    fn round_trip() {
        let f = parse("(z^2+z1^2+3*z*z1*kappa)/(kappa*z*z1*(z-z1)^2)").unwrap();
        let s = s1s2_string(&f).unwrap();
        let mut env = HashMap::new();
        env.insert("s1".into(), parse("z+z1").unwrap());
        env.insert("s2".into(), parse("z*z1").unwrap());
        assert_eq!(parse_with(&s, &env).unwrap(), f);
        assert!(to_s1s2(&parse("z^2+z1").unwrap()).is_none());
        let odd = parse("kappa*z*z1*(z+z1)/(z-z1)^3").unwrap();
        let s = s1s2_string(&odd).unwrap();
        assert!(s.ends_with("/(z-z1)^3"), "{s}");
        assert_eq!(parse_with(&s, &env).unwrap(), odd);
    }
}
