use cbeta_algebra::var::{KAPPA, N};
use cbeta_algebra::{MultiPoly, Poly, RF};
use cbeta_core::{pade_is_exact, pade_j_jplus1, InvNSeries};
use proptest::prelude::*;

/// Small polynomial in `kappa`.
fn kpoly() -> impl Strategy<Value = RF> {
    prop::collection::vec(-3i64..=3, 1..=2).prop_map(|cs| {
        let mut p = MultiPoly::zero();
        for (e, c) in cs.into_iter().enumerate() {
            p = p.add(&MultiPoly::from_i64(c).mul(&Poly::var(KAPPA).pow(e as u32)));
        }
        RF::from_poly(p)
    })
}

/// `P(x)/Q(x)` with `x = 1/N`, `deg P <= j`, `deg Q <= j + 1`, `Q(0) = 1`.
fn rational(j: usize) -> impl Strategy<Value = RF> {
    (prop::collection::vec(kpoly(), j + 1), prop::collection::vec(kpoly(), j + 1)).prop_map(|(p, q)| {
        let x = RF::var(N).pow(-1);
        let horner = |cs: &[RF]| cs.iter().rev().fold(RF::zero(), |acc, c| acc.mul(&x).add(c));
        let mut qq = vec![RF::one()];
        qq.extend(q);
        horner(&p).div(&horner(&qq)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pade_refits_its_own_rational((j, f) in (0usize..=2).prop_flat_map(|j| (Just(j), rational(j)))) {
        let s = InvNSeries::expand(&f, 2 * j + 3).unwrap();
        let p = pade_j_jplus1(&s, j).unwrap();
        prop_assert_eq!(p.rational(), f);
        prop_assert!(pade_is_exact(&s, &p));
    }

    #[test]
    fn expansion_is_multiplicative(f in rational(1), g in rational(1)) {
        let m = 5;
        let lhs = InvNSeries::expand(&f.mul(&g), m).unwrap();
        let rhs = InvNSeries::expand(&f, m).unwrap().mul(&InvNSeries::expand(&g, m).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = InvNSeries::expand(&f.add(&g), m).unwrap();
        prop_assert_eq!(sum, InvNSeries::expand(&f, m).unwrap().add(&InvNSeries::expand(&g, m).unwrap()).unwrap());
    }

    #[test]
    fn json_round_trip(f in rational(1)) {
        let s = InvNSeries::expand(&f, 4).unwrap();
        prop_assert_eq!(InvNSeries::from_json(&s.to_json()).unwrap(), s);
    }
}
