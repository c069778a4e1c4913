use cbeta_algebra::{parse, RF};
use cbeta_core::moments::*;
use cbeta_core::ResolventTable;

fn series(m: usize) -> MomentSeries {
    let mut t = ResolventTable::new();
    w2_to_moments(&t.w2_series(m).unwrap()).unwrap()
}

const LOW: [&str; 6] = [
    "k/kappa",
    "(kappa-1)/kappa^2*k^2",
    "(kappa-1)^2/kappa^3*k^3",
    "(kappa-1)/(6*kappa^4)*k^2*(-kappa+(6*kappa^2-11*kappa+6)*k^2)",
    "(kappa-1)^2/(2*kappa^5)*k^3*(-kappa+(2*kappa^2-3*kappa+2)*k^2)",
    "(kappa-1)/(30*kappa^6)*k^2*(kappa^3+kappa^2+kappa+(-30*kappa^3+55*kappa^2-30*kappa)*k^2+(30*kappa^4-91*kappa^3+124*kappa^2-91*kappa+30)*k^4)",
];

#[test]
fn low_orders() {
    let ms = series(5);
    for (j, g) in LOW.iter().enumerate() {
        assert_eq!(ms.series.coeffs()[j], parse(g).unwrap(), "order {j}");
    }
    assert!(vanishes_at_k0(&ms));
    let ps = structure_polys(&ms);
    assert_eq!(ps.polys[0], parse("kappa-1").unwrap());
    assert_eq!(ps.polys[2], parse("(kappa-1)*(kappa^2-11/6*kappa+1)").unwrap());
    assert_eq!(ps.polys[4], parse("(kappa-1)*(kappa^4-91/30*kappa^3+62/15*kappa^2-91/30*kappa+1)").unwrap());
    assert!(reciprocity_check(&ps));
    let mut bad = ps.clone();
    // kappa^2 + 1 is palindromic, so it is still reciprocal at j = 2
    bad.polys[1] = parse("kappa^2+1").unwrap();
    assert!(reciprocity_check(&bad));
    bad.polys[1] = parse("kappa^2+2").unwrap();
    assert!(!reciprocity_check(&bad));
    // extending the series leaves the lower polynomials alone
    let longer = structure_polys(&series(7));
    assert_eq!(&longer.polys[..5], &ps.polys[..]);
}

#[test]
fn exact_low_moments() {
    let ms = series(9);
    let m1 = pade_moment(&ms, 1).unwrap();
    assert_eq!(m1, parse("N/(kappa*N+1-kappa)").unwrap());
    let m2 = pade_moment(&ms, 2).unwrap();
    let want = parse(
        "2/kappa+(kappa-1)/kappa*(2/(kappa*N+1-kappa)-2*(kappa-2)/((kappa+1)*(kappa*N+2-kappa))+2*(2*kappa-1)/((kappa+1)*(kappa*N+1-2*kappa)))",
    )
    .unwrap();
    assert_eq!(m2, want);
    let v = m2.eval(&[(cbeta_algebra::var::N, cbeta_algebra::q(3, 1)), (cbeta_algebra::var::KAPPA, cbeta_algebra::q(2, 1))]).unwrap();
    assert_eq!(v, RF::ratio(23, 15));
    assert!(matches!(pade_moment(&ms, 3), Err(cbeta_core::CoreError::InsufficientOrders { .. })));
    assert!(duality_check(&ms));
    assert!(duality_fixed(&m1) && duality_fixed(&m2));
    let mut c = ms.series.coeffs().to_vec();
    c[4] = c[4].add(&parse("k").unwrap());
    let bad = MomentSeries { series: cbeta_core::InvNSeries::new(c) };
    assert!(!duality_check(&bad));
    let diag = kth_m_diagnostic(&ms, 1);
    assert!(diag.iter().all(|d| d.1));
    assert!(!kth_m_diagnostic(&ms, 2).iter().all(|d| d.1));
}
