//! W_2 expansion against the published coefficients, in (OUT, IN) with
//! s1 = z + z1, s2 = z z1.

use cbeta_algebra::{parse_with, RF};
use cbeta_core::loops::to_zeta;
use cbeta_core::{CoeffKey, DomainConfig, ResolventTable};
use std::collections::HashMap;

pub const GOLDEN: [&str; 10] = [
    "-4/kappa*s2/(z-z1)^2",
    "-4*(kappa-1)/(kappa^2)*s1*s2/(z-z1)^3",
    "-4*(kappa-1)^2/(kappa^3)*s2*(s1^2+2*s2)/(z-z1)^4",
    "-4*(kappa-1)/(kappa^4)*s1*s2/(z-z1)^5*((kappa-1)^2*s1^2+2*(4*kappa^2-7*kappa+4)*s2)",
    "-4*(kappa-1)^2/(kappa^5)*s2/(z-z1)^6*((kappa-1)^2*s1^4+2*(11*kappa^2-16*kappa+11)*s2*s1^2+4*(4*kappa^2-5*kappa+4)*s2^2)",
    "-4*(kappa-1)/(kappa^6)*s1*s2/(z-z1)^7*((kappa-1)^4*s1^4+2*(26*kappa^4-81*kappa^3+111*kappa^2-81*kappa+26)*s2*s1^2+4*(34*kappa^4-95*kappa^3+126*kappa^2-95*kappa+34)*s2^2)",
    "-4*(kappa-1)^2/(kappa^7)*s2/(z-z1)^8*((kappa-1)^4*s1^6+6*(19*kappa^4-52*kappa^3+69*kappa^2-52*kappa+19)*s2*s1^4+72*(10*kappa^4-23*kappa^3+30*kappa^2-23*kappa+10)*s2^2*s1^2+4*(68*kappa^4-140*kappa^3+183*kappa^2-140*kappa+68)*s2^3)",
    "-4*(kappa-1)/(kappa^8)*s1*s2/(z-z1)^9*((kappa-1)^6*s1^6+2*(120*kappa^6-519*kappa^5+1044*kappa^4-1289*kappa^3+1044*kappa^2-519*kappa+120)*s2*s1^4+8*(384*kappa^6-1449*kappa^5+2688*kappa^4-3233*kappa^3+2688*kappa^2-1449*kappa+384)*s2^2*s1^2+8*(496*kappa^6-1722*kappa^5+3051*kappa^4-3616*kappa^3+3051*kappa^2-1722*kappa+496)*s2^3)",
    "-4*(kappa-1)^2/(kappa^9)*s2/(z-z1)^10*((kappa-1)^6*s1^8+2*(247*kappa^6-960*kappa^5+1815*kappa^4-2192*kappa^3+1815*kappa^2-960*kappa+247)*s2*s1^6+12*(968*kappa^6-3117*kappa^5+5390*kappa^4-6311*kappa^3+5390*kappa^2-3117*kappa+968)*s2^2*s1^4+8*(4288*kappa^6-12264*kappa^5+20319*kappa^4-23309*kappa^3+20319*kappa^2-12264*kappa+4288)*s2^3*s1^2+8*(992*kappa^6-2604*kappa^5+4212*kappa^4-4753*kappa^3+4212*kappa^2-2604*kappa+992)*s2^4)",
    "-4*(kappa-1)/(kappa^10)*s1*s2/(z-z1)^11*((kappa-1)^8*s1^8+2*(502*kappa^8-2725*kappa^7+7009*kappa^6-11461*kappa^5+13351*kappa^4-11461*kappa^3+7009*kappa^2-2725*kappa+502)*s2*s1^6+12*(3398*kappa^8-15783*kappa^7+36212*kappa^6-55308*kappa^5+63002*kappa^4-55308*kappa^3+36212*kappa^2-15783*kappa+3398)*s2^2*s1^4+16*(14384*kappa^8-60814*kappa^7+130739*kappa^6-192346*kappa^5+216458*kappa^4-192346*kappa^3+130739*kappa^2-60814*kappa+14384)*s2^3*s1^2+16*(11056*kappa^8-43750*kappa^7+90025*kappa^6-129211*kappa^5+144256*kappa^4-129211*kappa^3+90025*kappa^2-43750*kappa+11056)*s2^4)",
];

pub fn golden(j: usize) -> RF {
    let mut env = HashMap::new();
    env.insert("s1".to_string(), cbeta_algebra::parse("z+z1").unwrap());
    env.insert("s2".to_string(), cbeta_algebra::parse("z*z1").unwrap());
    parse_with(GOLDEN[j], &env).unwrap()
}

#[test]
fn low_orders_match() {
    let mut t = ResolventTable::new();
    let top = std::env::var("CBETA_W2_ORDER").ok().and_then(|s| s.parse().ok()).unwrap_or(5usize);
    for j in 0..=top {
        let start = std::time::Instant::now();
        let w = t.get(&CoeffKey::new(2, -(j as i32), DomainConfig::parse("OUT,IN").unwrap())).unwrap();
        eprintln!("order {j}: {:.2?}, {} entries", start.elapsed(), t.len());
        assert_eq!(w, golden(j), "order {j}");
    }
    let s = t.w2_series(2).unwrap();
    assert_eq!(s.coeffs()[0], cbeta_algebra::parse("-4*zeta/(kappa*(1-zeta)^2)").unwrap());
    assert_eq!(s.coeffs()[1], to_zeta(&golden(1)));
}

#[test]
fn suites_pass() {
    use cbeta_core::loops::symmetry::{residual_suite, symmetry_suite};
    let mut t = ResolventTable::new();
    let top = std::env::var("CBETA_W2_ORDER").ok().and_then(|s| s.parse().ok()).unwrap_or(5usize);
    t.populate(top).unwrap();
    let start = std::time::Instant::now();
    let r = residual_suite(&mut t).unwrap();
    eprintln!("residuals {:.2?} ({} checks)", start.elapsed(), r.len());
    let start = std::time::Instant::now();
    let s = symmetry_suite(&mut t).unwrap();
    eprintln!("symmetry {:.2?} ({} checks)", start.elapsed(), s.len());
    let bad: Vec<_> = r.iter().chain(s.iter()).filter(|c| !c.pass).map(|c| c.name.clone()).collect();
    assert!(bad.is_empty(), "{bad:#?}");
}
