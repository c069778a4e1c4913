use cbeta_algebra::{q, BigRat};
use cbeta_core::ensembles::{cue_moment, n2_moment_at, n3_moment_at};
use cbeta_core::mc::{estimate_moments, run_chain, zscore_suite, Proposal, SamplerConfig};
use cbeta_core::CoreError;
use std::f64::consts::PI;

fn plus_n(m: BigRat, n: i64) -> BigRat {
    m + q(n, 1)
}

#[test]
fn config_validation() {
    let ok = SamplerConfig::new(3, 2.0, 10_000, 1);
    assert!(ok.validate().is_ok());
    for bad in [
        SamplerConfig { n: 1, ..ok.clone() },
        SamplerConfig { beta: 0.0, ..ok.clone() },
        SamplerConfig { beta: -1.0, ..ok.clone() },
        SamplerConfig { sweeps: 0, ..ok.clone() },
        SamplerConfig { chains: 1, batches: 10, ..ok.clone() },
        SamplerConfig { proposal: Proposal::Fixed(0.0), ..ok.clone() },
    ] {
        assert!(matches!(bad.validate(), Err(CoreError::InvalidConfig(_))), "{bad:?}");
    }
    assert_eq!(estimate_moments(&ok, &[1, 0]).unwrap_err(), CoreError::ZeroModeRequested);
}

#[test]
fn deterministic_streams() {
    let cfg = SamplerConfig { burn_in: 500, ..SamplerConfig::new(4, 2.5, 1_000, 42) };
    let (a, ra) = run_chain(&cfg, 200).unwrap();
    let (b, rb) = run_chain(&cfg, 200).unwrap();
    assert_eq!(a, b);
    assert_eq!(ra, rb);
    let (c, _) = run_chain(&SamplerConfig { seed: 43, ..cfg.clone() }, 200).unwrap();
    assert_ne!(a, c);
    let e1 = estimate_moments(&cfg, &[1, 2, 3]).unwrap();
    let e2 = estimate_moments(&cfg, &[1, 2, 3]).unwrap();
    assert_eq!(e1, e2);
}

#[test]
fn auto_width_acceptance() {
    for (n, beta) in [(2, 4.0), (3, 6.0), (4, 2.0), (5, 3.0), (2, 64.0), (6, 1.0)] {
        let cfg = SamplerConfig::new(n, beta, 20_000, 7);
        let (_, acc) = estimate_moments(&cfg, &[1]).unwrap();
        assert!((0.25..=0.55).contains(&acc), "N={n} beta={beta}: acceptance {acc}");
    }
}

#[test]
fn stiff_pair_sits_antipodal() {
    let cfg = SamplerConfig::new(2, 64.0, 20_000, 3);
    let (s, _) = run_chain(&cfg, 20_000).unwrap();
    let mean_gap: f64 = s
        .iter()
        .map(|t| {
            let d = (t[0] - t[1]).rem_euclid(2.0 * PI);
            d.min(2.0 * PI - d)
        })
        .sum::<f64>()
        / s.len() as f64;
    assert!((mean_gap - PI).abs() < 0.2, "mean gap {mean_gap}");
}

#[test]
fn cue_n4() {
    let cfg = SamplerConfig::new(4, 2.0, 200_000, 11);
    let r = zscore_suite(&cfg, 6, |k| Some(plus_n(cue_moment(4, k), 4))).unwrap();
    assert!(r.pass, "{:?}", r.to_json());
}

#[test]
fn small_n_first_moments() {
    let cases: [(usize, f64, BigRat); 3] = [(2, 4.0, q(2, 3)), (3, 6.0, q(3, 7)), (5, 3.0, q(5, 7))];
    for (n, beta, exact) in cases {
        let cfg = SamplerConfig::new(n, beta, 200_000, 5);
        let r = zscore_suite(&cfg, 1, |_| Some(exact.clone())).unwrap();
        assert!(r.pass, "{:?}", r.to_json());
    }
    // the same references from the closed forms
    assert_eq!(plus_n(n2_moment_at(1, &q(2, 1)).unwrap(), 2), q(2, 3));
    assert_eq!(plus_n(n3_moment_at(1, &q(3, 1)).unwrap(), 3), q(3, 7));
}

#[test]
fn n2_higher_k() {
    let cfg = SamplerConfig::new(2, 4.0, 200_000, 9);
    let r = zscore_suite(&cfg, 4, |k| Some(plus_n(n2_moment_at(k, &q(2, 1)).unwrap(), 2))).unwrap();
    assert!(r.pass, "{:?}", r.to_json());
}

#[test]
fn wrong_reference_is_flagged() {
    let cfg = SamplerConfig::new(2, 4.0, 200_000, 5);
    let r = zscore_suite(&cfg, 1, |_| Some(q(2, 3) + q(1, 20))).unwrap();
    assert!(!r.pass);
    assert_eq!(r.failures(), vec![1]);
}

#[test]
fn report_shape() {
    let cfg = SamplerConfig::new(3, 2.0, 5_000, 1);
    let r = zscore_suite(&cfg, 2, |k| Some(plus_n(cue_moment(3, k), 3))).unwrap();
    let v = r.to_json();
    for key in ["config", "per_k", "acceptance_rate", "runtime_sec"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["per_k"].as_array().unwrap().len(), 2);
    assert!(r.per_k.iter().all(|e| e.stderr > 0.0 && e.n_effective > 0.0));
}

#[test]
fn even_in_k() {
    let cfg = SamplerConfig { burn_in: 500, ..SamplerConfig::new(3, 1.5, 5_000, 2) };
    let (e, _) = estimate_moments(&cfg, &[2, -2, 3, -3]).unwrap();
    assert_eq!((e[0].mean, e[0].stderr), (e[1].mean, e[1].stderr));
    assert_eq!((e[2].mean, e[2].stderr), (e[3].mean, e[3].stderr));
}

#[test]
fn references() {
    use cbeta_core::mc::reference_moment;
    assert_eq!(reference_moment(4, &q(1, 1), 5, &[]), Some(q(4, 1)));
    assert_eq!(reference_moment(2, &q(2, 1), 1, &[]), Some(q(2, 3)));
    assert_eq!(reference_moment(3, &q(3, 1), 1, &[]), Some(q(3, 7)));
    assert_eq!(reference_moment(5, &q(3, 2), 1, &[]), None);
    let m1 = cbeta_algebra::parse("N/(kappa*N+1-kappa)").unwrap();
    assert_eq!(reference_moment(5, &q(3, 2), 1, &[m1]), Some(q(5, 7)));
}
