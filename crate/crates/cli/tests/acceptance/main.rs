//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

mod data;

use cbeta_algebra::var::{KAPPA, N, ZETA};
use cbeta_algebra::{parse, parse_with, q, BigRat, RF};
use cbeta_core::ensembles::{coe_moment, cse_moment, oracle_suite};
use cbeta_core::loops::symmetry::{residual_suite, symmetry_suite};
use cbeta_core::mc::{zscore_suite, SamplerConfig};
use cbeta_core::moments::*;
use cbeta_core::{CoreError, DomainConfig, InvNSeries, ResolventTable};
use serde_json::Value;
use std::collections::HashMap;
use std::process::Command;
use std::time::Instant;

struct Ctx {
    table: ResolventTable,
    w2: InvNSeries,
    ms: MomentSeries,
}

fn w2_golden(j: usize) -> RF {
    let mut env = HashMap::new();
    env.insert("s1".to_string(), parse("z+z1").unwrap());
    env.insert("s2".to_string(), parse("z*z1").unwrap());
    parse_with(data::W2[j], &env).unwrap()
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn golden_expansion(ctx: &mut Ctx) -> Outcome {
    let t0 = Instant::now();
    ResolventTable::new().w2_series(6).map_err(|e| e.to_string())?;
    let t6 = t0.elapsed().as_secs_f64();
    ensure(t6 < 600.0, format!("order 6 took {t6:.1}s"))?;

    let out = Command::new(env!("CARGO_BIN_EXE_cbeta"))
        .args(["expand", "--order", "9", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), format!("expand exited with {:?}", out.status.code()))?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let rows = v["table"].as_array().ok_or("no table")?;
    for j in 0..10 {
        let row = rows
            .iter()
            .find(|r| r["l"] == 2 && r["m"] == -(j as i64) && r["domain"].as_str().and_then(DomainConfig::parse) == DomainConfig::parse("OUT,IN"))
            .ok_or(format!("order {j} missing"))?;
        let f = RF::from_json(&row["ratfunc"]).map_err(|e| e.to_string())?;
        ensure(f == w2_golden(j), format!("order {j} differs"))?;
    }
    // bit-exact round trip against an identically built in-memory table
    let imported = ResolventTable::from_json(&v["table"]).map_err(|e| e.to_string())?;
    residual_suite(&mut ctx.table).map_err(|e| e.to_string())?;
    ensure(imported.export() == ctx.table.export(), "imported table differs")?;
    ensure(imported.to_json() == v["table"], "re-export differs")?;
    Ok(format!("orders 0..9 exact, order 6 in {t6:.2}s, table round-trips"))
}

fn golden_moments(ctx: &mut Ctx) -> Outcome {
    for (j, g) in data::MOMENTS.iter().enumerate() {
        ensure(ctx.ms.series.coeffs()[j] == parse(g).unwrap(), format!("order {j} differs"))?;
    }
    Ok("orders 0..9 exact".into())
}

fn structure(ctx: &mut Ctx) -> Outcome {
    let ps = structure_polys(&ctx.ms);
    ensure(ps.polys.len() == 9, "expected p_1..p_9")?;
    for (i, r) in data::REDUCED.iter().enumerate() {
        let j = i + 1;
        let e = if j % 2 == 1 { 1 } else { 2 };
        let want = parse(r).unwrap().mul(&parse("kappa-1").unwrap().pow(e));
        ensure(ps.polys[i] == want, format!("p_{j} differs"))?;
    }
    ensure(reciprocity_check(&ps), "reciprocity fails")?;
    Ok("p_1..p_9 exact, reciprocal".into())
}

fn pade(ctx: &mut Ctx) -> Outcome {
    for (k, g) in [(1, data::M1), (2, data::M2)] {
        let f = pade_moment(&ctx.ms, k).map_err(|e| e.to_string())?;
        let want = parse(g).unwrap().add(&RF::var(N));
        ensure(f == want, format!("m_{k} differs"))?;
        // expansion agrees with every available order
        let lead = RF::int(k).mul(&RF::var(KAPPA).pow(-1));
        let e = InvNSeries::expand(&f.sub(&lead), ctx.ms.order()).map_err(|e| e.to_string())?;
        let mut s = ctx.ms.at_k(k).coeffs().to_vec();
        s[0] = s[0].sub(&lead);
        ensure(e.coeffs() == &s[..], format!("m_{k} expansion differs"))?;
    }
    match pade_moment(&ctx.ms, 3) {
        Err(CoreError::InsufficientOrders { .. }) => Ok("m_1, m_2 exact; k=3 insufficient".into()),
        other => Err(format!("k=3 gave {other:?}")),
    }
}

fn duality(ctx: &mut Ctx) -> Outcome {
    ensure(duality_check(&ctx.ms), "series duality fails")?;
    for g in [data::M1, data::M2] {
        ensure(duality_fixed(&parse(g).unwrap().add(&RF::var(N))), "exact form not fixed")?;
    }
    Ok("series and m_1, m_2 fixed".into())
}

fn oracles(ctx: &mut Ctx) -> Outcome {
    let t0 = Instant::now();
    let m1 = parse(data::M1).unwrap();
    let m2 = parse(data::M2).unwrap();
    for n in 2..=50i64 {
        let at = |f: &RF, kap: BigRat| f.eval_number(&[(N, q(n, 1)), (KAPPA, kap)]).unwrap();
        for (k, f) in [(1, &m1), (2, &m2)] {
            ensure(cse_moment(n as u64, k) == at(f, q(2, 1)), format!("CSE N={n} k={k}"))?;
            ensure(coe_moment(n as u64, k) == at(f, q(1, 2)), format!("COE N={n} k={k}"))?;
        }
    }
    for (i, g) in data::N2.iter().enumerate() {
        let f = cbeta_core::ensembles::n2_moment(i as i64 + 1).add(&RF::int(2));
        ensure(f == parse(g).unwrap(), format!("N=2 k={}", i + 1))?;
    }
    for (i, g) in data::N3.iter().enumerate() {
        let f = cbeta_core::ensembles::n3_moment(i as i64 + 1).map_err(|e| e.to_string())?.add(&RF::int(3));
        ensure(f == parse(g).unwrap(), format!("N=3 k={}", i + 1))?;
    }
    let forms = exact_forms(&ctx.ms);
    let checks = oracle_suite(&forms);
    let bad: Vec<_> = checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
    ensure(bad.is_empty(), format!("failed: {bad:?}"))?;
    Ok(format!("{} oracle checks in {:.1}s", checks.len() + 12, t0.elapsed().as_secs_f64()))
}

fn suites(ctx: &mut Ctx) -> Outcome {
    let r = residual_suite(&mut ctx.table).map_err(|e| e.to_string())?;
    let s = symmetry_suite(&mut ctx.table).map_err(|e| e.to_string())?;
    let bad: Vec<_> = r.iter().chain(&s).filter(|c| !c.pass).map(|c| c.name.clone()).collect();
    ensure(bad.is_empty(), format!("failed: {bad:?}"))?;
    Ok(format!("{} residual and {} symmetry checks", r.len(), s.len()))
}

fn monte_carlo(_: &mut Ctx) -> Outcome {
    let t0 = Instant::now();
    let m1 = parse(data::M1).unwrap();
    let m2 = parse(data::M2).unwrap();
    let eval = |g: &str, kap: BigRat| parse(g).unwrap().eval_number(&[(KAPPA, kap)]).unwrap();
    let cue = |k: i64| Some(q(k.min(4), 1));
    let n2 = |k: i64| Some(eval(data::N2[k as usize - 1], q(2, 1)));
    let n3 = |k: i64| Some(eval(data::N3[k as usize - 1], q(3, 1)));
    let n5 = |k: i64| {
        let f = if k == 1 { &m1 } else { &m2 };
        Some(f.eval_number(&[(N, q(5, 1)), (KAPPA, q(3, 2))]).unwrap() + q(5, 1))
    };
    let runs: [(usize, f64, i64, &dyn Fn(i64) -> Option<BigRat>); 4] =
        [(4, 2.0, 6, &cue), (2, 4.0, 3, &n2), (3, 6.0, 3, &n3), (5, 3.0, 2, &n5)];
    let mut worst = 0.0f64;
    for (n, beta, kmax, exact) in runs {
        let cfg = SamplerConfig::new(n, beta, 1_000_000, 20240601);
        let a = zscore_suite(&cfg, kmax, exact).map_err(|e| e.to_string())?;
        let b = zscore_suite(&cfg, kmax, exact).map_err(|e| e.to_string())?;
        ensure(a.per_k == b.per_k && a.acceptance_rate == b.acceptance_rate, format!("N={n} rerun differs"))?;
        for e in &a.per_k {
            let z = e.zscore.ok_or("missing reference")?;
            worst = worst.max(z.abs());
            ensure(z.abs() <= 4.0, format!("N={n} beta={beta} k={}: z={z:.2}", e.k))?;
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    ensure(secs <= 300.0, format!("took {secs:.0}s"))?;
    Ok(format!("max |z| = {worst:.2}, {secs:.1}s including reruns"))
}

fn specialization(ctx: &mut Ctx) -> Outcome {
    for (kap, name) in [(q(2, 1), "CSE"), (q(1, 2), "COE")] {
        for j in 0..10 {
            let c = if name == "CSE" { q(-2, 1) * q(-1, 2).pow(j as i32) } else { q(-8, 1) };
            let want = parse(data::P[j])
                .unwrap()
                .mul(&RF::var(ZETA))
                .mul(&RF::var(ZETA).sub(&RF::one()).pow(-(j as i32) - 2))
                .scale(&c);
            let got = ctx.w2.coeffs()[j].eval(&[(KAPPA, kap.clone())]).map_err(|e| e.to_string())?;
            ensure(got == want, format!("{name} order {j}"))?;
        }
    }
    Ok("CSE and COE orders 0..9 exact".into())
}

fn main() {
    let t0 = Instant::now();
    let mut table = ResolventTable::new();
    let w2 = table.w2_series(9).expect("order 9 series");
    let ms = w2_to_moments(&w2).expect("moments");
    let mut ctx = Ctx { table, w2, ms };
    let criteria: [(&str, fn(&mut Ctx) -> Outcome); 9] = [
        ("golden expansion", golden_expansion),
        ("golden moments", golden_moments),
        ("structure polynomials", structure),
        ("Padé reconstruction", pade),
        ("duality", duality),
        ("oracle cross-checks", oracles),
        ("residual and symmetry suites", suites),
        ("Monte Carlo", monte_carlo),
        ("CSE/COE specialization", specialization),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f(&mut ctx) {
            Ok(msg) => println!("criterion {} PASS {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {msg}", i + 1)
            }
        }
    }
    println!("acceptance: {} of 9 passed in {:.1}s", 9 - failed, t0.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}

