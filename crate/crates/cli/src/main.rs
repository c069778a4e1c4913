//! `cbeta`: large-N expansions and exact moments of the circular β ensemble.
//!
//! Exit codes: 0 when everything passes, 1 when a check fails or a
//! computation errors, 2 on usage errors.

use cbeta_algebra::{parse_ratio, BigRat, RF};
use cbeta_core::ensembles::{oracle_suite, ratio_string, rows_json, rows_tsv, table_rows, EnsembleSpec, Family};
use cbeta_core::loops::symform::s1s2_string;
use cbeta_core::loops::symmetry::{residual_suite, symmetry_suite, Check};
use cbeta_core::loops::MAX_ORDER;
use cbeta_core::mc::{reference_moment, seed_from_env, zscore_suite, Proposal, SamplerConfig};
use cbeta_core::moments::{
    duality_check, duality_fixed, exact_forms, pade_moment, reciprocal, structure_polys, w2_to_moments,
};
use cbeta_core::{CoeffKey, CoreError, DomainConfig, InvNSeries, ResolventTable};
use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "cbeta", version, about = "Large-N loop-equation solver and moment checks for the circular beta ensemble")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Tsv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Residual,
    Symmetry,
    Duality,
    Crosscheck,
    Reciprocity,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Two-point resolvent coefficients about N = infinity.
    Expand {
        #[arg(long, default_value_t = MAX_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Large-N series of the moments m_k + N.
    Moments {
        #[arg(long, default_value_t = MAX_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Structure polynomials p_j(kappa) and their reciprocity.
    Structure {
        #[arg(long, default_value_t = MAX_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact m_k as a rational function of (N, kappa) from Padé fits.
    Pade {
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = MAX_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact moments of a closed-form ensemble.
    Exact {
        /// cue, cse, coe, n2 or n3
        #[arg(long)]
        ensemble: String,
        #[arg(long = "N")]
        n: Option<u64>,
        /// Exact ratio "p/q"; required for n2 and n3.
        #[arg(long)]
        kappa: Option<String>,
        #[arg(long)]
        kmax: i64,
        #[arg(long, value_enum, default_value = "tsv")]
        format: TableFormat,
    },
    /// Monte Carlo estimates of m_k + N compared with exact values.
    Mc {
        #[arg(long = "N")]
        n: usize,
        /// Decimal or "p/q".
        #[arg(long)]
        beta: String,
        #[arg(long, conflicts_with = "kmax")]
        k: Option<i64>,
        #[arg(long)]
        kmax: Option<i64>,
        #[arg(long, default_value_t = 1_000_000)]
        sweeps: u64,
        #[arg(long, default_value_t = 10_000)]
        burn_in: u64,
        /// Falls back to CBETA_SEED, then 1.
        #[arg(long)]
        seed: Option<u64>,
        /// Proposal half-width in radians; tuned during burn-in when absent.
        #[arg(long)]
        width: Option<f64>,
        #[arg(long, default_value_t = 4)]
        chains: usize,
        #[arg(long, default_value_t = 25)]
        batches: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run one verification suite.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = MAX_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

enum Fail {
    Usage(String),
    Error(String),
}

impl From<CoreError> for Fail {
    fn from(e: CoreError) -> Fail {
        match e {
            CoreError::OrderTooHigh(_) | CoreError::InvalidConfig(_) | CoreError::InvalidInput(_) | CoreError::ZeroModeRequested => {
                Fail::Usage(e.to_string())
            }
            _ => Fail::Error(e.to_string()),
        }
    }
}

/// A rendered report and whether its checks passed.
struct Outcome {
    body: String,
    pass: bool,
    failures: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok(out) => {
            if let Some(p) = &cli.output {
                if let Err(e) = std::fs::write(p, &out.body) {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{}", out.body);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                for f in &out.failures {
                    eprintln!("FAIL {f}");
                }
                ExitCode::from(1)
            }
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Error(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn check_order(order: usize) -> Result<(), Fail> {
    if order > MAX_ORDER {
        return Err(CoreError::OrderTooHigh(order).into());
    }
    Ok(())
}

fn envelope(command: &str, order: Option<usize>, table: Option<&ResolventTable>) -> Map<String, Value> {
    let deps: Vec<Value> = table.map(|t| t.dependency_set().into_iter().map(|(l, m)| json!([l, m])).collect()).unwrap_or_default();
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(1));
    m.insert("engine_version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    m.insert("target_order".into(), json!(order));
    m.insert("dependency_set".into(), Value::Array(deps));
    m
}

fn json_body(m: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
    s.push('\n');
    s
}

fn solve(order: usize) -> Result<(ResolventTable, InvNSeries), Fail> {
    check_order(order)?;
    let mut t = ResolventTable::new();
    let w2 = t.w2_series(order)?;
    Ok((t, w2))
}

fn checks_outcome(name: &str, order: Option<usize>, table: Option<&ResolventTable>, checks: &[Check], format: Format) -> Outcome {
    let failures: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
    let pass = failures.is_empty();
    let body = match format {
        Format::Json => {
            let mut m = envelope(name, order, table);
            m.insert("checks".into(), Value::Array(checks.iter().map(|c| json!({"name": c.name, "pass": c.pass})).collect()));
            m.insert("n_checks".into(), json!(checks.len()));
            m.insert("failures".into(), json!(failures));
            m.insert("pass".into(), json!(pass));
            json_body(m)
        }
        Format::Text => {
            let mut s = String::new();
            for c in checks {
                s.push_str(&format!("{} {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name));
            }
            s.push_str(&format!("{name}: {} checks, {} failed\n", checks.len(), failures.len()));
            s
        }
    };
    Outcome { body, pass, failures }
}

fn series_text(s: &InvNSeries) -> Vec<String> {
    s.coeffs().iter().map(|c| c.to_string()).collect()
}

fn run(cmd: &Cmd) -> Result<Outcome, Fail> {
    match cmd {
        Cmd::Expand { order, format } => expand(*order, *format),
        Cmd::Moments { order, format } => {
            let (t, w2) = solve(*order)?;
            let ms = w2_to_moments(&w2)?;
            let body = match format {
                Format::Json => {
                    let mut m = envelope("moments", Some(*order), Some(&t));
                    m.insert("moments".into(), ms.to_json());
                    m.insert("text".into(), json!(series_text(&ms.series)));
                    json_body(m)
                }
                Format::Text => {
                    let mut s = String::from("# m_k + N = sum_j c_j(k, kappa) N^-j\n");
                    for (j, c) in ms.series.coeffs().iter().enumerate() {
                        s.push_str(&format!("c_{j} = {c}\n"));
                    }
                    s
                }
            };
            Ok(Outcome { body, pass: true, failures: vec![] })
        }
        Cmd::Structure { order, format } => {
            let (t, w2) = solve(*order)?;
            let ps = structure_polys(&w2_to_moments(&w2)?);
            let checks: Vec<Check> =
                ps.polys.iter().enumerate().map(|(i, p)| Check::new(format!("reciprocity p_{}", i + 1), reciprocal(p, i + 1))).collect();
            let failures: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
            let body = match format {
                Format::Json => {
                    let mut m = envelope("structure", Some(*order), Some(&t));
                    m.insert("structure".into(), ps.to_json());
                    m.insert("text".into(), json!(ps.polys.iter().map(|p| p.to_string()).collect::<Vec<_>>()));
                    m.insert("reciprocity".into(), json!(failures.is_empty()));
                    json_body(m)
                }
                Format::Text => {
                    let mut s = String::new();
                    for (i, p) in ps.polys.iter().enumerate() {
                        s.push_str(&format!("p_{} = {p}\n", i + 1));
                    }
                    s.push_str(&format!("reciprocity: {}\n", if failures.is_empty() { "pass" } else { "FAIL" }));
                    s
                }
            };
            Ok(Outcome { body, pass: failures.is_empty(), failures })
        }
        Cmd::Pade { k, order, format } => {
            if *k == 0 {
                return Err(Fail::Usage("m_0 = -N exactly; choose k != 0".into()));
            }
            let (t, w2) = solve(*order)?;
            let ms = w2_to_moments(&w2)?;
            let f = pade_moment(&ms, *k)?;
            let m_k = f.sub(&RF::var(cbeta_algebra::var::N));
            let body = match format {
                Format::Json => {
                    let mut m = envelope("pade", Some(*order), Some(&t));
                    m.insert("k".into(), json!(k));
                    m.insert("m_k_plus_N".into(), json!(f.to_string()));
                    m.insert("m_k".into(), json!(m_k.to_string()));
                    m.insert("numerator".into(), json!(f.num().to_string()));
                    m.insert("denominator".into(), json!(f.den().to_string()));
                    m.insert("ratfunc".into(), f.to_json());
                    json_body(m)
                }
                Format::Text => format!("m_{k} + N = {f}\nm_{k} = {m_k}\n"),
            };
            Ok(Outcome { body, pass: true, failures: vec![] })
        }
        Cmd::Exact { ensemble, n, kappa, kmax, format } => {
            let family = Family::parse(ensemble).ok_or_else(|| Fail::Usage(format!("unknown ensemble `{ensemble}`")))?;
            if family == Family::General {
                return Err(Fail::Usage("no closed-form oracle for general ensembles; use pade".into()));
            }
            let kappa = kappa.as_deref().map(parse_ratio).transpose().map_err(|e| Fail::Usage(e.to_string()))?;
            let n = match (family, n) {
                (Family::N2, _) => 2,
                (Family::N3, _) => 3,
                (_, Some(n)) => *n,
                (_, None) => return Err(Fail::Usage(format!("{} needs --N", family.name()))),
            };
            if *kmax < 1 {
                return Err(Fail::Usage("--kmax must be at least 1".into()));
            }
            let spec = EnsembleSpec::new(family, n, kappa)?;
            let rows = table_rows(&spec, *kmax)?;
            let body = match format {
                TableFormat::Tsv => rows_tsv(&spec, &rows),
                TableFormat::Json => {
                    let mut m = envelope("exact", None, None);
                    m.insert("rows".into(), rows_json(&spec, &rows));
                    json_body(m)
                }
            };
            Ok(Outcome { body, pass: true, failures: vec![] })
        }
        Cmd::Mc { n, beta, k, kmax, sweeps, burn_in, seed, width, chains, batches, format } => {
            let (beta_f, beta_q) = parse_beta(beta)?;
            let cfg = SamplerConfig {
                n: *n,
                beta: beta_f,
                sweeps: *sweeps,
                burn_in: *burn_in,
                seed: seed.unwrap_or_else(|| seed_from_env(1)),
                proposal: width.map(Proposal::Fixed).unwrap_or(Proposal::Auto),
                chains: *chains,
                batches: *batches,
            };
            cfg.validate()?;
            let ks: Vec<i64> = match (k, kmax) {
                (Some(k), None) => vec![*k],
                (None, Some(km)) if *km >= 1 => (1..=*km).collect(),
                (None, None) => vec![1],
                _ => return Err(Fail::Usage("--kmax must be at least 1".into())),
            };
            if ks.contains(&0) {
                return Err(CoreError::ZeroModeRequested.into());
            }
            let kappa = beta_q.map(|b| b / BigRat::from_integer(2.into()));
            let mut general: Vec<RF> = Vec::new();
            let needs_general =
                kappa.as_ref().is_some_and(|kap| ks.iter().any(|&k| k.abs() <= 2 && reference_moment(*n, kap, k, &[]).is_none()));
            if needs_general {
                general = exact_forms(&w2_to_moments(&solve(MAX_ORDER)?.1)?);
            }
            let kmax_run = *ks.iter().max().expect("non-empty");
            let report = zscore_suite(&cfg, kmax_run, |k| kappa.as_ref().and_then(|kap| reference_moment(*n, kap, k, &general)))?;
            let mut per_k = report.per_k.clone();
            per_k.retain(|e| ks.contains(&e.k));
            let pass = per_k.iter().all(|e| e.zscore.is_none_or(|z| z.abs() <= 4.0));
            let failures: Vec<String> =
                per_k.iter().filter(|e| e.zscore.is_some_and(|z| z.abs() > 4.0)).map(|e| format!("|z| > 4 at k={}", e.k)).collect();
            let body = match format {
                Format::Json => {
                    let mut m = envelope("mc", None, None);
                    let v = report.to_json();
                    m.insert("config".into(), v["config"].clone());
                    m.insert("per_k".into(), Value::Array(per_k.iter().map(|e| e.to_json()).collect()));
                    m.insert("acceptance_rate".into(), v["acceptance_rate"].clone());
                    m.insert("runtime_sec".into(), v["runtime_sec"].clone());
                    m.insert("pass".into(), json!(pass));
                    json_body(m)
                }
                Format::Text => {
                    let mut s = format!("# N={n} beta={beta} sweeps={sweeps} seed={} acceptance={:.3}\n", cfg.seed, report.acceptance_rate);
                    s.push_str("k\tmean\tstderr\texact\tzscore\n");
                    for e in &per_k {
                        let ex = e.exact.as_ref().map(ratio_string).unwrap_or_else(|| "-".into());
                        let z = e.zscore.map(|z| format!("{z:.3}")).unwrap_or_else(|| "-".into());
                        s.push_str(&format!("{}\t{:.6}\t{:.6}\t{ex}\t{z}\n", e.k, e.mean, e.stderr));
                    }
                    s
                }
            };
            Ok(Outcome { body, pass, failures })
        }
        Cmd::Check { suite, order, format } => check(*suite, *order, *format),
    }
}

fn expand(order: usize, format: Format) -> Result<Outcome, Fail> {
    let (mut t, w2) = solve(order)?;
    let checks = residual_suite(&mut t)?;
    let failures: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
    let body = match format {
        Format::Json => {
            let mut m = envelope("expand", Some(order), Some(&t));
            m.insert("w2".into(), w2.to_json());
            m.insert("text".into(), json!(series_text(&w2)));
            m.insert("table".into(), t.to_json());
            m.insert("residual_checks".into(), json!(checks.len()));
            m.insert("residuals_pass".into(), json!(failures.is_empty()));
            json_body(m)
        }
        Format::Text => {
            let mut s = String::from("# W_2(z, z1) = sum_j N^-j W_2^(-j), s1 = z + z1, s2 = z*z1\n");
            for j in 0..=order {
                let f = t.get(&CoeffKey::new(2, -(j as i32), DomainConfig::canonical(2, 1)))?;
                let shown = s1s2_string(&f).unwrap_or_else(|| f.to_string());
                s.push_str(&format!("W_2^(-{j}) = {shown}\n"));
            }
            s
        }
    };
    Ok(Outcome { body, pass: failures.is_empty(), failures })
}

fn check(suite: Suite, order: usize, format: Format) -> Result<Outcome, Fail> {
    let (mut t, w2) = solve(order)?;
    let (name, checks) = match suite {
        Suite::Residual => ("residual", residual_suite(&mut t)?),
        Suite::Symmetry => ("symmetry", symmetry_suite(&mut t)?),
        Suite::Duality => {
            let ms = w2_to_moments(&w2)?;
            let mut c = vec![Check::new(format!("moment series duality through order {order}"), duality_check(&ms))];
            for (i, f) in exact_forms(&ms).iter().enumerate() {
                c.push(Check::new(format!("exact m_{} fixed by duality", i + 1), duality_fixed(f)));
            }
            ("duality", c)
        }
        Suite::Crosscheck => {
            let ms = w2_to_moments(&w2)?;
            ("crosscheck", oracle_suite(&exact_forms(&ms)))
        }
        Suite::Reciprocity => {
            let ps = structure_polys(&w2_to_moments(&w2)?);
            let c = ps.polys.iter().enumerate().map(|(i, p)| Check::new(format!("reciprocity p_{}", i + 1), reciprocal(p, i + 1))).collect();
            ("reciprocity", c)
        }
    };
    Ok(checks_outcome(name, Some(order), Some(&t), &checks, format))
}

/// `beta` as a float, plus its exact value when written as a ratio or a
/// terminating decimal.
fn parse_beta(s: &str) -> Result<(f64, Option<BigRat>), Fail> {
    let s = s.trim();
    let bad = || Fail::Usage(format!("bad beta `{s}`"));
    if s.contains('/') {
        let r = parse_ratio(s).map_err(|_| bad())?;
        let f = r.to_f64().ok_or_else(bad)?;
        return Ok((f, Some(r)));
    }
    let f: f64 = s.parse().map_err(|_| bad())?;
    let exact = decimal_ratio(s);
    Ok((f, exact))
}

fn decimal_ratio(s: &str) -> Option<BigRat> {
    if s.contains(['e', 'E']) {
        return None;
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let num = parse_ratio(&format!("{int}{frac}")).ok()?;
    Some(num / BigRat::from_integer(BigInt::from(10).pow(frac.len() as u32)))
}
