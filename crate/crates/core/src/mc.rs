//! Metropolis sampler for the circular β ensemble and moment estimates
//! `m_k + N = E |sum_j e^{i k theta_j}|^2` with batch-means errors.

use crate::error::CoreError;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::f64::consts::PI;
use std::time::Instant;

use cbeta_algebra::{BigRat, RF};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Proposal {
    Fixed(f64),
    Auto,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SamplerConfig {
    pub n: usize,
    pub beta: f64,
    pub sweeps: u64,
    pub burn_in: u64,
    pub seed: u64,
    pub proposal: Proposal,
    /// Independent chains; the sweeps are split evenly between them.
    pub chains: usize,
    /// Batches per chain for the batch-means error.
    pub batches: usize,
}

impl SamplerConfig {
    pub fn new(n: usize, beta: f64, sweeps: u64, seed: u64) -> SamplerConfig {
        SamplerConfig { n, beta, sweeps, burn_in: 10_000, seed, proposal: Proposal::Auto, chains: 4, batches: 25 }
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        let bad = |s: &str| Err(CoreError::InvalidConfig(s.to_string()));
        if self.n < 2 {
            return bad("N must be at least 2");
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return bad("beta must be positive and finite");
        }
        if self.sweeps == 0 {
            return bad("sweeps must be positive");
        }
        if self.chains == 0 || self.batches == 0 {
            return bad("chains and batches must be positive");
        }
        if self.chains * self.batches < 50 {
            return bad("at least 50 batches in total are required");
        }
        if self.sweeps < (self.chains * self.batches) as u64 {
            return bad("fewer sweeps than batches");
        }
        if let Proposal::Fixed(w) = self.proposal {
            if !(w > 0.0 && w.is_finite()) {
                return bad("proposal width must be positive");
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "N": self.n,
            "beta": self.beta,
            "sweeps": self.sweeps,
            "burn_in": self.burn_in,
            "seed": self.seed,
            "proposal_width": match self.proposal { Proposal::Auto => json!("AUTO"), Proposal::Fixed(w) => json!(w) },
            "chains": self.chains,
            "batches_per_chain": self.batches,
        })
    }
}

/// Single chain state with single-angle Metropolis updates.
pub struct Chain {
    theta: Vec<f64>,
    beta: f64,
    width: f64,
    rng: ChaCha20Rng,
    accepted: u64,
    proposed: u64,
}

fn log_pair(a: f64, b: f64) -> f64 {
    (2.0 * ((a - b) * 0.5).sin()).abs().ln()
}

impl Chain {
    /// Chain `index` of a run seeded with `seed`.
    pub fn new(n: usize, beta: f64, seed: u64, index: u64, width: f64) -> Chain {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let theta = (0..n).map(|_| rng.gen::<f64>() * 2.0 * PI).collect();
        Chain { theta, beta, width, rng, accepted: 0, proposed: 0 }
    }

    pub fn angles(&self) -> &[f64] {
        &self.theta
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn acceptance(&self) -> f64 {
        if self.proposed == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }

    fn reset_counts(&mut self) {
        self.accepted = 0;
        self.proposed = 0;
    }

    /// One sweep of `N` proposals.
    pub fn sweep(&mut self) {
        let n = self.theta.len();
        for j in 0..n {
            let old = self.theta[j];
            let step = (self.rng.gen::<f64>() * 2.0 - 1.0) * self.width;
            let new = (old + step).rem_euclid(2.0 * PI);
            let mut delta = 0.0;
            for (i, &t) in self.theta.iter().enumerate() {
                if i != j {
                    delta += log_pair(new, t) - log_pair(old, t);
                }
            }
            delta *= self.beta;
            self.proposed += 1;
            if delta >= 0.0 || self.rng.gen::<f64>() < delta.exp() {
                self.theta[j] = new;
                self.accepted += 1;
            }
        }
    }

    /// Burn-in; with `auto` the width is tuned toward 30-50% acceptance and
    /// then frozen.
    pub fn burn_in(&mut self, sweeps: u64, auto: bool) {
        const BLOCK: u64 = 100;
        let mut done = 0;
        while done < sweeps {
            let s = BLOCK.min(sweeps - done);
            self.reset_counts();
            for _ in 0..s {
                self.sweep();
            }
            done += s;
            if auto {
                let a = self.acceptance();
                if a > 0.5 {
                    self.width = (self.width * 1.25).min(PI);
                } else if a < 0.3 {
                    self.width *= 0.8;
                }
            }
        }
        self.reset_counts();
    }
}

/// Post-burn-in angle tuples of chain 0, one per sweep.
pub fn run_chain(cfg: &SamplerConfig, samples: usize) -> Result<(Vec<Vec<f64>>, f64), CoreError> {
    cfg.validate()?;
    let (mut c, auto) = start(cfg, 0);
    c.burn_in(cfg.burn_in, auto);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        c.sweep();
        out.push(c.angles().to_vec());
    }
    Ok((out, c.acceptance()))
}

fn start(cfg: &SamplerConfig, index: u64) -> (Chain, bool) {
    let (w, auto) = match cfg.proposal {
        Proposal::Auto => (1.0, true),
        Proposal::Fixed(w) => (w, false),
    };
    (Chain::new(cfg.n, cfg.beta, cfg.seed, index, w), auto)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentEstimate {
    pub k: i64,
    pub mean: f64,
    pub stderr: f64,
    pub n_effective: f64,
    pub exact: Option<BigRat>,
    pub zscore: Option<f64>,
}

impl MomentEstimate {
    pub fn with_exact(mut self, exact: Option<BigRat>) -> MomentEstimate {
        self.zscore = exact.as_ref().map(|e| (self.mean - e.to_f64().unwrap_or(f64::NAN)) / self.stderr);
        self.exact = exact;
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "mean": self.mean,
            "stderr": self.stderr,
            "n_effective": self.n_effective,
            "exact": self.exact.as_ref().map(crate::ensembles::ratio_string),
            "zscore": self.zscore,
        })
    }
}

struct ChainResult {
    batch_means: Vec<Vec<f64>>,
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
    count: u64,
    acceptance: f64,
}

fn run_measure(cfg: &SamplerConfig, index: u64, ks: &[i64]) -> ChainResult {
    let (mut c, auto) = start(cfg, index);
    c.burn_in(cfg.burn_in, auto);
    let per_chain = cfg.sweeps / cfg.chains as u64;
    let per_batch = per_chain / cfg.batches as u64;
    let nk = ks.len();
    let mut batch_means = Vec::with_capacity(cfg.batches);
    let mut sum = vec![0.0; nk];
    let mut sum_sq = vec![0.0; nk];
    let mut count = 0;
    for _ in 0..cfg.batches {
        let mut acc = vec![0.0; nk];
        for _ in 0..per_batch {
            c.sweep();
            for (i, &k) in ks.iter().enumerate() {
                let (mut re, mut im) = (0.0, 0.0);
                for &t in c.angles() {
                    let (s, co) = (k as f64 * t).sin_cos();
                    re += co;
                    im += s;
                }
                let v = re * re + im * im;
                acc[i] += v;
                sum[i] += v;
                sum_sq[i] += v * v;
            }
            count += 1;
        }
        batch_means.push(acc.iter().map(|a| a / per_batch as f64).collect());
    }
    ChainResult { batch_means, sum, sum_sq, count, acceptance: c.acceptance() }
}

/// Estimates of `m_k + N` for each `k`, pooled over chains in chain order.
pub fn estimate_moments(cfg: &SamplerConfig, ks: &[i64]) -> Result<(Vec<MomentEstimate>, f64), CoreError> {
    cfg.validate()?;
    if ks.contains(&0) {
        return Err(CoreError::ZeroModeRequested);
    }
    let abs: Vec<i64> = ks.iter().map(|k| k.abs()).collect();
    let results: Vec<ChainResult> = (0..cfg.chains as u64).into_par_iter().map(|i| run_measure(cfg, i, &abs)).collect();
    let mut est = Vec::with_capacity(ks.len());
    for (i, &k) in ks.iter().enumerate() {
        let means: Vec<f64> = results.iter().flat_map(|r| r.batch_means.iter().map(move |b| b[i])).collect();
        let b = means.len() as f64;
        let mean = means.iter().sum::<f64>() / b;
        let var_b = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (b - 1.0);
        let stderr = (var_b / b).sqrt();
        let count: u64 = results.iter().map(|r| r.count).sum();
        let s: f64 = results.iter().map(|r| r.sum[i]).sum();
        let ss: f64 = results.iter().map(|r| r.sum_sq[i]).sum();
        let var_1 = (ss / count as f64) - (s / count as f64).powi(2);
        let n_effective = if stderr > 0.0 { var_1 / (stderr * stderr) } else { count as f64 };
        est.push(MomentEstimate { k, mean, stderr, n_effective, exact: None, zscore: None });
    }
    let acceptance = results.iter().map(|r| r.acceptance).sum::<f64>() / results.len() as f64;
    Ok((est, acceptance))
}

/// Estimates with exact references; a `|z| > 4` fails the suite.
#[derive(Clone, Debug)]
pub struct ZReport {
    pub config: SamplerConfig,
    pub per_k: Vec<MomentEstimate>,
    pub acceptance_rate: f64,
    pub runtime_sec: f64,
    pub pass: bool,
}

impl ZReport {
    pub fn to_json(&self) -> Value {
        json!({
            "config": self.config.to_json(),
            "per_k": self.per_k.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
            "acceptance_rate": self.acceptance_rate,
            "runtime_sec": self.runtime_sec,
            "pass": self.pass,
        })
    }

    pub fn failures(&self) -> Vec<i64> {
        self.per_k.iter().filter(|e| !z_ok(e)).map(|e| e.k).collect()
    }
}

fn z_ok(e: &MomentEstimate) -> bool {
    match e.zscore {
        Some(z) => z.abs() <= 4.0,
        None => e.exact.is_none(),
    }
}

/// Runs `k = 1..=k_max` and compares with `exact(k)` (values of `m_k + N`).
pub fn zscore_suite(cfg: &SamplerConfig, k_max: i64, exact: impl Fn(i64) -> Option<BigRat>) -> Result<ZReport, CoreError> {
    let t0 = Instant::now();
    let ks: Vec<i64> = (1..=k_max).collect();
    let (est, acc) = estimate_moments(cfg, &ks)?;
    let per_k: Vec<MomentEstimate> = est.into_iter().map(|e| {
        let x = exact(e.k);
        e.with_exact(x)
    }).collect();
    let pass = per_k.iter().all(z_ok);
    Ok(ZReport { config: cfg.clone(), per_k, acceptance_rate: acc, runtime_sec: t0.elapsed().as_secs_f64(), pass })
}

/// Seed from `CBETA_SEED` when set.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("CBETA_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

/// Exact `m_k + N` at `(N, kappa)` for comparison: the classical ensembles,
/// the `N = 2` form, the `N = 3` form at integer `kappa`, and otherwise
/// `general[k - 1]`, a rational function of `(N, kappa)` giving `m_k + N`.
pub fn reference_moment(n: usize, kappa: &BigRat, k: i64, general: &[RF]) -> Option<BigRat> {
    use crate::ensembles::{coe_moment, cse_moment, cue_moment, n2_moment_at, n3_moment_at};
    use cbeta_algebra::var::{KAPPA, N};
    let nn = BigRat::from_integer((n as i64).into());
    let m = if *kappa == cbeta_algebra::q(1, 1) {
        Some(cue_moment(n as u64, k))
    } else if *kappa == cbeta_algebra::q(2, 1) {
        Some(cse_moment(n as u64, k))
    } else if *kappa == cbeta_algebra::q(1, 2) {
        Some(coe_moment(n as u64, k))
    } else if n == 2 {
        n2_moment_at(k, kappa).ok()
    } else if n == 3 && kappa.is_integer() {
        n3_moment_at(k, kappa).ok()
    } else {
        None
    };
    match m {
        Some(m) => Some(m + nn),
        None => general
            .get((k.unsigned_abs() as usize).checked_sub(1)?)
            .and_then(|f| f.eval_number(&[(N, nn), (KAPPA, kappa.clone())]).ok()),
    }
}
