//! Exact moment oracles: CUE, CSE and COE for every N, and the `N = 2`,
//! `N = 3` circular ensembles at general `kappa`.

use crate::error::CoreError;
use crate::loops::symmetry::Check;
use cbeta_algebra::var::{KAPPA, N as NVAR};
use cbeta_algebra::{BigRat, RF};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Cue,
    Cse,
    Coe,
    N2,
    N3,
    General,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        Some(match s.to_ascii_lowercase().as_str() {
            "cue" => Family::Cue,
            "cse" => Family::Cse,
            "coe" => Family::Coe,
            "n2" => Family::N2,
            "n3" => Family::N3,
            "general" => Family::General,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Cue => "CUE",
            Family::Cse => "CSE",
            Family::Coe => "COE",
            Family::N2 => "N2",
            Family::N3 => "N3",
            Family::General => "GENERAL",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleSpec {
    pub family: Family,
    pub n: u64,
    pub kappa: BigRat,
}

impl EnsembleSpec {
    /// Fixes `kappa` for the classical families and `N` for `N2`/`N3`.
    pub fn new(family: Family, n: u64, kappa: Option<BigRat>) -> Result<EnsembleSpec, CoreError> {
        let fixed = match family {
            Family::Cue => Some(rat(1, 1)),
            Family::Cse => Some(rat(2, 1)),
            Family::Coe => Some(rat(1, 2)),
            _ => None,
        };
        let kappa = match (fixed, kappa) {
            (Some(f), Some(k)) if f != k => {
                return Err(CoreError::InvalidInput(format!("{} has kappa = {f}", family.name())));
            }
            (Some(f), _) => f,
            (None, Some(k)) => k,
            (None, None) => return Err(CoreError::InvalidInput(format!("{} needs kappa", family.name()))),
        };
        if !kappa.is_positive() {
            return Err(CoreError::InvalidInput("kappa must be positive".into()));
        }
        let n = match family {
            Family::N2 => 2,
            Family::N3 => 3,
            _ => n,
        };
        if n == 0 {
            return Err(CoreError::InvalidInput("N must be at least 1".into()));
        }
        Ok(EnsembleSpec { family, n, kappa })
    }

    /// Exact `m_k`; `General` has no oracle.
    pub fn moment(&self, k: i64) -> Result<BigRat, CoreError> {
        match self.family {
            Family::Cue => Ok(cue_moment(self.n, k)),
            Family::Cse => Ok(cse_moment(self.n, k)),
            Family::Coe => Ok(coe_moment(self.n, k)),
            Family::N2 => n2_moment_at(k, &self.kappa),
            Family::N3 => n3_moment_at(k, &self.kappa),
            Family::General => Err(CoreError::InvalidInput("no closed-form oracle for general ensembles".into())),
        }
    }
}

fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// `m_k = -(N - |k|) Θ(N - |k|)`.
pub fn cue_moment(n: u64, k: i64) -> BigRat {
    let n = n as i64;
    let a = k.abs();
    if a < n {
        int(a - n)
    } else {
        BigRat::zero()
    }
}

/// `m_k = -N + k/2 + (k/2) sum_{i=1}^{k} 1/(2N - 2i + 1)` for `0 < k <= 2N - 2`.
pub fn cse_moment(n: u64, k: i64) -> BigRat {
    let n = n as i64;
    let k = k.abs();
    if k == 0 {
        return int(-n);
    }
    if k >= 2 * n - 1 {
        return BigRat::zero();
    }
    let s: BigRat = (1..=k).map(|i| rat(1, 2 * n - 2 * i + 1)).sum();
    let half_k = rat(k, 2);
    int(-n) + &half_k + half_k * s
}

/// COE moments for every `k`:
/// `m_k = -(N-|k|)Θ(N-|k|) + min(|k|, N) - |k| sum_{l=max(0,|k|-N)}^{|k|-1} 1/(l + (N+1)/2)`.
pub fn coe_moment(n: u64, k: i64) -> BigRat {
    let n = n as i64;
    let k = k.abs();
    if k == 0 {
        return int(-n);
    }
    let s: BigRat = ((k - n).max(0)..k).map(|l| rat(2, 2 * l + n + 1)).sum();
    cue_moment(n as u64, k) + int(k.min(n)) - int(k) * s
}

/// The partial-fraction form `-N + 2k - 2k sum_{i=1}^{k} 1/(N + 2i - 1)`
/// at an arbitrary rational `N`, as used for analytic continuation.
pub fn coe_parfrac(n: &BigRat, k: i64) -> Result<BigRat, CoreError> {
    let k = k.abs();
    let mut s = BigRat::zero();
    for i in 1..=k {
        let d = n + int(2 * i - 1);
        if d.is_zero() {
            return Err(CoreError::PoleAtParameter);
        }
        s += d.recip();
    }
    Ok(-n + int(2 * k) - int(2 * k) * s)
}

/// `(m_k + N)` of COE continued to `N -> -2N` against `4 (m_k + N)` of CSE.
pub fn aux_dual_holds(n: u64, k: i64) -> bool {
    let np = int(-2 * n as i64);
    match coe_parfrac(&np, k) {
        Ok(c) => c + &np == int(4) * (cse_moment(n, k) + int(n as i64)),
        Err(_) => false,
    }
}

/// Location of the maximum of `m_k + N` over `1 <= k <= 2N - 2` for CSE.
pub fn cse_argmax(n: u64) -> i64 {
    let mut best = (1i64, cse_moment(n, 1));
    for k in 2..=(2 * n as i64 - 2) {
        let v = cse_moment(n, k);
        if v > best.1 {
            best = (k, v);
        }
    }
    best.0
}

/// `N = 2`: `m_k = 2 (-1)^k (kappa - k + 1)_k / (kappa + 1)_k` for `k != 0`.
pub fn n2_moment(k: i64) -> RF {
    let k = k.abs();
    if k == 0 {
        return RF::int(-2);
    }
    let kap = RF::var(KAPPA);
    let mut num = RF::one();
    let mut den = RF::one();
    for i in 0..k {
        num = num.mul(&kap.sub(&RF::int(k - 1 - i)));
        den = den.mul(&kap.add(&RF::int(1 + i)));
    }
    let sign = if k % 2 == 0 { 2 } else { -2 };
    num.div(&den).expect("nonzero").scale(&int(sign))
}

fn eval_kappa(f: &RF, kappa: &BigRat, err: CoreError) -> Result<BigRat, CoreError> {
    f.eval_number(&[(KAPPA, kappa.clone())]).map_err(|_| err)
}

pub fn n2_moment_at(k: i64, kappa: &BigRat) -> Result<BigRat, CoreError> {
    eval_kappa(&n2_moment(k), kappa, CoreError::PoleAtParameter)
}

/// `N = 3` moments as rational functions of `kappa`.
///
/// With `F(j) = 3F2(-b, -b, 1+b; -2b, j; 1)`, `b = 2 kappa`, one has
/// `m_k ∝ t(k) F(k+1)`, `t(k+1)/t(k) = -(2 kappa - k)/(k + 1)`. The
/// contiguous relation advances `F` from `F(1)`, `F(2) = F(1)/(2(2 kappa+1))`
/// and the result is normalized by `m_1 = 3/(1 + 2 kappa) - 3`.
pub fn n3_moment(k: i64) -> Result<RF, CoreError> {
    let k = k.abs();
    if k == 0 {
        return Ok(RF::int(-3));
    }
    let kap = RF::var(KAPPA);
    let b = kap.scale(&int(2));
    let one = RF::one();
    let m1 = RF::int(3).div(&one.add(&b))?.sub(&RF::int(3));
    // f[j] = F(j)/F(1)
    let mut f = vec![RF::zero(), RF::one(), RF::ratio(1, 2).div(&b.add(&one))?];
    for j in 2..=k {
        let jr = RF::int(j);
        let lead = b.add(&jr).pow(2).mul(&one.add(&b).sub(&jr));
        if lead.is_zero() {
            return Err(CoreError::RecurrenceSingular(j));
        }
        let fj = &f[j as usize];
        let fjm = &f[j as usize - 1];
        let mid = b.pow(2).mul(&one.add(&b)).mul(fj);
        let back = jr.mul(&jr.sub(&one)).mul(&RF::int(2).add(&b).sub(&jr)).mul(&fj.sub(fjm));
        let next = fj.sub(&mid.sub(&back).div(&lead)?);
        f.push(next);
    }
    let mut t = RF::one();
    for j in 1..k {
        t = t.mul(&b.sub(&RF::int(j)).neg()).scale(&rat(1, j + 1));
    }
    Ok(m1.mul(&t).mul(&f[k as usize + 1]).div(&f[2])?)
}

pub fn n3_moment_at(k: i64, kappa: &BigRat) -> Result<BigRat, CoreError> {
    let f = n3_moment(k)?;
    eval_kappa(&f, kappa, CoreError::RecurrenceSingular(k))
}

/// One comparison between an oracle value and a general formula.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossRow {
    pub family: Family,
    pub n: u64,
    pub kappa: BigRat,
    pub k: i64,
    pub oracle: BigRat,
    pub general: Option<BigRat>,
    pub equal: bool,
}

/// Compares oracle moments with `m_k + N` rational forms in `(N, kappa)`;
/// `formulas[i]` is the form for `k = i + 1`.
pub fn crosscheck(spec: &EnsembleSpec, k_max: i64, formulas: &[RF]) -> Vec<CrossRow> {
    let mut rows = Vec::new();
    for k in 1..=k_max {
        let Ok(oracle) = spec.moment(k) else { continue };
        let general = formulas.get(k as usize - 1).and_then(|f| {
            f.eval_number(&[(NVAR, int(spec.n as i64)), (KAPPA, spec.kappa.clone())]).ok().map(|v| v - int(spec.n as i64))
        });
        let equal = general.as_ref() == Some(&oracle);
        rows.push(CrossRow { family: spec.family, n: spec.n, kappa: spec.kappa.clone(), k, oracle, general, equal });
    }
    rows
}

pub fn ratio_string(c: &BigRat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// `(family, N, kappa, k, m_k)` rows.
pub fn table_rows(spec: &EnsembleSpec, k_max: i64) -> Result<Vec<(i64, BigRat)>, CoreError> {
    (1..=k_max).map(|k| spec.moment(k).map(|m| (k, m))).collect()
}

pub fn rows_tsv(spec: &EnsembleSpec, rows: &[(i64, BigRat)]) -> String {
    let mut s = String::from("family\tN\tkappa\tk\tm_k\tm_k+N\n");
    let n = int(spec.n as i64);
    for (k, m) in rows {
        let fam = spec.family.name();
        let kap = ratio_string(&spec.kappa);
        s.push_str(&format!("{fam}\t{}\t{kap}\t{k}\t{}\t{}\n", spec.n, ratio_string(m), ratio_string(&(m + &n))));
    }
    s
}

pub fn rows_json(spec: &EnsembleSpec, rows: &[(i64, BigRat)]) -> Value {
    Value::Array(
        rows.iter()
            .map(|(k, m)| {
                json!({
                    "family": spec.family.name(),
                    "N": spec.n,
                    "kappa": ratio_string(&spec.kappa),
                    "k": k,
                    "m_k": ratio_string(m),
                    "m_k_plus_N": ratio_string(&(m + int(spec.n as i64))),
                })
            })
            .collect(),
    )
}

/// Every oracle cross-check; `general[i]` is the exact `m_{i+1} + N` in
/// `(N, kappa)`, used for `k <= 2`.
pub fn oracle_suite(general: &[RF]) -> Vec<Check> {
    let mut out = Vec::new();
    let kg = general.len().min(2) as i64;
    for n in 2..=50u64 {
        for fam in [Family::Cse, Family::Coe] {
            let spec = EnsembleSpec::new(fam, n, None).expect("classical family");
            for r in crosscheck(&spec, kg, general) {
                out.push(Check::new(format!("{} N={n} k={} general form", fam.name(), r.k), r.equal));
            }
        }
    }
    for (i, f) in general.iter().take(2).enumerate() {
        let k = i as i64 + 1;
        for (n, exact) in [(2, Some(n2_moment(k))), (3, n3_moment(k).ok())] {
            let at_n = f.eval(&[(NVAR, int(n))]).ok();
            let pass = matches!((at_n, exact), (Some(a), Some(e)) if a == e.add(&RF::int(n)));
            out.push(Check::new(format!("general form k={k} at N={n} symbolic"), pass));
        }
    }
    let n2_ok = (1..=4).all(|k| n2_moment_at(k, &rat(1, 1)).ok() == Some(cue_moment(2, k)));
    out.push(Check::new("N=2 form reduces to CUE at kappa=1".into(), n2_ok));
    let n3_ok = (1..=6).all(|k| n3_moment_at(k, &rat(1, 1)).ok() == Some(cue_moment(3, k)));
    out.push(Check::new("N=3 form reduces to CUE at kappa=1".into(), n3_ok));
    for n in 2..=20u64 {
        let ok = (1..=(2 * n as i64 - 2)).all(|k| aux_dual_holds(n, k));
        out.push(Check::new(format!("COE/CSE auxiliary duality N={n}"), ok));
    }
    for n in 1..=100u64 {
        let bound = (-(3 * n as i64)..=(3 * n as i64)).all(|k| (cue_moment(n, k) + int(n as i64)).abs() <= int(k.abs()));
        out.push(Check::new(format!("CUE bound |m_k+N| <= |k| N={n}"), bound));
    }
    for n in 2..=50u64 {
        let zero = ((2 * n as i64 - 1)..(2 * n as i64 + 4)).all(|k| cse_moment(n, k).is_zero());
        out.push(Check::new(format!("CSE termination N={n}"), zero));
        out.push(Check::new(format!("CSE maximum at k=N N={n}"), cse_argmax(n) == n as i64));
    }
    out
}
