//! Truncated series in `1/N` with rational-function coefficients, and
//! `[j; j+1]` Padé approximants in `x = 1/N` over `Q(kappa)`.

use crate::error::CoreError;
use cbeta_algebra::ratfunc::poly_gcd;
use cbeta_algebra::var::N;
use cbeta_algebra::{MultiPoly, Var, RF};
use serde_json::{json, Value};
use std::collections::BTreeSet;

/// `sum_{j=0}^{M} c_j N^{-j} + O(N^{-M-1})`.
#[derive(Clone, PartialEq, Debug)]
pub struct InvNSeries {
    coeffs: Vec<RF>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

impl InvNSeries {
    /// Panics if a coefficient contains `N` or the list is empty.
    pub fn new(coeffs: Vec<RF>) -> InvNSeries {
        InvNSeries::try_new(coeffs).expect("valid series")
    }

    pub fn try_new(coeffs: Vec<RF>) -> Result<InvNSeries, CoreError> {
        if coeffs.is_empty() {
            return Err(CoreError::InvalidInput("a series needs at least one coefficient".into()));
        }
        if coeffs.iter().any(|c| c.contains(N)) {
            return Err(CoreError::InvalidInput("series coefficients must not contain N".into()));
        }
        Ok(InvNSeries { coeffs })
    }

    pub fn zero(m: usize) -> InvNSeries {
        InvNSeries { coeffs: vec![RF::zero(); m + 1] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RF] {
        &self.coeffs
    }

    /// Coefficient of `N^{-j}`; asking beyond the truncation is an error.
    pub fn coeff(&self, j: usize) -> Result<&RF, CoreError> {
        self.coeffs.get(j).ok_or(CoreError::TruncationExceeded { requested: j, order: self.order() })
    }

    pub fn truncate(&self, m: usize) -> InvNSeries {
        InvNSeries { coeffs: self.coeffs[..=m.min(self.order())].to_vec() }
    }

    /// Variables occurring in the coefficients.
    pub fn alphabet(&self) -> BTreeSet<Var> {
        self.coeffs.iter().flat_map(|c| c.vars()).collect()
    }

    pub fn map(&self, f: impl Fn(&RF) -> RF) -> InvNSeries {
        InvNSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn neg(&self) -> InvNSeries {
        self.map(|c| c.neg())
    }

    pub fn arith(&self, o: &InvNSeries, op: SeriesOp) -> Result<InvNSeries, CoreError> {
        let (a, b) = (self.alphabet(), o.alphabet());
        if !a.is_empty() && !b.is_empty() && !a.is_subset(&b) && !b.is_subset(&a) {
            return Err(CoreError::AlphabetMismatch);
        }
        let m = self.order().min(o.order());
        let coeffs = match op {
            SeriesOp::Add => (0..=m).map(|j| self.coeffs[j].add(&o.coeffs[j])).collect(),
            SeriesOp::Sub => (0..=m).map(|j| self.coeffs[j].sub(&o.coeffs[j])).collect(),
            SeriesOp::Mul => (0..=m)
                .map(|j| {
                    let mut acc = RF::zero();
                    for i in 0..=j {
                        if !self.coeffs[i].is_zero() && !o.coeffs[j - i].is_zero() {
                            acc = acc.add(&self.coeffs[i].mul(&o.coeffs[j - i]));
                        }
                    }
                    acc
                })
                .collect(),
        };
        Ok(InvNSeries { coeffs })
    }

    pub fn add(&self, o: &InvNSeries) -> Result<InvNSeries, CoreError> {
        self.arith(o, SeriesOp::Add)
    }

    pub fn sub(&self, o: &InvNSeries) -> Result<InvNSeries, CoreError> {
        self.arith(o, SeriesOp::Sub)
    }

    pub fn mul(&self, o: &InvNSeries) -> Result<InvNSeries, CoreError> {
        self.arith(o, SeriesOp::Mul)
    }

    /// `sum_j c_j N^{-j}` as a rational function including `N`.
    pub fn reassemble(&self) -> RF {
        let x = RF::var(N).pow(-1);
        let mut acc = RF::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&x).add(c);
        }
        acc
    }

    /// Expansion of a rational function of `N` about `N = ∞`.
    pub fn expand(f: &RF, m: usize) -> Result<InvNSeries, CoreError> {
        // in x = 1/N: f = x^s * A(x)/B(x) with B(0) != 0
        let to_list = |p: &MultiPoly| -> (Vec<RF>, i64) {
            let cs = p.coeffs_in(N);
            let deg = cs.first().map(|c| c.0 as i64).unwrap_or(0);
            let mut out = vec![RF::zero(); deg as usize + 1];
            for (e, c) in cs {
                out[deg as usize - e as usize] = RF::from_poly(c);
            }
            (out, deg)
        };
        if f.is_zero() {
            return Ok(InvNSeries::zero(m));
        }
        let (a, da) = to_list(f.num());
        let (b, db) = to_list(f.den());
        let shift = db - da;
        if shift < 0 {
            return Err(CoreError::InvalidInput("function grows at N = ∞".into()));
        }
        let q = series_div(&a, &b, m)?;
        let mut coeffs = vec![RF::zero(); m + 1];
        for (i, c) in q.into_iter().enumerate() {
            let j = i + shift as usize;
            if j <= m {
                coeffs[j] = c;
            }
        }
        Ok(InvNSeries { coeffs })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "truncation_order": self.order(),
        })
    }

    pub fn from_json(v: &Value) -> Result<InvNSeries, CoreError> {
        let arr = v["coeffs"].as_array().ok_or_else(|| CoreError::InvalidInput("missing coeffs".into()))?;
        let m = v["truncation_order"].as_u64().ok_or_else(|| CoreError::InvalidInput("missing truncation_order".into()))?;
        let coeffs = arr.iter().map(RF::from_json).collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() as u64 != m + 1 {
            return Err(CoreError::InvalidInput("truncation_order disagrees with coefficient count".into()));
        }
        InvNSeries::try_new(coeffs)
    }
}

/// `a / b` as a power series to `m + 1` terms; `b[0]` must be nonzero.
fn series_div(a: &[RF], b: &[RF], m: usize) -> Result<Vec<RF>, CoreError> {
    let b0inv = b[0].inv()?;
    let mut q: Vec<RF> = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let mut acc = a.get(i).cloned().unwrap_or_else(RF::zero);
        for l in 1..=i.min(b.len() - 1) {
            if !b[l].is_zero() && !q[i - l].is_zero() {
                acc = acc.sub(&b[l].mul(&q[i - l]));
            }
        }
        q.push(acc.mul(&b0inv));
    }
    Ok(q)
}

/// `P(x)/Q(x)` with `deg P <= j`, `deg Q <= j + 1`
/// and `Q(0) = 1`, where `x = 1/N`.
#[derive(Clone, PartialEq, Debug)]
pub struct PadeApprox {
    pub j: usize,
    /// Coefficients of `P` in ascending powers of `x`.
    pub p: Vec<RF>,
    /// Coefficients of `Q` in ascending powers of `x`, `q[0] = 1`.
    pub q: Vec<RF>,
}

impl PadeApprox {
    /// The approximant as a canonical rational function of `N`.
    pub fn rational(&self) -> RF {
        let x = RF::var(N).pow(-1);
        let horner = |cs: &[RF]| cs.iter().rev().fold(RF::zero(), |acc, c| acc.mul(&x).add(c));
        horner(&self.p).div(&horner(&self.q)).expect("Q(0) = 1")
    }

    /// Numerator and denominator polynomials in `N` of the reduced form.
    pub fn num_den(&self) -> (MultiPoly, MultiPoly) {
        let r = self.rational();
        (r.num().clone(), r.den().clone())
    }

    pub fn expand(&self, m: usize) -> InvNSeries {
        InvNSeries { coeffs: series_div(&self.p, &self.q, m).expect("Q(0) = 1") }
    }
}

/// Least common multiple of row denominators, clearing the row to polynomials.
fn clear_row(row: &[RF]) -> Vec<MultiPoly> {
    let mut l = MultiPoly::one();
    for e in row {
        if !e.den().is_one() {
            let g = poly_gcd(&l, e.den());
            l = l.mul(&e.den().div_exact(&g).expect("gcd divides"));
        }
    }
    row.iter()
        .map(|e| e.num().mul(&l.div_exact(e.den()).expect("lcm is a multiple")))
        .collect()
}

/// Fraction-free elimination of the augmented system `[A | b]`. Returns
/// one solution with free unknowns set to zero, or `None` if inconsistent.
pub(crate) fn solve_bareiss(rows: Vec<Vec<RF>>, n: usize) -> Option<(Vec<RF>, usize)> {
    let mut m: Vec<Vec<MultiPoly>> = rows.iter().map(|r| clear_row(r)).collect();
    let nr = m.len();
    let mut prev = MultiPoly::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == nr {
            break;
        }
        let Some(pr) = (r..nr).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        for i in r + 1..nr {
            for cc in c + 1..=n {
                let v = m[r][c].mul(&m[i][cc]).sub(&m[i][c].mul(&m[r][cc]));
                m[i][cc] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][c] = MultiPoly::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    if (rank..nr).any(|i| !m[i][n].is_zero()) {
        return None;
    }
    let mut x = vec![RF::zero(); n];
    for (ri, &c) in pivots.iter().enumerate().rev() {
        let mut acc = RF::from_poly(m[ri][n].clone());
        for cc in c + 1..n {
            if !m[ri][cc].is_zero() && !x[cc].is_zero() {
                acc = acc.sub(&RF::from_poly(m[ri][cc].clone()).mul(&x[cc]));
            }
        }
        x[c] = acc.div(&RF::from_poly(m[ri][c].clone())).expect("nonzero pivot");
    }
    Some((x, rank))
}

/// `[j; j+1]` approximant in `x = 1/N` matching orders `0..=2j+1`.
pub fn pade_j_jplus1(s: &InvNSeries, j: usize) -> Result<PadeApprox, CoreError> {
    let need = 2 * j + 1;
    if s.order() < need {
        return Err(CoreError::InsufficientOrders { needed: need, available: s.order() });
    }
    let c = |i: i64| -> RF { if i < 0 { RF::zero() } else { s.coeffs[i as usize].clone() } };
    // rows i = j+1..2j+1: sum_{l=1}^{j+1} b_l s_{i-l} = -s_i
    let rows: Vec<Vec<RF>> = (j + 1..=2 * j + 1)
        .map(|i| {
            let mut row: Vec<RF> = (1..=j + 1).map(|l| c(i as i64 - l as i64)).collect();
            row.push(c(i as i64).neg());
            row
        })
        .collect();
    let (b, _rank) = solve_bareiss(rows, j + 1).ok_or(CoreError::DegenerateSystem(j))?;
    let mut q = vec![RF::one()];
    q.extend(b);
    let p: Vec<RF> = (0..=j)
        .map(|i| {
            let mut acc = RF::zero();
            for (l, bl) in q.iter().enumerate().take(i + 1) {
                acc = acc.add(&bl.mul(&c(i as i64 - l as i64)));
            }
            acc
        })
        .collect();
    let out = PadeApprox { j, p, q };
    if cfg!(debug_assertions) || cfg!(test) {
        let e = out.expand(need);
        assert_eq!(e.coeffs(), &s.coeffs[..=need], "Padé fit does not reproduce its input");
    }
    Ok(out)
}

/// Whether the approximant reproduces every available coefficient.
pub fn pade_is_exact(s: &InvNSeries, p: &PadeApprox) -> bool {
    p.expand(s.order()).coeffs() == s.coeffs()
}
