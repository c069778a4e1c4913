//! Moments `m_k + N` from the two-point series, structure polynomials,
//! exact low-index moments by Padé fits, and the `(N, kappa)` duality.

use crate::error::CoreError;
use crate::nseries::{pade_is_exact, pade_j_jplus1, InvNSeries};
use cbeta_algebra::var::{K, KAPPA, N, ZETA};
use cbeta_algebra::{AlgebraError, BigRat, MultiPoly, Poly, RF};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

/// `m_k + N = sum_j c_j(k, kappa) N^{-j}` with each `c_j` polynomial in `k`.
#[derive(Clone, PartialEq, Debug)]
pub struct MomentSeries {
    pub series: InvNSeries,
}

/// `p_j(kappa)` for `j = 1..=M`.
#[derive(Clone, PartialEq, Debug)]
pub struct StructurePolySet {
    pub polys: Vec<RF>,
}

fn binom_poly(m: u32) -> RF {
    // C(k + m - 1, m - 1) = (k+1)(k+2)..(k+m-1)/(m-1)!
    let mut p = MultiPoly::one();
    let mut fact = BigInt::one();
    for i in 1..m {
        p = p.mul(&Poly::var(K).add(&MultiPoly::from_i64(i as i64)));
        fact *= BigInt::from(i);
    }
    RF::from_poly(p).scale(&BigRat::new(BigInt::one(), fact))
}

/// Coefficient of `zeta^k` as a polynomial in `k`, divided by `-4`.
pub fn zeta_coeff_to_moment(c: &RF) -> Result<RF, CoreError> {
    let parts = c.partial_fractions(ZETA, &BigRat::one())?;
    let mut acc = RF::zero();
    for (m, a) in parts {
        if a.contains(ZETA) {
            return Err(AlgebraError::UnsupportedPoleStructure.into());
        }
        if m == 0 {
            if !a.is_zero() {
                return Err(AlgebraError::UnsupportedPoleStructure.into());
            }
            continue;
        }
        let sign = if m % 2 == 0 { 1 } else { -1 };
        acc = acc.add(&a.mul(&binom_poly(m)).scale(&BigRat::from_integer(sign.into())));
    }
    Ok(acc.scale(&BigRat::new((-1).into(), 4.into())))
}

pub fn w2_to_moments(s: &InvNSeries) -> Result<MomentSeries, CoreError> {
    let coeffs = s.coeffs().iter().map(zeta_coeff_to_moment).collect::<Result<Vec<_>, _>>()?;
    Ok(MomentSeries { series: InvNSeries::new(coeffs) })
}

/// Coefficient of `k^e` in a function polynomial in `k`.
fn k_coeff(f: &RF, e: u32) -> RF {
    RF::new(f.num().coeff_of(K, e), f.den().clone()).expect("nonzero denominator")
}

impl MomentSeries {
    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// Order-`j` coefficient at integer `k`.
    pub fn at_k(&self, k: i64) -> InvNSeries {
        let kk = BigRat::from_integer(k.into());
        self.series.map(|c| c.eval(&[(K, kk.clone())]).expect("polynomial in k"))
    }

    pub fn to_json(&self) -> Value {
        json!({ "kind": "moment_series", "series": self.series.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<MomentSeries, CoreError> {
        Ok(MomentSeries { series: InvNSeries::from_json(&v["series"])? })
    }
}

pub fn structure_polys(ms: &MomentSeries) -> StructurePolySet {
    let polys = (1..=ms.order())
        .map(|j| {
            let c = k_coeff(&ms.series.coeffs()[j], j as u32 + 1);
            c.mul(&RF::var(KAPPA).pow(j as i32 + 1))
        })
        .collect();
    StructurePolySet { polys }
}

impl StructurePolySet {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": "structure_polys",
            "polys": self.polys.iter().enumerate().map(|(i, p)| json!({"j": i + 1, "p": p.to_json()})).collect::<Vec<_>>(),
        })
    }
}

/// `p(1/x) = (-1)^j x^{-j} p(x)`.
pub fn reciprocal(p: &RF, j: usize) -> bool {
    let Ok(lhs) = p.substitute(&[(KAPPA, RF::var(KAPPA).pow(-1))]) else { return false };
    let sign = if j % 2 == 0 { 1 } else { -1 };
    lhs == p.mul(&RF::var(KAPPA).pow(-(j as i32))).scale(&BigRat::from_integer(sign.into()))
}

pub fn reciprocity_check(ps: &StructurePolySet) -> bool {
    ps.polys.iter().enumerate().all(|(i, p)| reciprocal(p, i + 1))
}

/// Exact `m_k + N` as a rational function of `(N, kappa)`.
///
/// Fits `[j; j+1]` approximants to `m_k + N - k/kappa` for increasing `j`,
/// keeping at least one coefficient beyond those used in the fit.
pub fn pade_moment(ms: &MomentSeries, k: i64) -> Result<RF, CoreError> {
    let lead = RF::int(k).mul(&RF::var(KAPPA).pow(-1));
    let s = ms.at_k(k);
    let mut c = s.coeffs().to_vec();
    c[0] = c[0].sub(&lead);
    let s = InvNSeries::new(c);
    let m = s.order();
    let mut j = 0;
    while 2 * j + 2 <= m {
        match pade_j_jplus1(&s, j) {
            Ok(p) if pade_is_exact(&s, &p) => return Ok(p.rational().add(&lead)),
            Ok(_) | Err(CoreError::DegenerateSystem(_)) => {}
            Err(e) => return Err(e),
        }
        j += 1;
    }
    Err(CoreError::InsufficientOrders { needed: 2 * j + 2, available: m })
}

/// `kappa^{-2} f(-kappa N, 1/kappa) = f(N, kappa)`.
pub fn duality_fixed(f: &RF) -> bool {
    let kap = RF::var(KAPPA);
    let Ok(g) = f.substitute(&[(N, kap.mul(&RF::var(N)).neg()), (KAPPA, kap.pow(-1))]) else { return false };
    g.mul(&kap.pow(-2)) == *f
}

/// Order-by-order duality of the moment series:
/// `c_j(1/kappa) (-kappa)^{-j} kappa^{-2} = c_j(kappa)`.
pub fn duality_check(ms: &MomentSeries) -> bool {
    let kap = RF::var(KAPPA);
    ms.series.coeffs().iter().enumerate().all(|(j, c)| {
        let Ok(g) = c.substitute(&[(KAPPA, kap.pow(-1))]) else { return false };
        let factor = kap.neg().pow(-(j as i32)).mul(&kap.pow(-2));
        g.mul(&factor) == *c
    })
}

/// Compares the series at integer `k` with the expansion of the guess
/// `k/kappa + k (kappa-1)/(kappa (kappa N + 1 - kappa))`, order by order.
pub fn kth_m_diagnostic(ms: &MomentSeries, k: i64) -> Vec<(usize, bool)> {
    let kap = RF::var(KAPPA);
    let guess = RF::int(k).mul(&kap.sub(&RF::one())).div(&kap.mul(&kap.mul(&RF::var(N)).add(&RF::one()).sub(&kap))).unwrap();
    let guess = guess.add(&RF::int(k).mul(&kap.pow(-1)));
    let e = InvNSeries::expand(&guess, ms.order()).expect("decays at infinity");
    let s = ms.at_k(k);
    (0..=ms.order()).map(|j| (j, e.coeffs()[j] == s.coeffs()[j])).collect()
}

/// `m_k + N` of the moment series evaluated at `k = 0` must vanish.
pub fn vanishes_at_k0(ms: &MomentSeries) -> bool {
    ms.at_k(0).coeffs().iter().all(|c| c.is_zero())
}

/// Leading-coefficient extraction used by `structure_polys`, exposed for tests.
pub fn top_k_coefficient(ms: &MomentSeries, j: usize) -> RF {
    k_coeff(&ms.series.coeffs()[j], j as u32 + 1)
}

/// Moment series through order `m`, solved from the loop equations.
pub fn moment_series(m: usize) -> Result<MomentSeries, CoreError> {
    let mut t = crate::loops::ResolventTable::new();
    w2_to_moments(&t.w2_series(m)?)
}

/// Exact `m_k + N` for `k = 1, 2, ..` as long as the series supports a fit.
pub fn exact_forms(ms: &MomentSeries) -> Vec<RF> {
    let mut out = Vec::new();
    for k in 1.. {
        match pade_moment(ms, k) {
            Ok(f) => out.push(f),
            Err(_) => break,
        }
    }
    out
}
