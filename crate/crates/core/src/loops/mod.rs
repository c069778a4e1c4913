//! Order-by-order solution of the V = 0 loop-equation hierarchy.
//!
//! `W_l = sum_m N^m W_l^(m)` with `W_1 = N * (±1)` exactly. Each coefficient
//! is a rational function of `kappa` and the arguments `z, z1, ..`, one per
//! domain configuration. Entries are stored for canonical configurations
//! (OUT slots first) and resolved lazily from the equations.

pub mod frac;
mod stratum;
pub mod symform;
pub mod symmetry;

use crate::error::CoreError;
use crate::nseries::InvNSeries;
use cbeta_algebra::var::{KAPPA, Z, Z1, ZETA};
use cbeta_algebra::{BigRat, Var, RF};
use frac::{Frac, FracError};
use num_traits::One;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Highest `M` for which `w2_series(M)` is supported.
pub const MAX_ORDER: usize = 9;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Domain {
    Out,
    In,
}

impl Domain {
    /// Value of `W_1^(1)` in this domain.
    pub fn w(self) -> i64 {
        match self {
            Domain::In => 1,
            Domain::Out => -1,
        }
    }

    pub fn flip(self) -> Domain {
        match self {
            Domain::In => Domain::Out,
            Domain::Out => Domain::In,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Domain::In => "IN",
            Domain::Out => "OUT",
        }
    }
}

/// Domain of each argument of `W_l`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DomainConfig {
    pub slots: Vec<Domain>,
}

impl DomainConfig {
    /// `k` OUT slots followed by `l - k` IN slots.
    pub fn canonical(l: usize, k: usize) -> DomainConfig {
        let mut slots = vec![Domain::Out; k];
        slots.extend(std::iter::repeat_n(Domain::In, l - k));
        DomainConfig { slots }
    }

    pub fn new(slots: Vec<Domain>) -> DomainConfig {
        DomainConfig { slots }
    }

    pub fn n_out(&self) -> usize {
        self.slots.iter().filter(|d| **d == Domain::Out).count()
    }

    pub fn is_canonical(&self) -> bool {
        self.slots.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn label(&self) -> String {
        self.slots.iter().map(|d| d.label()).collect::<Vec<_>>().join(",")
    }

    pub fn parse(s: &str) -> Option<DomainConfig> {
        let mut slots = Vec::new();
        for t in s.split(',') {
            slots.push(match t.trim() {
                "IN" => Domain::In,
                "OUT" => Domain::Out,
                _ => return None,
            });
        }
        Some(DomainConfig { slots })
    }
}

impl fmt::Display for DomainConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CoeffKey {
    pub l: usize,
    pub m: i32,
    pub domain: DomainConfig,
}

impl CoeffKey {
    pub fn new(l: usize, m: i32, domain: DomainConfig) -> CoeffKey {
        assert_eq!(domain.slots.len(), l, "domain length must equal arity");
        CoeffKey { l, m, domain }
    }
}

/// Highest order at which `W_l` can be nonzero.
pub fn top_order(l: usize) -> i32 {
    match l {
        1 => 1,
        2 => 0,
        _ => 1 - l as i32,
    }
}

/// How a stored entry was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Seed,
    LeadingNull,
    OneRow,
    SolvedIn,
    SolvedOut,
    Inversion,
    Imported,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Seed => "seed",
            Method::LeadingNull => "leading-null",
            Method::OneRow => "one-row",
            Method::SolvedIn => "solved-in",
            Method::SolvedOut => "solved-out",
            Method::Inversion => "inversion",
            Method::Imported => "imported",
        }
    }
}

/// Memoized coefficients `W_l^(m)` keyed by `(l, m, number of OUT slots)`.
pub struct ResolventTable {
    entries: BTreeMap<(usize, i32, usize), (Frac, Method)>,
    lazy: bool,
    order: Vec<(usize, i32, usize)>,
}

impl Default for ResolventTable {
    fn default() -> Self {
        ResolventTable::new()
    }
}

pub(crate) fn arity_mask(l: usize) -> u16 {
    (0..l).fold(0u16, |m, i| m | (1 << Var::arg(i).index()))
}

impl ResolventTable {
    /// Table with `W_1` and the Koebe solution installed; everything else is
    /// solved on demand.
    pub fn new() -> ResolventTable {
        let mut t = ResolventTable { entries: BTreeMap::new(), lazy: true, order: Vec::new() };
        t.seed_w1();
        t.seed_w2_koebe();
        t
    }

    /// Table that only holds what is inserted; missing entries are errors.
    pub fn frozen() -> ResolventTable {
        ResolventTable { entries: BTreeMap::new(), lazy: false, order: Vec::new() }
    }

    fn insert(&mut self, l: usize, m: i32, k: usize, f: Frac, how: Method) {
        if self.entries.insert((l, m, k), (f, how)).is_none() {
            self.order.push((l, m, k));
        }
    }

    /// `W_1^(1) = ±1`; lower orders vanish.
    pub fn seed_w1(&mut self) {
        self.insert(1, 1, 0, Frac::int(1), Method::Seed);
        self.insert(1, 1, 1, Frac::int(-1), Method::Seed);
    }

    /// `W_2^(0) = -(4/kappa) z z1/(z1 - z)^2` on mixed domains, 0 otherwise.
    pub fn seed_w2_koebe(&mut self) {
        self.insert(2, 0, 0, Frac::zero(), Method::Seed);
        self.insert(2, 0, 1, koebe(), Method::Seed);
        self.insert(2, 0, 2, Frac::zero(), Method::Seed);
    }

    /// `W_{l+1}^(1-l) = 0` in every configuration.
    pub fn leading_null(&mut self, l: usize) {
        assert!(l >= 2);
        for k in 0..=l + 1 {
            self.insert(l + 1, 1 - l as i32, k, Frac::zero(), Method::LeadingNull);
        }
    }

    pub fn is_lazy(&self) -> bool {
        self.lazy
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Stored entries in insertion order.
    pub fn keys(&self) -> Vec<(usize, i32, usize, Method)> {
        self.order.iter().map(|k| (k.0, k.1, k.2, self.entries[k].1)).collect()
    }

    pub(crate) fn stored(&self) -> Vec<((usize, i32, usize), Frac, Method)> {
        self.order.iter().map(|k| (*k, self.entries[k].0.clone(), self.entries[k].1)).collect()
    }

    /// The `(l, m)` pairs present in the table.
    pub fn dependency_set(&self) -> BTreeSet<(usize, i32)> {
        self.entries.keys().map(|k| (k.0, k.1)).collect()
    }

    /// Canonical entry, resolving it if needed.
    pub(crate) fn entry(&mut self, l: usize, m: i32, k: usize) -> Result<Frac, CoreError> {
        assert!(k <= l);
        if m > top_order(l) || (l == 1 && m < 1) {
            return Ok(Frac::zero());
        }
        if let Some((f, _)) = self.entries.get(&(l, m, k)) {
            return Ok(f.clone());
        }
        if !self.lazy {
            return Err(CoreError::MissingDependency(format!("W_{l}^({m}) with {k} OUT slots")));
        }
        if l >= 3 && m == 2 - l as i32 {
            self.leading_null(l - 1);
            return Ok(Frac::zero());
        }
        let (f, how) = if k == 0 || k == l {
            if k == 0 {
                (self.solve_generic(l, m, 0)?, Method::SolvedIn)
            } else {
                let base = self.entry(l, m, 0)?;
                (invert_entry(&base, l, 0), Method::Inversion)
            }
        } else if 2 * k > l {
            let base = self.entry(l, m, l - k)?;
            (invert_entry(&base, l, l - k), Method::Inversion)
        } else if k == 1 && l >= 3 && m == 1 - l as i32 {
            (self.one_row_frac(l - 1)?, Method::OneRow)
        } else {
            (self.solve_generic(l, m, k)?, Method::SolvedOut)
        };
        self.insert(l, m, k, f.clone(), how);
        Ok(f)
    }

    /// `W_l^(m)` evaluated at the given arguments.
    pub(crate) fn eval_at(&mut self, l: usize, m: i32, args: &[(Var, Domain)]) -> Result<Frac, CoreError> {
        debug_assert_eq!(args.len(), l);
        if m > top_order(l) {
            return Ok(Frac::zero());
        }
        if l == 1 {
            return Ok(if m == 1 { Frac::int(args[0].1.w()) } else { Frac::zero() });
        }
        let k = args.iter().filter(|a| a.1 == Domain::Out).count();
        let f = self.entry(l, m, k)?;
        if f.is_zero() {
            return Ok(f);
        }
        let mut perm = cbeta_algebra::poly::identity_perm();
        let mut next_out = 0;
        let mut next_in = k;
        for (v, d) in args {
            let slot = match d {
                Domain::Out => {
                    next_out += 1;
                    next_out - 1
                }
                Domain::In => {
                    next_in += 1;
                    next_in - 1
                }
            };
            perm[Var::arg(slot).index()] = *v;
        }
        f.rename(&perm).map_err(frac_err)
    }

    /// Canonical entry as a rational function in `z, z1, ..`.
    pub fn get(&mut self, key: &CoeffKey) -> Result<RF, CoreError> {
        let args: Vec<(Var, Domain)> =
            key.domain.slots.iter().enumerate().map(|(i, d)| (Var::arg(i), *d)).collect();
        Ok(self.eval_at(key.l, key.m, &args)?.to_rf())
    }

    /// Overwrites a stored entry (used to test corruption detection).
    pub fn set(&mut self, key: &CoeffKey, f: &RF) -> Result<(), CoreError> {
        if !key.domain.is_canonical() {
            return Err(CoreError::InvalidInput("only canonical configurations can be set".into()));
        }
        let fr = Frac::from_rf(f).ok_or_else(|| CoreError::InvalidInput("denominator does not factor".into()))?;
        self.insert(key.l, key.m, key.domain.n_out(), fr, Method::Imported);
        Ok(())
    }

    /// Solves `key` from its stratum through the generic path, ignoring any
    /// seed or shortcut that would otherwise supply it.
    pub fn solve_coefficient(&mut self, key: &CoeffKey) -> Result<RF, CoreError> {
        let k = key.domain.n_out();
        if key.l == 1 {
            if key.m >= 1 {
                return Err(CoreError::InvalidInput("W_1^(1) is the nonlinear seed".into()));
            }
            return Ok(self.solve_generic(1, key.m, k)?.to_rf());
        }
        let f = if k == key.l {
            let base = self.solve_generic(key.l, key.m, 0)?;
            invert_entry(&base, key.l, 0)
        } else {
            self.solve_generic(key.l, key.m, k)?
        };
        let full = DomainConfig::canonical(key.l, k);
        let args: Vec<(Var, Domain)> = full.slots.iter().enumerate().map(|(i, d)| (Var::arg(i), *d)).collect();
        let mut perm = cbeta_algebra::poly::identity_perm();
        // map canonical slots onto the requested layout
        let mut no = 0;
        let mut ni = k;
        for (i, d) in key.domain.slots.iter().enumerate() {
            let slot = if *d == Domain::Out {
                no += 1;
                no - 1
            } else {
                ni += 1;
                ni - 1
            };
            perm[args[slot].0.index()] = Var::arg(i);
        }
        Ok(f.rename(&perm).map_err(frac_err)?.to_rf())
    }

    /// Solves canonical configuration `k` of `W_l^(t)` from stratum `t + 1`.
    pub(crate) fn solve_generic(&mut self, l: usize, t: i32, k: usize) -> Result<Frac, CoreError> {
        let q = t + 1;
        let cfg = DomainConfig::canonical(l, k);
        let d0 = if k == 0 { Domain::In } else { Domain::Out };
        let rest: Vec<Domain> = if k == 0 {
            cfg.slots[1..].to_vec()
        } else {
            let mut r = vec![Domain::Out; k - 1];
            r.extend(std::iter::repeat_n(Domain::In, l - k));
            r
        };
        let r = Frac::sum(&stratum::terms(self, l, q, d0, &rest, false)?);
        let z = Frac::var(Z);
        let kinv = Frac::atom_inv(frac::Atom::Var(KAPPA), 1);
        let half_kappa = Frac::var(KAPPA).scale_by(&BigRat::new(1.into(), 2.into()));
        match d0 {
            Domain::In => {
                // -kappa U/z + (kappa/2) L[U] + R = 0 with L[U] = 2 R(0)/kappa
                let r0 = r.at_zero(Z).map_err(|_| CoreError::NonlinearIsolation(format!("W_{l}^({t}) remainder singular at 0")))?;
                Ok(z.mul(&kinv).mul(&r.add(&r0)))
            }
            Domain::Out => {
                let mut args = vec![(Z, Domain::In)];
                args.extend(rest.iter().enumerate().map(|(i, d)| (Var::arg(i + 1), *d)));
                let c = lim_term(l, &self.eval_at(l, t, &args)?)?;
                Ok(z.mul(&kinv).mul(&r.add(&half_kappa.mul(&c))).neg())
            }
        }
    }

    fn one_row_frac(&mut self, l: usize) -> Result<Frac, CoreError> {
        let mut terms = Vec::with_capacity(l);
        for j in 1..=l {
            let zj = Var::arg(j);
            let mut args = vec![(Z, Domain::Out)];
            args.extend((1..=l).filter(|i| *i != j).map(|i| (Var::arg(i), Domain::In)));
            // W_l(z, I \ z_j) lives in variables z, z1..: relabel its slots
            let w = self.eval_at(l, 1 - l as i32, &args)?;
            let kern = Frac::var(Z).mul(&Frac::var(zj)).mul(&Frac::inv_diff(Z, zj, 2));
            terms.push(kern.mul(&w));
        }
        Ok(Frac::sum(&terms).mul(&Frac::atom_inv(frac::Atom::Var(KAPPA), 1)).scale_by(&BigRat::from_integer((-2).into())))
    }

    /// `W_{l+1}^(-l)` in the (OUT, IN^l) configuration from the one-row relation.
    pub fn one_row(&mut self, l: usize) -> Result<RF, CoreError> {
        assert!(l >= 2);
        Ok(self.one_row_frac(l)?.to_rf())
    }

    /// Residual of the order-`N^q` stratum of the `l`-th equation with the
    /// distinguished argument in domain `d0` and the others in `rest`.
    pub fn residual(&mut self, l: usize, q: i32, d0: Domain, rest: &[Domain]) -> Result<RF, CoreError> {
        assert_eq!(rest.len(), l - 1);
        Ok(Frac::sum(&stratum::terms(self, l, q, d0, rest, true)?).to_rf())
    }

    /// Residuals for every configuration of stratum `q` of equation `l`.
    pub fn residuals_all(&mut self, l: usize, q: i32) -> Result<Vec<(DomainConfig, RF)>, CoreError> {
        let mut out = Vec::new();
        for d0 in [Domain::Out, Domain::In] {
            for j in 0..l {
                let rest = DomainConfig::canonical(l - 1, j).slots;
                let mut full = vec![d0];
                full.extend(rest.iter().cloned());
                out.push((DomainConfig::new(full), self.residual(l, q, d0, &rest)?));
            }
        }
        Ok(out)
    }

    /// `W_2` series about `N = ∞` in `zeta = z1/z` from the (OUT, IN) entries.
    pub fn w2_series(&mut self, m: usize) -> Result<InvNSeries, CoreError> {
        if m > MAX_ORDER {
            return Err(CoreError::OrderTooHigh(m));
        }
        let mut coeffs = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let f = self.entry(2, -(j as i32), 1)?;
            coeffs.push(to_zeta(&f.to_rf()));
        }
        Ok(InvNSeries::new(coeffs))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .order
            .iter()
            .map(|key| {
                let (f, _) = &self.entries[key];
                json!({
                    "l": key.0,
                    "m": key.1,
                    "domain": DomainConfig::canonical(key.0, key.2).label(),
                    "ratfunc": f.to_rf().to_json(),
                })
            })
            .collect();
        Value::Array(rows)
    }

    /// Imports a table export; the result is frozen.
    pub fn from_json(v: &Value) -> Result<ResolventTable, CoreError> {
        let rows = v.as_array().ok_or_else(|| CoreError::InvalidInput("table must be an array".into()))?;
        let mut t = ResolventTable::frozen();
        for r in rows {
            let l = r["l"].as_u64().ok_or_else(|| CoreError::InvalidInput("missing l".into()))? as usize;
            let m = r["m"].as_i64().ok_or_else(|| CoreError::InvalidInput("missing m".into()))? as i32;
            let d = r["domain"]
                .as_str()
                .and_then(DomainConfig::parse)
                .ok_or_else(|| CoreError::InvalidInput("bad domain".into()))?;
            if d.slots.len() != l || !d.is_canonical() {
                return Err(CoreError::InvalidInput("domain must be canonical and of length l".into()));
            }
            let f = RF::from_json(&r["ratfunc"])?;
            let fr = Frac::from_rf(&f).ok_or_else(|| CoreError::InvalidInput("denominator does not factor".into()))?;
            t.insert(l, m, d.n_out(), fr, Method::Imported);
        }
        Ok(t)
    }

    /// Entries as rational functions, in insertion order.
    pub fn export(&self) -> Vec<(CoeffKey, RF)> {
        self.order
            .iter()
            .map(|k| (CoeffKey::new(k.0, k.1, DomainConfig::canonical(k.0, k.2)), self.entries[k].0.to_rf()))
            .collect()
    }

    /// Makes sure everything needed for `W_2^(-m)` is present.
    pub fn populate(&mut self, m: usize) -> Result<(), CoreError> {
        for j in 0..=m {
            self.entry(2, -(j as i32), 1)?;
        }
        Ok(())
    }
}

fn frac_err(e: FracError) -> CoreError {
    CoreError::NonlinearIsolation(format!("{e:?}"))
}

/// `lim_{z -> 0} f/z`, or the derivative at 0 for one-point functions.
pub(crate) fn lim_term(l: usize, f: &Frac) -> Result<Frac, CoreError> {
    if l == 1 {
        // W_1 coefficients are constants in z
        return f.derivative(Z).at_zero(Z).map_err(frac_err);
    }
    f.limit_div_at_zero(Z).map_err(frac_err)
}

pub(crate) fn koebe() -> Frac {
    Frac::var(Z)
        .mul(&Frac::var(Z1))
        .mul(&Frac::inv_diff(Z, Z1, 2))
        .mul(&Frac::atom_inv(frac::Atom::Var(KAPPA), 1))
        .scale_by(&BigRat::from_integer((-4).into()))
}

/// Entry with `l - k0` OUT slots from the entry with `k0` OUT slots, via
/// `W(1/x; flipped domains) = (-1)^l W(x)`.
pub(crate) fn invert_entry(f: &Frac, l: usize, k0: usize) -> Frac {
    if f.is_zero() {
        return Frac::zero();
    }
    let k = l - k0;
    let mut perm = cbeta_algebra::poly::identity_perm();
    for i in 0..k0 {
        perm[Var::arg(i).index()] = Var::arg(k + i);
    }
    for i in 0..k {
        perm[Var::arg(k0 + i).index()] = Var::arg(i);
    }
    let g = f.rename(&perm).expect("permutation").invert(arity_mask(l));
    if l % 2 == 1 {
        g.neg()
    } else {
        g
    }
}

/// Rewrites a two-point coefficient in `zeta = z1/z` (sets `z = 1`).
pub fn to_zeta(f: &RF) -> RF {
    let mut perm = cbeta_algebra::poly::identity_perm();
    perm[Z1.index()] = ZETA;
    f.rename(&perm).eval(&[(Z, BigRat::one())]).expect("no pole at z = 1")
}

/// Variables `z, z1, .., z_{l-1}` as a bit mask.
pub fn arg_mask(l: usize) -> u16 {
    arity_mask(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cbeta_algebra::parse;

    fn key(l: usize, m: i32, d: &str) -> CoeffKey {
        CoeffKey::new(l, m, DomainConfig::parse(d).unwrap())
    }

    #[test]
    fn koebe_from_equations() {
        let mut t = ResolventTable::new();
        let k = t.solve_coefficient(&key(2, 0, "OUT,IN")).unwrap();
        assert_eq!(k, parse("-4/kappa*z*z1/(z1-z)^2").unwrap());
        assert!(t.solve_coefficient(&key(2, 0, "IN,IN")).unwrap().is_zero());
        assert_eq!(t.solve_coefficient(&key(2, 0, "IN,OUT")).unwrap(), t.get(&key(2, 0, "IN,OUT")).unwrap());
    }

    #[test]
    fn first_correction() {
        let mut t = ResolventTable::new();
        let w = t.get(&key(2, -1, "OUT,IN")).unwrap();
        assert_eq!(w, parse("-4*(kappa-1)/kappa^2*z*z1*(z+z1)/(z-z1)^3").unwrap());
        for q in [1, 0] {
            for (cfg, r) in t.residuals_all(2, q).unwrap() {
                assert!(r.is_zero(), "stratum {q} {cfg}: {r}");
            }
        }
    }
}
