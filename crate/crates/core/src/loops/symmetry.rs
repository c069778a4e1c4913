//! Symmetry and residual suites over the stored table entries.

use super::frac::{Atom, Frac};
use super::{arity_mask, invert_entry, DomainConfig, Method, ResolventTable};
use crate::error::CoreError;
use cbeta_algebra::poly::identity_perm;
use cbeta_algebra::var::{ALPHA, KAPPA};
use cbeta_algebra::{BigRat, Mono, Var};
use num_bigint::BigInt;

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: String, pass: bool) -> Check {
        Check { name, pass }
    }
}

fn label(l: usize, m: i32, k: usize) -> String {
    format!("W_{l}^({m}){}", DomainConfig::canonical(l, k))
}

fn same(a: &Frac, b: &Frac) -> bool {
    a.to_rf() == b.to_rf()
}

/// `f(alpha z_0, .., alpha z_{l-1}) = f` with `alpha` kept symbolic.
pub fn affine_invariant(f: &Frac, l: usize) -> bool {
    if f.is_zero() {
        return true;
    }
    let mask = arity_mask(l);
    let scaled = f.num().map_monos(|m| {
        let d: u32 = Var::all().filter(|v| mask >> v.index() & 1 == 1).map(|v| m.exp(v)).sum();
        m.mul(Mono::var_pow(ALPHA, d))
    });
    // every denominator atom in the z's picks up exactly one alpha
    let dd: u32 = f
        .den_atoms()
        .iter()
        .map(|(a, e)| match a {
            Atom::Var(v) if mask >> v.index() & 1 == 1 => *e,
            Atom::Diff(x, y) => {
                let (bx, by) = (mask >> x.index() & 1, mask >> y.index() & 1);
                if bx == 1 && by == 1 {
                    *e
                } else if bx == 0 && by == 0 {
                    0
                } else {
                    u32::MAX
                }
            }
            _ => 0,
        })
        .fold(0u32, |a, b| a.saturating_add(b));
    if dd == u32::MAX {
        return false;
    }
    scaled == f.num().mul_mono(Mono::var_pow(ALPHA, dd))
}

/// Invariance under swapping neighbouring arguments within each domain block.
pub fn block_permutation_invariant(f: &Frac, l: usize, k: usize) -> bool {
    (0..l.saturating_sub(1)).filter(|&i| i + 1 != k).all(|i| {
        let mut p = identity_perm();
        p[Var::arg(i).index()] = Var::arg(i + 1);
        p[Var::arg(i + 1).index()] = Var::arg(i);
        f.rename(&p).map(|g| same(&g, f)).unwrap_or(false)
    })
}

/// `(-1)^l kappa^{-l} W_l(-kappa N, 1/kappa) = W_l(N, kappa)` on the `N^m`
/// coefficient: `c(1/kappa) = (-1)^l kappa^l (-kappa)^{-m} c(kappa)`.
pub fn duality_invariant(f: &Frac, l: usize, m: i32) -> bool {
    let lhs = f.invert(1 << KAPPA.index());
    let sign = if (l as i32 + m).rem_euclid(2) == 0 { 1 } else { -1 };
    let p = l as i32 - m;
    let kp = if p >= 0 { Frac::var(KAPPA).pow_u(p as u32) } else { Frac::atom_inv(Atom::Var(KAPPA), (-p) as u32) };
    same(&lhs, &f.mul(&kp).scale_by(&BigRat::from_integer(BigInt::from(sign))))
}

impl Frac {
    fn pow_u(&self, e: u32) -> Frac {
        (0..e).fold(Frac::one(), |a, _| a.mul(self))
    }
}

/// All symmetry checks over the entries currently stored.
pub fn symmetry_suite(t: &mut ResolventTable) -> Result<Vec<Check>, CoreError> {
    let mut out = Vec::new();
    let stored: Vec<_> = t.stored();
    for ((l, m, k), f, how) in stored {
        let name = label(l, m, k);
        out.push(Check::new(format!("affine {name}"), affine_invariant(&f, l)));
        out.push(Check::new(format!("permutation {name}"), block_permutation_invariant(&f, l, k)));
        out.push(Check::new(format!("duality {name}"), duality_invariant(&f, l, m)));
        if l >= 2 && (k == 0 || k == l) {
            out.push(Check::new(format!("pure-domain {name}"), f.is_zero()));
        }
        if l >= 2 {
            let mirror = t.entry(l, m, l - k)?;
            let inv_ok = same(&invert_entry(&mirror, l, l - k), &f);
            out.push(Check::new(format!("inversion {name}"), inv_ok));
            if how == Method::Inversion && k > 0 {
                let direct = t.solve_generic(l, m, k).ok();
                out.push(Check::new(format!("inversion-vs-direct {name}"), direct.map(|d| same(&d, &f)).unwrap_or(false)));
            }
        }
    }
    Ok(out)
}

/// Residuals of every stratum that defines a stored entry.
pub fn residual_suite(t: &mut ResolventTable) -> Result<Vec<Check>, CoreError> {
    let mut strata: Vec<(usize, i32)> = t.dependency_set().into_iter().map(|(l, m)| (l, m + 1)).collect();
    let lowest = strata.iter().filter(|s| s.0 == 2).map(|s| s.1).min().unwrap_or(1);
    for q in lowest..=2 {
        if !strata.contains(&(1, q)) {
            strata.push((1, q));
        }
    }
    strata.sort();
    let mut out = Vec::new();
    for (l, q) in strata {
        for (cfg, r) in t.residuals_all(l, q)? {
            out.push(Check::new(format!("residual eq {l} order N^{q} {cfg}"), r.is_zero()));
        }
    }
    Ok(out)
}
