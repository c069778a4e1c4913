//! Terms of one order-`N^q` stratum of the loop equations.

use super::frac::{Atom, Frac};
use super::{lim_term, top_order, Domain, ResolventTable};
use crate::error::CoreError;
use cbeta_algebra::var::{KAPPA, Z};
use cbeta_algebra::{BigRat, Poly, Var};
use num_traits::One;

fn half() -> BigRat {
    BigRat::new(1.into(), 2.into())
}

/// `-(kappa/2) / z`
fn pre3() -> Frac {
    Frac::var(KAPPA).mul(&Frac::atom_inv(Atom::Var(Z), 1)).scale_by(&-half())
}

/// Terms whose sum is the stratum. With `with_unknown = false` the
/// contributions linear in `W_l^(q-1)` at the distinguished point and in
/// the limit term are dropped, leaving the remainder used by the solver.
pub(crate) fn terms(
    t: &mut ResolventTable,
    l: usize,
    q: i32,
    d0: Domain,
    rest: &[Domain],
    with_unknown: bool,
) -> Result<Vec<Frac>, CoreError> {
    let kappa = Frac::var(KAPPA);
    let km1 = kappa.sub(&Frac::one());
    let pre = pre3();
    let mut out = Vec::new();

    if l == 1 {
        // (kappa - 1) W_1' vanishes since W_1 is constant in z
        let w2 = t.eval_at(2, q, &[(Z, d0), (Z, d0)])?;
        out.push(pre.mul(&w2));
        for p in (q - 1)..=1 {
            let unknown = p == 1 || q - p == 1;
            if unknown && !with_unknown && q != 2 {
                continue;
            }
            let a = t.eval_at(1, p, &[(Z, d0)])?;
            let b = t.eval_at(1, q - p, &[(Z, d0)])?;
            out.push(pre.mul(&a.mul(&b)));
        }
        if q == 2 {
            out.push(pre.neg());
        }
        let lim_q = lim_term(1, &t.eval_at(1, q, &[(Z, Domain::In)])?)?;
        out.push(lim_q.mul(&Frac::one().sub(&kappa)).scale_by(&half()));
        if with_unknown {
            let lim_u = lim_term(1, &t.eval_at(1, q - 1, &[(Z, Domain::In)])?)?;
            out.push(lim_u.mul(&kappa).scale_by(&half()));
        }
        return Ok(out);
    }

    let ivars: Vec<(Var, Domain)> = rest.iter().enumerate().map(|(i, d)| (Var::arg(i + 1), *d)).collect();
    let mut zi = vec![(Z, d0)];
    zi.extend(ivars.iter().cloned());

    // T1
    let wq = t.eval_at(l, q, &zi)?;
    out.push(km1.mul(&wq.derivative(Z)));

    // T2
    let mut zzi = vec![(Z, d0), (Z, d0)];
    zzi.extend(ivars.iter().cloned());
    let w2 = t.eval_at(l + 1, q, &zzi)?;
    out.push(pre.mul(&w2));

    // T3, unknown part from J = {} and J = I
    if with_unknown {
        let u = t.eval_at(l, q - 1, &zi)?;
        out.push(pre.mul(&u).scale_by(&BigRat::from_integer((2 * d0.w()).into())));
    }
    // T3, proper nonempty J containing the first element, doubled
    let n = ivars.len();
    if n >= 2 {
        let two_pre = pre.scale_by(&BigRat::from_integer(2.into()));
        for mask in 0u32..(1 << (n - 1)) {
            let inj = (mask << 1) | 1;
            if inj == (1 << n) - 1 {
                continue;
            }
            let mut a_args = vec![(Z, d0)];
            let mut b_args = vec![(Z, d0)];
            for (i, v) in ivars.iter().enumerate() {
                if inj >> i & 1 == 1 {
                    a_args.push(*v);
                } else {
                    b_args.push(*v);
                }
            }
            let la = a_args.len();
            let lb = b_args.len();
            for p in (q - top_order(lb))..=top_order(la) {
                let a = t.eval_at(la, p, &a_args)?;
                if a.is_zero() {
                    continue;
                }
                let b = t.eval_at(lb, q - p, &b_args)?;
                if b.is_zero() {
                    continue;
                }
                out.push(two_pre.mul(&a.mul(&b)));
            }
        }
    }

    // T4, T5, T6
    if top_order(l - 1) >= q {
        let a = t.eval_at(l - 1, q, &ivars)?;
        for j in 0..n {
            let zj = ivars[j].0;
            let mut bargs = ivars.clone();
            bargs[j] = (Z, d0);
            let b = t.eval_at(l - 1, q, &bargs)?;
            let kern = Frac::from_poly(BigRat::one(), Poly::var(zj).add(&Poly::var(Z))).mul(&Frac::inv_diff(zj, Z, 1));
            let inv_zj = Frac::atom_inv(Atom::Var(zj), 1);
            let amb = a.sub(&b);
            let ka = kern.mul(&amb);
            out.push(ka.derivative(zj).neg());
            out.push(ka.mul(&inv_zj));
            out.push(b.mul(&inv_zj).neg());
        }
    }

    // T7
    let mut lim_args = vec![(Z, Domain::In)];
    lim_args.extend(ivars.iter().cloned());
    let lq = lim_term(l, &t.eval_at(l, q, &lim_args)?)?;
    out.push(lq.mul(&Frac::one().sub(&kappa)).scale_by(&half()));
    if with_unknown {
        let lu = lim_term(l, &t.eval_at(l, q - 1, &lim_args)?)?;
        out.push(lu.mul(&kappa).scale_by(&half()));
    }

    // T8
    if l == 2 && q == 1 {
        out.push(Frac::atom_inv(Atom::Var(ivars[0].0), 1));
    }
    Ok(out)
}
