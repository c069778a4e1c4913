//! JSON encoding of rational functions.
//!
//! `{"vars": [...], "num": [["p/q", [e1, ..]], ..], "den": [..]}` where each
//! exponent list follows `vars`, which holds the occurring variables in
//! alphabet order.

use crate::error::{AlgebraError, Result};
use crate::parse::parse_ratio;
use crate::poly::{BigRat, MultiPoly, Poly};
use crate::ratfunc::RF;
use crate::var::{Mono, Var};
use serde_json::{json, Value};

fn ratio_string(c: &BigRat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn poly_json(p: &MultiPoly, vars: &[Var]) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(m, c)| {
                let e: Vec<u32> = vars.iter().map(|v| m.exp(*v)).collect();
                json!([ratio_string(c), e])
            })
            .collect(),
    )
}

pub fn to_json(f: &RF) -> Value {
    let vars = f.vars();
    json!({
        "vars": vars.iter().map(|v| v.name()).collect::<Vec<_>>(),
        "num": poly_json(f.num(), &vars),
        "den": poly_json(f.den(), &vars),
    })
}

fn err(s: &str) -> AlgebraError {
    AlgebraError::Json(s.to_string())
}

fn poly_from_json(v: &Value, vars: &[Var]) -> Result<MultiPoly> {
    let arr = v.as_array().ok_or_else(|| err("term list expected"))?;
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        let pair = t.as_array().ok_or_else(|| err("term must be [coeff, exps]"))?;
        if pair.len() != 2 {
            return Err(err("term must be [coeff, exps]"));
        }
        let c = parse_ratio(pair[0].as_str().ok_or_else(|| err("coefficient must be a string"))?)?;
        let es = pair[1].as_array().ok_or_else(|| err("exponents must be a list"))?;
        if es.len() != vars.len() {
            return Err(err("exponent list length differs from vars"));
        }
        let mut m = Mono::ONE;
        for (v, e) in vars.iter().zip(es) {
            let e = e.as_u64().ok_or_else(|| err("exponent must be a non-negative integer"))?;
            if e > 0 {
                m = m.mul(Mono::var_pow(*v, e as u32));
            }
        }
        terms.push((m, c));
    }
    Ok(Poly::from_terms(terms))
}

pub fn from_json(v: &Value) -> Result<RF> {
    let names = v.get("vars").and_then(Value::as_array).ok_or_else(|| err("missing vars"))?;
    let mut vars = Vec::with_capacity(names.len());
    for n in names {
        let s = n.as_str().ok_or_else(|| err("variable names must be strings"))?;
        vars.push(Var::from_name(s).ok_or_else(|| AlgebraError::UnknownVariable(s.to_string()))?);
    }
    let num = poly_from_json(v.get("num").ok_or_else(|| err("missing num"))?, &vars)?;
    let den = poly_from_json(v.get("den").ok_or_else(|| err("missing den"))?, &vars)?;
    RF::new(num, den)
}

impl RF {
    pub fn to_json(&self) -> Value {
        to_json(self)
    }

    pub fn from_json(v: &Value) -> Result<RF> {
        from_json(v)
    }
}
