//! JSON expression trees for rational functions.
//!
//! Nodes: `{"var": "z1"}`, `{"var": "zbar2"}`, `{"const": "1/2+3i"}`,
//! `{"add": [..]}`, `{"mul": [..]}`, `{"sub": [a, b]}`, `{"div": [a, b]}`,
//! `{"pow": [a, k]}` with integer `k` (negative allowed). The variable `r`
//! stands for `|z|^2` and `r1`, `r2`, ... for `|z_k|^2`.

use serde_json::Value;

use super::gauss::GaussRat;
use super::rational::WRational;
use crate::error::{Error, Result};

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn var(n: usize, name: &str) -> Result<WRational> {
    let index = |s: &str| -> Result<usize> {
        let k: usize = s.parse().map_err(|_| err(format!("bad variable `{name}`")))?;
        if k == 0 || k > n {
            return Err(err(format!("variable `{name}` out of range for n = {n}")));
        }
        Ok(k - 1)
    };
    if name == "r" {
        return Ok(WRational::r(n));
    }
    if let Some(rest) = name.strip_prefix("zbar") {
        return Ok(WRational::zbar(n, index(rest)?));
    }
    if let Some(rest) = name.strip_prefix('z') {
        return Ok(WRational::z(n, index(rest)?));
    }
    if let Some(rest) = name.strip_prefix('r') {
        return Ok(WRational::r_k(n, index(rest)?));
    }
    Err(err(format!("unknown variable `{name}`")))
}

fn args(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| err("operator arguments must be an array"))
}

/// Parse an expression tree in `n` complex variables.
pub fn parse_expr(n: usize, v: &Value) -> Result<WRational> {
    match v {
        Value::Number(x) => {
            let s = x.to_string();
            Ok(WRational::constant(n, GaussRat::parse(&s)?))
        }
        Value::String(s) => Ok(WRational::constant(n, GaussRat::parse(s)?)),
        Value::Object(map) => {
            if map.len() != 1 {
                return Err(err("expression node must have exactly one key"));
            }
            let (k, a) = map.iter().next().expect("one key");
            match k.as_str() {
                "var" => var(n, a.as_str().ok_or_else(|| err("var expects a string"))?),
                "const" => match a {
                    Value::String(s) => Ok(WRational::constant(n, GaussRat::parse(s)?)),
                    Value::Number(x) => Ok(WRational::constant(n, GaussRat::parse(&x.to_string())?)),
                    _ => Err(err("const expects a string")),
                },
                "add" => {
                    let mut acc = WRational::zero(n);
                    for t in args(a)? {
                        acc = acc.add(&parse_expr(n, t)?);
                    }
                    Ok(acc)
                }
                "mul" => {
                    let mut acc = WRational::one(n);
                    for t in args(a)? {
                        acc = acc.mul(&parse_expr(n, t)?);
                    }
                    Ok(acc)
                }
                "sub" | "div" => {
                    let xs = args(a)?;
                    if xs.len() != 2 {
                        return Err(err(format!("`{k}` takes two arguments")));
                    }
                    let x = parse_expr(n, &xs[0])?;
                    let y = parse_expr(n, &xs[1])?;
                    if k == "sub" {
                        Ok(x.sub(&y))
                    } else {
                        x.div(&y)
                    }
                }
                "neg" => Ok(parse_expr(n, a)?.neg()),
                "pow" => {
                    let xs = args(a)?;
                    if xs.len() != 2 {
                        return Err(err("`pow` takes two arguments"));
                    }
                    let e = xs[1].as_i64().ok_or_else(|| err("`pow` exponent must be an integer"))?;
                    parse_expr(n, &xs[0])?.pow(e as i32)
                }
                other => Err(err(format!("unknown node `{other}`"))),
            }
        }
        _ => Err(err("expression must be an object, number or string")),
    }
}

pub fn parse_expr_str(n: usize, s: &str) -> Result<WRational> {
    let v: Value = serde_json::from_str(s)?;
    parse_expr(n, &v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn half_hyperbolic_entry_from_json() {
        let e = json!({"add": [{"const": "1"}, {"div": [
            {"mul": [{"var": "zbar1"}, {"var": "z1"}]},
            {"sub": [{"const": "1"}, {"var": "r"}]}
        ]}]});
        let f = parse_expr(2, &e).unwrap();
        let one_minus_r = WRational::one(2).sub(&WRational::r(2));
        let expect = WRational::one(2).add(&WRational::r_k(2, 0).div(&one_minus_r).unwrap());
        assert!(f.equals(&expect));
    }

    #[test]
    fn rejects_unknown_nodes_and_ranges() {
        assert!(parse_expr(2, &json!({"var": "z3"})).is_err());
        assert!(parse_expr(2, &json!({"exp": [1]})).is_err());
        assert!(parse_expr(2, &json!({"div": [1, 0]})).is_err());
    }
}
