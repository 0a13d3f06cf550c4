//! Exact scalars, matrices and forms as JSON.
//!
//! Scalar grammar: an integer, a string `"p/q"`, or `{"re": r, "im": r}`
//! where `r` is an integer or `"p/q"`.

use hypercal_core::scalar::{format_rational, parse_rational};
use hypercal_core::{Form, Gaussian, Matrix};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::CliError;

fn rational_to_json(r: &BigRational) -> Value {
    if r.is_integer() {
        if let Some(v) = r.numer().to_i64() {
            return Value::from(v);
        }
    }
    Value::from(format_rational(r))
}

fn rational_from_json(v: &Value, at: &str) -> Result<BigRational, CliError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(|| CliError::schema(at, "scalars must be integers or \"p/q\" strings")),
        Value::String(s) => parse_rational(s).ok_or_else(|| CliError::schema(at, format!("bad rational {s:?}"))),
        _ => Err(CliError::schema(at, "expected an integer or \"p/q\"")),
    }
}

pub fn scalar_to_json(c: &Gaussian) -> Value {
    if c.im().is_zero() {
        rational_to_json(c.re())
    } else {
        json!({"re": rational_to_json(c.re()), "im": rational_to_json(c.im())})
    }
}

pub fn scalar_from_json(v: &Value, at: &str) -> Result<Gaussian, CliError> {
    match v {
        Value::Object(map) => {
            if let Some(key) = map.keys().find(|k| *k != "re" && *k != "im") {
                return Err(CliError::schema(at, format!("unknown key {key:?}")));
            }
            let part = |k: &str| {
                map.get(k)
                    .ok_or_else(|| CliError::schema(at, format!("missing {k:?}")))
                    .and_then(|x| rational_from_json(x, at))
            };
            Ok(Gaussian::new(part("re")?, part("im")?))
        }
        _ => rational_from_json(v, at).map(Gaussian::real),
    }
}

pub fn matrix_to_json(m: &Matrix<Gaussian>) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(scalar_to_json).collect())).collect())
}

pub fn matrix_from_json(v: &Value, at: &str) -> Result<Matrix<Gaussian>, CliError> {
    let rows = v.as_array().ok_or_else(|| CliError::schema(at, "expected a list of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| CliError::schema(at, format!("row {r} is not a list")))?;
        out.push(row.iter().map(|c| scalar_from_json(c, at)).collect::<Result<Vec<_>, _>>()?);
    }
    Matrix::from_rows(out).map_err(|e| CliError::schema(at, e.to_string()))
}

pub fn form_to_json(f: &Form<Gaussian>) -> Value {
    let terms: Vec<Value> = f.terms().map(|(b, c)| json!({"idx": b.to_vec(), "c": scalar_to_json(c)})).collect();
    let mut map = Map::new();
    map.insert("degree".into(), Value::from(f.degree()));
    map.insert("terms".into(), Value::Array(terms));
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_grammar_round_trips() {
        for text in ["3", "\"-2/3\"", "{\"re\": 1, \"im\": \"1/2\"}", "\"123456789012345678901234567\""] {
            let v: Value = serde_json::from_str(text).unwrap();
            let c = scalar_from_json(&v, "x").unwrap();
            assert_eq!(scalar_from_json(&scalar_to_json(&c), "x").unwrap(), c);
        }
        assert_eq!(scalar_to_json(&Gaussian::frac(4, 2)), json!(2));
        for bad in ["1.5", "\"1/0\"", "{\"re\": 1}", "{\"re\": 1, \"im\": 0, \"x\": 1}", "true"] {
            let v: Value = serde_json::from_str(bad).unwrap();
            assert!(scalar_from_json(&v, "x").is_err(), "{bad}");
        }
    }
}
