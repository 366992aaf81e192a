//! Reading rings, polynomials, matrices and rows out of job JSON.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::expr::parse_poly;
use crate::gamma::UnimodRow;
use crate::loops::HomotopyCert;
use crate::matrix::Mat2;
use crate::poly::MultiPoly;
use crate::ring::{Elem, Ring, RingDescriptor};

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

pub(crate) fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| schema(format!("missing field `{key}`")))
}

pub(crate) fn str_field<'a>(obj: &'a Map<String, Value>, key: &str, default: &'a str) -> Result<&'a str> {
    match obj.get(key) {
        None => Ok(default),
        Some(Value::String(s)) => Ok(s),
        Some(_) => Err(schema(format!("`{key}` must be a string"))),
    }
}

pub(crate) fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(format!("{what} must be an object")))
}

/// `"rationals"`, `{"kind": "dual", "order": 3}`, `{"kind": "circle"}`, ...
pub fn parse_ring(v: &Value) -> Result<Ring> {
    if let Value::String(kind) = v {
        return parse_ring(&json!({ "kind": kind }));
    }
    let obj = as_object(v, "ring")?;
    let kind = str_field(obj, "kind", "")?;
    match kind {
        "integers" => Ok(Ring::integers()),
        "rationals" => Ok(Ring::rationals()),
        "circle" => Ok(Ring::circle()),
        "dual" => {
            let order = field(obj, "order")?
                .as_u64()
                .ok_or_else(|| schema("`order` must be a positive integer"))?;
            Ring::dual(order as usize)
        }
        "poly" => {
            let base = match obj.get("base") {
                Some(b) => parse_ring(b)?,
                None => Ring::rationals(),
            };
            let vars = field(obj, "vars")?
                .as_array()
                .ok_or_else(|| schema("`vars` must be a list of names"))?
                .iter()
                .map(|v| v.as_str().ok_or_else(|| schema("variable names must be strings")))
                .collect::<Result<Vec<_>>>()?;
            Ring::polynomial(base, &vars)
        }
        "quotient" => {
            let base = parse_ring(field(obj, "base")?)?;
            let RingDescriptor::Poly { base: coeffs, .. } = base.descriptor() else {
                return Err(Error::InvalidDescriptor("quotient base must be a polynomial ring".into()));
            };
            let rel = parse_poly(str_field(obj, "relation", "")?, coeffs)?;
            Ring::quotient(base.clone(), &Elem::Poly(rel), str_field(obj, "var", "")?)
        }
        "localization" => {
            let base = parse_ring(field(obj, "base")?)?;
            let d = constant_of(&parse_value(field(obj, "denominator")?, &base)?)?;
            Ring::localization(base, d)
        }
        "product" => Ok(Ring::product(
            parse_ring(field(obj, "left")?)?,
            parse_ring(field(obj, "right")?)?,
        )),
        "" => Err(schema("ring descriptor needs a `kind`")),
        other => Err(schema(format!("unknown ring kind `{other}`"))),
    }
}

fn constant_of(p: &MultiPoly) -> Result<Elem> {
    p.constant_value()
        .ok_or_else(|| schema(format!("{p} must be a ring element, not a polynomial")))
}

/// A ring element given as a value: strings, integers, fractions and pairs.
pub fn parse_element(v: &Value, ring: &Ring) -> Result<Elem> {
    constant_of(&parse_value(v, ring)?)
}

/// A polynomial over `ring`: an expression string, an integer,
/// `{"num": expr, "den_power": n}` over a localization, or
/// `{"left": v, "right": v}` over a product ring.
pub fn parse_value(v: &Value, ring: &Ring) -> Result<MultiPoly> {
    match v {
        Value::String(s) => parse_poly(s, ring),
        Value::Number(n) => {
            let k = n.as_i64().ok_or_else(|| schema(format!("{n} is not an integer")))?;
            Ok(MultiPoly::from_i64(ring, k))
        }
        Value::Object(obj) if obj.contains_key("num") => {
            let RingDescriptor::Localization { base, .. } = ring.descriptor() else {
                return Err(schema(format!("fractions need a localization, not {ring}")));
            };
            let num = parse_value(field(obj, "num")?, base)?;
            let power = match obj.get("den_power") {
                None => 0,
                Some(p) => p
                    .as_u64()
                    .ok_or_else(|| schema("`den_power` must be a nonnegative integer"))?
                    as u32,
            };
            num.localize(ring, power)
        }
        Value::Object(obj) if obj.contains_key("left") => {
            let RingDescriptor::Product(l, r) = ring.descriptor() else {
                return Err(schema(format!("pairs need a product ring, not {ring}")));
            };
            let left = parse_value(field(obj, "left")?, l)?;
            let right = parse_value(field(obj, "right")?, r)?;
            let lz = l.zero();
            let rz = r.zero();
            let a = left.map_coeffs(ring, |c| Elem::Pair(Box::new(c.clone()), Box::new(rz.clone())));
            let b = right.map_coeffs(ring, |c| Elem::Pair(Box::new(lz.clone()), Box::new(c.clone())));
            Ok(&a + &b)
        }
        _ => Err(schema(format!("cannot read a polynomial from {v}"))),
    }
}

/// `[[e11, e12], [e21, e22]]`.
pub fn parse_matrix(v: &Value, ring: &Ring) -> Result<Mat2> {
    let rows = v
        .as_array()
        .filter(|r| r.len() == 2)
        .ok_or_else(|| schema("a matrix is a list of two rows"))?;
    let mut out = Vec::with_capacity(4);
    for row in rows {
        let row = row
            .as_array()
            .filter(|r| r.len() == 2)
            .ok_or_else(|| schema("each matrix row has two entries"))?;
        for e in row {
            out.push(parse_value(e, ring)?);
        }
    }
    let [a, b, c, d]: [MultiPoly; 4] = out.try_into().expect("four entries");
    Mat2::new(a, b, c, d)
}

/// `[f1, f2]`.
pub fn parse_pair(v: &Value, ring: &Ring) -> Result<(MultiPoly, MultiPoly)> {
    let items = v
        .as_array()
        .filter(|r| r.len() == 2)
        .ok_or_else(|| schema("expected a pair [f1, f2]"))?;
    Ok((parse_value(&items[0], ring)?, parse_value(&items[1], ring)?))
}

/// `{"a": expr, "b": expr, "witness": [b1, b2]}`; without a witness one is searched for.
pub fn parse_row(v: &Value, ring: &Ring) -> Result<UnimodRow> {
    let obj = as_object(v, "row")?;
    let a = parse_value(field(obj, "a")?, ring)?;
    let b = parse_value(field(obj, "b")?, ring)?;
    match obj.get("witness") {
        Some(w) => {
            let (b1, b2) = parse_pair(w, ring)?;
            crate::gamma::verify_unimodular(&a, &b, Some((&b1, &b2)))
        }
        None => crate::gamma::verify_unimodular(&a, &b, None),
    }
}

/// `{"matrix", "loop_var", "homotopy_var", "start", "end"}`.
pub fn parse_cert(v: &Value, ring: &Ring) -> Result<HomotopyCert> {
    let obj = as_object(v, "certificate")?;
    Ok(HomotopyCert::new(
        parse_matrix(field(obj, "matrix")?, ring)?,
        str_field(obj, "loop_var", "T")?,
        str_field(obj, "homotopy_var", "S")?,
        parse_matrix(field(obj, "start")?, ring)?,
        parse_matrix(field(obj, "end")?, ring)?,
    ))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| schema(format!("`{s}` is not a rational number")))
}

pub fn matrix_json(m: &Mat2) -> Value {
    json!([
        [m.get(0, 0).to_string(), m.get(0, 1).to_string()],
        [m.get(1, 0).to_string(), m.get(1, 1).to_string()]
    ])
}

pub fn row_json(r: &UnimodRow) -> Value {
    json!({
        "a": r.a.to_string(),
        "b": r.b.to_string(),
        "witness": [r.b1.to_string(), r.b2.to_string()],
    })
}

pub fn cert_json(c: &HomotopyCert) -> Value {
    json!({
        "matrix": matrix_json(&c.matrix),
        "loop_var": c.loop_var,
        "homotopy_var": c.homotopy_var,
        "start": matrix_json(&c.start),
        "end": matrix_json(&c.end),
    })
}
