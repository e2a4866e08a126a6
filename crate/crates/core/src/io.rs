//! JSON formats: point sets, arithmetic-progression instances, and exact
//! rationals rendered as `"p/q"` strings.
//!
//! A point-set document has exactly one of two keys:
//! `{"points": [[xn, xd, yn, yd], ...]}` with integer numerators and
//! denominators, or `{"points_float": [[x, y], ...]}`. Integers may be JSON
//! numbers or decimal strings; integers outside the `i64` range are written as
//! strings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serializer;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geom::{FloatPoint, Point, Rational};

/// `p/q` in lowest terms, with `q > 0` (also for integers).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn ser_point<S: Serializer>(p: &Point, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&format_rational(&p.x))?;
    t.serialize_element(&format_rational(&p.y))?;
    t.end()
}

/// Parses `p/q`, an integer, or a finite decimal such as `-1.25` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Format(format!("not a rational number: {text:?}"));
    if let Some((p, q)) = text.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Format(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let digits = format!("{whole}{frac}");
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let num = BigInt::from_str(&digits).map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(Rational::new(num, den));
    }
    Ok(Rational::from_integer(BigInt::from_str(text).map_err(|_| bad())?))
}

fn int_value(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(small) => json!(small),
        None => Value::String(v.to_string()),
    }
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            BigInt::from_str(&n.to_string()).map_err(|e| Error::Format(e.to_string()))
        }
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|_| Error::Format(format!("not an integer: {s:?}"))),
        other => Err(Error::Format(format!("expected an integer, got {other}"))),
    }
}

fn parse_number(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Format(format!("expected a number, got {other}"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PointSet {
    Exact(Vec<Point>),
    Float(Vec<FloatPoint>),
}

pub fn parse_point_set(text: &str) -> Result<PointSet> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| Error::Format("point set must be a JSON object".into()))?;
    let rows = |key: &str| -> Result<Option<&Vec<Value>>> {
        match obj.get(key) {
            None => Ok(None),
            Some(Value::Array(rows)) => Ok(Some(rows)),
            Some(_) => Err(Error::Format(format!("\"{key}\" must be an array"))),
        }
    };
    match (rows("points")?, rows("points_float")?) {
        (Some(rows), None) => rows
            .iter()
            .map(|row| {
                let q = row
                    .as_array()
                    .filter(|q| q.len() == 4)
                    .ok_or_else(|| Error::Format(format!("expected [xn, xd, yn, yd], got {row}")))?;
                let part = |n: &Value, d: &Value| -> Result<Rational> {
                    let d = parse_int(d)?;
                    if d.is_zero() {
                        return Err(Error::Format(format!("zero denominator in {row}")));
                    }
                    Ok(Rational::new(parse_int(n)?, d))
                };
                Ok(Point::new(part(&q[0], &q[1])?, part(&q[2], &q[3])?))
            })
            .collect::<Result<_>>()
            .map(PointSet::Exact),
        (None, Some(rows)) => rows
            .iter()
            .map(|row| {
                let xy = row
                    .as_array()
                    .filter(|xy| xy.len() == 2)
                    .ok_or_else(|| Error::Format(format!("expected [x, y], got {row}")))?;
                let coord = |v: &Value| {
                    v.as_f64()
                        .filter(|c| c.is_finite())
                        .ok_or_else(|| Error::Format(format!("expected a finite number, got {v}")))
                };
                Ok(FloatPoint::new(coord(&xy[0])?, coord(&xy[1])?))
            })
            .collect::<Result<_>>()
            .map(PointSet::Float),
        (Some(_), Some(_)) => Err(Error::Format("both \"points\" and \"points_float\" present".into())),
        (None, None) => Err(Error::Format("missing \"points\" or \"points_float\"".into())),
    }
}

pub fn exact_points_json(points: &[Point]) -> String {
    let rows: Vec<Value> = points
        .iter()
        .map(|p| {
            json!([int_value(p.x.numer()), int_value(p.x.denom()), int_value(p.y.numer()), int_value(p.y.denom())])
        })
        .collect();
    json!({ "points": rows }).to_string()
}

pub fn float_points_json(points: &[FloatPoint]) -> String {
    let rows: Vec<Value> = points.iter().map(|p| json!([p.x, p.y])).collect();
    json!({ "points_float": rows }).to_string()
}

pub fn point_set_json(set: &PointSet) -> String {
    match set {
        PointSet::Exact(points) => exact_points_json(points),
        PointSet::Float(points) => float_points_json(points),
    }
}

/// `{"red": [...], "blue": [...]}` with numbers, `"p/q"` strings or decimal strings.
pub fn parse_ap3_values(text: &str) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let list = |key: &str| -> Result<Vec<Rational>> {
        doc.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Format(format!("missing array \"{key}\"")))?
            .iter()
            .map(parse_number)
            .collect()
    };
    Ok((list("red")?, list("blue")?))
}

pub fn ap3_values_json(red: &[Rational], blue: &[Rational]) -> Value {
    let list = |v: &[Rational]| -> Vec<Value> {
        v.iter()
            .map(|r| if r.is_integer() { int_value(r.numer()) } else { Value::String(format_rational(r)) })
            .collect()
    };
    json!({ "red": list(red), "blue": list(blue) })
}
