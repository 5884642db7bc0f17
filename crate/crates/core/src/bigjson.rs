//! Integers on the wire: JSON numbers while they fit in 53 bits, decimal
//! strings beyond that. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::Value;

use crate::error::{Error, Result};

pub const SAFE_INTEGER: i64 = (1 << 53) - 1;

pub fn int_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.abs() <= SAFE_INTEGER => Value::from(v),
        _ => Value::String(x.to_string()),
    }
}

pub fn int_vec_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

pub fn int_rows_to_json(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(rows.iter().map(|r| int_vec_to_json(r)).collect())
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::Protocol(format!("{n} is not an integer")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Protocol(format!("{s:?} is not a decimal integer"))),
        other => Err(Error::Protocol(format!("expected an integer, got {other}"))),
    }
}

pub fn int_vec_from_json(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| Error::Protocol(format!("expected an array of integers, got {v}")))?
        .iter()
        .map(int_from_json)
        .collect()
}
