//! JSON encoding of arbitrary-precision integers.
//!
//! Reports and graph files keep integers as plain JSON numbers while they
//! are exactly representable in an IEEE double (`|x| ≤ 2^53`), and switch
//! to decimal strings beyond that, so no consumer ever sees a silently
//! rounded value. Deserialization accepts both forms everywhere.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serializer};

/// Largest magnitude emitted as a JSON number: `2^53`.
fn number_limit() -> BigInt {
    BigInt::from(1i64 << 53)
}

/// Converts to a `serde_json::Value`: number if `|x| ≤ 2^53`, else string.
pub fn to_value(x: &BigInt) -> serde_json::Value {
    if x.abs() <= number_limit() {
        let as_i64 = i64::try_from(x).expect("within 2^53 always fits i64");
        serde_json::Value::from(as_i64)
    } else {
        serde_json::Value::from(x.to_string())
    }
}

/// Reads a `serde_json::Value` produced by [`to_value`] (or hand-written
/// JSON using either numbers or decimal strings).
pub fn from_value(v: &serde_json::Value) -> Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(format!("non-integer number {n}"))
            }
        }
        serde_json::Value::String(s) => {
            BigInt::from_str(s.trim()).map_err(|e| format!("bad integer string {s:?}: {e}"))
        }
        other => Err(format!("expected integer, found {other}")),
    }
}

/// `#[serde(with = "okgraph::jsonint")]` support.
pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    to_value(x).serialize(s)
}

/// `#[serde(with = "okgraph::jsonint")]` support.
pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let v = serde_json::Value::deserialize(d)?;
    from_value(&v).map_err(DeError::custom)
}

use serde::Serialize;

/// `#[serde(with = "okgraph::jsonint::vec")]` support for integer vectors.
pub mod vec {
    use super::*;

    /// Serializes a vector of integers with the number/string rule.
    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let vals: Vec<serde_json::Value> = xs.iter().map(to_value).collect();
        vals.serialize(s)
    }

    /// Deserializes a vector of integers written as numbers or strings.
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let vals = Vec::<serde_json::Value>::deserialize(d)?;
        vals.iter().map(|v| from_value(v).map_err(DeError::custom)).collect()
    }
}

/// `#[serde(with = "okgraph::jsonint::opt")]` support for optional
/// integers (`null` ↔ `None`). Pair with `#[serde(default)]`.
pub mod opt {
    use super::*;

    /// Serializes `None` as `null`, `Some` with the number/string rule.
    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            None => s.serialize_none(),
            Some(v) => to_value(v).serialize(s),
        }
    }

    /// Deserializes `null` to `None`, numbers or strings to `Some`.
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        if v.is_null() {
            Ok(None)
        } else {
            from_value(&v).map(Some).map_err(DeError::custom)
        }
    }
}

/// `#[serde(with = "okgraph::jsonint::mat")]` support for row-major
/// integer matrices.
pub mod mat {
    use super::*;

    /// Serializes rows of integers with the number/string rule.
    pub fn serialize<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let vals: Vec<Vec<serde_json::Value>> = rows
            .iter()
            .map(|r| r.iter().map(to_value).collect())
            .collect();
        vals.serialize(s)
    }

    /// Deserializes rows of integers written as numbers or strings.
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let vals = Vec::<Vec<serde_json::Value>>::deserialize(d)?;
        vals.iter()
            .map(|r| {
                r.iter()
                    .map(|v| from_value(v).map_err(DeError::custom))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_integers_are_numbers() {
        let v = to_value(&BigInt::from(42));
        assert!(v.is_number());
        assert_eq!(from_value(&v).unwrap(), BigInt::from(42));
    }

    #[test]
    fn boundary_is_inclusive() {
        let at = BigInt::from(1i64 << 53);
        assert!(to_value(&at).is_number());
        let beyond = &at + 1;
        let v = to_value(&beyond);
        assert!(v.is_string());
        assert_eq!(from_value(&v).unwrap(), beyond);
        let neg = -&beyond;
        assert!(to_value(&neg).is_string());
        assert_eq!(from_value(&to_value(&neg)).unwrap(), neg);
    }

    #[test]
    fn strings_parse_back() {
        let v = serde_json::Value::from("-123456789012345678901234567890");
        let x = from_value(&v).unwrap();
        assert_eq!(x.to_string(), "-123456789012345678901234567890");
    }
}
