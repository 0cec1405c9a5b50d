use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::algebra::Field;

/// An exact count that serializes as a JSON number when it fits in a `u64`
/// and as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Count(pub BigUint);

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl From<BigUint> for Count {
    fn from(v: BigUint) -> Self {
        Self(v)
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Self(BigUint::from(v))
    }
}

impl From<usize> for Count {
    fn from(v: usize) -> Self {
        Self(BigUint::from(v))
    }
}

impl std::fmt::Display for Count {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// A field element as JSON: an integer when its printed form is one, a
/// string otherwise (`"1/2"`, `"1+0*g"`).
pub fn elem_value<F: Field>(f: &F, a: &F::Elem) -> Value {
    let s = f.format(a);
    match s.parse::<i64>() {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(s),
    }
}

pub fn vector_value<F: Field>(f: &F, v: &[F::Elem]) -> Value {
    Value::Array(v.iter().map(|a| elem_value(f, a)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serializes_small_as_number_large_as_string() {
        assert_eq!(serde_json::to_string(&Count::from(90u64)).unwrap(), "90");
        let big = BigUint::from(u64::MAX) + 1u32;
        assert_eq!(
            serde_json::to_string(&Count(big)).unwrap(),
            "\"18446744073709551616\""
        );
    }
}
