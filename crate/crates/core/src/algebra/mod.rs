//! Exact field arithmetic.
//!
//! All geometry in this crate is generic over [`Field`], a field *context*
//! that owns whatever runtime data the arithmetic needs (the modulus of an
//! extension field, its multiplication table). Elements are plain values.
//! Three carriers are provided:
//!
//! * [`FiniteField`]: prime fields and the small extension fields of the
//!   built-in modulus table, elements packed as base-`p` integers;
//! * [`Rationals`]: `BigRational` elements;
//! * [`FieldDescriptor`]: a runtime-tagged wrapper over both, with checked
//!   arithmetic that reports mixing elements of different fields.

mod dynamic;
mod finite;
mod rational;

pub use dynamic::{ArithOp, FieldDescriptor, FieldElement, FieldKind};
pub use finite::FiniteField;
pub use rational::Rationals;

use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

/// A field context. Arithmetic goes through the context so that element
/// types can stay small and `Copy`-like.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    /// `p`, or 0 for the rationals.
    fn characteristic(&self) -> u32;

    /// `q = p^k`, or `None` for infinite fields.
    fn cardinality(&self) -> Option<u64>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Every element in the canonical order (0 first, then 1).
    fn elements(&self) -> Result<Vec<Self::Elem>>;

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Short name used in reports: `"5"`, `"2^2"`, `"Q"`.
    fn label(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let b_inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &b_inv))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_finite(&self) -> bool {
        self.cardinality().is_some()
    }

    /// A square root found by exhaustive search in enumeration order, so the
    /// first root in [`Field::elements`] order is returned.
    fn sqrt(&self, a: &Self::Elem) -> Result<Option<Self::Elem>> {
        Ok(self
            .elements()?
            .into_iter()
            .find(|s| self.mul(s, s) == *a))
    }

    fn is_square(&self, a: &Self::Elem) -> Result<bool> {
        Ok(self.sqrt(a)?.is_some())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, k))
}

/// Parses a field spec: `"p"`, `"p^k"`, or `"Q"` for the rationals.
pub fn parse_field_spec(spec: &str) -> Result<FieldDescriptor> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("q") {
        return Ok(FieldDescriptor::rationals());
    }
    let bad = || Error::Parse {
        what: "field spec",
        input: spec.to_string(),
    };
    let (p, k) = match spec.split_once('^') {
        Some((p, k)) => (
            p.trim().parse::<u32>().map_err(|_| bad())?,
            k.trim().parse::<u32>().map_err(|_| bad())?,
        ),
        None => (spec.parse::<u32>().map_err(|_| bad())?, 1),
    };
    let kind = if k == 1 {
        FieldKind::Prime
    } else {
        FieldKind::Extension
    };
    FieldDescriptor::create(kind, p, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(97), Some((97, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(0), None);
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn field_specs() {
        assert_eq!(parse_field_spec("5").unwrap().cardinality(), Some(5));
        assert_eq!(parse_field_spec("2^2").unwrap().cardinality(), Some(4));
        assert_eq!(parse_field_spec("Q").unwrap().cardinality(), None);
        assert_eq!(
            parse_field_spec("4"),
            Err(Error::NonPrimeCharacteristic(4))
        );
        assert!(matches!(parse_field_spec("x"), Err(Error::Parse { .. })));
    }
}
