use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Field;
use crate::error::{Error, Result};

/// The field of rational numbers with arbitrary-precision numerators and
/// denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u32 {
        0
    }

    fn cardinality(&self) -> Option<u64> {
        None
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn elements(&self) -> Result<Vec<BigRational>> {
        Err(Error::InfiniteField)
    }

    fn sqrt(&self, _a: &BigRational) -> Result<Option<BigRational>> {
        Err(Error::InfiniteField)
    }

    /// `"n"` for integers, `"n/d"` otherwise.
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::Parse {
            what: "rational",
            input: s.to_string(),
        };
        let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
        match s.split_once('/') {
            Some((n, d)) => {
                let d = int(d)?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(int(n)?, d))
            }
            None => Ok(BigRational::from_integer(int(s)?)),
        }
    }

    fn label(&self) -> String {
        "Q".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let q = Rationals;
        let half = q.parse("1/2").unwrap();
        let third = q.parse("1/3").unwrap();
        assert_eq!(q.format(&q.add(&half, &third)), "5/6");
        assert_eq!(q.format(&q.parse("4/-6").unwrap()), "-2/3");
        assert_eq!(q.format(&q.parse("6/3").unwrap()), "2");
        assert_eq!(q.div(&half, &q.zero()), Err(Error::DivisionByZero));
        assert!(q.parse("1/0").is_err());
        assert_eq!(q.elements(), Err(Error::InfiniteField));
        assert_eq!(q.sqrt(&half), Err(Error::InfiniteField));
    }
}
