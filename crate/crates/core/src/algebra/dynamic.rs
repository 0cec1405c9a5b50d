use num_rational::BigRational;

use super::{Field, FiniteField, Rationals};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Prime,
    Extension,
    Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// A field chosen at runtime. Elements remember which field they came from,
/// and the checked operations here reject mixed inputs.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldDescriptor {
    Finite(FiniteField),
    Rational(Rationals),
}

/// An element tagged with its owning field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Finite { p: u32, k: u32, value: u32 },
    Rational(BigRational),
}

impl FieldDescriptor {
    /// `p` must be 0 for [`FieldKind::Rational`]; `k` must be 1 for
    /// [`FieldKind::Prime`].
    pub fn create(kind: FieldKind, p: u32, k: u32) -> Result<Self> {
        match kind {
            FieldKind::Rational => {
                if p != 0 {
                    return Err(Error::InvariantViolation(
                        "rational fields have characteristic 0".into(),
                    ));
                }
                Ok(Self::Rational(Rationals))
            }
            FieldKind::Prime if k != 1 => Err(Error::UnsupportedSize { p, k }),
            FieldKind::Extension if k < 2 => Err(Error::UnsupportedSize { p, k }),
            _ => FiniteField::new(p, k).map(Self::Finite),
        }
    }

    pub fn rationals() -> Self {
        Self::Rational(Rationals)
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            Self::Finite(f) if f.degree() == 1 => FieldKind::Prime,
            Self::Finite(_) => FieldKind::Extension,
            Self::Rational(_) => FieldKind::Rational,
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Self::Finite(f) => f.characteristic(),
            Self::Rational(q) => q.characteristic(),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            Self::Finite(f) => f.degree(),
            Self::Rational(_) => 1,
        }
    }

    pub fn cardinality(&self) -> Option<u64> {
        match self {
            Self::Finite(f) => f.cardinality(),
            Self::Rational(_) => None,
        }
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        match self {
            Self::Finite(f) if f.degree() > 1 => Some(f.modulus()),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::Finite(f) => f.label(),
            Self::Rational(q) => q.label(),
        }
    }

    fn wrap_finite(f: &FiniteField, value: u32) -> FieldElement {
        FieldElement::Finite {
            p: f.p(),
            k: f.degree(),
            value,
        }
    }

    fn finite_value(f: &FiniteField, e: &FieldElement) -> Result<u32> {
        match e {
            FieldElement::Finite { p, k, value } if *p == f.p() && *k == f.degree() => Ok(*value),
            _ => Err(Error::FieldMismatch),
        }
    }

    fn rational_value(e: &FieldElement) -> Result<&BigRational> {
        match e {
            FieldElement::Rational(r) => Ok(r),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn element(&self, n: i64) -> FieldElement {
        match self {
            Self::Finite(f) => Self::wrap_finite(f, f.from_i64(n)),
            Self::Rational(q) => FieldElement::Rational(q.from_i64(n)),
        }
    }

    /// Checked arithmetic. Unary operations ignore `b`.
    pub fn arith(&self, op: ArithOp, a: &FieldElement, b: Option<&FieldElement>) -> Result<FieldElement> {
        let need_b = || b.ok_or_else(|| Error::InvariantViolation(format!("{op:?} needs two operands")));
        match self {
            Self::Finite(f) => {
                let x = Self::finite_value(f, a)?;
                let v = match op {
                    ArithOp::Neg => f.neg(&x),
                    ArithOp::Inv => f.inv(&x).ok_or(Error::DivisionByZero)?,
                    _ => {
                        let y = Self::finite_value(f, need_b()?)?;
                        binary(f, op, &x, &y)?
                    }
                };
                Ok(Self::wrap_finite(f, v))
            }
            Self::Rational(q) => {
                let x = Self::rational_value(a)?;
                let v = match op {
                    ArithOp::Neg => q.neg(x),
                    ArithOp::Inv => q.inv(x).ok_or(Error::DivisionByZero)?,
                    _ => binary(q, op, x, Self::rational_value(need_b()?)?)?,
                };
                Ok(FieldElement::Rational(v))
            }
        }
    }

    pub fn enumerate(&self) -> Result<Vec<FieldElement>> {
        match self {
            Self::Finite(f) => Ok(f
                .elements()?
                .into_iter()
                .map(|v| Self::wrap_finite(f, v))
                .collect()),
            Self::Rational(_) => Err(Error::InfiniteField),
        }
    }

    pub fn sqrt(&self, a: &FieldElement) -> Result<Option<FieldElement>> {
        match self {
            Self::Finite(f) => {
                let x = Self::finite_value(f, a)?;
                Ok(f.sqrt(&x)?.map(|s| Self::wrap_finite(f, s)))
            }
            Self::Rational(_) => Err(Error::InfiniteField),
        }
    }

    pub fn format(&self, a: &FieldElement) -> Result<String> {
        match self {
            Self::Finite(f) => Ok(f.format(&Self::finite_value(f, a)?)),
            Self::Rational(q) => Ok(q.format(Self::rational_value(a)?)),
        }
    }

    pub fn parse(&self, s: &str) -> Result<FieldElement> {
        match self {
            Self::Finite(f) => Ok(Self::wrap_finite(f, f.parse(s)?)),
            Self::Rational(q) => Ok(FieldElement::Rational(q.parse(s)?)),
        }
    }
}

fn binary<F: Field>(f: &F, op: ArithOp, a: &F::Elem, b: &F::Elem) -> Result<F::Elem> {
    Ok(match op {
        ArithOp::Add => f.add(a, b),
        ArithOp::Sub => f.sub(a, b),
        ArithOp::Mul => f.mul(a, b),
        ArithOp::Div => f.div(a, b)?,
        ArithOp::Neg | ArithOp::Inv => unreachable!("unary op"),
    })
}
