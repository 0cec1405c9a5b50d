//! The quadric `Q_2n : sum x_i y_i = z(1 - z)` in two coordinate models.
//!
//! The ambient model lives in the pointed space of dimension `2n + 2` as the
//! locus `q = 0, t = 1`. The renaming between the models is
//!
//! ```text
//! w = (x_1, .., x_n, 1 - z, -y_1, .., -y_n, z)
//! ```
//!
//! which turns `q(w) = 0` into the intrinsic equation over any ring.

use num_bigint::BigUint;
use num_traits::{pow, Num};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{prime_power, Field};
use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::quadform::SplitSpace;
use crate::report::Count;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntrinsicQuadricPoint<E> {
    pub x: Vec<E>,
    pub y: Vec<E>,
    pub z: E,
}

/// A point of the ambient model. Only constructed through [`Quadric`], so
/// `q(w) = 0` and `t(w) = 1` always hold.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmbientQuadricPoint<E> {
    w: Vec<E>,
}

impl<E> AmbientQuadricPoint<E> {
    pub fn coords(&self) -> &[E] {
        &self.w
    }

    pub fn into_coords(self) -> Vec<E> {
        self.w
    }
}

/// The two strata of `Q_2n`, pivoting on `x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stratum<E> {
    /// `x_n != 0`: `(x_<n, y_<n, z)` in `A^{2n-1}` and the unit `x_n`.
    Open { affine: Vec<E>, unit: E },
    /// `x_n = 0`: the point `(x_<n, y_<n, z)` of `Q_{2n-2}` and the free `y_n`.
    Closed {
        point: IntrinsicQuadricPoint<E>,
        free: E,
    },
}

#[derive(Clone, Debug)]
pub struct Quadric<F: Field> {
    space: SplitSpace<F>,
}

impl<F: Field> Quadric<F> {
    pub fn new(field: F, n: usize) -> Self {
        Self {
            space: SplitSpace::pointed(field, n).expect("pointed spaces accept every n"),
        }
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn field(&self) -> &F {
        self.space.field()
    }

    pub fn space(&self) -> &SplitSpace<F> {
        &self.space
    }

    pub fn satisfies_intrinsic(&self, p: &IntrinsicQuadricPoint<F::Elem>) -> bool {
        let f = self.field();
        let n = self.n();
        if p.x.len() != n || p.y.len() != n {
            return false;
        }
        let lhs = p
            .x
            .iter()
            .zip(&p.y)
            .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
        lhs == f.mul(&p.z, &f.sub(&f.one(), &p.z))
    }

    pub fn is_on_quadric(&self, w: &[F::Elem]) -> Result<bool> {
        self.space.check_dim(w)?;
        Ok(self.on_quadric_unchecked(w))
    }

    pub(crate) fn on_quadric_unchecked(&self, w: &[F::Elem]) -> bool {
        let f = self.field();
        f.is_zero(&self.space.q_unchecked(w)) && self.space.trace_unchecked(w) == f.one()
    }

    /// Validates `w` as a point of the ambient model.
    pub fn point(&self, w: Vec<F::Elem>) -> Result<AmbientQuadricPoint<F::Elem>> {
        if self.is_on_quadric(&w)? {
            Ok(AmbientQuadricPoint { w })
        } else {
            Err(Error::NotOnQuadric)
        }
    }

    pub(crate) fn point_unchecked(&self, w: Vec<F::Elem>) -> AmbientQuadricPoint<F::Elem> {
        debug_assert!(self.on_quadric_unchecked(&w));
        AmbientQuadricPoint { w }
    }

    /// `x_0 = e_{2n+2}`.
    pub fn base_point(&self) -> AmbientQuadricPoint<F::Elem> {
        let last = self.space.dim() - 1;
        AmbientQuadricPoint {
            w: self.space.basis(last),
        }
    }

    pub fn to_ambient(&self, p: &IntrinsicQuadricPoint<F::Elem>) -> Result<AmbientQuadricPoint<F::Elem>> {
        if !self.satisfies_intrinsic(p) {
            return Err(Error::InvariantViolation(
                "sum x_i y_i != z(1 - z)".into(),
            ));
        }
        let f = self.field();
        let mut w = Vec::with_capacity(self.space.dim());
        w.extend(p.x.iter().cloned());
        w.push(f.sub(&f.one(), &p.z));
        w.extend(p.y.iter().map(|y| f.neg(y)));
        w.push(p.z.clone());
        debug_assert!(self.on_quadric_unchecked(&w));
        Ok(AmbientQuadricPoint { w })
    }

    pub fn from_ambient(&self, a: &AmbientQuadricPoint<F::Elem>) -> Result<IntrinsicQuadricPoint<F::Elem>> {
        if !self.is_on_quadric(&a.w)? {
            return Err(Error::InvariantViolation("q(w) != 0 or t(w) != 1".into()));
        }
        let f = self.field();
        let n = self.n();
        Ok(IntrinsicQuadricPoint {
            x: a.w[..n].to_vec(),
            y: a.w[n + 1..2 * n + 1].iter().map(|v| f.neg(v)).collect(),
            z: a.w[2 * n + 1].clone(),
        })
    }

    /// Every `F_q`-point, ordered lexicographically on `(w_1, .., w_{2n+1})`
    /// with the first coordinate most significant. The last coordinate is
    /// determined by `t = 1`.
    pub fn enumerate(&self, guards: &Guards) -> Result<Vec<AmbientQuadricPoint<F::Elem>>> {
        let f = self.field();
        let q = f.cardinality().ok_or(Error::InfiniteField)?;
        let free = self.space.dim() - 1;
        guards.check_enumeration(q, free)?;
        let elements = f.elements()?;
        let n = self.n();
        let one = f.one();
        // Partitioned by the leading coordinate, concatenated in order.
        let points = elements
            .par_iter()
            .flat_map_iter(|lead| {
                let mut out = Vec::new();
                let mut digits = vec![0usize; free - 1];
                loop {
                    let mut w = Vec::with_capacity(free + 1);
                    w.push(lead.clone());
                    w.extend(digits.iter().map(|&d| elements[d].clone()));
                    w.push(f.sub(&one, &w[n]));
                    if f.is_zero(&self.space.q_unchecked(&w)) {
                        out.push(AmbientQuadricPoint { w });
                    }
                    if !odometer(&mut digits, elements.len()) {
                        break;
                    }
                }
                out
            })
            .collect();
        Ok(points)
    }

    pub fn stratify(&self, a: &AmbientQuadricPoint<F::Elem>) -> Result<Stratum<F::Elem>> {
        let n = self.n();
        if n == 0 {
            return Err(Error::InvalidRank { n, min: 1 });
        }
        let p = self.from_ambient(a)?;
        let f = self.field();
        let xn = p.x[n - 1].clone();
        if f.is_zero(&xn) {
            Ok(Stratum::Closed {
                point: IntrinsicQuadricPoint {
                    x: p.x[..n - 1].to_vec(),
                    y: p.y[..n - 1].to_vec(),
                    z: p.z.clone(),
                },
                free: p.y[n - 1].clone(),
            })
        } else {
            let mut affine = p.x[..n - 1].to_vec();
            affine.extend_from_slice(&p.y[..n - 1]);
            affine.push(p.z);
            Ok(Stratum::Open { affine, unit: xn })
        }
    }
}

/// Advances a most-significant-first odometer; `false` once it wraps.
pub(crate) fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// `q^{2n} + q^n`, in any integer type.
pub fn closed_form<T: Num + Clone>(n: u32, q: T) -> T {
    pow(q.clone(), 2 * n as usize) + pow(q, n as usize)
}

/// `|Q_0| = 2`, `|Q_2m| = q^{2m-1}(q - 1) + q |Q_{2m-2}|`.
pub fn recursive<T: Num + Clone>(n: u32, q: T) -> T {
    let mut count = T::one() + T::one();
    for m in 1..=n as usize {
        count = pow(q.clone(), 2 * m - 1) * (q.clone() - T::one()) + q.clone() * count;
    }
    count
}

fn validate_q(q: u64) -> Result<()> {
    prime_power(q).map(|_| ()).ok_or(Error::InvalidPrimePower(q))
}

pub fn count_closed_form(n: u32, q: u64) -> Result<BigUint> {
    validate_q(q)?;
    Ok(closed_form(n, BigUint::from(q)))
}

pub fn count_recursive(n: u32, q: u64) -> Result<BigUint> {
    validate_q(q)?;
    Ok(recursive(n, BigUint::from(q)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Strata {
    pub open: Count,
    pub closed: Count,
}

/// Point-count record. `count` and `strata` are `None` when nothing was
/// enumerated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: u32,
    pub field: String,
    pub count: Option<Count>,
    pub closed_form: Count,
    pub recursive: Count,
    #[serde(rename = "match")]
    pub matches: bool,
    pub strata: Option<Strata>,
}

impl CountReport {
    /// Formula values only.
    pub fn symbolic(n: u32, q: u64) -> Result<Self> {
        let closed = count_closed_form(n, q)?;
        let rec = count_recursive(n, q)?;
        let (p, k) = prime_power(q).expect("validated");
        Ok(Self {
            n,
            field: if k == 1 { p.to_string() } else { format!("{p}^{k}") },
            count: None,
            matches: closed == rec,
            closed_form: closed.into(),
            recursive: rec.into(),
            strata: None,
        })
    }

    /// Formula values plus an exhaustive count and stratum census.
    pub fn enumerated<F: Field>(field: &F, n: u32, guards: &Guards) -> Result<Self> {
        let q = field.cardinality().ok_or(Error::InfiniteField)?;
        let mut report = Self::symbolic(n, q)?;
        report.field = field.label();
        let quadric = Quadric::new(field.clone(), n as usize);
        let points = quadric.enumerate(guards)?;
        let total = points.len();
        if n >= 1 {
            let open = points
                .par_iter()
                .map(|p| quadric.stratify(p).map(|s| matches!(s, Stratum::Open { .. })))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .filter(|o| *o)
                .count();
            report.strata = Some(Strata {
                open: open.into(),
                closed: (total - open).into(),
            });
        }
        let total = Count::from(total);
        report.matches = report.matches && total == report.closed_form;
        report.count = Some(total);
        Ok(report)
    }
}
