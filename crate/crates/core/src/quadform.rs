//! Split quadratic spaces, their polar forms, reflections, isometry tests and
//! the Dickson invariant.
//!
//! Coordinates are 0-based here. With `h` hyperbolic pairs, coordinate `i`
//! pairs with `i + h`:
//!
//! | shape         | dim      | `h`     | form                                   |
//! |---------------|----------|---------|----------------------------------------|
//! | `Even`        | `2n`     | `n`     | `sum x_i x_{i+n}`                      |
//! | `Odd`         | `2n + 1` | `n`     | `sum x_i x_{i+n} + x_{2n}^2`           |
//! | `PointedEven` | `2n + 2` | `n + 1` | `sum x_i x_{i+n+1}`, pointed by `1`    |

use serde::Serialize;

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Even,
    Odd,
    PointedEven,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitSpace<F: Field> {
    field: F,
    shape: Shape,
    n: usize,
}

pub fn vadd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn vsub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn vscale<F: Field>(f: &F, s: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|x| f.mul(s, x)).collect()
}

pub fn is_zero_vector<F: Field>(f: &F, a: &[F::Elem]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

impl<F: Field> SplitSpace<F> {
    /// `n >= 1`, except that the pointed space also accepts `n = 0`
    /// (the plane carrying `Q_0`).
    pub fn new(field: F, shape: Shape, n: usize) -> Result<Self> {
        let min = if shape == Shape::PointedEven { 0 } else { 1 };
        if n < min {
            return Err(Error::InvalidRank { n, min });
        }
        Ok(Self { field, shape, n })
    }

    pub fn even(field: F, n: usize) -> Result<Self> {
        Self::new(field, Shape::Even, n)
    }

    pub fn odd(field: F, n: usize) -> Result<Self> {
        Self::new(field, Shape::Odd, n)
    }

    pub fn pointed(field: F, n: usize) -> Result<Self> {
        Self::new(field, Shape::PointedEven, n)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        match self.shape {
            Shape::Even => 2 * self.n,
            Shape::Odd => 2 * self.n + 1,
            Shape::PointedEven => 2 * self.n + 2,
        }
    }

    /// Number of hyperbolic pairs.
    pub fn pairs(&self) -> usize {
        match self.shape {
            Shape::Even | Shape::Odd => self.n,
            Shape::PointedEven => self.n + 1,
        }
    }

    /// Hyperbolic partner of coordinate `i`, if any.
    pub fn partner(&self, i: usize) -> Option<usize> {
        let h = self.pairs();
        match i {
            _ if i < h => Some(i + h),
            _ if i < 2 * h => Some(i - h),
            _ => None,
        }
    }

    pub fn check_dim(&self, v: &[F::Elem]) -> Result<()> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            })
        }
    }

    pub fn zero_vector(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis(&self, i: usize) -> Vec<F::Elem> {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }

    pub fn eval_q(&self, v: &[F::Elem]) -> Result<F::Elem> {
        self.check_dim(v)?;
        Ok(self.q_unchecked(v))
    }

    pub(crate) fn q_unchecked(&self, v: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let h = self.pairs();
        let mut acc = f.zero();
        for i in 0..h {
            acc = f.add(&acc, &f.mul(&v[i], &v[i + h]));
        }
        if self.shape == Shape::Odd {
            let z = &v[2 * h];
            acc = f.add(&acc, &f.mul(z, z));
        }
        acc
    }

    /// The polar form `B(v, w) = q(v + w) - q(v) - q(w)`, by its closed form.
    pub fn eval_b(&self, v: &[F::Elem], w: &[F::Elem]) -> Result<F::Elem> {
        self.check_dim(v)?;
        self.check_dim(w)?;
        Ok(self.b_unchecked(v, w))
    }

    pub(crate) fn b_unchecked(&self, v: &[F::Elem], w: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let h = self.pairs();
        let mut acc = f.zero();
        for i in 0..h {
            acc = f.add(&acc, &f.mul(&v[i], &w[i + h]));
            acc = f.add(&acc, &f.mul(&v[i + h], &w[i]));
        }
        if self.shape == Shape::Odd {
            let t = f.mul(&v[2 * h], &w[2 * h]);
            acc = f.add(&acc, &f.add(&t, &t));
        }
        acc
    }

    /// `t(v) = B(v, 1) = v_n + v_{2n+1}` (0-based) on the pointed space.
    pub fn trace(&self, v: &[F::Elem]) -> Result<F::Elem> {
        if self.shape != Shape::PointedEven {
            return Err(Error::WrongShape("pointed even"));
        }
        self.check_dim(v)?;
        Ok(self.trace_unchecked(v))
    }

    pub(crate) fn trace_unchecked(&self, v: &[F::Elem]) -> F::Elem {
        self.field.add(&v[self.n], &v[2 * self.n + 1])
    }

    /// The distinguished vector `1` with `q(1) = 1`.
    pub fn one_vector(&self) -> Vec<F::Elem> {
        let mut v = self.zero_vector();
        let one = self.field.one();
        match self.shape {
            Shape::Even => {
                v[self.n - 1] = one.clone();
                v[2 * self.n - 1] = one;
            }
            Shape::Odd => v[2 * self.n] = one,
            Shape::PointedEven => {
                v[self.n] = one.clone();
                v[2 * self.n + 1] = one;
            }
        }
        v
    }

    /// `r_v(w) = w - q(v)^{-1} B(v, w) v`.
    pub fn reflect(&self, v: &[F::Elem], w: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.check_dim(v)?;
        self.check_dim(w)?;
        let qinv = self.field.inv(&self.q_unchecked(v)).ok_or(Error::NonUnitNorm)?;
        Ok(self.reflect_with(&qinv, v, w))
    }

    pub(crate) fn reflect_with(&self, qinv: &F::Elem, v: &[F::Elem], w: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let c = f.mul(qinv, &self.b_unchecked(v, w));
        if f.is_zero(&c) {
            return w.to_vec();
        }
        w.iter().zip(v).map(|(wi, vi)| f.sub(wi, &f.mul(&c, vi))).collect()
    }

    /// Matrix of `r_v`: column `j` is `r_v(e_j)`.
    pub fn reflection_matrix(&self, v: &[F::Elem]) -> Result<GroupElement<F>> {
        self.check_dim(v)?;
        let qinv = self.field.inv(&self.q_unchecked(v)).ok_or(Error::NonUnitNorm)?;
        let cols: Vec<_> = (0..self.dim())
            .map(|j| self.reflect_with(&qinv, v, &self.basis(j)))
            .collect();
        let matrix = Matrix::from_columns(&cols)?;
        let even = self.shape != Shape::Odd;
        Ok(GroupElement {
            matrix,
            similitude: Some(self.field.one()),
            dickson: even.then_some(1),
            tags: Tags {
                isometry: true,
                ..Tags::default()
            },
        })
    }

    fn check_matrix(&self, m: &Matrix<F::Elem>) -> Result<()> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: m.dim(),
            });
        }
        if linalg::rank(&self.field, m) != m.dim() {
            return Err(Error::SingularMatrix);
        }
        Ok(())
    }

    /// `q(M e_j) = q(e_j)` for all `j` and `B(M e_i, M e_j) = B(e_i, e_j)`
    /// for all `i < j`; together these determine `q(Mx)` for every `x`.
    pub fn is_isometry(&self, m: &Matrix<F::Elem>) -> Result<bool> {
        self.check_matrix(m)?;
        Ok(self.isometry_unchecked(m))
    }

    pub(crate) fn isometry_unchecked(&self, m: &Matrix<F::Elem>) -> bool {
        let one = self.field.one();
        self.similitude_with(m, &one)
    }

    fn similitude_with(&self, m: &Matrix<F::Elem>, lambda: &F::Elem) -> bool {
        let f = &self.field;
        let d = self.dim();
        let cols: Vec<Vec<F::Elem>> = (0..d).map(|j| m.column(j)).collect();
        let basis: Vec<Vec<F::Elem>> = (0..d).map(|j| self.basis(j)).collect();
        for j in 0..d {
            if self.q_unchecked(&cols[j]) != f.mul(lambda, &self.q_unchecked(&basis[j])) {
                return false;
            }
            for i in 0..j {
                if self.b_unchecked(&cols[i], &cols[j]) != f.mul(lambda, &self.b_unchecked(&basis[i], &basis[j])) {
                    return false;
                }
            }
        }
        true
    }

    /// The unit `lambda` with `q(Mx) = lambda q(x)` for all `x`, if any.
    pub fn similitude_factor(&self, m: &Matrix<F::Elem>) -> Result<Option<F::Elem>> {
        self.check_matrix(m)?;
        let f = &self.field;
        let d = self.dim();
        // The first basis value or pair value that is nonzero fixes lambda.
        let mut lambda = None;
        'search: for j in 0..d {
            let ej = self.basis(j);
            let qe = self.q_unchecked(&ej);
            if !f.is_zero(&qe) {
                lambda = Some(f.div(&self.q_unchecked(&m.column(j)), &qe)?);
                break;
            }
            for i in 0..j {
                let be = self.b_unchecked(&self.basis(i), &ej);
                if !f.is_zero(&be) {
                    lambda = Some(f.div(&self.b_unchecked(&m.column(i), &m.column(j)), &be)?);
                    break 'search;
                }
            }
        }
        Ok(lambda.filter(|l| !f.is_zero(l) && self.similitude_with(m, l)))
    }

    /// Dickson invariant of an isometry of an even-dimensional space:
    /// `rank(M - I) mod 2` in characteristic 2, the sign of `det M` otherwise.
    pub fn dickson(&self, m: &Matrix<F::Elem>) -> Result<u8> {
        if self.shape == Shape::Odd {
            return Err(Error::OddDimension);
        }
        if !self.is_isometry(m)? {
            return Err(Error::NotAnIsometry);
        }
        Ok(self.dickson_unchecked(m))
    }

    pub(crate) fn dickson_unchecked(&self, m: &Matrix<F::Elem>) -> u8 {
        let f = &self.field;
        if f.characteristic() == 2 {
            (linalg::rank(f, &linalg::sub_identity(f, m)) % 2) as u8
        } else {
            let det = linalg::det(f, m);
            if det == f.one() {
                0
            } else {
                debug_assert_eq!(det, f.neg(&f.one()));
                1
            }
        }
    }
}

/// Membership facts established for a [`GroupElement`]. A `false` flag means
/// "not established", not "known to fail".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tags {
    pub isometry: bool,
    pub fixes_one: bool,
    pub fixes_x0: bool,
    pub dickson_zero: bool,
}

/// An invertible matrix with cached invariants.
#[derive(Clone, Debug)]
pub struct GroupElement<F: Field> {
    pub(crate) matrix: Matrix<F::Elem>,
    pub(crate) similitude: Option<F::Elem>,
    pub(crate) dickson: Option<u8>,
    pub(crate) tags: Tags,
}

impl<F: Field> PartialEq for GroupElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl<F: Field> Eq for GroupElement<F> {}

impl<F: Field> GroupElement<F> {
    pub fn new(field: &F, matrix: Matrix<F::Elem>) -> Result<Self> {
        if linalg::rank(field, &matrix) != matrix.dim() {
            return Err(Error::SingularMatrix);
        }
        Ok(Self::from_matrix(matrix))
    }

    pub(crate) fn from_matrix(matrix: Matrix<F::Elem>) -> Self {
        Self {
            matrix,
            similitude: None,
            dickson: None,
            tags: Tags::default(),
        }
    }

    pub fn identity(field: &F, dim: usize) -> Self {
        Self {
            matrix: Matrix::identity(field, dim),
            similitude: Some(field.one()),
            dickson: Some(0),
            tags: Tags {
                isometry: true,
                fixes_one: true,
                fixes_x0: true,
                dickson_zero: true,
            },
        }
    }

    pub fn matrix(&self) -> &Matrix<F::Elem> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<F::Elem> {
        self.matrix
    }

    pub fn similitude(&self) -> Option<&F::Elem> {
        self.similitude.as_ref()
    }

    pub fn dickson(&self) -> Option<u8> {
        self.dickson
    }

    pub fn tags(&self) -> Tags {
        self.tags
    }

    /// Product `self * other`; cached values combine where both are known.
    pub fn compose(&self, field: &F, other: &Self) -> Self {
        let similitude = match (&self.similitude, &other.similitude) {
            (Some(a), Some(b)) => Some(field.mul(a, b)),
            _ => None,
        };
        let dickson = match (self.dickson, other.dickson) {
            (Some(a), Some(b)) => Some((a + b) % 2),
            _ => None,
        };
        Self {
            matrix: linalg::mul(field, &self.matrix, &other.matrix),
            tags: Tags {
                isometry: self.tags.isometry && other.tags.isometry,
                fixes_one: self.tags.fixes_one && other.tags.fixes_one,
                fixes_x0: self.tags.fixes_x0 && other.tags.fixes_x0,
                dickson_zero: dickson == Some(0),
            },
            similitude,
            dickson,
        }
    }

    /// Recomputes the cached similitude factor and Dickson invariant and
    /// reports whether they agree with the cache.
    pub fn cache_consistent(&self, space: &SplitSpace<F>) -> Result<bool> {
        if let Some(l) = &self.similitude {
            if space.similitude_factor(&self.matrix)?.as_ref() != Some(l) {
                return Ok(false);
            }
        }
        if let Some(d) = self.dickson {
            if space.shape() != Shape::Odd && space.dickson(&self.matrix)? != d {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `(x_1..x_n, x_{2n+1}, x_{n+1}..x_{2n}, x_{2n+1})`: the pointed embedding of
/// the odd space into the pointed even space.
pub fn stab_embed_odd_to_even<E: Clone>(n: usize, v: &[E]) -> Result<Vec<E>> {
    if v.len() != 2 * n + 1 {
        return Err(Error::DimensionMismatch {
            expected: 2 * n + 1,
            got: v.len(),
        });
    }
    let last = v[2 * n].clone();
    let mut out = Vec::with_capacity(2 * n + 2);
    out.extend_from_slice(&v[..n]);
    out.push(last.clone());
    out.extend_from_slice(&v[n..2 * n]);
    out.push(last);
    Ok(out)
}

/// Appends a zero last coordinate.
pub fn stab_embed_even_to_odd<F: Field>(field: &F, n: usize, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if v.len() != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            got: v.len(),
        });
    }
    let mut out = v.to_vec();
    out.push(field.zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteField, Rationals};

    fn f(p: u32) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    fn qv(v: &[i64]) -> Vec<num_rational::BigRational> {
        v.iter().map(|x| Rationals.from_i64(*x)).collect()
    }

    #[test]
    fn eval_examples() {
        let s = SplitSpace::even(Rationals, 2).unwrap();
        assert_eq!(s.eval_q(&qv(&[1, 2, 3, 4])).unwrap(), Rationals.from_i64(11));
        let s = SplitSpace::odd(f(2), 1).unwrap();
        assert_eq!(s.eval_q(&[1, 1, 1]).unwrap(), 0);
        assert_eq!(s.eval_b(&[0, 0, 1], &[0, 0, 1]).unwrap(), 0);
        let s = SplitSpace::pointed(f(5), 1).unwrap();
        assert_eq!(s.one_vector(), vec![0, 1, 0, 1]);
        assert_eq!(s.eval_q(&s.one_vector()).unwrap(), 1);
        assert_eq!(s.eval_b(&[1, 0, 0, 0], &[0, 0, 1, 0]).unwrap(), 1);
        assert!(matches!(s.eval_q(&[1, 2]), Err(Error::DimensionMismatch { expected: 4, got: 2 })));
    }

    #[test]
    fn trace_examples() {
        let s = SplitSpace::pointed(f(5), 1).unwrap();
        assert_eq!(s.trace(&[0, 0, 0, 1]).unwrap(), 1);
        assert_eq!(s.trace(&[1, 0, 0, 0]).unwrap(), 0);
        assert_eq!(s.trace(&s.one_vector()).unwrap(), 2);
        let s2 = SplitSpace::pointed(f(2), 1).unwrap();
        assert_eq!(s2.trace(&s2.one_vector()).unwrap(), 0);
        let even = SplitSpace::even(f(5), 1).unwrap();
        assert_eq!(even.trace(&[1, 0]), Err(Error::WrongShape("pointed even")));
    }

    #[test]
    fn one_vectors() {
        assert_eq!(SplitSpace::pointed(f(3), 1).unwrap().one_vector(), vec![0, 1, 0, 1]);
        assert_eq!(SplitSpace::even(f(3), 2).unwrap().one_vector(), vec![0, 1, 0, 1]);
        assert_eq!(SplitSpace::odd(f(3), 1).unwrap().one_vector(), vec![0, 0, 1]);
        for shape in [Shape::Even, Shape::Odd, Shape::PointedEven] {
            for n in 1..4 {
                let s = SplitSpace::new(f(7), shape, n).unwrap();
                assert_eq!(s.eval_q(&s.one_vector()).unwrap(), 1);
            }
        }
        assert!(SplitSpace::even(f(3), 0).is_err());
    }

    #[test]
    fn reflect_examples() {
        let s = SplitSpace::even(Rationals, 1).unwrap();
        assert_eq!(s.reflect(&qv(&[1, 1]), &qv(&[1, 0])).unwrap(), qv(&[0, -1]));
        assert_eq!(s.reflect(&qv(&[1, 1]), &qv(&[1, 1])).unwrap(), qv(&[-1, -1]));
        assert_eq!(s.reflect(&qv(&[1, 0]), &qv(&[1, 1])), Err(Error::NonUnitNorm));
        let s2 = SplitSpace::even(f(2), 1).unwrap();
        assert_eq!(s2.reflect(&[1, 1], &[1, 0]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn reflection_matrix_examples() {
        let s = SplitSpace::odd(f(3), 1).unwrap();
        let r = s.reflection_matrix(&[0, 0, 1]).unwrap();
        assert_eq!(r.matrix().rows(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]);
        assert_eq!(linalg::det(&f(3), r.matrix()), 2);

        let s = SplitSpace::even(Rationals, 1).unwrap();
        let r = s.reflection_matrix(&qv(&[1, 1])).unwrap();
        assert_eq!(r.matrix().rows(), vec![qv(&[0, -1]), qv(&[-1, 0])]);

        let s = SplitSpace::pointed(f(2), 1).unwrap();
        let r = s.reflection_matrix(&[1, 0, 1, 0]).unwrap();
        assert_eq!(
            r.matrix().rows(),
            vec![vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1]]
        );
        assert_eq!(s.dickson(r.matrix()).unwrap(), 1);
        assert!(r.cache_consistent(&s).unwrap());
    }

    #[test]
    fn isometry_and_similitude_examples() {
        let f5 = f(5);
        let s = SplitSpace::even(f5.clone(), 1).unwrap();
        assert!(s.is_isometry(&Matrix::identity(&f5, 2)).unwrap());
        let two = Matrix::scalar(&f5, 2, &2);
        assert!(!s.is_isometry(&two).unwrap());
        let sp = SplitSpace::pointed(f5.clone(), 1).unwrap();
        assert_eq!(sp.similitude_factor(&Matrix::scalar(&f5, 4, &2)).unwrap(), Some(4));
        let r = sp.reflection_matrix(&[1, 0, 1, 0]).unwrap();
        assert_eq!(sp.similitude_factor(r.matrix()).unwrap(), Some(1));

        let f3 = f(3);
        let s3 = SplitSpace::even(f3.clone(), 1).unwrap();
        let shear = Matrix::from_columns(&[vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(s3.similitude_factor(&shear).unwrap(), None);
        let singular = Matrix::from_columns(&[vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(s3.is_isometry(&singular), Err(Error::SingularMatrix));
        assert!(matches!(
            s3.is_isometry(&Matrix::identity(&f3, 3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn dickson_examples() {
        for p in [2, 3, 5] {
            let fp = f(p);
            let s = SplitSpace::pointed(fp.clone(), 1).unwrap();
            assert_eq!(s.dickson(&Matrix::identity(&fp, 4)).unwrap(), 0);
            let a = s.reflection_matrix(&[1, 0, 1, 0]).unwrap();
            let b = s.reflection_matrix(&[0, 1, 0, 1]).unwrap();
            assert_eq!(s.dickson(a.matrix()).unwrap(), 1);
            let ab = a.compose(&fp, &b);
            assert_eq!(s.dickson(ab.matrix()).unwrap(), 0);
            assert_eq!(ab.dickson(), Some(0));
        }
        let odd = SplitSpace::odd(f(3), 1).unwrap();
        assert_eq!(odd.dickson(&Matrix::identity(&f(3), 3)), Err(Error::OddDimension));
        let s = SplitSpace::even(f(5), 1).unwrap();
        assert_eq!(s.dickson(&Matrix::scalar(&f(5), 2, &2)), Err(Error::NotAnIsometry));
    }

    #[test]
    fn stabilization_examples() {
        assert_eq!(stab_embed_odd_to_even(1, &['a', 'b', 'c']).unwrap(), vec!['a', 'c', 'b', 'c']);
        assert_eq!(stab_embed_odd_to_even(1, &[0, 0, 1]).unwrap(), vec![0, 1, 0, 1]);
        let f2 = f(2);
        let odd = SplitSpace::odd(f2.clone(), 1).unwrap();
        let pointed = SplitSpace::pointed(f2.clone(), 1).unwrap();
        let img = stab_embed_odd_to_even(1, &[1, 1, 0]).unwrap();
        assert_eq!(img, vec![1, 0, 1, 0]);
        assert_eq!(pointed.eval_q(&img).unwrap(), 1);
        assert_eq!(odd.eval_q(&[1, 1, 0]).unwrap(), 1);

        let f3 = f(3);
        assert_eq!(stab_embed_even_to_odd(&f3, 1, &[1, 1]).unwrap(), vec![1, 1, 0]);
        assert_eq!(stab_embed_even_to_odd(&f3, 2, &[0, 1, 0, 1]).unwrap(), vec![0, 1, 0, 1, 0]);
        assert!(stab_embed_even_to_odd(&f3, 2, &[0, 1, 0]).is_err());
        assert!(stab_embed_odd_to_even(2, &[0, 1, 0]).is_err());
    }
}
