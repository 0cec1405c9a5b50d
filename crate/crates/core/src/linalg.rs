//! Dense square matrices over a [`Field`], row-major.

use crate::algebra::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<E> {
    dim: usize,
    entries: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { dim, entries })
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<E>]) -> Result<Self> {
        let dim = columns.len();
        if let Some(bad) = columns.iter().find(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.len(),
            });
        }
        let entries = (0..dim * dim)
            .map(|idx| columns[idx % dim][idx / dim].clone())
            .collect();
        Ok(Self { dim, entries })
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, dim: usize) -> Self {
        let entries = (0..dim * dim)
            .map(|idx| {
                if idx / dim == idx % dim {
                    field.one()
                } else {
                    field.zero()
                }
            })
            .collect();
        Self { dim, entries }
    }

    pub fn scalar<F: Field<Elem = E>>(field: &F, dim: usize, s: &E) -> Self {
        let mut m = Self::identity(field, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = s.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &E {
        &self.entries[row * self.dim + col]
    }

    pub fn column(&self, col: usize) -> Vec<E> {
        (0..self.dim).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.entries.chunks(self.dim.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }
}

pub fn mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.dim, b.dim, "matrix dimension mismatch");
    let d = a.dim;
    let mut entries = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = field.zero();
            for k in 0..d {
                let t = field.mul(&a.entries[i * d + k], &b.entries[k * d + j]);
                acc = field.add(&acc, &t);
            }
            entries.push(acc);
        }
    }
    Matrix { dim: d, entries }
}

pub fn apply<F: Field>(field: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if v.len() != m.dim {
        return Err(Error::DimensionMismatch {
            expected: m.dim,
            got: v.len(),
        });
    }
    Ok((0..m.dim)
        .map(|i| {
            m.entries[i * m.dim..(i + 1) * m.dim]
                .iter()
                .zip(v)
                .fold(field.zero(), |acc, (a, x)| field.add(&acc, &field.mul(a, x)))
        })
        .collect())
}

pub fn sub_identity<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let mut out = m.clone();
    for i in 0..m.dim {
        let idx = i * m.dim + i;
        out.entries[idx] = field.sub(&out.entries[idx], &field.one());
    }
    out
}

/// Row echelon form in place; returns the rank and the determinant of the
/// original matrix (zero when singular).
fn eliminate<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> (usize, F::Elem) {
    let d = m.dim;
    let mut det = field.one();
    let mut rank = 0;
    for col in 0..d {
        let Some(pivot) = (rank..d).find(|&r| !field.is_zero(&m.entries[r * d + col])) else {
            det = field.zero();
            continue;
        };
        if pivot != rank {
            for c in 0..d {
                m.entries.swap(pivot * d + c, rank * d + c);
            }
            det = field.neg(&det);
        }
        let pv = m.entries[rank * d + col].clone();
        det = field.mul(&det, &pv);
        let pv_inv = field.inv(&pv).expect("pivot is nonzero");
        for r in rank + 1..d {
            let factor = field.mul(&m.entries[r * d + col], &pv_inv);
            if field.is_zero(&factor) {
                continue;
            }
            for c in col..d {
                let t = field.mul(&factor, &m.entries[rank * d + c]);
                m.entries[r * d + c] = field.sub(&m.entries[r * d + c], &t);
            }
        }
        rank += 1;
    }
    (rank, det)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    eliminate(field, &mut m.clone()).0
}

pub fn det<F: Field>(field: &F, m: &Matrix<F::Elem>) -> F::Elem {
    eliminate(field, &mut m.clone()).1
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let d = m.dim;
    let w = 2 * d;
    let mut aug: Vec<F::Elem> = Vec::with_capacity(d * w);
    for i in 0..d {
        aug.extend_from_slice(&m.entries[i * d..(i + 1) * d]);
        aug.extend((0..d).map(|j| if i == j { field.one() } else { field.zero() }));
    }
    for col in 0..d {
        let pivot = (col..d).find(|&r| !field.is_zero(&aug[r * w + col]))?;
        for c in 0..w {
            aug.swap(pivot * w + c, col * w + c);
        }
        let pv_inv = field.inv(&aug[col * w + col])?;
        for c in 0..w {
            aug[col * w + c] = field.mul(&aug[col * w + c], &pv_inv);
        }
        for r in 0..d {
            if r == col || field.is_zero(&aug[r * w + col]) {
                continue;
            }
            let factor = aug[r * w + col].clone();
            for c in 0..w {
                let t = field.mul(&factor, &aug[col * w + c]);
                aug[r * w + c] = field.sub(&aug[r * w + c], &t);
            }
        }
    }
    let entries = (0..d)
        .flat_map(|r| aug[r * w + d..(r + 1) * w].to_vec())
        .collect();
    Some(Matrix { dim: d, entries })
}
