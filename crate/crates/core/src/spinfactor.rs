//! The quadratic spin factor `J = (k^{2n+2}, q, 1)` and its rank-one
//! idempotents.

use rayon::prelude::*;
use serde::Serialize;

use crate::action::Sweep;
use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::quadform::{vscale, vsub, SplitSpace};
use crate::quadric::Quadric;

#[derive(Clone, Debug)]
pub struct SpinFactor<F: Field> {
    space: SplitSpace<F>,
    one: Vec<F::Elem>,
}

impl<F: Field> SpinFactor<F> {
    pub fn new(field: F, n: usize) -> Self {
        let space = SplitSpace::pointed(field, n).expect("pointed spaces accept every n");
        Self {
            one: space.one_vector(),
            space,
        }
    }

    pub fn space(&self) -> &SplitSpace<F> {
        &self.space
    }

    pub fn one(&self) -> &[F::Elem] {
        &self.one
    }

    /// `x bar = t(x) 1 - x`.
    pub fn conj(&self, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.space.check_dim(x)?;
        Ok(self.conj_unchecked(x))
    }

    fn conj_unchecked(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.space.field();
        let t = self.space.trace_unchecked(x);
        vsub(f, &vscale(f, &t, &self.one), x)
    }

    /// `x^2 = t(x) x - q(x) 1`.
    pub fn jsquare(&self, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.space.check_dim(x)?;
        Ok(self.jsquare_unchecked(x))
    }

    fn jsquare_unchecked(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.space.field();
        let t = self.space.trace_unchecked(x);
        let q = self.space.q_unchecked(x);
        vsub(f, &vscale(f, &t, x), &vscale(f, &q, &self.one))
    }

    /// `U_x y = B(x, y bar) x - q(x) y bar`.
    pub fn u_operator(&self, x: &[F::Elem], y: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.space.check_dim(x)?;
        self.space.check_dim(y)?;
        let f = self.space.field();
        let yb = self.conj_unchecked(y);
        let b = self.space.b_unchecked(x, &yb);
        let q = self.space.q_unchecked(x);
        Ok(vsub(f, &vscale(f, &b, x), &vscale(f, &q, &yb)))
    }

    /// `x^2 = x` and `t(x) = 1`.
    pub fn is_rank_one_projection(&self, x: &[F::Elem]) -> Result<bool> {
        self.space.check_dim(x)?;
        Ok(self.rank_one_unchecked(x))
    }

    fn rank_one_unchecked(&self, x: &[F::Elem]) -> bool {
        self.space.trace_unchecked(x) == self.space.field().one() && self.jsquare_unchecked(x) == x
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinReport {
    pub check: &'static str,
    pub n: usize,
    pub field: String,
    pub idempotents: usize,
    pub quadric_points: usize,
    pub equal: bool,
    pub pass: bool,
}

/// Compares the rank-one idempotents of `J` over `F_q`, found by sweeping
/// all of `F_q^{2n+2}`, with the enumerated quadric.
pub fn verify_projective_space<F: Field>(sf: &SpinFactor<F>, guards: &Guards) -> Result<SpinReport> {
    let f = sf.space.field();
    let q = f.cardinality().ok_or(Error::InfiniteField)?;
    let d = sf.space.dim();
    guards.check_enumeration(q, d)?;
    let els = f.elements()?;
    let mut idempotents: Vec<Vec<F::Elem>> = els
        .par_iter()
        .flat_map_iter(|lead| {
            Sweep::new(&els, d - 1).filter_map(move |rest| {
                let mut x = Vec::with_capacity(d);
                x.push(lead.clone());
                x.extend(rest);
                sf.rank_one_unchecked(&x).then_some(x)
            })
        })
        .collect();
    idempotents.sort();
    let quadric = Quadric::new(f.clone(), sf.space.n());
    let points: Vec<Vec<F::Elem>> = quadric
        .enumerate(guards)?
        .into_iter()
        .map(|p| p.into_coords())
        .collect();
    let equal = idempotents == points;
    Ok(SpinReport {
        check: "spin_projective",
        n: sf.space.n(),
        field: f.label(),
        idempotents: idempotents.len(),
        quadric_points: points.len(),
        equal,
        pass: equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteField;

    fn sf(p: u32, n: usize) -> SpinFactor<FiniteField> {
        SpinFactor::new(FiniteField::prime(p).unwrap(), n)
    }

    #[test]
    fn jsquare_examples() {
        for p in [2, 3, 5] {
            let s = sf(p, 1);
            assert_eq!(s.jsquare(s.one()).unwrap(), s.one());
            assert_eq!(s.jsquare(&[1, 0, 0, 0]).unwrap(), vec![0; 4]);
            assert_eq!(s.jsquare(&[0, 0, 0, 1]).unwrap(), vec![0, 0, 0, 1]);
            assert!(s.jsquare(&[0, 0, 0]).is_err());
        }
    }

    #[test]
    fn u_operator_examples() {
        let s = sf(5, 1);
        let els: Vec<u32> = (0..5).collect();
        for y in Sweep::new(&els, 4) {
            assert_eq!(s.u_operator(s.one(), &y).unwrap(), y);
            let yb = s.conj(&y).unwrap();
            let b = s.space().eval_b(&[1, 0, 0, 0], &yb).unwrap();
            assert_eq!(s.u_operator(&[1, 0, 0, 0], &y).unwrap(), vec![b, 0, 0, 0]);
            assert_eq!(s.conj(&yb).unwrap(), y);
        }
        assert_eq!(s.u_operator(&[0, 0, 0, 1], s.one()).unwrap(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn rank_one_examples() {
        for p in [2, 3] {
            let s = sf(p, 1);
            assert!(s.is_rank_one_projection(&[0, 0, 0, 1]).unwrap());
            assert!(!s.is_rank_one_projection(s.one()).unwrap());
            assert!(!s.is_rank_one_projection(&[0; 4]).unwrap());
        }
    }

    #[test]
    fn projective_space_small() {
        let g = Guards::default();
        for (p, n, size) in [(2, 1, 6), (3, 1, 12), (2, 2, 20)] {
            let r = verify_projective_space(&sf(p, n), &g).unwrap();
            assert!(r.equal);
            assert_eq!((r.idempotents, r.quadric_points), (size, size));
        }
        let json = serde_json::to_value(verify_projective_space(&sf(2, 1), &g).unwrap()).unwrap();
        assert_eq!(json["check"], "spin_projective");
    }
}
