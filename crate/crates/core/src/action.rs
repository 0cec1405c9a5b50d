//! Field-point models of `O_{2n+1}`, `SO_{2n+1}` and `SO_2n` inside the
//! isometry group of the pointed space `(k^{2n+2}, q_{2n+2}, 1)`, and their
//! action on the quadric.
//!
//! * `Stab_1`: isometries fixing `1`.
//! * `O_{2n+1}`: `Stab_1`, except in characteristic 2 where it is cut down
//!   to the Dickson-0 elements. There `Stab_1 = O(1^perp) x {1, r_1}`
//!   (the reflection `r_1` acts trivially on `1^perp`), and the Dickson-0
//!   elements are the section of `Stab_1 -> O(1^perp)` that meets each
//!   fiber once.
//! * `SO_{2n+1}`: Dickson-0 elements of `Stab_1`.
//! * `SO_2n`: Dickson-0 isometries of `V_2n = span(e_1..e_n, e_{n+2}..e_{2n+1})`,
//!   extended by the identity on `e_{n+1}, e_{2n+2}`.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{pow, One};
use serde::Serialize;

use crate::algebra::{prime_power, Field};
use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::linalg::{self, Matrix};
use crate::quadform::{is_zero_vector, GroupElement, Shape, SplitSpace, Tags};
use crate::quadric::{count_closed_form, AmbientQuadricPoint, Quadric};
use crate::report::Count;

#[derive(Clone, Debug)]
pub struct GroupContext<F: Field> {
    quadric: Quadric<F>,
    even: SplitSpace<F>,
    one: Vec<F::Elem>,
    x0: Vec<F::Elem>,
}

impl<F: Field> GroupContext<F> {
    pub fn new(field: F, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank { n, min: 1 });
        }
        let quadric = Quadric::new(field.clone(), n);
        let one = quadric.space().one_vector();
        let x0 = quadric.base_point().into_coords();
        Ok(Self {
            even: SplitSpace::even(field, n)?,
            quadric,
            one,
            x0,
        })
    }

    pub fn n(&self) -> usize {
        self.quadric.n()
    }

    pub fn field(&self) -> &F {
        self.quadric.field()
    }

    pub fn space(&self) -> &SplitSpace<F> {
        self.quadric.space()
    }

    pub fn quadric(&self) -> &Quadric<F> {
        &self.quadric
    }

    /// `(V_2n, q_2n)`, coordinates in the order of [`Self::even_indices`].
    pub fn even_space(&self) -> &SplitSpace<F> {
        &self.even
    }

    pub fn one(&self) -> &[F::Elem] {
        &self.one
    }

    pub fn x0(&self) -> &[F::Elem] {
        &self.x0
    }

    /// Ambient coordinates spanning `V_2n`.
    pub fn even_indices(&self) -> Vec<usize> {
        let n = self.n();
        (0..n).chain(n + 1..2 * n + 1).collect()
    }

    fn check_dim(&self, m: &Matrix<F::Elem>) -> Result<()> {
        let d = self.space().dim();
        if m.dim() == d {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: d,
                got: m.dim(),
            })
        }
    }

    fn fixes(&self, m: &Matrix<F::Elem>, v: &[F::Elem]) -> bool {
        linalg::apply(self.field(), m, v).map(|w| w == v).unwrap_or(false)
    }

    /// Isometry of `q_{2n+2}` with `M 1 = 1`.
    pub fn in_stab_one(&self, m: &Matrix<F::Elem>) -> Result<bool> {
        self.check_dim(m)?;
        Ok(self.fixes(m, &self.one) && self.space().isometry_unchecked(m))
    }

    pub fn in_o_odd(&self, m: &Matrix<F::Elem>) -> Result<bool> {
        if !self.in_stab_one(m)? {
            return Ok(false);
        }
        Ok(self.field().characteristic() != 2 || self.space().dickson_unchecked(m) == 0)
    }

    pub fn in_so_odd(&self, m: &Matrix<F::Elem>) -> Result<bool> {
        self.check_dim(m)?;
        if !self.space().isometry_unchecked(m) {
            return Err(Error::NotAnIsometry);
        }
        Ok(self.fixes(m, &self.one) && self.space().dickson_unchecked(m) == 0)
    }

    pub fn in_so_even_stab(&self, m: &Matrix<F::Elem>) -> Result<bool> {
        Ok(self.in_so_odd(m)? && self.fixes(m, &self.x0))
    }

    /// Recomputes every cached invariant and membership tag.
    pub fn classify(&self, m: Matrix<F::Elem>) -> Result<GroupElement<F>> {
        let mut g = GroupElement::new(self.field(), m)?;
        let space = self.space();
        g.similitude = space.similitude_factor(&g.matrix)?;
        let isometry = g.similitude.as_ref() == Some(&self.field().one());
        g.dickson = isometry.then(|| space.dickson_unchecked(&g.matrix));
        g.tags = Tags {
            isometry,
            fixes_one: self.fixes(&g.matrix, &self.one),
            fixes_x0: self.fixes(&g.matrix, &self.x0),
            dickson_zero: g.dickson == Some(0),
        };
        Ok(g)
    }

    /// `M . p` for `M` in the `SO_{2n+1}` model.
    pub fn act(&self, m: &Matrix<F::Elem>, p: &AmbientQuadricPoint<F::Elem>) -> Result<AmbientQuadricPoint<F::Elem>> {
        if !self.quadric.is_on_quadric(p.coords())? {
            return Err(Error::NotOnQuadric);
        }
        match self.in_so_odd(m) {
            Ok(true) => {}
            Ok(false) | Err(Error::NotAnIsometry) => return Err(Error::NotAMember),
            Err(e) => return Err(e),
        }
        let w = linalg::apply(self.field(), m, p.coords())?;
        self.quadric.point(w)
    }

    /// `M' (+) id` on `span(e_{n+1}, e_{2n+2})`.
    pub fn extend_by_identity(&self, m: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
        let n = self.n();
        if m.dim() != 2 * n {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                got: m.dim(),
            });
        }
        let idx = self.even_indices();
        let f = self.field();
        let d = 2 * n + 2;
        let mut cols: Vec<Vec<F::Elem>> = (0..d).map(|j| self.space().basis(j)).collect();
        for (jj, &j) in idx.iter().enumerate() {
            let mut col = vec![f.zero(); d];
            for (ii, &i) in idx.iter().enumerate() {
                col[i] = m.get(ii, jj).clone();
            }
            cols[j] = col;
        }
        Matrix::from_columns(&cols)
    }

    /// Trace-0 vectors with `q(v) != 0`, in sweep order. Each `r_v` fixes `1`.
    pub fn reflection_vectors(&self, guards: &Guards) -> Result<Vec<Vec<F::Elem>>> {
        let f = self.field();
        let q = f.cardinality().ok_or(Error::InfiniteField)?;
        let n = self.n();
        guards.check_enumeration(q, 2 * n + 1)?;
        let space = self.space();
        Ok(trace_zero_sweep(f, n, &f.elements()?)
            .filter(|v| !f.is_zero(&space.q_unchecked(v)))
            .collect())
    }

    pub fn reflection_generators(&self, guards: &Guards) -> Result<Vec<GroupElement<F>>> {
        self.reflection_vectors(guards)?
            .iter()
            .map(|v| {
                let mut g = self.space().reflection_matrix(v)?;
                g.tags.fixes_one = true;
                Ok(g)
            })
            .collect()
    }

    /// Orbit of `start` under the products `r_u r_v` of trace-0 reflections,
    /// sorted.
    pub fn orbit(
        &self,
        start: &AmbientQuadricPoint<F::Elem>,
        guards: &Guards,
    ) -> Result<Vec<AmbientQuadricPoint<F::Elem>>> {
        let bfs = self.reflection_bfs(start.coords().to_vec(), guards)?;
        let mut pts: Vec<_> = bfs
            .even_states()
            .map(|w| self.quadric.point_unchecked(w.clone()))
            .collect();
        pts.sort();
        Ok(pts)
    }

    pub(crate) fn reflection_bfs(&self, start: Vec<F::Elem>, guards: &Guards) -> Result<ParityBfs<F::Elem>> {
        let f = self.field();
        let q = f.cardinality().ok_or(Error::InfiniteField)?;
        let space = self.space();
        let moves: Vec<(Vec<F::Elem>, F::Elem)> = self
            .reflection_vectors(guards)?
            .into_iter()
            .map(|v| {
                let qinv = f.inv(&space.q_unchecked(&v)).expect("q(v) != 0");
                (v, qinv)
            })
            .collect();
        let limit = guards.enumeration;
        let work = BigUint::from(moves.len()) * BigUint::from(2u32) * count_closed_form(self.n() as u32, q)?;
        if !guards.force && work > BigUint::from(limit) {
            return Err(Error::TooLarge(format!("orbit search of about {work} steps exceeds {limit}")));
        }
        ParityBfs::run(start, moves.len(), |i, w| (space.reflect_with(&moves[i].1, &moves[i].0, w), 1), limit, guards.force)
            .map(|mut bfs| {
                bfs.move_vectors = moves.into_iter().map(|(v, _)| v).collect();
                bfs
            })
    }

    /// Elements of the enumerated `SO_{2n+1}` model fixing `p`.
    pub fn stabilizer(
        &self,
        p: &AmbientQuadricPoint<F::Elem>,
        guards: &Guards,
    ) -> Result<Vec<GroupElement<F>>> {
        if !self.quadric.is_on_quadric(p.coords())? {
            return Err(Error::NotOnQuadric);
        }
        let group = enumerate_group(GroupTarget::Ambient(self, OddMember::So), guards)?;
        Ok(group
            .elements
            .into_iter()
            .filter(|m| self.fixes(m, p.coords()))
            .map(|m| {
                let mut g = GroupElement::from_matrix(m);
                g.similitude = Some(self.field().one());
                g.dickson = Some(0);
                g.tags = Tags {
                    isometry: true,
                    fixes_one: true,
                    fixes_x0: p.coords() == self.x0.as_slice(),
                    dickson_zero: true,
                };
                g
            })
            .collect())
    }
}

/// Trace-0 vectors of the pointed space of rank `n`, swept with the first
/// free coordinate varying fastest. The last coordinate is `-v_n`.
pub(crate) fn trace_zero_sweep<'a, F: Field>(
    f: &'a F,
    n: usize,
    elements: &'a [F::Elem],
) -> impl Iterator<Item = Vec<F::Elem>> + 'a {
    Sweep::new(elements, 2 * n + 1).map(move |mut v| {
        let last = f.neg(&v[n]);
        v.push(last);
        v
    })
}

/// All vectors of length `len` over `elements`, first coordinate fastest.
pub(crate) struct Sweep<'a, E> {
    elements: &'a [E],
    digits: Vec<usize>,
    done: bool,
}

impl<'a, E> Sweep<'a, E> {
    pub(crate) fn new(elements: &'a [E], len: usize) -> Self {
        Self {
            elements,
            digits: vec![0; len],
            done: elements.is_empty(),
        }
    }
}

impl<'a, E: Clone> Iterator for Sweep<'a, E> {
    type Item = Vec<E>;

    fn next(&mut self) -> Option<Vec<E>> {
        if self.done {
            return None;
        }
        let out = self.digits.iter().map(|&d| self.elements[d].clone()).collect();
        self.done = true;
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < self.elements.len() {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(out)
    }
}

/// Breadth-first search over `(vector, parity)` states. Reaching `(w, 0)`
/// means some even-length word in the moves carries the start to `w`.
pub(crate) struct ParityBfs<E> {
    states: Vec<(Vec<E>, u8)>,
    index: HashMap<(Vec<E>, u8), usize>,
    parent: Vec<Option<(usize, usize)>>,
    pub(crate) move_vectors: Vec<Vec<E>>,
}

impl<E: Clone + Eq + Hash> ParityBfs<E> {
    pub(crate) fn run(
        start: Vec<E>,
        n_moves: usize,
        step: impl Fn(usize, &[E]) -> (Vec<E>, u8),
        limit: u64,
        force: bool,
    ) -> Result<Self> {
        let mut bfs = Self {
            states: vec![(start.clone(), 0)],
            index: HashMap::from([((start, 0), 0)]),
            parent: vec![None],
            move_vectors: Vec::new(),
        };
        let mut head = 0;
        while head < bfs.states.len() {
            let (w, par) = bfs.states[head].clone();
            for mv in 0..n_moves {
                let (next, flip) = step(mv, &w);
                let key = (next, (par + flip) % 2);
                if bfs.index.contains_key(&key) {
                    continue;
                }
                if !force && bfs.states.len() as u64 >= limit {
                    return Err(Error::TooLarge(format!("orbit search exceeded {limit} states")));
                }
                bfs.index.insert(key.clone(), bfs.states.len());
                bfs.states.push(key);
                bfs.parent.push(Some((head, mv)));
            }
            head += 1;
        }
        Ok(bfs)
    }

    pub(crate) fn even_states(&self) -> impl Iterator<Item = &Vec<E>> {
        self.states.iter().filter(|(_, p)| *p == 0).map(|(w, _)| w)
    }

    /// Moves applied from the start to reach `(w, parity)`, in order.
    pub(crate) fn path(&self, w: &[E], parity: u8) -> Option<Vec<usize>> {
        let mut at = *self.index.get(&(w.to_vec(), parity))?;
        let mut moves = Vec::new();
        while let Some((prev, mv)) = self.parent[at] {
            moves.push(mv);
            at = prev;
        }
        moves.reverse();
        Some(moves)
    }
}

/// Membership predicates on the ambient model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OddMember {
    StabOne,
    O,
    So,
    SoStabX0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvenMember {
    O,
    So,
}

#[derive(Clone, Copy, Debug)]
pub enum GroupTarget<'a, F: Field> {
    Ambient(&'a GroupContext<F>, OddMember),
    EvenSplit(&'a SplitSpace<F>, EvenMember),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Closure,
    Both,
}

#[derive(Clone, Debug)]
pub struct GroupEnumeration<E> {
    /// Sorted, distinct.
    pub elements: Vec<Matrix<E>>,
    pub route: Route,
    /// Members reached by the reflection closure.
    pub closure_size: usize,
    /// Whether the closure reached every member. `None` when the direct
    /// enumeration did not run.
    pub closure_complete: Option<bool>,
}

/// Every member of the target group. Direct enumeration of isometries runs
/// when `q^(dim^2)` is within the brute-force guard; the closure of the
/// reflection generators always runs. When both run the direct enumeration
/// is returned, and the closure must be contained in it. The closure can
/// fall short: reflections of the 4-dimensional split space over `F_2`
/// generate a subgroup of index 2 in its orthogonal group.
pub fn enumerate_group<F: Field>(target: GroupTarget<'_, F>, guards: &Guards) -> Result<GroupEnumeration<F::Elem>> {
    let space = match target {
        GroupTarget::Ambient(ctx, _) => ctx.space(),
        GroupTarget::EvenSplit(s, _) => {
            if s.shape() != Shape::Even {
                return Err(Error::WrongShape("even"));
            }
            s
        }
    };
    let f = space.field();
    let q = f.cardinality().ok_or(Error::InfiniteField)?;
    // the reflection closure lies in a group of twice the SO order
    let (kind, rank) = match target {
        GroupTarget::Ambient(ctx, _) => (OrthogonalType::Odd, ctx.n()),
        GroupTarget::EvenSplit(s, _) => (OrthogonalType::EvenSplit, s.n()),
    };
    let bound = group_order(kind, rank as u32, q)? * 2u32;
    if !guards.force && bound > BigUint::from(guards.group_elements) {
        return Err(Error::TooLarge(format!(
            "a group of order up to {bound} exceeds the group guard {}",
            guards.group_elements
        )));
    }
    let keep = |m: &Matrix<F::Elem>, dickson: u8| -> bool {
        match target {
            GroupTarget::Ambient(ctx, member) => match member {
                OddMember::StabOne => true,
                OddMember::O => f.characteristic() != 2 || dickson == 0,
                OddMember::So => dickson == 0,
                OddMember::SoStabX0 => dickson == 0 && ctx.fixes(m, &ctx.x0),
            },
            GroupTarget::EvenSplit(_, EvenMember::O) => true,
            GroupTarget::EvenSplit(_, EvenMember::So) => dickson == 0,
        }
    };

    let closure = {
        let generators = match target {
            GroupTarget::Ambient(ctx, _) => ctx.reflection_vectors(guards)?,
            GroupTarget::EvenSplit(s, _) => all_reflection_vectors(s, guards)?,
        };
        let mut out: Vec<Matrix<F::Elem>> = reflection_closure(space, &generators, guards)?
            .into_iter()
            .filter(|(m, d)| keep(m, *d))
            .map(|(m, _)| m)
            .collect();
        out.sort();
        out
    };

    if !guards.brute_force_allowed(q, space.dim()) {
        return Ok(GroupEnumeration {
            closure_size: closure.len(),
            elements: closure,
            route: Route::Closure,
            closure_complete: None,
        });
    }
    let fixed: Vec<Vec<F::Elem>> = match target {
        GroupTarget::Ambient(ctx, _) => vec![ctx.one.clone()],
        GroupTarget::EvenSplit(..) => Vec::new(),
    };
    let mut brute: Vec<Matrix<F::Elem>> = all_isometries(space, &fixed)?
        .into_iter()
        .filter(|m| keep(m, space.dickson_unchecked(m)))
        .collect();
    brute.sort();
    let contained = closure.iter().all(|m| brute.binary_search(m).is_ok());
    if !contained {
        return Err(Error::RouteMismatch {
            brute: brute.len(),
            closure: closure.len(),
        });
    }
    Ok(GroupEnumeration {
        closure_size: closure.len(),
        closure_complete: Some(closure.len() == brute.len()),
        elements: brute,
        route: Route::Both,
    })
}

fn all_reflection_vectors<F: Field>(space: &SplitSpace<F>, guards: &Guards) -> Result<Vec<Vec<F::Elem>>> {
    let f = space.field();
    let q = f.cardinality().ok_or(Error::InfiniteField)?;
    guards.check_enumeration(q, space.dim())?;
    let els = f.elements()?;
    Ok(Sweep::new(&els, space.dim())
        .filter(|v| !f.is_zero(&space.q_unchecked(v)))
        .collect())
}

/// Closure of `{r_v}` under right multiplication, each element paired with
/// its word-length parity (its Dickson invariant, since every `r_v` has
/// Dickson invariant 1). Generators already inside the current group are
/// skipped, and after each new generator only the new elements are
/// multiplied by the full generator list.
fn reflection_closure<F: Field>(
    space: &SplitSpace<F>,
    vectors: &[Vec<F::Elem>],
    guards: &Guards,
) -> Result<Vec<(Matrix<F::Elem>, u8)>> {
    let f = space.field();
    let identity = Matrix::identity(f, space.dim());
    let mut elems: Vec<(Matrix<F::Elem>, u8)> = vec![(identity.clone(), 0)];
    let mut seen: HashSet<Matrix<F::Elem>> = HashSet::from([identity]);
    let mut gens: Vec<Matrix<F::Elem>> = Vec::new();
    for v in vectors {
        let g = space.reflection_matrix(v)?.into_matrix();
        if seen.contains(&g) {
            continue;
        }
        gens.push(g);
        let g = gens.last().expect("just pushed");
        let old = elems.len();
        for i in 0..old {
            let y = linalg::mul(f, &elems[i].0, g);
            if seen.insert(y.clone()) {
                elems.push((y, 1 - elems[i].1));
            }
        }
        let mut head = old;
        while head < elems.len() {
            for h in &gens {
                let y = linalg::mul(f, &elems[head].0, h);
                if seen.insert(y.clone()) {
                    elems.push((y, 1 - elems[head].1));
                }
            }
            guards.check_group_size(elems.len())?;
            head += 1;
        }
    }
    Ok(elems)
}

/// Direct enumeration of the isometries of `space` fixing each vector in
/// `fixed`, built column by column: column `j` ranges over all vectors `c`
/// with `q(c) = q(e_j)` and `B(c_i, c) = B(e_i, e_j)` for earlier columns.
fn all_isometries<F: Field>(space: &SplitSpace<F>, fixed: &[Vec<F::Elem>]) -> Result<Vec<Matrix<F::Elem>>> {
    let f = space.field();
    let els = f.elements()?;
    let d = space.dim();
    let candidates: Vec<(Vec<F::Elem>, F::Elem)> = Sweep::new(&els, d)
        .map(|v| {
            let qv = space.q_unchecked(&v);
            (v, qv)
        })
        .collect();
    let basis: Vec<Vec<F::Elem>> = (0..d).map(|j| space.basis(j)).collect();
    let target_q: Vec<F::Elem> = basis.iter().map(|e| space.q_unchecked(e)).collect();
    let target_b: Vec<Vec<F::Elem>> = basis
        .iter()
        .map(|ei| basis.iter().map(|ej| space.b_unchecked(ei, ej)).collect())
        .collect();

    let mut out = Vec::new();
    let mut cols: Vec<usize> = Vec::with_capacity(d);
    fn recurse<F: Field>(
        space: &SplitSpace<F>,
        candidates: &[(Vec<F::Elem>, F::Elem)],
        target_q: &[F::Elem],
        target_b: &[Vec<F::Elem>],
        fixed: &[Vec<F::Elem>],
        cols: &mut Vec<usize>,
        out: &mut Vec<Matrix<F::Elem>>,
    ) -> Result<()> {
        let j = cols.len();
        let d = target_q.len();
        if j == d {
            let columns: Vec<Vec<F::Elem>> = cols.iter().map(|&c| candidates[c].0.clone()).collect();
            let m = Matrix::from_columns(&columns)?;
            let f = space.field();
            if fixed.iter().all(|v| linalg::apply(f, &m, v).map(|w| &w == v).unwrap_or(false)) {
                out.push(m);
            }
            return Ok(());
        }
        for (c, (v, qv)) in candidates.iter().enumerate() {
            if *qv != target_q[j] {
                continue;
            }
            let compatible = cols
                .iter()
                .enumerate()
                .all(|(i, &ci)| space.b_unchecked(&candidates[ci].0, v) == target_b[i][j]);
            if compatible {
                cols.push(c);
                recurse(space, candidates, target_q, target_b, fixed, cols, out)?;
                cols.pop();
            }
        }
        Ok(())
    }
    recurse(space, &candidates, &target_q, &target_b, fixed, &mut cols, &mut out)?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrthogonalType {
    /// `SO_{2n+1}`
    Odd,
    /// split `SO_2n`
    EvenSplit,
}

/// Orders of the split special orthogonal groups over `F_q`:
/// `|SO_{2n+1}| = q^{n^2} prod_{i=1..n} (q^{2i} - 1)` and
/// `|SO_2n^+| = q^{n(n-1)} (q^n - 1) prod_{i=1..n-1} (q^{2i} - 1)`.
pub fn group_order(kind: OrthogonalType, n: u32, q: u64) -> Result<BigUint> {
    if prime_power(q).is_none() {
        return Err(Error::InvalidPrimePower(q));
    }
    if n == 0 {
        return Err(Error::InvalidRank { n: 0, min: 1 });
    }
    let q = BigUint::from(q);
    let n = n as usize;
    let one = BigUint::one();
    let prod = |upto: usize| -> BigUint {
        (1..=upto).fold(BigUint::one(), |acc, i| acc * (pow(q.clone(), 2 * i) - &one))
    };
    Ok(match kind {
        OrthogonalType::Odd => pow(q.clone(), n * n) * prod(n),
        OrthogonalType::EvenSplit => pow(q.clone(), n * (n - 1)) * (pow(q.clone(), n) - &one) * prod(n - 1),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomogeneousChecks {
    /// orbit(x_0) is all of `Q_2n(F_q)`.
    pub orbit_is_quadric: bool,
    /// `|Stab(x_0)| = |SO_2n(F_q)|`.
    pub stabilizer_order: bool,
    /// `|orbit| |Stab| = |SO_{2n+1}(F_q)|`.
    pub orbit_stabilizer: bool,
    /// The enumerated `SO_{2n+1}` model has the formula order.
    pub enumerated_order: bool,
    /// `Stab(x_0)` equals `SO_2n(F_q)` extended by the identity.
    pub stabilizer_is_extended_so_even: bool,
}

/// Both inclusions between the stabilizer of `x_0` in `Stab_1` (Dickson
/// invariant unrestricted) and the identity extension of `O_2n`. Reported,
/// not part of the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OStabilizerComparison {
    pub stab_in_extended_o_even: bool,
    pub extended_o_even_in_stab: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomogeneousReport {
    pub check: &'static str,
    pub n: usize,
    pub field: String,
    pub quadric_size: usize,
    pub orbit_size: usize,
    pub stab_size: usize,
    pub group_order: Count,
    pub so_even_order: Count,
    pub so_odd_enumerated: usize,
    pub so_even_enumerated: usize,
    pub so_odd_route: Route,
    pub so_even_route: Route,
    pub so_odd_closure_complete: Option<bool>,
    pub so_even_closure_complete: Option<bool>,
    pub checks: HomogeneousChecks,
    pub o_model: OStabilizerComparison,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

const MAX_WITNESSES: usize = 5;

fn fmt_vec<F: Field>(f: &F, v: &[F::Elem]) -> String {
    format!("[{}]", v.iter().map(|x| f.format(x)).collect::<Vec<_>>().join(","))
}

/// Orbit/stabilizer verification of `Q_2n(F_q) = SO_{2n+1}(F_q) / SO_2n(F_q)`.
pub fn verify_homogeneous<F: Field>(field: &F, n: usize, guards: &Guards) -> Result<HomogeneousReport> {
    let q = field.cardinality().ok_or(Error::InfiniteField)?;
    let ctx = GroupContext::new(field.clone(), n)?;
    let x0 = ctx.quadric().base_point();
    let so_odd = enumerate_group(GroupTarget::Ambient(&ctx, OddMember::So), guards)?;
    let points = ctx.quadric().enumerate(guards)?;
    let orbit = ctx.orbit(&x0, guards)?;

    let stab: Vec<&Matrix<F::Elem>> = so_odd.elements.iter().filter(|m| ctx.fixes(m, ctx.x0())).collect();
    let so_even = enumerate_group(GroupTarget::EvenSplit(ctx.even_space(), EvenMember::So), guards)?;
    let extended: HashSet<Matrix<F::Elem>> = so_even
        .elements
        .iter()
        .map(|m| ctx.extend_by_identity(m))
        .collect::<Result<_>>()?;
    let stab_set: HashSet<Matrix<F::Elem>> = stab.iter().map(|m| (*m).clone()).collect();

    let odd_order = group_order(OrthogonalType::Odd, n as u32, q)?;
    let even_order = group_order(OrthogonalType::EvenSplit, n as u32, q)?;

    let checks = HomogeneousChecks {
        orbit_is_quadric: orbit == points,
        stabilizer_order: BigUint::from(stab.len()) == even_order,
        orbit_stabilizer: BigUint::from(orbit.len()) * BigUint::from(stab.len()) == odd_order,
        enumerated_order: BigUint::from(so_odd.elements.len()) == odd_order,
        stabilizer_is_extended_so_even: stab_set == extended,
    };

    let mut witnesses = Vec::new();
    if !checks.orbit_is_quadric {
        let orbit_set: HashSet<_> = orbit.iter().collect();
        witnesses.extend(
            points
                .iter()
                .filter(|p| !orbit_set.contains(p))
                .take(MAX_WITNESSES)
                .map(|p| format!("not reached: {}", fmt_vec(field, p.coords()))),
        );
    }
    if !checks.stabilizer_is_extended_so_even {
        witnesses.extend(
            stab_set
                .symmetric_difference(&extended)
                .take(MAX_WITNESSES)
                .map(|m| format!("stabilizer mismatch: {:?}", m.rows().iter().map(|r| fmt_vec(field, r)).collect::<Vec<_>>())),
        );
    }

    let o_model = {
        let o_stab: HashSet<Matrix<F::Elem>> = enumerate_group(GroupTarget::Ambient(&ctx, OddMember::StabOne), guards)?
            .elements
            .into_iter()
            .filter(|m| ctx.fixes(m, ctx.x0()))
            .collect();
        let o_even: HashSet<Matrix<F::Elem>> = enumerate_group(GroupTarget::EvenSplit(ctx.even_space(), EvenMember::O), guards)?
            .elements
            .iter()
            .map(|m| ctx.extend_by_identity(m))
            .collect::<Result<_>>()?;
        OStabilizerComparison {
            stab_in_extended_o_even: o_stab.is_subset(&o_even),
            extended_o_even_in_stab: o_even.is_subset(&o_stab),
        }
    };

    let pass = checks.orbit_is_quadric
        && checks.stabilizer_order
        && checks.orbit_stabilizer
        && checks.enumerated_order
        && checks.stabilizer_is_extended_so_even;
    Ok(HomogeneousReport {
        check: "homogeneous",
        n,
        field: field.label(),
        quadric_size: points.len(),
        orbit_size: orbit.len(),
        stab_size: stab.len(),
        group_order: odd_order.into(),
        so_even_order: even_order.into(),
        so_odd_enumerated: so_odd.elements.len(),
        so_even_enumerated: so_even.elements.len(),
        so_odd_route: so_odd.route,
        so_even_route: so_even.route,
        so_odd_closure_complete: so_odd.closure_complete,
        so_even_closure_complete: so_even.closure_complete,
        checks,
        o_model,
        pass,
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimilitudeReport {
    pub check: &'static str,
    pub n: usize,
    pub field: String,
    pub characteristic_two: bool,
    pub vectors: usize,
    pub nonzero_norm: usize,
    /// Size of the predicted orbit: all of `{q != 0}` in characteristic 2,
    /// `{q(v) a nonzero square}` otherwise.
    pub expected_size: usize,
    pub orbit_size: usize,
    pub contains_one: bool,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

/// Orbit of `1` under the group generated by scalars and products of two
/// reflections of `q_{2n+2}`.
pub fn verify_similitude_orbit<F: Field>(field: &F, n: usize, guards: &Guards) -> Result<SimilitudeReport> {
    let q = field.cardinality().ok_or(Error::InfiniteField)?;
    let space = SplitSpace::pointed(field.clone(), n)?;
    let d = space.dim();
    guards.check_enumeration(q, d)?;
    let els = field.elements()?;
    let all: Vec<Vec<F::Elem>> = Sweep::new(&els, d).collect();
    let reflections: Vec<(Vec<F::Elem>, F::Elem)> = all
        .iter()
        .filter_map(|v| field.inv(&space.q_unchecked(v)).map(|qi| (v.clone(), qi)))
        .collect();
    let scalars: Vec<F::Elem> = els.iter().filter(|e| !field.is_zero(e)).cloned().collect();
    let n_moves = reflections.len() + scalars.len();
    let work = BigUint::from(n_moves) * BigUint::from(2 * all.len());
    if !guards.force && work > BigUint::from(guards.enumeration) {
        return Err(Error::TooLarge(format!(
            "orbit search of about {work} steps exceeds {}",
            guards.enumeration
        )));
    }
    let bfs = ParityBfs::run(
        space.one_vector(),
        n_moves,
        |i, w| {
            if i < reflections.len() {
                let (v, qi) = &reflections[i];
                (space.reflect_with(qi, v, w), 1)
            } else {
                let s = &scalars[i - reflections.len()];
                (w.iter().map(|x| field.mul(s, x)).collect(), 0)
            }
        },
        guards.enumeration,
        guards.force,
    )?;
    let orbit: HashSet<&Vec<F::Elem>> = bfs.even_states().collect();

    let char2 = field.characteristic() == 2;
    let mut expected = HashSet::new();
    let mut nonzero = 0;
    for v in &all {
        let qv = space.q_unchecked(v);
        if field.is_zero(&qv) {
            continue;
        }
        nonzero += 1;
        if char2 || field.is_square(&qv)? {
            expected.insert(v);
        }
    }
    let witnesses: Vec<String> = expected
        .symmetric_difference(&orbit)
        .take(MAX_WITNESSES)
        .map(|v| fmt_vec(field, v))
        .collect();
    let contains_one = orbit.contains(&space.one_vector());
    Ok(SimilitudeReport {
        check: "similitude",
        n,
        field: field.label(),
        characteristic_two: char2,
        vectors: all.len(),
        nonzero_norm: nonzero,
        expected_size: expected.len(),
        orbit_size: orbit.len(),
        contains_one,
        pass: orbit == expected && contains_one && !is_zero_vector(field, &space.one_vector()),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteField, Rationals};

    fn ctx(p: u32, k: u32, n: usize) -> GroupContext<FiniteField> {
        GroupContext::new(FiniteField::new(p, k).unwrap(), n).unwrap()
    }

    #[test]
    fn context_invariants() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            for n in 1..=2 {
                let c = ctx(p, k, n);
                let f = c.field();
                let s = c.space();
                assert_eq!(s.eval_q(c.one()).unwrap(), 1);
                assert_eq!(s.trace(c.one()).unwrap(), f.from_i64(2));
                assert_eq!(s.eval_q(c.x0()).unwrap(), 0);
                assert_eq!(s.trace(c.x0()).unwrap(), 1);
                // q restricted to V_2n is q_2n in the listed coordinates
                let idx = c.even_indices();
                let els = f.elements().unwrap();
                for v in Sweep::new(&els, 2 * n).take(200) {
                    let mut w = vec![0; 2 * n + 2];
                    for (ii, &i) in idx.iter().enumerate() {
                        w[i] = v[ii];
                    }
                    assert_eq!(s.eval_q(&w).unwrap(), c.even_space().eval_q(&v).unwrap());
                }
            }
        }
        assert!(GroupContext::new(Rationals, 0).is_err());
    }

    #[test]
    fn membership_examples() {
        let c = ctx(5, 1, 1);
        let f = c.field().clone();
        let id = Matrix::identity(&f, 4);
        assert!(c.in_o_odd(&id).unwrap());
        assert!(c.in_so_odd(&id).unwrap());
        assert!(c.in_so_even_stab(&id).unwrap());
        // t(v) = 0, q(v) != 0
        let v = vec![1, 1, 2, 4];
        assert_eq!(c.space().trace(&v).unwrap(), 0);
        let r = c.space().reflection_matrix(&v).unwrap();
        assert!(c.in_o_odd(r.matrix()).unwrap());
        assert!(!c.in_so_odd(r.matrix()).unwrap());
        let u = vec![1, 0, 1, 0];
        let ru = c.space().reflection_matrix(&u).unwrap();
        let prod = r.compose(&f, &ru);
        assert!(c.in_so_odd(prod.matrix()).unwrap());
        let two = Matrix::scalar(&f, 4, &2);
        assert!(!c.in_o_odd(&two).unwrap());
        assert_eq!(c.in_so_odd(&two), Err(Error::NotAnIsometry));
        assert!(matches!(c.in_o_odd(&Matrix::identity(&f, 3)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn char_two_o_model_is_dickson_zero_section() {
        let c = ctx(2, 1, 1);
        let r1 = c.space().reflection_matrix(c.one()).unwrap();
        assert!(c.in_stab_one(r1.matrix()).unwrap());
        assert!(!c.in_o_odd(r1.matrix()).unwrap());
        // r_1 acts trivially on the trace-0 hyperplane
        let f = c.field();
        for v in c.reflection_vectors(&Guards::default()).unwrap() {
            assert_eq!(linalg::apply(f, r1.matrix(), &v).unwrap(), v);
        }
    }

    #[test]
    fn so_even_stab_examples() {
        for p in [2, 3, 5] {
            let c = ctx(p, 1, 2);
            let f = c.field().clone();
            let even = c.even_space();
            // swap of the hyperbolic pair e_1 <-> e_{n+1} in V_2n coordinates
            let mut cols: Vec<Vec<u32>> = (0..4).map(|j| even.basis(j)).collect();
            cols.swap(0, 2);
            let swap = Matrix::from_columns(&cols).unwrap();
            assert!(even.is_isometry(&swap).unwrap());
            let ext = c.extend_by_identity(&swap).unwrap();
            assert_eq!(linalg::rank(&f, &linalg::sub_identity(&f, &ext)), 1);
            assert!(!c.in_so_even_stab(&ext).unwrap());

            let a = even.reflection_matrix(&[1, 0, 1, 0]).unwrap();
            let b = even.reflection_matrix(&[0, 1, 0, 1]).unwrap();
            let ab = c.extend_by_identity(a.compose(&f, &b).matrix()).unwrap();
            assert!(c.in_so_even_stab(&ab).unwrap());
        }
    }

    #[test]
    fn generators_fix_one_and_have_dickson_one() {
        for (p, k) in [(2, 1), (3, 1), (2, 2)] {
            let c = ctx(p, k, 1);
            let gens = c.reflection_generators(&Guards::default()).unwrap();
            assert!(!gens.is_empty());
            for g in &gens {
                assert!(c.in_stab_one(g.matrix()).unwrap());
                assert_eq!(c.space().dickson(g.matrix()).unwrap(), 1);
                assert_eq!(g.dickson(), Some(1));
            }
        }
    }

    #[test]
    fn act_examples() {
        let c = ctx(3, 1, 1);
        let f = c.field().clone();
        let x0 = c.quadric().base_point();
        let id = Matrix::identity(&f, 4);
        assert_eq!(c.act(&id, &x0).unwrap(), x0);
        let g = c
            .space()
            .reflection_matrix(&[0, 1, 0, 2])
            .unwrap()
            .compose(&f, &c.space().reflection_matrix(&[1, 0, 1, 0]).unwrap());
        assert_eq!(c.act(g.matrix(), &x0).unwrap().coords(), &[0, 1, 0, 0]);
        let single = c.space().reflection_matrix(&[0, 1, 0, 2]).unwrap();
        assert_eq!(c.act(single.matrix(), &x0), Err(Error::NotAMember));
    }

    #[test]
    fn orbits_cover_small_quadrics() {
        let g = Guards::default();
        for (p, k, n, size) in [(2, 1, 1, 6), (3, 1, 1, 12), (2, 1, 2, 20)] {
            let c = ctx(p, k, n);
            let orbit = c.orbit(&c.quadric().base_point(), &g).unwrap();
            assert_eq!(orbit.len(), size);
            assert_eq!(orbit, c.quadric().enumerate(&g).unwrap());
        }
    }

    #[test]
    fn stabilizer_examples() {
        let g = Guards::default();
        for (p, n, size) in [(2, 1, 1), (3, 1, 2), (2, 2, 36)] {
            let c = ctx(p, 1, n);
            let stab = c.stabilizer(&c.quadric().base_point(), &g).unwrap();
            assert_eq!(stab.len(), size, "p={p} n={n}");
            for s in &stab {
                assert!(c.in_so_even_stab(s.matrix()).unwrap());
            }
        }
    }

    #[test]
    fn enumerate_group_examples() {
        let g = Guards::default();
        let c = ctx(2, 1, 1);
        let o3 = enumerate_group(GroupTarget::Ambient(&c, OddMember::O), &g).unwrap();
        assert_eq!(o3.elements.len(), 6);
        assert_eq!(o3.route, Route::Both);
        let stab1 = enumerate_group(GroupTarget::Ambient(&c, OddMember::StabOne), &g).unwrap();
        assert_eq!(stab1.elements.len(), 12);

        let f3 = FiniteField::prime(3).unwrap();
        let v2 = SplitSpace::even(f3.clone(), 1).unwrap();
        let so2 = enumerate_group(GroupTarget::EvenSplit(&v2, EvenMember::So), &g).unwrap();
        assert_eq!(so2.elements, vec![Matrix::identity(&f3, 2), Matrix::scalar(&f3, 2, &2)]);

        let f2 = FiniteField::prime(2).unwrap();
        let v4 = SplitSpace::even(f2, 2).unwrap();
        let so4 = enumerate_group(GroupTarget::EvenSplit(&v4, EvenMember::So), &g).unwrap();
        assert_eq!(so4.elements.len(), 36);
        assert_eq!((so4.closure_size, so4.closure_complete), (18, Some(false)));
        let o4 = enumerate_group(GroupTarget::EvenSplit(&v4, EvenMember::O), &g).unwrap();
        assert_eq!((o4.elements.len(), o4.closure_size), (72, 36));

        let odd = SplitSpace::odd(f3, 1).unwrap();
        assert!(matches!(
            enumerate_group(GroupTarget::EvenSplit(&odd, EvenMember::So), &g),
            Err(Error::WrongShape(_))
        ));
    }

    #[test]
    fn group_order_examples() {
        assert_eq!(group_order(OrthogonalType::Odd, 1, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(group_order(OrthogonalType::EvenSplit, 1, 3).unwrap(), BigUint::from(2u32));
        assert_eq!(group_order(OrthogonalType::Odd, 1, 3).unwrap(), BigUint::from(24u32));
        assert_eq!(group_order(OrthogonalType::EvenSplit, 2, 2).unwrap(), BigUint::from(36u32));
        assert_eq!(group_order(OrthogonalType::Odd, 2, 2).unwrap(), BigUint::from(720u32));
        assert_eq!(group_order(OrthogonalType::Odd, 1, 6), Err(Error::InvalidPrimePower(6)));
    }

    #[test]
    fn homogeneous_small() {
        let g = Guards::default();
        let r = verify_homogeneous(&FiniteField::prime(2).unwrap(), 1, &g).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!((r.orbit_size, r.stab_size), (6, 1));
        let r = verify_homogeneous(&FiniteField::prime(3).unwrap(), 1, &g).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!((r.orbit_size, r.stab_size), (12, 2));
        assert!(r.o_model.stab_in_extended_o_even && r.o_model.extended_o_even_in_stab);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["check"], "homogeneous");
        assert_eq!(json["group_order"], 24);
    }

    #[test]
    fn similitude_orbit_small() {
        let g = Guards::default();
        let r = verify_similitude_orbit(&FiniteField::prime(3).unwrap(), 1, &g).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!((r.orbit_size, r.nonzero_norm), (24, 48));
        let r = verify_similitude_orbit(&FiniteField::new(2, 2).unwrap(), 1, &g).unwrap();
        assert!(r.pass);
        assert_eq!(r.orbit_size, r.nonzero_norm);
    }

    #[test]
    fn sweep_order() {
        let els = [0u32, 1];
        let all: Vec<Vec<u32>> = Sweep::new(&els, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
    }
}
