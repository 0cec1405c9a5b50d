//! Reflection words that carry one vector to another, and their use as
//! explicit witnesses for transitivity on the quadric.
//!
//! A word `[v_1, .., v_m]` stands for `r_{v_1} o .. o r_{v_m}`, so `v_m` acts
//! first. A scalar, when present, acts after the whole word.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{trace_zero_sweep, GroupContext, ParityBfs, Sweep};
use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::linalg::{self, Matrix};
use crate::quadform::{is_zero_vector, vscale, vsub, GroupElement, Shape, SplitSpace, Tags};
use crate::quadric::AmbientQuadricPoint;
use crate::report::{elem_value, vector_value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransportOptions {
    /// Over an infinite field, candidates are integer vectors with entries in
    /// `-height..=height`.
    pub height: u32,
    /// Only use reflection vectors with `t(v) = 0` (pointed spaces).
    pub trace_zero: bool,
}

impl Default for TransportOptions {
    fn default() -> Self {
        Self {
            height: 5,
            trace_zero: false,
        }
    }
}

/// How a word was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransportPath {
    /// `x = y`: the empty word.
    Identity,
    /// `q(x - y)` is a unit: the single reflection `r_{x-y}`.
    Reflection,
    /// `r_w o r_{w'}` with `w' = x - r_w(y)`.
    TwoReflections,
    /// Breadth-first search over trace-0 reflections.
    Bfs,
}

#[derive(Clone, Debug)]
pub struct TransportCertificate<F: Field> {
    pub word: Vec<Vec<F::Elem>>,
    pub scalar: Option<F::Elem>,
    pub source: Vec<F::Elem>,
    pub target: Vec<F::Elem>,
    pub element: GroupElement<F>,
    /// Dickson invariant of the reflection part.
    pub dickson: u8,
    pub path: TransportPath,
    /// `r_{u*}` was appended to make the Dickson invariant 0.
    pub dickson_fixed: bool,
    pub verified: bool,
}

impl<F: Field> TransportCertificate<F> {
    pub fn to_json(&self, f: &F) -> Value {
        json!({
            "word": self.word.iter().map(|v| vector_value(f, v)).collect::<Vec<_>>(),
            "scalar": self.scalar.as_ref().map(|s| elem_value(f, s)),
            "dickson": self.dickson,
            "source": vector_value(f, &self.source),
            "target": vector_value(f, &self.target),
            "path": self.path,
            "dickson_fixed": self.dickson_fixed,
            "verified": self.verified,
        })
    }

    /// Re-derives the element from the word and scalar and checks every
    /// declared property.
    pub fn verify(&self, space: &SplitSpace<F>) -> bool {
        let f = space.field();
        if self.word.iter().any(|v| f.inv(&space.q_unchecked(v)).is_none()) {
            return false;
        }
        let Ok(reflections) = assemble(space, &self.word) else {
            return false;
        };
        let scale = self.scalar.clone().unwrap_or_else(|| f.one());
        let m = scaled(f, &reflections, &scale);
        if m != self.element.matrix {
            return false;
        }
        if linalg::apply(f, &m, &self.source).ok().as_ref() != Some(&self.target) {
            return false;
        }
        let factor = f.mul(&scale, &scale);
        if space.similitude_factor(&m).ok().flatten().as_ref() != Some(&factor) {
            return false;
        }
        let parity = (self.word.len() % 2) as u8;
        if self.dickson != parity {
            return false;
        }
        space.shape() == Shape::Odd || space.dickson_unchecked(&reflections) == parity
    }
}

/// `r_{v_1} ... r_{v_m}`.
fn assemble<F: Field>(space: &SplitSpace<F>, word: &[Vec<F::Elem>]) -> Result<Matrix<F::Elem>> {
    let f = space.field();
    let mut m = Matrix::identity(f, space.dim());
    for v in word {
        m = linalg::mul(f, &m, space.reflection_matrix(v)?.matrix());
    }
    Ok(m)
}

fn scaled<F: Field>(f: &F, m: &Matrix<F::Elem>, s: &F::Elem) -> Matrix<F::Elem> {
    if *s == f.one() {
        m.clone()
    } else {
        linalg::mul(f, &Matrix::scalar(f, m.dim(), s), m)
    }
}

fn certify<F: Field>(
    space: &SplitSpace<F>,
    word: Vec<Vec<F::Elem>>,
    scalar: Option<F::Elem>,
    source: Vec<F::Elem>,
    target: Vec<F::Elem>,
    path: TransportPath,
) -> Result<TransportCertificate<F>> {
    let f = space.field();
    let reflections = assemble(space, &word)?;
    let scale = scalar.clone().unwrap_or_else(|| f.one());
    let dickson = (word.len() % 2) as u8;
    let element = GroupElement {
        matrix: scaled(f, &reflections, &scale),
        similitude: Some(f.mul(&scale, &scale)),
        dickson: scalar.is_none().then_some(dickson),
        tags: Tags {
            isometry: scalar.is_none(),
            ..Tags::default()
        },
    };
    let mut cert = TransportCertificate {
        word,
        scalar,
        source,
        target,
        element,
        dickson,
        path,
        dickson_fixed: false,
        verified: false,
    };
    cert.verified = cert.verify(space);
    if cert.verified {
        Ok(cert)
    } else {
        Err(Error::Unverified(format!("{path:?} certificate failed re-verification")))
    }
}

/// Candidate values for one coordinate: the field itself when finite, else
/// the integers `0, 1, -1, .., h, -h`.
fn candidate_values<F: Field>(f: &F, height: u32) -> Result<Vec<F::Elem>> {
    if f.is_finite() {
        return f.elements();
    }
    let mut out = vec![f.zero()];
    for i in 1..=height as i64 {
        out.push(f.from_i64(i));
        out.push(f.from_i64(-i));
    }
    Ok(out)
}

/// `e_i + e_i'` and `e_i - e_i'` over the hyperbolic pairs, then `e_last` for
/// the odd shape.
fn structured_candidates<F: Field>(space: &SplitSpace<F>) -> Vec<Vec<F::Elem>> {
    let f = space.field();
    let mut out: Vec<Vec<F::Elem>> = Vec::new();
    for i in 0..space.pairs() {
        let j = space.partner(i).expect("paired coordinate");
        for sign in [f.one(), f.neg(&f.one())] {
            let mut v = space.zero_vector();
            v[i] = f.one();
            v[j] = sign;
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    if space.shape() == Shape::Odd {
        out.push(space.basis(space.dim() - 1));
    }
    out
}

/// Word carrying `x` to `y`, found by the single-reflection case, then the
/// two-reflection case over the structured candidates and a full sweep.
fn find_word<F: Field>(
    space: &SplitSpace<F>,
    x: &[F::Elem],
    y: &[F::Elem],
    opts: &TransportOptions,
) -> Result<(Vec<Vec<F::Elem>>, TransportPath)> {
    let f = space.field();
    space.check_dim(x)?;
    space.check_dim(y)?;
    if opts.trace_zero && space.shape() != Shape::PointedEven {
        return Err(Error::WrongShape("pointed even"));
    }
    if is_zero_vector(f, x) || is_zero_vector(f, y) {
        return Err(Error::ZeroVector);
    }
    if space.q_unchecked(x) != space.q_unchecked(y) {
        return Err(Error::NormMismatch);
    }
    if x == y {
        return Ok((Vec::new(), TransportPath::Identity));
    }
    let admissible = |v: &[F::Elem]| !opts.trace_zero || f.is_zero(&space.trace_unchecked(v));
    let d = vsub(f, x, y);
    if !f.is_zero(&space.q_unchecked(&d)) && admissible(&d) {
        return Ok((vec![d], TransportPath::Reflection));
    }

    let values = candidate_values(f, opts.height)?;
    let sweep: Box<dyn Iterator<Item = Vec<F::Elem>>> = if opts.trace_zero {
        Box::new(trace_zero_sweep(f, space.n(), &values))
    } else {
        Box::new(Sweep::new(&values, space.dim()))
    };
    for w in structured_candidates(space).into_iter().filter(|v| admissible(v)).chain(sweep) {
        let qw = space.q_unchecked(&w);
        let Some(qinv) = f.inv(&qw) else { continue };
        if f.is_zero(&space.b_unchecked(x, &w)) || f.is_zero(&space.b_unchecked(y, &w)) {
            continue;
        }
        let w2 = vsub(f, x, &space.reflect_with(&qinv, &w, y));
        if f.is_zero(&space.q_unchecked(&w2)) {
            return Err(Error::HypothesisBreach);
        }
        return Ok((vec![w, w2], TransportPath::TwoReflections));
    }
    Err(Error::SearchExhausted)
}

pub fn reflection_transport<F: Field>(
    space: &SplitSpace<F>,
    x: &[F::Elem],
    y: &[F::Elem],
) -> Result<TransportCertificate<F>> {
    reflection_transport_with(space, x, y, &TransportOptions::default())
}

/// A verified word `g` of at most two reflections with `g(x) = y`.
pub fn reflection_transport_with<F: Field>(
    space: &SplitSpace<F>,
    x: &[F::Elem],
    y: &[F::Elem],
    opts: &TransportOptions,
) -> Result<TransportCertificate<F>> {
    let (word, path) = find_word(space, x, y, opts)?;
    certify(space, word, None, x.to_vec(), y.to_vec(), path)
}

/// Shares one breadth-first search among many transports.
struct Transporter<'a, F: Field> {
    ctx: &'a GroupContext<F>,
    guards: &'a Guards,
    opts: TransportOptions,
    bfs: OnceLock<Result<ParityBfs<F::Elem>>>,
}

impl<'a, F: Field> Transporter<'a, F> {
    fn new(ctx: &'a GroupContext<F>, guards: &'a Guards, height: u32) -> Self {
        Self {
            ctx,
            guards,
            opts: TransportOptions {
                height,
                trace_zero: true,
            },
            bfs: OnceLock::new(),
        }
    }

    /// `u* = e_1 + e_{n+2}`: `q(u*) = 1`, `t(u*) = 0`, `B(u*, x_0) = 0`.
    fn u_star(&self) -> Vec<F::Elem> {
        let f = self.ctx.field();
        let mut u = self.ctx.space().zero_vector();
        u[0] = f.one();
        u[self.ctx.n() + 1] = f.one();
        u
    }

    fn bfs_word(&self, p: &[F::Elem]) -> Result<Vec<Vec<F::Elem>>> {
        if !self.ctx.field().is_finite() {
            return Err(Error::SearchExhausted);
        }
        let bfs = self
            .bfs
            .get_or_init(|| self.ctx.reflection_bfs(self.ctx.x0().to_vec(), self.guards))
            .as_ref()
            .map_err(Clone::clone)?;
        let moves = bfs
            .path(p, 0)
            .or_else(|| bfs.path(p, 1))
            .ok_or(Error::Unreachable)?;
        // moves act on x_0 in order, so the word lists them last to first
        Ok(moves.iter().rev().map(|&i| bfs.move_vectors[i].clone()).collect())
    }

    fn transport(&self, p: &AmbientQuadricPoint<F::Elem>) -> Result<TransportCertificate<F>> {
        let ctx = self.ctx;
        if !ctx.quadric().is_on_quadric(p.coords())? {
            return Err(Error::NotOnQuadric);
        }
        let space = ctx.space();
        let (mut word, path) = match find_word(space, p.coords(), ctx.x0(), &self.opts) {
            // involutions: reversing a word from p to x_0 gives one from x_0 to p
            Ok((w, path)) => (w.into_iter().rev().collect::<Vec<_>>(), path),
            Err(Error::SearchExhausted) => (self.bfs_word(p.coords())?, TransportPath::Bfs),
            Err(e) => return Err(e),
        };
        let fix = word.len() % 2 == 1;
        if fix {
            word.push(self.u_star());
        }
        let mut cert = certify(space, word, None, ctx.x0().to_vec(), p.coords().to_vec(), path)?;
        cert.dickson_fixed = fix;
        let trace_zero = cert
            .word
            .iter()
            .all(|v| ctx.field().is_zero(&space.trace_unchecked(v)));
        let m = &cert.element.matrix;
        let member = ctx.in_so_odd(m).unwrap_or(false);
        let short = cert.word.len() <= 3 || path == TransportPath::Bfs;
        if !(trace_zero && member && short && cert.dickson == 0) {
            return Err(Error::Unverified("quadric certificate outside the SO model".into()));
        }
        cert.element.tags = Tags {
            isometry: true,
            fixes_one: true,
            fixes_x0: cert.word.is_empty(),
            dickson_zero: true,
        };
        Ok(cert)
    }
}

/// A verified `g` in the `SO_{2n+1}` model with `g x_0 = p`.
pub fn quadric_transport<F: Field>(
    ctx: &GroupContext<F>,
    p: &AmbientQuadricPoint<F::Elem>,
    guards: &Guards,
    height: u32,
) -> Result<TransportCertificate<F>> {
    Transporter::new(ctx, guards, height).transport(p)
}

/// A verified similitude `lambda r_{v_1} .. r_{v_m}` carrying `v` to `1`,
/// where `lambda^2 = 1 / q(v)`.
pub fn similitude_transport<F: Field>(space: &SplitSpace<F>, v: &[F::Elem]) -> Result<TransportCertificate<F>> {
    if space.shape() != Shape::PointedEven {
        return Err(Error::WrongShape("pointed even"));
    }
    space.check_dim(v)?;
    let f = space.field();
    let one = space.one_vector();
    if v == one.as_slice() {
        return certify(space, Vec::new(), None, one.clone(), one, TransportPath::Identity);
    }
    let qinv = f.inv(&space.q_unchecked(v)).ok_or(Error::IsotropicVector)?;
    let lambda = f.sqrt(&qinv)?.ok_or(Error::NonSquareNorm)?;
    let lambda_inv = f.inv(&lambda).expect("lambda != 0");
    let (word, path) = find_word(space, v, &vscale(f, &lambda_inv, &one), &TransportOptions::default())?;
    certify(space, word, Some(lambda), v.to_vec(), one, path)
}

#[derive(Clone, Debug)]
pub struct TransportSummary<F: Field> {
    pub n: usize,
    pub field: String,
    /// One per quadric point, in enumeration order.
    pub certificates: Vec<TransportCertificate<F>>,
}

impl<F: Field> TransportSummary<F> {
    pub fn count(&self, path: TransportPath) -> usize {
        self.certificates.iter().filter(|c| c.path == path).count()
    }

    pub fn all_verified(&self) -> bool {
        self.certificates.iter().all(|c| c.verified)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": "transport",
            "n": self.n,
            "field": self.field,
            "points": self.certificates.len(),
            "identity": self.count(TransportPath::Identity),
            "case1": self.count(TransportPath::Reflection),
            "case2": self.count(TransportPath::TwoReflections),
            "bfs": self.count(TransportPath::Bfs),
            "dickson_fixed": self.certificates.iter().filter(|c| c.dickson_fixed).count(),
            "max_word": self.certificates.iter().map(|c| c.word.len()).max().unwrap_or(0),
            "all_verified": self.all_verified(),
            "pass": self.all_verified(),
        })
    }
}

/// Transports `x_0` to every point of `Q_2n(F_q)`.
pub fn transport_all<F: Field>(ctx: &GroupContext<F>, guards: &Guards, height: u32) -> Result<TransportSummary<F>> {
    let points = ctx.quadric().enumerate(guards)?;
    let t = Transporter::new(ctx, guards, height);
    let certificates = points.par_iter().map(|p| t.transport(p)).collect::<Result<Vec<_>>>()?;
    Ok(TransportSummary {
        n: ctx.n(),
        field: ctx.field().label(),
        certificates,
    })
}
