use std::fmt;
use std::sync::Arc;

use super::{is_prime, Field};
use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 1024;
/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 4;

/// Built-in moduli, coefficients listed from the constant term up.
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),       // t^2 + t + 1
    (2, 3, &[1, 1, 0, 1]),    // t^3 + t + 1
    (3, 2, &[1, 0, 1]),       // t^2 + 1
    (2, 4, &[1, 1, 0, 0, 1]), // t^4 + t + 1
    (5, 2, &[2, 0, 1]),       // t^2 + 2
    (3, 3, &[1, 2, 0, 1]),    // t^3 + 2t + 1
];

/// `GF(p^k)` in a polynomial basis. An element `c0 + c1 g + ... ` is packed
/// as the integer `c0 + c1 p + c2 p^2 + ...`, so integer order is the
/// canonical enumeration order.
///
/// All operations are table lookups; cloning shares the tables.
#[derive(Clone)]
pub struct FiniteField(Arc<Tables>);

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// `GF(p^k)` with the built-in modulus.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::UnsupportedSize { p, k });
        }
        let q = (p as u64).pow(k);
        if q > MAX_FIELD_SIZE as u64 {
            return Err(Error::UnsupportedSize { p, k });
        }
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            let (_, _, m) = MODULI
                .iter()
                .find(|(mp, mk, _)| *mp == p && *mk == k)
                .ok_or(Error::NoModulusAvailable { p, k })?;
            if !is_irreducible(p, m) {
                return Err(Error::ReducibleModulus { p, k });
            }
            m.to_vec()
        };
        Ok(Self(Arc::new(Tables::build(p, k, q as u32, modulus))))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, constant term first. `[0, 1]` for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The class of `t`, or `None` in a prime field.
    pub fn generator(&self) -> Option<u32> {
        (self.0.k > 1).then_some(self.0.p)
    }

    /// Coefficients `c0..c_{k-1}` of a packed element.
    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        digits(self.0.p, self.0.k, a)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() != self.0.k as usize {
            return Err(Error::DimensionMismatch {
                expected: self.0.k as usize,
                got: coeffs.len(),
            });
        }
        Ok(pack(self.0.p, &coeffs.iter().map(|c| c % self.0.p).collect::<Vec<_>>()))
    }

    #[inline]
    fn idx(&self, a: u32, b: u32) -> usize {
        a as usize * self.0.q as usize + b as usize
    }
}

impl Tables {
    fn build(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Self {
        let n = q as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let mut neg = vec![0u16; n];
        let mut inv = vec![0u16; n];
        let all: Vec<Vec<u32>> = (0..q).map(|a| digits(p, k, a)).collect();
        for a in 0..n {
            neg[a] = pack(p, &all[a].iter().map(|c| (p - c) % p).collect::<Vec<_>>()) as u16;
            for b in 0..n {
                let s: Vec<u32> = all[a].iter().zip(&all[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = pack(p, &s) as u16;
                mul[a * n + b] = pack(p, &poly_mul_mod(p, &all[a], &all[b], &modulus)) as u16;
            }
        }
        for a in 1..n {
            inv[a] = (1..n).find(|&b| mul[a * n + b] == 1).expect("nonzero element has an inverse") as u16;
        }
        Self { p, k, q, modulus, add, mul, neg, inv }
    }
}

fn digits(p: u32, k: u32, mut a: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn pack(p: u32, coeffs: &[u32]) -> u32 {
    coeffs.iter().rev().fold(0, |acc, c| acc * p + c)
}

/// Product of two residues of degree < k, reduced by the monic `modulus`.
fn poly_mul_mod(p: u32, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * k.max(1)];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(p, &mut prod, modulus);
    prod.truncate(k);
    prod
}

/// Reduces `poly` in place modulo a monic `modulus`.
fn poly_rem(p: u32, poly: &mut [u32], modulus: &[u32]) {
    let k = modulus.len() - 1;
    for top in (k..poly.len()).rev() {
        let c = poly[top];
        if c == 0 {
            continue;
        }
        for (i, m) in modulus.iter().enumerate() {
            let pos = top - k + i;
            poly[pos] = (poly[pos] + (p - c) * m) % p;
        }
    }
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut divisor = digits(p, d as u32, low as u32);
            divisor.push(1);
            let mut rem = modulus.to_vec();
            poly_rem(p, &mut rem, &divisor);
            if rem[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.0.p)
            .field("k", &self.0.k)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}

impl Eq for FiniteField {}

impl Field for FiniteField {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.0.p
    }

    fn cardinality(&self) -> Option<u64> {
        Some(self.0.q as u64)
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.0.add[self.idx(*a, *b)] as u32
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        self.0.neg[*a as usize] as u32
    }

    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.0.mul[self.idx(*a, *b)] as u32
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.0.inv[*a as usize] as u32)
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn elements(&self) -> Result<Vec<u32>> {
        Ok((0..self.0.q).collect())
    }

    fn format(&self, a: &u32) -> String {
        if self.0.k == 1 {
            return a.to_string();
        }
        self.coefficients(*a)
            .iter()
            .enumerate()
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*g"),
                _ => format!("{c}*g^{i}"),
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    fn parse(&self, s: &str) -> Result<u32> {
        let bad = || Error::Parse {
            what: "finite field element",
            input: s.to_string(),
        };
        let s = s.trim();
        let digit = |t: &str| -> Result<u32> {
            let v = t.trim().parse::<u32>().map_err(|_| bad())?;
            if v < self.0.p {
                Ok(v)
            } else {
                Err(bad())
            }
        };
        if self.0.k == 1 || !s.contains('+') {
            // A bare residue denotes a constant.
            return digit(s);
        }
        let terms: Vec<&str> = s.split('+').collect();
        if terms.len() != self.0.k as usize {
            return Err(bad());
        }
        let mut coeffs = Vec::with_capacity(terms.len());
        for (i, term) in terms.iter().enumerate() {
            let c = match i {
                0 => digit(term)?,
                1 => digit(term.trim().strip_suffix("*g").ok_or_else(bad)?)?,
                _ => digit(
                    term.trim()
                        .strip_suffix(&format!("*g^{i}"))
                        .ok_or_else(bad)?,
                )?,
            };
            coeffs.push(c);
        }
        Ok(pack(self.0.p, &coeffs))
    }

    fn label(&self) -> String {
        if self.0.k == 1 {
            self.0.p.to_string()
        } else {
            format!("{}^{}", self.0.p, self.0.k)
        }
    }
}
