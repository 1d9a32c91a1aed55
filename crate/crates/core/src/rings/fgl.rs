//! Formal group laws truncated in the Chern variables.
//!
//! The universal law `F(x, y) = x + y + sum a_ij x^i y^j` is kept with the
//! `a_ij = a_ji` as free polynomial generators. Truncation at even `D`
//! discards every monomial whose Chern degree `2 * (x-exponents)` exceeds
//! `D`; the coefficients are never truncated. With free generators the law
//! is associative up to `D = 6`; above that the Lazard relations would be
//! needed, and they are not imposed.
//!
//! Cohomological degrees count `x_j` as 2 and `a_ij` as `-2(i+j-1)`, so
//! `F` and every Euler class built from it are homogeneous.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::poly::{power_product, IntPolynomial, LaurentPolynomial};
use super::RingError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FglKind {
    /// Free coefficients `a_ij`.
    Universal,
    /// `F(x, y) = x + y - beta x y`.
    Multiplicative,
}

/// A coefficient generator of the law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Homological degree in the coefficient ring.
    pub lazard_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FglTruncation {
    kind: FglKind,
    degree: u32,
    generators: Vec<Generator>,
    /// `(i, j, c)`: coefficient `c` of `x^i y^j`, over the generators.
    coefficients: Vec<(u32, u32, IntPolynomial)>,
}

impl FglTruncation {
    pub fn universal(degree: u32) -> Result<Self, RingError> {
        Self::new(FglKind::Universal, degree)
    }

    pub fn multiplicative(degree: u32) -> Result<Self, RingError> {
        Self::new(FglKind::Multiplicative, degree)
    }

    pub fn new(kind: FglKind, degree: u32) -> Result<Self, RingError> {
        if degree == 0 || !degree.is_multiple_of(2) {
            return Err(RingError::InvalidTruncation(degree));
        }
        let top = degree / 2;
        let mut generators = Vec::new();
        let mut coefficients = Vec::new();
        match kind {
            FglKind::Universal => {
                let mut pairs = Vec::new();
                for s in 2..=top {
                    for i in 1..=s / 2 {
                        pairs.push((i, s - i));
                    }
                }
                let ngens = pairs.len();
                for &(i, j) in &pairs {
                    generators.push(Generator {
                        name: format!("a{i}{j}"),
                        lazard_degree: 2 * (i + j - 1),
                    });
                }
                for s in 2..=top {
                    for i in 1..s {
                        let j = s - i;
                        let key = (i.min(j), i.max(j));
                        let g = pairs.iter().position(|&p| p == key).unwrap();
                        coefficients.push((i, j, IntPolynomial::variable(ngens, g)));
                    }
                }
            }
            FglKind::Multiplicative => {
                generators.push(Generator {
                    name: "β".to_string(),
                    lazard_degree: 2,
                });
                if top >= 2 {
                    coefficients.push((1, 1, -&IntPolynomial::variable(1, 0)));
                }
            }
        }
        Ok(FglTruncation {
            kind,
            degree,
            generators,
            coefficients,
        })
    }

    pub fn kind(&self) -> FglKind {
        self.kind
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    /// Coefficient of `x^i y^j` in `F`, as a polynomial in the generators.
    pub fn coefficient(&self, i: u32, j: u32) -> IntPolynomial {
        self.coefficients
            .iter()
            .find(|(a, b, _)| (*a, *b) == (i, j))
            .map(|(_, _, c)| c.clone())
            .unwrap_or_else(|| IntPolynomial::zero(self.generators.len()))
    }

    pub fn zero(&self, rank: usize) -> TruncatedMUElement {
        TruncatedMUElement {
            rank,
            degree: self.degree,
            kind: self.kind,
            poly: IntPolynomial::zero(rank + self.generators.len()),
        }
    }

    pub fn one(&self, rank: usize) -> TruncatedMUElement {
        TruncatedMUElement {
            rank,
            degree: self.degree,
            kind: self.kind,
            poly: IntPolynomial::one(rank + self.generators.len()),
        }
    }

    /// The Chern variable `x_j`.
    pub fn chern_variable(&self, rank: usize, j: usize) -> TruncatedMUElement {
        TruncatedMUElement {
            rank,
            degree: self.degree,
            kind: self.kind,
            poly: IntPolynomial::variable(rank + self.generators.len(), j),
        }
    }

    /// Wraps a raw polynomial over `(x_1..x_rank, generators)`.
    pub fn element(&self, rank: usize, poly: IntPolynomial) -> Result<TruncatedMUElement, RingError> {
        if poly.nvars() != rank + self.generators.len() {
            return Err(RingError::RankMismatch {
                expected: rank + self.generators.len(),
                found: poly.nvars(),
            });
        }
        let e = TruncatedMUElement {
            rank,
            degree: self.degree,
            kind: self.kind,
            poly,
        };
        Ok(e.truncated())
    }

    fn check(&self, a: &TruncatedMUElement) -> Result<(), RingError> {
        if a.degree != self.degree || a.kind != self.kind {
            return Err(RingError::TruncationMismatch);
        }
        Ok(())
    }

    fn embed_coefficient(&self, rank: usize, c: &IntPolynomial) -> IntPolynomial {
        c.map_exponents(rank + c.nvars(), |e| {
            let mut v = vec![0u32; rank];
            v.extend_from_slice(e);
            v
        })
    }

    /// Truncated powers `a^0, ..., a^{D/2}`.
    fn powers(&self, a: &TruncatedMUElement) -> Vec<TruncatedMUElement> {
        let top = (self.degree / 2) as usize;
        let mut out = vec![self.one(a.rank)];
        for k in 1..=top {
            let next = out[k - 1].mul_unchecked(a);
            out.push(next);
        }
        out
    }

    /// Formal sum `F(a, b)`.
    pub fn sum(&self, a: &TruncatedMUElement, b: &TruncatedMUElement) -> Result<TruncatedMUElement, RingError> {
        self.check(a)?;
        self.check(b)?;
        if a.rank != b.rank {
            return Err(RingError::RankMismatch {
                expected: a.rank,
                found: b.rank,
            });
        }
        let pa = self.powers(a);
        let pb = self.powers(b);
        let mut acc = a.add_unchecked(b);
        for (i, j, c) in &self.coefficients {
            let term = pa[*i as usize].mul_unchecked(&pb[*j as usize]);
            if term.is_zero() {
                continue;
            }
            let coeff = TruncatedMUElement {
                poly: self.embed_coefficient(a.rank, c),
                ..self.zero(a.rank)
            };
            acc = acc.add_unchecked(&coeff.mul_unchecked(&term));
        }
        Ok(acc)
    }

    /// Formal inverse: the series `i(x)` with `F(x, i(x)) = 0`.
    pub fn inverse(&self, x: &TruncatedMUElement) -> Result<TruncatedMUElement, RingError> {
        self.check(x)?;
        let neg_x = x.neg();
        let px = self.powers(x);
        let mut y = neg_x.clone();
        // each pass fixes one more order in the Chern variables
        for _ in 0..self.degree / 2 {
            let py = self.powers(&y);
            let mut next = neg_x.clone();
            for (i, j, c) in &self.coefficients {
                let coeff = TruncatedMUElement {
                    poly: self.embed_coefficient(x.rank, c),
                    ..self.zero(x.rank)
                };
                let term = coeff
                    .mul_unchecked(&px[*i as usize])
                    .mul_unchecked(&py[*j as usize]);
                next = next.sub_unchecked(&term);
            }
            y = next;
        }
        Ok(y)
    }

    /// The `n`-series `[n](x)`.
    pub fn multiple(&self, n: i64, x: &TruncatedMUElement) -> Result<TruncatedMUElement, RingError> {
        self.check(x)?;
        let base = if n < 0 { self.inverse(x)? } else { x.clone() };
        let mut acc = self.zero(x.rank);
        for _ in 0..n.unsigned_abs() {
            acc = self.sum(&acc, &base)?;
        }
        Ok(acc)
    }
}

/// A truncated power series in Chern variables `x_1..x_rank` with
/// polynomial coefficients in the generators of a formal group law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedMUElement {
    rank: usize,
    degree: u32,
    kind: FglKind,
    /// Variables `x_1..x_rank` followed by the law's generators.
    poly: IntPolynomial,
}

impl TruncatedMUElement {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn truncation(&self) -> u32 {
        self.degree
    }

    pub fn kind(&self) -> FglKind {
        self.kind
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn law(&self) -> FglTruncation {
        FglTruncation::new(self.kind, self.degree).expect("validated on construction")
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn chern_weights(&self) -> Vec<i64> {
        let mut w = vec![2i64; self.rank];
        w.resize(self.poly.nvars(), 0);
        w
    }

    fn truncated(&self) -> Self {
        TruncatedMUElement {
            poly: self.poly.truncate(&self.chern_weights(), self.degree as i64),
            ..self.clone()
        }
    }

    fn compatible(&self, other: &Self) -> Result<(), RingError> {
        if self.degree != other.degree || self.kind != other.kind {
            return Err(RingError::TruncationMismatch);
        }
        if self.rank != other.rank {
            return Err(RingError::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        TruncatedMUElement {
            poly: &self.poly + &other.poly,
            ..self.clone()
        }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        TruncatedMUElement {
            poly: &self.poly - &other.poly,
            ..self.clone()
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        TruncatedMUElement {
            poly: self
                .poly
                .mul_truncated(&other.poly, &self.chern_weights(), self.degree as i64),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.compatible(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn neg(&self) -> Self {
        TruncatedMUElement {
            poly: -&self.poly,
            ..self.clone()
        }
    }

    /// Cohomological degree of every monomial, if they all agree.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let law = self.law();
        let mut degrees = self.poly.terms().map(|(e, _)| {
            let x: i64 = e[..self.rank].iter().map(|&k| 2 * k as i64).sum();
            let a: i64 = e[self.rank..]
                .iter()
                .zip(law.generators())
                .map(|(&k, g)| k as i64 * g.lazard_degree as i64)
                .sum();
            x - a
        });
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Sets every coefficient generator to zero: the image in ordinary
    /// cohomology, with `x_j` read as the `j`-th basis character.
    pub fn additive_part(&self) -> IntPolynomial {
        let r = self.rank;
        self.poly
            .filter(|e| e[r..].iter().all(|&k| k == 0))
            .map_exponents(r, |e| e[..r].to_vec())
    }

    /// Substitutes `a_11 = -beta` and all other `a_ij = 0`.
    pub fn to_multiplicative(&self) -> Self {
        match self.kind {
            FglKind::Multiplicative => self.clone(),
            FglKind::Universal => {
                let r = self.rank;
                let mut poly = IntPolynomial::zero(r + 1);
                for (e, c) in self.poly.terms() {
                    // a11 is always the first generator
                    if e.get(r + 1..).unwrap_or(&[]).iter().any(|&k| k != 0) {
                        continue;
                    }
                    let a11 = e.get(r).copied().unwrap_or(0);
                    let mut ne = e[..r].to_vec();
                    ne.push(a11);
                    let sign = if a11 % 2 == 0 { c.clone() } else { -c };
                    poly.add_term(ne, sign);
                }
                TruncatedMUElement {
                    rank: r,
                    degree: self.degree,
                    kind: FglKind::Multiplicative,
                    poly,
                }
            }
        }
    }

    /// For a multiplicative element, sets `beta = 1`.
    pub fn at_unit_bott(&self) -> Result<IntPolynomial, RingError> {
        if self.kind != FglKind::Multiplicative {
            return Err(RingError::TheoryMismatch);
        }
        let r = self.rank;
        Ok(self.poly.map_exponents(r, |e| e[..r].to_vec()))
    }

    /// For a multiplicative element, substitutes `beta = 1` and
    /// `x_j = 1 - e^{omega_j}`, giving a character.
    pub fn to_characters(&self) -> Result<LaurentPolynomial, RingError> {
        let p = self.at_unit_bott()?;
        let r = self.rank;
        let one = LaurentPolynomial::one(r);
        let factors: Vec<LaurentPolynomial> = (0..r)
            .map(|j| {
                let mut e = vec![0i64; r];
                e[j] = 1;
                &one - &LaurentPolynomial::monomial(e, BigInt::one())
            })
            .collect();
        let mut out = LaurentPolynomial::zero(r);
        for (e, c) in p.terms() {
            let mut term = LaurentPolynomial::constant(r, c.clone());
            for (j, &k) in e.iter().enumerate() {
                term = &term * &factors[j].pow(k);
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        let r = self.rank;
        let names = self.law().generator_names();
        self.poly.render_with(|e| {
            let x = power_product(e[..r].iter().map(|&k| k as i64), |i| format!("x{}", i + 1));
            let a = power_product(e[r..].iter().map(|&k| k as i64), |i| names[i].clone());
            match (a.is_empty(), x.is_empty()) {
                (true, _) => x,
                (false, true) => a,
                (false, false) => format!("{a}*{x}"),
            }
        })
    }
}

/// Image of a character in the truncated power series ring under
/// `e^{omega_j} = 1 - x_j`, so `e^{-omega_j}` becomes the geometric series.
pub fn characters_to_power_series(p: &LaurentPolynomial, truncation: u32) -> IntPolynomial {
    let r = p.nvars();
    let top = truncation / 2;
    let weights = vec![2i64; r];
    let bound = truncation as i64;
    let pos: Vec<IntPolynomial> = (0..r)
        .map(|j| &IntPolynomial::one(r) - &IntPolynomial::variable(r, j))
        .collect();
    let neg: Vec<IntPolynomial> = (0..r)
        .map(|j| {
            let mut s = IntPolynomial::zero(r);
            for k in 0..=top {
                let mut e = vec![0u32; r];
                e[j] = k;
                s.add_term(e, BigInt::one());
            }
            s
        })
        .collect();
    let mut out = IntPolynomial::zero(r);
    for (e, c) in p.terms() {
        let mut term = IntPolynomial::constant(r, c.clone());
        for (j, &k) in e.iter().enumerate() {
            let f = if k >= 0 { &pos[j] } else { &neg[j] };
            for _ in 0..k.unsigned_abs() {
                term = term.mul_truncated(f, &weights, bound);
            }
        }
        out = &out + &term;
    }
    out
}
