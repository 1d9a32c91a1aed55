//! Coefficient rings of the three theories and equivariant Euler classes.
//!
//! * `H`: `Z[w_1..w_r]`, the symmetric algebra on the weight lattice, one
//!   variable per fundamental weight. A weight is a linear form of degree 2.
//! * `K`: the representation ring `Z[X^*(T)]` as Laurent polynomials in
//!   the characters `e^{omega_j}`, tagged with an even degree.
//! * `MU`: truncated power series in Chern variables `x_1..x_r` over the
//!   generators of a formal group law (see [`fgl`]).

pub mod fgl;
mod json;
pub mod poly;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::root_system::Weight;
pub use fgl::{characters_to_power_series, FglKind, FglTruncation, TruncatedMUElement};
pub use json::RingElementJson;
pub use poly::{IntPolynomial, LaurentPolynomial, SparsePoly};

/// Default Chern-degree truncation for cobordism.
pub const DEFAULT_MU_TRUNCATION: u32 = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("zero weight has a zero Euler class")]
    ZeroWeight,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("formal group law truncations differ")]
    TruncationMismatch,
    #[error("truncation degree must be even and positive, got {0}")]
    InvalidTruncation(u32),
    #[error("ring elements belong to different theories")]
    TheoryMismatch,
    #[error("malformed ring element: {0}")]
    Malformed(String),
}

/// Which cohomology theory, and for `MU` the truncation degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    H,
    K,
    MU { truncation: u32 },
}

impl Theory {
    pub fn tag(&self) -> &'static str {
        match self {
            Theory::H => "H",
            Theory::K => "K",
            Theory::MU { .. } => "MU",
        }
    }

    pub fn mu() -> Theory {
        Theory::MU {
            truncation: DEFAULT_MU_TRUNCATION,
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Theory {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "H" => Ok(Theory::H),
            "K" => Ok(Theory::K),
            "MU" => Ok(Theory::mu()),
            other => Err(RingError::Malformed(format!("unknown theory {other}"))),
        }
    }
}

impl Serialize for Theory {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

impl<'de> Deserialize<'de> for Theory {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of `R(T)` placed in the even degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLaurent {
    pub poly: LaurentPolynomial,
    pub degree: i64,
}

/// An element of `E_T^*(pt)` for one of the three theories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingElement {
    H(IntPolynomial),
    K(GradedLaurent),
    MU(TruncatedMUElement),
}

impl RingElement {
    pub fn tag(&self) -> &'static str {
        match self {
            RingElement::H(_) => "H",
            RingElement::K(_) => "K",
            RingElement::MU(_) => "MU",
        }
    }

    /// Whether this element lives in the coefficient ring of `theory`.
    pub fn belongs_to(&self, theory: Theory) -> bool {
        match (self, theory) {
            (RingElement::H(_), Theory::H) | (RingElement::K(_), Theory::K) => true,
            (RingElement::MU(e), Theory::MU { .. }) => e.kind() == FglKind::Universal,
            _ => false,
        }
    }

    pub fn one(theory: Theory, rank: usize) -> Result<RingElement, RingError> {
        euler(theory, rank, &[])
    }

    pub fn rank(&self) -> usize {
        match self {
            RingElement::H(p) => p.nvars(),
            RingElement::K(k) => k.poly.nvars(),
            RingElement::MU(e) => e.rank(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::H(p) => p.is_zero(),
            RingElement::K(k) => k.poly.is_zero(),
            RingElement::MU(e) => e.is_zero(),
        }
    }

    /// Cohomological degree, when the element is homogeneous.
    pub fn degree(&self) -> Option<i64> {
        match self {
            RingElement::H(p) => match p.total_degrees().as_slice() {
                [d] => Some(2 * d),
                _ => None,
            },
            RingElement::K(k) => (!k.poly.is_zero()).then_some(k.degree),
            RingElement::MU(e) => e.homogeneous_degree(),
        }
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        match (self, other) {
            (RingElement::H(a), RingElement::H(b)) => {
                check_rank(a.nvars(), b.nvars())?;
                Ok(RingElement::H(a * b))
            }
            (RingElement::K(a), RingElement::K(b)) => {
                check_rank(a.poly.nvars(), b.poly.nvars())?;
                Ok(RingElement::K(GradedLaurent {
                    poly: &a.poly * &b.poly,
                    degree: a.degree + b.degree,
                }))
            }
            (RingElement::MU(a), RingElement::MU(b)) => Ok(RingElement::MU(a.mul(b)?)),
            _ => Err(RingError::TheoryMismatch),
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        match (self, other) {
            (RingElement::H(a), RingElement::H(b)) => {
                check_rank(a.nvars(), b.nvars())?;
                Ok(RingElement::H(a + b))
            }
            (RingElement::K(a), RingElement::K(b)) => {
                check_rank(a.poly.nvars(), b.poly.nvars())?;
                if a.degree != b.degree && !a.poly.is_zero() && !b.poly.is_zero() {
                    return Err(RingError::Malformed("sum of different degrees".into()));
                }
                let degree = if a.poly.is_zero() { b.degree } else { a.degree };
                Ok(RingElement::K(GradedLaurent {
                    poly: &a.poly + &b.poly,
                    degree,
                }))
            }
            (RingElement::MU(a), RingElement::MU(b)) => Ok(RingElement::MU(a.add(b)?)),
            _ => Err(RingError::TheoryMismatch),
        }
    }

    pub fn render(&self) -> String {
        match self {
            RingElement::H(p) => p.render_vars("w"),
            RingElement::K(k) => k.poly.render_characters(),
            RingElement::MU(e) => e.render(),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn check_rank(a: usize, b: usize) -> Result<(), RingError> {
    if a != b {
        return Err(RingError::RankMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

fn check_weights(rank: usize, weights: &[Weight]) -> Result<(), RingError> {
    for w in weights {
        check_rank(rank, w.rank())?;
        if w.is_zero() {
            return Err(RingError::ZeroWeight);
        }
    }
    Ok(())
}

/// Euler class in `H`: the product of the weights as linear forms.
pub fn euler_h(rank: usize, weights: &[Weight]) -> Result<IntPolynomial, RingError> {
    check_weights(rank, weights)?;
    let mut acc = IntPolynomial::one(rank);
    for w in weights {
        acc = &acc * &IntPolynomial::linear_form(w.coords());
    }
    Ok(acc)
}

/// Euler class in `K`: `prod (1 - e^{mu})`, in degree `2 |weights|`.
pub fn euler_k(rank: usize, weights: &[Weight]) -> Result<GradedLaurent, RingError> {
    check_weights(rank, weights)?;
    let one = LaurentPolynomial::one(rank);
    let mut acc = one.clone();
    for w in weights {
        acc = &acc * &(&one - &LaurentPolynomial::character(w.coords()));
    }
    Ok(GradedLaurent {
        poly: acc,
        degree: 2 * weights.len() as i64,
    })
}

/// The cobordism class of a single character: the formal sum of
/// `[n_j](x_j)` over its fundamental-weight coordinates.
pub fn chern_class_mu(law: &FglTruncation, weight: &Weight) -> Result<TruncatedMUElement, RingError> {
    let rank = weight.rank();
    let mut acc = law.zero(rank);
    for (j, &n) in weight.coords().iter().enumerate() {
        if n == 0 {
            continue;
        }
        let term = law.multiple(n, &law.chern_variable(rank, j))?;
        acc = law.sum(&acc, &term)?;
    }
    Ok(acc)
}

/// Euler class in truncated `MU`: the product of the per-weight classes.
pub fn euler_mu(rank: usize, weights: &[Weight], law: &FglTruncation) -> Result<TruncatedMUElement, RingError> {
    check_weights(rank, weights)?;
    let mut acc = law.one(rank);
    for w in weights {
        acc = acc.mul(&chern_class_mu(law, w)?)?;
    }
    Ok(acc)
}

/// Euler class in the theory's coefficient ring.
pub fn euler(theory: Theory, rank: usize, weights: &[Weight]) -> Result<RingElement, RingError> {
    match theory {
        Theory::H => euler_h(rank, weights).map(RingElement::H),
        Theory::K => euler_k(rank, weights).map(RingElement::K),
        Theory::MU { truncation } => {
            let law = FglTruncation::universal(truncation)?;
            euler_mu(rank, weights, &law).map(RingElement::MU)
        }
    }
}

/// Like [`euler`], but a zero weight contributes the factor `0` instead of
/// an error, so the product is the honest class of a representation with a
/// trivial summand.
pub fn euler_product(theory: Theory, rank: usize, weights: &[Weight]) -> Result<RingElement, RingError> {
    for w in weights {
        check_rank(rank, w.rank())?;
    }
    if weights.iter().any(Weight::is_zero) {
        return Ok(match theory {
            Theory::H => RingElement::H(IntPolynomial::zero(rank)),
            Theory::K => RingElement::K(GradedLaurent {
                poly: LaurentPolynomial::zero(rank),
                degree: 2 * weights.len() as i64,
            }),
            Theory::MU { truncation } => RingElement::MU(FglTruncation::universal(truncation)?.zero(rank)),
        });
    }
    euler(theory, rank, weights)
}

/// Random nonzero weight multisets of size at most `max_len` with
/// coordinates in `[-bound, bound]`.
pub fn random_weights<R: rand::Rng>(rng: &mut R, rank: usize, max_len: usize, bound: i64) -> Vec<Weight> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| loop {
            let w = Weight::new((0..rank).map(|_| rng.gen_range(-bound..=bound)).collect());
            if !w.is_zero() {
                break w;
            }
        })
        .collect()
}

/// Checks `euler(A + B) = euler(A) * euler(B)` on `trials` random pairs of
/// multisets; returns the number of pairs that agree.
pub fn whitney_trials<R: rand::Rng>(
    theory: Theory,
    rank: usize,
    trials: usize,
    rng: &mut R,
) -> Result<usize, RingError> {
    let mut passed = 0;
    for _ in 0..trials {
        let a = random_weights(rng, rank, 4, 3);
        let b = random_weights(rng, rank, 4, 3);
        let union: Vec<Weight> = a.iter().chain(&b).cloned().collect();
        let lhs = euler(theory, rank, &union)?;
        let rhs = euler(theory, rank, &a)?.mul(&euler(theory, rank, &b)?)?;
        if lhs == rhs {
            passed += 1;
        }
    }
    Ok(passed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// All `a_ij = 0`: the additive law of ordinary cohomology.
    Additive,
    /// `a_11 = -beta`, other `a_ij = 0`: the multiplicative law.
    Multiplicative,
}

pub fn specialize_fgl(elem: &TruncatedMUElement, target: Specialization) -> RingElement {
    match target {
        Specialization::Additive => RingElement::H(elem.additive_part()),
        Specialization::Multiplicative => RingElement::MU(elem.to_multiplicative()),
    }
}

/// Whether multiplication by `elem` is injective on `E_T^*(pt)`.
///
/// `H` and `K` coefficient rings are integral domains, so this is `elem != 0`.
/// For truncated `MU` the test is sufficient rather than exact: the element
/// is accepted when its additive specialization is nonzero, since then its
/// leading form is nonzero in a power series ring over a domain.
pub fn is_nonzero_divisor(elem: &RingElement) -> bool {
    match elem {
        RingElement::H(p) => !p.is_zero(),
        RingElement::K(k) => !k.poly.is_zero(),
        RingElement::MU(e) => !e.additive_part().is_zero(),
    }
}

/// `1` as an `H` element of the given rank; shorthand used in tests.
pub fn h_one(rank: usize) -> RingElement {
    RingElement::H(IntPolynomial::one(rank))
}

/// A constant as an `H` element.
pub fn h_constant(rank: usize, c: i64) -> RingElement {
    RingElement::H(IntPolynomial::constant(rank, BigInt::from(c)))
}

impl GradedLaurent {
    pub fn one(rank: usize) -> Self {
        GradedLaurent {
            poly: LaurentPolynomial::one(rank),
            degree: 0,
        }
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_one() && self.degree == 0
    }
}

impl TruncatedMUElement {
    pub fn is_one(&self) -> bool {
        self.poly().is_one()
    }
}
