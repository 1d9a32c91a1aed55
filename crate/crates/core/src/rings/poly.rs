//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! One generic container serves both ordinary polynomials (`u32`
//! exponents) and Laurent polynomials (`i64` exponents). Zero coefficients
//! are never stored, so structural equality is ring equality.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub trait Exponent: Copy + Ord + Hash + Debug + Add<Output = Self> + Send + Sync {
    const ZERO: Self;
    const ONE: Self;
    fn as_i64(self) -> i64;
}

fn grade<E: Exponent>(e: &[E]) -> i64 {
    e.iter().map(|x| x.as_i64().abs()).sum()
}

impl Exponent for u32 {
    const ZERO: Self = 0;
    const ONE: Self = 1;
    fn as_i64(self) -> i64 {
        self as i64
    }
}

impl Exponent for i64 {
    const ZERO: Self = 0;
    const ONE: Self = 1;
    fn as_i64(self) -> i64 {
        self
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SparsePoly<E: Exponent> {
    nvars: usize,
    terms: BTreeMap<Vec<E>, BigInt>,
}

/// Elements of `Z[x_1, ..., x_n]`.
pub type IntPolynomial = SparsePoly<u32>;

/// Elements of `Z[x_1^{+-1}, ..., x_n^{+-1}]`.
pub type LaurentPolynomial = SparsePoly<i64>;

impl<E: Exponent> SparsePoly<E> {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(vec![E::ZERO; nvars], c)
    }

    pub fn monomial(exps: Vec<E>, c: BigInt) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut exps = vec![E::ZERO; nvars];
        exps[i] = E::ONE;
        Self::monomial(exps, BigInt::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<E>, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&x| x == E::ZERO) && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<E>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[E]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Vec<E>, c: BigInt) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Sum of exponents of each monomial, as a sorted list without repeats.
    pub fn total_degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self
            .terms
            .keys()
            .map(|e| e.iter().map(|x| x.as_i64()).sum())
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Weighted degree `sum w_k e_k` of one exponent vector.
    pub fn weighted_degree(exps: &[E], weights: &[i64]) -> i64 {
        exps.iter().zip(weights).map(|(e, w)| e.as_i64() * w).sum()
    }

    /// Product, dropping every monomial whose weighted degree exceeds `bound`.
    pub fn mul_truncated(&self, other: &Self, weights: &[i64], bound: i64) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Self::zero(self.nvars);
        let mut rhs: Vec<(i64, &Vec<E>, &BigInt)> =
            other.terms.iter().map(|(e, c)| (Self::weighted_degree(e, weights), e, c)).collect();
        rhs.sort_by_key(|&(d, _, _)| d);
        for (ea, ca) in &self.terms {
            let da = Self::weighted_degree(ea, weights);
            if da > bound {
                continue;
            }
            for &(db, eb, cb) in &rhs {
                if da + db > bound {
                    break;
                }
                let e: Vec<E> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn truncate(&self, weights: &[i64], bound: i64) -> Self {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| Self::weighted_degree(e, weights) <= bound)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps only monomials satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&[E]) -> bool) -> Self {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Rewrites each exponent vector; colliding monomials are summed.
    pub fn map_exponents<F: Exponent>(&self, nvars: usize, f: impl Fn(&[E]) -> Vec<F>) -> SparsePoly<F> {
        SparsePoly::from_terms(nvars, self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Terms in graded-lex order: ascending sum of absolute exponents, and
    /// within one grade, descending lexicographic order of exponent vectors.
    pub fn sorted_terms(&self) -> Vec<(&Vec<E>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| grade(a).cmp(&grade(b)).then_with(|| b.cmp(a)));
        v
    }

    /// Renders as text with `monomial` producing the variable part of each
    /// term (empty for the constant monomial).
    pub fn render_with(&self, monomial: impl Fn(&[E]) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let m = monomial(e);
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m);
            } else {
                out.push_str(&abs.to_string());
                out.push('*');
                out.push_str(&m);
            }
        }
        out
    }
}

impl IntPolynomial {
    /// The linear form `sum coords[i] * x_i`.
    pub fn linear_form(coords: &[i64]) -> Self {
        let n = coords.len();
        SparsePoly::from_terms(
            n,
            coords.iter().enumerate().map(|(i, &c)| {
                let mut e = vec![0u32; n];
                e[i] = 1;
                (e, BigInt::from(c))
            }),
        )
    }

    /// Lowest-degree homogeneous component.
    pub fn leading_form(&self) -> Self {
        match self.total_degrees().first() {
            None => self.clone(),
            Some(&d) => self.filter(|e| e.iter().map(|&k| k as i64).sum::<i64>() == d),
        }
    }

    /// Renders with variables `prefix1, prefix2, ...`.
    pub fn render_vars(&self, prefix: &str) -> String {
        self.render_with(|e| power_product(e.iter().map(|&x| x as i64), |i| format!("{prefix}{}", i + 1)))
    }
}

impl LaurentPolynomial {
    /// The character `e^{mu}`.
    pub fn character(coords: &[i64]) -> Self {
        SparsePoly::monomial(coords.to_vec(), BigInt::one())
    }

    /// Renders each character as `e^{(n1,...,nr)}`.
    pub fn render_characters(&self) -> String {
        self.render_with(|e| {
            if e.iter().all(|&x| x == 0) {
                String::new()
            } else {
                let inner: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                format!("e^{{({})}}", inner.join(","))
            }
        })
    }
}

/// Joins `name(i)^e_i` with `*`, skipping zero exponents.
pub(crate) fn power_product(exps: impl Iterator<Item = i64>, name: impl Fn(usize) -> String) -> String {
    let mut parts = Vec::new();
    for (i, e) in exps.enumerate() {
        match e {
            0 => {}
            1 => parts.push(name(i)),
            _ => parts.push(format!("{}^{}", name(i), e)),
        }
    }
    parts.join("*")
}

impl<E: Exponent> Add for &SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn add(self, rhs: Self) -> SparsePoly<E> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<E: Exponent> Sub for &SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn sub(self, rhs: Self) -> SparsePoly<E> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<E: Exponent> Neg for &SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn neg(self) -> SparsePoly<E> {
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl<E: Exponent> Mul for &SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn mul(self, rhs: Self) -> SparsePoly<E> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = SparsePoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<E> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly_strategy() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec((prop::collection::vec(0u32..3, 2), -5i64..=5), 0..5).prop_map(|ts| {
            SparsePoly::from_terms(2, ts.into_iter().map(|(e, c)| (e, BigInt::from(c))))
        })
    }

    fn laurent_strategy() -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec((prop::collection::vec(-2i64..3, 2), -5i64..=5), 0..5).prop_map(|ts| {
            SparsePoly::from_terms(2, ts.into_iter().map(|(e, c)| (e, BigInt::from(c))))
        })
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let x = IntPolynomial::variable(2, 0);
        let d = &x - &x;
        assert!(d.is_zero());
        assert_eq!(d.len(), 0);
        assert_eq!(d.render_vars("x"), "0");
    }

    #[test]
    fn rendering() {
        let p = IntPolynomial::linear_form(&[1, -2]);
        let q = &p * &p;
        assert_eq!(q.render_vars("w"), "w1^2 - 4*w1*w2 + 4*w2^2");
        let one = LaurentPolynomial::one(1);
        let k = &one - &LaurentPolynomial::character(&[2]);
        assert_eq!(k.render_characters(), "1 - e^{(2)}");
        let neg = -&IntPolynomial::one(1);
        assert_eq!(neg.render_vars("x"), "-1");
    }

    #[test]
    fn truncated_product_drops_high_terms() {
        let x = IntPolynomial::variable(1, 0);
        let p = &IntPolynomial::one(1) + &x;
        let sq = p.mul_truncated(&p, &[2], 2);
        assert_eq!(sq, &IntPolynomial::one(1) + &x.scale(&BigInt::from(2)));
    }

    proptest! {
        #[test]
        fn ring_axioms_int(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn ring_axioms_laurent(a in laurent_strategy(), b in laurent_strategy(), c in laurent_strategy()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &LaurentPolynomial::one(2), a.clone());
        }
    }
}
