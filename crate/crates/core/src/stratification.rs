//! Stratum posets and the inductive Thom-Gysin assembly of a free module.
//!
//! A poset carries, per stratum, its codimension and the Euler class of its
//! normal representation. Assembly walks a maximal-first linear extension,
//! so each prefix is an open union of strata, and adds one free generator
//! per stratum in degree `2 * codim`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rings::{is_nonzero_divisor, RingElement, RingElementJson, RingError, Theory};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StratificationError {
    #[error("unknown stratum label {0}")]
    UnknownLabel(String),
    #[error("duplicate stratum label {0}")]
    DuplicateLabel(String),
    #[error("closure relation is not a partial order (cycle through {0})")]
    NotAPartialOrder(String),
    #[error("stratum {0} has no codimension/Euler payload")]
    MissingPayload(String),
    #[error("Euler class of stratum {0} is a zero divisor")]
    ZeroDivisorEulerClass(String),
    #[error("Euler class of stratum {label} has degree {found:?}, expected {expected}")]
    DegreeMismatch {
        label: String,
        expected: i64,
        found: Option<i64>,
    },
    #[error("Euler class of stratum {0} is not in the requested theory")]
    TheoryMismatch(String),
    #[error("no closure given for stratum {0}")]
    MissingClosure(String),
    #[error("sequence is not a maximal-first linear extension")]
    InvalidExtension,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Codimension and normal Euler class of a stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Payload {
    pub codim: u32,
    pub euler: RingElement,
}

/// Strata with their closure order: `leq(a, b)` iff stratum `a` lies in
/// the closure of stratum `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumPoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<Vec<bool>>,
    payload: Vec<Option<Payload>>,
}

impl StratumPoset {
    /// Builds the order as the reflexive-transitive closure of `covers`,
    /// each pair `(a, b)` meaning `a < b`.
    pub fn from_covers<S: AsRef<str>>(
        labels: &[S],
        covers: &[(S, S)],
    ) -> Result<Self, StratificationError> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(StratificationError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            let ia = lookup(&index, a.as_ref())?;
            let ib = lookup(&index, b.as_ref())?;
            if ia == ib {
                return Err(StratificationError::NotAPartialOrder(labels[ia].clone()));
            }
            leq[ia][ib] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(StratificationError::NotAPartialOrder(labels[i].clone()));
                }
            }
        }
        Ok(StratumPoset {
            labels,
            index,
            leq,
            payload: vec![None; n],
        })
    }

    pub fn empty() -> Self {
        StratumPoset {
            labels: Vec::new(),
            index: HashMap::new(),
            leq: Vec::new(),
            payload: Vec::new(),
        }
    }

    pub fn set_payload(&mut self, label: &str, payload: Payload) -> Result<(), StratificationError> {
        let i = lookup(&self.index, label)?;
        self.payload[i] = Some(payload);
        Ok(())
    }

    pub fn with_payload(mut self, label: &str, codim: u32, euler: RingElement) -> Result<Self, StratificationError> {
        self.set_payload(label, Payload { codim, euler })?;
        Ok(self)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Result<usize, StratificationError> {
        lookup(&self.index, label)
    }

    pub fn payload(&self, label: &str) -> Result<Option<&Payload>, StratificationError> {
        Ok(self.payload[self.index_of(label)?].as_ref())
    }

    pub fn leq(&self, a: &str, b: &str) -> Result<bool, StratificationError> {
        Ok(self.leq[self.index_of(a)?][self.index_of(b)?])
    }

    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(String, String)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq[a][b] {
                    continue;
                }
                let between = (0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b]);
                if !between {
                    out.push((self.labels[a].clone(), self.labels[b].clone()));
                }
            }
        }
        out
    }

    /// Labels `γ` with `γ <= label`.
    pub fn down_set(&self, label: &str) -> Result<BTreeSet<String>, StratificationError> {
        let i = self.index_of(label)?;
        Ok((0..self.len())
            .filter(|&j| self.leq[j][i])
            .map(|j| self.labels[j].clone())
            .collect())
    }

    fn indices<'a, I: IntoIterator<Item = &'a str>>(&self, set: I) -> Result<BTreeSet<usize>, StratificationError> {
        set.into_iter().map(|l| self.index_of(l)).collect()
    }

    /// Whether `set` is upward closed.
    pub fn is_open<'a, I: IntoIterator<Item = &'a str>>(&self, set: I) -> Result<bool, StratificationError> {
        let members = self.indices(set)?;
        Ok(members
            .iter()
            .all(|&b| (0..self.len()).all(|g| !self.leq[b][g] || members.contains(&g))))
    }

    /// Whether `set` is downward closed.
    pub fn is_closed<'a, I: IntoIterator<Item = &'a str>>(&self, set: I) -> Result<bool, StratificationError> {
        let members = self.indices(set)?;
        Ok(members
            .iter()
            .all(|&b| (0..self.len()).all(|g| !self.leq[g][b] || members.contains(&g))))
    }

    /// Maximal-first order; ties go to the earliest label.
    pub fn linear_extension(&self) -> Vec<String> {
        let n = self.len();
        let mut used = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .find(|&i| !used[i] && (0..n).all(|j| used[j] || j == i || !self.leq[i][j]))
                .expect("a finite poset has a maximal element");
            used[next] = true;
            out.push(self.labels[next].clone());
        }
        out
    }

    /// Whether `order` lists every label once with each entry maximal
    /// among those not yet listed.
    pub fn is_linear_extension<S: AsRef<str>>(&self, order: &[S]) -> bool {
        if order.len() != self.len() {
            return false;
        }
        let mut used = vec![false; self.len()];
        for l in order {
            let Ok(i) = self.index_of(l.as_ref()) else {
                return false;
            };
            if used[i] {
                return false;
            }
            if (0..self.len()).any(|j| !used[j] && j != i && self.leq[i][j]) {
                return false;
            }
            used[i] = true;
        }
        true
    }

    /// Whether `closures[b]` equals the down-set of `b` for every label.
    pub fn check_stratification(
        &self,
        closures: &BTreeMap<String, BTreeSet<String>>,
    ) -> Result<bool, StratificationError> {
        for (label, set) in closures {
            self.index_of(label)?;
            for g in set {
                self.index_of(g)?;
            }
        }
        for label in &self.labels {
            let given = closures
                .get(label)
                .ok_or_else(|| StratificationError::MissingClosure(label.clone()))?;
            if *given != self.down_set(label)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            labels: self.labels.clone(),
            covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            payload: self
                .labels
                .iter()
                .zip(&self.payload)
                .filter_map(|(l, p)| {
                    p.as_ref().map(|p| {
                        (
                            l.clone(),
                            PayloadJson {
                                codim: p.codim,
                                euler: p.euler.to_json(),
                            },
                        )
                    })
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PosetJson) -> Result<Self, StratificationError> {
        let covers: Vec<(&str, &str)> = json.covers.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        let labels: Vec<&str> = json.labels.iter().map(String::as_str).collect();
        let mut poset = StratumPoset::from_covers(&labels, &covers)?;
        for (label, p) in &json.payload {
            poset.set_payload(
                label,
                Payload {
                    codim: p.codim,
                    euler: RingElement::from_json(&p.euler)?,
                },
            )?;
        }
        Ok(poset)
    }
}

fn lookup(index: &HashMap<String, usize>, label: &str) -> Result<usize, StratificationError> {
    index
        .get(label)
        .copied()
        .ok_or_else(|| StratificationError::UnknownLabel(label.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PayloadJson {
    pub codim: u32,
    pub euler: RingElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub labels: Vec<String>,
    #[serde(default)]
    pub covers: Vec<[String; 2]>,
    #[serde(default)]
    pub payload: BTreeMap<String, PayloadJson>,
}

/// One free summand: the stratum, its degree shift and the Euler class
/// generating the corresponding principal ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleGenerator {
    pub label: String,
    pub shift: u32,
    pub class: RingElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModuleDecomposition {
    pub theory: Theory,
    pub generators: Vec<ModuleGenerator>,
}

impl GradedModuleDecomposition {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn shifts(&self) -> Vec<u32> {
        let mut s: Vec<u32> = self.generators.iter().map(|g| g.shift).collect();
        s.sort_unstable();
        s
    }

    pub fn labels(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.label.as_str()).collect()
    }

    /// Generator classes as canonical strings, sorted.
    pub fn class_multiset(&self) -> Vec<String> {
        let mut c: Vec<String> = self.generators.iter().map(|g| g.class.render()).collect();
        c.sort();
        c
    }

    pub fn poincare_series(&self) -> PoincareSeries {
        let mut coeffs = BTreeMap::new();
        for g in &self.generators {
            *coeffs.entry(g.shift).or_insert(0u64) += 1;
        }
        PoincareSeries(coeffs)
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            theory: self.theory.tag().to_string(),
            rank: self.rank(),
            poincare: self.poincare_series().to_string(),
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorJson {
                    label: g.label.clone(),
                    shift: g.shift,
                    class: g.class.to_json(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub label: String,
    pub shift: u32,
    pub class: RingElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub theory: String,
    pub rank: usize,
    pub poincare: String,
    pub generators: Vec<GeneratorJson>,
}

/// `sum_k c_k q^k`, stored as exponent to coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PoincareSeries(pub BTreeMap<u32, u64>);

impl PoincareSeries {
    pub fn at_one(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn coefficient(&self, exponent: u32) -> u64 {
        self.0.get(&exponent).copied().unwrap_or(0)
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = u32>) -> Self {
        let mut coeffs = BTreeMap::new();
        for e in exps {
            *coeffs.entry(e).or_insert(0) += 1;
        }
        PoincareSeries(coeffs)
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(&e, &c)| match (e, c) {
                (0, c) => c.to_string(),
                (1, 1) => "q".to_string(),
                (1, c) => format!("{c}q"),
                (e, 1) => format!("q^{e}"),
                (e, c) => format!("{c}q^{e}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Assembles along the default linear extension.
pub fn assemble_module(poset: &StratumPoset, theory: Theory) -> Result<GradedModuleDecomposition, StratificationError> {
    assemble_module_along(poset, theory, &poset.linear_extension())
}

/// Assembles along a caller-chosen maximal-first order.
pub fn assemble_module_along<S: AsRef<str>>(
    poset: &StratumPoset,
    theory: Theory,
    order: &[S],
) -> Result<GradedModuleDecomposition, StratificationError> {
    if !poset.is_linear_extension(order) {
        return Err(StratificationError::InvalidExtension);
    }
    let mut generators = Vec::with_capacity(order.len());
    for label in order {
        let label = label.as_ref();
        let payload = poset
            .payload(label)?
            .ok_or_else(|| StratificationError::MissingPayload(label.to_string()))?;
        if !payload.euler.belongs_to(theory) {
            return Err(StratificationError::TheoryMismatch(label.to_string()));
        }
        if !is_nonzero_divisor(&payload.euler) {
            return Err(StratificationError::ZeroDivisorEulerClass(label.to_string()));
        }
        let expected = 2 * payload.codim as i64;
        let found = payload.euler.degree();
        if found != Some(expected) {
            return Err(StratificationError::DegreeMismatch {
                label: label.to_string(),
                expected,
                found,
            });
        }
        generators.push(ModuleGenerator {
            label: label.to_string(),
            shift: 2 * payload.codim,
            class: payload.euler.clone(),
        });
    }
    Ok(GradedModuleDecomposition { theory, generators })
}
