//! Białynicki-Birula strata from fixed-point tangent data.
//!
//! A [`VarietyModel`] lists the isolated fixed points of a smooth projective
//! torus variety together with the weights of each tangent representation.
//! A generic cocharacter splits every tangent space into attracting and
//! repelling parts; the repelling weights give the codimension and normal
//! Euler class of the cell.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rings::{chern_class_mu, euler, FglTruncation, RingElement, RingError, Theory};
use crate::root_system::{pairing, Coweight, Weight};
use crate::stratification::{
    assemble_module, assemble_module_along, GradedModuleDecomposition, Payload, StratificationError,
    StratumPoset,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BbError {
    #[error("fixed point {0} has a zero tangent weight")]
    ZeroTangentWeight(String),
    #[error("no generic coweight within {0} shells")]
    SearchExhausted(i64),
    #[error("coweight pairs to zero with weight {weight} at {label}")]
    NonGenericCoweight { label: String, weight: Weight },
    #[error("fixed point {label} has {found} tangent weights, expected {expected}")]
    DimensionMismatch {
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("weight or coweight rank {found} does not match model rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("duplicate fixed point label {0}")]
    DuplicateLabel(String),
    #[error("labels are not a closed (downward closed) set")]
    NotClosed,
    #[error("closure order puts {lower} below {upper} but the cell dimensions do not increase")]
    ClosureOrderMismatch { lower: String, upper: String },
    #[error(transparent)]
    Stratification(#[from] StratificationError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointData {
    pub label: String,
    pub weights: Vec<Weight>,
}

/// The combinatorial shadow of a variety: fixed points, tangent weights and
/// optionally the closure order of the cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyModel {
    pub dimension: usize,
    /// Torus rank; inferred from the weights when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub points: Vec<FixedPointData>,
    /// Pairs `[a, b]` with the cell of `a` in the closure of the cell of `b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_covers: Option<Vec<[String; 2]>>,
    /// Cocharacter for which `closure_covers` is the cell closure order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coweight: Option<Coweight>,
}

impl VarietyModel {
    pub fn torus_rank(&self) -> usize {
        self.rank
            .or_else(|| self.points.iter().flat_map(|p| p.weights.first()).map(Weight::rank).next())
            .unwrap_or(1)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.points.iter().map(|p| p.label.as_str()).collect()
    }

    pub fn validate(&self) -> Result<(), BbError> {
        let rank = self.torus_rank();
        let mut seen = HashSet::new();
        for p in &self.points {
            if !seen.insert(p.label.as_str()) {
                return Err(BbError::DuplicateLabel(p.label.clone()));
            }
            if p.weights.len() != self.dimension {
                return Err(BbError::DimensionMismatch {
                    label: p.label.clone(),
                    expected: self.dimension,
                    found: p.weights.len(),
                });
            }
            for w in &p.weights {
                if w.rank() != rank {
                    return Err(BbError::RankMismatch {
                        expected: rank,
                        found: w.rank(),
                    });
                }
                if w.is_zero() {
                    return Err(BbError::ZeroTangentWeight(p.label.clone()));
                }
            }
        }
        Ok(())
    }

    /// The sub-model on `labels`, keeping points in their original order.
    pub fn restrict(&self, labels: &BTreeSet<String>) -> VarietyModel {
        VarietyModel {
            dimension: self.dimension,
            rank: Some(self.torus_rank()),
            points: self
                .points
                .iter()
                .filter(|p| labels.contains(&p.label))
                .cloned()
                .collect(),
            closure_covers: self.closure_covers.as_ref().map(|cs| {
                cs.iter()
                    .filter(|[a, b]| labels.contains(a) && labels.contains(b))
                    .cloned()
                    .collect()
            }),
            coweight: self.coweight.clone(),
        }
    }
}

fn is_generic(model: &VarietyModel, lam: &Coweight) -> Result<bool, BbError> {
    for p in &model.points {
        for w in &p.weights {
            let v = pairing(lam, w).map_err(|_| BbError::RankMismatch {
                expected: w.rank(),
                found: lam.rank(),
            })?;
            if v == 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Vectors of `[-k, k]^rank` with max-norm exactly `k`, in descending
/// lexicographic order.
fn shell(rank: usize, k: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = 2 * k + 1;
    let total = (side as u64).pow(rank as u32);
    (0..total).filter_map(move |mut n| {
        let mut v = vec![0i64; rank];
        for slot in v.iter_mut().rev() {
            *slot = k - (n % side as u64) as i64;
            n /= side as u64;
        }
        (v.iter().map(|c| c.abs()).max().unwrap_or(0) == k).then_some(v)
    })
}

/// The number of shells the generic search may need: with `m` the largest
/// absolute weight coordinate and `t = 2m + 1`, the vector
/// `(t^{r-1}, ..., t, 1)` pairs nonzero with every nonzero weight.
pub fn generic_search_bound(model: &VarietyModel) -> i64 {
    let rank = model.torus_rank() as u32;
    let m = model
        .points
        .iter()
        .flat_map(|p| p.weights.iter().flat_map(|w| w.coords().iter().map(|c| c.abs())))
        .max()
        .unwrap_or(0);
    (2 * m + 1).saturating_pow(rank.saturating_sub(1)).max(1)
}

/// First coweight, by increasing max-norm and then descending
/// lexicographic order, that pairs nonzero with every tangent weight.
pub fn generic_coweight(model: &VarietyModel) -> Result<Coweight, BbError> {
    model.validate()?;
    let rank = model.torus_rank();
    let bound = generic_search_bound(model);
    for k in 1..=bound {
        for v in shell(rank, k) {
            let lam = Coweight::new(v);
            if is_generic(model, &lam)? {
                return Ok(lam);
            }
        }
    }
    Err(BbError::SearchExhausted(bound))
}

/// The model's preferred coweight when it is generic, else the search result.
pub fn choose_coweight(model: &VarietyModel) -> Result<Coweight, BbError> {
    if let Some(lam) = &model.coweight {
        model.validate()?;
        if is_generic(model, lam)? {
            return Ok(lam.clone());
        }
    }
    generic_coweight(model)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellInfo {
    pub label: String,
    pub dim: usize,
    pub codim: usize,
    pub normal_weights: Vec<Weight>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BbStratification {
    pub coweight: Coweight,
    pub theory: Theory,
    pub cells: Vec<CellInfo>,
    pub poset: StratumPoset,
    pub warnings: Vec<String>,
}

/// The truncation actually used for `MU`: high enough that the Euler class
/// of every cell survives.
/// Euler classes of the cells' normal weights. In `MU` the per-weight Chern
/// classes are computed once and shared, since roots recur across cells.
fn normal_euler_classes(cells: &[CellInfo], theory: Theory, rank: usize) -> Vec<Result<RingElement, RingError>> {
    let Theory::MU { truncation } = theory else {
        return cells.par_iter().map(|c| euler(theory, rank, &c.normal_weights)).collect();
    };
    let law = match FglTruncation::universal(truncation) {
        Ok(law) => law,
        Err(e) => return vec![Err(e); cells.len()],
    };
    let distinct: BTreeSet<&Weight> = cells.iter().flat_map(|c| &c.normal_weights).collect();
    let chern: HashMap<&Weight, _> = distinct
        .into_par_iter()
        .filter(|w| w.rank() == rank && !w.is_zero())
        .map(|w| (w, chern_class_mu(&law, w)))
        .collect();
    cells
        .par_iter()
        .map(|c| {
            let mut acc = law.one(rank);
            for w in &c.normal_weights {
                match chern.get(w) {
                    Some(class) => acc = acc.mul(class.as_ref().map_err(Clone::clone)?)?,
                    None => return euler(theory, rank, std::slice::from_ref(w)),
                }
            }
            Ok(RingElement::MU(acc))
        })
        .collect()
}

pub fn effective_theory(theory: Theory, max_codim: usize) -> Theory {
    match theory {
        Theory::MU { truncation } => Theory::MU {
            truncation: truncation.max(2 * max_codim as u32),
        },
        other => other,
    }
}

/// Splits each tangent space by the sign of its pairing with `lam` and
/// builds the stratum poset with codimensions and normal Euler classes.
pub fn bb_stratify(model: &VarietyModel, lam: &Coweight, theory: Theory) -> Result<BbStratification, BbError> {
    model.validate()?;
    let rank = model.torus_rank();
    if lam.rank() != rank {
        return Err(BbError::RankMismatch {
            expected: rank,
            found: lam.rank(),
        });
    }
    let mut cells = Vec::with_capacity(model.points.len());
    for p in &model.points {
        let mut normal = Vec::new();
        let mut dim = 0;
        for w in &p.weights {
            match pairing(lam, w).expect("ranks checked") {
                0 => {
                    return Err(BbError::NonGenericCoweight {
                        label: p.label.clone(),
                        weight: w.clone(),
                    })
                }
                v if v > 0 => dim += 1,
                _ => normal.push(w.clone()),
            }
        }
        cells.push(CellInfo {
            label: p.label.clone(),
            dim,
            codim: normal.len(),
            normal_weights: normal,
        });
    }

    let mut warnings = Vec::new();
    let labels = model.labels();
    let covers: Vec<(String, String)> = match &model.closure_covers {
        Some(cs) => cs.iter().map(|[a, b]| (a.clone(), b.clone())).collect(),
        None => {
            if cells.len() > 1 {
                warnings.push(
                    "no closure order supplied; strata ordered by codimension (larger codimension is lower)"
                        .to_string(),
                );
            }
            let mut cs = Vec::new();
            for a in &cells {
                for b in &cells {
                    if a.codim > b.codim {
                        cs.push((a.label.clone(), b.label.clone()));
                    }
                }
            }
            cs
        }
    };
    let cover_refs: Vec<(&str, &str)> = covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let mut poset = StratumPoset::from_covers(&labels, &cover_refs)?;

    for (i, a) in cells.iter().enumerate() {
        for (j, b) in cells.iter().enumerate() {
            if i != j && poset.leq_idx(i, j) && a.dim >= b.dim {
                return Err(BbError::ClosureOrderMismatch {
                    lower: a.label.clone(),
                    upper: b.label.clone(),
                });
            }
        }
    }

    let theory = effective_theory(theory, cells.iter().map(|c| c.codim).max().unwrap_or(0));
    let classes = normal_euler_classes(&cells, theory, rank);
    for (cell, class) in cells.iter().zip(classes) {
        poset.set_payload(
            &cell.label,
            Payload {
                codim: cell.codim as u32,
                euler: class?,
            },
        )?;
    }
    Ok(BbStratification {
        coweight: lam.clone(),
        theory,
        cells,
        poset,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleStructure {
    pub strata: BbStratification,
    pub decomposition: GradedModuleDecomposition,
}

/// Free module structure of the equivariant cohomology of the model.
pub fn module_structure(model: &VarietyModel, theory: Theory) -> Result<ModuleStructure, BbError> {
    let lam = choose_coweight(model)?;
    module_structure_at(model, &lam, theory)
}

pub fn module_structure_at(model: &VarietyModel, lam: &Coweight, theory: Theory) -> Result<ModuleStructure, BbError> {
    let strata = bb_stratify(model, lam, theory)?;
    let decomposition = assemble_module(&strata.poset, strata.theory)?;
    Ok(ModuleStructure { strata, decomposition })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelativeFreenessReport {
    pub outer_rank: usize,
    pub inner_rank: usize,
    pub relative_rank: usize,
    pub relative_shifts: Vec<u32>,
    /// No generator of the relative module sits in odd degree.
    pub odd_vanishing: bool,
    /// Every generator of the closed part is hit by a generator of the whole.
    pub surjective: bool,
}

/// Checks the relative module of a closed union of cells: its rank and
/// parity, and that restriction onto the closed part is onto.
pub fn check_relative_freeness(
    outer: &VarietyModel,
    inner_labels: &BTreeSet<String>,
    theory: Theory,
) -> Result<RelativeFreenessReport, BbError> {
    let lam = choose_coweight(outer)?;
    let strata = bb_stratify(outer, &lam, theory)?;
    let poset = &strata.poset;
    for l in inner_labels {
        poset.index_of(l)?;
    }
    if !poset.is_closed(inner_labels.iter().map(String::as_str))? {
        return Err(BbError::NotClosed);
    }
    let ext = poset.linear_extension();
    let (relative, inner): (Vec<String>, Vec<String>) = ext.into_iter().partition(|l| !inner_labels.contains(l));
    let order: Vec<String> = relative.iter().chain(&inner).cloned().collect();
    let whole = assemble_module_along(poset, strata.theory, &order)?;
    let (rel_gens, inner_gens) = whole.generators.split_at(relative.len());

    let inner_model = outer.restrict(inner_labels);
    let inner_strata = bb_stratify(&inner_model, &lam, strata.theory)?;
    let inner_order: Vec<&str> = inner_gens.iter().map(|g| g.label.as_str()).collect();
    let inner_dec = assemble_module_along(&inner_strata.poset, strata.theory, &inner_order)?;
    let surjective = inner_dec.generators.len() == inner_gens.len()
        && inner_dec.generators.iter().zip(inner_gens).all(|(a, b)| a == b);

    let mut relative_shifts: Vec<u32> = rel_gens.iter().map(|g| g.shift).collect();
    relative_shifts.sort_unstable();
    Ok(RelativeFreenessReport {
        outer_rank: whole.rank(),
        inner_rank: inner_gens.len(),
        relative_rank: rel_gens.len(),
        odd_vanishing: relative_shifts.iter().all(|s| s % 2 == 0),
        relative_shifts,
        surjective,
    })
}
