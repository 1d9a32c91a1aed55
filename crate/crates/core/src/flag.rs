//! Partial flag varieties `G/P` as variety models.
//!
//! Fixed points are the minimal coset representatives of `W/W_P`. The
//! tangent space at the base point carries the negative roots outside the
//! Levi of `P`, so a dominant regular coweight makes the big cell open.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bb::{FixedPointData, VarietyModel};
use crate::root_system::{build_root_datum, RootDatum, RootSystemError, RootSystemSpec, Weight, WeylElement, WeylGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagError {
    #[error("{0} is not a minimal coset representative")]
    NotCosetRepresentative(String),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

/// A Dynkin type with the simple roots (0-based) generating the Levi of `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagSpec {
    pub spec: RootSystemSpec,
    pub parabolic: BTreeSet<usize>,
}

impl FlagSpec {
    pub fn new(spec: RootSystemSpec, parabolic: impl IntoIterator<Item = usize>) -> Result<Self, FlagError> {
        let parabolic: BTreeSet<usize> = parabolic.into_iter().collect();
        if let Some(&index) = parabolic.iter().find(|&&i| i >= spec.rank) {
            return Err(RootSystemError::IndexOutOfRange { index, rank: spec.rank }.into());
        }
        Ok(FlagSpec { spec, parabolic })
    }

    pub fn full(spec: RootSystemSpec) -> Self {
        FlagSpec {
            spec,
            parabolic: BTreeSet::new(),
        }
    }
}

/// Root datum, Weyl group and coset data for one `G/P`.
pub struct FlagVariety {
    fs: FlagSpec,
    group: WeylGroup,
    /// Positive roots not in the Levi of `P`.
    unipotent_roots: Vec<Weight>,
    reps: Vec<usize>,
}

impl FlagVariety {
    pub fn new(fs: &FlagSpec) -> Result<Self, FlagError> {
        let datum = build_root_datum(fs.spec)?;
        datum.check_indices(&fs.parabolic)?;
        let unipotent_roots = datum
            .positive_roots()
            .iter()
            .zip(datum.positive_root_coords())
            .filter(|(_, coords)| coords.iter().enumerate().any(|(i, &c)| c != 0 && !fs.parabolic.contains(&i)))
            .map(|(r, _)| r.clone())
            .collect();
        let group = WeylGroup::generate(&datum);
        let reps = (0..group.order())
            .filter(|&k| fs.parabolic.iter().all(|&i| !group.has_right_descent(k, i)))
            .collect();
        Ok(FlagVariety {
            fs: fs.clone(),
            group,
            unipotent_roots,
            reps,
        })
    }

    pub fn spec(&self) -> &FlagSpec {
        &self.fs
    }

    pub fn datum(&self) -> &RootDatum {
        self.group.datum()
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn dimension(&self) -> usize {
        self.unipotent_roots.len()
    }

    pub fn fixed_points(&self) -> Vec<&WeylElement> {
        self.reps.iter().map(|&k| self.group.element(k)).collect()
    }

    pub fn tangent_weights(&self, w: &WeylElement) -> Result<Vec<Weight>, FlagError> {
        let idx = self.group.index_of(w).ok_or(RootSystemError::NotInGroup)?;
        if !self.reps.contains(&idx) {
            return Err(FlagError::NotCosetRepresentative(w.label()));
        }
        self.unipotent_roots
            .iter()
            .map(|b| Ok(w.act_weight(&b.neg())?))
            .collect()
    }

    /// Bruhat covers among the coset representatives, as label pairs.
    pub fn closure_covers(&self) -> Vec<[String; 2]> {
        let mut out = Vec::new();
        for &u in &self.reps {
            for &v in &self.reps {
                let (eu, ev) = (self.group.element(u), self.group.element(v));
                if ev.length() == eu.length() + 1 && self.group.bruhat_leq_idx(u, v) {
                    out.push([eu.label(), ev.label()]);
                }
            }
        }
        out
    }

    pub fn model(&self) -> Result<VarietyModel, FlagError> {
        let points = self
            .fixed_points()
            .into_iter()
            .map(|w| {
                Ok(FixedPointData {
                    label: w.label(),
                    weights: self.tangent_weights(w)?,
                })
            })
            .collect::<Result<Vec<_>, FlagError>>()?;
        Ok(VarietyModel {
            dimension: self.dimension(),
            rank: Some(self.fs.spec.rank),
            points,
            closure_covers: Some(self.closure_covers()),
            coweight: Some(self.datum().two_rho_check()),
        })
    }
}

pub fn flag_fixed_points(fs: &FlagSpec) -> Result<Vec<WeylElement>, FlagError> {
    Ok(FlagVariety::new(fs)?.fixed_points().into_iter().cloned().collect())
}

pub fn flag_tangent_weights(fs: &FlagSpec, w: &WeylElement) -> Result<Vec<Weight>, FlagError> {
    FlagVariety::new(fs)?.tangent_weights(w)
}

pub fn flag_model(fs: &FlagSpec) -> Result<VarietyModel, FlagError> {
    FlagVariety::new(fs)?.model()
}
