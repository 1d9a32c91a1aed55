//! Torus-fixed points of the affine Grassmannian, level by level.
//!
//! Fix a faithful irreducible representation with dominant highest weight
//! `alpha`. The fixed points are the `t^mu` for coweights `mu`; `t^mu` lies in
//! level `n` when its dominant representative `lam` has
//! `<lam, w0 alpha> >= -n`. The inverse system of the levels' cohomology is
//! recorded as nested generator label sets with restriction maps.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::rings::Theory;
use crate::root_system::{
    build_root_datum, pairing, Coweight, Family, RootDatum, RootSystemError, RootSystemSpec, Weight, WeylElement,
    WeylGroup,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrError {
    #[error("coweight {0} is not dominant")]
    NotDominant(Coweight),
    #[error("highest weight {0} must be dominant and nonzero")]
    InvalidHighestWeight(Weight),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

/// `omega_1` for type A; other types need an explicit highest weight.
pub fn default_alpha(spec: RootSystemSpec) -> Option<Weight> {
    (spec.family == Family::A).then(|| {
        let mut v = vec![0; spec.rank];
        v[0] = 1;
        Weight::new(v)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrFixedPoint {
    pub coweight: Coweight,
    pub dominant_rep: Coweight,
    /// Word of `w` with `w * coweight = dominant_rep`.
    pub witness: Vec<usize>,
    /// Least `n` with the point in level `n`.
    pub level: i64,
}

impl GrFixedPoint {
    pub fn label(&self) -> String {
        format!("t^{}", self.coweight)
    }
}

/// Root datum, Weyl group and the dominant weight `-w0 alpha` used to
/// measure levels.
pub struct AffineGrassmannian {
    group: WeylGroup,
    alpha: Weight,
    lowest: Weight,
}

impl AffineGrassmannian {
    pub fn new(spec: RootSystemSpec, alpha: Weight) -> Result<Self, GrError> {
        let datum = build_root_datum(spec)?;
        datum.check_weight(&alpha)?;
        if alpha.is_zero() || !datum.is_dominant_weight(&alpha) {
            return Err(GrError::InvalidHighestWeight(alpha));
        }
        let group = WeylGroup::generate(&datum);
        let lowest = group.longest_element()?.act_weight(&alpha)?;
        Ok(AffineGrassmannian { group, alpha, lowest })
    }

    pub fn datum(&self) -> &RootDatum {
        self.group.datum()
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn alpha(&self) -> &Weight {
        &self.alpha
    }

    /// The lowest weight `w0 alpha`.
    pub fn lowest_weight(&self) -> &Weight {
        &self.lowest
    }

    pub fn witness_element(&self, p: &GrFixedPoint) -> Option<&WeylElement> {
        self.group.elements().iter().find(|w| w.word() == p.witness.as_slice())
    }

    /// `<lam, w0 alpha>` for dominant `lam`.
    pub fn val(&self, lam: &Coweight) -> Result<i64, GrError> {
        self.datum().check_coweight(lam)?;
        if !self.datum().is_dominant_coweight(lam) {
            return Err(GrError::NotDominant(lam.clone()));
        }
        Ok(pairing(lam, &self.lowest)?)
    }

    pub fn fixed_point(&self, mu: &Coweight) -> Result<GrFixedPoint, GrError> {
        let (dom, w) = self.group.dominant_representative(mu)?;
        let level = -pairing(&dom, &self.lowest)?;
        Ok(GrFixedPoint {
            coweight: mu.clone(),
            witness: w.word().to_vec(),
            dominant_rep: dom,
            level,
        })
    }

    /// Dominant coweights `lam` with `<lam, -w0 alpha> <= n`.
    ///
    /// In the coordinates `c_k = <lam, alpha_k> >= 0` the condition is the
    /// simplex `sum_k R_k c_k <= n`, with `R` the simple-root expansion of
    /// `-w0 alpha`, which is strictly positive. A simplex point is a
    /// coweight when `lam = (C^T)^{-1} c` is integral.
    pub fn dominant_up_to(&self, n: u32) -> Vec<Coweight> {
        let datum = self.datum();
        let rank = datum.rank();
        let (scaled, det) = datum.scaled_root_coords(&self.lowest.neg());
        debug_assert!(det > 0 && scaled.iter().all(|&r| r > 0));
        let adj_t = datum.cartan().adjugate().transpose();
        let budget = n as i64 * det;
        let mut out = Vec::new();
        let mut c = vec![0i64; rank];
        fn walk(k: usize, left: i64, scaled: &[i64], c: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if k == c.len() {
                out.push(c.clone());
                return;
            }
            let mut v = 0;
            while v * scaled[k] <= left {
                c[k] = v;
                walk(k + 1, left - v * scaled[k], scaled, c, out);
                v += 1;
            }
            c[k] = 0;
        }
        let mut cs = Vec::new();
        walk(0, budget, &scaled, &mut c, &mut cs);
        for c in cs {
            let num = adj_t.apply(&c);
            if num.iter().all(|x| x % det == 0) {
                out.push(Coweight::new(num.iter().map(|x| x / det).collect()));
            }
        }
        out
    }

    /// Weyl orbit of `lam` by breadth-first search over simple reflections.
    pub fn orbit(&self, lam: &Coweight) -> Vec<Coweight> {
        let datum = self.datum();
        let mut seen = HashSet::from([lam.clone()]);
        let mut queue = VecDeque::from([lam.clone()]);
        let mut out = Vec::new();
        while let Some(cur) = queue.pop_front() {
            for i in 0..datum.rank() {
                let next = datum.reflect_coweight(i, &cur);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
            out.push(cur);
        }
        out
    }

    /// All fixed points of level `n`, sorted by level and then coordinates.
    pub fn fixed_points(&self, n: u32) -> Result<Vec<GrFixedPoint>, GrError> {
        let mut pts = Vec::new();
        for lam in self.dominant_up_to(n) {
            for mu in self.orbit(&lam) {
                pts.push(self.fixed_point(&mu)?);
            }
        }
        pts.sort_by(|a, b| (a.level, &a.coweight).cmp(&(b.level, &b.coweight)));
        Ok(pts)
    }

    pub fn level_count(&self, n: u32) -> Result<usize, GrError> {
        Ok(self.dominant_up_to(n).iter().map(|lam| self.orbit(lam).len()).sum())
    }

    /// Levels `0..=n_max` are nested, and every coweight of the box
    /// `[-n_max, n_max]^r` whose level is at most `n_max` is listed.
    pub fn filtration_check(&self, n_max: u32) -> Result<bool, GrError> {
        let mut prev: BTreeSet<Coweight> = BTreeSet::new();
        let mut last = BTreeSet::new();
        for n in 0..=n_max {
            let cur: BTreeSet<Coweight> = self.fixed_points(n)?.into_iter().map(|p| p.coweight).collect();
            if !prev.is_subset(&cur) {
                return Ok(false);
            }
            prev = cur.clone();
            last = cur;
        }
        let rank = self.datum().rank();
        let side = 2 * n_max as i64 + 1;
        for k in 0..side.pow(rank as u32) {
            let mut rest = k;
            let coords: Vec<i64> = (0..rank)
                .map(|_| {
                    let c = rest % side - n_max as i64;
                    rest /= side;
                    c
                })
                .collect();
            let mu = Coweight::new(coords);
            let p = self.fixed_point(&mu)?;
            if p.level <= n_max as i64 && !last.contains(&mu) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn limit_module(&self, n_max: u32, theory: Theory) -> Result<LimitModulePresentation, GrError> {
        let mut levels = Vec::new();
        for n in 0..=n_max {
            let labels: Vec<String> = self.fixed_points(n)?.iter().map(GrFixedPoint::label).collect();
            levels.push(LevelRecord {
                n,
                rank: labels.len(),
                labels,
            });
        }
        let projections = levels
            .windows(2)
            .map(|pair| {
                let lower: HashSet<&String> = pair[0].labels.iter().collect();
                let (kept, dropped) = pair[1].labels.iter().cloned().partition(|l| lower.contains(l));
                Projection {
                    from: pair[1].n,
                    to: pair[0].n,
                    kept,
                    dropped,
                }
            })
            .collect();
        let rank = self.datum().rank();
        let mut presentation = LimitModulePresentation {
            spec: self.datum().spec().to_string(),
            alpha: self.alpha.clone(),
            theory,
            base_ring_rank: rank + 1,
            index_description: format!(
                "all coweights of the rank-{rank} torus, listed by level then coordinates in the simple-coroot basis"
            ),
            levels,
            projections,
            lim1_vanishes: false,
        };
        presentation.lim1_vanishes = presentation.projections_surjective();
        Ok(presentation)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRecord {
    pub n: u32,
    pub rank: usize,
    pub labels: Vec<String>,
}

/// Restriction from level `from` to level `to`: generators indexed by
/// `kept` map to the same labels, those in `dropped` go to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Projection {
    pub from: u32,
    pub to: u32,
    pub kept: Vec<String>,
    pub dropped: Vec<String>,
}

/// The inverse system of level modules, each free on its fixed points over
/// the coefficient ring of the torus extended by loop rotation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitModulePresentation {
    pub spec: String,
    pub alpha: Weight,
    pub theory: Theory,
    pub base_ring_rank: usize,
    pub index_description: String,
    pub levels: Vec<LevelRecord>,
    pub projections: Vec<Projection>,
    /// Set when every restriction is onto, so the system is Mittag-Leffler.
    pub lim1_vanishes: bool,
}

impl LimitModulePresentation {
    pub fn ranks(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.rank).collect()
    }

    /// Each restriction hits every generator of the lower level.
    pub fn projections_surjective(&self) -> bool {
        self.projections.iter().zip(self.levels.windows(2)).all(|(p, pair)| {
            let kept: BTreeSet<&String> = p.kept.iter().collect();
            let lower: BTreeSet<&String> = pair[0].labels.iter().collect();
            kept == lower
        })
    }

    /// Label sets are nested and restricting two steps at once agrees with
    /// restricting one step at a time.
    pub fn diagrams_commute(&self) -> bool {
        let sets: Vec<BTreeSet<&String>> = self.levels.iter().map(|l| l.labels.iter().collect()).collect();
        if !sets.windows(2).all(|w| w[0].is_subset(&w[1])) {
            return false;
        }
        for (p, pair) in self.projections.iter().zip(sets.windows(2)) {
            let kept: BTreeSet<&String> = p.kept.iter().collect();
            let dropped: BTreeSet<&String> = p.dropped.iter().collect();
            if !kept.is_disjoint(&dropped) || &kept | &dropped != pair[1] || kept != pair[0] {
                return false;
            }
        }
        for k in 2..sets.len() {
            let step: BTreeSet<&String> = sets[k].iter().filter(|l| sets[k - 1].contains(*l)).copied().collect();
            let step: BTreeSet<&String> = step.into_iter().filter(|l| sets[k - 2].contains(*l)).collect();
            let direct: BTreeSet<&String> = sets[k].iter().filter(|l| sets[k - 2].contains(*l)).copied().collect();
            if step != direct {
                return false;
            }
        }
        true
    }
}

/// Convenience wrappers taking a type and highest weight.
pub fn val_coweight(lam: &Coweight, alpha: &Weight, spec: RootSystemSpec) -> Result<i64, GrError> {
    AffineGrassmannian::new(spec, alpha.clone())?.val(lam)
}

pub fn gr_fixed_points(spec: RootSystemSpec, alpha: &Weight, n: u32) -> Result<Vec<GrFixedPoint>, GrError> {
    AffineGrassmannian::new(spec, alpha.clone())?.fixed_points(n)
}

pub fn gr_level_count(spec: RootSystemSpec, alpha: &Weight, n: u32) -> Result<usize, GrError> {
    AffineGrassmannian::new(spec, alpha.clone())?.level_count(n)
}

pub fn gr_filtration_check(spec: RootSystemSpec, alpha: &Weight, n_max: u32) -> Result<bool, GrError> {
    AffineGrassmannian::new(spec, alpha.clone())?.filtration_check(n_max)
}

pub fn gr_limit_module(
    spec: RootSystemSpec,
    alpha: &Weight,
    n_max: u32,
    theory: Theory,
) -> Result<LimitModulePresentation, GrError> {
    AffineGrassmannian::new(spec, alpha.clone())?.limit_module(n_max, theory)
}
