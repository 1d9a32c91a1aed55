//! Root data, Weyl groups and the Bruhat order for the finite types used
//! throughout the crate.
//!
//! Conventions: `cartan[i][j] = <alpha_i^vee, alpha_j>`. Weights use the
//! fundamental-weight basis, so the simple root `alpha_j` is column `j` of
//! the Cartan matrix. Coweights use the simple-coroot basis, which is dual
//! to the fundamental weights.

mod cartan;
mod lattice;
mod weyl;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lattice::{pairing, Coweight, IntMatrix, Weight};
pub use weyl::{generate_weyl, longest_element, WeylElement, WeylGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("unsupported root system {0}")]
    UnsupportedType(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("group does not have a unique element of maximal length")]
    IncompleteGroup,
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("element is not a member of this Weyl group")]
    NotInGroup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A Dynkin type such as `A2` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemSpec {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        let spec = RootSystemSpec { family, rank };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), RootSystemError> {
        let ok = match self.family {
            Family::A => (1..=6).contains(&self.rank),
            Family::B | Family::C => (2..=6).contains(&self.rank),
            Family::D => (3..=6).contains(&self.rank),
            Family::G => self.rank == 2,
            Family::F => self.rank == 4,
            Family::E => false,
        };
        if ok {
            Ok(())
        } else {
            Err(RootSystemError::UnsupportedType(self.to_string()))
        }
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemSpec {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let unsupported = || RootSystemError::UnsupportedType(s.to_string());
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(unsupported()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| unsupported())?;
        RootSystemSpec::new(family, rank)
    }
}

impl Serialize for RootSystemSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootSystemSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The combinatorial data of a simply-connected semisimple group.
#[derive(Clone, Debug)]
pub struct RootDatum {
    spec: RootSystemSpec,
    cartan: IntMatrix,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Coweight>,
    fundamental_weights: Vec<Weight>,
    positive_roots: Vec<Weight>,
    positive_root_coords: Vec<Vec<i64>>,
    positive_coroots: Vec<Coweight>,
    positive_set: HashSet<Weight>,
}

/// Builds the root datum of a supported Dynkin type.
pub fn build_root_datum(spec: RootSystemSpec) -> Result<RootDatum, RootSystemError> {
    spec.validate()?;
    let cartan = cartan::cartan_matrix(spec)?;
    Ok(RootDatum::from_cartan(spec, cartan))
}

impl RootDatum {
    fn from_cartan(spec: RootSystemSpec, cartan: IntMatrix) -> Self {
        let r = spec.rank;
        let simple_roots: Vec<Weight> = (0..r).map(|j| Weight(cartan.column(j))).collect();
        let unit = |i: usize| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        };
        let simple_coroots = (0..r).map(|i| Coweight(unit(i))).collect();
        let fundamental_weights = (0..r).map(|i| Weight(unit(i))).collect();

        let positive_root_coords = cartan::positive_roots_in_root_coords(&cartan);
        let positive_roots: Vec<Weight> = positive_root_coords
            .iter()
            .map(|rc| Weight(cartan.apply(rc)))
            .collect();
        // Coroots are the roots of the dual system, whose simple-root
        // coordinates are exactly our coweight coordinates.
        let positive_coroots = cartan::positive_roots_in_root_coords(&cartan.transpose())
            .into_iter()
            .map(Coweight)
            .collect();
        let positive_set = positive_roots.iter().cloned().collect();
        RootDatum {
            spec,
            cartan,
            simple_roots,
            simple_coroots,
            fundamental_weights,
            positive_roots,
            positive_root_coords,
            positive_coroots,
            positive_set,
        }
    }

    pub fn spec(&self) -> RootSystemSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Coweight] {
        &self.simple_coroots
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental_weights
    }

    /// Positive roots in fundamental-weight coordinates, sorted by height.
    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Positive roots in simple-root coordinates, parallel to
    /// [`positive_roots`](Self::positive_roots).
    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.positive_root_coords
    }

    pub fn positive_coroots(&self) -> &[Coweight] {
        &self.positive_coroots
    }

    pub fn is_positive_root(&self, mu: &Weight) -> bool {
        self.positive_set.contains(mu)
    }

    pub fn is_negative_root(&self, mu: &Weight) -> bool {
        self.positive_set.contains(&mu.neg())
    }

    pub fn highest_root(&self) -> &Weight {
        self.positive_roots.last().expect("nonempty root system")
    }

    pub fn pairing(&self, lam: &Coweight, mu: &Weight) -> Result<i64, RootSystemError> {
        self.check_coweight(lam)?;
        self.check_weight(mu)?;
        pairing(lam, mu)
    }

    pub fn check_weight(&self, mu: &Weight) -> Result<(), RootSystemError> {
        if mu.rank() != self.rank() {
            return Err(RootSystemError::RankMismatch {
                expected: self.rank(),
                found: mu.rank(),
            });
        }
        Ok(())
    }

    pub fn check_coweight(&self, lam: &Coweight) -> Result<(), RootSystemError> {
        if lam.rank() != self.rank() {
            return Err(RootSystemError::RankMismatch {
                expected: self.rank(),
                found: lam.rank(),
            });
        }
        Ok(())
    }

    /// `<lam, alpha_k>` for every simple root: the expansion of `lam` in
    /// fundamental coweights.
    pub fn simple_root_pairings(&self, lam: &Coweight) -> Vec<i64> {
        self.simple_roots
            .iter()
            .map(|a| lattice::dot(&lam.0, &a.0))
            .collect()
    }

    pub fn is_dominant_coweight(&self, lam: &Coweight) -> bool {
        self.simple_root_pairings(lam).iter().all(|&p| p >= 0)
    }

    pub fn is_dominant_weight(&self, mu: &Weight) -> bool {
        mu.0.iter().all(|&c| c >= 0)
    }

    /// Twice the half-sum of positive coroots: dominant and regular.
    pub fn two_rho_check(&self) -> Coweight {
        let mut sum = Coweight::zero(self.rank());
        for c in &self.positive_coroots {
            sum = sum.add(c);
        }
        sum
    }

    pub fn reflect_weight(&self, i: usize, mu: &Weight) -> Weight {
        let k = mu.0[i];
        Weight(
            mu.0.iter()
                .zip(&self.simple_roots[i].0)
                .map(|(m, a)| m - k * a)
                .collect(),
        )
    }

    pub fn reflect_coweight(&self, i: usize, lam: &Coweight) -> Coweight {
        let k = lattice::dot(&lam.0, &self.simple_roots[i].0);
        let mut out = lam.clone();
        out.0[i] -= k;
        out
    }

    pub(crate) fn reflection_matrix(&self, i: usize) -> IntMatrix {
        let r = self.rank();
        let mut m = IntMatrix::identity(r);
        let col = &self.simple_roots[i].0;
        for (row, a) in col.iter().enumerate() {
            let v = m.get(row, i) - a;
            m.set(row, i, v);
        }
        m
    }

    /// Converts a weight to simple-root coordinates, scaled by
    /// `det(cartan)` so that the result is integral.
    pub fn scaled_root_coords(&self, mu: &Weight) -> (Vec<i64>, i64) {
        let det = self.cartan.determinant();
        (self.cartan.adjugate().apply(&mu.0), det)
    }

    pub fn check_indices(&self, indices: &BTreeSet<usize>) -> Result<(), RootSystemError> {
        match indices.iter().find(|&&i| i >= self.rank()) {
            Some(&index) => Err(RootSystemError::IndexOutOfRange {
                index,
                rank: self.rank(),
            }),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        build_root_datum(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parse_names() {
        assert_eq!("a2".parse::<RootSystemSpec>().unwrap().to_string(), "A2");
        assert_eq!("G2".parse::<RootSystemSpec>().unwrap().rank, 2);
        assert!(matches!(
            "E6".parse::<RootSystemSpec>(),
            Err(RootSystemError::UnsupportedType(_))
        ));
        assert!("G3".parse::<RootSystemSpec>().is_err());
        assert!("D2".parse::<RootSystemSpec>().is_err());
        assert!("A7".parse::<RootSystemSpec>().is_err());
        assert!("X1".parse::<RootSystemSpec>().is_err());
        assert!("A".parse::<RootSystemSpec>().is_err());
    }

    #[test]
    fn a1_datum() {
        let d = datum("A1");
        assert_eq!(d.cartan().rows(), vec![vec![2]]);
        assert_eq!(d.positive_roots(), &[Weight(vec![2])]);
    }

    #[test]
    fn positive_root_counts() {
        for (name, count) in [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("A6", 21),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("D6", 30),
            ("G2", 6),
            ("F4", 24),
        ] {
            let d = datum(name);
            assert_eq!(d.positive_roots().len(), count, "{name}");
            assert_eq!(d.positive_coroots().len(), count, "{name}");
        }
    }

    #[test]
    fn duality_invariants() {
        for name in ["A3", "B3", "C4", "D5", "G2", "F4"] {
            let d = datum(name);
            let r = d.rank();
            for i in 0..r {
                for j in 0..r {
                    let c = pairing(&d.simple_coroots()[i], &d.simple_roots()[j]).unwrap();
                    assert_eq!(c, d.cartan().get(i, j));
                    let delta = pairing(&d.simple_coroots()[i], &d.fundamental_weights()[j]).unwrap();
                    assert_eq!(delta, i64::from(i == j));
                }
            }
        }
    }

    #[test]
    fn highest_root_pairing_in_a2() {
        let d = datum("A2");
        let theta = d.highest_root();
        assert_eq!(theta, &Weight(vec![1, 1]));
        assert_eq!(d.pairing(&Coweight(vec![1, 1]), theta).unwrap(), 2);
        assert_eq!(d.pairing(&Coweight(vec![1]), &Weight(vec![2])).unwrap_err(),
            RootSystemError::RankMismatch { expected: 2, found: 1 });
    }

    #[test]
    fn two_rho_check_is_regular_dominant() {
        for name in ["A1", "A4", "B3", "C3", "D4", "G2", "F4"] {
            let d = datum(name);
            let l = d.two_rho_check();
            assert!(d.simple_root_pairings(&l).iter().all(|&p| p == 2), "{name}");
        }
    }
}
