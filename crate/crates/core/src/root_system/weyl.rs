use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::{Coweight, IntMatrix, RootDatum, RootSystemError, Weight};

/// An element of a finite Weyl group.
///
/// `matrix` acts on weight coordinates and `coweight_matrix` on coweight
/// coordinates; the two are inverse transposes of each other, so the
/// pairing is preserved. `word` is the lexicographically smallest reduced
/// word, read left to right as a product of simple reflections.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    matrix: IntMatrix,
    coweight_matrix: IntMatrix,
    word: Vec<usize>,
    length: usize,
}

impl WeylElement {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn coweight_matrix(&self) -> &IntMatrix {
        &self.coweight_matrix
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// `"e"` for the identity, otherwise e.g. `"s1s2"` (1-based indices).
    pub fn label(&self) -> String {
        if self.word.is_empty() {
            return "e".to_string();
        }
        self.word.iter().map(|i| format!("s{}", i + 1)).collect()
    }

    pub fn act_weight(&self, mu: &Weight) -> Result<Weight, RootSystemError> {
        if mu.rank() != self.matrix.dim() {
            return Err(RootSystemError::RankMismatch {
                expected: self.matrix.dim(),
                found: mu.rank(),
            });
        }
        Ok(Weight(self.matrix.apply(&mu.0)))
    }

    pub fn act_coweight(&self, lam: &Coweight) -> Result<Coweight, RootSystemError> {
        if lam.rank() != self.coweight_matrix.dim() {
            return Err(RootSystemError::RankMismatch {
                expected: self.coweight_matrix.dim(),
                found: lam.rank(),
            });
        }
        Ok(Coweight(self.coweight_matrix.apply(&lam.0)))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The unique element of maximal length.
pub fn longest_element(elements: &[WeylElement]) -> Result<&WeylElement, RootSystemError> {
    let max = elements
        .iter()
        .map(|w| w.length)
        .max()
        .ok_or(RootSystemError::IncompleteGroup)?;
    let mut top = elements.iter().filter(|w| w.length == max);
    match (top.next(), top.next()) {
        (Some(w), None) => Ok(w),
        _ => Err(RootSystemError::IncompleteGroup),
    }
}

/// A finite Weyl group with multiplication tables for simple reflections.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    datum: RootDatum,
    elements: Vec<WeylElement>,
    index: HashMap<IntMatrix, usize>,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl WeylGroup {
    /// Generates the whole group by breadth-first closure under left
    /// multiplication by simple reflections, deduplicating by matrix.
    pub fn generate(datum: &RootDatum) -> WeylGroup {
        let r = datum.rank();
        let gens: Vec<IntMatrix> = (0..r).map(|i| datum.reflection_matrix(i)).collect();

        let mut found: HashMap<IntMatrix, Vec<usize>> = HashMap::new();
        let identity = IntMatrix::identity(r);
        found.insert(identity.clone(), Vec::new());
        let mut layers: Vec<Vec<IntMatrix>> = vec![vec![identity]];
        loop {
            let prev = layers.last().unwrap();
            let mut next: HashMap<IntMatrix, Vec<usize>> = HashMap::new();
            for u in prev {
                let u_word = &found[u];
                for (i, s) in gens.iter().enumerate() {
                    let w = s.mul(u);
                    if found.contains_key(&w) {
                        continue;
                    }
                    let mut word = Vec::with_capacity(u_word.len() + 1);
                    word.push(i);
                    word.extend_from_slice(u_word);
                    next.entry(w)
                        .and_modify(|cur| {
                            if word < *cur {
                                *cur = word.clone();
                            }
                        })
                        .or_insert(word);
                }
            }
            if next.is_empty() {
                break;
            }
            let mut layer: Vec<(Vec<usize>, IntMatrix)> =
                next.into_iter().map(|(m, w)| (w, m)).collect();
            layer.sort();
            let mats = layer
                .into_iter()
                .map(|(w, m)| {
                    found.insert(m.clone(), w);
                    m
                })
                .collect();
            layers.push(mats);
        }

        let mut elements = Vec::with_capacity(found.len());
        for (length, layer) in layers.into_iter().enumerate() {
            for m in layer {
                let word = found.remove(&m).unwrap();
                let mut cw = IntMatrix::identity(r);
                for &i in &word {
                    cw = cw.mul(&gens[i].transpose());
                }
                elements.push(WeylElement {
                    matrix: m,
                    coweight_matrix: cw,
                    word,
                    length,
                });
            }
        }
        let index: HashMap<IntMatrix, usize> = elements
            .iter()
            .enumerate()
            .map(|(k, w)| (w.matrix.clone(), k))
            .collect();
        let left = elements
            .iter()
            .map(|w| gens.iter().map(|s| index[&s.mul(&w.matrix)]).collect())
            .collect();
        let right = elements
            .iter()
            .map(|w| gens.iter().map(|s| index[&w.matrix.mul(s)]).collect())
            .collect();
        WeylGroup {
            datum: datum.clone(),
            elements,
            index,
            left,
            right,
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// All elements, ordered by length and then by reduced word.
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.matrix).copied()
    }

    fn require(&self, w: &WeylElement) -> Result<usize, RootSystemError> {
        self.index_of(w).ok_or(RootSystemError::NotInGroup)
    }

    pub fn left_mul(&self, i: usize, idx: usize) -> usize {
        self.left[idx][i]
    }

    pub fn right_mul(&self, idx: usize, i: usize) -> usize {
        self.right[idx][i]
    }

    pub fn longest_element(&self) -> Result<&WeylElement, RootSystemError> {
        longest_element(&self.elements)
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        self.datum
            .positive_roots()
            .iter()
            .filter(|b| self.datum.is_negative_root(&Weight(w.matrix.apply(&b.0))))
            .count()
    }

    pub fn has_right_descent(&self, idx: usize, i: usize) -> bool {
        self.elements[self.right[idx][i]].length < self.elements[idx].length
    }

    /// Product `u * v` by walking the reduced word of `v`.
    pub fn multiply(&self, u: &WeylElement, v: &WeylElement) -> Result<&WeylElement, RootSystemError> {
        let mut k = self.require(u)?;
        self.require(v)?;
        for &i in &v.word {
            k = self.right[k][i];
        }
        Ok(&self.elements[k])
    }

    pub fn act_weight(&self, w: &WeylElement, mu: &Weight) -> Result<Weight, RootSystemError> {
        w.act_weight(mu)
    }

    pub fn act_coweight(&self, w: &WeylElement, lam: &Coweight) -> Result<Coweight, RootSystemError> {
        w.act_coweight(lam)
    }

    /// Returns `(lam_plus, w)` with `lam_plus` dominant and `w * lam = lam_plus`.
    pub fn dominant_representative(
        &self,
        lam: &Coweight,
    ) -> Result<(Coweight, &WeylElement), RootSystemError> {
        self.datum.check_coweight(lam)?;
        let mut cur = lam.clone();
        let mut w = 0usize;
        loop {
            let pairings = self.datum.simple_root_pairings(&cur);
            match pairings.iter().position(|&p| p < 0) {
                Some(i) => {
                    cur = self.datum.reflect_coweight(i, &cur);
                    w = self.left[w][i];
                }
                None => return Ok((cur, &self.elements[w])),
            }
        }
    }

    /// Minimal-length representatives of `W / W_P`, where `W_P` is generated
    /// by the simple reflections in `parabolic`.
    pub fn coset_representatives(
        &self,
        parabolic: &BTreeSet<usize>,
    ) -> Result<Vec<&WeylElement>, RootSystemError> {
        self.datum.check_indices(parabolic)?;
        Ok((0..self.order())
            .filter(|&k| parabolic.iter().all(|&i| !self.has_right_descent(k, i)))
            .map(|k| &self.elements[k])
            .collect())
    }

    /// Bruhat order, decided by descent recursion: for a right descent `s`
    /// of `v`, `u <= v` iff `us <= vs` when `s` is also a descent of `u`,
    /// and iff `u <= vs` otherwise.
    pub fn bruhat_leq(&self, u: &WeylElement, v: &WeylElement) -> Result<bool, RootSystemError> {
        let u = self.require(u)?;
        let v = self.require(v)?;
        Ok(self.bruhat_leq_idx(u, v))
    }

    pub fn bruhat_leq_idx(&self, mut u: usize, mut v: usize) -> bool {
        loop {
            let (lu, lv) = (self.elements[u].length, self.elements[v].length);
            if lu > lv {
                return false;
            }
            if lv == 0 {
                return lu == 0;
            }
            if u == v {
                return true;
            }
            let i = *self.elements[v].word.last().unwrap();
            if self.has_right_descent(u, i) {
                u = self.right[u][i];
            }
            v = self.right[v][i];
        }
    }
}

/// Generates the Weyl group of `datum`.
pub fn generate_weyl(datum: &RootDatum) -> WeylGroup {
    WeylGroup::generate(datum)
}

#[cfg(test)]
mod tests {
    use super::super::build_root_datum;
    use super::*;

    fn group(s: &str) -> WeylGroup {
        WeylGroup::generate(&build_root_datum(s.parse().unwrap()).unwrap())
    }

    #[test]
    fn small_orders() {
        assert_eq!(group("A1").order(), 2);
        assert_eq!(group("A2").order(), 6);
        assert_eq!(group("B2").order(), 8);
    }

    #[test]
    fn longest_lengths() {
        let a1 = group("A1");
        let w0 = a1.longest_element().unwrap();
        assert_eq!((w0.length(), w0.label()), (1, "s1".to_string()));
        assert_eq!(group("A2").longest_element().unwrap().length(), 3);
        assert_eq!(group("B2").longest_element().unwrap().length(), 4);
    }

    #[test]
    fn longest_element_needs_unique_max() {
        let g = group("A2");
        let partial: Vec<WeylElement> = g.elements()[..5].to_vec();
        assert_eq!(
            longest_element(&partial).unwrap_err(),
            RootSystemError::IncompleteGroup
        );
        assert_eq!(longest_element(&[]).unwrap_err(), RootSystemError::IncompleteGroup);
    }

    #[test]
    fn actions() {
        let a1 = group("A1");
        let s = a1.element(1);
        let alpha = Weight(vec![2]);
        assert_eq!(a1.identity().act_weight(&alpha).unwrap(), alpha);
        assert_eq!(s.act_weight(&alpha).unwrap(), Weight(vec![-2]));

        let a2 = group("A2");
        let w0 = a2.longest_element().unwrap();
        assert_eq!(w0.act_weight(&Weight(vec![1, 0])).unwrap(), Weight(vec![0, -1]));
        assert!(w0.act_weight(&Weight(vec![1])).is_err());
        assert!(w0.act_coweight(&Coweight(vec![1, 0, 0])).is_err());
    }

    #[test]
    fn dominant_representative_basics() {
        let a1 = group("A1");
        let (lam, w) = a1.dominant_representative(&Coweight(vec![-1])).unwrap();
        assert_eq!(lam, Coweight(vec![1]));
        assert_eq!(w.label(), "s1");
        let (lam, w) = a1.dominant_representative(&Coweight(vec![3])).unwrap();
        assert_eq!(lam, Coweight(vec![3]));
        assert!(w.is_identity());
    }

    #[test]
    fn cosets_of_a2() {
        let g = group("A2");
        let all: BTreeSet<usize> = [0, 1].into();
        let reps = g.coset_representatives(&all).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(reps[0].is_identity());
        assert_eq!(g.coset_representatives(&BTreeSet::new()).unwrap().len(), 6);
        assert_eq!(g.coset_representatives(&[0].into()).unwrap().len(), 3);
        assert!(matches!(
            g.coset_representatives(&[2].into()),
            Err(RootSystemError::IndexOutOfRange { index: 2, rank: 2 })
        ));
    }

    #[test]
    fn bruhat_examples_in_a2() {
        let g = group("A2");
        let by_label = |l: &str| g.elements().iter().find(|w| w.label() == l).unwrap();
        let (s1, s2, s1s2) = (by_label("s1"), by_label("s2"), by_label("s1s2"));
        assert!(g.bruhat_leq(s1, s1s2).unwrap());
        assert!(!g.bruhat_leq(s1, s2).unwrap());
        for w in g.elements() {
            assert!(g.bruhat_leq(g.identity(), w).unwrap());
            assert!(g.bruhat_leq(w, w).unwrap());
        }
    }

    #[test]
    fn words_are_lexicographically_minimal() {
        let g = group("A2");
        let labels: Vec<String> = g.elements().iter().map(|w| w.label()).collect();
        assert_eq!(labels, ["e", "s1", "s2", "s1s2", "s2s1", "s1s2s1"]);
    }
}
