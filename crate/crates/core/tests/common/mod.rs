//! Independent oracles shared by the integration tests and the acceptance
//! suite. Nothing here calls into the library's Weyl group, Bruhat order,
//! orbit or enumeration code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

pub type Mat = Vec<Vec<i64>>;

/// Hand-written Cartan matrices, `c[i][j] = <alpha_i^vee, alpha_j>`.
pub fn cartan(name: &str) -> Mat {
    match name {
        "A1" => vec![vec![2]],
        "A2" => vec![vec![2, -1], vec![-1, 2]],
        "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        "B2" => vec![vec![2, -1], vec![-2, 2]],
        "C2" => vec![vec![2, -2], vec![-1, 2]],
        "G2" => vec![vec![2, -3], vec![-1, 2]],
        "B3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
        "C3" => vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]],
        other => panic!("no oracle Cartan matrix for {other}"),
    }
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Simple reflection on fundamental-weight coordinates:
/// `s_i(m) = m - m_i * (column i of the Cartan matrix)`.
pub fn reflection(c: &Mat, i: usize) -> Mat {
    let n = c.len();
    let mut s = identity(n);
    for (row, s_row) in s.iter_mut().enumerate() {
        s_row[i] -= c[row][i];
    }
    s
}

pub fn apply(m: &Mat, v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// The group generated by the simple reflections, by closure with
/// matrix deduplication. Returns each element with its Cayley-graph
/// distance from the identity.
pub fn weyl_closure(c: &Mat) -> Vec<(Mat, usize)> {
    let n = c.len();
    let gens: Vec<Mat> = (0..n).map(|i| reflection(c, i)).collect();
    let mut dist: HashMap<Mat, usize> = HashMap::from([(identity(n), 0)]);
    let mut order = vec![identity(n)];
    let mut queue = VecDeque::from([identity(n)]);
    while let Some(m) = queue.pop_front() {
        let d = dist[&m];
        for g in &gens {
            let next = mat_mul(&m, g);
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    order.into_iter().map(|m| {
        let d = dist[&m];
        (m, d)
    }).collect()
}

pub fn word_matrix(c: &Mat, word: &[usize]) -> Mat {
    word.iter().fold(identity(c.len()), |acc, &i| mat_mul(&acc, &reflection(c, i)))
}

/// Subword criterion: `u <= v` iff some subword of a reduced word of `v`
/// multiplies to `u`.
pub fn bruhat_subword(c: &Mat, u: &[usize], v_reduced: &[usize]) -> bool {
    let target = word_matrix(c, u);
    let l = v_reduced.len();
    (0u32..(1 << l)).any(|mask| {
        let sub: Vec<usize> = (0..l).filter(|k| mask & (1 << k) != 0).map(|k| v_reduced[k]).collect();
        word_matrix(c, &sub) == target
    })
}

/// Lengths of minimal coset representatives of `W/W_P`: the orbit of
/// `sum_{i not in P} omega_i` has stabilizer `W_P`, so each orbit point is a
/// coset and its length is the least length of an element reaching it.
pub fn coset_lengths(c: &Mat, parabolic: &BTreeSet<usize>) -> Vec<usize> {
    let n = c.len();
    let rho_p: Vec<i64> = (0..n).map(|i| i64::from(!parabolic.contains(&i))).collect();
    let mut best: HashMap<Vec<i64>, usize> = HashMap::new();
    for (m, d) in weyl_closure(c) {
        let p = apply(&m, &rho_p);
        let e = best.entry(p).or_insert(d);
        *e = (*e).min(d);
    }
    let mut v: Vec<usize> = best.into_values().collect();
    v.sort_unstable();
    v
}

/// `sum_{w in W/W_P} q^{2 l(w)}` as exponent to coefficient.
pub fn poincare_oracle(c: &Mat, parabolic: &BTreeSet<usize>) -> std::collections::BTreeMap<u32, u64> {
    let mut out = std::collections::BTreeMap::new();
    for l in coset_lengths(c, parabolic) {
        *out.entry(2 * l as u32).or_insert(0) += 1;
    }
    out
}

/// Weyl orbit of a weight (fundamental-weight coordinates).
pub fn weight_orbit(c: &Mat, w: &[i64]) -> BTreeSet<Vec<i64>> {
    weyl_closure(c).iter().map(|(m, _)| apply(m, w)).collect()
}

/// Lowest weight of the orbit: the unique orbit point that is
/// antidominant.
pub fn lowest_weight(c: &Mat, alpha: &[i64]) -> Vec<i64> {
    weight_orbit(c, alpha)
        .into_iter()
        .find(|w| w.iter().all(|&x| x <= 0))
        .expect("every orbit has an antidominant point")
}

/// Level of `t^mu`: `max over the orbit of xi = -w0 alpha` of `<mu, nu>`.
/// Coweights are in simple-coroot coordinates, so the pairing with a weight
/// in fundamental-weight coordinates is a dot product.
pub fn gr_level(c: &Mat, alpha: &[i64], mu: &[i64]) -> i64 {
    let xi: Vec<i64> = lowest_weight(c, alpha).iter().map(|x| -x).collect();
    weight_orbit(c, &xi)
        .iter()
        .map(|nu| nu.iter().zip(mu).map(|(a, b)| a * b).sum::<i64>())
        .max()
        .unwrap()
}

/// Count of coweights of level at most `n` in the box `[-b, b]^r`.
pub fn gr_box_scan(c: &Mat, alpha: &[i64], n: i64, b: i64) -> BTreeSet<Vec<i64>> {
    let r = c.len();
    let side = 2 * b + 1;
    let mut out = BTreeSet::new();
    for k in 0..side.pow(r as u32) {
        let mut rest = k;
        let mu: Vec<i64> = (0..r)
            .map(|_| {
                let x = rest % side - b;
                rest /= side;
                x
            })
            .collect();
        if gr_level(c, alpha, &mu) <= n {
            out.insert(mu);
        }
    }
    out
}

fn det(m: &Mat) -> i64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Mat = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

/// Whether `v = sum_j a_j alpha_j` with all `a_j` non-negative integers
/// (Cramer's rule on `C a = v`).
fn in_root_cone(c: &Mat, v: &[i64]) -> bool {
    let d = det(c);
    (0..c.len()).all(|j| {
        let mut cj = c.clone();
        for (row, x) in cj.iter_mut().zip(v) {
            row[j] = *x;
        }
        let num = det(&cj);
        num % d == 0 && num / d >= 0
    })
}

/// Weight support of the irreducible representation with highest weight
/// `alpha`: Weyl orbits of the dominant `mu` with `alpha - mu` in the
/// positive root cone.
pub fn rep_weights(c: &Mat, alpha: &[i64]) -> BTreeSet<Vec<i64>> {
    let r = c.len();
    let bound = alpha.iter().sum::<i64>().max(1);
    let side = bound + 1;
    let mut out = BTreeSet::new();
    for k in 0..side.pow(r as u32) {
        let mut rest = k;
        let mu: Vec<i64> = (0..r)
            .map(|_| {
                let x = rest % side;
                rest /= side;
                x
            })
            .collect();
        let diff: Vec<i64> = alpha.iter().zip(&mu).map(|(a, m)| a - m).collect();
        if in_root_cone(c, &diff) {
            out.extend(weight_orbit(c, &mu));
        }
    }
    out
}

/// Every maximal-first ordering of a poset given by `leq[a][b]`.
pub fn all_linear_extensions(leq: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn go(leq: &[Vec<bool>], used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = leq.len();
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if used[i] {
                continue;
            }
            let maximal = (0..n).all(|j| used[j] || j == i || !leq[i][j]);
            if maximal {
                used[i] = true;
                cur.push(i);
                go(leq, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(leq, &mut vec![false; leq.len()], &mut Vec::new(), &mut out);
    out
}

/// Reflexive-transitive closure of a relation given as cover pairs.
pub fn closure(n: usize, covers: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in covers {
        leq[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    leq
}

pub fn distinct<T: std::hash::Hash + Eq + Clone>(items: &[T]) -> bool {
    items.iter().cloned().collect::<HashSet<_>>().len() == items.len()
}
