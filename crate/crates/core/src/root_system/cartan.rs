use std::collections::BTreeSet;

use super::{Family, IntMatrix, RootSystemError, RootSystemSpec};

/// Cartan matrix in Bourbaki numbering, `c[i][j] = <alpha_i^vee, alpha_j>`.
pub(super) fn cartan_matrix(spec: RootSystemSpec) -> Result<IntMatrix, RootSystemError> {
    let r = spec.rank;
    let mut c = vec![vec![0i64; r]; r];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match spec.family {
        Family::A => {
            for i in 0..r.saturating_sub(1) {
                link(i, i + 1);
            }
        }
        Family::B | Family::C => {
            for i in 0..r - 1 {
                link(i, i + 1);
            }
        }
        Family::D => {
            for i in 0..r - 2 {
                link(i, i + 1);
            }
            link(r - 3, r - 1);
        }
        Family::G => link(0, 1),
        Family::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Family::E => return Err(RootSystemError::UnsupportedType(spec.to_string())),
    }
    match spec.family {
        // alpha_n short
        Family::B => c[r - 1][r - 2] = -2,
        // alpha_n long
        Family::C => c[r - 2][r - 1] = -2,
        // alpha_1 short, alpha_2 long
        Family::G => c[0][1] = -3,
        // alpha_1, alpha_2 long; alpha_3, alpha_4 short
        Family::F => c[2][1] = -2,
        _ => {}
    }
    Ok(IntMatrix::from_rows(&c))
}

/// Positive roots of the system with Cartan matrix `c`, in simple-root
/// coordinates, ordered by height and then lexicographically.
///
/// Roots are generated by closing the simple roots under simple
/// reflections; a root is positive iff all its coordinates are
/// non-negative.
pub(super) fn positive_roots_in_root_coords(c: &IntMatrix) -> Vec<Vec<i64>> {
    let r = c.dim();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    while let Some(beta) = stack.pop() {
        if !seen.insert(beta.clone()) {
            continue;
        }
        for i in 0..r {
            // s_i(beta) = beta - <alpha_i^vee, beta> alpha_i
            let k: i64 = (0..r).map(|j| c.get(i, j) * beta[j]).sum();
            let mut next = beta.clone();
            next[i] -= k;
            if !seen.contains(&next) {
                stack.push(next);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = seen
        .into_iter()
        .filter(|b| b.iter().all(|&x| x >= 0))
        .collect();
    pos.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    pos
}
