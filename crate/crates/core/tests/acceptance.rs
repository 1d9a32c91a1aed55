//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use eqcoh::bb::module_structure;
use eqcoh::flag::{flag_model, FlagSpec};
use eqcoh::grassmannian::AffineGrassmannian;
use eqcoh::rings::{
    euler, euler_h, euler_k, euler_mu, euler_product, specialize_fgl, FglTruncation, LaurentPolynomial,
    RingElement, Specialization, Theory,
};
use eqcoh::root_system::{build_root_datum, Weight, WeylGroup};
use eqcoh::stratification::{assemble_module, assemble_module_along, PoincareSeries, StratificationError, StratumPoset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:.2?}, limit {limit:?}"))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    for (name, order) in [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24)] {
        let ours = WeylGroup::generate(&build_root_datum(name.parse().unwrap()).map_err(|e| e.to_string())?).order();
        let oracle = common::weyl_closure(&common::cartan(name)).len();
        ensure(ours == order && oracle == order, || format!("{name}: ours {ours}, oracle {oracle}, want {order}"))?;
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("Weyl orders A1 A2 B2 G2 A3 = 2 6 8 12 24 in {:.2?}", start.elapsed()))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let mut cases = 0;
    for (name, rank) in [("A2", 2), ("B2", 2), ("A3", 3)] {
        let c = common::cartan(name);
        for p in std::iter::once(BTreeSet::new()).chain((0..rank).map(|i| BTreeSet::from([i]))) {
            let expected = common::poincare_oracle(&c, &p);
            let cosets: u64 = expected.values().sum();
            let fs = FlagSpec::new(name.parse().unwrap(), p.iter().copied()).map_err(|e| e.to_string())?;
            let model = flag_model(&fs).map_err(|e| e.to_string())?;
            let ms = module_structure(&model, Theory::H).map_err(|e| e.to_string())?;
            let rank_found = ms.decomposition.rank() as u64;
            ensure(rank_found == cosets, || format!("{name} {p:?}: rank {rank_found}, |W/W_P| {cosets}"))?;
            let series = ms.decomposition.poincare_series();
            ensure(series == PoincareSeries(expected.clone()), || {
                format!("{name} {p:?}: series {series}, oracle {}", PoincareSeries(expected))
            })?;
            cases += 1;
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("{cases} flag varieties: ranks and Poincare series match in {:.2?}", start.elapsed()))
}

fn gr(name: &str, alpha: &[i64]) -> Result<AffineGrassmannian, String> {
    AffineGrassmannian::new(name.parse().unwrap(), Weight::new(alpha.to_vec())).map_err(|e| e.to_string())
}

fn level_set(g: &AffineGrassmannian, n: u32) -> Result<BTreeSet<Vec<i64>>, String> {
    Ok(g.fixed_points(n).map_err(|e| e.to_string())?.into_iter().map(|p| p.coweight.0).collect())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let a1 = gr("A1", &[1])?;
    for n in 0..=10u32 {
        let count = a1.level_count(n).map_err(|e| e.to_string())?;
        ensure(count == 2 * n as usize + 1, || format!("A1 level {n}: {count}"))?;
    }
    let a2 = gr("A2", &[1, 0])?;
    let c = common::cartan("A2");
    let mut prev = BTreeSet::new();
    for n in 0..=5u32 {
        let ours = level_set(&a2, n)?;
        let oracle = common::gr_box_scan(&c, &[1, 0], n as i64, 3 * n as i64 + 3);
        ensure(ours == oracle, || format!("A2 level {n}: {} vs oracle {}", ours.len(), oracle.len()))?;
        ensure(prev.is_subset(&ours), || format!("A2 level {n} does not contain level {}", n.saturating_sub(1)))?;
        prev = ours;
    }
    let mut prev = BTreeSet::new();
    for n in 0..=10u32 {
        let cur = level_set(&a1, n)?;
        ensure(prev.is_subset(&cur), || format!("A1 level {n} not nested"))?;
        prev = cur;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("A1 counts 2n+1 (n<=10), A2 box scan (n<=5), nesting in {:.2?}", start.elapsed()))
}

fn random_multiset(rng: &mut ChaCha8Rng, rank: usize) -> Vec<Weight> {
    let len = rng.gen_range(0..=3);
    (0..len)
        .map(|_| loop {
            let w: Vec<i64> = (0..rank).map(|_| rng.gen_range(-3..=3)).collect();
            if w.iter().any(|&x| x != 0) {
                break Weight::new(w);
            }
        })
        .collect()
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for theory in [Theory::H, Theory::K, Theory::mu()] {
        for trial in 0..200 {
            let rank = rng.gen_range(1..=3);
            let a = random_multiset(&mut rng, rank);
            let b = random_multiset(&mut rng, rank);
            let union: Vec<Weight> = a.iter().chain(&b).cloned().collect();
            let lhs = euler(theory, rank, &union).map_err(|e| e.to_string())?;
            let rhs = euler(theory, rank, &a)
                .and_then(|x| x.mul(&euler(theory, rank, &b)?))
                .map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("{theory} trial {trial}: Whitney fails for {a:?} and {b:?}"))?;
        }
    }
    let law = FglTruncation::universal(6).map_err(|e| e.to_string())?;
    let mut singles = 0;
    for x in -3..=3 {
        for y in -3..=3 {
            for z in -3..=3 {
                let mu = Weight::new(vec![x, y, z]);
                if mu.is_zero() {
                    continue;
                }
                let one = std::slice::from_ref(&mu);
                let k = euler_k(3, one).map_err(|e| e.to_string())?;
                let expected = &LaurentPolynomial::one(3) - &LaurentPolynomial::character(mu.coords());
                let text = format!("1 - e^{{({x},{y},{z})}}");
                ensure(k.poly == expected && k.poly.render_characters() == text, || {
                    format!("K class of {mu}: {}", k.poly.render_characters())
                })?;
                let h = euler_h(3, one).map_err(|e| e.to_string())?;
                let m = euler_mu(3, one, &law).map_err(|e| e.to_string())?;
                ensure(specialize_fgl(&m, Specialization::Additive) == RingElement::H(h), || {
                    format!("MU degree-2 part of {mu} differs from H")
                })?;
                singles += 1;
            }
        }
    }
    Ok(format!("Whitney on 3 x 200 pairs; K and MU single-weight classes on {singles} weights"))
}

fn criterion_5() -> Check {
    for d in [2, 4, 6] {
        let law = FglTruncation::universal(d).map_err(|e| e.to_string())?;
        let [x, y, z] = [0, 1, 2].map(|j| law.chern_variable(3, j));
        let zero = law.zero(3);
        let sum = |a: &_, b: &_| law.sum(a, b).map_err(|e| e.to_string());
        ensure(sum(&x, &zero)? == x && sum(&zero, &x)? == x, || format!("unit fails at D = {d}"))?;
        let left = sum(&sum(&x, &y)?, &z)?;
        let right = sum(&x, &sum(&y, &z)?)?;
        ensure(left == right, || format!("associativity fails at D = {d}"))?;
        ensure(sum(&x, &y)? == sum(&y, &x)?, || format!("commutativity fails at D = {d}"))?;
        let inverse = law.multiple(-1, &x).map_err(|e| e.to_string())?;
        ensure(sum(&x, &inverse)?.is_zero(), || format!("[-1] is not an inverse at D = {d}"))?;
    }
    Ok("unit, associativity and inverse identities at D = 2, 4, 6".into())
}

fn criterion_6() -> Check {
    let zero = Weight::new(vec![0, 0]);
    for theory in [Theory::H, Theory::K, Theory::mu()] {
        let one = euler(theory, 2, &[]).map_err(|e| e.to_string())?;
        let bad = euler_product(theory, 2, &[Weight::new(vec![1, -1]), zero.clone()]).map_err(|e| e.to_string())?;
        let poset = StratumPoset::from_covers(&["open", "closed"], &[("closed", "open")])
            .and_then(|p| p.with_payload("open", 0, one))
            .and_then(|p| p.with_payload("closed", 2, bad))
            .map_err(|e| e.to_string())?;
        let got = assemble_module(&poset, theory);
        ensure(got == Err(StratificationError::ZeroDivisorEulerClass("closed".into())), || {
            format!("{theory}: zero weight accepted: {got:?}")
        })?;
    }
    let mut shipped = 0;
    for (name, rank) in [("A1", 1), ("A2", 2), ("A3", 3), ("B2", 2), ("C2", 2), ("G2", 2), ("B3", 3), ("C3", 3)] {
        for p in std::iter::once(BTreeSet::new()).chain((0..rank).map(|i| BTreeSet::from([i]))) {
            let fs = FlagSpec::new(name.parse().unwrap(), p.iter().copied()).map_err(|e| e.to_string())?;
            let model = flag_model(&fs).map_err(|e| e.to_string())?;
            for theory in [Theory::H, Theory::K, Theory::mu()] {
                module_structure(&model, theory).map_err(|e| format!("{name} {p:?} {theory}: {e}"))?;
                shipped += 1;
            }
        }
    }
    Ok(format!("zero weight rejected in H, K, MU; {shipped} shipped flag instances assemble"))
}

fn criterion_7() -> Check {
    let start = Instant::now();
    for (name, alpha) in [("A1", &[1][..]), ("A2", &[1, 0][..])] {
        let g = gr(name, alpha)?;
        let c = common::cartan(name);
        let lim = g.limit_module(4, Theory::H).map_err(|e| e.to_string())?;
        ensure(lim.diagrams_commute(), || format!("{name}: diagrams do not commute"))?;
        ensure(lim.projections_surjective(), || format!("{name}: a restriction is not onto"))?;
        let mut prev: BTreeSet<&String> = BTreeSet::new();
        for level in &lim.levels {
            let oracle = common::gr_box_scan(&c, alpha, level.n as i64, 3 * level.n as i64 + 3).len();
            ensure(level.rank == oracle && level.labels.len() == oracle, || {
                format!("{name} level {}: rank {}, oracle count {oracle}", level.n, level.rank)
            })?;
            let labels: BTreeSet<&String> = level.labels.iter().collect();
            ensure(prev.is_subset(&labels), || format!("{name} level {}: labels not nested", level.n))?;
            prev = labels;
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("A1 and A2 up to level 4: commuting, nested, ranks match in {:.2?}", start.elapsed()))
}

fn random_poset(rng: &mut ChaCha8Rng, theory: Theory) -> Result<(StratumPoset, Vec<Vec<bool>>), String> {
    let n = rng.gen_range(1..=8);
    let density = rng.gen_range(0.15..0.6);
    let covers: Vec<(usize, usize)> =
        (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).filter(|_| rng.gen_bool(density)).collect();
    let labels: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let cover_labels: Vec<(String, String)> =
        covers.iter().map(|&(a, b)| (labels[a].clone(), labels[b].clone())).collect();
    let mut poset = StratumPoset::from_covers(&labels, &cover_labels).map_err(|e| e.to_string())?;
    for label in &labels {
        let ws = random_multiset(rng, 2);
        let e = euler(theory, 2, &ws).map_err(|e| e.to_string())?;
        poset = poset.with_payload(label, ws.len() as u32, e).map_err(|e| e.to_string())?;
    }
    Ok((poset, common::closure(n, &covers)))
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut posets = 0;
    let mut extensions = 0;
    let mut instances: Vec<(StratumPoset, Vec<Vec<bool>>, Theory)> = Vec::new();
    for k in 0..60 {
        let theory = [Theory::H, Theory::K, Theory::mu()][k % 3];
        let (p, leq) = random_poset(&mut rng, theory)?;
        instances.push((p, leq, theory));
    }
    for (name, p) in [("A2", vec![]), ("A2", vec![0]), ("B2", vec![]), ("B2", vec![1]), ("A3", vec![0, 1]), ("A1", vec![])]
    {
        let fs = FlagSpec::new(name.parse().unwrap(), p).map_err(|e| e.to_string())?;
        let model = flag_model(&fs).map_err(|e| e.to_string())?;
        let ms = module_structure(&model, Theory::K).map_err(|e| e.to_string())?;
        let poset = ms.strata.poset;
        let n = poset.len();
        let leq = (0..n).map(|a| (0..n).map(|b| poset.leq_idx(a, b)).collect()).collect();
        instances.push((poset, leq, ms.strata.theory));
    }
    for (poset, leq, theory) in &instances {
        let reference = assemble_module(poset, *theory).map_err(|e| e.to_string())?;
        for ext in common::all_linear_extensions(leq) {
            let order: Vec<&str> = ext.iter().map(|&k| poset.labels()[k].as_str()).collect();
            let dec = assemble_module_along(poset, *theory, &order).map_err(|e| e.to_string())?;
            ensure(
                dec.rank() == reference.rank()
                    && dec.shifts() == reference.shifts()
                    && dec.class_multiset() == reference.class_multiset(),
                || format!("extension {order:?} changes the decomposition"),
            )?;
            extensions += 1;
        }
        posets += 1;
    }
    Ok(format!("{posets} posets, {extensions} linear extensions, identical invariants"))
}

fn main() {
    let criteria: [(u32, fn() -> Check); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failures = 0;
    for (number, check) in criteria {
        match check() {
            Ok(summary) => println!("PASS criterion {number}: {summary}"),
            Err(reason) => {
                failures += 1;
                println!("FAIL criterion {number}: {reason}");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
