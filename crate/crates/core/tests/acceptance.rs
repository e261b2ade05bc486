//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#![allow(clippy::needless_range_loop)]

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fuzzy_nerve::epmet::{
    lp_counterexample, quotient, simplex_degeneracy, simplex_face, validate_epmet, Distance, FiniteEPMet,
    MetricSimplexL1, Partition,
};
use fuzzy_nerve::fuzzy::{functor_c, functor_m, ClassicalFuzzySet, TConorm};
use fuzzy_nerve::realization::{adjunction_check, fin_metric_realize, fin_singular_nerve, one_skeleton};
use fuzzy_nerve::umap::{nerve_bridge_check, pair_gradient, pair_loss, umap, Dataset, Embedding, UmapParams};
use fuzzy_nerve::TruncatedSimplicialFuzzySet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

fn tuple(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn c1_level_table() -> Outcome {
    let x = ClassicalFuzzySet::new([("x", 1.0 / 3.0), ("y", 1.0 / 3.0), ("z", 0.5), ("w", 1.0)])
        .map_err(|e| e.to_string())?;
    let s = functor_m(&x);
    let got: Vec<(f64, Vec<String>)> = s
        .levels()
        .iter()
        .map(|l| {
            let mut set = l.set.clone();
            set.sort();
            (l.a, set)
        })
        .collect();
    let want = vec![(1.0, tuple(&["w"])), (0.5, tuple(&["w", "z"])), (1.0 / 3.0, tuple(&["w", "x", "y", "z"]))];
    ensure(got == want, || format!("levels {got:?}"))?;
    ensure(functor_c(&s) == x, || "functor_C does not invert functor_M".into())?;
    Ok("levels (1,{w}), (1/2,{w,z}), (1/3,{w,z,x,y}); round trip exact".into())
}

fn random_barycentric(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..=n).map(|_| -rng.random_range(f64::EPSILON..1.0).ln()).collect();
    let s: f64 = raw.iter().sum();
    raw.iter().map(|x| x / s).collect()
}

fn c2_lp() -> Outcome {
    let (input, output) = lp_counterexample(2.0).map_err(|e| e.to_string())?;
    ensure((input - 0.5f64.sqrt()).abs() < 1e-12, || format!("input norm {input}"))?;
    ensure((output - 1.0).abs() < 1e-12, || format!("output norm {output}"))?;
    ensure((output / input - 2.0f64.sqrt()).abs() < 1e-12, || format!("expansion {}", output / input))?;

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    for n in 1..=3 {
        let big = MetricSimplexL1::new(n, 1.0).map_err(|e| e.to_string())?;
        let small = MetricSimplexL1::new(n - 1, 1.0).map_err(|e| e.to_string())?;
        for i in 0..=n {
            for _ in 0..1000 {
                let (x, y) = (random_barycentric(&mut rng, n - 1), random_barycentric(&mut rng, n - 1));
                let (fx, fy) = (simplex_face(&x, i).unwrap(), simplex_face(&y, i).unwrap());
                let before = small.l1_distance(&x, &y).unwrap();
                let after = big.l1_distance(&fx, &fy).unwrap();
                ensure((before - after).abs() < 1e-12, || format!("face {i} on Δ^{n}: {before} -> {after}"))?;
                checked += 1;
            }
        }
        for j in 0..n {
            for _ in 0..1000 {
                let (x, y) = (random_barycentric(&mut rng, n), random_barycentric(&mut rng, n));
                let (sx, sy) = (simplex_degeneracy(&x, j).unwrap(), simplex_degeneracy(&y, j).unwrap());
                let before = big.l1_distance(&x, &y).unwrap();
                let after = small.l1_distance(&sx, &sy).unwrap();
                ensure(after <= before + 1e-12, || format!("degeneracy {j} expands: {before} -> {after}"))?;
                let norm: f64 = sx.iter().sum();
                ensure((norm - 1.0).abs() < 1e-12, || format!("degeneracy {j} changes the norm to {norm}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("p=2 expansion √2; p=1 {checked} random pairs across faces and degeneracies"))
}

const VALUES: [Distance; 5] =
    [Distance::Finite(0.0), Distance::Finite(0.5), Distance::Finite(1.0), Distance::Finite(2.0), Distance::Infinite];

fn random_epmet(rng: &mut ChaCha8Rng, n: usize) -> FiniteEPMet {
    loop {
        let mut d = vec![vec![Distance::ZERO; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = VALUES[rng.random_range(0..VALUES.len())];
                d[i][j] = v;
                d[j][i] = v;
            }
        }
        let m = FiniteEPMet::new(labels(n), d).unwrap();
        if validate_epmet(&m).is_empty() {
            return m;
        }
    }
}

fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    // restricted growth strings
    fn go(k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == n {
            out.push(cur.clone());
            return;
        }
        let top = cur.iter().copied().max().map_or(0, |m| m + 1);
        for b in 0..=top {
            cur.push(b);
            go(k + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// Infimum over ∼-paths from block `from` to block `to`, by exhaustive
/// depth-first enumeration of block-simple paths.
fn path_oracle(m: &FiniteEPMet, block: &[usize], blocks: usize, from: usize, to: usize) -> Distance {
    fn dfs(
        m: &FiniteEPMet,
        block: &[usize],
        at: usize,
        to: usize,
        cost: Distance,
        seen: &mut Vec<bool>,
        best: &mut Distance,
    ) {
        if at == to {
            *best = best.min(cost);
            return;
        }
        for p in (0..m.len()).filter(|&p| block[p] == at) {
            for q in 0..m.len() {
                let next = block[q];
                if seen[next] {
                    continue;
                }
                let c = cost + m.d(p, q);
                if !c.is_finite() {
                    continue;
                }
                seen[next] = true;
                dfs(m, block, next, to, c, seen, best);
                seen[next] = false;
            }
        }
    }
    let mut seen = vec![false; blocks];
    seen[from] = true;
    let mut best = Distance::Infinite;
    dfs(m, block, from, to, Distance::ZERO, &mut seen, &mut best);
    best
}

fn c3_quotient_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut comparisons = 0usize;
    for _ in 0..200 {
        let n = rng.random_range(1..=5);
        let m = random_epmet(&mut rng, n);
        for rgs in set_partitions(n) {
            let blocks = rgs.iter().max().unwrap() + 1;
            let groups: Vec<Vec<usize>> = (0..blocks).map(|b| (0..n).filter(|&p| rgs[p] == b).collect()).collect();
            let p = Partition::new(n, groups).map_err(|e| e.to_string())?;
            let q = quotient(&m, &p).map_err(|e| e.to_string())?;
            for a in 0..blocks {
                for b in 0..blocks {
                    let want = path_oracle(&m, &rgs, blocks, a, b);
                    ensure(q.d(a, b) == want, || format!("blocks {rgs:?} ({a},{b}): {} vs {want}", q.d(a, b)))?;
                    comparisons += 1;
                }
            }
        }
    }
    Ok(format!("200 spaces, all partitions, {comparisons} block distances match"))
}

fn c4_realization() -> Outcome {
    let edge = TruncatedSimplicialFuzzySet::from_generators(
        1,
        [(tuple(&["u"]), 1.0), (tuple(&["v"]), 1.0), (tuple(&["u", "v"]), (-1.0f64).exp())],
    )
    .map_err(|e| e.to_string())?;
    let r = fin_metric_realize(&edge).map_err(|e| e.to_string())?;
    ensure(r.space.len() == 2, || format!("{} points", r.space.len()))?;
    let d = r.space.d(0, 1).value().unwrap_or(f64::INFINITY);
    ensure((d - 1.0).abs() < 1e-12, || format!("edge distance {d}"))?;

    let e1 = (-1.0f64).exp();
    let tri = TruncatedSimplicialFuzzySet::from_generators(
        1,
        [
            (tuple(&["A"]), 1.0),
            (tuple(&["B"]), 1.0),
            (tuple(&["C"]), 1.0),
            (tuple(&["A", "B"]), e1),
            (tuple(&["B", "C"]), e1),
            (tuple(&["A", "C"]), (-3.0f64).exp()),
        ],
    )
    .map_err(|e| e.to_string())?;
    let r = fin_metric_realize(&tri).map_err(|e| e.to_string())?;
    let (a, c) = (r.space.index_of("A").unwrap(), r.space.index_of("C").unwrap());
    let dac = r.space.d(a, c).value().unwrap_or(f64::INFINITY);
    ensure((dac - 2.0).abs() < 1e-12, || format!("d(A,C) = {dac}"))?;
    Ok(format!("edge distance {d}, triangle d(A,C) = {dac}"))
}

/// Shortest-path closure of a random partial graph; disconnected pairs end
/// up at ∞.
fn random_closed_epmet(rng: &mut ChaCha8Rng, n: usize, p_edge: f64) -> FiniteEPMet {
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p_edge) {
                let w = [0.0, 0.5, 1.0, 2.0, rng.random_range(0.0..3.0)][rng.random_range(0..5)];
                d[i][j] = w;
                d[j][i] = w;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    FiniteEPMet::from_fn(labels(n), |i, j| Distance::from(d[i][j])).unwrap()
}

fn c5_one_skeleton() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut finite, mut infinite) = (0, 0);
    for _ in 0..20 {
        let n = rng.random_range(1..=6);
        let m = random_closed_epmet(&mut rng, n, 0.5);
        ensure(validate_epmet(&m).is_empty(), || "generated space is not an EPMet".into())?;
        let g = one_skeleton(&m).map_err(|e| e.to_string())?;
        let nerve = fin_singular_nerve(&m, 1).map_err(|e| e.to_string())?;
        for x in 0..n {
            for y in x + 1..n {
                match m.d(x, y) {
                    Distance::Finite(d) => {
                        ensure(g.weight(x, y) == Some((-d).exp()), || format!("weight on ({x},{y})"))?;
                        let label = format!("{}|{}", m.points()[x], m.points()[y]);
                        ensure(nerve.set.set(1).membership(&label) == Some((-d).exp()), || format!("nerve {label}"))?;
                        finite += 1;
                    }
                    Distance::Infinite => {
                        ensure(g.weight(x, y).is_none(), || format!("edge on infinite pair ({x},{y})"))?;
                        infinite += 1;
                    }
                }
            }
        }
    }
    Ok(format!("20 spaces: {finite} finite pairs weighted exp(-d), {infinite} infinite pairs without edges"))
}

fn random_simplicial(rng: &mut ChaCha8Rng) -> TruncatedSimplicialFuzzySet {
    let memberships = [1.0, (-0.5f64).exp(), (-1.0f64).exp(), 0.3, (-2.0f64).exp()];
    let n0 = rng.random_range(1..=3);
    let verts = labels(n0);
    let d = rng.random_range(0..=2);
    let mut gens: Vec<(Vec<String>, f64)> =
        verts.iter().map(|v| (vec![v.clone()], memberships[rng.random_range(0..2)])).collect();
    for k in 1..=d.min(n0 - 1) {
        for _ in 0..rng.random_range(0..=2) {
            let mut pick: Vec<usize> = (0..n0).collect();
            while pick.len() > k + 1 {
                pick.remove(rng.random_range(0..pick.len()));
            }
            gens.push((
                pick.iter().map(|&i| verts[i].clone()).collect(),
                memberships[rng.random_range(0..memberships.len())],
            ));
        }
    }
    let mut unique = std::collections::BTreeMap::new();
    for (t, m) in gens {
        let e = unique.entry(t).or_insert(m);
        *e = f64::max(*e, m);
    }
    TruncatedSimplicialFuzzySet::from_generators(d, unique).unwrap()
}

fn c6_adjunction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut summary = Vec::new();
    for inst in 0..10 {
        let s = random_simplicial(&mut rng);
        let n = rng.random_range(1..=3);
        let m = random_closed_epmet(&mut rng, n, 0.7);
        let r = adjunction_check(&s, &m).map_err(|e| format!("instance {inst}: {e}"))?;
        ensure(r.realization_maps == r.simplicial_maps && r.bijection, || format!("instance {inst}: {r:?}"))?;
        summary.push(r.realization_maps.to_string());
    }
    Ok(format!("10 instances, hom-set sizes [{}]", summary.join(", ")))
}

fn c7_conorms() -> Outcome {
    let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    for c in [TConorm::Max, TConorm::Probabilistic] {
        let v = c.check_axioms(&grid, 1e-12);
        ensure(v.is_empty(), || format!("{}: {} violations, first {:?}", c.name(), v.len(), v[0]))?;
    }
    Ok("max and probabilistic on 21^3 grid".into())
}

fn random_dataset(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Dataset {
    Dataset::new((0..n).map(|_| (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect()).collect()).unwrap()
}

fn c8_bridge() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checks = 0;
    for t in 0..20 {
        let n = rng.random_range(4..=8);
        let k = rng.random_range(1..=3);
        let dim = rng.random_range(1..=4);
        let x = random_dataset(&mut rng, n, dim);
        for i in 0..n {
            let ok = nerve_bridge_check(&x, i, k).map_err(|e| e.to_string())?;
            ensure(ok, || format!("dataset {t} (N={n}, k={k}) center {i}"))?;
            checks += 1;
        }
    }
    Ok(format!("20 datasets, {checks} centers"))
}

fn c9_gradient() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let dim = rng.random_range(1..=3);
        let w: f64 = rng.random_range(0.0..=1.0);
        let yi: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.5..1.5)).collect();
        let yj: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.5..1.5)).collect();
        let g = pair_gradient(w, &yi, &yj).ok_or("coincident points")?;
        for c in 0..dim {
            let h = 1e-6;
            let (mut p, mut m) = (yi.clone(), yi.clone());
            p[c] += h;
            m[c] -= h;
            let fd = (pair_loss(w, &p, &yj) - pair_loss(w, &m, &yj)) / (2.0 * h);
            let rel = (fd - g[c]).abs() / fd.abs().max(g[c].abs()).max(1e-8);
            worst = worst.max(rel);
        }
    }
    ensure(worst <= 1e-5, || format!("worst relative error {worst:e}"))?;
    Ok(format!("20 configurations, worst relative error {worst:.2e}"))
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = rng.random_range(f64::EPSILON..1.0);
    let v: f64 = rng.random_range(0.0..1.0);
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

fn c10_embedding() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let offset = 10.0 / 2.0f64.sqrt();
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for c in 0..3 {
        for _ in 0..20 {
            rows.push((0..10).map(|j| if j == c { offset } else { 0.0 } + 0.1 * gauss(&mut rng)).collect());
            labels.push(c);
        }
    }
    let x = Dataset::new(rows).map_err(|e| e.to_string())?;
    let p = UmapParams { d: 2, k: 5, n_epochs: 200, lr: 1.0, neg: 5, seed: 7 };
    let y = umap(&x, &p).map_err(|e| e.to_string())?;
    let again = umap(&x, &p).map_err(|e| e.to_string())?;
    let identical =
        y.coords().iter().flatten().zip(again.coords().iter().flatten()).all(|(a, b)| a.to_bits() == b.to_bits());
    ensure(identical, || "two runs differ".into())?;
    let acc = nearest_centroid_accuracy(&y, &labels);
    ensure(acc >= 0.9, || format!("recovery {acc}"))?;
    Ok(format!("nearest-centroid recovery {:.1}%, bit-identical reruns", 100.0 * acc))
}

fn nearest_centroid_accuracy(y: &Embedding, labels: &[usize]) -> f64 {
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>();
    let mut cent = vec![vec![0.0; y.dim()]; 3];
    let mut count = [0usize; 3];
    for (p, &l) in y.coords().iter().zip(labels) {
        count[l] += 1;
        for (c, v) in cent[l].iter_mut().zip(p) {
            *c += v;
        }
    }
    for (c, n) in cent.iter_mut().zip(count) {
        c.iter_mut().for_each(|v| *v /= n as f64);
    }
    let hits = y
        .coords()
        .iter()
        .zip(labels)
        .filter(|(p, &l)| (0..3).min_by(|&a, &b| dist(p, &cent[a]).total_cmp(&dist(p, &cent[b]))) == Some(l))
        .count();
    hits as f64 / labels.len() as f64
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("level table of functor_M / functor_C", Duration::from_millis(1), c1_level_table),
        ("lp counterexample and l1 face/degeneracy maps", Duration::from_secs(1), c2_lp),
        ("quotient metric equals exhaustive path enumeration", Duration::from_secs(30), c3_quotient_oracle),
        ("realization fixtures", Duration::from_secs(1), c4_realization),
        ("nerve 1-skeleton formula", Duration::from_secs(1), c5_one_skeleton),
        ("adjunction hom-set bijection", Duration::from_secs(60), c6_adjunction),
        ("conorm axiom suite", Duration::from_secs(5), c7_conorms),
        ("local graphs match nerve 1-skeletons", Duration::from_secs(10), c8_bridge),
        ("cross-entropy gradient check", Duration::from_secs(1), c9_gradient),
        ("three-cluster embedding", Duration::from_secs(30), c10_embedding),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if took <= *limit {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {took:?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("PASS criterion {}: {name}: {msg} [{took:.2?}]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {msg} [{took:.2?}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
