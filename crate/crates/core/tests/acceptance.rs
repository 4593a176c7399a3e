//! Acceptance suite: one PASS/FAIL line per criterion, at the pinned
//! tolerances and time bounds. Exits non-zero if any criterion fails.

mod common;

use std::collections::{HashMap, HashSet};
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use common::{bfs_components, floyd_warshall, frequencies, l1, moment, random_pairs, rng, zipf_stream, INF};
use nalgebra::DMatrix;
use rand::Rng;
use sketchlab::counters::{HllSketch, MorrisCounter};
use sketchlab::freq_sketches::{BloomFilter, CmSketch, CountSketch, FkEstimator, StreamModel};
use sketchlab::graph::Graph;
use sketchlab::graph_stream::{
    cc_sketch, count_triangles_moments, cut_value, keep_probability, spanner, sparsify, sparsify_with_probability,
    EdgeUpdate, MomentMode,
};
use sketchlab::pagerank::{
    combine_basis, hits, pagerank_algebraic, pagerank_iterative, pagerank_random_walk, personalized_basis,
    rank_order, simrank, ConvergenceCriterion, Norm, TransitionModel,
};
use sketchlab::samplers::L0Sampler;
use sketchlab::summaries::{haar_forward, haar_inverse, haar_threshold, l2_error, HaarTransform};
use sketchlab::HashSeed;
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

struct Check {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Check {
    Check {
        pass,
        detail: detail.into(),
    }
}

type Criterion = (u32, &'static str, u64, fn() -> Check);

const CRITERIA: [Criterion; 16] = [
    (1, "Morris expectation", 10, morris_expectation),
    (2, "Bloom filter", 5, bloom),
    (3, "Count-Min guarantee", 30, count_min),
    (4, "Count Sketch / AMS", 30, count_sketch),
    (5, "HyperLogLog", 30, hyperloglog),
    (6, "Fk estimator", 20, fk_estimator),
    (7, "L0 sampler", 20, l0_sampler),
    (8, "Spanner stretch", 20, spanner_stretch),
    (9, "Cut sparsifier", 60, sparsifier),
    (10, "Sketch connected components", 60, connected_components),
    (11, "Triangle identity", 10, triangle_identity),
    (12, "PageRank solvers", 30, pagerank_solvers),
    (13, "Random-walk PageRank", 60, random_walk_pagerank),
    (14, "SimRank and HITS", 20, simrank_hits),
    (15, "Haar synopsis", 5, haar),
    (16, "CLI determinism", 30, cli_determinism),
];

fn main() {
    let mut failed = 0;
    for (id, name, limit, run) in CRITERIA {
        let start = Instant::now();
        let c = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(limit);
        let pass = c.pass && in_time;
        failed += !pass as usize;
        println!(
            "{} {id:>2} {name}: {} [{:.2}s, limit {limit}s{}]",
            if pass { "PASS" } else { "FAIL" },
            c.detail,
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", too slow" },
        );
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn chi_square_p(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let e = total as f64 / counts.len() as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
    1.0 - ChiSquared::new((counts.len() - 1) as f64).unwrap().cdf(stat)
}

fn morris_expectation() -> Check {
    let mut r = rng(101);
    let runs = 10_000;
    let mut worst = 0.0f64;
    for n in [10u64, 100, 1000] {
        let mut sum = 0.0;
        for _ in 0..runs {
            let mut c = MorrisCounter::new();
            (0..n).for_each(|_| c.increment(&mut r));
            sum += (c.exponent() as f64).exp2();
        }
        let dev = (sum / runs as f64 / (n + 1) as f64 - 1.0).abs();
        worst = worst.max(dev);
    }
    check(worst <= 0.05, format!("max |mean 2^X / (n+1) - 1| = {worst:.4} (<= 0.05)"))
}

fn bloom() -> Check {
    let mut r = rng(202);
    let keys: Vec<u64> = (0..10_000).map(|_| r.random()).collect();
    let mut b = BloomFilter::with_expected_items(1 << 17, keys.len() as u64, HashSeed(1)).unwrap();
    keys.iter().for_each(|&k| b.insert(k));
    let misses = keys.iter().filter(|&&k| !b.contains(k)).count();

    let mut ratios = Vec::new();
    for (i, (bits, k, inserts)) in [(65_536u64, 4usize, 4_096u64), (16_384, 3, 2_000), (4_096, 5, 500)]
        .into_iter()
        .enumerate()
    {
        let mut f = BloomFilter::new(bits, k, HashSeed(10 + i as u64)).unwrap();
        let members: HashSet<u64> = (0..inserts).map(|_| r.random()).collect();
        members.iter().for_each(|&x| f.insert(x));
        let queries = 200_000;
        let mut fp = 0;
        let mut asked = 0;
        while asked < queries {
            let q: u64 = r.random();
            if members.contains(&q) {
                continue;
            }
            asked += 1;
            fp += f.contains(q) as usize;
        }
        let predicted = BloomFilter::predicted_fp_rate(bits, k, members.len() as u64);
        ratios.push(fp as f64 / queries as f64 / predicted);
    }
    let in_band = ratios.iter().all(|&x| (0.5..=2.0).contains(&x));
    check(
        misses == 0 && in_band,
        format!("false negatives {misses}; empirical/predicted FP = {ratios:.3?} (each in [0.5, 2])"),
    )
}

fn count_min() -> Check {
    let items = zipf_stream(100_000, 10_000, 1.1, 303);
    let f = frequencies(&items);
    let f1 = items.len() as f64;
    let (mut under, mut big, mut trials) = (0usize, 0usize, 0usize);
    for s in 0..100 {
        let mut cm = CmSketch::with_error(0.01, 0.01, StreamModel::CashRegister, HashSeed(s)).unwrap();
        items.iter().for_each(|&x| cm.update(x, 1).unwrap());
        for (&x, &c) in &f {
            let est = cm.query(x);
            under += (est < c) as usize;
            big += ((est - c) as f64 > 0.01 * f1) as usize;
            trials += 1;
        }
    }
    let rate = big as f64 / trials as f64;
    check(
        under == 0 && rate <= 0.02,
        format!("underestimates {under}; Pr[err > eps F1] = {rate:.5} over {trials} (<= 0.02)"),
    )
}

fn count_sketch() -> Check {
    let (eps, delta) = (0.05, 0.02);
    let items = zipf_stream(100_000, 10_000, 1.1, 404);
    let f = frequencies(&items);
    let f2 = moment(&f, 2);
    let (mut ok_points, mut points, mut ok_f2) = (0usize, 0usize, 0usize);
    let seeds = 100;
    let mut width = 0;
    for s in 0..seeds {
        let mut cs = CountSketch::with_error(eps, delta, HashSeed(s)).unwrap();
        width = cs.width();
        items.iter().for_each(|&x| cs.update(x, 1));
        for (&x, &c) in &f {
            ok_points += (((cs.point_query(x) - c) as f64).abs() <= eps * f2.sqrt()) as usize;
            points += 1;
        }
        ok_f2 += ((cs.f2() - f2).abs() / f2 <= 4.0 / (width as f64).sqrt()) as usize;
    }
    let point_rate = ok_points as f64 / points as f64;
    let f2_rate = ok_f2 as f64 / seeds as f64;
    check(
        point_rate >= 0.96 && f2_rate >= 0.9,
        format!(
            "point error <= eps sqrt(F2) in {:.4} (>= 0.96); F2 within 4/sqrt({width}) in {f2_rate:.2} (>= 0.90)",
            point_rate
        ),
    )
}

fn hyperloglog() -> Check {
    let mut rates = Vec::new();
    let mut merge_ok = true;
    for n in [1_000usize, 10_000, 100_000] {
        let mut good = 0;
        for s in 0..100u64 {
            let mut r = rng(500 + s);
            let keys: Vec<u64> = (0..n).map(|_| r.random()).collect();
            let mut h = HllSketch::new(1024, HashSeed(s)).unwrap();
            keys.iter().for_each(|&k| h.update(k));
            good += ((h.estimate() - n as f64).abs() / n as f64 <= 0.1) as usize;
            if s < 10 {
                let (mut a, mut b) = (HllSketch::new(1024, HashSeed(s)).unwrap(), HllSketch::new(1024, HashSeed(s)).unwrap());
                keys[..2 * n / 3].iter().for_each(|&k| a.update(k));
                keys[n / 3..].iter().for_each(|&k| b.update(k));
                a.merge(&b).unwrap();
                merge_ok &= a == h;
            }
        }
        rates.push(good as f64 / 100.0);
    }
    check(
        rates.iter().all(|&x| x >= 0.95) && merge_ok,
        format!("within 10% for n = 1e3, 1e4, 1e5: {rates:?} (each >= 0.95); merge == union sketch: {merge_ok}"),
    )
}

fn fk_estimator() -> Check {
    let stream = zipf_stream(1_000, 100, 1.0, 606);
    let f = frequencies(&stream);
    let seeds = 10_000u64;
    let mut worst = 0.0f64;
    for k in 1..=3 {
        let truth = moment(&f, k);
        let mut sum = 0.0;
        for s in 0..seeds {
            let mut e = FkEstimator::new(k, 1, 1, HashSeed(s)).unwrap();
            e.extend(stream.iter().copied());
            sum += e.estimate();
        }
        worst = worst.max((sum / seeds as f64 / truth - 1.0).abs());
    }
    check(worst <= 0.05, format!("max |mean X / Fk - 1| over k = 1, 2, 3: {worst:.4} (<= 0.05)"))
}

fn l0_sampler() -> Check {
    let domain = 1u64 << 20;
    let mut r = rng(707);
    let mut support = HashSet::new();
    while support.len() < 64 {
        support.insert(r.random_range(0..domain));
    }
    let support: Vec<u64> = support.into_iter().collect();
    let mut stream: Vec<(u64, i64)> = Vec::new();
    let mut truth: HashMap<u64, i64> = HashMap::new();
    for &x in &support {
        let c = r.random_range(1..6) * if r.random::<bool>() { 1 } else { -1 };
        stream.push((x, c));
        truth.insert(x, c);
    }
    for _ in 0..64 {
        let decoy = r.random_range(0..domain);
        if truth.contains_key(&decoy) {
            continue;
        }
        let c = r.random_range(1..4);
        stream.insert(r.random_range(0..stream.len()), (decoy, c));
        stream.push((decoy, -c));
    }
    let index: HashMap<u64, usize> = support.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut counts = vec![0u64; 64];
    let (mut draws, mut wrong, mut empty, mut seed) = (0, 0, 0, 0u64);
    while draws < 10_000 {
        let mut s = L0Sampler::new(domain, HashSeed(seed)).unwrap();
        seed += 1;
        stream.iter().for_each(|&(x, c)| s.update(x, c).unwrap());
        match s.sample() {
            None => empty += 1,
            Some(o) => {
                draws += 1;
                match index.get(&o.item) {
                    Some(&i) if truth[&o.item] == o.value => counts[i] += 1,
                    _ => wrong += 1,
                }
            }
        }
    }
    let p = chi_square_p(&counts);
    check(
        wrong == 0 && p >= 0.001,
        format!("wrong samples {wrong} of {draws}; chi-square p = {p:.4} (>= 0.001); empty draws {empty}"),
    )
}

fn spanner_stretch() -> Check {
    let mut r = rng(808);
    let mut violations = 0;
    let mut not_subgraph = 0;
    for _ in 0..50 {
        let n = r.random_range(10..=60);
        let pairs = random_pairs(n, r.random_range(0.05..0.4), false, &mut r);
        let g = Graph::from_edges(n, false, pairs.clone()).unwrap();
        let h = spanner(&g, 3.0).unwrap();
        let kept: Vec<(usize, usize)> = h.edges().iter().map(|e| (e.u, e.v)).collect();
        let orig: HashSet<_> = pairs.iter().collect();
        not_subgraph += kept.iter().filter(|p| !orig.contains(p)).count();
        let (dg, dh) = (floyd_warshall(n, &pairs), floyd_warshall(n, &kept));
        for u in 0..n {
            for v in 0..n {
                if dg[u][v] < INF && dh[u][v] > 3 * dg[u][v] {
                    violations += 1;
                }
            }
        }
    }
    check(
        violations == 0 && not_subgraph == 0,
        format!("stretch violations {violations}; edges outside G {not_subgraph} over 50 graphs"),
    )
}

/// Counts cuts whose mean over 1000 sparsifier draws at keep probability `p`
/// sits more than `z` standard errors from the true value, and returns the
/// fraction of (cut, draw) pairs within (1 +- 0.75) of the truth.
fn cut_statistics(g: &Graph, cuts: &[Vec<bool>], p: f64, z: f64, draw: impl Fn(u64) -> Graph) -> (usize, f64) {
    let seeds = 1_000;
    let truth: Vec<f64> = cuts.iter().map(|c| cut_value(g, c)).collect();
    let mut sums = vec![0.0; cuts.len()];
    let mut preserved = 0usize;
    for s in 0..seeds {
        let h = draw(s);
        for (i, c) in cuts.iter().enumerate() {
            let v = cut_value(&h, c);
            sums[i] += v;
            preserved += ((v - truth[i]).abs() <= 0.75 * truth[i]) as usize;
        }
    }
    let biased = cuts
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            // Each crossing edge contributes variance (1 - p) / p.
            let sigma = (truth[i] * (1.0 - p) / p / seeds as f64).sqrt();
            (sums[i] / seeds as f64 - truth[i]).abs() > z * sigma
        })
        .count();
    (biased, preserved as f64 / (cuts.len() * seeds as usize) as f64)
}

fn sparsifier() -> Check {
    let n = 16;
    let g = common::complete_graph(n);
    let mut r = rng(909);
    let mut cuts: Vec<Vec<bool>> = (0..n).map(|v| (0..n).map(|u| u == v).collect()).collect();
    while cuts.len() < n + 50 {
        let side: Vec<bool> = (0..n).map(|_| r.random()).collect();
        if side.iter().any(|&x| x) && !side.iter().all(|&x| x) {
            cuts.push(side);
        }
    }
    let p_eps = keep_probability(n, 15.0, 0.5).unwrap();
    let (biased_a, pres_a) =
        cut_statistics(&g, &cuts, p_eps, 3.0, |s| sparsify(&g, 0.5, None, HashSeed(s)).unwrap().graph);
    // At eps = 0.5 the keep probability clamps to 1 on K16, so the same
    // checks also run at p = 0.25 where sampling is real. That family of
    // tests is held to the same overall 3 sigma false-alarm rate.
    let p = 0.25;
    let alpha = 2.0 * (1.0 - Normal::standard().cdf(3.0)) / cuts.len() as f64;
    let z = Normal::standard().inverse_cdf(1.0 - alpha / 2.0);
    let (biased_b, pres_b) =
        cut_statistics(&g, &cuts, p, z, |s| sparsify_with_probability(&g, p, HashSeed(s)).unwrap());
    check(
        biased_a == 0 && biased_b == 0 && pres_a >= 0.9 && pres_b >= 0.9,
        format!(
            "K16 eps=0.5 (p={p_eps}): cuts off by > 3 sigma {biased_a}/{m}, preserved {pres_a:.3}; \
             p=0.25: off by > {z:.2} sigma {biased_b}/{m}, preserved {pres_b:.3} (>= 0.9)",
            m = cuts.len()
        ),
    )
}

fn connected_components() -> Check {
    let mut r = rng(1010);
    let (mut agree, mut merges) = (0, 0);
    let trials = 200;
    for t in 0..trials {
        let n = r.random_range(10..=100);
        let pairs = random_pairs(n, r.random_range(0.5..2.0) / n as f64, false, &mut r);
        let final_set: HashSet<(usize, usize)> = pairs.iter().copied().collect();
        let mut stream: Vec<EdgeUpdate> = Vec::new();
        for &(u, v) in &pairs {
            // Some edges arrive twice and lose one copy later.
            let extra = r.random_bool(0.3) as i64;
            stream.push(EdgeUpdate { u, v, delta: 1 + extra });
            if extra == 1 {
                stream.push(EdgeUpdate { u: v, v: u, delta: -1 });
            }
        }
        for _ in 0..n {
            let (u, v) = (r.random_range(0..n), r.random_range(0..n));
            if u != v && !final_set.contains(&(u.min(v), u.max(v))) {
                stream.insert(r.random_range(0..=stream.len()), EdgeUpdate { u, v, delta: 1 });
                stream.push(EdgeUpdate { u, v, delta: -1 });
            }
        }
        let truth = bfs_components(n, &pairs);
        let got = cc_sketch(n, stream, HashSeed(t)).unwrap();
        let mut merged = false;
        for u in 0..n {
            for v in u + 1..n {
                let (same_got, same_true) = (got.labels[u] == got.labels[v], truth[u] == truth[v]);
                merged |= same_got && !same_true;
            }
        }
        merges += merged as usize;
        let true_count = truth.iter().collect::<HashSet<_>>().len();
        agree += (got.count == true_count && !merged) as usize;
    }
    let rate = agree as f64 / trials as f64;
    check(
        rate >= 0.9 && merges == 0,
        format!("agreement {rate:.3} over {trials} streams (>= 0.9); streams with a false merge {merges}"),
    )
}

fn triangle_identity() -> Check {
    let mut r = rng(1111);
    let mut mismatches = 0;
    for _ in 0..50 {
        let n = r.random_range(3..=8);
        let pairs = random_pairs(n, r.random_range(0.2..0.9), false, &mut r);
        let a = common::adjacency_matrix(n, &pairs, false);
        let mut brute = 0u64;
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    brute += a[x][y] * a[y][z] * a[x][z];
                }
            }
        }
        let g = Graph::from_edges(n, false, pairs).unwrap();
        mismatches += (count_triangles_moments(&g, MomentMode::Exact).unwrap() != brute as f64) as usize;
    }
    check(mismatches == 0, format!("exact-moment count differs from brute force on {mismatches} of 50 graphs"))
}

/// Seven vertices labelled 1..7 (ids 0..6); vertex 3 is id 2.
fn seven_vertex_example() -> Graph {
    let edges = [(1, 2), (1, 4), (2, 1), (2, 5), (3, 6), (4, 5), (5, 7), (6, 3), (6, 4), (7, 1)];
    Graph::from_edges(7, true, edges.map(|(u, v)| (u - 1, v - 1))).unwrap()
}

fn pagerank_solvers() -> Check {
    let mut r = rng(1212);
    let crit = ConvergenceCriterion::default();
    let tight = ConvergenceCriterion::new(Norm::L1, 1e-13, 100_000).unwrap();
    let (mut worst, mut order_diffs, mut worst_lin) = (0.0f64, 0, 0.0f64);
    for _ in 0..50 {
        let n = r.random_range(2..=50);
        let pairs = random_pairs(n, r.random_range(0.02..0.3), true, &mut r);
        let g = Graph::from_edges(n, true, pairs.clone()).unwrap();
        let m = TransitionModel::new(&g, 0.85, None).unwrap();
        let a = pagerank_algebraic(&m).unwrap().scores;
        let it = pagerank_iterative(&m, &crit).scores;
        worst = worst.max(l1(&a, &it));
        order_diffs += (rank_order(&a) != rank_order(&it)) as usize;

        // Linearity is checked on the same graph with a ring added, since
        // sink rows that jump by p make pi(p) nonlinear.
        let ring = (0..n).map(|i| (i, (i + 1) % n));
        let closed = Graph::from_edges(n, true, pairs.into_iter().chain(ring)).unwrap();
        let w: Vec<f64> = (0..n).map(|_| r.random::<f64>() + 1e-3).collect();
        let total: f64 = w.iter().sum();
        let p: Vec<f64> = w.iter().map(|x| x / total).collect();
        let mp = TransitionModel::new(&closed, 0.85, Some(p.clone())).unwrap();
        let direct = pagerank_algebraic(&mp).unwrap().scores;
        let combined = combine_basis(&personalized_basis(&mp, &tight).unwrap(), &p).unwrap();
        worst_lin = worst_lin.max(l1(&direct, &combined));
    }
    let k3 = common::complete_graph(3);
    let mk3 = TransitionModel::new(&k3, 0.85, None).unwrap();
    let k3_dev = pagerank_algebraic(&mk3)
        .unwrap()
        .scores
        .into_iter()
        .chain(pagerank_iterative(&mk3, &crit).scores)
        .fold(0.0f64, |m, x| m.max((x - 1.0 / 3.0).abs()));

    let seven = seven_vertex_example();
    let mut e3 = vec![0.0; 7];
    e3[2] = 1.0;
    let pi = pagerank_algebraic(&TransitionModel::new(&seven, 0.85, Some(e3)).unwrap()).unwrap().scores;
    let order = rank_order(&pi);
    check(
        worst <= 1e-8 && order_diffs == 0 && k3_dev <= 1e-10 && worst_lin <= 1e-6 && order[0] == 2,
        format!(
            "max L1(algebraic, iterative) {worst:.2e} (<= 1e-8); rank-order mismatches {order_diffs}; \
             K3 max deviation {k3_dev:.1e}; linearity L1 {worst_lin:.1e} (<= 1e-6); \
             seven-vertex p=e3 top vertices {} then {}",
            order[0] + 1,
            order[1] + 1
        ),
    )
}

fn random_walk_pagerank() -> Check {
    let mut r = rng(1313);
    let n = 20;
    let g = Graph::from_edges(n, true, random_pairs(n, 0.15, true, &mut r)).unwrap();
    let m = TransitionModel::new(&g, 0.85, None).unwrap();
    let exact = pagerank_algebraic(&m).unwrap().scores;
    let crit = ConvergenceCriterion::new(Norm::L1, 1e-5, 50_000).unwrap();
    let mut total = 0.0;
    let mut worst_sum = 0.0f64;
    for s in 0..10 {
        let walk = pagerank_random_walk(&m, &crit, HashSeed(s)).unwrap();
        total += l1(&walk.scores, &exact);
        worst_sum = worst_sum.max((walk.scores.iter().sum::<f64>() - 1.0).abs());
    }
    // The prefix of a run is the run with a smaller round cap.
    for rounds in 1..=200 {
        let c = ConvergenceCriterion::new(Norm::L1, 1e-300, rounds).unwrap();
        let walk = pagerank_random_walk(&m, &c, HashSeed(99)).unwrap();
        worst_sum = worst_sum.max((walk.scores.iter().sum::<f64>() - 1.0).abs());
    }
    let mean = total / 10.0;
    check(
        mean <= 0.05 && worst_sum <= 1e-12,
        format!("mean L1 to algebraic over 10 seeds {mean:.4} (<= 0.05); max |sum - 1| per round {worst_sum:.1e}"),
    )
}

fn simrank_hits() -> Check {
    let mut r = rng(1414);
    let (mut diag_bad, mut range_bad) = (0, 0);
    for _ in 0..20 {
        let n = r.random_range(2..=20);
        let g = Graph::from_edges(n, true, random_pairs(n, 0.2, true, &mut r)).unwrap();
        let s = simrank(&g, 0.2, 100, 1e-12).unwrap();
        for a in 0..n {
            diag_bad += (s.get(a, a) != 1.0) as usize;
            for b in 0..n {
                range_bad += !(0.0..=1.0).contains(&s.get(a, b)) as usize;
            }
        }
    }
    let c = 0.2;
    let family = Graph::from_edges(3, true, [(0, 1), (0, 2)]).unwrap();
    let fixed = simrank(&family, c, 100, 1e-15).unwrap();
    let sibling_dev = (fixed.get(1, 2) - (1.0 - c)).abs();

    let mut hits_worst = 0.0f64;
    let mut graphs = 0;
    while graphs < 20 {
        let n = r.random_range(3..=20);
        let pairs: Vec<_> = random_pairs(n, 0.3, true, &mut r);
        if pairs.is_empty() {
            continue;
        }
        let a = DMatrix::from_fn(n, n, |i, j| pairs.contains(&(i, j)) as u8 as f64);
        let eig = (a.transpose() * &a).symmetric_eigen();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]));
        // Skip graphs whose top eigenvalue is repeated or nearly so; the
        // principal eigenvector is not unique there.
        if eig.eigenvalues[idx[1]] > 0.95 * eig.eigenvalues[idx[0]] {
            continue;
        }
        let v = eig.eigenvectors.column(idx[0]);
        let sign = if v.sum() < 0.0 { -1.0 } else { 1.0 };
        let h = hits(&Graph::from_edges(n, true, pairs).unwrap(), 1e-14, 1_000_000);
        for i in 0..n {
            hits_worst = hits_worst.max((h.authority[i] - sign * v[i]).abs());
        }
        graphs += 1;
    }
    check(
        diag_bad == 0 && range_bad == 0 && sibling_dev <= 1e-12 && hits_worst <= 1e-6,
        format!(
            "diagonal != 1: {diag_bad}; out of [0,1]: {range_bad}; sibling score - (1 - c) = {sibling_dev:.1e}; \
             HITS vs eigenvector max diff {hits_worst:.1e} on {graphs} graphs (<= 1e-6)"
        ),
    )
}

fn haar() -> Check {
    let table = [2.0, 2.0, 0.0, 2.0, 3.0, 5.0, 4.0, 4.0];
    let t = haar_forward(&table).unwrap();
    let exact: [f64; 8] = [11.0 / 4.0, -5.0 / 4.0, 0.5, 0.0, 0.0, -1.0, -1.0, 0.0];
    let bits_equal = t.coeffs.iter().zip(&exact).all(|(a, b)| a.to_bits() == b.to_bits());
    let back = haar_inverse(&t);
    let round_trip = back.iter().zip(&table).all(|(a, b)| a.to_bits() == b.to_bits());
    let kept = haar_threshold(&t, 4).unwrap();
    let ours = l2_error(&table, &haar_inverse(&kept)).unwrap();
    let mut best = f64::INFINITY;
    let mut subsets = 0;
    for mask in 0u32..256 {
        if mask.count_ones() != 4 {
            continue;
        }
        subsets += 1;
        let coeffs = (0..8).map(|i| if mask >> i & 1 == 1 { t.coeffs[i] } else { 0.0 }).collect();
        best = best.min(l2_error(&table, &haar_inverse(&HaarTransform { coeffs })).unwrap());
    }
    check(
        bits_equal && round_trip && ours <= best + 1e-12,
        format!(
            "coefficients bit-exact {bits_equal}; round trip bit-exact {round_trip}; \
             B=4 L2 error {ours:.6} vs best of {subsets} subsets {best:.6}"
        ),
    )
}

fn cli_determinism() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_owned()
    };
    let stream: String = zipf_stream(5_000, 500, 1.1, 1616).iter().map(|x| format!("{x}\n")).collect();
    let turnstile: String = (0..2_000).map(|i| format!("{} {}\n", i % 300, if i % 7 == 0 { -1 } else { 2 })).collect();
    let mut r = rng(1617);
    let edges: String = random_pairs(40, 0.15, false, &mut r)
        .iter()
        .map(|(u, v)| format!("{u} {v}\n"))
        .collect();
    let values: String = (0..64).map(|i| format!("{}\n", (i * 37 % 11) as f64 * 0.5)).collect();
    let (s, t, e, v) = (
        path("stream.txt", &stream),
        path("turnstile.txt", &turnstile),
        path("edges.txt", &edges),
        path("values.txt", &values),
    );
    let runs: Vec<Vec<&str>> = vec![
        vec!["sketch", "morris", "--copies", "20", &s],
        vec!["sketch", "fm", &s],
        vec!["sketch", "hll", &s],
        vec!["sketch", "bloom", "--query", "1", "--query", "99999", &s],
        vec!["sketch", "cm", "--turnstile", "--query", "3", "--query", "4", &t],
        vec!["sketch", "count", "--query", "3", &t],
        vec!["sketch", "f2", &t],
        vec!["sketch", "fk", "--k", "2", &s],
        vec!["graph", "spanner", &e],
        vec!["graph", "sparsify", "--epsilon", "0.5", "--lambda", "100", &e],
        vec!["graph", "cc", &e],
        vec!["graph", "triangles", &e],
        vec!["graph", "clustering", &e],
        vec!["pagerank", &e],
        vec!["pagerank", "--method", "algebraic", &e],
        vec!["pagerank", "--method", "random-walk", "--tol", "1e-4", &e],
        vec!["simrank", &e],
        vec!["hits", &e],
        vec!["summarize", "haar", "--keep", "8", &v],
        vec!["compare", "pagerank-sparsified", "--epsilon", "0.5", "--lambda", "100", &e],
    ];
    let exe = env!("CARGO_BIN_EXE_sketchlab");
    let invoke = |args: &[&str]| {
        let mut child = Command::new(exe)
            .arg("--seed")
            .arg("42")
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .unwrap();
        drop(child.stdin.take().unwrap().flush());
        child.wait_with_output().unwrap()
    };
    let mut differing = Vec::new();
    let mut failing = Vec::new();
    for args in &runs {
        let (a, b) = (invoke(args), invoke(args));
        let name = format!("{} {}", args[0], if args[0] == "sketch" || args[0] == "graph" { args[1] } else { "" });
        if !(a.status.success() && b.status.success()) {
            failing.push(name.clone());
        }
        if a.stdout != b.stdout || a.stdout.is_empty() {
            differing.push(name);
        }
    }
    check(
        differing.is_empty() && failing.is_empty(),
        format!(
            "{} invocations; differing or empty stdout {differing:?}; non-zero exit {failing:?}",
            runs.len()
        ),
    )
}
