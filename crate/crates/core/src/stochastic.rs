//! Seeded random models (random ordered matchings, ρ-regular graphs,
//! blown-up interval colourings) and finite-size evaluations of the
//! probabilistic lemmas built on them.

use std::collections::{BTreeSet, HashMap};

use num_rational::Ratio;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embedder::find_monochromatic;
use crate::error::{Error, Result};
use crate::graph::{Color, Coloring, LoopedOrderedGraph, OrderedGraph, UnorderedGraph};
use crate::patterns::permutations;
use crate::ramsey::{
    count_rho_regular, regular_count_formula, rho_regular_shape, verify_certificate, Certificate,
    CertificateKind, DegreeSequenceCounter,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed(pub u64);

/// xoshiro256** seeded through SplitMix64.
#[derive(Clone, Debug)]
pub struct Rng(Xoshiro256StarStar);

impl Rng {
    pub fn new(seed: Seed) -> Self {
        Rng(Xoshiro256StarStar::seed_from_u64(seed.0))
    }

    /// Independent stream `k` of a seed, for trial-level parallelism.
    pub fn stream(seed: Seed, k: u64) -> Self {
        Rng::new(Seed(seed.0 ^ k))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..n` by rejection, `n >= 1`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let zone = (u64::MAX / n) * n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Fisher-Yates, from the back.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }

    /// A uniform permutation of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        self.shuffle(&mut p);
        p
    }
}

/// The ordered matching on `[2n]` with edges `{i, n + π(i)}`, `π` uniform.
pub fn sample_permutation_matching(n: usize, seed: Seed) -> Result<OrderedGraph> {
    if n == 0 {
        return Err(Error::invalid("matching size must be positive"));
    }
    let pi = Rng::new(seed).permutation(n);
    matching_of_permutation(&pi)
}

/// `pi` is 0-based.
pub fn matching_of_permutation(pi: &[usize]) -> Result<OrderedGraph> {
    let n = pi.len();
    OrderedGraph::from_edges(2 * n, pi.iter().enumerate().map(|(i, &p)| (i + 1, n + p + 1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegularMode {
    /// Uniform over all ρ-regular graphs on `[n]`.
    Exact,
    /// Uniform high-degree set, then the configuration model with rejection.
    Configuration,
}

const CONFIGURATION_ATTEMPTS: u32 = 1_000_000;

/// Degrees for one choice of high-degree vertices: a uniform subset of
/// `high_count` vertices gets `low_degree + 1`.
fn sample_degrees(rng: &mut Rng, n: usize, low: usize, high_count: usize) -> Vec<u8> {
    let perm = rng.permutation(n);
    let mut degrees = vec![low as u8; n];
    for &v in &perm[..high_count] {
        degrees[v] += 1;
    }
    degrees
}

/// A random ρ-regular graph on `[n]`: degrees in `{floor ρ, floor ρ + 1}`
/// summing to `ceil(ρn)`.
pub fn sample_rho_regular(rho: Ratio<u64>, n: usize, seed: Seed, mode: RegularMode) -> Result<UnorderedGraph> {
    let shape = rho_regular_shape(rho, n)?;
    if shape.low_degree + usize::from(shape.high_count > 0) >= n.max(1) && shape.degree_sum > 0 {
        return Err(Error::invalid(format!("no ρ-regular graph on {n} vertices")));
    }
    let mut rng = Rng::new(seed);
    match mode {
        RegularMode::Exact => {
            if n > 8 {
                return Err(Error::invalid("exact sampling is limited to n <= 8"));
            }
            // every choice of high-degree set admits the same number of graphs
            let degrees = sample_degrees(&mut rng, n, shape.low_degree, shape.high_count);
            let mut counter = DegreeSequenceCounter::default();
            let total = counter.count(&degrees);
            let total = u64::try_from(total).map_err(|_| Error::invalid("count exceeds 64 bits"))?;
            if total == 0 {
                return Err(Error::invalid(format!("no ρ-regular graph on {n} vertices")));
            }
            let rank = rng.below(total);
            let edges = counter.unrank(&degrees, u128::from(rank)).expect("rank below count");
            UnorderedGraph::from_edges(n, edges)
        }
        RegularMode::Configuration => {
            for _ in 0..CONFIGURATION_ATTEMPTS {
                let degrees = sample_degrees(&mut rng, n, shape.low_degree, shape.high_count);
                let mut stubs: Vec<usize> = degrees
                    .iter()
                    .enumerate()
                    .flat_map(|(v, &d)| std::iter::repeat_n(v + 1, d as usize))
                    .collect();
                rng.shuffle(&mut stubs);
                let mut edges = BTreeSet::new();
                let simple = stubs.chunks(2).all(|p| p[0] != p[1] && edges.insert((p[0].min(p[1]), p[0].max(p[1]))));
                if simple {
                    return UnorderedGraph::from_edges(n, edges);
                }
            }
            Err(Error::invalid("configuration model kept producing loops or multi-edges"))
        }
    }
}

/// Total-variation distance between the empirical distribution of
/// `samples` draws in `mode` and the uniform distribution over all
/// ρ-regular graphs on `[n]`.
pub fn regular_mode_tv_distance(rho: Ratio<u64>, n: usize, samples: u64, seed: Seed, mode: RegularMode) -> Result<f64> {
    let total = count_rho_regular(rho, n)?.exact_count;
    if samples == 0 || total == 0 {
        return Err(Error::invalid("need samples and at least one graph"));
    }
    let draws: Vec<Vec<(usize, usize)>> = (0..samples)
        .into_par_iter()
        .map(|k| sample_rho_regular(rho, n, Seed(seed.0 ^ k), mode).map(|g| g.edges().collect()))
        .collect::<Result<_>>()?;
    let mut freq: HashMap<Vec<(usize, usize)>, u64> = HashMap::new();
    for d in draws {
        *freq.entry(d).or_default() += 1;
    }
    let uniform = 1.0 / total as f64;
    let seen: f64 = freq.values().map(|&c| (c as f64 / samples as f64 - uniform).abs()).sum();
    let unseen = (total - freq.len() as u128) as f64 * uniform;
    Ok((seen + unseen) / 2.0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlownUpColoring {
    /// The red pairs `{i, j}`, `i <= j <= t`; every other pair is blue.
    pub reduced: LoopedOrderedGraph,
    /// The colouring of `K_{st}` with intervals of size `s`.
    pub coloring: Coloring,
    pub interval_size: usize,
}

/// Colours every pair `{i, j}`, `1 <= i <= j <= t`, by a fair coin in
/// lexicographic order, then gives each edge of `K_{st}` the colour of the
/// pair of intervals containing its endpoints.
pub fn blown_up_random_coloring(t: usize, s: usize, seed: Seed) -> Result<BlownUpColoring> {
    if t == 0 || s == 0 {
        return Err(Error::invalid("t and s must be positive"));
    }
    let mut rng = Rng::new(seed);
    let mut reduced = LoopedOrderedGraph::new(t);
    for i in 1..=t {
        for j in i..=t {
            if rng.coin() {
                reduced.insert(i, j)?;
            }
        }
    }
    let coloring = expand_reduced(&reduced, s);
    Ok(BlownUpColoring {
        reduced,
        coloring,
        interval_size: s,
    })
}

fn expand_reduced(reduced: &LoopedOrderedGraph, s: usize) -> Coloring {
    Coloring::from_fn(reduced.n() * s, |a, b| {
        if reduced.has_edge((a - 1) / s + 1, (b - 1) / s + 1) {
            Color::Red
        } else {
            Color::Blue
        }
    })
}

/// Disjoint sets on each side of a random matching on `[2n]` and the pairs
/// of sets that must stay edge-free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSetQuery {
    /// Subsets of `[n]`.
    pub x_sets: Vec<Vec<usize>>,
    /// Subsets of `n+1..=2n`.
    pub y_sets: Vec<Vec<usize>>,
    /// 1-based pairs `(i, j)` of an x-set and a y-set.
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairProbability {
    pub n: usize,
    /// Probability over uniform π that every listed pair stays edge-free.
    pub exact: Ratio<u64>,
    pub d: usize,
    pub r: usize,
    /// Smallest x-set size times smallest y-set size.
    pub s: usize,
    pub z: usize,
    /// `exp(-S z^2 / n)` with the above `S`.
    pub bound: f64,
}

fn check_sets(sets: &[Vec<usize>], range: std::ops::RangeInclusive<usize>, side: &str) -> Result<()> {
    let mut seen = BTreeSet::new();
    for set in sets {
        for &v in set {
            if !range.contains(&v) {
                return Err(Error::invalid(format!("{side} element {v} outside {range:?}")));
            }
            if !seen.insert(v) {
                return Err(Error::invalid(format!("{side} sets overlap at {v}")));
            }
        }
    }
    Ok(())
}

/// Largest integer `z` with `z <= (3d - sqrt(9d^2 - 8r)) / 4`, in integers.
pub fn lemma_z(d: usize, r: usize) -> Option<usize> {
    let (d, r) = (d as i128, r as i128);
    let disc = 9 * d * d - 8 * r;
    if disc < 0 {
        return None;
    }
    let mut z = 0;
    while 3 * d - 4 * (z + 1) >= 0 && disc <= (3 * d - 4 * (z + 1)).pow(2) {
        z += 1;
    }
    Some(z as usize)
}

/// Exact probability by enumeration of all `n!` permutations, next to the
/// lemma's bound.
pub fn matching_pair_probability(q: &PairSetQuery, n: usize) -> Result<PairProbability> {
    if n == 0 || n > 8 {
        return Err(Error::invalid("exact enumeration needs 1 <= n <= 8"));
    }
    check_sets(&q.x_sets, 1..=n, "left")?;
    check_sets(&q.y_sets, n + 1..=2 * n, "right")?;
    let d = q.x_sets.len();
    if q.y_sets.len() != d {
        return Err(Error::invalid("left and right collections must have the same size"));
    }
    for &(i, j) in &q.pairs {
        if i == 0 || j == 0 || i > d || j > d {
            return Err(Error::invalid(format!("pair ({i}, {j}) out of range")));
        }
    }
    let pairs: BTreeSet<(usize, usize)> = q.pairs.iter().copied().collect();
    // forbidden[x] = right positions x must avoid
    let mut forbidden = vec![BTreeSet::new(); n + 1];
    for &(i, j) in &pairs {
        for &x in &q.x_sets[i - 1] {
            forbidden[x].extend(q.y_sets[j - 1].iter().copied());
        }
    }
    let perms = permutations(n);
    let good = perms
        .iter()
        .filter(|p| (1..=n).all(|x| !forbidden[x].contains(&(n + p[x - 1] + 1))))
        .count();
    let min_len = |sets: &[Vec<usize>]| sets.iter().map(Vec::len).min().unwrap_or(0);
    let s = min_len(&q.x_sets) * min_len(&q.y_sets);
    let r = pairs.len();
    let z = lemma_z(d, r).unwrap_or(0);
    Ok(PairProbability {
        n,
        exact: Ratio::new(good as u64, perms.len() as u64),
        d,
        r,
        s,
        z,
        bound: (-(s as f64) * (z * z) as f64 / n as f64).exp(),
    })
}

/// A fixed family of queries: for `2 <= n <= max_n`, `d` consecutive
/// x-sets of size `x` and y-sets of size `y` packed from the left of each
/// side, with `T` the first `r` index pairs in lexicographic order.
pub fn pair_query_corpus(max_n: usize) -> Vec<(usize, PairSetQuery)> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for d in 1..=3usize {
            for x in 1..=n / d {
                for y in 1..=n / d {
                    let x_sets = (0..d).map(|i| (i * x + 1..=(i + 1) * x).collect()).collect::<Vec<_>>();
                    let y_sets = (0..d).map(|i| (n + i * y + 1..=n + (i + 1) * y).collect()).collect::<Vec<_>>();
                    let all: Vec<(usize, usize)> = (1..=d).flat_map(|i| (1..=d).map(move |j| (i, j))).collect();
                    for r in 1..=all.len() {
                        out.push((
                            n,
                            PairSetQuery {
                                x_sets: x_sets.clone(),
                                y_sets: y_sets.clone(),
                                pairs: all[..r].to_vec(),
                            },
                        ));
                    }
                }
            }
        }
    }
    out
}

fn side_of(parts: &[Vec<usize>], n: usize) -> Result<Vec<usize>> {
    let mut owner = vec![usize::MAX; n + 1];
    for (k, part) in parts.iter().enumerate() {
        for &v in part {
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if owner[v] != usize::MAX {
                return Err(Error::invalid(format!("vertex {v} lies in two parts")));
            }
            owner[v] = k;
        }
    }
    if let Some(v) = (1..=n).find(|&v| owner[v] == usize::MAX) {
        return Err(Error::invalid(format!("vertex {v} is in no part")));
    }
    Ok(owner)
}

fn coverage(owner: &[usize], edges: impl Iterator<Item = (usize, usize)>) -> usize {
    edges
        .map(|(a, b)| {
            let (x, y) = (owner[a], owner[b]);
            (x.min(y), x.max(y))
        })
        .collect::<BTreeSet<_>>()
        .len()
}

/// Number of part pairs `i <= j` with at least one edge between them.
pub fn pair_coverage_stats(g: &OrderedGraph, parts: &[Vec<usize>]) -> Result<usize> {
    let owner = side_of(parts, g.n())?;
    Ok(coverage(&owner, g.edges().iter().copied()))
}

pub fn pair_coverage_unordered(g: &UnorderedGraph, parts: &[Vec<usize>]) -> Result<usize> {
    let owner = side_of(parts, g.n())?;
    Ok(coverage(&owner, g.edges()))
}

/// Set partitions of `[n]` into at most `t` parts of size at most `s`, as
/// part labels by restricted growth.
fn bounded_partitions(n: usize, t: usize, s: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(labels: &mut Vec<usize>, sizes: &mut Vec<usize>, n: usize, t: usize, s: usize, visit: &mut impl FnMut(&[usize])) {
        if labels.len() == n {
            visit(labels);
            return;
        }
        let open = sizes.len();
        for k in 0..=open.min(t.saturating_sub(1)) {
            if k == open {
                sizes.push(0);
            }
            if sizes[k] < s {
                sizes[k] += 1;
                labels.push(k);
                go(labels, sizes, n, t, s, visit);
                labels.pop();
                sizes[k] -= 1;
            }
            if k == open {
                sizes.pop();
            }
        }
    }
    go(&mut Vec::with_capacity(n), &mut Vec::new(), n, t, s, visit);
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub partitions_checked: u64,
    /// Least number of covered pairs, `None` if no partition fits.
    pub min_covered: Option<usize>,
    pub threshold: usize,
    /// Whether every checked partition covers more than `threshold` pairs.
    pub exceeds: bool,
}

fn coverage_report(counts: impl Iterator<Item = usize>, threshold: usize) -> CoverageReport {
    let (mut checked, mut min) = (0u64, None::<usize>);
    for c in counts {
        checked += 1;
        min = Some(min.map_or(c, |m| m.min(c)));
    }
    CoverageReport {
        partitions_checked: checked,
        min_covered: min,
        threshold,
        exceeds: min.is_some_and(|m| m > threshold),
    }
}

/// Every partition of the vertices into at most `t` sets of size at most `s`.
pub fn set_partition_coverage(g: &UnorderedGraph, t: usize, s: usize, threshold: usize) -> Result<CoverageReport> {
    let n = g.n();
    if n > 12 {
        return Err(Error::invalid("exhaustive partitions are limited to n <= 12"));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut counts = Vec::new();
    bounded_partitions(n, t, s, &mut |labels| {
        let owner: Vec<usize> = std::iter::once(0).chain(labels.iter().copied()).collect();
        counts.push(coverage(&owner, edges.iter().copied()));
    });
    Ok(coverage_report(counts.into_iter(), threshold))
}

/// Seeded random partitions: shuffle the vertices and cut into runs of `s`.
pub fn sampled_partition_coverage(
    g: &UnorderedGraph,
    t: usize,
    s: usize,
    threshold: usize,
    samples: u64,
    seed: Seed,
) -> Result<CoverageReport> {
    let n = g.n();
    if s == 0 || t * s < n {
        return Err(Error::invalid("t parts of size s cannot cover the vertices"));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let counts: Vec<usize> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let perm = Rng::stream(seed, k).permutation(n);
            let mut owner = vec![0; n + 1];
            for (slot, &v) in perm.iter().enumerate() {
                owner[v + 1] = slot / s;
            }
            coverage(&owner, edges.iter().copied())
        })
        .collect();
    Ok(coverage_report(counts.into_iter(), threshold))
}

fn log2_binomial(a: f64, b: usize) -> f64 {
    (0..b).map(|i| ((a - i as f64) / (i as f64 + 1.0)).log2()).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionConditionReport {
    pub lhs_log2: f64,
    pub rhs_log2: f64,
    /// `log2` of the number of ρ-regular graphs; exact when `n <= 10`.
    pub graphs_log2: f64,
    pub holds: bool,
}

/// Compares `t^n C(t^2, M) C(s^2 M, ceil(ρn)/2)` against `δ D` in `log2`,
/// with `D` the number of ρ-regular graphs on `[n]`.
pub fn partition_condition(
    rho: Ratio<u64>,
    n: usize,
    m: usize,
    s: usize,
    t: usize,
    delta_log2: f64,
) -> Result<PartitionConditionReport> {
    let shape = rho_regular_shape(rho, n)?;
    let graphs_log2 = if n <= 10 {
        (count_rho_regular(rho, n)?.exact_count as f64).log2()
    } else {
        regular_count_formula(&shape, n).log2()
    };
    let lhs_log2 = n as f64 * (t as f64).log2()
        + log2_binomial((t * t) as f64, m)
        + log2_binomial((s * s * m) as f64, shape.degree_sum / 2);
    let rhs_log2 = delta_log2 + graphs_log2;
    Ok(PartitionConditionReport {
        lhs_log2,
        rhs_log2,
        graphs_log2,
        holds: lhs_log2 < rhs_log2,
    })
}

/// Sets of `d` pairwise disjoint non-empty intervals inside `lo..=hi`.
fn disjoint_interval_sets(lo: usize, hi: usize, d: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(start: usize, hi: usize, d: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for a in start..=hi {
            for b in a..=hi {
                cur.push((a, b));
                go(b + 1, hi, d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(lo, hi, d, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaFrequency {
    pub n: usize,
    pub permutations: u64,
    /// Permutations whose matching satisfies the statement.
    pub satisfied: u64,
    /// Configurations meeting the size precondition, per permutation.
    pub configurations: u64,
}

fn span(iv: (usize, usize)) -> usize {
    iv.1 + 1 - iv.0
}

/// For all `d` disjoint intervals on each side with smallest sizes
/// multiplying to at least `big_s`, more than `d^2 - r` interval pairs carry
/// an edge of `M(π)`. Frequency over all `n!` permutations.
pub fn large_intervals_frequency(n: usize, d: usize, big_s: usize, r: usize) -> Result<LemmaFrequency> {
    if n == 0 || n > 7 || d == 0 {
        return Err(Error::invalid("needs 1 <= n <= 7 and d >= 1"));
    }
    let left = disjoint_interval_sets(1, n, d);
    let right = disjoint_interval_sets(n + 1, 2 * n, d);
    let min_span = |set: &Vec<(usize, usize)>| set.iter().map(|&iv| span(iv)).min().unwrap_or(0);
    let configs: Vec<(&Vec<(usize, usize)>, &Vec<(usize, usize)>)> = left
        .iter()
        .flat_map(|i| right.iter().map(move |j| (i, j)))
        .filter(|(i, j)| min_span(i) * min_span(j) >= big_s)
        .collect();
    let perms = permutations(n);
    let threshold = (d * d).saturating_sub(r);
    let satisfied = perms
        .par_iter()
        .filter(|p| {
            configs.iter().all(|(is, js)| {
                let pairs: BTreeSet<(usize, usize)> = is
                    .iter()
                    .enumerate()
                    .flat_map(|(k, &(a, b))| {
                        (a..=b).filter_map(move |x| {
                            let y = n + p[x - 1] + 1;
                            js.iter().position(|&(c, e)| (c..=e).contains(&y)).map(|l| (k, l))
                        })
                    })
                    .collect();
                pairs.len() > threshold
            })
        })
        .count();
    Ok(LemmaFrequency {
        n,
        permutations: perms.len() as u64,
        satisfied: satisfied as u64,
        configurations: configs.len() as u64,
    })
}

/// Compositions of `total` into `parts` ordered parts of size at most `cap`
/// (zero allowed).
fn capped_compositions(total: usize, parts: usize, cap: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, parts: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == parts {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest = parts - cur.len() - 1;
        for size in 0..=left.min(cap) {
            if left - size <= rest * cap {
                cur.push(size);
                go(left - size, parts, cap, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(total, parts, cap, &mut Vec::new(), &mut out);
    out
}

/// Consecutive intervals of the given sizes starting at `first`; empty
/// intervals are `None`.
fn lay_out(sizes: &[usize], first: usize) -> Vec<Option<(usize, usize)>> {
    let mut at = first;
    sizes
        .iter()
        .map(|&k| {
            let iv = (k > 0).then(|| (at, at + k - 1));
            at += k;
            iv
        })
        .collect()
}

/// Indices of intervals past the `d` largest (stable by position on ties).
fn beyond_largest(sizes: &[usize], d: usize) -> (Vec<usize>, Option<usize>) {
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]));
    let pivot = order.get(d).map(|&k| sizes[k]);
    (order.into_iter().skip(d).collect(), pivot)
}

/// For every `k <= t` and every split of `[n]` into `I_1..I_k` and of the
/// right side into `J_k..J_t` (consecutive, sizes at most `s`) with
/// `|I_(d+1)| |J_(d+1)| < S` among the sorted sizes, more than `m` pairs of
/// intervals outside the `d` largest on each side carry an edge. Splits with
/// at most `d` intervals on a side have no such pairs and are skipped.
pub fn small_intervals_frequency(
    n: usize,
    t: usize,
    s: usize,
    d: usize,
    big_s: usize,
    m: usize,
) -> Result<LemmaFrequency> {
    if n == 0 || n > 7 || t == 0 || s == 0 {
        return Err(Error::invalid("needs 1 <= n <= 7 and t, s >= 1"));
    }
    let mut configs: Vec<(Vec<(usize, usize)>, Vec<(usize, usize)>)> = Vec::new();
    for k in 1..=t {
        let lefts = capped_compositions(n, k, s);
        let rights = capped_compositions(n, t - k + 1, s);
        for ls in &lefts {
            let (li, lp) = beyond_largest(ls, d);
            let Some(lp) = lp else { continue };
            let lay_l = lay_out(ls, 1);
            for rs in &rights {
                let (ri, rp) = beyond_largest(rs, d);
                let Some(rp) = rp else { continue };
                if lp * rp >= big_s {
                    continue;
                }
                let lay_r = lay_out(rs, n + 1);
                configs.push((
                    li.iter().filter_map(|&i| lay_l[i]).collect(),
                    ri.iter().filter_map(|&i| lay_r[i]).collect(),
                ));
            }
        }
    }
    let perms = permutations(n);
    let satisfied = perms
        .par_iter()
        .filter(|p| {
            configs.iter().all(|(is, js)| {
                let pairs: BTreeSet<(usize, usize)> = is
                    .iter()
                    .enumerate()
                    .flat_map(|(k, &(a, b))| {
                        (a..=b).filter_map(move |x| {
                            let y = n + p[x - 1] + 1;
                            js.iter().position(|&(c, e)| (c..=e).contains(&y)).map(|l| (k, l))
                        })
                    })
                    .collect();
                pairs.len() > m
            })
        })
        .count();
    Ok(LemmaFrequency {
        n,
        permutations: perms.len() as u64,
        satisfied: satisfied as u64,
        configurations: configs.len() as u64,
    })
}

/// A real parameter next to the integer actually used.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rounded {
    pub raw: f64,
    pub value: usize,
}

impl Rounded {
    fn nearest(raw: f64) -> Self {
        Rounded {
            raw,
            value: raw.round().max(0.0) as usize,
        }
    }

    fn at_least_one(raw: f64) -> Self {
        Rounded {
            raw,
            value: (raw.round() as usize).max(1),
        }
    }
}

/// Parameters of the matching lower bound at a fixed `n` (logs base 2).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    /// `3 log n`
    pub d: Rounded,
    /// `2 * 10^4 n`
    pub big_s: usize,
    /// `log^2 n / 4`
    pub r: Rounded,
    /// `n log log n / (8 log n)`
    pub m: Rounded,
    /// `n / (8 log n)`, at least 1
    pub s: Rounded,
    /// `n / (20 log n)`, at least 1
    pub t: Rounded,
    pub trials: u64,
    pub seed: Seed,
}

impl ExperimentConfig {
    pub fn new(n: usize, trials: u64, seed: Seed) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("configuration needs n >= 2"));
        }
        let lg = (n as f64).log2();
        let lglg = lg.log2();
        Ok(ExperimentConfig {
            n,
            d: Rounded::nearest(3.0 * lg),
            big_s: 20_000 * n,
            r: Rounded::nearest(lg * lg / 4.0),
            m: Rounded::nearest(n as f64 * lglg / (8.0 * lg)),
            s: Rounded::at_least_one(n as f64 / (8.0 * lg)),
            t: Rounded::at_least_one(n as f64 / (20.0 * lg)),
            trials,
            seed,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegularPresetKind {
    /// Constant `ρ > 2`.
    FixedRho,
    /// `ρ_n` tending to 2 from above.
    NearTwo,
}

/// The sequences `ε_n, ζ_n, ρ_n` and the derived `M, s, t, δ` of the
/// ρ-regular lower bound, evaluated at one `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularPreset {
    pub kind: RegularPresetKind,
    pub n: usize,
    pub rho_n: f64,
    pub epsilon_n: f64,
    pub zeta_n: f64,
    /// `ζ n`
    pub m: Rounded,
    /// `n^ε`
    pub s: Rounded,
    /// `ζ n / (2 log(1/ζ))`
    pub t: Rounded,
    /// `(ρ(ε - 1/2) + 1 + ζ) n log n`
    pub delta_log2: f64,
    /// The lower bound `ζ n^(1+ε) / (2 log(1/ζ))`.
    pub bound: f64,
}

impl RegularPreset {
    pub fn new(kind: RegularPresetKind, n: usize, rho: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("presets need n >= 3"));
        }
        let lg = (n as f64).log2();
        let lglg = lg.log2();
        let zeta = 1.0 / lg;
        let (rho_n, eps) = match kind {
            RegularPresetKind::FixedRho => {
                if rho <= 2.0 {
                    return Err(Error::invalid("the fixed-ρ preset needs ρ > 2"));
                }
                (rho, 0.5 - 1.0 / rho - 1.0 / lg)
            }
            RegularPresetKind::NearTwo => (2.0 + 9.0 * lglg / lg, 2.0 * lglg / lg),
        };
        let nf = n as f64;
        let t_raw = zeta * nf / (2.0 * (1.0 / zeta).log2());
        Ok(RegularPreset {
            kind,
            n,
            rho_n,
            epsilon_n: eps,
            zeta_n: zeta,
            m: Rounded::at_least_one(zeta * nf),
            s: Rounded::at_least_one(nf.powf(eps)),
            t: Rounded::at_least_one(t_raw),
            delta_log2: (rho_n * (eps - 0.5) + 1.0 + zeta) * nf * lg,
            bound: t_raw * nf.powf(eps),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    /// Seed of the trial's stream.
    pub seed: u64,
    pub red_copy: bool,
    pub blue_copy: bool,
    pub avoided: bool,
    pub injected: bool,
}

#[derive(Clone, Debug)]
pub struct MonteCarloReport {
    pub trials: u64,
    pub avoiding: u64,
    /// Number of vertices of each sampled colouring.
    pub size: usize,
    pub records: Vec<TrialRecord>,
    /// First avoiding colouring found, already verified.
    pub certificate: Option<Certificate>,
}

impl MonteCarloReport {
    pub fn fraction(&self) -> Ratio<u64> {
        if self.trials == 0 {
            Ratio::from_integer(0)
        } else {
            Ratio::new(self.avoiding, self.trials)
        }
    }
}

/// Samples blown-up colourings of `K_{st}` and checks each for a
/// monochromatic copy of `pattern`. An avoiding colouring certifies that the
/// ordered Ramsey number exceeds `st`. `inject` replaces trial 0's sample.
pub fn monte_carlo_avoidance(
    pattern: &OrderedGraph,
    t: usize,
    s: usize,
    trials: u64,
    seed: Seed,
    inject: Option<Coloring>,
) -> Result<MonteCarloReport> {
    if t == 0 || s == 0 {
        return Err(Error::invalid("t and s must be positive"));
    }
    let size = t * s;
    if let Some(c) = &inject {
        if c.n() != size {
            return Err(Error::invalid(format!("injected colouring has {} vertices, expected {size}", c.n())));
        }
    }
    let outcomes: Vec<(TrialRecord, Coloring)> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let stream = seed.0 ^ k;
            let (coloring, injected) = match (&inject, k) {
                (Some(c), 0) => (c.clone(), true),
                _ => (blown_up_random_coloring(t, s, Seed(stream))?.coloring, false),
            };
            let copy = |color| -> Result<bool> {
                if pattern.n() > size {
                    return Ok(false);
                }
                Ok(find_monochromatic(&coloring, pattern, color)?.is_some())
            };
            let (red_copy, blue_copy) = (copy(Color::Red)?, copy(Color::Blue)?);
            let record = TrialRecord {
                trial: k,
                seed: stream,
                red_copy,
                blue_copy,
                avoided: !red_copy && !blue_copy,
                injected,
            };
            Ok((record, coloring))
        })
        .collect::<Result<_>>()?;
    let avoiding = outcomes.iter().filter(|(r, _)| r.avoided).count() as u64;
    let certificate = match outcomes.iter().find(|(r, _)| r.avoided) {
        Some((_, c)) => {
            let cert = Certificate {
                pattern: pattern.clone(),
                kind: CertificateKind::LowerBound(c.clone()),
            };
            if !verify_certificate(&cert)? {
                return Err(Error::Invariant("avoiding colouring failed verification".into()));
            }
            Some(cert)
        }
        None => None,
    };
    Ok(MonteCarloReport {
        trials,
        avoiding,
        size,
        records: outcomes.into_iter().map(|(r, _)| r).collect(),
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{nested_matching, quadratic_lb_instance};
    use crate::graph::interval_chromatic_number;
    use super::Rng;
    use proptest::prelude::*;

    #[test]
    fn generator_is_reproducible() {
        let draw = |seed| {
            let mut r = Rng::new(Seed(seed));
            (0..5).map(|_| r.next_u64()).collect::<Vec<_>>()
        };
        assert_eq!(draw(42), draw(42));
        assert_ne!(Rng::new(Seed(1)).next_u64(), Rng::new(Seed(2)).next_u64());
        let mut r = Rng::new(Seed(9));
        assert!((0..1000).all(|_| r.below(7) < 7));
    }

    /// SplitMix64 expansion followed by one xoshiro256** step, written out.
    #[test]
    fn generator_matches_reference_algorithm() {
        fn splitmix(state: &mut u64) -> u64 {
            *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = *state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            z ^ (z >> 31)
        }
        let mut st = 12345u64;
        let mut s: [u64; 4] = std::array::from_fn(|_| splitmix(&mut st));
        let mut reference = Vec::new();
        for _ in 0..4 {
            reference.push(s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9));
            let t = s[1] << 17;
            s[2] ^= s[0];
            s[3] ^= s[1];
            s[1] ^= s[2];
            s[0] ^= s[3];
            s[2] ^= t;
            s[3] = s[3].rotate_left(45);
        }
        let mut rng = Rng::new(Seed(12345));
        let ours: Vec<u64> = (0..4).map(|_| rng.next_u64()).collect();
        assert_eq!(ours, reference);
    }

    #[test]
    fn permutation_matchings() {
        assert_eq!(sample_permutation_matching(1, Seed(5)).unwrap().edges(), &[(1, 2)]);
        assert!(sample_permutation_matching(0, Seed(5)).is_err());
        let mut freq: HashMap<Vec<(usize, usize)>, u64> = HashMap::new();
        let draws = 60_000u64;
        for k in 0..draws {
            let g = sample_permutation_matching(3, Seed(k)).unwrap();
            *freq.entry(g.edges().to_vec()).or_default() += 1;
        }
        assert_eq!(freq.len(), 6);
        let p = 1.0 / 6.0;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for &c in freq.values() {
            assert!((c as f64 - draws as f64 * p).abs() < 3.0 * sigma, "{c}");
        }
    }

    proptest! {
        #[test]
        fn matchings_cross_the_middle(n in 1usize..40, seed in any::<u64>()) {
            let g = sample_permutation_matching(n, Seed(seed)).unwrap();
            prop_assert_eq!(g.edge_count(), n);
            prop_assert_eq!(interval_chromatic_number(&g), 2);
            for v in 1..=2 * n {
                prop_assert_eq!(g.degree(v), 1);
            }
            prop_assert!(g.edges().iter().all(|&(a, b)| a <= n && b > n));
        }

        #[test]
        fn blown_up_colourings_are_constant_on_blocks(t in 1usize..5, s in 1usize..4, seed in any::<u64>()) {
            let b = blown_up_random_coloring(t, s, Seed(seed)).unwrap();
            prop_assert_eq!(b.coloring.n(), t * s);
            for (a, c, color) in b.coloring.pairs() {
                let (i, j) = ((a - 1) / s + 1, (c - 1) / s + 1);
                prop_assert_eq!(color == Color::Red, b.reduced.has_edge(i, j));
            }
        }

        #[test]
        fn samples_are_deterministic(seed in any::<u64>()) {
            let a = sample_rho_regular(Ratio::new(7, 3), 6, Seed(seed), RegularMode::Configuration).unwrap();
            let b = sample_rho_regular(Ratio::new(7, 3), 6, Seed(seed), RegularMode::Configuration).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn rho_regular_small_cases() {
        for mode in [RegularMode::Exact, RegularMode::Configuration] {
            let g = sample_rho_regular(Ratio::from_integer(1), 2, Seed(3), mode).unwrap();
            assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2)]);
            let k4 = sample_rho_regular(Ratio::from_integer(3), 4, Seed(3), mode).unwrap();
            assert_eq!(k4.edge_count(), 6);
            let g = sample_rho_regular(Ratio::new(7, 3), 6, Seed(8), mode).unwrap();
            let mut degs = g.degrees();
            degs.sort_unstable();
            assert_eq!(degs, vec![2, 2, 2, 2, 3, 3]);
        }
        assert!(sample_rho_regular(Ratio::from_integer(1), 3, Seed(0), RegularMode::Exact).is_err());
        assert!(sample_rho_regular(Ratio::from_integer(2), 9, Seed(0), RegularMode::Exact).is_err());
        assert!(sample_rho_regular(Ratio::from_integer(4), 4, Seed(0), RegularMode::Configuration).is_err());
    }

    #[test]
    fn exact_mode_is_uniform_on_five_cycles() {
        let draws = 12_000u64;
        let mut freq: HashMap<Vec<(usize, usize)>, u64> = HashMap::new();
        for k in 0..draws {
            let g = sample_rho_regular(Ratio::from_integer(2), 5, Seed(k), RegularMode::Exact).unwrap();
            assert!(g.degrees().iter().all(|&d| d == 2));
            *freq.entry(g.edges().collect()).or_default() += 1;
        }
        assert_eq!(freq.len(), 12);
        let p = 1.0 / 12.0;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for &c in freq.values() {
            assert!((c as f64 - draws as f64 * p).abs() < 3.0 * sigma, "{c}");
        }
    }

    #[test]
    fn tv_distance_is_small_for_both_modes() {
        for mode in [RegularMode::Exact, RegularMode::Configuration] {
            let tv = regular_mode_tv_distance(Ratio::new(4, 3), 6, 20_000, Seed(1), mode).unwrap();
            assert!((0.0..0.1).contains(&tv), "{mode:?}: {tv}");
        }
    }

    #[test]
    fn blown_up_small_cases() {
        let one = blown_up_random_coloring(1, 4, Seed(11)).unwrap();
        let first = one.coloring.get(1, 2);
        assert!(one.coloring.pairs().all(|(_, _, c)| c == first));
        let mut seen = BTreeSet::new();
        for k in 0..400 {
            let b = blown_up_random_coloring(2, 2, Seed(k)).unwrap();
            assert_eq!(b.coloring.get(1, 2) == Color::Red, b.reduced.has_edge(1, 1));
            assert_eq!(b.coloring.get(3, 4) == Color::Red, b.reduced.has_edge(2, 2));
            seen.insert(b.coloring.pairs().map(|(_, _, c)| c == Color::Red).collect::<Vec<_>>());
        }
        assert_eq!(seen.len(), 8);
        assert!(blown_up_random_coloring(0, 2, Seed(0)).is_err());
    }

    fn query(x: Vec<Vec<usize>>, y: Vec<Vec<usize>>, pairs: Vec<(usize, usize)>) -> PairSetQuery {
        PairSetQuery { x_sets: x, y_sets: y, pairs }
    }

    #[test]
    fn pair_probabilities() {
        let p = matching_pair_probability(&query(vec![vec![1]], vec![vec![4]], vec![(1, 1)]), 3).unwrap();
        assert_eq!(p.exact, Ratio::new(2, 3));
        let p = matching_pair_probability(&query(vec![vec![1]], vec![vec![3]], vec![(1, 1)]), 2).unwrap();
        assert_eq!(p.exact, Ratio::new(1, 2));
        let p = matching_pair_probability(&query(vec![vec![1]], vec![vec![3]], vec![]), 2).unwrap();
        assert_eq!(p.exact, Ratio::from_integer(1));
        assert!(matching_pair_probability(&query(vec![vec![1]], vec![vec![2]], vec![(1, 1)]), 2).is_err());
        assert!(matching_pair_probability(&query(vec![vec![1, 2], vec![2]], vec![vec![3], vec![4]], vec![]), 2).is_err());
        assert!(matching_pair_probability(&query(vec![], vec![], vec![]), 9).is_err());
    }

    #[test]
    fn lemma_z_matches_floating_formula() {
        for d in 1..30usize {
            for r in 0..=d * d {
                let f = ((3.0 * d as f64 - ((9 * d * d - 8 * r) as f64).sqrt()) / 4.0).floor() as usize;
                assert_eq!(lemma_z(d, r), Some(f), "d = {d}, r = {r}");
            }
        }
    }

    /// Every query with `d` singletons or pairs per side on small `n`: the
    /// exact probability stays below the bound.
    #[test]
    fn exact_probability_below_bound() {
        for n in 2..=6usize {
            for d in 1..=2usize {
                for size in 1..=n / (2 * d).max(1) {
                    if d * size > n {
                        continue;
                    }
                    let x: Vec<Vec<usize>> = (0..d).map(|i| (i * size + 1..=(i + 1) * size).collect()).collect();
                    let y: Vec<Vec<usize>> = (0..d).map(|i| (n + i * size + 1..=n + (i + 1) * size).collect()).collect();
                    let all: Vec<(usize, usize)> = (1..=d).flat_map(|i| (1..=d).map(move |j| (i, j))).collect();
                    for mask in 1u32..1 << all.len() {
                        let pairs = all.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
                        let p = matching_pair_probability(&query(x.clone(), y.clone(), pairs), n).unwrap();
                        let exact = *p.exact.numer() as f64 / *p.exact.denom() as f64;
                        assert!(exact < p.bound || p.bound == 1.0 && exact < 1.0, "{p:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn coverage_counts() {
        let m = nested_matching(2).unwrap();
        assert_eq!(pair_coverage_stats(&m, &[vec![1, 2], vec![3, 4]]).unwrap(), 1);
        let k4 = OrderedGraph::complete(4);
        assert_eq!(pair_coverage_stats(&k4, &[vec![1, 2], vec![3, 4]]).unwrap(), 3);
        assert_eq!(pair_coverage_stats(&OrderedGraph::empty(4), &[vec![1, 2], vec![3, 4]]).unwrap(), 0);
        assert!(pair_coverage_stats(&k4, &[vec![1, 2], vec![3]]).is_err());
        assert!(pair_coverage_stats(&k4, &[vec![1, 2], vec![2, 3, 4]]).is_err());
    }

    fn bell(n: usize) -> u64 {
        let mut row = vec![1u64];
        for _ in 0..n {
            let mut next = vec![*row.last().unwrap()];
            for &v in &row {
                next.push(next.last().unwrap() + v);
            }
            row = next;
        }
        row[0]
    }

    #[test]
    fn partitions_are_enumerated_completely() {
        for n in 1..=7 {
            let mut count = 0u64;
            bounded_partitions(n, n, n, &mut |_| count += 1);
            assert_eq!(count, bell(n));
        }
        // pairs only: perfect matchings of [6]
        let mut count = 0u64;
        bounded_partitions(6, 3, 2, &mut |_| count += 1);
        assert_eq!(count, 15);
    }

    #[test]
    fn cycle_partition_coverage() {
        let c6 = UnorderedGraph::from_edges(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)]).unwrap();
        let r = set_partition_coverage(&c6, 3, 2, 2).unwrap();
        assert_eq!(r.partitions_checked, 15);
        assert_eq!(r.min_covered, Some(3));
        assert!(r.exceeds);
        let sampled = sampled_partition_coverage(&c6, 3, 2, 2, 200, Seed(4)).unwrap();
        assert!(sampled.min_covered.unwrap() >= 3);
        let cond = partition_condition(Ratio::from_integer(2), 6, 2, 2, 3, -1.0).unwrap();
        assert!((cond.graphs_log2 - 70f64.log2()).abs() < 1e-9);
    }

    #[test]
    fn lemma_frequencies_are_bounded() {
        // with d = 1, r = 1 every admissible interval pair must carry an edge
        let f = large_intervals_frequency(4, 1, 1, 1).unwrap();
        assert_eq!(f.permutations, 24);
        assert_eq!(f.satisfied, 0);
        let f = large_intervals_frequency(4, 1, 16, 1).unwrap();
        assert_eq!((f.satisfied, f.configurations), (24, 1));
        // d^2 - r = 1 needs two covered pairs out of one
        assert_eq!(large_intervals_frequency(4, 1, 16, 0).unwrap().satisfied, 0);
        let f = small_intervals_frequency(4, 3, 2, 0, 100, 0).unwrap();
        assert!(f.satisfied <= f.permutations && f.configurations > 0);
    }

    #[test]
    fn config_values() {
        let c = ExperimentConfig::new(1024, 10, Seed(1)).unwrap();
        assert_eq!(c.d.value, 30);
        assert_eq!(c.r.value, 25);
        assert_eq!(c.big_s, 20_480_000);
        assert_eq!(c.s.value, 13);
        assert_eq!(c.t.value, 5);
        assert_eq!(c.m.value, 43);
        let small = ExperimentConfig::new(8, 1, Seed(1)).unwrap();
        assert_eq!((small.s.value, small.t.value), (1, 1));
        assert!(ExperimentConfig::new(1, 1, Seed(1)).is_err());
        let p = RegularPreset::new(RegularPresetKind::NearTwo, 1 << 16, 0.0).unwrap();
        assert!((p.rho_n - 4.25).abs() < 1e-12);
        assert!((p.epsilon_n - 0.5).abs() < 1e-12);
        assert!(RegularPreset::new(RegularPresetKind::FixedRho, 100, 2.0).is_err());
    }

    #[test]
    fn monte_carlo_cases() {
        let k2 = OrderedGraph::complete(2);
        let r = monte_carlo_avoidance(&k2, 2, 2, 20, Seed(3), None).unwrap();
        assert_eq!(r.avoiding, 0);
        assert!(r.certificate.is_none());
        let q = quadratic_lb_instance(9).unwrap();
        let r = monte_carlo_avoidance(&q.graph, 4, 2, 5, Seed(3), Some(q.coloring.clone())).unwrap();
        assert!(r.records[0].avoided && r.records[0].injected);
        assert!(verify_certificate(r.certificate.as_ref().unwrap()).unwrap());
        let cfg = ExperimentConfig::new(8, 30, Seed(5)).unwrap();
        let m = sample_permutation_matching(8, Seed(5)).unwrap();
        let (t, s) = (cfg.t.value.max(4), cfg.s.value.max(4));
        let r = monte_carlo_avoidance(&m, t, s, cfg.trials, cfg.seed, None).unwrap();
        assert!(r.fraction() <= Ratio::from_integer(1));
        if let Some(c) = &r.certificate {
            assert!(verify_certificate(c).unwrap());
        }
        let again = monte_carlo_avoidance(&m, t, s, cfg.trials, cfg.seed, None).unwrap();
        assert_eq!(again.records, r.records);
    }
}
