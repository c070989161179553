//! Constructive extraction of alternating paths, blow-ups and T-gadgets
//! from dense ordered hosts, following the edge-removal and
//! triangle-harvesting arguments. Every witness is re-checked against the
//! exact pattern before it is returned.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::constructions::{
    alternating_path, alternating_position, blowup_path, tee_graph, BlockedOrderedGraph,
};
use crate::error::{Error, Result};
use crate::graph::{contains, Color, Coloring, Embedding, IntervalPartition, OrderedGraph};

/// One removed edge of the removal process.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Removal {
    pub center: usize,
    pub removed: usize,
    pub step: usize,
}

/// Removals grouped by step; `steps[s - 1]` holds step `s`.
#[derive(Clone, Debug, Default)]
pub struct RemovalTrace {
    pub steps: Vec<Vec<Removal>>,
}

impl RemovalTrace {
    /// The neighbour removed from `center` in step `step`, if any.
    pub fn removed_from(&self, step: usize, center: usize) -> Option<usize> {
        let list = &self.steps[step - 1];
        list.binary_search_by_key(&center, |r| r.center)
            .ok()
            .map(|i| list[i].removed)
    }
}

/// Runs steps `1..=steps` of the removal process. Odd steps strip every
/// vertex of its leftmost left neighbour, even steps of its rightmost right
/// neighbour; each step is computed on the graph as it stood at the start of
/// the step. Returns the surviving edges and the trace.
pub fn removal_process(host: &OrderedGraph, steps: usize) -> (Vec<(usize, usize)>, RemovalTrace) {
    let n = host.n();
    let mut adj: Vec<_> = (0..=n).map(|v| host.neighbors(v.max(1)).clone()).collect();
    adj[0] = Default::default();
    let mut trace = RemovalTrace::default();
    for step in 1..=steps {
        let mut removals = Vec::new();
        for v in 1..=n {
            let u = if step % 2 == 1 {
                adj[v].next_from(1).filter(|&u| u < v)
            } else {
                adj[v].prev_upto(n).filter(|&u| u > v)
            };
            if let Some(u) = u {
                removals.push(Removal { center: v, removed: u, step });
            }
        }
        for r in &removals {
            adj[r.center].remove(r.removed);
            adj[r.removed].remove(r.center);
        }
        trace.steps.push(removals);
    }
    let surviving = (1..=n)
        .flat_map(|a| adj[a].iter_range(a + 1, n + 1).map(move |b| (a, b)))
        .collect();
    (surviving, trace)
}

/// Finds the alternating path `P_n` by the removal process: the
/// lexicographically smallest surviving edge becomes `{v_{n-1}, v_n}` and the
/// rest of the path is read backwards from the trace.
pub fn find_alternating_path(host: &OrderedGraph, n: usize) -> Result<Option<Embedding>> {
    if n == 0 {
        return Err(Error::invalid("path length must be positive"));
    }
    if n == 1 {
        return Ok((host.n() >= 1).then(|| Embedding::identity(1)));
    }
    let (surviving, trace) = removal_process(host, n - 2);
    let Some(&(a, b)) = surviving.first() else {
        return Ok(None);
    };
    let mut v = vec![0usize; n + 1];
    if n % 2 == 1 {
        (v[n], v[n - 1]) = (a, b);
    } else {
        (v[n - 1], v[n]) = (a, b);
    }
    for i in (1..=n - 2).rev() {
        v[i] = trace.removed_from(i, v[i + 1]).ok_or_else(|| {
            Error::Invariant(format!("no removal recorded at step {i} for vertex {}", v[i + 1]))
        })?;
    }
    let mut image = vec![0usize; n];
    for i in 1..=n {
        image[alternating_position(n, i) - 1] = v[i];
    }
    let emb = Embedding::new(image)
        .map_err(|_| Error::Invariant("reconstructed path is not order-preserving".into()))?;
    let pattern = alternating_path(n)?;
    if !emb.is_valid(host, &pattern) {
        return Err(Error::Invariant("reconstructed path is not a host subgraph".into()));
    }
    Ok(Some(emb))
}

/// A nested matching on `2 * pairs` vertices read off an alternating path
/// on `2 * pairs` vertices; the path embedding restricts to it unchanged.
pub fn find_nested_matching_via_path(host: &OrderedGraph, pairs: usize) -> Result<Option<Embedding>> {
    find_alternating_path(host, 2 * pairs)
}

/// A largest family of pairwise nested edges `a_1 < ... < a_m < b_m < ... < b_1`,
/// outermost first. Among longest families the one whose outermost edge is
/// lexicographically smallest is chosen, recursively inwards.
pub fn max_nested_matching(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut es: Vec<(usize, usize)> = edges.to_vec();
    es.sort_by_key(|&(a, b)| (b - a, a));
    let mut depth = vec![1usize; es.len()];
    for i in 0..es.len() {
        let (a, b) = es[i];
        for j in 0..i {
            let (c, e) = es[j];
            if a < c && e < b {
                depth[i] = depth[i].max(depth[j] + 1);
            }
        }
    }
    let mut out = Vec::new();
    let mut want = depth.iter().copied().max().unwrap_or(0);
    let mut bounds = (0usize, usize::MAX);
    while want > 0 {
        let pick = (0..es.len())
            .filter(|&i| depth[i] == want && es[i].0 > bounds.0 && es[i].1 < bounds.1)
            .min_by_key(|&i| es[i])
            .expect("a chain of the recorded depth continues inwards");
        out.push(es[pick]);
        bounds = es[pick];
        want -= 1;
    }
    out
}

/// Pipeline stage at which an extraction gave up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Bicliques,
    AlternatingPath,
    Triangles,
    LongRightLegs,
    Split,
    LeftLegs,
    PrefixMatching,
    ApexGraph,
    BlockMatching,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Bicliques => "bicliques",
            Stage::AlternatingPath => "alternating-path",
            Stage::Triangles => "triangles",
            Stage::LongRightLegs => "long-right-legs",
            Stage::Split => "split",
            Stage::LeftLegs => "left-legs",
            Stage::PrefixMatching => "prefix-matching",
            Stage::ApexGraph => "apex-graph",
            Stage::BlockMatching => "block-matching",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extraction {
    Found(Embedding),
    Failed(Stage),
}

impl Extraction {
    pub fn witness(&self) -> Option<&Embedding> {
        match self {
            Extraction::Found(e) => Some(e),
            Extraction::Failed(_) => None,
        }
    }
}

fn uniform_parts(host: &OrderedGraph, parts: &IntervalPartition) -> Result<usize> {
    if parts.n() != host.n() {
        return Err(Error::invalid(format!(
            "intervals cover {} positions but the host has {}",
            parts.n(),
            host.n()
        )));
    }
    match parts.uniform_size() {
        Some(d) if d > 0 => Ok(d),
        _ => Err(Error::invalid("intervals must all have the same positive size")),
    }
}

/// Each block of `pattern` lands inside one interval of `parts`, and no two
/// blocks share an interval.
pub fn respects_partition(
    emb: &Embedding,
    pattern: &BlockedOrderedGraph,
    parts: &IntervalPartition,
) -> bool {
    let mut used = Vec::new();
    for b in 0..pattern.block_count() {
        let mut ids = pattern.block(b).map(|p| parts.interval_of(emb.map(p)));
        let Some(Some(first)) = ids.next() else {
            return false;
        };
        if !ids.all(|id| id == Some(first)) || used.contains(&first) {
            return false;
        }
        used.push(first);
    }
    true
}

/// k-subsets of `0..d` in lexicographic order.
fn k_subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > d {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < d - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Offsets within their intervals of the lexicographically first `K_{k,k}`
/// with left side in interval `i` and right side in interval `j`.
fn first_biclique(
    host: &OrderedGraph,
    left: std::ops::RangeInclusive<usize>,
    right: std::ops::RangeInclusive<usize>,
    k: usize,
    subsets: &[Vec<usize>],
) -> Option<(Vec<usize>, Vec<usize>)> {
    let (ls, rs, re) = (*left.start(), *right.start(), *right.end());
    subsets.iter().find_map(|a| {
        let mut common = host.neighbors(ls + a[0]).clone();
        for &off in &a[1..] {
            common.intersect_with(host.neighbors(ls + off));
        }
        let b: Vec<usize> = common.iter_range(rs, re + 1).take(k).map(|v| v - rs).collect();
        (b.len() == k).then(|| (a.clone(), b))
    })
}

/// Extracts `P^k_n` respecting `parts`: one representative `K_{k,k}` per
/// interval pair, grouped by the offsets of its two sides; the largest group
/// is tried first as the reduced graph on intervals, then the next ones.
pub fn find_blowup_path(
    host: &OrderedGraph,
    parts: &IntervalPartition,
    n: usize,
    k: usize,
) -> Result<Extraction> {
    let d = uniform_parts(host, parts)?;
    if n == 0 || k == 0 {
        return Err(Error::invalid("path length and blow-up factor must be positive"));
    }
    let pattern = blowup_path(n, k)?;
    let m = parts.len();
    let intervals = parts.intervals();
    if k > d {
        return Ok(Extraction::Failed(Stage::Bicliques));
    }
    let subsets = k_subsets(d, k);
    let finish = |image: Vec<usize>| -> Result<Extraction> {
        let emb = Embedding::new(image)
            .map_err(|_| Error::Invariant("blow-up witness is not order-preserving".into()))?;
        if !emb.is_valid(host, &pattern.graph) || !respects_partition(&emb, &pattern, parts) {
            return Err(Error::Invariant("blow-up witness failed re-verification".into()));
        }
        Ok(Extraction::Found(emb))
    };
    if n == 1 {
        return finish((1..=k).collect());
    }

    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let found: Vec<Option<(Vec<usize>, Vec<usize>)>> = pairs
        .par_iter()
        .map(|&(i, j)| first_biclique(host, intervals[i].clone(), intervals[j].clone(), k, &subsets))
        .collect();
    let mut classes: BTreeMap<(Vec<usize>, Vec<usize>), Vec<(usize, usize)>> = BTreeMap::new();
    for (&(i, j), ty) in pairs.iter().zip(found) {
        if let Some(ty) = ty {
            classes.entry(ty).or_default().push((i + 1, j + 1));
        }
    }
    if classes.is_empty() {
        return Ok(Extraction::Failed(Stage::Bicliques));
    }
    let mut ordered: Vec<_> = classes.into_iter().collect();
    ordered.sort_by(|x, y| y.1.len().cmp(&x.1.len()).then_with(|| x.0.cmp(&y.0)));

    let split = n.div_ceil(2);
    for ((a0, b0), edges) in ordered {
        let reduced = OrderedGraph::from_edges(m, edges)?;
        // a sparse reduced graph can lose every edge to the removal process
        // while still containing the path, so fall back to exact search
        let path = match find_alternating_path(&reduced, n)? {
            Some(path) => path,
            None => match contains(&reduced, &alternating_path(n)?) {
                Some(path) => path,
                None => continue,
            },
        };
        let mut image = Vec::with_capacity(n * k);
        for p in 1..=n {
            let start = *intervals[path.map(p) - 1].start();
            let offsets = if p <= split { &a0 } else { &b0 };
            image.extend(offsets.iter().map(|o| start + o));
        }
        return finish(image);
    }
    Ok(Extraction::Failed(Stage::AlternatingPath))
}

/// A triangle `u < v < w` with its legs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleStats {
    pub triangle: (usize, usize, usize),
    pub left_leg: (usize, usize),
    pub right_leg: (usize, usize),
    pub right_leg_length: usize,
}

impl TriangleStats {
    fn new(u: usize, v: usize, w: usize) -> Self {
        TriangleStats {
            triangle: (u, v, w),
            left_leg: (u, v),
            right_leg: (v, w),
            right_leg_length: w - v,
        }
    }
}

/// All triangles in lexicographic order.
pub fn triangles(host: &OrderedGraph) -> Vec<TriangleStats> {
    let n = host.n();
    let mut out = Vec::new();
    for &(u, v) in host.edges() {
        let nv = host.neighbors(v);
        for w in host.neighbors(u).iter_range(v + 1, n + 1) {
            if nv.contains(w) {
                out.push(TriangleStats::new(u, v, w));
            }
        }
    }
    out
}

pub fn count_triangles(host: &OrderedGraph) -> u64 {
    let n = host.n();
    host.edges()
        .par_iter()
        .map(|&(u, v)| {
            let nv = host.neighbors(v);
            host.neighbors(u)
                .iter_range(v + 1, n + 1)
                .filter(|&w| nv.contains(w))
                .count() as u64
        })
        .sum()
}

/// Extracts `T^k_n` respecting `parts`, stage by stage with `eps` as the
/// density parameter. Split ties go to the smaller index, and both nested
/// matchings are longest nesting chains.
pub fn find_tee(
    host: &OrderedGraph,
    parts: &IntervalPartition,
    n: usize,
    k: usize,
    eps: Ratio<u64>,
) -> Result<Extraction> {
    uniform_parts(host, parts)?;
    if n == 0 || k == 0 {
        return Err(Error::invalid("gadget parameters must be positive"));
    }
    if *eps.numer() == 0 || eps > Ratio::from_integer(1) {
        return Err(Error::invalid("epsilon must lie in (0, 1]"));
    }
    let (p, q) = (*eps.numer() as u128, *eps.denom() as u128);
    let big_n = host.n();
    let nn = big_n as u128;

    let all = triangles(host);
    if all.is_empty() {
        return Ok(Extraction::Failed(Stage::Triangles));
    }
    let long: Vec<&TriangleStats> = all
        .iter()
        .filter(|t| 2 * q * t.right_leg_length as u128 >= p * nn)
        .collect();
    if long.is_empty() {
        return Ok(Extraction::Failed(Stage::LongRightLegs));
    }

    // |T_j| for every split j, via a difference array over v <= j < w.
    let mut diff = vec![0i64; big_n + 2];
    for t in &long {
        let (_, v, w) = t.triangle;
        diff[v] += 1;
        diff[w] -= 1;
    }
    let mut best = (0i64, 0usize);
    let mut run = 0;
    for (j, delta) in diff.iter().enumerate().take(big_n).skip(1) {
        run += delta;
        if j >= 2 && run > best.0 {
            best = (run, j);
        }
    }
    if best.0 == 0 {
        return Ok(Extraction::Failed(Stage::Split));
    }
    let j = best.1;

    let mut support: BTreeMap<(usize, usize), u128> = BTreeMap::new();
    for t in long.iter().filter(|t| t.triangle.1 <= j && t.triangle.2 > j) {
        *support.entry(t.left_leg).or_default() += 1;
    }
    let legs: Vec<(usize, usize)> = support
        .into_iter()
        .filter(|&(_, c)| 4 * q * q * c >= p * p * nn)
        .map(|(e, _)| e)
        .collect();
    if legs.is_empty() {
        return Ok(Extraction::Failed(Stage::LeftLegs));
    }

    let prefix = max_nested_matching(&legs);
    if prefix.len() < n {
        return Ok(Extraction::Failed(Stage::PrefixMatching));
    }

    // Joins each right endpoint b to every interval (beyond the split) that
    // holds at least k common neighbours of its pair.
    let intervals = parts.intervals();
    let first_block = parts.interval_of(j + 1).expect("split lies inside the host");
    let mut apex_edges = Vec::new();
    let mut apexes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &(a, b) in &prefix {
        let mut common = host.neighbors(a).clone();
        common.intersect_with(host.neighbors(b));
        for (l, iv) in intervals.iter().enumerate().skip(first_block) {
            let lo = (*iv.start()).max(j + 1);
            let hits: Vec<usize> = common.iter_range(lo, iv.end() + 1).take(k).collect();
            if hits.len() == k {
                apex_edges.push((b, big_n + l + 1));
                apexes.insert((b, l), hits);
            }
        }
    }
    if apex_edges.is_empty() {
        return Ok(Extraction::Failed(Stage::ApexGraph));
    }
    let outer = max_nested_matching(&apex_edges);
    if outer.len() < n {
        return Ok(Extraction::Failed(Stage::BlockMatching));
    }

    // outer runs from small b and late intervals inwards, so its last chosen
    // edge carries the outermost prefix pair, which takes block B_1.
    let chosen = &outer[..n];
    let pair_of = |b: usize| prefix.iter().find(|e| e.1 == b).expect("b is a right endpoint").0;
    let mut image = vec![0usize; (k + 2) * n];
    for (idx, &(b, tag)) in chosen.iter().enumerate() {
        let i = n - 1 - idx;
        let l = tag - big_n - 1;
        image[i] = pair_of(b);
        image[2 * n - 1 - i] = b;
        for (t, &w) in apexes[&(b, l)].iter().enumerate() {
            image[2 * n + i * k + t] = w;
        }
    }
    let emb = Embedding::new(image)
        .map_err(|_| Error::Invariant("tee witness is not order-preserving".into()))?;
    let pattern = tee_graph(n, k)?;
    if !emb.is_valid(host, &pattern.graph) || !respects_partition(&emb, &pattern, parts) {
        return Err(Error::Invariant("tee witness failed re-verification".into()));
    }
    Ok(Extraction::Found(emb))
}

/// A copy of `pattern` all of whose edges have colour `color`.
pub fn find_monochromatic(
    coloring: &Coloring,
    pattern: &OrderedGraph,
    color: Color,
) -> Result<Option<Embedding>> {
    if pattern.n() > coloring.n() {
        return Err(Error::invalid(format!(
            "pattern has {} vertices but the colouring only {}",
            pattern.n(),
            coloring.n()
        )));
    }
    Ok(contains(&coloring.color_graph(color), pattern))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alternating_path, complete_bipartite, eff_graph, nested_matching};
    use crate::graph::contains;
    use proptest::prelude::*;

    fn complete(n: usize) -> OrderedGraph {
        OrderedGraph::complete(n)
    }

    #[test]
    fn alternating_path_in_k4() {
        let host = complete(4);
        let emb = find_alternating_path(&host, 3).unwrap().unwrap();
        assert!(emb.is_valid(&host, &alternating_path(3).unwrap()));
        assert!(find_alternating_path(&OrderedGraph::empty(5), 3).unwrap().is_none());
        assert!(find_alternating_path(&OrderedGraph::empty(5), 2).unwrap().is_none());
    }

    #[test]
    fn removal_trace_respects_extremes() {
        let host = complete(7);
        let (_, trace) = removal_process(&host, 4);
        for (s, step) in trace.steps.iter().enumerate() {
            let mut centers: Vec<usize> = step.iter().map(|r| r.center).collect();
            centers.dedup();
            assert_eq!(centers.len(), step.len());
            for r in step {
                if (s + 1) % 2 == 1 {
                    assert!(r.removed < r.center);
                } else {
                    assert!(r.removed > r.center);
                }
            }
        }
        // step 1 strips vertex 1 as leftmost neighbour of everyone
        assert!(trace.steps[0].iter().all(|r| r.removed == 1));
        // step 2 strips vertex 7 as rightmost neighbour of everyone left
        assert!(trace.steps[1].iter().all(|r| r.removed == 7));
    }

    #[test]
    fn nested_matching_chain() {
        let m = nested_matching(3).unwrap();
        assert_eq!(max_nested_matching(m.edges()), vec![(1, 6), (2, 5), (3, 4)]);
        assert_eq!(max_nested_matching(&[(1, 2), (3, 4)]).len(), 1);
        assert!(max_nested_matching(&[]).is_empty());
        let host = complete(8);
        let emb = find_nested_matching_via_path(&host, 4).unwrap().unwrap();
        assert!(emb.is_valid(&host, &nested_matching(4).unwrap()));
    }

    /// Exhaustive longest nesting chain.
    fn brute_nesting(edges: &[(usize, usize)]) -> usize {
        fn rec(edges: &[(usize, usize)], outer: (usize, usize)) -> usize {
            edges
                .iter()
                .filter(|e| e.0 > outer.0 && e.1 < outer.1)
                .map(|&e| 1 + rec(edges, e))
                .max()
                .unwrap_or(0)
        }
        rec(edges, (0, usize::MAX))
    }

    #[test]
    fn blowup_in_itself_and_complete() {
        for (n, k) in [(3, 2), (4, 2), (5, 1), (3, 3)] {
            let b = blowup_path(n, k).unwrap();
            let parts = IntervalPartition::uniform(n, k);
            let ext = find_blowup_path(&b.graph, &parts, n, k).unwrap();
            let emb = ext.witness().expect("present verbatim");
            assert!(emb.is_valid(&b.graph, &b.graph));
            assert!(respects_partition(emb, &b, &parts));
        }
        let host = complete(12);
        let parts = IntervalPartition::uniform(6, 2);
        let ext = find_blowup_path(&host, &parts, 3, 2).unwrap();
        let emb = ext.witness().unwrap();
        let pattern = blowup_path(3, 2).unwrap();
        assert!(emb.is_valid(&host, &pattern.graph));
        assert!(respects_partition(emb, &pattern, &parts));
        assert_eq!(
            find_blowup_path(&OrderedGraph::empty(12), &parts, 3, 2).unwrap(),
            Extraction::Failed(Stage::Bicliques)
        );
        assert!(find_blowup_path(&host, &IntervalPartition::new(vec![5, 7]), 2, 1).is_err());
    }

    #[test]
    fn tee_examples() {
        let host = complete(18);
        let parts = IntervalPartition::uniform(9, 2);
        let ext = find_tee(&host, &parts, 2, 1, Ratio::new(1, 8)).unwrap();
        let emb = ext.witness().expect("complete host");
        let pattern = tee_graph(2, 1).unwrap();
        assert!(emb.is_valid(&host, &pattern.graph));
        assert!(respects_partition(emb, &pattern, &parts));

        let bip = complete_bipartite(9, 9).unwrap();
        assert_eq!(
            find_tee(&bip, &parts, 2, 1, Ratio::new(1, 8)).unwrap(),
            Extraction::Failed(Stage::Triangles)
        );
        assert!(find_tee(&host, &parts, 2, 1, Ratio::new(3, 2)).is_err());
        assert!(find_tee(&host, &parts, 2, 1, Ratio::new(0, 1)).is_err());
    }

    #[test]
    fn tee_inside_eff_graphs() {
        for (n, k) in [(2, 1), (3, 1), (2, 2), (4, 2), (3, 3)] {
            let f = eff_graph(n, k).unwrap();
            let parts = IntervalPartition::uniform(f.graph.n() / k, k);
            let eps = Ratio::new(1, 4 * f.graph.n() as u64);
            let ext = find_tee(&f.graph, &parts, n, k, eps).unwrap();
            let emb = ext.witness().unwrap_or_else(|| panic!("F({n},{k}): {ext:?}"));
            let pattern = tee_graph(n, k).unwrap();
            assert!(respects_partition(emb, &pattern, &parts));
        }
    }

    fn brute_triangles(g: &OrderedGraph) -> u64 {
        let n = g.n();
        let mut c = 0;
        for a in 1..=n {
            for b in a + 1..=n {
                for e in b + 1..=n {
                    if g.has_edge(a, b) && g.has_edge(a, e) && g.has_edge(b, e) {
                        c += 1;
                    }
                }
            }
        }
        c
    }

    #[test]
    fn triangle_counts() {
        assert_eq!(count_triangles(&complete(3)), 1);
        assert_eq!(count_triangles(&complete(4)), 4);
        assert_eq!(count_triangles(&complete(6)), 20);
        assert_eq!(count_triangles(&complete_bipartite(4, 5).unwrap()), 0);
        assert_eq!(triangles(&complete(5)).len(), 10);
    }

    #[test]
    fn monochromatic_examples() {
        let red = Coloring::monochromatic(6, Color::Red);
        assert!(find_monochromatic(&red, &complete(3), Color::Red).unwrap().is_some());
        assert!(find_monochromatic(&red, &complete(3), Color::Blue).unwrap().is_none());
        let cycle = [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)];
        let pent = Coloring::from_fn(5, |i, j| {
            if cycle.contains(&(i, j)) { Color::Red } else { Color::Blue }
        });
        for c in [Color::Red, Color::Blue] {
            assert!(find_monochromatic(&pent, &complete(3), c).unwrap().is_none());
        }
        assert!(find_monochromatic(&pent, &complete(6), Color::Red).is_err());
    }

    fn random_graph(n: usize, bits: &[bool]) -> OrderedGraph {
        let mut edges = Vec::new();
        let mut k = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                if bits[k % bits.len()] {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        OrderedGraph::from_edges(n, edges).unwrap()
    }

    proptest! {
        #[test]
        fn triangles_match_brute_force(n in 0usize..30, bits in proptest::collection::vec(any::<bool>(), 1..120)) {
            let g = random_graph(n, &bits);
            prop_assert_eq!(count_triangles(&g), brute_triangles(&g));
        }

        #[test]
        fn path_witnesses_verify(n in 2usize..9, size in 4usize..20, bits in proptest::collection::vec(any::<bool>(), 1..200)) {
            let g = random_graph(size, &bits);
            if let Some(emb) = find_alternating_path(&g, n).unwrap() {
                prop_assert!(emb.is_valid(&g, &alternating_path(n).unwrap()));
            } else {
                let (surv, _) = removal_process(&g, n - 2);
                prop_assert!(surv.is_empty());
            }
        }

        #[test]
        fn nesting_chain_is_longest(edges in proptest::collection::btree_set((1usize..12, 1usize..12), 0..20)) {
            let es: Vec<(usize, usize)> = edges.into_iter().filter(|e| e.0 < e.1).collect();
            let chain = max_nested_matching(&es);
            prop_assert_eq!(chain.len(), brute_nesting(&es));
            for w in chain.windows(2) {
                prop_assert!(w[0].0 < w[1].0 && w[1].1 < w[0].1);
            }
        }

        #[test]
        fn monochromatic_agrees_with_contains(n in 3usize..8, bits in proptest::collection::vec(any::<bool>(), 28)) {
            let c = Coloring::from_fn(n, |i, j| if bits[(i * 7 + j) % 28] { Color::Red } else { Color::Blue });
            let pat = alternating_path(3).unwrap();
            let found = find_monochromatic(&c, &pat, Color::Red).unwrap();
            prop_assert_eq!(found.is_some(), contains(&c.color_graph(Color::Red), &pat).is_some());
            if let Some(e) = found {
                for &(a, b) in pat.edges() {
                    prop_assert_eq!(c.get(e.map(a), e.map(b)), Color::Red);
                }
            }
        }
    }
}
