//! Exact ordered Ramsey numbers by backtracking over edge colourings,
//! certificates in both directions, extremes over all orderings of a small
//! graph, and exact counts of ρ-regular graphs.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::VertexSet;
use crate::embedder::find_monochromatic;
use crate::error::{Error, Result};
use crate::graph::{tighten, Color, Coloring, OrderedGraph, PatternIndex, Placer, UnorderedGraph};
use crate::patterns::permutations;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Colour assignments tried.
    pub nodes: u64,
    /// Assignments rejected because they completed a monochromatic copy.
    pub prunes: u64,
}

#[derive(Clone, Debug)]
pub struct AvoidanceSearch {
    pub coloring: Option<Coloring>,
    pub stats: SearchStats,
}

struct State {
    rows: [Vec<VertexSet>; 2],
}

impl State {
    fn new(n: usize) -> Self {
        let blank = vec![VertexSet::with_capacity(n + 1); n + 1];
        State {
            rows: [blank.clone(), blank],
        }
    }

    fn set(&mut self, a: usize, b: usize, c: Color) {
        let rows = &mut self.rows[c as usize];
        rows[a].insert(b);
        rows[b].insert(a);
    }

    fn unset(&mut self, a: usize, b: usize, c: Color) {
        let rows = &mut self.rows[c as usize];
        rows[a].remove(b);
        rows[b].remove(a);
    }

    fn coloring(&self, n: usize) -> Coloring {
        Coloring::from_fn(n, |i, j| {
            if self.rows[Color::Red as usize][i].contains(j) {
                Color::Red
            } else {
                Color::Blue
            }
        })
    }
}

/// Backtracking over the edges of `K_n` in lexicographic order.
struct Search<'a> {
    n: usize,
    edges: Vec<(usize, usize)>,
    index: &'a PatternIndex,
    last: (usize, usize),
    nodes: AtomicU64,
    prunes: AtomicU64,
}

impl Search<'_> {
    /// Whether colouring `{a, b}` completed a copy in that colour. Pattern
    /// edges map to host edges in the same lexicographic order, so a fresh
    /// copy must send the pattern's last edge onto `{a, b}`.
    fn completes(&self, rows: &[VertexSet], a: usize, b: usize) -> bool {
        let (p, q) = self.last;
        let mut placer = Placer::new(rows, self.n, self.index);
        if a < placer.lo[p] || a > placer.hi[p] || b < placer.lo[q] || b > placer.hi[q] {
            return false;
        }
        (placer.lo[p], placer.hi[p]) = (a, a);
        (placer.lo[q], placer.hi[q]) = (b, b);
        tighten(&mut placer.hi, &mut placer.lo);
        placer.run(1, false)
    }

    fn try_color(&self, st: &mut State, idx: usize, c: Color) -> bool {
        let (a, b) = self.edges[idx];
        self.nodes.fetch_add(1, Ordering::Relaxed);
        st.set(a, b, c);
        if self.completes(&st.rows[c as usize], a, b) {
            self.prunes.fetch_add(1, Ordering::Relaxed);
            st.unset(a, b, c);
            return false;
        }
        true
    }

    fn choices(idx: usize) -> &'static [Color] {
        if idx == 0 {
            &[Color::Red]
        } else {
            &[Color::Red, Color::Blue]
        }
    }

    fn dfs(&self, st: &mut State, idx: usize) -> bool {
        if idx == self.edges.len() {
            return true;
        }
        for &c in Self::choices(idx) {
            if self.try_color(st, idx, c) {
                if self.dfs(st, idx + 1) {
                    return true;
                }
                let (a, b) = self.edges[idx];
                st.unset(a, b, c);
            }
        }
        false
    }

    /// Surviving partial colourings of the first `depth` edges, in search order.
    fn prefixes(&self, st: &mut State, idx: usize, depth: usize, out: &mut Vec<Vec<Color>>, path: &mut Vec<Color>) {
        if idx == depth {
            out.push(path.clone());
            return;
        }
        for &c in Self::choices(idx) {
            if self.try_color(st, idx, c) {
                path.push(c);
                self.prefixes(st, idx + 1, depth, out, path);
                path.pop();
                let (a, b) = self.edges[idx];
                st.unset(a, b, c);
            }
        }
    }
}

/// Searches for a colouring of `K_n` with no monochromatic copy of
/// `pattern`. Edge `{1, 2}` is fixed red, which loses nothing because
/// swapping the colours preserves avoidance. Subtrees below the first few
/// edges are explored in parallel; the returned colouring is the first one
/// in sequential search order.
pub fn avoiding_coloring(pattern: &OrderedGraph, n: usize) -> AvoidanceSearch {
    if pattern.n() > n {
        return AvoidanceSearch {
            coloring: Some(Coloring::monochromatic(n, Color::Red)),
            stats: SearchStats::default(),
        };
    }
    let Some(&last) = pattern.edges().last() else {
        return AvoidanceSearch {
            coloring: None,
            stats: SearchStats::default(),
        };
    };
    let index = PatternIndex::new(pattern);
    let search = Search {
        n,
        edges: (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect(),
        index: &index,
        last,
        nodes: AtomicU64::new(0),
        prunes: AtomicU64::new(0),
    };
    let depth = search.edges.len().min(12);
    let mut prefixes = Vec::new();
    search.prefixes(&mut State::new(n), 0, depth, &mut prefixes, &mut Vec::new());
    let found = prefixes.par_iter().find_map_first(|prefix| {
        let mut st = State::new(n);
        for (&(a, b), &c) in search.edges.iter().zip(prefix) {
            st.set(a, b, c);
        }
        search.dfs(&mut st, depth).then(|| st.coloring(n))
    });
    AvoidanceSearch {
        coloring: found,
        stats: SearchStats {
            nodes: search.nodes.load(Ordering::Relaxed),
            prunes: search.prunes.load(Ordering::Relaxed),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// A colouring with no monochromatic copy: the Ramsey number exceeds its size.
    LowerBound(Coloring),
    /// The search at this size was exhausted without an avoiding colouring.
    UpperBound { n: usize, stats: SearchStats },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub pattern: OrderedGraph,
    pub kind: CertificateKind,
}

/// Re-checks a certificate: a lower bound by exhaustive copy search in both
/// colours, an upper bound by re-running the avoidance search.
pub fn verify_certificate(cert: &Certificate) -> Result<bool> {
    match &cert.kind {
        CertificateKind::LowerBound(c) => {
            if cert.pattern.n() > c.n() {
                return Ok(true);
            }
            for color in [Color::Red, Color::Blue] {
                if find_monochromatic(c, &cert.pattern, color)?.is_some() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        CertificateKind::UpperBound { n, .. } => {
            if *n == 0 {
                return Err(Error::invalid("upper-bound certificate at size 0"));
            }
            Ok(avoiding_coloring(&cert.pattern, *n).coloring.is_none())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RamseyValue {
    Exact(usize),
    /// Every size up to the cap admits an avoiding colouring.
    AtLeast(usize),
}

impl RamseyValue {
    fn key(self) -> (usize, bool) {
        match self {
            RamseyValue::Exact(v) => (v, false),
            RamseyValue::AtLeast(v) => (v, true),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RamseyOutcome {
    pub value: RamseyValue,
    pub lower: Certificate,
    pub upper: Option<Certificate>,
    /// Search statistics for each size tried, in increasing order.
    pub searches: Vec<(usize, SearchStats)>,
}

/// `2^(2n)`, saturating.
pub fn default_cap(pattern: &OrderedGraph) -> usize {
    1usize.checked_shl(2 * pattern.n() as u32).unwrap_or(usize::MAX)
}

/// The least `N <= n_max` with no avoiding colouring of `K_N`, with a lower
/// certificate at `N - 1` and an upper certificate at `N`.
pub fn ordered_ramsey(pattern: &OrderedGraph, n_max: usize) -> Result<RamseyOutcome> {
    let k = pattern.n();
    if k == 0 {
        return Err(Error::invalid("pattern must have at least one vertex"));
    }
    if n_max < k {
        return Err(Error::invalid(format!("cap {n_max} is below the pattern size {k}")));
    }
    let mut lower = Coloring::monochromatic(k - 1, Color::Red);
    let mut searches = Vec::new();
    for n in k..=n_max {
        let run = avoiding_coloring(pattern, n);
        searches.push((n, run.stats));
        match run.coloring {
            Some(c) => lower = c,
            None => {
                return Ok(RamseyOutcome {
                    value: RamseyValue::Exact(n),
                    lower: Certificate {
                        pattern: pattern.clone(),
                        kind: CertificateKind::LowerBound(lower),
                    },
                    upper: Some(Certificate {
                        pattern: pattern.clone(),
                        kind: CertificateKind::UpperBound { n, stats: run.stats },
                    }),
                    searches,
                })
            }
        }
    }
    Ok(RamseyOutcome {
        value: RamseyValue::AtLeast(n_max + 1),
        lower: Certificate {
            pattern: pattern.clone(),
            kind: CertificateKind::LowerBound(lower),
        },
        upper: None,
        searches,
    })
}

#[derive(Clone, Debug)]
pub struct OrderingResult {
    pub graph: OrderedGraph,
    /// `order[p - 1]` is the vertex placed at position `p`.
    pub order: Vec<usize>,
    pub outcome: RamseyOutcome,
}

#[derive(Clone, Debug)]
pub struct MinMaxReport {
    /// One entry per distinct ordered graph, in order of first appearance.
    pub orderings: Vec<OrderingResult>,
    pub minr: RamseyValue,
    pub maxr: RamseyValue,
    pub min_index: usize,
    pub max_index: usize,
}

/// Ordered Ramsey numbers of every ordering of `g`, deduplicated by edge set.
pub fn min_max_ordered_ramsey(g: &UnorderedGraph, n_max: usize) -> Result<MinMaxReport> {
    let n = g.n();
    if n == 0 || n > 7 {
        return Err(Error::invalid("min/max enumeration needs 1 to 7 vertices"));
    }
    let mut distinct: HashMap<OrderedGraph, usize> = HashMap::new();
    let mut firsts: Vec<(OrderedGraph, Vec<usize>)> = Vec::new();
    for perm in permutations(n) {
        let order: Vec<usize> = perm.iter().map(|v| v + 1).collect();
        let og = g.ordered_by(&order)?;
        if !distinct.contains_key(&og) {
            distinct.insert(og.clone(), firsts.len());
            firsts.push((og, order));
        }
    }
    let mut orderings = Vec::with_capacity(firsts.len());
    for (graph, order) in firsts {
        let outcome = ordered_ramsey(&graph, n_max)?;
        orderings.push(OrderingResult { graph, order, outcome });
    }
    let keyed: Vec<(usize, bool)> = orderings.iter().map(|o| o.outcome.value.key()).collect();
    let min_index = (0..keyed.len()).min_by_key(|&i| keyed[i]).expect("n >= 1");
    let max_index = (0..keyed.len()).max_by_key(|&i| (keyed[i], std::cmp::Reverse(i))).expect("n >= 1");
    Ok(MinMaxReport {
        minr: orderings[min_index].outcome.value,
        maxr: orderings[max_index].outcome.value,
        orderings,
        min_index,
        max_index,
    })
}

/// Counts labelled graphs with a prescribed degree sequence, memoised on
/// the sorted residual degrees.
#[derive(Default)]
pub(crate) struct DegreeSequenceCounter {
    memo: HashMap<Vec<u8>, u128>,
}

/// `r`-subsets of `0..len`, lexicographic.
fn index_subsets(len: usize, r: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if r > len {
        return;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        if !visit(&cur) {
            return;
        }
        let Some(i) = (0..r).rev().find(|&i| cur[i] < len - r + i) else {
            return;
        };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

impl DegreeSequenceCounter {
    /// Graphs on `degrees.len()` labelled vertices with exactly these degrees.
    pub fn count(&mut self, degrees: &[u8]) -> u128 {
        let mut key = degrees.to_vec();
        key.sort_unstable_by(|a, b| b.cmp(a));
        while key.last() == Some(&0) {
            key.pop();
        }
        if key.is_empty() {
            return 1;
        }
        if let Some(&c) = self.memo.get(&key) {
            return c;
        }
        let r = key[0] as usize;
        let rest = &key[1..];
        let mut total = 0u128;
        index_subsets(rest.len(), r, |chosen| {
            if chosen.iter().all(|&i| rest[i] > 0) {
                let mut next = rest.to_vec();
                for &i in chosen {
                    next[i] -= 1;
                }
                total += self.count(&next);
            }
            true
        });
        self.memo.insert(key, total);
        total
    }

    /// The graph of rank `rank` (0-based) among all graphs with these
    /// degrees, ordered by vertex 1's neighbourhood first, then vertex 2's,
    /// and so on.
    pub fn unrank(&mut self, degrees: &[u8], mut rank: u128) -> Option<Vec<(usize, usize)>> {
        let n = degrees.len();
        let mut residual = degrees.to_vec();
        let mut edges = Vec::new();
        for v in 0..n {
            let r = residual[v] as usize;
            let later: Vec<usize> = (v + 1..n).collect();
            let mut pick = None;
            index_subsets(later.len(), r, |chosen| {
                if chosen.iter().any(|&i| residual[later[i]] == 0) {
                    return true;
                }
                let mut next = residual[v + 1..].to_vec();
                for &i in chosen {
                    next[later[i] - v - 1] -= 1;
                }
                let c = self.count(&next);
                if rank < c {
                    pick = Some(chosen.iter().map(|&i| later[i]).collect::<Vec<_>>());
                    false
                } else {
                    rank -= c;
                    true
                }
            });
            let chosen = pick?;
            for &u in &chosen {
                residual[u] -= 1;
                edges.push((v + 1, u + 1));
            }
            residual[v] = 0;
        }
        Some(edges)
    }
}

/// Degree data of ρ-regular graphs on `n` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RhoRegularShape {
    /// `ceil(ρ n)`, the degree sum.
    pub degree_sum: usize,
    /// `floor(ρ)`.
    pub low_degree: usize,
    /// Number of vertices of degree `floor(ρ) + 1`.
    pub high_count: usize,
}

pub fn rho_regular_shape(rho: Ratio<u64>, n: usize) -> Result<RhoRegularShape> {
    if n == 0 || *rho.numer() == 0 {
        return Err(Error::invalid("ρ and n must be positive"));
    }
    let degree_sum = (rho * Ratio::from_integer(n as u64)).ceil().to_integer() as usize;
    if !degree_sum.is_multiple_of(2) {
        return Err(Error::invalid(format!("ceil(ρn) = {degree_sum} is odd")));
    }
    let low_degree = rho.floor().to_integer() as usize;
    Ok(RhoRegularShape {
        degree_sum,
        low_degree,
        high_count: degree_sum - low_degree * n,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularCountReport {
    pub rho: String,
    pub n: usize,
    pub shape: RhoRegularShape,
    pub exact_count: u128,
    pub formula_lower_bound: f64,
    /// The asymptotic formula is only claimed for ρ >= 2.
    pub formula_applies: bool,
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `m! / (2^(m/2) (m/2)! (d!)^n (d+1)^x e^(d^2))` with `m` the degree sum
/// and `x` the number of high-degree vertices.
pub fn regular_count_formula(shape: &RhoRegularShape, n: usize) -> f64 {
    let m = shape.degree_sum;
    let d = shape.low_degree;
    let ln = ln_factorial(m)
        - (m / 2) as f64 * std::f64::consts::LN_2
        - ln_factorial(m / 2)
        - n as f64 * ln_factorial(d)
        - shape.high_count as f64 * ((d + 1) as f64).ln()
        - (d * d) as f64;
    ln.exp()
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Exact number of ρ-regular graphs on `[n]`: the choice of high-degree
/// vertices times the number of graphs for one such choice.
pub fn count_rho_regular(rho: Ratio<u64>, n: usize) -> Result<RegularCountReport> {
    let shape = rho_regular_shape(rho, n)?;
    if n > 10 {
        return Err(Error::invalid("exact enumeration is limited to n <= 10"));
    }
    let mut degrees = vec![shape.low_degree as u8; n];
    for d in degrees.iter_mut().take(shape.high_count) {
        *d += 1;
    }
    let per_choice = DegreeSequenceCounter::default().count(&degrees);
    Ok(RegularCountReport {
        rho: rho.to_string(),
        n,
        shape,
        exact_count: binomial(n, shape.high_count) * per_choice,
        formula_lower_bound: regular_count_formula(&shape, n),
        formula_applies: rho >= Ratio::from_integer(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alternating_path, nested_matching, quadratic_lb_instance};
    use proptest::prelude::*;

    fn pentagon() -> Coloring {
        let cycle = [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)];
        Coloring::from_fn(5, |i, j| if cycle.contains(&(i, j)) { Color::Red } else { Color::Blue })
    }

    /// Tries all 2^(N(N-1)/2) colourings.
    fn brute_avoidable(pattern: &OrderedGraph, n: usize) -> bool {
        let e = n * (n - 1) / 2;
        (0u64..1 << e).any(|mask| {
            let mut k = 0;
            let c = Coloring::from_fn(n, |_, _| {
                k += 1;
                if mask >> (k - 1) & 1 == 1 { Color::Red } else { Color::Blue }
            });
            [Color::Red, Color::Blue]
                .iter()
                .all(|&col| find_monochromatic(&c, pattern, col).unwrap().is_none())
        })
    }

    #[test]
    fn small_avoidance_cases() {
        let k2 = OrderedGraph::complete(2);
        assert!(avoiding_coloring(&k2, 1).coloring.is_some());
        assert!(avoiding_coloring(&k2, 2).coloring.is_none());
        let k3 = OrderedGraph::complete(3);
        let c5 = avoiding_coloring(&k3, 5).coloring.unwrap();
        assert!(verify_certificate(&Certificate {
            pattern: k3.clone(),
            kind: CertificateKind::LowerBound(c5)
        })
        .unwrap());
        assert!(avoiding_coloring(&k3, 6).coloring.is_none());
        assert!(avoiding_coloring(&nested_matching(2).unwrap(), 6).coloring.is_none());
        // an edgeless pattern is always present
        assert!(avoiding_coloring(&OrderedGraph::empty(2), 3).coloring.is_none());
    }

    #[test]
    fn ramsey_values() {
        let k2 = ordered_ramsey(&OrderedGraph::complete(2), 10).unwrap();
        assert_eq!(k2.value, RamseyValue::Exact(2));
        let k3 = ordered_ramsey(&OrderedGraph::complete(3), 10).unwrap();
        assert_eq!(k3.value, RamseyValue::Exact(6));
        assert!(verify_certificate(&k3.lower).unwrap());
        assert!(verify_certificate(k3.upper.as_ref().unwrap()).unwrap());
        let capped = ordered_ramsey(&OrderedGraph::complete(3), 5).unwrap();
        assert_eq!(capped.value, RamseyValue::AtLeast(6));
        assert!(ordered_ramsey(&OrderedGraph::complete(3), 2).is_err());
        assert_eq!(default_cap(&OrderedGraph::complete(3)), 64);
    }

    #[test]
    fn certificate_checks() {
        let k3 = OrderedGraph::complete(3);
        let good = Certificate { pattern: k3.clone(), kind: CertificateKind::LowerBound(pentagon()) };
        assert!(verify_certificate(&good).unwrap());
        let bad = Certificate {
            pattern: k3.clone(),
            kind: CertificateKind::LowerBound(Coloring::monochromatic(3, Color::Red)),
        };
        assert!(!verify_certificate(&bad).unwrap());
        let wrong_upper = Certificate {
            pattern: k3,
            kind: CertificateKind::UpperBound { n: 5, stats: SearchStats::default() },
        };
        assert!(!verify_certificate(&wrong_upper).unwrap());
    }

    #[test]
    fn quadratic_instance_certificate() {
        let q = quadratic_lb_instance(9).unwrap();
        let cert = Certificate { pattern: q.graph, kind: CertificateKind::LowerBound(q.coloring) };
        assert!(verify_certificate(&cert).unwrap());
    }

    #[test]
    fn search_agrees_with_brute_force() {
        // every ordered graph on 3 vertices, sizes up to 5 (2^10 colourings)
        for mask in 1u32..8 {
            let all = [(1, 2), (1, 3), (2, 3)];
            let edges = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            let p = OrderedGraph::from_edges(3, edges).unwrap();
            for n in 3..=5 {
                assert_eq!(
                    avoiding_coloring(&p, n).coloring.is_some(),
                    brute_avoidable(&p, n),
                    "{:?} at {n}",
                    p.edges()
                );
            }
        }
    }

    #[test]
    fn ramsey_monotone_under_subgraphs() {
        let p3 = alternating_path(3).unwrap();
        let k3 = OrderedGraph::complete(3);
        let m4 = nested_matching(2).unwrap();
        let r = |g: &OrderedGraph| match ordered_ramsey(g, 8).unwrap().value {
            RamseyValue::Exact(v) => v,
            RamseyValue::AtLeast(v) => v,
        };
        let single = OrderedGraph::from_edges(3, [(1, 3)]).unwrap();
        assert!(r(&single) <= r(&p3));
        assert!(r(&p3) <= r(&k3));
        assert!(r(&m4) >= 4 && r(&m4) <= 6);
    }

    #[test]
    fn minmax_small_graphs() {
        let edge = UnorderedGraph::from_edges(2, [(1, 2)]).unwrap();
        let r = min_max_ordered_ramsey(&edge, 6).unwrap();
        assert_eq!((r.minr, r.maxr), (RamseyValue::Exact(2), RamseyValue::Exact(2)));
        for n in 2..=3 {
            let kn = UnorderedGraph::from_edges(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)))).unwrap();
            let r = min_max_ordered_ramsey(&kn, 8).unwrap();
            assert_eq!(r.orderings.len(), 1);
            assert_eq!(r.minr, r.maxr);
        }
        let m = UnorderedGraph::from_edges(4, [(1, 2), (3, 4)]).unwrap();
        let r = min_max_ordered_ramsey(&m, 8).unwrap();
        assert_eq!(r.orderings.len(), 3);
    }

    /// Scans every graph on `n` vertices by adjacency bitmask.
    fn brute_regular(rho: Ratio<u64>, n: usize) -> u128 {
        let shape = rho_regular_shape(rho, n).unwrap();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut count = 0;
        for mask in 0u32..1 << pairs.len() {
            if mask.count_ones() as usize * 2 != shape.degree_sum {
                continue;
            }
            let mut deg = vec![0usize; n];
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    deg[i] += 1;
                    deg[j] += 1;
                }
            }
            if deg.iter().all(|&d| d == shape.low_degree || d == shape.low_degree + 1) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn regular_counts() {
        let r = |p, q| Ratio::new(p, q);
        assert_eq!(count_rho_regular(r(1, 1), 2).unwrap().exact_count, 1);
        assert_eq!(count_rho_regular(r(3, 1), 4).unwrap().exact_count, 1);
        assert_eq!(count_rho_regular(r(2, 1), 4).unwrap().exact_count, 3);
        assert_eq!(count_rho_regular(r(2, 1), 5).unwrap().exact_count, 12);
        assert!(count_rho_regular(r(1, 1), 3).is_err());
        assert!(count_rho_regular(r(2, 1), 11).is_err());
        let f = count_rho_regular(r(3, 1), 4).unwrap().formula_lower_bound;
        assert!((f - 0.000_99).abs() < 0.000_01, "{f}");
        for n in 1..=6usize {
            for (p, q) in [(1, 1), (2, 1), (3, 1), (3, 2), (5, 2), (4, 3), (7, 3)] {
                if rho_regular_shape(r(p, q), n).is_ok() {
                    assert_eq!(
                        count_rho_regular(r(p, q), n).unwrap().exact_count,
                        brute_regular(r(p, q), n),
                        "ρ = {p}/{q}, n = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn unranking_enumerates_every_graph_once() {
        let degrees = [2u8, 2, 2, 2, 2];
        let mut counter = DegreeSequenceCounter::default();
        let total = counter.count(&degrees);
        let mut seen = std::collections::BTreeSet::new();
        for rank in 0..total {
            let edges = counter.unrank(&degrees, rank).unwrap();
            let g = UnorderedGraph::from_edges(5, edges).unwrap();
            assert!(g.degrees().iter().all(|&d| d == 2));
            seen.insert(g.edges().collect::<Vec<_>>());
        }
        assert_eq!(seen.len() as u128, total);
        assert!(counter.unrank(&degrees, total).is_none());
    }

    proptest! {
        #[test]
        fn avoidance_is_monotone(mask in 1u32..64) {
            let all = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
            let edges = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            let p = OrderedGraph::from_edges(4, edges).unwrap();
            for n in 4..=5 {
                if avoiding_coloring(&p, n).coloring.is_none() {
                    prop_assert!(avoiding_coloring(&p, n + 1).coloring.is_none());
                }
            }
        }
    }
}
