//! Ordered graphs and the order-preserving containment search.
//!
//! Vertices are the positions `1..=n` of the total order. Two ordered graphs
//! are isomorphic exactly when they have the same `n` and the same edge set,
//! because the order forces the bijection; equality on [`OrderedGraph`] is
//! therefore ordered isomorphism.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::bits::VertexSet;
use crate::error::{Error, Result};

/// A simple graph on positions `1..=n` under the natural order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<VertexSet>,
}

impl OrderedGraph {
    /// The edgeless ordered graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        OrderedGraph {
            n,
            edges: Vec::new(),
            adj: vec![VertexSet::with_capacity(n + 1); n + 1],
        }
    }

    /// The ordered complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)));
        Self::from_edges(n, edges).expect("complete graph edges are valid")
    }

    /// Builds a graph from an edge list. Pairs may be given in either
    /// orientation; self-loops, duplicates and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            let (i, j) = (a.min(b), a.max(b));
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            if !set.insert((i, j)) {
                return Err(Error::DuplicateEdge(i, j));
            }
            g.adj[i].insert(j);
            g.adj[j].insert(i);
        }
        g.edges = set.into_iter().collect();
        Ok(g)
    }

    /// Like [`OrderedGraph::from_edges`] but silently merges duplicate pairs.
    pub(crate) fn from_edge_set<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let set: BTreeSet<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        Self::from_edges(n, set).expect("edge set built from valid positions")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a <= self.n && b <= self.n && a != b && self.adj[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` that precede it in the order.
    pub fn left_degree(&self, v: usize) -> usize {
        self.adj[v].count_range(1, v)
    }

    /// Neighbors of `v` that follow it in the order.
    pub fn right_degree(&self, v: usize) -> usize {
        self.adj[v].count_range(v + 1, self.n + 1)
    }

    pub(crate) fn rows(&self) -> &[VertexSet] {
        &self.adj
    }

    /// The ordered subgraph induced by the given increasing positions,
    /// relabelled to `1..=positions.len()`.
    pub fn induced(&self, positions: &[usize]) -> Result<Self> {
        for w in positions.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::invalid("induced positions must be strictly increasing"));
            }
        }
        for &v in positions {
            self.check_vertex(v)?;
        }
        let mut edges = Vec::new();
        for (a, &x) in positions.iter().enumerate() {
            for (b, &y) in positions.iter().enumerate().skip(a + 1) {
                if self.adj[x].contains(y) {
                    edges.push((a + 1, b + 1));
                }
            }
        }
        Self::from_edges(positions.len(), edges)
    }

    /// Union of two graphs on the same vertex count.
    pub fn union(&self, other: &OrderedGraph) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::invalid("union of graphs with different vertex counts"));
        }
        Ok(Self::from_edge_set(
            self.n,
            self.edges.iter().chain(other.edges.iter()).copied(),
        ))
    }

    pub fn max_degree(&self) -> usize {
        (1..=self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for u in self.adj[v].iter() {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// A labelled simple graph on `1..=n` with no vertex order attached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnorderedGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl UnorderedGraph {
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        // validation is shared with the ordered representation
        let g = OrderedGraph::from_edges(n, edges)?;
        Ok(UnorderedGraph {
            n,
            edges: g.edges().iter().copied().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (1..=self.n).filter(|&u| u != v && self.has_edge(u, v)).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a - 1] += 1;
            deg[b - 1] += 1;
        }
        deg
    }

    /// The ordered graph obtained by placing vertex `order[p - 1]` at position `p`.
    pub fn ordered_by(&self, order: &[usize]) -> Result<OrderedGraph> {
        if order.len() != self.n {
            return Err(Error::invalid("ordering must list every vertex once"));
        }
        let mut pos = vec![0usize; self.n + 1];
        for (p, &v) in order.iter().enumerate() {
            if v == 0 || v > self.n || pos[v] != 0 {
                return Err(Error::invalid("ordering must list every vertex once"));
            }
            pos[v] = p + 1;
        }
        OrderedGraph::from_edges(self.n, self.edges.iter().map(|&(a, b)| (pos[a], pos[b])))
    }

    /// Forgets the order of an ordered graph.
    pub fn from_ordered(g: &OrderedGraph) -> Self {
        UnorderedGraph {
            n: g.n(),
            edges: g.edges().iter().copied().collect(),
        }
    }
}

/// An ordered complete-graph-like structure whose pairs `{i, j}` may have `i == j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LoopedOrderedGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl LoopedOrderedGraph {
    pub fn new(n: usize) -> Self {
        LoopedOrderedGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, a: usize, b: usize) -> Result<()> {
        let (i, j) = (a.min(b), a.max(b));
        if i == 0 || j > self.n {
            return Err(Error::VertexOutOfRange { vertex: if i == 0 { i } else { j }, n: self.n });
        }
        self.edges.insert((i, j));
        Ok(())
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Witness of an order-preserving copy: `image[p - 1]` is the host position of
/// pattern vertex `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    image: Vec<usize>,
}

impl Embedding {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        if image.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("embedding image must be strictly increasing"));
        }
        if image.first() == Some(&0) {
            return Err(Error::invalid("embedding positions are 1-based"));
        }
        Ok(Embedding { image })
    }

    pub fn identity(n: usize) -> Self {
        Embedding {
            image: (1..=n).collect(),
        }
    }

    pub fn pattern_n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Host position of pattern vertex `p` (1-based).
    pub fn map(&self, p: usize) -> usize {
        self.image[p - 1]
    }

    /// Checks that this is an order-preserving embedding of `pattern` into `host`.
    pub fn is_valid(&self, host: &OrderedGraph, pattern: &OrderedGraph) -> bool {
        self.image.len() == pattern.n()
            && self.image.windows(2).all(|w| w[0] < w[1])
            && self.image.iter().all(|&v| v >= 1 && v <= host.n())
            && pattern
                .edges()
                .iter()
                .all(|&(a, b)| host.has_edge(self.map(a), self.map(b)))
    }

    /// `outer ∘ self`: maps pattern vertices through `self` and then `outer`.
    pub fn then(&self, outer: &Embedding) -> Result<Embedding> {
        let image = self
            .image
            .iter()
            .map(|&v| {
                outer
                    .image
                    .get(v.wrapping_sub(1))
                    .copied()
                    .ok_or_else(|| Error::invalid("composed embeddings do not chain"))
            })
            .collect::<Result<Vec<_>>>()?;
        Embedding::new(image)
    }
}

/// Consecutive, disjoint intervals covering `1..=n`, listed left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntervalPartition {
    sizes: Vec<usize>,
}

impl IntervalPartition {
    pub fn new(sizes: Vec<usize>) -> Self {
        IntervalPartition { sizes }
    }

    /// `count` intervals of size `d` each.
    pub fn uniform(count: usize, d: usize) -> Self {
        IntervalPartition {
            sizes: vec![d; count],
        }
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Positions of interval `k` (0-based index).
    pub fn interval(&self, k: usize) -> RangeInclusive<usize> {
        let start: usize = self.sizes[..k].iter().sum::<usize>() + 1;
        start..=start + self.sizes[k] - 1
    }

    pub fn intervals(&self) -> Vec<RangeInclusive<usize>> {
        let mut start = 1;
        self.sizes
            .iter()
            .map(|&s| {
                let r = start..=start + s - 1;
                start += s;
                r
            })
            .collect()
    }

    /// Index of the interval holding position `v`.
    pub fn interval_of(&self, v: usize) -> Option<usize> {
        let mut end = 0;
        for (k, &s) in self.sizes.iter().enumerate() {
            end += s;
            if v >= 1 && v <= end && s > 0 {
                return Some(k);
            }
        }
        None
    }

    /// The common interval size, if every interval has the same size.
    pub fn uniform_size(&self) -> Option<usize> {
        let first = *self.sizes.first()?;
        self.sizes.iter().all(|&s| s == first).then_some(first)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }
}

/// Index of pair `{i, j}`, `1 <= i < j <= n`, in lexicographic order.
#[inline]
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * (2 * n - i) / 2 + (j - i - 1)
}

/// A red/blue colouring of every edge of the ordered complete graph on `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    n: usize,
    colors: Vec<Color>,
}

impl Coloring {
    pub fn monochromatic(n: usize, color: Color) -> Self {
        Coloring {
            n,
            colors: vec![color; n * n.saturating_sub(1) / 2],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Color) -> Self {
        let mut colors = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 1..=n {
            for j in i + 1..=n {
                colors.push(f(i, j));
            }
        }
        Coloring { n, colors }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> Color {
        let (i, j) = (a.min(b), a.max(b));
        self.colors[pair_index(self.n, i, j)]
    }

    pub fn set(&mut self, a: usize, b: usize, color: Color) {
        let (i, j) = (a.min(b), a.max(b));
        let idx = pair_index(self.n, i, j);
        self.colors[idx] = color;
    }

    /// All pairs with their colours in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Color)> + '_ {
        let n = self.n;
        (1..=n)
            .flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
            .zip(self.colors.iter())
            .map(|((i, j), &c)| (i, j, c))
    }

    /// The ordered graph formed by the edges of one colour.
    pub fn color_graph(&self, color: Color) -> OrderedGraph {
        let edges = self
            .pairs()
            .filter(|&(_, _, c)| c == color)
            .map(|(i, j, _)| (i, j));
        OrderedGraph::from_edges(self.n, edges).expect("pairs of a colouring are valid edges")
    }

    /// The colouring with red and blue exchanged.
    pub fn swapped(&self) -> Coloring {
        Coloring {
            n: self.n,
            colors: self.colors.iter().map(|c| c.other()).collect(),
        }
    }
}

/// `e_G(A, B)`: edges with one endpoint in `a` and the other in `b`, each
/// counted once. For `a == b` this is the edge count of the induced subgraph.
pub fn edges_between(g: &OrderedGraph, a: &[usize], b: &[usize]) -> Result<usize> {
    let mut in_a = VertexSet::with_capacity(g.n() + 1);
    let mut in_b = VertexSet::with_capacity(g.n() + 1);
    for &v in a {
        g.check_vertex(v)?;
        in_a.insert(v);
    }
    for &v in b {
        g.check_vertex(v)?;
        in_b.insert(v);
    }
    Ok(g
        .edges()
        .iter()
        .filter(|&&(x, y)| {
            (in_a.contains(x) && in_b.contains(y)) || (in_b.contains(x) && in_a.contains(y))
        })
        .count())
}

/// Left-to-right greedy split into edge-free intervals. A new interval opens
/// exactly when the next vertex has a neighbour in the current one.
pub fn interval_partition(g: &OrderedGraph) -> IntervalPartition {
    let mut sizes = Vec::new();
    let mut start = 1;
    for v in 1..=g.n() {
        if v > start && g.neighbors(v).next_from(start).is_some_and(|u| u < v) {
            sizes.push(v - start);
            start = v;
        }
    }
    if g.n() > 0 {
        sizes.push(g.n() + 1 - start);
    }
    IntervalPartition::new(sizes)
}

/// Minimum number of edge-free intervals partitioning the vertices.
pub fn interval_chromatic_number(g: &OrderedGraph) -> usize {
    interval_partition(g).len()
}

/// Precomputed left-neighbour lists of a pattern.
pub(crate) struct PatternIndex {
    pub k: usize,
    pub left: Vec<Vec<usize>>,
}

impl PatternIndex {
    pub fn new(pattern: &OrderedGraph) -> Self {
        let k = pattern.n();
        let left = (0..=k)
            .map(|p| {
                if p == 0 {
                    Vec::new()
                } else {
                    pattern.neighbors(p).iter_range(1, p).collect()
                }
            })
            .collect();
        PatternIndex { k, left }
    }
}

/// Depth-first placement of pattern vertices in increasing order, with each
/// vertex confined to `lo[p]..=hi[p]` and to the common neighbourhood of its
/// already-placed left neighbours.
pub(crate) struct Placer<'a> {
    rows: &'a [VertexSet],
    pat: &'a PatternIndex,
    pub lo: Vec<usize>,
    pub hi: Vec<usize>,
    pub image: Vec<usize>,
    pub nodes: u64,
}

impl<'a> Placer<'a> {
    pub fn new(rows: &'a [VertexSet], host_n: usize, pat: &'a PatternIndex) -> Self {
        let k = pat.k;
        let lo = (0..=k).map(|p| p.max(1)).collect();
        let hi = (0..=k).map(|p| (host_n + p).saturating_sub(k)).collect();
        Placer {
            rows,
            pat,
            lo,
            hi,
            image: vec![0; k + 1],
            nodes: 0,
        }
    }

    /// Places vertices `from..=pat.k`. When `descending_first` is set the
    /// first vertex tries candidates from the right, so the first success
    /// realises its largest feasible image.
    pub fn run(&mut self, from: usize, descending_first: bool) -> bool {
        if from > self.pat.k {
            return true;
        }
        if descending_first {
            let lo = self.window_lo(from, from);
            let mut v = self.hi[from];
            while v >= lo && v > 0 {
                if self.admissible(from, v) {
                    self.image[from] = v;
                    self.nodes += 1;
                    if self.place(from + 1, from) {
                        return true;
                    }
                }
                v -= 1;
            }
            false
        } else {
            self.place(from, from)
        }
    }

    fn window_lo(&self, p: usize, from: usize) -> usize {
        if p > from {
            self.lo[p].max(self.image[p - 1] + 1)
        } else {
            self.lo[p]
        }
    }

    #[inline]
    fn admissible(&self, p: usize, v: usize) -> bool {
        self.pat.left[p]
            .iter()
            .all(|&q| self.rows[self.image[q]].contains(v))
    }

    fn place(&mut self, p: usize, from: usize) -> bool {
        if p > self.pat.k {
            return true;
        }
        let lo = self.window_lo(p, from);
        let hi = self.hi[p];
        if lo > hi {
            return false;
        }
        let rows = self.rows;
        match self.pat.left[p].first() {
            Some(&q) => {
                let base = &rows[self.image[q]];
                let mut cur = base.next_from(lo);
                while let Some(v) = cur {
                    if v > hi {
                        break;
                    }
                    if self.admissible(p, v) {
                        self.image[p] = v;
                        self.nodes += 1;
                        if self.place(p + 1, from) {
                            return true;
                        }
                    }
                    cur = base.next_from(v + 1);
                }
            }
            None => {
                for v in lo..=hi {
                    self.image[p] = v;
                    self.nodes += 1;
                    if self.place(p + 1, from) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Positions `c` in `2..=k` such that no pattern edge joins `1..c` to `c..=k`.
fn cut_points(pattern: &OrderedGraph) -> Vec<usize> {
    let k = pattern.n();
    let mut reach = vec![0usize; k + 2];
    for &(a, b) in pattern.edges() {
        reach[a] = reach[a].max(b);
    }
    let mut cuts = Vec::new();
    let mut furthest = 0;
    for c in 2..=k {
        furthest = furthest.max(reach[c - 1]);
        if furthest < c {
            cuts.push(c);
        }
    }
    cuts
}

/// Decides whether `pattern` is an ordered subgraph of `host` and returns the
/// lexicographically smallest witness if so.
pub fn contains(host: &OrderedGraph, pattern: &OrderedGraph) -> Option<Embedding> {
    contains_within(host, pattern, None)
}

/// Containment with optional per-vertex host windows `bounds[p - 1] = lo..=hi`.
pub fn contains_within(
    host: &OrderedGraph,
    pattern: &OrderedGraph,
    bounds: Option<&[RangeInclusive<usize>]>,
) -> Option<Embedding> {
    let k = pattern.n();
    if k == 0 {
        return Some(Embedding::identity(0));
    }
    if k > host.n() {
        return None;
    }
    let index = PatternIndex::new(pattern);
    let mut placer = Placer::new(host.rows(), host.n(), &index);
    if let Some(bounds) = bounds {
        for (p, r) in bounds.iter().enumerate().take(k) {
            placer.lo[p + 1] = placer.lo[p + 1].max(*r.start());
            placer.hi[p + 1] = placer.hi[p + 1].min(*r.end());
        }
    }
    tighten(&mut placer.hi, &mut placer.lo);

    // A suffix beyond a cut is independent of the prefix, so its largest
    // feasible starting position caps every prefix vertex.
    for c in cut_points(pattern).into_iter().rev() {
        if !placer.run(c, true) {
            return None;
        }
        let start = placer.image[c];
        placer.hi[c] = placer.hi[c].min(start);
        placer.hi[c - 1] = placer.hi[c - 1].min(start - 1);
        tighten(&mut placer.hi, &mut placer.lo);
    }
    if placer.run(1, false) {
        Some(Embedding {
            image: placer.image[1..].to_vec(),
        })
    } else {
        None
    }
}

pub(crate) fn tighten(hi: &mut [usize], lo: &mut [usize]) {
    for p in (1..hi.len() - 1).rev() {
        hi[p] = hi[p].min(hi[p + 1].saturating_sub(1));
    }
    for p in 2..lo.len() {
        lo[p] = lo[p].max(lo[p - 1] + 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn og(n: usize, edges: &[(usize, usize)]) -> OrderedGraph {
        OrderedGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    /// Every strictly increasing injection, checked edge by edge.
    fn brute_contains(host: &OrderedGraph, pattern: &OrderedGraph) -> bool {
        fn rec(host: &OrderedGraph, pattern: &OrderedGraph, img: &mut Vec<usize>) -> bool {
            let p = img.len() + 1;
            if p > pattern.n() {
                return pattern
                    .edges()
                    .iter()
                    .all(|&(a, b)| host.has_edge(img[a - 1], img[b - 1]));
            }
            let start = img.last().map_or(1, |&v| v + 1);
            for v in start..=host.n() {
                img.push(v);
                if rec(host, pattern, img) {
                    return true;
                }
                img.pop();
            }
            false
        }
        rec(host, pattern, &mut Vec::new())
    }

    fn brute_interval_chromatic(g: &OrderedGraph) -> usize {
        let n = g.n();
        if n == 0 {
            return 0;
        }
        let mut best = n;
        // bit i set = a cut between positions i+1 and i+2
        for mask in 0u32..(1 << (n - 1)) {
            let mut start = 1;
            let mut ok = true;
            for v in 1..=n {
                let closes = v == n || mask & (1 << (v - 1)) != 0;
                if closes {
                    let inside: Vec<usize> = (start..=v).collect();
                    if edges_between(g, &inside, &inside).unwrap() > 0 {
                        ok = false;
                        break;
                    }
                    start = v + 1;
                }
            }
            if ok {
                best = best.min(mask.count_ones() as usize + 1);
            }
        }
        best
    }

    fn graph_from_mask(n: usize, mask: u64) -> OrderedGraph {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &e)| e);
        OrderedGraph::from_edges(n, edges).unwrap()
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = OrderedGraph> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mask = bits
                    .iter()
                    .enumerate()
                    .fold(0u64, |m, (i, &b)| if b { m | (1 << i) } else { m });
                graph_from_mask(n, mask)
            })
        })
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            OrderedGraph::from_edges(2, [(2, 2)]).unwrap_err(),
            Error::SelfLoop(2)
        );
        assert_eq!(
            OrderedGraph::from_edges(3, [(1, 2), (2, 1)]).unwrap_err(),
            Error::DuplicateEdge(1, 2)
        );
        assert!(matches!(
            OrderedGraph::from_edges(3, [(1, 4)]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        ));
    }

    #[test]
    fn containment_examples() {
        let k2 = OrderedGraph::complete(2);
        let k3 = OrderedGraph::complete(3);
        assert_eq!(contains(&k3, &k2).unwrap().image(), &[1, 2]);
        let p3 = og(3, &[(1, 3), (2, 3)]);
        assert_eq!(contains(&k3, &p3).unwrap().image(), &[1, 2, 3]);
        let k22 = og(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]);
        assert!(contains(&k22, &k3).is_none());
        assert_eq!(contains(&k3, &OrderedGraph::empty(0)).unwrap().pattern_n(), 0);
        assert!(contains(&k2, &k3).is_none());
    }

    #[test]
    fn edges_between_examples() {
        let m4 = og(4, &[(1, 4), (2, 3)]);
        assert_eq!(edges_between(&m4, &[1, 2], &[3, 4]).unwrap(), 2);
        assert_eq!(edges_between(&m4, &[1, 2], &[1, 2]).unwrap(), 0);
        let k4 = OrderedGraph::complete(4);
        assert_eq!(edges_between(&k4, &[1, 2, 3], &[1, 2, 3]).unwrap(), 3);
        assert!(edges_between(&k4, &[5], &[1]).is_err());
    }

    #[test]
    fn interval_chromatic_examples() {
        assert_eq!(interval_chromatic_number(&OrderedGraph::complete(3)), 3);
        assert_eq!(interval_chromatic_number(&og(4, &[(1, 4), (2, 3)])), 2);
        assert_eq!(interval_chromatic_number(&OrderedGraph::empty(0)), 0);
        assert_eq!(interval_chromatic_number(&OrderedGraph::empty(5)), 1);
    }

    #[test]
    fn interval_chromatic_matches_brute_force_exhaustively() {
        for n in 0..=5usize {
            let pairs = n * n.saturating_sub(1) / 2;
            for mask in 0..(1u64 << pairs) {
                let g = graph_from_mask(n, mask);
                assert_eq!(interval_chromatic_number(&g), brute_interval_chromatic(&g));
            }
        }
    }

    #[test]
    fn cut_points_split_components_placed_side_by_side() {
        let g = og(6, &[(1, 3), (2, 3), (4, 6)]);
        assert_eq!(cut_points(&g), vec![4]);
    }

    proptest! {
        #[test]
        fn contains_agrees_with_brute_force(host in arb_graph(7), pattern in arb_graph(5)) {
            let found = contains(&host, &pattern);
            prop_assert_eq!(found.is_some(), brute_contains(&host, &pattern));
            if let Some(e) = found {
                prop_assert!(e.is_valid(&host, &pattern));
            }
        }

        #[test]
        fn interval_chromatic_matches_brute_force_on_six(g in arb_graph(6)) {
            prop_assert_eq!(interval_chromatic_number(&g), brute_interval_chromatic(&g));
        }

        #[test]
        fn containment_is_reflexive_and_composes(a in arb_graph(4), b in arb_graph(6), c in arb_graph(8)) {
            prop_assert_eq!(contains(&a, &a).unwrap(), Embedding::identity(a.n()));
            if let (Some(ab), Some(bc)) = (contains(&b, &a), contains(&c, &b)) {
                let ac = ab.then(&bc).unwrap();
                prop_assert!(ac.is_valid(&c, &a));
            }
        }

        #[test]
        fn edges_between_is_symmetric(g in arb_graph(8), sel in any::<u16>()) {
            let a: Vec<usize> = (1..=g.n()).filter(|v| sel & (1 << v) != 0).collect();
            let b: Vec<usize> = (1..=g.n()).filter(|v| sel & (1 << v) == 0).collect();
            prop_assert_eq!(edges_between(&g, &a, &b).unwrap(), edges_between(&g, &b, &a).unwrap());
            let all: Vec<usize> = (1..=g.n()).collect();
            prop_assert_eq!(edges_between(&g, &all, &all).unwrap(), g.edge_count());
        }
    }
}
