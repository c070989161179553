//! Builders for the named ordered graphs: alternating paths and cycles,
//! nested matchings, blow-ups, the T and F gadgets, orderings of 2-regular
//! graphs, and the side-by-side cycle instance with its interval colouring.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{
    interval_chromatic_number, Color, Coloring, IntervalPartition, OrderedGraph, UnorderedGraph,
};

/// An ordered graph with designated blocks and marker edges.
///
/// Blocks are consecutive intervals ending at the last vertex; positions
/// before the first block carry no block (the matching of T/F gadgets, the
/// outer pair of odd alternating cycles).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockedOrderedGraph {
    pub graph: OrderedGraph,
    pub blocks: IntervalPartition,
    pub inner: Option<(usize, usize)>,
    pub outer: Option<(usize, usize)>,
}

impl BlockedOrderedGraph {
    /// Position just before the first block.
    pub fn block_offset(&self) -> usize {
        self.graph.n() - self.blocks.n()
    }

    /// Positions of block `i` (0-based).
    pub fn block(&self, i: usize) -> std::ops::RangeInclusive<usize> {
        let r = self.blocks.interval(i);
        let off = self.block_offset();
        r.start() + off..=r.end() + off
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

/// Position of path vertex `v_i` (1-based along the path) in the alternating
/// order: odd-indexed vertices ascending, then even-indexed descending.
pub fn alternating_position(n: usize, i: usize) -> usize {
    if i % 2 == 1 {
        i.div_ceil(2)
    } else {
        n.div_ceil(2) + (n / 2 - i / 2 + 1)
    }
}

/// The alternating path `P_n`.
pub fn alternating_path(n: usize) -> Result<OrderedGraph> {
    if n == 0 {
        return Err(Error::invalid("alternating path needs at least one vertex"));
    }
    OrderedGraph::from_edges(
        n,
        (1..n).map(|i| (alternating_position(n, i), alternating_position(n, i + 1))),
    )
}

/// The nested matching `M_{2n}` with edges `{i, 2n + 1 - i}`.
pub fn nested_matching(pairs: usize) -> Result<OrderedGraph> {
    if pairs == 0 {
        return Err(Error::invalid("nested matching needs at least one pair"));
    }
    OrderedGraph::from_edges(2 * pairs, (1..=pairs).map(|i| (i, 2 * pairs + 1 - i)))
}

/// `K_{r,s}` with the side of size `r` as the left interval.
pub fn complete_bipartite(r: usize, s: usize) -> Result<OrderedGraph> {
    if r == 0 || s == 0 {
        return Err(Error::invalid("complete bipartite sides must be non-empty"));
    }
    OrderedGraph::from_edges(
        r + s,
        (1..=r).flat_map(|i| (r + 1..=r + s).map(move |j| (i, j))),
    )
}

/// The alternating cycle on `m >= 3` vertices with its blocks and markers.
pub fn alternating_cycle(m: usize) -> Result<BlockedOrderedGraph> {
    if m < 3 {
        return Err(Error::invalid("alternating cycle needs at least 3 vertices"));
    }
    let odd = m % 2 == 1;
    let n = if odd { (m - 1) / 2 } else { (m + 2) / 2 };
    let path = alternating_path(n)?;
    let middle = (n + 1).div_ceil(2);
    let unsplit = |i: usize| i == middle || (!odd && i == 1);

    let mut next = if odd { 3 } else { 1 };
    let mut v = vec![0usize; n + 1];
    let mut w = vec![0usize; n + 1];
    let mut sizes = Vec::with_capacity(n);
    for i in 1..=n {
        v[i] = next;
        w[i] = if unsplit(i) { next } else { next + 1 };
        sizes.push(w[i] - v[i] + 1);
        next = w[i] + 1;
    }
    debug_assert_eq!(next, m + 1);

    let mut edges = BTreeSet::new();
    for &(i, j) in path.edges() {
        edges.insert((v[i], w[j]));
        edges.insert((w[i], v[j]));
    }
    let (inner, outer) = if odd {
        edges.insert((1, 2));
        edges.insert((1, w[1]));
        edges.insert((2, v[1]));
        let inner = (n >= 2).then_some((n + 2, n + 3));
        (inner, Some((1, 2)))
    } else {
        (Some((n - 1, n)), None)
    };
    let graph = OrderedGraph::from_edges(m, edges)?;
    for (a, b) in inner.iter().chain(outer.iter()) {
        if !graph.has_edge(*a, *b) {
            return Err(Error::Invariant(format!(
                "alternating cycle marker {{{a}, {b}}} is not an edge"
            )));
        }
    }
    Ok(BlockedOrderedGraph {
        graph,
        blocks: IntervalPartition::new(sizes),
        inner,
        outer,
    })
}

/// The `k`-blow-up `P^k_n` of the alternating path.
pub fn blowup_path(n: usize, k: usize) -> Result<BlockedOrderedGraph> {
    if k == 0 {
        return Err(Error::invalid("blow-up factor must be positive"));
    }
    let path = alternating_path(n)?;
    let graph = blow_up(&path, k, 0, n * k);
    Ok(BlockedOrderedGraph {
        graph,
        blocks: IntervalPartition::uniform(n, k),
        inner: None,
        outer: None,
    })
}

/// Replaces every vertex of `base` by `k` consecutive positions starting
/// after `offset`, and every edge by a complete bipartite graph.
fn blow_up(base: &OrderedGraph, k: usize, offset: usize, total: usize) -> OrderedGraph {
    let block = |i: usize| offset + (i - 1) * k + 1..=offset + i * k;
    let edges = base
        .edges()
        .iter()
        .flat_map(|&(i, j)| block(i).flat_map(move |a| block(j).map(move |b| (a, b))));
    OrderedGraph::from_edges(total, edges).expect("blown-up edges are distinct")
}

/// The gadget `T^k_n`: the nested matching on `2n` positions followed by
/// blocks `B_1..B_n`, with `B_i` joined to both ends of the `i`-th outermost
/// matching edge.
pub fn tee_graph(n: usize, k: usize) -> Result<BlockedOrderedGraph> {
    if n == 0 || k == 0 {
        return Err(Error::invalid("tee graph parameters must be positive"));
    }
    let total = (k + 2) * n;
    let mut edges: Vec<(usize, usize)> = (1..=n).map(|i| (i, 2 * n + 1 - i)).collect();
    for i in 1..=n {
        for w in 2 * n + (i - 1) * k + 1..=2 * n + i * k {
            edges.push((i, w));
            edges.push((2 * n + 1 - i, w));
        }
    }
    Ok(BlockedOrderedGraph {
        graph: OrderedGraph::from_edges(total, edges)?,
        blocks: IntervalPartition::uniform(n, k),
        inner: None,
        outer: None,
    })
}

/// The gadget `F^k_n`: `T^k_n` together with `P^k_n` on the same blocks.
pub fn eff_graph(n: usize, k: usize) -> Result<BlockedOrderedGraph> {
    let tee = tee_graph(n, k)?;
    let path = alternating_path(n)?;
    let blown = blow_up(&path, k, 2 * n, (k + 2) * n);
    Ok(BlockedOrderedGraph {
        graph: tee.graph.union(&blown)?,
        ..tee
    })
}

/// Cycle lengths of a 2-regular graph, in the order they are processed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoRegularSpec {
    cycle_lengths: Vec<usize>,
}

impl TwoRegularSpec {
    pub fn new(cycle_lengths: Vec<usize>) -> Result<Self> {
        if cycle_lengths.is_empty() {
            return Err(Error::invalid("a 2-regular graph needs at least one cycle"));
        }
        if let Some(&bad) = cycle_lengths.iter().find(|&&l| l < 3) {
            return Err(Error::invalid(format!("cycle length {bad} is below 3")));
        }
        Ok(TwoRegularSpec { cycle_lengths })
    }

    pub fn lengths(&self) -> &[usize] {
        &self.cycle_lengths
    }

    pub fn total(&self) -> usize {
        self.cycle_lengths.iter().sum()
    }

    pub fn is_bipartite(&self) -> bool {
        self.cycle_lengths.iter().all(|l| l % 2 == 0)
    }
}

/// An ordering of a disjoint union of cycles, remembering which vertex is
/// which: `cycles[c]` lists the positions of cycle `c` in cyclic order.
#[derive(Clone, Debug)]
pub struct OrderedCycles {
    pub graph: OrderedGraph,
    pub cycles: Vec<Vec<usize>>,
}

/// Walks an alternating cycle from its first vertex, returning local
/// positions in cyclic order.
fn cyclic_order(g: &OrderedGraph) -> Vec<usize> {
    let mut order = vec![1];
    let mut prev = 0;
    let mut cur = 1;
    loop {
        let next = g
            .neighbors(cur)
            .iter()
            .find(|&u| u != prev)
            .expect("cycle vertices have two neighbours");
        if next == 1 {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

/// Orders the disjoint union of the cycles in `spec` by nesting alternating
/// cycles: each cycle (or, for odd cycles, everything but the outer pair)
/// goes between the ends of the previous cycle's inner edge, or right after
/// the previous cycle when that is a triangle. Outer pairs of odd cycles nest
/// inside the outer pair of the preceding odd cycle, the first one taking
/// the two leftmost positions.
pub fn order_two_regular(spec: &TwoRegularSpec, bipartite_mode: bool) -> Result<OrderedCycles> {
    if bipartite_mode {
        if let Some(&bad) = spec.lengths().iter().find(|&&l| l % 2 == 1 || l < 4) {
            return Err(Error::invalid(format!(
                "bipartite mode needs even cycles of length at least 4, got {bad}"
            )));
        }
    }
    // Labels are (cycle, local position) pairs; `seq` is the left-to-right order.
    let mut seq: Vec<(usize, usize)> = Vec::with_capacity(spec.total());
    let mut cycles = Vec::with_capacity(spec.lengths().len());
    let mut last_outer: Option<usize> = None;
    for (c, &len) in spec.lengths().iter().enumerate() {
        let cyc = alternating_cycle(len)?;
        let odd = len % 2 == 1;
        let body_from = if odd { 3 } else { 1 };
        let body: Vec<(usize, usize)> = (body_from..=len).map(|p| (c, p)).collect();

        let anchor = if c == 0 {
            seq.len()
        } else {
            let prev_len = spec.lengths()[c - 1];
            let prev: &BlockedOrderedGraph = &cycles[c - 1];
            let after = match prev.inner {
                Some((x, _)) if prev_len != 3 => x,
                _ => prev_len,
            };
            index_of(&seq, (c - 1, after)) + 1
        };
        seq.splice(anchor..anchor, body);

        if odd {
            match last_outer {
                None => {
                    seq.splice(0..0, [(c, 1), (c, 2)]);
                }
                Some(j) => {
                    let at = index_of(&seq, (j, 1)) + 1;
                    seq.splice(at..at, [(c, 1), (c, 2)]);
                }
            }
            last_outer = Some(c);
        }
        cycles.push(cyc);
    }

    let mut position = vec![Vec::new(); cycles.len()];
    for (c, cyc) in cycles.iter().enumerate() {
        position[c] = vec![0usize; cyc.graph.n() + 1];
    }
    for (p, &(c, local)) in seq.iter().enumerate() {
        position[c][local] = p + 1;
    }
    let mut edges = Vec::new();
    let mut walks = Vec::new();
    for (c, cyc) in cycles.iter().enumerate() {
        edges.extend(
            cyc.graph
                .edges()
                .iter()
                .map(|&(a, b)| (position[c][a], position[c][b])),
        );
        walks.push(
            cyclic_order(&cyc.graph)
                .into_iter()
                .map(|l| position[c][l])
                .collect(),
        );
    }
    Ok(OrderedCycles {
        graph: OrderedGraph::from_edges(seq.len(), edges)?,
        cycles: walks,
    })
}

fn index_of(seq: &[(usize, usize)], label: (usize, usize)) -> usize {
    seq.iter()
        .position(|&l| l == label)
        .expect("label placed earlier")
}

/// Orders a graph of maximum degree 2 by padding every path component into
/// a cycle, ordering the resulting 2-regular graph, and restricting to the
/// original vertices. Returns the ordered graph and, for every position, the
/// original vertex placed there.
pub fn order_max_degree_two(
    g: &UnorderedGraph,
    bipartite_mode: bool,
) -> Result<(OrderedGraph, Vec<usize>)> {
    let deg = g.degrees();
    if deg.iter().any(|&d| d > 2) {
        return Err(Error::invalid("graph has a vertex of degree above 2"));
    }
    let og = OrderedGraph::from_edges(g.n(), g.edges())?;
    let mut lengths = Vec::new();
    // Original vertices of each component in walk order (cycle or path).
    let mut walks: Vec<Vec<usize>> = Vec::new();
    for comp in og.components() {
        let is_cycle = comp.iter().all(|&v| deg[v - 1] == 2);
        let start = if is_cycle {
            comp[0]
        } else {
            *comp.iter().find(|&&v| deg[v - 1] <= 1).expect("paths have an end")
        };
        let mut walk = vec![start];
        let mut prev = 0;
        let mut cur = start;
        while let Some(next) = og.neighbors(cur).iter().find(|&u| u != prev && u != start) {
            if walk.contains(&next) {
                break;
            }
            walk.push(next);
            prev = cur;
            cur = next;
        }
        let len = walk.len();
        let cycle_len = if is_cycle {
            if bipartite_mode && len % 2 == 1 {
                return Err(Error::invalid("odd cycle in bipartite mode"));
            }
            len
        } else if bipartite_mode {
            // a path needs one spare cycle vertex so the closing edge is dropped
            (len + 1 + (len + 1) % 2).max(4)
        } else {
            (len + 1).max(3)
        };
        lengths.push(cycle_len);
        walks.push(walk);
    }
    if lengths.is_empty() {
        return Ok((OrderedGraph::empty(0), Vec::new()));
    }
    let spec = TwoRegularSpec::new(lengths)?;
    let ordered = order_two_regular(&spec, bipartite_mode)?;
    let mut placed: Vec<(usize, usize)> = Vec::with_capacity(g.n());
    for (walk, cyc) in walks.iter().zip(&ordered.cycles) {
        for (&orig, &pos) in walk.iter().zip(cyc) {
            placed.push((pos, orig));
        }
    }
    placed.sort_unstable();
    let positions: Vec<usize> = placed.iter().map(|&(p, _)| p).collect();
    let order: Vec<usize> = placed.iter().map(|&(_, v)| v).collect();
    let restricted = ordered.graph.induced(&positions)?;
    let expected = g.ordered_by(&order)?;
    if restricted != expected {
        return Err(Error::Invariant(
            "padded ordering does not restrict to the input graph".into(),
        ));
    }
    Ok((restricted, order))
}

/// Orders a graph by a greedy proper colouring, placing colour classes as
/// consecutive intervals. Returns the ordered graph and the vertex placed at
/// each position.
pub fn order_by_proper_coloring(
    g: &UnorderedGraph,
    max_degree: usize,
) -> Result<(OrderedGraph, Vec<usize>)> {
    if let Some(d) = g.degrees().into_iter().find(|&d| d > max_degree) {
        return Err(Error::invalid(format!(
            "vertex degree {d} exceeds the stated maximum {max_degree}"
        )));
    }
    let n = g.n();
    let mut color = vec![usize::MAX; n + 1];
    for v in 1..=n {
        let used: BTreeSet<usize> = g
            .neighbors(v)
            .into_iter()
            .map(|u| color[u])
            .filter(|&c| c != usize::MAX)
            .collect();
        color[v] = (0..).find(|c| !used.contains(c)).expect("unbounded range");
    }
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|&v| (color[v], v));
    let ordered = g.ordered_by(&order)?;
    debug_assert!(interval_chromatic_number(&ordered) <= max_degree + 1);
    Ok((ordered, order))
}

/// The disjoint union of one long cycle and many triangles, placed side by
/// side, together with the interval colouring that avoids it.
#[derive(Clone, Debug)]
pub struct QuadraticInstance {
    pub graph: OrderedGraph,
    pub coloring: Coloring,
    pub interval_size: usize,
    pub interval_count: usize,
}

/// The instance for `n` divisible by 9: the alternating cycle on `n/3`
/// vertices followed by `2n/9` triangles, and the colouring of the complete
/// graph on `(n/3 - 1) * 4n/9` vertices that is blue inside each interval of
/// size `n/3 - 1` and red across intervals.
pub fn quadratic_lb_instance(n: usize) -> Result<QuadraticInstance> {
    if n < 9 || !n.is_multiple_of(9) {
        return Err(Error::invalid("instance size must be a positive multiple of 9"));
    }
    let long = n / 3;
    let triangles = 2 * n / 9;
    let mut edges = Vec::new();
    let cycle = alternating_cycle(long)?;
    edges.extend(cycle.graph.edges().iter().copied());
    let mut offset = long;
    for _ in 0..triangles {
        edges.extend([(offset + 1, offset + 2), (offset + 1, offset + 3), (offset + 2, offset + 3)]);
        offset += 3;
    }
    let graph = OrderedGraph::from_edges(n, edges)?;
    let interval_size = long - 1;
    let interval_count = 4 * n / 9;
    let total = interval_size * interval_count;
    let coloring = Coloring::from_fn(total, |i, j| {
        if (i - 1) / interval_size == (j - 1) / interval_size {
            Color::Blue
        } else {
            Color::Red
        }
    });
    Ok(QuadraticInstance {
        graph,
        coloring,
        interval_size,
        interval_count,
    })
}
