//! 0/1 matrix containment and the permutation-matrix unavoidability check.
//!
//! A matrix `a` with `R` rows and `C` columns is read as the bipartite
//! ordered graph on `R + C` positions with rows first; `b` is contained in
//! `a` exactly when the graph of `b` embeds with rows landing on rows and
//! columns on columns, so the containment search is the ordered one.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{contains_within, Color, Coloring, OrderedGraph};
use crate::stochastic::{Rng, Seed};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<bool>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid("matrix dimensions must be at least 1"));
        }
        Ok(BinaryMatrix {
            rows,
            cols,
            entries: vec![false; rows * cols],
        })
    }

    pub fn from_rows(rows: Vec<Vec<bool>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("matrix rows have different lengths"));
        }
        let mut m = BinaryMatrix::zeros(r, c)?;
        m.entries = rows.into_iter().flatten().collect();
        Ok(m)
    }

    /// Builds a matrix from the low `rows * cols` bits of `mask`, row-major,
    /// bit 0 being entry (0, 0).
    pub fn from_mask(rows: usize, cols: usize, mask: u64) -> Result<Self> {
        let mut m = BinaryMatrix::zeros(rows, cols)?;
        for (k, e) in m.entries.iter_mut().enumerate() {
            *e = mask >> k & 1 == 1;
        }
        Ok(m)
    }

    /// The permutation matrix with a 1 at `(i, perm[i])`, 0-based.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut m = BinaryMatrix::zeros(n, n)?;
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid("not a permutation of 0..n"));
            }
            m.set(i, p, true);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |r| (0..self.cols).filter(move |&c| self.get(r, c)).map(move |c| (r, c)))
    }

    /// Rows then columns as positions of an ordered graph; each 1 at `(r, c)`
    /// becomes the edge `{r + 1, rows + c + 1}`.
    pub fn to_ordered_graph(&self) -> OrderedGraph {
        OrderedGraph::from_edges(
            self.rows + self.cols,
            self.ones().map(|(r, c)| (r + 1, self.rows + c + 1)),
        )
        .expect("row and column positions are distinct")
    }
}

/// Whether `b` arises from `a` by deleting rows and columns and turning some
/// 1s into 0s.
pub fn pattern_contained(a: &BinaryMatrix, b: &BinaryMatrix) -> bool {
    if b.rows > a.rows || b.cols > a.cols {
        return false;
    }
    let host = a.to_ordered_graph();
    let pattern = b.to_ordered_graph();
    let bounds: Vec<_> = (0..b.rows)
        .map(|_| 1..=a.rows)
        .chain((0..b.cols).map(|_| a.rows + 1..=a.rows + a.cols))
        .collect();
    contains_within(&host, &pattern, Some(&bounds)).is_some()
}

pub fn complement(a: &BinaryMatrix) -> BinaryMatrix {
    BinaryMatrix {
        entries: a.entries.iter().map(|e| !e).collect(),
        ..a.clone()
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unavoidability {
    pub holds: bool,
    /// A matrix `A` and a permutation matrix contained in neither `A` nor its complement.
    pub counterexample: Option<(BinaryMatrix, BinaryMatrix)>,
    pub matrices_checked: u64,
}

fn violated(a: &BinaryMatrix, perms: &[BinaryMatrix]) -> Option<BinaryMatrix> {
    let abar = complement(a);
    perms
        .iter()
        .find(|p| !pattern_contained(a, p) && !pattern_contained(&abar, p))
        .cloned()
}

/// Checks every `N x N` matrix against every `n x n` permutation matrix.
/// The reported counterexample is the one with the smallest mask.
pub fn permutation_unavoidable(n: usize, big_n: usize) -> Result<Unavoidability> {
    if n == 0 || big_n == 0 {
        return Err(Error::invalid("matrix sizes must be at least 1"));
    }
    if big_n > 4 || n > 2 {
        return Err(Error::invalid(
            "exhaustive mode is limited to N <= 4 and n <= 2; use the sampling mode",
        ));
    }
    let perms: Vec<BinaryMatrix> = permutations(n)
        .iter()
        .map(|p| BinaryMatrix::permutation(p))
        .collect::<Result<_>>()?;
    let total = 1u64 << (big_n * big_n);
    let found = (0..total).into_par_iter().find_map_first(|mask| {
        let a = BinaryMatrix::from_mask(big_n, big_n, mask).expect("non-empty");
        violated(&a, &perms).map(|p| (a, p))
    });
    Ok(Unavoidability {
        holds: found.is_none(),
        matrices_checked: match &found {
            Some((a, _)) => mask_of(a) + 1,
            None => total,
        },
        counterexample: found,
    })
}

fn mask_of(a: &BinaryMatrix) -> u64 {
    a.entries
        .iter()
        .enumerate()
        .fold(0, |m, (k, &e)| m | (u64::from(e) << k))
}

/// Seeded search for counterexamples among uniformly random `N x N` matrices.
/// Trial `k` draws its matrix from the stream derived from `seed` and `k`.
pub fn permutation_unavoidable_sampled(
    n: usize,
    big_n: usize,
    trials: u64,
    seed: Seed,
) -> Result<Unavoidability> {
    if n == 0 || big_n == 0 || n > 8 {
        return Err(Error::invalid("sampling mode needs 1 <= n <= 8 and N >= 1"));
    }
    let perms: Vec<BinaryMatrix> = permutations(n)
        .iter()
        .map(|p| BinaryMatrix::permutation(p))
        .collect::<Result<_>>()?;
    let found = (0..trials).into_par_iter().find_map_first(|k| {
        let mut rng = Rng::stream(seed, k);
        let mut a = BinaryMatrix::zeros(big_n, big_n).expect("non-empty");
        for e in a.entries.iter_mut() {
            *e = rng.coin();
        }
        violated(&a, &perms).map(|p| (a, p))
    });
    Ok(Unavoidability {
        holds: found.is_none(),
        matrices_checked: trials,
        counterexample: found,
    })
}

/// The matrix of a colouring: rows are the first `floor(N/2)` positions,
/// columns the rest, and a red pair is a 1.
pub fn coloring_to_matrix(c: &Coloring) -> Result<BinaryMatrix> {
    let half = c.n() / 2;
    let mut m = BinaryMatrix::zeros(half, c.n() - half)?;
    for r in 1..=half {
        for col in half + 1..=c.n() {
            m.set(r - 1, col - half - 1, c.get(r, col) == Color::Red);
        }
    }
    Ok(m)
}

/// The permutation matrix of a matching whose edges all join `1..=n` to
/// `n+1..=2n`.
pub fn matching_to_matrix(g: &OrderedGraph) -> Result<BinaryMatrix> {
    let n = g.n() / 2;
    if !g.n().is_multiple_of(2) || g.edge_count() != n {
        return Err(Error::invalid("not a perfect matching on an even number of vertices"));
    }
    let mut perm = vec![usize::MAX; n];
    for &(a, b) in g.edges() {
        if a > n || b <= n {
            return Err(Error::invalid("matching edge does not cross the midpoint"));
        }
        perm[a - 1] = b - n - 1;
    }
    BinaryMatrix::permutation(&perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> BinaryMatrix {
        BinaryMatrix::from_rows(
            rows.iter()
                .map(|r| r.chars().map(|c| c == '1').collect())
                .collect(),
        )
        .unwrap()
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    }

    /// Every row subset and column subset of the right sizes.
    fn brute_contained(a: &BinaryMatrix, b: &BinaryMatrix) -> bool {
        if b.rows > a.rows || b.cols > a.cols {
            return false;
        }
        subsets(a.rows, b.rows).iter().any(|rs| {
            subsets(a.cols, b.cols)
                .iter()
                .any(|cs| b.ones().all(|(r, c)| a.get(rs[r], cs[c])))
        })
    }

    #[test]
    fn containment_examples() {
        assert!(!pattern_contained(&m(&["0"]), &m(&["1"])));
        assert!(pattern_contained(&m(&["11", "11"]), &m(&["10", "01"])));
        assert!(!pattern_contained(&m(&["10", "01"]), &m(&["01", "10"])));
        assert!(pattern_contained(&m(&["010", "001", "100"]), &m(&["10", "01"])));
        assert!(pattern_contained(&m(&["000", "000"]), &m(&["00"])));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&m(&["0"])), m(&["1"]));
        assert_eq!(complement(&m(&["10", "01"])), m(&["01", "10"]));
    }

    #[test]
    fn permutations_are_lexicographic() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(permutations(1), vec![vec![0]]);
    }

    #[test]
    fn unavoidability_small_cases() {
        assert!(permutation_unavoidable(1, 1).unwrap().holds);
        let r = permutation_unavoidable(2, 2).unwrap();
        assert!(!r.holds);
        let (a, p) = r.counterexample.unwrap();
        assert_eq!(a, m(&["10", "00"]));
        assert!(!brute_contained(&a, &p) && !brute_contained(&complement(&a), &p));
        assert!(permutation_unavoidable(3, 3).is_err());
        let s = permutation_unavoidable_sampled(2, 2, 200, Seed(7)).unwrap();
        assert!(!s.holds);
    }

    #[test]
    fn permutation_in_all_ones() {
        for n in 1..=4 {
            let ones = complement(&BinaryMatrix::zeros(n + 1, n + 2).unwrap());
            for p in permutations(n) {
                assert!(pattern_contained(&ones, &BinaryMatrix::permutation(&p).unwrap()));
            }
        }
    }

    #[test]
    fn matrix_dictionary() {
        let g = OrderedGraph::from_edges(4, [(1, 4), (2, 3)]).unwrap();
        assert_eq!(matching_to_matrix(&g).unwrap(), m(&["01", "10"]));
        let c = Coloring::from_fn(4, |i, j| if i == 1 && j == 3 { Color::Red } else { Color::Blue });
        assert_eq!(coloring_to_matrix(&c).unwrap(), m(&["10", "00"]));
    }

    fn matrix(max: usize) -> impl Strategy<Value = BinaryMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c).prop_map(move |e| BinaryMatrix {
                rows: r,
                cols: c,
                entries: e,
            })
        })
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(a in matrix(6), b in matrix(3)) {
            prop_assert_eq!(pattern_contained(&a, &b), brute_contained(&a, &b));
        }

        #[test]
        fn monotone_in_host(a in matrix(5), b in matrix(3), r in 0usize..5, c in 0usize..5) {
            let mut more = a.clone();
            more.set(r % a.rows, c % a.cols, true);
            if pattern_contained(&a, &b) {
                prop_assert!(pattern_contained(&more, &b));
            }
        }

        #[test]
        fn monotone_under_pattern_deletion(a in matrix(5), b in matrix(3), r in 0usize..3) {
            if pattern_contained(&a, &b) && b.rows > 1 {
                let drop = r % b.rows;
                let rows: Vec<Vec<bool>> = (0..b.rows)
                    .filter(|&i| i != drop)
                    .map(|i| (0..b.cols).map(|j| b.get(i, j)).collect())
                    .collect();
                prop_assert!(pattern_contained(&a, &BinaryMatrix::from_rows(rows).unwrap()));
            }
        }

        #[test]
        fn complement_is_an_involution(a in matrix(6)) {
            prop_assert_eq!(complement(&complement(&a)), a);
        }
    }
}
