//! Fixed-capacity vertex bitsets used by the adjacency rows of every graph.

/// A set of vertex positions `0..capacity`, packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn with_capacity(capacity: usize) -> Self {
        VertexSet {
            words: vec![0; capacity.div_ceil(64)],
        }
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v >> 6)
            .is_some_and(|w| w & (1u64 << (v & 63)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    /// Number of members in the half-open range `lo..hi`.
    pub fn count_range(&self, lo: usize, hi: usize) -> usize {
        self.iter_range(lo, hi).count()
    }

    /// Smallest member `>= from`.
    pub fn next_from(&self, from: usize) -> Option<usize> {
        let mut wi = from >> 6;
        if wi >= self.words.len() {
            return None;
        }
        let mut w = self.words[wi] & (!0u64 << (from & 63));
        loop {
            if w != 0 {
                return Some((wi << 6) + w.trailing_zeros() as usize);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    /// Largest member `<= upto`.
    pub fn prev_upto(&self, upto: usize) -> Option<usize> {
        let last = self.words.len() * 64;
        if last == 0 {
            return None;
        }
        let upto = upto.min(last - 1);
        let mut wi = upto >> 6;
        let shift = 63 - (upto & 63);
        let mut w = (self.words[wi] << shift) >> shift;
        loop {
            if w != 0 {
                return Some((wi << 6) + 63 - w.leading_zeros() as usize);
            }
            if wi == 0 {
                return None;
            }
            wi -= 1;
            w = self.words[wi];
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.iter_range(0, self.words.len() * 64)
    }

    /// Members in the half-open range `lo..hi`, ascending.
    pub fn iter_range(&self, lo: usize, hi: usize) -> impl Iterator<Item = usize> + '_ {
        let mut cur = lo;
        std::iter::from_fn(move || {
            if cur >= hi {
                return None;
            }
            let v = self.next_from(cur)?;
            if v >= hi {
                cur = hi;
                return None;
            }
            cur = v + 1;
            Some(v)
        })
    }
}
