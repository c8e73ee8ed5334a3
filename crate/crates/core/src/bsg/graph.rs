//! Dense bipartite graph over index spaces `[left] x [right]`, stored as row
//! and column bitsets so degrees and co-degrees are popcounts.

#[derive(Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    row_words: usize,
    col_words: usize,
    rows: Vec<u64>,
    cols: Vec<u64>,
    edges: u64,
}

#[inline]
pub(crate) fn words(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub(crate) fn popcount_and(x: &[u64], y: &[u64]) -> u32 {
    x.iter().zip(y).map(|(a, b)| (a & b).count_ones()).sum()
}

#[inline]
pub(crate) fn popcount(x: &[u64]) -> u32 {
    x.iter().map(|a| a.count_ones()).sum()
}

#[inline]
pub(crate) fn bit(x: &[u64], i: usize) -> bool {
    x[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(x: &mut [u64], i: usize) {
    x[i / 64] |= 1 << (i % 64);
}

/// Indices of set bits.
pub(crate) fn ones(x: &[u64]) -> impl Iterator<Item = usize> + '_ {
    x.iter().enumerate().flat_map(|(w, &word)| {
        let mut m = word;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let t = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(w * 64 + t)
        })
    })
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        let (row_words, col_words) = (words(right), words(left));
        BipartiteGraph {
            left,
            right,
            row_words,
            col_words,
            rows: vec![0; left * row_words],
            cols: vec![0; right * col_words],
            edges: 0,
        }
    }

    pub fn from_edges(left: usize, right: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(left, right);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn left_size(&self) -> usize {
        self.left
    }

    pub fn right_size(&self) -> usize {
        self.right
    }

    pub fn edge_count(&self) -> u64 {
        self.edges
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        bit(self.row(a), b)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if !self.has_edge(a, b) {
            set_bit(&mut self.rows[a * self.row_words..(a + 1) * self.row_words], b);
            set_bit(&mut self.cols[b * self.col_words..(b + 1) * self.col_words], a);
            self.edges += 1;
        }
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) -> bool {
        if !self.has_edge(a, b) {
            return false;
        }
        self.rows[a * self.row_words + b / 64] &= !(1 << (b % 64));
        self.cols[b * self.col_words + a / 64] &= !(1 << (a % 64));
        self.edges -= 1;
        true
    }

    /// Neighbourhood of left vertex `a` as a bitset over `[right]`.
    #[inline]
    pub fn row(&self, a: usize) -> &[u64] {
        &self.rows[a * self.row_words..(a + 1) * self.row_words]
    }

    /// Neighbourhood of right vertex `b` as a bitset over `[left]`.
    #[inline]
    pub fn col(&self, b: usize) -> &[u64] {
        &self.cols[b * self.col_words..(b + 1) * self.col_words]
    }

    pub fn deg_left(&self, a: usize) -> u32 {
        popcount(self.row(a))
    }

    pub fn deg_right(&self, b: usize) -> u32 {
        popcount(self.col(b))
    }

    /// Common neighbours of two left vertices.
    pub fn cdeg(&self, a1: usize, a2: usize) -> u32 {
        popcount_and(self.row(a1), self.row(a2))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.left).flat_map(move |a| ones(self.row(a)).map(move |b| (a, b)))
    }

    pub fn row_words(&self) -> usize {
        self.row_words
    }

    pub fn col_words(&self) -> usize {
        self.col_words
    }
}

impl std::fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BipartiteGraph")
            .field("left", &self.left)
            .field("right", &self.right)
            .field("edges", &self.edges)
            .finish()
    }
}
