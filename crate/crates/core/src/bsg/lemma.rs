//! The Graph Lemma: from a dense `G ⊆ A x B`, find `A' ⊆ A`, `B' ⊆ B` such
//! that every pair of `A' x B'` is joined by many paths of length 3.

use super::graph::{bit, ones, popcount_and, set_bit, words, BipartiteGraph};
use crate::error::{Error, Result};
use crate::work::WorkCounter;
use rand::seq::index::sample;
use rand::Rng;

/// Populations at or below this size are evaluated exactly by the sampling
/// variant.
pub const EXACT_BELOW: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct GraphLemmaResult {
    pub a_prime: Vec<usize>,
    pub b_prime: Vec<usize>,
    pub alpha: f64,
    /// Pivots `b*` examined.
    pub iterations: usize,
}

/// Threshold constants of the lemma for a graph with parts `na`, `nb`.
#[derive(Debug, Clone, Copy)]
pub struct Thresholds {
    /// Minimum degree for `A0`.
    pub heavy: f64,
    /// Minimum `|A*|`.
    pub pivot: f64,
    /// A pair `(a1, a2)` is bad when its co-degree is at most this.
    pub bad_cdeg: f64,
    /// Maximum `|BAD*|` per unit of `|A*|`.
    pub bad_total_per: f64,
    /// Maximum bad-degree for `A'`.
    pub bad_deg: f64,
}

impl Thresholds {
    pub fn new(alpha: f64, na: usize, nb: usize) -> Self {
        let (na, nb) = (na as f64, nb as f64);
        Thresholds {
            heavy: alpha * nb / 2.0,
            pivot: alpha * na / 4.0,
            bad_cdeg: alpha.powi(3) * nb / 2048.0,
            bad_total_per: alpha * alpha * na / 256.0,
            bad_deg: alpha * alpha * na / 64.0,
        }
    }
}

fn check_pre(g: &BipartiteGraph, alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    let required = alpha * g.left_size() as f64 * g.right_size() as f64;
    if g.edge_count() == 0 || (g.edge_count() as f64) < required * (1.0 - 1e-12) {
        return Err(Error::GraphTooSparse { edges: g.edge_count(), required });
    }
    Ok(())
}

fn bitset_of(idx: &[usize], n: usize) -> Vec<u64> {
    let mut s = vec![0u64; words(n)];
    for &i in idx {
        set_bit(&mut s, i);
    }
    s
}

/// `B' = { b : |N(b) ∩ A'| >= alpha |A'| / 4 }`, exactly.
fn right_side(g: &BipartiteGraph, a_prime: &[usize], alpha: f64, work: &mut WorkCounter) -> Vec<usize> {
    let mask = bitset_of(a_prime, g.left_size());
    let need = alpha * a_prime.len() as f64 / 4.0;
    work.bsg((g.right_size() * g.col_words()) as u64);
    (0..g.right_size()).filter(|&b| popcount_and(g.col(b), &mask) as f64 >= need).collect()
}

/// Deterministic variant. Degrees and co-degrees are computed exactly (the
/// co-degree table is a naive Boolean matrix product), and pivots `b*` are
/// tried in index order until the bad-pair test passes.
pub fn graph_lemma_det(g: &BipartiteGraph, alpha: f64, work: &mut WorkCounter) -> Result<GraphLemmaResult> {
    check_pre(g, alpha)?;
    let (na, nb) = (g.left_size(), g.right_size());
    let th = Thresholds::new(alpha, na, nb);
    work.bsg((na * g.row_words()) as u64);
    let a0: Vec<usize> = (0..na).filter(|&a| g.deg_left(a) as f64 >= th.heavy).collect();
    let aw = words(na);
    let in_a0 = bitset_of(&a0, na);
    // bad[a1] marks the a2 ∈ A0 with cdeg(a1, a2) at most the threshold
    let mut bad = vec![0u64; na * aw];
    for &a1 in &a0 {
        let row = &mut bad[a1 * aw..(a1 + 1) * aw];
        for &a2 in &a0 {
            if g.cdeg(a1, a2) as f64 <= th.bad_cdeg {
                set_bit(row, a2);
            }
        }
    }
    work.bsg((a0.len() * a0.len() * g.row_words()) as u64);
    let mut star = vec![0u64; aw];
    for b_star in 0..nb {
        for ((s, c), z) in star.iter_mut().zip(g.col(b_star)).zip(&in_a0) {
            *s = c & z;
        }
        let a_star: Vec<usize> = ones(&star).collect();
        work.bsg((aw + a_star.len() * aw) as u64);
        if (a_star.len() as f64) < th.pivot || a_star.is_empty() {
            continue;
        }
        let bad_deg: Vec<u32> = a_star.iter().map(|&a| popcount_and(&bad[a * aw..(a + 1) * aw], &star)).collect();
        let bad_total: u64 = bad_deg.iter().map(|&d| d as u64).sum();
        if bad_total as f64 > th.bad_total_per * a_star.len() as f64 {
            continue;
        }
        let a_prime: Vec<usize> =
            a_star.iter().zip(&bad_deg).filter(|(_, &d)| d as f64 <= th.bad_deg).map(|(&a, _)| a).collect();
        let b_prime = right_side(g, &a_prime, alpha, work);
        if a_prime.is_empty() || b_prime.is_empty() {
            continue;
        }
        return Ok(GraphLemmaResult { a_prime, b_prime, alpha, iterations: b_star + 1 });
    }
    Err(Error::NoPivot)
}

/// Sample sizes `(R1, R5, R6, R7, R8)` for parameters `alpha`, `delta` and
/// `n = max(|A|, |B|)`, before capping at population sizes.
pub fn sample_sizes(alpha: f64, delta: f64, n: usize) -> [usize; 5] {
    let lg = (n.max(2) as f64).log2();
    let (ia, id) = (1.0 / alpha, 1.0 / delta);
    let f = |x: f64| x.ceil() as usize;
    [f(id * id * ia * lg), f(id * id * ia.powi(3) * lg), f(id * id * ia * ia * lg), f(id * id * ia * ia * lg), f(id * ia * lg)]
}

/// Uniform subset of `[n]` of the given size as a bitset, or `None` when the
/// exact quantity should be used instead.
fn sample_mask<R: Rng>(rng: &mut R, n: usize, size: usize) -> Option<(Vec<u64>, usize)> {
    if size >= n || n <= EXACT_BELOW {
        return None;
    }
    let mut m = vec![0u64; words(n)];
    for i in sample(rng, n, size) {
        set_bit(&mut m, i);
    }
    Some((m, size))
}

fn masked_and(x: &[u64], y: &[u64], mask: Option<&[u64]>) -> u32 {
    match mask {
        None => popcount_and(x, y),
        Some(m) => x.iter().zip(y).zip(m).map(|((a, b), c)| (a & b & c).count_ones()).sum(),
    }
}

/// Sampling variant: degrees, co-degrees, bad-pair totals, bad-degrees and
/// right-side degrees are estimated from uniform samples `R1, R5, R6, R7,
/// R8`, pivots are drawn at random, and at most `16 / alpha * log N` pivots
/// are tried. Results satisfy the lemma's bounds only up to `1 ± O(delta)`.
pub fn graph_lemma_rand<R: Rng>(
    g: &BipartiteGraph,
    alpha: f64,
    delta: f64,
    rng: &mut R,
    work: &mut WorkCounter,
) -> Result<GraphLemmaResult> {
    check_pre(g, alpha)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta must lie in (0, 1), got {delta}")));
    }
    let (na, nb) = (g.left_size(), g.right_size());
    let th = Thresholds::new(alpha, na, nb);
    let [s1, s5, s6, s7, s8] = sample_sizes(alpha, delta, na.max(nb));

    let r1 = sample_mask(rng, nb, s1);
    let full_b = vec![u64::MAX; words(nb)];
    let (m1, n1) = r1.as_ref().map_or((&full_b[..], nb), |(m, s)| (&m[..], *s));
    let scale1 = nb as f64 / n1 as f64;
    work.bsg((na * g.row_words()) as u64);
    let mut in_a0 = vec![0u64; words(na)];
    for a in 0..na {
        if popcount_and(g.row(a), m1) as f64 * scale1 >= th.heavy {
            set_bit(&mut in_a0, a);
        }
    }

    let r5 = sample_mask(rng, nb, s5);
    let scale5 = r5.as_ref().map_or(1.0, |(_, s)| nb as f64 / *s as f64);
    let m5 = r5.as_ref().map(|(m, _)| &m[..]);
    let is_bad = |a1: usize, a2: usize| masked_and(g.row(a1), g.row(a2), m5) as f64 * scale5 <= th.bad_cdeg;

    let lg = (na.max(nb).max(2) as f64).log2();
    let cap = (16.0 / alpha * lg).ceil() as usize;
    for it in 1..=cap {
        let b_star = rng.gen_range(0..nb);
        work.bsg(words(na) as u64);
        let a_star: Vec<usize> = ones(g.col(b_star)).filter(|&a| bit(&in_a0, a)).collect();
        let m = a_star.len();
        if (m as f64) < th.pivot || m == 0 {
            continue;
        }
        let pairs = m * m;
        let bad_total = if s6 >= pairs || pairs <= EXACT_BELOW {
            work.bsg((pairs * g.row_words()) as u64);
            a_star.iter().map(|&a1| a_star.iter().filter(|&&a2| is_bad(a1, a2)).count()).sum::<usize>() as f64
        } else {
            work.bsg((s6 * g.row_words()) as u64);
            let hits = (0..s6).filter(|_| is_bad(a_star[rng.gen_range(0..m)], a_star[rng.gen_range(0..m)])).count();
            hits as f64 * pairs as f64 / s6 as f64
        };
        if bad_total > th.bad_total_per * m as f64 {
            continue;
        }
        let r7: Vec<usize> = if s7 >= m || m <= EXACT_BELOW {
            a_star.clone()
        } else {
            sample(rng, m, s7).into_iter().map(|i| a_star[i]).collect()
        };
        let scale7 = m as f64 / r7.len() as f64;
        work.bsg((m * r7.len() * g.row_words()) as u64);
        let a_prime: Vec<usize> = a_star
            .iter()
            .copied()
            .filter(|&a1| r7.iter().filter(|&&a2| is_bad(a1, a2)).count() as f64 * scale7 <= th.bad_deg)
            .collect();
        if a_prime.is_empty() {
            continue;
        }
        let b_prime = if s8 >= a_prime.len() || a_prime.len() <= EXACT_BELOW {
            right_side(g, &a_prime, alpha, work)
        } else {
            let r8: Vec<usize> = sample(rng, a_prime.len(), s8).into_iter().map(|i| a_prime[i]).collect();
            let mask = bitset_of(&r8, na);
            let scale = a_prime.len() as f64 / s8 as f64;
            work.bsg((nb * g.col_words()) as u64);
            (0..nb)
                .filter(|&b| popcount_and(g.col(b), &mask) as f64 * scale >= alpha * a_prime.len() as f64 / 4.0)
                .collect()
        };
        if b_prime.is_empty() {
            continue;
        }
        return Ok(GraphLemmaResult { a_prime, b_prime, alpha, iterations: it });
    }
    Err(Error::AttemptCapExceeded { attempts: cap })
}

/// Number of paths `a' - b - a - b'` in `G`: `sum_a G[a][b'] cdeg(a', a)`.
pub fn length3_paths(g: &BipartiteGraph, a_prime: usize, b_prime: usize) -> u64 {
    ones(g.col(b_prime)).map(|a| g.cdeg(a_prime, a) as u64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn complete(n: usize) -> BipartiteGraph {
        BipartiteGraph::from_edges(n, n, (0..n).flat_map(|a| (0..n).map(move |b| (a, b))))
    }

    #[test]
    fn complete_graph() {
        let g = complete(8);
        let mut w = WorkCounter::new();
        let r = graph_lemma_det(&g, 1.0, &mut w).unwrap();
        assert_eq!(r.a_prime, (0..8).collect::<Vec<_>>());
        assert_eq!(r.b_prime, (0..8).collect::<Vec<_>>());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = graph_lemma_rand(&g, 1.0, 0.05, &mut rng, &mut w).unwrap();
        assert_eq!((r.a_prime.len(), r.b_prime.len()), (8, 8));
    }

    #[test]
    fn sparse_graph_rejected() {
        let g = BipartiteGraph::from_edges(4, 4, [(0, 0)]);
        let mut w = WorkCounter::new();
        assert!(matches!(graph_lemma_det(&g, 0.5, &mut w), Err(Error::GraphTooSparse { .. })));
    }

    #[test]
    fn sample_size_formula() {
        assert_eq!(sample_sizes(0.25, 0.5, 256)[0], 128);
    }

    #[test]
    fn paths_oracle() {
        let g = complete(4);
        assert_eq!(length3_paths(&g, 0, 0), 16);
    }
}
