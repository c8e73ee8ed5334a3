//! Subsets with a small sumset, with the certified bound from the
//! triple-marking argument.

use super::graph::BipartiteGraph;
use super::lemma::{graph_lemma_det, GraphLemmaResult};
use crate::error::{Error, Result};
use crate::work::WorkCounter;

#[derive(Debug, Clone, PartialEq)]
pub struct Extracted {
    pub lemma: GraphLemmaResult,
    /// Actual `|A' + B'|`.
    pub sumset_size: usize,
    pub bound: f64,
}

/// `131072 |S|^3 / (alpha^5 |A| |B|)`, from the `64 * 2048` path constants.
pub fn sumset_bound(s_len: usize, alpha: f64, na: usize, nb: usize) -> f64 {
    131072.0 * (s_len as f64).powi(3) / (alpha.powi(5) * na as f64 * nb as f64)
}

/// Runs the Graph Lemma on `g ⊆ A x B` (values `a`, `b`, indexed like the
/// graph) and checks `|A' + B'|` against the bound for a sum set of size
/// `s_len` containing every `a + b` with `(a, b) ∈ G`.
pub fn bsg_extract(
    a: &[u64],
    b: &[u64],
    g: &BipartiteGraph,
    alpha: f64,
    s_len: usize,
    work: &mut WorkCounter,
) -> Result<Extracted> {
    let lemma = graph_lemma_det(g, alpha, work)?;
    let mut sums: Vec<u64> =
        lemma.a_prime.iter().flat_map(|&i| lemma.b_prime.iter().map(move |&j| a[i] + b[j])).collect();
    work.bsg(sums.len() as u64);
    sums.sort_unstable();
    sums.dedup();
    let bound = sumset_bound(s_len, alpha, a.len(), b.len());
    if sums.len() as f64 > bound {
        return Err(Error::SumsetBoundViolated { actual: sums.len(), bound });
    }
    Ok(Extracted { lemma, sumset_size: sums.len(), bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_interval() {
        let a: Vec<u64> = (0..8).collect();
        let g = BipartiteGraph::from_edges(8, 8, (0..8).flat_map(|i| (0..8).map(move |j| (i, j))));
        let mut w = WorkCounter::new();
        let e = bsg_extract(&a, &a, &g, 1.0, 15, &mut w).unwrap();
        assert_eq!(e.sumset_size, 15);
        assert!(e.bound >= 15.0);
    }

    #[test]
    fn bound_formula() {
        assert_eq!(sumset_bound(10, 1.0, 10, 10), 131072.0 * 10.0);
    }
}
