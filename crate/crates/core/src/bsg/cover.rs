//! Iterated extraction: cover every pair `(a, b)` with `a + b ∈ S` by a few
//! bicliques `A_i x B_i` with known sumsets plus a small remainder.

use super::graph::BipartiteGraph;
use super::lemma::{graph_lemma_det, graph_lemma_rand};
use crate::error::{Error, Result};
use crate::work::WorkCounter;
use rand::Rng;
use rustc_hash::FxHashSet;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    Det,
    Rand { delta: f64 },
}

impl Default for Variant {
    fn default() -> Self {
        Variant::Rand { delta: 0.5 }
    }
}

/// `A_i x B_i` as indices into the input slices, with `T_i = A_i + B_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Biclique {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub sumset: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BSGCover {
    pub bicliques: Vec<Biclique>,
    /// Remaining pairs `(i, j)` with `a_i + b_j ∈ S`.
    pub remainder: Vec<(u32, u32)>,
    pub alpha: f64,
    /// `sqrt(|A| |B|)`.
    pub n_hat: f64,
    /// `|S| / n_hat`.
    pub t: f64,
    /// Pairs with `a + b ∈ S` before any removal.
    pub initial_edges: u64,
}

impl BSGCover {
    pub fn k(&self) -> usize {
        self.bicliques.len()
    }

    pub fn empty(alpha: f64, n_hat: f64, t: f64) -> Self {
        BSGCover { bicliques: Vec::new(), remainder: Vec::new(), alpha, n_hat, t, initial_edges: 0 }
    }
}

/// Maximum number of bicliques allowed by the audit: `64 / alpha + 1`.
pub fn k_bound(alpha: f64) -> f64 {
    64.0 / alpha + 1.0
}

/// All `(i, j)` with `a_i + b_j ∈ S`, enumerating whichever of `B` and `S` is
/// smaller against each `a`.
pub fn solution_pairs(a: &[u64], b: &[u64], s: &[u64], work: &mut WorkCounter) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    if b.len() <= s.len() {
        let set: FxHashSet<u64> = s.iter().copied().collect();
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                if set.contains(&(x + y)) {
                    out.push((i as u32, j as u32));
                }
            }
        }
        work.bsg(a.len() as u64 * b.len() as u64);
    } else {
        for (i, &x) in a.iter().enumerate() {
            for &z in s {
                if let Some(d) = z.checked_sub(x) {
                    if let Ok(j) = b.binary_search(&d) {
                        out.push((i as u32, j as u32));
                    }
                }
            }
        }
        out.sort_unstable();
        work.bsg(a.len() as u64 * s.len() as u64);
    }
    out
}

fn biclique(a: &[u64], b: &[u64], ai: Vec<u32>, bi: Vec<u32>, work: &mut WorkCounter) -> Biclique {
    let mut sumset: Vec<u64> = ai.iter().flat_map(|&i| bi.iter().map(move |&j| a[i as usize] + b[j as usize])).collect();
    work.bsg(sumset.len() as u64);
    sumset.sort_unstable();
    sumset.dedup();
    Biclique { a: ai, b: bi, sumset }
}

/// Builds the cover for sorted, distinct `a`, `b`, `s`.
///
/// While more than `alpha * N^2` solution pairs remain (`N = sqrt(|A||B|)`),
/// the Graph Lemma is applied with `alpha_i = |G_i| / N^2`, the resulting
/// `A_i x B_i` is removed from the graph, and `T_i = A_i + B_i` is stored.
pub fn bsg_cover<R: Rng>(
    a: &[u64],
    b: &[u64],
    s: &[u64],
    alpha: f64,
    variant: Variant,
    rng: &mut R,
    work: &mut WorkCounter,
) -> Result<BSGCover> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    let n_hat = ((a.len() * b.len()) as f64).sqrt();
    let t = if n_hat > 0.0 { s.len() as f64 / n_hat } else { 0.0 };
    let pairs = solution_pairs(a, b, s, work);
    let mut cover = BSGCover::empty(alpha, n_hat, t);
    cover.initial_edges = pairs.len() as u64;
    let budget = alpha * n_hat * n_hat;
    if pairs.len() as f64 <= budget {
        cover.remainder = pairs;
        return Ok(cover);
    }
    if (32.0 / alpha).floor() + 1.0 >= (a.len() * b.len()) as f64 {
        cover.bicliques = pairs.into_iter().map(|(i, j)| biclique(a, b, vec![i], vec![j], work)).collect();
        return Ok(cover);
    }
    let mut g = BipartiteGraph::from_edges(a.len(), b.len(), pairs.iter().map(|&(i, j)| (i as usize, j as usize)));
    work.bsg(pairs.len() as u64);
    drop(pairs);
    while g.edge_count() as f64 > budget {
        let alpha_i = (g.edge_count() as f64 / (n_hat * n_hat)).min(1.0);
        let res = match variant {
            Variant::Det => graph_lemma_det(&g, alpha_i, work)?,
            Variant::Rand { delta } => match graph_lemma_rand(&g, alpha_i, delta, rng, work) {
                Ok(r) => r,
                Err(Error::AttemptCapExceeded { .. }) => graph_lemma_det(&g, alpha_i, work)?,
                Err(e) => return Err(e),
            },
        };
        let mut removed = 0;
        for &i in &res.a_prime {
            for &j in &res.b_prime {
                removed += u64::from(g.remove_edge(i, j));
            }
        }
        work.bsg((res.a_prime.len() * res.b_prime.len()) as u64);
        if removed == 0 {
            return Err(Error::NoPivot);
        }
        let ai = res.a_prime.iter().map(|&i| i as u32).collect();
        let bi = res.b_prime.iter().map(|&j| j as u32).collect();
        cover.bicliques.push(biclique(a, b, ai, bi, work));
    }
    cover.remainder = g.edges().map(|(i, j)| (i as u32, j as u32)).collect();
    Ok(cover)
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoverFailure {
    /// A solution pair outside every biclique and outside `R`.
    UncoveredPair { a: u64, b: u64 },
    /// A remainder pair whose sum is not in `S`.
    SpuriousRemainder { a: u64, b: u64 },
    RemainderTooLarge { len: usize, bound: f64 },
    WrongSumset { index: usize },
    TooManyBicliques { k: usize, bound: f64 },
    SumsetBoundExceeded { index: usize, len: usize, bound: f64 },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CoverAudit {
    pub failures: Vec<CoverFailure>,
}

impl CoverAudit {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Per-biclique sumset bound: `131072 |S|^3 / (alpha^5 |A| |B|)` evaluated
/// with the cover's `alpha`.
pub fn biclique_sumset_bound(cover: &BSGCover, s_len: usize, na: usize, nb: usize) -> f64 {
    super::extract::sumset_bound(s_len, cover.alpha.min(1.0), na, nb)
}

/// Audits coverage in both directions, `|R| <= alpha N^2`, every `T_i`
/// against a brute-force sumset, `k <= 64/alpha + 1`, and each `|T_i|`
/// against the certified sumset bound.
pub fn verify_cover(cover: &BSGCover, a: &[u64], b: &[u64], s: &[u64]) -> CoverAudit {
    let mut failures = Vec::new();
    let sset: FxHashSet<u64> = s.iter().copied().collect();
    let mut covered: FxHashSet<(u32, u32)> = FxHashSet::default();
    for (idx, bc) in cover.bicliques.iter().enumerate() {
        for &i in &bc.a {
            for &j in &bc.b {
                covered.insert((i, j));
            }
        }
        let mut want: Vec<u64> =
            bc.a.iter().flat_map(|&i| bc.b.iter().map(move |&j| a[i as usize] + b[j as usize])).collect();
        want.sort_unstable();
        want.dedup();
        if want != bc.sumset {
            failures.push(CoverFailure::WrongSumset { index: idx });
        }
        let bound = biclique_sumset_bound(cover, s.len(), a.len(), b.len());
        if bc.sumset.len() as f64 > bound {
            failures.push(CoverFailure::SumsetBoundExceeded { index: idx, len: bc.sumset.len(), bound });
        }
    }
    for &(i, j) in &cover.remainder {
        let (x, y) = (a[i as usize], b[j as usize]);
        if !sset.contains(&(x + y)) {
            failures.push(CoverFailure::SpuriousRemainder { a: x, b: y });
        }
        covered.insert((i, j));
    }
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            if sset.contains(&(x + y)) && !covered.contains(&(i as u32, j as u32)) {
                failures.push(CoverFailure::UncoveredPair { a: x, b: y });
            }
        }
    }
    let r_bound = cover.alpha * (a.len() * b.len()) as f64;
    if cover.remainder.len() as f64 > r_bound {
        failures.push(CoverFailure::RemainderTooLarge { len: cover.remainder.len(), bound: r_bound });
    }
    let kb = k_bound(cover.alpha);
    if cover.k() as f64 > kb {
        failures.push(CoverFailure::TooManyBicliques { k: cover.k(), bound: kb });
    }
    CoverAudit { failures }
}
