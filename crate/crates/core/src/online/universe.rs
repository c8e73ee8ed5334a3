//! 3SUM for subsets of universes `A_0`, `B_0` (and optionally `S_0`) that
//! were preprocessed in advance.

use crate::bsg::{bsg_cover, BSGCover, Variant};
use crate::error::{Error, Result};
use crate::fft::sumset::{intersect_sorted, strategy_costs};
use crate::fft::{sumset_within, Strategy};
use crate::model::PointSet;
use crate::solvers::{SolveStats, ThreeSumResult};
use crate::work::WorkCounter;
use rand::Rng;
use rustc_hash::FxHashMap;

/// A stored cover of `(A_0, B_0, S_0)`. In the variant without `S_0`, every
/// pair of `A_0 x B_0` is also bucketed by its sum and `S_0` is the set of
/// sums whose bucket holds more than `threshold` pairs.
#[derive(Debug, Clone)]
pub struct PreprocUniverse {
    pub a0: Vec<u64>,
    pub b0: Vec<u64>,
    pub s0: Vec<u64>,
    pub cover: BSGCover,
    pub buckets: Option<FxHashMap<u64, Vec<(u32, u32)>>>,
    pub threshold: usize,
    pub build_work: WorkCounter,
}

impl PreprocUniverse {
    /// `sum_i |T_i|`.
    pub fn stored_sumsets(&self) -> usize {
        self.cover.bicliques.iter().map(|b| b.sumset.len()).sum()
    }
}

fn values(s: &PointSet) -> Result<Vec<u64>> {
    if s.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: s.dim() });
    }
    Ok(s.coords().to_vec())
}

/// Preprocesses `(A_0, B_0, S_0)`; `alpha` defaults to `n^(-1/7)`.
pub fn preproc_universe<R: Rng>(
    a0: &PointSet,
    b0: &PointSet,
    s0: &PointSet,
    alpha: Option<f64>,
    variant: Variant,
    rng: &mut R,
) -> Result<PreprocUniverse> {
    let (a0, b0, s0) = (values(a0)?, values(b0)?, values(s0)?);
    let n = a0.len().max(b0.len()).max(s0.len()).max(1) as f64;
    let alpha = alpha.unwrap_or(n.powf(-1.0 / 7.0)).min(1.0);
    let mut work = WorkCounter::default();
    let cover = bsg_cover(&a0, &b0, &s0, alpha, variant, rng, &mut work)?;
    Ok(PreprocUniverse { a0, b0, s0, cover, buckets: None, threshold: 0, build_work: work })
}

/// Preprocesses `(A_0, B_0)` alone. Sums of popularity above `n/t` form
/// `S_0`; `t = 1/alpha = n^(1/10)` unless given.
pub fn preproc_universe_no_s<R: Rng>(
    a0: &PointSet,
    b0: &PointSet,
    t: Option<f64>,
    alpha: Option<f64>,
    variant: Variant,
    rng: &mut R,
) -> Result<PreprocUniverse> {
    let (a0, b0) = (values(a0)?, values(b0)?);
    let n = a0.len().max(b0.len()).max(1) as f64;
    let t = t.unwrap_or(n.powf(0.1)).max(1.0);
    let alpha = alpha.unwrap_or(1.0 / t).min(1.0);
    let threshold = (n / t).floor() as usize;
    let mut work = WorkCounter::default();
    let mut buckets: FxHashMap<u64, Vec<(u32, u32)>> = FxHashMap::default();
    for (i, &x) in a0.iter().enumerate() {
        for (j, &y) in b0.iter().enumerate() {
            buckets.entry(x + y).or_default().push((i as u32, j as u32));
        }
    }
    work.pairs((a0.len() * b0.len()) as u64);
    let mut s0: Vec<u64> = buckets.iter().filter(|(_, v)| v.len() > threshold).map(|(&s, _)| s).collect();
    s0.sort_unstable();
    let cover = bsg_cover(&a0, &b0, &s0, alpha, variant, rng, &mut work)?;
    Ok(PreprocUniverse { a0, b0, s0, cover, buckets: Some(buckets), threshold, build_work: work })
}

/// Membership mask of `sub` inside `universe`, or the first element missing.
fn mask(universe: &[u64], sub: &[u64], which: &'static str) -> Result<Vec<bool>> {
    let mut m = vec![false; universe.len()];
    for &x in sub {
        match universe.binary_search(&x) {
            Ok(i) => m[i] = true,
            Err(_) => return Err(Error::SubsetViolation { value: x, which }),
        }
    }
    Ok(m)
}

/// `(A + B) ∩ S` for `A ⊆ A_0`, `B ⊆ B_0`, and `S ⊆ S_0` when `S_0` was
/// given (any `S` otherwise). Remainder pairs are filtered directly; each
/// biclique is summed inside its stored `T_i`.
pub fn query_universe<R: Rng>(
    pu: &PreprocUniverse,
    a: &PointSet,
    b: &PointSet,
    s: &PointSet,
    strategy: Strategy,
    rng: &mut R,
) -> Result<ThreeSumResult> {
    let universe = s.universe();
    let (a, b, s) = (values(a)?, values(b)?, values(s)?);
    let in_a = mask(&pu.a0, &a, "A0")?;
    let in_b = mask(&pu.b0, &b, "B0")?;
    let mut work = WorkCounter::default();
    let mut stats = SolveStats::default();
    let mut hits: Vec<u64> = Vec::new();
    // Elements of S handled by the stored cover.
    let high: Vec<u64> = match &pu.buckets {
        None => {
            mask(&pu.s0, &s, "S0")?;
            s.clone()
        }
        Some(buckets) => {
            let mut high = Vec::new();
            for &x in &s {
                match buckets.get(&x) {
                    None => {}
                    Some(bucket) if bucket.len() > pu.threshold => high.push(x),
                    Some(bucket) => {
                        let mut probes = 0;
                        let found = bucket.iter().any(|&(i, j)| {
                            probes += 1;
                            in_a[i as usize] && in_b[j as usize]
                        });
                        work.pairs(probes);
                        if found {
                            hits.push(x);
                        }
                    }
                }
            }
            high
        }
    };
    if !a.is_empty() && !b.is_empty() && !high.is_empty() {
        for &(i, j) in &pu.cover.remainder {
            let (i, j) = (i as usize, j as usize);
            if in_a[i] && in_b[j] {
                let v = pu.a0[i] + pu.b0[j];
                if high.binary_search(&v).is_ok() {
                    hits.push(v);
                }
            }
        }
        work.pairs(pu.cover.remainder.len() as u64);
        stats.remainder_pairs = pu.cover.remainder.len();
        for bc in &pu.cover.bicliques {
            let mut x: Vec<u64> = bc.a.iter().filter(|&&i| in_a[i as usize]).map(|&i| pu.a0[i as usize]).collect();
            let mut y: Vec<u64> = bc.b.iter().filter(|&&j| in_b[j as usize]).map(|&j| pu.b0[j as usize]).collect();
            x.sort_unstable();
            y.sort_unstable();
            let targets = intersect_sorted(&bc.sumset, &high);
            if x.is_empty() || y.is_empty() || targets.is_empty() {
                continue;
            }
            let mut chosen = strategy;
            if chosen == Strategy::Auto {
                let costs = strategy_costs(&x, &y, bc.sumset.len(), bc.sumset.last().unwrap() + 1);
                chosen = costs.iter().min_by(|p, q| p.1.total_cmp(&q.1)).unwrap().0;
            }
            stats.step2[match chosen {
                Strategy::Brute => 0,
                Strategy::Dense => 1,
                _ => 2,
            }] += 1;
            hits.extend(sumset_within(&x, &y, &bc.sumset, &targets, chosen, rng, &mut work)?);
        }
        stats.bicliques = pu.cover.k();
    }
    Ok(ThreeSumResult { hits: PointSet::from_values(universe, hits)?, witnesses: None, work, stats })
}
