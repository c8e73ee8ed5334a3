//! Online sumset membership, 3SUM in preprocessed universes, and the
//! weighted star application.

pub mod k13;
pub mod universe;

use crate::bsg::{bsg_cover, Variant};
use crate::error::{Error, Result};
use crate::fft::sumset::strategy_costs;
use crate::fft::{sumset_within, Strategy};
use crate::model::grid::Flattener;
use crate::model::{align_decompose, GridConfig, Point, PointSet};
use crate::solvers::aligned::Runs;
use crate::work::WorkCounter;
use rand::Rng;
use rustc_hash::FxHashMap;
use std::sync::atomic::{AtomicU64, Ordering};

pub use k13::{k13_brute, k13_weighted};
pub use universe::{preproc_universe, preproc_universe_no_s, query_universe, PreprocUniverse};

/// Query-side tallies; updated through shared references.
#[derive(Debug, Default)]
pub struct QueryCounters {
    pub low: AtomicU64,
    pub high: AtomicU64,
    /// Membership probes made in the low case.
    pub probes: AtomicU64,
}

/// One aligned part pair of the online structure, in flattened coordinates.
#[derive(Debug)]
struct Part {
    shift: Point,
    av: Vec<u64>,
    bv: Vec<u64>,
    ra: Runs,
    rb: Runs,
    /// Cell of `a* + b*` to its pairs `(i, j)` of cell indices.
    buckets: FxHashMap<u64, Vec<(u32, u32)>>,
    /// Sorted `(A + B)` restricted to cells of popularity above the threshold.
    high: Vec<u64>,
}

/// Answers `s ∈ A + B` for query points arriving one at a time.
#[derive(Debug)]
pub struct OnlineStruct {
    flattener: Flattener,
    dim: usize,
    threshold: usize,
    parts: Vec<Part>,
    pub build_work: WorkCounter,
    pub counters: QueryCounters,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnlineParams {
    /// Popularity threshold `P`.
    pub threshold: usize,
    /// Cover threshold; `None` picks the balancing value.
    pub alpha: Option<f64>,
    pub variant: Variant,
    pub step2: Strategy,
    pub deterministic: bool,
}

impl Default for OnlineParams {
    fn default() -> Self {
        OnlineParams { threshold: 1, alpha: None, variant: Variant::default(), step2: Strategy::Auto, deterministic: false }
    }
}

/// `1/alpha = min{ (M_A M_B P^3 / (K_A K_B L))^(1/7), (K_B M_A M_B)^(1/6) }`,
/// clamped so that `alpha <= 1`.
pub fn tune_online_alpha(ka: usize, kb: usize, ma: usize, mb: usize, l: u64, p: usize) -> f64 {
    let (ka, kb, ma, mb, l, p) = (ka as f64, kb as f64, ma as f64, mb as f64, l as f64, p as f64);
    let first = (ma * mb * p.powi(3) / (ka * kb * l)).powf(1.0 / 7.0);
    let second = (kb * ma * mb).powf(1.0 / 6.0);
    1.0 / first.min(second).max(1.0)
}

impl OnlineStruct {
    /// Builds one structure per aligned part pair of `A` and `B` on grid `g`.
    pub fn build<R: Rng>(a: &PointSet, b: &PointSet, g: &GridConfig, params: &OnlineParams, rng: &mut R) -> Result<Self> {
        if params.threshold == 0 {
            return Err(Error::InvalidParameter("popularity threshold must be at least 1".into()));
        }
        for s in [a, b] {
            if s.dim() != g.dim() {
                return Err(Error::DimensionMismatch { expected: g.dim(), got: s.dim() });
            }
            if s.universe() > g.universe() {
                return Err(Error::OutOfUniverse { value: s.universe() - 1, universe: g.universe() });
            }
        }
        let f = Flattener::new(g)?;
        let volume = g.volume();
        let mut work = WorkCounter::default();
        let flatten = |set: &PointSet| -> Vec<u64> {
            let mut v: Vec<u64> = set.iter().map(|p| f.map(p).expect("aligned points lie in the grid")).collect();
            v.sort_unstable();
            v
        };
        let mut parts = Vec::new();
        let (pa, pb) = (align_decompose(a, g), align_decompose(b, g));
        for x in &pa {
            for y in &pb {
                let (av, bv) = (flatten(&x.subset), flatten(&y.subset));
                let (ra, rb) = (Runs::new(&av, volume), Runs::new(&bv, volume));
                let mut buckets: FxHashMap<u64, Vec<(u32, u32)>> = FxHashMap::default();
                for (i, &ca) in ra.keys.iter().enumerate() {
                    for (j, &cb) in rb.keys.iter().enumerate() {
                        buckets.entry(ca + cb).or_default().push((i as u32, j as u32));
                    }
                }
                work.bsg((ra.keys.len() * rb.keys.len()) as u64);
                let mut popular: Vec<u64> =
                    buckets.iter().filter(|(_, v)| v.len() > params.threshold).map(|(&c, _)| c).collect();
                popular.sort_unstable();
                let high = if popular.is_empty() {
                    Vec::new()
                } else {
                    let alpha = params.alpha.unwrap_or_else(|| {
                        let occ = |r: &Runs| (0..r.keys.len()).map(|i| r.start[i + 1] - r.start[i]).max().unwrap_or(1);
                        tune_online_alpha(ra.keys.len(), rb.keys.len(), occ(&ra), occ(&rb), volume, params.threshold)
                    });
                    high_list(&av, &bv, &ra, &rb, &popular, volume, alpha, params, rng, &mut work)?
                };
                parts.push(Part { shift: x.shift.add(&y.shift), av, bv, ra, rb, buckets, high });
            }
        }
        Ok(OnlineStruct {
            flattener: f,
            dim: g.dim(),
            threshold: params.threshold,
            parts,
            build_work: work,
            counters: QueryCounters::default(),
        })
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    /// Total size of the pruned high-popularity lists.
    pub fn high_len(&self) -> usize {
        self.parts.iter().map(|p| p.high.len()).sum()
    }

    /// Every point of every high-popularity list, in original coordinates.
    pub fn high_points(&self) -> Vec<Point> {
        self.parts
            .iter()
            .flat_map(|p| p.high.iter().map(|&v| self.flattener.unmap(v).add(&p.shift)))
            .collect()
    }

    /// Popularity of the cell holding `s` in each part pair where `s` maps.
    pub fn popularity(&self, s: &[u64]) -> Vec<usize> {
        self.parts
            .iter()
            .filter_map(|p| {
                let v = self.flattener.map(&Point::new(s).checked_sub(&p.shift)?)?;
                Some(p.buckets.get(&(v / self.flattener.grid().volume())).map_or(0, |b| b.len()))
            })
            .collect()
    }

    pub fn query(&self, s: &[u64]) -> Result<bool> {
        if s.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: s.len() });
        }
        let volume = self.flattener.grid().volume();
        let s = Point::new(s);
        for p in &self.parts {
            let Some(v) = s.checked_sub(&p.shift).and_then(|t| self.flattener.map(&t)) else {
                continue;
            };
            let Some(bucket) = p.buckets.get(&(v / volume)) else {
                continue;
            };
            if bucket.len() > self.threshold {
                self.counters.high.fetch_add(1, Ordering::Relaxed);
                if p.high.binary_search(&v).is_ok() {
                    return Ok(true);
                }
                continue;
            }
            self.counters.low.fetch_add(1, Ordering::Relaxed);
            let mut probes = 0u64;
            let mut found = false;
            for &(i, j) in bucket {
                let (x, y) = (p.ra.run(&p.av, i as usize), p.rb.run(&p.bv, j as usize));
                let (small, other) = if x.len() <= y.len() { (x, y) } else { (y, x) };
                probes += small.len() as u64;
                if small.iter().any(|&u| v.checked_sub(u).is_some_and(|r| other.binary_search(&r).is_ok())) {
                    found = true;
                    break;
                }
            }
            self.counters.probes.fetch_add(probes, Ordering::Relaxed);
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Exact `A + B` inside the popular cells: a cover of the popular cell
/// pairs, remainder pairs enumerated, bicliques summed in their supersets.
#[allow(clippy::too_many_arguments)]
fn high_list<R: Rng>(
    av: &[u64],
    bv: &[u64],
    ra: &Runs,
    rb: &Runs,
    popular: &[u64],
    volume: u64,
    alpha: f64,
    params: &OnlineParams,
    rng: &mut R,
    work: &mut WorkCounter,
) -> Result<Vec<u64>> {
    let cover = bsg_cover(&ra.keys, &rb.keys, popular, alpha, params.variant, rng, work)?;
    let mut out = Vec::new();
    for &(i, j) in &cover.remainder {
        let (x, y) = (ra.run(av, i as usize), rb.run(bv, j as usize));
        work.pairs((x.len() * y.len()) as u64);
        out.extend(x.iter().flat_map(|&u| y.iter().map(move |&w| u + w)));
    }
    for bc in &cover.bicliques {
        let mut ai: Vec<usize> = bc.a.iter().map(|&i| i as usize).collect();
        let mut bi: Vec<usize> = bc.b.iter().map(|&j| j as usize).collect();
        ai.sort_unstable();
        bi.sort_unstable();
        let x: Vec<u64> = ai.iter().flat_map(|&i| ra.run(av, i)).copied().collect();
        let y: Vec<u64> = bi.iter().flat_map(|&j| rb.run(bv, j)).copied().collect();
        let t: Vec<u64> = bc.sumset.iter().flat_map(|&c| c * volume..(c + 1) * volume).collect();
        let targets: Vec<u64> =
            t.iter().copied().filter(|v| popular.binary_search(&(v / volume)).is_ok()).collect();
        if targets.is_empty() {
            continue;
        }
        let mut chosen = params.step2;
        if chosen == Strategy::Auto {
            let costs = strategy_costs(&x, &y, t.len(), t.last().unwrap() + 1);
            chosen = costs.iter().min_by(|p, q| p.1.total_cmp(&q.1)).unwrap().0;
        }
        if chosen == Strategy::Hashed && params.deterministic {
            chosen = Strategy::HashedDet;
        }
        out.extend(sumset_within(&x, &y, &t, &targets, chosen, rng, work)?);
    }
    out.retain(|v| popular.binary_search(&(v / volume)).is_ok());
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn build_online<R: Rng>(
    a: &PointSet,
    b: &PointSet,
    g: &GridConfig,
    params: &OnlineParams,
    rng: &mut R,
) -> Result<OnlineStruct> {
    OnlineStruct::build(a, b, g, params, rng)
}

pub fn query_online(st: &OnlineStruct, s: &[u64]) -> Result<bool> {
    st.query(s)
}

pub fn hist_online<R: Rng>(s: &[u8], alphabet: usize, delta: f64, rng: &mut R) -> Result<HistOnline> {
    HistOnline::build(s, alphabet, delta, rng)
}

/// Parameters of the online monotone structure for size `n`, dimension `d`
/// and trade-off `delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnlineTuning {
    /// Grid side `n^(delta/2)`, even.
    pub ell: u64,
    /// `Q = n^(1/3 - delta (d + 13) / 6)`.
    pub q: f64,
    /// Popularity threshold `max(K_A, K_B) / Q` with `K = n / ell`.
    pub threshold: usize,
    pub preprocessing_exponent: f64,
    pub query_exponent: f64,
}

pub fn tune_online(n: u64, d: usize, delta: f64) -> Result<OnlineTuning> {
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::InvalidParameter(format!("delta must lie in [0, 1), got {delta}")));
    }
    let nf = n.max(2) as f64;
    let slope = delta * (d as f64 + 13.0) / 6.0;
    let q = nf.powf(1.0 / 3.0 - slope);
    if q < 1.0 {
        return Err(Error::InvalidParameter(format!("delta = {delta} gives Q = {q} < 1")));
    }
    let mut ell = nf.powf(delta / 2.0).ceil().max(2.0) as u64;
    ell += ell & 1;
    let k = nf / ell as f64;
    Ok(OnlineTuning {
        ell,
        q,
        threshold: (k / q).ceil().max(1.0) as usize,
        preprocessing_exponent: 2.0 - delta,
        query_exponent: 2.0 / 3.0 + slope,
    })
}

/// Online histogram queries over `[alphabet]`.
#[derive(Debug)]
pub struct HistOnline {
    total: Vec<u64>,
    st: OnlineStruct,
}

impl HistOnline {
    /// Builds on the prefix count vectors `A` and `B = total - A`, with grid
    /// and threshold from [`tune_online`].
    pub fn build<R: Rng>(s: &[u8], alphabet: usize, delta: f64, rng: &mut R) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::InvalidParameter("alphabet must be non-empty".into()));
        }
        if let Some(&c) = s.iter().find(|&&c| c as usize >= alphabet) {
            return Err(Error::InvalidSymbol { symbol: char::from_digit(c as u32, 36).unwrap_or('?'), alphabet });
        }
        let n = s.len() as u64;
        let mut cur = vec![0u64; alphabet];
        let mut coords = cur.clone();
        for &c in s {
            cur[c as usize] += 1;
            coords.extend_from_slice(&cur);
        }
        let reflected: Vec<u64> =
            coords.chunks_exact(alphabet).flat_map(|p| p.iter().zip(&cur).map(|(x, t)| t - x)).collect();
        let a = PointSet::from_flat(alphabet, n + 1, coords)?;
        let b = PointSet::from_flat(alphabet, n + 1, reflected)?;
        let tuning = tune_online(n + 1, alphabet, delta)?;
        let g = GridConfig::new(tuning.ell.min((n + 1).max(2)), (n + 1).max(2), alphabet)?;
        let params = OnlineParams { threshold: tuning.threshold, ..OnlineParams::default() };
        Ok(HistOnline { total: cur, st: OnlineStruct::build(&a, &b, &g, &params, rng)? })
    }

    /// Whether some substring has exactly `v[c]` copies of each symbol `c`.
    pub fn query(&self, v: &[u64]) -> Result<bool> {
        if v.len() != self.total.len() {
            return Err(Error::DimensionMismatch { expected: self.total.len(), got: v.len() });
        }
        let t: Vec<u64> = v.iter().zip(&self.total).map(|(x, t)| x + t).collect();
        self.st.query(&t)
    }

    pub fn structure(&self) -> &OnlineStruct {
        &self.st
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fft::sumset::sumset_brute;
    use crate::model::gen::monotone_set;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tiny_line() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let a = PointSet::from_values(6, [0, 2, 4]).unwrap();
        let g = GridConfig::new(2, 6, 1).unwrap();
        let st = OnlineStruct::build(&a, &a, &g, &OnlineParams::default(), &mut rng).unwrap();
        let sums = sumset_brute(a.coords(), a.coords());
        for s in 0..14 {
            assert_eq!(st.query(&[s]).unwrap(), sums.contains(&s), "s={s}");
        }
        assert!(st.query(&[4]).unwrap());
        assert!(!st.query(&[5]).unwrap());
        assert!(st.query(&[0, 0]).is_err());
        let empty = PointSet::empty(1, 6);
        let st = OnlineStruct::build(&a, &empty, &g, &OnlineParams::default(), &mut rng).unwrap();
        assert!(!st.query(&[0]).unwrap());
    }

    #[test]
    fn both_branches_match_brute() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 128;
        let a = monotone_set(&mut rng, n, 2).unwrap();
        let b = monotone_set(&mut rng, n, 2).unwrap();
        let g = GridConfig::new(4, n as u64, 2).unwrap();
        let params = OnlineParams { threshold: 6, alpha: Some(0.2), ..OnlineParams::default() };
        let st = OnlineStruct::build(&a, &b, &g, &params, &mut rng).unwrap();
        let mut sums = std::collections::HashSet::new();
        for x in a.iter() {
            for y in b.iter() {
                sums.insert(vec![x[0] + y[0], x[1] + y[1]]);
            }
        }
        for p in st.high_points() {
            assert!(sums.contains(&p.0.to_vec()));
        }
        for x in 0..2 * n as u64 {
            for y in 0..2 * n as u64 {
                assert_eq!(st.query(&[x, y]).unwrap(), sums.contains(&vec![x, y]));
            }
        }
        assert!(st.counters.low.load(Ordering::Relaxed) > 0);
        assert!(st.counters.high.load(Ordering::Relaxed) > 0);
        let all = OnlineStruct::build(&a, &b, &g, &OnlineParams { threshold: usize::MAX, ..params }, &mut rng).unwrap();
        assert_eq!(all.high_len(), 0);
    }

    #[test]
    fn tuning() {
        let t = tune_online(1 << 20, 2, 2.0 / 21.0).unwrap();
        assert!((t.preprocessing_exponent - (2.0 - 2.0 / 21.0)).abs() < 1e-12);
        assert!((t.query_exponent - (1.0 - 2.0 / 21.0)).abs() < 1e-12);
        let t = tune_online(1 << 20, 2, 0.0).unwrap();
        assert!((t.q - ((1u64 << 20) as f64).powf(1.0 / 3.0)).abs() < 1e-6);
        assert!((t.query_exponent - 2.0 / 3.0).abs() < 1e-12);
        assert!(tune_online(1 << 20, 2, 0.3).is_err());
    }

    #[test]
    fn hist_online_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let h = HistOnline::build(&[0, 1, 1, 0], 2, 0.05, &mut rng).unwrap();
        assert!(h.query(&[1, 1]).unwrap());
        assert!(!h.query(&[2, 1, 0]).is_ok_and(|x| x));
        let h = HistOnline::build(&[0, 1, 2], 3, 0.05, &mut rng).unwrap();
        assert!(h.query(&[1, 1, 1]).unwrap());
        assert!(!h.query(&[3, 0, 0]).unwrap());
    }
}
