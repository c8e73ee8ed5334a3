//! 3SUM solvers: `{ s ∈ S : s = a + b for some a ∈ A, b ∈ B }`.

pub(crate) mod aligned;
pub mod clustered;
pub mod monotone;

use crate::bsg::Variant;
use crate::error::{Error, Result};
use crate::fft::{sumset_small_universe, Strategy};
use crate::model::{Packer, Point, PointSet};
use crate::work::WorkCounter;
use rustc_hash::FxHashSet;
use smallvec::SmallVec;

pub use clustered::{equitable_decompose, threesum_clustered, threesum_one_clustered, tune_clustered_alpha};
pub use monotone::{threesum_monotone, tune_monotone_params, MonotoneTuning};

/// Counters describing how a structured solve spent its work.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Bicliques over all aligned part pairs and recursion levels.
    pub bicliques: usize,
    /// Remainder cell pairs handled in step 1.
    pub remainder_pairs: usize,
    /// Step-2 sumset calls by strategy: brute, dense, hashed.
    pub step2: [usize; 3],
    pub recursive_calls: usize,
}

#[derive(Debug, Clone)]
pub struct ThreeSumResult {
    pub hits: PointSet,
    /// One `(a, b)` per hit, in hit order, when requested.
    pub witnesses: Option<Vec<(Point, Point)>>,
    pub work: WorkCounter,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveParams {
    /// Grid side `l` (rounded up to even).
    pub ell: u64,
    /// Cover threshold: at most `alpha * N^2` pairs of cells go to step 1.
    pub alpha: f64,
    /// Maximum recursion depth into step-1 subproblems.
    pub recurse: usize,
    /// Universes of at most this side, and instances with
    /// `|A||B| <= brute_cutoff^2`, are solved by brute force.
    pub brute_cutoff: usize,
    pub variant: Variant,
    pub step2: Strategy,
    /// Use deterministic hash families wherever step 2 hashes.
    pub deterministic: bool,
    /// Reject a non-monotone `S` in the monotone solver.
    pub check_s_monotone: bool,
}

impl Default for SolveParams {
    fn default() -> Self {
        SolveParams {
            ell: 2,
            alpha: 0.5,
            recurse: 4,
            brute_cutoff: 32,
            variant: Variant::default(),
            step2: Strategy::Auto,
            deterministic: false,
            check_s_monotone: true,
        }
    }
}

pub(crate) fn check_dims(a: &PointSet, b: &PointSet, s: &PointSet) -> Result<usize> {
    let d = a.dim();
    for x in [b, s] {
        if x.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: x.dim() });
        }
    }
    Ok(d)
}

/// Packs points for hashing: `Packed` when the sum range fits a `u64` key.
enum Keyer {
    Packed(Packer),
    Raw,
}

impl Keyer {
    fn for_sums(a: &PointSet, b: &PointSet, s: &PointSet) -> Keyer {
        let base = (a.universe() + b.universe()).max(s.universe()).max(2);
        Packer::new(a.dim(), base).map_or(Keyer::Raw, Keyer::Packed)
    }
}

/// Hits as flat coordinates, by enumerating all of `A x B`.
pub(crate) fn brute_hits(a: &PointSet, b: &PointSet, s: &PointSet, work: &mut WorkCounter) -> Vec<u64> {
    work.pairs(a.len() as u64 * b.len() as u64);
    let mut out = Vec::new();
    if a.is_empty() || b.is_empty() || s.is_empty() {
        return out;
    }
    match Keyer::for_sums(a, b, s) {
        Keyer::Packed(p) => {
            let targets: FxHashSet<u64> = s.iter().filter_map(|x| p.pack(x)).collect();
            let ak: Vec<u64> = a.iter().map(|x| p.pack(x).unwrap()).collect();
            let bk: Vec<u64> = b.iter().map(|x| p.pack(x).unwrap()).collect();
            let mut found: FxHashSet<u64> = FxHashSet::default();
            for &x in &ak {
                for &y in &bk {
                    if targets.contains(&(x + y)) {
                        found.insert(x + y);
                    }
                }
            }
            for k in found {
                out.extend_from_slice(&p.unpack(k));
            }
        }
        Keyer::Raw => {
            let targets: FxHashSet<&[u64]> = s.iter().collect();
            let mut found: FxHashSet<SmallVec<[u64; 4]>> = FxHashSet::default();
            let mut sum: SmallVec<[u64; 4]> = SmallVec::new();
            for x in a.iter() {
                for y in b.iter() {
                    sum.clear();
                    sum.extend(x.iter().zip(y).map(|(u, v)| u + v));
                    if targets.contains(&sum[..]) {
                        found.insert(sum.clone());
                    }
                }
            }
            for k in found {
                out.extend_from_slice(&k);
            }
        }
    }
    out
}

fn finish(d: usize, s: &PointSet, flat: Vec<u64>, work: WorkCounter, stats: SolveStats) -> Result<ThreeSumResult> {
    Ok(ThreeSumResult { hits: PointSet::from_flat(d, s.universe(), flat)?, witnesses: None, work, stats })
}

/// Reference solver: every pair of `A x B`. `pair_ops = |A||B|`.
pub fn threesum_brute(a: &PointSet, b: &PointSet, s: &PointSet) -> Result<ThreeSumResult> {
    let d = check_dims(a, b, s)?;
    let mut work = WorkCounter::default();
    let flat = brute_hits(a, b, s, &mut work);
    finish(d, s, flat, work, SolveStats::default())
}

/// One-dimensional solver by a single dense convolution of `A` and `B`.
pub fn threesum_fft(a: &PointSet, b: &PointSet, s: &PointSet) -> Result<ThreeSumResult> {
    let d = check_dims(a, b, s)?;
    let mut work = WorkCounter::default();
    let sums = sumset_small_universe(a, b, &mut work)?;
    let flat = s.coords().iter().copied().filter(|&x| sums.contains(&[x])).collect();
    finish(d, s, flat, work, SolveStats::default())
}

/// Fills `result.witnesses` with one `(a, b)` per hit by scanning `A` for a
/// partner in `B`. The probes are added to `pair_ops`.
pub fn attach_witnesses(result: &mut ThreeSumResult, a: &PointSet, b: &PointSet) {
    let mut out = Vec::with_capacity(result.hits.len());
    let mut probes = 0u64;
    for s in result.hits.iter() {
        let s = Point::new(s);
        let w = a.iter().find_map(|x| {
            probes += 1;
            s.checked_sub(x).filter(|y| b.contains(y)).map(|y| (Point::new(x), y))
        });
        out.push(w.expect("every hit has a witness"));
    }
    result.work.pairs(probes);
    result.witnesses = Some(out);
}
