//! Seeded instance generators whose outputs satisfy the hypotheses of the
//! structured solvers.

use super::PointSet;
use crate::error::{Error, Result};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    /// `A`, `B` monotone in `[n]^d`; `S` monotone in `[2n]^d`.
    MonotoneD,
    /// 1D sets covered by `K` intervals of length `L`.
    Clustered,
    /// Two non-decreasing sequences of `n` values in `[c n]`.
    BoundedMonotoneSeq,
    /// A random string over digits `0..alphabet`.
    String,
}

impl std::str::FromStr for GenKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monotone-d" => Ok(GenKind::MonotoneD),
            "clustered" => Ok(GenKind::Clustered),
            "bounded-monotone-seq" => Ok(GenKind::BoundedMonotoneSeq),
            "string" => Ok(GenKind::String),
            other => Err(Error::InvalidParameter(format!("unknown instance kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GenParams {
    pub n: usize,
    pub d: usize,
    pub c: u64,
    pub k: usize,
    pub l: u64,
    pub alphabet: usize,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { n: 64, d: 2, c: 2, k: 4, l: 16, alphabet: 2, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    ThreeSum { a: PointSet, b: PointSet, s: PointSet },
    Sequences { a: Vec<i64>, b: Vec<i64>, c: u64 },
    Text { text: Vec<u8>, alphabet: usize },
}

pub fn gen_instance(kind: GenKind, p: &GenParams) -> Result<Instance> {
    if p.n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    match kind {
        GenKind::MonotoneD => {
            if p.d == 0 {
                return Err(Error::InvalidParameter("d must be positive".into()));
            }
            let a = monotone_set(&mut rng, p.n, p.d)?;
            let b = monotone_set(&mut rng, p.n, p.d)?;
            let s = monotone_targets(&mut rng, &a, &b, p.n)?;
            Ok(Instance::ThreeSum { a, b, s })
        }
        GenKind::Clustered => {
            if p.k == 0 || p.l == 0 {
                return Err(Error::InvalidParameter("clustered instances need K >= 1 and L >= 1".into()));
            }
            if (p.k as u64).saturating_mul(p.l) < p.n as u64 {
                return Err(Error::InvalidParameter(format!(
                    "{} intervals of length {} cannot hold {} points",
                    p.k, p.l, p.n
                )));
            }
            let universe = p.k as u64 * 2 * p.l + p.l;
            let a = clustered_set(&mut rng, p.n, p.k, p.l, universe)?;
            let b = clustered_set(&mut rng, p.n, p.k, p.l, universe)?;
            let s = clustered_targets(&mut rng, &a, &b, p.n, p.l)?;
            Ok(Instance::ThreeSum { a, b, s })
        }
        GenKind::BoundedMonotoneSeq => {
            if p.c == 0 {
                return Err(Error::InvalidParameter("c must be positive".into()));
            }
            let bound = p.c * p.n as u64;
            let mut seq = || {
                let mut v: Vec<i64> = (0..p.n).map(|_| rng.gen_range(0..bound) as i64).collect();
                v.sort_unstable();
                v
            };
            let a = seq();
            let b = seq();
            Ok(Instance::Sequences { a, b, c: p.c })
        }
        GenKind::String => {
            if !(1..=10).contains(&p.alphabet) {
                return Err(Error::InvalidParameter("alphabet must be between 1 and 10".into()));
            }
            let text = (0..p.n).map(|_| rng.gen_range(0..p.alphabet) as u8).collect();
            Ok(Instance::Text { text, alphabet: p.alphabet })
        }
    }
}

/// A monotone chain of `n` points in `[n]^d`: a unit-step walk from the
/// origin for `d >= 2`, and a random `n/2`-subset of `[n]` for `d = 1`.
pub fn monotone_set<R: Rng>(rng: &mut R, n: usize, d: usize) -> Result<PointSet> {
    let universe = n as u64;
    if d == 1 {
        let m = (n / 2).max(1);
        let vals = sample(rng, n, m).into_iter().map(|v| v as u64);
        return PointSet::from_values(universe, vals);
    }
    let mut cur = vec![0u64; d];
    let mut coords = Vec::with_capacity(n * d);
    coords.extend_from_slice(&cur);
    for _ in 1..n {
        cur[rng.gen_range(0..d)] += 1;
        coords.extend_from_slice(&cur);
    }
    PointSet::from_flat(d, universe, coords)
}

/// Monotone target set in `[2n]^d`: the chain `a_i + b_i`, with half the
/// points nudged by one unit, re-sorted coordinate-wise.
fn monotone_targets<R: Rng>(rng: &mut R, a: &PointSet, b: &PointSet, n: usize) -> Result<PointSet> {
    let d = a.dim();
    let m = a.len().min(b.len());
    let mut cols: Vec<Vec<u64>> = vec![Vec::with_capacity(m); d];
    for i in 0..m {
        let bump = if rng.gen_bool(0.5) { Some(rng.gen_range(0..d)) } else { None };
        for (j, col) in cols.iter_mut().enumerate() {
            col.push(a.point(i)[j] + b.point(i)[j] + u64::from(bump == Some(j)));
        }
    }
    for col in &mut cols {
        col.sort_unstable();
    }
    let coords: Vec<u64> = (0..m).flat_map(|i| cols.iter().map(move |c| c[i])).collect();
    PointSet::from_flat(d, 2 * n as u64, coords)
}

fn clustered_set<R: Rng>(rng: &mut R, n: usize, k: usize, l: u64, universe: u64) -> Result<PointSet> {
    let mut start = rng.gen_range(0..l);
    let mut vals = Vec::with_capacity(n);
    for i in 0..k {
        let quota = n / k + usize::from(i < n % k);
        let quota = quota.min(l as usize);
        vals.extend(sample(rng, l as usize, quota).into_iter().map(|o| start + o as u64));
        start += l + rng.gen_range(0..l);
    }
    PointSet::from_values(universe, vals)
}

fn clustered_targets<R: Rng>(rng: &mut R, a: &PointSet, b: &PointSet, n: usize, l: u64) -> Result<PointSet> {
    let universe = 2 * a.universe().max(b.universe());
    let (av, bv) = (a.coords(), b.coords());
    let vals = (0..n).map(|i| {
        let s = av[rng.gen_range(0..av.len())] + bv[rng.gen_range(0..bv.len())];
        if i % 2 == 0 {
            s
        } else {
            (s + rng.gen_range(0..l)).saturating_sub(l / 2).min(universe - 1)
        }
    });
    PointSet::from_values(universe, vals.collect::<Vec<_>>())
}
