//! Histogram indexing: does some substring have exactly the given symbol
//! counts?

use super::boundary::boundary_of_sumset;
use crate::error::{Error, Result};
use crate::model::PointSet;
use crate::solvers::{threesum_monotone, SolveParams};
use rand::Rng;

/// For a binary string of length `n`: the least and greatest number of 1's
/// over substrings of each length `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistIndex {
    pub min_ones: Vec<u64>,
    pub max_ones: Vec<u64>,
}

impl HistIndex {
    pub fn len(&self) -> usize {
        self.min_ones.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_symbols(s: &[u8], alphabet: usize) -> Result<()> {
    match s.iter().find(|&&c| c as usize >= alphabet) {
        Some(&c) => Err(Error::InvalidSymbol { symbol: char::from_digit(c as u32, 36).unwrap_or('?'), alphabet }),
        None => Ok(()),
    }
}

/// Prefix count vectors `a_0..a_n` of `s` over `[alphabet]`, and their
/// reflection `total - a_i`.
fn prefix_sets(s: &[u8], alphabet: usize) -> Result<(PointSet, PointSet, Vec<u64>)> {
    let n = s.len() as u64;
    let mut cur = vec![0u64; alphabet];
    let mut coords = cur.clone();
    for &c in s {
        cur[c as usize] += 1;
        coords.extend_from_slice(&cur);
    }
    let total = cur;
    let reflected: Vec<u64> = coords.chunks_exact(alphabet).flat_map(|p| p.iter().zip(&total).map(|(x, t)| t - x)).collect();
    let a = PointSet::from_flat(alphabet, n + 1, coords)?;
    let b = PointSet::from_flat(alphabet, n + 1, reflected)?;
    Ok((a, b, total))
}

/// Builds the index from the boundary of `A + (total - A)` for the prefix
/// counts `A` in (zeros, ones) coordinates. Column `Z + z` of that sumset
/// holds the 1-counts of substrings with `z` zeros, an interval
/// `[lo_z, hi_z]`; a two-pointer sweep turns these into per-length bounds.
pub fn histindex_build_binary<R: Rng>(s: &[u8], params: &SolveParams, rng: &mut R) -> Result<HistIndex> {
    check_symbols(s, 2)?;
    let n = s.len();
    let (a, b, total) = prefix_sets(s, 2)?;
    let zeros = total[0] as usize;
    let boundary = boundary_of_sumset(&a, &b, params, rng)?;
    // Column x of the sumset is Z + z; y is O + ones.
    let ones_total = total[1] as i64;
    let col = |z: usize| -> (i64, i64) {
        let i = zeros + z - boundary.x_min as usize;
        (boundary.lower[i] as i64 - ones_total, boundary.upper[i] as i64 - ones_total)
    };
    // z + lo_z and z + hi_z are both strictly increasing in z.
    let lo: Vec<i64> = (0..=zeros).map(|z| col(z).0.max(0) + z as i64).collect();
    let hi: Vec<i64> = (0..=zeros).map(|z| col(z).1 + z as i64).collect();
    let mut min_ones = Vec::with_capacity(n + 1);
    let mut max_ones = Vec::with_capacity(n + 1);
    let (mut zmax, mut zmin) = (0usize, 0usize);
    for k in 0..=n as i64 {
        while zmax < zeros && lo[zmax + 1] <= k {
            zmax += 1;
        }
        while hi[zmin] < k {
            zmin += 1;
        }
        min_ones.push((k - zmax as i64) as u64);
        max_ones.push((k - zmin as i64) as u64);
    }
    Ok(HistIndex { min_ones, max_ones })
}

/// Whether some substring has exactly `i` zeros and `j` ones. The empty
/// substring makes `(0, 0)` true.
pub fn histindex_query(idx: &HistIndex, i: u64, j: u64) -> bool {
    let k = i + j;
    if k as usize > idx.len() {
        return false;
    }
    (idx.min_ones[k as usize]..=idx.max_ones[k as usize]).contains(&j)
}

/// Batch histogram queries over `[alphabet]`: one monotone 3SUM call with
/// `A` the prefix count vectors, `B = total - A` and `S = total + queries`.
pub fn hist_offline_queries<R: Rng>(
    s: &[u8],
    alphabet: usize,
    queries: &[Vec<u64>],
    params: &SolveParams,
    rng: &mut R,
) -> Result<Vec<bool>> {
    if alphabet == 0 {
        return Err(Error::InvalidParameter("alphabet must be non-empty".into()));
    }
    check_symbols(s, alphabet)?;
    if let Some(q) = queries.iter().find(|q| q.len() != alphabet) {
        return Err(Error::DimensionMismatch { expected: alphabet, got: q.len() });
    }
    let n = s.len() as u64;
    let (a, b, total) = prefix_sets(s, alphabet)?;
    let universe = 2 * (n + 1);
    let targets: Vec<Vec<u64>> = queries.iter().map(|q| q.iter().zip(&total).map(|(x, t)| x + t).collect()).collect();
    let in_range = |t: &Vec<u64>| t.iter().all(|&x| x < universe);
    let set = PointSet::new(alphabet, universe, targets.iter().filter(|t| in_range(t)))?;
    let params = SolveParams { check_s_monotone: false, ..*params };
    let hits = threesum_monotone(&a, &b, &set, &params, rng)?.hits;
    Ok(targets.iter().map(|t| in_range(t) && hits.contains(t)).collect())
}
