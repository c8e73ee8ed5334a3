//! Does a vertex-weighted graph contain a star `K_{1,3}` of total weight `W`?

use super::universe::{preproc_universe_no_s, query_universe};
use crate::bsg::Variant;
use crate::error::{Error, Result};
use crate::fft::Strategy;
use crate::model::PointSet;
use rand::Rng;

fn check_graph(adj: &[Vec<usize>], weights: &[i64]) -> Result<()> {
    if adj.len() != weights.len() {
        return Err(Error::DimensionMismatch { expected: adj.len(), got: weights.len() });
    }
    for (u, nbrs) in adj.iter().enumerate() {
        for &v in nbrs {
            if v >= adj.len() || v == u || !adj[v].contains(&u) {
                return Err(Error::InvalidParameter(format!("edge {u}-{v} is not a simple undirected edge")));
            }
        }
    }
    Ok(())
}

/// Enumerates every center and every triple of its neighbours.
pub fn k13_brute(adj: &[Vec<usize>], weights: &[i64], target: i64) -> bool {
    adj.iter().enumerate().any(|(u, n)| {
        (0..n.len()).any(|i| {
            (i + 1..n.len()).any(|j| {
                (j + 1..n.len()).any(|k| weights[u] + weights[n[i]] + weights[n[j]] + weights[n[k]] == target)
            })
        })
    })
}

/// Per center `u`, 3SUM over the neighbour weights in the preprocessed
/// universe of all weights. Three distinct neighbours are forced by
/// colouring vertices with two bits of their index: any three distinct
/// indices get three distinct colours under some pair of bit positions, and
/// each colour class feeds one of `A`, `B`, `S`.
pub fn k13_weighted<R: Rng>(adj: &[Vec<usize>], weights: &[i64], target: i64, rng: &mut R) -> Result<bool> {
    check_graph(adj, weights)?;
    let n = adj.len();
    if n < 4 {
        return Ok(false);
    }
    let base = *weights.iter().min().unwrap();
    let shifted: Vec<u64> = weights.iter().map(|&w| (w - base) as u64).collect();
    let top = shifted.iter().max().unwrap() + 1;
    let universe = PointSet::from_values(top, shifted.iter().copied())?;
    let pu = preproc_universe_no_s(&universe, &universe, None, None, Variant::default(), rng)?;
    let bits = usize::BITS - (n - 1).leading_zeros();
    for (u, nbrs) in adj.iter().enumerate() {
        if nbrs.len() < 3 {
            continue;
        }
        let Ok(rest) = u64::try_from(target - weights[u] - 3 * base) else {
            continue;
        };
        for p in 0..bits {
            for q in p + 1..bits {
                let colour = |v: usize| 2 * ((v >> p) & 1) + ((v >> q) & 1);
                for omit in 0..4 {
                    let cls: Vec<usize> = (0..4).filter(|&c| c != omit).collect();
                    let class = |c: usize| nbrs.iter().filter(move |&&v| colour(v) == c).map(|&v| shifted[v]);
                    let a = PointSet::from_values(top, class(cls[0]))?;
                    let b = PointSet::from_values(top, class(cls[1]))?;
                    let s: Vec<u64> = class(cls[2]).filter_map(|c| rest.checked_sub(c)).collect();
                    if a.is_empty() || b.is_empty() || s.is_empty() {
                        continue;
                    }
                    let s = PointSet::from_values(s.iter().max().unwrap() + 1, s)?;
                    if !query_universe(&pu, &a, &b, &s, Strategy::Auto, rng)?.hits.is_empty() {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}
