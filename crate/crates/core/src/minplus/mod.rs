//! (min,+) convolution of bounded monotone sequences, and histogram
//! indexing, both through the boundary of a 2D monotone sumset.

pub mod boundary;
pub mod hist;

use crate::error::{Error, Result};
use crate::model::PointSet;
use crate::solvers::SolveParams;
use rand::Rng;

pub use boundary::{boundary_of_sumset, SumsetBoundary};
pub use hist::{hist_offline_queries, histindex_build_binary, histindex_query, HistIndex};

/// Non-decreasing values in `[0, bound)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneSeq {
    values: Vec<i64>,
    bound: u64,
}

impl MonotoneSeq {
    pub fn new(values: Vec<i64>, bound: u64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::SequenceBound("sequence is empty".into()));
        }
        if let Some(i) = (1..values.len()).find(|&i| values[i] < values[i - 1]) {
            return Err(Error::SequenceBound(format!("decreases at index {i}")));
        }
        if let Some(v) = values.iter().find(|&&v| v < 0 || v as u64 >= bound) {
            return Err(Error::SequenceBound(format!("value {v} outside [0, {bound})")));
        }
        Ok(MonotoneSeq { values, bound })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `{(i, y) : a_i <= y <= a_{i+1}}` with `a_n = bound - 1`: connected,
    /// monotone, and lowest at `a_i` in column `i`.
    fn staircase(&self) -> Result<PointSet> {
        let mut pts = Vec::new();
        let last = self.bound as i64 - 1;
        for (i, &v) in self.values.iter().enumerate() {
            let next = self.values.get(i + 1).copied().unwrap_or(last);
            for y in v..=next {
                pts.extend_from_slice(&[i as u64, y as u64]);
            }
        }
        PointSet::from_flat(2, self.bound.max(self.values.len() as u64), pts)
    }
}

/// `s_k = min_i (a_i + b_{k-i})` by scanning all pairs.
pub fn minplus_naive(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut s = vec![i64::MAX; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            s[i + j] = s[i + j].min(x + y);
        }
    }
    s
}

/// Exact (min,+) convolution of bounded monotone sequences: the lower
/// envelope of the sum of their staircases.
pub fn minplus_bounded_monotone<R: Rng>(
    a: &MonotoneSeq,
    b: &MonotoneSeq,
    params: &SolveParams,
    rng: &mut R,
) -> Result<Vec<i64>> {
    let boundary = boundary_of_sumset(&a.staircase()?, &b.staircase()?, params, rng)?;
    Ok(boundary.lower.iter().map(|&y| y as i64).collect())
}

/// (min,+) convolution of sequences whose consecutive entries differ by at
/// most `c`: adding `c i` makes both monotone.
pub fn minplus_bounded_differences<R: Rng>(
    a: &[i64],
    b: &[i64],
    c: u64,
    params: &SolveParams,
    rng: &mut R,
) -> Result<Vec<i64>> {
    let lift = |s: &[i64]| -> Result<(MonotoneSeq, i64)> {
        if let Some(i) = (1..s.len()).find(|&i| s[i].abs_diff(s[i - 1]) > c) {
            return Err(Error::SequenceBound(format!("difference at index {i} exceeds {c}")));
        }
        let lifted: Vec<i64> = s.iter().enumerate().map(|(i, &v)| v + c as i64 * i as i64).collect();
        let base = *lifted.iter().min().ok_or_else(|| Error::SequenceBound("sequence is empty".into()))?;
        let vals: Vec<i64> = lifted.iter().map(|v| v - base).collect();
        let bound = *vals.last().unwrap() as u64 + 1;
        Ok((MonotoneSeq::new(vals, bound)?, base))
    };
    let (ma, oa) = lift(a)?;
    let (mb, ob) = lift(b)?;
    let s = minplus_bounded_monotone(&ma, &mb, params, rng)?;
    Ok(s.iter().enumerate().map(|(k, &v)| v + oa + ob - c as i64 * k as i64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params() -> SolveParams {
        SolveParams { ell: 4, alpha: 0.3, brute_cutoff: 4, ..SolveParams::default() }
    }

    #[test]
    fn naive_examples() {
        assert_eq!(minplus_naive(&[0, 1, 2], &[0, 2, 4]), vec![0, 1, 2, 4, 6]);
        assert_eq!(minplus_naive(&[3, 1, 4], &[0]), vec![3, 1, 4]);
        assert_eq!(minplus_naive(&[0, -1, 0], &[0, 1, 0]), vec![0, -1, 0, -1, 0]);
    }

    #[test]
    fn monotone_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let a = MonotoneSeq::new(vec![0, 1, 2], 6).unwrap();
        let b = MonotoneSeq::new(vec![0, 2, 4], 6).unwrap();
        assert_eq!(minplus_bounded_monotone(&a, &b, &params(), &mut rng).unwrap(), vec![0, 1, 2, 4, 6]);
        let a = MonotoneSeq::new(vec![5, 5, 5], 6).unwrap();
        let b = MonotoneSeq::new(vec![3, 3, 3], 6).unwrap();
        assert_eq!(minplus_bounded_monotone(&a, &b, &params(), &mut rng).unwrap(), vec![8; 5]);
        assert!(MonotoneSeq::new(vec![2, 1], 6).is_err());
        assert!(MonotoneSeq::new(vec![0, 6], 6).is_err());
    }

    #[test]
    fn random_monotone_match_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1usize, 7, 64, 256] {
            let c = 2u64;
            let seq = |rng: &mut ChaCha8Rng| {
                let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(0..(c * n as u64) as i64)).collect();
                v.sort_unstable();
                MonotoneSeq::new(v, c * n as u64).unwrap()
            };
            let (a, b) = (seq(&mut rng), seq(&mut rng));
            let got = minplus_bounded_monotone(&a, &b, &params(), &mut rng).unwrap();
            assert_eq!(got, minplus_naive(a.values(), b.values()), "n={n}");
        }
    }

    #[test]
    fn bounded_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = params();
        assert_eq!(minplus_bounded_differences(&[0, -1, 0], &[0, 1, 0], 1, &p, &mut rng).unwrap(), vec![0, -1, 0, -1, 0]);
        assert_eq!(minplus_bounded_differences(&[4, 4], &[2, 2, 2], 0, &p, &mut rng).unwrap(), vec![6; 4]);
        assert!(minplus_bounded_differences(&[0, 3], &[0], 2, &p, &mut rng).is_err());
        for _ in 0..5 {
            let walk = |rng: &mut ChaCha8Rng| {
                let mut v = vec![rng.gen_range(-5i64..5)];
                for _ in 1..50 {
                    v.push(v.last().unwrap() + rng.gen_range(-3i64..=3));
                }
                v
            };
            let (a, b) = (walk(&mut rng), walk(&mut rng));
            assert_eq!(minplus_bounded_differences(&a, &b, 3, &p, &mut rng).unwrap(), minplus_naive(&a, &b));
        }
    }
}
