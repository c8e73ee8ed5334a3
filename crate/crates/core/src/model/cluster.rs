//! Monotonicity and clustering predicates.

use super::PointSet;
use crate::error::{Error, Result};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

/// First violation of simultaneous monotonicity, as `(coordinate, index)`:
/// with points in lexicographic order, coordinate `coordinate` decreases
/// between points `index - 1` and `index`.
pub fn monotone_violation(s: &PointSet) -> Option<(usize, usize)> {
    // Lexicographic order sorts on the first coordinate and breaks ties on
    // the rest, so a monotone set is monotone in this order.
    for i in 1..s.len() {
        let (p, q) = (s.point(i - 1), s.point(i));
        if let Some(j) = (0..s.dim()).find(|&j| q[j] < p[j]) {
            return Some((j, i));
        }
    }
    None
}

pub fn is_monotone(s: &PointSet) -> bool {
    monotone_violation(s).is_none()
}

pub(crate) fn require_monotone(s: &PointSet) -> Result<()> {
    match monotone_violation(s) {
        Some((coordinate, index)) => Err(Error::NotMonotone { coordinate, index }),
        None => Ok(()),
    }
}

/// `(K, L, M)` clustering promise: the set is covered by `k` disjoint cubes
/// of volume `l`, each holding at most `m` points (`None` = unbounded).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterDesc {
    pub k: usize,
    pub l: u64,
    pub m: Option<usize>,
}

impl ClusterDesc {
    pub fn new(k: usize, l: u64, m: Option<usize>) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidParameter("cluster descriptor needs K >= 1 and L >= 1".into()));
        }
        Ok(ClusterDesc { k, l, m })
    }

    /// Occupancy bound, with an absent `M` replaced by the set size.
    pub fn m_or(&self, size: usize) -> usize {
        self.m.unwrap_or(size).min(size.max(1))
    }
}

/// Smallest `r` with `r^d >= v`.
pub fn int_root_ceil(v: u64, d: usize) -> u64 {
    if d == 1 || v <= 1 {
        return v.max(1);
    }
    let mut r = (v as f64).powf(1.0 / d as f64).round().max(1.0) as u64;
    let pow = |r: u64| (r as u128).pow(d as u32);
    while pow(r) < v as u128 {
        r += 1;
    }
    while r > 1 && pow(r - 1) >= v as u128 {
        r -= 1;
    }
    r
}

/// Greedy left-to-right cover of a 1D set by intervals of length `l`;
/// returns `(start, points)` per interval. The greedy count is the minimum
/// number of intervals.
pub fn cover_intervals_1d(values: &[u64], l: u64) -> Vec<(u64, usize)> {
    let mut out: Vec<(u64, usize)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((start, count)) if v < *start + l => *count += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Checks necessary conditions for `s` being `desc`-clustered.
///
/// With grid side `ceil(L^(1/d))`, a cube of volume `L` meets at most `2^d`
/// grid cells and each grid cell meets at most `2^d` cubes, so a valid
/// descriptor implies at most `2^d K` nonempty cells of at most `2^d M`
/// points each. In one dimension the cube count is also checked exactly
/// with the greedy interval cover.
pub fn audit_cluster(s: &PointSet, desc: &ClusterDesc) -> Result<()> {
    let d = s.dim();
    let side = int_root_ceil(desc.l, d);
    let mut occupancy: FxHashMap<SmallVec<[u64; 4]>, usize> = FxHashMap::default();
    for p in s.iter() {
        *occupancy.entry(p.iter().map(|&x| x / side).collect()).or_default() += 1;
    }
    let fan = 1usize << d;
    if occupancy.len() > fan * desc.k {
        return Err(Error::ClusterAudit(format!(
            "{} nonempty cells of side {side} exceed 2^d * K = {}",
            occupancy.len(),
            fan * desc.k
        )));
    }
    if let Some(m) = desc.m {
        let worst = occupancy.values().copied().max().unwrap_or(0);
        if worst > fan * m {
            return Err(Error::ClusterAudit(format!("a cell holds {worst} points, more than 2^d * M = {}", fan * m)));
        }
    }
    if d == 1 {
        let cover = cover_intervals_1d(s.coords(), desc.l);
        if cover.len() > desc.k {
            return Err(Error::ClusterAudit(format!(
                "needs {} intervals of length {}, descriptor allows {}",
                cover.len(),
                desc.l,
                desc.k
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_examples() {
        let diag = PointSet::new(2, 4, [[0, 0], [1, 1], [2, 2]]).unwrap();
        assert!(is_monotone(&diag));
        let cross = PointSet::new(2, 4, [[0, 1], [1, 0]]).unwrap();
        assert!(!is_monotone(&cross));
        assert_eq!(monotone_violation(&cross), Some((1, 1)));
        assert!(is_monotone(&PointSet::new(3, 4, [[3, 1, 2]]).unwrap()));
        // ties on the first coordinate are ordered by the second
        assert!(is_monotone(&PointSet::new(2, 4, [[1, 2], [1, 1], [0, 0]]).unwrap()));
    }

    #[test]
    fn roots() {
        assert_eq!(int_root_ceil(16, 2), 4);
        assert_eq!(int_root_ceil(17, 2), 5);
        assert_eq!(int_root_ceil(27, 3), 3);
        assert_eq!(int_root_ceil(28, 3), 4);
        assert_eq!(int_root_ceil(1, 3), 1);
        assert_eq!(int_root_ceil(64, 1), 64);
    }

    #[test]
    fn greedy_cover() {
        let c = cover_intervals_1d(&[0, 3, 4, 10, 11, 30], 5);
        assert_eq!(c, vec![(0, 3), (10, 2), (30, 1)]);
    }

    #[test]
    fn audit_accepts_and_rejects() {
        let s = PointSet::from_values(100, [0, 1, 2, 40, 41]).unwrap();
        audit_cluster(&s, &ClusterDesc::new(2, 4, Some(3)).unwrap()).unwrap();
        assert!(audit_cluster(&s, &ClusterDesc::new(1, 4, None).unwrap()).is_err());
        assert!(audit_cluster(&s, &ClusterDesc::new(2, 4, Some(1)).unwrap()).is_err());
    }
}
