//! Lower and upper envelopes of `A + B` for connected monotone 2D sets.

use crate::error::{Error, Result};
use crate::model::cluster::require_monotone;
use crate::model::PointSet;
use crate::solvers::{threesum_monotone, SolveParams};
use rand::Rng;

/// `lower[i]` and `upper[i]` are the least and greatest `y` with
/// `(x_min + i, y) ∈ A + B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumsetBoundary {
    pub x_min: u64,
    pub lower: Vec<u64>,
    pub upper: Vec<u64>,
}

impl SumsetBoundary {
    pub fn x_max(&self) -> u64 {
        self.x_min + self.lower.len() as u64 - 1
    }

    /// Whether `(x, y)` lies in `A + B`; every column is an interval.
    pub fn contains(&self, x: u64, y: u64) -> bool {
        match x.checked_sub(self.x_min) {
            Some(i) if (i as usize) < self.lower.len() => (self.lower[i as usize]..=self.upper[i as usize]).contains(&y),
            _ => false,
        }
    }
}

pub(crate) fn require_connected(s: &PointSet) -> Result<()> {
    for i in 1..s.len() {
        let (p, q) = (s.point(i - 1), s.point(i));
        let step: u64 = p.iter().zip(q).map(|(x, y)| x.abs_diff(*y)).sum();
        if step != 1 {
            return Err(Error::NotConnected { index: i - 1, next: i });
        }
    }
    Ok(())
}

/// Per column `x` of a connected monotone 2D set, its least `y`.
fn column_mins(s: &PointSet) -> (u64, Vec<u64>) {
    let x0 = s.point(0)[0];
    let mut out: Vec<u64> = Vec::new();
    for p in s.iter() {
        if (p[0] - x0) as usize == out.len() {
            out.push(p[1]);
        }
    }
    (x0, out)
}

/// Envelopes of `A + B` by simultaneous binary search: each round probes one
/// `y` per column with a single monotone 3SUM call and halves every column's
/// search interval.
pub fn boundary_of_sumset<R: Rng>(
    a: &PointSet,
    b: &PointSet,
    params: &SolveParams,
    rng: &mut R,
) -> Result<SumsetBoundary> {
    for s in [a, b] {
        if s.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: s.dim() });
        }
        if s.is_empty() {
            return Err(Error::InvalidParameter("boundary of an empty set".into()));
        }
        require_monotone(s)?;
        require_connected(s)?;
    }
    let (ax, amin) = column_mins(a);
    let (bx, bmin) = column_mins(b);
    let x_min = ax + bx;
    let cols = amin.len() + bmin.len() - 1;
    // One known element of each column's interval.
    let probe: Vec<u64> = (0..cols)
        .map(|k| {
            let i = k.min(amin.len() - 1);
            amin[i] + bmin[k - i]
        })
        .collect();
    let y_span = (a.universe() + b.universe()).max(2);
    let rounds = y_span.next_power_of_two().trailing_zeros();
    let s_universe = (a.universe() + b.universe()).max(x_min + cols as u64);
    let params = SolveParams { check_s_monotone: true, ..*params };

    let mut lower = vec![0u64; cols];
    let mut upper = vec![0u64; cols];
    for (want_low, out) in [(true, &mut lower), (false, &mut upper)] {
        // Column k's extreme lies in [lo[k], lo[k] + len).
        let mut lo = vec![0u64; cols];
        let mut len = 1u64 << rounds;
        while len > 1 {
            let half = len / 2;
            // Lower: probe the last element of the lower half. Upper: the
            // first element of the upper half.
            let ys: Vec<u64> = lo.iter().map(|&l| if want_low { l + half - 1 } else { l + half }).collect();
            let s = PointSet::new(2, s_universe.max(ys.iter().max().unwrap() + 1), (0..cols).map(|k| [x_min + k as u64, ys[k]]))?;
            let hits = threesum_monotone(a, b, &s, &params, rng)?.hits;
            for k in 0..cols {
                let y = ys[k];
                let found = hits.contains(&[x_min + k as u64, y]);
                let go_low = if want_low { found || probe[k] < y } else { !found && probe[k] < y };
                if !go_low {
                    lo[k] += half;
                }
            }
            len = half;
        }
        *out = lo;
    }
    Ok(SumsetBoundary { x_min, lower, upper })
}
