//! Sumsets by dense convolution, and by hashed convolution inside a known
//! superset.

use super::hash::{self, HashFamily, PseudoAdditiveFn};
use super::ntt::{convolve, MAX_LEN};
use crate::error::{Error, Result};
use crate::model::PointSet;
use crate::work::WorkCounter;
use rand::Rng;
use rustc_hash::FxHashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyMode {
    Randomized,
    Deterministic { levels: usize },
}

/// How [`sumset_within`] evaluates a sumset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Cheapest of the three by estimated cost.
    #[default]
    Auto,
    Brute,
    /// Indicator convolution over the value span.
    Dense,
    /// Randomized hash family over the superset.
    Hashed,
    /// Deterministic hash family over the superset.
    HashedDet,
}

fn require_1d(s: &PointSet) -> Result<()> {
    if s.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: s.dim() });
    }
    Ok(())
}

/// `A + B` of sorted value lists by one indicator convolution over the span
/// `[min A + min B, max A + max B]`.
pub fn sumset_dense(a: &[u64], b: &[u64], work: &mut WorkCounter) -> Result<Vec<u64>> {
    let (Some(&a0), Some(&b0)) = (a.first(), b.first()) else {
        return Ok(Vec::new());
    };
    let (a1, b1) = (*a.last().unwrap(), *b.last().unwrap());
    let len = (a1 - a0) + (b1 - b0) + 1;
    if len > MAX_LEN as u64 {
        return Err(Error::CapExceeded { len, cap: MAX_LEN as u64 });
    }
    let mut u = vec![0u64; (a1 - a0 + 1) as usize];
    let mut v = vec![0u64; (b1 - b0 + 1) as usize];
    for &x in a {
        u[(x - a0) as usize] = 1;
    }
    for &y in b {
        v[(y - b0) as usize] = 1;
    }
    work.fft(len.next_power_of_two());
    let z = convolve(&u, &v)?;
    Ok(z.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| a0 + b0 + i as u64).collect())
}

/// `A + B` for one-dimensional sets whose span fits the transform cap.
pub fn sumset_small_universe(a: &PointSet, b: &PointSet, work: &mut WorkCounter) -> Result<PointSet> {
    require_1d(a)?;
    require_1d(b)?;
    let vals = sumset_dense(a.coords(), b.coords(), work)?;
    PointSet::from_values((a.universe() + b.universe()).saturating_sub(1).max(1), vals)
}

/// `A + B` by pair enumeration (test oracle and small-case fallback).
pub fn sumset_brute(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().flat_map(|&x| b.iter().map(move |&y| x + y)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Histogram of `h` over `xs` in `[0, f.range())`.
fn hashed_counts(f: &PseudoAdditiveFn, xs: &[u64], len: usize) -> Vec<u64> {
    let mut u = vec![0u64; len];
    for &x in xs {
        u[f.h(x) as usize] += 1;
    }
    u
}

/// The targets of `family` that lie in `A + B`. Requires `A + B ⊆ T` for the
/// superset `T` the family was built for; with `check` the contract is
/// verified by brute force and a violation is an error.
pub fn sumset_hashed(
    a: &[u64],
    b: &[u64],
    family: &HashFamily,
    check: Option<&[u64]>,
    work: &mut WorkCounter,
) -> Result<Vec<u64>> {
    if let Some(t) = check {
        if let Some(s) = sumset_brute(a, b).into_iter().find(|s| t.binary_search(s).is_err()) {
            return Err(Error::SupersetViolation(s));
        }
    }
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut hit = vec![false; family.targets.len()];
    for (fi, f) in family.fns.iter().enumerate() {
        let range = f.range();
        if range > MAX_LEN as u64 {
            return Err(Error::CapExceeded { len: range, cap: MAX_LEN as u64 });
        }
        let len = range.div_ceil(2) as usize;
        let z = convolve(&hashed_counts(f, a, len), &hashed_counts(f, b, len))?;
        work.fft(range.next_power_of_two());
        for (i, &x) in family.targets.iter().enumerate() {
            if family.witness[i] as usize == fi {
                let hx = f.h(x);
                hit[i] = f.preimages(hx).iter().any(|&y| z.get(y as usize).is_some_and(|&c| c > 0));
            }
        }
        work.fft(family.targets.len() as u64);
    }
    Ok(family.targets.iter().zip(hit).filter(|(_, h)| *h).map(|(&x, _)| x).collect())
}

/// `A + B` given a superset `T ⊇ A + B`; one-dimensional sets.
pub fn sumset_via_fft<R: Rng>(
    a: &PointSet,
    b: &PointSet,
    t: &PointSet,
    mode: FamilyMode,
    check: bool,
    rng: &mut R,
    work: &mut WorkCounter,
) -> Result<PointSet> {
    require_1d(a)?;
    require_1d(b)?;
    require_1d(t)?;
    let universe = t.universe().max(2);
    let family = match mode {
        FamilyMode::Randomized => hash::build_family_randomized(t.coords(), universe, hash::DEFAULT_C, rng, work)?,
        FamilyMode::Deterministic { levels } => {
            hash::build_family_deterministic(t.coords(), universe, levels, hash::DEFAULT_C, work)?
        }
    };
    let vals = sumset_hashed(a.coords(), b.coords(), &family, check.then_some(t.coords()), work)?;
    PointSet::from_values(t.universe(), vals)
}

fn brute_within(a: &[u64], b: &[u64], targets: &[u64], work: &mut WorkCounter) -> Vec<u64> {
    let set: FxHashSet<u64> = targets.iter().copied().collect();
    let mut out: Vec<u64> = Vec::new();
    for &x in a {
        for &y in b {
            if set.contains(&(x + y)) {
                out.push(x + y);
            }
        }
    }
    work.pairs(a.len() as u64 * b.len() as u64);
    out.sort_unstable();
    out.dedup();
    out
}

fn transform_cost(len: u64) -> f64 {
    let n = len.max(2).next_power_of_two() as f64;
    3.0 * n * n.log2()
}

/// Estimated costs of the three strategies, in work units.
pub fn strategy_costs(a: &[u64], b: &[u64], t_len: usize, universe: u64) -> [(Strategy, f64); 3] {
    let brute = a.len() as f64 * b.len() as f64;
    let span = match (a.first(), a.last(), b.first(), b.last()) {
        (Some(a0), Some(a1), Some(b0), Some(b1)) => (a1 - a0) + (b1 - b0) + 1,
        _ => 1,
    };
    let dense = if span > MAX_LEN as u64 { f64::INFINITY } else { transform_cost(span) };
    let range = hash::pool_bound(hash::DEFAULT_C, t_len as f64, universe);
    let hashed = if range > MAX_LEN as u64 / 2 {
        f64::INFINITY
    } else {
        2.0 * (t_len as f64 + transform_cost(range))
    };
    [(Strategy::Brute, brute), (Strategy::Dense, dense), (Strategy::Hashed, hashed)]
}

/// `targets ∩ (A + B)` for sorted value lists, where `t ⊇ A + B` and
/// `targets ⊆ t`. Returns the hits sorted.
pub fn sumset_within<R: Rng>(
    a: &[u64],
    b: &[u64],
    t: &[u64],
    targets: &[u64],
    strategy: Strategy,
    rng: &mut R,
    work: &mut WorkCounter,
) -> Result<Vec<u64>> {
    if a.is_empty() || b.is_empty() || targets.is_empty() {
        return Ok(Vec::new());
    }
    let universe = t.last().map_or(2, |&m| m + 1).max(2);
    let chosen = match strategy {
        Strategy::Auto => {
            let costs = strategy_costs(a, b, t.len(), universe);
            costs.iter().min_by(|x, y| x.1.total_cmp(&y.1)).unwrap().0
        }
        s => s,
    };
    match chosen {
        Strategy::Brute | Strategy::Auto => Ok(brute_within(a, b, targets, work)),
        Strategy::Dense => {
            let all = sumset_dense(a, b, work)?;
            Ok(intersect_sorted(&all, targets))
        }
        Strategy::Hashed => {
            let family = hash::build_family_randomized_for(t, targets, universe, hash::DEFAULT_C, rng, work)?;
            sumset_hashed(a, b, &family, None, work)
        }
        Strategy::HashedDet => {
            let family = hash::build_family_deterministic_for(
                t,
                targets,
                universe,
                hash::DEFAULT_LEVELS,
                hash::DEFAULT_C,
                work,
            )?;
            sumset_hashed(a, b, &family, None, work)
        }
    }
}

pub fn intersect_sorted(x: &[u64], y: &[u64]) -> Vec<u64> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(x[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(v: &[u64]) -> PointSet {
        PointSet::from_values(1 << 12, v.iter().copied()).unwrap()
    }

    #[test]
    fn small_universe_examples() {
        let mut w = WorkCounter::new();
        let cases: [(&[u64], &[u64], &[u64]); 3] =
            [(&[0, 1], &[0, 2], &[0, 1, 2, 3]), (&[0], &[5], &[5]), (&[1, 3, 5], &[2, 4], &[3, 5, 7, 9])];
        for (a, b, want) in cases {
            assert_eq!(sumset_small_universe(&set(a), &set(b), &mut w).unwrap().coords(), want);
        }
    }

    #[test]
    fn via_fft_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut w = WorkCounter::new();
        for mode in [FamilyMode::Randomized, FamilyMode::Deterministic { levels: 2 }] {
            let run = |a: &[u64], b: &[u64], t: &[u64], rng: &mut ChaCha8Rng, w: &mut WorkCounter| {
                sumset_via_fft(&set(a), &set(b), &set(t), mode, true, rng, w).unwrap().coords().to_vec()
            };
            assert_eq!(run(&[0, 1], &[0, 2], &[0, 1, 2, 3], &mut rng, &mut w), vec![0, 1, 2, 3]);
            assert_eq!(run(&[10, 20], &[5], &[15, 25, 99], &mut rng, &mut w), vec![15, 25]);
            assert_eq!(run(&[0], &[0], &[0], &mut rng, &mut w), vec![0]);
        }
    }

    #[test]
    fn superset_violation_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut w = WorkCounter::new();
        let r = sumset_via_fft(&set(&[1]), &set(&[1]), &set(&[3]), FamilyMode::Randomized, true, &mut rng, &mut w);
        assert_eq!(r.unwrap_err(), Error::SupersetViolation(2));
    }

    #[test]
    fn within_strategies_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut w = WorkCounter::new();
        for _ in 0..20 {
            let mut a: Vec<u64> = (0..40).map(|_| rng.gen_range(0..3000)).collect();
            let mut b: Vec<u64> = (0..40).map(|_| rng.gen_range(0..3000)).collect();
            a.sort_unstable();
            a.dedup();
            b.sort_unstable();
            b.dedup();
            let full = sumset_brute(&a, &b);
            let mut t = full.clone();
            t.extend((0..50).map(|_| rng.gen_range(0..6000)));
            t.sort_unstable();
            t.dedup();
            let targets: Vec<u64> = t.iter().copied().step_by(2).collect();
            let want = intersect_sorted(&full, &targets);
            for s in [Strategy::Auto, Strategy::Brute, Strategy::Dense, Strategy::Hashed, Strategy::HashedDet] {
                assert_eq!(sumset_within(&a, &b, &t, &targets, s, &mut rng, &mut w).unwrap(), want, "{s:?}");
            }
        }
    }
}
