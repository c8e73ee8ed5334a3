//! Pseudo-additive hash functions `x -> (x mod p_1, ..., x mod p_l)` and
//! pseudo-perfect families of them.

use crate::error::{Error, Result};
use crate::work::WorkCounter;
use rand::Rng;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use std::sync::{Arc, Mutex};

/// Default constant in the prime ranges `[c N log^2 U]`.
pub const DEFAULT_C: u64 = 4;
/// Default number of levels for the deterministic construction.
pub const DEFAULT_LEVELS: usize = 2;

/// Residues are stored mixed-radix with radix `2 p_i` per digit, so the sum
/// of two hash values never carries between digits and `h_hat` can decode
/// it and reduce each digit mod `p_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoAdditiveFn {
    primes: SmallVec<[u64; 4]>,
    range: u64,
}

impl PseudoAdditiveFn {
    pub fn new(primes: &[u64]) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::InvalidParameter("hash function needs at least one prime".into()));
        }
        let mut range: u128 = 1;
        for (i, &p) in primes.iter().enumerate() {
            if p < 2 || primes[..i].contains(&p) {
                return Err(Error::InvalidParameter(format!("bad prime tuple {primes:?}")));
            }
            range *= 2 * p as u128;
            if range > 1 << 62 {
                return Err(Error::Overflow(format!("hash range of {primes:?} exceeds 2^62")));
            }
        }
        Ok(PseudoAdditiveFn { primes: SmallVec::from_slice(primes), range: range as u64 })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Exclusive bound on `h(a) + h(b)`.
    pub fn range(&self) -> u64 {
        self.range
    }

    #[inline]
    pub fn h(&self, x: u64) -> u64 {
        let mut v = 0;
        for &p in self.primes.iter().rev() {
            v = v * 2 * p + x % p;
        }
        v
    }

    /// Inverse step of pseudo-additivity: `h_hat(h(a) + h(b)) = h(a + b)`.
    #[inline]
    pub fn h_hat(&self, mut y: u64) -> u64 {
        let mut digits: SmallVec<[u64; 4]> = SmallVec::new();
        for &p in &self.primes {
            digits.push((y % (2 * p)) % p);
            y /= 2 * p;
        }
        let mut v = 0;
        for (&p, &d) in self.primes.iter().zip(&digits).rev() {
            v = v * 2 * p + d;
        }
        v
    }

    /// All `y < range` with `h_hat(y) = hx`, for `hx` in the image of `h`.
    pub fn preimages(&self, hx: u64) -> SmallVec<[u64; 16]> {
        let mut out: SmallVec<[u64; 16]> = SmallVec::new();
        out.push(0);
        let mut rest = hx;
        let mut scale = 1u64;
        for &p in &self.primes {
            let r = rest % (2 * p);
            rest /= 2 * p;
            let n = out.len();
            for i in 0..n {
                let base = out[i];
                out[i] = base + r * scale;
                out.push(base + (r + p) * scale);
            }
            scale *= 2 * p;
        }
        out
    }
}

/// Functions plus, for each target `x`, the index of a function under which
/// `x` collides with no other element of the superset.
#[derive(Debug, Clone, PartialEq)]
pub struct HashFamily {
    pub fns: Vec<PseudoAdditiveFn>,
    /// Sorted targets.
    pub targets: Vec<u64>,
    /// `witness[i]` indexes `fns` for `targets[i]`.
    pub witness: Vec<u32>,
    /// Hash functions drawn or scanned, including pruned ones.
    pub attempts: usize,
}

impl HashFamily {
    pub fn witness_of(&self, x: u64) -> Option<usize> {
        self.targets.binary_search(&x).ok().map(|i| self.witness[i] as usize)
    }

    pub fn len(&self) -> usize {
        self.fns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fns.is_empty()
    }
}

static PRIME_CACHE: Mutex<Option<(u64, Arc<Vec<u64>>)>> = Mutex::new(None);

/// Primes `<= bound` (possibly followed by larger ones), from a cached sieve.
pub fn primes_up_to(bound: u64) -> Arc<Vec<u64>> {
    let mut guard = PRIME_CACHE.lock().unwrap();
    if let Some((limit, p)) = guard.as_ref() {
        if *limit >= bound {
            return p.clone();
        }
    }
    let limit = bound.max(1 << 16).next_power_of_two();
    let primes = Arc::new(sieve(limit));
    *guard = Some((limit, primes.clone()));
    primes
}

fn sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn log2_ceil(x: u64) -> u64 {
    (64 - x.saturating_sub(1).leading_zeros() as u64).max(1)
}

/// Upper end of the prime pool `c * n * log^2 U` (at least 64).
pub fn pool_bound(c: u64, n: f64, universe: u64) -> u64 {
    let lg = log2_ceil(universe) as f64;
    ((c as f64 * n * lg * lg).ceil() as u64).max(64)
}

/// Bucket sizes of `t` under `f`, indexed like `t`.
fn bucket_sizes(f: &PseudoAdditiveFn, t: &[u64]) -> Vec<u32> {
    let hs: Vec<u64> = t.iter().map(|&x| f.h(x)).collect();
    let mut counts: FxHashMap<u64, u32> = FxHashMap::default();
    counts.reserve(t.len());
    for &h in &hs {
        *counts.entry(h).or_default() += 1;
    }
    hs.iter().map(|h| counts[h]).collect()
}

/// `|collide(f, x)|` for every `x` in `t`.
pub fn collision_counts(f: &PseudoAdditiveFn, t: &[u64]) -> Vec<u32> {
    bucket_sizes(f, t).into_iter().map(|b| b - 1).collect()
}

/// Returns the first target that is not collision-free under its witness.
pub fn audit_family(family: &HashFamily, t: &[u64]) -> std::result::Result<(), u64> {
    let per_fn: Vec<FxHashMap<u64, u32>> = family
        .fns
        .iter()
        .map(|f| {
            let mut m: FxHashMap<u64, u32> = FxHashMap::default();
            for &y in t {
                *m.entry(f.h(y)).or_default() += 1;
            }
            m
        })
        .collect();
    for (i, &x) in family.targets.iter().enumerate() {
        let w = family.witness[i] as usize;
        if t.binary_search(&x).is_err() {
            return Err(x);
        }
        if per_fn.get(w).and_then(|m| m.get(&family.fns[w].h(x))) != Some(&1) {
            return Err(x);
        }
    }
    Ok(())
}

fn check_sorted(t: &[u64]) -> Result<()> {
    if t.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("superset must be sorted and distinct".into()));
    }
    Ok(())
}

/// Randomized Las Vegas construction, pseudo-perfect for all of `t`.
pub fn build_family_randomized<R: Rng>(
    t: &[u64],
    universe: u64,
    c: u64,
    rng: &mut R,
    work: &mut WorkCounter,
) -> Result<HashFamily> {
    build_family_randomized_for(t, t, universe, c, rng, work)
}

/// Randomized construction that only needs witnesses for `targets ⊆ t`;
/// collisions are still counted against all of `t`.
///
/// Primes are drawn uniformly from the primes in `[c N log^2 U]` until every
/// target has a witness. Draws that witness no new target are dropped.
pub fn build_family_randomized_for<R: Rng>(
    t: &[u64],
    targets: &[u64],
    universe: u64,
    c: u64,
    rng: &mut R,
    work: &mut WorkCounter,
) -> Result<HashFamily> {
    check_sorted(t)?;
    check_sorted(targets)?;
    let n = t.len().max(1);
    let bound = pool_bound(c.max(1), n as f64, universe.max(2));
    let all = primes_up_to(bound);
    let pool = &all[..all.partition_point(|&p| p <= bound)];
    let target_idx: Vec<usize> = targets
        .iter()
        .map(|x| t.binary_search(x).map_err(|_| Error::SupersetViolation(*x)))
        .collect::<Result<_>>()?;
    let mut witness = vec![u32::MAX; targets.len()];
    let mut pending: Vec<usize> = (0..targets.len()).collect();
    let mut fns = Vec::new();
    let cap = 16 * (log2_ceil(n as u64) as usize + 1) + 64;
    let mut attempts = 0;
    while !pending.is_empty() {
        if attempts >= cap {
            return Err(Error::AttemptCapExceeded { attempts });
        }
        attempts += 1;
        let f = PseudoAdditiveFn::new(&[pool[rng.gen_range(0..pool.len())]])?;
        let sizes = bucket_sizes(&f, t);
        work.fft(t.len() as u64);
        let idx = fns.len() as u32;
        let before = pending.len();
        pending.retain(|&i| {
            if sizes[target_idx[i]] == 1 {
                witness[i] = idx;
                false
            } else {
                true
            }
        });
        if pending.len() < before {
            fns.push(f);
        }
    }
    Ok(HashFamily { fns, targets: targets.to_vec(), witness, attempts })
}

/// Deterministic construction with `levels` primes per function.
///
/// Each round builds one tuple prime by prime: at level `i` the smallest
/// unused prime in `[c N^(1/levels) log^2 U]` is taken for which at least
/// `|S| / 2^i` of the remaining targets `S` have fewer than `N^(1 - i/levels)`
/// collisions. Targets with no collisions under the finished tuple are
/// witnessed and removed.
pub fn build_family_deterministic(
    t: &[u64],
    universe: u64,
    levels: usize,
    c: u64,
    work: &mut WorkCounter,
) -> Result<HashFamily> {
    build_family_deterministic_for(t, t, universe, levels, c, work)
}

pub fn build_family_deterministic_for(
    t: &[u64],
    targets: &[u64],
    universe: u64,
    levels: usize,
    c: u64,
    work: &mut WorkCounter,
) -> Result<HashFamily> {
    check_sorted(t)?;
    check_sorted(targets)?;
    if levels == 0 {
        return Err(Error::InvalidParameter("levels must be at least 1".into()));
    }
    let n = t.len().max(1) as f64;
    let bound = pool_bound(c.max(1), n.powf(1.0 / levels as f64), universe.max(2));
    let all = primes_up_to(bound);
    let pool = &all[..all.partition_point(|&p| p <= bound)];
    let target_idx: Vec<usize> = targets
        .iter()
        .map(|x| t.binary_search(x).map_err(|_| Error::SupersetViolation(*x)))
        .collect::<Result<_>>()?;
    let mut witness = vec![u32::MAX; targets.len()];
    let mut pending: Vec<usize> = (0..targets.len()).collect();
    let mut fns = Vec::new();
    let mut attempts = 0;
    let mut round = 0;
    while !pending.is_empty() {
        round += 1;
        let mut tuple: Vec<u64> = Vec::with_capacity(levels);
        let mut sizes = Vec::new();
        for level in 1..=levels {
            let threshold = n.powf(1.0 - level as f64 / levels as f64);
            let need = pending.len() as f64 / (1u64 << level.min(63)) as f64;
            let mut found = false;
            for &p in pool {
                if tuple.contains(&p) {
                    continue;
                }
                tuple.push(p);
                let f = match PseudoAdditiveFn::new(&tuple) {
                    Ok(f) => f,
                    Err(_) => {
                        tuple.pop();
                        break;
                    }
                };
                attempts += 1;
                sizes = bucket_sizes(&f, t);
                work.fft(t.len() as u64);
                let good = pending.iter().filter(|&&i| ((sizes[target_idx[i]] - 1) as f64) < threshold).count();
                if good as f64 >= need {
                    found = true;
                    break;
                }
                tuple.pop();
            }
            if !found {
                return Err(Error::PoolTooSmall { round, level });
            }
        }
        let idx = fns.len() as u32;
        pending.retain(|&i| {
            if sizes[target_idx[i]] == 1 {
                witness[i] = idx;
                false
            } else {
                true
            }
        });
        fns.push(PseudoAdditiveFn::new(&tuple)?);
    }
    Ok(HashFamily { fns, targets: targets.to_vec(), witness, attempts })
}

/// Family size bound `c 2^levels log2 N + 1` for the deterministic build.
pub fn deterministic_size_bound(n: usize, levels: usize, c: u64) -> f64 {
    c as f64 * (1u64 << levels) as f64 * (n.max(1) as f64).log2() + 1.0
}
