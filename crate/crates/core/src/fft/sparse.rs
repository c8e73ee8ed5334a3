//! Output-sensitive sparse convolution inside a known superset of the
//! output support.

use super::hash::HashFamily;
use super::ntt::{convolve, MAX_LEN};
use crate::error::{Error, Result};
use crate::work::WorkCounter;

/// `(position, value)` pairs with distinct positions.
pub type Sparse = Vec<(u64, u64)>;

fn fold(f: &super::hash::PseudoAdditiveFn, v: &[(u64, u64)], len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for &(i, x) in v {
        out[f.h(i) as usize] += x;
    }
    out
}

/// Nonzero entries of `u * v`, provided the support of `u * v` lies in the
/// superset the family was built for and the family's targets cover it.
///
/// Each function folds `u` and `v` by hash value, convolves the folded
/// vectors, and reads `z_x` for each of its witnessed `x` as the sum over the
/// preimages of `h(x)`. Values are non-negative, so no pair can land in a
/// bucket of `x` unless its sum is `x`.
pub fn sparse_convolution(u: &[(u64, u64)], v: &[(u64, u64)], family: &HashFamily, work: &mut WorkCounter) -> Result<Sparse> {
    let mut out = vec![0u64; family.targets.len()];
    if u.is_empty() || v.is_empty() {
        return Ok(Vec::new());
    }
    for (fi, f) in family.fns.iter().enumerate() {
        if f.range() > MAX_LEN as u64 {
            return Err(Error::CapExceeded { len: f.range(), cap: MAX_LEN as u64 });
        }
        let len = f.range().div_ceil(2) as usize;
        let z = convolve(&fold(f, u, len), &fold(f, v, len))?;
        work.fft(f.range().next_power_of_two());
        for (i, &x) in family.targets.iter().enumerate() {
            if family.witness[i] as usize == fi {
                out[i] = f.preimages(f.h(x)).iter().filter_map(|&y| z.get(y as usize)).sum();
            }
        }
    }
    Ok(family.targets.iter().copied().zip(out).filter(|&(_, c)| c > 0).collect())
}

/// Schoolbook sparse product (oracle).
pub fn sparse_convolution_naive(u: &[(u64, u64)], v: &[(u64, u64)]) -> Sparse {
    let mut m: std::collections::BTreeMap<u64, u64> = Default::default();
    for &(i, x) in u {
        for &(j, y) in v {
            *m.entry(i + j).or_default() += x * y;
        }
    }
    m.into_iter().filter(|&(_, c)| c > 0).collect()
}

#[cfg(test)]
mod tests {
    use super::super::hash::{build_family_randomized, DEFAULT_C};
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn run(u: &[(u64, u64)], v: &[(u64, u64)], t: &[u64], rng: &mut ChaCha8Rng) -> Sparse {
        let mut w = WorkCounter::new();
        let fam = build_family_randomized(t, 1 << 16, DEFAULT_C, rng, &mut w).unwrap();
        sparse_convolution(u, v, &fam, &mut w).unwrap()
    }

    #[test]
    fn examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert_eq!(run(&[(0, 1)], &[(0, 1), (5, 2)], &[0, 5], &mut rng), vec![(0, 1), (5, 2)]);
        assert_eq!(run(&[(1, 2), (3, 1)], &[(2, 3)], &[3, 5], &mut rng), vec![(3, 6), (5, 3)]);
    }

    #[test]
    fn random_matches_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..30 {
            let gen = |rng: &mut ChaCha8Rng| {
                let mut m: std::collections::BTreeMap<u64, u64> = Default::default();
                for _ in 0..rng.gen_range(1..32) {
                    m.insert(rng.gen_range(0..5000), rng.gen_range(1..100));
                }
                m.into_iter().collect::<Vec<_>>()
            };
            let (u, v) = (gen(&mut rng), gen(&mut rng));
            let want = sparse_convolution_naive(&u, &v);
            let t: Vec<u64> = want.iter().map(|e| e.0).collect();
            assert_eq!(run(&u, &v, &t, &mut rng), want);
        }
    }
}
