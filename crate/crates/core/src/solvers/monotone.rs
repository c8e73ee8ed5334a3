//! 3SUM on monotone sets in `[n]^d`.

use super::aligned::Engine;
use super::{brute_hits, check_dims, finish, SolveParams, SolveStats, ThreeSumResult};
use crate::error::Result;
use crate::model::cluster::require_monotone;
use crate::model::PointSet;
use crate::work::WorkCounter;
use rand::Rng;

/// Exponents behind [`tune_monotone_params`]: `l = n^x`, `alpha = n^-y`,
/// and the balanced running time `n^z` up to polylog factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotoneTuning {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Balanced parameters for universe side `n` in dimension `d`:
/// `z = (11 - d + sqrt((d - 11)^2 + 48 d)) / 12`, `x = 1 - z/2`, `y = x z`,
/// `l = ceil(n^x)` (even, at least 2) and `alpha = n^-y`.
pub fn tune_monotone_params(n: u64, d: usize) -> (SolveParams, MonotoneTuning) {
    let df = d as f64;
    let z = (11.0 - df + ((df - 11.0).powi(2) + 48.0 * df).sqrt()) / 12.0;
    let x = 1.0 - z / 2.0;
    let y = x * z;
    let nf = n.max(2) as f64;
    let mut ell = nf.powf(x).ceil().max(2.0) as u64;
    ell += ell & 1;
    let params = SolveParams { ell, alpha: nf.powf(-y).min(1.0), ..SolveParams::default() };
    (params, MonotoneTuning { x, y, z })
}

/// Parameters for a step-1 subproblem on a cell of side `side`: tuned for
/// that side, with the caller's strategy choices.
pub(crate) fn sub_params(p: &SolveParams, side: u64, d: usize) -> SolveParams {
    let (t, _) = tune_monotone_params(side, d);
    SolveParams { ell: t.ell, alpha: t.alpha, ..*p }
}

/// Monotone 3SUM. `A` and `B` must be monotone; so must `S` unless
/// `params.check_s_monotone` is off, in which case any `S` is accepted.
pub fn threesum_monotone<R: Rng>(
    a: &PointSet,
    b: &PointSet,
    s: &PointSet,
    params: &SolveParams,
    rng: &mut R,
) -> Result<ThreeSumResult> {
    let d = check_dims(a, b, s)?;
    require_monotone(a)?;
    require_monotone(b)?;
    if params.check_s_monotone {
        require_monotone(s)?;
    }
    let mut work = WorkCounter::default();
    let mut stats = SolveStats::default();
    let flat = solve_points(a, b, s, params, params.recurse, rng, &mut work, &mut stats)?;
    finish(d, s, flat, work, stats)
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn solve_points<R: Rng>(
    a: &PointSet,
    b: &PointSet,
    s: &PointSet,
    params: &SolveParams,
    depth: usize,
    rng: &mut R,
    work: &mut WorkCounter,
    stats: &mut SolveStats,
) -> Result<Vec<u64>> {
    let universe = a.universe().max(b.universe());
    let cutoff = params.brute_cutoff as u64;
    let ell = params.ell + (params.ell & 1);
    if universe <= cutoff || (a.len() as u64) * (b.len() as u64) <= cutoff * cutoff || ell.max(2) > universe {
        return Ok(brute_hits(a, b, s, work));
    }
    let mut engine = Engine { params, alpha: params.alpha, depth: Some(depth), rng, work, stats };
    engine.solve(a, b, s, ell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::gen::monotone_set;
    use crate::solvers::threesum_brute;
    use crate::bsg::Variant;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tuning_exponents() {
        let (_, t) = tune_monotone_params(1 << 20, 2);
        assert!((t.z - 1.8587).abs() < 1e-3);
        let (p, t) = tune_monotone_params(1 << 20, 3);
        assert!((t.z - (8.0 + 208f64.sqrt()) / 12.0).abs() < 1e-12);
        assert_eq!(p.ell % 2, 0);
        assert!(p.alpha > 0.0 && p.alpha < 1.0);
    }

    fn instance(rng: &mut ChaCha8Rng, n: usize, d: usize) -> (PointSet, PointSet, PointSet) {
        let a = monotone_set(rng, n, d).unwrap();
        let b = monotone_set(rng, n, d).unwrap();
        let s = monotone_set(rng, 2 * n, d).unwrap();
        let s = s.with_universe(2 * n as u64).unwrap();
        (a, b, s)
    }

    #[test]
    fn matches_brute() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 1..=3 {
            for (ell, alpha, variant) in
                [(2, 0.3, Variant::Det), (4, 0.1, Variant::default()), (8, 0.5, Variant::default())]
            {
                let (a, b, s) = instance(&mut rng, 96, d);
                let params = SolveParams { ell, alpha, brute_cutoff: 4, variant, ..SolveParams::default() };
                let r = threesum_monotone(&a, &b, &s, &params, &mut rng).unwrap();
                assert_eq!(r.hits, threesum_brute(&a, &b, &s).unwrap().hits, "d={d} ell={ell}");
            }
        }
    }

    #[test]
    fn recursion_matches_brute() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let (a, b, s) = instance(&mut rng, 256, 2);
        let params = SolveParams { ell: 16, alpha: 1.0, brute_cutoff: 4, recurse: 3, ..SolveParams::default() };
        let r = threesum_monotone(&a, &b, &s, &params, &mut rng).unwrap();
        assert!(r.stats.recursive_calls > 0, "{:?}", r.stats);
        assert_eq!(r.hits, threesum_brute(&a, &b, &s).unwrap().hits);
    }

    #[test]
    fn rejects_non_monotone() {
        let a = PointSet::new(2, 8, [[0, 3], [1, 1]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p = SolveParams::default();
        assert!(threesum_monotone(&a, &a, &a, &p, &mut rng).is_err());
        let m = PointSet::new(2, 8, [[0, 0], [1, 1]]).unwrap();
        let p = SolveParams { check_s_monotone: false, ..p };
        assert!(threesum_monotone(&m, &m, &a, &p, &mut rng).is_ok());
    }
}
