//! 3SUM on clustered sets, and on sets where only `A` is clustered.

use super::aligned::Engine;
use super::{brute_hits, check_dims, finish, SolveParams, SolveStats, ThreeSumResult};
use crate::error::{Error, Result};
use crate::model::cluster::int_root_ceil;
use crate::model::{audit_cluster, ClusterDesc, GridConfig, PointSet};
use crate::work::WorkCounter;
use rand::Rng;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

/// `alpha` from `1/alpha = min{ ((K_A K_B)^2 W / (K_S^3 L))^(1/7), (K_B W)^(1/6) }`
/// with `W = min(M_A M_B, M_A M_S, M_B M_S)`, clamped to `(0, 1]`. An absent
/// `M` counts as the set size.
pub fn tune_clustered_alpha(sizes: [usize; 3], descs: [&ClusterDesc; 3]) -> f64 {
    let [da, db, ds] = descs;
    let (ka, kb, ks) = (da.k as f64, db.k as f64, ds.k as f64);
    let ma = da.m_or(sizes[0]) as f64;
    let mb = db.m_or(sizes[1]) as f64;
    let ms = ds.m_or(sizes[2]) as f64;
    let w = (ma * mb).min(ma * ms).min(mb * ms);
    let l = da.l.max(db.l).max(ds.l) as f64;
    let first = ((ka * kb).powi(2) * w / (ks.powi(3) * l)).powf(1.0 / 7.0);
    let second = (kb * w).powf(1.0 / 6.0);
    1.0 / first.min(second).max(1.0)
}

/// Clustered 3SUM. Each set is audited against its descriptor; the grid
/// side is `ceil(L^(1/d))` for the largest `L`. Remainder cell triples are
/// solved by the cheapest pair enumeration. `alpha` defaults to
/// [`tune_clustered_alpha`].
pub fn threesum_clustered<R: Rng>(
    a: &PointSet,
    b: &PointSet,
    s: &PointSet,
    descs: [&ClusterDesc; 3],
    alpha: Option<f64>,
    params: &SolveParams,
    rng: &mut R,
) -> Result<ThreeSumResult> {
    let d = check_dims(a, b, s)?;
    for (set, desc) in [a, b, s].into_iter().zip(descs) {
        audit_cluster(set, desc)?;
    }
    let alpha = alpha.unwrap_or_else(|| tune_clustered_alpha([a.len(), b.len(), s.len()], descs));
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    let l = descs.iter().map(|x| x.l).max().unwrap();
    let side = int_root_ceil(l, d);
    let mut work = WorkCounter::default();
    let mut stats = SolveStats::default();
    let flat = solve_points(a, b, s, side, alpha, params, rng, &mut work, &mut stats)?;
    finish(d, s, flat, work, stats)
}

#[allow(clippy::too_many_arguments)]
fn solve_points<R: Rng>(
    a: &PointSet,
    b: &PointSet,
    s: &PointSet,
    side: u64,
    alpha: f64,
    params: &SolveParams,
    rng: &mut R,
    work: &mut WorkCounter,
    stats: &mut SolveStats,
) -> Result<Vec<u64>> {
    let universe = a.universe().max(b.universe());
    let cutoff = params.brute_cutoff as u64;
    let side = side.max(2);
    if (a.len() as u64) * (b.len() as u64) <= cutoff * cutoff || side + (side & 1) > universe {
        return Ok(brute_hits(a, b, s, work));
    }
    let mut engine = Engine { params, alpha, depth: None, rng, work, stats };
    engine.solve(a, b, s, side)
}

/// Splits `s` by the occupancy of its grid cells: subset `i` holds the
/// points in cells with `floor(log2(occupancy)) = i`. Each subset comes with
/// the descriptor it satisfies on the grid (cube volume `side^d`). Ordered by
/// `i`; empty subsets are skipped.
pub fn equitable_decompose(s: &PointSet, g: &GridConfig) -> Vec<(PointSet, ClusterDesc)> {
    let mut cells: FxHashMap<SmallVec<[u64; 4]>, Vec<usize>> = FxHashMap::default();
    for (i, p) in s.iter().enumerate() {
        cells.entry(p.iter().map(|&x| x / g.side()).collect()).or_default().push(i);
    }
    let mut buckets: Vec<(usize, usize, Vec<u64>)> = Vec::new();
    for members in cells.values() {
        let level = members.len().ilog2() as usize;
        if buckets.len() <= level {
            buckets.resize(level + 1, (0, 0, Vec::new()));
        }
        let (k, m, coords) = &mut buckets[level];
        *k += 1;
        *m = (*m).max(members.len());
        for &i in members {
            coords.extend_from_slice(s.point(i));
        }
    }
    buckets
        .into_iter()
        .filter(|(k, _, _)| *k > 0)
        .map(|(k, m, coords)| {
            let set = PointSet::from_flat(s.dim(), s.universe(), coords).expect("subset of a valid set");
            (set, ClusterDesc { k, l: g.volume(), m: Some(m) })
        })
        .collect()
}

/// 3SUM when only `A` is promised to be clustered: `A`, `B` and `S` are split
/// equitably on `A`'s grid and every triple of pieces is solved as clustered
/// 3SUM.
pub fn threesum_one_clustered<R: Rng>(
    a: &PointSet,
    b: &PointSet,
    s: &PointSet,
    desc_a: &ClusterDesc,
    params: &SolveParams,
    rng: &mut R,
) -> Result<ThreeSumResult> {
    let d = check_dims(a, b, s)?;
    audit_cluster(a, desc_a)?;
    let universe = a.universe().max(b.universe()).max(s.universe());
    let side = int_root_ceil(desc_a.l, d).min(universe.max(2));
    let g = GridConfig::new(side, universe, d)?;
    let (pa, pb, ps) = (equitable_decompose(a, &g), equitable_decompose(b, &g), equitable_decompose(s, &g));
    let mut work = WorkCounter::default();
    let mut stats = SolveStats::default();
    let mut flat = Vec::new();
    for (x, dx) in &pa {
        for (y, dy) in &pb {
            for (z, dz) in &ps {
                let r = threesum_clustered(x, y, z, [dx, dy, dz], None, params, rng)?;
                work += r.work;
                accumulate(&mut stats, &r.stats);
                flat.extend_from_slice(r.hits.coords());
            }
        }
    }
    finish(d, s, flat, work, stats)
}

fn accumulate(into: &mut SolveStats, from: &SolveStats) {
    into.bicliques += from.bicliques;
    into.remainder_pairs += from.remainder_pairs;
    into.recursive_calls += from.recursive_calls;
    for (x, y) in into.step2.iter_mut().zip(from.step2) {
        *x += y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{gen_instance, GenKind, GenParams, Instance};
    use crate::solvers::threesum_brute;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn equitable_levels() {
        let g = GridConfig::new(8, 64, 1).unwrap();
        // Occupancies 1, 2 and 5.
        let s = PointSet::from_values(64, [0, 8, 9, 16, 17, 18, 19, 20]).unwrap();
        let parts = equitable_decompose(&s, &g);
        let sizes: Vec<usize> = parts.iter().map(|(p, _)| p.len()).collect();
        assert_eq!(sizes, vec![1, 2, 5]);
        for (p, desc) in &parts {
            audit_cluster(p, desc).unwrap();
        }
    }

    #[test]
    fn clustered_matches_brute() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for seed in 0..4 {
            let p = GenParams { n: 100, k: 8, l: 16, seed, ..GenParams::default() };
            let Instance::ThreeSum { a, b, s } = gen_instance(GenKind::Clustered, &p).unwrap() else { panic!() };
            let da = ClusterDesc::new(8, 16, None).unwrap();
            let ds = ClusterDesc::new(s.len(), 1, None).unwrap();
            let params = SolveParams { brute_cutoff: 4, ..SolveParams::default() };
            let r = threesum_clustered(&a, &b, &s, [&da, &da, &ds], Some(0.2), &params, &mut rng).unwrap();
            assert_eq!(r.hits, threesum_brute(&a, &b, &s).unwrap().hits);
            let r = threesum_one_clustered(&a, &b, &s, &da, &params, &mut rng).unwrap();
            assert_eq!(r.hits, threesum_brute(&a, &b, &s).unwrap().hits);
        }
    }

    #[test]
    fn audit_failure_is_reported() {
        let a = PointSet::from_values(100, (0..50).map(|i| 2 * i)).unwrap();
        let desc = ClusterDesc::new(1, 4, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p = SolveParams::default();
        assert!(matches!(
            threesum_clustered(&a, &a, &a, [&desc, &desc, &desc], None, &p, &mut rng),
            Err(Error::ClusterAudit(_))
        ));
    }

    #[test]
    fn alpha_formula() {
        let d = ClusterDesc::new(64, 16, Some(4)).unwrap();
        let alpha = tune_clustered_alpha([256, 256, 256], [&d, &d, &d]);
        let expect = 1.0 / f64::min((64f64.powi(4) * 16.0 / (64f64.powi(3) * 16.0)).powf(1.0 / 7.0), (64.0 * 16f64).powf(1.0 / 6.0));
        assert!((alpha - expect).abs() < 1e-12);
    }
}
