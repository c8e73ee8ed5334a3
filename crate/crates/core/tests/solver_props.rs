use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use sumset_core::model::{gen_instance, ClusterDesc, GenKind, GenParams, GridConfig, Instance};
use sumset_core::solvers::{
    attach_witnesses, threesum_brute, threesum_clustered, threesum_fft, threesum_monotone, threesum_one_clustered,
    SolveParams,
};

fn instance(kind: GenKind, p: GenParams) -> (sumset_core::PointSet, sumset_core::PointSet, sumset_core::PointSet) {
    match gen_instance(kind, &p).unwrap() {
        Instance::ThreeSum { a, b, s } => (a, b, s),
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn monotone_matches_brute_with_valid_witnesses(seed in any::<u64>(), n in 2usize..200, d in 1usize..=3, half in 1u64..=4, alpha in 0.05f64..1.0) {
        let (a, b, s) = instance(GenKind::MonotoneD, GenParams { n, d, seed, ..GenParams::default() });
        let params = SolveParams { ell: 2 * half, alpha, brute_cutoff: 4, ..SolveParams::default() };
        let mut r = threesum_monotone(&a, &b, &s, &params, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(&r.hits, &threesum_brute(&a, &b, &s).unwrap().hits);
        attach_witnesses(&mut r, &a, &b);
        for (h, (x, y)) in r.hits.iter().zip(r.witnesses.unwrap()) {
            prop_assert!(a.contains(&x.0) && b.contains(&y.0));
            prop_assert_eq!(x.add(&y.0).0.to_vec(), h.to_vec());
        }
    }

    #[test]
    fn clustered_solvers_match_brute(seed in any::<u64>(), k in 1usize..=8, l in 4u64..=64, fill in 0.2f64..1.0) {
        let n = ((k as f64 * l as f64 * fill) as usize).max(1);
        let (a, b, s) = instance(GenKind::Clustered, GenParams { n, d: 1, k, l, seed, ..GenParams::default() });
        let want = threesum_brute(&a, &b, &s).unwrap().hits;
        let desc = |set: &sumset_core::PointSet| {
            ClusterDesc::new(sumset_core::model::cover_intervals_1d(set.coords(), l).len().max(1), l, None).unwrap()
        };
        let (da, db, ds) = (desc(&a), desc(&b), desc(&s));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = SolveParams::default();
        prop_assert_eq!(&threesum_clustered(&a, &b, &s, [&da, &db, &ds], None, &p, &mut rng).unwrap().hits, &want);
        prop_assert_eq!(&threesum_one_clustered(&a, &b, &s, &da, &p, &mut rng).unwrap().hits, &want);
        prop_assert_eq!(&threesum_fft(&a, &b, &s).unwrap().hits, &want);
    }

    #[test]
    fn monotone_sets_touch_few_cells(seed in any::<u64>(), n in 8usize..400, d in 1usize..=3, half in 1u64..=8) {
        let (a, _, _) = instance(GenKind::MonotoneD, GenParams { n, d, seed, ..GenParams::default() });
        let ell = 2 * half;
        prop_assume!(ell <= a.universe());
        let g = GridConfig::new(ell, a.universe(), d).unwrap();
        let cells: HashSet<Vec<u64>> = a.iter().map(|p| p.iter().map(|x| x / g.side()).collect()).collect();
        prop_assert!(cells.len() as f64 <= 2.0 * d as f64 * n as f64 / ell as f64 + 1.0);
    }
}
