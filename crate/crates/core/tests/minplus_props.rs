use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sumset_core::minplus::{
    boundary_of_sumset, histindex_build_binary, minplus_bounded_monotone, minplus_naive, MonotoneSeq,
};
use sumset_core::model::gen::monotone_set;
use sumset_core::solvers::SolveParams;

fn params() -> SolveParams {
    SolveParams { ell: 8, alpha: 0.3, brute_cutoff: 8, ..SolveParams::default() }
}

fn monotone_seq(len: usize, bound: u64) -> impl Strategy<Value = MonotoneSeq> {
    prop::collection::vec(0..bound as i64, len).prop_map(move |mut v| {
        v.sort_unstable();
        MonotoneSeq::new(v, bound).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn minplus_is_exact_and_monotone(
        (a, b) in (1usize..120, prop::sample::select(vec![1u64, 2, 4]))
            .prop_flat_map(|(n, c)| (monotone_seq(n, c * n as u64), monotone_seq(n, c * n as u64))),
        seed in any::<u64>(),
    ) {
        let got = minplus_bounded_monotone(&a, &b, &params(), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert!(got.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(got, minplus_naive(a.values(), b.values()));
    }

    #[test]
    fn histindex_envelopes_are_steady(s in prop::collection::vec(0u8..2, 0..200), seed in any::<u64>()) {
        let idx = histindex_build_binary(&s, &params(), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        for k in 0..s.len() {
            prop_assert!(idx.min_ones[k] <= idx.min_ones[k + 1] && idx.min_ones[k + 1] <= idx.min_ones[k] + 1);
            prop_assert!(idx.max_ones[k] <= idx.max_ones[k + 1] && idx.max_ones[k + 1] <= idx.max_ones[k] + 1);
            prop_assert!(idx.min_ones[k] <= idx.max_ones[k]);
        }
    }

    #[test]
    fn boundary_matches_brute(seed in any::<u64>(), na in 1usize..=256, nb in 1usize..=256) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (monotone_set(&mut rng, na, 2).unwrap(), monotone_set(&mut rng, nb, 2).unwrap());
        let bd = boundary_of_sumset(&a, &b, &params(), &mut rng).unwrap();
        let width = (na + nb) as usize;
        let (mut lo, mut hi) = (vec![u64::MAX; width], vec![0u64; width]);
        let mut xmin = u64::MAX;
        for p in a.iter() {
            for q in b.iter() {
                let (x, y) = (p[0] + q[0], p[1] + q[1]);
                lo[x as usize] = lo[x as usize].min(y);
                hi[x as usize] = hi[x as usize].max(y);
                xmin = xmin.min(x);
            }
        }
        prop_assert_eq!(bd.x_min, xmin);
        for (i, (&l, &h)) in bd.lower.iter().zip(&bd.upper).enumerate() {
            let x = xmin as usize + i;
            prop_assert_eq!((l, h), (lo[x], hi[x]), "column {}", x);
        }
        prop_assert!(lo.get(bd.x_max() as usize + 1).map_or(true, |&v| v == u64::MAX));
    }
}
