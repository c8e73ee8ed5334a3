use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sumset_core::model::gen::monotone_set;
use sumset_core::model::grid::Flattener;
use sumset_core::model::{align_decompose, cell_of, GridConfig};
use sumset_core::model::Packer;
use sumset_core::PointSet;

fn points(d: usize, u: u64, max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(prop::collection::vec(0..u, d), 0..max)
        .prop_map(move |v| PointSet::new(d, u, v.iter().map(|p| p.as_slice())).unwrap())
}

fn setup() -> impl Strategy<Value = (GridConfig, PointSet, PointSet)> {
    (1usize..=3, 1u64..=4, 8u64..=40).prop_flat_map(|(d, half, u)| {
        let g = GridConfig::new(2 * half, u, d).unwrap();
        (Just(g), points(d, u, 24), points(d, u, 24))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn align_decompose_round_trip((g, a, _) in setup()) {
        let mut back: Vec<Vec<u64>> = Vec::new();
        for part in align_decompose(&a, &g) {
            for p in part.subset.iter() {
                prop_assert!(p.iter().all(|&x| x % g.side() < g.side() / 2));
                back.push(part.shift.add(p).0.to_vec());
            }
        }
        back.sort();
        let mut want: Vec<Vec<u64>> = a.iter().map(|p| p.to_vec()).collect();
        want.sort();
        prop_assert_eq!(back, want);
    }

    #[test]
    fn flattening_and_cells_are_additive_on_aligned_points((g, a, b) in setup()) {
        let f = Flattener::new(&g).unwrap();
        for x in align_decompose(&a, &g) {
            for y in align_decompose(&b, &g) {
                for p in x.subset.iter() {
                    for q in y.subset.iter() {
                        let sum: Vec<u64> = p.iter().zip(q).map(|(s, t)| s + t).collect();
                        prop_assert_eq!(f.map(p).unwrap() + f.map(q).unwrap(), f.map(&sum).unwrap());
                        let (cp, cq, cs) = (cell_of(p, &g).unwrap(), cell_of(q, &g).unwrap(), cell_of(&sum, &g).unwrap());
                        let added: Vec<u64> = cp.0.iter().zip(cq.0.iter()).map(|(s, t)| s + t).collect();
                        prop_assert_eq!(added.as_slice(), cs.0.as_slice());
                    }
                }
            }
        }
    }

    #[test]
    fn flattener_is_injective((g, a, _) in setup()) {
        let f = Flattener::new(&g).unwrap();
        for p in a.iter() {
            let v = f.map(p).unwrap();
            prop_assert_eq!(f.unmap(v).0.to_vec(), p.to_vec());
        }
    }

    #[test]
    fn packer_round_trip(d in 1usize..=4, base in 2u64..=50, raw in prop::collection::vec(any::<u64>(), 4)) {
        let p = Packer::new(d, base).unwrap();
        let pt: Vec<u64> = raw[..d].iter().map(|x| x % base).collect();
        let key = p.pack(&pt).unwrap();
        prop_assert!(key < p.span());
        prop_assert_eq!(p.unpack(key).0.to_vec(), pt);
    }

    #[test]
    fn generated_monotone_sets_are_small(seed in any::<u64>(), n in 1usize..300, d in 1usize..=4) {
        let s = monotone_set(&mut ChaCha8Rng::seed_from_u64(seed), n, d).unwrap();
        prop_assert!(sumset_core::model::is_monotone(&s));
        prop_assert!(s.len() <= d * n);
    }
}
