use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sumset_core::bsg::{
    bsg_cover, bsg_extract, graph_lemma_det, length3_paths, verify_cover, BipartiteGraph, Variant,
};
use sumset_core::WorkCounter;

fn dense_graph(rng: &mut ChaCha8Rng, na: usize, nb: usize, alpha: f64) -> BipartiteGraph {
    let p = (alpha + rng.gen_range(0.0..(1.0 - alpha))).min(1.0);
    loop {
        let mut g = BipartiteGraph::new(na, nb);
        for a in 0..na {
            for b in 0..nb {
                if rng.gen_bool(p) {
                    g.add_edge(a, b);
                }
            }
        }
        if g.edge_count() as f64 >= alpha * (na * nb) as f64 {
            return g;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn graph_lemma_constants(seed in any::<u64>(), na in 8usize..=40, nb in 8usize..=40, k in 1u32..=3) {
        let alpha = 0.5f64.powi(k as i32);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = dense_graph(&mut rng, na, nb, alpha);
        let r = graph_lemma_det(&g, alpha, &mut WorkCounter::default()).unwrap();
        prop_assert!(r.a_prime.len() as f64 >= alpha * na as f64 / 8.0);
        let inside = r.a_prime.iter().flat_map(|&a| r.b_prime.iter().map(move |&b| (a, b))).filter(|&(a, b)| g.has_edge(a, b)).count();
        prop_assert!(inside as f64 >= alpha * (r.a_prime.len() * nb) as f64 / 4.0);
        let need = (alpha * alpha * na as f64 / 64.0) * (alpha.powi(3) * nb as f64 / 2048.0);
        for &a in &r.a_prime {
            for &b in &r.b_prime {
                prop_assert!(length3_paths(&g, a, b) as f64 >= need);
            }
        }
    }

    #[test]
    fn extract_respects_sumset_bound(seed in any::<u64>(), n in 8usize..=32) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<u64> = (0..n as u64).map(|i| 3 * i).collect();
        let b: Vec<u64> = (0..n as u64).map(|i| 5 * i + rng.gen_range(0..2)).collect();
        let s: Vec<u64> = (0..8 * n as u64).collect();
        let mut g = BipartiteGraph::new(n, n);
        for i in 0..n {
            for j in 0..n {
                if s.binary_search(&(a[i] + b[j])).is_ok() {
                    g.add_edge(i, j);
                }
            }
        }
        let alpha = g.edge_count() as f64 / (n * n) as f64;
        let x = bsg_extract(&a, &b, &g, alpha, s.len(), &mut WorkCounter::default()).unwrap();
        prop_assert!(x.sumset_size as f64 <= x.bound);
    }

    #[test]
    fn covers_pass_audit(seed in any::<u64>(), na in 1usize..=48, nb in 1usize..=48, k in 1u32..=3, det in any::<bool>()) {
        let alpha = 0.5f64.powi(k as i32);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |rng: &mut ChaCha8Rng, n: usize, u: u64| {
            let mut v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..u)).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let (a, b) = (draw(&mut rng, na, 64), draw(&mut rng, nb, 64));
        let s = draw(&mut rng, 40, 128);
        let variant = if det { Variant::Det } else { Variant::default() };
        let cover = bsg_cover(&a, &b, &s, alpha, variant, &mut rng, &mut WorkCounter::default()).unwrap();
        let audit = verify_cover(&cover, &a, &b, &s);
        prop_assert!(audit.passed(), "{:?}", audit.failures);
        if det && cover.bicliques.iter().all(|bc| bc.a.len() * bc.b.len() > 1) {
            let total: usize = cover.bicliques.iter().map(|bc| bc.a.len()).sum();
            prop_assert!(total as f64 <= 16.0 * a.len() as f64 * (1.0 / alpha).ln().max(1.0));
        }
    }
}
