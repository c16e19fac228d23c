use proptest::prelude::*;

use tripack::analysis::oler_t;
use tripack::engine::{run, GrowthConfig};
use tripack::geometry::{packings_equivalent, Equivalence, Packing, Symmetry, TOL_PACK};
use tripack::pipeline::{pack, PipelineConfig};
use tripack::TriangleDomain;

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn engine_output_is_a_valid_packing(n in 2usize..14, seed in any::<u64>()) {
        let (p, stats) = run(n, &GrowthConfig::for_n(n).with_seed(seed), &TriangleDomain::unit()).unwrap();
        prop_assert!(stats.converged);
        prop_assert!(p.validate(TOL_PACK).is_ok());
        prop_assert!(1.0 / p.d >= oler_t(n as u64) - 1e-9);
    }

    #[test]
    fn symmetric_images_are_identified(n in 3usize..10, seed in 0u64..1000, turns in 0u8..3, mirror in any::<bool>()) {
        let (p, _) = run(n, &GrowthConfig::for_n(n).with_seed(seed), &TriangleDomain::unit()).unwrap();
        let q = p.transformed(Symmetry { turns, mirror });
        prop_assert_eq!(packings_equivalent(&p, &q, 1e-9).unwrap(), Equivalence::IdenticalUpToSymmetry);
    }

    #[test]
    fn container_frame_round_trip(n in 2usize..10, seed in 0u64..1000, side in 0.5f64..20.0) {
        let (p, _) = run(n, &GrowthConfig::for_n(n).with_seed(seed), &TriangleDomain::unit()).unwrap();
        let (pos, r) = p.to_container(side).unwrap();
        let back = Packing::from_container(&pos, r).unwrap();
        prop_assert!((back.d - p.d).abs() <= 1e-12 * p.d);
        for (a, b) in back.centers.iter().zip(&p.centers) {
            prop_assert!(a.dist(*b) <= 1e-12);
        }
    }
}

#[test]
fn batch_labels_are_unique() {
    for n in [7usize, 17] {
        let seeds: Vec<u64> = (0..8).collect();
        let out = pack(n, &PipelineConfig::for_n(n), &seeds).unwrap();
        let mut labels: Vec<&str> = out.iter().map(|o| o.file.packing.label.as_str()).collect();
        let total = labels.len();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), total, "{labels:?}");
        assert_eq!(out.iter().map(|o| o.seeds.len()).sum::<usize>(), seeds.len());
        assert!(out.windows(2).all(|w| w[0].file.packing.d >= w[1].file.packing.d));
    }
}

#[test]
fn audited_trajectories_never_overlap() {
    for n in [3usize, 6, 10, 13] {
        for seed in 0..3 {
            let cfg = GrowthConfig { audit: true, ..GrowthConfig::for_n(n).with_seed(seed) };
            let (_, stats) = run(n, &cfg, &TriangleDomain::unit()).unwrap();
            assert_eq!(stats.audit_violations, 0, "n={n} seed={seed}");
            assert!(stats.min_clearance_ratio >= 1.0 - 1e-9);
        }
    }
}
