use proptest::prelude::*;

use phlandmarks::cloud::{delta_neighborhood, pairwise_distances};
use phlandmarks::data::{generate, DataParams, DatasetKind};
use phlandmarks::select::{
    density_rho_k, kmeans_minus_minus, ph_outlierness, select_dense_core, select_kmm_landmarks, select_maxmin,
    select_ph_landmarks, select_random, Direction, PhDims, PhScoreMode, PhScores,
};
use phlandmarks::union_find::UnionFind;
use phlandmarks::{vr_barcode, PointCloud};

fn cloud_strategy(max_n: usize, dim: usize) -> impl Strategy<Value = PointCloud> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, dim), 3..=max_n)
        .prop_map(|pts| PointCloud::new(pts).unwrap())
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

fn mode_strategy() -> impl Strategy<Value = PhScoreMode> {
    (prop::bool::ANY, prop::bool::ANY).prop_map(|(all, asc)| PhScoreMode {
        dims: if all { PhDims::All } else { PhDims::Dim1 },
        direction: if asc { Direction::Ascending } else { Direction::Descending },
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn neighborhoods_grow_with_delta(c in cloud_strategy(30, 3), d1 in 0.01f64..1.0, d2 in 0.01f64..1.0) {
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let dm = pairwise_distances(&c).unwrap();
        for y in 0..c.len() {
            let small = delta_neighborhood(&dm, y, lo).unwrap();
            let large = delta_neighborhood(&dm, y, hi).unwrap();
            prop_assert!(!small.contains(&y));
            prop_assert!(small.iter().all(|i| large.contains(i)));
        }
    }

    #[test]
    fn neighborhoods_follow_permutations(c in cloud_strategy(20, 2), delta in 0.05f64..1.0, seed in any::<u64>()) {
        let n = c.len();
        let perm = select_random(&c, n, seed).unwrap().landmarks;
        let pc = c.reordered(&perm);
        let (dm, dp) = (pairwise_distances(&c).unwrap(), pairwise_distances(&pc).unwrap());
        for (new, &old) in perm.iter().enumerate() {
            let mut mapped: Vec<usize> = delta_neighborhood(&dp, new, delta).unwrap().iter().map(|&i| perm[i]).collect();
            mapped.sort_unstable();
            prop_assert_eq!(mapped, delta_neighborhood(&dm, old, delta).unwrap());
        }
    }

    #[test]
    fn barcodes_scale_with_the_cloud(c in cloud_strategy(7, 3), s in 0.1f64..10.0) {
        let dm = pairwise_distances(&c).unwrap();
        let a = vr_barcode(&dm, dm.diameter(), &[0, 1, 2]).unwrap().scaled(s);
        let b = vr_barcode(&dm.scaled(s), dm.diameter() * s, &[0, 1, 2]).unwrap();
        for dim in 0..3 {
            let (x, y) = (a.intervals(dim), b.intervals(dim));
            prop_assert_eq!(x.len(), y.len());
            for (p, q) in x.iter().zip(y) {
                prop_assert!((p.birth - q.birth).abs() <= 1e-12 * s.max(1.0));
                prop_assert!(p.death == q.death || (p.death - q.death).abs() <= 1e-12 * s.max(1.0));
            }
        }
    }

    #[test]
    fn dim0_bars_count_components(c in cloud_strategy(12, 2), eps in 0.0f64..2.0) {
        let dm = pairwise_distances(&c).unwrap();
        let b = vr_barcode(&dm, eps, &[0]).unwrap();
        let alive = b.intervals(0).iter().filter(|i| i.death > eps).count();
        let mut uf = UnionFind::new(c.len());
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                if dm.get(i, j) <= eps {
                    uf.union(i, j);
                }
            }
        }
        prop_assert_eq!(alive, uf.count_sets());
    }

    #[test]
    fn maxmin_is_greedy(c in cloud_strategy(40, 3), seed in any::<u64>()) {
        let r = select_maxmin(&c, c.len(), seed).unwrap();
        for k in 1..r.landmarks.len() {
            let chosen = &r.landmarks[..k];
            let gap = |i: usize| chosen.iter().map(|&l| dist(c.point(l), c.point(i))).fold(f64::INFINITY, f64::min);
            let picked = gap(r.landmarks[k]);
            for i in (0..c.len()).filter(|i| !chosen.contains(i)) {
                prop_assert!(gap(i) <= picked);
            }
        }
    }

    #[test]
    fn ph_scores_are_ordered_and_bounded(
        c in cloud_strategy(40, 3),
        delta in 0.1f64..0.8,
        mode in mode_strategy(),
        seed in any::<u64>(),
        frac in 0.05f64..1.0,
    ) {
        let m = ((frac * c.len() as f64).ceil() as usize).clamp(1, c.len());
        let r = select_ph_landmarks(&c, m, delta, mode, seed).unwrap();
        let scores = r.scores.as_ref().unwrap();
        prop_assert!(scores.iter().filter(|s| !s.is_nan()).all(|&s| (0.0..=2.0 * delta).contains(&s)));
        let scored: Vec<f64> = r.landmarks.iter().map(|&i| scores[i]).take_while(|s| !s.is_nan()).collect();
        for w in scored.windows(2) {
            match mode.direction {
                Direction::Ascending => prop_assert!(w[0] <= w[1]),
                Direction::Descending => prop_assert!(w[0] >= w[1]),
            }
        }
        // nothing left out scores better than the last one taken
        if let Some(&last) = scored.last() {
            for i in (0..c.len()).filter(|i| !r.landmarks.contains(i) && !scores[*i].is_nan()) {
                match mode.direction {
                    Direction::Ascending => prop_assert!(scores[i] >= last),
                    Direction::Descending => prop_assert!(scores[i] <= last),
                }
            }
        }
        // super outliers come only after every scored point
        let first_so = r.landmarks.iter().position(|i| scores[*i].is_nan()).unwrap_or(r.landmarks.len());
        prop_assert!(r.landmarks[first_so..].iter().all(|i| scores[*i].is_nan()));
        if first_so < r.landmarks.len() {
            prop_assert_eq!(first_so, c.len() - r.super_outliers.len());
        }
    }

    #[test]
    fn super_outliers_shrink_as_delta_grows(c in cloud_strategy(40, 3), d1 in 0.05f64..1.0, d2 in 0.05f64..1.0) {
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let small = PhScores::compute(&c, lo, PhDims::All).unwrap().super_outliers();
        let large = PhScores::compute(&c, hi, PhDims::All).unwrap().super_outliers();
        prop_assert!(large.iter().all(|i| small.contains(i)));
    }

    #[test]
    fn scores_scale_and_order_is_kept(c in cloud_strategy(30, 3), delta in 0.2f64..0.8, pow in -3i32..4, mode in mode_strategy(), seed in any::<u64>()) {
        // powers of two scale distances without rounding
        let s = 2f64.powi(pow);
        let a = PhScores::compute(&c, delta, mode.dims).unwrap();
        let b = PhScores::compute(&c.scaled(s), delta * s, mode.dims).unwrap();
        for (x, y) in a.scores().iter().zip(b.scores()) {
            prop_assert_eq!(x.score().map(|v| v * s), y.score());
        }
        prop_assert_eq!(
            a.select(c.len(), mode.direction, seed).unwrap().landmarks,
            b.select(c.len(), mode.direction, seed).unwrap().landmarks
        );
    }

    #[test]
    fn scores_scale_for_any_factor(c in cloud_strategy(20, 2), delta in 0.2f64..0.8, s in 0.2f64..5.0) {
        for y in 0..c.len() {
            let a = ph_outlierness(&c, y, delta, PhDims::All).unwrap();
            // nudge δ so rounding cannot move a boundary point across it
            let b = ph_outlierness(&c.scaled(s), y, delta * s * (1.0 + 1e-12), PhDims::All).unwrap();
            let near_edge = (0..c.len()).any(|j| j != y && (dist(c.point(y), c.point(j)) - delta).abs() < 1e-9);
            if !near_edge {
                match (a.score(), b.score()) {
                    (Some(x), Some(z)) => prop_assert!((x * s - z).abs() <= 1e-9 * s),
                    (x, z) => prop_assert_eq!(x.is_none(), z.is_none()),
                }
            }
        }
    }

    #[test]
    fn dense_core_takes_the_densest(c in cloud_strategy(30, 2), k in 1usize..3, frac in 0.05f64..1.0) {
        let m = ((frac * c.len() as f64).ceil() as usize).clamp(1, c.len());
        let r = select_dense_core(&c, m, k).unwrap();
        let rho = density_rho_k(&c, k).unwrap();
        let worst = r.landmarks.iter().map(|&i| rho[i]).fold(f64::NEG_INFINITY, f64::max);
        for i in (0..c.len()).filter(|i| !r.landmarks.contains(i)) {
            prop_assert!(rho[i] >= worst);
        }
    }

    #[test]
    fn kmm_partitions_the_cloud(c in cloud_strategy(40, 2), k in 1usize..5, j in 0usize..5, seed in any::<u64>()) {
        prop_assume!(k + j <= c.len());
        let s = kmeans_minus_minus(&c, k, j, seed).unwrap();
        prop_assert_eq!(s.outliers.len(), j);
        let mut all: Vec<usize> = s.retained.iter().chain(&s.outliers).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..c.len()).collect::<Vec<_>>());
        for w in s.history.windows(2) {
            prop_assert!(w[1] <= w[0] * (1.0 + 1e-12) + 1e-15);
        }
    }

    #[test]
    fn selectors_are_deterministic(c in cloud_strategy(30, 3), seed in any::<u64>(), frac in 0.05f64..1.0) {
        let m = ((frac * c.len() as f64).ceil() as usize).clamp(1, c.len());
        prop_assert_eq!(select_random(&c, m, seed).unwrap(), select_random(&c, m, seed).unwrap());
        prop_assert_eq!(select_maxmin(&c, m, seed).unwrap(), select_maxmin(&c, m, seed).unwrap());
        let mode = PhScoreMode::ALL_ASCENDING;
        let a = select_ph_landmarks(&c, m, 0.4, mode, seed).unwrap();
        let b = select_ph_landmarks(&c, m, 0.4, mode, seed).unwrap();
        prop_assert_eq!(a.landmarks, b.landmarks);
        prop_assert_eq!(select_dense_core(&c, m, 1).unwrap(), select_dense_core(&c, m, 1).unwrap());
        if m >= 2 {
            prop_assert_eq!(
                select_kmm_landmarks(&c, m, 0.6, true, seed).unwrap(),
                select_kmm_landmarks(&c, m, 0.6, true, seed).unwrap()
            );
        }
    }

    #[test]
    fn generators_are_deterministic(seed in any::<u64>(), kind in 0usize..6, p in 0.0f64..=1.0) {
        let params = DataParams::new(DatasetKind::ALL[kind], 200, p, seed);
        prop_assert_eq!(generate(params).unwrap(), generate(params).unwrap());
    }
}

#[test]
fn label_counts_are_binomial() {
    let n = 3000usize;
    for kind in DatasetKind::ALL {
        for (i, p) in [0.2, 0.6, 0.9].into_iter().enumerate() {
            let s = generate(DataParams::new(kind, n, p, 100 + i as u64)).unwrap();
            let signal = s.cloud.signal_count().unwrap() as f64;
            let sigma = (n as f64 * p * (1.0 - p)).sqrt();
            assert!(
                (signal - n as f64 * p).abs() <= 5.0 * sigma,
                "{kind} p={p}: {signal} signal points"
            );
        }
    }
}
