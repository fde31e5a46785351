mod common;

use common::oracle;
use depthfill::morphology::dilate;
use depthfill::synthetic::{self, KITTI_HEIGHT, KITTI_WIDTH};
use depthfill::{
    complete, complete_with_stats, complete_with_trace, BlurMode, DepthMap, FillMode, Kernel,
    KernelShape, PipelineConfig, Stage,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_sparse(rng: &mut StdRng, min_density: f64) -> DepthMap {
    let (w, h) = (rng.gen_range(1..=96), rng.gen_range(1..=96));
    let density = rng.gen_range(min_density..0.3);
    let mut data = oracle::random_direct(rng, w, h, density);
    if !data.iter().any(|&v| v > 0.1) {
        let i = rng.gen_range(0..data.len());
        data[i] = 12.5;
    }
    DepthMap::from_vec(w, h, data).unwrap()
}

fn bits(map: &DepthMap) -> Vec<u32> {
    map.values().iter().map(|v| v.to_bits()).collect()
}

#[test]
fn full_mode_output_is_dense_and_within_input_range() {
    let mut rng = StdRng::seed_from_u64(21);
    let config = PipelineConfig::default();
    for i in 0..200 {
        let sparse = random_sparse(&mut rng, 0.01);
        let (lo, hi) = sparse.valid_range().unwrap();
        let out = complete(&sparse, &config).unwrap();
        assert_eq!(out.density(), 1.0, "case {i}");
        for &v in out.values() {
            assert!(lo <= v && v <= hi, "case {i}: {v} outside [{lo}, {hi}]");
        }
    }
}

#[test]
fn single_pixel_at_kitti_size_fills_with_enough_iterations() {
    // a 31x31 fill reaches 15 px per pass, so the far corner needs w/15 passes
    let config = PipelineConfig {
        large_fill_max_iters: KITTI_WIDTH / 15 + 1,
        ..Default::default()
    };
    for (x, y) in [(0, KITTI_HEIGHT - 1), (KITTI_WIDTH / 2, 200), (KITTI_WIDTH - 1, 0)] {
        let sparse = DepthMap::from_fn(KITTI_WIDTH, KITTI_HEIGHT, |px, py| {
            if (px, py) == (x, y) {
                37.25
            } else {
                0.0
            }
        })
        .unwrap();
        let out = complete(&sparse, &config).unwrap();
        assert!(out.values().iter().all(|&v| v == 37.25), "seed at ({x}, {y})");
    }
}

#[test]
fn default_iteration_cap_leaves_single_pixel_frames_sparse() {
    let mut data = vec![0.0; KITTI_WIDTH * KITTI_HEIGHT];
    data[200 * KITTI_WIDTH] = 20.0;
    let sparse = DepthMap::from_vec(KITTI_WIDTH, KITTI_HEIGHT, data).unwrap();
    let out = complete(&sparse, &PipelineConfig::default()).unwrap();
    assert!(out.density() < 1.0);
}

#[test]
fn synthetic_kitti_frame_completes_densely() {
    let frame = synthetic::kitti_frame(3);
    let (out, stats) = complete_with_stats(&frame.sparse, &PipelineConfig::default()).unwrap();
    assert_eq!(out.density(), 1.0);
    assert_eq!(stats.output_density, 1.0);
    assert!((stats.input_density - frame.sparse.density()).abs() < 1e-12);
    let names: Vec<_> = stats.stages.iter().map(|t| t.stage).collect();
    assert_eq!(names, Stage::ALL);
}

#[test]
fn repeated_runs_are_bit_identical() {
    let frame = synthetic::lidar_frame(200, 90, 8);
    for &blur_mode in BlurMode::ALL {
        let config = PipelineConfig {
            blur_mode,
            ..Default::default()
        };
        let a = complete(&frame.sparse, &config).unwrap();
        let b = complete(&frame.sparse, &config).unwrap();
        assert_eq!(bits(&a), bits(&b), "{blur_mode}");
    }
}

#[test]
fn trace_stages_match_direct_operations() {
    let frame = synthetic::lidar_frame(160, 80, 5);
    let config = PipelineConfig::default();
    let (out, trace) = complete_with_trace(&frame.sparse, &config).unwrap();
    let stages: Vec<Stage> = trace.iter().map(|(s, _)| *s).collect();
    assert_eq!(stages, Stage::ALL);

    let inverted = frame.sparse.invert().unwrap();
    assert_eq!(trace[0].1, inverted);
    let kernel = Kernel::new(KernelShape::Diamond, 5).unwrap();
    assert_eq!(trace[1].1, dilate(&inverted, &kernel));
    assert_eq!(trace.last().unwrap().1, out);

    // density never decreases before the blur
    for pair in trace[..6].windows(2) {
        assert!(pair[1].1.valid_count() >= pair[0].1.valid_count(), "{}", pair[1].0);
    }
}

#[test]
fn fill_stages_keep_valid_pixels() {
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..60 {
        let sparse = random_sparse(&mut rng, 0.01);
        let (_, trace) = complete_with_trace(&sparse, &PipelineConfig::default()).unwrap();
        let find = |s: Stage| &trace.iter().find(|(t, _)| *t == s).unwrap().1;
        for (before, after) in [
            (Stage::Close, Stage::SmallFill),
            (Stage::SmallFill, Stage::ExtendTop),
            (Stage::ExtendTop, Stage::LargeFill),
        ] {
            let (b, a) = (find(before), find(after));
            for (&x, &y) in b.values().iter().zip(a.values()) {
                if x > 0.1 {
                    assert_eq!(x.to_bits(), y.to_bits(), "{after}");
                }
            }
        }
    }
}

#[test]
fn partial_mode_keeps_input_mask() {
    let mut rng = StdRng::seed_from_u64(23);
    for &blur_mode in BlurMode::ALL {
        let config = PipelineConfig {
            fill_mode: FillMode::Partial,
            blur_mode,
            ..Default::default()
        };
        for _ in 0..20 {
            let sparse = random_sparse(&mut rng, 0.01);
            let out = complete(&sparse, &config).unwrap();
            assert!(out.validity_mask().contains(&sparse.validity_mask()), "{blur_mode}");
        }
    }
}

#[test]
fn partial_mode_leaves_sky_empty() {
    let frame = synthetic::lidar_frame(120, 60, 2);
    let config = PipelineConfig {
        fill_mode: FillMode::Partial,
        ..Default::default()
    };
    let (out, trace) = complete_with_trace(&frame.sparse, &config).unwrap();
    assert!(out.density() < 1.0);
    let find = |s: Stage| &trace.iter().find(|(t, _)| *t == s).unwrap().1;
    // no upward extension and no large fill
    assert_eq!(find(Stage::ExtendTop), find(Stage::SmallFill));
    assert_eq!(find(Stage::LargeFill), find(Stage::SmallFill));
}

#[test]
fn every_shape_size_and_blur_combination_runs() {
    let frame = synthetic::lidar_frame(96, 48, 4);
    let mut runs = 0;
    for shape in KernelShape::ALL {
        for size in [3, 5, 7] {
            for &blur_mode in BlurMode::ALL {
                let config = PipelineConfig {
                    dilation_shape: shape,
                    dilation_size: size,
                    blur_mode,
                    ..Default::default()
                };
                let out = complete(&frame.sparse, &config).unwrap();
                assert_eq!(out.density(), 1.0, "{shape} {size} {blur_mode}");
                runs += 1;
            }
        }
    }
    assert_eq!(runs, 72);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn output_stays_in_input_range(
        w in 1usize..40,
        h in 1usize..40,
        seed in any::<u64>(),
        density in 0.01f64..0.5,
    ) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut data = oracle::random_direct(&mut rng, w, h, density);
        data[0] = 3.5;
        let sparse = DepthMap::from_vec(w, h, data).unwrap();
        let (lo, hi) = sparse.valid_range().unwrap();
        let out = complete(&sparse, &PipelineConfig::default()).unwrap();
        prop_assert_eq!(out.density(), 1.0);
        prop_assert!(out.values().iter().all(|&v| lo <= v && v <= hi));
    }
}
