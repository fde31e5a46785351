use depthfill::{BlurMode, FillMode, KernelShape, PipelineConfig};
use depthfill_cli::config::{self, ConfigArgs, KEYS};
use proptest::prelude::*;

fn odd_size() -> impl Strategy<Value = usize> {
    (1usize..20).prop_map(|k| 2 * k + 1)
}

fn sigma() -> impl Strategy<Value = f64> {
    prop_oneof![1e-6f64..1e6, (1u32..1000).prop_map(|k| k as f64 / 7.0)]
}

prop_compose! {
    fn any_config()(
        dilation_shape in prop::sample::select(KernelShape::ALL.to_vec()),
        sizes in prop::array::uniform6(odd_size()),
        large_fill_max_iters in 1usize..500,
        blur_mode in prop::sample::select(BlurMode::ALL.to_vec()),
        sigmas in prop::array::uniform3(sigma()),
        fill_mode in prop::sample::select(FillMode::ALL.to_vec()),
    ) -> PipelineConfig {
        PipelineConfig {
            dilation_shape,
            dilation_size: sizes[0],
            closure_size: sizes[1],
            small_fill_size: sizes[2],
            large_fill_size: sizes[3],
            large_fill_max_iters,
            blur_mode,
            median_size: sizes[4],
            gaussian_size: sizes[5],
            gaussian_sigma: sigmas[0],
            bilateral_size: sizes[4],
            bilateral_sigma_value: sigmas[1],
            bilateral_sigma_space: sigmas[2],
            fill_mode,
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn render_then_parse_is_identity(c in any_config()) {
        let text = config::render(&c);
        prop_assert_eq!(config::parse(&text).unwrap(), c.clone());
        // and rendering is stable
        prop_assert_eq!(config::render(&config::parse(&text).unwrap()), text);
    }

    #[test]
    fn missing_keys_keep_defaults(c in any_config(), keep in prop::collection::vec(any::<bool>(), KEYS.len())) {
        let full = config::render(&c);
        let text: String = full
            .lines()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(l, _)| format!("{l}\n"))
            .collect();
        let parsed = config::render(&config::parse(&text).unwrap());
        let defaults = config::render(&PipelineConfig::default());
        for (i, line) in parsed.lines().enumerate() {
            let want = if keep[i] { full.lines().nth(i) } else { defaults.lines().nth(i) };
            prop_assert_eq!(Some(line), want);
        }
    }
}

#[test]
fn flags_override_file_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.cfg");
    std::fs::write(&path, "blur_mode = none\ndilation_size = 7\n").unwrap();
    let args = ConfigArgs {
        config: Some(path.clone()),
        blur_mode: Some(BlurMode::Gaussian),
        ..Default::default()
    };
    let c = args.resolve().unwrap();
    assert_eq!(c.blur_mode, BlurMode::Gaussian);
    assert_eq!(c.dilation_size, 7);
    assert_eq!(c.dilation_shape, KernelShape::Diamond);

    let bad = ConfigArgs {
        dilation_size: Some(4),
        ..Default::default()
    };
    assert!(bad.resolve().is_err());

    std::fs::write(&path, "dilation_kernel = 5\n").unwrap();
    let args = ConfigArgs {
        config: Some(path),
        ..Default::default()
    };
    assert!(format!("{:#}", args.resolve().unwrap_err()).contains("unknown config key"));
}
