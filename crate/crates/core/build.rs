//! Generates unrolled median kernels for the common window sizes.

use std::fmt::Write as _;
use std::path::PathBuf;

#[allow(dead_code)]
#[path = "src/morphology/network.rs"]
mod network;

use network::{Op, SelectionNetwork};

/// Window sizes that get a straight-line kernel.
const UNROLLED: [usize; 3] = [3, 5, 7];

fn main() {
    println!("cargo:rerun-if-changed=src/morphology/network.rs");
    println!("cargo:rerun-if-changed=build.rs");

    let mut src = String::new();
    for s in UNROLLED {
        let net = SelectionNetwork::window_median(s);
        let n = s * s;
        writeln!(src, "struct Unrolled{s};\n").unwrap();
        writeln!(src, "impl WindowKernel for Unrolled{s} {{").unwrap();
        writeln!(src, "    #[inline(always)]").unwrap();
        writeln!(
            src,
            "    fn run(&mut self, cols: &[Vec<f32>], x0: usize) -> [f32; LANES] {{"
        )
        .unwrap();
        writeln!(src, "        let v: &mut [[f32; LANES]; {n}] = &mut [").unwrap();
        for i in 0..n {
            let offset = match i % s {
                0 => String::new(),
                dx => format!(" + {dx}"),
            };
            writeln!(src, "            lanes(&cols[{}][x0{offset}..]),", i / s).unwrap();
        }
        writeln!(src, "        ];").unwrap();
        for op in &net.ops {
            let line = match *op {
                Op::Sort(a, b) => format!("sort(v, {a}, {b});"),
                Op::MinInto(a, b) => format!("min_into(v, {a}, {b});"),
                Op::MaxInto(a, b) => format!("max_into(v, {a}, {b});"),
            };
            writeln!(src, "        {line}").unwrap();
        }
        writeln!(src, "        v[{}]", net.output).unwrap();
        writeln!(src, "    }}\n}}\n").unwrap();
    }

    let out = PathBuf::from(std::env::var("OUT_DIR").unwrap()).join("median_kernels.rs");
    std::fs::write(out, src).unwrap();
}
