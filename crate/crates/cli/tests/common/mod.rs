#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use depthfill::io::write_depth_png;
use depthfill::synthetic;

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_depthfill"))
}

/// Runs the binary and returns its output, whatever the exit status.
pub fn run<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Output {
    bin().args(args).output().expect("spawn depthfill")
}

pub fn s(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Writes `n` synthetic frames as `frame_XX.png` into `sparse/` and `gt/`
/// under `root`.
pub fn write_frames(root: &Path, n: usize, width: usize, height: usize) -> (PathBuf, PathBuf) {
    let (sparse, gt) = (root.join("sparse"), root.join("gt"));
    std::fs::create_dir_all(&sparse).unwrap();
    std::fs::create_dir_all(&gt).unwrap();
    for i in 0..n {
        let f = synthetic::lidar_frame(width, height, 100 + i as u64);
        let name = format!("frame_{i:02}.png");
        write_depth_png(&f.sparse, sparse.join(&name)).unwrap();
        write_depth_png(&f.ground_truth, gt.join(&name)).unwrap();
    }
    (sparse, gt)
}

/// Every file in `dir` with its bytes, sorted by name.
pub fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    out.sort();
    out
}
