//! Every cargo example runs to completion. `cargo test` builds the examples
//! next to the test binaries, so they are located from the current exe.

use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: [&str; 8] = [
    "cm_sequences",
    "measures_and_moments",
    "class_t_functions",
    "collapsing_arc",
    "convolution_maps",
    "polylog_certificates",
    "hypergeometric_certificates",
    "derivative_quotients",
];

fn example_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().join("examples")
}

#[test]
fn examples_succeed() {
    let dir = example_dir();
    for name in EXAMPLES {
        let path = dir.join(format!("{name}{}", std::env::consts::EXE_SUFFIX));
        if !path.exists() {
            eprintln!("skipping {name}: {} not built", path.display());
            continue;
        }
        let out = Command::new(&path).output().unwrap();
        assert!(
            out.status.success(),
            "{name} failed:\n{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stdout.is_empty(), "{name} printed nothing");
    }
}
