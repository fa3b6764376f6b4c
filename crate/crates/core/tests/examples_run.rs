use std::process::Command;

const EXAMPLES: [&str; 8] = [
    "shortest_paths",
    "greedy_packing",
    "k_cover",
    "k_pack",
    "two_cover",
    "render_svg",
    "oracle_suites",
    "polygon_files",
];

#[test]
fn examples_compile_and_run() {
    let cargo = env!("CARGO");
    for name in EXAMPLES {
        let out = Command::new(cargo)
            .args(["run", "--quiet", "--release", "-p", "geodisk", "--example", name])
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .output()
            .expect("cargo runs");
        assert!(
            out.status.success(),
            "{name} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stdout.is_empty(), "{name} printed nothing");
    }
}
