//! Demo reports against checked-in JSON. `UPDATE_GOLDEN=1` rewrites them.

use std::path::PathBuf;

use tarski_lab::demo::{DEFAULT_SEED, DEMOS};

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"))
}

fn demo_json(name: &str) -> (i32, String) {
    let seed = DEFAULT_SEED.to_string();
    let args = ["tarski-lab", "demo", name, "--json", "--seed", &seed];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = tarski_lab::cli::run(args, &mut out, &mut err);
    assert!(err.is_empty(), "{}", String::from_utf8_lossy(&err));
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn demo_reports_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for name in DEMOS {
        let (code, json) = demo_json(name);
        assert_eq!(code, 0, "{name} exited {code}");
        let path = golden_path(name);
        if update {
            std::fs::write(&path, &json).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e}; run with UPDATE_GOLDEN=1", path.display()));
        assert_eq!(
            json,
            expected,
            "{name} report drifted from {}",
            path.display()
        );
    }
}

#[test]
fn demo_reports_are_byte_stable_across_workers() {
    for name in ["thm-2.7", "thm-3.5", "lemma-2.6"] {
        let (_, one) = demo_json(name);
        let args = [
            "tarski-lab",
            "demo",
            name,
            "--json",
            "--workers",
            "4",
            "--seed",
            &DEFAULT_SEED.to_string(),
        ]
        .map(String::from);
        let mut out = Vec::new();
        tarski_lab::cli::run(args, &mut out, &mut Vec::new());
        assert_eq!(one, String::from_utf8(out).unwrap(), "{name}");
    }
}
