//! Acceptance check owned by the CLI: the property suite must be
//! reproducible byte for byte under its default seed.

use std::process::Command;

#[test]
fn acceptance_suite_determinism() {
    let dir = std::env::temp_dir();
    let first = dir.join(format!("kscert-suite-a-{}.json", std::process::id()));
    let second = dir.join(format!("kscert-suite-b-{}.json", std::process::id()));

    for path in [&first, &second] {
        let status = Command::new(env!("CARGO_BIN_EXE_kscert"))
            .args(["suite", "--out", path.to_str().unwrap()])
            .status()
            .expect("binary runs");
        assert_eq!(status.code(), Some(0), "default suite must pass");
    }

    let a = std::fs::read(&first).unwrap();
    let b = std::fs::read(&second).unwrap();
    let pass = a == b && !a.is_empty();
    println!("ACCEPTANCE suite-determinism: {}", if pass { "PASS" } else { "FAIL" });

    std::fs::remove_file(first).ok();
    std::fs::remove_file(second).ok();
    assert!(pass, "identical seed and trials must reproduce the report bytes");
}
