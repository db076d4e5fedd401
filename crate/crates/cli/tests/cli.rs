mod support;

use std::fs;

use support::*;

#[test]
fn golden_outputs() {
    let failures: Vec<String> = cases().iter().filter_map(|c| check_case(c).err()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn output_is_deterministic() {
    let dir = golden_dir();
    for args in [&["canon", "s1.json"][..], &["--json", "witness", "s1.json", "c", "b"], &["solve", "dense.json"]] {
        let a = timely(&dir, args);
        let b = timely(&dir, args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status, b.status);
    }
}

#[test]
fn witnesses_pass_verify() {
    let dir = golden_dir();
    let tmp = tempfile::tempdir().unwrap();
    for (spec, from, to, k) in [
        ("s1.json", "a", "b", None),
        ("s1.json", "c", "b", None),
        ("s1.json", "b", "a", None),
        ("dense.json", "a", "c", None),
        ("dense.json", "c", "a", Some("7/2")),
        ("edgeless.json", "b", "c", Some("1000")),
    ] {
        let mut args = vec!["--json", "witness", spec, from, to];
        if let Some(k) = k {
            args.extend(["--at-least", k]);
        }
        let out = timely(&dir, &args);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let path = tmp.path().join("w.json");
        fs::write(&path, &out.stdout).unwrap();
        let verify = timely(&dir, &["verify", spec, path.to_str().unwrap()]);
        assert_eq!(verify.status.code(), Some(0), "{spec} {from} {to}");
        assert_eq!(verify.stdout, b"OK\n");
    }
}

#[test]
fn canon_json_round_trips() {
    let dir = golden_dir();
    let tmp = tempfile::tempdir().unwrap();
    for spec in ["s1.json", "dense.json", "nonneg.json", "edgeless.json"] {
        let first = timely(&dir, &["--json", "canon", spec]);
        let path = tmp.path().join("canon.json");
        fs::write(&path, &first.stdout).unwrap();
        let second = timely(&dir, &["--json", "canon", path.to_str().unwrap()]);
        assert_eq!(first.stdout, second.stdout, "{spec}");
    }
}

#[test]
fn conjoin_writes_output_file() {
    let dir = golden_dir();
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("both.json");
    let out = timely(&dir, &["conjoin", "tight2.json", "backward.json", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read(&path).unwrap(), fs::read(dir.join("conjoin.out")).unwrap());
    let check = timely(&dir, &["check", path.to_str().unwrap()]);
    assert_eq!(check.stdout, b"SATISFIABLE\n");
}

#[test]
fn usage_errors_exit_two() {
    let dir = golden_dir();
    for args in [
        &["--engine", "quantum", "check", "s1.json"][..],
        &["witness", "s1.json", "a", "zz"],
        &["witness", "s1.json", "a", "a"],
        &["frobnicate"],
        &["compare", "s1.json", "tight2.json"],
    ] {
        let out = timely(&dir, args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn engines_print_the_same_table() {
    let dir = golden_dir();
    for spec in ["s1.json", "dense.json", "cycle.json", "neginf.json"] {
        let outputs: Vec<_> = ["auto", "dense", "sparse"]
            .iter()
            .map(|e| timely(&dir, &["--engine", e, "canon", spec]).stdout)
            .collect();
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{spec}");
    }
}
