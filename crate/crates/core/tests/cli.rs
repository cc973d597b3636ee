use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twinskein"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn validate_exit_codes() {
    assert_eq!(
        run(&["validate", "fixtures/tw_std.twin"]).status.code(),
        Some(0)
    );
    let bad = scratch("bad.twin");
    std::fs::write(&bad, "twin { arc A: O1+ O1+ ; arc B: ; }\n").unwrap();
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("role-pairing"));
    assert_eq!(
        run(&["validate", "fixtures/missing.twin"]).status.code(),
        Some(2)
    );
    let garbled = scratch("garbled.twin");
    std::fs::write(&garbled, "twin { arc A: X1+ ; }").unwrap();
    assert_eq!(
        run(&["validate", garbled.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn invariant_of_fixtures() {
    for (file, want) in [
        ("fixtures/tw_std.twin", "1"),
        ("fixtures/tw_split.twin", "0"),
        ("fixtures/tw_giller.twin", "t^-2 - 1 + t^2"),
        ("fixtures/tw_unknot_pair.twin", "t^-2 - 1 + t^2"),
        ("fixtures/giller_ex.knot", "t^-2 - 1 + t^2"),
    ] {
        let o = run(&["invariant", file]);
        assert_eq!(o.status.code(), Some(0), "{file}");
        assert_eq!(stdout(&o).trim(), want, "{file}");
    }
}

#[test]
fn invariant_flags_and_traces() {
    let o = run(&["invariant", "fixtures/tw_giller.twin", "--trace", "dot"]);
    let text = stdout(&o);
    assert!(text.starts_with("t^-2 - 1 + t^2\ndigraph"));
    assert!(text.contains("label=\"switch\"") && text.contains("smooth ×("));
    let json = scratch("trace.json");
    let o = run(&[
        "invariant",
        "fixtures/tw_giller.twin",
        "--trace",
        "json",
        "--trace-out",
        json.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&o).trim(), "t^-2 - 1 + t^2");
    let tree: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(tree["children"].as_array().unwrap().len(), 2);
    let o = run(&[
        "invariant",
        "fixtures/tw_giller.twin",
        "--no-memo",
        "--parallel",
        "--depth",
        "20",
    ]);
    assert_eq!(stdout(&o).trim(), "t^-2 - 1 + t^2");
    let o = run(&["invariant", "fixtures/tw_giller.twin", "--multiplier", "1"]);
    assert_eq!(stdout(&o).trim(), "2");
    assert_eq!(
        run(&[
            "invariant",
            "fixtures/tw_std.twin",
            "--strategy",
            "sideways"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn unresolved_is_a_domain_failure() {
    let f = scratch("ribbon.twin");
    std::fs::write(&f, "twin { arc A: O1+ U2+ U1+ O2+ ; arc B: ; }\n").unwrap();
    let o = run(&["invariant", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("unresolved: "));
}

#[test]
fn non_default_surgery_is_rejected() {
    let f = scratch("surgery.twin");
    std::fs::write(&f, "twin { arc A: ; arc B: ; loop L1: (1, 2/3) ; }\n").unwrap();
    let o = run(&["invariant", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("non-default-surgery"));
}

#[test]
fn conway_of_table_knots() {
    for (k, want) in [("unknot", "1"), ("3_1", "1 + z^2"), ("4_1", "1 - z^2")] {
        let o = run(&["conway", "--knot", k]);
        assert_eq!(stdout(&o).lines().next(), Some(want));
    }
    assert_eq!(run(&["conway", "--knot", "99_1"]).status.code(), Some(1));
    let f = scratch("tre.code");
    std::fs::write(&f, "O1+U2+O3+U1+O2+U3+\n").unwrap();
    assert_eq!(
        stdout(&run(&["conway", f.to_str().unwrap()]))
            .lines()
            .next(),
        Some("1 + z^2")
    );
}

#[test]
fn spin_constructions() {
    let o = run(&["spin", "--knot", "unknot", "--construction", "artin"]);
    assert_eq!(stdout(&o), "twin { arc A: ; arc B: ; }\n");
    let out = scratch("spun.twin");
    run(&[
        "spin",
        "--knot",
        "3_1",
        "--construction",
        "artin",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        stdout(&run(&["invariant", out.to_str().unwrap()])).trim(),
        "t^-2 - 1 + t^2"
    );
    let o = run(&[
        "spin",
        "fixtures/giller_ex.knot",
        "--construction",
        "closure",
    ]);
    assert_eq!(
        stdout(&o),
        std::fs::read_to_string(format!(
            "{}/fixtures/tw_giller.twin",
            env!("CARGO_MANIFEST_DIR")
        ))
        .unwrap()
    );
    let o = run(&[
        "spin",
        "fixtures/giller_ex.knot",
        "--construction",
        "connsum",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        run(&["spin", "fixtures/tw_std.twin", "--construction", "closure"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn corpus_negative_control() {
    let o = run(&["corpus", "--multiplier", "1", "--cases", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("[FAIL]  3")));
    assert!(text.lines().any(|l| l.starts_with("[PASS]  9")));
}
