mod common;

use std::fs;
use std::process::{Command, Output};

fn grouphash(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grouphash"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bias_baseline_reports_one_sixth() {
    let o = grouphash(&[
        "bias",
        "--group",
        "zp:7",
        "--family",
        "mult-conj:7",
        "--psi0",
        "fourier",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("max_bias=0.166666666667"), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("g=")).count(), 6);
}

#[test]
fn missing_family_is_a_config_error() {
    let o = grouphash(&["bias", "--group", "sym:4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_descriptors_are_config_errors() {
    assert_eq!(
        grouphash(&["bias", "--group", "cube:3", "--family", "trivial"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        grouphash(&["bias", "--group", "sym:3", "--family", "rotate"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        grouphash(&["bias", "--group", "sym:3", "--family", "trivial", "--psi0", "gauss"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn oversized_group_exceeds_budget() {
    let o = grouphash(&["bias", "--group", "sym:9", "--family", "cyclic-conj"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn goodset_writes_report_and_is_seed_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for path in [&a, &b] {
        let o = grouphash(&[
            "goodset",
            "--group",
            "zp:31",
            "--family",
            "mult-conj",
            "--epsilon",
            "0.1",
            "--seed",
            "5",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.contains("d=69"), "{text}");
    assert!(text.contains("verified=true"), "{text}");
}

#[test]
fn goodset_failure_exits_four_with_measured_bias() {
    // conjugating an abelian group changes nothing, so every draw keeps bias 1
    let o = grouphash(&[
        "goodset",
        "--group",
        "zp:5",
        "--family",
        "cyclic-conj",
        "--epsilon",
        "0.5",
        "--max-attempts",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(
        stdout(&o).contains("base_family_max_bias=1.000000000000"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn goodset_rejects_epsilon_outside_unit_interval() {
    let o = grouphash(&[
        "goodset",
        "--group",
        "zp:7",
        "--family",
        "mult-conj",
        "--epsilon",
        "1.5",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn collide_baseline_and_budget() {
    let o = grouphash(&["collide", "--baseline", "zp:7", "--messages", "0..=6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("max_overlap=0.166666666667"));
    let o = grouphash(&[
        "collide",
        "--baseline",
        "zp:7",
        "--messages",
        "0..7",
        "--pair-budget",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let o = grouphash(&["collide", "--baseline", "zp:8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn collide_through_compiled_circuit() {
    let dir = tempfile::tempdir().unwrap();
    let msgs = dir.path().join("m.txt");
    fs::write(&msgs, "00\n01\n10\n11\n").unwrap();
    let circ = common::corpus_dir().join("and2.circ");
    let o = grouphash(&[
        "collide",
        "--circuit",
        circ.to_str().unwrap(),
        "--messages",
        msgs.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    // three inputs map to the identity
    assert!(text.contains("classical_collisions=3"), "{text}");
}

#[test]
fn compile_reports_bound_and_equivalence() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.pbp");
    let circ = common::corpus_dir().join("xor2.circ");
    let o = grouphash(&[
        "compile",
        "--circuit",
        circ.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("equivalence=PASS"), "{text}");
    assert!(text.contains("within_bound=true"), "{text}");
    let program =
        grouphash::nc1::PermutationBranchingProgram::parse(&fs::read_to_string(&out).unwrap())
            .unwrap();
    assert!(program.len() <= 256);
}

#[test]
fn compile_parse_error_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let circ = dir.path().join("bad.circ");
    fs::write(&circ, "in a\nin b\ng = XOR a b\nout g\n").unwrap();
    let o = grouphash(&["compile", "--circuit", circ.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":3:"));
}

#[test]
fn audit_supported_range() {
    assert_eq!(grouphash(&["audit", "--n", "2"]).status.code(), Some(2));
    assert_eq!(grouphash(&["audit", "--n", "9"]).status.code(), Some(2));
    let o = grouphash(&["audit", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("zero_sum=false"));
}

#[test]
fn generator_file_group() {
    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("d4.txt");
    fs::write(&gens, "# dihedral group of the square\n(1 2 3 4)\n(1 3)\n").unwrap();
    let arg = format!("gen:{}", gens.display());
    let o = grouphash(&["bias", "--group", &arg, "--family", "full-conj"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().filter(|l| l.starts_with("g=")).count(),
        7
    );
}
