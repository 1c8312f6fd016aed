use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn coopdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coopdyn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn gen_then_analyze_rotation() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(dir.path(), "rot.map");
    let o = coopdyn(&["gen", "almost-coop2d", "-o", &f]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&f).unwrap();
    assert!(text.ends_with("0 0 -> 1 0\n0 1 -> 0 0\n1 0 -> 1 1\n1 1 -> 0 1\n"));

    let rep = path(dir.path(), "rot.txt");
    let o = coopdyn(&["analyze", &f, "--report", &rep]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("orbits.cycle_lengths: 4\n"));
    assert!(out.contains("coop.verdict: almost-cooperative <2,1>\n"));
    assert_eq!(fs::read_to_string(&rep).unwrap(), out);
    // identical invocations give identical reports
    assert_eq!(stdout(&coopdyn(&["analyze", &f])), out);
}

#[test]
fn analyze_sections_and_exports() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(dir.path(), "gpi.map");
    assert!(coopdyn(&["gen", "g-pi", "--n", "3", "-o", &f]).status.success());
    let dot = path(dir.path(), "g.dot");
    let edges = path(dir.path(), "g.txt");
    let o = coopdyn(&["analyze", &f, "--irred", "--dot", &dot, "--edges", &edges]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("irred.strongly_irreducible: true\n"));
    assert!(!out.contains("orbits."));
    assert_eq!(fs::read_to_string(&edges).unwrap(), "1 2\n2 3\n3 1\n");
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));
}

#[test]
fn smale_extends_partial_file() {
    let dir = tempfile::tempdir().unwrap();
    let part = path(dir.path(), "p.map");
    fs::write(
        &part,
        "ddsmap 1\nn 3\nlevels 2 2 2\nkind partial\n1 0 0 -> 0 1 0\n0 1 0 -> 0 0 1\n0 0 1 -> 1 0 0\n",
    )
    .unwrap();
    let out = path(dir.path(), "g.map");
    let o = coopdyn(&["smale", &part, "-o", &out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let a = stdout(&coopdyn(&["analyze", &out, "--coop"]));
    assert!(a.contains("coop.verdict: cooperative\n"));
}

#[test]
fn embed_and_discretize() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(dir.path(), "c.map");
    assert!(coopdyn(&["gen", "cycle-on-layer", "--n", "2", "--p", "2", "-o", &f]).status.success());
    let e = path(dir.path(), "e.map");
    assert!(coopdyn(&["embed", &f, "--target-n", "4", "--target-p", "2", "-o", &e]).status.success());
    assert!(stdout(&coopdyn(&["analyze", &e, "--coop"])).contains("coop.verdict: cooperative\n"));
    // a 4-cycle cannot be placed in three Boolean coordinates
    let r = path(dir.path(), "r.map");
    assert!(coopdyn(&["gen", "almost-coop2d", "-o", &r]).status.success());
    let o = coopdyn(&["embed", &r, "--target-n", "3", "--target-p", "2", "-o", &e]);
    assert_eq!(o.status.code(), Some(2));

    let s = path(dir.path(), "s.map");
    fs::write(
        &s,
        "ddsmap 1\nn 1\nlevels 3\nkind samples\n0 -> 0.1\n1 -> 0.9\n2 -> 0.4\n",
    )
    .unwrap();
    let d = path(dir.path(), "d.map");
    let o = coopdyn(&["discretize", &s, "-o", &d]);
    assert!(o.status.success());
    assert!(fs::read_to_string(&d).unwrap().ends_with("0 -> 0\n1 -> 2\n2 -> 1\n"));
}

#[test]
fn antichain_values() {
    let o = coopdyn(&["antichain", "--n", "4", "--p", "3", "--exact", "--oracle"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("d_exact: 19\n"));
    assert!(out.contains("oracle_agrees: true\n"));
}

#[test]
fn exit_codes() {
    let o = coopdyn(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(coopdyn(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.map");
    fs::write(&bad, "ddsmap 1\nn 1\nlevels 2\nkind total\n0 -> 1\n0 -> 0\n").unwrap();
    let o = coopdyn(&["analyze", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 6"));
}

#[test]
fn verify_suite_report() {
    let o = coopdyn(&["verify", "--suite", "clt"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("check: clt/ratio-20-2\n"));
    assert!(out.ends_with("checks: 3\nfailed: 0\n"));
    assert!(coopdyn(&["--quiet", "verify", "--suite", "bounds"]).stdout.is_empty());
    assert_eq!(stdout(&coopdyn(&["verify", "--suite", "clt"])), out);
}

#[test]
fn full_verification_passes() {
    let o = coopdyn(&["verify", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("check: sperner/oracle-equals-middle-layer\n"));
    assert!(out.contains("check: boolean3-exhaustive/no-four-cycle\n"));
    assert!(out.ends_with("failed: 0\n"));
}
