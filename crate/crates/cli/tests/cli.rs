use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn lc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lc")).args(args).output().expect("run lc")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn diagonal_point_synthesizes() {
    let out = lc(&["synthesize", "--q", "2", "--M", "1", "--I", "1/2", "--S", "1/2", "--n", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("2 1 1000\n"));
    assert_eq!(text.lines().count(), 1001);
}

#[test]
fn inadmissible_pair_exits_2() {
    let out = lc(&["synthesize", "--q", "2", "--M", "2", "--I", "1/2", "--S", "3/5", "--n", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not admissible"));
}

#[test]
fn decimals_are_rejected() {
    let out = lc(&["synthesize", "--q", "2", "--M", "1", "--I", "0.5", "--S", "1/2", "--n", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_and_malformed_inputs_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.txt");
    assert_eq!(lc(&["profile", "--in", p(&missing)]).status.code(), Some(1));
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "2 1 2\n1\n7\n").unwrap();
    assert_eq!(lc(&["profile", "--in", p(&bad)]).status.code(), Some(1));
}

#[test]
fn synthesize_then_inspect() {
    let dir = tempfile::tempdir().unwrap();
    let (seq, pat, traj, prof) =
        (dir.path().join("s.txt"), dir.path().join("p.txt"), dir.path().join("t.csv"), dir.path().join("l.csv"));
    let out = lc(&[
        "synthesize", "--q", "4", "--M", "2", "--I", "1/2", "--S", "3/4", "--n", "600", "--gaps", "0101",
        "--nonzero", "3", "--out", p(&seq), "--pattern", p(&pat), "--trajectory", p(&traj), "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(fs::read_to_string(&seq).unwrap().starts_with("2^2/7 2 600\n"));
    assert!(fs::read_to_string(&pat).unwrap().starts_with("2 600\n"));
    assert!(fs::read_to_string(&traj).unwrap().starts_with("n,d,b_1,b_2,L\n"));

    assert_eq!(lc(&["profile", "--in", p(&seq), "--out", p(&prof)]).status.code(), Some(0));
    let profile = fs::read_to_string(&prof).unwrap();
    assert!(profile.starts_with("n,L,d,L_over_n\n"));
    assert_eq!(profile.lines().count(), 601);

    let out = lc(&["oracle", "--in", p(&seq), "--n", "24", "--diff"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("n,L\n1,"));
    assert_eq!(lc(&["oracle", "--in", p(&seq), "--n", "601"]).status.code(), Some(2));

    let out = lc(&["check", "--in", p(&seq), "--tail", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.contains("bounds_ok=true") && report.contains("monotone=true"));
    // A target far from the tail extrema is a mismatch.
    let out = lc(&["check", "--in", p(&seq), "--tail", "1/2", "--I", "0", "--S", "0", "--tol", "1/100"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bdm_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let trials = dir.path().join(format!("{name}.trials"));
        let args = ["bdm", "--q", "3", "--M", "2", "--n", "2000", "--trials", "16", "--seed", "9", "--checkpoints", "5"];
        let mut args: Vec<&str> = args.to_vec();
        args.extend(["--out", p(&out), "--trials-out", p(&trials)]);
        assert_eq!(lc(&args).status.code(), Some(0));
        (fs::read(&out).unwrap(), fs::read(&trials).unwrap())
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    assert_eq!(a, b);
    let text = String::from_utf8(a.0).unwrap();
    assert!(text.starts_with("# q=3 M=2 n=2000 trials=16 master_seed=9 eps=1/100\n"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 6);
}

#[test]
fn region_geometry_and_classification() {
    let out = lc(&["region", "--M", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("K,vertex_index,I,S\n"));
    let out = lc(&["region", "--M", "2", "--I", "1/5", "--S", "9/10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("K_prime=2"));
    assert_eq!(lc(&["region", "--M", "1", "--I", "1/5", "--S", "9/10"]).status.code(), Some(2));
}
