use serde_json::Value;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};
use sumset_core::model::io::{parse_points, parse_string};
use sumset_core::model::{audit_cluster, is_monotone, ClusterDesc};
use sumset_core::solvers::threesum_brute;

fn sumset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumset")).args(args).output().expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sumset"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_monotone_is_monotone() {
    let dir = tempfile::tempdir().unwrap();
    let o = sumset(&["gen", "--kind", "monotone-d", "--n", "100", "--d", "2", "--seed", "1", "--out", p(dir.path())]);
    assert!(o.status.success(), "{}", stderr(&o));
    for f in ["A.txt", "B.txt", "S.txt"] {
        let s = parse_points(&read(&dir.path().join(f))).unwrap();
        assert!(is_monotone(&s), "{f}");
        assert_eq!(s.dim(), 2);
    }
}

#[test]
fn gen_string_and_clustered() {
    let dir = tempfile::tempdir().unwrap();
    let o = sumset(&["gen", "--kind", "string", "--n", "50", "--alphabet", "2", "--seed", "2", "--out", p(dir.path())]);
    assert!(o.status.success());
    let (s, alphabet) = parse_string(&read(&dir.path().join("string.txt"))).unwrap();
    assert_eq!((s.len(), alphabet), (50, 2));
    assert!(s.iter().all(|&c| c < 2));

    let o = sumset(&["gen", "--kind", "clustered", "--n", "64", "--K", "8", "--L", "64", "--seed", "3", "--out", p(dir.path())]);
    assert!(o.status.success());
    for f in ["A.txt", "B.txt"] {
        let set = parse_points(&read(&dir.path().join(f))).unwrap();
        audit_cluster(&set, &ClusterDesc::new(8, 64, None).unwrap()).unwrap();
    }
}

#[test]
fn gen_is_deterministic_and_echoes_seed() {
    let (x, y) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&x, &y] {
        assert!(sumset(&["gen", "--kind", "monotone-d", "--n", "40", "--seed", "9", "--out", p(d.path())]).status.success());
    }
    assert_eq!(read(&x.path().join("S.txt")), read(&y.path().join("S.txt")));
    let o = sumset(&["gen", "--kind", "string", "--n", "5", "--out", p(x.path())]);
    assert!(o.status.success());
    assert!(stderr(&o).starts_with("seed: "));
}

#[test]
fn solve_matches_brute_and_witnesses_sum() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    sumset(&["gen", "--kind", "monotone-d", "--n", "200", "--d", "2", "--seed", "4", "--out", p(d)]);
    let (a, b, s) = (d.join("A.txt"), d.join("B.txt"), d.join("S.txt"));
    let (hits, wit) = (d.join("hits.txt"), d.join("w.txt"));
    let o = sumset(&[
        "solve", "--problem", "3sum-monotone", "--a", p(&a), "--b", p(&b), "--s", p(&s), "--out", p(&hits),
        "--witnesses", p(&wit), "--seed", "1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rec: Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(rec["problem"], "3sum-monotone");
    assert!(rec["work_total"].as_u64().unwrap() > 0);
    let got = parse_points(&read(&hits)).unwrap();
    let sets: Vec<_> = [&a, &b, &s].iter().map(|f| parse_points(&read(f)).unwrap()).collect();
    assert_eq!(got, threesum_brute(&sets[0], &sets[1], &sets[2]).unwrap().hits);
    let lines: Vec<String> = read(&wit).lines().map(String::from).collect();
    assert_eq!(lines.len(), got.len());
    for (line, h) in lines.iter().zip(got.iter()) {
        let (x, y) = line.split_once(" | ").unwrap();
        let parse = |t: &str| t.split(' ').map(|v| v.parse::<u64>().unwrap()).collect::<Vec<_>>();
        let (x, y) = (parse(x), parse(y));
        assert!(sets[0].contains(&x) && sets[1].contains(&y));
        assert_eq!(x.iter().zip(&y).map(|(u, v)| u + v).collect::<Vec<_>>(), h);
    }
}

#[test]
fn verify_monotone_fifty_seeds() {
    let o = sumset(&["verify", "--problem", "3sum-monotone", "--seeds", "50", "--seed", "100", "--n", "120"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let recs = records(&o);
    assert_eq!(recs.len(), 50);
    assert!(recs.iter().all(|r| r["verified"] == true));
}

#[test]
fn verify_minplus_fifty_seeds() {
    let o = sumset(&["verify", "--problem", "minplus", "--seeds", "50", "--seed", "200", "--n", "80"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(records(&o).len(), 50);
}

#[test]
fn verify_matrix() {
    for problem in ["3sum-fft", "3sum-brute", "minplus-diff", "histindex", "hist-offline", "hist-online"] {
        let o = sumset(&["verify", "--problem", problem, "--seeds", "4", "--seed", "7", "--n", "60", "--alphabet", "3"]);
        assert!(o.status.success(), "{problem}: {}", stderr(&o));
    }
    for problem in ["3sum-clustered", "3sum-one-clustered"] {
        let o = sumset(&["verify", "--problem", problem, "--seeds", "4", "--seed", "7", "--n", "64", "--K", "8", "--L", "32"]);
        assert!(o.status.success(), "{problem}: {}", stderr(&o));
    }
}

#[test]
fn corrupted_result_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    sumset(&["gen", "--kind", "monotone-d", "--n", "80", "--seed", "5", "--out", p(d)]);
    let (a, b, s, hits) = (d.join("A.txt"), d.join("B.txt"), d.join("S.txt"), d.join("hits.txt"));
    let args = |extra: &[&str]| {
        let mut v = vec!["--a", p(&a), "--b", p(&b), "--s", p(&s)];
        v.extend_from_slice(extra);
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>()
    };
    let solve: Vec<String> = ["solve", "--problem", "3sum-monotone", "--seed", "1"].iter().map(|x| x.to_string()).chain(args(&["--out", p(&hits)])).collect();
    assert!(Command::new(env!("CARGO_BIN_EXE_sumset")).args(&solve).output().unwrap().status.success());
    let verify = |file: &Path| {
        let v: Vec<String> = ["verify", "--problem", "3sum-monotone"].iter().map(|x| x.to_string()).chain(args(&["--result", p(file)])).collect();
        Command::new(env!("CARGO_BIN_EXE_sumset")).args(&v).output().unwrap()
    };
    assert!(verify(&hits).status.success());

    // Drop the last hit and fix up the header count.
    let text = read(&hits);
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    let mut head: Vec<u64> = lines[0].split(' ').map(|v| v.parse().unwrap()).collect();
    head[2] -= 1;
    let header = format!("{} {} {}", head[0], head[1], head[2]);
    lines[0] = &header;
    let bad = d.join("bad.txt");
    std::fs::write(&bad, lines.join("\n") + "\n").unwrap();
    let o = verify(&bad);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("missing hit"), "{}", stderr(&o));
}

#[test]
fn bench_ladder_and_fit() {
    let o = sumset(&["bench", "--problem", "3sum-brute", "--sizes", "128,256,512", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("at least 4"));

    let o = sumset(&["bench", "--problem", "3sum-brute", "--sizes", "128,256,512,1024", "--d", "2", "--seed", "1", "--verify"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let recs = records(&o);
    assert_eq!(recs.len(), 5);
    assert!(recs[..4].iter().all(|r| r["verified"] == true && r["work"]["pair_ops"].as_u64().unwrap() > 0));
    let slope = recs[4]["fit"]["work"]["slope"].as_f64().unwrap();
    assert!((slope - 2.0).abs() <= 0.05, "brute slope {slope}");
    assert_eq!(recs[4]["reference_exponent"].as_f64(), Some(2.0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(sumset(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(sumset(&["solve", "--problem", "3sum-brute", "--a", "/nonexistent", "--b", "x", "--s", "y"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.txt");
    std::fs::write(&f, "1 10 2\n3\n").unwrap();
    let o = sumset(&["solve", "--problem", "3sum-brute", "--a", p(&f), "--b", p(&f), "--s", p(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"));
}

#[test]
fn hist_and_online_answer_per_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("s.txt");
    std::fs::write(&f, "4 2\n0110\n").unwrap();
    let o = with_stdin(&["hist", "--string", p(&f), "--seed", "1"], "1 1\n2 0\n0 2\n0 0\n");
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "true\nfalse\ntrue\ntrue\n");

    let f3 = dir.path().join("t.txt");
    std::fs::write(&f3, "3 3\n012\n").unwrap();
    let o = with_stdin(&["hist", "--string", p(&f3), "--seed", "1"], "1 1 1\n2 0 0\n");
    assert_eq!(stdout(&o), "true\nfalse\n");

    let a = dir.path().join("a.txt");
    std::fs::write(&a, "2 8 3\n0 0\n1 0\n1 1\n").unwrap();
    let o = with_stdin(&["online", "--a", p(&a), "--b", p(&a), "--ell", "2", "--P", "1", "--seed", "1"], "2 1\n2 2\n0 2\n");
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "true\ntrue\nfalse\n");
}

#[test]
fn minplus_bsg_hash_family_universe() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let (a, b) = (d.join("a.txt"), d.join("b.txt"));
    std::fs::write(&a, "3 2\n0 1 2\n").unwrap();
    std::fs::write(&b, "3 2\n0 2 4\n").unwrap();
    let o = sumset(&["minplus", "--a", p(&a), "--b", p(&b), "--seed", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "5 2\n0\n1\n2\n4\n6\n");

    let x = d.join("x.txt");
    std::fs::write(&x, "1 16 8\n0\n1\n2\n3\n4\n5\n6\n7\n").unwrap();
    let o = sumset(&["bsg", "--a", p(&x), "--b", p(&x), "--s", p(&x), "--alpha", "0.125", "--variant", "det"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("audit pass"));

    for mode in ["rand", "det"] {
        let o = sumset(&["hash-family", "--t", p(&x), "--mode", mode, "--seed", "2"]);
        assert!(o.status.success(), "{mode}: {}", stderr(&o));
        assert!(stdout(&o).contains("audit pass"));
    }

    let (sa, sb, ss) = (d.join("sa.txt"), d.join("sb.txt"), d.join("ss.txt"));
    std::fs::write(&sa, "1 16 2\n1\n2\n").unwrap();
    std::fs::write(&sb, "1 16 1\n3\n").unwrap();
    std::fs::write(&ss, "1 16 3\n4\n5\n9\n").unwrap();
    let o = sumset(&[
        "universe", "--a0", p(&x), "--b0", p(&x), "--s0", p(&x), "--a", p(&sa), "--b", p(&sb), "--s", p(&x), "--seed", "1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "1 16 2\n4\n5\n");
    let o = sumset(&["universe", "--a0", p(&x), "--b0", p(&x), "--a", p(&sa), "--b", p(&sb), "--s", p(&ss), "--seed", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "1 16 2\n4\n5\n");
}
