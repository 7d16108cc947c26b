use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use hyperfactor::isomorphic;
use hyperfactor::oracle::{random_connected_hypergraph, random_product_with_sizes, GeneratorConfig};
use hyperfactor_cli::format::{parse, serialize};
use proptest::prelude::*;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn hyperfactor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperfactor")).args(args).output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hyperfactor"))
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

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_owned()
}

#[test]
fn factor_fixtures() {
    let fig1 = hyperfactor(&["factor", &path("fig1.dhg")]);
    assert_eq!(fig1.status.code(), Some(0));
    assert!(stdout(&fig1).contains("# prime factors: 1\n"));
    let fig2 = hyperfactor(&["factor", "--verify", &path("fig2.dhg")]);
    assert_eq!(fig2.status.code(), Some(0));
    assert!(stdout(&fig2).contains("# prime factors: 2\n"));
    assert_eq!(stdout(&fig2).matches("dhg 1\n").count(), 2);
}

#[test]
fn factor_json_mirrors_the_text() {
    let out = hyperfactor(&["factor", "--json", "--verify", &path("fig2.dhg")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["vertices"], 16);
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
    assert_eq!(v["factors"][0]["classes"], serde_json::json!([1, 3]));
    assert_eq!(v["factors"][1]["arcs"][0]["tail"], serde_json::json!(["1", "2"]));
    assert_eq!(v["coordinates"].as_array().unwrap().len(), 16);
    assert_eq!(v["verification"]["oracle"], "skipped");
}

#[test]
fn exit_codes() {
    assert_eq!(hyperfactor(&["factor", &path("disconnected.dhg")]).status.code(), Some(2));
    assert_eq!(hyperfactor(&["factor", "/nonexistent/file.dhg"]).status.code(), Some(2));
    assert_eq!(hyperfactor(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hyperfactor(&["gen", "--n", "two"]).status.code(), Some(2));
    assert_eq!(hyperfactor(&["gen", "--n", "5", "--factors", "2"]).status.code(), Some(2));
    assert_eq!(hyperfactor(&["bench", "--max-n", "1000"]).status.code(), Some(2));
    assert_eq!(hyperfactor(&["product", &path("fig1.dhg")]).status.code(), Some(2));
    assert_eq!(hyperfactor(&["--help"]).status.code(), Some(0));
    let bad = with_stdin(&["factor", "-"], "dhg 1\narc 1 -> 2\narc 3 -> 3\n");
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("<stdin>: line 3: loop"));
}

#[test]
fn product_reproduces_fig2() {
    let out = hyperfactor(&["product", &path("fig1.dhg"), &path("m2.dhg")]);
    assert_eq!(out.status.code(), Some(0));
    let p = parse(&stdout(&out)).unwrap();
    let fig2 = parse(&std::fs::read_to_string(fixture("fig2.dhg")).unwrap()).unwrap();
    assert!(isomorphic(&p, &fig2).unwrap().is_some());
    assert!(p.vertex_by_name("11|1").is_some());
}

#[test]
fn product_with_the_unit() {
    let fig1 = parse(&std::fs::read_to_string(fixture("fig1.dhg")).unwrap()).unwrap();
    let out = hyperfactor(&["product", &path("fig1.dhg"), &path("k1.dhg")]);
    assert!(isomorphic(&parse(&stdout(&out)).unwrap(), &fig1).unwrap().is_some());
    let out = hyperfactor(&["product", &path("k1.dhg"), &path("k1.dhg")]);
    assert_eq!(stdout(&out), "dhg 1\nvertex 1|1\n");
}

#[test]
fn section_edges() {
    let out = with_stdin(&["section", "-"], "dhg 1\narc 1 -> 2 3\n");
    assert_eq!(stdout(&out), "1 2\n1 3\n2 3\n");
    let out = hyperfactor(&["section", &path("fig1.dhg")]);
    assert_eq!(stdout(&out).lines().count(), 16);
    assert_eq!(stdout(&hyperfactor(&["section", &path("k1.dhg")])), "");
}

#[test]
fn verify_against_claimed_factors() {
    let ok = hyperfactor(&["verify", &path("fig2.dhg"), &path("m2.dhg"), &path("fig1.dhg")]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(stdout(&ok).contains("claimed factors: match"));
    let wrong = hyperfactor(&["verify", &path("fig2.dhg"), &path("m2.dhg"), &path("m2.dhg")]);
    assert_eq!(wrong.status.code(), Some(3));
}

#[test]
fn gen_is_deterministic_and_seed_can_come_from_the_environment() {
    let a = hyperfactor(&["gen", "--seed", "7", "--n", "6"]);
    let b = hyperfactor(&["gen", "--seed", "7", "--n", "6"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_hyperfactor"))
        .args(["gen", "--n", "6"])
        .env("HYPERFACTOR_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
    let h = parse(&stdout(&a)).unwrap();
    assert_eq!(h.n(), 6);
}

#[test]
fn factor_of_gen_product_finds_the_primes() {
    let out = hyperfactor(&["gen", "--seed", "3", "--n", "24", "--factors", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let factored = with_stdin(&["factor", "-"], &stdout(&out));
    assert_eq!(factored.status.code(), Some(0));
    assert!(stdout(&factored).contains("# prime factors: 3\n"));
}

#[test]
fn bench_table_shape() {
    let out = hyperfactor(&["bench", "--min-n", "16", "--max-n", "64", "--repeats", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 4);
    assert!(text.contains("# slope log(t) vs log(m): "));
}

#[test]
fn end_to_end_product_then_factor() {
    let dir = std::env::temp_dir().join(format!("hyperfactor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for seed in 0..10u64 {
        let cfg = GeneratorConfig::new(seed, 2).with_rank(3);
        let (_, primes) = random_product_with_sizes(&cfg, &[2 + (seed % 3) as usize, 3]).unwrap();
        let files: Vec<String> = primes
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let f = dir.join(format!("p{seed}_{i}.dhg"));
                std::fs::write(&f, serialize(p, None)).unwrap();
                f.to_str().unwrap().to_owned()
            })
            .collect();
        let prod = hyperfactor(&["product", &files[0], &files[1]]);
        let prod_file = dir.join(format!("prod{seed}.dhg"));
        std::fs::write(&prod_file, &prod.stdout).unwrap();
        let mut args = vec!["verify", prod_file.to_str().unwrap()];
        args.extend(files.iter().map(String::as_str));
        let v = hyperfactor(&args);
        assert_eq!(v.status.code(), Some(0), "seed {seed}: {}", String::from_utf8_lossy(&v.stderr));
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

proptest! {
    #[test]
    fn serialization_round_trips(seed in any::<u64>(), n in 1usize..10, r in 2usize..5) {
        let h = random_connected_hypergraph(&GeneratorConfig::new(seed, n).with_rank(r)).unwrap();
        let text = serialize(&h, None);
        let again = parse(&text).unwrap();
        prop_assert_eq!(serialize(&again, None), text);
        prop_assert!(isomorphic(&h, &again).unwrap().is_some());
    }
}
