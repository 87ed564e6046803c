//! End-to-end tests of the `seqseed` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use seqseed::experiment::estimate_tsn;
use seqseed::io::read_graph;
use seqseed::ranking::rank;
use seqseed::rng::{derive_seed, name_key, rng_from_seed};
use seqseed::{seed_count, RankingMethod};

fn seqseed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqseed")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = seqseed(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fails(args: &[&str]) -> String {
    let out = seqseed(args);
    assert!(!out.status.success(), "{args:?} should fail");
    String::from_utf8(out.stderr).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_is_reproducible_and_reports_counts() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    let stdout = ok(&["gen", "ba", "--n", "30", "--m", "2", "--seed", "7", "--out", p(&a)]);
    assert_eq!(stdout.trim(), "nodes 30 edges 57");
    ok(&["gen", "ba", "--n", "30", "--m", "2", "--seed", "7", "--out", p(&b)]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(read_graph(&a).unwrap().0.node_count(), 30);
}

#[test]
fn gen_er_without_edges_keeps_isolated_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("er.txt");
    ok(&["gen", "er", "--n", "100", "--p", "0", "--out", p(&path)]);
    let (g, _) = read_graph(&path).unwrap();
    assert_eq!((g.node_count(), g.edge_count()), (100, 0));
}

#[test]
fn bad_flags_are_rejected_before_any_work() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    fails(&["gen", "ba", "--n", "30", "--m", "2", "--colour", "red", "--out", p(&path)]);
    assert!(!path.exists());
    let err = fails(&["gen", "ba", "--n", "2", "--m", "3", "--out", p(&path)]);
    assert!(err.contains("error"), "{err}");
    assert!(!path.exists());
    fails(&["gen", "er", "--n", "10", "--p", "1.5", "--out", p(&path)]);
    fails(&["rank", "--graph", p(&path), "--method", "XX"]);
    fails(&["gen", "ba", "--n", "30", "--m", "2", "--seed", "1", "--entropy"]);
}

#[test]
fn malformed_edge_list_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "a b\n# comment\nb c d\n").unwrap();
    let err = fails(&["rank", "--graph", p(&path), "--method", "D"]);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn rank_writes_every_node_once() {
    let dir = tempfile::tempdir().unwrap();
    let (graph, out) = (dir.path().join("g.txt"), dir.path().join("rank.csv"));
    ok(&["gen", "ba", "--n", "40", "--m", "2", "--out", p(&graph)]);
    ok(&["rank", "--graph", p(&graph), "--method", "PR", "--out", p(&out)]);
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("node_label,method,score,rank_position"));
    let positions: Vec<usize> = lines.map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(positions, (1..=40).collect::<Vec<_>>());
}

#[test]
fn simulate_without_diffusion_covers_exactly_the_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    ok(&["gen", "er", "--n", "100", "--p", "0.05", "--out", p(&graph)]);
    let stdout = ok(&[
        "simulate", "--graph", p(&graph), "--strategy", "SN", "--ranking", "D", "--sp", "0.05", "--pp", "0", "--runs", "20",
    ]);
    assert!(stdout.contains("mean coverage 5.00000"), "{stdout}");
    assert!(stdout.contains("mean duration 0.00000"), "{stdout}");
}

#[test]
fn simulate_tsn_derives_its_reference_duration() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    ok(&["gen", "ba", "--n", "200", "--m", "2", "--out", p(&graph)]);
    let stdout = ok(&[
        "simulate", "--graph", p(&graph), "--strategy", "SQ_TSN", "--ranking", "D", "--sp", "0.05", "--pp", "0.2", "--runs",
        "50", "--seed", "9",
    ]);
    let derived: usize = stdout
        .lines()
        .find_map(|l| l.strip_prefix("derived t_sn "))
        .expect("derived t_sn reported")
        .parse()
        .unwrap();
    let (g, _) = read_graph(&graph).unwrap();
    let ranking = rank(&g, RankingMethod::Degree, &mut rng_from_seed(derive_seed(&[9, name_key("ranking")])));
    let mut rng = rng_from_seed(derive_seed(&[9, name_key("t_sn")]));
    let n = seed_count(&g, 0.05).unwrap();
    assert_eq!(derived, estimate_tsn(&g, &ranking, n, 0.2, 50, &mut rng).unwrap());
    assert!(stdout.contains("strategy SQ_TSN"));
}

#[test]
fn simulate_with_the_same_seed_writes_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    ok(&["gen", "ba", "--n", "150", "--m", "3", "--out", p(&graph)]);
    let run = |out: &Path| {
        ok(&[
            "simulate", "--graph", p(&graph), "--strategy", "SQ_kPS_R", "--k", "2", "--ranking", "D2", "--sp", "0.04", "--pp",
            "0.15", "--runs", "5", "--seed", "42", "--out-dir", p(out),
        ])
    };
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert_eq!(run(&a), run(&b));
    for name in ["trace_0000.csv", "trace_0004.csv", "mean_curve.csv"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
    fails(&[
        "simulate", "--graph", p(&graph), "--strategy", "SQ_kPS_R", "--ranking", "D2", "--sp", "0.04", "--pp", "0.15",
    ]);
}

fn write_config(dir: &Path, body: &str) -> std::path::PathBuf {
    let path = dir.join("grid.json");
    fs::write(&path, body).unwrap();
    path
}

#[test]
fn empty_strategy_list_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"graphs": [{"name": "g", "generator": {"kind": "ba", "n": 50, "m": 2, "seed": 1}}],
            "pp_values": [0.1], "sp_values": [0.05], "rankings": ["D"], "strategies": [], "replications": 3}"#,
    );
    let err = fails(&["grid", "--config", p(&cfg), "--out-dir", p(&dir.path().join("out"))]);
    assert!(err.contains("strategies") && err.contains("grid.json"), "{err}");
    let typo = write_config(
        dir.path(),
        r#"{"graphs": [], "pp_values": [0.1], "sp_values": [0.05], "rankings": ["D"], "strategies": ["SN"],
            "replications": 3, "replicatoins": 4}"#,
    );
    let err = fails(&["grid", "--config", p(&typo), "--out-dir", p(&dir.path().join("out"))]);
    assert!(err.contains("replicatoins"), "{err}");
}

const SMALL_GRID: &str = r#"{
    "graphs": [
        {"name": "BA(300,3)", "generator": {"kind": "ba", "n": 300, "m": 3, "seed": 11}},
        {"name": "file", "path": "edges.txt"}
    ],
    "pp_values": [0.05, 0.2],
    "sp_values": [0.02, 0.05],
    "rankings": ["R", "D", "PR"],
    "strategies": ["SN", "SQ_1PS_R", {"kind": "SQ_kPS", "k": 2}, "SQ_TSN", "SQ_TSN_R", "SQ_1PS_B"],
    "replications": 20,
    "master_seed": 5
}"#;

#[test]
fn grid_and_summarize_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["gen", "er", "--n", "200", "--p", "0.02", "--seed", "3", "--out", p(&dir.path().join("edges.txt"))]);
    let cfg = write_config(dir.path(), SMALL_GRID);
    let (one, two) = (dir.path().join("one"), dir.path().join("two"));
    let stdout = ok(&["grid", "--config", p(&cfg), "--out-dir", p(&one), "--jobs", "1"]);
    assert_eq!(stdout.trim(), "configs 24 records 2880");
    let out = Command::new(env!("CARGO_BIN_EXE_seqseed"))
        .args(["grid", "--config", p(&cfg), "--out-dir", p(&two)])
        .env("SEQSEED_JOBS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    let records = fs::read(one.join("records.csv")).unwrap();
    assert_eq!(records, fs::read(two.join("records.csv")).unwrap());

    let stdout = ok(&["summarize", "--records", p(&one.join("records.csv")), "--out-dir", p(&one)]);
    assert_eq!(stdout.trim(), "configs 24");

    let mut summary = csv::Reader::from_path(one.join("config_summary.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = summary.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 24);
    assert_eq!(&rows[0][1], "BA(300,3)");
    assert!(rows.iter().all(|r| r.len() == 9));

    let mut table = csv::Reader::from_path(one.join("strategy_comparison.csv")).unwrap();
    let headers = table.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let rows: Vec<csv::StringRecord> = table.records().map(Result::unwrap).collect();
    // five strategies against SN, then SQ_1PS_R against the other four
    assert_eq!(rows.len(), 9);
    let best = rows.iter().find(|r| &r[0] == "SN" && &r[1] == "SQ_1PS_R").unwrap();
    let wins: f64 = best[col("win_fraction")].parse().unwrap();
    let p_value: f64 = best[col("wilcoxon_p")].parse().unwrap();
    let hl: f64 = best[col("hl_delta")].parse().unwrap();
    assert!(wins > 0.5 && p_value < 0.01 && hl > 0.0, "{best:?}");

    let ratios = csv::Reader::from_path(one.join("ratios.csv")).unwrap().into_records().count();
    assert_eq!(ratios, 24 * 5);
}

#[test]
fn full_size_grid_has_1875_configurations() {
    let dir = tempfile::tempdir().unwrap();
    let graphs: Vec<String> = (0..15)
        .map(|i| format!(r#"{{"name": "N{}", "generator": {{"kind": "ba", "n": 40, "m": 2, "seed": {i}}}}}"#, i + 1))
        .collect();
    let cfg = write_config(
        dir.path(),
        &format!(
            r#"{{"graphs": [{}], "pp_values": [0.05, 0.1, 0.15, 0.2, 0.25], "sp_values": [0.01, 0.02, 0.03, 0.04, 0.05],
                "rankings": ["R", "D", "D2", "PR", "EV"], "strategies": ["SN", "SQ_1PS_R"], "replications": 1}}"#,
            graphs.join(",")
        ),
    );
    let out = dir.path().join("out");
    assert_eq!(ok(&["grid", "--config", p(&cfg), "--out-dir", p(&out)]).trim(), "configs 1875 records 3750");
    assert_eq!(ok(&["summarize", "--records", p(&out.join("records.csv")), "--out-dir", p(&out)]).trim(), "configs 1875");
    let rows = csv::Reader::from_path(out.join("config_summary.csv")).unwrap().into_records().count();
    assert_eq!(rows, 1875);
}

#[test]
fn summarize_without_baseline_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("records.csv");
    fs::write(
        &path,
        "config_id,graph,pp,sp,ranking,strategy,run_id,coverage,duration,t_reach_csn,coverage_at_tsn\n\
         0,g,0.1,0.05,D,SQ_1PS_R,0,12,7,3,9\n",
    )
    .unwrap();
    let err = fails(&["summarize", "--records", p(&path), "--out-dir", p(dir.path())]);
    assert!(err.contains('0') && err.to_lowercase().contains("baseline"), "{err}");
}
