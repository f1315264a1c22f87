use std::path::Path;
use std::process::{Command, Output};

use stabci::library::BUILTIN_NAMES;
use stabci::{ci_bob_only_noise, Bipartition, Graph, Limits, PauliChannelSpec, QubitSubset};
use tempfile::TempDir;

fn stabci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabci"))
        .args(args)
        .env_remove("STABCI_MAX_ENUM")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = stabci(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

struct Row {
    x: f64,
    s_b: f64,
    s_ab: f64,
    ci: f64,
    method: String,
    state: String,
}

fn read_rows(path: &Path) -> Vec<Row> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        [
            "noise_param",
            "S_B_bits",
            "S_AB_bits",
            "coherent_information_bits",
            "method",
            "state",
            "n",
            "k"
        ]
    );
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            let f = |i: usize| r[i].parse::<f64>().unwrap();
            Row {
                x: f(0),
                s_b: f(1),
                s_ab: f(2),
                ci: f(3),
                method: r[4].to_string(),
                state: r[5].to_string(),
            }
        })
        .collect()
}

fn sweep_csv(dir: &TempDir, file: &str, args: &[&str]) -> Vec<Row> {
    let path = dir.path().join(file);
    let mut all = vec!["ci"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--csv", path.to_str().unwrap()]);
    ok(&all);
    read_rows(&path)
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn bell_depolarizing_sweep_has_101_rows_ending_at_one() {
    let dir = TempDir::new().unwrap();
    let rows = sweep_csv(
        &dir,
        "bell.csv",
        &["--builtin", "bell", "--channel", "depol:{grid}", "--grid", "0:1:101", "--scope", "all"],
    );
    assert_eq!(rows.len(), 101);
    let last = rows.last().unwrap();
    assert_eq!(last.x, 1.0);
    assert!((last.ci - 1.0).abs() < 1e-12);
    assert!((rows[0].ci + 1.0).abs() < 1e-12);
    assert!(rows.iter().all(|r| r.state == "bell" && r.method == "all_qubit_cosets"));
}

/// Largest grid point in `[1/2, 1]` where the curve is not yet positive.
fn zero_crossing(rows: &[Row]) -> f64 {
    rows.iter()
        .filter(|r| r.x >= 0.5 && r.ci <= 0.0)
        .map(|r| r.x)
        .fold(0.5, f64::max)
}

#[test]
fn rep7_tolerates_more_dephasing_than_bell() {
    let dir = TempDir::new().unwrap();
    let rep7 = sweep_csv(&dir, "rep7.csv", &["--builtin", "rep7", "--channel", "dephase:{grid}", "--scope", "all"]);
    let bell = sweep_csv(&dir, "bell.csv", &["--builtin", "bell", "--channel", "dephase:{grid}", "--scope", "all"]);
    assert_eq!(rep7.len(), 101);
    assert!(rep7.iter().all(|r| r.method == "graph_dephasing"));
    assert!(zero_crossing(&rep7) < zero_crossing(&bell));
}

#[test]
fn graph_file_bob_scope_matches_library() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.graph", "3\n1 2\n1 3\n2 3\n");
    let rows = sweep_csv(
        &dir,
        "k3.csv",
        &["--graph", &k3, "--bipartition", "A:1", "--channel", "depol:{grid}", "--grid", "0:1:11", "--scope", "bob"],
    );
    assert_eq!(rows.len(), 11);
    let h = Graph::complete(3).stabilizer_group();
    let bip = Bipartition::from_alice(QubitSubset::new(3, [0]).unwrap());
    for r in &rows {
        assert_eq!(r.state, "k3");
        let ch = PauliChannelSpec::uniform_depolarizing(3, r.x)
            .unwrap()
            .with_support(bip.bob())
            .unwrap();
        let lib = ci_bob_only_noise(&h, &bip, &ch, &Limits::default()).unwrap();
        assert_eq!(r.ci, lib.ci);
        assert_eq!(r.s_b, lib.s_b);
        assert_eq!(r.s_ab, lib.s_ab);
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["ci", "--builtin", "c422_b", "--channel", "depol:{grid}", "--grid", "0:1:21"];
    assert_eq!(ok(&args), ok(&args));
    let dir = TempDir::new().unwrap();
    let json = dir.path().join("out.json");
    let mut with_json = args.to_vec();
    with_json.extend_from_slice(&["--json", json.to_str().unwrap()]);
    assert!(ok(&with_json).is_empty());
    let first = std::fs::read(&json).unwrap();
    ok(&with_json);
    assert_eq!(first, std::fs::read(&json).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["state"], "c422_b");
    assert_eq!(v["rows"].as_array().unwrap().len(), 21);
    assert!(v["rows"][0]["terms"].as_array().is_some());
}

#[test]
fn every_builtin_sweeps_under_both_scopes() {
    for name in BUILTIN_NAMES {
        for scope in ["all", "bob"] {
            let out = ok(&["ci", "--builtin", name, "--channel", "depol:{grid}", "--grid", "0:1:3", "--scope", scope]);
            assert_eq!(out.lines().count(), 4, "{name} {scope}");
        }
    }
}

#[test]
fn reduction_and_direct_paths_agree() {
    let dir = TempDir::new().unwrap();
    let base = ["--builtin", "c422_a", "--channel", "dephase:{grid}", "--grid", "0:1:11"];
    let fast = sweep_csv(&dir, "fast.csv", &base);
    let mut slow_args = base.to_vec();
    slow_args.push("--no-reduction");
    let slow = sweep_csv(&dir, "slow.csv", &slow_args);
    assert!(fast.iter().all(|r| r.method == "graph_dephasing"));
    assert!(slow.iter().all(|r| r.method == "all_qubit_cosets"));
    for (a, b) in fast.iter().zip(&slow) {
        assert!((a.ci - b.ci).abs() < 1e-9);
    }
}

#[test]
fn prep_noise_sweep_uses_convolution() {
    let dir = TempDir::new().unwrap();
    let rows = sweep_csv(
        &dir,
        "prep.csv",
        &["--builtin", "bell", "--channel", "depol:{grid}", "--grid", "0:1:5", "--prep-lambda0", "0.9"],
    );
    assert!(rows.iter().all(|r| r.method == "prep_post_convolution"));
    assert!(rows.last().unwrap().ci < 1.0);
}

fn enumerate(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["enumerate"];
    all.extend_from_slice(args);
    serde_json::from_str(&ok(&all)).unwrap()
}

#[test]
fn enumerate_k3_deleted_tableau() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "k3_deleted.txt", "ZZ\nXZ\nZX\n");
    let v = enumerate(&["--generators", &file]);
    assert_eq!(v["error_basis"], serde_json::json!([1]));
    assert_eq!(v["weight_tables"], serde_json::json!([[1, 2, 5], [0, 4, 4]]));
    let k3 = write(&dir, "k3.graph", "3\n1 2\n1 3\n2 3\nA: 1\n");
    let w = enumerate(&["--graph", &k3, "--part", "deleted"]);
    assert_eq!(w["weight_tables"], v["weight_tables"]);
    assert_eq!(w["rank_preserved"], true);
}

#[test]
fn enumerate_full_rank_tableau_has_one_coset() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "full.txt", "XI\nZI\nIX\nIZ\n");
    let v = enumerate(&["--generators", &file, "--channel", "depol:0.3"]);
    assert_eq!(v["num_cosets"], 1);
    assert_eq!(v["weight_tables"], serde_json::json!([[1, 6, 9]]));
    assert_eq!(v["distribution"]["probs"], serde_json::json!([1.0]));
}

/// Weight counts of the cosets of `⟨XX, ZZ⟩`, grouped by brute force over all
/// 16 two-qubit Paulis.
fn bell_cosets_by_brute_force() -> Vec<Vec<u64>> {
    let letters = ['I', 'X', 'Y', 'Z'];
    let anticommutes_with = |p: char, q: char| p != 'I' && q != 'I' && p != q;
    let mut by_syndrome = std::collections::BTreeMap::<(bool, bool), Vec<u64>>::new();
    for a in letters {
        for b in letters {
            let s_xx = anticommutes_with(a, 'X') ^ anticommutes_with(b, 'X');
            let s_zz = anticommutes_with(a, 'Z') ^ anticommutes_with(b, 'Z');
            let w = (a != 'I') as usize + (b != 'I') as usize;
            by_syndrome.entry((s_xx, s_zz)).or_insert_with(|| vec![0; 3])[w] += 1;
        }
    }
    let mut rows: Vec<Vec<u64>> = by_syndrome.into_values().collect();
    rows.sort();
    rows
}

#[test]
fn enumerate_bell_tableau() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "bell.txt", "XX\nZZ\n");
    let v = enumerate(&["--generators", &file]);
    assert_eq!(v["num_cosets"], 4);
    let mut rows: Vec<Vec<u64>> = serde_json::from_value(v["weight_tables"].clone()).unwrap();
    rows.sort();
    assert_eq!(rows, bell_cosets_by_brute_force());
}

#[test]
fn convert_yy_gives_three_vertex_graph_code() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "yy.txt", "YY\n");
    let graph = dir.path().join("yy.graph");
    let out = ok(&["convert", "--generators", &file, "--graph-out", graph.to_str().unwrap()]);
    assert!(out.contains("verification: PASS"));
    let (g, bip) = stabci::io::parse_graph(&std::fs::read_to_string(&graph).unwrap()).unwrap();
    assert_eq!(g.num_vertices(), 3);
    assert_eq!(bip.unwrap().alice().one_based(), vec![3]);
}

#[test]
fn convert_graph_state_group_has_no_appended_qubits() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "k3.txt", "XZZ\nZXZ\nZZX\n");
    let out = ok(&["convert", "--generators", &file]);
    assert!(out.contains("appended qubits (after the 3 code qubits): \n"));
    assert!(out.contains("verification: PASS"));
}

#[test]
fn convert_five_qubit_code() {
    let dir = TempDir::new().unwrap();
    let record = dir.path().join("five.rec");
    let out = ok(&["convert", "--builtin", "five_qubit", "--record-out", record.to_str().unwrap()]);
    assert!(out.contains("verification: PASS"));
    let rec = stabci::io::parse_record(&std::fs::read_to_string(&record).unwrap()).unwrap();
    assert_eq!(rec.num_qubits(), 6);
}

#[test]
fn convert_rejects_anticommuting_generators() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "bad.txt", "XI\nZI\n");
    assert_eq!(stabci(&["convert", "--generators", &file]).status.code(), Some(2));
}

#[test]
fn verify_bell_and_c422() {
    let out = ok(&["verify", "--builtin", "bell", "--channel", "depol:{grid}", "--grid", "0:1:11"]);
    assert!(out.trim_end().ends_with("PASS"));
    assert_eq!(out.lines().count(), 12);
    let out = ok(&["verify", "--builtin", "c422_a", "--channel", "dephase:{grid}", "--scope", "bob"]);
    assert!(out.trim_end().ends_with("PASS"));
}

#[test]
fn verify_random_states_is_seeded() {
    let args = ["verify", "--random", "4", "--qubits", "5", "--seed", "3", "--channel", "pauli:0.7,0.1,0.05,0.15"];
    let a = ok(&args);
    assert!(a.trim_end().ends_with("PASS"));
    assert_eq!(a, ok(&args));
}

#[test]
fn verify_refuses_large_instances() {
    let dir = TempDir::new().unwrap();
    let mut text = String::from("13\n");
    for v in 2..=13 {
        text.push_str(&format!("1 {v}\n"));
    }
    text.push_str("A: 1\n");
    let file = write(&dir, "star13.graph", &text);
    let out = stabci(&["verify", "--graph", &file, "--channel", "depol:{grid}"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at most 12"));
}

#[test]
fn validation_errors_exit_with_two() {
    for args in [
        vec!["ci", "--builtin", "bell", "--channel", "depol:2"],
        vec!["ci", "--builtin", "nope", "--channel", "depol:0.5"],
        vec!["ci", "--builtin", "bell", "--channel", "depol:{grid}", "--grid", "0:2:5"],
        vec!["ci", "--builtin", "bell", "--channel", "depol:0.5", "--grid", "0:1:5"],
        vec!["ci", "--channel", "depol:0.5"],
        vec!["ci", "--builtin", "bell", "--graph", "x.graph", "--channel", "depol:0.5"],
    ] {
        let out = stabci(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn rank_drop_is_reported() {
    let dir = TempDir::new().unwrap();
    // Alice = both ends of a path: deleting them loses a generator.
    let file = write(&dir, "path.graph", "3\n1 2\n2 3\nA: 1 3\n");
    let out = stabci(&["ci", "--graph", &file, "--channel", "depol:0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rank"));
}

#[test]
fn enumeration_cap_exits_with_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_stabci"))
        .args(["enumerate", "--builtin", "c833"])
        .env("STABCI_MAX_ENUM", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
