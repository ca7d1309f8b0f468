use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const STAR: &str = r#"{"n": 7, "edges": [[0,1],[0,2],[0,3],[1,4],[2,5],[3,6]], "root": 0, "target_set": [4,5,6], "budget": 1}"#;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_firefighter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn kstar_max_and_min() {
    let dir = TempDir::new().unwrap();
    let star = write(dir.path(), "star.json", STAR);
    let max = stdout_json(&bin(&[
        "solve",
        s(&star),
        "--algo",
        "kstar",
        "--objective",
        "max",
    ]));
    assert_eq!(max["saved_target_weight"], 2);
    assert_eq!(max["algorithm_tag"], "kstar");
    let min = stdout_json(&bin(&[
        "solve",
        s(&star),
        "--algo",
        "kstar",
        "--objective",
        "min",
    ]));
    assert_eq!(min["burned_target_weight"], 1);
}

#[test]
fn result_file_is_written_atomically_to_the_path() {
    let dir = TempDir::new().unwrap();
    let star = write(dir.path(), "star.json", STAR);
    let out = dir.path().join("result.json");
    let status = bin(&["solve", s(&star), "-o", s(&out)]).status;
    assert!(status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["saved_target_weight"], 2);
    // Only the result is left behind, no temporary files.
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn network_dump_lists_arcs() {
    let dir = TempDir::new().unwrap();
    let star = write(dir.path(), "star.json", STAR);
    let net = dir.path().join("net.txt");
    assert!(bin(&[
        "solve",
        s(&star),
        "--algo",
        "kstar",
        "--dump-network",
        s(&net)
    ])
    .status
    .success());
    let text = fs::read_to_string(&net).unwrap();
    assert!(text.starts_with("nodes "));
    let arcs: Vec<Vec<i64>> = text
        .lines()
        .filter_map(|l| l.strip_prefix("arc "))
        .map(|l| l.split(' ').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert!(arcs.iter().all(|a| a.len() == 4));
    assert!(arcs.iter().any(|a| a[3] < 0));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let complete = dir.path().join("complete.json");
    assert!(bin(&[
        "generate",
        "--family",
        "complete",
        "--h",
        "3",
        "--d",
        "3",
        "-o",
        s(&complete)
    ])
    .status
    .success());
    // Not a caterpillar: precondition.
    assert_eq!(
        bin(&["solve", s(&complete), "--algo", "caterpillar"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        bin(&["solve", s(&complete), "--algo", "corridor"])
            .status
            .code(),
        Some(4)
    );
    // 40 vertices is past the default oracle cap.
    assert_eq!(
        bin(&["solve", s(&complete), "--algo", "oracle"])
            .status
            .code(),
        Some(3)
    );
    let ok = bin(&[
        "solve",
        s(&complete),
        "--algo",
        "oracle",
        "--oracle-cap",
        "40",
    ]);
    // One firefighter: a child, a grandchild and a leaf, 9 + 3 + 1.
    assert_eq!(stdout_json(&ok)["saved_target_weight"], 13);

    let unknown = write(
        dir.path(),
        "bad.json",
        r#"{"n": 1, "edges": [], "root": 0, "target_set": [], "x": 1}"#,
    );
    assert_eq!(bin(&["solve", s(&unknown)]).status.code(), Some(2));
    assert_eq!(bin(&["solve", "missing.json"]).status.code(), Some(2));
    assert_eq!(bin(&["solve"]).status.code(), Some(2));
    assert_eq!(
        bin(&["generate", "--family", "complete", "--h", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn decision_on_complete_and_corridor_trees() {
    let dir = TempDir::new().unwrap();
    let complete = dir.path().join("c.json");
    bin(&[
        "generate",
        "--family",
        "complete",
        "--h",
        "2",
        "--d",
        "2",
        "-o",
        s(&complete),
    ]);
    let no = stdout_json(&bin(&["solve", s(&complete), "--objective", "decision"]));
    assert_eq!(no["decision"], false);
    assert!(no["strategy"].is_null());

    // The root has two children, vertex 1 only one.
    let lopsided = write(
        dir.path(),
        "l.json",
        r#"{"n": 4, "edges": [[0,1],[0,2],[1,3]], "root": 0, "target_set": [2,3]}"#,
    );
    let yes = stdout_json(&bin(&["solve", s(&lopsided), "--objective", "decision"]));
    assert_eq!(yes["decision"], true);
    assert_eq!(yes["saved_target_weight"], 2);
}

#[test]
fn simulate_reports_a_partition_and_the_violated_condition() {
    let dir = TempDir::new().unwrap();
    let star = write(dir.path(), "star.json", STAR);
    let good = write(
        dir.path(),
        "good.json",
        r#"{"moves": [{"vertex": 1, "time": 1}]}"#,
    );
    let out = stdout_json(&bin(&["simulate", s(&star), s(&good), "--trace"]));
    let mut all: Vec<u64> = out["burned"]
        .as_array()
        .unwrap()
        .iter()
        .chain(out["saved"].as_array().unwrap())
        .map(|v| v.as_u64().unwrap())
        .collect();
    all.sort_unstable();
    assert_eq!(all, (0..7).collect::<Vec<_>>());
    assert!(out["trace"].is_array());

    let over = write(
        dir.path(),
        "over.json",
        r#"{"moves": [{"vertex": 1, "time": 1}, {"vertex": 2, "time": 1}]}"#,
    );
    let res = bin(&["simulate", s(&star), s(&over)]);
    assert_eq!(res.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&res.stderr).contains("condition 2"));
}

#[test]
fn generate_is_deterministic() {
    for args in [
        vec!["--family", "complete", "--h", "2", "--d", "3"],
        vec![
            "--family", "random", "--n", "12", "--shape", "kstar", "--k", "2", "--seed", "42",
        ],
        vec![
            "--family",
            "random",
            "--n",
            "9",
            "--targets",
            "sample",
            "--max-weight",
            "4",
            "--seed",
            "7",
        ],
    ] {
        let a = bin(&[&["generate"], args.as_slice()].concat());
        let b = bin(&[&["generate"], args.as_slice()].concat());
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
    let complete = stdout_json(&bin(&[
        "generate", "--family", "complete", "--h", "2", "--d", "3",
    ]));
    assert_eq!(complete["n"], 13);
    assert_eq!(complete["meta"]["family"], "complete");
}

#[test]
fn greedy_on_the_pathology_saves_nine_pendants() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("p.json");
    assert!(bin(&[
        "generate",
        "--family",
        "greedy-pathology",
        "--h",
        "4",
        "--b",
        "1",
        "-o",
        s(&path)
    ])
    .status
    .success());
    let inst: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let res = stdout_json(&bin(&["solve", s(&path), "--algo", "greedy"]));
    let strat = write(dir.path(), "s.json", &res["strategy"].to_string());
    let out = stdout_json(&bin(&["simulate", s(&path), s(&strat)]));
    let saved: Vec<&Value> = out["saved"].as_array().unwrap().iter().collect();
    let pendants = inst["meta"]["pendants"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|g| g.as_array().unwrap());
    assert_eq!(pendants.filter(|p| saved.contains(p)).count(), 9);
}

#[test]
fn npc_reduction_from_a_file() {
    let dir = TempDir::new().unwrap();
    let inner = write(
        dir.path(),
        "inner.json",
        r#"{"n": 3, "edges": [[0,1],[1,2]], "root": 0, "target_set": [2]}"#,
    );
    let out = stdout_json(&bin(&[
        "generate",
        "--family",
        "npc-reduction",
        "--input",
        s(&inner),
        "--b",
        "1",
    ]));
    assert_eq!(out["n"], 15);
    assert_eq!(out["budget"], 2);
    let max = stdout_json(&bin(&[
        "generate",
        "--family",
        "maxsave-reduction",
        "--input",
        s(&inner),
    ]));
    assert_eq!(max["meta"]["threshold_k"], 45);
    let min = stdout_json(&bin(&[
        "generate",
        "--family",
        "minsave-reduction",
        "--input",
        s(&inner),
        "--epsilon",
        "0.8",
    ]));
    assert_eq!(min["meta"]["pendants_per_leaf"], 10);
}

#[test]
fn bench_empty_directory() {
    let dir = TempDir::new().unwrap();
    let out = bin(&["bench", s(dir.path())]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 1);
}

#[test]
fn bench_kstars_agree_with_the_oracle() {
    let dir = TempDir::new().unwrap();
    for seed in 0..10 {
        let seed = seed.to_string();
        let path = dir.path().join(format!("star{seed}.json"));
        let args = [
            "generate",
            "--family",
            "random",
            "--n",
            "11",
            "--shape",
            "kstar",
            "--k",
            "3",
            "--max-weight",
            "5",
            "--seed",
            &seed,
            "-o",
            s(&path),
        ];
        assert!(bin(&args).status.success());
    }
    write(dir.path(), "broken.json", "{");
    let json = TempDir::new().unwrap();
    let table = json.path().join("t.json");
    let out = bin(&[
        "bench",
        s(dir.path()),
        "--algos",
        "kstar,oracle",
        "--repeat",
        "2",
        "--json",
        s(&table),
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(&table).unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 21);
    let broken: Vec<_> = rows
        .iter()
        .filter(|r| r["instance"] == "broken.json")
        .collect();
    assert_eq!(broken.len(), 1);
    assert!(broken[0]["error"].is_string());
    assert!(rows
        .iter()
        .filter(|r| r["instance"] != "broken.json")
        .all(|r| r["agrees"] == true));
}

#[test]
fn bench_ratio_grows_on_the_pathology() {
    let dir = TempDir::new().unwrap();
    for h in 3..=5 {
        let h = h.to_string();
        let path = dir.path().join(format!("p{h}.json"));
        assert!(bin(&[
            "generate",
            "--family",
            "greedy-pathology",
            "--h",
            &h,
            "-o",
            s(&path)
        ])
        .status
        .success());
    }
    let args = [
        "bench",
        s(dir.path()),
        "--algos",
        "greedy,caterpillar",
        "--oracle-cap",
        "64",
        "--no-timing",
        "--json",
    ];
    let t1 = dir.path().join("t1.out");
    let first = bin(&[&args[..], &[s(&t1)]].concat());
    let second = bin(&[&args[..], &[s(&dir.path().join("t2.out"))]].concat());
    assert_eq!(first.stdout, second.stdout);

    let v: Value = serde_json::from_str(&fs::read_to_string(&t1).unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let ratios: Vec<f64> = rows
        .iter()
        .filter(|r| r["algo"] == "greedy")
        .map(|r| r["ratio"].as_f64().unwrap())
        .collect();
    assert_eq!(ratios.len(), 3);
    assert!(ratios.windows(2).all(|w| w[1] > w[0]), "{ratios:?}");
    assert!(rows.iter().all(|r| r.get("time_ms").is_none()));
}
