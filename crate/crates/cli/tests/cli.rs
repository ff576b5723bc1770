use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fpec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpec"))
        .args(args)
        .output()
        .unwrap()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = fpec(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_fixtures() {
    let dir = TempDir::new().unwrap();
    let tp = gen(dir.path(), "tp.pmap", &["--family", "two-pentagons"]);
    assert!(fs::read_to_string(&tp).unwrap().starts_with("pmap 9 10\n"));
    let w4 = gen(dir.path(), "w4.pmap", &["--family", "wheel", "--n", "4"]);
    assert!(fs::read_to_string(&w4).unwrap().starts_with("pmap 5 8\n"));
    let c9 = gen(dir.path(), "c9.pmap", &["--family", "cycle", "--n", "9"]);
    assert!(fs::read_to_string(&c9).unwrap().starts_with("pmap 9 9\n"));

    let bad = fpec(&["gen", "--family", "wheel", "--n", "2"]);
    assert_eq!(bad.status.code(), Some(3));
    let unknown = fpec(&["gen", "--family", "petersen"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn gen_to_stdout_is_deterministic() {
    let a = fpec(&["gen", "--family", "random", "--n", "25", "--seed", "3"]);
    let b = fpec(&["gen", "--family", "random", "--n", "25", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = fpec(&["gen", "--family", "random", "--n", "25", "--seed", "4"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn color_writes_schema() {
    let dir = TempDir::new().unwrap();
    let c3 = gen(dir.path(), "c3.pmap", &["--family", "cycle", "--n", "3"]);
    let out = fpec(&["color", "--in", c3.to_str().unwrap()]);
    assert!(out.status.success());
    let json: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["palette_size"], 3);
    assert_eq!(json["edges"].as_array().unwrap().len(), 3);
    assert_eq!(json["edges"][0]["endpoints"].as_array().unwrap().len(), 2);
    assert_eq!(json["faces"].as_array().unwrap().len(), 2);
    assert!(json.get("trace").is_none());

    let tp = gen(dir.path(), "tp.pmap", &["--family", "two-pentagons"]);
    let file = dir.path().join("tp.json");
    let out = fpec(&[
        "color",
        "--in",
        tp.to_str().unwrap(),
        "--out",
        file.to_str().unwrap(),
        "--trace",
    ]);
    assert!(out.status.success());
    let json: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    let k = json["palette_size"].as_u64().unwrap();
    assert!((10..=16).contains(&k));
    let trace = &json["trace"];
    assert_eq!(trace["qfo"]["c5_blocks"].as_array().unwrap().len(), 2);
    assert_eq!(trace["classes"].as_array().unwrap().len(), 4);
    assert_eq!(trace["compaction"].as_array().unwrap().len() as u64, k);
}

#[test]
fn color_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.pmap");
    fs::write(&bad, "pmap 2 1\nv 0 : 0\nv 1 : 0\n").unwrap();
    assert_eq!(
        fpec(&["color", "--in", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let missing = dir.path().join("missing.pmap");
    assert_eq!(
        fpec(&["color", "--in", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let bridge = dir.path().join("bridge.pmap");
    fs::write(&bridge, "pmap 2 1\nv 0 : 0\nv 1 : 1\n").unwrap();
    assert_eq!(
        fpec(&["color", "--in", bridge.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn check_modes() {
    let dir = TempDir::new().unwrap();
    let c4 = gen(dir.path(), "c4.pmap", &["--family", "cycle", "--n", "4"]);
    let coloring = dir.path().join("c.json");
    let write = |colors: &[u32]| {
        let edges: Vec<Value> = colors
            .iter()
            .enumerate()
            .map(|(i, c)| serde_json::json!({"id": i, "color": c}))
            .collect();
        fs::write(&coloring, serde_json::json!({ "edges": edges }).to_string()).unwrap();
    };
    let check = |mode: &str| {
        fpec(&[
            "check",
            "--in",
            c4.to_str().unwrap(),
            "--coloring",
            coloring.to_str().unwrap(),
            "--mode",
            mode,
        ])
    };

    write(&[1, 2, 1, 2]);
    let out = check("fpe");
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "fail");
    assert_eq!(report["violations"][0]["kind"], "face_parity");
    assert_eq!(report["violations"][0]["count"], 2);
    // As a coloring of the underlying 4-cycle, {e0, e2} and {e1, e3} are odd classes.
    assert_eq!(check("odd").status.code(), Some(0));

    write(&[1, 2, 3, 4]);
    assert_eq!(check("fpe").status.code(), Some(0));
    assert_eq!(check("qfo").status.code(), Some(0));

    write(&[1, 2, 3]);
    assert_eq!(check("fpe").status.code(), Some(3));
    fs::write(&coloring, "not json").unwrap();
    assert_eq!(check("fpe").status.code(), Some(2));
}

#[test]
fn check_accepts_color_output() {
    let dir = TempDir::new().unwrap();
    let g = gen(
        dir.path(),
        "g.pmap",
        &["--family", "random", "--n", "30", "--seed", "7"],
    );
    let json = dir.path().join("g.json");
    let out = fpec(&[
        "color",
        "--in",
        g.to_str().unwrap(),
        "--out",
        json.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = fpec(&[
        "check",
        "--in",
        g.to_str().unwrap(),
        "--coloring",
        json.to_str().unwrap(),
        "--mode",
        "fpe",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn chi_modes() {
    let dir = TempDir::new().unwrap();
    let tp = gen(dir.path(), "tp.pmap", &["--family", "two-pentagons"]);
    assert_eq!(
        stdout(&fpec(&[
            "chi",
            "--in",
            tp.to_str().unwrap(),
            "--mode",
            "fpe"
        ])),
        "10\n"
    );
    let w4 = gen(dir.path(), "w4.pmap", &["--family", "wheel", "--n", "4"]);
    assert_eq!(
        stdout(&fpec(&[
            "chi",
            "--in",
            w4.to_str().unwrap(),
            "--mode",
            "odd"
        ])),
        "4\n"
    );
    let big = gen(dir.path(), "c13.pmap", &["--family", "cycle", "--n", "13"]);
    assert_eq!(
        fpec(&["chi", "--in", big.to_str().unwrap(), "--mode", "fpe"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn stats_and_dot() {
    let dir = TempDir::new().unwrap();
    let tp = gen(dir.path(), "tp.pmap", &["--family", "two-pentagons"]);
    let out = fpec(&["stats", "--in", tp.to_str().unwrap()]);
    let stats: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(stats["vertices"], 9);
    assert_eq!(stats["edges"], 10);
    assert_eq!(stats["faces"], 3);
    assert_eq!(stats["blocks"], 2);
    assert_eq!(stats["c5_blocks"].as_array().unwrap().len(), 2);
    assert_eq!(stats["cut_vertices"].as_array().unwrap().len(), 1);
    let mut lengths: Vec<u64> = stats["face_lengths"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    lengths.sort_unstable();
    assert_eq!(lengths, vec![5, 5, 10]);

    let json = dir.path().join("tp.json");
    fpec(&[
        "color",
        "--in",
        tp.to_str().unwrap(),
        "--out",
        json.to_str().unwrap(),
    ]);
    let dot = stdout(&fpec(&[
        "export-dot",
        "--in",
        tp.to_str().unwrap(),
        "--coloring",
        json.to_str().unwrap(),
    ]));
    assert!(dot.starts_with("graph G {"));
    assert_eq!(dot.matches(" -- ").count(), 10);
    assert_eq!(dot.matches("label=").count(), 10);
    assert_eq!(dot.matches("// face").count(), 3);
}
