use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn zcaq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zcaq")).args(args).env_remove("ZCAQ_CATALOG").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen(dir: &TempDir, gcp: &str, zcp: &str) -> PathBuf {
    let out = path(dir, &format!("{gcp}_{zcp}.json"));
    let o = zcaq(&["gen-quad", "--gcp", gcp, "--zcp", zcp, "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

fn json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

type Grid = Vec<Vec<(f64, f64)>>;

/// Arrays of a q-PSK quad file as complex grids (entry `k` is `exp(-2πik/q)`).
fn arrays(doc: &Value) -> Vec<Grid> {
    let q = doc["q"].as_u64().unwrap() as f64;
    doc["arrays"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| {
            a.as_array()
                .unwrap()
                .iter()
                .map(|row| {
                    row.as_array()
                        .unwrap()
                        .iter()
                        .map(|k| {
                            let phase = -2.0 * PI * k.as_u64().unwrap() as f64 / q;
                            (phase.cos(), phase.sin())
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `|Σ_m Σ_{i,j} X_m[i][j] conj(X_m[i+t1][j+t2])|` by direct summation.
fn naive_sum(arrays: &[Grid], t1: isize, t2: isize) -> f64 {
    let (mut re, mut im) = (0.0, 0.0);
    for x in arrays {
        let (r, c) = (x.len() as isize, x[0].len() as isize);
        for i in 0..r {
            for j in 0..c {
                let (k, l) = (i + t1, j + t2);
                if (0..r).contains(&k) && (0..c).contains(&l) {
                    let (a, b) = x[i as usize][j as usize];
                    let (cr, ci) = x[k as usize][l as usize];
                    re += a * cr + b * ci;
                    im += b * cr - a * ci;
                }
            }
        }
    }
    (re * re + im * im).sqrt()
}

#[test]
fn small_quad_file_and_verify() {
    let dir = TempDir::new().unwrap();
    let file = gen(&dir, "3", "ex1_7_4");
    let doc = json(&file);
    assert_eq!(doc["kind"], "quad");
    assert_eq!(doc["q"], 4);
    assert_eq!(doc["dims"], serde_json::json!([7, 3]));
    assert_eq!(doc["metadata"]["zone"], serde_json::json!([4, 3]));
    assert_eq!(doc["metadata"]["phase_count"], 4);
    let o = zcaq(&["verify", s(&file)]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("measured zone: (4, 3)"), "{text}");
    assert!(text.contains("peak: 84"));
    assert!(text.contains("result: pass"));
}

#[test]
fn larger_quads() {
    let dir = TempDir::new().unwrap();
    let doc = json(&gen(&dir, "32", "ex2_24_16"));
    assert_eq!(doc["metadata"]["zone"], serde_json::json!([16, 32]));
    assert_eq!(doc["dims"], serde_json::json!([24, 32]));

    let file = gen(&dir, "2", "ex1_7_4");
    let doc = json(&file);
    assert_eq!(doc["metadata"]["zone"], serde_json::json!([4, 2]));
    let grids = arrays(&doc);
    for t1 in -3isize..=3 {
        for t2 in -1isize..=1 {
            if (t1, t2) != (0, 0) {
                assert!(naive_sum(&grids, t1, t2) < 1e-9, "({t1}, {t2})");
            }
        }
    }
    assert!((naive_sum(&grids, 0, 0) - 56.0).abs() < 1e-9);
    assert_eq!(code(&zcaq(&["verify", s(&file)])), 0);
}

#[test]
fn seed_errors() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "x.json");
    let unknown = zcaq(&["gen-quad", "--gcp", "3", "--zcp", "nope", "--out", s(&out)]);
    assert_eq!(code(&unknown), 2);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("unknown seed 'nope'"));
    assert_eq!(code(&zcaq(&["gen-quad", "--gcp", "7", "--zcp", "ex1_7_4", "--out", s(&out)])), 2);
    assert_eq!(code(&zcaq(&["gen-quad", "--gcp", "ex1_7_4", "--zcp", "ex1_7_4", "--out", s(&out)])), 3);
    assert_eq!(code(&zcaq(&["gen-quad", "--gcp", "1", "--zcp", "gcp_1", "--out", s(&out)])), 3);
    assert!(!out.exists());
}

#[test]
fn flipped_sign_fails_at_first_violation() {
    let dir = TempDir::new().unwrap();
    let mut doc = json(&gen(&dir, "3", "ex1_7_4"));
    let cell = &mut doc["arrays"][0][2][1];
    *cell = Value::from((cell.as_u64().unwrap() + 2) % 4);
    let broken = path(&dir, "broken.json");
    fs::write(&broken, serde_json::to_string(&doc).unwrap()).unwrap();

    let grids = arrays(&doc);
    let expected = (0isize..4)
        .flat_map(|t1| (-2isize..=2).map(move |t2| (t1, t2)))
        .find(|&(t1, t2)| (t1, t2) != (0, 0) && naive_sum(&grids, t1, t2) > 1e-9)
        .unwrap();

    let o = zcaq(&["verify", s(&broken)]);
    assert_eq!(code(&o), 4);
    let text = stdout(&o);
    assert!(text.contains(&format!("first violation: shift ({}, {})", expected.0, expected.1)), "{text}");
    assert!(text.contains("result: fail"));
}

#[test]
fn pair_and_garbage_files() {
    let dir = TempDir::new().unwrap();
    let pair = path(&dir, "pair.json");
    fs::write(&pair, r#"{"format_version": 1, "kind": "pair", "q": 4, "a": [0, 0, 2], "b": [0, 3, 0]}"#).unwrap();
    let o = zcaq(&["verify", s(&pair)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("kind: gcp (length 3)"));
    assert!(stdout(&o).contains("zone width: 3"));

    let claimed = path(&dir, "claimed.json");
    fs::write(
        &claimed,
        r#"{"format_version": 1, "kind": "pair", "q": 2, "a": [0, 0, 0], "b": [0, 0, 1], "claimed_z": 3}"#,
    )
    .unwrap();
    assert_eq!(code(&zcaq(&["verify", s(&claimed)])), 4);

    let garbage = path(&dir, "garbage.json");
    fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(code(&zcaq(&["verify", s(&garbage)])), 2);
    let bad_q = path(&dir, "bad_q.json");
    fs::write(&bad_q, r#"{"format_version": 1, "kind": "pair", "q": 2, "a": [0, 3], "b": [0, 1]}"#).unwrap();
    assert_eq!(code(&zcaq(&["verify", s(&bad_q)])), 2);
    assert_eq!(code(&zcaq(&["surface", s(&pair), "--csv", s(&path(&dir, "s.csv"))])), 2);
}

fn summary_field(text: &str, key: &str) -> f64 {
    let line = text.lines().find(|l| l.starts_with("pmepr ")).unwrap();
    let field = line.split(' ').find_map(|f| f.strip_prefix(&format!("{key}="))).unwrap();
    field.parse().unwrap()
}

#[test]
fn pmepr_reports() {
    let dir = TempDir::new().unwrap();
    let ex2 = gen(&dir, "32", "ex2_24_16");
    let o = zcaq(&["--quiet", "pmepr", s(&ex2)]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1, "{text}");
    assert!((summary_field(&text, "bound") - (2.0 + 4.0 / 3.0)).abs() < 1e-9);
    assert!(summary_field(&text, "x1x3") <= summary_field(&text, "bound"));

    let ex3 = gen(&dir, "26", "ex3_18_13");
    let text = stdout(&zcaq(&["-q", "pmepr", s(&ex3)]));
    let bound = summary_field(&text, "bound");
    assert!((bound - 34.0 / 9.0).abs() < 1e-9 && bound <= 4.0);
    assert!((summary_field(&text, "x1x3") - 2.797).abs() < 0.01);
    assert!((summary_field(&text, "x2x4") - 2.706).abs() < 0.01);

    let golay = gen(&dir, "10", "gcp_26");
    let text = stdout(&zcaq(&["-q", "pmepr", s(&golay)]));
    assert!(summary_field(&text, "max") <= 2.0 + 1e-9);
    assert_eq!(code(&zcaq(&["pmepr", s(&golay), "--oversample", "2"])), 2);
}

#[test]
fn pmepr_curves_csv() {
    let dir = TempDir::new().unwrap();
    let file = gen(&dir, "26", "ex3_18_13");
    let csv = path(&dir, "curves.csv");
    let o = zcaq(&["pmepr", s(&file), "--oversample", "8", "--csv", s(&csv), "--column", "X1:0", "--column", "X2:5"]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,X1:0,X2:5");
    assert_eq!(lines.len(), 1 + 8 * 18 + 1);
    assert!(lines.last().unwrap().starts_with("1,"));
    let again = path(&dir, "again.csv");
    zcaq(&["pmepr", s(&file), "--oversample", "8", "--csv", s(&again), "--column", "X1:0", "--column", "X2:5"]);
    assert_eq!(fs::read(&csv).unwrap(), fs::read(&again).unwrap());
    assert_eq!(code(&zcaq(&["pmepr", s(&file), "--csv", s(&csv), "--column", "X5:0"])), 2);
}

fn read_surface(csv: &Path) -> (Vec<isize>, Vec<(isize, Vec<f64>)>) {
    let text = fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    let header: Vec<isize> = lines.next().unwrap().split(',').skip(1).map(|t| t.parse().unwrap()).collect();
    let rows = lines
        .map(|l| {
            let mut cells = l.split(',');
            let t1 = cells.next().unwrap().parse().unwrap();
            (t1, cells.map(|v| v.parse().unwrap()).collect())
        })
        .collect();
    (header, rows)
}

#[test]
fn surfaces() {
    let dir = TempDir::new().unwrap();
    let csv = path(&dir, "s1.csv");
    assert_eq!(code(&zcaq(&["surface", s(&gen(&dir, "3", "ex1_7_4")), "--csv", s(&csv)])), 0);
    let (header, rows) = read_surface(&csv);
    assert_eq!(header, (-2..=2).collect::<Vec<_>>());
    assert_eq!(rows.len(), 13);
    for (t1, values) in &rows {
        for (t2, v) in header.iter().zip(values) {
            if (*t1, *t2) == (0, 0) {
                assert_eq!(*v, 84.0);
            } else if t1.abs() < 4 {
                assert_eq!(*v, 0.0, "({t1}, {t2})");
            }
        }
    }

    let csv = path(&dir, "s2.csv");
    zcaq(&["surface", s(&gen(&dir, "32", "ex2_24_16")), "--csv", s(&csv)]);
    let (header, rows) = read_surface(&csv);
    let zero = header.iter().position(|&t| t == 0).unwrap();
    for (t1, values) in &rows {
        if t1.abs() == 16 {
            assert_eq!(values[zero], 1024.0);
        }
        if t1.abs() < 16 && *t1 != 0 {
            assert!(values.iter().all(|&v| v == 0.0));
        }
    }

    let tiny = path(&dir, "tiny.json");
    fs::write(
        &tiny,
        r#"{"format_version": 1, "kind": "quad", "q": 4, "dims": [1, 1], "arrays": [[[0]], [[2]], [[1]], [[3]]]}"#,
    )
    .unwrap();
    let csv = path(&dir, "s3.csv");
    assert_eq!(code(&zcaq(&["surface", s(&tiny), "--csv", s(&csv)])), 0);
    assert_eq!(fs::read_to_string(&csv).unwrap(), "tau1\\tau2,0\n0,4\n");
}

#[test]
fn search_and_catalog_override() {
    let dir = TempDir::new().unwrap();
    let found = path(&dir, "found.json");
    let o = zcaq(&["search", "--length", "7", "--min-z", "4", "--include-builtin", "--out", s(&found)]);
    assert_eq!(code(&o), 0);
    let doc = json(&found);
    assert_eq!(doc["kind"], "catalog");
    assert!(doc["entries"].as_array().unwrap().iter().any(|e| e["name"] == "search_b7_4_1"));

    let empty = path(&dir, "empty.json");
    assert_eq!(code(&zcaq(&["search", "--length", "7", "--min-z", "7", "--out", s(&empty)])), 5);
    assert!(!empty.exists());
    assert_eq!(code(&zcaq(&["search", "--length", "30", "--min-z", "4", "--out", s(&empty)])), 2);

    let two = path(&dir, "two.json");
    zcaq(&["search", "--length", "2", "--min-z", "2", "--out", s(&two)]);
    let entries = json(&two)["entries"].clone();
    assert_eq!(entries.as_array().unwrap().len(), 1);
    assert_eq!(entries[0]["a"], serde_json::json!([0, 0]));
    assert_eq!(entries[0]["b"], serde_json::json!([0, 1]));

    let quad = path(&dir, "from_search.json");
    let o = Command::new(env!("CARGO_BIN_EXE_zcaq"))
        .args(["gen-quad", "--gcp", "3", "--zcp", "search_b7_4_1", "--out", s(&quad)])
        .env("ZCAQ_CATALOG", &found)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&zcaq(&["verify", s(&quad)])), 0);

    let o = Command::new(env!("CARGO_BIN_EXE_zcaq"))
        .args(["gen-quad", "--gcp", "3", "--zcp", "ex1_7_4", "--out", s(&quad)])
        .env("ZCAQ_CATALOG", dir.path().join("missing.json"))
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = path(&dir, "a.json");
    let b = path(&dir, "b.json");
    for p in [&a, &b] {
        zcaq(&["gen-quad", "--gcp", "26", "--zcp", "ex3_18_13", "--transpose", "--out", s(p)]);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let first = stdout(&zcaq(&["pmepr", s(&a)]));
    assert_eq!(first, stdout(&zcaq(&["pmepr", s(&b)])));
    assert!(json(&a)["transposed"].as_bool().unwrap());
    assert_eq!(code(&zcaq(&["verify", s(&a)])), 0);
}
