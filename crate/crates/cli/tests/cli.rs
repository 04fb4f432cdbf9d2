use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const FAN5: &str = "# four hull corners and one interior point\n0 0\n2 2\n3 7\n4 8\n6 18\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sweepcount"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "failed: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn convex(n: i64) -> String {
    (0..n).map(|k| format!("{k} {}\n", k * k)).collect()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn count_prints_exact_decimal() {
    let dir = TempDir::new().unwrap();
    let fan = write(dir.path(), "fan5.txt", FAN5);
    assert_eq!(stdout(&run(&["count", s(&fan), "--structure", "tri"])), "3\n");
    assert_eq!(stdout(&run(&["count", s(&fan), "--structure", "pt"])), "8\n");
    let conv = write(dir.path(), "conv6.txt", &convex(6));
    assert_eq!(stdout(&run(&["count", s(&conv)])), "14\n");
    let json = write(dir.path(), "conv6.json", r#"{"points": [[0,0],[1,1],[2,4],[3,9],[4,16],[5,25]]}"#);
    assert_eq!(stdout(&run(&["count", s(&json)])), "14\n");
}

#[test]
fn stats_file_has_the_documented_fields() {
    let dir = TempDir::new().unwrap();
    let fan = write(dir.path(), "fan5.txt", FAN5);
    let stats = dir.path().join("stats.json");
    stdout(&run(&["count", s(&fan), "--stats", s(&stats)]));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&stats).unwrap()).unwrap();
    assert_eq!(v["n"], 5);
    assert_eq!(v["family"], "tri");
    assert_eq!(v["count"], "3");
    assert_eq!(v["t_per_line"], serde_json::json!([1, 2, 2, 1]));
    assert_eq!(v["t_max"], 2);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn bad_input_exits_2_with_reason() {
    let dir = TempDir::new().unwrap();
    let col = write(dir.path(), "col.txt", "0 0\n1 1\n5 2\n2 2\n");
    let o = run(&["count", s(&col)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("collinear") && err.contains("(0,0)") && err.contains("(1,1)") && err.contains("(2,2)"), "{err}");
    let junk = write(dir.path(), "junk.txt", "0 0\n1 x\n");
    assert_eq!(run(&["count", s(&junk)]).status.code(), Some(2));
    assert_eq!(run(&["count", s(&dir.path().join("missing.txt"))]).status.code(), Some(2));
}

#[test]
fn budgets_exit_3() {
    let dir = TempDir::new().unwrap();
    let conv = write(dir.path(), "conv7.txt", &convex(7));
    assert_eq!(run(&["count", s(&conv), "--max-paths", "2"]).status.code(), Some(3));
    assert_eq!(run(&["sample", s(&conv), "--max-recorded-paths", "4"]).status.code(), Some(3));
    let big = write(dir.path(), "conv13.txt", &convex(13));
    assert_eq!(run(&["enumerate", s(&big)]).status.code(), Some(3));
    assert_eq!(run(&["enumerate", s(&conv), "--cap", "10"]).status.code(), Some(3));
}

#[test]
fn enumerate_lists_structures() {
    let dir = TempDir::new().unwrap();
    let tri = write(dir.path(), "tri.txt", "0 0\n4 1\n1 3\n");
    let v: Vec<Vec<[usize; 2]>> = serde_json::from_str(&stdout(&run(&["enumerate", s(&tri)]))).unwrap();
    assert_eq!(v, vec![vec![[0, 1], [0, 2], [1, 2]]]);
    let fan = write(dir.path(), "fan5.txt", FAN5);
    let v: Vec<Vec<[usize; 2]>> = serde_json::from_str(&stdout(&run(&["enumerate", s(&fan), "--structure", "tri"]))).unwrap();
    assert_eq!(v.len(), 3);
    let conv = write(dir.path(), "conv5.txt", &convex(5));
    let edges = stdout(&run(&["enumerate", s(&conv), "--structure", "pt", "--format", "edges"]));
    assert_eq!(edges.lines().count(), 5);
    assert!(edges.lines().all(|l| l.split(' ').count() == 7));
}

#[test]
fn sample_outputs() {
    let dir = TempDir::new().unwrap();
    let tri = write(dir.path(), "tri.txt", "0 0\n4 1\n1 3\n");
    let v: Vec<Vec<[usize; 2]>> = serde_json::from_str(&stdout(&run(&["sample", s(&tri), "--count", "2", "--seed", "99"]))).unwrap();
    assert_eq!(v, vec![vec![[0, 1], [0, 2], [1, 2]]; 2]);
    let fan = write(dir.path(), "fan5.txt", FAN5);
    let out = dir.path().join("svgs");
    stdout(&run(&["sample", s(&fan), "--structure", "pt", "--count", "3", "--format", "svg-dir", "--out", s(&out)]));
    let mut names: Vec<String> = std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names, vec!["sample-00000.svg", "sample-00001.svg", "sample-00002.svg"]);
    assert_eq!(run(&["sample", s(&fan), "--format", "svg-dir"]).status.code(), Some(2));
}

#[test]
fn sequence_rows() {
    let six = stdout(&run(&["sequence", "--k", "6"]));
    assert_eq!(six.lines().last().unwrap(), "6\t2307\t1344");
    assert_eq!(stdout(&run(&["sequence", "--k", "0"])), "0\t0\t0\n");
    let forty = stdout(&run(&["sequence", "--k", "40"]));
    assert_eq!(forty.lines().count(), 41);
    assert!(forty.lines().all(|l| l.split('\t').all(|f| f.chars().all(|c| c.is_ascii_digit()))));
}

#[test]
fn render_draws_the_star_and_its_path() {
    let dir = TempDir::new().unwrap();
    let fan = write(dir.path(), "fan5.txt", FAN5);
    let star = write(dir.path(), "star.json", "[[0,1],[1,3],[3,4],[0,4],[0,2],[1,2],[2,3],[2,4]]");
    let path = write(dir.path(), "path.json", "[3,1,2,0,4]");
    let svg = stdout(&run(&["render", s(&fan), "--structure-file", s(&star), "--path-file", s(&path), "--line", "2"]));
    assert_eq!(svg.matches("<circle").count(), 5);
    assert_eq!(svg.matches(r#"class="edge""#).count(), 8);
    assert_eq!(svg.matches(r#"class="path""#).count(), 4);
    assert_eq!(svg.matches(r#"class="sweep""#).count(), 1);
    assert!(svg.contains(r#"viewBox="-0.300 -18.900 6.600 19.800""#));
    assert!(svg.contains(r#"x1="2.500""#));

    let out = dir.path().join("plain.svg");
    stdout(&run(&["render", s(&fan), "--out", s(&out)]));
    let plain = std::fs::read_to_string(&out).unwrap();
    assert_eq!(plain.matches("<circle").count(), 5);
    assert!(!plain.contains("<line"));

    let bad = write(dir.path(), "bad.json", "[0,9]");
    assert_eq!(run(&["render", s(&fan), "--path-file", s(&bad)]).status.code(), Some(2));
    assert_eq!(run(&["render", s(&fan), "--line", "5"]).status.code(), Some(2));
}

#[test]
fn tilted_line_on_equal_abscissae() {
    let dir = TempDir::new().unwrap();
    let pts = write(dir.path(), "tie.txt", "0 0\n3 -2\n3 5\n7 1\n");
    let svg = stdout(&run(&["render", s(&pts), "--line", "2"]));
    let line = svg.lines().find(|l| l.contains(r#"class="sweep""#)).unwrap();
    let attr = |name: &str| -> f64 {
        let start = line.find(&format!(r#" {name}=""#)).unwrap() + name.len() + 3;
        line[start..].split('"').next().unwrap().parse().unwrap()
    };
    assert!(attr("x1") != attr("x2"));
}
