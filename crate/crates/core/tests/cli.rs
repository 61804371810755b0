use std::path::Path;

use hglca::cli::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};

fn hglca(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hglca").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const FANO: &str = "h 7 7 3\ne 0 1 2\ne 0 3 4\ne 0 5 6\ne 1 3 5\ne 1 4 6\ne 2 3 6\ne 2 4 5\n";

#[test]
fn generate_color_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("h.txt");
    let (code, _, err) = hglca(&[
        "gen", "--n", "200", "--m", "40", "--k", "10", "--max-deg", "6", "--seed", "5", "--out", path(&inst),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    for algo in ["base", "improved", "global-base", "global-improved", "resample"] {
        let col = dir.path().join(format!("{algo}.col"));
        let stats = dir.path().join(format!("{algo}.json"));
        let (code, _, err) = hglca(&[
            "color", "--algo", algo, "--input", path(&inst), "--seed", "2", "--order", "random", "--out",
            path(&col), "--stats", path(&stats),
        ]);
        assert_eq!(code, EXIT_OK, "{algo}: {err}");
        let s: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&stats).unwrap()).unwrap();
        assert_eq!(s["schema"], 1);
        assert_eq!(s["violations"], 0);
        let (code, out, _) = hglca(&["verify", "--input", path(&inst), "--coloring", path(&col)]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["proper"], true);
        assert_eq!(v["complete"], true);
    }
}

#[test]
fn colour_to_stdout_matches_file_format() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("h.txt");
    std::fs::write(&inst, "h 6 2 3\ne 0 1 2\ne 3 4 5\n").unwrap();
    let (code, out, _) = hglca(&["color", "--algo", "improved", "--input", path(&inst)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().all(|l| l.starts_with("v ")));
}

#[test]
fn verify_flags_monochromatic_edges() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("f.txt");
    let col = dir.path().join("c.txt");
    std::fs::write(&inst, FANO).unwrap();
    std::fs::write(&col, (0..7).map(|v| format!("v {v} 0\n")).collect::<String>()).unwrap();
    let (code, out, _) = hglca(&["verify", "--input", path(&inst), "--coloring", path(&col), "--brute-force"]);
    assert_eq!(code, EXIT_VERIFY);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["violations"].as_array().unwrap().len(), 7);
    assert_eq!(v["two_colorable"], false);
}

#[test]
fn uncolourable_instance_exhausts_resample_budget() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("f.txt");
    std::fs::write(&inst, FANO).unwrap();
    let (code, _, err) = hglca(&["color", "--algo", "resample", "--input", path(&inst)]);
    assert_eq!(code, EXIT_FAILURE, "{err}");
}

#[test]
fn usage_errors() {
    assert_eq!(hglca(&[]).0, EXIT_USAGE);
    assert_eq!(hglca(&["color"]).0, EXIT_USAGE);
    assert_eq!(hglca(&["color", "--input", "/nonexistent/file"]).0, EXIT_USAGE);
    assert_eq!(hglca(&["gen", "--n", "5", "--m", "10", "--k", "5", "--max-deg", "0"]).0, EXIT_USAGE);
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("bad.txt");
    std::fs::write(&inst, "h 3 1 3\ne 0 1 7\n").unwrap();
    let (code, _, err) = hglca(&["color", "--input", path(&inst)]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 2"), "{err}");
    let (code, out, _) = hglca(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("check-params"));
}

#[test]
fn order_file_and_partial_queries() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("h.txt");
    let order = dir.path().join("o.txt");
    std::fs::write(&inst, "h 6 2 3\ne 0 1 2\ne 2 3 4\n").unwrap();
    std::fs::write(&order, "4 0 # two queries\n").unwrap();
    let (code, out, err) = hglca(&[
        "color", "--algo", "base", "--input", path(&inst), "--order", "file", "--order-file", path(&order),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("v 0 ") && out.contains("v 4 "));
    let (code, _, err) = hglca(&[
        "color", "--algo", "global-base", "--input", path(&inst), "--order", "file", "--order-file", path(&order),
    ]);
    assert_eq!(code, EXIT_USAGE, "{err}");
    let (code, _, _) = hglca(&["color", "--input", path(&inst), "--order", "file"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn query_answers_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("h.txt");
    hglca(&["gen", "--n", "60", "--m", "12", "--k", "6", "--max-deg", "4", "--seed", "1", "--out", path(&inst)]);
    let (code, out, err) = hglca(&["query", "--input", path(&inst), "--seed", "3", "--verbose", "5", "9", "5"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], lines[2]);
    assert_eq!(err.lines().count(), 3);
    assert_eq!(hglca(&["query", "--input", path(&inst), "60"]).0, EXIT_USAGE);
}

#[test]
fn check_params_json() {
    let (code, out, _) = hglca(&["check-params", "--k", "30", "--alpha-k", "10", "--max-deg", "6"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cond_i"], true);
    assert_eq!(v["cond_ii"], false);
}

#[test]
fn analyze_subcommands() {
    let (code, out, _) = hglca(&["analyze", "amortization", "--k", "20", "--alpha-k", "5"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["max_delta_witness_prob"], 12);

    let (code, out, _) = hglca(&["analyze", "prob", "--kind", "m", "--k", "10", "--alpha-k", "3", "--samples", "5000"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["samples"], 5000);
    assert_eq!(hglca(&["analyze", "prob", "--kind", "m", "--k", "10", "--alpha-k", "3", "--samples", "10"]).0, EXIT_USAGE);

    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("p.txt");
    std::fs::write(&inst, "h 7 3 3\ne 0 1 2\ne 2 3 4\ne 4 5 6\n").unwrap();
    let (code, out, _) = hglca(&["analyze", "witness-count", "--input", path(&inst), "--u", "2"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count_23"], 1);
    assert_eq!(v["bound_23"], "3072");
}

#[test]
fn bench_report() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("bench.json");
    let (code, _, err) = hglca(&[
        "bench", "--algo", "improved", "--n", "120", "--m", "24", "--k", "8", "--gen-max-deg", "5", "--seeds", "3",
        "--repetitions", "2", "--order", "random", "--extend-every", "10", "--out", path(&out_path),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["runs"].as_array().unwrap().len(), 6);
    assert_eq!(v["summary"]["failures"], 0);
    assert_eq!(hglca(&["bench", "--n", "10"]).0, EXIT_USAGE);
}
