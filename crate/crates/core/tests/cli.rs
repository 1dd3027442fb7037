mod common;

use std::path::Path;
use std::process::{Command, Output};

use pdtsp_kit::cli::{instance_group, CSV_VERSION, RECORD_HEADER, SUMMARY_HEADER};
use pdtsp_kit::instance::{parse_instance, parse_solution};
use pdtsp_kit::tour::check_precedence;

fn pdtsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdtsp")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn gen(dir: &Path, pairs: usize, group: &str, seeds: &str, mode: &str) {
    let out = pdtsp(&[
        "gen",
        "--pairs",
        &pairs.to_string(),
        "--group",
        group,
        "--seeds",
        seeds,
        "--mode",
        mode,
        "--out",
        dir.to_str().unwrap(),
    ]);
    stdout(&out);
}

/// CSV rows without the timing columns.
fn stable_columns(csv: &str) -> Vec<String> {
    csv.lines()
        .skip(2)
        .map(|l| l.split(',').take(5).collect::<Vec<_>>().join(","))
        .collect()
}

#[test]
fn gen_is_deterministic_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    let a = stdout(&pdtsp(&["gen", "--pairs", "6", "--group", "A", "--seeds", "3"]));
    let b = stdout(&pdtsp(&["gen", "--pairs", "6", "--group", "A", "--seeds", "3"]));
    assert_eq!(a, b);
    let inst = parse_instance(&a).unwrap();
    assert_eq!(inst.n_pairs(), 6);
    gen(dir.path(), 4, "B", "1,2,3", "open");
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 3);
}

#[test]
fn gen_from_points_file() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.txt");
    std::fs::write(&pts, "0 0\n1 0\n2 0\n3 0\n4 0\n").unwrap();
    let text = stdout(&pdtsp(&["gen", "--coords", pts.to_str().unwrap(), "--group", "C"]));
    assert_eq!(parse_instance(&text).unwrap().n_pairs(), 2);
    std::fs::write(&pts, "0 0\n1 0\n2 0\n3 0\n").unwrap();
    let bad = pdtsp(&["gen", "--coords", pts.to_str().unwrap()]);
    assert!(!bad.status.success());
}

#[test]
fn solve_writes_revalidating_solutions() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), 5, "C", "7", "closed");
    let file = dir.path().join("rand5C.pdtsp");
    let sols = dir.path().join("sols");
    for method in ["hgs", "rr", "rr-fast", "ls-only", "oracle"] {
        let budget: &[&str] = match method {
            "rr" | "rr-fast" => &["--iterations", "300"],
            "oracle" => &[],
            _ => &["--budget-noimprove", "20"],
        };
        let mut args = vec!["solve", file.to_str().unwrap(), "--method", method, "--seeds", "1,2", "--out", sols.to_str().unwrap()];
        args.extend_from_slice(budget);
        let csv = stdout(&pdtsp(&args));
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_VERSION));
        assert_eq!(lines.next(), Some(RECORD_HEADER));
        for row in lines {
            let cols: Vec<&str> = row.split(',').collect();
            assert_eq!(cols.len(), 7);
            let (ttb, total): (f64, f64) = (cols[5].parse().unwrap(), cols[6].parse().unwrap());
            assert!(ttb <= total);
        }
    }
    let inst = parse_instance(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let mut count = 0;
    for entry in std::fs::read_dir(&sols).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let (cost, tour) = parse_solution(&inst, &text).unwrap();
        assert!(check_precedence(&inst, tour.sequence()));
        assert_eq!(tour.cost(), cost);
        count += 1;
    }
    assert_eq!(count, 10);
}

#[test]
fn identical_invocations_agree_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), 8, "C", "2", "open");
    let file = dir.path().join("rand8C.pdtsp");
    let run = || stdout(&pdtsp(&["solve", file.to_str().unwrap(), "--seeds", "1..3", "--budget-noimprove", "30"]));
    assert_eq!(stable_columns(&run()), stable_columns(&run()));
    let rr = || stdout(&pdtsp(&["solve", file.to_str().unwrap(), "--method", "rr-fast", "--seeds", "4", "--iterations", "200"]));
    assert_eq!(stable_columns(&rr()), stable_columns(&rr()));
}

#[test]
fn gap_uses_reference_costs() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), 4, "C", "5", "closed");
    let file = dir.path().join("rand4C.pdtsp");
    let oracle = stdout(&pdtsp(&["oracle", file.to_str().unwrap()]));
    let cost: f64 = oracle.lines().nth(2).unwrap().split(',').nth(3).unwrap().parse().unwrap();
    let refs = dir.path().join("refs.csv");
    std::fs::write(&refs, format!("instance,cost\nrand4C,{}\n", cost / 2.0)).unwrap();
    let csv = stdout(&pdtsp(&["solve", file.to_str().unwrap(), "--method", "oracle", "--ref", refs.to_str().unwrap()]));
    let gap: f64 = csv.lines().nth(2).unwrap().split(',').nth(4).unwrap().parse().unwrap();
    assert!((gap - 100.0).abs() < 1e-6);
}

#[test]
fn oracle_size_guard_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), 9, "C", "1", "closed");
    let out = pdtsp(&["oracle", dir.path().join("rand9C.pdtsp").to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains('8'));
}

#[test]
fn rr_refuses_a_no_improvement_budget() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), 3, "C", "1", "closed");
    let out = pdtsp(&["solve", dir.path().join("rand3C.pdtsp").to_str().unwrap(), "--method", "rr", "--budget-noimprove", "5"]);
    assert!(!out.status.success());
}

#[test]
fn bench_summaries_match_records() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), 4, "A", "1,2", "closed");
    gen(dir.path(), 4, "B", "3", "closed");
    // oracle references for every instance
    let mut refs = String::from("instance,cost\n");
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let p = entry.unwrap().path();
        let csv = stdout(&pdtsp(&["oracle", p.to_str().unwrap()]));
        let row: Vec<String> = csv.lines().nth(2).unwrap().split(',').map(String::from).collect();
        refs.push_str(&format!("{},{}\n", row[0], row[3]));
    }
    let refs_path = dir.path().join("refs.csv");
    std::fs::write(&refs_path, refs).unwrap();
    let records = dir.path().join("records.csv");
    let summary = stdout(&pdtsp(&[
        "bench",
        dir.path().to_str().unwrap(),
        "--seeds",
        "1..4",
        "--budget-noimprove",
        "20",
        "--threads",
        "3",
        "--ref",
        refs_path.to_str().unwrap(),
        "--records",
        records.to_str().unwrap(),
    ]));
    let records = std::fs::read_to_string(records).unwrap();
    let rows: Vec<Vec<String>> = records.lines().skip(2).map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 12);
    // recompute per-group mean of per-instance mean gaps
    let mut lines = summary.lines();
    assert_eq!(lines.next(), Some(CSV_VERSION));
    assert_eq!(lines.next(), Some(SUMMARY_HEADER));
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        if cols[0] != "group" {
            continue;
        }
        let mut instances: Vec<&str> = rows.iter().map(|r| r[0].as_str()).filter(|n| instance_group(n) == cols[1]).collect();
        instances.dedup();
        let per_instance: Vec<f64> = instances
            .iter()
            .map(|name| {
                let g: Vec<f64> = rows.iter().filter(|r| r[0] == *name).map(|r| r[4].parse().unwrap()).collect();
                g.iter().sum::<f64>() / g.len() as f64
            })
            .collect();
        let expected = per_instance.iter().sum::<f64>() / per_instance.len() as f64;
        let reported: f64 = cols[3].parse().unwrap();
        assert!((reported - expected).abs() < 1e-3, "{line}");
    }
    // job order is stable across thread counts
    let single = stdout(&pdtsp(&["bench", dir.path().to_str().unwrap(), "--seeds", "1..4", "--budget-noimprove", "20"]));
    let multi = stdout(&pdtsp(&["bench", dir.path().to_str().unwrap(), "--seeds", "1..4", "--budget-noimprove", "20", "--threads", "4"]));
    let keys = |s: &str| s.lines().map(|l| l.split(',').take(5).collect::<Vec<_>>().join(",")).collect::<Vec<_>>();
    assert_eq!(keys(&single), keys(&multi));
}

#[test]
fn bench_on_an_empty_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&pdtsp(&["bench", dir.path().to_str().unwrap(), "--seeds", "1", "--iterations", "10", "--method", "rr-fast"]));
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn scaling_report() {
    let out = stdout(&pdtsp(&["bench", "--scaling", "--sizes", "20,40", "--reps", "1"]));
    assert!(out.lines().count() >= 4);
}

#[test]
fn group_from_name() {
    assert_eq!(instance_group("rand4-s1A"), "A");
    assert_eq!(instance_group("prob5a"), "-");
}
