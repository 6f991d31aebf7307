//! CLI acceptance: deterministic reports, exit codes, and a forward/inverse
//! round trip wired through the binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_wallcross")
}

fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn run_args(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn criterion_11_deterministic_rigid_curve_scenario() {
    let path = scenario_path("conifold.toml");
    let path = path.to_str().unwrap();
    let first = run_args(&["run", path]);
    let second = run_args(&["run", path]);
    let ok = first.status.code() == Some(0)
        && second.status.code() == Some(0)
        && first.stdout == second.stdout
        && !first.stdout.is_empty();
    println!(
        "criterion 11 [scenario reports are byte-identical across runs]: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert_eq!(
        first.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    assert_eq!(second.status.code(), Some(0));
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout);
    // The forward report shows the collapsed series 1 + q t.
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.starts_with("# forward: ok\n0\t0\t1\n1\t1\t1\n"));
}

#[test]
fn doc_format_is_deterministic_too() {
    let path = scenario_path("local-global.toml");
    let path = path.to_str().unwrap();
    let first = run_args(&["run", path, "--format", "doc"]);
    let second = run_args(&["run", path, "--format", "doc"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let parsed: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(parsed[0]["command"], "chow-aggregate");
    assert_eq!(parsed[1]["status"], "ok");
}

#[test]
fn perturbed_table_exits_one_with_row_detail() {
    let dir = std::env::temp_dir().join(format!("wallcross-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let original = std::fs::read_to_string(scenario_path("conifold.toml")).unwrap();
    let perturbed = original.replace("value = \"1/4\"", "value = \"5/4\"");
    let file = dir.join("perturbed.toml");
    std::fs::write(&file, perturbed).unwrap();
    let output = run_args(&["run", file.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("# check-equiv: fail"));
    let failing: Vec<&str> = text
        .lines()
        .filter(|line| line.ends_with("\tfalse") && line.starts_with("2\t2\t"))
        .collect();
    assert_eq!(failing.len(), 1, "{text}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn parse_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("wallcross-parse-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("broken.toml");
    std::fs::write(&file, "mu = \"1\"\nnot-a-block").unwrap();
    let output = run_args(&["run", file.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let missing = run_args(&["run", dir.join("absent.toml").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn forward_report_feeds_back_through_inverse() {
    let path = scenario_path("conifold.toml");
    let output = run_args(&["run", path.to_str().unwrap()]);
    let text = String::from_utf8(output.stdout).unwrap();

    // Collect the forward series rows and the original N block rows.
    let forward_rows: Vec<&str> = text
        .lines()
        .skip_while(|l| *l != "# forward: ok")
        .skip(1)
        .take_while(|l| !l.is_empty())
        .collect();
    let series_entries: String = forward_rows
        .iter()
        .filter(|row| !row.starts_with("0\t0\t"))
        .map(|row| {
            let cols: Vec<&str> = row.split('\t').collect();
            format!(
                "[[dtpar_series]]\nn = {}\nbeta = [{}]\nvalue = \"{}\"\n",
                cols[0], cols[1], cols[2]
            )
        })
        .collect();

    let dir = std::env::temp_dir().join(format!("wallcross-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let scenario = format!(
        "mu = \"1\"\n\n[geometry]\nd = 6\ngenerators = [{{ name = \"C\", omega = 1, h = 1 }}]\n\n{series_entries}\n[[run]]\ncmd = \"inverse\"\n"
    );
    let file = dir.join("roundtrip.toml");
    std::fs::write(&file, scenario).unwrap();
    let output = run_args(&["run", file.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let inverse_text = String::from_utf8(output.stdout).unwrap();

    let original = std::fs::read_to_string(&path).unwrap();
    // Expect exactly the N block of the shipped scenario: 1/m^2 at (m, m).
    for m in 1..=6u32 {
        let expect = if m == 1 {
            format!("{m}\t{m}\t1")
        } else {
            format!("{m}\t{m}\t1/{}", m * m)
        };
        assert!(inverse_text.contains(&expect), "{inverse_text}");
        assert!(original.contains(&format!(
            "value = \"{}\"",
            if m == 1 {
                "1".to_string()
            } else {
                format!("1/{}", m * m)
            }
        )));
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn two_component_scenario_matches_hand_derivation() {
    let path = scenario_path("two-components.toml");
    let output = run_args(&["run", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let text = String::from_utf8(output.stdout).unwrap();
    // The multiple-cover extension reproduces the N block of the file.
    let multcover = [
        "1\t0,1\t-1/2",
        "1\t1,0\t1",
        "2\t0,2\t5/24",
        "2\t1,1\t2",
        "2\t2,0\t1/4",
    ];
    for row in multcover {
        assert!(text.contains(row), "missing {row:?} in {text}");
    }
    // Forward series: the 2A term cancels, A+B carries 6 + 1 = 7, and 2B
    // carries -5/6 + 1/2 = -1/3.
    assert!(text.contains("2\t1,1\t7\n"));
    assert!(text.contains("2\t0,2\t-1/3\n"));
    assert!(!text.contains("\t2,0\t0\n"));
}

#[test]
fn verify_subcommand_reports_every_suite() {
    let output = run_args(&["verify", "--seed", "7", "--max-d", "5"]);
    assert_eq!(
        output.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let text = String::from_utf8(output.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.iter().all(|line| line.starts_with("ok\t")), "{text}");
}

#[test]
fn out_directory_receives_report_files() {
    let dir = std::env::temp_dir().join(format!("wallcross-out-{}", std::process::id()));
    let out = dir.join("reports");
    std::fs::create_dir_all(&dir).unwrap();
    let path = scenario_path("local-global.toml");
    let output = run_args(&[
        "run",
        path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert!(output.stdout.is_empty());
    let mut names: Vec<String> = std::fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        vec![
            "01-chow-aggregate.tsv",
            "02-local-global.tsv",
            "03-hm-weight.tsv",
            "04-git-test.tsv",
        ]
    );
    std::fs::remove_dir_all(&dir).ok();
}
