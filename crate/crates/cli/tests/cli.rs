use std::fs;
use std::process::Command;

use asmkit_cli::{run_args, Outcome, EXIT_CAP, EXIT_FAILED, EXIT_INVALID, EXIT_OK};
use serde_json::Value;

fn run(args: &[&str]) -> Outcome {
    run_args(std::iter::once("asmkit").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.code, EXIT_OK, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("stdout is JSON")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .expect("array")
        .iter()
        .map(|x| x.as_str().expect("string").to_string())
        .collect()
}

#[test]
fn refine_asm_four() {
    let v = json(&["refine", "--class", "asm", "--n", "4"]);
    assert_eq!(v["schema"], "asmkit/1");
    assert_eq!(v["command"], "refine");
    assert_eq!(strings(&v["counts"]), ["7", "14", "14", "7"]);
    assert_eq!(v["total"], "42");
    assert_eq!(v["agrees"], true);
}

#[test]
fn refine_uasm_at_y_one() {
    let v = json(&["refine", "--class", "uasm", "--n", "2", "--y", "1"]);
    assert_eq!(strings(&v["counts"]), ["2", "4", "4", "2"]);
    assert_eq!(v["agrees"], true);
}

#[test]
fn uasm_counts_are_polynomials_without_y() {
    let v = json(&["refine", "--class", "uasm", "--n", "1"]);
    let rows: Vec<Vec<String>> = v["counts"].as_array().unwrap().iter().map(strings).collect();
    assert_eq!(rows, [vec!["0", "1"], vec!["1"]]);
    assert_eq!(strings(&v["total"]), ["1", "1"]);
}

#[test]
fn refine_x_weight() {
    // ASMs of order 3 by number of −1 entries: 6 + x
    let v = json(&["refine", "--class", "asm", "--n", "3", "--x", "2"]);
    assert_eq!(v["total"], "8");
    assert_eq!(v["formula"], Value::Null);
    // VSASMs of order 5: 2 + x
    let v = json(&["refine", "--class", "vsasm", "--n", "2", "--x", "5"]);
    assert_eq!(v["total"], "7");
}

#[test]
fn refine_last_column_matches_first_for_asm() {
    let first = json(&["refine", "--class", "asm", "--n", "5"]);
    let last = json(&[
        "refine",
        "--class",
        "asm",
        "--n",
        "5",
        "--statistic",
        "last-column",
    ]);
    assert_eq!(first["counts"], last["counts"]);
    assert_eq!(last["agrees"], true);
}

#[test]
fn kutin_yuen_via_cli() {
    let o = json(&["refine", "--class", "osasm", "--n", "2"]);
    assert_eq!(strings(&o["counts"]), ["0", "1", "1", "1"]);
    assert_eq!(o["agrees"], true);
}

#[test]
fn enumerate_counts_and_lists() {
    let v = json(&["enumerate", "--class", "asm", "--n", "5"]);
    assert_eq!(v["count"], "429");
    let v = json(&["enumerate", "--boundary", "uturn", "--n", "1", "--list"]);
    assert_eq!(v["count"], "2");
    assert_eq!(v["members"].as_array().unwrap().len(), 2);
    let v = json(&["enumerate", "--class", "asm", "--n", "3", "--list"]);
    let members = strings(&v["members"]);
    assert_eq!(members.len(), 7);
    assert!(members.contains(&"0+0+-+0+0".to_string()));
}

#[test]
fn table_totals() {
    let v = json(&["table", "--class", "vsasm", "--max-n", "3"]);
    let e: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["enumerated"].as_str().unwrap())
        .collect();
    assert_eq!(e, ["1", "3", "26"]);
    assert_eq!(v["agrees"], true);
    let v = json(&["table", "--class", "uasm", "--max-n", "2", "--y", "1"]);
    assert_eq!(v["rows"][1]["enumerated"], "12");
}

#[test]
fn partition_agrees_on_every_boundary() {
    for b in ["dwbc", "uturn", "os"] {
        for a in ["zeta6", "7/4"] {
            let v = json(&["partition", "--boundary", b, "--n", "2", "--a", a]);
            assert_eq!(v["agrees"], true, "{b} at a = {a}");
            let expected = if a == "zeta6" { 2 } else { 1 };
            assert_eq!(v["formulas"].as_array().unwrap().len(), expected);
        }
    }
}

#[test]
fn partition_with_explicit_parameters() {
    let v = json(&[
        "partition",
        "--boundary",
        "dwbc",
        "--n",
        "1",
        "--a",
        "2",
        "--u",
        "3,5",
    ]);
    // one vertex of type c: σ(a²) = 4 − 1/4
    assert_eq!(v["state_sum"], "15/4");
    assert_eq!(v["seed"], Value::Null);
    let out = run(&["partition", "--boundary", "dwbc", "--n", "2", "--u", "1,2,3"]);
    assert_eq!(out.code, EXIT_INVALID);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["refine", "--class", "asm", "--n", "9"]).code, EXIT_CAP);
    assert_eq!(run(&["table", "--class", "vsasm", "--max-n", "5"]).code, EXIT_CAP);
    assert_eq!(run(&["refine", "--class", "nope", "--n", "2"]).code, EXIT_INVALID);
    assert_eq!(run(&["refine", "--class", "asm", "--n", "0"]).code, EXIT_INVALID);
    assert_eq!(
        run(&["refine", "--class", "asm", "--n", "3", "--y", "2"]).code,
        EXIT_INVALID
    );
    assert_eq!(
        run(&["partition", "--boundary", "os", "--n", "1", "--a", "0"]).code,
        EXIT_INVALID
    );
    assert_eq!(
        run(&["partition", "--boundary", "os", "--n", "1", "--b", "2"]).code,
        EXIT_INVALID
    );
    assert_eq!(run(&["enumerate", "--n", "2"]).code, EXIT_INVALID);
    assert_eq!(
        run(&[
            "refine",
            "--class",
            "uasm",
            "--n",
            "2",
            "--statistic",
            "last-column"
        ])
        .code,
        EXIT_INVALID
    );
    assert_eq!(run(&["--help"]).code, EXIT_OK);
    // EXIT_FAILED is reserved for failed comparisons; nothing here should produce it
    assert_ne!(run(&["refine", "--class", "asm", "--n", "2"]).code, EXIT_FAILED);
}

#[test]
fn pole_at_given_parameters_is_invalid() {
    // u_1 = u_2 makes σ(ū_1 u_2) vanish in the Pfaffian prefactor
    let out = run(&["partition", "--boundary", "os", "--n", "1", "--u", "2,2"]);
    assert_eq!(out.code, EXIT_INVALID, "{}", out.stdout);
    assert!(out.stderr.contains("pole"));
}

#[test]
fn csv_and_text_formats() {
    let out = run(&["--format", "csv", "refine", "--class", "asm", "--n", "3"]);
    assert_eq!(out.stdout, "r,count,formula\n1,2,2\n2,3,3\n3,2,2\n");
    let out = run(&["--format", "text", "refine", "--class", "asm", "--n", "3"]);
    assert!(out.stdout.contains("formula agrees: yes"));
    let out = run(&[
        "--format",
        "csv",
        "verify",
        "--suite",
        "functions",
        "--max-n",
        "1",
        "--samples",
        "2",
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out
        .stdout
        .starts_with("suite,tag,n_min,n_max,samples,verdict,witness,note\n"));
}

#[test]
fn cache_hits_equal_fresh_results() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cases: [&[&str]; 5] = [
        &["refine", "--class", "uasm", "--n", "3"],
        &["refine", "--class", "vsasm", "--n", "3", "--x", "1/2"],
        &["enumerate", "--boundary", "os", "--n", "2"],
        &["enumerate", "--class", "osasm", "--n", "3"],
        &["table", "--class", "asm", "--max-n", "5"],
    ];
    for args in cases {
        let fresh = run(args);
        let mut cached_args = vec!["--cache-dir", d];
        cached_args.extend_from_slice(args);
        let first = run(&cached_args);
        let hit = run(&cached_args);
        assert_eq!(fresh, first, "{args:?}");
        assert_eq!(fresh, hit, "{args:?}");
    }
    let files: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert!(
        files.contains(&"refine_uasm_3_first-column_asmkit-1.json".to_string()),
        "{files:?}"
    );
    assert!(
        files.iter().all(|f| f.ends_with(".json")),
        "stray temporary files: {files:?}"
    );
}

#[test]
fn cache_entry_is_what_gets_reported() {
    // a planted entry proves the second run reads the cache rather than recomputing
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--cache-dir", d, "enumerate", "--class", "asm", "--n", "4"];
    assert_eq!(json(&args)["count"], "42");
    let path = dir.path().join("enumerate_asm_4_none_asmkit-1.json");
    let text = fs::read_to_string(&path).unwrap().replace("\"42\"", "\"41\"");
    fs::write(&path, text).unwrap();
    assert_eq!(json(&args)["count"], "41");
}

#[test]
fn output_is_identical_across_thread_counts() {
    let base = ["partition", "--boundary", "os", "--n", "3", "--seed", "7"];
    let verify = ["verify", "--suite", "formulas", "--max-n", "2", "--samples", "3"];
    for args in [&base[..], &verify[..]] {
        let outs: Vec<Outcome> = ["1", "2", "5"]
            .iter()
            .map(|t| {
                let mut a = vec!["--threads", t];
                a.extend_from_slice(args);
                run(&a)
            })
            .collect();
        assert_eq!(outs[0].code, EXIT_OK);
        assert!(outs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}

#[test]
fn binary_matches_in_process_run() {
    let args = ["--format", "text", "table", "--class", "uasm", "--max-n", "2"];
    let out = Command::new(env!("CARGO_BIN_EXE_asmkit"))
        .args(args)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), run(&args).stdout);

    let out = Command::new(env!("CARGO_BIN_EXE_asmkit"))
        .args(["refine", "--class", "asm", "--n", "8"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_CAP));
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_asmkit"))
        .args(["enumerate", "--class", "vsasm", "--n", "2"])
        .env("ASMKIT_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(dir.path().join("enumerate_vsasm_2_none_asmkit-1.json").exists());
}
