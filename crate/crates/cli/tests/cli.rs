use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parity-partitions"))
        .args(args)
        .env_remove("PARITY_PARTITIONS_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn coeffs_reproduce_the_eu_ou_table() {
    let o = run(&["coeffs", "--family", "sup=ou,sub=eu"]);
    assert!(o.status.success());
    let values: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().to_string())
        .collect();
    let expected = "1,1,2,2,4,4,7,7,12,12,19,19,30,30,45,45,67,67,97";
    assert_eq!(values.join(","), expected);
}

#[test]
fn family_spellings_agree() {
    let a = stdout(&run(&[
        "coeffs",
        "--order",
        "40",
        "--family",
        "sup=ou,sub=eu",
    ]));
    let b = stdout(&run(&["coeffs", "--order", "40", "--family", "ou/eu"]));
    let c = stdout(&run(&["coeffs", "--order", "40", "--family", "eu^ou"]));
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn oracle_check_passes_at_forty() {
    let o = run(&["oracle-check"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 9);
    assert!(out.lines().skip(1).all(|l| l.contains(",40,true,")));
}

#[test]
fn usage_errors_exit_nonzero() {
    let o = run(&["oracle-check", "--oracle-bound", "61"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    let o = run(&["coeffs", "--order", "10"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["em", "--dim", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["coeffs", "--family", "eu^ed"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_is_versioned_and_deterministic() {
    let args = ["identities", "--order", "120", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"], "identities");
    assert_eq!(doc["passed"], true);
    assert!(doc["data"].as_array().unwrap().len() >= 14);
}

#[test]
fn monotone_reports_the_two_witnesses() {
    let o = run(&["monotone", "--order", "200"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("eu^od,full,199,false,4,3,2,false,true"));
    assert!(out.contains("ed^od,full,199,false,6,3,2,false,true"));
}

#[test]
fn chain_failure_sets_exit_code() {
    // ed^ou overtakes eu^od for good, so no starting point exists
    let o = run(&["chain", "--order", "300"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("ed^ou,eu^od,299,299,"));
    // the other six pairs alone settle early
    let o = run(&[
        "chain", "--order", "300", "--family", "ed^od", "--family", "od^ed", "--family", "od^eu",
        "--family", "ed^ou",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",11"));
}

#[test]
fn output_file_is_written() {
    let dir = std::env::temp_dir().join(format!("pp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("consistency.csv");
    let o = run(&[
        "consistency",
        "--family",
        "od^ed",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("family,points,max_rel_error,passed\nod^ed,"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn lemma_selection_and_rays() {
    let o = run(&[
        "lemmas", "--lemma", "theta", "--alpha", "0", "--radii", "0.2,0.1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = run(&["lemmas", "--lemma", "theta", "--alpha", "1.6"]);
    assert_eq!(o.status.code(), Some(2));
}
