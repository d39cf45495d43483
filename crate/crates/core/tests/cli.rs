use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.anon"));
    path.to_str().unwrap().to_owned()
}

fn anonlevel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anonlevel"))
        .args(args)
        .env_remove("NO_COLOR")
        .output()
        .unwrap()
}

fn code(args: &[&str]) -> i32 {
    anonlevel(args).status.code().unwrap()
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(anonlevel(args).stdout).unwrap()
}

fn stderr(args: &[&str]) -> String {
    String::from_utf8(anonlevel(args).stderr).unwrap()
}

#[test]
fn classify_reports_json_levels() {
    let out = stdout(&["classify", &corpus("pki-public-key"), "--observee", "User", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["schema_version"], "1");
    assert_eq!(report["model"], "pki-public-key");
    assert_eq!(report["classification"]["level"]["degree"], 0);
    assert_eq!(report["classification"]["level"]["abbr"], "VA");
    assert_eq!(report["params"]["trusted"], serde_json::json!(["User"]));
}

#[test]
fn classify_text_uses_table_columns() {
    let out = stdout(&["classify", &corpus("ecash-forfeitable"), "--observee", "Payer"]);
    assert!(out.contains("TYPE OF ANONYMITY             unlinkable forfeitable anonymity"), "{out}");
    assert!(out.contains("SCOPE OF TRUST                Payer"), "{out}");
    assert!(!out.contains('\x1b'));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = ["classify", &corpus("ecash-forfeitable"), "--observee", "Payer", "--format", "json"];
    let first = anonlevel(&args).stdout;
    assert_eq!(first, anonlevel(&args).stdout);
    assert!(!first.contains(&b'\r'));
    assert!(!String::from_utf8(first).unwrap().contains(env!("CARGO_MANIFEST_DIR")));
}

#[test]
fn bad_references_exit_2() {
    assert_eq!(code(&["classify", &corpus("pki-public-key"), "--observee", "Nobody"]), 2);
    assert!(stderr(&["classify", &corpus("pki-public-key"), "--observee", "Nobody"]).contains("DSL-004"));
    assert_eq!(code(&["classify", &corpus("credit-card-plain"), "--trust", "Ghost"]), 2);
    assert_eq!(code(&["classify", "/no/such/file.anon"]), 2);
    assert_eq!(code(&["classify"]), 2);
}

#[test]
fn missing_observee_with_several_roles_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.anon");
    std::fs::write(&path, "service \"two\" { entity A kind=participant role entity B kind=participant role }\n").unwrap();
    let path = path.to_str().unwrap();
    assert_eq!(code(&["classify", path]), 2);
    assert!(stderr(&["classify", path]).contains("CLS-007"));
    assert_eq!(code(&["classify", path, "--observee", "A"]), 0);
}

#[test]
fn trust_flags_are_additive_and_comma_delimited() {
    let file = corpus("credit-card-plain");
    let level = |extra: &[&str]| {
        let mut args = vec!["classify", file.as_str(), "--format", "json"];
        args.extend_from_slice(extra);
        let report: serde_json::Value = serde_json::from_str(&stdout(&args)).unwrap();
        report["classification"]["level"]["abbr"].as_str().unwrap().to_owned()
    };
    assert_eq!(level(&[]), "AA");
    assert_eq!(level(&["--trust", "IssuerBank"]), "RA");
    assert_eq!(level(&["--trust", "Merchant,IssuerBank"]), "RA");
    assert_eq!(level(&["--trust", "Merchant", "--trust", "IssuerBank"]), "RA");
}

#[test]
fn sweep_shows_upgrade_path() {
    let out = stdout(&["sweep", &corpus("credit-card-plain"), "--observee", "Customer"]);
    let rows: Vec<&str> = out.lines().skip(2).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].starts_with('-') && rows[0].contains(" AA "), "{out}");
    assert!(rows[1].starts_with("IssuerBank ") && rows[1].contains(" RA "), "{out}");

    let single = stdout(&["sweep", &corpus("pki-public-key")]);
    assert_eq!(single.lines().count(), 3, "{single}");
}

#[test]
fn sweep_json_nests_classifications() {
    let out = stdout(&["sweep", &corpus("revocable-transaction"), "--format", "json"]);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert!(row["classification"]["level"]["degree"].is_u64());
    }
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&["check", &corpus("ecash-forfeitable"), "--observee", "Payer", "--require-level", "FA"]), 0);
    assert_eq!(code(&["check", &corpus("pki-public-key"), "--observee", "User", "--require-level", "RA"]), 1);
    assert_eq!(code(&["check", &corpus("pki-public-key"), "--require-level", "0"]), 0);
    assert_eq!(code(&["check", &corpus("pki-public-key"), "--require-level", "0", "--strict"]), 1);
    let strict = ["check", &corpus("group-signature"), "--observee", "Member", "--require-level", "RA", "--strict"];
    assert_eq!(code(&strict), 0);
    let verdict = stdout(&strict);
    assert_eq!(verdict.lines().count(), 1);
    assert!(verdict.starts_with("PASS"));
    assert_eq!(code(&["check", &corpus("pki-public-key"), "--require-level", "ZA"]), 2);
}

#[test]
fn validate_reports_located_model_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.anon");
    let text = "service \"broken\" {\n  entity U kind=participant role\n  pii card of U resolvability=indirect record_holder=Bank\n}\n";
    std::fs::write(&path, text).unwrap();
    let path = path.to_str().unwrap();
    assert_eq!(code(&["validate", path]), 2);
    let err = stderr(&["validate", path]);
    assert!(err.contains(":3:"), "{err}");
    assert!(err.contains("DSL-004"), "{err}");

    let path = dir.path().join("holderless.anon");
    let text = "service \"holderless\" {\n  entity U kind=participant role\n  pii card of U resolvability=indirect\n}\n";
    std::fs::write(&path, text).unwrap();
    let err = stderr(&["validate", path.to_str().unwrap()]);
    assert!(err.contains(":3:7: error[MOD-003]"), "{err}");
    assert_eq!(code(&["validate", &corpus("group-signature")]), 0);
}

#[test]
fn map_prints_table_rows() {
    let out = stdout(&["map", "--level", "UA", "--variant", "unlinkable"]);
    assert_eq!(
        out,
        "unlinkable unconditional anonymity: no identification / initially unlinkable pseudonyms / unconditional one-time anonymity\n"
    );
    let out = stdout(&["map", "--level", "FA", "--variant", "linkable"]);
    assert!(out.contains("X / (initially unlinkable transaction pseudonyms) / X"), "{out}");
    assert_eq!(code(&["map", "--level", "VA", "--variant", "linkable"]), 2);
}

#[test]
fn corpus_lists_and_prints_models() {
    let listing = stdout(&["corpus"]);
    assert_eq!(listing.lines().count(), 9);
    let text = stdout(&["corpus", "onetime-anon"]);
    assert!(text.contains("service \"onetime-anon\""));
    assert_eq!(code(&["corpus", "missing"]), 2);
}

#[test]
fn out_flag_writes_file_and_nothing_else() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let args = [
        "classify",
        &corpus("onetime-anon"),
        "--format",
        "json",
        "--out",
        target.to_str().unwrap(),
    ];
    let output = anonlevel(&args);
    assert_eq!(output.status.code(), Some(0));
    assert!(output.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    assert!(written.contains("\"abbr\": \"UA\""));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn in_process_runner_honours_colour_flag() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = ["anonlevel", "check", &corpus("pki-public-key"), "--require-level", "RA"];
    let status = anonlevel::cli::run(args, &mut out, &mut err, true);
    assert_eq!(status.code(), 1);
    assert!(String::from_utf8(out).unwrap().contains("\x1b[1;31mFAIL"));
}
