use std::process::{Command, Output};

fn wnalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wnalg")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = wnalg(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn normalize() {
    assert_eq!(
        stdout(&["normalize", "--algebra", "wnov", "x1*(x2*(x3*x4))"]),
        "-1 A(x1, x3*x2, x4)"
    );
    assert_eq!(stdout(&["normalize", "--algebra", "wlc", "(x2*x1)*x3"]), "x1 L[x2] R[x3]");
    assert_eq!(stdout(&["normalize", "(x1*x2)*(x3*x4)"]), "0");
    let v = json(&["normalize", "--field", "fp:7", "1/2 x2*x1"]);
    assert_eq!(v["normal_form"], "-3 x2*x1");
}

#[test]
fn dim_and_basis() {
    assert_eq!(stdout(&["dim", "--identities", "wnov2", "--multidegree", "1,1,1,1"]), "16");
    assert_eq!(
        stdout(&["dim", "--identities", "wlc2", "--multidegree", "1,1,1", "--field", "fp:1009"]),
        "12"
    );
    let v = json(&["dim", "--identities", "wnov2", "--multidegree", "1,1,1"]);
    assert_eq!(v["words"], 12);
    assert_eq!(v["rank"], 3);
    assert_eq!(v["dimension"], 9);
    assert_eq!(stdout(&["basis", "--identities", "met", "--multidegree", "1,1"]), "x1*x2\nx2*x1");
    let v = json(&["basis", "--identities", "wnov2", "--multidegree", "1,1,1,1,1"]);
    assert_eq!(v["basis"].as_array().unwrap().len(), 5);
}

#[test]
fn identity_file() {
    let path = std::env::temp_dir().join(format!("wnalg-cli-{}.txt", std::process::id()));
    std::fs::write(
        &path,
        "# metabelian and right symmetric\n(v1*v2)*(v3*v4) = 0\nA(v1,v2,v3) - A(v1,v3,v2) = 0\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let alone = stdout(&["dim", "--identities", p, "--multidegree", "1,1,1"]);
    assert_eq!(alone, "9");
    let with_wn = stdout(&["dim", "--identities", &format!("{p}+wn"), "--multidegree", "1,1,1,1"]);
    assert_eq!(with_wn, "16");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn check_identity() {
    let out = stdout(&[
        "check-identity",
        "--algebra",
        "wlc",
        "--identity",
        "v1*(v2*v3) - v2*(v1*v3) = 0",
        "--max-degree",
        "3",
    ]);
    assert!(out.contains("fails at v1 = x1, v2 = x2, v3 = x3"), "{out}");
    let v = json(&[
        "check-identity",
        "--algebra",
        "wnov",
        "--identity",
        "A(v1,v2,v3) - A(v1,v3,v2) = 0",
        "--max-degree",
        "4",
    ]);
    assert_eq!(v["holds"], true);
    assert!(v["tuples"].as_u64().unwrap() > 0);
}

#[test]
fn membership() {
    assert_eq!(stdout(&["membership", "--identities", "nov2", "x1*(x2*(x3*(x4*x5)))"]), "true");
    assert_eq!(stdout(&["membership", "--identities", "nov2", "x1*(x2*(x3*x4))"]), "false");
    assert_eq!(stdout(&["membership", "--identities", "met", "(x1*x2)*(x3*x4)"]), "true");
}

#[test]
fn classify() {
    let out = stdout(&["classify", "x1*x2 + 2 x2*x1"]);
    assert!(out.starts_with("nilpotent of index at most 5"), "{out}");
    assert!(out.contains("confirmed"), "{out}");
    let v = json(&["classify", "x1*(x2*x3)"]);
    assert_eq!(v["verdict"], "non-nilpotent-candidate");
    let v = json(&["classify", "--no-verify", "A(x1,x2,x3)"]);
    assert_eq!(v["bound"], 5);
    assert!(v.get("oracle").is_none());
}

#[test]
fn verify_suite_exit_code() {
    let out = wnalg(&["verify", "--suite", "oracle"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("criterion 3 PASS"), "{text}");
    assert!(text.contains("criterion 5 PASS"), "{text}");
    assert!(text.contains("2 of 2 criteria passed"), "{text}");
}

#[test]
fn errors_exit_with_code_two() {
    for args in [
        &["normalize", "x1*x2*x3"][..],
        &["dim", "--identities", "nosuch", "--multidegree", "1,1"],
        &["dim", "--identities", "wnov2", "--multidegree", "1,1,1,1,1,1,1"],
        &["classify", "x1*(x1*x2)"],
        &["check-identity", "--algebra", "wnov", "--identity", "x1*v2 = 0"],
    ] {
        let out = wnalg(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "), "{args:?}");
    }
    // argument errors come from the parser
    assert!(!wnalg(&["normalize", "--algebra", "assoc", "x1"]).status.success());
    assert!(!wnalg(&["dim", "--identities", "wnov2", "--multidegree", "a,b"]).status.success());
}
