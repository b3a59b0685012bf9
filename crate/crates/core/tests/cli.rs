use std::process::{Command, Output};

fn mdtrees(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdtrees"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_and_value_examples() {
    let out = mdtrees(&["table", "o", "--max-n", "3", "--format", "csv"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l == "3,0,46"));

    let out = mdtrees(&["table", "z", "--max-n", "2", "--format", "plain"]);
    assert_eq!(stdout(&out), "1\n1 1\n2 4 3\n");

    assert_eq!(
        mdtrees(&["table", "r", "--max-n", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        mdtrees(&["table", "o", "--max-n", "3", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );

    assert_eq!(
        stdout(&mdtrees(&["value", "o", "--n", "3", "--k", "1"])),
        "34\n"
    );
    assert_eq!(
        stdout(&mdtrees(&["value", "z", "--n", "5", "--k", "5"])),
        "945\n"
    );
    assert_eq!(
        stdout(&mdtrees(&["value", "f", "--n", "3", "--k", "3"])),
        "1\n"
    );
    assert_eq!(
        mdtrees(&["value", "o", "--n", "3", "--k", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn md_examples() {
    let out = mdtrees(&["md", "9(7(1(8,4)),3,6(2,10(0,5)))"]);
    assert!(stdout(&out).starts_with("md={1,2,3,6,7,9} k=5\n"));
    assert!(stdout(&mdtrees(&["md", "0"])).starts_with("md={0} k=0\n"));
    let bad = mdtrees(&["md", "0(1,1)"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
}

#[test]
fn enumerate_examples() {
    assert_eq!(
        stdout(&mdtrees(&["enumerate", "O", "--n", "2"])),
        "0:5 1:4 2:3 total:12\n"
    );
    let listed = mdtrees(&["enumerate", "F", "--n", "4", "--k", "2", "--list"]);
    assert_eq!(stdout(&listed).lines().count(), 60);
    assert!(stdout(&mdtrees(&["enumerate", "Decreasing", "--n", "4"])).contains("total:105"));
    assert_eq!(
        mdtrees(&["enumerate", "O", "--n", "8"]).status.code(),
        Some(2)
    );
    assert!(mdtrees(&["enumerate", "O", "--n", "1", "--max-cap", "8"])
        .status
        .success());
}

#[test]
fn verify_exit_codes() {
    assert_eq!(
        mdtrees(&["verify", "rowsum", "--max-n", "12"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        mdtrees(&["verify", "oracle", "--max-n", "99"])
            .status
            .code(),
        Some(2)
    );
    let json = mdtrees(&["verify", "ramanujan", "--max-n", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["suite"], "ramanujan");
    assert_eq!(v["all_passed"], true);
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["table", "f", "--max-n", "8", "--format", "bfile"][..],
        &["enumerate", "Z", "--n", "4", "--format", "csv"][..],
        &["verify", "all", "--max-n", "3"][..],
    ] {
        assert_eq!(mdtrees(args).stdout, mdtrees(args).stdout, "{args:?}");
    }
}
