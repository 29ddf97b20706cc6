use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pentaspiral"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn generate_reference_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = path(dir.path(), "out.svg");
    let o = run(&[
        "generate", "--n", "5", "--C", "156", "--D", "78", "--rings", "3", "--svg", &svg,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("C_5"), "{}", stdout(&o));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<path").count(), 120);
}

#[test]
fn generate_then_verify_d7() {
    let dir = tempfile::tempdir().unwrap();
    let json = path(dir.path(), "t.json");
    let o = run(&[
        "generate",
        "--n",
        "7",
        "--dihedral",
        "--rings",
        "3",
        "--arms",
        "--json",
        &json,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["verify", "--json", &json]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("D_7, all checks passed"));
}

#[test]
fn pipelines_for_both_families() {
    let dir = tempfile::tempdir().unwrap();
    for n in 3..=8 {
        for rings in 1..=4 {
            for dihedral in [false, true] {
                let json = path(dir.path(), &format!("p{n}_{rings}_{dihedral}.json"));
                let n_s = n.to_string();
                let r_s = rings.to_string();
                let mut args = vec!["generate", "--n", &n_s, "--rings", &r_s, "--json", &json];
                if dihedral {
                    args.push("--dihedral");
                }
                let o = run(&args);
                assert!(o.status.success(), "{args:?}: {}", stderr(&o));
                let o = run(&["verify", "--json", &json]);
                assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
            }
        }
    }
}

#[test]
fn hexagon_level_and_houses_verify() {
    let dir = tempfile::tempdir().unwrap();
    let hex = path(dir.path(), "hex.json");
    assert!(
        run(&["generate", "--n", "4", "--level", "hexagon", "--json", &hex])
            .status
            .success()
    );
    assert_eq!(run(&["verify", "--json", &hex]).status.code(), Some(0));
    for kind in ["c1", "c2", "d1", "d2"] {
        let json = path(dir.path(), &format!("{kind}.json"));
        let o = run(&[
            "generate", "--houses", kind, "--rings", "2", "--json", &json,
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        let want = kind.to_uppercase().replace('1', "_1").replace('2', "_2");
        assert!(stdout(&o).contains(&want), "{kind}: {}", stdout(&o));
        let o = run(&["verify", "--json", &json]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stdout(&o));
    }
}

#[test]
fn tampered_document_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let json = path(dir.path(), "t.json");
    assert!(
        run(&["generate", "--n", "5", "--rings", "2", "--json", &json])
            .status
            .success()
    );
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let x = v["tiles"][4]["vertices"][0][0].as_f64().unwrap();
    v["tiles"][4]["vertices"][0][0] = serde_json::Value::from(x + 1e-3);
    std::fs::write(&json, serde_json::to_vec(&v).unwrap()).unwrap();
    let o = run(&["verify", "--json", &json]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("verification failed"));
}

#[test]
fn wrong_declared_symmetry_fails() {
    let dir = tempfile::tempdir().unwrap();
    let json = path(dir.path(), "t.json");
    assert!(
        run(&["generate", "--n", "5", "--rings", "2", "--json", &json])
            .status
            .success()
    );
    let text = std::fs::read_to_string(&json).unwrap();
    std::fs::write(
        &json,
        text.replacen(
            "\"symmetry_declared\": \"C\"",
            "\"symmetry_declared\": \"D\"",
            1,
        ),
    )
    .unwrap();
    let o = run(&["verify", "--json", &json]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn schema_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let json = path(dir.path(), "bad.json");
    std::fs::write(&json, r#"{"schema_version": "2"}"#).unwrap();
    let o = run(&["verify", "--json", &json]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("schema"), "{}", stderr(&o));
}

#[test]
fn argument_errors_exit_one_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let json = path(dir.path(), "never.json");
    for args in [
        vec!["generate", "--rings", "2", "--json", &json],
        vec!["generate", "--n", "5", "--houses", "c2", "--json", &json],
        vec!["generate", "--n", "2", "--json", &json],
        vec![
            "generate",
            "--n",
            "5",
            "--dihedral",
            "--C",
            "150",
            "--json",
            &json,
        ],
        vec!["generate", "--houses", "d1", "--arms", "--json", &json],
        vec!["generate", "--n", "5", "--tolerance", "-1", "--json", &json],
        vec!["generate", "--n", "5", "--rings", "0", "--json", &json],
        vec!["generate", "--n", "5", "--C", "100", "--json", &json],
        vec!["generate", "--n", "5", "--level", "square"],
        vec!["verify"],
        vec!["info"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!stderr(&o).is_empty(), "{args:?}");
        assert!(stdout(&o).is_empty(), "{args:?}");
    }
    assert!(!Path::new(&json).exists());
}

#[test]
fn info_prints_pentagon() {
    let o = run(&["info", "--n", "5", "--C", "156", "--D", "78"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(
        s.contains("A = 132.00000000°") && s.contains("E = 102.00000000°"),
        "{s}"
    );
    assert!(s.contains("feasible: yes") && s.contains("C_5"), "{s}");
    let o = run(&["info", "--n", "7", "--dihedral"]);
    assert!(stdout(&o).contains("D_7"));
    assert_eq!(
        run(&["info", "--n", "5", "--C", "175", "--D", "5"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert!(stdout(&run(&["generate", "--help"])).contains("--dihedral"));
}

#[test]
fn library_entry_point() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = pentaspiral::cli::run(["pentaspiral", "info", "--n", "6"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert!(String::from_utf8(out)
        .unwrap()
        .contains("B =  60.00000000°"));
}
