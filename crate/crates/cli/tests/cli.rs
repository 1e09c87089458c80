use std::process::{Command, Output};

fn levels(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_levels"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_blt_three() {
    let o = levels(&["count", "--kind", "blt", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "512");
    let o = levels(&["count", "--kind", "lt", "4", "--materialize"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn check_exit_codes() {
    assert_eq!(
        levels(&["check", "--kind", "lt", "--height", "3", "--suite", "LT"])
            .status
            .code(),
        Some(0)
    );
    let o = levels(&[
        "check",
        "--kind",
        "lt",
        "--height",
        "3",
        "--suite",
        "LT+Endless",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "FAIL");
    let endless = v["axioms"]
        .as_array()
        .unwrap()
        .iter()
        .find(|a| a["name"] == "Endless")
        .unwrap();
    assert_eq!(endless["witness"]["reverified"], true);
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(
        levels(&["check", "--suite", "NoSuch"]).status.code(),
        Some(2)
    );
    assert_eq!(levels(&["eval", "(in x"]).status.code(), Some(2));
    assert_eq!(levels(&["game", "leq", "{", "{}"]).status.code(), Some(2));
}

#[test]
fn games() {
    let o = levels(&["game", "leq", "{{}}", "{}"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "false");
    assert_eq!(
        stdout(&levels(&["game", "value", "{{}, co{{}}}"])).trim(),
        "1/2"
    );
    assert_eq!(
        stdout(&levels(&["game", "value", "{{}, co{}}"])).trim(),
        "not a number"
    );
    assert_eq!(
        levels(&["surreal", "is", "{{}, co{}}"]).status.code(),
        Some(1)
    );
    assert_eq!(
        stdout(&levels(&["game", "canon", "co{}", "--height", "1"])).trim(),
        "{}"
    );
}

#[test]
fn translations_reparse() {
    let h = stdout(&levels(&["translate", "--dir", "chf2hf", "co{}"]));
    assert_eq!(h.trim(), "{{}}");
    let back = stdout(&levels(&["translate", "--dir", "hf2chf", h.trim()]));
    assert_eq!(back.trim(), "co{}");
    let f = stdout(&levels(&[
        "translate",
        "--dir",
        "modalize",
        "(forall x (in x a))",
    ]));
    assert!(levels_core::Formula::parse(f.trim()).is_ok());
}

#[test]
fn kripke_and_eval() {
    assert_eq!(
        levels(&["kripke", "--height", "2", "--check", "--suite", "PST"])
            .status
            .code(),
        Some(0)
    );
    let o = levels(&[
        "eval",
        "--height",
        "2",
        "(dia (forall x (forall y (notin x y))))",
    ]);
    assert_eq!(stdout(&o).trim(), "true");
}

#[test]
fn json_is_stable() {
    let a = stdout(&levels(&[
        "enum", "--kind", "blt", "--height", "2", "--format", "json",
    ]));
    let b = stdout(&levels(&[
        "enum", "--kind", "blt", "--height", "2", "--format", "json",
    ]));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["sets"].as_array().unwrap().len(), 8);
}

#[test]
fn model_from_file() {
    let dir = std::env::temp_dir().join(format!("levels-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("quine.json");
    let o = levels(&[
        "enum",
        "--enumerate",
        "2",
        "--suite",
        "BLT",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    std::fs::write(&path, v["models"][0].to_string()).unwrap();
    let o = levels(&["check", "--model", path.to_str().unwrap(), "--suite", "BLT"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}
