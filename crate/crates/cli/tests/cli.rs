use std::process::Command;

use serde_json::Value;

fn kacd(args: &[&str]) -> (i32, Vec<Value>) {
    let o = Command::new(env!("CARGO_BIN_EXE_kacd")).args(args).env("KACD_SEED", "3").output().unwrap();
    let lines = String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON record per line"))
        .collect();
    (o.status.code().unwrap(), lines)
}

fn valuation_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("kacd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn check_exit_codes() {
    let (code, out) = kacd(&["check", "x", "le", "x + y"]);
    assert_eq!(code, 0);
    assert_eq!(out[0]["status"], "holds");
    assert_eq!(out[0]["checks"][0]["procedure"], "variable");

    let (code, out) = kacd(&["check", "y", "le", "!x", "--verify"]);
    assert_eq!(code, 1);
    let cx = &out[0]["checks"][0]["counterexample"];
    assert_eq!(cx["side"], "left-not-in-right");
    assert!(cx["valuation"]["vars"]["x"].is_object());

    let (code, out) = kacd(&["check", "x*", "le", "x"]);
    assert_eq!(code, 2);
    assert_eq!(out[0]["status"], "unsupported");

    let (code, out) = kacd(&["check", "x ; x ; x", "le", "x*", "--max-blocks", "2"]);
    assert_eq!(code, 2);
    assert_eq!(out[0]["status"], "budget-exceeded");

    let (code, out) = kacd(&["check", "x +", "le", "x"]);
    assert_eq!(code, 3);
    assert!(out[0]["error"].as_str().unwrap().contains("syntax error"));
}

#[test]
fn check_forced_fragment_and_modes() {
    let (code, out) = kacd(&["check", "1", "le", "x + !x", "--fragment", "identity"]);
    assert_eq!((code, &out[0]["checks"][0]["procedure"]), (0, &Value::from("identity")));
    let (code, _) = kacd(&["check", "x", "le", "x", "--fragment", "identity"]);
    assert_eq!(code, 2);
    let (a, x) = kacd(&["check", "x ; !1", "le", "!1 ; x", "--mode", "fullword"]);
    let (b, y) = kacd(&["check", "x ; !1", "le", "!1 ; x", "--mode", "inclusion"]);
    assert_eq!(a, b);
    assert_eq!(x[0]["status"], y[0]["status"]);
    let (code, out) = kacd(&["check", "!0", "eq", "!x + !y", "--fragment", "universality"]);
    assert_eq!(code, 1, "a refutation outranks the unsupported reverse direction");
    assert_eq!(out[0]["checks"][1]["result"], "unsupported");
}

#[test]
fn lang_equiv_and_word_theory() {
    let (code, out) = kacd(&["lang-equiv", "!x", "!x ; !x"]);
    assert_eq!((code, &out[0]["status"]), (0, &Value::from("equal")));
    let (code, _) = kacd(&["lang-equiv", "x ; y", "y ; x"]);
    assert_eq!(code, 1);

    let (code, out) = kacd(&["word-theory", "--level", "1", "x y", "y x"]);
    assert_eq!((code, &out[0]["justification"]["rule"]), (0, &Value::from("parikh-rule")));
    let (code, out) = kacd(&["word-theory", "--level", "2", "x y", "y x", "--verify"]);
    assert_eq!(code, 1);
    assert_eq!(out[0]["counterexample"]["witness"], serde_json::json!(["a", "b"]));
    let (code, _) = kacd(&["word-theory", "--level", "3", "x", "x"]);
    assert_ne!(code, 0);
}

#[test]
fn eval_and_words_to_letters() {
    let f = valuation_file(
        "v.json",
        r#"{"alphabet":["a","b"],"vars":{"x":{"kind":"words","items":["a","ab"]},"y":{"kind":"regex","expr":"b*"}}}"#,
    );
    let (code, out) = kacd(&["eval", "--valuation", &f, "--term", "x ; y", "--member", "abb"]);
    assert_eq!((code, &out[0]["member"]), (0, &Value::Bool(true)));
    let (_, out) = kacd(&["eval", "--valuation", &f, "--term", "x ; !y", "--member", "a"]);
    assert_eq!(out[0]["member"], false);
    let (_, out) = kacd(&["eval", "--valuation", &f, "--term", "x ; x"]);
    assert_eq!(out[0]["finite"], true);
    assert_eq!(out[0]["shortest"], serde_json::json!(["a", "a"]));

    let (code, out) = kacd(&["w2l", "--valuation", &f, "--words", "a,b"]);
    assert_eq!(code, 0);
    assert_eq!(out[0]["alphabet"].as_array().unwrap().len(), 2);

    let bad = valuation_file("bad.json", r#"{"alphabet":["a"],"vars":{"x":{"kind":"words","items":["c"]}}}"#);
    assert_eq!(kacd(&["eval", "--valuation", &bad, "--term", "x"]).0, 3);
}

#[test]
fn hierarchy_and_oracle() {
    let (code, out) = kacd(&["hierarchy", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out[0]["counterexample"]["witness"], serde_json::json!(["a", "b", "c"]));
    assert_eq!(out[0]["small_alphabet_check"]["seed"], 3);
    assert_eq!(out[0]["small_alphabet_check"]["violations"], 0);

    let (code, out) = kacd(&["oracle-refute", "x", "1", "--verify"]);
    assert_eq!((code, &out[0]["result"]), (1, &Value::from("refuted")));
    let (code, out) = kacd(&["oracle-refute", "1", "x + !x", "--budget-ms", "200"]);
    assert_eq!((code, &out[0]["result"]), (2, &Value::from("none-within-budget")));
}

#[test]
fn output_is_stable() {
    let args = ["check", "!x", "eq", "!x ; !x", "--parallel"];
    assert_eq!(kacd(&args), kacd(&args));
    let o = Command::new(env!("CARGO_BIN_EXE_kacd")).args(["check", "1", "le", "x", "--pretty"]).output().unwrap();
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().count() > 1);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["status"], "refuted");
}
