use std::process::Command;

use serde_json::{json, Value};
use sphemb_cli::{exit_code, run, EXIT_DOMAIN, EXIT_UNSTABLE, EXIT_USAGE};
use sphemb_core::Error;

fn sphemb(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_sphemb")).args(args).output().unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is one JSON document");
    (doc, out.status.code().unwrap())
}

#[test]
fn monoid_class_group() {
    let (doc, code) = sphemb(&["class-group", "--family", "monoid:m=3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["command"], "class-group");
    assert_eq!(doc["inputs"]["family"], "monoid:m=3");
    assert_eq!(
        doc["result"],
        json!({ "free_rank": 2, "invariant_factors": [], "generators": ["D_1", "D_2"] })
    );
}

#[test]
fn circular_gorenstein_witness() {
    let (doc, code) = sphemb(&["gorenstein", "--family", "circular:m=2,n=2,r=1,s=1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["gorenstein"], true);
    let (doc, _) = sphemb(&["gorenstein", "--family", "circular:m=2,n=3,r=1,s=1"]);
    assert_eq!(doc["result"]["gorenstein"], false);
    assert_eq!(doc["result"]["witness_character"], Value::Null);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["class-group", "--family", "monoid:m=0"][..],
        &["class-group", "--family", "torus:3"],
        &["class-group"],
        &["frobnicate"],
        &["divisor", "--family", "monoid:m=2", "--chi", "eps_9:1"],
        &["class-of", "--family", "monoid:m=2", "--divisor", "Y_1:1"],
        &["class-group", "--family", "circular:m=2,n=2,r=0,s=0"],
    ] {
        let (doc, code) = sphemb(args);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(doc["status"], "error");
        assert!(doc["message"].is_string());
    }
}

#[test]
fn domain_errors_exit_with_three() {
    let (doc, code) = sphemb(&["wonderful-section", "--family", "wonderful:k=1,l=0", "--chi", "w_1_1:1"]);
    assert_eq!(code, 3);
    assert!(doc["message"].as_str().unwrap().contains("Picard"));
    let (_, code) = sphemb(&["canonical", "--family", "complexes:2,3,2,1,1"]);
    assert_eq!(code, 3);
}

#[test]
fn exit_code_table() {
    assert_eq!(exit_code(&Error::Parse("x".into())), EXIT_USAGE);
    assert_eq!(exit_code(&Error::ForeignLabel("x".into())), EXIT_USAGE);
    assert_eq!(exit_code(&Error::OutsidePicard("x".into())), EXIT_DOMAIN);
    assert_eq!(exit_code(&Error::InvalidModel("x".into())), EXIT_DOMAIN);
    assert_eq!(exit_code(&Error::OracleUnstable("x".into())), EXIT_UNSTABLE);
}

#[test]
fn divisor_and_class_of() {
    let (doc, code) = sphemb(&["divisor", "--family", "monoid:m=3", "--chi", "eps_1:1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["divisor"]["display"], "X_0 + D_1");
    let (doc, _) = sphemb(&["class-of", "--family", "monoid:m=3", "--divisor", "X_0:1,X_1:1,X_2:1,X_3:1"]);
    assert_eq!(doc["result"]["principal"], true);
    assert_eq!(doc["result"]["witness_character"]["coordinates"], json!({ "eps_1": 1, "eps_4": 1 }));
    let (doc, _) = sphemb(&["canonical", "--family", "circular:m=2,n=3,r=1,s=1"]);
    assert_eq!(doc["result"]["class"]["free"], json!([2]));
}

#[test]
fn wonderful_sections() {
    let (doc, code) = sphemb(&["wonderful-section", "--family", "wonderful:k=2,l=1", "--chi", "w_2_1:1,w_2_2:1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["divisor"]["display"], "D_2");
    let (doc, _) = sphemb(&["wonderful-section", "--family", "wonderful:k=2,l=1", "--chi", "w_J1:1"]);
    assert_eq!(doc["result"]["divisor"]["display"], "D_J1");
}

#[test]
fn verify_runs_the_oracle() {
    let (doc, code) = sphemb(&["verify", "--oracle", "--family", "monoid:m=2", "--trials", "4", "--seed", "3"]);
    assert_eq!(code, 0, "{doc}");
    assert_eq!(doc["result"]["passed"], true);
    let record = &doc["result"]["checks"][0];
    for key in ["check", "inputs", "model_value", "oracle_value", "match", "trials", "stable"] {
        assert!(record.get(key).is_some(), "{key}");
    }
    let (doc, code) = sphemb(&["verify", "--oracle", "--family", "determinantal:3,3,1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["evidence"]["boundary_added"], false);
    let (_, code) = sphemb(&["verify", "--family", "monoid:m=2"]);
    assert_eq!(code, 2);
}

#[test]
fn dumped_models_load_back() {
    let dir = std::env::temp_dir().join(format!("sphemb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("model.json");
    let out = Command::new(env!("CARGO_BIN_EXE_sphemb"))
        .args(["model", "--dump", "--family", "circular:m=3,n=4,r=1,s=1"])
        .output()
        .unwrap();
    std::fs::write(&path, &out.stdout).unwrap();
    let (from_file, code) = sphemb(&["class-group", "--model", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (direct, _) = sphemb(&["class-group", "--family", "circular:m=3,n=4,r=1,s=1"]);
    assert_eq!(from_file["result"], direct["result"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["verify", "--oracle", "--family", "circular:m=2,n=2,r=1,s=1", "--trials", "3", "--seed", "9"];
    let a = Command::new(env!("CARGO_BIN_EXE_sphemb")).args(args).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_sphemb")).args(args).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn library_entry_point_matches_the_binary() {
    let (doc, code) = run(["sphemb", "class-group", "--family", "monoid:m=2"]);
    assert_eq!(code, 0);
    assert_eq!(doc, sphemb(&["class-group", "--family", "monoid:m=2"]).0);
}

#[test]
fn help_is_a_successful_envelope() {
    let (doc, code) = sphemb(&["--help"]);
    assert_eq!(code, 0);
    assert_eq!(doc["status"], "ok");
    assert!(doc["result"]["help"].as_str().unwrap().contains("class-group"));
}
