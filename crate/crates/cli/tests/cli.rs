use std::process::{Command, Output};

use motivic_steenrod::dual::{bmu_coaction, BmuElement, CoactionElement};
use motivic_steenrod::modules::{ProjClass, ProjSpaceRing, QuadricClass, QuadricRing};
use motivic_steenrod::steenrod::parse_element;
use motivic_steenrod::{Mode, Prime, SteenrodElement};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steenrod"))
        .args(args)
        .env_remove("STEENROD_TRUNCATION")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .trim_end()
        .to_string()
}

fn assert_fails(args: &[&str]) -> String {
    let out = run(args);
    assert!(!out.status.success(), "{args:?} succeeded");
    assert!(out.stdout.is_empty(), "{args:?} printed to stdout");
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    err
}

#[test]
fn adem_examples() {
    assert_eq!(
        stdout(&["adem", "-p", "2", "--mode", "charp", "Sq2.Sq2"]),
        "0"
    );
    assert_eq!(
        stdout(&["adem", "-p", "2", "--mode", "char0", "Sq2.Sq2"]),
        "t*Sq3.Sq1"
    );
    assert_eq!(stdout(&["adem", "-p", "5", "P1.P1"]), "2*P2");
    assert_eq!(stdout(&["adem", "-p", "3", "P1.b.P1"]), "b.P2 + P2.b");
}

#[test]
fn act_examples() {
    assert_eq!(stdout(&["act", "--quadric", "4", "Sq2", "l_2"]), "l_1");
    assert_eq!(
        stdout(&["act", "--projspace", "10", "-p", "3", "P1", "h"]),
        "h^3"
    );
    assert_eq!(stdout(&["act", "--quadric", "4", "Sq0", "h^2"]), "h^2");
}

#[test]
fn coaction_examples() {
    assert_eq!(
        stdout(&["coaction", "-p", "2", "-N", "8", "u"]),
        "u + t0@v + t1@v^2 + t2@v^4 + t3@v^8"
    );
    assert_eq!(
        stdout(&["coaction", "-p", "3", "-N", "9", "v"]),
        "v + x1@v^3 + x2@v^9"
    );
    assert_eq!(stdout(&["coaction", "-p", "2", "-N", "8", "u*u"]), "0");
}

#[test]
fn truncation_defaults_and_env() {
    let full = stdout(&["coaction", "-p", "2", "u"]);
    assert!(full.ends_with("t6@v^64"), "{full}");
    let out = Command::new(env!("CARGO_BIN_EXE_steenrod"))
        .args(["coaction", "-p", "2", "u"])
        .env("STEENROD_TRUNCATION", "4")
        .output()
        .unwrap();
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim_end(),
        "u + t0@v + t1@v^2 + t2@v^4"
    );
}

#[test]
fn rost_and_witt_examples() {
    assert_eq!(stdout(&["rost", "-n", "1", "-p", "2"]), "deg=-2 quotient=1");
    assert_eq!(stdout(&["witt", "--hoffmann", "7"]), "1 3");
    assert_eq!(stdout(&["witt", "--inq-holes", "2"]), "0 4 6");
    assert_eq!(stdout(&["witt", "--chain", "1,4"]), "false");
    assert_eq!(stdout(&["witt", "--chain", "1,2"]), "true");
}

#[test]
fn json_round_trips() {
    let two = Prime::TWO;
    let three = Prime::new(3).unwrap();

    let out = stdout(&["--format", "json", "adem", "-p", "2", "Sq2.Sq2"]);
    let e: SteenrodElement = serde_json::from_str(&out).unwrap();
    let want = parse_element("Sq2.Sq2", two, Mode::Char0Motivic)
        .unwrap()
        .adem_reduce();
    assert_eq!(e, want);

    let out = stdout(&[
        "--format",
        "json",
        "act",
        "--quadric",
        "6",
        "Sq2",
        "l_3 + h",
    ]);
    // C(4, 1) is even, so only h contributes.
    let x: QuadricClass = serde_json::from_str(&out).unwrap();
    assert_eq!(
        x,
        QuadricClass::parse("h^2", QuadricRing::new(6).unwrap()).unwrap()
    );

    let out = stdout(&[
        "--format",
        "json",
        "act",
        "--projspace",
        "9",
        "-p",
        "3",
        "P1",
        "h^2",
    ]);
    let y: ProjClass = serde_json::from_str(&out).unwrap();
    let ring = ProjSpaceRing::new(9, three).unwrap();
    assert_eq!(y, ProjClass::parse("2*h^4", ring).unwrap());

    let out = stdout(&["--format", "json", "coaction", "-p", "3", "-N", "12", "u*v"]);
    let c: CoactionElement = serde_json::from_str(&out).unwrap();
    let uv = BmuElement::parse("u*v", three, 12).unwrap();
    assert_eq!(c, bmu_coaction(&uv));

    let out = stdout(&["--format", "json", "rost", "-n", "1", "-p", "2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["deg"], -2);
    assert_eq!(v["quotient"], 1);

    let out = stdout(&["--format", "json", "witt", "--hoffmann", "8"]);
    assert_eq!(
        serde_json::from_str::<Vec<u64>>(&out).unwrap(),
        vec![1, 2, 4]
    );
}

#[test]
fn errors_are_one_line_and_nonzero() {
    let err = assert_fails(&["adem", "-p", "2", "Sq2.Q"]);
    assert!(err.contains("at 4"), "{err}");
    assert_fails(&["adem", "-p", "4", "P1"]);
    let err = assert_fails(&["act", "--quadric", "4", "-p", "3", "P1", "h"]);
    assert!(err.contains("p = 2"), "{err}");
    assert_fails(&["act", "--quadric", "4", "Sq2", "l_5"]);
    assert_fails(&["act", "--quadric", "4", "--projspace", "3", "Sq2", "h"]);
    assert_fails(&["rost", "-n", "0", "-p", "2"]);
    assert_fails(&["witt", "--chain", "3"]);
    assert_fails(&["coaction", "-p", "2", "w"]);
    assert_fails(&["frobnicate"]);
}
