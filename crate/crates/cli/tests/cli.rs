use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corrkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corrkit")).args(args).current_dir(root()).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("corrkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const HORN_2_1: &str = r#"{"cells":[
  {"id":"0","dim":0,"faces":[]},{"id":"1","dim":0,"faces":[]},{"id":"2","dim":0,"faces":[]},
  {"id":"01","dim":1,"faces":[[[],"1"],[[],"0"]]},{"id":"12","dim":1,"faces":[[[],"2"],[[],"1"]]}]}"#;

#[test]
fn exit_codes() {
    assert_eq!(corrkit(&["validate", "fixtures/triangle_over_interval.json"]).status.code(), Some(0));

    let bad = temp_file("bad.json", r#"{"cells":[{"id":"a","dim":0,"faces":[]},{"id":"e","dim":1,"faces":[[[],"a"]]}]}"#);
    let o = corrkit(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cell e"));

    let horn = temp_file("horn.json", HORN_2_1);
    let o = corrkit(&["is-quasicat", horn.to_str().unwrap(), "--witnesses"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));

    let o = corrkit(&["is-quasicat", "fixtures/golden/seed0_category.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    assert_eq!(corrkit(&["proptest", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn generators_match_goldens() {
    for kind in ["sset", "category", "map"] {
        let o = corrkit(&["--seed", "0", "gen", kind]);
        let golden = std::fs::read_to_string(root().join(format!("fixtures/golden/seed0_{kind}.json"))).unwrap();
        assert_eq!(stdout(&o), golden, "{kind}");
    }
}

#[test]
fn suite_output_is_reproducible() {
    let args = ["--seed", "7", "proptest", "fiberwise", "--cases", "10"];
    let (a, b) = (corrkit(&args), corrkit(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn summary_of_degeneracy() {
    let o = corrkit(&["--format", "summary", "degeneracy", "fixtures/triangle_over_interval.json", "1", "--by-deletion"]);
    assert_eq!(stdout(&o).trim(), "s1: cell counts [5, 9, 7, 2]");
}

#[test]
fn correspondence_counts_as_its_structure_map() {
    for cmd in ["roundtrip", "fiberwise", "is-inner-fib", "dcolim"] {
        let o = corrkit(&[cmd, "fixtures/triangle_over_interval.json"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
