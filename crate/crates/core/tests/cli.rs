use std::process::{Command, Output};

use rand::{rngs::StdRng, Rng, SeedableRng};

fn teapot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teapot")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn value<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn parry_reports_the_tribonacci_root() {
    let out = teapot(&["parry", "--word", "1001"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(value(&text, "coefficients"), "1,0,0,-2,1");
    let lead: f64 = value(&text, "leading_root").parse().unwrap();
    assert!((lead - 1.839286755214161).abs() < 1e-12);
    assert_eq!(text.lines().filter(|l| l.starts_with("root=")).count(), 4);
}

#[test]
fn itinerary_of_sqrt_two() {
    let out = teapot(&["itinerary", "--lambda", "1.4142135623730951", "--length", "5"]);
    assert!(out.status.success());
    assert_eq!(value(&stdout(&out), "prefix"), "10111");
    let out = teapot(&["itinerary", "--lambda", "poly:-1,-1,-1,1", "--length", "8", "--right-limit"]);
    assert_eq!(value(&stdout(&out), "right_limit"), "10001000");
}

#[test]
fn test_point_certifies_the_mirror() {
    let out = teapot(&[
        "test-point",
        "--lambda",
        "1.82",
        "--re",
        "0.5840341196392905",
        "--im",
        "0.4820600149798202",
        "--max-depth",
        "20",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(value(&text, "verdict"), "certified-out");
    assert_eq!(value(&text, "method"), "inside-enumeration");
    assert_eq!(value(&text, "depth"), "20");
}

#[test]
fn conjugate_points_get_the_same_verdict() {
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..12 {
        let re = format!("{:.6}", rng.random_range(-1.3..1.3));
        let im = format!("{:.6}", rng.random_range(0.05..1.3));
        let neg = format!("-{im}");
        let args = |i: &str| -> Vec<String> {
            ["test-point", "--lambda", "1.75", "--re", &re, "--im", i, "--max-depth", "14"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        };
        let a = Command::new(env!("CARGO_BIN_EXE_teapot")).args(args(&im)).output().unwrap();
        let b = Command::new(env!("CARGO_BIN_EXE_teapot")).args(args(&neg)).output().unwrap();
        assert_eq!(a.status.code(), b.status.code(), "{re} {im}");
        if a.status.success() {
            assert_eq!(value(&stdout(&a), "verdict"), value(&stdout(&b), "verdict"), "{re} {im}");
        }
    }
}

#[test]
fn asymmetry_check_passes_every_stage() {
    let out = teapot(&["asymmetry-check"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS ")).count(), 5);
    assert_eq!(value(&text, "result"), "PASS");
}

#[test]
fn exit_codes() {
    assert_eq!(teapot(&["itinerary", "--lambda", "2.5", "--length", "3"]).status.code(), Some(2));
    assert_eq!(teapot(&["itinerary", "--lambda", "1.5"]).status.code(), Some(2));
    assert_eq!(teapot(&["parry", "--word", "1021"]).status.code(), Some(2));
    assert_eq!(teapot(&["frobnicate"]).status.code(), Some(2));
    // odd number of ones: no Parry polynomial
    assert_eq!(teapot(&["parry", "--word", "100"]).status.code(), Some(1));
    assert_eq!(teapot(&["test-point", "--lambda", "1.8", "--re", "1.0000000000001", "--im", "0"]).status.code(), Some(1));
}

#[test]
fn renders_write_their_files() {
    let dir = std::env::temp_dir().join(format!("teapot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pgm = dir.join("slice.pgm");
    let out = teapot(&["render-slice", "--lambda", "1.8", "--resolution", "16", "--depth", "10", "--out", pgm.to_str().unwrap()]);
    assert!(out.status.success());
    let bytes = std::fs::read(&pgm).unwrap();
    assert!(bytes.starts_with(b"P5\n16 16\n255\n"));
    assert_eq!(bytes.len(), b"P5\n16 16\n255\n".len() + 256);

    let csv = dir.join("corpus.csv");
    let out = teapot(&[
        "render-slice",
        "--lambda",
        "1.9",
        "--mode",
        "constructive",
        "--max-word-length",
        "6",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("re,im,lambda"));
    assert_eq!(text.lines().count() - 1, value(&stdout(&out), "points").parse::<usize>().unwrap());
    std::fs::remove_dir_all(&dir).ok();
}
