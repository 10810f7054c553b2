use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn czgrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_czgrep"))
        .args(args)
        .env_remove("CZGREP_SEED")
        .output()
        .expect("run czgrep")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn lines(o: &Output) -> Vec<usize> {
    stdout(o).lines().map(|l| l.parse().unwrap()).collect()
}

fn compressed(dir: &TempDir, text: &[u8], scheme: &str) -> PathBuf {
    let input = dir.path().join(format!("in-{scheme}.txt"));
    let output = dir.path().join(format!("in.{scheme}"));
    fs::write(&input, text).unwrap();
    let o = czgrep(&["compress", "--scheme", scheme, p(&input), p(&output)]);
    assert!(o.status.success(), "{}", stderr(&o));
    output
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn compress_reports_element_count() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("q.txt");
    fs::write(&input, "ananasbananer").unwrap();
    let o = czgrep(&["compress", p(&input), p(&dir.path().join("q.cz"))]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("n=8"), "{}", stdout(&o));

    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    let o = czgrep(&["compress", p(&empty), p(&dir.path().join("empty.cz"))]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("n=0"));
}

#[test]
fn roundtrip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let text: Vec<u8> = (0..5000u32).map(|i| (i * i % 251) as u8).collect();
    for scheme in ["zl78", "zlw"] {
        let z = compressed(&dir, &text, scheme);
        let back = dir.path().join("back");
        let o = czgrep(&["decompress", p(&z), p(&back)]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert_eq!(fs::read(&back).unwrap(), text);
    }
}

#[test]
fn corrupt_input_fails_with_diagnostic() {
    let dir = TempDir::new().unwrap();
    let z = compressed(&dir, b"ananasbananer", "zl78");
    let bytes = fs::read(&z).unwrap();
    let cut = dir.path().join("cut");
    fs::write(&cut, &bytes[..bytes.len() - 4]).unwrap();
    let o = czgrep(&["decompress", p(&cut), p(&dir.path().join("out"))]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("element"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());

    let bad = dir.path().join("bad");
    fs::write(&bad, b"XXXX\x01\x00").unwrap();
    let o = czgrep(&["decompress", p(&bad), p(&dir.path().join("out"))]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("byte 0"), "{}", stderr(&o));
}

#[test]
fn fuzzed_headers_never_crash() {
    let dir = TempDir::new().unwrap();
    let z = compressed(&dir, b"ananasbananer ananas banane", "zl78");
    let good = fs::read(&z).unwrap();
    let path = dir.path().join("fuzz");
    for i in 0..good.len().min(12) {
        for v in [0u8, 1, 0x7f, 0x80, 0xff] {
            let mut bytes = good.clone();
            bytes[i] = v;
            fs::write(&path, &bytes).unwrap();
            let o = czgrep(&["decompress", p(&path), p(&dir.path().join("out"))]);
            // graceful: either success or a normal error exit, never a panic
            assert!(
                matches!(o.status.code(), Some(0) | Some(1)),
                "byte {i} = {v}: {}",
                stderr(&o)
            );
            assert!(!stderr(&o).contains("panicked"));
        }
    }
}

#[test]
fn approx_worked_example() {
    let dir = TempDir::new().unwrap();
    let z = compressed(&dir, b"ananasbananer", "zl78");
    let o = czgrep(&["approx", "--pattern", "base", "--errors", "2", p(&z)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "6\n7\n8\n9\n10\n12\n");
    assert!(stderr(&o).is_empty());
}

#[test]
fn regex_worked_example() {
    let dir = TempDir::new().unwrap();
    for scheme in ["zl78", "zlw"] {
        let z = compressed(&dir, b"ananasbananer", scheme);
        let o = czgrep(&["regex", "--pattern", "an", p(&z)]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert_eq!(lines(&o), [2, 4, 9, 11]);
    }
}

#[test]
fn tau_changes_stats_not_matches() {
    let dir = TempDir::new().unwrap();
    let text = "the cat sat on the mat with the hat and a bat ".repeat(40);
    let z = compressed(&dir, text.as_bytes(), "zl78");
    let mut records = Vec::new();
    let mut outputs = Vec::new();
    for tau in ["1", "1000"] {
        let o = czgrep(&[
            "approx",
            "-p",
            "hat",
            "-k",
            "1",
            "--tau",
            tau,
            "--stats",
            p(&z),
        ]);
        assert!(o.status.success());
        let record: Value = serde_json::from_str(stderr(&o).trim()).unwrap();
        assert_eq!(
            record["match_count"].as_u64().unwrap() as usize,
            lines(&o).len()
        );
        outputs.push(stdout(&o));
        records.push(record);
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_ne!(records[0], records[1]);
    assert!(records[0]["selected"].as_u64() > records[1]["selected"].as_u64());
    for r in &records {
        let n = r["n"].as_u64().unwrap();
        let tau = r["tau"].as_u64().unwrap();
        assert!(r["selected"].as_u64().unwrap() <= 1 + n / tau);
        for key in [
            "u",
            "m",
            "k",
            "peak_live_descriptions",
            "peak_live_chars",
            "wall_time_ms",
        ] {
            assert!(r.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn regex_stats_omit_k() {
    let dir = TempDir::new().unwrap();
    let z = compressed(&dir, b"ananasbananer", "zl78");
    let o = czgrep(&["regex", "-p", "an", "--stats", p(&z)]);
    let record: Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert!(record.get("k").is_none());
    assert_eq!(record["match_count"], 4);
}

#[test]
fn usage_errors() {
    let dir = TempDir::new().unwrap();
    let z = compressed(&dir, b"ananasbananer", "zl78");
    let o = czgrep(&["approx", "-p", "ab", "-k", "2", p(&z)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("smaller than the pattern length"));
    assert!(stdout(&o).is_empty());

    let o = czgrep(&["regex", "-p", "ab(c", p(&z)]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("offset 4"), "{err}");
    assert!(err.contains("  ab(c\n      ^"), "{err}");

    let o = czgrep(&["approx", "-p", "ab", "--tau", "0", p(&z)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lzw_approx_needs_explicit_trie() {
    let dir = TempDir::new().unwrap();
    let z = compressed(&dir, b"ananasbananer", "zlw");
    let o = czgrep(&["approx", "-p", "base", "-k", "2", p(&z)]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("--explicit-trie"));
    let o = czgrep(&["approx", "-p", "base", "-k", "2", "--explicit-trie", p(&z)]);
    assert!(o.status.success());
    assert_eq!(lines(&o), [6, 7, 8, 9, 10, 12]);
}

#[test]
fn scheme_override_must_match() {
    let dir = TempDir::new().unwrap();
    let z = compressed(&dir, b"ananasbananer", "zl78");
    let o = czgrep(&["regex", "-p", "an", "--scheme-override", "zl78", p(&z)]);
    assert!(o.status.success());
    let o = czgrep(&["regex", "-p", "an", "--scheme-override", "zlw", p(&z)]);
    assert!(!o.status.success());
    assert!(stdout(&o).is_empty());
}

#[test]
fn nullable_regex_warns_and_reports_everything() {
    let dir = TempDir::new().unwrap();
    let z = compressed(&dir, b"abc", "zl78");
    let o = czgrep(&["regex", "-p", "x*", p(&z)]);
    assert!(o.status.success());
    assert_eq!(lines(&o), [1, 2, 3]);
    assert!(stderr(&o).contains("empty string"));
}

#[test]
fn missing_file_is_an_error() {
    let o = czgrep(&["regex", "-p", "a", "/nonexistent/file.cz"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("/nonexistent/file.cz"));
}

#[test]
fn selftest_passes_and_honours_seed_env() {
    let o = czgrep(&["selftest", "--cases", "40", "--seed", "9"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("40 cases, seed 9, 0 failures"));

    let o = Command::new(env!("CARGO_BIN_EXE_czgrep"))
        .args(["selftest", "--cases", "8"])
        .env("CZGREP_SEED", "77")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("seed 77"));
}
