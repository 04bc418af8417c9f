use std::fs;
use std::process::Command;

use z2z2::classify::record_for;
use z2z2::cli::GradingJson;

fn z2z2(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_z2z2")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn roots_counts() {
    for (ty, n) in [("g2", 12), ("e8", 240), ("a1", 2)] {
        let (code, out, _) = z2z2(&["roots", ty]);
        assert_eq!(code, 0);
        assert!(out.contains(&format!("roots {n}\n")), "{out}");
    }
    assert!(z2z2(&["roots", "e9"]).0 != 0);
}

#[test]
fn tables_three_and_five() {
    let (code, out, err) = z2z2(&["tables", "3"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.lines().filter(|l| l.starts_with("| ")).count(), 2 + 23);
    assert!(err.contains("no differences"));
    let (code, out, _) = z2z2(&["tables", "5", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 11);
    let (code, out, _) = z2z2(&["tables", "4", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(serde_json::from_str::<serde_json::Value>(&out).is_ok());
    assert_eq!(z2z2(&["tables", "2"]).0, 2);
}

#[test]
fn witness_rows() {
    let (code, out, _) = z2z2(&["witness", "e6:EI-II-IV"]);
    assert_eq!(code, 0);
    assert!(out.contains("(52, 36, 38, 24)"), "{out}");
    assert!(out.contains("0 violations"));
    let (code, _, err) = z2z2(&["witness", "bogus"]);
    assert_ne!(code, 0);
    assert!(err.contains("e7:EVII-VII-VII"), "{err}");
}

#[test]
fn json_record_round_trip() {
    let (code, out, _) = z2z2(&["witness", "e7:EVI-VI-VI", "--format", "json"]);
    assert_eq!(code, 0);
    let parsed: Vec<GradingJson> = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed.len(), 2);
    for j in parsed {
        let again = GradingJson::from(&record_for(&j.witness).unwrap());
        assert_eq!(again, j);
    }
}

#[test]
fn verify_all_subset_and_negative_control() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let (code, stdout, _) = z2z2(&["verify-all", "--algebra", "g2", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("1 records"));
    let recs: Vec<GradingJson> = serde_json::from_str(&fs::read_to_string(out.join("records.json")).unwrap()).unwrap();
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0].type_name, "G");

    let expected = tmp.path().join("expected");
    fs::create_dir(&expected).unwrap();
    for n in [1, 3, 4, 5, 6] {
        let t = z2z2::catalog::tables::expected(n).unwrap().to_markdown();
        let t = if n == 1 { t.replace("| G | g2 | R + R |", "| G | g2 | sp1 |") } else { t };
        fs::write(expected.join(format!("table{n}.md")), t).unwrap();
    }
    let (code, stdout, _) = z2z2(&[
        "verify-all",
        "--algebra",
        "g2",
        "--expected-dir",
        expected.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(stdout.contains("FAIL table 1"), "{stdout}");
    assert!(stdout.contains("- G | G2 | A1"), "{stdout}");
}

#[test]
fn cache_dir_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap();
    let out = tmp.path().join("out");
    for _ in 0..2 {
        let (code, _, err) = z2z2(&["verify-all", "--algebra", "g2", "--cache-dir", dir, "--out", out.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
    }
    let text = fs::read_to_string(tmp.path().join("g2.cache")).unwrap();
    assert!(text.starts_with("chevalley-cache v1 G2 2 14\n"));
}
