use std::process::{Command, Output};

use wythoff::export::{SHADE_MULTI_REACH, SHADE_N, SHADE_P};
use wythoff::oracle::classify_box;
use wythoff::{GameSpec, Position};

fn wythoff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wythoff"))
        .args(args)
        .env_remove("WYTHOFF_THREADS")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = wythoff(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn one_line_error(out: &Output) -> bool {
    let err = String::from_utf8_lossy(&out.stderr);
    err.lines().count() == 1 && err.starts_with("error")
}

#[test]
fn closed_form_rows() {
    assert_eq!(
        stdout(&["solve", "--b", "1", "--engine", "closed-form", "--count", "3"]),
        "n,p,q,diff\n0,0,0,0\n1,1,2,1\n2,3,5,2\n"
    );
}

#[test]
fn engines_agree_on_csv() {
    for (b, engines) in [("1", &["oracle", "closed-form", "general"][..]), ("4", &["oracle", "cyclic", "general"][..])] {
        let outputs: Vec<String> = engines
            .iter()
            .map(|e| stdout(&["solve", "--b", b, "--engine", e, "--count", "300"]))
            .collect();
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "b={b}");
        let by_bound: Vec<String> = engines
            .iter()
            .map(|e| stdout(&["solve", "--b", b, "--engine", e, "--bound", "100"]))
            .collect();
        assert!(by_bound.windows(2).all(|w| w[0] == w[1]), "b={b}");
        assert!(by_bound[0].lines().skip(1).all(|l| {
            let f: Vec<u64> = l.split(',').take(3).map(|v| v.parse().unwrap()).collect();
            f[1] < 100 && f[2] < 100
        }));
    }
}

#[test]
fn engine_mismatch_is_usage_error() {
    for args in [
        &["solve", "--b", "2", "--engine", "closed-form", "--count", "3"][..],
        &["solve", "--b", "3", "--engine", "cyclic", "--count", "3"],
        &["difftable", "--a", "3"],
        &["solve", "--b", "0", "--count", "3"],
        &["plot", "--b", "1", "--bound", "0"],
        &["solve", "--b", "2", "--count", "3", "--format", "pgm"],
        &["verify", "--b", "2", "--bound", "16", "--engine", "oracle"],
        &["solve", "--b", "2"],
        &["frobnicate"],
    ] {
        let out = wythoff(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(one_line_error(&out), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn thread_variable_validated() {
    let bin = env!("CARGO_BIN_EXE_wythoff");
    for bad in ["0", "many", "-2"] {
        let out = Command::new(bin).args(["difftable", "--a", "2"]).env("WYTHOFF_THREADS", bad).output().unwrap();
        assert_eq!(out.status.code(), Some(1), "{bad}");
    }
    let serial = Command::new(bin)
        .args(["conjecture", "cyclic-scan", "--max-b", "6"])
        .env("WYTHOFF_THREADS", "1")
        .output()
        .unwrap();
    assert!(serial.status.success());
    assert_eq!(
        String::from_utf8(serial.stdout).unwrap(),
        stdout(&["conjecture", "cyclic-scan", "--max-b", "6"])
    );
}

#[test]
fn oracle_difftable_for_odd_stride() {
    let s = stdout(&["difftable", "--a", "3", "--engine", "oracle", "--count", "18"]);
    assert_eq!(s.lines().count(), 19);
    assert!(s.starts_with("index,d\n0,0\n"));
}

#[test]
fn difftable_extends_periodically() {
    let s = stdout(&["difftable", "--a", "2", "--count", "8"]);
    assert_eq!(s, "index,d\n0,0\n1,0\n2,1\n3,-1\n4,2\n5,2\n6,3\n7,1\n");
    assert_eq!(s, stdout(&["difftable", "--a", "2", "--engine", "oracle", "--count", "8"]));
}

#[test]
fn conjecture_reports() {
    let grid = stdout(&["conjecture", "grid", "--a", "4"]);
    assert!(grid.contains("a=4: holds, count=16"), "{grid}");
    let scan = stdout(&["conjecture", "cyclic-scan", "--max-b", "8", "--window", "128"]);
    let cyclic: Vec<&str> = scan
        .lines()
        .filter(|l| l.contains("cyclic_shift=true"))
        .map(|l| l.split(':').next().unwrap())
        .collect();
    assert_eq!(cyclic, ["b=1", "b=2", "b=4", "b=8"]);
    let asym = stdout(&["conjecture", "asymptote", "--a", "1", "--n", "10000"]);
    assert!(asym.contains("a=1: holds"), "{asym}");
    let jsonl = stdout(&["conjecture", "grid", "--a", "1,2,3", "--format", "jsonl"]);
    assert_eq!(jsonl.lines().count(), 4);
    for line in jsonl.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
}

#[test]
fn plot_pgm_classes_follow_reach_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.pgm");
    let out = wythoff(&["plot", "--b", "3", "--bound", "60", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let bytes = std::fs::read(&path).unwrap();
    let header = b"P5\n60 60\n255\n";
    assert_eq!(&bytes[..header.len()], header);
    let pixels = &bytes[header.len()..];
    assert_eq!(pixels.len(), 3600);
    let g = classify_box(&GameSpec::wythoff(3).unwrap(), &Position::pair(60, 60)).unwrap();
    for y in 0..60u64 {
        for x in 0..60u64 {
            let shade = pixels[((59 - y) * 60 + x) as usize];
            let expected = if g.is_p(&[x, y]).unwrap() {
                SHADE_P
            } else if g.p_reach_count(&[x, y]) >= 2 {
                SHADE_MULTI_REACH
            } else {
                SHADE_N
            };
            assert_eq!(shade, expected, "({x},{y})");
        }
    }
    // only the output file remains: the temporary was renamed into place
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn svg_has_one_rect_per_p_cell() {
    let s = stdout(&["plot", "--b", "5", "--bound", "400", "--format", "svg"]);
    let g = classify_box(&GameSpec::wythoff(5).unwrap(), &Position::pair(400, 400)).unwrap();
    assert_eq!(s.matches("width=\"1\"").count() as u64, g.count_p());
    assert!(s.trim_end().ends_with("</svg>"));
}

#[test]
fn grid_binary_round_trips() {
    let out = wythoff(&["solve", "--b", "3", "--bound", "50", "--format", "grid-binary"]);
    assert!(out.status.success());
    let spec = GameSpec::wythoff(3).unwrap();
    let back = wythoff::oracle::PNGrid::read_pngrid(&out.stdout[..], spec.clone()).unwrap();
    assert_eq!(back, classify_box(&spec, &Position::pair(50, 50)).unwrap());
}

#[test]
fn verify_reports_agreement() {
    for (b, engine) in [("1", "closed-form"), ("6", "general"), ("8", "cyclic")] {
        let s = stdout(&["verify", "--b", b, "--bound", "300", "--engine", engine]);
        assert!(s.contains(": ok, cells=90000, missing=0, extra=0"), "{s}");
    }
}

#[test]
fn voxels_csv_matches_oracle_count() {
    let s = stdout(&["voxels", "--bound", "12"]);
    let g = wythoff::nim::wythoff3d_grid(12).unwrap();
    assert_eq!(s.lines().count() as u64, g.count_p() + 1);
    assert!(s.starts_with("x,y,z\n0,0,0\n"));
}

#[test]
fn overwrites_existing_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    std::fs::write(&path, "stale contents that are longer than the table\n").unwrap();
    assert!(wythoff(&["difftable", "--a", "2", "--out", path.to_str().unwrap()]).status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "index,d\n0,0\n1,0\n2,1\n3,-1\n");
}
