use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bloomtwin::io::{parse_event_csv, parse_indicator_csv, parse_report_json};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bloomtwin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["total"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["indicate", "--k", "abc"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "t,V\n1,1\n3,2\n2,1\n").unwrap();
    let out = run(&["total", "--series", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    assert_eq!(
        run(&["total", "--series", "/nonexistent.csv"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn total_warns_on_declared_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    std::fs::write(&path, "t,V\n1,1.5\n2,2.5\nTotal,9\n").unwrap();
    let out = run(&["total", "--series", s(&path)]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("V = 4 (4.00)"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn full_pipeline_with_settings_file() {
    let dir = tempfile::tempdir().unwrap();
    let ev = dir.path().join("events.csv");
    let map = dir.path().join("map.json");
    let hired = dir.path().join("hired.csv");
    let series = dir.path().join("series.csv");
    let plot = dir.path().join("plot.csv");

    assert!(run(&[
        "simulate",
        "--config",
        s(&fixture("enterprise.json")),
        "--out",
        s(&ev),
        "--map-out",
        s(&map)
    ])
    .status
    .success());
    let events = parse_event_csv(&std::fs::read_to_string(&ev).unwrap()).unwrap();
    assert_eq!((events.periods(), events.channels()), (57, 12));

    assert!(run(&[
        "scenario",
        "--events",
        s(&ev),
        "--scenario",
        s(&fixture("hr_managers.json")),
        "--out",
        s(&hired)
    ])
    .status
    .success());
    let after = parse_event_csv(&std::fs::read_to_string(&hired).unwrap()).unwrap();
    assert_eq!(after.value(7, 0), events.value(7, 0) + 450.0);
    assert_eq!(after.value(13, 0).to_bits(), events.value(13, 0).to_bits());

    let settings = dir.path().join("settings.json");
    std::fs::write(
        &settings,
        r#"{"indicate": {"k": 6, "mode": "raw", "startup": "grow"}}"#,
    )
    .unwrap();
    let out = run(&[
        "--settings",
        s(&settings),
        "indicate",
        "--events",
        s(&hired),
        "--map",
        s(&map),
        "--k",
        "8",
        "--out",
        s(&series),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let table = parse_indicator_csv(&std::fs::read_to_string(&series).unwrap()).unwrap();
    // --k on the command line beats the file, startup comes from the file
    assert_eq!(table.rows.first().unwrap().0, 3);
    assert_eq!(table.rows.len(), 55);
    assert_eq!(table.channel_names.len(), 9);

    assert!(run(&[
        "plot-data",
        "--series",
        s(&series),
        "--precision",
        "1",
        "--out",
        s(&plot)
    ])
    .status
    .success());
    let text = std::fs::read_to_string(&plot).unwrap();
    assert!(text.starts_with("t,V,c01,"));
    let first = text.lines().nth(1).unwrap();
    assert!(first
        .split(',')
        .skip(1)
        .all(|v| v.split_once('.').unwrap().1.len() == 1));
}

#[test]
fn masked_reduction_flag() {
    let dir = tempfile::tempdir().unwrap();
    let ev = dir.path().join("events.csv");
    let map = dir.path().join("map.json");
    let series = dir.path().join("series.csv");
    run(&[
        "simulate",
        "--config",
        s(&fixture("enterprise.json")),
        "--out",
        s(&ev),
        "--map-out",
        s(&map),
    ]);
    let out = run(&[
        "indicate",
        "--events",
        s(&ev),
        "--map",
        s(&map),
        "--reduction",
        "masked",
        "--out",
        s(&series),
    ]);
    assert!(out.status.success());
    let m = bloomtwin::io::parse_competency_map(&std::fs::read_to_string(&map).unwrap()).unwrap();
    let table = parse_indicator_csv(&std::fs::read_to_string(&series).unwrap()).unwrap();
    assert_eq!(table.channel_names.len(), m.active_cells());
    assert_eq!(
        run(&[
            "indicate",
            "--events",
            s(&ev),
            "--map",
            s(&map),
            "--reduction",
            "sparse",
            "--out",
            s(&series)
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn compare_json_parses_back() {
    let out = run(&[
        "compare",
        "--series-a",
        s(&fixture("taxonomy_series.csv")),
        "--series-b",
        s(&fixture("basic_mode_total.csv")),
        "--json",
    ]);
    assert!(out.status.success());
    let c = parse_report_json(&stdout(&out)).unwrap();
    assert_eq!(
        (c.name_a.as_str(), c.name_b.as_str()),
        ("taxonomy_series", "basic_mode_total")
    );
    assert_eq!(c.total_b, 5069.93);
    assert!(c.cost_a.is_none());
    let partial = run(&[
        "compare",
        "--series-a",
        s(&fixture("taxonomy_series.csv")),
        "--series-b",
        s(&fixture("basic_mode_total.csv")),
        "--budget",
        "1",
    ]);
    assert_eq!(partial.status.code(), Some(2));
}

#[test]
fn plot_data_to_stdout_for_empty_series() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.csv");
    std::fs::write(&path, "t,V\n").unwrap();
    let out = run(&["plot-data", "--series", s(&path)]);
    assert_eq!(stdout(&out), "t,V\n");
}
