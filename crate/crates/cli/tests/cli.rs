use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use convexify::fixtures;
use convexify::io::{emit_instance, parse_cover, Instance};

fn cli(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convexify")).args(args).current_dir(cwd).env_remove("CONVEXIFY_ENGINE").output().expect("spawn")
}

fn write_instance(dir: &Path, name: &str, inst: &Instance) {
    fs::write(dir.join(name), emit_instance(inst)).unwrap();
}

#[test]
fn run_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // Two disjoint U-shapes whose hulls are overlapping squares.
    write_instance(d, "u.json", &Instance::Polygons(fixtures::interlocking_u()));
    let out = cli(&["run", "u.json", "-o", "cover.json", "--svg", "cover.svg"], d);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let cover = parse_cover(&fs::read(d.join("cover.json")).unwrap()).unwrap();
    assert_eq!(cover.len(), 1);
    assert_eq!(cover.elements[0].vertices.len(), 6);
    assert!(fs::read_to_string(d.join("cover.svg")).unwrap().contains("<svg"));

    let out = cli(&["verify", "u.json", "cover.json"], d);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("accepted"));

    // Moving a vertex changes the area, dropping an id breaks the partition.
    let text = fs::read_to_string(d.join("cover.json")).unwrap();
    fs::write(d.join("moved.json"), text.replacen("\"30/1\"", "\"31/1\"", 1)).unwrap();
    assert_eq!(cli(&["verify", "u.json", "moved.json"], d).status.code(), Some(1));
    fs::write(d.join("dropped.json"), text.replacen("0,\n        1", "1", 1)).unwrap();
    let out = cli(&["verify", "u.json", "dropped.json"], d);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn engines_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_instance(d, "s.json", &Instance::Polygons(fixtures::staircase(12)));
    let naive = cli(&["run", "s.json", "--engine", "naive"], d);
    let grid = cli(&["run", "s.json", "--engine", "grid"], d);
    assert!(naive.status.success() && grid.status.success());
    assert_eq!(naive.stdout, grid.stdout);

    let via_env = Command::new(env!("CARGO_BIN_EXE_convexify"))
        .args(["run", "s.json"])
        .current_dir(d)
        .env("CONVEXIFY_ENGINE", "naive")
        .output()
        .unwrap();
    assert_eq!(via_env.stdout, grid.stdout);
    let bad = cli(&["run", "s.json", "--engine", "bogus"], d);
    assert!(!bad.status.success());
}

#[test]
fn segments_instances() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("x.json"), r#"{"kind":"segments","segments":[[[0,0],[2,2]],[[0,2],[2,0]]]}"#).unwrap();
    let out = cli(&["run", "x.json", "--segments", "-o", "c.json"], d);
    assert!(out.status.success());
    let cover = parse_cover(&fs::read(d.join("c.json")).unwrap()).unwrap();
    assert_eq!(cover.len(), 1);
    assert_eq!(cover.elements[0].vertices.len(), 4);
    assert_eq!(cli(&["verify", "x.json", "c.json"], d).status.code(), Some(0));

    write_instance(d, "l.json", &Instance::Polygons(fixtures::l_shape()));
    assert_eq!(cli(&["run", "l.json", "--segments"], d).status.code(), Some(2));
}

#[test]
fn input_errors_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("bad.json"), "{\"kind\":\"polygons\",\n\"polygons\":[[[0,0],[1.5,0],[1,1]]]}").unwrap();
    let out = cli(&["run", "bad.json"], d);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column 23"));

    fs::write(d.join("overlap.json"), r#"{"kind":"polygons","polygons":[[[0,0],[4,0],[4,4],[0,4]],[[2,2],[6,2],[6,6]]]}"#).unwrap();
    let out = cli(&["run", "overlap.json"], d);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("polygons 0 and 1 intersect"));

    assert_eq!(cli(&["run", "missing.json"], d).status.code(), Some(2));
}

#[test]
fn trace_writes_frames_and_log() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_instance(d, "fig.json", &Instance::Polygons(fixtures::algorithm_figure()));
    let out = cli(&["trace", "fig.json", "-o", "frames"], d);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let svgs =
        fs::read_dir(d.join("frames")).unwrap().filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "svg")).count();
    assert_eq!(svgs, 5);
    let log = fs::read_to_string(d.join("frames/events.jsonl")).unwrap();
    assert!(log.lines().next().unwrap().contains("\"event\":\"init\""));
    assert_eq!(log.lines().filter(|l| l.contains("\"event\":\"merge\"")).count(), 1);
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let a = cli(&["gen", "-n", "4", "-m", "8", "--bbox", "1000", "--seed", "1"], d);
    let b = cli(&["gen", "-n", "4", "-m", "8", "--bbox", "1000", "--seed", "1"], d);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = cli(&["gen", "-n", "4", "-m", "8", "--bbox", "1000", "--seed", "2"], d);
    assert_ne!(a.stdout, c.stdout);
    let inst = convexify::io::parse_instance(&a.stdout).unwrap();
    assert_eq!(inst.len(), 4);
    assert_eq!(cli(&["gen", "-n", "100", "-m", "20", "--bbox", "50"], d).status.code(), Some(2));
    let segs = cli(&["gen", "--style", "segments", "-n", "9", "--bbox", "40"], d);
    assert!(String::from_utf8_lossy(&segs.stdout).starts_with("{\"kind\":\"segments\""));
}

#[test]
fn bench_prints_one_row_per_size() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&["bench", "--sizes", "10000,20000", "--jobs", "2"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].contains("total_u"));
    assert!(lines[1].trim_start().starts_with("10000"));
    assert!(lines[2].trim_start().starts_with("20000"));
}
