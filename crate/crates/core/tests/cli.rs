use std::path::Path;
use std::process::{Command, Output};

use pwl_market::cli::{EXIT_ERROR, EXIT_UNDECIDED};

fn pwl(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pwl-market"))
        .current_dir(dir)
        .env_remove("PWL_THREADS")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn region_and_subregion() {
    let dir = tempfile::tempdir().unwrap();
    let o = pwl(dir.path(), &["region", "--set", "b=0.8", "--set", "c=2.5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "R2\nS1\n");
    let o = pwl(dir.path(), &["region", "--set", "b=0.8", "--set", "c=1.35"]);
    assert_eq!(stdout(&o).lines().next(), Some("R2"));
    let o = pwl(dir.path(), &["region", "--set", "b=1.2", "--set", "c=1"]);
    assert_eq!(stdout(&o), "R4\nUnstable\n");
}

#[test]
fn classify_prints_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = pwl(dir.path(), &["classify", "--set", "b=1.2", "--set", "c=1", "--set", "x0=0.3", "--set", "y0=0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["variant"], "Divergent");

    let o = pwl(dir.path(), &["classify", "--set", "b=0.8", "--set", "c=2.5", "--set", "x0=-0.12", "--set", "y0=-0.16"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["variant"], "NonfundamentalFP");
    assert!(v["limit"].as_f64().unwrap() < 0.0);
}

#[test]
fn chartist_figure_final_states() {
    let dir = tempfile::tempdir().unwrap();
    let o = pwl(dir.path(), &["figure", "fig3", "--out", "o"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("o/fig3/summary.json")).unwrap()).unwrap();
    for (panel, u) in [("top", 0.03), ("bottom", 0.18)] {
        for key in ["final_x", "final_y"] {
            assert!((summary[panel][key].as_f64().unwrap() - u).abs() < 1e-9, "{panel} {key}");
        }
    }
    let csv = std::fs::read_to_string(dir.path().join("o/fig3/top.csv")).unwrap();
    assert_eq!(csv.lines().count(), 202);
    assert!(dir.path().join("o/fig3/top.ppm").exists());
}

#[test]
fn basin_table_and_resolved_settings() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "basin", "--out", "o", "--threads", "2", "--set", "b=0.8", "--set", "c=2.5",
        "--set", "grid.nx=24", "--set", "grid.ny=16", "--set", "classifier.t_max=20000",
    ];
    let o = pwl(dir.path(), &args);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("o/basin.csv")).unwrap();
    assert_eq!(csv.lines().count(), 24 * 16 + 1);
    assert_eq!(csv.lines().next(), Some("i,j,x0,y0,label,limit_u"));
    let ppm = std::fs::read(dir.path().join("o/basin.ppm")).unwrap();
    assert!(ppm.starts_with(b"P6\n24 16\n255\n"));

    let resolved: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("o/resolved.json")).unwrap()).unwrap();
    assert_eq!(resolved["command"], "basin");
    assert_eq!(resolved["threads"], 2);
    let settings = resolved["settings"].to_string();
    assert!(settings.contains("grid.nx"), "{settings}");
    assert!(settings.contains("classifier.t_max"), "{settings}");
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |out: &str, threads: &str| {
        let o = pwl(dir.path(), &[
            "stochastic", "--out", out, "--threads", threads, "--seed", "5", "--set", "b=0.8", "--set", "c=0.75",
            "--set", "grid.nx=30", "--set", "grid.ny=30", "--set", "shock.t_max=500", "--set", "classifier.t_max=20000",
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    };
    run("a", "1");
    run("b", "3");
    for file in ["stochastic.csv", "stochastic_basin.csv", "stochastic_basin.ppm", "regime_stats.json"] {
        let a = std::fs::read(dir.path().join("a").join(file)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(file)).unwrap();
        assert!(a == b, "{file} differs");
    }
}

#[test]
fn configuration_errors() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\n  \"b\": 0.8,\n  \"c\": -1.0\n}\n").unwrap();
    let o = pwl(dir.path(), &["region", "--config", "bad.json"]);
    assert_eq!(o.status.code(), Some(EXIT_ERROR));
    assert!(stderr(&o).contains("bad.json:3"), "{}", stderr(&o));

    let o = pwl(dir.path(), &["region", "--set", "b=0.8", "--set", "c=2.5", "--set", "colour=red"]);
    assert_eq!(o.status.code(), Some(EXIT_ERROR));
    assert!(stderr(&o).contains("colour"));

    let o = pwl(dir.path(), &["region", "--set", "b"]);
    assert_eq!(o.status.code(), Some(EXIT_ERROR));

    let o = pwl(dir.path(), &["figure", "fig99"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn undecided_cells_set_the_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let o = pwl(dir.path(), &[
        "basin", "--out", "o", "--set", "b=0.8", "--set", "c=1.0", "--set", "grid.nx=10", "--set", "grid.ny=10",
        "--set", "classifier.t_max=200", "--set", "classifier.w_tail=100", "--set", "classifier.transient=0",
        "--set", "classifier.analytic_exit=false", "--set", "classifier.eps_fix=1e-14",
    ]);
    assert_eq!(o.status.code(), Some(EXIT_UNDECIDED), "{}", stderr(&o));
}
