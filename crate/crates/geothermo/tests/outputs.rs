use std::path::{Path, PathBuf};
use std::process::Command;

use geothermo::config::Range;
use geothermo::output::{fig2_header, FIG1_HEADER};
use geothermo::{execute, Experiment, ExperimentConfig, Format};
use serde_json::Value;

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(name);
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&raw).unwrap()
}

fn assert_valid(schema_name: &str, file: &Path) {
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
    let v = schema(schema_name);
    let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{}: {errors:?}", file.display());
}

fn run_to(dir: &Path, name: &str, mut cfg: ExperimentConfig, format: Format) -> PathBuf {
    let path = dir.join(name);
    cfg.output = Some(path.clone());
    cfg.format = format;
    execute(&cfg).unwrap();
    path
}

fn small_fig2() -> ExperimentConfig {
    let mut cfg = ExperimentConfig::for_experiment(Experiment::Fig2);
    cfg.engine.coupling = Range::new(0.0, 1.5, 7);
    cfg
}

fn seeded(exp: Experiment, sweep: usize) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::for_experiment(exp);
    cfg.seed = Some(99);
    cfg.checks.sweep_size = sweep;
    cfg
}

#[test]
fn json_outputs_match_published_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for exp in [Experiment::Fig1a, Experiment::Fig1b] {
        let p = run_to(
            d,
            &format!("{exp}.json"),
            ExperimentConfig::for_experiment(exp),
            Format::Json,
        );
        assert_valid("fig1.schema.json", &p);
    }
    assert_valid(
        "fig2.schema.json",
        &run_to(d, "fig2.json", small_fig2(), Format::Json),
    );
    let csv = run_to(d, "fig2.csv", small_fig2(), Format::Csv);
    assert_valid(
        "fig2.meta.schema.json",
        &geothermo::output::sidecar_path(&csv),
    );
    for exp in [Experiment::Identities, Experiment::Bounds] {
        let p = run_to(d, &format!("{exp}.json"), seeded(exp, 50), Format::Json);
        assert_valid("checks.schema.json", &p);
    }
}

#[test]
fn schemas_reject_malformed_documents() {
    let v = schema("fig1.schema.json");
    assert!(!v.is_valid(&serde_json::json!({"metadata": {}, "rows": []})));
    let v = schema("checks.schema.json");
    assert!(!v.is_valid(&serde_json::json!({"experiment": "fig2"})));
}

#[test]
fn sidecar_schema_matches_embedded_metadata() {
    let read = |n: &str| -> Value {
        let p = Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("schemas")
            .join(n);
        serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
    };
    let embedded = read("fig2.schema.json")["$defs"]["metadata"].clone();
    let mut sidecar = read("fig2.meta.schema.json");
    let obj = sidecar.as_object_mut().unwrap();
    for k in ["$schema", "$id", "title"] {
        obj.remove(k);
    }
    assert_eq!(sidecar, embedded);
}

#[test]
fn csv_headers_match_documented_columns() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let documented: Value = serde_json::from_str(
        &std::fs::read_to_string(
            Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas/csv_headers.json"),
        )
        .unwrap(),
    )
    .unwrap();
    let header_of = |p: &Path| {
        std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .next()
            .unwrap()
            .to_string()
    };
    let listed = |key: &str| -> String {
        documented[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap())
            .collect::<Vec<_>>()
            .join(",")
    };

    let p = run_to(
        d,
        "a.csv",
        ExperimentConfig::for_experiment(Experiment::Fig1a),
        Format::Csv,
    );
    assert_eq!(header_of(&p), FIG1_HEADER.join(","));
    assert_eq!(header_of(&p), listed("fig1a"));
    let p = run_to(d, "e.csv", small_fig2(), Format::Csv);
    assert_eq!(
        header_of(&p),
        "g_over_omega,W_net_T2=0.2,kappa_T2=0.2,W_net_T2=0.25,kappa_T2=0.25"
    );
    assert_eq!(header_of(&p), fig2_header(&[0.2, 0.25]).join(","));
    let p = run_to(d, "i.csv", seeded(Experiment::Identities, 5), Format::Csv);
    assert_eq!(header_of(&p), listed("identities"));
}

#[test]
fn csv_is_plain_and_newline_terminated() {
    let dir = tempfile::tempdir().unwrap();
    let p = run_to(
        dir.path(),
        "a.csv",
        ExperimentConfig::for_experiment(Experiment::Fig1a),
        Format::Csv,
    );
    let text = std::fs::read_to_string(p).unwrap();
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 60);
    for line in &lines[1..] {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols.len(), 4);
    }
    // T_f = T_i
    assert_eq!(lines[1], "0.1,0,0,0");
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cases: Vec<(ExperimentConfig, &str)> = vec![
        (ExperimentConfig::for_experiment(Experiment::Fig1a), "f1a"),
        (ExperimentConfig::for_experiment(Experiment::Fig1b), "f1b"),
        (small_fig2(), "f2"),
        (seeded(Experiment::Identities, 100), "id"),
        (seeded(Experiment::Bounds, 100), "bd"),
    ];
    for (cfg, stem) in cases {
        for format in [Format::Csv, Format::Json] {
            let ext = if format == Format::Csv { "csv" } else { "json" };
            let a =
                std::fs::read(run_to(d, &format!("{stem}1.{ext}"), cfg.clone(), format)).unwrap();
            let b =
                std::fs::read(run_to(d, &format!("{stem}2.{ext}"), cfg.clone(), format)).unwrap();
            assert_eq!(a, b, "{stem}.{ext}");
        }
    }
    let mut other = seeded(Experiment::Identities, 100);
    other.seed = Some(100);
    let a = std::fs::read(d.join("id1.json")).unwrap();
    let b = std::fs::read(run_to(d, "id3.json", other, Format::Json)).unwrap();
    assert_ne!(a, b);
}

#[test]
fn single_point_sweep_emits_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = ExperimentConfig::for_experiment(Experiment::Fig2);
    cfg.engine.coupling = Range::new(0.8, 0.8, 1);
    let p = run_to(dir.path(), "one.csv", cfg, Format::Csv);
    let text = std::fs::read_to_string(p).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("0.8,"));
}

#[test]
fn empty_sweep_is_a_config_error() {
    let cfg = seeded(Experiment::Identities, 0);
    assert!(matches!(execute(&cfg), Err(geothermo::Error::Config(_))));
    let mut cfg = small_fig2();
    cfg.engine.coupling.points = 0;
    assert!(matches!(execute(&cfg), Err(geothermo::Error::Config(_))));
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_geothermo"))
}

#[test]
fn cli_verbs_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cfg = d.join("checks.toml");
    std::fs::write(&cfg, "[checks]\nsweep_size = 40\n").unwrap();

    let ok = bin()
        .args([
            "check-identities",
            "--seed",
            "3",
            "--format",
            "json",
            "--config",
        ])
        .arg(&cfg)
        .arg("--out")
        .arg(d.join("id.json"))
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stderr).contains("PASS free_energy_change"));
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(d.join("id.json")).unwrap()).unwrap();
    assert_eq!(report["sweep_size"], 40);
    assert_eq!(report["all_pass"], true);

    let no_seed = bin()
        .args(["check-bounds", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(no_seed.status.code(), Some(2));

    let out = bin()
        .args(["fig1a", "--g-const", "2.5", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["metadata"]["g_const"], 2.5);

    let bad = bin()
        .arg("fig1a")
        .arg("--config")
        .arg(d.join("missing.toml"))
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
