use std::path::PathBuf;

use spectral_periodic::harness::{emit_csv, run_experiment, run_experiment_with, write_csv, ExperimentConfig, ExperimentKind};
use spectral_periodic::{Discretization, Exec};

fn ode3(n_ref: usize) -> ExperimentConfig {
    ExperimentConfig {
        experiment: ExperimentKind::Ode3,
        alpha: 1.51,
        epsilon: 1.0,
        s: 0.0,
        t: 1.0,
        n_list: (40..=400).step_by(40).collect(),
        n_ref,
        mode: Discretization::FiniteSection,
        output_path: PathBuf::from("ode3.csv"),
        lambda_cap: None,
    }
}

#[test]
fn identical_configs_give_identical_bytes() {
    let dir = std::env::temp_dir().join(format!("spectral-periodic-det-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for kind in [ExperimentKind::Ode3, ExperimentKind::Spectrum2, ExperimentKind::Rhp] {
        let mut cfg = ode3(301);
        cfg.experiment = kind;
        cfg.n_list = vec![41, 81, 161];
        if kind == ExperimentKind::Spectrum2 {
            cfg.alpha = 2.51;
        }
        if kind == ExperimentKind::Rhp {
            cfg.epsilon = 0.01;
            cfg.mode = Discretization::Collocation;
        }
        let a = dir.join("a.csv");
        let b = dir.join("b.csv");
        emit_csv(&run_experiment_with(&cfg, Exec::Parallel).unwrap(), &a).unwrap();
        emit_csv(&run_experiment_with(&cfg, Exec::Sequential).unwrap(), &b).unwrap();
        let (a, b) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert!(!a.is_empty());
        assert_eq!(a, b, "{}", kind.name());
        assert_eq!(write_csv(&run_experiment(&cfg).unwrap()).into_bytes(), a);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reference_is_converged() {
    let coarse = run_experiment(&ode3(1501)).unwrap();
    let fine = run_experiment(&ode3(2001)).unwrap();
    for ((n, a), (_, b)) in coarse.rows.iter().zip(&fine.rows) {
        assert!((a - b).abs() / b < 0.05, "N={n}: {a:e} vs {b:e}");
    }
}

#[test]
fn csv_parses_back() {
    let mut cfg = ode3(201);
    cfg.n_list = vec![20, 40, 80];
    let rep = run_experiment(&cfg).unwrap();
    let text = write_csv(&rep);
    let rows: Vec<(usize, f64)> = text
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let (n, e) = l.split_once(',').unwrap();
            (n.parse().unwrap(), e.parse().unwrap())
        })
        .collect();
    assert_eq!(rows, rep.rows);
    let slope = text.lines().find_map(|l| l.strip_prefix("# slope=")).unwrap();
    assert_eq!(slope.parse::<f64>().unwrap(), rep.fitted_slope.unwrap());
}

#[test]
fn spectrum_csv_lists_matched_eigenvalues() {
    let mut cfg = ode3(161);
    cfg.experiment = ExperimentKind::Spectrum3;
    cfg.alpha = 2.51;
    cfg.n_list = vec![21, 41, 81];
    cfg.lambda_cap = Some(30.0);
    let rep = run_experiment(&cfg).unwrap();
    let text = write_csv(&rep);
    assert!(text.starts_with("N,lambda,d,r\n"));
    let data: Vec<&str> = text.lines().skip(1).filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), rep.eigen_rows.len());
    for line in data {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(fields.len(), 4);
        assert!(fields[1].abs() <= 30.0);
    }
}

#[test]
fn config_file_errors_are_config_errors() {
    let dir = std::env::temp_dir().join(format!("spectral-periodic-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"experiment": "ode3", "alpha": 1.51}"#).unwrap();
    let err = ExperimentConfig::from_path(&path).unwrap_err();
    assert!(err.is_config());
    assert!(err.to_string().contains("bad.json"));
    let missing = ExperimentConfig::from_path(&dir.join("missing.json")).unwrap_err();
    assert!(!missing.is_config());
    std::fs::remove_dir_all(&dir).unwrap();
}
