use super::*;
use crate::montecarlo::SimSettings;

fn parsed(text: &str) -> Result<RunConfig> {
    let mut c = RunConfig::default();
    c.apply_text(text)?;
    Ok(c)
}

fn config_message(r: Result<RunConfig>) -> String {
    match r {
        Err(SecnetError::Config(m)) => m,
        other => panic!("expected a config error, got {other:?}"),
    }
}

#[test]
fn dbm_keys_convert_to_milliwatts() {
    let c = parsed("p_t_dbm = 20\np_f_dbm = -10\n").unwrap();
    assert!((c.network.p_t - 100.0).abs() < 1e-9);
    assert!((c.network.p_f - 0.1).abs() < 1e-12);
    assert!((c.get("p_t_dbm").unwrap() - 20.0).abs() < 1e-9);
}

#[test]
fn syntax_error_reports_line() {
    let m = config_message(parsed("n_f = 4\nlambda_f = = 3\n"));
    assert!(m.starts_with("line 2"), "{m}");
}

#[test]
fn unknown_key_reports_line() {
    let m = config_message(parsed("n_f = 4\n\nbogus = 1\n"));
    assert!(m.contains("line 3") && m.contains("bogus"), "{m}");
}

#[test]
fn wrong_type_is_rejected() {
    let m = config_message(parsed("lambda_f = \"dense\"\n"));
    assert!(m.contains("line 1"), "{m}");
    config_message(parsed("n_f = 2.5\n"));
    config_message(parsed("trials = -3\n"));
}

#[test]
fn sweep_keys_build_an_axis() {
    let c = parsed(
        "sweep_param = \"lambda_f\"\nsweep_start = 1e-4\nsweep_stop = 1e-2\nsweep_points = 3\nsweep_scale = \"log\"\n",
    )
    .unwrap();
    assert_eq!(c.sweeps.len(), 1);
    let v = c.sweeps[0].values();
    assert!((v[1] - 1e-3).abs() < 1e-15);
}

#[test]
fn empty_sweep_ranges_are_config_errors() {
    let m = config_message(parsed(
        "sweep_param = \"lambda_f\"\nsweep_start = 1e-3\nsweep_stop = 1e-3\nsweep_points = 5\n",
    ));
    assert!(m.contains("empty"), "{m}");
    config_message(parsed("sweep_param = \"lambda_f\"\nsweep_start = 0\nsweep_stop = 1\nsweep_points = 1\n"));
    config_message(parsed("sweep_param = \"lambda_f\"\nsweep_start = 0\nsweep_stop = 1e-3\n"));
    config_message(parsed("sweep_param = \"n_f\"\nsweep_start = 2\nsweep_stop = 5\nsweep_points = 3\n"));
}

#[test]
fn sweep_command_needs_an_axis() {
    assert!(matches!(run(Command::Sweep, &RunConfig::default()), Err(SecnetError::Config(_))));
}

#[test]
fn two_axes_cross() {
    let mut c = RunConfig::default();
    c.sweeps.push(SweepAxis::new("lambda_f", 1e-4, 1e-3, 3, Scale::Log).unwrap());
    c.sweeps.push(SweepAxis::new("n_f", 3.0, 5.0, 3, Scale::Linear).unwrap());
    let t = run(Command::Analytic, &c).unwrap();
    assert_eq!(t.rows.len(), 9);
    assert_eq!(t.columns[0].name, "lambda_f");
    assert_eq!(t.columns[1].name, "n_f");
    // the second axis varies fastest
    assert_eq!(t.rows[1][1].as_f64(), Some(4.0));
}

#[test]
fn multi_antenna_rows_blank_single_antenna_quantities() {
    let mut c = RunConfig::default();
    c.network.n_f = 8;
    c.network.n_t = 4;
    c.network.n_j = 2;
    let t = run(Command::Analytic, &c).unwrap();
    let exact = t.column("p_t_exact").unwrap();
    let ma = t.column("p_so_approx").unwrap();
    assert_eq!(t.rows[0][exact], Cell::Empty);
    assert!(t.rows[0][ma].as_f64().is_some());
}

#[test]
fn csv_header_carries_units() {
    let mut t = Table::new(&[("lambda_f", "1/area"), ("n_f", "antennas"), ("ok", "-")]);
    t.push(vec![Cell::Num(1e-3), Cell::Int(4), Cell::Bool(true)]);
    t.push(vec![Cell::Empty, Cell::Int(2), Cell::Bool(false)]);
    let s = String::from_utf8(t.to_csv().unwrap()).unwrap();
    assert_eq!(s, "lambda_f [1/area],n_f [antennas],ok [-]\n1e-3,4,true\n,2,false\n");
}

#[test]
fn json_records_use_column_names() {
    let mut t = Table::new(&[("x", "-"), ("y", "-")]);
    t.push(vec![Cell::Num(0.5), Cell::Empty]);
    let v: serde_json::Value = serde_json::from_slice(&t.to_json().unwrap()).unwrap();
    assert_eq!(v["records"][0]["x"], 0.5);
    assert!(v["records"][0]["y"].is_null());
    assert_eq!(v["columns"][1]["name"], "y");
}

#[test]
fn simulate_is_reproducible() {
    let mut c = RunConfig::default();
    c.sim.trials = 400;
    c.sim.seed = 11;
    c.sweeps.push(SweepAxis::new("lambda_f", 1e-4, 1e-2, 3, Scale::Log).unwrap());
    let a = run(Command::Simulate, &c).unwrap().to_csv().unwrap();
    let b = run(Command::Simulate, &c).unwrap().to_csv().unwrap();
    assert_eq!(a, b);
}

#[test]
fn infeasible_single_point_optimize_is_an_error() {
    let mut c = RunConfig::default();
    c.network.p_t = 1e-6;
    c.network.lambda_e = 1e-1;
    c.targets.sigma = 0.99;
    c.targets.epsilon = 0.01;
    assert!(matches!(run(Command::Optimize, &c), Err(SecnetError::Infeasible(_))));
}

#[test]
fn optimize_sweep_keeps_infeasible_points_as_rows() {
    let mut c = RunConfig::default();
    c.network.p_t = 100.0;
    c.sweeps.push(SweepAxis::new("epsilon", 0.01, 0.5, 4, Scale::Linear).unwrap());
    let t = run(Command::Optimize, &c).unwrap();
    assert_eq!(t.rows.len(), 4);
}

#[test]
fn presets_cover_figures_two_to_nine() {
    for n in figures::FIGURES {
        assert!(figures::preset(n).is_ok());
        assert!(figures::describe(n).is_some());
    }
    assert!(matches!(figures::preset(1), Err(SecnetError::Config(_))));
    assert!(matches!(figures::preset(10), Err(SecnetError::Config(_))));
}

#[test]
fn analytic_figures_have_expected_shape() {
    let sim = SimSettings::default();
    let t5 = figures::figure(5, &sim).unwrap();
    assert_eq!(t5.rows.len(), 19 * 19);
    let t9 = figures::figure(9, &sim).unwrap();
    let ts = t9.column("t_s").unwrap();
    assert!(t9.rows.iter().any(|r| r[ts].as_f64().is_some_and(|v| v > 0.0)));
}

#[test]
fn connection_figure_bounds_sandwich_exact_for_small_arrays() {
    let sim = SimSettings { trials: 200, ..SimSettings::default() };
    let t = figures::figure(2, &sim).unwrap();
    let (n, lo, hi, ex) =
        (t.column("n_f").unwrap(), t.column("p_t_lower").unwrap(), t.column("p_t_upper").unwrap(), t.column("p_t_exact").unwrap());
    for r in t.rows.iter().filter(|r| r[n].as_f64() == Some(3.0)) {
        let (l, h, e) = (r[lo].as_f64().unwrap(), r[hi].as_f64().unwrap(), r[ex].as_f64().unwrap());
        assert!(l <= e + 1e-9 && e <= h + 1e-9, "{l} {e} {h}");
    }
}
