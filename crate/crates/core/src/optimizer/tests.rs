use super::*;
use crate::network::dbm_to_linear;
use approx::assert_relative_eq;

fn fig4() -> NetworkConfig {
    NetworkConfig { p_t: dbm_to_linear(20.0), n_f: 4, n_e: 8, lambda_e: 1e-2, ..Default::default() }
}

fn fig6() -> NetworkConfig {
    NetworkConfig { n_e: 4, lambda_e: 1e-3, p_t: dbm_to_linear(20.0), ..Default::default() }
}

// loose enough that fig6() admits positive throughput
fn qos() -> QoSTargets {
    QoSTargets { sigma: 0.8, epsilon: 0.3, ..Default::default() }
}

fn fig9(n_j: usize) -> (QoSTargets, NetworkConfig) {
    let t = QoSTargets { sigma: 0.9, sigma_c: 0.9, epsilon: 0.02, t_c: 1e-3 };
    let cfg = NetworkConfig { p_t: dbm_to_linear(20.0), n_f: 8, n_e: 8, n_t: 6, n_j, lambda_e: 1e-4, ..Default::default() };
    (t, cfg)
}

#[test]
fn feasibility_limits() {
    let t = QoSTargets::default();
    let no_eve = NetworkConfig { lambda_e: 0.0, ..fig4() };
    for sigma in [0.1, 0.5, 0.99, 0.999_999] {
        assert!(feasibility(&QoSTargets { sigma, epsilon: 1e-6, ..t }, &no_eve).unwrap());
    }
    assert!(!feasibility(&QoSTargets { sigma: 1.0 - 1e-12, ..t }, &fig4()).unwrap());
    let ma = NetworkConfig { n_f: 6, n_t: 3, n_j: 2, ..Default::default() };
    assert_eq!(feasibility(&t, &ma), Err(SecnetError::Mode { expected: "single-antenna" }));
}

#[test]
fn fig4_has_infeasible_and_feasible_targets() {
    let cfg = fig4();
    let mut seen = (false, false);
    for i in 1..20 {
        for j in 1..20 {
            let t = QoSTargets { sigma: 0.05 * i as f64, epsilon: 0.05 * j as f64, ..Default::default() };
            let ok = feasibility(&t, &cfg).unwrap();
            // the closed form agrees with (X/Z) > Y^{α/2}
            assert_eq!(ok, OptimizerConstants::new(&t, &cfg).unwrap().admits_positive_throughput());
            if ok {
                seen.0 = true;
            } else {
                seen.1 = true;
            }
        }
    }
    assert!(seen.0 && seen.1);
    // σ = 0.9, ε = 0.1 needs (0.1)(0.105) > 0.2 at these settings
    assert!(!feasibility(&QoSTargets { sigma: 0.9, epsilon: 0.1, ..Default::default() }, &cfg).unwrap());
    assert!(feasibility(&QoSTargets { sigma: 0.3, epsilon: 0.6, ..Default::default() }, &cfg).unwrap());
}

#[test]
fn upper_density_and_hd_floor() {
    let cfg = fig6();
    let at = |t_c: f64| lambda_bounds(&QoSTargets { t_c, ..qos() }, &cfg).unwrap().1;
    // λ^U grows like T_c^{−δ} as the floor vanishes
    assert!(at(1e-9) > 1e3 * at(1e-3));
    assert!(at(1e-15) > 1e3 * at(1e-9));
    assert!(at(1e-4) > at(1e-3) && at(1e-3) > at(2e-3));
    assert!(OptimizerConstants::new(&QoSTargets { t_c: 0.0, ..qos() }, &cfg).unwrap().lambda_upper.is_infinite());
    // the HD connection approximation at λ^U sits exactly on σ_c
    let t = qos();
    let lu = at(t.t_c);
    let hd = crate::analytic::hd_connection_approx(t.beta_c(cfg.lambda_h), &NetworkConfig { lambda_f: lu, ..cfg }).unwrap();
    assert_relative_eq!(hd, t.sigma_c, max_relative = 1e-12);
    let crowded = QoSTargets { t_c: 1.0, ..t };
    assert!(matches!(lambda_bounds(&crowded, &cfg), Err(SecnetError::Infeasible(_))));
}

#[test]
fn thresholds_match_the_analytic_inverses() {
    let t = qos();
    for cfg in [fig6(), NetworkConfig { n_f: 6, n_t: 3, n_j: 1, p_t: 10.0, ..fig6() }] {
        let c = OptimizerConstants::new(&t, &cfg).unwrap();
        for lambda in [1e-4, 1e-3, 5e-3] {
            let at = NetworkConfig { lambda_f: lambda, ..cfg };
            let bt = crate::analytic::threshold_beta_t(t.sigma, &at).unwrap();
            let be = crate::analytic::threshold_beta_e(t.epsilon, &at).unwrap();
            assert_relative_eq!(c.beta_t(lambda, cfg.alpha), bt, max_relative = 1e-12);
            assert_relative_eq!(c.z.unwrap() * lambda.powf(-0.5 * cfg.alpha), be, max_relative = 1e-12);
            let ts = throughput(lambda, &t, &cfg).unwrap();
            assert_relative_eq!(ts, t.sigma / LN_2 * objective(lambda, &c, cfg.alpha).max(0.0), max_relative = 1e-10, epsilon = 1e-15);
        }
    }
}

#[test]
fn objective_vanishes_at_lower_density() {
    let t = qos();
    let c = OptimizerConstants::new(&t, &fig6()).unwrap();
    assert!(c.lambda_lower > 0.0 && c.lambda_lower.is_finite());
    assert!(objective(c.lambda_lower, &c, 3.5).abs() < 1e-12 * c.lambda_lower);
    assert!(objective(c.lambda_lower * 0.9, &c, 3.5) < 0.0);
    assert!(objective(c.lambda_lower * 1.1, &c, 3.5) > 0.0);
}

#[test]
fn stationarity_sign_structure() {
    let t = qos();
    let c = OptimizerConstants::new(&t, &fig6()).unwrap();
    let l = c.lambda_lower;
    assert!(stationarity_lhs(l * (1.0 + 1e-9), &c, 3.5) > 0.0);
    assert!(stationarity_lhs(l * 1e9, &c, 3.5) < 0.0);
    let grid: Vec<f64> = (0..200).map(|i| l * (1.0 + 1e-9) * 1e9f64.powf(i as f64 / 199.0)).collect();
    let signs: Vec<bool> = grid.iter().map(|&x| stationarity_lhs(x, &c, 3.5) > 0.0).collect();
    assert_eq!(signs.windows(2).filter(|w| w[0] != w[1]).count(), 1);
}

#[test]
fn stationarity_is_the_derivative() {
    let t = qos();
    let c = OptimizerConstants::new(&t, &fig6()).unwrap();
    for k in [1.5, 3.0, 10.0, 100.0] {
        let x = c.lambda_lower * k;
        let h = 1e-5 * x;
        let fd = (objective(x + h, &c, 3.5) - objective(x - h, &c, 3.5)) / (2.0 * h);
        assert_relative_eq!(stationarity_lhs(x, &c, 3.5), fd, max_relative = 1e-6, epsilon = 1e-12);
    }
}

#[test]
fn g_decreases_on_the_feasible_range() {
    let t = QoSTargets::default();
    for cfg in [fig6(), fig4(), NetworkConfig { p_t: 10.0, n_f: 6, ..fig6() }] {
        let t = QoSTargets { sigma: 0.5, epsilon: 0.5, ..t };
        let c = OptimizerConstants::new(&t, &cfg).unwrap();
        let l = c.lambda_lower;
        let f = |x: f64| objective(x, &c, cfg.alpha);
        let mut prev = f64::INFINITY;
        for i in 1..=100 {
            let x = l * 1e4f64.powf(i as f64 / 100.0);
            let h = 1e-6 * x;
            let g_fd = x * (f(x + h) - f(x - h)) / (2.0 * h) / f(x);
            assert_relative_eq!(g_fd, g_function(x, &c, cfg.alpha), max_relative = 1e-4, epsilon = 1e-8);
            assert!(g_fd < prev, "{cfg:?} at {x}");
            prev = g_fd;
        }
    }
}

#[test]
fn optimum_is_a_local_maximum() {
    let t = QoSTargets { t_c: 0.0, ..qos() };
    let cfg = fig6();
    let sol = solve_optimal_density(&t, &cfg).unwrap();
    assert!(sol.feasible);
    let ls = sol.lambda_f_star.unwrap();
    assert_eq!(Some(ls), sol.lambda_star);
    let c = OptimizerConstants::new(&t, &cfg).unwrap();
    let f = |x: f64| objective(x, &c, cfg.alpha);
    assert!(f(ls * (1.0 + 1e-4)) <= f(ls) && f(ls * (1.0 - 1e-4)) <= f(ls));
    assert!(stationarity_lhs(ls, &c, cfg.alpha).abs() < 1e-8);
    let (r_t, r_e, r_s) = sol.rate_triple;
    assert_relative_eq!(r_s, r_t - r_e, max_relative = 1e-12);
    assert_relative_eq!(sol.t_s_star, ls * t.sigma * r_s, max_relative = 1e-12);
    assert_relative_eq!(sol.t_s_star, t.sigma / LN_2 * f(ls), max_relative = 1e-10);
}

#[test]
fn hd_floor_clamps_the_density() {
    let cfg = fig6();
    let free = solve_optimal_density(&QoSTargets { t_c: 0.0, ..qos() }, &cfg).unwrap();
    let star = free.lambda_star.unwrap();
    // pick T_c so that λ^U lands between λ^L and λ*
    let mut t = qos();
    let c = OptimizerConstants::new(&t, &cfg).unwrap();
    let target = 0.5 * (c.lambda_lower + star);
    let (mut lo, mut hi) = (1e-9f64, 10.0f64);
    for _ in 0..200 {
        t.t_c = (lo * hi).sqrt();
        if OptimizerConstants::new(&t, &cfg).unwrap().lambda_upper > target {
            lo = t.t_c;
        } else {
            hi = t.t_c;
        }
    }
    let c = OptimizerConstants::new(&t, &cfg).unwrap();
    assert!(c.lambda_upper < star && c.lambda_upper > c.lambda_lower);
    let sol = solve_optimal_density(&t, &cfg).unwrap();
    assert_eq!(sol.lambda_f_star, Some(c.lambda_upper));
    assert!(sol.t_s_star < free.t_s_star);
}

#[test]
fn infeasible_targets_give_no_density() {
    let t = QoSTargets { sigma: 0.9, epsilon: 0.1, ..Default::default() };
    let sol = solve_optimal_density(&t, &fig4()).unwrap();
    assert!(!sol.feasible);
    assert_eq!(sol.lambda_f_star, None);
    assert_eq!(sol.t_s_star, 0.0);
    // HD floor below λ^L
    let cfg = fig6();
    let c = OptimizerConstants::new(&QoSTargets::default(), &cfg).unwrap();
    let mut t = QoSTargets::default();
    while OptimizerConstants::new(&t, &cfg).unwrap().lambda_upper > 0.5 * c.lambda_lower {
        t.t_c *= 1.5;
    }
    assert!(!solve_optimal_density(&t, &cfg).unwrap().feasible);
}

#[test]
fn no_eavesdroppers_still_has_an_interior_optimum() {
    let cfg = NetworkConfig { lambda_e: 0.0, ..fig6() };
    let t = QoSTargets { t_c: 0.0, ..qos() };
    let sol = solve_optimal_density(&t, &cfg).unwrap();
    let ls = sol.lambda_f_star.unwrap();
    let c = OptimizerConstants::new(&t, &cfg).unwrap();
    assert_eq!(c.lambda_lower, 0.0);
    assert!(stationarity_lhs(ls, &c, cfg.alpha).abs() < 1e-8);
}

#[test]
fn throughput_vanishes_at_small_density_and_is_unimodal() {
    let (t, cfg) = fig9(1);
    assert!(throughput(1e-12, &t, &cfg).unwrap() < 1e-9);
    for n_j in [1, 3, 5] {
        let (t, cfg) = fig9(n_j);
        let ts: Vec<f64> =
            (0..80).map(|i| throughput(1e-5 * 10f64.powf(i as f64 / 20.0), &t, &cfg).unwrap()).collect();
        let peak = ts.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
        assert!(peak > 0 && peak < ts.len() - 1, "n_j = {n_j}");
        assert!(ts[..=peak].windows(2).all(|w| w[1] >= w[0]));
        assert!(ts[peak..].windows(2).all(|w| w[1] <= w[0]));
    }
    // β_t* ≤ β_e* clamps to zero
    let (t, cfg) = fig9(1);
    assert_eq!(throughput(1e-6, &t, &cfg).unwrap(), 0.0);
}

#[test]
fn grid_search_reproduces_bisection() {
    // with N_j = 1 both routes apply
    let (t, cfg) = fig9(1);
    let c = OptimizerConstants::new(&t, &cfg).unwrap();
    let exact = solve_optimal_density(&t, &cfg).unwrap();
    let grid = grid_search(&t, &cfg, &c).unwrap();
    assert_relative_eq!(grid.t_s_star, exact.t_s_star, max_relative = 1e-6);
    assert_relative_eq!(grid.lambda_f_star.unwrap(), exact.lambda_f_star.unwrap(), max_relative = 1e-3);
}

#[test]
fn more_streams_never_hurt() {
    let mut prev = 0.0;
    for n_j in 1..=5 {
        let (t, cfg) = fig9(n_j);
        let s = solve_optimal_density(&t, &cfg).unwrap();
        assert!(s.feasible);
        assert!(s.t_s_star >= prev * (1.0 - 1e-9), "n_j = {n_j}: {} < {prev}", s.t_s_star);
        prev = s.t_s_star;
    }
}

#[test]
fn optimum_trends_in_targets() {
    let cfg = fig4();
    let best = |sigma: f64, epsilon: f64| {
        solve_optimal_density(&QoSTargets { sigma, epsilon, ..Default::default() }, &cfg).unwrap().t_s_star
    };
    let mut prev = 0.0;
    for j in 1..20 {
        let v = best(0.3, 0.05 * j as f64);
        assert!(v >= prev);
        prev = v;
    }
    let by_sigma: Vec<f64> = (1..20).map(|i| best(0.05 * i as f64, 0.5)).collect();
    let peak = by_sigma.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    assert!(peak > 0 && peak < by_sigma.len() - 1);
    assert!(by_sigma[..=peak].windows(2).all(|w| w[1] >= w[0]));
    assert!(by_sigma[peak..].windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn target_validation() {
    let cfg = fig6();
    for t in [
        QoSTargets { sigma: 1.0, ..qos() },
        QoSTargets { epsilon: 0.0, ..qos() },
        QoSTargets { t_c: -1.0, ..qos() },
    ] {
        assert!(matches!(solve_optimal_density(&t, &cfg), Err(SecnetError::InvalidConfig(_))));
    }
    let no_hd = NetworkConfig { lambda_h: 0.0, ..cfg };
    assert!(matches!(solve_optimal_density(&qos(), &no_hd), Err(SecnetError::InvalidConfig(_))));
}
