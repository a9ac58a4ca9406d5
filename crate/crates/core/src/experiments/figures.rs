//! Parameter presets and curve tables for figures 2 to 9.
//!
//! Parameters not listed for a figure keep the common defaults: α = 3.5,
//! P_f = P_h = 0 dBm, N_h = 4, λ_h = 1e-3, D_f = D_h = 1. Axis ranges and
//! curve families that are not given numerically are chosen here and listed
//! in [`describe`].

use super::config::{RunConfig, Scale, SweepAxis};
use super::table::{Cell, Table};
use crate::analytic::{
    connection_probability_bound, connection_probability_exact, fd_connection_approx, secrecy_outage_approx,
    secrecy_outage_exact, secrecy_outage_ma, secrecy_outage_ma_limit, OutageVariant, Side,
};
use crate::error::{Result, SecnetError};
use crate::montecarlo::{estimate_fd_connection, estimate_secrecy_outage, SimSettings};
use crate::network::{dbm_to_linear, NetworkConfig};
use crate::optimizer::{lambda_bounds, solve_optimal_density, throughput, QoSTargets};
use rayon::prelude::*;

pub const FIGURES: std::ops::RangeInclusive<u32> = 2..=9;

/// One-line summary of what `figure n` emits.
pub fn describe(n: u32) -> Option<&'static str> {
    Some(match n {
        2 => "FD connection vs lambda_f in [1e-4, 1e-2] for N_f in {3, 4, 6}; P_t = 0 dBm, beta_t = 1",
        3 => "secrecy outage vs lambda_e in [1e-5, 1e-2] for D_f in {0.5, 1, 2}; P_t = 10 dBm, N_e = 4, lambda_f = 1e-3",
        4 => "secrecy outage vs lambda_f in [1e-4, 1e-2] for N_e in {2, 4, 8}, lambda_e in {1e-4, 1e-3}; P_t = 20 dBm",
        5 => "max secrecy throughput over (sigma, epsilon) in [0.05, 0.95]^2; P_t = 20 dBm, N_f = 4, N_e = 8, lambda_e = 1e-2",
        6 => "secrecy throughput vs P_t in [-10, 40] dBm for lambda_f in {1e-3, 2e-3, 5e-3}; N_f = 4, N_e = 4, lambda_e = 1e-3",
        7 => "FD connection vs N_t in 2..7 for N_j in {1, 2, 3}; P_t = 20 dBm, N_f = 8, lambda_f = 1e-3",
        8 => "secrecy outage vs N_j in 1..6 for N_e in {2, 4}, lambda_f in {1e-3, 2e-3}; P_t = 10 dBm, lambda_e = 1e-4",
        9 => "secrecy throughput vs lambda_f in [1e-5, 1e-1] for N_j in 1..5, T_c in {1e-3, 0}; P_t = 20 dBm, N_f = N_e = 8, N_t = 6",
        _ => return None,
    })
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

fn lin_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Base run configuration of figure `n`: the caption's parameters on top of
/// the common defaults. Used by `--preset`.
pub fn preset(n: u32) -> Result<RunConfig> {
    let mut c = RunConfig::default();
    let net = &mut c.network;
    let t = &mut c.targets;
    match n {
        2 => net.p_t = 1.0,
        3 => {
            net.p_t = dbm_to_linear(10.0);
            net.n_e = 4;
            net.lambda_f = 1e-3;
        }
        4 => net.p_t = dbm_to_linear(20.0),
        5 => {
            net.p_t = dbm_to_linear(20.0);
            net.n_f = 4;
            net.n_e = 8;
            net.lambda_e = 1e-2;
            t.sigma_c = 0.9;
            t.t_c = 1e-3;
            // `optimize --preset 5` walks the same grid as the figure
            c.sweeps = vec![
                SweepAxis::new("sigma", 0.05, 0.95, 19, Scale::Linear)?,
                SweepAxis::new("epsilon", 0.05, 0.95, 19, Scale::Linear)?,
            ];
        }
        6 => {
            net.n_f = 4;
            net.n_e = 4;
            net.lambda_e = 1e-3;
            *t = QoSTargets { sigma: 0.9, sigma_c: 0.9, epsilon: 0.1, t_c: 1e-3 };
        }
        7 => {
            net.p_t = dbm_to_linear(20.0);
            net.n_f = 8;
            net.lambda_f = 1e-3;
            net.n_t = 2;
        }
        8 => {
            net.p_t = dbm_to_linear(10.0);
            net.lambda_e = 1e-4;
            net.n_f = 8;
            net.n_t = 7;
        }
        9 => {
            net.p_t = dbm_to_linear(20.0);
            net.n_f = 8;
            net.n_e = 8;
            net.n_t = 6;
            net.lambda_e = 1e-4;
            *t = QoSTargets { sigma: 0.9, sigma_c: 0.9, epsilon: 0.02, t_c: 1e-3 };
        }
        _ => return Err(SecnetError::Config(format!("no figure {n}; available figures are 2 to 9"))),
    }
    Ok(c)
}

/// Curve table of figure `n`. Monte Carlo columns use `sim`.
pub fn figure(n: u32, sim: &SimSettings) -> Result<Table> {
    let base = preset(n)?;
    match n {
        2 => fig_connection_vs_density(&base, sim),
        3 => fig_outage_vs_eve_density(&base, sim),
        4 => fig_outage_vs_density(&base, sim),
        5 => fig_throughput_grid(&base),
        6 => fig_throughput_vs_power(&base),
        7 => fig_connection_vs_antennas(&base, sim),
        8 => fig_outage_vs_streams(&base, sim),
        9 => fig_throughput_vs_density(&base),
        _ => unreachable!("preset() rejects other figures"),
    }
}

fn collect(header: &[(&str, &str)], rows: Vec<Result<Vec<Cell>>>) -> Result<Table> {
    let mut table = Table::new(header);
    for r in rows {
        table.push(r?);
    }
    Ok(table)
}

fn fig_connection_vs_density(base: &RunConfig, sim: &SimSettings) -> Result<Table> {
    let mut pts = Vec::new();
    for n_f in [3, 4, 6] {
        for lambda_f in log_grid(1e-4, 1e-2, 9) {
            pts.push(NetworkConfig { n_f, lambda_f, ..base.network });
        }
    }
    let beta = base.beta_t;
    let rows = pts
        .par_iter()
        .map(|cfg| {
            let mc = estimate_fd_connection(beta, cfg, sim)?;
            Ok(vec![
                Cell::Int(cfg.n_f as i64),
                cfg.lambda_f.into(),
                connection_probability_bound(beta, cfg, Side::Lower)?.into(),
                connection_probability_bound(beta, cfg, Side::Upper)?.into(),
                connection_probability_exact(beta, cfg)?.into(),
                mc.value.into(),
                mc.half_width.into(),
            ])
        })
        .collect();
    collect(
        &[
            ("n_f", "antennas"),
            ("lambda_f", "1/area"),
            ("p_t_lower", "prob"),
            ("p_t_upper", "prob"),
            ("p_t_exact", "prob"),
            ("p_t_mc", "prob"),
            ("p_t_ci", "prob"),
        ],
        rows,
    )
}

fn fig_outage_vs_eve_density(base: &RunConfig, sim: &SimSettings) -> Result<Table> {
    let mut pts = Vec::new();
    for d_f in [0.5, 1.0, 2.0] {
        for lambda_e in log_grid(1e-5, 1e-2, 7) {
            pts.push(NetworkConfig { d_f, lambda_e, ..base.network });
        }
    }
    let beta = base.beta_e;
    let rows = pts
        .par_iter()
        .map(|cfg| {
            let mc = estimate_secrecy_outage(beta, cfg, sim)?;
            Ok(vec![
                cfg.d_f.into(),
                cfg.lambda_e.into(),
                secrecy_outage_exact(beta, cfg)?.into(),
                secrecy_outage_approx(beta, cfg, OutageVariant::SmallDf)?.into(),
                secrecy_outage_approx(beta, cfg, OutageVariant::LargeNe)?.into(),
                mc.value.into(),
                mc.half_width.into(),
            ])
        })
        .collect();
    collect(
        &[
            ("d_f", "length"),
            ("lambda_e", "1/area"),
            ("p_so_exact", "prob"),
            ("p_so_approx", "prob"),
            ("p_so_large_ne", "prob"),
            ("p_so_mc", "prob"),
            ("p_so_ci", "prob"),
        ],
        rows,
    )
}

fn fig_outage_vs_density(base: &RunConfig, sim: &SimSettings) -> Result<Table> {
    let mut pts = Vec::new();
    for n_e in [2, 4, 8] {
        for lambda_e in [1e-4, 1e-3] {
            for lambda_f in log_grid(1e-4, 1e-2, 9) {
                pts.push(NetworkConfig { n_e, lambda_e, lambda_f, ..base.network });
            }
        }
    }
    let beta = base.beta_e;
    let rows = pts
        .par_iter()
        .map(|cfg| {
            let mc = estimate_secrecy_outage(beta, cfg, sim)?;
            Ok(vec![
                Cell::Int(cfg.n_e as i64),
                cfg.lambda_e.into(),
                cfg.lambda_f.into(),
                secrecy_outage_exact(beta, cfg)?.into(),
                secrecy_outage_approx(beta, cfg, OutageVariant::SmallDf)?.into(),
                mc.value.into(),
                mc.half_width.into(),
            ])
        })
        .collect();
    collect(
        &[
            ("n_e", "antennas"),
            ("lambda_e", "1/area"),
            ("lambda_f", "1/area"),
            ("p_so_exact", "prob"),
            ("p_so_approx", "prob"),
            ("p_so_mc", "prob"),
            ("p_so_ci", "prob"),
        ],
        rows,
    )
}

fn fig_throughput_grid(base: &RunConfig) -> Result<Table> {
    let grid = lin_grid(0.05, 0.95, 19);
    let mut pts = Vec::new();
    for &sigma in &grid {
        for &epsilon in &grid {
            pts.push(QoSTargets { sigma, epsilon, ..base.targets });
        }
    }
    let rows = pts
        .par_iter()
        .map(|t| {
            let s = solve_optimal_density(t, &base.network)?;
            Ok(vec![t.sigma.into(), t.epsilon.into(), Cell::Bool(s.feasible), s.lambda_f_star.into(), s.t_s_star.into()])
        })
        .collect();
    collect(
        &[
            ("sigma", "-"),
            ("epsilon", "-"),
            ("feasible", "-"),
            ("lambda_f_star", "1/area"),
            ("t_s_star", "bit/s/Hz/area"),
        ],
        rows,
    )
}

fn fig_throughput_vs_power(base: &RunConfig) -> Result<Table> {
    let mut pts = Vec::new();
    for lambda_f in [1e-3, 2e-3, 5e-3] {
        for dbm in lin_grid(-10.0, 40.0, 26) {
            pts.push((dbm, NetworkConfig { lambda_f, p_t: dbm_to_linear(dbm), ..base.network }));
        }
    }
    let rows = pts
        .par_iter()
        .map(|(dbm, cfg)| Ok(vec![cfg.lambda_f.into(), (*dbm).into(), throughput(cfg.lambda_f, &base.targets, cfg)?.into()]))
        .collect();
    collect(&[("lambda_f", "1/area"), ("p_t_dbm", "dBm"), ("t_s", "bit/s/Hz/area")], rows)
}

fn fig_connection_vs_antennas(base: &RunConfig, sim: &SimSettings) -> Result<Table> {
    let mut pts = Vec::new();
    for n_j in [1, 2, 3] {
        for n_t in (n_j + 1)..=7 {
            pts.push(NetworkConfig { n_t, n_j, ..base.network });
        }
    }
    let beta = base.beta_t;
    let rows = pts
        .par_iter()
        .map(|cfg| {
            let mc = estimate_fd_connection(beta, cfg, sim)?;
            Ok(vec![
                Cell::Int(cfg.n_j as i64),
                Cell::Int(cfg.n_t as i64),
                connection_probability_bound(beta, cfg, Side::Lower)?.into(),
                fd_connection_approx(beta, cfg)?.into(),
                mc.value.into(),
                mc.half_width.into(),
            ])
        })
        .collect();
    collect(
        &[
            ("n_j", "streams"),
            ("n_t", "antennas"),
            ("p_t_lower", "prob"),
            ("p_t_approx", "prob"),
            ("p_t_mc", "prob"),
            ("p_t_ci", "prob"),
        ],
        rows,
    )
}

fn fig_outage_vs_streams(base: &RunConfig, sim: &SimSettings) -> Result<Table> {
    let mut pts = Vec::new();
    for n_e in [2, 4] {
        for lambda_f in [1e-3, 2e-3] {
            for n_j in 1..base.network.n_t {
                pts.push(NetworkConfig { n_e, lambda_f, n_j, ..base.network });
            }
        }
    }
    let beta = base.beta_e;
    let rows = pts
        .par_iter()
        .map(|cfg| {
            let mc = estimate_secrecy_outage(beta, cfg, sim)?;
            Ok(vec![
                Cell::Int(cfg.n_e as i64),
                cfg.lambda_f.into(),
                Cell::Int(cfg.n_j as i64),
                secrecy_outage_ma(beta, cfg)?.into(),
                secrecy_outage_ma_limit(beta, cfg)?.into(),
                mc.value.into(),
                mc.half_width.into(),
            ])
        })
        .collect();
    collect(
        &[
            ("n_e", "antennas"),
            ("lambda_f", "1/area"),
            ("n_j", "streams"),
            ("p_so_ma", "prob"),
            ("p_so_limit", "prob"),
            ("p_so_mc", "prob"),
            ("p_so_ci", "prob"),
        ],
        rows,
    )
}

fn fig_throughput_vs_density(base: &RunConfig) -> Result<Table> {
    let mut pts = Vec::new();
    for t_c in [1e-3, 0.0] {
        for n_j in 1..base.network.n_t {
            for lambda_f in log_grid(1e-5, 1e-1, 25) {
                pts.push((QoSTargets { t_c, ..base.targets }, NetworkConfig { n_j, lambda_f, ..base.network }));
            }
        }
    }
    let rows = pts
        .par_iter()
        .map(|(t, cfg)| {
            let (_, upper) = lambda_bounds(t, cfg)?;
            // beyond λ^U the HD floor is violated
            let ts = if cfg.lambda_f <= upper { throughput(cfg.lambda_f, t, cfg)?.into() } else { Cell::Empty };
            Ok(vec![t.t_c.into(), Cell::Int(cfg.n_j as i64), cfg.lambda_f.into(), upper.into(), ts])
        })
        .collect();
    collect(
        &[
            ("t_c", "bit/s/Hz/area"),
            ("n_j", "streams"),
            ("lambda_f", "1/area"),
            ("lambda_upper", "1/area"),
            ("t_s", "bit/s/Hz/area"),
        ],
        rows,
    )
}
