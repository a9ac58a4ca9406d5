//! Experiment orchestration behind the `secnet` binary: evaluates analytic,
//! simulated and optimized quantities over parameter sweeps and emits them as
//! tables.

pub mod config;
pub mod figures;
pub mod table;

pub use config::{Param, RunConfig, Scale, SweepAxis};
pub use table::{Cell, Format, Table};

use crate::analytic::{
    connection_probability_bound, connection_probability_exact, fd_connection_approx, hd_connection_approx,
    secrecy_outage_approx, secrecy_outage_exact, secrecy_outage_ma, secrecy_outage_ma_limit, OutageVariant, Side,
};
use crate::error::{Result, SecnetError};
use crate::montecarlo::{estimate_fd_connection, estimate_hd_connection, estimate_secrecy_outage};
use crate::network::Mode;
use crate::optimizer::{lambda_bounds, solve_optimal_density, throughput, OptimizerConstants};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Closed forms, bounds and approximations.
    Analytic,
    /// Closed forms plus Monte Carlo estimates.
    Simulate,
    /// Optimal FD-tier density and secrecy throughput.
    Optimize,
    /// Closed forms plus throughput over a mandatory sweep axis.
    Sweep,
}

/// Every point of the (at most two-axis) sweep, as fully specified configs.
pub fn sweep_points(cfg: &RunConfig) -> Result<Vec<RunConfig>> {
    let mut points = vec![cfg.clone()];
    for axis in &cfg.sweeps {
        axis.validate()?;
        let mut next = Vec::with_capacity(points.len() * axis.points);
        for p in &points {
            for v in axis.values() {
                let mut q = p.clone();
                q.set(&axis.param, v)?;
                next.push(q);
            }
        }
        points = next;
    }
    Ok(points)
}

fn axis_columns(cfg: &RunConfig) -> Vec<(String, String)> {
    cfg.sweeps
        .iter()
        .map(|a| (a.param.clone(), Param::lookup(&a.param).map_or("-", |p| p.unit).to_string()))
        .collect()
}

const ANALYTIC: &[(&str, &str)] = &[
    ("p_t_exact", "prob"),
    ("p_t_lower", "prob"),
    ("p_t_upper", "prob"),
    ("p_t_approx", "prob"),
    ("p_c_approx", "prob"),
    ("p_so_exact", "prob"),
    ("p_so_approx", "prob"),
    ("p_so_large_ne", "prob"),
    ("p_so_limit", "prob"),
];

const SIMULATED: &[(&str, &str)] = &[
    ("p_t_mc", "prob"),
    ("p_t_ci", "prob"),
    ("p_c_mc", "prob"),
    ("p_c_ci", "prob"),
    ("p_so_mc", "prob"),
    ("p_so_ci", "prob"),
];

const OPTIMIZED: &[(&str, &str)] = &[
    ("feasible", "-"),
    ("lambda_lower", "1/area"),
    ("lambda_upper", "1/area"),
    ("lambda_star", "1/area"),
    ("lambda_f_star", "1/area"),
    ("r_t", "bit/s/Hz"),
    ("r_e", "bit/s/Hz"),
    ("r_s", "bit/s/Hz"),
    ("t_s_star", "bit/s/Hz/area"),
];

/// Analytic quantities at one point. Quantities that do not apply to the
/// point's mode are left empty.
pub fn analytic_row(p: &RunConfig) -> Result<Vec<Cell>> {
    let cfg = &p.network;
    let mode = cfg.validate()?;
    let single = mode == Mode::SingleAntenna;
    let closed_outage = single || cfg.n_j == 1;
    Ok(vec![
        if single { connection_probability_exact(p.beta_t, cfg)?.into() } else { Cell::Empty },
        connection_probability_bound(p.beta_t, cfg, Side::Lower)?.into(),
        if single { connection_probability_bound(p.beta_t, cfg, Side::Upper)?.into() } else { Cell::Empty },
        fd_connection_approx(p.beta_t, cfg)?.into(),
        hd_connection_approx(p.beta_c, cfg)?.into(),
        if single { secrecy_outage_exact(p.beta_e, cfg)?.into() } else { Cell::Empty },
        if single {
            secrecy_outage_approx(p.beta_e, cfg, OutageVariant::SmallDf)?.into()
        } else {
            secrecy_outage_ma(p.beta_e, cfg)?.into()
        },
        if closed_outage { secrecy_outage_approx(p.beta_e, cfg, OutageVariant::LargeNe)?.into() } else { Cell::Empty },
        if single { Cell::Empty } else { secrecy_outage_ma_limit(p.beta_e, cfg)?.into() },
    ])
}

pub fn simulated_row(p: &RunConfig) -> Result<Vec<Cell>> {
    let t = estimate_fd_connection(p.beta_t, &p.network, &p.sim)?;
    let h = estimate_hd_connection(p.beta_c, &p.network, &p.sim)?;
    let e = estimate_secrecy_outage(p.beta_e, &p.network, &p.sim)?;
    Ok([t, h, e].iter().flat_map(|x| [Cell::Num(x.value), Cell::Num(x.half_width)]).collect())
}

pub fn optimized_row(p: &RunConfig) -> Result<Vec<Cell>> {
    let c = OptimizerConstants::new(&p.targets, &p.network)?;
    let s = solve_optimal_density(&p.targets, &p.network)?;
    let finite = |v: f64| if v.is_finite() { Cell::Num(v) } else { Cell::Empty };
    let (r_t, r_e, r_s) = s.rate_triple;
    Ok(vec![
        Cell::Bool(s.feasible),
        finite(c.lambda_lower),
        finite(c.lambda_upper),
        s.lambda_star.into(),
        s.lambda_f_star.into(),
        if s.feasible { r_t.into() } else { Cell::Empty },
        if s.feasible { r_e.into() } else { Cell::Empty },
        if s.feasible { r_s.into() } else { Cell::Empty },
        s.t_s_star.into(),
    ])
}

/// Runs one command over the configured sweep (or the single configured
/// point when no sweep is given).
pub fn run(command: Command, cfg: &RunConfig) -> Result<Table> {
    if command == Command::Sweep && cfg.sweeps.is_empty() {
        return Err(SecnetError::Config("the sweep command needs a sweep axis (sweep_param, ...)".into()));
    }
    let points = sweep_points(cfg)?;
    let axes = axis_columns(cfg);
    let mut header: Vec<(&str, &str)> = axes.iter().map(|(n, u)| (n.as_str(), u.as_str())).collect();
    match command {
        Command::Analytic => header.extend_from_slice(ANALYTIC),
        Command::Simulate => {
            header.extend_from_slice(ANALYTIC);
            header.extend_from_slice(SIMULATED);
        }
        Command::Optimize => header.extend_from_slice(OPTIMIZED),
        Command::Sweep => {
            header.extend_from_slice(ANALYTIC);
            header.push(("t_s", "bit/s/Hz/area"));
        }
    }
    let rows: Vec<Vec<Cell>> = points
        .par_iter()
        .map(|p| -> Result<Vec<Cell>> {
            let mut row: Vec<Cell> =
                cfg.sweeps.iter().map(|a| Cell::Num(p.get(&a.param).expect("validated sweep parameter"))).collect();
            match command {
                Command::Analytic => row.extend(analytic_row(p)?),
                Command::Simulate => {
                    row.extend(analytic_row(p)?);
                    row.extend(simulated_row(p)?);
                }
                Command::Optimize => row.extend(optimized_row(p)?),
                Command::Sweep => {
                    row.extend(analytic_row(p)?);
                    row.push(throughput(p.network.lambda_f, &p.targets, &p.network)?.into());
                }
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    if command == Command::Optimize && cfg.sweeps.is_empty() {
        if let Some(Cell::Bool(false)) = rows[0].first() {
            // distinguish an HD floor that rules out every density
            lambda_bounds(&cfg.targets, &cfg.network)?;
            return Err(SecnetError::Infeasible(
                "no FD-tier density meets the connection, secrecy and HD throughput targets".into(),
            ));
        }
    }
    let mut table = Table::new(&header);
    for r in rows {
        table.push(r);
    }
    Ok(table)
}

#[cfg(test)]
mod tests;
