//! FD-tier density that maximizes network-wide secrecy throughput subject
//! to connection, secrecy-outage and HD-throughput targets.
//!
//! With β_t* = X(1 + Yλ)^{−α/2} and β_e* = Zλ^{−α/2}, the throughput is
//! (σ/ln 2)·[F(λ)]⁺ with F(λ) = λ ln(f_1/f_2), f_1 = 1 + X(1 + Yλ)^{−α/2},
//! f_2 = 1 + Zλ^{−α/2}. F is quasi-concave on (λ^L, ∞) and its stationary
//! point is found by bisection. Multi-stream jamming (N_j ≥ 2) has no closed
//! form for β_e* and falls back to a grid search with golden-section
//! refinement.

use crate::analytic::threshold_beta_e;
use crate::error::{Result, SecnetError};
use crate::math_core::DerivedConstants;
use crate::network::{Mode, NetworkConfig};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{LN_2, PI};

/// Reliability, secrecy and HD-tier targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QoSTargets {
    /// FD connection probability target σ.
    pub sigma: f64,
    /// HD connection probability target σ_c.
    pub sigma_c: f64,
    /// Secrecy outage target ε.
    pub epsilon: f64,
    /// HD network-wide throughput floor T_c (bits/s/Hz per unit area).
    pub t_c: f64,
}

impl Default for QoSTargets {
    fn default() -> Self {
        Self { sigma: 0.9, sigma_c: 0.9, epsilon: 0.1, t_c: 1e-3 }
    }
}

impl QoSTargets {
    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: f64| {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(SecnetError::InvalidConfig(format!("{name} must lie in (0, 1), got {v}")))
            }
        };
        unit("sigma", self.sigma)?;
        unit("sigma_c", self.sigma_c)?;
        unit("epsilon", self.epsilon)?;
        if !(self.t_c >= 0.0) || !self.t_c.is_finite() {
            return Err(SecnetError::InvalidConfig(format!("t_c must be finite and non-negative, got {}", self.t_c)));
        }
        Ok(())
    }

    /// HD threshold β_c* with λ_h σ_c log2(1 + β_c*) = T_c.
    pub fn beta_c(&self, lambda_h: f64) -> f64 {
        (self.t_c / (lambda_h * self.sigma_c) * LN_2).exp_m1()
    }
}

/// Constants of the throughput objective for the configured mode.
///
/// In single-antenna mode these are X, Y, Z; in multi-antenna mode X̃, Ỹ and,
/// for N_j = 1, Z̃. `z` is `None` when no closed-form β_e* exists (N_j ≥ 2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizerConstants {
    pub mode: Mode,
    pub x: f64,
    pub y: f64,
    pub z: Option<f64>,
    /// λ^L; infinite when no density gives positive throughput, zero when
    /// there are no eavesdroppers.
    pub lambda_lower: f64,
    /// λ^U from the HD throughput floor; may be infinite (T_c = 0) or
    /// non-positive (the HD tier cannot host any FD pair).
    pub lambda_upper: f64,
}

impl OptimizerConstants {
    pub fn new(targets: &QoSTargets, cfg: &NetworkConfig) -> Result<Self> {
        targets.validate()?;
        let mode = cfg.validate()?;
        if !(cfg.lambda_h > 0.0) {
            return Err(SecnetError::InvalidConfig("the optimizer needs an HD tier (lambda_h > 0)".into()));
        }
        let dc = cfg.derived()?;
        let d = dc.delta;
        let a2 = 0.5 * cfg.alpha;
        let c2 = dc.c(2);
        let hd = c2 * cfg.p_hf().powf(d) * cfg.lambda_h;
        let (k_f, y, hd_per_fd) = match mode {
            Mode::SingleAntenna => {
                (dc.k(cfg.n_f - 2), (1.0 + cfg.p_tf().powf(d)) * c2 / hd, cfg.p_th().powf(d) + cfg.p_fh().powf(d))
            }
            Mode::MultiAntenna => {
                let cj = dc.c(cfg.n_j + 1);
                let nj = cfg.n_j as f64;
                (
                    dc.k(cfg.n_f - cfg.n_t),
                    (c2 + cj * (cfg.p_tf() / nj).powf(d)) / hd,
                    (c2 * cfg.p_fh().powf(d) + cj * (cfg.p_th() / nj).powf(d)) / c2,
                )
            }
        };
        let x = ((1.0 - targets.sigma) / (cfg.d_f * cfg.d_f * k_f * hd)).powf(a2);
        let z = (mode == Mode::SingleAntenna || cfg.n_j == 1).then(|| z_constant(targets, cfg, &dc));

        // HD connection approximation solved for λ_f at β_c*
        let beta_c = targets.beta_c(cfg.lambda_h);
        let budget = (1.0 - targets.sigma_c) / (c2 * cfg.d_h * cfg.d_h * dc.k(cfg.n_h)) * beta_c.powf(-d);
        let lambda_upper = (budget - cfg.lambda_h) / hd_per_fd;

        let lambda_lower = match z {
            Some(z) if z == 0.0 => 0.0,
            Some(z) => {
                let gap = (x / z).powf(d) - y;
                if gap > 0.0 {
                    1.0 / gap
                } else {
                    f64::INFINITY
                }
            }
            None => 0.0,
        };
        Ok(Self { mode, x, y, z, lambda_lower, lambda_upper })
    }

    /// (X/Z) > Y^{α/2}: some density yields positive throughput.
    pub fn admits_positive_throughput(&self) -> bool {
        self.lambda_lower.is_finite()
    }

    /// β_t* at density λ.
    pub fn beta_t(&self, lambda: f64, alpha: f64) -> f64 {
        self.x * (1.0 + self.y * lambda).powf(-0.5 * alpha)
    }
}

fn z_constant(targets: &QoSTargets, cfg: &NetworkConfig, dc: &DerivedConstants) -> f64 {
    let ratio = PI * cfg.lambda_e * cfg.n_e as f64 / (dc.c(2) * (1.0 / (1.0 - targets.epsilon)).ln());
    ratio.powf(0.5 * cfg.alpha) / cfg.p_tf()
}

/// Closed-form feasibility of (σ, ε) in single-antenna mode:
/// (1 − σ) ln(1/(1 − ε)) > π λ_e N_e D_f² K_{α,N_f−2} (1 + P_tf^{−δ}).
pub fn feasibility(targets: &QoSTargets, cfg: &NetworkConfig) -> Result<bool> {
    targets.validate()?;
    if cfg.validate()? != Mode::SingleAntenna {
        return Err(SecnetError::Mode { expected: "single-antenna" });
    }
    let dc = cfg.derived()?;
    let lhs = (1.0 - targets.sigma) * (1.0 / (1.0 - targets.epsilon)).ln();
    let rhs = PI
        * cfg.lambda_e
        * cfg.n_e as f64
        * cfg.d_f
        * cfg.d_f
        * dc.k(cfg.n_f - 2)
        * (1.0 + cfg.p_tf().powf(-dc.delta));
    Ok(lhs > rhs)
}

/// (λ^L, λ^U) in the configured mode. Errors with `Infeasible` when the HD
/// floor leaves no room for FD pairs (λ^U ≤ 0).
pub fn lambda_bounds(targets: &QoSTargets, cfg: &NetworkConfig) -> Result<(f64, f64)> {
    let c = OptimizerConstants::new(targets, cfg)?;
    if !(c.lambda_upper > 0.0) {
        return Err(SecnetError::Infeasible(format!(
            "HD throughput floor {} leaves no room for FD pairs (upper density {:.3e})",
            targets.t_c, c.lambda_upper
        )));
    }
    Ok((c.lambda_lower, c.lambda_upper))
}

fn f1_f2(lambda: f64, c: &OptimizerConstants, alpha: f64) -> (f64, f64) {
    let z = c.z.unwrap_or(0.0);
    (c.beta_t(lambda, alpha), z * lambda.powf(-0.5 * alpha))
}

/// F(λ) = λ ln(f_1/f_2). Requires a closed-form Z.
pub fn objective(lambda: f64, c: &OptimizerConstants, alpha: f64) -> f64 {
    let (b1, b2) = f1_f2(lambda, c, alpha);
    lambda * (b1.ln_1p() - b2.ln_1p())
}

/// F'(λ) = ln(f_1/f_2) + (α/2)[f_1(f_2 − 1) − λ(f_1 − f_2)Y] / (f_1 f_2 (1 + λY)).
pub fn stationarity_lhs(lambda: f64, c: &OptimizerConstants, alpha: f64) -> f64 {
    let (b1, b2) = f1_f2(lambda, c, alpha);
    let (f1, f2) = (1.0 + b1, 1.0 + b2);
    let num = f1 * b2 - lambda * (b1 - b2) * c.y;
    (b1.ln_1p() - b2.ln_1p()) + 0.5 * alpha * num / (f1 * f2 * (1.0 + lambda * c.y))
}

/// G(λ) = 1 + λ f'(λ)/f(λ) with f = ln(f_1/f_2), so that F' = f·G.
pub fn g_function(lambda: f64, c: &OptimizerConstants, alpha: f64) -> f64 {
    let (b1, b2) = f1_f2(lambda, c, alpha);
    let f = b1.ln_1p() - b2.ln_1p();
    stationarity_lhs(lambda, c, alpha) / f
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThroughputSolution {
    pub feasible: bool,
    /// Optimal FD density λ_f*, `None` when no density gives positive
    /// throughput within the HD constraint.
    pub lambda_f_star: Option<f64>,
    /// Unconstrained stationary point λ* (closed-form modes only).
    pub lambda_star: Option<f64>,
    pub t_s_star: f64,
    /// (R_t*, R_e*, R_s*) in bits/s/Hz.
    pub rate_triple: (f64, f64, f64),
}

impl ThroughputSolution {
    fn infeasible(lambda_star: Option<f64>) -> Self {
        Self { feasible: false, lambda_f_star: None, lambda_star, t_s_star: 0.0, rate_triple: (0.0, 0.0, 0.0) }
    }
}

/// β_t* at density λ_f using the mode's Λ^L coefficient.
fn beta_t_at(lambda_f: f64, targets: &QoSTargets, cfg: &NetworkConfig) -> Result<f64> {
    let at = NetworkConfig { lambda_f, ..*cfg };
    Ok(OptimizerConstants::new(targets, &at)?.beta_t(lambda_f, cfg.alpha))
}

fn beta_e_at(lambda_f: f64, targets: &QoSTargets, cfg: &NetworkConfig) -> Result<f64> {
    threshold_beta_e(targets.epsilon, &NetworkConfig { lambda_f, ..*cfg })
}

fn rates(lambda_f: f64, targets: &QoSTargets, cfg: &NetworkConfig) -> Result<(f64, f64, f64)> {
    let r_t = beta_t_at(lambda_f, targets, cfg)?.ln_1p() / LN_2;
    let r_e = beta_e_at(lambda_f, targets, cfg)?.ln_1p() / LN_2;
    Ok((r_t, r_e, (r_t - r_e).max(0.0)))
}

/// T_s = λ_f σ [log2(1 + β_t*) − log2(1 + β_e*)]⁺ at density λ_f.
pub fn throughput(lambda_f: f64, targets: &QoSTargets, cfg: &NetworkConfig) -> Result<f64> {
    targets.validate()?;
    if !(lambda_f > 0.0) {
        return Err(SecnetError::Domain(format!("lambda_f must be positive, got {lambda_f}")));
    }
    Ok(lambda_f * targets.sigma * rates(lambda_f, targets, cfg)?.2)
}

fn solution_at(lambda_f: f64, lambda_star: Option<f64>, targets: &QoSTargets, cfg: &NetworkConfig) -> Result<ThroughputSolution> {
    let triple = rates(lambda_f, targets, cfg)?;
    Ok(ThroughputSolution {
        feasible: true,
        lambda_f_star: Some(lambda_f),
        lambda_star,
        t_s_star: lambda_f * targets.sigma * triple.2,
        rate_triple: triple,
    })
}

/// Maximizes secrecy throughput over λ_f ∈ (0, λ^U].
pub fn solve_optimal_density(targets: &QoSTargets, cfg: &NetworkConfig) -> Result<ThroughputSolution> {
    let c = OptimizerConstants::new(targets, cfg)?;
    if c.z.is_none() {
        return grid_search(targets, cfg, &c);
    }
    if !c.admits_positive_throughput() {
        return Ok(ThroughputSolution::infeasible(None));
    }
    let star = stationary_point(&c, cfg.alpha)?;
    if !(c.lambda_upper > 0.0) || c.lambda_lower > c.lambda_upper {
        return Ok(ThroughputSolution::infeasible(Some(star)));
    }
    solution_at(star.min(c.lambda_upper), Some(star), targets, cfg)
}

/// Root of F'(λ) on (λ^L, ∞) by bisection in ln λ.
pub fn stationary_point(c: &OptimizerConstants, alpha: f64) -> Result<f64> {
    if !c.admits_positive_throughput() {
        return Err(SecnetError::Infeasible("no density gives positive secrecy throughput".into()));
    }
    let lhs = |l: f64| stationarity_lhs(l, c, alpha);
    let mut hi = (2.0 * c.lambda_lower).max(1.0 / c.y);
    let mut doublings = 0;
    while lhs(hi) >= 0.0 {
        hi *= 2.0;
        doublings += 1;
        if doublings > 60 {
            return Err(SecnetError::Bracket("stationarity equation stays positive".into()));
        }
    }
    let mut lo = if c.lambda_lower > 0.0 {
        c.lambda_lower * (1.0 + 1e-9)
    } else {
        // no eavesdroppers: F' → ln(1 + X) > 0 as λ → 0
        let mut lo = hi;
        for _ in 0..200 {
            lo *= 0.5;
            if lhs(lo) > 0.0 {
                break;
            }
        }
        lo
    };
    if !(lhs(lo) > 0.0) {
        return Err(SecnetError::Bracket("stationarity equation is not positive at the lower edge".into()));
    }
    let (mut a, mut b) = (lo.ln(), hi.ln());
    while b - a > 1e-11 {
        let m = 0.5 * (a + b);
        if lhs(m.exp()) > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    lo = (0.5 * (a + b)).exp();
    Ok(lo)
}

const GRID_POINTS: usize = 512;
const GRID_DECADES: f64 = 12.0;

/// Grid of 512 log-spaced densities ending at the search ceiling, then
/// golden-section refinement between the neighbours of the best point.
fn grid_search(targets: &QoSTargets, cfg: &NetworkConfig, c: &OptimizerConstants) -> Result<ThroughputSolution> {
    if !(c.lambda_upper > 0.0) {
        return Ok(ThroughputSolution::infeasible(None));
    }
    // beyond ~10⁶ times the density at which FD interference matches the
    // HD tier the throughput prefactor no longer compensates
    let ceiling = c.lambda_upper.min(1e6 / c.y);
    let step = GRID_DECADES / (GRID_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..GRID_POINTS)
        .map(|i| ceiling * 10f64.powf(-GRID_DECADES + step * i as f64))
        .collect();
    let values: Vec<f64> = grid.par_iter().map(|&l| throughput(l, targets, cfg)).collect::<Result<_>>()?;
    let (best, &best_val) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty grid");
    if !(best_val > 0.0) {
        return Ok(ThroughputSolution::infeasible(None));
    }
    let lo = grid[best.saturating_sub(1)].ln();
    let hi = grid[(best + 1).min(GRID_POINTS - 1)].ln();
    let f = |u: f64| throughput(u.exp(), targets, cfg).map(|v| -v);
    let (u, val) = golden_min(f, lo, hi, 1e-10)?;
    let lambda = if -val >= best_val { u.exp() } else { grid[best] };
    solution_at(lambda, None, targets, cfg)
}

fn golden_min<F: Fn(f64) -> Result<f64>>(f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol * (1.0 + a.abs().max(b.abs())) {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

#[cfg(test)]
mod tests;
