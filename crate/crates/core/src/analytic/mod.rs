//! Closed-form connection and secrecy-outage probabilities, their bounds
//! and approximations, and the SIR thresholds obtained by inverting them.
//!
//! Approximations return the raw formula value, which can fall below zero
//! outside the high-probability regime. Clamping is left to the caller.

mod connection;
mod outage;

pub use connection::{connection_probability_exact, laplace_exponent_if};
pub use outage::{
    outage_kernel, secrecy_outage_approx, secrecy_outage_exact, secrecy_outage_ma, secrecy_outage_ma_limit,
    OutageVariant,
};

use crate::error::{Result, SecnetError};
use crate::math_core::{upsilon, DerivedConstants};
pub use crate::network::{Mode, NetworkConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

pub(crate) fn require_single(cfg: &NetworkConfig) -> Result<()> {
    match cfg.validate()? {
        Mode::SingleAntenna => Ok(()),
        Mode::MultiAntenna => Err(SecnetError::Mode { expected: "single-antenna" }),
    }
}

pub(crate) fn require_multi(cfg: &NetworkConfig) -> Result<()> {
    match cfg.validate()? {
        Mode::MultiAntenna => Ok(()),
        Mode::SingleAntenna => Err(SecnetError::Mode { expected: "multi-antenna" }),
    }
}

/// Interference coefficients Λ multiplying β^δ in the bounds and
/// approximations. In multi-antenna mode the FD coefficient is Λ̃_f^L and
/// there is no upper-side coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaCoefficients {
    pub lambda_f_lower_coeff: f64,
    pub lambda_f_upper_coeff: Option<f64>,
    pub lambda_h_coeff: f64,
}

impl LambdaCoefficients {
    pub fn new(cfg: &NetworkConfig, dc: &DerivedConstants) -> Result<Self> {
        let mode = cfg.validate()?;
        let d = dc.delta;
        let c2 = dc.c(2);
        let df2 = cfg.d_f * cfg.d_f;
        let dh2 = cfg.d_h * cfg.d_h;
        let hd_on_fd = c2 * cfg.p_hf().powf(d) * cfg.lambda_h * df2;
        Ok(match mode {
            Mode::SingleAntenna => {
                let jam = cfg.p_tf().powf(d) * cfg.lambda_f;
                Self {
                    lambda_f_lower_coeff: hd_on_fd + c2 * df2 * (cfg.lambda_f + jam),
                    lambda_f_upper_coeff: Some(hd_on_fd + c2 * df2 * 0.5 * (1.0 + d) * (cfg.lambda_f + jam)),
                    lambda_h_coeff: c2 * dh2 * (cfg.lambda_h + (cfg.p_fh().powf(d) + cfg.p_th().powf(d)) * cfg.lambda_f),
                }
            }
            Mode::MultiAntenna => {
                let nj = cfg.n_j as f64;
                let cj = dc.c(cfg.n_j + 1);
                Self {
                    lambda_f_lower_coeff: hd_on_fd
                        + c2 * cfg.lambda_f * df2
                        + cj * (cfg.p_tf() / nj).powf(d) * cfg.lambda_f * df2,
                    lambda_f_upper_coeff: None,
                    lambda_h_coeff: c2 * cfg.lambda_h * dh2
                        + c2 * cfg.p_fh().powf(d) * cfg.lambda_f * dh2
                        + cj * (cfg.p_th() / nj).powf(d) * cfg.lambda_f * dh2,
                }
            }
        })
    }

    pub fn fd(&self, side: Side) -> Result<f64> {
        match side {
            Side::Lower => Ok(self.lambda_f_lower_coeff),
            Side::Upper => self.lambda_f_upper_coeff.ok_or(SecnetError::Mode { expected: "single-antenna" }),
        }
    }
}

/// Number of terms in the FD connection series: N_f − 2 (single-antenna)
/// or N_f − N_t (multi-antenna).
fn fd_order(cfg: &NetworkConfig, mode: Mode) -> usize {
    match mode {
        Mode::SingleAntenna => cfg.n_f - 2,
        Mode::MultiAntenna => cfg.n_f - cfg.n_t,
    }
}

/// Lower or upper bound on the FD connection probability,
/// e^{−Λβ^δ}(1 + Σ_{m=1}^{M} (1/m!) Σ_{n=1}^{m} (δΛβ^δ)^n Υ_{m,n}).
pub fn connection_probability_bound(beta_t: f64, cfg: &NetworkConfig, side: Side) -> Result<f64> {
    let mode = cfg.validate()?;
    if side == Side::Upper && mode == Mode::MultiAntenna {
        return Err(SecnetError::Mode { expected: "single-antenna" });
    }
    if !(beta_t >= 0.0) {
        return Err(SecnetError::Domain(format!("beta_t must be non-negative, got {beta_t}")));
    }
    let dc = cfg.derived()?;
    let d = dc.delta;
    let lam = LambdaCoefficients::new(cfg, &dc)?.fd(side)?;
    let x = lam * beta_t.powf(d);
    let terms = fd_order(cfg, mode) - 1;
    let mut sum = 1.0;
    let mut inv_fact = 1.0;
    for m in 1..=terms {
        inv_fact /= m as f64;
        let mut inner = 0.0;
        let mut pow = 1.0;
        for n in 1..=m {
            pow *= d * x;
            inner += pow * upsilon(m, n, d)?;
        }
        sum += inv_fact * inner;
    }
    Ok((-x).exp() * sum)
}

/// High-probability approximation 1 − Λ_f β_t^δ K, using Λ_f^L. See
/// [`fd_connection_approx_side`] for the upper-side coefficient.
pub fn fd_connection_approx(beta_t: f64, cfg: &NetworkConfig) -> Result<f64> {
    fd_connection_approx_side(beta_t, cfg, Side::Lower)
}

pub fn fd_connection_approx_side(beta_t: f64, cfg: &NetworkConfig, side: Side) -> Result<f64> {
    let mode = cfg.validate()?;
    let dc = cfg.derived()?;
    let lam = LambdaCoefficients::new(cfg, &dc)?.fd(side)?;
    Ok(1.0 - lam * beta_t.powf(dc.delta) * dc.k(fd_order(cfg, mode)))
}

/// HD connection approximation 1 − Λ_h β_c^δ K_{α,N_h}.
pub fn hd_connection_approx(beta_c: f64, cfg: &NetworkConfig) -> Result<f64> {
    let dc = cfg.derived()?;
    let lam = LambdaCoefficients::new(cfg, &dc)?.lambda_h_coeff;
    Ok(1.0 - lam * beta_c.powf(dc.delta) * dc.k(cfg.n_h))
}

/// β_t* solving `fd_connection_approx(β) = σ`.
pub fn threshold_beta_t(sigma: f64, cfg: &NetworkConfig) -> Result<f64> {
    let mode = cfg.validate()?;
    let dc = cfg.derived()?;
    let lam = LambdaCoefficients::new(cfg, &dc)?.lambda_f_lower_coeff;
    let k = dc.k(fd_order(cfg, mode));
    Ok(((1.0 - sigma) / (lam * k)).powf(cfg.alpha / 2.0))
}

/// β_e* solving `secrecy_outage(β) = ε`.
///
/// Single-antenna mode and N_j = 1 use the large-N_e closed form; N_j ≥ 2
/// inverts the multi-stream outage numerically.
pub fn threshold_beta_e(epsilon: f64, cfg: &NetworkConfig) -> Result<f64> {
    let mode = cfg.validate()?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(SecnetError::Domain(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    if cfg.lambda_e == 0.0 {
        return Ok(0.0);
    }
    if mode == Mode::SingleAntenna || cfg.n_j == 1 {
        let dc = cfg.derived()?;
        let ratio = std::f64::consts::PI * cfg.lambda_e * cfg.n_e as f64
            / (dc.c(2) * cfg.lambda_f * (1.0 / (1.0 - epsilon)).ln());
        return Ok(ratio.powf(cfg.alpha / 2.0) / cfg.p_tf());
    }
    outage::invert_ma(epsilon, cfg)
}
