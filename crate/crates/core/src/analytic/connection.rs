use super::require_single;
use crate::error::{Result, SecnetError};
use crate::math_core::{c_alpha_n, exp_derivative, factorial};
use crate::network::NetworkConfig;
use crate::quadrature::{integrate, integrate_tail, integrate_with_breaks, QuadOptions};
use std::f64::consts::PI;

const OUTER: QuadOptions = QuadOptions { abs_tol: 1e-10, rel_tol: 1e-8, max_intervals: 4000 };
const INNER: QuadOptions = QuadOptions { abs_tol: 1e-13, rel_tol: 1e-11, max_intervals: 4000 };

/// Order-`m` derivative in s of ln L_I(s), the Laplace exponent of the
/// aggregate interference at the typical FD receiver.
///
/// The HD tier contributes −λ_h C_{α,2} (P_h s)^δ. The FD tier contributes
/// −λ_f ∫∫ [1 − 1/((1 + sP_f r^{−α})(1 + sP_t d^{−α}))] r dθ dr, where an
/// interfering pair has one node at distance r and its partner at distance
/// d = √(r² + D_f² − 2rD_f cos θ). Derivatives are taken under the integral
/// sign.
pub fn laplace_exponent_if(s: f64, cfg: &NetworkConfig, order: usize) -> Result<f64> {
    require_single(cfg)?;
    if !(s >= 0.0) || !s.is_finite() {
        return Err(SecnetError::Domain(format!("Laplace variable must be finite and non-negative, got {s}")));
    }
    if s == 0.0 {
        if order == 0 {
            return Ok(0.0);
        }
        return Err(SecnetError::Domain("derivatives of the Laplace exponent diverge at s = 0".into()));
    }
    Ok(hd_exponent(s, cfg, order)? + fd_exponent(s, cfg, order)?)
}

fn hd_exponent(s: f64, cfg: &NetworkConfig, order: usize) -> Result<f64> {
    if cfg.lambda_h == 0.0 {
        return Ok(0.0);
    }
    let d = cfg.delta();
    let c2 = c_alpha_n(cfg.alpha, 2)?;
    // falling factorial δ(δ−1)…(δ−m+1)
    let falling: f64 = (0..order).map(|l| d - l as f64).product();
    Ok(-cfg.lambda_h * c2 * cfg.p_h.powf(d) * falling * s.powf(d - order as f64))
}

fn fd_exponent(s: f64, cfg: &NetworkConfig, order: usize) -> Result<f64> {
    if cfg.lambda_f == 0.0 {
        return Ok(0.0);
    }
    let alpha = cfg.alpha;
    let (pf_s, pt_s, df) = (cfg.p_f * s, cfg.p_t * s, cfg.d_f);

    // Integrand at one (r, θ), with ra = r^α precomputed.
    let point = |r: f64, ra: f64, theta: f64| -> f64 {
        let d2 = (r * r + df * df - 2.0 * r * df * theta.cos()).max(0.0);
        let da = d2.powf(0.5 * alpha);
        if order == 0 {
            // 1 − uv written as (1 − u) + u(1 − v), stable for r, d → ∞ and d = 0
            let one_minus_u = pf_s / (ra + pf_s);
            let u = ra / (ra + pf_s);
            one_minus_u + u * pt_s / (da + pt_s)
        } else {
            let uv = ra / (ra + pf_s) * (da / (da + pt_s));
            let p = cfg.p_f / (ra + pf_s);
            let q = cfg.p_t / (da + pt_s);
            // Σ_k p^k q^{m−k}
            let mut sum = 0.0;
            let mut pk = 1.0;
            for k in 0..=order {
                sum += pk * q.powi((order - k) as i32);
                pk *= p;
            }
            uv * sum
        }
    };

    let mut inner_err: Option<SecnetError> = None;
    let mut radial = |r: f64| -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let ra = r.powf(alpha);
        match integrate(|th| point(r, ra, th), 0.0, PI, &INNER) {
            Ok(v) => 2.0 * v.value * r,
            Err(e) => {
                inner_err.get_or_insert(e);
                f64::NAN
            }
        }
    };

    let scale = (cfg.p_f.max(cfg.p_t) * s).powf(1.0 / alpha);
    let knee = 4.0 * df.max(scale);
    let head = integrate_with_breaks(&mut radial, &[0.0, df, knee], &OUTER);
    let tail = integrate_tail(&mut radial, knee, alpha - 1.0, &OUTER);
    if let Some(e) = inner_err {
        return Err(e);
    }
    let total = head?.value + tail?.value;

    if order == 0 {
        Ok(-cfg.lambda_f * total)
    } else {
        let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
        Ok(cfg.lambda_f * sign * factorial(order) * total)
    }
}

/// Exact connection probability of the typical single-antenna FD receiver,
/// Σ_{m=0}^{N_f−3} ((−s)^m / m!) L^{(m)}(s) at s = D_f^α β_t / P_f.
pub fn connection_probability_exact(beta_t: f64, cfg: &NetworkConfig) -> Result<f64> {
    require_single(cfg)?;
    if !(beta_t >= 0.0) || !beta_t.is_finite() {
        return Err(SecnetError::Domain(format!("beta_t must be finite and non-negative, got {beta_t}")));
    }
    if beta_t == 0.0 || (cfg.lambda_h == 0.0 && cfg.lambda_f == 0.0) {
        return Ok(1.0);
    }
    let s = cfg.d_f.powf(cfg.alpha) * beta_t / cfg.p_f;
    let terms = cfg.n_f - 2;
    let eta: Vec<f64> = (0..terms).map(|m| laplace_exponent_if(s, cfg, m)).collect::<Result<_>>()?;
    let mut total = 0.0;
    let mut coeff = 1.0;
    for m in 0..terms {
        if m > 0 {
            coeff *= -s / m as f64;
        }
        total += coeff * exp_derivative(&eta[..=m]);
    }
    Ok(total.clamp(0.0, 1.0))
}
