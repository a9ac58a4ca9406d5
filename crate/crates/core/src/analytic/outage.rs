use super::{require_multi, require_single};
use crate::error::{Result, SecnetError};
use crate::math_core::{binomial, c_alpha_n, gamma, gamma_q_int, ln_gamma, partitions};
use crate::network::{Mode, NetworkConfig};
use crate::quadrature::{integrate, integrate_with_breaks, QuadOptions};
use std::f64::consts::PI;

const OUTER: QuadOptions = QuadOptions { abs_tol: 1e-11, rel_tol: 1e-9, max_intervals: 4000 };
const INNER: QuadOptions = QuadOptions { abs_tol: 1e-13, rel_tol: 1e-11, max_intervals: 4000 };

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutageVariant {
    /// Pair distance small against the jammer spacing.
    SmallDf,
    /// Upper envelope for many eavesdropper antennas.
    LargeNe,
}

fn trivial_outage(cfg: &NetworkConfig) -> Option<f64> {
    if cfg.lambda_e == 0.0 {
        Some(0.0)
    } else if cfg.lambda_f == 0.0 {
        // no jammers anywhere: every eavesdropper decodes
        Some(1.0)
    } else {
        None
    }
}

/// Exact secrecy outage probability of a single-antenna FD pair against
/// MMSE eavesdroppers.
///
/// With x = P_tf β_e and A = C_{α,2} λ_f x^δ the exponent reduces to
/// π(N_e − 1)/A + (1/2A) ∫_0^∞ Q(√(u/A)) u^{N_e−1} e^{−u} / (N_e − 1)! du,
/// where Q(r) = ∫_0^{2π} d^α / (d^α + x r^α) dθ and d is the eavesdropper's
/// distance to the transmitter when it sits at distance r from the jamming
/// receiver.
pub fn secrecy_outage_exact(beta_e: f64, cfg: &NetworkConfig) -> Result<f64> {
    require_single(cfg)?;
    check_beta(beta_e)?;
    if let Some(v) = trivial_outage(cfg) {
        return Ok(v);
    }
    let alpha = cfg.alpha;
    let x = cfg.p_tf() * beta_e;
    let a = c_alpha_n(alpha, 2)? * cfg.lambda_f * x.powf(cfg.delta());
    let ne = cfg.n_e;
    let df = cfg.d_f;

    let mut inner_err: Option<SecnetError> = None;
    let mut integrand = |u: f64| -> f64 {
        let r = (u / a).sqrt();
        let xr = x * r.powf(alpha);
        let q = integrate(
            |th: f64| {
                let d2 = (r * r + df * df - 2.0 * r * df * th.cos()).max(0.0);
                let da = d2.powf(0.5 * alpha);
                da / (da + xr)
            },
            0.0,
            PI,
            &INNER,
        );
        match q {
            Ok(q) => {
                let ln_w = (ne - 1) as f64 * u.ln() - u - ln_gamma(ne as f64);
                let w = if ne == 1 { (-u).exp() } else { ln_w.exp() };
                2.0 * q.value * w
            }
            Err(e) => {
                inner_err.get_or_insert(e);
                f64::NAN
            }
        }
    };

    // Gamma(N_e) tail below 1e-16 past u_max
    let mut u_max = (ne as f64 + 10.0).max(40.0);
    while gamma_q_int(ne, u_max) > 1e-16 {
        u_max *= 1.5;
    }
    let kink = a * df * df;
    let breaks: Vec<f64> = if kink < u_max { vec![0.0, kink, u_max] } else { vec![0.0, u_max] };
    let integral = integrate_with_breaks(&mut integrand, &breaks, &OUTER);
    if let Some(e) = inner_err {
        return Err(e);
    }
    let exponent = PI * (ne - 1) as f64 / a + integral?.value / (2.0 * a);
    Ok(1.0 - (-cfg.lambda_e * exponent).exp())
}

fn check_beta(beta_e: f64) -> Result<()> {
    if !(beta_e > 0.0) || !beta_e.is_finite() {
        return Err(SecnetError::Domain(format!("beta_e must be finite and positive, got {beta_e}")));
    }
    Ok(())
}

/// Closed-form outage approximations.
///
/// `SmallDf`: 1 − exp[−πλ_e / (C_{α,2}λ_f x^δ) · (N_e − 1 + 1/(1 + x))].
/// `LargeNe`: 1 − exp[−πλ_e N_e / (C_{α,2}λ_f x^δ)].
pub fn secrecy_outage_approx(beta_e: f64, cfg: &NetworkConfig, variant: OutageVariant) -> Result<f64> {
    if cfg.validate()? == Mode::MultiAntenna && cfg.n_j != 1 {
        return Err(SecnetError::Mode { expected: "single-stream" });
    }
    check_beta(beta_e)?;
    if let Some(v) = trivial_outage(cfg) {
        return Ok(v);
    }
    let x = cfg.p_tf() * beta_e;
    let a = c_alpha_n(cfg.alpha, 2)? * cfg.lambda_f * x.powf(cfg.delta());
    let ne = cfg.n_e as f64;
    let weight = match variant {
        OutageVariant::SmallDf => ne - 1.0 + 1.0 / (1.0 + x),
        OutageVariant::LargeNe => ne,
    };
    Ok(-(-PI * cfg.lambda_e * weight / a).exp_m1())
}

/// S_k = Σ_j (−1)^{|ξ_j|} |ξ_j|! Ξ_{j,k} over the partitions of k, for
/// `n_j` jamming streams or, with `None`, in the limit N_j → ∞ where each
/// part factor becomes (t − 1 − δ)/t.
pub fn outage_kernel(k: usize, n_j: Option<usize>, delta: f64) -> Result<f64> {
    let table = partitions(k)?;
    let mut total = 0.0;
    for j in 0..table.len() {
        let parts = table.part_count(j);
        let xi = match n_j {
            Some(n) => table.xi_coefficient(j, n, delta),
            None => {
                let mut num = 1.0;
                for &part in table.row(j) {
                    for t in 1..=part {
                        let tf = t as f64;
                        num *= (tf - 1.0 - delta) / tf;
                    }
                }
                let den: f64 = table.multiplicities(j).iter().map(|&m| crate::math_core::factorial(m)).product();
                num / den
            }
        };
        let sign = if parts % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * crate::math_core::factorial(parts) * xi;
    }
    Ok(total)
}

// Σ_{n<N_e} Σ_{i≤min(n,N_j)} C(N_j,i) (x/N_j)^{i−δ} (1+x/N_j)^{−N_j} S_{n−i}
pub(crate) fn ma_weight(x: f64, ne: usize, nj: usize, delta: f64, kernel: &[f64]) -> f64 {
    let njf = nj as f64;
    let y = x / njf;
    let ln_base = -njf * y.ln_1p();
    let mut total = 0.0;
    for n in 0..ne {
        for i in 0..=n.min(nj) {
            total += binomial(nj, i) * ((i as f64 - delta) * y.ln() + ln_base).exp() * kernel[n - i];
        }
    }
    total
}

pub(crate) fn ma_kernels(ne: usize, nj: Option<usize>, delta: f64) -> Result<Vec<f64>> {
    (0..ne).map(|k| outage_kernel(k, nj, delta)).collect()
}

/// Multi-stream secrecy outage in the small-D_f regime.
pub fn secrecy_outage_ma(beta_e: f64, cfg: &NetworkConfig) -> Result<f64> {
    require_multi(cfg)?;
    check_beta(beta_e)?;
    if let Some(v) = trivial_outage(cfg) {
        return Ok(v);
    }
    let kernel = ma_kernels(cfg.n_e, Some(cfg.n_j), cfg.delta())?;
    Ok(ma_from_kernel(beta_e, cfg, &kernel))
}

fn ma_from_kernel(beta_e: f64, cfg: &NetworkConfig, kernel: &[f64]) -> f64 {
    let x = cfg.p_tf() * beta_e;
    let cj = c_alpha_n(cfg.alpha, cfg.n_j + 1).expect("validated alpha");
    let w = ma_weight(x, cfg.n_e, cfg.n_j, cfg.delta(), kernel);
    -(-PI * cfg.lambda_e / (cj * cfg.lambda_f) * w).exp_m1()
}

/// Limit of [`secrecy_outage_ma`] as the number of jamming streams grows
/// without bound. `cfg.n_j` is ignored.
pub fn secrecy_outage_ma_limit(beta_e: f64, cfg: &NetworkConfig) -> Result<f64> {
    let probe = NetworkConfig { n_j: 1, n_t: cfg.n_t.max(2), n_f: cfg.n_f.max(cfg.n_t.max(2) + 1), ..*cfg };
    probe.validate()?;
    check_beta(beta_e)?;
    if let Some(v) = trivial_outage(cfg) {
        return Ok(v);
    }
    let d = cfg.delta();
    let kernel = ma_kernels(cfg.n_e, None, d)?;
    let x = cfg.p_tf() * beta_e;
    let mut w = 0.0;
    for n in 0..cfg.n_e {
        for i in 0..=n {
            let ln_t = -x + (i as f64 - d) * x.ln() - ln_gamma(i as f64 + 1.0);
            w += ln_t.exp() * kernel[n - i];
        }
    }
    Ok(-(-cfg.lambda_e / (gamma(1.0 - d) * cfg.lambda_f) * w).exp_m1())
}

/// β_e with `secrecy_outage_ma(β_e) = ε`, by bisection in ln β.
pub(super) fn invert_ma(epsilon: f64, cfg: &NetworkConfig) -> Result<f64> {
    if cfg.lambda_f == 0.0 {
        return Err(SecnetError::Bracket("no jamming: outage is 1 for every threshold".into()));
    }
    let kernel = ma_kernels(cfg.n_e, Some(cfg.n_j), cfg.delta())?;
    let f = |ln_b: f64| ma_from_kernel(ln_b.exp(), cfg, &kernel) - epsilon;
    // outage falls as β grows
    let mut lo = 0.0f64;
    let mut hi = 0.0f64;
    let mut step = 1.0;
    if f(0.0) > 0.0 {
        let mut found = false;
        for _ in 0..80 {
            hi += step;
            step *= 1.6;
            if f(hi) <= 0.0 {
                found = true;
                break;
            }
            lo = hi;
        }
        if !found {
            return Err(SecnetError::Bracket(format!("outage stays above {epsilon} for all thresholds")));
        }
    } else {
        let mut found = false;
        for _ in 0..80 {
            lo -= step;
            step *= 1.6;
            if f(lo) > 0.0 {
                found = true;
                break;
            }
            hi = lo;
        }
        if !found {
            return Err(SecnetError::Bracket(format!("outage stays below {epsilon} for all thresholds")));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    Ok((0.5 * (lo + hi)).exp())
}
