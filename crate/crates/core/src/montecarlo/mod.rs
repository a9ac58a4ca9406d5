//! Stochastic-geometry simulator for the two-tier network.
//!
//! Every trial places the typical receiver at the origin and draws each
//! tier as a PPP inside a disk of radius `window_radius`. Points are
//! generated in order of increasing distance, so a larger window reproduces
//! the smaller window's points exactly and only adds new ones further out.
//! Fading for a (receiver, tier) pair comes from its own random stream, which
//! keeps the per-link draws identical across windows and across thread
//! counts.

pub mod linalg;

use crate::error::{Result, SecnetError};
use crate::network::{Mode, NetworkConfig};
use linalg::{inner, inverse_quad_form, norm_sqr, null_space_of_row, project_out, HermitianMatrix};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSettings {
    pub trials: u64,
    pub window_radius: f64,
    pub seed: u64,
    pub confidence_level: f64,
    /// Add a 1e-12·trace/N_e ridge when an eavesdropper covariance is not
    /// positive definite. With this off such trials raise an error.
    pub regularize: bool,
    /// Replace the interference from beyond the window by its mean, added as
    /// a deterministic power (white across antennas for eavesdroppers).
    pub far_field: bool,
}

impl Default for SimSettings {
    fn default() -> Self {
        Self { trials: 10_000, window_radius: 100.0, seed: 1, confidence_level: 0.99, regularize: true, far_field: true }
    }
}

impl SimSettings {
    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(SecnetError::InvalidConfig("trials must be at least 1".into()));
        }
        if !(self.window_radius > 0.0) || !self.window_radius.is_finite() {
            return Err(SecnetError::InvalidConfig(format!("window radius must be positive, got {}", self.window_radius)));
        }
        if !(self.confidence_level > 0.0 && self.confidence_level < 1.0) {
            return Err(SecnetError::InvalidConfig(format!(
                "confidence level must lie in (0, 1), got {}",
                self.confidence_level
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbabilityEstimate {
    pub value: f64,
    /// Normal-approximation half-width at the configured confidence level.
    pub half_width: f64,
    pub trials: u64,
}

impl ProbabilityEstimate {
    pub fn from_count(hits: u64, trials: u64, confidence_level: f64) -> Self {
        let v = hits as f64 / trials as f64;
        let z = normal_quantile(0.5 + 0.5 * confidence_level);
        Self { value: v, half_width: z * (v * (1.0 - v) / trials as f64).sqrt(), trials }
    }
}

/// Standard normal quantile (Acklam's rational approximation, relative
/// error below 1.2e-9).
pub fn normal_quantile(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [7.784_695_709_041_462e-3, 3.224_671_290_700_398e-1, 2.445_134_137_142_996, 3.754_408_661_907_416];
    let tail = |q: f64| {
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    if p < 0.02425 {
        tail((-2.0 * p.ln()).sqrt())
    } else if p > 1.0 - 0.02425 {
        -tail((-2.0 * (1.0 - p).ln()).sqrt())
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

// Stream identifiers: trial | purpose | index.
const GEO_HD: u64 = 0;
const GEO_FD: u64 = 1;
const GEO_EVE: u64 = 2;
const FADE_FD_RX: u64 = 3;
const FADE_HD_RX: u64 = 4;
const FADE_EVE: u64 = 5;
const PRECODER: u64 = 6;

/// Independent random stream for (trial, purpose, index).
pub fn stream_rng(seed: u64, trial: u64, purpose: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((trial << 28) | (purpose << 24) | (index & 0xff_ffff));
    rng
}

fn cn(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
}

fn cn_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| cn(rng)).collect()
}

/// Receive nodes of one tier with their paired partner nodes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PairedTier {
    /// PPP points, sorted by distance from the origin.
    pub points: Vec<[f64; 2]>,
    /// Partner angle θ, uniform on [0, 2π).
    pub angles: Vec<f64>,
    /// Partner position = point + pair distance · (cos θ, sin θ).
    pub partners: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkRealization {
    /// HD receivers and their transmitters.
    pub hd: PairedTier,
    /// FD receivers (jamming sources) and their transmitters.
    pub fd: PairedTier,
    pub eve: Vec<[f64; 2]>,
    /// Transmitter of the typical FD pair; its receiver sits at the origin.
    pub typical_fd_tx: [f64; 2],
    /// Transmitter of the typical HD pair; its receiver sits at the origin.
    pub typical_hd_tx: [f64; 2],
}

// PPP in a disk, generated outward: r_k² is a sum of Exp(λπ) gaps. Each
// point draws its gap, its angle and then `marks` extra uniforms on [0, 2π),
// so a point's marks do not depend on how far the window extends.
fn ppp_disk(rng: &mut ChaCha8Rng, lambda: f64, radius: f64, marks: usize) -> (Vec<[f64; 2]>, Vec<f64>) {
    let mut pts = Vec::new();
    let mut angles = Vec::new();
    if lambda <= 0.0 {
        return (pts, angles);
    }
    let r2_max = radius * radius;
    let mut r2 = 0.0;
    loop {
        let e: f64 = rng.sample(Exp1);
        r2 += e / (lambda * PI);
        if r2 > r2_max {
            break;
        }
        let phi = rng.random::<f64>() * 2.0 * PI;
        let r = r2.sqrt();
        pts.push([r * phi.cos(), r * phi.sin()]);
        for _ in 0..marks {
            angles.push(rng.random::<f64>() * 2.0 * PI);
        }
    }
    (pts, angles)
}

fn paired(rng: &mut ChaCha8Rng, lambda: f64, radius: f64, pair_distance: f64) -> PairedTier {
    let (points, angles) = ppp_disk(rng, lambda, radius, 1);
    let partners = points
        .iter()
        .zip(&angles)
        .map(|(p, a)| [p[0] + pair_distance * a.cos(), p[1] + pair_distance * a.sin()])
        .collect();
    PairedTier { points, angles, partners }
}

/// Deterministic realization of all point processes for one trial.
pub fn sample_network(cfg: &NetworkConfig, sim: &SimSettings, trial_index: u64) -> NetworkRealization {
    let r = sim.window_radius;
    let hd = paired(&mut stream_rng(sim.seed, trial_index, GEO_HD, 0), cfg.lambda_h, r, cfg.d_h);
    let fd = paired(&mut stream_rng(sim.seed, trial_index, GEO_FD, 0), cfg.lambda_f, r, cfg.d_f);
    let mut eve_rng = stream_rng(sim.seed, trial_index, GEO_EVE, 0);
    let (eve, _) = ppp_disk(&mut eve_rng, cfg.lambda_e, r, 0);
    let mut typ = stream_rng(sim.seed, trial_index, GEO_EVE, 1);
    let a_f = typ.random::<f64>() * 2.0 * PI;
    let a_h = typ.random::<f64>() * 2.0 * PI;
    NetworkRealization {
        hd,
        fd,
        eve,
        typical_fd_tx: [cfg.d_f * a_f.cos(), cfg.d_f * a_f.sin()],
        typical_hd_tx: [cfg.d_h * a_h.cos(), cfg.d_h * a_h.sin()],
    }
}

/// ∫_{|z| > R} |z − e|^{−α} dz for a point e at distance `rho` < R from the
/// centre, by the angular-average series
/// 2π Σ_k ((α/2)_k / k!)² ρ^{2k} R^{2−α−2k} / (α + 2k − 2).
pub fn excluded_path_gain(rho: f64, radius: f64, alpha: f64) -> f64 {
    let x = (rho / radius).min(0.999).powi(2);
    let a = 0.5 * alpha;
    let mut coef = 1.0;
    let mut xk = 1.0;
    let mut sum = 0.0;
    for k in 0..100_000 {
        let term = coef * xk / (alpha + 2.0 * k as f64 - 2.0);
        sum += term;
        if term < 1e-14 * sum {
            break;
        }
        let r = (a + k as f64) / (k as f64 + 1.0);
        coef *= r * r;
        xk *= x;
    }
    2.0 * PI * radius.powf(2.0 - alpha) * sum
}

// Mean interference power per unit channel gain from every tier beyond the
// window, seen at the origin.
fn far_interference(cfg: &NetworkConfig, sim: &SimSettings) -> f64 {
    if !sim.far_field {
        return 0.0;
    }
    let tiers = cfg.lambda_h * cfg.p_h + cfg.lambda_f * (cfg.p_f + cfg.p_t);
    tiers * excluded_path_gain(0.0, sim.window_radius, cfg.alpha)
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn path_gain(d: f64, alpha: f64) -> f64 {
    d.powf(-alpha)
}

/// Orthonormal N_t × N_j jamming basis in the null space of `row`
/// (the effective SI channel w F_zz), stored as N_j column vectors.
fn jamming_basis(row: &[C64], n_j: usize) -> Vec<Vec<C64>> {
    let mut b = null_space_of_row(row);
    b.truncate(n_j);
    b
}

// Random precoder of an interfering FD receiver: its own MRC combiner and
// SI channel are drawn and the null-space basis built from them.
fn interferer_precoder(cfg: &NetworkConfig, seed: u64, trial: u64, z: usize) -> Vec<Vec<C64>> {
    let mut rng = stream_rng(seed, trial, PRECODER, z as u64);
    let n_r = cfg.n_f - cfg.n_t;
    let h = cn_vec(&mut rng, n_r);
    let hn = norm_sqr(&h).sqrt();
    // effective SI row w̃ F_zz, with F_zz drawn column by column
    let mut row = vec![C64::new(0.0, 0.0); cfg.n_t];
    for r in row.iter_mut() {
        let col = cn_vec(&mut rng, n_r);
        *r = inner(&h, &col) / hn;
    }
    jamming_basis(&row, cfg.n_j)
}

/// Per-trial state of the typical FD receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdTrial {
    pub sir: f64,
    /// Desired-signal gain after combining: ‖f^H U‖² (single-antenna) or ‖h‖²
    /// (multi-antenna MRC).
    pub desired_gain: f64,
    /// |w f_oo| (single-antenna) or ‖w̃ F_oo F̃‖ (multi-antenna).
    pub si_leakage: f64,
}

/// SIR of the typical FD receiver in one trial.
pub fn fd_trial(cfg: &NetworkConfig, sim: &SimSettings, trial: u64) -> Result<FdTrial> {
    let mode = cfg.validate()?;
    let net = sample_network(cfg, sim, trial);
    let alpha = cfg.alpha;
    let origin = [0.0, 0.0];
    match mode {
        Mode::SingleAntenna => {
            let n_r = cfg.n_f - 1;
            let mut rng = stream_rng(sim.seed, trial, FADE_FD_RX, 0);
            let f_oo = cn_vec(&mut rng, n_r);
            let h = cn_vec(&mut rng, n_r);
            // ZF-MRC: project the desired channel off the SI channel, then match
            let u = project_out(&h, &f_oo);
            let un = norm_sqr(&u).sqrt();
            let w: Vec<C64> = u.iter().map(|c| c / un).collect();
            let leak = inner(&w, &f_oo).norm();
            let gain = un * un;
            let signal = cfg.p_f * gain * path_gain(cfg.d_f, alpha);
            let mut interference = far_interference(cfg, sim);
            let mut tier_rng = stream_rng(sim.seed, trial, FADE_FD_RX, 1);
            for p in &net.hd.partners {
                interference += cfg.p_h * inner(&w, &cn_vec(&mut tier_rng, n_r)).norm_sqr() * path_gain(dist(*p, origin), alpha);
            }
            let mut tier_rng = stream_rng(sim.seed, trial, FADE_FD_RX, 2);
            for (rx, tx) in net.fd.points.iter().zip(&net.fd.partners) {
                interference += cfg.p_f * inner(&w, &cn_vec(&mut tier_rng, n_r)).norm_sqr() * path_gain(dist(*tx, origin), alpha);
                interference += cfg.p_t * inner(&w, &cn_vec(&mut tier_rng, n_r)).norm_sqr() * path_gain(dist(*rx, origin), alpha);
            }
            Ok(FdTrial { sir: signal / interference, desired_gain: gain, si_leakage: leak })
        }
        Mode::MultiAntenna => {
            let n_r = cfg.n_f - cfg.n_t;
            let n_j = cfg.n_j as f64;
            let mut rng = stream_rng(sim.seed, trial, FADE_FD_RX, 0);
            let h = cn_vec(&mut rng, n_r);
            let hn = norm_sqr(&h).sqrt();
            let w: Vec<C64> = h.iter().map(|c| c / hn).collect();
            // SI channel F_oo, one receive-antenna vector per jamming antenna
            let f_oo: Vec<Vec<C64>> = (0..cfg.n_t).map(|_| cn_vec(&mut rng, n_r)).collect();
            let row: Vec<C64> = f_oo.iter().map(|col| inner(&w, col)).collect();
            let basis = jamming_basis(&row, cfg.n_j);
            let leak = basis
                .iter()
                .map(|b| row.iter().zip(b).map(|(x, y)| x * y).sum::<C64>().norm_sqr())
                .sum::<f64>()
                .sqrt();
            let gain = hn * hn;
            let signal = cfg.p_f * gain * path_gain(cfg.d_f, alpha);
            let mut interference = far_interference(cfg, sim);
            let mut tier_rng = stream_rng(sim.seed, trial, FADE_FD_RX, 1);
            for p in &net.hd.partners {
                interference += cfg.p_h * inner(&w, &cn_vec(&mut tier_rng, n_r)).norm_sqr() * path_gain(dist(*p, origin), alpha);
            }
            let mut tier_rng = stream_rng(sim.seed, trial, FADE_FD_RX, 2);
            for (z, (rx, tx)) in net.fd.points.iter().zip(&net.fd.partners).enumerate() {
                interference += cfg.p_f * inner(&w, &cn_vec(&mut tier_rng, n_r)).norm_sqr() * path_gain(dist(*tx, origin), alpha);
                // effective row w̃ F_zo, then power along the interferer's basis
                let eff: Vec<C64> = (0..cfg.n_t).map(|_| inner(&w, &cn_vec(&mut tier_rng, n_r))).collect();
                let pre = interferer_precoder(cfg, sim.seed, trial, z);
                let jam: f64 = pre.iter().map(|b| eff.iter().zip(b).map(|(x, y)| x * y).sum::<C64>().norm_sqr()).sum();
                interference += cfg.p_t / n_j * jam * path_gain(dist(*rx, origin), alpha);
            }
            Ok(FdTrial { sir: signal / interference, desired_gain: gain, si_leakage: leak })
        }
    }
}

/// SIR of the typical HD receiver (MRC over N_h antennas) in one trial.
pub fn hd_trial_sir(cfg: &NetworkConfig, sim: &SimSettings, trial: u64) -> Result<f64> {
    let mode = cfg.validate()?;
    let net = sample_network(cfg, sim, trial);
    let alpha = cfg.alpha;
    let origin = [0.0, 0.0];
    let n = cfg.n_h;
    let mut rng = stream_rng(sim.seed, trial, FADE_HD_RX, 0);
    let h = cn_vec(&mut rng, n);
    let hn = norm_sqr(&h).sqrt();
    let w: Vec<C64> = h.iter().map(|c| c / hn).collect();
    let signal = cfg.p_h * hn * hn * path_gain(cfg.d_h, alpha);
    let mut interference = far_interference(cfg, sim);
    let mut tier_rng = stream_rng(sim.seed, trial, FADE_HD_RX, 1);
    for p in &net.hd.partners {
        interference += cfg.p_h * inner(&w, &cn_vec(&mut tier_rng, n)).norm_sqr() * path_gain(dist(*p, origin), alpha);
    }
    let mut tier_rng = stream_rng(sim.seed, trial, FADE_HD_RX, 2);
    for (z, (rx, tx)) in net.fd.points.iter().zip(&net.fd.partners).enumerate() {
        interference += cfg.p_f * inner(&w, &cn_vec(&mut tier_rng, n)).norm_sqr() * path_gain(dist(*tx, origin), alpha);
        let g_rx = path_gain(dist(*rx, origin), alpha);
        match mode {
            Mode::SingleAntenna => {
                interference += cfg.p_t * inner(&w, &cn_vec(&mut tier_rng, n)).norm_sqr() * g_rx;
            }
            Mode::MultiAntenna => {
                let eff: Vec<C64> = (0..cfg.n_t).map(|_| inner(&w, &cn_vec(&mut tier_rng, n))).collect();
                let pre = interferer_precoder(cfg, sim.seed, trial, z);
                let jam: f64 = pre.iter().map(|b| eff.iter().zip(b).map(|(x, y)| x * y).sum::<C64>().norm_sqr()).sum();
                interference += cfg.p_t / cfg.n_j as f64 * jam * g_rx;
            }
        }
    }
    Ok(signal / interference)
}

/// MMSE and MRC SIR of one eavesdropper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EveSir {
    pub mmse: f64,
    pub mrc: f64,
}

/// Per-eavesdropper SIRs for one trial, computed until the first one reaches
/// `stop_at` (pass `f64::INFINITY` to evaluate all).
pub fn eve_trial(cfg: &NetworkConfig, sim: &SimSettings, trial: u64, stop_at: f64) -> Result<Vec<EveSir>> {
    let mode = cfg.validate()?;
    let net = sample_network(cfg, sim, trial);
    let alpha = cfg.alpha;
    let n_e = cfg.n_e;
    let origin = [0.0, 0.0];

    // jamming sources: the typical receiver first, then the FD tier
    let mut sources: Vec<[f64; 2]> = Vec::with_capacity(net.fd.points.len() + 1);
    sources.push(origin);
    sources.extend_from_slice(&net.fd.points);
    let precoders: Vec<Vec<Vec<C64>>> = match mode {
        Mode::SingleAntenna => Vec::new(),
        Mode::MultiAntenna => {
            let mut v = Vec::with_capacity(sources.len());
            v.push(typical_precoder(cfg, sim, trial));
            v.extend((0..net.fd.points.len()).map(|z| interferer_precoder(cfg, sim.seed, trial, z)));
            v
        }
    };

    let mut out = Vec::with_capacity(net.eve.len());
    for (e, &pos) in net.eve.iter().enumerate() {
        let mut rng = stream_rng(sim.seed, trial, FADE_EVE, e as u64);
        let g = cn_vec(&mut rng, n_e);
        let mut cov = HermitianMatrix::zeros(n_e);
        for (k, &src) in sources.iter().enumerate() {
            let pg = path_gain(dist(src, pos), alpha);
            match mode {
                Mode::SingleAntenna => cov.add_outer(&cn_vec(&mut rng, n_e), cfg.p_t * pg),
                Mode::MultiAntenna => {
                    // G_z (N_e × N_t) drawn column by column, then G_z F̃_z
                    let cols: Vec<Vec<C64>> = (0..cfg.n_t).map(|_| cn_vec(&mut rng, n_e)).collect();
                    for b in &precoders[k] {
                        let mut v = vec![C64::new(0.0, 0.0); n_e];
                        for (col, coef) in cols.iter().zip(b) {
                            for (vi, ci) in v.iter_mut().zip(col) {
                                *vi += ci * coef;
                            }
                        }
                        cov.add_outer(&v, cfg.p_t / cfg.n_j as f64 * pg);
                    }
                }
            }
        }
        if sim.far_field && cfg.lambda_f > 0.0 {
            let rho = dist(pos, origin);
            cov.add_ridge(cfg.lambda_f * cfg.p_t * excluded_path_gain(rho, sim.window_radius, alpha));
        }
        let chol = match cov.cholesky() {
            Some(c) => c,
            None if sim.regularize => {
                let ridge = 1e-12 * cov.trace() / n_e as f64;
                cov.add_ridge(ridge.max(f64::MIN_POSITIVE));
                cov.cholesky().ok_or(SecnetError::SingularCovariance)?
            }
            None => return Err(SecnetError::SingularCovariance),
        };
        let sig = cfg.p_f * path_gain(dist(net.typical_fd_tx, pos), alpha);
        let mmse = sig * inverse_quad_form(&chol, n_e, &g);
        let gn = norm_sqr(&g);
        let mrc = sig * gn * gn / cov.quad_form(&g);
        out.push(EveSir { mmse, mrc });
        if mmse >= stop_at {
            break;
        }
    }
    Ok(out)
}

fn typical_precoder(cfg: &NetworkConfig, sim: &SimSettings, trial: u64) -> Vec<Vec<C64>> {
    // same draws as fd_trial, so the typical pair's jamming basis is shared
    let n_r = cfg.n_f - cfg.n_t;
    let mut rng = stream_rng(sim.seed, trial, FADE_FD_RX, 0);
    let h = cn_vec(&mut rng, n_r);
    let hn = norm_sqr(&h).sqrt();
    let w: Vec<C64> = h.iter().map(|c| c / hn).collect();
    let f_oo: Vec<Vec<C64>> = (0..cfg.n_t).map(|_| cn_vec(&mut rng, n_r)).collect();
    let row: Vec<C64> = f_oo.iter().map(|col| inner(&w, col)).collect();
    jamming_basis(&row, cfg.n_j)
}

fn count_parallel<F>(sim: &SimSettings, f: F) -> Result<ProbabilityEstimate>
where
    F: Fn(u64) -> Result<bool> + Sync,
{
    sim.validate()?;
    let hits = (0..sim.trials)
        .into_par_iter()
        .map(|t| f(t).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(ProbabilityEstimate::from_count(hits, sim.trials, sim.confidence_level))
}

/// Fraction of trials with SIR_f > β_t at the typical FD receiver.
pub fn estimate_fd_connection(beta_t: f64, cfg: &NetworkConfig, sim: &SimSettings) -> Result<ProbabilityEstimate> {
    cfg.validate()?;
    count_parallel(sim, |t| Ok(fd_trial(cfg, sim, t)?.sir > beta_t))
}

/// Fraction of trials with SIR > β_c at the typical HD receiver.
pub fn estimate_hd_connection(beta_c: f64, cfg: &NetworkConfig, sim: &SimSettings) -> Result<ProbabilityEstimate> {
    cfg.validate()?;
    count_parallel(sim, |t| Ok(hd_trial_sir(cfg, sim, t)? > beta_c))
}

/// Fraction of trials in which some eavesdropper reaches SIR ≥ β_e.
pub fn estimate_secrecy_outage(beta_e: f64, cfg: &NetworkConfig, sim: &SimSettings) -> Result<ProbabilityEstimate> {
    cfg.validate()?;
    count_parallel(sim, |t| Ok(eve_trial(cfg, sim, t, beta_e)?.iter().any(|e| e.mmse >= beta_e)))
}
