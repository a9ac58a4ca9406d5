//! Adaptive Gauss–Kronrod (10/21-point) quadrature on finite intervals,
//! plus a power-law substitution for semi-infinite ranges.

use crate::error::{Result, SecnetError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-8, max_intervals: 2000 }
    }
}

impl QuadOptions {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self { abs_tol, rel_tol, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

// QUADPACK-style error heuristic.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..5 {
        let jt = 2 * j + 1;
        let x = half * XGK[jt];
        let (f1, f2) = (f(center - x), f(center + x));
        fv1[jt] = f1;
        fv2[jt] = f2;
        res_g += WG[j] * (f1 + f2);
        res_k += WGK[jt] * (f1 + f2);
        res_abs += WGK[jt] * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jt = 2 * j;
        let x = half * XGK[jt];
        let (f1, f2) = (f(center - x), f(center + x));
        fv1[jt] = f1;
        fv2[jt] = f2;
        res_k += WGK[jt] * (f1 + f2);
        res_abs += WGK[jt] * (f1.abs() + f2.abs());
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let err = (res_k - res_g) * half;
    let habs = half.abs();
    Segment { a, b, value: res_k * half, error: rescale_error(err, res_abs * habs, res_asc * habs) }
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadResult> {
    integrate_with_breaks(f, &[a, b], opts)
}

/// Integrates over consecutive sub-intervals `breaks[0]..breaks[1]..…`,
/// which lets callers place known kinks on interval edges.
pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(mut f: F, breaks: &[f64], opts: &QuadOptions) -> Result<QuadResult> {
    assert!(breaks.len() >= 2, "need at least one interval");
    let mut segs: Vec<Segment> = breaks
        .windows(2)
        .filter(|w| w[1] != w[0])
        .map(|w| gk21(&mut f, w[0], w[1]))
        .collect();
    if segs.is_empty() {
        return Ok(QuadResult { value: 0.0, error: 0.0 });
    }
    loop {
        let value: f64 = segs.iter().map(|s| s.value).sum();
        let error: f64 = segs.iter().map(|s| s.error).sum();
        let tol = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= tol {
            return Ok(QuadResult { value, error });
        }
        let (idx, worst) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, s)| (i, *s))
            .unwrap();
        let mid = 0.5 * (worst.a + worst.b);
        // interval can no longer be split in floating point
        let exhausted = mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b);
        if segs.len() >= opts.max_intervals || exhausted {
            return Err(SecnetError::Quadrature { achieved: error, requested: tol });
        }
        let left = gk21(&mut f, worst.a, mid);
        let right = gk21(&mut f, mid, worst.b);
        segs[idx] = left;
        segs.push(right);
    }
}

/// Integrates `f` over `[a, ∞)` for an integrand decaying like x^(−decay)
/// (decay > 1).
///
/// Uses x = a·t^(−γ) with γ = 2/(decay − 1), which maps the power-law tail
/// onto a linearly vanishing integrand at t = 0.
pub fn integrate_tail<F: FnMut(f64) -> f64>(mut f: F, a: f64, decay: f64, opts: &QuadOptions) -> Result<QuadResult> {
    assert!(a > 0.0 && decay > 1.0, "tail integral needs a > 0 and decay > 1");
    let gamma = 2.0 / (decay - 1.0);
    let g = move |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let x = a * t.powf(-gamma);
        let jac = gamma * x / t;
        let v = f(x) * jac;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(g, 0.0, 1.0, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, &QuadOptions::default()).unwrap();
        assert_relative_eq!(r.value, 0.0, epsilon = 1e-13);
        let r = integrate(|x| x.powi(6), -1.0, 1.0, &QuadOptions::default()).unwrap();
        assert_relative_eq!(r.value, 2.0 / 7.0, max_relative = 1e-14);
    }

    #[test]
    fn peaked_integrand() {
        // Lorentzian of width 1e-3
        let w: f64 = 1e-3;
        let r = integrate(|x| w / (x * x + w * w), -1.0, 1.0, &QuadOptions::new(1e-12, 1e-10)).unwrap();
        assert_relative_eq!(r.value, 2.0 * (1.0 / w).atan(), max_relative = 1e-9);
    }

    #[test]
    fn sqrt_endpoint() {
        let r = integrate(|x: f64| x.sqrt(), 0.0, 1.0, &QuadOptions::new(1e-12, 1e-10)).unwrap();
        assert_relative_eq!(r.value, 2.0 / 3.0, max_relative = 1e-10);
    }

    #[test]
    fn tail_power_law() {
        // ∫_1^∞ x^{−2.5} dx = 1/1.5
        let r = integrate_tail(|x: f64| x.powf(-2.5), 1.0, 2.5, &QuadOptions::new(1e-13, 1e-11)).unwrap();
        assert_relative_eq!(r.value, 1.0 / 1.5, max_relative = 1e-10);
        // ∫_0^∞ 2πr / (1 + r^4) dr = π²/2, split at 1
        let opts = QuadOptions::new(1e-13, 1e-11);
        let head = integrate(|r| 2.0 * PI * r / (1.0 + r.powi(4)), 0.0, 1.0, &opts).unwrap();
        let tail = integrate_tail(|r| 2.0 * PI * r / (1.0 + r.powi(4)), 1.0, 3.0, &opts).unwrap();
        assert_relative_eq!(head.value + tail.value, PI * PI / 2.0, max_relative = 1e-10);
    }

    #[test]
    fn reports_failure() {
        let opts = QuadOptions { abs_tol: 1e-15, rel_tol: 1e-15, max_intervals: 4 };
        let err = integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &opts).unwrap_err();
        assert!(matches!(err, SecnetError::Quadrature { .. }));
    }
}
