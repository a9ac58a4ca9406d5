//! Special-function constants and combinatorial machinery shared by the
//! closed-form expressions.
//!
//! Everything here is a pure function of its arguments. [`DerivedConstants`]
//! caches the gamma-ratio constants for one path-loss exponent so sweeps do
//! not recompute them per point.

mod partitions;

pub use partitions::{partitions, partitions_with_cap, xi_coefficient, PartitionTable, DEFAULT_PARTITION_CAP};

use crate::error::{Result, SecnetError};
use std::f64::consts::PI;

// Lanczos approximation, g = 7, 9 terms. Relative error is below 1e-15 on
// the positive real axis.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(x: f64) -> f64 {
    let mut a = LANCZOS_COEF[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    a * (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp()
}

/// Gamma function for real arguments (poles return `inf`/`nan`).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        lanczos_sum(x - 1.0)
    }
}

/// Natural log of |Γ(x)| for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        (PI / (PI * x).sin()).abs().ln() - ln_gamma(1.0 - x)
    } else {
        let x = x - 1.0;
        let mut a = LANCZOS_COEF[0];
        let t = x + LANCZOS_G + 0.5;
        for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
    }
}

/// `ln n!`
pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Regularized upper incomplete gamma Q(n, x) for integer shape n ≥ 1,
/// i.e. e^{−x} Σ_{j<n} x^j / j!.
pub fn gamma_q_int(n: usize, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 1..n {
        term *= x / j as f64;
        sum += term;
    }
    (sum.ln() - x).exp().min(1.0)
}

/// δ = 2/α.
pub fn delta(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(2.0 / alpha)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 2.0) || !alpha.is_finite() {
        return Err(SecnetError::Domain(format!("path-loss exponent must exceed 2, got {alpha}")));
    }
    Ok(())
}

/// C_{α,N} = π Γ(N−1+δ) Γ(1−δ) / Γ(N−1).
///
/// Equals π Γ(1−δ) E[h^δ] for h ~ Γ(N−1, 1), i.e. the PPP interference
/// exponent of an interferer whose fading power is gamma distributed with
/// shape N−1.
pub fn c_alpha_n(alpha: f64, n: usize) -> Result<f64> {
    check_alpha(alpha)?;
    if n < 2 {
        return Err(SecnetError::Domain(format!("C_(alpha,N) needs N >= 2, got {n}")));
    }
    let d = 2.0 / alpha;
    let m = (n - 1) as f64;
    let ratio = (ln_gamma(m + d) - ln_gamma(m)).exp();
    Ok(PI * ratio * gamma(1.0 - d))
}

/// K_{α,N} = 1 + Σ_{m=1}^{N−1} (1/m!) Π_{l=0}^{m−1} (l − δ).
///
/// These are partial sums of the binomial series of (1 − 1)^δ, so the
/// sequence decreases toward zero from K_{α,1} = 1.
pub fn k_alpha_n(alpha: f64, n: usize) -> Result<f64> {
    check_alpha(alpha)?;
    if n < 1 {
        return Err(SecnetError::Domain("K_(alpha,N) needs N >= 1".into()));
    }
    let d = 2.0 / alpha;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..n {
        term *= (m as f64 - 1.0 - d) / m as f64;
        sum += term;
    }
    Ok(sum)
}

/// Υ_{m,n}: sum over the (m−n)-subsets {l_1 < … < l_{m−n}} of {1, …, m−1}
/// of Π_i (l_i − δ(l_i − i + 1)).
///
/// Evaluated with a dynamic program over (largest admissible element,
/// number of chosen elements), which visits every subset exactly once
/// without enumerating them.
pub fn upsilon(m: usize, n: usize, delta: f64) -> Result<f64> {
    if m < 1 || n < 1 || n > m {
        return Err(SecnetError::Domain(format!("upsilon index out of range: m = {m}, n = {n}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(SecnetError::Domain(format!("delta must lie in (0, 1), got {delta}")));
    }
    let size = m - n;
    // table[i] = sum over i-subsets of {1..l} of the partial product
    let mut table = vec![0.0; size + 1];
    table[0] = 1.0;
    for l in 1..m {
        let lf = l as f64;
        for i in (1..=size.min(l)).rev() {
            table[i] += table[i - 1] * (lf - delta * (lf - i as f64 + 1.0));
        }
    }
    Ok(table[size])
}

/// Complete Bell polynomials B_0..=B_m evaluated at `x[0..m]` = (x_1, …, x_m),
/// via B_{n+1} = Σ_k C(n,k) B_{n−k} x_{k+1}.
pub fn complete_bell(x: &[f64]) -> Vec<f64> {
    let m = x.len();
    let mut b = vec![0.0; m + 1];
    b[0] = 1.0;
    for n in 0..m {
        let mut acc = 0.0;
        let mut c = 1.0;
        for k in 0..=n {
            acc += c * b[n - k] * x[k];
            c = c * (n - k) as f64 / (k + 1) as f64;
        }
        b[n + 1] = acc;
    }
    b
}

/// d^m/ds^m exp(η(s)) from `eta_derivs` = [η, η′, …, η^(m)].
///
/// Returns B_m(η′, …, η^(m)) · exp(η), B_0 = 1.
pub fn exp_derivative(eta_derivs: &[f64]) -> f64 {
    assert!(!eta_derivs.is_empty(), "need at least eta(s)");
    let bell = complete_bell(&eta_derivs[1..]);
    bell[bell.len() - 1] * eta_derivs[0].exp()
}

/// Eagerly built table of C_{α,N} and K_{α,N} for one α. Read-only after
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedConstants {
    pub alpha: f64,
    pub delta: f64,
    c_alpha: Vec<f64>,
    k_alpha: Vec<f64>,
}

impl DerivedConstants {
    /// Tables cover N in 1..=max_n (C only from N = 2).
    pub fn new(alpha: f64, max_n: usize) -> Result<Self> {
        let delta = delta(alpha)?;
        let max_n = max_n.max(2);
        let mut c_alpha = vec![f64::NAN; max_n + 1];
        let mut k_alpha = vec![f64::NAN; max_n + 1];
        for n in 1..=max_n {
            k_alpha[n] = k_alpha_n(alpha, n)?;
            if n >= 2 {
                c_alpha[n] = c_alpha_n(alpha, n)?;
            }
        }
        Ok(Self { alpha, delta, c_alpha, k_alpha })
    }

    /// C_{α,N}; falls back to direct evaluation past the table.
    pub fn c(&self, n: usize) -> f64 {
        match self.c_alpha.get(n) {
            Some(v) if n >= 2 => *v,
            _ => c_alpha_n(self.alpha, n).expect("C_(alpha,N) requires N >= 2"),
        }
    }

    /// K_{α,N}; falls back to direct evaluation past the table.
    pub fn k(&self, n: usize) -> f64 {
        match self.k_alpha.get(n) {
            Some(v) if n >= 1 => *v,
            _ => k_alpha_n(self.alpha, n).expect("K_(alpha,N) requires N >= 1"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn gamma_known_values() {
        assert_relative_eq!(gamma(0.5), PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(5.0), 24.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(1.5), PI.sqrt() / 2.0, max_relative = 1e-14);
        assert_relative_eq!(ln_gamma(100.0), 359.134_205_369_575_4, max_relative = 1e-14);
        assert_relative_eq!(gamma(0.1), 9.513_507_698_668_732, max_relative = 1e-13);
    }

    #[test]
    fn c_alpha_examples() {
        assert_relative_eq!(c_alpha_n(4.0, 2).unwrap(), PI * PI / 2.0, max_relative = 1e-13);
        assert_relative_eq!(c_alpha_n(4.0, 3).unwrap(), 3.0 * PI * PI / 4.0, max_relative = 1e-13);
        // α = 3.5, δ = 4/7: π Γ(1+δ) Γ(1−δ) = π · πδ / sin(πδ)
        let d = 4.0 / 7.0;
        let expected = PI * PI * d / (PI * d).sin();
        assert_relative_eq!(c_alpha_n(3.5, 2).unwrap(), expected, max_relative = 1e-12);
        assert_relative_eq!(c_alpha_n(3.5, 2).unwrap(), 5.784_811_238_872_211, max_relative = 1e-12);
    }

    #[test]
    fn c_alpha_domain_errors() {
        assert!(c_alpha_n(2.0, 2).is_err());
        assert!(c_alpha_n(1.5, 3).is_err());
        assert!(c_alpha_n(3.0, 1).is_err());
    }

    #[test]
    fn k_alpha_examples() {
        assert_eq!(k_alpha_n(3.5, 1).unwrap(), 1.0);
        assert_relative_eq!(k_alpha_n(4.0, 2).unwrap(), 0.5, max_relative = 1e-15);
        // α = 3.5, N = 4: 1 − δ − δ(1−δ)/2 − δ(1−δ)(2−δ)/6 with δ = 4/7,
        // i.e. 1 − 4/7 − 6/49 − 20/343 = 85/343.
        assert_relative_eq!(k_alpha_n(3.5, 4).unwrap(), 85.0 / 343.0, max_relative = 1e-14);
        assert!(k_alpha_n(2.0, 3).is_err());
    }

    #[test]
    fn k_alpha_non_increasing() {
        for &alpha in &[2.1, 2.5, 3.0, 3.5, 4.0, 6.0] {
            let mut prev = k_alpha_n(alpha, 1).unwrap();
            for n in 2..=16 {
                let k = k_alpha_n(alpha, n).unwrap();
                assert!(k <= prev && k > 0.0, "alpha {alpha} n {n}");
                prev = k;
            }
        }
    }

    fn upsilon_brute(m: usize, n: usize, delta: f64) -> f64 {
        let pool: Vec<usize> = (1..m).collect();
        let size = m - n;
        let mut total = 0.0;
        for mask in 0u32..(1u32 << pool.len()) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let chosen: Vec<usize> = pool.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &l)| l).collect();
            let prod: f64 = chosen
                .iter()
                .enumerate()
                .map(|(i0, &l)| l as f64 - delta * (l as f64 - (i0 + 1) as f64 + 1.0))
                .product();
            total += prod;
        }
        total
    }

    #[test]
    fn upsilon_matches_brute_force() {
        for &d in &[0.3, 0.5, 4.0 / 7.0] {
            for m in 1..=8 {
                for n in 1..=m {
                    let fast = upsilon(m, n, d).unwrap();
                    let slow = upsilon_brute(m, n, d);
                    assert_relative_eq!(fast, slow, max_relative = 1e-12, epsilon = 1e-300);
                }
            }
        }
    }

    #[test]
    fn upsilon_small_cases() {
        for m in 1..10 {
            assert_eq!(upsilon(m, m, 0.4).unwrap(), 1.0);
        }
        assert_relative_eq!(upsilon(2, 1, 0.4).unwrap(), 0.6, max_relative = 1e-15);
        // {1,2}: (1 − δ)(2 − δ)
        assert_relative_eq!(upsilon(3, 1, 0.4).unwrap(), 0.6 * 1.6, max_relative = 1e-15);
        assert!(upsilon(3, 4, 0.4).is_err());
        assert!(upsilon(0, 0, 0.4).is_err());
        assert!(upsilon(3, 1, 1.2).is_err());
    }

    #[test]
    fn exp_derivative_low_orders() {
        let (e, e1, e2) = (-0.7, 0.3, -1.1);
        assert_relative_eq!(exp_derivative(&[e]), e.exp());
        assert_relative_eq!(exp_derivative(&[e, e1]), e1 * e.exp());
        assert_relative_eq!(exp_derivative(&[e, e1, e2]), (e2 + e1 * e1) * e.exp());
    }

    #[test]
    fn exp_derivative_matches_finite_differences() {
        // η(s) = −s^0.5 around s = 1.3
        let s0: f64 = 1.3;
        let eta = |s: f64| -s.sqrt();
        let derivs: Vec<f64> = (0..=4)
            .map(|k| {
                // falling factorial of 1/2
                let mut c = 1.0;
                for l in 0..k {
                    c *= 0.5 - l as f64;
                }
                -c * s0.powf(0.5 - k as f64)
            })
            .collect();
        let g = |s: f64| eta(s).exp();
        let h = 1e-2;
        // central stencils up to 7 points
        let pts: Vec<f64> = (-4..=4).map(|i| g(s0 + i as f64 * h)).collect();
        let fd = [
            pts[4],
            (pts[2] - 8.0 * pts[3] + 8.0 * pts[5] - pts[6]) / (12.0 * h),
            (-pts[2] + 16.0 * pts[3] - 30.0 * pts[4] + 16.0 * pts[5] - pts[6]) / (12.0 * h * h),
            (pts[1] - 8.0 * pts[2] + 13.0 * pts[3] - 13.0 * pts[5] + 8.0 * pts[6] - pts[7]) / (8.0 * h.powi(3)),
            (-pts[1] + 12.0 * pts[2] - 39.0 * pts[3] + 56.0 * pts[4] - 39.0 * pts[5] + 12.0 * pts[6] - pts[7])
                / (6.0 * h.powi(4)),
        ];
        for m in 0..=4 {
            let exact = exp_derivative(&derivs[..=m]);
            assert_relative_eq!(exact, fd[m], max_relative = 1e-5);
        }
    }

    #[test]
    fn integer_gamma_tail() {
        assert_eq!(gamma_q_int(1, 0.0), 1.0);
        assert_relative_eq!(gamma_q_int(1, 2.0), (-2.0f64).exp(), max_relative = 1e-14);
        // Q(3, x) = e^{-x}(1 + x + x²/2)
        let x: f64 = 4.5;
        assert_relative_eq!(gamma_q_int(3, x), (-x).exp() * (1.0 + x + x * x / 2.0), max_relative = 1e-14);
        assert!(gamma_q_int(8, 60.0) < 1e-17);
    }

    #[test]
    fn reflection_identity_for_c2() {
        for &alpha in &[2.5, 3.0, 3.5, 4.0, 5.0] {
            let d: f64 = 2.0 / alpha;
            let reflection = PI * (PI * d) / (PI * d).sin();
            assert_relative_eq!(c_alpha_n(alpha, 2).unwrap(), reflection, max_relative = 1e-12);
        }
    }

    #[test]
    fn derived_constants_table() {
        let dc = DerivedConstants::new(3.5, 8).unwrap();
        assert_eq!(dc.c(2), c_alpha_n(3.5, 2).unwrap());
        assert_eq!(dc.k(20), k_alpha_n(3.5, 20).unwrap());
        assert_eq!(dc.c(40), c_alpha_n(3.5, 40).unwrap());
    }

    proptest! {
        #[test]
        fn c_alpha_positive(alpha in 2.05f64..8.0, n in 2usize..200) {
            let c = c_alpha_n(alpha, n).unwrap();
            prop_assert!(c.is_finite() && c > 0.0);
        }

        #[test]
        fn k_alpha_in_unit_interval(alpha in 2.05f64..8.0, n in 1usize..64) {
            let k = k_alpha_n(alpha, n).unwrap();
            prop_assert!(k > 0.0 && k <= 1.0);
        }
    }
}
