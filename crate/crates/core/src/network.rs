//! Physical and deployment parameters of the two-tier network.

use crate::error::{Result, SecnetError};
use crate::math_core::DerivedConstants;
use serde::{Deserialize, Serialize};

/// Receiver architecture implied by the number of jamming antennas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// One jamming antenna; ZF-MRC reception on the remaining N_f − 1.
    SingleAntenna,
    /// N_t ≥ 2 jamming antennas sending N_j streams in the SI null space.
    MultiAntenna,
}

/// Densities are nodes per unit area, powers are linear (any consistent
/// unit), distances in the same length unit as the densities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkConfig {
    pub lambda_h: f64,
    pub lambda_f: f64,
    pub lambda_e: f64,
    pub p_h: f64,
    pub p_f: f64,
    pub p_t: f64,
    pub alpha: f64,
    pub n_f: usize,
    pub n_h: usize,
    pub n_e: usize,
    pub n_t: usize,
    pub n_j: usize,
    pub d_f: f64,
    pub d_h: f64,
}

/// dBm to milliwatts.
pub fn dbm_to_linear(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

impl Default for NetworkConfig {
    fn default() -> Self {
        Self {
            lambda_h: 1e-3,
            lambda_f: 1e-3,
            lambda_e: 1e-4,
            p_h: 1.0,
            p_f: 1.0,
            p_t: 1.0,
            alpha: 3.5,
            n_f: 4,
            n_h: 4,
            n_e: 4,
            n_t: 1,
            n_j: 1,
            d_f: 1.0,
            d_h: 1.0,
        }
    }
}

impl NetworkConfig {
    pub fn validate(&self) -> Result<Mode> {
        let bad = |msg: String| Err(SecnetError::InvalidConfig(msg));
        if !(self.alpha > 2.0) || !self.alpha.is_finite() {
            return bad(format!("alpha must exceed 2, got {}", self.alpha));
        }
        for (name, v) in [("lambda_h", self.lambda_h), ("lambda_f", self.lambda_f), ("lambda_e", self.lambda_e)] {
            if !(v >= 0.0) || !v.is_finite() {
                return bad(format!("{name} must be a finite non-negative density, got {v}"));
            }
        }
        for (name, v) in [("p_h", self.p_h), ("p_f", self.p_f), ("p_t", self.p_t), ("d_f", self.d_f), ("d_h", self.d_h)] {
            if !(v > 0.0) || !v.is_finite() {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if self.n_h < 1 || self.n_e < 1 {
            return bad("n_h and n_e must be at least 1".into());
        }
        if self.n_t == 0 {
            return bad("n_t must be at least 1".into());
        }
        if self.n_t == 1 {
            if self.n_j != 1 {
                return bad(format!("single jamming antenna supports one stream, got n_j = {}", self.n_j));
            }
            if self.n_f < 3 {
                return bad(format!("single-antenna mode needs n_f >= 3, got {}", self.n_f));
            }
            Ok(Mode::SingleAntenna)
        } else {
            if self.n_j < 1 || self.n_j > self.n_t - 1 {
                return bad(format!("n_j must lie in 1..={}, got {}", self.n_t - 1, self.n_j));
            }
            if self.n_f < self.n_t + 1 {
                return bad(format!("n_f must be at least n_t + 1 = {}, got {}", self.n_t + 1, self.n_f));
            }
            Ok(Mode::MultiAntenna)
        }
    }

    pub fn mode(&self) -> Result<Mode> {
        self.validate()
    }

    pub fn delta(&self) -> f64 {
        2.0 / self.alpha
    }

    pub fn p_tf(&self) -> f64 {
        self.p_t / self.p_f
    }

    pub fn p_hf(&self) -> f64 {
        self.p_h / self.p_f
    }

    pub fn p_fh(&self) -> f64 {
        self.p_f / self.p_h
    }

    pub fn p_th(&self) -> f64 {
        self.p_t / self.p_h
    }

    /// Constants table large enough for every antenna count in the config.
    pub fn derived(&self) -> Result<DerivedConstants> {
        let max_n = [self.n_f, self.n_h, self.n_e, self.n_j + 1].into_iter().max().unwrap_or(2) + 1;
        DerivedConstants::new(self.alpha, max_n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_single_antenna() {
        assert_eq!(NetworkConfig::default().validate(), Ok(Mode::SingleAntenna));
    }

    #[test]
    fn mode_rules() {
        let mut c = NetworkConfig { n_t: 3, n_j: 2, n_f: 4, ..Default::default() };
        assert_eq!(c.validate(), Ok(Mode::MultiAntenna));
        c.n_j = 3;
        assert!(c.validate().is_err());
        c.n_j = 1;
        c.n_f = 3;
        assert!(c.validate().is_err());
        let c = NetworkConfig { n_f: 2, ..Default::default() };
        assert!(c.validate().is_err());
        let c = NetworkConfig { n_j: 2, ..Default::default() };
        assert!(c.validate().is_err());
        let c = NetworkConfig { alpha: 2.0, ..Default::default() };
        assert!(matches!(c.validate(), Err(SecnetError::InvalidConfig(_))));
        let c = NetworkConfig { d_f: 0.0, ..Default::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn dbm_conversion() {
        assert_eq!(dbm_to_linear(0.0), 1.0);
        assert!((dbm_to_linear(20.0) - 100.0).abs() < 1e-12);
        assert!((dbm_to_linear(-30.0) - 1e-3).abs() < 1e-18);
    }
}
