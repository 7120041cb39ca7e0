use alloc::format;

use crate::element::SymbolPolicy;
use crate::error::{Error, Result};

/// Deformation parameter and truncation sizes.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QParameters {
    pub q: f64,
    /// Fock truncation `N`.
    pub fock_dim: usize,
    /// Largest `|degree|` retained on circle legs; also the half-width of
    /// the bilateral window.
    pub circle_window: usize,
    pub margin: usize,
}

impl QParameters {
    pub fn new(q: f64, fock_dim: usize, circle_window: usize, margin: usize) -> Result<Self> {
        let p = Self { q, fock_dim, circle_window, margin };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::InvalidParameters(format!("q = {} must lie in (0, 1)", self.q)));
        }
        if self.fock_dim < 4 {
            return Err(Error::InvalidParameters(format!("N = {} must be at least 4", self.fock_dim)));
        }
        if self.circle_window < 2 {
            return Err(Error::InvalidParameters(format!("M = {} must be at least 2", self.circle_window)));
        }
        if self.margin < 1 || self.margin >= self.fock_dim / 2 {
            return Err(Error::InvalidParameters(format!("margin {} out of range for N = {}", self.margin, self.fock_dim)));
        }
        Ok(())
    }

    /// `q^{N/4}`: size of the q-decaying tails left inside the symbol window.
    pub fn tail_tolerance(&self) -> f64 {
        libm::pow(self.q, (self.fock_dim / 4) as f64)
    }

    /// Compatibility tolerance for pairs whose legs carry q-dependent data.
    pub fn compatibility_tolerance(&self, exact: f64) -> f64 {
        self.tail_tolerance().max(exact)
    }

    /// Policy used inside the π maps: averages without a stability verdict.
    pub fn lenient_policy(&self) -> SymbolPolicy {
        SymbolPolicy::lenient(self.margin, self.circle_window as i64, self.tail_tolerance())
    }

    /// Policy of the public symbol extraction.
    pub fn strict_policy(&self) -> SymbolPolicy {
        SymbolPolicy::strict(self.margin, self.circle_window as i64, self.tail_tolerance())
    }

    pub fn with_fock_dim(&self, n: usize) -> Self {
        Self { fock_dim: n, ..*self }
    }
}

impl Default for QParameters {
    fn default() -> Self {
        Self { q: 0.5, fock_dim: 32, circle_window: 8, margin: 2 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(QParameters::new(0.5, 32, 8, 2).is_ok());
        assert!(QParameters::new(0.0, 32, 8, 2).is_err());
        assert!(QParameters::new(1.0, 32, 8, 2).is_err());
        assert!(QParameters::new(0.5, 3, 8, 2).is_err());
        assert!(QParameters::new(0.5, 32, 1, 2).is_err());
        assert!(QParameters::new(0.5, 32, 8, 0).is_err());
    }

    #[test]
    fn tail_tolerance_is_q_to_quarter_n() {
        let p = QParameters::new(0.5, 32, 8, 2).unwrap();
        assert_eq!(p.tail_tolerance(), 0.5f64.powi(8));
    }
}
