use std::fmt;
use std::str::FromStr;

use milnor_ktk_core::QParameters;
use serde::{Deserialize, Serialize};

use crate::VerifyError;

/// Independently runnable verification suites, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteId {
    Relations,
    Symbol,
    Gauge,
    Milnor,
    Bott,
    Homotopy,
    Clutching,
    #[serde(rename = "theorem-1-1")]
    ConnectingClass,
    #[serde(rename = "corollary-1-2-right")]
    RightColumn,
    Naturality,
    NonAssociation,
    Index,
    Morphisms,
    Properties,
}

impl SuiteId {
    pub const ALL: [SuiteId; 14] = [
        SuiteId::Relations,
        SuiteId::Symbol,
        SuiteId::Gauge,
        SuiteId::Milnor,
        SuiteId::Bott,
        SuiteId::Homotopy,
        SuiteId::Clutching,
        SuiteId::ConnectingClass,
        SuiteId::RightColumn,
        SuiteId::Naturality,
        SuiteId::NonAssociation,
        SuiteId::Index,
        SuiteId::Morphisms,
        SuiteId::Properties,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Relations => "relations",
            SuiteId::Symbol => "symbol",
            SuiteId::Gauge => "gauge",
            SuiteId::Milnor => "milnor",
            SuiteId::Bott => "bott",
            SuiteId::Homotopy => "homotopy",
            SuiteId::Clutching => "clutching",
            SuiteId::ConnectingClass => "theorem-1-1",
            SuiteId::RightColumn => "corollary-1-2-right",
            SuiteId::Naturality => "naturality",
            SuiteId::NonAssociation => "non-association",
            SuiteId::Index => "index",
            SuiteId::Morphisms => "morphisms",
            SuiteId::Properties => "properties",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub q: f64,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub margin: usize,
    pub tolerance_exact: f64,
    pub tolerance_spectral: f64,
    /// Empty means every suite.
    pub suites: Vec<SuiteId>,
    /// Seed for the randomized suites.
    pub seed: u64,
    /// Run the 5-sphere and projective-plane suites at `N` instead of
    /// capping them at [`RunConfig::SHALLOW_N`].
    pub deep: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            q: 0.5,
            n: 32,
            m: 8,
            margin: 2,
            tolerance_exact: 1e-12,
            tolerance_spectral: 1e-9,
            suites: Vec::new(),
            seed: 0,
            deep: false,
        }
    }
}

impl RunConfig {
    /// Fock truncation used for two-Fock-leg spaces without `--deep`.
    pub const SHALLOW_N: usize = 16;

    pub fn validate(&self) -> Result<(), VerifyError> {
        self.params().map(|_| ())?;
        if !(self.tolerance_exact > 0.0 && self.tolerance_spectral > 0.0) {
            return Err(VerifyError::Config("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub fn params(&self) -> Result<QParameters, VerifyError> {
        Ok(QParameters::new(self.q, self.n, self.m, self.margin)?)
    }

    /// Parameters for the spaces with two or more Fock legs.
    pub fn plane_params(&self) -> Result<QParameters, VerifyError> {
        let n = if self.deep { self.n } else { self.n.min(Self::SHALLOW_N) };
        Ok(QParameters::new(self.q, n, self.m, self.margin)?)
    }

    pub fn selected(&self) -> Vec<SuiteId> {
        if self.suites.is_empty() {
            return SuiteId::ALL.to_vec();
        }
        let mut s = self.suites.clone();
        s.sort();
        s.dedup();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(id.as_str().parse::<SuiteId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{id}\""));
        }
        assert!("everything".parse::<SuiteId>().is_err());
    }

    #[test]
    fn defaults_and_ranges() {
        let c = RunConfig::default();
        assert!(c.validate().is_ok());
        assert_eq!(c.plane_params().unwrap().fock_dim, 16);
        assert_eq!(RunConfig { deep: true, ..c.clone() }.plane_params().unwrap().fock_dim, 32);
        assert!(RunConfig { q: 0.0, ..c.clone() }.validate().is_err());
        assert!(RunConfig { q: 1.0, ..c }.validate().is_err());
    }
}
