use std::path::PathBuf;

use clap::ValueEnum;
use parity_partitions::precision::{PrecCtx, Ray};
use parity_partitions::FamilyCode;

/// Enumeration above this size takes minutes per family, so it is refused.
pub const ORACLE_CAP: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Series order; `None` lets each command pick its own default.
    pub order: Option<usize>,
    pub oracle_bound: u32,
    pub precision: u32,
    /// Ray angles in radians.
    pub alphas: Option<Vec<f64>>,
    /// Ray magnitudes, strictly decreasing.
    pub radii: Option<Vec<f64>>,
    pub format: Format,
    pub output: Option<PathBuf>,
    /// Empty means all eight.
    pub families: Vec<FamilyCode>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.oracle_bound > ORACLE_CAP {
            return Err(format!(
                "--oracle-bound {} exceeds the cap of {ORACLE_CAP}",
                self.oracle_bound
            ));
        }
        if let Some(n) = self.order {
            if n == 0 {
                return Err("--order must be positive".into());
            }
            if n < self.oracle_bound as usize {
                return Err(format!(
                    "--order {n} is below --oracle-bound {}",
                    self.oracle_bound
                ));
            }
        }
        if self.precision < 32 {
            return Err(format!(
                "--precision {} is too small (minimum 32 bits)",
                self.precision
            ));
        }
        Ok(())
    }

    pub fn order_or(&self, default: usize) -> usize {
        self.order.unwrap_or(default)
    }

    /// Selected families in the fixed catalog order.
    pub fn families(&self) -> Vec<FamilyCode> {
        if self.families.is_empty() {
            return FamilyCode::ALL.to_vec();
        }
        FamilyCode::ALL
            .into_iter()
            .filter(|f| self.families.contains(f))
            .collect()
    }

    pub fn ctx(&self) -> PrecCtx {
        PrecCtx::new(self.precision)
    }

    pub fn rays(&self, alphas: &[f64], radii: &[f64]) -> Result<Vec<Ray>, String> {
        let alphas = self.alphas.as_deref().unwrap_or(alphas);
        let radii = self.radii.as_deref().unwrap_or(radii);
        alphas
            .iter()
            .map(|&a| Ray::new(a, radii.to_vec()).map_err(|e| e.to_string()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> RunConfig {
        RunConfig {
            order: None,
            oracle_bound: 40,
            precision: 128,
            alphas: None,
            radii: None,
            format: Format::Csv,
            output: None,
            families: Vec::new(),
        }
    }

    #[test]
    fn caps_and_ordering() {
        assert!(base().validate().is_ok());
        let mut c = base();
        c.oracle_bound = 61;
        assert!(c.validate().is_err());
        let mut c = base();
        c.order = Some(30);
        assert!(c.validate().is_err());
        c.order = Some(40);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn families_keep_catalog_order() {
        let mut c = base();
        c.families = vec![FamilyCode::OD_ED, FamilyCode::EU_OU];
        assert_eq!(c.families(), vec![FamilyCode::EU_OU, FamilyCode::OD_ED]);
        assert_eq!(base().families().len(), 8);
    }

    #[test]
    fn bad_rays_are_rejected() {
        let mut c = base();
        c.alphas = Some(vec![2.0]);
        assert!(c.rays(&[0.0], &[0.1]).is_err());
    }
}
