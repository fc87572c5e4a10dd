use crate::error::{Error, Result};

pub const JET_ORDER_ENV: &str = "NULLFLAT_JET_ORDER";
pub const EPS_DEN_ENV: &str = "NULLFLAT_EPS_DEN";

pub const DEFAULT_JET_ORDER: usize = 5;
pub const DEFAULT_EPS_DEN: f64 = 1e-8;
pub const DEFAULT_SIGMA_MIN: f64 = 1e-8;

/// Numerical knobs shared by generation and inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    /// Jet order K used for flat-output jets.
    pub jet_order: usize,
    /// Inversion denominators below this are reported as degenerate.
    pub eps_den: f64,
    /// Smallest admissible |σ'|.
    pub sigma_min: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            jet_order: DEFAULT_JET_ORDER,
            eps_den: DEFAULT_EPS_DEN,
            sigma_min: DEFAULT_SIGMA_MIN,
        }
    }
}

impl Settings {
    /// Defaults overridden by `NULLFLAT_JET_ORDER` and `NULLFLAT_EPS_DEN`.
    pub fn from_env() -> Result<Self> {
        Self::from_lookup(|key| std::env::var(key).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self> {
        let mut settings = Settings::default();
        if let Some(raw) = lookup(JET_ORDER_ENV) {
            settings.jet_order = raw
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("{JET_ORDER_ENV} must be an integer, got {raw:?}")))?;
        }
        if let Some(raw) = lookup(EPS_DEN_ENV) {
            settings.eps_den = raw
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("{EPS_DEN_ENV} must be a number, got {raw:?}")))?;
        }
        settings.validate()?;
        Ok(settings)
    }

    pub fn validate(&self) -> Result<()> {
        // residual checks need x' and one more derivative after the two lost in x = u f'' - ...
        if self.jet_order < 3 {
            return Err(Error::InvalidInput(format!(
                "jet order must be at least 3, got {}",
                self.jet_order
            )));
        }
        if !(self.eps_den.is_finite() && self.eps_den >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "denominator threshold must be finite and non-negative, got {}",
                self.eps_den
            )));
        }
        Ok(())
    }
}
