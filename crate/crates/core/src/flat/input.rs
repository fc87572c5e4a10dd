use serde::{Deserialize, Serialize};

use crate::curve_spec::CurveSpec;
use crate::error::{Error, Result};
use crate::geom::Signature;

/// Which parametrization produced a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    R21,
    R22,
    R2n,
}

impl Space {
    pub fn as_str(&self) -> &'static str {
        match self {
            Space::R21 => "r21",
            Space::R22 => "r22",
            Space::R2n => "r2n",
        }
    }
}

impl std::str::FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "r21" => Ok(Space::R21),
            "r22" => Ok(Space::R22),
            "r2n" => Ok(Space::R2n),
            other => Err(Error::InvalidInput(format!(
                "unknown space {other:?}, expected r21, r22 or r2n"
            ))),
        }
    }
}

impl std::fmt::Display for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Flat outputs of the ℝ^{2,n} family (ℝ^{2,1} when `extras` is empty).
#[derive(Debug, Clone, PartialEq)]
pub struct FlatInputR21 {
    pub f: CurveSpec,
    pub sigma: Option<CurveSpec>,
    /// Free coordinates `x₄ … x_{n+2}`; `n = extras.len() + 1`.
    pub extras: Vec<CurveSpec>,
}

impl FlatInputR21 {
    pub fn new(f: CurveSpec) -> Self {
        FlatInputR21 {
            f,
            sigma: None,
            extras: Vec::new(),
        }
    }

    pub fn with_sigma(mut self, sigma: CurveSpec) -> Self {
        self.sigma = Some(sigma);
        self
    }

    pub fn with_extras(mut self, extras: Vec<CurveSpec>) -> Self {
        self.extras = extras;
        self
    }

    pub fn n(&self) -> usize {
        self.extras.len() + 1
    }
}

/// Flat outputs `f, g` of the ℝ^{2,2} map.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatInputR22 {
    pub f: CurveSpec,
    pub g: CurveSpec,
    pub sigma: Option<CurveSpec>,
}

impl FlatInputR22 {
    pub fn new(f: CurveSpec, g: CurveSpec) -> Self {
        FlatInputR22 { f, g, sigma: None }
    }

    pub fn with_sigma(mut self, sigma: CurveSpec) -> Self {
        self.sigma = Some(sigma);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FlatInput {
    R21(FlatInputR21),
    R22(FlatInputR22),
}

impl FlatInput {
    pub fn space(&self) -> Space {
        match self {
            FlatInput::R21(i) if i.extras.is_empty() => Space::R21,
            FlatInput::R21(_) => Space::R2n,
            FlatInput::R22(_) => Space::R22,
        }
    }

    /// `n` of the target ℝ^{2,n}.
    pub fn n(&self) -> usize {
        match self {
            FlatInput::R21(i) => i.n(),
            FlatInput::R22(_) => 2,
        }
    }

    pub fn signature(&self) -> Signature {
        Signature::r2n(self.n())
    }

    pub fn sigma(&self) -> Option<&CurveSpec> {
        match self {
            FlatInput::R21(i) => i.sigma.as_ref(),
            FlatInput::R22(i) => i.sigma.as_ref(),
        }
    }

    pub fn f(&self) -> &CurveSpec {
        match self {
            FlatInput::R21(i) => &i.f,
            FlatInput::R22(i) => &i.f,
        }
    }

    pub fn g(&self) -> Option<&CurveSpec> {
        match self {
            FlatInput::R21(_) => None,
            FlatInput::R22(i) => Some(&i.g),
        }
    }

    /// Same flat outputs, reparametrized by `sigma` (replacing any existing one).
    pub fn with_sigma(&self, sigma: Option<CurveSpec>) -> Self {
        match self.clone() {
            FlatInput::R21(mut i) => {
                i.sigma = sigma;
                FlatInput::R21(i)
            }
            FlatInput::R22(mut i) => {
                i.sigma = sigma;
                FlatInput::R22(i)
            }
        }
    }
}

impl From<FlatInputR21> for FlatInput {
    fn from(i: FlatInputR21) -> Self {
        FlatInput::R21(i)
    }
}

impl From<FlatInputR22> for FlatInput {
    fn from(i: FlatInputR22) -> Self {
        FlatInput::R22(i)
    }
}
