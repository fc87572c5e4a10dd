//! Null curves in pseudo-Euclidean spaces ℝ^{2,n} as a flat system.
//!
//! The crate builds null curves from free scalar functions (flat outputs)
//! through explicit parametrizations, inverts them back to the flat outputs
//! in closed form, and verifies every identity both numerically (truncated
//! jets) and exactly (rational polynomials).
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the exact layer
//! works on [`RatPoly`]. Concrete `f64` aliases are exported at the root.

pub mod curve_spec;
pub mod error;
pub mod flat;
pub mod geom;
pub mod jet;
pub mod oracle;
pub mod planner;
pub mod poly;
pub mod scalar;
pub mod settings;
pub mod verification;

pub use curve_spec::{CurveSpec, Term};
pub use error::{Error, Result};
pub use flat::{
    delta_from_extras, delta_map, generate, germ_at, invert_germ, invert_r21, invert_r22, invert_r2n, r22_map, r2n_map,
    reparametrization, roundtrip, wh_map_r21, FlatInput, FlatInputR21, FlatInputR22, Grid, InversionResult,
    Orientation, RoundTripReport, Sample, SampledCurve, Space,
};
pub use geom::{basis_u_r21, basis_uv_r22, inner, null_residual, PseudoVec, Signature, VecJet};
pub use jet::Jet;
pub use poly::{DensePoly, RatPoly};
pub use scalar::Real;
pub use settings::Settings;

pub type Jet64 = Jet<f64>;
pub type Jet32 = Jet<f32>;
pub type PseudoVec64 = PseudoVec<f64>;
pub type PseudoVec32 = PseudoVec<f32>;
pub type VecJet64 = VecJet<f64>;
pub type VecJet32 = VecJet<f32>;
pub type SampledCurve64 = SampledCurve<f64>;
pub type Grid64 = Grid<f64>;
pub type InversionResult64 = InversionResult<f64>;
pub type FloatPoly = DensePoly<f64>;
