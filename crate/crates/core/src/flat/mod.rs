//! Explicit flat parametrizations of null curves and their inversions.
//!
//! * ℝ^{2,1}: `x = u f'' - u' f' + u'' f` on the light-cone curve `u`.
//! * prescribed length: `x + ½ u Δ` has `(x', x') = -Δ²`.
//! * ℝ^{2,n}: the above with `Δ = √(x₄'² + … + x'²_{n+2})` and free extra
//!   coordinates `x₄ … x_{n+2}`.
//! * ℝ^{2,2}: `x = u f' - u' f + v g' - v' g` on two orthogonal null lines.
//!
//! Every map optionally precomposes with a monotone reparametrization σ.

mod input;
mod invert;
mod maps;
mod sampling;

pub use input::{FlatInput, FlatInputR21, FlatInputR22, Space};
pub use invert::{delta_from_extras, invert_germ, invert_r21, invert_r22, invert_r2n, InversionResult, Orientation};
pub use maps::{delta_map, germ_at, r22_map, r2n_map, reparametrization, wh_map_r21};
pub use sampling::{generate, roundtrip, Grid, RoundTripReport, Sample, SampledCurve};
