use serde::Serialize;

use crate::curve_spec::CurveSpec;
use crate::error::Result;
use crate::flat::{roundtrip, FlatInput, Grid, RoundTripReport};
use crate::settings::Settings;

/// Scaled null-residual bound a reparametrized curve must meet.
pub const GAUGE_RESIDUAL_TOL: f64 = 1e-10;
/// Relative bound on recovered `σ(τ)`, `f(σ(τ))` and `g(σ(τ))`.
pub const GAUGE_INVERSION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaugeReport {
    pub sigma: CurveSpec,
    pub roundtrip: RoundTripReport,
    pub residual_ok: bool,
    pub inversion_ok: bool,
}

impl GaugeReport {
    pub fn passed(&self) -> bool {
        self.residual_ok && self.inversion_ok
    }
}

/// Reparametrizes `input` by `sigma` (replacing any σ it already carries),
/// samples it on `grid` and inverts every nondegenerate sample.
pub fn gauge_orbit_check(
    input: &FlatInput,
    sigma: &CurveSpec,
    grid: &Grid<f64>,
    settings: &Settings,
) -> Result<GaugeReport> {
    let moved = input.with_sigma(Some(sigma.clone()));
    let report = roundtrip(&moved, grid, settings)?;
    Ok(GaugeReport {
        sigma: sigma.clone(),
        residual_ok: report.max_scaled_residual <= GAUGE_RESIDUAL_TOL,
        inversion_ok: report.within(GAUGE_INVERSION_TOL) && report.degenerate < report.samples,
        roundtrip: report,
    })
}
