use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geom::{null_residual, Signature, VecJet};
use crate::scalar::Real;
use crate::settings::Settings;

use super::input::{FlatInput, Space};
use super::invert::{invert_germ, Orientation};
use super::maps::{germ_at, reparametrization};

/// Uniform grid `t0 = τ₀ < … < τ_{count-1} = t1`. Serialized as `[t0, t1, count]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T> {
    pub t0: T,
    pub t1: T,
    pub count: usize,
}

impl<T: Real> Grid<T> {
    pub fn new(t0: T, t1: T, count: usize) -> Result<Self> {
        let grid = Grid { t0, t1, count };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::InvalidGrid(format!(
                "count must be at least 2, got {}",
                self.count
            )));
        }
        if !(self.t0.is_finite() && self.t1.is_finite()) || self.t0 >= self.t1 {
            return Err(Error::InvalidGrid(format!(
                "need finite t0 < t1, got [{}, {}]",
                self.t0, self.t1
            )));
        }
        Ok(())
    }

    /// Grid points; both endpoints are reproduced exactly.
    pub fn points(&self) -> Vec<T> {
        let last = self.count - 1;
        let span = self.t1 - self.t0;
        (0..self.count)
            .map(|i| {
                if i == last {
                    self.t1
                } else {
                    self.t0 + span * T::lit(i as f64) / T::lit(last as f64)
                }
            })
            .collect()
    }
}

impl<T: Serialize> Serialize for Grid<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.t0, &self.t1, self.count).serialize(serializer)
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Grid<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (t0, t1, count) = <(T, T, f64)>::deserialize(deserializer)?;
        if !(count >= 0.0 && count.fract() == 0.0) {
            return Err(D::Error::custom(format!(
                "grid count must be a non-negative integer, got {count}"
            )));
        }
        Ok(Grid {
            t0,
            t1,
            count: count as usize,
        })
    }
}

/// One row of a sampled curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample<T> {
    pub tau: T,
    pub x: Vec<T>,
    pub xdot: Vec<T>,
    /// `(x', x')` at the sample.
    pub residual: T,
}

impl<T: Real> Sample<T> {
    pub(crate) fn from_germ(tau: T, germ: &VecJet<T>) -> Result<Self> {
        Ok(Sample {
            tau,
            x: germ.point().into_components(),
            xdot: germ.velocity().into_components(),
            residual: null_residual(germ)?.value(),
        })
    }

    /// `|residual| / max(1, |x'|²)`.
    pub fn scaled_residual(&self) -> T {
        let norm_sq: T = self.xdot.iter().map(|&c| c * c).sum();
        self.residual.abs() / norm_sq.max(T::one())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledCurve<T> {
    pub space: Space,
    pub n: usize,
    pub signature: Signature,
    pub grid: Grid<T>,
    pub samples: Vec<Sample<T>>,
}

impl<T: Real> SampledCurve<T> {
    pub fn max_scaled_residual(&self) -> T {
        self.samples.iter().map(Sample::scaled_residual).fold(T::zero(), T::max)
    }

    /// Germ of order one (point and velocity) at sample `i`.
    pub fn germ(&self, i: usize) -> Result<VecJet<T>> {
        let s = &self.samples[i];
        if s.xdot.len() != s.x.len() {
            return Err(Error::InvalidInput(format!(
                "sample {i} has no velocity; inversion needs xdot"
            )));
        }
        let jets =
            s.x.iter()
                .zip(&s.xdot)
                .map(|(&p, &v)| crate::jet::Jet::new(vec![p, v]))
                .collect();
        VecJet::new(jets, self.signature)
    }

    /// Structural consistency: signature, dimensions, grid and sample count.
    pub fn validate(&self) -> Result<()> {
        if self.signature != Signature::r2n(self.n) {
            return Err(Error::InvalidInput(format!(
                "signature: expected {{\"p\":2,\"q\":{}}}, got {{\"p\":{},\"q\":{}}}",
                self.n, self.signature.p, self.signature.q
            )));
        }
        let expected_n = match self.space {
            Space::R21 => Some(1),
            Space::R22 => Some(2),
            Space::R2n => None,
        };
        if expected_n.is_some_and(|n| n != self.n) || self.n == 0 {
            return Err(Error::InvalidInput(format!(
                "n: {} does not fit space {}",
                self.n, self.space
            )));
        }
        self.grid.validate()?;
        if self.samples.len() != self.grid.count {
            return Err(Error::InvalidInput(format!(
                "samples: grid declares {} samples, found {}",
                self.grid.count,
                self.samples.len()
            )));
        }
        let dim = self.signature.dim();
        for (i, s) in self.samples.iter().enumerate() {
            if s.x.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "samples[{i}].x: expected {dim} components, got {}",
                    s.x.len()
                )));
            }
            if !s.xdot.is_empty() && s.xdot.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "samples[{i}].xdot: expected {dim} components, got {}",
                    s.xdot.len()
                )));
            }
        }
        Ok(())
    }
}

/// Sign of σ' must not change across the grid.
fn check_monotone<T: Real>(input: &FlatInput, taus: &[T], settings: &Settings) -> Result<Option<Vec<T>>> {
    let Some(sigma) = input.sigma() else {
        return Ok(None);
    };
    let mut slopes = Vec::with_capacity(taus.len());
    for (i, &tau) in taus.iter().enumerate() {
        let jet = reparametrization(Some(sigma), tau, 1, settings).map_err(|e| e.at_sample(i, tau.as_f64()))?;
        let slope = jet.deriv(1);
        if let Some(&first) = slopes.first() {
            if (slope > T::zero()) != (first > T::zero()) {
                return Err(Error::SigmaNotMonotone {
                    tau: tau.as_f64(),
                    derivative: slope.as_f64(),
                }
                .at_sample(i, tau.as_f64()));
            }
        }
        slopes.push(slope);
    }
    Ok(Some(slopes))
}

/// Samples the curve of `input` on `grid`: position, velocity and null residual.
pub fn generate<T: Real>(input: &FlatInput, grid: &Grid<T>, settings: &Settings) -> Result<SampledCurve<T>> {
    grid.validate()?;
    settings.validate()?;
    let taus = grid.points();
    check_monotone(input, &taus, settings)?;
    let samples = taus
        .iter()
        .enumerate()
        .map(|(i, &tau)| {
            germ_at(input, tau, settings)
                .and_then(|germ| Sample::from_germ(tau, &germ))
                .map_err(|e| e.at_sample(i, tau.as_f64()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SampledCurve {
        space: input.space(),
        n: input.n(),
        signature: input.signature(),
        grid: *grid,
        samples,
    })
}

/// Outcome of inverting a generated curve point by point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundTripReport {
    pub space: Space,
    pub samples: usize,
    /// Points skipped because an inversion divisor fell below the threshold.
    pub degenerate: usize,
    /// Errors are `|recovered - expected| / max(1, |expected|)`.
    pub max_tau_error: f64,
    pub max_f_error: f64,
    pub max_g_error: Option<f64>,
    pub max_scaled_residual: f64,
}

impl RoundTripReport {
    pub fn within(&self, tol: f64) -> bool {
        self.max_tau_error <= tol && self.max_f_error <= tol && self.max_g_error.is_none_or(|e| e <= tol)
    }
}

fn rel_err<T: Real>(got: T, want: T) -> f64 {
    ((got - want).abs() / want.abs().max(T::one())).as_f64()
}

/// Generates `input` on `grid`, inverts every sample and compares the
/// recovered flat outputs with `σ(τ)`, `f(σ(τ))` and `g(σ(τ))`.
pub fn roundtrip<T: Real>(input: &FlatInput, grid: &Grid<T>, settings: &Settings) -> Result<RoundTripReport> {
    grid.validate()?;
    settings.validate()?;
    let taus = grid.points();
    let slopes = check_monotone(input, &taus, settings)?;
    let space = input.space();
    let mut report = RoundTripReport {
        space,
        samples: taus.len(),
        degenerate: 0,
        max_tau_error: 0.0,
        max_f_error: 0.0,
        max_g_error: input.g().map(|_| 0.0),
        max_scaled_residual: 0.0,
    };
    for (i, &tau) in taus.iter().enumerate() {
        let at = |e: Error| e.at_sample(i, tau.as_f64());
        let germ = germ_at(input, tau, settings).map_err(at)?;
        let sample = Sample::from_germ(tau, &germ).map_err(at)?;
        report.max_scaled_residual = report.max_scaled_residual.max(sample.scaled_residual().as_f64());
        let orientation = slopes
            .as_ref()
            .map_or(Orientation::Forward, |s| Orientation::of_slope(s[i]));
        let inv = match invert_germ(space, &germ, orientation, settings.eps_den) {
            Ok(inv) => inv,
            Err(Error::DegenerateGerm { .. }) => {
                report.degenerate += 1;
                continue;
            }
            Err(e) => return Err(at(e)),
        };
        let s = input.sigma().map_or(tau, |sigma| sigma.eval(tau));
        report.max_tau_error = report.max_tau_error.max(rel_err(inv.tau_hat, s));
        report.max_f_error = report.max_f_error.max(rel_err(inv.f_hat, input.f().eval(s)));
        if let (Some(g), Some(g_hat), Some(max)) = (input.g(), inv.g_hat, report.max_g_error.as_mut()) {
            *max = max.max(rel_err(g_hat, g.eval(s)));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_spec::CurveSpec;
    use crate::flat::input::{FlatInputR21, FlatInputR22};

    fn spec(s: &str) -> CurveSpec {
        s.parse().unwrap()
    }

    #[test]
    fn grid_points_hit_endpoints() {
        let g = Grid::new(0.1, 0.7, 7).unwrap();
        let p = g.points();
        assert_eq!(p.len(), 7);
        assert_eq!(p[0], 0.1);
        assert_eq!(p[6], 0.7);
        assert!(Grid::new(0.0, 1.0, 1).is_err());
        assert!(Grid::new(1.0, 1.0, 5).is_err());
        assert!(Grid::new(1.0, 0.0, 5).is_err());
    }

    #[test]
    fn generate_cubic() {
        let input = FlatInput::from(FlatInputR21::new(spec("poly:0,0,0,1")));
        let c: SampledCurve<f64> = generate(&input, &Grid::new(0.0, 1.0, 11).unwrap(), &Settings::default()).unwrap();
        assert_eq!(c.samples.len(), 11);
        assert_eq!(c.space, Space::R21);
        assert!(c.samples.iter().all(|s| s.residual.abs() < 1e-12));
        c.validate().unwrap();
    }

    #[test]
    fn generate_accepts_decreasing_sigma() {
        let input = FlatInput::from(FlatInputR21::new(spec("poly:0,0,0,1")).with_sigma(spec("poly:0,-1")));
        let c: SampledCurve<f64> = generate(&input, &Grid::new(0.0, 1.0, 11).unwrap(), &Settings::default()).unwrap();
        assert!(c.samples.iter().all(|s| s.residual.abs() < 1e-12));
    }

    #[test]
    fn generate_rejects_turning_sigma() {
        // σ = τ² - τ turns at τ = ½, between grid points
        let input = FlatInput::from(FlatInputR21::new(spec("poly:0,0,0,1")).with_sigma(spec("poly:0,-1,1")));
        let err = generate(&input, &Grid::new(0.0, 1.0, 10).unwrap(), &Settings::default()).unwrap_err();
        assert_eq!(err.code(), "SigmaNotMonotone");
        assert!(matches!(err, Error::AtSample { index: 5, .. }));
    }

    #[test]
    fn generate_reports_grid_index() {
        let input = FlatInput::from(FlatInputR21::new(spec("poly:0,0,0,1")).with_extras(vec![spec("poly:0,0,1")]));
        let err = generate(&input, &Grid::new(-1.0, 1.0, 3).unwrap(), &Settings::default()).unwrap_err();
        assert!(matches!(err, Error::AtSample { index: 1, .. }));
        assert_eq!(err.code(), "DegenerateDelta");
    }

    #[test]
    fn roundtrip_counts_degenerate_points() {
        let input = FlatInput::from(FlatInputR21::new(spec("poly:0,0,1")));
        let r = roundtrip(&input, &Grid::new(0.0, 1.0, 5).unwrap(), &Settings::default()).unwrap();
        assert_eq!(r.degenerate, 5);

        let input = FlatInput::from(FlatInputR22::new(spec("poly:0,0,1"), spec("poly:0")));
        let r = roundtrip(&input, &Grid::new(0.0, 1.0, 21).unwrap(), &Settings::default()).unwrap();
        assert_eq!(r.degenerate, 0);
        assert!(r.within(1e-9), "{r:?}");
    }
}
