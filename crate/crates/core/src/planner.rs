//! Two-point boundary-value planning with polynomial flat outputs.
//!
//! The curve point is linear in the flat-output jet, so prescribing the jet
//! at the right endpoint is a small linear solve. The left jet is pinned to
//! zero, which puts the curve at the origin there; the constant shift `c = A`
//! moves it onto the start point.

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};
use serde::Serialize;

use crate::curve_spec::CurveSpec;
use crate::error::{Error, Result};
use crate::flat::{generate, FlatInput, FlatInputR21, FlatInputR22, Grid, SampledCurve, Space};
use crate::geom::{PseudoVec, Signature};
use crate::scalar::rational_from_f64;
use crate::settings::Settings;

pub const DEFAULT_PLAN_SAMPLES: usize = 101;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryProblem {
    pub space: Space,
    pub a: PseudoVec<f64>,
    pub b: PseudoVec<f64>,
    pub interval: (f64, f64),
}

impl BoundaryProblem {
    pub fn new(space: Space, a: PseudoVec<f64>, b: PseudoVec<f64>, interval: (f64, f64)) -> Result<Self> {
        let problem = BoundaryProblem { space, a, b, interval };
        problem.validate()?;
        Ok(problem)
    }

    pub fn validate(&self) -> Result<()> {
        let sig = match self.space {
            Space::R21 => Signature::r2n(1),
            Space::R22 => Signature::r2n(2),
            Space::R2n => return Err(Error::InvalidInput("planning is available for r21 and r22 only".into())),
        };
        for (name, p) in [("from", &self.a), ("to", &self.b)] {
            if p.signature() != sig {
                return Err(Error::DimensionMismatch {
                    expected: sig.dim(),
                    got: p.dim(),
                });
            }
            if p.components().iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInput(format!("{name}: endpoint must be finite")));
            }
        }
        let (t0, t1) = self.interval;
        if !(t0.is_finite() && t1.is_finite()) || t0 >= t1 {
            return Err(Error::DegenerateInterval { t0, t1 });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanResult {
    pub space: Space,
    pub interval: (f64, f64),
    /// Flat outputs in normalized time `s = (τ - t0)/(t1 - t0)`.
    pub f: CurveSpec,
    pub g: Option<CurveSpec>,
    pub shift: Vec<f64>,
    /// Largest Euclidean distance from a planned endpoint to its target.
    pub endpoint_error: f64,
    pub curve: SampledCurve<f64>,
}

impl PlanResult {
    /// Flat input (with the normalizing σ) that generates the unshifted curve.
    pub fn input(&self) -> FlatInput {
        let sigma = normalizer(self.interval);
        match &self.g {
            None => FlatInputR21::new(self.f.clone()).with_sigma(sigma).into(),
            Some(g) => FlatInputR22::new(self.f.clone(), g.clone()).with_sigma(sigma).into(),
        }
    }
}

fn normalizer((t0, t1): (f64, f64)) -> CurveSpec {
    let span = t1 - t0;
    CurveSpec::poly_f64(&[-t0 / span, 1.0 / span]).expect("finite interval")
}

fn poly_spec(coeffs: &[f64]) -> Result<CurveSpec> {
    let rats = coeffs
        .iter()
        .map(|&c| rational_from_f64(c).ok_or_else(|| Error::InvalidInput(format!("non-finite coefficient {c}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveSpec::polynomial(rats))
}

/// Quintic coefficients `[0,0,0,a,b,c]` with zero 2-jet at 0 and 2-jet
/// `(j0, j1, j2)` at 1.
pub fn quintic_hermite(j: [f64; 3]) -> [f64; 6] {
    let [j0, j1, j2] = j;
    [
        0.0,
        0.0,
        0.0,
        10.0 * j0 - 4.0 * j1 + 0.5 * j2,
        -15.0 * j0 + 7.0 * j1 - j2,
        6.0 * j0 - 3.0 * j1 + 0.5 * j2,
    ]
}

/// Cubic coefficients `[0,0,a,b]` with zero 1-jet at 0 and 1-jet `(j0, j1)` at 1.
pub fn cubic_hermite(j: [f64; 2]) -> [f64; 4] {
    let [j0, j1] = j;
    [0.0, 0.0, 3.0 * j0 - j1, j1 - 2.0 * j0]
}

/// Columns `u''(1), -u'(1), u(1)` acting on `(f, f', f'')(1)`.
pub fn r21_endpoint_matrix() -> Matrix3<f64> {
    Matrix3::from_columns(&[
        Vector3::new(-2.0, 0.0, 2.0),
        -Vector3::new(-2.0, 2.0, 2.0),
        Vector3::new(0.0, 2.0, 2.0),
    ])
}

/// Columns `u(1), -u'(1), v(1), -v'(1)` acting on `(f', f, g', g)(1)`.
pub fn r22_endpoint_matrix() -> Matrix4<f64> {
    Matrix4::from_columns(&[
        Vector4::new(1.0, 1.0, 1.0, -1.0),
        -Vector4::new(0.0, 1.0, 0.0, -1.0),
        Vector4::new(-1.0, 1.0, 1.0, 1.0),
        -Vector4::new(-1.0, 0.0, 1.0, 0.0),
    ])
}

fn difference(problem: &BoundaryProblem) -> Result<Vec<f64>> {
    Ok(problem.b.checked_sub(&problem.a)?.into_components())
}

fn singular() -> Error {
    Error::InvalidInput("endpoint system is singular".into())
}

pub fn plan_r21(problem: &BoundaryProblem) -> Result<PlanResult> {
    problem.validate()?;
    if problem.space != Space::R21 {
        return Err(Error::InvalidInput(format!(
            "plan_r21 needs space r21, got {}",
            problem.space
        )));
    }
    let d = Vector3::from_vec(difference(problem)?);
    let j = r21_endpoint_matrix().lu().solve(&d).ok_or_else(singular)?;
    let f = poly_spec(&quintic_hermite([j[0], j[1], j[2]]))?;
    finish(problem, f, None)
}

pub fn plan_r22(problem: &BoundaryProblem) -> Result<PlanResult> {
    problem.validate()?;
    if problem.space != Space::R22 {
        return Err(Error::InvalidInput(format!(
            "plan_r22 needs space r22, got {}",
            problem.space
        )));
    }
    let d = Vector4::from_vec(difference(problem)?);
    let j = r22_endpoint_matrix().lu().solve(&d).ok_or_else(singular)?;
    let f = poly_spec(&cubic_hermite([j[1], j[0]]))?;
    let g = poly_spec(&cubic_hermite([j[3], j[2]]))?;
    finish(problem, f, Some(g))
}

/// Dispatches on the problem's space.
pub fn plan(problem: &BoundaryProblem) -> Result<PlanResult> {
    match problem.space {
        Space::R22 => plan_r22(problem),
        _ => plan_r21(problem),
    }
}

fn finish(problem: &BoundaryProblem, f: CurveSpec, g: Option<CurveSpec>) -> Result<PlanResult> {
    let mut result = PlanResult {
        space: problem.space,
        interval: problem.interval,
        f,
        g,
        shift: problem.a.components().to_vec(),
        endpoint_error: 0.0,
        curve: SampledCurve {
            space: problem.space,
            n: problem.a.signature().q,
            signature: problem.a.signature(),
            grid: Grid::new(problem.interval.0, problem.interval.1, 2)?,
            samples: Vec::new(),
        },
    };
    result.curve = sample_plan(&result, DEFAULT_PLAN_SAMPLES)?;
    let first = &result.curve.samples[0].x;
    let last = &result.curve.samples[result.curve.samples.len() - 1].x;
    result.endpoint_error = distance(first, problem.a.components()).max(distance(last, problem.b.components()));
    Ok(result)
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Samples the planned curve, shift included, on `count` points of the interval.
pub fn sample_plan(result: &PlanResult, count: usize) -> Result<SampledCurve<f64>> {
    let grid = Grid::new(result.interval.0, result.interval.1, count)?;
    let mut curve = generate(&result.input(), &grid, &Settings::default())?;
    for s in &mut curve.samples {
        for (x, c) in s.x.iter_mut().zip(&result.shift) {
            *x += c;
        }
    }
    Ok(curve)
}
