//! Named property suites with JSON-serializable reports.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::curve_spec::CurveSpec;
use crate::error::{Error, Result};
use crate::flat::{
    delta_map, generate, r22_map, r2n_map, roundtrip, FlatInput, FlatInputR21, FlatInputR22, Grid, Space,
};
use crate::geom::{basis_u_r21, basis_uv_r22, inner, null_residual, Signature};
use crate::jet::Jet;
use crate::oracle::{
    literal_r22_residual, poly_expand_map, poly_invert_roundtrip, poly_null_residual, typo_witness, OracleMap,
};
use crate::planner::{plan_r21, plan_r22, BoundaryProblem};
use crate::poly::RatPoly;
use crate::scalar::{int, rational_to_f64};
use crate::settings::Settings;

use super::fd::fd_crosscheck;
use super::gauge::gauge_orbit_check;
use super::random::{self, SuiteRng};
use super::rank::{jacobian_det_r21, rank_check, RankSpace};

pub const NULL_TOL: f64 = 1e-10;
pub const ROUNDTRIP_TOL: f64 = 1e-9;
pub const FD_TOL: f64 = 1e-6;
pub const SQRT_TOL: f64 = 1e-12;
pub const BASIS_TOL: f64 = 1e-14;
pub const AGREEMENT_TOL: f64 = 1e-12;
pub const ENDPOINT_TOL: f64 = 1e-9;
pub const DET_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Jets,
    Oracle,
    Null,
    Roundtrip,
    Rank,
    Gauge,
    Planner,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Jets,
        Suite::Oracle,
        Suite::Null,
        Suite::Roundtrip,
        Suite::Rank,
        Suite::Gauge,
        Suite::Planner,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Jets => "jets",
            Suite::Oracle => "oracle",
            Suite::Null => "null",
            Suite::Roundtrip => "roundtrip",
            Suite::Rank => "rank",
            Suite::Gauge => "gauge",
            Suite::Planner => "planner",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown suite {s:?}; expected one of jets, oracle, null, roundtrip, rank, gauge, planner, all"
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseDetail {
    pub case: usize,
    pub check: String,
    pub passed: bool,
    /// Measured quantity compared against `bound`.
    pub value: f64,
    pub bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub details: Vec<CaseDetail>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Default)]
struct Recorder {
    details: Vec<CaseDetail>,
}

impl Recorder {
    /// Records `value <= bound`.
    fn at_most(&mut self, check: &str, value: f64, bound: f64) {
        self.push(check, value <= bound, value, bound, None);
    }

    fn exact(&mut self, check: &str, passed: bool) {
        self.push(check, passed, if passed { 0.0 } else { 1.0 }, 0.0, None);
    }

    fn failure(&mut self, check: &str, err: &Error) {
        self.push(check, false, f64::NAN, 0.0, Some(err.to_string()));
    }

    fn push(&mut self, check: &str, passed: bool, value: f64, bound: f64, note: Option<String>) {
        self.details.push(CaseDetail {
            case: self.details.len(),
            check: check.to_string(),
            passed,
            value,
            bound,
            note,
        });
    }

    fn report(self, suite: &str) -> SuiteReport {
        let passed = self.details.iter().filter(|d| d.passed).count();
        SuiteReport {
            suite: suite.to_string(),
            cases: self.details.len(),
            passed,
            failed: self.details.len() - passed,
            details: self.details,
        }
    }
}

/// Runs one suite, or every suite for [`Suite::All`], deterministically from `seed`.
pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let mut rec = Recorder::default();
    let mut rng = random::rng(seed);
    match suite {
        Suite::Jets => jets(&mut rec, &mut rng),
        Suite::Oracle => oracle(&mut rec, &mut rng),
        Suite::Null => null(&mut rec, &mut rng),
        Suite::Roundtrip => roundtrips(&mut rec, &mut rng),
        Suite::Rank => rank(&mut rec, &mut rng),
        Suite::Gauge => gauge(&mut rec, &mut rng),
        Suite::Planner => planner(&mut rec, &mut rng),
        Suite::All => {
            for s in Suite::EACH {
                let sub = run_suite(s, seed);
                for d in sub.details {
                    let check = format!("{}/{}", s, d.check);
                    rec.push(&check, d.passed, d.value, d.bound, d.note);
                }
            }
        }
    }
    rec.report(suite.as_str())
}

fn jets(rec: &mut Recorder, rng: &mut SuiteRng) {
    for _ in 0..100 {
        let spec = random::analytic_spec(rng);
        let tau = rng.random_range(-2.0..2.0);
        rec.at_most("fd_crosscheck", fd_crosscheck(&spec, tau, 3), FD_TOL);
    }
    for _ in 0..100 {
        let tau = rng.random_range(-2.0..2.0);
        let b: Jet<f64> = random::analytic_spec(rng).jet(tau, 5);
        let lift = rng.random_range(0.5..2.0);
        let radicand = &(&b * &b) + &Jet::constant(lift, 5);
        match radicand.sqrt() {
            Ok(root) => {
                let back = &root * &root;
                let scale = radicand.derivs().iter().fold(0.0f64, |m, a| m.max(a.abs()));
                let err = back
                    .derivs()
                    .iter()
                    .zip(radicand.derivs())
                    .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
                rec.at_most("sqrt_squared", err / scale, SQRT_TOL);
            }
            Err(e) => rec.failure("sqrt_squared", &e),
        }
    }
}

/// Extras with slopes `(3c, 4c)`, so that Δ = 5|c| is rational.
fn pythagorean_extras(rng: &mut SuiteRng) -> Vec<RatPoly> {
    let c = random::small_rational(rng, 4, 3);
    vec![
        RatPoly::new(vec![random::small_rational(rng, 5, 2), &c * int(3)]),
        RatPoly::new(vec![random::small_rational(rng, 5, 2), &c * int(4)]),
    ]
}

fn oracle(rec: &mut Recorder, rng: &mut SuiteRng) {
    for _ in 0..50 {
        let f = random::rat_poly(rng, 10);
        let zero = poly_expand_map(&OracleMap::R21 { f })
            .and_then(|x| poly_null_residual(&x, Signature::r2n(1)))
            .map(|r| r.is_zero());
        record_exact(rec, "r21_residual_zero", zero);
    }
    for _ in 0..50 {
        let (f, g) = (random::rat_poly(rng, 10), random::rat_poly(rng, 10));
        let zero = poly_expand_map(&OracleMap::R22 {
            f: f.clone(),
            g: g.clone(),
        })
        .and_then(|x| poly_null_residual(&x, Signature::r2n(2)))
        .map(|r| r.is_zero());
        record_exact(rec, "r22_residual_zero", zero);
        let big_f = &f.derivative() - &f;
        let big_g = &g.derivative() - &g;
        let wronskian = &(&big_f.derivative() * &big_g) - &(&big_f * &big_g.derivative());
        let literal = literal_r22_residual(&f, &g);
        rec.exact("r22_literal_residual", literal == wronskian.scale(&int(4)));
    }
    rec.exact("typo_witness_nonzero", !typo_witness().is_zero());
    for _ in 0..50 {
        let f = cubic_or_higher(rng);
        let delta = random::small_rational(rng, 9, 4);
        let expect = f.scale(&int(2));
        for map in [
            OracleMap::R21 { f: f.clone() },
            OracleMap::DeltaConst { f: f.clone(), delta },
        ] {
            let got = poly_invert_roundtrip(&map).map(|inv| inv.tau == RatPoly::identity() && inv.f == expect);
            record_exact(rec, "invert_gives_2f", got);
        }
        let (f, g) = (random::rat_poly(rng, 8), random::rat_poly(rng, 8));
        let got = poly_invert_roundtrip(&OracleMap::R22 {
            f: f.clone(),
            g: g.clone(),
        });
        match got {
            Ok(inv) => rec.exact("invert_r22", inv.f == f && inv.g == Some(g)),
            Err(Error::IdenticallyDegenerate) => {}
            Err(e) => rec.failure("invert_r22", &e),
        }
    }
    agreement(rec, rng);
}

fn cubic_or_higher(rng: &mut SuiteRng) -> RatPoly {
    loop {
        let f = random::rat_poly(rng, 10);
        if f.degree().is_some_and(|d| d >= 3) {
            return f;
        }
    }
}

fn record_exact(rec: &mut Recorder, check: &str, outcome: Result<bool>) {
    match outcome {
        Ok(ok) => rec.exact(check, ok),
        Err(e) => rec.failure(check, &e),
    }
}

/// Oracle polynomials against the floating-point maps at rational points.
fn agreement(rec: &mut Recorder, rng: &mut SuiteRng) {
    let s = Settings::default();
    for case in 0..30 {
        let f = random::rat_poly(rng, 10);
        let (map, input): (OracleMap, FlatInput) = match case % 3 {
            0 => (
                OracleMap::R21 { f: f.clone() },
                FlatInputR21::new(CurveSpec::from_poly(&f)).into(),
            ),
            1 => {
                let g = random::rat_poly(rng, 10);
                (
                    OracleMap::R22 {
                        f: f.clone(),
                        g: g.clone(),
                    },
                    FlatInputR22::new(CurveSpec::from_poly(&f), CurveSpec::from_poly(&g)).into(),
                )
            }
            _ => {
                let extras = pythagorean_extras(rng);
                let specs = extras.iter().map(CurveSpec::from_poly).collect();
                (
                    OracleMap::R2nLinearExtras { f: f.clone(), extras },
                    FlatInputR21::new(CurveSpec::from_poly(&f)).with_extras(specs).into(),
                )
            }
        };
        let exact = match poly_expand_map(&map) {
            Ok(x) => x,
            Err(e) => {
                rec.failure("oracle_numeric_agreement", &e);
                continue;
            }
        };
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let t = random::small_rational(rng, 16, 16);
            let tf = rational_to_f64(&t);
            let numeric = match &input {
                FlatInput::R21(i) => r2n_map(i, tf, s.jet_order, &s),
                FlatInput::R22(i) => r22_map(i, tf, s.jet_order, &s),
            };
            let numeric = match numeric {
                Ok(germ) => germ.point().into_components(),
                Err(e) => {
                    rec.failure("oracle_numeric_agreement", &e);
                    continue;
                }
            };
            worst = worst.max(relative_gap(&numeric, &exact, &t));
        }
        rec.at_most("oracle_numeric_agreement", worst, AGREEMENT_TOL);
    }
}

/// Largest `|num_i - exact_i| / max(1, |exact_i|)`.
pub fn relative_gap(numeric: &[f64], exact: &[RatPoly], t: &BigRational) -> f64 {
    numeric
        .iter()
        .zip(exact)
        .map(|(&x, p)| {
            let want = rational_to_f64(&p.eval(t));
            (x - want).abs() / want.abs().max(1.0)
        })
        .fold(0.0, f64::max)
}

fn family(case: usize, rng: &mut SuiteRng) -> FlatInput {
    match case % 4 {
        0 => random::flat_input(rng, 1, false),
        3 => random::flat_input(rng, 2, true),
        _ => {
            let n = rng.random_range(2..=4);
            random::flat_input(rng, n, false)
        }
    }
}

fn null(rec: &mut Recorder, rng: &mut SuiteRng) {
    for _ in 0..100 {
        let tau: f64 = rng.random_range(-5.0..5.0);
        let u = basis_u_r21(tau, 2);
        let scale = (1.0 + tau * tau).powi(2);
        let uu = inner(&u.point(), &u.point()).unwrap_or(f64::NAN);
        let dudu = inner(&u.velocity(), &u.velocity()).unwrap_or(f64::NAN);
        rec.at_most("basis_u_null", uu.abs() / scale, BASIS_TOL);
        rec.at_most("basis_u_velocity", (dudu + 4.0).abs() / scale, BASIS_TOL);
        let (u, v) = basis_uv_r22(tau, 1);
        let pairs = [
            inner(&u.point(), &u.point()),
            inner(&v.point(), &v.point()),
            inner(&u.point(), &v.point()),
        ];
        let worst = pairs
            .iter()
            .map(|p| p.clone().unwrap_or(f64::NAN).abs())
            .fold(0.0, f64::max);
        rec.at_most("basis_uv_orthogonal", worst / (1.0 + tau * tau), BASIS_TOL);
    }

    let s = Settings::default();
    let grid = Grid::new(-1.0, 1.0, 1000).expect("valid grid");
    for case in 0..100 {
        if case % 4 == 1 {
            let f = random::analytic_spec(rng);
            let delta = random::analytic_spec(rng);
            let worst = grid.points().into_iter().try_fold(0.0f64, |m, tau: f64| {
                let germ = delta_map(&f.jet(tau, s.jet_order), &delta.jet(tau, s.jet_order - 2), tau)?;
                let res = null_residual(&germ)?.value();
                let d: f64 = delta.eval(tau);
                let v = germ.velocity();
                let scale = v.euclidean_norm_sq().max(1.0);
                Ok::<_, Error>(m.max((res + d * d).abs() / scale))
            });
            record_bound(rec, "delta_residual", worst, NULL_TOL);
            continue;
        }
        let input = family(case, rng);
        let worst = generate(&input, &grid, &s).map(|c| c.max_scaled_residual());
        record_bound(rec, &format!("null_residual_{}", input.space()), worst, NULL_TOL);
    }
}

fn record_bound(rec: &mut Recorder, check: &str, value: Result<f64>, bound: f64) {
    match value {
        Ok(v) => rec.at_most(check, v, bound),
        Err(e) => rec.failure(check, &e),
    }
}

fn roundtrips(rec: &mut Recorder, rng: &mut SuiteRng) {
    let s = Settings::default();
    let grid = Grid::new(-1.0, 1.0, 200).expect("valid grid");
    for case in 0..100 {
        let mut input = family(case, rng);
        if case % 2 == 1 {
            input = input.with_sigma(Some(random::sigma_spec(rng)));
        }
        let check = format!("roundtrip_{}", input.space());
        match roundtrip(&input, &grid, &s) {
            Ok(r) => {
                let worst = r.max_tau_error.max(r.max_f_error).max(r.max_g_error.unwrap_or(0.0));
                let note = (r.degenerate > 0).then(|| format!("{} degenerate samples skipped", r.degenerate));
                rec.push(
                    &check,
                    worst <= ROUNDTRIP_TOL && r.degenerate < r.samples,
                    worst,
                    ROUNDTRIP_TOL,
                    note,
                );
            }
            Err(e) => rec.failure(&check, &e),
        }
    }
}

fn rank(rec: &mut Recorder, rng: &mut SuiteRng) {
    for _ in 0..100 {
        let tau: f64 = rng.random_range(-10.0..10.0);
        rec.at_most("jacobian_det_r21", (jacobian_det_r21(tau) - 8.0).abs(), DET_TOL);
    }
    let mut spaces = vec![(RankSpace::R22, 1)];
    spaces.extend((1..=4).map(|n| (RankSpace::R2n(n), 2)));
    for (space, depth) in spaces {
        for _ in 0..10 {
            let report = rank_check(space, rng.random_range(-2.0..2.0), depth, rng.random());
            let check = format!("rank_{}_depth{depth}", space.label());
            let ok = report.rank == space.dim();
            rec.push(&check, ok, report.rank as f64, space.dim() as f64, None);
        }
    }
    for _ in 0..10 {
        let report = rank_check(RankSpace::R21, rng.random_range(-2.0..2.0), 1, rng.random());
        rec.push(
            "rank_r21_depth1_deficient",
            report.rank < 3,
            report.rank as f64,
            2.0,
            None,
        );
    }
}

fn gauge(rec: &mut Recorder, rng: &mut SuiteRng) {
    let s = Settings::default();
    let grid = Grid::new(-1.0, 1.0, 200).expect("valid grid");
    for case in 0..25 {
        let input = family(case, rng);
        let sigma = random::sigma_spec(rng);
        match gauge_orbit_check(&input, &sigma, &grid, &s) {
            Ok(r) => {
                rec.at_most("gauge_residual", r.roundtrip.max_scaled_residual, NULL_TOL);
                rec.push(
                    "gauge_inversion",
                    r.inversion_ok,
                    r.roundtrip.max_tau_error.max(r.roundtrip.max_f_error),
                    ROUNDTRIP_TOL,
                    None,
                );
            }
            Err(e) => rec.failure("gauge", &e),
        }
    }
}

fn planner(rec: &mut Recorder, rng: &mut SuiteRng) {
    let worked = [
        ([-2.0, 0.0, 2.0], [10.0, -15.0, 6.0]),
        ([0.0, 2.0, 2.0], [0.5, -1.0, 0.5]),
    ];
    for (to, want) in worked {
        let zero = random::point(rng, 1, 0.0);
        let outcome = BoundaryProblem::new(
            Space::R21,
            zero.clone(),
            crate::geom::PseudoVec::new(to.to_vec(), Signature::r2n(1)).expect("three components"),
            (0.0, 1.0),
        )
        .and_then(|p| plan_r21(&p))
        .map(|r| {
            let c = r.f.as_polynomial().unwrap_or_else(RatPoly::zero);
            (3..6)
                .map(|i| (rational_to_f64(&c.coeff(i)) - want[i - 3]).abs())
                .chain((0..3).map(|i| rational_to_f64(&c.coeff(i)).abs()))
                .fold(0.0, f64::max)
        });
        record_bound(rec, "planner_worked_example", outcome, 1e-12);
    }
    for case in 0..200 {
        let n = if case % 2 == 0 { 1 } else { 2 };
        let (a, b) = (random::point(rng, n, 10.0), random::point(rng, n, 10.0));
        let space = if n == 1 { Space::R21 } else { Space::R22 };
        let t0 = rng.random_range(-3.0..3.0);
        let t1 = t0 + rng.random_range(0.5..4.0);
        let plan = BoundaryProblem::new(space, a, b, (t0, t1)).and_then(|p| match space {
            Space::R22 => plan_r22(&p),
            _ => plan_r21(&p),
        });
        match plan {
            Ok(r) => {
                rec.at_most(&format!("planner_endpoint_{space}"), r.endpoint_error, ENDPOINT_TOL);
                rec.at_most(
                    &format!("planner_residual_{space}"),
                    r.curve.max_scaled_residual(),
                    NULL_TOL,
                );
            }
            Err(e) => rec.failure("planner", &e),
        }
    }
}
