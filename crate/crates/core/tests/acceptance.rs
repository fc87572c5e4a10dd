//! Acceptance criteria, one line of output each. Runs without the libtest
//! harness so the summary is always printed; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use nullflat::oracle::{poly_expand_map, poly_invert_roundtrip, poly_null_residual, ratio, typo_witness, OracleMap};
use nullflat::planner::{plan_r21, plan_r22, BoundaryProblem};
use nullflat::scalar::rational_to_f64;
use nullflat::verification::random::{self, SuiteRng};
use nullflat::verification::{fd_crosscheck, jacobian_det_r21, rank_check, RankSpace};
use nullflat::{
    basis_u_r21, basis_uv_r22, delta_map, generate, inner, invert_r21, null_residual, roundtrip, CurveSpec, FlatInput,
    Grid, Jet, PseudoVec, RatPoly, Settings, Signature, Space,
};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&mut SuiteRng) -> Outcome);

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn reference_curves(rng: &mut SuiteRng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let tau: f64 = rng.random_range(-5.0..5.0);
        let u = basis_u_r21(tau, 1);
        let scale = (1.0 + tau * tau).powi(2);
        let uu = inner(&u.point(), &u.point()).map_err(|e| e.to_string())?;
        let dd = inner(&u.velocity(), &u.velocity()).map_err(|e| e.to_string())?;
        worst = worst.max(uu.abs() / scale).max((dd + 4.0).abs() / scale);

        let (u, v) = basis_uv_r22(tau, 0);
        let (u, v) = (u.point(), v.point());
        for (a, b) in [(&u, &u), (&v, &v), (&u, &v)] {
            let p = inner(a, b).map_err(|e| e.to_string())?;
            worst = worst.max(p.abs() / (1.0 + tau * tau));
        }
    }
    ensure(worst <= 1e-14, || {
        format!("largest relative deviation {worst:.3e} > 1e-14")
    })?;
    Ok(format!("100 points, largest relative deviation {worst:.1e}"))
}

fn symbolic_null(rng: &mut SuiteRng) -> Outcome {
    for i in 0..50 {
        let f = random::rat_poly(rng, 10);
        let x = poly_expand_map(&OracleMap::R21 { f }).map_err(|e| e.to_string())?;
        let r = poly_null_residual(&x, Signature::r2n(1)).map_err(|e| e.to_string())?;
        ensure(r.is_zero(), || format!("r21 case {i}: residual {r}"))?;
    }
    for i in 0..50 {
        let (f, g) = (random::rat_poly(rng, 10), random::rat_poly(rng, 10));
        let x = poly_expand_map(&OracleMap::R22 { f, g }).map_err(|e| e.to_string())?;
        let r = poly_null_residual(&x, Signature::r2n(2)).map_err(|e| e.to_string())?;
        ensure(r.is_zero(), || format!("r22 case {i}: residual {r}"))?;
    }
    let w = typo_witness();
    ensure(!w.is_zero(), || "unprimed form gave a zero residual".into())?;
    Ok(format!("100 exact zero residuals; unprimed form residual {w}"))
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

fn numeric_null(rng: &mut SuiteRng) -> Outcome {
    let s = Settings::default();
    let grid = Grid::new(-1.0, 1.0, 1000).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for case in 0..100 {
        let value = if case % 4 == 1 {
            let f = random::analytic_spec(rng);
            let delta = random::analytic_spec(rng);
            let mut m = 0.0f64;
            for tau in grid.points() {
                let germ = delta_map(&f.jet(tau, s.jet_order), &delta.jet(tau, s.jet_order - 2), tau)
                    .map_err(|e| e.to_string())?;
                let res = null_residual(&germ).map_err(|e| e.to_string())?.value();
                let d: f64 = delta.eval(tau);
                m = m.max((res + d * d).abs() / germ.velocity().euclidean_norm_sq().max(1.0));
            }
            m
        } else {
            let input = family(case, rng);
            generate(&input, &grid, &s)
                .map_err(|e| format!("case {case}: {e}"))?
                .max_scaled_residual()
        };
        ensure(value <= 1e-10, || format!("case {case}: scaled residual {value:.3e}"))?;
        worst = worst.max(value);
    }
    Ok(format!(
        "100 inputs x 1000 samples, largest scaled residual {worst:.1e}"
    ))
}

fn round_trip(rng: &mut SuiteRng) -> Outcome {
    let s = Settings::default();
    let grid = Grid::new(-1.0, 1.0, 200).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    let mut skipped = 0;
    for case in 0..100 {
        let mut input = family(case, rng);
        if case % 2 == 1 {
            input = input.with_sigma(Some(random::sigma_spec(rng)));
        }
        let r = roundtrip(&input, &grid, &s).map_err(|e| format!("case {case}: {e}"))?;
        let err = r.max_tau_error.max(r.max_f_error).max(r.max_g_error.unwrap_or(0.0));
        ensure(err <= 1e-9, || format!("case {case}: relative error {err:.3e}"))?;
        ensure(r.degenerate < r.samples, || {
            format!("case {case}: every sample degenerate")
        })?;
        worst = worst.max(err);
        skipped += r.degenerate;
    }
    for i in 0..50 {
        let f = loop {
            let f = random::rat_poly(rng, 10);
            if f.degree().is_some_and(|d| d >= 3) {
                break f;
            }
        };
        let inv = poly_invert_roundtrip(&OracleMap::R21 { f: f.clone() }).map_err(|e| e.to_string())?;
        ensure(inv.f == f.scale(&ratio(2, 1)) && inv.tau == RatPoly::identity(), || {
            format!("oracle case {i}: recovered {} from f = {f}", inv.f)
        })?;
    }
    let cubic: CurveSpec = "poly:0,0,0,1".parse().map_err(|e: nullflat::Error| e.to_string())?;
    let germ = nullflat::wh_map_r21(&cubic.jet(2.0f64, 5), 2.0).map_err(|e| e.to_string())?;
    let f_hat = invert_r21(&germ, 0.0, s.eps_den).map_err(|e| e.to_string())?.f_hat;
    ensure((f_hat - 8.0).abs() <= 1e-12, || {
        format!("normalized output {f_hat} for f(2) = 8")
    })?;
    Ok(format!(
        "100 curves, largest relative error {worst:.1e}, {skipped} degenerate samples skipped; oracle gives 2f exactly"
    ))
}

fn rank_facts(rng: &mut SuiteRng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let tau: f64 = rng.random_range(-10.0..10.0);
        worst = worst.max((jacobian_det_r21(tau) - 8.0).abs());
    }
    ensure(worst <= 1e-10, || format!("det deviates from 8 by {worst:.3e}"))?;
    for n in 1..=4 {
        for _ in 0..10 {
            let r = rank_check(RankSpace::R2n(n), rng.random_range(-2.0..2.0), 2, rng.random());
            ensure(r.rank == n + 2, || format!("n = {n}: rank {} at tau {}", r.rank, r.tau))?;
        }
    }
    for _ in 0..10 {
        let r = rank_check(RankSpace::R22, rng.random_range(-2.0..2.0), 1, rng.random());
        ensure(r.rank == 4, || format!("r22: rank {} at tau {}", r.rank, r.tau))?;
    }
    Ok(format!(
        "det = 8 within {worst:.1e}; ranks n+2 for n = 1..4 and 4 for r22"
    ))
}

fn planner(rng: &mut SuiteRng) -> Outcome {
    let zero = PseudoVec::zero(Signature::r2n(1));
    let worked = [
        ([-2.0, 0.0, 2.0], [10.0, -15.0, 6.0]),
        ([0.0, 2.0, 2.0], [0.5, -1.0, 0.5]),
    ];
    for (to, want) in worked {
        let b = PseudoVec::new(to.to_vec(), Signature::r2n(1)).map_err(|e| e.to_string())?;
        let r = BoundaryProblem::new(Space::R21, zero.clone(), b, (0.0, 1.0))
            .and_then(|p| plan_r21(&p))
            .map_err(|e| e.to_string())?;
        let c = r.f.as_polynomial().ok_or("fitted f is not a polynomial")?;
        let mut expect = vec![0.0; 3];
        expect.extend(want);
        for (i, w) in expect.iter().enumerate() {
            let got = rational_to_f64(&c.coeff(i));
            ensure((got - w).abs() <= 1e-12, || {
                format!("B = {to:?}: coefficient {i} is {got}, want {w}")
            })?;
        }
    }
    let (mut end_err, mut res) = (0.0f64, 0.0f64);
    for case in 0..200 {
        let n = 1 + case % 2;
        let (a, b) = (random::point(rng, n, 10.0), random::point(rng, n, 10.0));
        let problem = BoundaryProblem::new(if n == 1 { Space::R21 } else { Space::R22 }, a, b, (0.0, 1.0))
            .map_err(|e| e.to_string())?;
        let r = if n == 1 { plan_r21(&problem) } else { plan_r22(&problem) }.map_err(|e| e.to_string())?;
        let scaled = r.curve.max_scaled_residual();
        ensure(r.endpoint_error <= 1e-9, || {
            format!("case {case}: endpoint error {:.3e}", r.endpoint_error)
        })?;
        ensure(scaled <= 1e-10, || format!("case {case}: scaled residual {scaled:.3e}"))?;
        end_err = end_err.max(r.endpoint_error);
        res = res.max(scaled);
    }
    Ok(format!(
        "worked examples exact; 200 plans, endpoint error {end_err:.1e}, scaled residual {res:.1e}"
    ))
}

fn jets(rng: &mut SuiteRng) -> Outcome {
    let grammar = [
        "poly:0,0,0,1",
        "poly:3",
        "sin:1,1",
        "cos:-2,3/2",
        "exp:1/2,-1.5",
        "poly:1,-2,1/3,0.25+sin:2,3+cos:-1/2,5+exp:0.5,1.25",
    ];
    let mut fd = 0.0f64;
    for text in grammar {
        let spec: CurveSpec = text.parse().map_err(|e: nullflat::Error| e.to_string())?;
        for _ in 0..10 {
            fd = fd.max(fd_crosscheck(&spec, rng.random_range(-2.0..2.0), 3));
        }
    }
    for _ in 0..100 {
        fd = fd.max(fd_crosscheck(
            &random::analytic_spec(rng),
            rng.random_range(-2.0..2.0),
            3,
        ));
    }
    ensure(fd <= 1e-6, || format!("finite-difference gap {fd:.3e} > 1e-6"))?;
    let mut sq = 0.0f64;
    for _ in 0..100 {
        let b: Jet<f64> = random::analytic_spec(rng).jet(rng.random_range(-2.0..2.0), 5);
        let a = &(&b * &b) + &Jet::constant(rng.random_range(0.1..2.0), 5);
        let root = a.sqrt().map_err(|e| e.to_string())?;
        let back = &root * &root;
        let scale = a.derivs().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let gap = back
            .derivs()
            .iter()
            .zip(a.derivs())
            .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
        sq = sq.max(gap / scale);
    }
    ensure(sq <= 1e-12, || format!("sqrt squared deviates by {sq:.3e}"))?;
    Ok(format!("finite-difference gap {fd:.1e}; sqrt squared within {sq:.1e}"))
}

fn gauge(rng: &mut SuiteRng) -> Outcome {
    let s = Settings::default();
    let grid = Grid::new(-1.0, 1.0, 200).map_err(|e| e.to_string())?;
    let (mut res, mut tau_err) = (0.0f64, 0.0f64);
    let mut decreasing = 0;
    for case in 0..25 {
        let sigma = random::sigma_spec(rng);
        let input = family(case, rng).with_sigma(Some(sigma.clone()));
        if sigma.jet(0.0f64, 1).deriv(1) < 0.0 {
            decreasing += 1;
        }
        let curve = generate(&input, &grid, &s).map_err(|e| format!("case {case}: {e}"))?;
        let r = roundtrip(&input, &grid, &s).map_err(|e| format!("case {case}: {e}"))?;
        ensure(curve.max_scaled_residual() <= 1e-10, || {
            format!("case {case}: residual")
        })?;
        ensure(r.max_tau_error <= 1e-9, || {
            format!("case {case}: tau error {:.3e}", r.max_tau_error)
        })?;
        res = res.max(curve.max_scaled_residual());
        tau_err = tau_err.max(r.max_tau_error);
    }
    Ok(format!(
        "25 reparametrizations ({decreasing} decreasing), residual {res:.1e}, tau error {tau_err:.1e}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("reference curve constants", reference_curves),
        ("symbolic null identity", symbolic_null),
        ("numeric null identity", numeric_null),
        ("flatness round trip", round_trip),
        ("rank facts", rank_facts),
        ("planner", planner),
        ("jet correctness", jets),
        ("gauge invariance", gauge),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let mut rng = random::rng(0x5eed + i as u64);
        let t = Instant::now();
        match check(&mut rng) {
            Ok(detail) => println!("PASS {} {name}: {detail} [{:.2?}]", i + 1, t.elapsed()),
            Err(reason) => {
                failed += 1;
                println!("FAIL {} {name}: {reason} [{:.2?}]", i + 1, t.elapsed());
            }
        }
    }
    println!("acceptance: {} of 8 passed in {:.2?}", 8 - failed, start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
