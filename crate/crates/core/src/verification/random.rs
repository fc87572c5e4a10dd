//! Seeded generators for property suites.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve_spec::{CurveSpec, Term};
use crate::flat::{FlatInput, FlatInputR21, FlatInputR22};
use crate::geom::{PseudoVec, Signature};
use crate::poly::RatPoly;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ num_bound`, `1 ≤ q ≤ den_bound`.
pub fn small_rational(rng: &mut SuiteRng, num_bound: i64, den_bound: i64) -> BigRational {
    let p = rng.random_range(-num_bound..=num_bound);
    let q = rng.random_range(1..=den_bound);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Polynomial of degree at most `max_degree`, coefficients `p/q` with
/// `|p| ≤ 50`, `q ≤ 17`.
pub fn rat_poly(rng: &mut SuiteRng, max_degree: usize) -> RatPoly {
    let degree = rng.random_range(0..=max_degree);
    RatPoly::new((0..=degree).map(|_| small_rational(rng, 50, 17)).collect())
}

/// Affine polynomial `a + bτ`.
pub fn affine_poly(rng: &mut SuiteRng) -> RatPoly {
    RatPoly::new(vec![small_rational(rng, 9, 4), small_rational(rng, 9, 4)])
}

/// Analytic flat output: a polynomial of degree ≤ 5 plus up to two
/// trigonometric or exponential terms, all with moderate coefficients.
pub fn analytic_spec(rng: &mut SuiteRng) -> CurveSpec {
    let degree = rng.random_range(3..=5);
    let mut terms = vec![Term::Polynomial(
        (0..=degree).map(|_| small_rational(rng, 12, 4)).collect(),
    )];
    for _ in 0..rng.random_range(0..=2) {
        let amplitude = small_rational(rng, 8, 4);
        let rate = small_rational(rng, 8, 4);
        terms.push(match rng.random_range(0..3) {
            0 => Term::Sin {
                amplitude,
                frequency: rate,
            },
            1 => Term::Cos {
                amplitude,
                frequency: rate,
            },
            _ => Term::Exp { amplitude, rate },
        });
    }
    CurveSpec::new(terms).expect("nonempty")
}

/// Extra coordinate with a derivative that never vanishes: `a + bτ + c sin(wτ)`
/// with `|c w| < |b|/2`.
pub fn extra_spec(rng: &mut SuiteRng) -> CurveSpec {
    let slope = nonzero_rational(rng, 1, 3);
    let w = small_rational(rng, 6, 2);
    let bound = slope.abs() / BigRational::from_integer(3.into());
    let c = if w == BigRational::zero() {
        BigRational::zero()
    } else {
        bound / w.abs() * small_rational(rng, 4, 4).abs() / BigRational::from_integer(4.into())
    };
    CurveSpec::new(vec![
        Term::Polynomial(vec![small_rational(rng, 9, 4), slope]),
        Term::Sin {
            amplitude: c,
            frequency: w,
        },
    ])
    .expect("nonempty")
}

fn nonzero_rational(rng: &mut SuiteRng, lo: i64, hi: i64) -> BigRational {
    let p = rng.random_range(lo..=hi * 4);
    let sign = if rng.random_bool(0.5) { 1 } else { -1 };
    BigRational::new(BigInt::from(sign * p), BigInt::from(4))
}

/// Strictly monotone reparametrization `a + bτ + cτ³ + ε sin(wτ)` with
/// `c` of the sign of `b` and `|ε w| < |b|/2`. Decreasing with probability ½.
pub fn sigma_spec(rng: &mut SuiteRng) -> CurveSpec {
    let b = nonzero_rational(rng, 2, 2);
    let mut c = small_rational(rng, 2, 4).abs();
    if b.is_negative() {
        c = -c;
    }
    let w = nonzero_rational(rng, 1, 2).abs();
    let eps = b.abs() / (BigRational::from_integer(4.into()) * &w);
    CurveSpec::new(vec![
        Term::Polynomial(vec![small_rational(rng, 4, 4), b, BigRational::zero(), c]),
        Term::Sin {
            amplitude: eps,
            frequency: w,
        },
    ])
    .expect("nonempty")
}

/// Random input for ℝ^{2,n}: ℝ^{2,1} when `n = 1`, the corrected ℝ^{2,2}
/// map when `r22` is set, otherwise the square-root map with `n - 1` extras.
pub fn flat_input(rng: &mut SuiteRng, n: usize, r22: bool) -> FlatInput {
    if r22 {
        FlatInputR22::new(analytic_spec(rng), analytic_spec(rng)).into()
    } else {
        let extras = (1..n).map(|_| extra_spec(rng)).collect();
        FlatInputR21::new(analytic_spec(rng)).with_extras(extras).into()
    }
}

/// Point of ℝ^{2,n} with components uniform in `[-bound, bound]`.
pub fn point(rng: &mut SuiteRng, n: usize, bound: f64) -> PseudoVec<f64> {
    let sig = Signature::r2n(n);
    PseudoVec::new((0..sig.dim()).map(|_| rng.random_range(-bound..=bound)).collect(), sig).expect("dimension matches")
}
