//! Exact rational-polynomial expansions of the parametrizations.
//!
//! Flat outputs are polynomials with rational coefficients, so every curve
//! component is an exact [`RatPoly`] and the null constraint can be checked
//! as a polynomial identity with no tolerance. The length function Δ is kept
//! polynomial: a rational constant, or the root of a sum of squares of affine
//! extra coordinates when that sum is a perfect square.
//!
//! This module is written against the formulas directly and shares no code
//! with the floating-point maps in [`crate::flat`], which it is used to check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::Signature;
use crate::poly::RatPoly;
use crate::scalar::int;

/// Which map to expand, with its polynomial flat outputs.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleMap {
    /// `x = u f'' - u' f' + u'' f` in ℝ^{2,1}.
    R21 { f: RatPoly },
    /// `x = u f'' - u' f' + u'' f + ½ u Δ` with constant Δ.
    DeltaConst { f: RatPoly, delta: BigRational },
    /// ℝ^{2,n} with affine extra coordinates `x₄ … x_{n+2}`.
    R2nLinearExtras { f: RatPoly, extras: Vec<RatPoly> },
    /// `x = u f' - u' f + v g' - v' g` in ℝ^{2,2}.
    R22 { f: RatPoly, g: RatPoly },
    /// `x = u f' + v g' - u f - v g`, the form without the primes on the
    /// subtracted basis vectors. Not null in general.
    R22Literal { f: RatPoly, g: RatPoly },
}

impl OracleMap {
    pub fn signature(&self) -> Signature {
        match self {
            OracleMap::R21 { .. } | OracleMap::DeltaConst { .. } => Signature::r2n(1),
            OracleMap::R2nLinearExtras { extras, .. } => Signature::r2n(extras.len() + 1),
            OracleMap::R22 { .. } | OracleMap::R22Literal { .. } => Signature::r2n(2),
        }
    }
}

fn rp(coeffs: &[i64]) -> RatPoly {
    RatPoly::new(coeffs.iter().map(|&c| int(c)).collect())
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// `u(τ) = (1 - τ², 2τ, 1 + τ²)`.
fn u_r21() -> [RatPoly; 3] {
    [rp(&[1, 0, -1]), rp(&[0, 2]), rp(&[1, 0, 1])]
}

/// `u(τ) = (1, τ, 1, -τ)`, `v(τ) = (-τ, 1, τ, 1)`.
fn uv_r22() -> ([RatPoly; 4], [RatPoly; 4]) {
    (
        [rp(&[1]), rp(&[0, 1]), rp(&[1]), rp(&[0, -1])],
        [rp(&[0, -1]), rp(&[1]), rp(&[0, 1]), rp(&[1])],
    )
}

fn derivs<const N: usize>(v: &[RatPoly; N]) -> [RatPoly; N] {
    std::array::from_fn(|i| v[i].derivative())
}

fn r21_components(f: &RatPoly) -> Vec<RatPoly> {
    let u = u_r21();
    let du = derivs(&u);
    let ddu = derivs(&du);
    let (f1, f2) = (f.derivative(), f.nth_derivative(2));
    (0..3)
        .map(|i| &(&(&u[i] * &f2) - &(&du[i] * &f1)) + &(&ddu[i] * f))
        .collect()
}

fn with_constant_delta(f: &RatPoly, delta: &BigRational) -> Vec<RatPoly> {
    let u = u_r21();
    let shift = delta * half();
    r21_components(f)
        .iter()
        .zip(&u)
        .map(|(x, ui)| x + &ui.scale(&shift))
        .collect()
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// Δ for affine extras: `√(Σ bₖ²)` where `bₖ` is the slope of extra `k`.
pub fn delta_of_affine_extras(extras: &[RatPoly]) -> Result<BigRational> {
    let mut sum = BigRational::zero();
    for (k, e) in extras.iter().enumerate() {
        if e.degree().is_some_and(|d| d > 1) {
            return Err(Error::NonPolynomialDelta(format!(
                "extra coordinate {k} has degree {}, only affine extras keep Δ polynomial",
                e.degree().unwrap_or(0)
            )));
        }
        let slope = e.coeff(1);
        sum += &slope * &slope;
    }
    rational_sqrt(&sum)
        .ok_or_else(|| Error::NonPolynomialDelta(format!("sum of squared slopes {sum} is not a rational square")))
}

fn r22_components(f: &RatPoly, g: &RatPoly, literal: bool) -> Vec<RatPoly> {
    let (u, v) = uv_r22();
    let (du, dv) = (derivs(&u), derivs(&v));
    let (f1, g1) = (f.derivative(), g.derivative());
    (0..4)
        .map(|i| {
            let (bu, bv) = if literal { (&u[i], &v[i]) } else { (&du[i], &dv[i]) };
            let plus = &(&u[i] * &f1) + &(&v[i] * &g1);
            let minus = &(bu * f) + &(bv * g);
            &plus - &minus
        })
        .collect()
}

/// Exact component polynomials of the chosen map.
pub fn poly_expand_map(map: &OracleMap) -> Result<Vec<RatPoly>> {
    Ok(match map {
        OracleMap::R21 { f } => r21_components(f),
        OracleMap::DeltaConst { f, delta } => with_constant_delta(f, delta),
        OracleMap::R2nLinearExtras { f, extras } => {
            let delta = delta_of_affine_extras(extras)?;
            let mut x = with_constant_delta(f, &delta);
            x.extend(extras.iter().cloned());
            x
        }
        OracleMap::R22 { f, g } => r22_components(f, g, false),
        OracleMap::R22Literal { f, g } => r22_components(f, g, true),
    })
}

/// The exact polynomial `Σ εᵢ (xᵢ')²`.
pub fn poly_null_residual(components: &[RatPoly], signature: Signature) -> Result<RatPoly> {
    if components.len() != signature.dim() {
        return Err(Error::DimensionMismatch {
            expected: signature.dim(),
            got: components.len(),
        });
    }
    Ok(components.iter().enumerate().fold(RatPoly::zero(), |acc, (i, x)| {
        let dx = x.derivative();
        let sq = &dx * &dx;
        if i < signature.p {
            &acc - &sq
        } else {
            &acc + &sq
        }
    }))
}

/// Null residual of the unprimed ℝ^{2,2} form for `f = τ²`, `g = τ³`.
///
/// It equals `4(F'G - FG')` with `F = f' - f`, `G = g' - g`, which is
/// `-4τ⁴ + 16τ³ - 24τ²` here: nonzero, so that form is not a null curve.
pub fn typo_witness() -> RatPoly {
    let f = rp(&[0, 0, 1]);
    let g = rp(&[0, 0, 0, 1]);
    literal_r22_residual(&f, &g)
}

/// Null residual of the unprimed ℝ^{2,2} form for arbitrary `f, g`.
pub fn literal_r22_residual(f: &RatPoly, g: &RatPoly) -> RatPoly {
    let x = r22_components(f, g, true);
    poly_null_residual(&x, Signature::r2n(2)).expect("four components")
}

/// Rational function `num / den` with exact arithmetic and no normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct RatFunc {
    pub num: RatPoly,
    pub den: RatPoly,
}

impl RatFunc {
    pub fn new(num: RatPoly, den: RatPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::IdenticallyDegenerate);
        }
        Ok(RatFunc { num, den })
    }

    pub fn poly(p: RatPoly) -> Self {
        RatFunc {
            num: p,
            den: RatPoly::constant(BigRational::one()),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        RatFunc {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Whether `self` and `other` are the same rational function.
    pub fn same_as(&self, other: &RatFunc) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    /// Exact polynomial value, when the denominator divides the numerator.
    pub fn into_poly(self) -> Result<RatPoly> {
        self.num.exact_div(&self.den).ok_or(Error::NotPolynomial)
    }
}

/// Flat outputs recovered symbolically from an expanded curve.
#[derive(Debug, Clone, PartialEq)]
pub struct InvertedPolys {
    /// Recovered parameter; the identity polynomial for a correct inversion.
    pub tau: RatPoly,
    /// Value of the printed f-formula. For the ℝ^{2,1} family this is `2f`.
    pub f: RatPoly,
    pub g: Option<RatPoly>,
}

/// Applies the closed-form inversion formulas to the exact expansion of
/// `map` and simplifies the resulting rational functions.
///
/// For the ℝ^{2,1} family the f-formula is reported as printed (no halving).
pub fn poly_invert_roundtrip(map: &OracleMap) -> Result<InvertedPolys> {
    let x = poly_expand_map(map)?;
    let dx: Vec<RatPoly> = x.iter().map(RatPoly::derivative).collect();
    match map {
        OracleMap::R21 { .. } | OracleMap::DeltaConst { .. } | OracleMap::R2nLinearExtras { .. } => {
            let delta = match map {
                OracleMap::DeltaConst { delta, .. } => delta.clone(),
                OracleMap::R2nLinearExtras { extras, .. } => delta_of_affine_extras(extras)?,
                _ => BigRational::zero(),
            };
            let tau = RatFunc::new(&dx[1] - &RatPoly::constant(delta), &dx[0] + &dx[2])?;
            let h = half();
            let f = tau
                .mul(&tau)
                .mul(&RatFunc::poly(&x[2] + &x[0]))
                .scale(&h)
                .sub(&tau.mul(&RatFunc::poly(x[1].clone())))
                .add(&RatFunc::poly((&x[2] - &x[0]).scale(&h)));
            Ok(InvertedPolys {
                tau: tau.into_poly()?,
                f: f.into_poly()?,
                g: None,
            })
        }
        OracleMap::R22 { .. } | OracleMap::R22Literal { .. } => {
            let tau_a = RatFunc::new(&dx[1] - &dx[3], &dx[2] + &dx[0]);
            let tau_b = RatFunc::new(&dx[2] - &dx[0], &dx[1] + &dx[3]);
            let (tau_f, tau_g) = match (tau_a, tau_b) {
                (Ok(a), Ok(b)) => (a, b),
                (Ok(a), Err(_)) => (a.clone(), a),
                (Err(_), Ok(b)) => (b.clone(), b),
                (Err(e), Err(_)) => return Err(e),
            };
            let h = half();
            let f = tau_f
                .mul(&RatFunc::poly(&x[2] + &x[0]))
                .sub(&RatFunc::poly(&x[1] - &x[3]))
                .scale(&h);
            let g = tau_g
                .mul(&RatFunc::poly(&x[1] + &x[3]))
                .sub(&RatFunc::poly(&x[2] - &x[0]))
                .scale(&h);
            Ok(InvertedPolys {
                tau: tau_f.into_poly()?,
                f: f.into_poly()?,
                g: Some(g.into_poly()?),
            })
        }
    }
}

/// `(x₂' - x₄')(x₂' + x₄') - (x₃' - x₁')(x₃' + x₁')`: zero exactly when the
/// two ℝ^{2,2} parameter formulas agree.
pub fn r22_tau_consistency(f: &RatPoly, g: &RatPoly) -> RatPoly {
    let x = r22_components(f, g, false);
    let dx: Vec<RatPoly> = x.iter().map(RatPoly::derivative).collect();
    let a = &(&dx[1] - &dx[3]) * &(&dx[1] + &dx[3]);
    let b = &(&dx[2] - &dx[0]) * &(&dx[2] + &dx[0]);
    &a - &b
}

/// Evaluates component polynomials at an exact rational point.
pub fn eval_components(components: &[RatPoly], t: &BigRational) -> Vec<BigRational> {
    components.iter().map(|p| p.eval(t)).collect()
}

/// Convenience constructor for polynomials with integer coefficients.
pub fn int_poly(coeffs: &[i64]) -> RatPoly {
    rp(coeffs)
}

/// Rational `p/q`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
