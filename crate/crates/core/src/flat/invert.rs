use crate::error::{Error, Result};
use crate::geom::VecJet;
use crate::scalar::Real;

use super::input::Space;

/// Flat outputs recovered from one point of a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct InversionResult<T> {
    /// Internal parameter `s = σ(τ)`.
    pub tau_hat: T,
    pub f_hat: T,
    pub g_hat: Option<T>,
    /// Inversion divisors, in formula order.
    pub denominators: Vec<T>,
}

/// Sign attached to Δ when it is recomputed from the extra coordinates.
///
/// The length function is the nonnegative root for curves traversed in the
/// direction of their internal parameter. A curve reparametrized by a
/// decreasing σ carries `-|Δ|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Forward,
    Reverse,
}

impl Orientation {
    pub fn of_slope<T: Real>(slope: T) -> Self {
        if slope < T::zero() {
            Orientation::Reverse
        } else {
            Orientation::Forward
        }
    }

    fn sign<T: Real>(self) -> T {
        match self {
            Orientation::Forward => T::one(),
            Orientation::Reverse => -T::one(),
        }
    }
}

fn check_germ<T: Real>(germ: &VecJet<T>, min_dim: usize) -> Result<()> {
    let sig = germ.signature();
    if sig.p != 2 || germ.dim() < min_dim {
        return Err(Error::InvalidInput(format!(
            "expected a germ in R^{{2,n}} with at least {min_dim} components, got signature ({},{})",
            sig.p, sig.q
        )));
    }
    if germ.order() < 1 {
        return Err(Error::InsufficientOrder {
            needed: 1,
            got: germ.order(),
        });
    }
    Ok(())
}

fn check_denominator<T: Real>(den: T, eps_den: f64) -> Result<()> {
    if den.abs() >= T::lit(eps_den) {
        Ok(())
    } else {
        Err(Error::DegenerateGerm {
            denominator: den.abs().as_f64(),
            threshold: eps_den,
        })
    }
}

/// `√(x₄'² + … + x'²_{n+2})` from the velocity of a germ.
pub fn delta_from_extras<T: Real>(germ: &VecJet<T>) -> T {
    germ.velocity().components()[3..]
        .iter()
        .map(|&c| c * c)
        .sum::<T>()
        .sqrt()
}

/// Recovers `(τ, f)` from a germ in ℝ^{2,1} (or the ℝ^{2,1} block of a germ
/// in ℝ^{2,n}) given the value of Δ at the point.
///
/// Uses `τ = (x₂' - Δ)/(x₁' + x₃')` and
/// `2f = ½τ²(x₃ + x₁) - τ x₂ + ½(x₃ - x₁)`.
pub fn invert_r21<T: Real>(germ: &VecJet<T>, delta: T, eps_den: f64) -> Result<InversionResult<T>> {
    check_germ(germ, 3)?;
    let x = germ.point();
    let dx = germ.velocity();
    let (x, dx) = (x.components(), dx.components());
    let den = dx[0] + dx[2];
    check_denominator(den, eps_den)?;
    let tau = (dx[1] - delta) / den;
    let half = T::lit(0.5);
    let twice_f = half * tau * tau * (x[2] + x[0]) - tau * x[1] + half * (x[2] - x[0]);
    Ok(InversionResult {
        tau_hat: tau,
        f_hat: twice_f * half,
        g_hat: None,
        denominators: vec![den],
    })
}

/// [`invert_r21`] with Δ recomputed from components `x₄ … x_{n+2}`.
pub fn invert_r2n<T: Real>(germ: &VecJet<T>, orientation: Orientation, eps_den: f64) -> Result<InversionResult<T>> {
    check_germ(germ, 3)?;
    invert_r21(germ, orientation.sign::<T>() * delta_from_extras(germ), eps_den)
}

/// Recovers `(τ, f, g)` from a germ in ℝ^{2,2}.
///
/// τ is taken from whichever of `(x₂' - x₄')/(x₃' + x₁')` and
/// `(x₃' - x₁')/(x₂' + x₄')` has the larger divisor.
pub fn invert_r22<T: Real>(germ: &VecJet<T>, eps_den: f64) -> Result<InversionResult<T>> {
    check_germ(germ, 4)?;
    if germ.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: germ.dim(),
        });
    }
    let x = germ.point();
    let dx = germ.velocity();
    let (x, dx) = (x.components(), dx.components());
    let den_a = dx[2] + dx[0];
    let den_b = dx[1] + dx[3];
    let tau = if den_a.abs() >= den_b.abs() {
        check_denominator(den_a, eps_den)?;
        (dx[1] - dx[3]) / den_a
    } else {
        check_denominator(den_b, eps_den)?;
        (dx[2] - dx[0]) / den_b
    };
    let half = T::lit(0.5);
    Ok(InversionResult {
        tau_hat: tau,
        f_hat: half * tau * (x[2] + x[0]) - half * (x[1] - x[3]),
        g_hat: Some(half * tau * (x[1] + x[3]) - half * (x[2] - x[0])),
        denominators: vec![den_a, den_b],
    })
}

/// Dispatches on the space label.
pub fn invert_germ<T: Real>(
    space: Space,
    germ: &VecJet<T>,
    orientation: Orientation,
    eps_den: f64,
) -> Result<InversionResult<T>> {
    match space {
        Space::R21 => invert_r21(germ, T::zero(), eps_den),
        Space::R2n => invert_r2n(germ, orientation, eps_den),
        Space::R22 => invert_r22(germ, eps_den),
    }
}
