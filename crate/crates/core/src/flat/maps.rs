use crate::curve_spec::CurveSpec;
use crate::error::{Error, Result};
use crate::geom::{basis_u_r21, basis_uv_r22, Signature, VecJet};
use crate::jet::Jet;
use crate::scalar::Real;
use crate::settings::Settings;

use super::input::{FlatInput, FlatInputR21, FlatInputR22};

fn require_order<T: Real>(jet: &Jet<T>, needed: usize) -> Result<()> {
    if jet.order() < needed {
        Err(Error::InsufficientOrder {
            needed,
            got: jet.order(),
        })
    } else {
        Ok(())
    }
}

/// Germ of `u`, `u'`, `u''` at `s`, each of order `order`.
fn u_r21_derivatives<T: Real>(s: T, order: usize) -> Result<[VecJet<T>; 3]> {
    let full = basis_u_r21(s, order + 2);
    let d1 = full.derivative()?;
    let d2 = d1.derivative()?;
    Ok([full.truncate(order), d1.truncate(order), d2])
}

/// `x = u f'' - u' f' + u'' f` in ℝ^{2,1}.
///
/// `fjet` is the jet of `f` at `s`; the germ returned has order
/// `fjet.order() - 2` and satisfies `x' = u f'''`.
pub fn wh_map_r21<T: Real>(fjet: &Jet<T>, s: T) -> Result<VecJet<T>> {
    require_order(fjet, 2)?;
    let order = fjet.order() - 2;
    let [u, du, ddu] = u_r21_derivatives(s, order)?;
    let f1 = fjet.derivative()?;
    let f2 = f1.derivative()?;
    u.mul_scalar(&f2)?
        .checked_sub(&du.mul_scalar(&f1.truncate(order))?)?
        .checked_add(&ddu.mul_scalar(&fjet.truncate(order))?)
}

/// `x = u f'' - u' f' + u'' f + ½ u Δ`, the ℝ^{2,1} curve with `(x', x') = -Δ²`.
///
/// `delta_jet` is the jet of Δ at `s` and must reach order `fjet.order() - 2`.
pub fn delta_map<T: Real>(fjet: &Jet<T>, delta_jet: &Jet<T>, s: T) -> Result<VecJet<T>> {
    let base = wh_map_r21(fjet, s)?;
    let order = base.order();
    require_order(delta_jet, order)?;
    let u = basis_u_r21(s, order);
    let half_delta = delta_jet.truncate(order).scale(T::lit(0.5));
    base.checked_add(&u.mul_scalar(&half_delta)?)
}

/// Jet of σ at `tau`, the identity when absent. Fails when |σ'| is below
/// `settings.sigma_min`.
pub fn reparametrization<T: Real>(
    sigma: Option<&CurveSpec>,
    tau: T,
    order: usize,
    settings: &Settings,
) -> Result<Jet<T>> {
    let jet = match sigma {
        Some(spec) => spec.jet(tau, order),
        None => Jet::variable(tau, order),
    };
    if order >= 1 {
        let slope = jet.deriv(1);
        if slope.is_nan() || slope.abs() < T::lit(settings.sigma_min) {
            return Err(Error::SigmaNotMonotone {
                tau: tau.as_f64(),
                derivative: slope.as_f64(),
            });
        }
    }
    Ok(jet)
}

fn compose_if<T: Real>(germ: VecJet<T>, sigma: Option<&CurveSpec>, sigma_jet: &Jet<T>) -> Result<VecJet<T>> {
    match sigma {
        Some(_) => germ.compose(&sigma_jet.truncate(germ.order())),
        None => Ok(germ),
    }
}

/// Germ in ℝ^{2,n} at `tau` from flat outputs evaluated at `σ(tau)`,
/// built from jets of order `order`. The germ has order `order - 2`.
pub fn r2n_map<T: Real>(input: &FlatInputR21, tau: T, order: usize, settings: &Settings) -> Result<VecJet<T>> {
    let sigma_jet = reparametrization(input.sigma.as_ref(), tau, order, settings)?;
    let s = sigma_jet.value();
    let fjet = input.f.jet(s, order);
    require_order(&fjet, 2)?;
    let out_order = order - 2;

    let delta = if input.extras.iter().all(CurveSpec::is_constant) {
        Jet::zero(out_order)
    } else {
        let radicand = input.extras.iter().try_fold(Jet::zero(order - 1), |acc, e| {
            let de = e.jet(s, order).derivative()?;
            acc.checked_add(&de.checked_mul(&de)?)
        })?;
        if radicand.value().is_nan() || radicand.value() <= T::zero() {
            return Err(Error::DegenerateDelta { tau: tau.as_f64() });
        }
        radicand.sqrt()?.truncate(out_order)
    };

    let head = delta_map(&fjet, &delta, s)?;
    let mut components = head.into_components();
    components.extend(input.extras.iter().map(|e| e.jet(s, out_order)));
    let germ = VecJet::new(components, Signature::r2n(input.n()))?;
    compose_if(germ, input.sigma.as_ref(), &sigma_jet)
}

/// `x = u f' - u' f + v g' - v' g` in ℝ^{2,2}, so that `x' = u f'' + v g''`.
///
/// Germ order is `order - 1`.
pub fn r22_map<T: Real>(input: &FlatInputR22, tau: T, order: usize, settings: &Settings) -> Result<VecJet<T>> {
    let sigma_jet = reparametrization(input.sigma.as_ref(), tau, order, settings)?;
    let s = sigma_jet.value();
    let fjet = input.f.jet(s, order);
    let gjet = input.g.jet(s, order);
    require_order(&fjet, 1)?;
    let out_order = order - 1;
    let (u, v) = basis_uv_r22(s, out_order + 1);
    let (du, dv) = (u.derivative()?, v.derivative()?);
    let (u, v) = (u.truncate(out_order), v.truncate(out_order));
    let (f0, f1) = (fjet.truncate(out_order), fjet.derivative()?);
    let (g0, g1) = (gjet.truncate(out_order), gjet.derivative()?);
    let germ = u
        .mul_scalar(&f1)?
        .checked_sub(&du.mul_scalar(&f0)?)?
        .checked_add(&v.mul_scalar(&g1)?)?
        .checked_sub(&dv.mul_scalar(&g0)?)?;
    compose_if(germ, input.sigma.as_ref(), &sigma_jet)
}

/// Germ of the curve described by `input` at `tau`, with jets of order
/// `settings.jet_order`.
pub fn germ_at<T: Real>(input: &FlatInput, tau: T, settings: &Settings) -> Result<VecJet<T>> {
    match input {
        FlatInput::R21(i) => r2n_map(i, tau, settings.jet_order, settings),
        FlatInput::R22(i) => r22_map(i, tau, settings.jet_order, settings),
    }
}
