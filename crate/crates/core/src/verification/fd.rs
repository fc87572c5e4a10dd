use crate::curve_spec::CurveSpec;

pub const FD_STEP: f64 = 1e-5;

/// Largest relative gap between jet derivatives of orders `1..=max_order`
/// and a five-point central difference of the next-lower jet entry.
///
/// Gaps are measured against `max(1, |jet_k|)`.
pub fn fd_crosscheck(spec: &CurveSpec, tau: f64, max_order: usize) -> f64 {
    let h = FD_STEP;
    let jet = spec.jet(tau, max_order);
    let at = |t: f64| spec.jet(t, max_order);
    let (p1, p2, m1, m2) = (at(tau + h), at(tau + 2.0 * h), at(tau - h), at(tau - 2.0 * h));
    (1..=max_order)
        .map(|k| {
            let lower = k - 1;
            let fd = (8.0 * (p1.deriv(lower) - m1.deriv(lower)) - (p2.deriv(lower) - m2.deriv(lower))) / (12.0 * h);
            let exact = jet.deriv(k);
            (fd - exact).abs() / exact.abs().max(1.0)
        })
        .fold(0.0, f64::max)
}
