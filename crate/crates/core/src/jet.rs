//! Truncated jets of scalar functions.
//!
//! A [`Jet`] of order `K` holds the value and the first `K` derivatives of a
//! function at one point, stored as raw derivative values (not divided by
//! `i!`). Products follow the Leibniz rule, composition follows Faà di Bruno,
//! and square roots go through Taylor coefficients internally.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct Jet<T> {
    derivs: Vec<T>,
}

impl<T: Real> Jet<T> {
    /// Builds a jet from raw derivative values `derivs[i] = f^(i)(t)`.
    ///
    /// Panics if `derivs` is empty.
    pub fn new(derivs: Vec<T>) -> Self {
        assert!(!derivs.is_empty(), "a jet holds at least its value");
        Jet { derivs }
    }

    pub fn constant(value: T, order: usize) -> Self {
        let mut derivs = vec![T::zero(); order + 1];
        derivs[0] = value;
        Jet { derivs }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(T::zero(), order)
    }

    /// Jet of the identity function at `point`.
    pub fn variable(point: T, order: usize) -> Self {
        let mut jet = Self::constant(point, order);
        if order >= 1 {
            jet.derivs[1] = T::one();
        }
        jet
    }

    pub fn order(&self) -> usize {
        self.derivs.len() - 1
    }

    pub fn value(&self) -> T {
        self.derivs[0]
    }

    /// `i`-th derivative. Panics when `i > order`.
    pub fn deriv(&self, i: usize) -> T {
        self.derivs[i]
    }

    pub fn derivs(&self) -> &[T] {
        &self.derivs
    }

    pub fn into_derivs(self) -> Vec<T> {
        self.derivs
    }

    pub fn is_finite(&self) -> bool {
        self.derivs.iter().all(|d| d.is_finite())
    }

    /// Keeps derivatives up to `order`. Panics if `order` exceeds the current order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a jet by truncation");
        Jet {
            derivs: self.derivs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, factor: T) -> Self {
        Jet {
            derivs: self.derivs.iter().map(|&d| d * factor).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// Product by the general Leibniz rule.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let binom = binomial_rows::<T>(self.order());
        let derivs = (0..=self.order())
            .map(|i| {
                (0..=i)
                    .map(|k| binom[i][k] * self.derivs[k] * other.derivs[i - k])
                    .sum()
            })
            .collect();
        Ok(Jet { derivs })
    }

    /// Jet of `outer ∘ inner` where `self` is the jet of the outer function
    /// taken at `inner.value()`.
    ///
    /// Uses Faà di Bruno's formula with partial Bell polynomials, so an
    /// identity inner jet returns `self` bit for bit.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        let order = self.order();
        let binom = binomial_rows::<T>(order);
        // bell[n][k] = B_{n,k}(σ', σ'', ...)
        let mut bell = vec![vec![T::zero(); order + 1]; order + 1];
        bell[0][0] = T::one();
        for n in 1..=order {
            for k in 1..=n {
                bell[n][k] = (1..=n - k + 1)
                    .map(|i| binom[n - 1][i - 1] * inner.derivs[i] * bell[n - i][k - 1])
                    .sum();
            }
        }
        let mut derivs = vec![self.derivs[0]; order + 1];
        for n in 1..=order {
            derivs[n] = (1..=n).map(|k| self.derivs[k] * bell[n][k]).sum();
        }
        Ok(Jet { derivs })
    }

    /// Jet of the square root. The value must be strictly positive.
    pub fn sqrt(&self) -> Result<Self> {
        let a0 = self.value();
        if a0.is_nan() || a0 <= T::zero() {
            return Err(Error::NonPositiveRadicand { value: a0.as_f64() });
        }
        let a = self.taylor_coefficients();
        let mut s = vec![T::zero(); a.len()];
        s[0] = a0.sqrt();
        let two_s0 = s[0] + s[0];
        for k in 1..a.len() {
            let cross: T = (1..k).map(|j| s[j] * s[k - j]).sum();
            s[k] = (a[k] - cross) / two_s0;
        }
        Ok(Self::from_taylor_coefficients(s))
    }

    /// Jet of the derivative, one order lower.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::InsufficientOrder { needed: 1, got: 0 });
        }
        Ok(Jet {
            derivs: self.derivs[1..].to_vec(),
        })
    }

    fn zip_with(&self, other: &Self, op: impl Fn(T, T) -> T) -> Self {
        Jet {
            derivs: self.derivs.iter().zip(&other.derivs).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    fn taylor_coefficients(&self) -> Vec<T> {
        let mut factorial = T::one();
        self.derivs
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                if i > 0 {
                    factorial *= T::lit(i as f64);
                }
                d / factorial
            })
            .collect()
    }

    fn from_taylor_coefficients(coeffs: Vec<T>) -> Self {
        let mut factorial = T::one();
        let derivs = coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                if i > 0 {
                    factorial *= T::lit(i as f64);
                }
                c * factorial
            })
            .collect();
        Jet { derivs }
    }
}

fn binomial_rows<T: Real>(order: usize) -> Vec<Vec<T>> {
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(order + 1);
    for i in 0..=order {
        let mut row = vec![T::one(); i + 1];
        for k in 1..i {
            row[k] = rows[i - 1][k - 1] + rows[i - 1][k];
        }
        rows.push(row);
    }
    rows
}

// Operator forms panic on order mismatch; use the `checked_*` methods when
// orders come from user input.

impl<T: Real> Add for &Jet<T> {
    type Output = Jet<T>;
    fn add(self, rhs: Self) -> Jet<T> {
        self.checked_add(rhs).expect("jet orders must match")
    }
}

impl<T: Real> Sub for &Jet<T> {
    type Output = Jet<T>;
    fn sub(self, rhs: Self) -> Jet<T> {
        self.checked_sub(rhs).expect("jet orders must match")
    }
}

impl<T: Real> Mul for &Jet<T> {
    type Output = Jet<T>;
    fn mul(self, rhs: Self) -> Jet<T> {
        self.checked_mul(rhs).expect("jet orders must match")
    }
}

impl<T: Real> Neg for &Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Jet<T> {
        self.scale(-T::one())
    }
}

impl<T: Real> Add for Jet<T> {
    type Output = Jet<T>;
    fn add(self, rhs: Self) -> Jet<T> {
        &self + &rhs
    }
}

impl<T: Real> Sub for Jet<T> {
    type Output = Jet<T>;
    fn sub(self, rhs: Self) -> Jet<T> {
        &self - &rhs
    }
}

impl<T: Real> Mul for Jet<T> {
    type Output = Jet<T>;
    fn mul(self, rhs: Self) -> Jet<T> {
        &self * &rhs
    }
}

impl<T: Real> Neg for Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Jet<T> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn jet(d: &[f64]) -> Jet<f64> {
        Jet::new(d.to_vec())
    }

    #[test]
    fn mul_identity_and_powers() {
        let x = jet(&[0.3, -1.2, 4.0]);
        assert_eq!(jet(&[1.0, 0.0, 0.0]).checked_mul(&x).unwrap(), x);
        // τ² and τ³ at τ = 1 give τ⁵
        let p = jet(&[1.0, 2.0, 2.0]).checked_mul(&jet(&[1.0, 3.0, 6.0])).unwrap();
        assert_eq!(p.derivs(), &[1.0, 5.0, 20.0]);
    }

    #[test]
    fn mul_order_mismatch() {
        let err = jet(&[1.0, 2.0]).checked_mul(&jet(&[1.0])).unwrap_err();
        assert_eq!(err, Error::OrderMismatch { left: 1, right: 0 });
    }

    #[test]
    fn compose_examples() {
        // f = τ² at σ(0) = 1, σ = τ + 1
        let r = jet(&[1.0, 2.0, 2.0]).compose(&jet(&[1.0, 1.0, 0.0])).unwrap();
        assert_eq!(r.derivs(), &[1.0, 2.0, 2.0]);
        // f = sin, σ = 2τ at 0
        let r = jet(&[0.0, 1.0, 0.0]).compose(&jet(&[0.0, 2.0, 0.0])).unwrap();
        assert_eq!(r.derivs(), &[0.0, 2.0, 0.0]);
        let outer = jet(&[0.7, -2.0, 3.5, 11.0]);
        assert_eq!(outer.compose(&Jet::variable(4.2, 3)).unwrap(), outer);
    }

    #[test]
    fn compose_matches_chain_rule_to_third_order() {
        // f = exp at σ(τ0), σ = τ², τ0 = 0.5
        let t0: f64 = 0.5;
        let s = t0 * t0;
        let e = s.exp();
        let outer = jet(&[e, e, e, e]);
        let inner = jet(&[s, 2.0 * t0, 2.0, 0.0]);
        let r = outer.compose(&inner).unwrap();
        // d/dτ e^{τ²} = 2τ e, d² = (2 + 4τ²) e, d³ = (12τ + 8τ³) e
        assert_relative_eq!(r.deriv(1), 2.0 * t0 * e, max_relative = 1e-14);
        assert_relative_eq!(r.deriv(2), (2.0 + 4.0 * t0 * t0) * e, max_relative = 1e-14);
        assert_relative_eq!(r.deriv(3), (12.0 * t0 + 8.0 * t0.powi(3)) * e, max_relative = 1e-14);
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(jet(&[4.0, 0.0, 0.0]).sqrt().unwrap().derivs(), &[2.0, 0.0, 0.0]);
        assert_eq!(jet(&[1.0, 2.0, 2.0]).sqrt().unwrap().derivs(), &[1.0, 1.0, 0.0]);
        assert_eq!(
            jet(&[0.0, 1.0, 0.0]).sqrt().unwrap_err(),
            Error::NonPositiveRadicand { value: 0.0 }
        );
        assert!(jet(&[-1.0]).sqrt().is_err());
    }

    #[test]
    fn shift_examples() {
        let j = jet(&[8.0, 12.0, 12.0, 6.0]);
        assert_eq!(j.derivative().unwrap().derivs(), &[12.0, 12.0, 6.0]);
        assert_eq!(jet(&[3.0, 0.0, 0.0]).derivative().unwrap().derivs(), &[0.0, 0.0]);
        let twice = jet(&[1.0, 2.0, 7.0]).derivative().unwrap().derivative().unwrap();
        assert_eq!(twice.derivs(), &[7.0]);
        assert!(matches!(twice.derivative(), Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn works_in_single_precision() {
        let a = Jet::<f32>::new(vec![1.0, 2.0, 2.0]);
        let b = Jet::<f32>::new(vec![1.0, 3.0, 6.0]);
        assert_eq!((&a * &b).derivs(), &[1.0f32, 5.0, 20.0]);
        assert_eq!(a.sqrt().unwrap().derivs(), &[1.0f32, 1.0, 0.0]);
    }

    fn arb_jet(order: usize) -> impl Strategy<Value = Jet<f64>> {
        prop::collection::vec(-3.0f64..3.0, order + 1).prop_map(Jet::new)
    }

    fn close(a: &Jet<f64>, b: &Jet<f64>, tol: f64) -> bool {
        a.derivs()
            .iter()
            .zip(b.derivs())
            .all(|(x, y)| (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs())))
    }

    proptest! {
        #[test]
        fn mul_commutes_and_associates(a in arb_jet(5), b in arb_jet(5), c in arb_jet(5)) {
            prop_assert!(close(&(&a * &b), &(&b * &a), 1e-13));
            prop_assert!(close(&(&(&a * &b) * &c), &(&a * &(&b * &c)), 1e-12));
        }

        #[test]
        fn sqrt_squares_back(v in 1e-6f64..50.0, rest in prop::collection::vec(-3.0f64..3.0, 5)) {
            // radicand v·g with g(0) = 1 and O(1) derivatives
            let mut d = vec![v];
            d.extend(rest.iter().map(|r| r * v));
            let a = Jet::new(d);
            let sq = {
                let r = a.sqrt().unwrap();
                &r * &r
            };
            let scale = a.derivs().iter().fold(0.0f64, |m, x| m.max(x.abs()));
            for (x, y) in sq.derivs().iter().zip(a.derivs()) {
                prop_assert!((x - y).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn sqrt_of_square_recovers_root(b0 in 1e-3f64..7.0, rest in prop::collection::vec(-3.0f64..3.0, 5)) {
            let mut d = vec![b0];
            d.extend(rest);
            let b = Jet::new(d);
            let a = &b * &b;
            let r = a.sqrt().unwrap();
            let sq = &r * &r;
            let scale = a.derivs().iter().fold(0.0f64, |m, x| m.max(x.abs()));
            for (x, y) in sq.derivs().iter().zip(a.derivs()) {
                prop_assert!((x - y).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn compose_with_identity_is_exact(a in arb_jet(5), t in -5.0f64..5.0) {
            prop_assert_eq!(a.compose(&Jet::variable(t, 5)).unwrap(), a);
        }
    }
}
