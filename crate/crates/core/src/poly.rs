//! Dense univariate polynomials over an arbitrary coefficient field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Zero};

/// Field usable as polynomial coefficients.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Num + Neg<Output = Self> + FromPrimitive {}

impl<R> Coefficient for R where R: Clone + PartialEq + fmt::Debug + Num + Neg<Output = R> + FromPrimitive {}

/// Polynomial `Σ coeffs[i] τ^i`. The zero polynomial has no coefficients;
/// otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DensePoly<R> {
    coeffs: Vec<R>,
}

/// Exact rational polynomial.
pub type RatPoly = DensePoly<BigRational>;

impl<R: Coefficient> DensePoly<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        let mut p = DensePoly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `τ`.
    pub fn identity() -> Self {
        Self::new(vec![R::zero(), R::one()])
    }

    pub fn monomial(c: R, degree: usize) -> Self {
        let mut coeffs = vec![R::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `τ^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * R::from_usize(i).expect("degree fits the coefficient field"))
            .collect();
        Self::new(coeffs)
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![R::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd].clone() / lead.clone();
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - q.clone() * d.clone();
                }
            }
            quot[k] = q;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Maps coefficients into another field.
    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> DensePoly<S> {
        DensePoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<R: Coefficient> Add for &DensePoly<R> {
    type Output = DensePoly<R>;
    fn add(self, rhs: Self) -> DensePoly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<R: Coefficient> Sub for &DensePoly<R> {
    type Output = DensePoly<R>;
    fn sub(self, rhs: Self) -> DensePoly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<R: Coefficient> Mul for &DensePoly<R> {
    type Output = DensePoly<R>;
    fn mul(self, rhs: Self) -> DensePoly<R> {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        DensePoly::new(out)
    }
}

impl<R: Coefficient> Neg for &DensePoly<R> {
    type Output = DensePoly<R>;
    fn neg(self) -> DensePoly<R> {
        DensePoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<R: Coefficient> $tr for DensePoly<R> {
            type Output = DensePoly<R>;
            fn $m(self, rhs: Self) -> DensePoly<R> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<R: Coefficient> Neg for DensePoly<R> {
    type Output = DensePoly<R>;
    fn neg(self) -> DensePoly<R> {
        -&self
    }
}

impl<R: Coefficient> Zero for DensePoly<R> {
    fn zero() -> Self {
        DensePoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Coefficient> One for DensePoly<R> {
    fn one() -> Self {
        DensePoly::constant(R::one())
    }
}

impl<R: Coefficient + fmt::Display> fmt::Display for DensePoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})τ")?,
                _ => write!(f, "({c})τ^{i}")?,
            }
        }
        Ok(())
    }
}

impl<R: Coefficient + fmt::Display> fmt::Debug for DensePoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn rp(c: &[i64]) -> RatPoly {
        RatPoly::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(rp(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(rp(&[0, 0]).is_zero());
        assert_eq!(rp(&[0]).degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = rp(&[1, 1]);
        assert_eq!(&a * &a, rp(&[1, 2, 1]));
        assert_eq!(&(&a * &a) - &rp(&[1, 2, 1]), RatPoly::zero());
        assert_eq!(rp(&[0, 0, 0, 1]).derivative(), rp(&[0, 0, 3]));
        assert_eq!(rp(&[5]).derivative(), RatPoly::zero());
        assert_eq!(rp(&[1, 2, 3]).eval(&int(2)), int(17));
    }

    #[test]
    fn division() {
        let a = rp(&[-1, 0, 1]);
        assert_eq!(a.exact_div(&rp(&[1, 1])), Some(rp(&[-1, 1])));
        assert_eq!(a.exact_div(&rp(&[2, 1])), None);
        let (q, r) = rp(&[1, 0, 1]).div_rem(&rp(&[0, 1]));
        assert_eq!((q, r), (rp(&[0, 1]), rp(&[1])));
        assert_eq!(rp(&[3]).div_rem(&rp(&[0, 1])), (RatPoly::zero(), rp(&[3])));
    }

    #[test]
    fn float_coefficients() {
        let p = DensePoly::<f64>::new(vec![1.0, -2.0, 0.5]);
        assert_eq!(p.eval(&2.0), -1.0);
        assert_eq!(p.derivative().coeffs(), &[-2.0, 1.0]);
    }
}
