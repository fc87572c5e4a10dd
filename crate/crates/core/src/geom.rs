//! Pseudo-Euclidean vectors and curve germs in ℝ^{p,q}.
//!
//! The metric is `diag(-1 × p, +1 × q)` with the negative axes first, so in
//! ℝ^{2,n} the components `x₁, x₂` carry the minus signs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::InvalidInput("signature must have at least one axis".into()));
        }
        Ok(Signature { p, q })
    }

    /// Signature of ℝ^{2,n}.
    pub fn r2n(n: usize) -> Self {
        Signature { p: 2, q: n }
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// Metric sign of axis `i` (zero based).
    pub fn sign<T: Real>(&self, i: usize) -> T {
        if i < self.p {
            -T::one()
        } else {
            T::one()
        }
    }

    fn check_same(&self, other: &Signature) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SignatureMismatch {
                p1: self.p,
                q1: self.q,
                p2: other.p,
                q2: other.q,
            })
        }
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: len,
            })
        }
    }
}

/// A point of ℝ^{p,q}.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoVec<T> {
    components: Vec<T>,
    signature: Signature,
}

impl<T: Real> PseudoVec<T> {
    pub fn new(components: Vec<T>, signature: Signature) -> Result<Self> {
        signature.check_dim(components.len())?;
        Ok(PseudoVec { components, signature })
    }

    pub fn zero(signature: Signature) -> Self {
        PseudoVec {
            components: vec![T::zero(); signature.dim()],
            signature,
        }
    }

    pub fn components(&self) -> &[T] {
        &self.components
    }

    pub fn into_components(self) -> Vec<T> {
        self.components
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// Euclidean squared norm (not the metric one).
    pub fn euclidean_norm_sq(&self) -> T {
        self.components.iter().map(|&c| c * c).sum()
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.signature.check_same(&other.signature)?;
        Ok(PseudoVec {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(&a, &b)| a - b)
                .collect(),
            signature: self.signature,
        })
    }

    pub fn max_abs(&self) -> T {
        self.components.iter().fold(T::zero(), |m, &c| m.max(c.abs()))
    }
}

/// `Σ εᵢ aᵢ bᵢ` with `εᵢ = -1` on the first `p` axes.
pub fn inner<T: Real>(a: &PseudoVec<T>, b: &PseudoVec<T>) -> Result<T> {
    a.signature.check_same(&b.signature)?;
    Ok(a.components
        .iter()
        .zip(&b.components)
        .enumerate()
        .map(|(i, (&x, &y))| a.signature.sign::<T>(i) * x * y)
        .sum())
}

/// Germ of a curve: one jet per component, all of the same order.
#[derive(Debug, Clone, PartialEq)]
pub struct VecJet<T> {
    components: Vec<Jet<T>>,
    signature: Signature,
}

impl<T: Real> VecJet<T> {
    pub fn new(components: Vec<Jet<T>>, signature: Signature) -> Result<Self> {
        signature.check_dim(components.len())?;
        let order = components[0].order();
        if let Some(bad) = components.iter().find(|c| c.order() != order) {
            return Err(Error::OrderMismatch {
                left: order,
                right: bad.order(),
            });
        }
        Ok(VecJet { components, signature })
    }

    /// Germ of a constant curve.
    pub fn constant(point: &PseudoVec<T>, order: usize) -> Self {
        VecJet {
            components: point.components.iter().map(|&c| Jet::constant(c, order)).collect(),
            signature: point.signature,
        }
    }

    pub fn components(&self) -> &[Jet<T>] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Jet<T>> {
        self.components
    }

    pub fn component(&self, i: usize) -> &Jet<T> {
        &self.components[i]
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn order(&self) -> usize {
        self.components[0].order()
    }

    /// `k`-th derivative vector at the expansion point.
    pub fn deriv(&self, k: usize) -> PseudoVec<T> {
        PseudoVec {
            components: self.components.iter().map(|c| c.deriv(k)).collect(),
            signature: self.signature,
        }
    }

    pub fn point(&self) -> PseudoVec<T> {
        self.deriv(0)
    }

    pub fn velocity(&self) -> PseudoVec<T> {
        self.deriv(1)
    }

    /// Germ of the derivative curve.
    pub fn derivative(&self) -> Result<Self> {
        Ok(VecJet {
            components: self.components.iter().map(Jet::derivative).collect::<Result<_>>()?,
            signature: self.signature,
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        VecJet {
            components: self.components.iter().map(|c| c.truncate(order)).collect(),
            signature: self.signature,
        }
    }

    /// Germ of `x ∘ σ`, where `self` is expanded at `inner.value()`.
    pub fn compose(&self, inner: &Jet<T>) -> Result<Self> {
        Ok(VecJet {
            components: self
                .components
                .iter()
                .map(|c| c.compose(inner))
                .collect::<Result<_>>()?,
            signature: self.signature,
        })
    }

    /// Componentwise product with a scalar germ.
    pub fn mul_scalar(&self, factor: &Jet<T>) -> Result<Self> {
        Ok(VecJet {
            components: self
                .components
                .iter()
                .map(|c| c.checked_mul(factor))
                .collect::<Result<_>>()?,
            signature: self.signature,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.signature.check_same(&other.signature)?;
        Ok(VecJet {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.checked_add(b))
                .collect::<Result<_>>()?,
            signature: self.signature,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.signature.check_same(&other.signature)?;
        Ok(VecJet {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.checked_sub(b))
                .collect::<Result<_>>()?,
            signature: self.signature,
        })
    }

    /// Adds a constant vector to the value entries.
    pub fn translate(&self, shift: &PseudoVec<T>) -> Result<Self> {
        self.signature.check_same(&shift.signature)?;
        let components = self
            .components
            .iter()
            .zip(&shift.components)
            .map(|(c, &s)| {
                let mut d = c.derivs().to_vec();
                d[0] += s;
                Jet::new(d)
            })
            .collect();
        Ok(VecJet {
            components,
            signature: self.signature,
        })
    }
}

/// Jet of `(a, b)` along the common expansion point.
pub fn inner_jet<T: Real>(a: &VecJet<T>, b: &VecJet<T>) -> Result<Jet<T>> {
    a.signature.check_same(&b.signature)?;
    let order = a.order();
    a.components
        .iter()
        .zip(&b.components)
        .enumerate()
        .try_fold(Jet::zero(order), |acc, (i, (x, y))| {
            acc.checked_add(&x.checked_mul(y)?.scale(a.signature.sign(i)))
        })
}

/// Jet of `(x', x')`, one order below the germ. Its value is the pointwise
/// null-constraint residual.
pub fn null_residual<T: Real>(germ: &VecJet<T>) -> Result<Jet<T>> {
    if germ.order() < 1 {
        return Err(Error::InsufficientOrder {
            needed: 1,
            got: germ.order(),
        });
    }
    let velocity = germ.derivative()?;
    inner_jet(&velocity, &velocity)
}

/// Jet of a polynomial of degree ≤ 2 with coefficients `[c0, c1, c2]`.
fn quadratic_jet<T: Real>(c: [f64; 3], tau: T, order: usize) -> Jet<T> {
    let [c0, c1, c2] = c.map(T::lit);
    let full = [c0 + c1 * tau + c2 * tau * tau, c1 + (c2 + c2) * tau, c2 + c2];
    let mut d = vec![T::zero(); order + 1];
    for (k, slot) in d.iter_mut().enumerate().take(3) {
        *slot = full[k];
    }
    Jet::new(d)
}

/// Germ of the light-cone curve `u(τ) = (1 - τ², 2τ, 1 + τ²)` in ℝ^{2,1}.
pub fn basis_u_r21<T: Real>(tau: T, order: usize) -> VecJet<T> {
    VecJet {
        components: vec![
            quadratic_jet([1.0, 0.0, -1.0], tau, order),
            quadratic_jet([0.0, 2.0, 0.0], tau, order),
            quadratic_jet([1.0, 0.0, 1.0], tau, order),
        ],
        signature: Signature::r2n(1),
    }
}

/// Germs of the null, mutually orthogonal lines `u(τ) = (1, τ, 1, -τ)` and
/// `v(τ) = (-τ, 1, τ, 1)` in ℝ^{2,2}.
pub fn basis_uv_r22<T: Real>(tau: T, order: usize) -> (VecJet<T>, VecJet<T>) {
    let line = |c0: f64, c1: f64| quadratic_jet([c0, c1, 0.0], tau, order);
    let sig = Signature::r2n(2);
    let u = VecJet {
        components: vec![line(1.0, 0.0), line(0.0, 1.0), line(1.0, 0.0), line(0.0, -1.0)],
        signature: sig,
    };
    let v = VecJet {
        components: vec![line(0.0, -1.0), line(1.0, 0.0), line(0.0, 1.0), line(1.0, 0.0)],
        signature: sig,
    };
    (u, v)
}
