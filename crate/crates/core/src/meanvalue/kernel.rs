//! Compactly supported even weights `E^λ(ν) = E(ν/λ)`.

use crate::error::{Error, Result};
use crate::quad;

/// The unit-width profile of a sieving kernel.
///
/// Implementors must satisfy `E(0) = 1`, `E(t) = 0` for `t >= 1`,
/// `0 <= E <= 1`, and be continuous. Evenness is supplied by the caller,
/// which always passes `|ν| / λ`.
pub trait KernelShape: Sync {
    /// `E(t)` for `t >= 0`.
    fn unit(&self, t: f64) -> f64;

    /// `A = ∫_0^1 E(t) dt`. Defaults to numerical quadrature.
    fn area(&self) -> f64 {
        area_by_quadrature(self)
    }
}

/// The piecewise cubic
/// `1 - 6t² + 6t³` on `[0, 1/2]`, `2(1 - t)³` on `[1/2, 1]`, `0` beyond.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CubicKernel;

impl KernelShape for CubicKernel {
    fn unit(&self, t: f64) -> f64 {
        let t = t.abs();
        if t <= 0.5 {
            1.0 - 6.0 * t * t + 6.0 * t * t * t
        } else if t < 1.0 {
            let s = 1.0 - t;
            2.0 * s * s * s
        } else {
            0.0
        }
    }

    /// 11/32 from the inner branch plus 1/32 from the outer one.
    fn area(&self) -> f64 {
        0.375
    }
}

pub fn area_by_quadrature<S: KernelShape + ?Sized>(shape: &S) -> f64 {
    // split at the knot so each piece is smooth
    quad::integrate(|t| shape.unit(t), 0.0, 0.5, 1e-14)
        + quad::integrate(|t| shape.unit(t), 0.5, 1.0, 1e-14)
}

/// `E^λ` for a given window half-width `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SievingKernel<S = CubicKernel> {
    lambda: f64,
    shape: S,
}

impl SievingKernel<CubicKernel> {
    pub fn new(lambda: f64) -> Result<Self> {
        Self::with_shape(lambda, CubicKernel)
    }
}

impl<S: KernelShape> SievingKernel<S> {
    pub fn with_shape(lambda: f64, shape: S) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::arg(format!("kernel width must be positive, got {lambda}")));
        }
        Ok(SievingKernel { lambda, shape })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn shape(&self) -> &S {
        &self.shape
    }

    pub fn eval(&self, nu: f64) -> f64 {
        self.shape.unit(nu.abs() / self.lambda)
    }

    /// Area of the unit profile, `∫_0^1 E(ν) dν`.
    pub fn area(&self) -> f64 {
        self.shape.area()
    }
}

pub fn kernel_eval<S: KernelShape>(kern: &SievingKernel<S>, nu: f64) -> f64 {
    kern.eval(nu)
}

pub fn kernel_area<S: KernelShape>(kern: &SievingKernel<S>) -> f64 {
    kern.area()
}
