//! Faddeev's quantum dilogarithm `Phi_b` on the real line.

use super::qseries::qpoch_inf_min;
use crate::cmath::{c, ln1p, C64, I, ONE, PI, TAU, ZERO};
use crate::error::{Error, Result};
use crate::numerics::{integrate_line, NumericsSpec, QuadratureResult};

/// Distance (in `x`) below which the product form reports `PoleProximity`.
pub const POLE_PROXIMITY: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Representation {
    /// Ratio of two infinite q-products; needs `Im b^2 > 0`.
    Product,
    /// Exponential of the contour integral over `R + i eps`.
    FaddeevIntegral,
    /// Exponential of the real-line integral; real `b` only.
    Woronowicz,
    Auto,
}

/// A resolved representation together with its strip `|Im x| < max_abs_im`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalDomain {
    pub representation: Representation,
    pub max_abs_im: f64,
}

fn is_unit(b: C64) -> bool {
    (b.norm() - 1.0).abs() < 1e-12
}

fn is_real(b: C64) -> bool {
    b.im.abs() < 1e-15 * b.re.abs().max(1.0)
}

impl EvalDomain {
    /// Resolves `rep` for parameter `b`; `Auto` picks the product form when
    /// `Im b^2 > 0`, the Faddeev integral otherwise.
    pub fn new(b: C64, rep: Representation) -> Result<Self> {
        let im_b2 = (b * b).im;
        match rep {
            Representation::Auto => {
                if im_b2 > 0.0 {
                    EvalDomain::new(b, Representation::Product)
                } else {
                    EvalDomain::new(b, Representation::FaddeevIntegral)
                }
            }
            Representation::Product => {
                if im_b2 > 0.0 {
                    Ok(EvalDomain { representation: rep, max_abs_im: f64::INFINITY })
                } else {
                    Err(Error::OutOfDomain("product form needs Im(b^2) > 0"))
                }
            }
            Representation::FaddeevIntegral => {
                if b.re > 0.0 && (im_b2 > 0.0 || is_real(b) || is_unit(b)) {
                    let strip = 0.5 * (b + b.inv()).re;
                    Ok(EvalDomain { representation: rep, max_abs_im: strip })
                } else {
                    Err(Error::OutOfDomain("integral form needs Re b > 0 and Im(b^2) > 0, b real or |b| = 1"))
                }
            }
            Representation::Woronowicz => {
                if is_real(b) && b.re > 0.0 {
                    Ok(EvalDomain { representation: rep, max_abs_im: 0.5 / b.re })
                } else {
                    Err(Error::OutOfDomain("Woronowicz form needs real b > 0"))
                }
            }
        }
    }

    pub fn contains(&self, x: C64) -> bool {
        x.im.abs() < self.max_abs_im
    }
}

/// `Phi_b(x)` with the requested representation.
pub fn faddeev_phi(b: C64, x: C64, rep: Representation, spec: &NumericsSpec) -> Result<C64> {
    faddeev_phi_estimate(b, x, rep, spec).map(|r| r.value)
}

/// `Phi_b(x)` together with a quadrature error estimate.
pub fn faddeev_phi_estimate(b: C64, x: C64, rep: Representation, spec: &NumericsSpec) -> Result<QuadratureResult> {
    let dom = EvalDomain::new(b, rep)?;
    if !dom.contains(x) {
        return Err(Error::OutOfDomain("argument outside the representation strip"));
    }
    match dom.representation {
        Representation::Product => product(b, x).map(QuadratureResult::exact),
        Representation::FaddeevIntegral => faddeev_integral(b, x, spec),
        Representation::Woronowicz => woronowicz_integral(b.re, x, spec),
        Representation::Auto => unreachable!("resolved by EvalDomain::new"),
    }
}

/// Product of the two q-products. Only called where
/// `Re(x (b + 1/b)) <= 0`, a half-plane free of the removable 0/0 points of
/// the ratio, so every small factor signals a genuine zero or pole.
fn product_half_plane(b: C64, x: C64, numerator_is_pole: bool) -> Result<C64> {
    let q = (I * PI * b * b).exp();
    let qb = (-I * PI / (b * b)).exp();
    let a_num = -q * (TAU * b * x).exp();
    let a_den = -qb * (TAU * x / b).exp();
    let (num, least_num) = qpoch_inf_min(a_num, q * q)?;
    let (den, least_den) = qpoch_inf_min(a_den, qb * qb)?;
    if least_den * b.norm() / TAU < POLE_PROXIMITY {
        return Err(Error::PoleProximity);
    }
    if numerator_is_pole && least_num / (TAU * b.norm()) < POLE_PROXIMITY {
        return Err(Error::PoleProximity);
    }
    Ok(num / den)
}

fn product(b: C64, x: C64) -> Result<C64> {
    if (x * (b + b.inv())).re > 0.0 {
        let p0 = product_half_plane(b, ZERO, false)?;
        let reflected = product_half_plane(b, -x, true)?;
        Ok(p0 * p0 * (I * PI * x * x).exp() / reflected)
    } else {
        product_half_plane(b, x, false)
    }
}

/// `e^{-2ixz} / (4 sinh(zb) sinh(z/b) z)`, written so that no intermediate
/// overflows for large `|Re z|`.
fn faddeev_integrand(b: C64, x: C64, z: C64) -> C64 {
    let s = b + b.inv();
    if z.re >= 0.0 {
        let e = (-2.0 * I * x * z - z * s).exp();
        e / ((ONE - (-2.0 * z * b).exp()) * (ONE - (-2.0 * z / b).exp()) * z)
    } else {
        let e = (-2.0 * I * x * z + z * s).exp();
        e / ((ONE - (2.0 * z * b).exp()) * (ONE - (2.0 * z / b).exp()) * z)
    }
}

/// Height of the contour: half the distance to the nearest integrand pole
/// above the origin.
pub fn faddeev_contour_height(b: C64) -> f64 {
    0.5 * (PI * b.re).min(PI * b.re / b.norm_sqr())
}

fn faddeev_integral(b: C64, x: C64, spec: &NumericsSpec) -> Result<QuadratureResult> {
    let eps = faddeev_contour_height(b);
    let inner = spec.with_tol(spec.abs_tol.min(1e-12));
    let r = integrate_line(&|z| faddeev_integrand(b, x, z), eps, &inner)?;
    let value = r.value.exp();
    Ok(QuadratureResult { value, error_estimate: value.norm() * r.error_estimate, ..r })
}

fn woronowicz_integral(b: f64, x: C64, spec: &NumericsSpec) -> Result<QuadratureResult> {
    let f = |z: C64| {
        let t = z.re;
        let w = c(b * b * t, 0.0) + TAU * b * x;
        let log = if w.re > 0.0 { w + ln1p((-w).exp()) } else { ln1p(w.exp()) };
        let fermi = if t > 0.0 { (-t).exp() / (1.0 + (-t).exp()) } else { 1.0 / (1.0 + t.exp()) };
        log * fermi
    };
    let inner = spec.with_tol(spec.abs_tol.min(1e-12));
    let r = integrate_line(&f, 0.0, &inner)?;
    let value = (I * r.value / TAU).exp();
    Ok(QuadratureResult { value, error_estimate: value.norm() * r.error_estimate / TAU, ..r })
}

/// `Phi_b(0) = exp(pi i (b^2 + b^{-2}) / 24)`.
pub fn faddeev_phi_zero_closed(b: C64) -> C64 {
    (I * PI * (b * b + (b * b).inv()) / 24.0).exp()
}

/// Removable-point lattice of the product ratio, exposed for tests.
pub fn product_coincidence_point(b: C64, k: u32, n: u32) -> C64 {
    I * (2 * k + 1) as f64 / (2.0 * b) - I * (2 * n + 1) as f64 * b / 2.0
}

#[cfg(test)]
fn raw_product(b: C64, x: C64) -> Result<C64> {
    use super::qseries::qpoch_inf;
    let q = (I * PI * b * b).exp();
    let qb = (-I * PI / (b * b)).exp();
    Ok(qpoch_inf(-q * (TAU * b * x).exp(), q * q)? / qpoch_inf(-qb * (TAU * x / b).exp(), qb * qb)?)
}
