//! Quantum dilogarithm families and the q-series primitives behind them.

mod faddeev;
mod qseries;

pub use faddeev::{
    faddeev_contour_height, faddeev_phi, faddeev_phi_estimate, faddeev_phi_zero_closed, product_coincidence_point,
    EvalDomain, Representation, POLE_PROXIMITY,
};
#[cfg(test)]
use qseries::qpoch_inf;
pub use qseries::{qpochhammer, theta_q, theta_q_series, PochIndex};

use crate::cmath::{c, cis, powi, C64, I, ONE, ZERO};
use crate::error::{Error, Result};
use crate::lca::{GroupElement, GroupId};
use crate::numerics::NumericsSpec;

/// Which dilogarithm, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DilogSpec {
    /// Faddeev's `Phi_b` on `R`.
    Faddeev { b: C64 },
    /// Product of `N` Faddeev factors on `R x Z/NZ`, with `b = e^{i theta}`.
    CyclicFaddeev { n: u32, theta: f64 },
    /// `z^{max(m,0)}` on `T x Z`.
    Tropical,
    /// Ratio of q-products on `T x Z`.
    Dgg { q: f64 },
}

impl DilogSpec {
    pub fn group(&self) -> GroupId {
        match *self {
            DilogSpec::Faddeev { .. } => GroupId::RealLine,
            DilogSpec::CyclicFaddeev { n, .. } => GroupId::RealTimesCyclic(n),
            DilogSpec::Tropical | DilogSpec::Dgg { .. } => GroupId::CircleTimesIntegers,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DilogSpec::Faddeev { .. } => "faddeev",
            DilogSpec::CyclicFaddeev { .. } => "cyclic",
            DilogSpec::Tropical => "tropical",
            DilogSpec::Dgg { .. } => "dgg",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DilogSpec::Faddeev { b } => EvalDomain::new(b, Representation::Auto).map(|_| ()),
            DilogSpec::CyclicFaddeev { n, theta } => {
                if n == 0 {
                    Err(Error::OutOfDomain("N must be positive"))
                } else if !(theta > 0.0 && theta < core::f64::consts::FRAC_PI_2) {
                    Err(Error::OutOfDomain("theta must lie in (0, pi/2)"))
                } else {
                    Ok(())
                }
            }
            DilogSpec::Tropical => Ok(()),
            DilogSpec::Dgg { q } => {
                if q.abs() < 1.0 {
                    Ok(())
                } else {
                    Err(Error::DivergentParameter)
                }
            }
        }
    }

    /// `phi(x)` with automatic representation choice.
    pub fn eval(&self, x: &GroupElement, spec: &NumericsSpec) -> Result<C64> {
        self.validate()?;
        self.group().check(x)?;
        match (*self, *x) {
            (DilogSpec::Faddeev { b }, GroupElement::Real(x)) => faddeev_phi(b, x, Representation::Auto, spec),
            (DilogSpec::CyclicFaddeev { n, theta }, GroupElement::RealCyclic(x, m)) => cyclic_phi(n, theta, x, m, spec),
            (DilogSpec::Tropical, GroupElement::CircleInt(z, m)) => Ok(tropical_phi(z, m)),
            (DilogSpec::Dgg { q }, GroupElement::CircleInt(z, m)) => dgg_phi(q, z, m),
            _ => Err(Error::GroupMismatch),
        }
    }

    /// `phi(0)`.
    pub fn at_identity(&self, spec: &NumericsSpec) -> Result<C64> {
        self.eval(&self.group().identity(), spec)
    }
}

fn frac(m: i64, n: i64) -> f64 {
    m.rem_euclid(n) as f64 / n as f64
}

/// Dilogarithm on `R x Z/NZ` built from `N` Faddeev factors at `b = e^{i theta}`.
pub fn cyclic_phi(n: u32, theta: f64, x: C64, m: i64, spec: &NumericsSpec) -> Result<C64> {
    DilogSpec::CyclicFaddeev { n, theta }.validate()?;
    let nn = n as i64;
    let b = cis(theta);
    let sn = (n as f64).sqrt();
    let shift = I * (1.0 - 1.0 / n as f64) * theta.cos();
    let mut prod = ONE;
    for j in 0..nn {
        let arg = x / sn + shift - I * b.conj() * (j as f64 / n as f64) - I * b * frac(j + m, nn);
        prod *= faddeev_phi(b, arg, Representation::Auto, spec)?;
    }
    Ok(prod)
}

/// `z^{max(m, 0)}`.
pub fn tropical_phi(z: C64, m: i64) -> C64 {
    powi(z, m.max(0))
}

/// Dilogarithm on `T x Z` from the tetrahedron index.
///
/// Evaluated in the form that needs no negative powers of `q`:
/// `z^m (-q^{1+m} z; q^2) / (-q^{1+m}/z; q^2)` for `m >= 0` and
/// `(-q^{1-m} z; q^2) / (-q^{1-m}/z; q^2)` for `m < 0`. At `q = 0` this
/// reduces to the tropical dilogarithm.
pub fn dgg_phi(q: f64, z: C64, m: i64) -> Result<C64> {
    if q.abs() >= 1.0 {
        return Err(Error::DivergentParameter);
    }
    if z == ZERO {
        return Err(Error::OutOfDomain("circle coordinate must be nonzero"));
    }
    let qc = c(q, 0.0);
    let q2 = qc * qc;
    let a = powi(qc, 1 + m.abs());
    let (num, _) = qseries::qpoch_inf_min(-a * z, q2)?;
    let (den, least) = qseries::qpoch_inf_min(-a / z, q2)?;
    if least < 1e-14 {
        return Err(Error::PoleHit);
    }
    let ratio = num / den;
    Ok(if m >= 0 { powi(z, m) * ratio } else { ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmath::PI;

    #[test]
    fn tropical_examples() {
        let z = c(0.3, 1.7);
        assert_eq!(tropical_phi(z, 0), ONE);
        assert!((tropical_phi(I, 3) + I).norm() < 1e-15);
        assert_eq!(tropical_phi(z, -5), ONE);
    }

    #[test]
    fn dgg_examples() {
        assert_eq!(dgg_phi(0.0, c(0.4, 2.0), 0).unwrap(), ONE);
        let z = c(2.0, 0.0);
        let q = 0.3;
        let q2 = c(q * q, 0.0);
        let expect = qpoch_inf(-z, q2).unwrap() / qpoch_inf(-z.inv(), q2).unwrap();
        assert!((dgg_phi(q, z, 1).unwrap() - expect).norm() < 1e-13);
    }

    #[test]
    fn dgg_matches_negative_power_form() {
        let q = 0.45;
        let qc = c(q, 0.0);
        let z = c(0.6, -0.9);
        for m in -4..=4i64 {
            let a = powi(qc, 1 - m);
            let expect = qpoch_inf(-a * z, qc * qc).unwrap() / qpoch_inf(-a / z, qc * qc).unwrap();
            assert!((dgg_phi(q, z, m).unwrap() - expect).norm() < 1e-12 * expect.norm().max(1.0), "m={m}");
        }
    }

    #[test]
    fn dgg_zero_nome_is_tropical() {
        let z = c(1.3, 0.4);
        for m in -3..=3 {
            assert!((dgg_phi(0.0, z, m).unwrap() - tropical_phi(z, m)).norm() < 1e-14);
        }
    }

    #[test]
    fn ak_single_factor_is_faddeev() {
        let spec = NumericsSpec::default();
        let theta = PI / 3.0;
        let x = c(0.37, 0.0);
        let a = cyclic_phi(1, theta, x, 5, &spec).unwrap();
        let f = faddeev_phi(cis(theta), x, Representation::Auto, &spec).unwrap();
        assert!((a - f).norm() < 1e-14);
    }

    #[test]
    fn ak_periodic_in_m() {
        let spec = NumericsSpec::default();
        let x = c(0.2, 0.0);
        for m in 0..3 {
            let a = cyclic_phi(3, PI / 4.0, x, m, &spec).unwrap();
            let b = cyclic_phi(3, PI / 4.0, x, m + 3, &spec).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ak_inversion_point() {
        let spec = NumericsSpec::default();
        let g = GroupId::RealTimesCyclic(3);
        let d = DilogSpec::CyclicFaddeev { n: 3, theta: PI / 4.0 };
        let x = g.element(c(0.2, 0.0), 1);
        let lhs = d.eval(&x, &spec).unwrap() * d.eval(&g.neg(&x).unwrap(), &spec).unwrap();
        let p0 = d.at_identity(&spec).unwrap();
        let rhs = p0 * p0 * g.gaussian(&x).unwrap();
        assert!((lhs - rhs).norm() < 1e-8);
    }
}
