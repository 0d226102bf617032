//! Weil transforms along `B`, their closed forms, and the bilateral
//! `1psi1` summation used to derive them.

use alloc::boxed::Box;

use crate::cmath::{c, cis, powi, C64, I, ONE, PI, TAU, ZERO};
use crate::error::{Error, Result};
use crate::lca::{GroupElement, GroupId, SubgroupB};
use crate::numerics::{sum_bilateral, try_integrate_circle, try_integrate_periodic, NumericsSpec, QuadratureResult};
use crate::qdilog::{qpochhammer, theta_q, DilogSpec, PochIndex};

/// Smallest acceptable modulus of a denominator factor in closed forms.
const POLE_TOL: f64 = 1e-14;

/// The parameter `b = e^{i pi/6}` at which the Faddeev transform has a closed form.
pub fn special_b() -> C64 {
    cis(PI / 6.0)
}

fn is_special_b(b: C64) -> bool {
    (b - special_b()).norm() < 1e-14
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Series,
    ClosedForm,
}

type WeilEval<'a> = Box<dyn Fn(&GroupElement, &GroupElement) -> Result<C64> + 'a>;

/// A function on `A x A`, quasi-periodic in the first argument and periodic
/// in the second under shifts by `B`.
pub struct WeilFunction<'a> {
    pub subgroup: SubgroupB,
    pub provenance: Provenance,
    eval: WeilEval<'a>,
}

impl<'a> WeilFunction<'a> {
    pub fn new(
        subgroup: SubgroupB,
        provenance: Provenance,
        eval: impl Fn(&GroupElement, &GroupElement) -> Result<C64> + 'a,
    ) -> Self {
        WeilFunction { subgroup, provenance, eval: Box::new(eval) }
    }

    pub fn eval(&self, x: &GroupElement, y: &GroupElement) -> Result<C64> {
        (self.eval)(x, y)
    }
}

impl WeilFunction<'static> {
    /// Transform of `phi` by direct summation.
    pub fn series_of(dilog: DilogSpec, spec: NumericsSpec) -> Self {
        let sub = SubgroupB::of(dilog.group());
        WeilFunction::new(sub, Provenance::Series, move |x, y| {
            weil_forward(&sub, &|p| dilog.eval(p, &spec), x, y, &spec).map(|r| r.value)
        })
    }

    /// Transform of `phi`, using a closed form when one is known.
    pub fn of_dilog(dilog: DilogSpec, spec: NumericsSpec) -> Self {
        let sub = SubgroupB::of(dilog.group());
        match dilog {
            DilogSpec::Tropical => WeilFunction::new(sub, Provenance::ClosedForm, |x, y| match (*x, *y) {
                (GroupElement::CircleInt(u, m), GroupElement::CircleInt(v, n)) => tropical_weil_phi(u, m, v, n),
                _ => Err(Error::GroupMismatch),
            }),
            DilogSpec::Dgg { q } => WeilFunction::new(sub, Provenance::ClosedForm, move |x, y| match (*x, *y) {
                (GroupElement::CircleInt(u, m), GroupElement::CircleInt(v, n)) => dgg_weil_phi(q, u, m, v, n),
                _ => Err(Error::GroupMismatch),
            }),
            DilogSpec::Faddeev { b } if is_special_b(b) => {
                WeilFunction::new(sub, Provenance::ClosedForm, |x, y| match (*x, *y) {
                    (GroupElement::Real(x), GroupElement::Real(y)) => wgz_phi_special(x, y),
                    _ => Err(Error::GroupMismatch),
                })
            }
            _ => WeilFunction::series_of(dilog, spec),
        }
    }
}

/// `sum over k of f(x + b_k) <y, b_k>`.
pub fn weil_forward(
    sub: &SubgroupB,
    f: &dyn Fn(&GroupElement) -> Result<C64>,
    x: &GroupElement,
    y: &GroupElement,
    spec: &NumericsSpec,
) -> Result<QuadratureResult> {
    let g = sub.group;
    g.check(x)?;
    g.check(y)?;
    sum_bilateral(
        &|k| {
            let b = sub.generator(k);
            let v = f(&g.add(x, &b)?)?;
            if v == ZERO {
                return Ok(ZERO);
            }
            Ok(v * g.fourier_kernel(y, &b)?)
        },
        spec,
    )
}

/// `integral over A/B of fc(x, t) dt`, the inverse of [`weil_forward`].
///
/// The fundamental domain is `[0,1) + i shift` on `R`, the circle of radius
/// `r` on `T x Z`, and `[0, 1/sqrt N) + i shift` times all residues on
/// `R x Z/NZ`. `shift` and `r` come from `NumericsSpec` (defaults 0 and 1).
pub fn weil_inverse(
    sub: &SubgroupB,
    fc: &WeilFunction,
    x: &GroupElement,
    spec: &NumericsSpec,
) -> Result<QuadratureResult> {
    let g = sub.group;
    g.check(x)?;
    let shift = spec.contour_shift.unwrap_or(0.0);
    match g {
        GroupId::RealLine => try_integrate_periodic(&|u| fc.eval(x, &GroupElement::Real(c(u, shift))), spec),
        GroupId::CircleTimesIntegers => {
            let r = spec.contour_radius.unwrap_or(1.0);
            try_integrate_circle(&|v| Ok(fc.eval(x, &GroupElement::CircleInt(v, 0))? / v), r, spec)
        }
        GroupId::RealTimesCyclic(n) => {
            let sn = (n as f64).sqrt();
            try_integrate_periodic(
                &|u| {
                    let mut s = ZERO;
                    for j in 0..n as i64 {
                        s += fc.eval(x, &g.element(c(u / sn, shift), j))?;
                    }
                    Ok(s / n as f64)
                },
                spec,
            )
        }
    }
}

fn nonzero(z: C64) -> Result<C64> {
    if z.norm() < POLE_TOL {
        Err(Error::PoleHit)
    } else {
        Ok(z)
    }
}

/// Closed form of the transform of `Phi_b` at `b = e^{i pi/6}`.
///
/// Agrees with the series where `|e^{2 pi i x}| < |e^{-2 pi i y}| < 1`.
pub fn wgz_phi_special(x: C64, y: C64) -> Result<C64> {
    let b = special_b();
    let q = (I * PI * b * b).exp();
    let q2 = q * q;
    let bb = b.conj();
    let e = |w: C64| w.exp();
    let inf = PochIndex::Infinite;
    let num =
        qpochhammer(q2, q2, inf)? * qpochhammer(-e(TAU * I * x), q2, inf)? * theta_q(q, -e(TAU * (bb * x - I * y)))?;
    let den = nonzero(qpochhammer(e(-TAU * I * y), q2, inf)?)?
        * nonzero(qpochhammer(-e(TAU * I * (x + y)), q2, inf)?)?
        * nonzero(theta_q(q, -e(TAU * bb * x))?)?;
    Ok(num / den)
}

/// Closed form of the tropical transform: `v^{-m} (u-1) v / ((v-1)(uv-1))`.
/// Independent of `n`.
pub fn tropical_weil_phi(u: C64, m: i64, v: C64, _n: i64) -> Result<C64> {
    let d = nonzero(v - ONE)? * nonzero(u * v - ONE)?;
    Ok(powi(v, -m) * (u - ONE) * v / d)
}

/// Closed form of the DGG transform. Independent of `n`; at `q = 0` it
/// coincides with [`tropical_weil_phi`].
pub fn dgg_weil_phi(q: f64, u: C64, m: i64, v: C64, n: i64) -> Result<C64> {
    if q.abs() >= 1.0 {
        return Err(Error::DivergentParameter);
    }
    if q == 0.0 {
        return tropical_weil_phi(u, m, v, n);
    }
    let qc = c(q, 0.0);
    let q2 = qc * qc;
    let inf = PochIndex::Infinite;
    let v2 = v * v;
    let u2 = u * u;
    let pre = qpochhammer(q2, q2, inf)? * qpochhammer(u2, q2, inf)?
        / (nonzero(qpochhammer(v2.inv(), q2, inf)?)? * nonzero(qpochhammer(u2 * v2, q2, inf)?)?);
    let bracket = theta_q(qc, u * v2)? / nonzero(theta_q(qc, u)?)?
        + v * theta_q(qc, qc * u * v2)? / nonzero(theta_q(qc, qc * u)?)?;
    Ok(powi(v, -m) * pre * bracket)
}

/// Both sides of the `1psi1` summation
/// `sum_k (a;q)_k/(b;q)_k z^k = (q,b/a,az,q/(az);q) / (b,q/a,z,b/(az);q)`.
///
/// When `b = q` every negative-index term vanishes and the identity becomes
/// the q-binomial theorem, valid for `|z| < 1`; the right side is then
/// evaluated in its cancelled form `(az;q)/(z;q)`.
pub fn ramanujan_1psi1(a: C64, b: C64, z: C64, q: C64, spec: &NumericsSpec) -> Result<(C64, C64)> {
    if q.norm() >= 1.0 {
        return Err(Error::DivergentParameter);
    }
    let binomial = (b - q).norm() < 1e-15;
    if !(z.norm() < 1.0) || (!binomial && !((b / a).norm() < z.norm())) {
        return Err(Error::OutOfDomain("1psi1 needs |b/a| < |z| < 1"));
    }
    let term = |k: i64| -> Result<C64> {
        if k >= 0 {
            let mut r = ONE;
            let mut qj = ONE;
            for _ in 0..k {
                r *= (ONE - a * qj) / nonzero(ONE - b * qj)?;
                qj *= q;
            }
            Ok(r * powi(z, k))
        } else {
            // (1 - b q^{-j}) / (1 - a q^{-j}) written as (q^j - b) / (q^j - a),
            // which stays finite for large j.
            let mut r = ONE;
            let mut qj = q;
            for _ in 0..(-k) {
                let top = qj - b;
                if top.norm() < POLE_TOL * b.norm().max(1.0) {
                    return Ok(ZERO);
                }
                r *= top / nonzero(qj - a)?;
                qj *= q;
            }
            Ok(r * powi(z, k))
        }
    };
    let lhs = sum_bilateral(&term, &spec.with_tol(spec.abs_tol.min(1e-15)))?.value;
    let inf = PochIndex::Infinite;
    let p = |x: C64| qpochhammer(x, q, inf);
    let rhs = if binomial {
        p(a * z)? / nonzero(p(z)?)?
    } else {
        p(q)? * p(b / a)? * p(a * z)? * p(q / (a * z))?
            / (nonzero(p(b)?)? * nonzero(p(q / a)?)? * nonzero(p(z)?)? * nonzero(p(b / (a * z))?)?)
    };
    Ok((lhs, rhs))
}
