//! Faddeev–Volkov weights, their star and Weil transforms, and the IRF
//! weight `M(x, y, z) = chi(x, y) What_z(x, y)` with its closed forms.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::cmath::{c, powi, C64, I, ONE, PI, TAU};
use crate::error::{Error, Result};
use crate::lca::{GroupElement, GroupId, SubgroupB};
use crate::numerics::{sum_bilateral, try_integrate_circle, try_integrate_periodic, NumericsSpec, QuadratureResult};
use crate::qdilog::{faddeev_phi_zero_closed, qpochhammer, theta_q, DilogSpec, PochIndex};
use crate::transforms::{special_b, WeilFunction};

/// Relative separation below which two poles count as coincident.
const POLE_MERGE: f64 = 1e-9;

fn nonzero(z: C64) -> Result<C64> {
    if z.norm() < 1e-14 {
        Err(Error::PoleHit)
    } else {
        Ok(z)
    }
}

/// Weights built from one dilogarithm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightEvaluator {
    pub dilog: DilogSpec,
    pub subgroup: SubgroupB,
    pub numerics: NumericsSpec,
}

impl WeightEvaluator {
    pub fn new(dilog: DilogSpec, numerics: NumericsSpec) -> Result<Self> {
        dilog.validate()?;
        numerics.validate()?;
        Ok(WeightEvaluator { dilog, subgroup: SubgroupB::of(dilog.group()), numerics })
    }

    pub fn group(&self) -> GroupId {
        self.subgroup.group
    }

    pub fn phi(&self, x: &GroupElement) -> Result<C64> {
        self.dilog.eval(x, &self.numerics)
    }

    fn phi0(&self) -> Result<C64> {
        match self.dilog {
            DilogSpec::Faddeev { b } => Ok(faddeev_phi_zero_closed(b)),
            _ => self.dilog.at_identity(&self.numerics),
        }
    }

    /// `W_lambda(x) = phi(x - lambda) phi(-x - lambda) / (phi(0)^2 <x> <lambda>)`.
    pub fn fv_weight(&self, lambda: &GroupElement, x: &GroupElement) -> Result<C64> {
        let g = self.group();
        let a = self.phi(&g.sub(x, lambda)?)?;
        let b = self.phi(&g.sub(&g.neg(x)?, lambda)?)?;
        let p0 = self.phi0()?;
        Ok(a * b / nonzero(p0 * p0 * g.gaussian(x)? * g.gaussian(lambda)?)?)
    }

    /// `W_lambda(x) = phi(x - lambda) <x, lambda> / phi(x + lambda)`.
    pub fn fv_weight_ratio(&self, lambda: &GroupElement, x: &GroupElement) -> Result<C64> {
        let g = self.group();
        let a = self.phi(&g.sub(x, lambda)?)?;
        let b = nonzero(self.phi(&g.add(x, lambda)?)?)?;
        Ok(a * g.fourier_kernel(x, lambda)? / b)
    }

    /// Star weight `S_lambda(y) = integral over A of <y, z> W_lambda(z) dz`
    /// on `T x Z`. For repeated evaluation at one `lambda` use [`StarTable`].
    pub fn star_weight(&self, lambda: &GroupElement, y: &GroupElement) -> Result<QuadratureResult> {
        StarTable::new(self, *lambda)?.eval(y)
    }

    /// `What_lambda(s, t) = sum over k of W_lambda(s + b_k) <t, b_k>`.
    pub fn weil_weight(&self, lambda: &GroupElement, s: &GroupElement, t: &GroupElement) -> Result<QuadratureResult> {
        let g = self.group();
        g.check(t)?;
        sum_bilateral(
            &|k| {
                let b = self.subgroup.generator(k);
                let w = self.fv_weight(lambda, &g.add(s, &b)?)?;
                if w == C64::new(0.0, 0.0) {
                    return Ok(w);
                }
                Ok(w * g.fourier_kernel(t, &b)?)
            },
            &self.numerics,
        )
    }

    /// `What` as an integral over `A/B` of a product of two transforms of `phi`:
    /// `[phi(0)^2 <s> <lambda>]^{-1} integral phihat(s - lambda, y + t - s - eps) phihat(-s - lambda, y) dy`.
    ///
    /// The contour is placed inside the region where both transforms are
    /// given by convergent series: a circle in the annulus
    /// `max(1, |s|/|t|) < r < min(|lambda|/|t|, |s lambda|)` on `T x Z`, a
    /// horizontal line at the midpoint of the admissible height interval on `R`.
    pub fn weil_weight_factored(
        &self,
        lambda: &GroupElement,
        s: &GroupElement,
        t: &GroupElement,
    ) -> Result<QuadratureResult> {
        self.weil_weight_factored_with(lambda, s, t, &self.group().epsilon())
    }

    /// [`Self::weil_weight_factored`] with an explicit representative `eps`
    /// of the class `epsilon + B`.
    pub fn weil_weight_factored_with(
        &self,
        lambda: &GroupElement,
        s: &GroupElement,
        t: &GroupElement,
        eps: &GroupElement,
    ) -> Result<QuadratureResult> {
        let g = self.group();
        g.check(lambda)?;
        g.check(s)?;
        g.check(t)?;
        let fc = WeilFunction::of_dilog(self.dilog, self.numerics);
        let p0 = self.phi0()?;
        let pre = nonzero(p0 * p0 * g.gaussian(s)? * g.gaussian(lambda)?)?.inv();
        let a = g.sub(s, lambda)?;
        let b = g.sub(&g.neg(s)?, lambda)?;
        let shift = g.sub(&g.sub(t, s)?, eps)?;
        let r = match g {
            GroupId::CircleTimesIntegers => {
                let (s1, t1, l1) = (s.coord().norm(), t.coord().norm(), lambda.coord().norm());
                let lo = 1f64.max(s1 / t1);
                let hi = (l1 / t1).min(s1 * l1);
                let r = self.numerics.contour_radius.unwrap_or((lo * hi).sqrt());
                if !(lo < r && r < hi) {
                    return Err(Error::OutOfDomain("factored Weil weight: empty contour annulus"));
                }
                try_integrate_circle(
                    &|v| {
                        let y = GroupElement::CircleInt(v, 0);
                        Ok(fc.eval(&a, &g.add(&y, &shift)?)? * fc.eval(&b, &y)? / v)
                    },
                    r,
                    &self.numerics,
                )?
            }
            GroupId::RealLine => {
                let (si, ti, li) = (s.coord().im, t.coord().im, lambda.coord().im);
                let delta = contour_height(si, ti, li, self.numerics.contour_shift)?;
                try_integrate_periodic(
                    &|u| {
                        let y = GroupElement::Real(c(u, delta));
                        Ok(fc.eval(&a, &g.add(&y, &shift)?)? * fc.eval(&b, &y)?)
                    },
                    &self.numerics,
                )?
            }
            GroupId::RealTimesCyclic(_) => return Err(Error::UnsupportedGroup),
        };
        Ok(QuadratureResult { value: pre * r.value, error_estimate: pre.norm() * r.error_estimate, ..r })
    }

    /// `M(x, y, z) = chi(x, y) What_z(x, y)`.
    pub fn irf_weight_m(&self, x: &GroupElement, y: &GroupElement, z: &GroupElement) -> Result<QuadratureResult> {
        let chi = self.group().bicharacter(x, y)?;
        let r = self.weil_weight(z, x, y)?;
        Ok(QuadratureResult { value: chi * r.value, error_estimate: chi.norm() * r.error_estimate, ..r })
    }

    /// `M` on `T x Z` written as a single sum over `B`:
    /// `sum over b of W_z((x, b)) y^b`. Depends on `x`, `y` only through
    /// their circle coordinates.
    pub fn irf_weight_bhatb(&self, z: &GroupElement, x: &GroupElement, y: &GroupElement) -> Result<QuadratureResult> {
        let g = self.group();
        if g != GroupId::CircleTimesIntegers {
            return Err(Error::UnsupportedGroup);
        }
        g.check(x)?;
        g.check(y)?;
        let (x1, y1) = (x.coord(), y.coord());
        sum_bilateral(
            &|b| {
                let w = self.fv_weight(z, &GroupElement::CircleInt(x1, b))?;
                if w == C64::new(0.0, 0.0) {
                    return Ok(w);
                }
                Ok(w * powi(y1, b))
            },
            &self.numerics,
        )
    }
}

/// Imaginary part of the contour for the factored `What` on `R`.
///
/// Both transforms converge when the height lies in
/// `(max(Im lambda - Im t, Im s + Im lambda), min(0, Im s - Im t))`; the
/// midpoint is used unless `requested` lies inside.
pub fn contour_height(s_im: f64, t_im: f64, lambda_im: f64, requested: Option<f64>) -> Result<f64> {
    let lo = (lambda_im - t_im).max(s_im + lambda_im);
    let hi = (s_im - t_im).min(0.0);
    if !(lo < hi) {
        return Err(Error::OutOfDomain("no admissible contour height"));
    }
    Ok(match requested {
        Some(d) if lo < d && d < hi => d,
        Some(_) => return Err(Error::OutOfDomain("contour height outside the admissible interval")),
        None => 0.5 * (lo + hi),
    })
}

/// Fourier coefficients of `W_lambda` on the unit circle, cached, and the
/// star weight assembled from them.
pub struct StarTable<'a> {
    eval: &'a WeightEvaluator,
    lambda: GroupElement,
    cache: RefCell<BTreeMap<(i64, i64), C64>>,
}

impl<'a> StarTable<'a> {
    pub fn new(eval: &'a WeightEvaluator, lambda: GroupElement) -> Result<Self> {
        if eval.group() != GroupId::CircleTimesIntegers {
            return Err(Error::UnsupportedGroup);
        }
        eval.group().check(&lambda)?;
        Ok(StarTable { eval, lambda, cache: RefCell::new(BTreeMap::new()) })
    }

    /// `c_n(e) = (1/2 pi i) contour integral of w^{e-1} W_lambda((w, n)) dw` on `|w| = 1`.
    pub fn coefficient(&self, n: i64, e: i64) -> Result<C64> {
        if let Some(v) = self.cache.borrow().get(&(n, e)) {
            return Ok(*v);
        }
        let r = try_integrate_circle(
            &|w| Ok(powi(w, e - 1) * self.eval.fv_weight(&self.lambda, &GroupElement::CircleInt(w, n))?),
            1.0,
            &self.eval.numerics,
        )?;
        self.cache.borrow_mut().insert((n, e), r.value);
        Ok(r.value)
    }

    /// `S_lambda(y) = sum over n of y^n c_n(e)` for `y = (y, e)`.
    pub fn eval(&self, y: &GroupElement) -> Result<QuadratureResult> {
        self.eval.group().check(y)?;
        let (y1, e) = (y.coord(), y.index());
        sum_bilateral(&|n| Ok(powi(y1, n) * self.coefficient(n, e)?), &self.eval.numerics)
    }

    pub fn lambda(&self) -> &GroupElement {
        &self.lambda
    }
}

/// Representation used by [`tropical_irf_m`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MRep {
    Contour,
    Sum,
    Residue,
}

/// Checks the domain of a tropical `M` representation.
pub fn tropical_m_domain(x: C64, y: C64, z: C64, rep: MRep) -> Result<()> {
    let ok = match rep {
        MRep::Sum => (y / z).norm() < 1.0 && (z * y).norm() > 1.0,
        MRep::Contour | MRep::Residue => x.norm().max(y.norm()) < z.norm().min((x * y * z).norm()),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfDomain(match rep {
            MRep::Sum => "tropical M sum needs |y/z| < 1 < |zy|",
            _ => "tropical M contour needs max(|x|,|y|) < min(|z|,|xyz|)",
        }))
    }
}

/// Radius of the circle separating `{x, y}` from `{z, xyz}`: the
/// geometric mean of the annulus bounds, or `requested` if inside.
pub fn irf_contour_radius(x: C64, y: C64, z: C64, requested: Option<f64>) -> Result<f64> {
    let lo = x.norm().max(y.norm());
    let hi = z.norm().min((x * y * z).norm());
    if !(lo < hi) {
        return Err(Error::OutOfDomain("empty contour annulus for M"));
    }
    match requested {
        Some(r) if lo < r && r < hi => Ok(r),
        Some(_) => Err(Error::OutOfDomain("contour radius outside the annulus")),
        None => Ok((lo * hi).sqrt()),
    }
}

/// Tropical IRF weight at `x = (x, k)`, `y = (y, l)`, spectral `z = (z, m)`.
/// Independent of `k` and `l`.
///
/// `Residue` sums the residues at `v = x` and `v = y`, plus for `m < 0` the
/// residue at `v = 0`, taken as a Laurent coefficient of
/// `1 / prod (v - a_j)`.
#[allow(clippy::too_many_arguments)]
pub fn tropical_irf_m(
    x: C64,
    _k: i64,
    y: C64,
    _l: i64,
    z: C64,
    m: i64,
    rep: MRep,
    spec: &NumericsSpec,
) -> Result<QuadratureResult> {
    tropical_m_domain(x, y, z, rep)?;
    let xyz = x * y * z;
    let pre = (x - z) * y * (ONE - x * z) / powi(xyz, m);
    let poles = [x, y, z, xyz];
    match rep {
        MRep::Sum => {
            // Far from the kinks the three powers combine into one, which
            // keeps large-|n| terms from over- or underflowing separately.
            let (xm, a, b, cc) = (powi(x, m), x / z, (x * z).inv(), z * y);
            let high = xm * powi(a, -m) * powi(b, m);
            sum_bilateral(
                &|n| {
                    Ok(if n >= m.abs() {
                        high * powi(y / z, n)
                    } else if n <= -m.abs() {
                        xm * powi(cc, n)
                    } else {
                        xm * powi(a, (n - m).max(0)) * powi(b, (n + m).max(0)) * powi(cc, n)
                    })
                },
                spec,
            )
        }
        MRep::Contour => {
            let r = irf_contour_radius(x, y, z, spec.contour_radius)?;
            let f = |v: C64| -> C64 {
                powi(v, 2 * m + 1) / ((v - poles[0]) * (v - poles[1]) * (v - poles[2]) * (v - poles[3]))
            };
            let res = crate::numerics::integrate_circle(&f, r, spec)?;
            Ok(QuadratureResult { value: pre * res.value, error_estimate: pre.norm() * res.error_estimate, ..res })
        }
        MRep::Residue => {
            if (x - y).norm() < POLE_MERGE * x.norm().max(y.norm()).max(1.0) {
                return Err(Error::DegeneratePoles);
            }
            let mut s = inner_residues(&poles, 2 * m + 1);
            if 2 * m + 1 < 0 {
                s += residue_at_origin(&poles, m);
            }
            Ok(QuadratureResult::exact(pre * s))
        }
    }
}

/// Residues of `v^p / prod (v - a_j)` at `a_0` and `a_1`.
fn inner_residues(a: &[C64; 4], p: i64) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for i in 0..2 {
        let mut d = ONE;
        for (j, aj) in a.iter().enumerate() {
            if j != i {
                d *= a[i] - aj;
            }
        }
        s += powi(a[i], p) / d;
    }
    s
}

/// Residue at `v = 0` of `v^{2m+1} / prod (v - a_j)` for `m < 0`: the
/// coefficient of `v^{-2m-2}` in `prod (-1/a_j) * sum_p h_p(1/a) v^p`.
fn residue_at_origin(a: &[C64; 4], m: i64) -> C64 {
    let p = (-2 * m - 2) as usize;
    let mut pre = ONE;
    // h[k] accumulates complete homogeneous polynomials in the processed variables.
    let mut h: Vec<C64> = alloc::vec![C64::new(0.0, 0.0); p + 1];
    h[0] = ONE;
    for aj in a {
        let w = aj.inv();
        pre *= -w;
        for k in 1..=p {
            let prev = h[k - 1];
            h[k] += w * prev;
        }
    }
    pre * h[p]
}

/// Faddeev IRF weight on `R` as a periodic integral of two transforms of `Phi_b`:
/// `phi(0)^{-2} e^{pi i (xy - x^2 - z^2)} integral phihat(x - z, u + y - x - 1/2) phihat(-x - z, u) du`.
pub fn faddeev_irf_m(b: C64, x: C64, y: C64, z: C64, spec: &NumericsSpec) -> Result<QuadratureResult> {
    let dilog = DilogSpec::Faddeev { b };
    dilog.validate()?;
    let delta = contour_height(x.im, y.im, z.im, spec.contour_shift)?;
    let fc = WeilFunction::of_dilog(dilog, *spec);
    let p0 = faddeev_phi_zero_closed(b);
    let pre = (I * PI * (x * y - x * x - z * z)).exp() / (p0 * p0);
    let e = |w: C64| GroupElement::Real(w);
    let r = try_integrate_periodic(
        &|u| {
            let u = c(u, delta);
            Ok(fc.eval(&e(x - z), &e(u + y - x - 0.5))? * fc.eval(&e(-x - z), &e(u))?)
        },
        spec,
    )?;
    Ok(QuadratureResult { value: pre * r.value, error_estimate: pre.norm() * r.error_estimate, ..r })
}

/// [`faddeev_irf_m`] at `b = e^{i pi/6}` with the integrand written in
/// theta functions and q-Pochhammer symbols, `q = e^{i pi b^2}`.
pub fn faddeev_irf_m_special(x: C64, y: C64, z: C64, spec: &NumericsSpec) -> Result<QuadratureResult> {
    let b = special_b();
    let q = (I * PI * b * b).exp();
    let q2 = q * q;
    let bb = b.conj();
    let delta = contour_height(x.im, y.im, z.im, spec.contour_shift)?;
    let p = |a: C64| qpochhammer(a, q2, PochIndex::Infinite);
    let th = |a: C64| theta_q(q, a);
    let e = |w: C64| w.exp();
    let p0 = faddeev_phi_zero_closed(b);
    let pre = p(q2)? * p(q2)? * p(-e(TAU * I * (x - z)))? * p(-e(-TAU * I * (x + z)))?
        / nonzero(
            e(I * PI * (x * x + z * z - x * y)) * p0 * p0 * th(-e(TAU * bb * (x - z)))? * th(-e(-TAU * bb * (x + z)))?,
        )?;
    let r = try_integrate_periodic(
        &|u| {
            let u = c(u, delta);
            let num = th(e(TAU * I * (I * bb * (z - x) + x - y - u)))? * th(-e(TAU * I * (I * bb * (x + z) - u)))?;
            let den = p(-e(TAU * I * (x - y - u)))?
                * p(e(TAU * I * (u + y - z)))?
                * p(e(-TAU * I * u))?
                * p(-e(TAU * I * (u - x - z)))?;
            Ok(num / nonzero(den)?)
        },
        spec,
    )?;
    Ok(QuadratureResult { value: pre * r.value, error_estimate: pre.norm() * r.error_estimate, ..r })
}

/// DGG IRF weight at `x = (x, k)`, `y = (y, l)`, spectral `z = (z, m)` as a
/// contour integral of theta brackets over a q-Pochhammer quartet.
/// Independent of `k` and `l`; reduces to the tropical weight at `q = 0`.
#[allow(clippy::too_many_arguments)]
pub fn dgg_irf_m(
    q: f64,
    x: C64,
    k: i64,
    y: C64,
    l: i64,
    z: C64,
    m: i64,
    spec: &NumericsSpec,
) -> Result<QuadratureResult> {
    if q.abs() >= 1.0 {
        return Err(Error::DivergentParameter);
    }
    if q == 0.0 {
        return tropical_irf_m(x, k, y, l, z, m, MRep::Contour, spec);
    }
    let r = irf_contour_radius(x, y, z, spec.contour_radius)?;
    let qc = c(q, 0.0);
    let q2 = qc * qc;
    let p = |a: C64| qpochhammer(a, q2, PochIndex::Infinite);
    let th = |a: C64| theta_q(qc, a);
    let xyz = x * y * z;
    let pre = p(q2)? * p(q2)? * p(x * x / (z * z))? * p((x * x * z * z).inv())? / powi(xyz, m);
    let (t_xz, t_qxz) = (nonzero(th(x / z)?)?, nonzero(th(qc * x / z)?)?);
    let (t_ixz, t_qixz) = (nonzero(th((x * z).inv())?)?, nonzero(th(qc / (x * z))?)?);
    let xy2z = x * y * y * z;
    let res = try_integrate_circle(
        &|v| {
            let v2 = v * v;
            let a = th(v2 / (x * z))? / t_xz + v * th(qc * v2 / (x * z))? / (x * t_qxz);
            let b = th(v2 / xy2z)? / t_ixz + v * th(qc * v2 / xy2z)? / (y * t_qixz);
            let d = p(x * x / v2)? * p(v2 / (z * z))? * p(y * y / v2)? * p(v2 / (xyz * xyz))?;
            Ok(a * b * powi(v, 2 * m - 1) / nonzero(d)?)
        },
        r,
        spec,
    )?;
    Ok(QuadratureResult { value: pre * res.value, error_estimate: pre.norm() * res.error_estimate, ..res })
}
