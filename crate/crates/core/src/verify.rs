//! Identity checks. Each check evaluates both sides of one identity at one
//! or more parameter points and reports the worst residual.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::cmath::{c, cis, powi, C64, I, ONE, PI, TAU, ZERO};
use crate::error::{Error, Result};
use crate::lca::{GroupElement, GroupId, SubgroupB};
use crate::numerics::{integrate_circle, sum_bilateral, try_integrate_circle, NumericsSpec};
use crate::qdilog::{faddeev_phi, DilogSpec, Representation};
use crate::transforms::{dgg_weil_phi, ramanujan_1psi1, special_b, tropical_weil_phi, weil_forward, wgz_phi_special};
use crate::weights::{dgg_irf_m, irf_contour_radius, tropical_irf_m, MRep, StarTable, WeightEvaluator};

/// Seeded linear congruential generator (MMIX constants). The top 53 bits
/// of the state give uniform doubles in `[0, 1)`.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    const A: u64 = 6364136223846793005;
    const C: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        let mut g = Lcg { state: seed };
        g.next_u64();
        g
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(Self::A).wrapping_add(Self::C);
        self.state
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as f64;
        lo + ((self.next_f64() * span) as i64).min(hi - lo)
    }

    /// Complex number with modulus uniform in `[rlo, rhi]` and uniform phase.
    pub fn polar(&mut self, rlo: f64, rhi: f64) -> C64 {
        let r = self.uniform(rlo, rhi);
        cis(self.uniform(0.0, TAU)) * r
    }
}

/// A labelled parameter value in a report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Param {
    Complex(C64),
    Int(i64),
    Real(f64),
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub identity: String,
    pub group: Option<GroupId>,
    pub dilog: Option<DilogSpec>,
    pub point: Vec<(String, Param)>,
    pub lhs: C64,
    pub rhs: C64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub nodes: usize,
    pub passed: bool,
    /// Advisory checks never affect suite outcome.
    pub advisory: bool,
    /// The input was a documented degenerate case and nothing was asserted.
    pub skipped: bool,
    pub error: Option<Error>,
    pub note: Option<String>,
}

impl VerificationReport {
    fn new(identity: &str, group: Option<GroupId>, dilog: Option<DilogSpec>, tolerance: f64) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            group,
            dilog,
            point: Vec::new(),
            lhs: ZERO,
            rhs: ZERO,
            abs_residual: 0.0,
            rel_residual: 0.0,
            tolerance,
            nodes: 0,
            passed: false,
            advisory: false,
            skipped: false,
            error: None,
            note: None,
        }
    }

    /// A report for a check that could not be evaluated.
    pub fn failed(identity: &str, group: Option<GroupId>, dilog: Option<DilogSpec>, error: Error) -> Self {
        let mut r = VerificationReport::new(identity, group, dilog, 0.0);
        r.note = Some(error.to_string());
        r.error = Some(error);
        r
    }

    fn with(mut self, label: &str, p: Param) -> Self {
        self.point.push((label.to_string(), p));
        self
    }

    fn finish(mut self, w: &Worst) -> Self {
        self.lhs = w.lhs;
        self.rhs = w.rhs;
        self.abs_residual = w.abs;
        self.rel_residual = w.rel;
        self.nodes = w.nodes;
        self.passed = w.seen && (w.abs <= self.tolerance || w.rel <= self.tolerance);
        self
    }

    fn skip(mut self, note: &str) -> Self {
        self.skipped = true;
        self.passed = true;
        self.note = Some(note.to_string());
        self
    }

    /// Counts toward a suite's pass/fail.
    pub fn gating(&self) -> bool {
        !self.advisory && !self.skipped
    }
}

/// Tracks the sample with the largest `min(abs, rel)` residual.
#[derive(Clone, Copy, Debug, Default)]
struct Worst {
    lhs: C64,
    rhs: C64,
    abs: f64,
    rel: f64,
    nodes: usize,
    seen: bool,
}

impl Worst {
    fn push(&mut self, lhs: C64, rhs: C64) {
        let abs = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm());
        let rel = if scale > 0.0 { abs / scale } else { 0.0 };
        let abs = if abs.is_nan() { f64::INFINITY } else { abs };
        let rel = if rel.is_nan() { f64::INFINITY } else { rel };
        if !self.seen || abs.min(rel) > self.abs.min(self.rel) {
            self.lhs = lhs;
            self.rhs = rhs;
            self.abs = abs;
            self.rel = rel;
        }
        self.seen = true;
    }

    fn nodes(&mut self, n: usize) {
        self.nodes = self.nodes.max(n);
    }
}

/// Tightens the quadrature tolerance two orders below `target`.
fn tighten(spec: &NumericsSpec, target: f64) -> NumericsSpec {
    let tol = spec.abs_tol.min(target * 1e-2).max(1e-14);
    spec.with_tol(tol)
}

fn sample(g: GroupId, rng: &mut Lcg) -> GroupElement {
    match g {
        GroupId::RealLine => GroupElement::real(rng.uniform(-3.0, 3.0)),
        GroupId::RealTimesCyclic(n) => g.element(c(rng.uniform(-3.0, 3.0), 0.0), rng.int(0, n as i64 - 1)),
        GroupId::CircleTimesIntegers => GroupElement::CircleInt(cis(rng.uniform(0.0, TAU)), rng.int(-6, 6)),
    }
}

fn is_exact(d: &DilogSpec) -> bool {
    matches!(d, DilogSpec::Tropical | DilogSpec::Dgg { .. })
}

/// `phi(x) phi(-x) = phi(0)^2 <x>` at seeded on-group samples.
pub fn check_inversion(dilog: DilogSpec, samples: usize, seed: u64, spec: &NumericsSpec) -> Result<VerificationReport> {
    dilog.validate()?;
    let g = dilog.group();
    let tol = if is_exact(&dilog) { 1e-12 } else { 1e-8 };
    let spec = tighten(spec, tol);
    let mut rng = Lcg::new(seed);
    let p0 = dilog.at_identity(&spec)?;
    let mut w = Worst::default();
    for _ in 0..samples {
        let x = sample(g, &mut rng);
        let lhs = dilog.eval(&x, &spec)? * dilog.eval(&g.neg(&x)?, &spec)?;
        w.push(lhs, p0 * p0 * g.gaussian(&x)?);
    }
    Ok(VerificationReport::new("inversion", Some(g), Some(dilog), tol)
        .with("samples", Param::Int(samples as i64))
        .with("seed", Param::Int(seed as i64))
        .finish(&w))
}

/// `|Phi_b(x)| = 1` on a uniform grid of `n` points in `[lo, hi]`. Needs
/// `(1 - |b|) Im b = 0`.
pub fn check_unitarity(b: C64, lo: f64, hi: f64, n: usize, spec: &NumericsSpec) -> Result<VerificationReport> {
    let dilog = DilogSpec::Faddeev { b };
    dilog.validate()?;
    if ((1.0 - b.norm()) * b.im).abs() > 1e-12 {
        return Err(Error::OutOfDomain("unitarity needs |b| = 1 or b real"));
    }
    let tol = 1e-8;
    let spec = tighten(spec, tol);
    let mut w = Worst::default();
    for j in 0..n {
        let x = if n > 1 { lo + (hi - lo) * j as f64 / (n - 1) as f64 } else { lo };
        let v = faddeev_phi(b, c(x, 0.0), Representation::Auto, &spec)?;
        w.push(c(v.norm(), 0.0), ONE);
    }
    Ok(VerificationReport::new("unitarity", Some(GroupId::RealLine), Some(dilog), tol)
        .with("lo", Param::Real(lo))
        .with("hi", Param::Real(hi))
        .with("points", Param::Int(n as i64))
        .finish(&w))
}

/// Two representations of `Phi_b` agree on the points `xs`.
pub fn check_representation_agreement(
    b: C64,
    first: Representation,
    second: Representation,
    xs: &[f64],
    tol: f64,
    spec: &NumericsSpec,
) -> Result<VerificationReport> {
    let dilog = DilogSpec::Faddeev { b };
    let spec = tighten(spec, tol);
    let mut w = Worst::default();
    for &x in xs {
        let a = faddeev_phi(b, c(x, 0.0), first, &spec)?;
        let d = faddeev_phi(b, c(x, 0.0), second, &spec)?;
        w.push(a, d);
    }
    let name = format!("representation_agreement:{first:?}-{second:?}");
    Ok(VerificationReport::new(&name, Some(GroupId::RealLine), Some(dilog), tol)
        .with("points", Param::Int(xs.len() as i64))
        .finish(&w))
}

/// `n` seeded `(a, b, z, q)` with `|b/a| < |z| < 1` and `|q| < 1`.
pub fn psi_samples(seed: u64, n: usize) -> Vec<[C64; 4]> {
    let mut rng = Lcg::new(seed);
    (0..n)
        .map(|_| {
            let q = rng.polar(0.1, 0.6);
            let a = rng.polar(0.8, 2.0);
            let z = rng.polar(0.3, 0.9);
            let b = a * z * rng.polar(0.2, 0.8);
            [a, b, z, q]
        })
        .collect()
}

/// Ramanujan's `1psi1` summation at each `(a, b, z, q)`.
pub fn check_1psi1(params: &[[C64; 4]], spec: &NumericsSpec) -> Result<VerificationReport> {
    let tol = 1e-11;
    let spec = tighten(spec, tol);
    let mut w = Worst::default();
    for &[a, b, z, q] in params {
        let (l, r) = ramanujan_1psi1(a, b, z, q, &spec)?;
        w.push(l, r);
    }
    Ok(VerificationReport::new("1psi1", None, None, tol).with("sets", Param::Int(params.len() as i64)).finish(&w))
}

fn in_wgz_region(x: C64, y: C64) -> bool {
    y.im < 0.0 && x.im > -y.im
}

/// Series transform of `Phi_b` at `b = e^{i pi/6}` against its closed form.
pub fn check_wgz_special(points: &[(C64, C64)], spec: &NumericsSpec) -> Result<VerificationReport> {
    let tol = 1e-8;
    let spec = tighten(spec, tol);
    let dilog = DilogSpec::Faddeev { b: special_b() };
    let sub = SubgroupB::of(GroupId::RealLine);
    let mut w = Worst::default();
    for &(x, y) in points {
        if !in_wgz_region(x, y) {
            return Err(Error::OutOfDomain("series needs Im y < 0 < Im x + Im y"));
        }
        let s = weil_forward(&sub, &|p| dilog.eval(p, &spec), &GroupElement::Real(x), &GroupElement::Real(y), &spec)?;
        w.nodes(s.nodes_used);
        w.push(s.value, wgz_phi_special(x, y)?);
    }
    Ok(VerificationReport::new("wgz_special", Some(GroupId::RealLine), Some(dilog), tol)
        .with("points", Param::Int(points.len() as i64))
        .finish(&w))
}

/// Quasi-periodicity of the closed form: `f(x+1, y) = e^{-2 pi i y} f(x, y)`
/// and `f(x, y+1) = f(x, y)`.
pub fn check_wgz_quasi_periodicity(points: &[(C64, C64)]) -> Result<VerificationReport> {
    let tol = 1e-12;
    let mut w = Worst::default();
    for &(x, y) in points {
        let f = wgz_phi_special(x, y)?;
        w.push(wgz_phi_special(x + ONE, y)?, (-TAU * I * y).exp() * f);
        w.push(wgz_phi_special(x, y + ONE)?, f);
    }
    Ok(VerificationReport::new(
        "wgz_quasi_periodicity",
        Some(GroupId::RealLine),
        Some(DilogSpec::Faddeev { b: special_b() }),
        tol,
    )
    .with("points", Param::Int(points.len() as i64))
    .finish(&w))
}

/// Series Weil transform of the tropical or DGG dilogarithm against its
/// closed form at seeded points with `|u| < 1/|v| < 1`.
pub fn check_weil_closed_forms(
    dilog: DilogSpec,
    count: usize,
    seed: u64,
    spec: &NumericsSpec,
) -> Result<VerificationReport> {
    let tol = match dilog {
        DilogSpec::Tropical => 1e-12,
        DilogSpec::Dgg { .. } => 1e-10,
        _ => return Err(Error::UnsupportedGroup),
    };
    dilog.validate()?;
    let spec = tighten(spec, tol);
    let sub = SubgroupB::of(GroupId::CircleTimesIntegers);
    let mut rng = Lcg::new(seed);
    let mut w = Worst::default();
    for _ in 0..count {
        let v = rng.polar(1.1, 3.0);
        let u = rng.polar(0.05, 0.9 / v.norm());
        let (m, n) = (rng.int(-3, 3), rng.int(-3, 3));
        let s = weil_forward(
            &sub,
            &|p| dilog.eval(p, &spec),
            &GroupElement::CircleInt(u, m),
            &GroupElement::CircleInt(v, n),
            &spec,
        )?;
        let cf = match dilog {
            DilogSpec::Dgg { q } => dgg_weil_phi(q, u, m, v, n)?,
            _ => tropical_weil_phi(u, m, v, n)?,
        };
        w.nodes(s.nodes_used);
        w.push(s.value, cf);
    }
    Ok(VerificationReport::new("weil_closed_form", Some(GroupId::CircleTimesIntegers), Some(dilog), tol)
        .with("points", Param::Int(count as i64))
        .with("seed", Param::Int(seed as i64))
        .finish(&w))
}

/// Direct `What` against its factorization through two transforms of `phi`,
/// at seeded points of `T x Z`.
pub fn check_weil_weight_factorization(
    dilog: DilogSpec,
    count: usize,
    seed: u64,
    spec: &NumericsSpec,
) -> Result<VerificationReport> {
    let tol = 1e-8;
    let e = WeightEvaluator::new(dilog, tighten(spec, tol))?;
    if e.group() != GroupId::CircleTimesIntegers {
        return Err(Error::UnsupportedGroup);
    }
    let mut rng = Lcg::new(seed);
    let mut w = Worst::default();
    for _ in 0..count {
        let lam = GroupElement::CircleInt(rng.polar(2.0, 3.0), rng.int(-2, 2));
        let s = GroupElement::CircleInt(rng.polar(0.8, 1.2), rng.int(-2, 2));
        let t = GroupElement::CircleInt(rng.polar(0.8, 1.2), rng.int(-2, 2));
        let d = e.weil_weight(&lam, &s, &t)?;
        let f = e.weil_weight_factored(&lam, &s, &t)?;
        w.nodes(f.nodes_used);
        w.push(d.value, f.value);
    }
    Ok(VerificationReport::new("weil_weight_factorization", Some(e.group()), Some(dilog), tol)
        .with("points", Param::Int(count as i64))
        .with("seed", Param::Int(seed as i64))
        .finish(&w))
}

/// The factored `What` does not depend on the representative of `epsilon + B`.
pub fn check_epsilon_shift(
    dilog: DilogSpec,
    lambda: &GroupElement,
    s: &GroupElement,
    t: &GroupElement,
    spec: &NumericsSpec,
) -> Result<VerificationReport> {
    let tol = 1e-12;
    let e = WeightEvaluator::new(dilog, *spec)?;
    let g = e.group();
    let eps = g.epsilon();
    let a = e.weil_weight_factored_with(lambda, s, t, &eps)?;
    let b = e.weil_weight_factored_with(lambda, s, t, &g.add(&eps, &g.embed_b(1))?)?;
    let mut w = Worst::default();
    w.push(a.value, b.value);
    Ok(VerificationReport::new("weil_weight_epsilon_shift", Some(g), Some(dilog), tol).finish(&w))
}

/// `M(x, y + b, z) = chi(x, b) M(x, y, z)` and `M(x + b, y, z) = M(x, y, z) / chi(y, b)`
/// for `b = b_1`. On `T x Z` both factors are 1; there the single-sum form
/// is compared as well.
pub fn check_irf_quasi_invariance(
    dilog: DilogSpec,
    points: &[(GroupElement, GroupElement, GroupElement)],
    spec: &NumericsSpec,
) -> Result<VerificationReport> {
    let g = dilog.group();
    let tol = if g == GroupId::CircleTimesIntegers { 1e-11 } else { 1e-8 };
    let e = WeightEvaluator::new(dilog, tighten(spec, tol))?;
    let b = g.embed_b(1);
    let mut w = Worst::default();
    for (x, y, z) in points {
        let m = e.irf_weight_m(x, y, z)?;
        let my = e.irf_weight_m(x, &g.add(y, &b)?, z)?;
        let mx = e.irf_weight_m(&g.add(x, &b)?, y, z)?;
        w.nodes(m.nodes_used);
        w.push(my.value, g.bicharacter(x, &b)? * m.value);
        w.push(mx.value, m.value / g.bicharacter(y, &b)?);
        if g == GroupId::CircleTimesIntegers {
            let h = e.irf_weight_bhatb(z, x, y)?.value;
            let hs = e.irf_weight_bhatb(z, &g.add(x, &b)?, &g.add(y, &b)?)?.value;
            w.push(hs, h);
            w.push(m.value, h);
        }
    }
    Ok(VerificationReport::new("irf_quasi_invariance", Some(g), Some(dilog), tol)
        .with("points", Param::Int(points.len() as i64))
        .finish(&w))
}

/// Seeded points in the common domain of all three tropical `M` forms.
pub fn tropical_m_samples(seed: u64, n: usize) -> Vec<(C64, C64, C64, i64)> {
    let mut rng = Lcg::new(seed);
    (0..n)
        .map(|_| {
            let z = rng.polar(1.5, 3.0);
            let r = z.norm();
            let x = rng.polar(1.15 / r, r / 1.15);
            let y = rng.polar(1.15 / r, r / 1.15);
            (x, y, z, rng.int(-3, 3))
        })
        .collect()
}

/// Contour, sum and residue forms of the tropical `M` agree pairwise, and
/// the sum does not depend on `l`.
pub fn check_tropical_m_representations(
    points: &[(C64, C64, C64, i64)],
    spec: &NumericsSpec,
) -> Result<VerificationReport> {
    let tol = 1e-11;
    let spec = tighten(spec, tol);
    let mut w = Worst::default();
    for &(x, y, z, m) in points {
        let a = tropical_irf_m(x, 0, y, 0, z, m, MRep::Contour, &spec)?;
        let s = tropical_irf_m(x, 0, y, 0, z, m, MRep::Sum, &spec)?;
        let s5 = tropical_irf_m(x, 0, y, 5, z, m, MRep::Sum, &spec)?;
        let r = tropical_irf_m(x, 0, y, 0, z, m, MRep::Residue, &spec)?;
        w.nodes(a.nodes_used);
        w.push(a.value, s.value);
        w.push(a.value, r.value);
        w.push(s.value, r.value);
        w.push(s.value, s5.value);
    }
    Ok(VerificationReport::new(
        "tropical_m_representations",
        Some(GroupId::CircleTimesIntegers),
        Some(DilogSpec::Tropical),
        tol,
    )
    .with("points", Param::Int(points.len() as i64))
    .finish(&w))
}

fn m_factor(dilog: DilogSpec, a: C64, b: C64, z: (C64, i64), rep: MRep, spec: &NumericsSpec) -> Result<C64> {
    match dilog {
        DilogSpec::Tropical => tropical_irf_m(a, 0, b, 0, z.0, z.1, rep, spec).map(|r| r.value),
        DilogSpec::Dgg { q } => dgg_irf_m(q, a, 0, b, 0, z.0, z.1, spec).map(|r| r.value),
        _ => Err(Error::UnsupportedGroup),
    }
}

/// Boundary spins `p, q, u, v` (circle coordinates) for the IRF Yang–Baxter check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct YbeBoundary {
    pub p: C64,
    pub q: C64,
    pub u: C64,
    pub v: C64,
}

/// Both sides of the IRF Yang–Baxter relation on `T x Z`:
/// `contour integral of M(p, u/t, x) M(t, v/p, x+y) M(v, t/q, y) dt/(2 pi i t)`
/// against the same with `(u, s/p, y), (s, u/q, x+y), (q, v/s, x)`, on `|t| = |s| = 1`.
/// Tropical values are cross-checked with the residue form of `M`.
pub fn check_irf_ybe(
    dilog: DilogSpec,
    x: (C64, i64),
    y: (C64, i64),
    bd: YbeBoundary,
    spec: &NumericsSpec,
) -> Result<VerificationReport> {
    let tol = match dilog {
        DilogSpec::Tropical => 1e-8,
        DilogSpec::Dgg { .. } => 1e-6,
        _ => return Err(Error::UnsupportedGroup),
    };
    dilog.validate()?;
    let spec = tighten(spec, tol);
    let xy = (x.0 * y.0, x.1 + y.1);
    let YbeBoundary { p, q, u, v } = bd;
    // Every factor's pole annulus depends on the contour variable only through |t| = 1.
    let one = ONE;
    let factors = [(p, u, x), (one, v / p, xy), (v, one / q, y), (u, one / p, y), (one, u / q, xy), (q, v, x)];
    for (a, b, z) in factors {
        irf_contour_radius(a, b, z.0, None)?;
    }
    let sides = |rep: MRep| -> Result<(C64, C64, usize)> {
        let l = try_integrate_circle(
            &|t| {
                Ok(m_factor(dilog, p, u / t, x, rep, &spec)?
                    * m_factor(dilog, t, v / p, xy, rep, &spec)?
                    * m_factor(dilog, v, t / q, y, rep, &spec)?
                    / t)
            },
            1.0,
            &spec,
        )?;
        let r = try_integrate_circle(
            &|s| {
                Ok(m_factor(dilog, u, s / p, y, rep, &spec)?
                    * m_factor(dilog, s, u / q, xy, rep, &spec)?
                    * m_factor(dilog, q, v / s, x, rep, &spec)?
                    / s)
            },
            1.0,
            &spec,
        )?;
        Ok((l.value, r.value, l.nodes_used.max(r.nodes_used)))
    };
    let (l, r, nodes) = sides(MRep::Contour)?;
    let mut w = Worst::default();
    w.push(l, r);
    w.nodes(nodes);
    let mut note = None;
    if dilog == DilogSpec::Tropical {
        let (lr, rr, _) = sides(MRep::Residue)?;
        w.push(l, lr);
        w.push(r, rr);
        note = Some(format!("residue form: lhs {lr}, rhs {rr}"));
    }
    let mut rep = VerificationReport::new("irf_ybe", Some(GroupId::CircleTimesIntegers), Some(dilog), tol)
        .with("x", Param::Complex(x.0))
        .with("x_index", Param::Int(x.1))
        .with("y", Param::Complex(y.0))
        .with("y_index", Param::Int(y.1))
        .with("p", Param::Complex(p))
        .with("q", Param::Complex(q))
        .with("u", Param::Complex(u))
        .with("v", Param::Complex(v))
        .finish(&w);
    rep.note = note;
    Ok(rep)
}

/// The star weight `S_lambda(y)` sums `c_n(e) y^n` and converges for `1/|lambda| < |y| < |lambda|`.
fn star_domain(lambda: C64, y: C64) -> Result<()> {
    let (l, a) = (lambda.norm(), y.norm());
    if l > 1.0 && 1.0 / l < a && a < l {
        Ok(())
    } else {
        Err(Error::OutOfDomain("star weight needs 1/|lambda| < |y| < |lambda|"))
    }
}

fn ci(e: &GroupElement) -> (C64, i64) {
    (e.coord(), e.index())
}

/// Star–triangle relation on `T x Z`:
/// `integral over A of S_x(u - t) W_{x+y}(t) S_y(t - s) dt = W_y(u) S_{x+y}(u - s) W_x(s)`.
pub fn check_star_triangle(
    dilog: DilogSpec,
    x: &GroupElement,
    y: &GroupElement,
    u: &GroupElement,
    s: &GroupElement,
    spec: &NumericsSpec,
) -> Result<VerificationReport> {
    let tol = 1e-6;
    let e = WeightEvaluator::new(dilog, tighten(spec, tol))?;
    let g = e.group();
    if g != GroupId::CircleTimesIntegers {
        return Err(Error::UnsupportedGroup);
    }
    for a in [x, y, u, s] {
        g.check(a)?;
    }
    let base = VerificationReport::new("star_triangle", Some(g), Some(dilog), tol)
        .with("x", Param::Complex(x.coord()))
        .with("x_index", Param::Int(x.index()))
        .with("y", Param::Complex(y.coord()))
        .with("y_index", Param::Int(y.index()))
        .with("u", Param::Complex(u.coord()))
        .with("u_index", Param::Int(u.index()))
        .with("s", Param::Complex(s.coord()))
        .with("s_index", Param::Int(s.index()));
    if *y == g.identity() {
        return Ok(base.skip("y is the identity: S_y degenerates to a delta-like normalisation"));
    }
    let xy = g.add(x, y)?;
    star_domain(x.coord(), u.coord())?;
    star_domain(y.coord(), s.coord().inv())?;
    star_domain(xy.coord(), u.coord() / s.coord())?;
    let (sx, sy, sxy) = (StarTable::new(&e, *x)?, StarTable::new(&e, *y)?, StarTable::new(&e, xy)?);
    let lhs = sum_bilateral(
        &|tn| {
            let r = try_integrate_circle(
                &|t1| {
                    let t = GroupElement::CircleInt(t1, tn);
                    let a = sx.eval(&g.sub(u, &t)?)?.value;
                    let b = e.fv_weight(&xy, &t)?;
                    let c2 = sy.eval(&g.sub(&t, s)?)?.value;
                    Ok(a * b * c2 / t1)
                },
                1.0,
                &e.numerics,
            )?;
            Ok(r.value)
        },
        &e.numerics,
    )?;
    let rhs = e.fv_weight(y, u)? * sxy.eval(&g.sub(u, s)?)?.value * e.fv_weight(x, s)?;
    let mut w = Worst::default();
    w.push(lhs.value, rhs);
    w.nodes(lhs.nodes_used);
    Ok(base.finish(&w))
}

/// The double-integral identity preceding the star–triangle relation,
/// written through the Fourier coefficients `c^lambda_n(e)` of the weights:
/// `W_y(v) sum u^{s} v^{t} c^x_s(u' - t) c^{x+y}_t(v' - s) = W_y(u) sum u^{s} v^{t} c^{x+y}_s(u' - t) c^x_t(v' - s)`,
/// where `u = (u, u')`, `v = (v, v')`.
pub fn check_int_id(
    dilog: DilogSpec,
    x: &GroupElement,
    y: &GroupElement,
    u: &GroupElement,
    v: &GroupElement,
    spec: &NumericsSpec,
) -> Result<VerificationReport> {
    let tol = 1e-6;
    let e = WeightEvaluator::new(dilog, tighten(spec, tol))?;
    let g = e.group();
    if g != GroupId::CircleTimesIntegers {
        return Err(Error::UnsupportedGroup);
    }
    let base = VerificationReport::new("int_id", Some(g), Some(dilog), tol)
        .with("x", Param::Complex(x.coord()))
        .with("x_index", Param::Int(x.index()))
        .with("y", Param::Complex(y.coord()))
        .with("y_index", Param::Int(y.index()))
        .with("u", Param::Complex(u.coord()))
        .with("u_index", Param::Int(u.index()))
        .with("v", Param::Complex(v.coord()))
        .with("v_index", Param::Int(v.index()));
    if *y == g.identity() {
        return Ok(base.skip("y is the identity: the weight W_y degenerates"));
    }
    let xy = g.add(x, y)?;
    let ((u1, un), (v1, vn)) = (ci(u), ci(v));
    star_domain(x.coord(), u1)?;
    star_domain(xy.coord(), v1)?;
    star_domain(xy.coord(), u1)?;
    star_domain(x.coord(), v1)?;
    let (tx, txy) = (StarTable::new(&e, *x)?, StarTable::new(&e, xy)?);
    let double = |first: &StarTable, second: &StarTable| {
        sum_bilateral(
            &|sn| {
                let inner = sum_bilateral(
                    &|tn| Ok(powi(v1, tn) * first.coefficient(sn, un - tn)? * second.coefficient(tn, vn - sn)?),
                    &e.numerics,
                )?;
                Ok(powi(u1, sn) * inner.value)
            },
            &e.numerics,
        )
    };
    let l = double(&tx, &txy)?;
    let r = double(&txy, &tx)?;
    let mut w = Worst::default();
    w.push(e.fv_weight(y, v)? * l.value, e.fv_weight(y, u)? * r.value);
    w.nodes(l.nodes_used);
    Ok(base.finish(&w))
}

/// Tropical pentagon integral at `x = (x, i)`, `y = (y, j)`: for fixed
/// integer parts the three circle integrals extract Laurent coefficients, and
/// the integer sum runs over a box doubled until its value stops changing.
pub fn check_pentagon_tropical(x: (C64, i64), y: (C64, i64), spec: &NumericsSpec) -> Result<VerificationReport> {
    let tol = 1e-6;
    let g = GroupId::CircleTimesIntegers;
    let ((x1, i), (y1, j)) = (x, y);
    let lhs = powi(x1, i.max(0)) * powi(y1, j.max(0));
    // Exponents of u, w and v in Q phi(w) phi(v) phi(u) for integer parts (a, b, c).
    let extract = |p: i64| -> Result<C64> { Ok(integrate_circle(&|z| powi(z, p - 1), 1.0, spec)?.value) };
    let box_sum = |k: i64| -> Result<C64> {
        let mut total = ZERO;
        for a in -k..=k {
            for b in -k..=k {
                for cc in -k..=k {
                    let eu = (cc - j) - (a - b + cc) + a.max(0);
                    let ew = (a - i) - (a - b + cc) + cc.max(0);
                    let ev = (a - b + cc) + b.max(0);
                    let coef = extract(eu)? * extract(ew)? * extract(ev)?;
                    if coef != ZERO {
                        total += coef * powi(x1, -(cc - j)) * powi(y1, -(a - i));
                    }
                }
            }
        }
        Ok(total * g.gamma_constant())
    };
    let mut k = 2;
    let mut prev = box_sum(k)?;
    loop {
        k *= 2;
        let next = box_sum(k)?;
        if (next - prev).norm() <= tol * next.norm().max(1.0) * 1e-3 || k >= 16 {
            let mut w = Worst::default();
            w.push(lhs, next);
            let mut r = VerificationReport::new("pentagon", Some(g), Some(DilogSpec::Tropical), tol)
                .with("x", Param::Complex(x1))
                .with("x_index", Param::Int(i))
                .with("y", Param::Complex(y1))
                .with("y_index", Param::Int(j))
                .with("box", Param::Int(k))
                .finish(&w);
            r.advisory = true;
            return Ok(r);
        }
        prev = next;
    }
}

/// Damped pentagon integral for `Phi_b` on `R` at real `x, y`.
///
/// The factor `e^{-eta (u^2 + v^2 + w^2)}` is inserted, the integral is
/// evaluated by a uniform grid of step `h` on `[-L, L]^3` with
/// `L = sqrt(30 / eta)`, and the values for the given `etas` (decreasing)
/// are extrapolated linearly to `eta = 0`. The reported uncertainty is the
/// difference between the last two extrapolants.
pub fn check_pentagon_faddeev(
    b: C64,
    x: f64,
    y: f64,
    etas: &[f64],
    h: f64,
    spec: &NumericsSpec,
) -> Result<VerificationReport> {
    let tol = 1e-2;
    let dilog = DilogSpec::Faddeev { b };
    dilog.validate()?;
    if etas.len() < 3 || etas.windows(2).any(|p| !(p[1] < p[0] && p[1] > 0.0)) {
        return Err(Error::OutOfDomain("need at least three decreasing positive damping values"));
    }
    let lhs =
        faddeev_phi(b, c(x, 0.0), Representation::Auto, spec)? * faddeev_phi(b, c(y, 0.0), Representation::Auto, spec)?;
    let gamma = GroupId::RealLine.gamma_constant();
    let mut values = Vec::with_capacity(etas.len());
    for &eta in etas {
        let l = (30.0 / eta).sqrt();
        let n = (l / h).ceil() as i64;
        let grid: Vec<f64> = (-n..=n).map(|k| k as f64 * h).collect();
        let len = grid.len();
        let mut phi = Vec::with_capacity(len);
        for &t in &grid {
            phi.push(faddeev_phi(b, c(t, 0.0), Representation::Auto, spec)? * (-eta * t * t).exp());
        }
        // G(s) = sum over v of phi(v) e^{-eta v^2} e^{-pi i (s - v)^2} h, at s = u + w on the doubled grid.
        let kernel: Vec<C64> = (-(2 * len as i64)..=(2 * len as i64))
            .map(|d| {
                let t = d as f64 * h;
                (-I * PI * t * t).exp()
            })
            .collect();
        let kmid = 2 * len as i64;
        let gsum: Vec<C64> = (0..(2 * len - 1))
            .map(|si| {
                // Index si stands for s = (si - 2n) h, index vi for v = (vi - n) h.
                let mut acc = ZERO;
                for (vi, pv) in phi.iter().enumerate() {
                    let d = si as i64 - vi as i64 - n;
                    acc += pv * kernel[(d + kmid) as usize];
                }
                acc * h
            })
            .collect();
        let mut total = ZERO;
        for (ui, &u) in grid.iter().enumerate() {
            let mut row = ZERO;
            for (wi, &wv) in grid.iter().enumerate() {
                row += (TAU * I * (u - x) * (wv - y)).exp() * gsum[ui + wi] * phi[wi];
            }
            total += row * phi[ui];
        }
        values.push(gamma * total * h * h);
    }
    let k = values.len();
    let (e0, e1, e2) = (etas[k - 3], etas[k - 2], etas[k - 1]);
    let extrapolate = |ea: f64, eb: f64, va: C64, vb: C64| vb + (vb - va) * (eb / (ea - eb));
    let r1 = extrapolate(e0, e1, values[k - 3], values[k - 2]);
    let r2 = extrapolate(e1, e2, values[k - 2], values[k - 1]);
    if (values[k - 1] - values[k - 2]).norm() >= (values[k - 2] - values[k - 3]).norm() {
        return Err(Error::ExtrapolationUnstable);
    }
    let mut w = Worst::default();
    w.push(lhs, r2);
    let mut r = VerificationReport::new("pentagon_regularized", Some(GroupId::RealLine), Some(dilog), tol)
        .with("x", Param::Real(x))
        .with("y", Param::Real(y))
        .with("h", Param::Real(h))
        .finish(&w);
    for (idx, &eta) in etas.iter().enumerate() {
        r.point.push((format!("eta_{idx}"), Param::Real(eta)));
        r.point.push((format!("value_{idx}"), Param::Complex(values[idx])));
    }
    r.point.push(("extrapolation_uncertainty".to_string(), Param::Real((r2 - r1).norm())));
    r.advisory = true;
    Ok(r)
}

/// Suite-wide settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub numerics: NumericsSpec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 7, numerics: NumericsSpec::default() }
    }
}

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 5] = ["core", "faddeev", "ybe", "advisory", "all"];

fn record(
    out: &mut Vec<VerificationReport>,
    name: &str,
    group: Option<GroupId>,
    dilog: Option<DilogSpec>,
    r: Result<VerificationReport>,
) {
    out.push(match r {
        Ok(rep) => rep,
        Err(e) => VerificationReport::failed(name, group, dilog, e),
    });
}

/// Spectral parameters `x`, `y` as `(coordinate, index)` and the boundary spins.
pub type YbePoint = ((C64, i64), (C64, i64), YbeBoundary);

/// Validated tropical Yang–Baxter points used by the `ybe` suite.
pub fn ybe_points() -> [YbePoint; 3] {
    [
        ((c(1.6, 0.0), 0), (c(0.0, 1.7), 0), YbeBoundary { p: ONE, q: c(1.05, 0.0), u: c(0.0, 0.95), v: cis(0.4) }),
        (
            (c(1.5, 0.0), 1),
            (cis(0.5) * 1.8, -2),
            YbeBoundary { p: cis(1.0), q: c(1.02, 0.0), u: c(0.97, 0.0), v: cis(2.0) * 1.01 },
        ),
        (
            (c(2.0, 0.0), 0),
            (c(2.0, 0.0), 0),
            YbeBoundary { p: c(1.03, 0.0), q: c(0.98, 0.0), u: c(1.01, 0.0), v: c(0.0, 0.99) },
        ),
    ]
}

/// Region points for the special-`b` transform checks.
pub const WGZ_POINTS: [(C64, C64); 5] = [
    (C64::new(0.1, 0.4), C64::new(0.2, -0.2)),
    (C64::new(-0.3, 0.35), C64::new(-0.1, -0.15)),
    (C64::new(0.45, 0.3), C64::new(0.3, -0.1)),
    (C64::new(0.2, 0.5), C64::new(0.05, -0.3)),
    (C64::new(-0.15, 0.25), C64::new(-0.25, -0.12)),
];

type Quad = (GroupElement, GroupElement, GroupElement, GroupElement);

fn el(z: C64, m: i64) -> GroupElement {
    GroupElement::CircleInt(z, m)
}

/// `(x, y, z)` triples for the quasi-invariance check on `R` or `T x Z`.
pub fn quasi_invariance_points(g: GroupId) -> Vec<(GroupElement, GroupElement, GroupElement)> {
    match g {
        GroupId::CircleTimesIntegers => vec![
            (el(c(0.8, 0.1), 3), el(c(0.9, -0.2), -1), el(c(2.0, 0.3), 0)),
            (el(c(-0.7, 0.5), 0), el(c(0.6, 0.8), 2), el(c(0.5, -2.2), -1)),
        ],
        _ => {
            let r = |x: f64, y: f64| GroupElement::Real(c(x, y));
            vec![(r(0.1, 0.0), r(0.2, -0.05), r(0.15, -0.2)), (r(-0.2, 0.03), r(0.1, -0.04), r(0.3, -0.25))]
        }
    }
}

/// Validated tropical `(x, y, u, s)` points for the star–triangle check.
pub fn star_triangle_points() -> [Quad; 2] {
    [
        (el(c(2.0, 0.0), 0), el(c(0.0, 1.8), 0), el(c(1.1, 0.0), 0), el(c(0.95, 0.0), 0)),
        (el(c(2.0, 0.0), 1), el(c(0.0, 1.8), -1), el(cis(0.5) * 1.1, 1), el(c(0.95, 0.0), 1)),
    ]
}

/// Validated tropical `(x, y, u, v)` points for the double-sum identity; the
/// last one has `x = y`.
pub fn int_id_points() -> [Quad; 3] {
    [
        (el(c(2.0, 0.0), 0), el(c(0.0, 1.8), 0), el(c(1.1, 0.0), 0), el(c(0.95, 0.0), 0)),
        (el(c(2.0, 0.0), 1), el(c(0.0, 1.8), 0), el(c(1.1, 0.0), 1), el(c(0.95, 0.0), -1)),
        (el(c(2.0, 0.0), 0), el(c(2.0, 0.0), 0), el(c(1.1, 0.0), 0), el(c(0.95, 0.0), 0)),
    ]
}

fn faddeev_suite(cfg: &SuiteConfig, out: &mut Vec<VerificationReport>) {
    let spec = &cfg.numerics;
    let seed = cfg.seed;
    for b in [c(0.8, 0.6), special_b()] {
        let d = DilogSpec::Faddeev { b };
        record(out, "inversion", Some(d.group()), Some(d), check_inversion(d, 50, seed, spec));
    }
    for n in 1..=3u32 {
        let d = DilogSpec::CyclicFaddeev { n, theta: PI / 3.0 };
        record(out, "inversion", Some(d.group()), Some(d), check_inversion(d, 50, seed, spec));
    }
    for b in [ONE, c(1.1, 0.0), special_b()] {
        let d = Some(DilogSpec::Faddeev { b });
        record(out, "unitarity", Some(GroupId::RealLine), d, check_unitarity(b, -3.0, 3.0, 121, spec));
    }
    let grid9: Vec<f64> = (0..9).map(|k| -2.0 + 0.5 * k as f64).collect();
    let b5 = cis(PI / 5.0);
    record(
        out,
        "representation_agreement",
        Some(GroupId::RealLine),
        Some(DilogSpec::Faddeev { b: b5 }),
        check_representation_agreement(
            b5,
            Representation::Product,
            Representation::FaddeevIntegral,
            &grid9,
            1e-8,
            spec,
        ),
    );
    let grid_w: Vec<f64> = (0..9).map(|k| -1.0 + 0.25 * k as f64).collect();
    record(
        out,
        "representation_agreement",
        Some(GroupId::RealLine),
        Some(DilogSpec::Faddeev { b: c(1.1, 0.0) }),
        check_representation_agreement(
            c(1.1, 0.0),
            Representation::FaddeevIntegral,
            Representation::Woronowicz,
            &grid_w,
            1e-7,
            spec,
        ),
    );
    let sb = Some(DilogSpec::Faddeev { b: special_b() });
    record(out, "wgz_special", Some(GroupId::RealLine), sb, check_wgz_special(&WGZ_POINTS, spec));
    record(out, "wgz_quasi_periodicity", Some(GroupId::RealLine), sb, check_wgz_quasi_periodicity(&WGZ_POINTS));
    let pts = quasi_invariance_points(GroupId::RealLine);
    record(
        out,
        "irf_quasi_invariance",
        Some(GroupId::RealLine),
        sb,
        check_irf_quasi_invariance(DilogSpec::Faddeev { b: special_b() }, &pts, spec),
    );
    record(out, "faddeev_irf_m", Some(GroupId::RealLine), sb, check_faddeev_m_forms(&pts, spec));
}

/// Generic `M` over `R` at `b = e^{i pi/6}` against the periodic integral of
/// two transforms and against its theta-function form.
pub fn check_faddeev_m_forms(
    points: &[(GroupElement, GroupElement, GroupElement)],
    spec: &NumericsSpec,
) -> Result<VerificationReport> {
    let tol = 1e-7;
    let d = DilogSpec::Faddeev { b: special_b() };
    let spec = tighten(spec, tol);
    let e = WeightEvaluator::new(d, spec)?;
    let mut w = Worst::default();
    for (x, y, z) in points {
        let gen = e.irf_weight_m(x, y, z)?.value;
        let (x, y, z) = (x.coord(), y.coord(), z.coord());
        let f = crate::weights::faddeev_irf_m(special_b(), x, y, z, &spec)?;
        let cl = crate::weights::faddeev_irf_m_special(x, y, z, &spec)?;
        w.nodes(f.nodes_used);
        w.push(gen, f.value);
        w.push(cl.value, f.value);
    }
    Ok(VerificationReport::new("faddeev_irf_m", Some(GroupId::RealLine), Some(d), tol)
        .with("points", Param::Int(points.len() as i64))
        .finish(&w))
}

fn circle_suite(cfg: &SuiteConfig, out: &mut Vec<VerificationReport>) {
    let spec = &cfg.numerics;
    let seed = cfg.seed;
    let t = Some(GroupId::CircleTimesIntegers);
    for d in [DilogSpec::Tropical, DilogSpec::Dgg { q: 0.2 }, DilogSpec::Dgg { q: 0.5 }] {
        record(out, "inversion", t, Some(d), check_inversion(d, 50, seed, spec));
    }
    let mut params = psi_samples(seed, 5);
    let q = c(0.3, 0.0);
    params.push([q, q, c(0.5, 0.0), q]);
    params.push([c(0.2, 0.1), q, c(0.4, -0.2), q]);
    record(out, "1psi1", None, None, check_1psi1(&params, spec));
    record(
        out,
        "weil_closed_form",
        t,
        Some(DilogSpec::Tropical),
        check_weil_closed_forms(DilogSpec::Tropical, 20, seed, spec),
    );
    let dgg = DilogSpec::Dgg { q: 0.3 };
    record(out, "weil_closed_form", t, Some(dgg), check_weil_closed_forms(dgg, 10, seed, spec));
    record(
        out,
        "tropical_m_representations",
        t,
        Some(DilogSpec::Tropical),
        check_tropical_m_representations(&tropical_m_samples(seed, 20), spec),
    );
    for d in [DilogSpec::Tropical, dgg] {
        record(out, "weil_weight_factorization", t, Some(d), check_weil_weight_factorization(d, 10, seed, spec));
        record(
            out,
            "weil_weight_epsilon_shift",
            t,
            Some(d),
            check_epsilon_shift(d, &el(c(2.5, 0.4), 1), &el(c(0.9, 0.3), 0), &el(c(0.95, -0.2), 2), spec),
        );
        let pts = quasi_invariance_points(GroupId::CircleTimesIntegers);
        record(out, "irf_quasi_invariance", t, Some(d), check_irf_quasi_invariance(d, &pts, spec));
    }
}

fn ybe_suite(cfg: &SuiteConfig, out: &mut Vec<VerificationReport>) {
    let spec = &cfg.numerics;
    let t = Some(GroupId::CircleTimesIntegers);
    let trop = Some(DilogSpec::Tropical);
    for (x, y, bd) in ybe_points() {
        record(out, "irf_ybe", t, trop, check_irf_ybe(DilogSpec::Tropical, x, y, bd, spec));
    }
    let dgg = DilogSpec::Dgg { q: 0.2 };
    let bd = ybe_points()[0].2;
    record(out, "irf_ybe", t, Some(dgg), check_irf_ybe(dgg, (c(1.5, 0.0), 0), (c(0.0, 1.4), 0), bd, spec));
    let identity = check_irf_ybe(DilogSpec::Tropical, (ONE, 0), (c(0.0, 1.7), 0), bd, spec);
    out.push(match identity {
        Err(Error::OutOfDomain(msg)) => {
            let mut r = VerificationReport::new("irf_ybe", t, trop, 1e-8)
                .with("x", Param::Complex(ONE))
                .with("x_index", Param::Int(0))
                .skip("identity spectral parameter: the contour annulus of M is empty");
            r.error = Some(Error::OutOfDomain(msg));
            r
        }
        other => other.unwrap_or_else(|e| VerificationReport::failed("irf_ybe", t, trop, e)),
    });
    let star_points = star_triangle_points();
    for (x, y, u, s) in star_points {
        record(out, "star_triangle", t, trop, check_star_triangle(DilogSpec::Tropical, &x, &y, &u, &s, spec));
    }
    let (x, _, u, s) = star_points[0];
    record(out, "star_triangle", t, trop, check_star_triangle(DilogSpec::Tropical, &x, &el(ONE, 0), &u, &s, spec));
    for (x, y, u, v) in int_id_points() {
        record(out, "int_id", t, trop, check_int_id(DilogSpec::Tropical, &x, &y, &u, &v, spec));
    }
}

fn advisory_suite(cfg: &SuiteConfig, out: &mut Vec<VerificationReport>) {
    let spec = &cfg.numerics;
    let t = Some(GroupId::CircleTimesIntegers);
    record(
        out,
        "pentagon",
        t,
        Some(DilogSpec::Tropical),
        check_pentagon_tropical((c(1.3, 0.2), 2), (c(0.7, -0.4), 1), spec),
    );
    let b = cis(PI / 5.0);
    let r = check_pentagon_faddeev(b, 0.1, 0.2, &[0.2, 0.1, 0.05], 0.01, spec);
    let mut rep = r.unwrap_or_else(|e| {
        VerificationReport::failed("pentagon_regularized", Some(GroupId::RealLine), Some(DilogSpec::Faddeev { b }), e)
    });
    rep.advisory = true;
    out.push(rep);
}

/// Runs a named suite in a fixed order. Check failures are reported, not raised.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    cfg.numerics.validate()?;
    let mut out = Vec::new();
    match name {
        "core" => {
            faddeev_suite(cfg, &mut out);
            circle_suite(cfg, &mut out);
            ybe_suite(cfg, &mut out);
        }
        "faddeev" => faddeev_suite(cfg, &mut out),
        "ybe" => ybe_suite(cfg, &mut out),
        "advisory" => advisory_suite(cfg, &mut out),
        "all" => {
            faddeev_suite(cfg, &mut out);
            circle_suite(cfg, &mut out);
            ybe_suite(cfg, &mut out);
            advisory_suite(cfg, &mut out);
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    }
    Ok(out)
}

/// True when every gating report passed.
pub fn suite_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().filter(|r| r.gating()).all(|r| r.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcg_is_reproducible() {
        let mut a = Lcg::new(7);
        let mut b = Lcg::new(7);
        for _ in 0..10 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut g = Lcg::new(1);
        for _ in 0..1000 {
            let x = g.next_f64();
            assert!((0.0..1.0).contains(&x));
            let k = g.int(-3, 3);
            assert!((-3..=3).contains(&k));
        }
    }

    #[test]
    fn tropical_inversion_is_exact() {
        let r = check_inversion(DilogSpec::Tropical, 50, 3, &NumericsSpec::default()).unwrap();
        assert!(r.passed);
        assert_eq!(r.abs_residual, 0.0);
    }

    #[test]
    fn unitarity_precondition() {
        let s = NumericsSpec::default();
        assert!(matches!(check_unitarity(c(0.8, 0.5), -1.0, 1.0, 5, &s), Err(Error::OutOfDomain(_))));
        assert!(check_unitarity(c(0.8, 0.6), -1.0, 1.0, 5, &s).unwrap().passed);
    }

    #[test]
    fn wgz_region_enforced() {
        let r = check_wgz_special(&[(c(0.1, 0.1), c(0.0, 0.2))], &NumericsSpec::default());
        assert!(matches!(r, Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn unknown_suite() {
        assert_eq!(run_suite("nope", &SuiteConfig::default()), Err(Error::UnknownSuite("nope".into())));
    }

    #[test]
    fn tropical_pentagon_exact() {
        let r = check_pentagon_tropical((c(1.3, 0.2), 2), (c(0.7, -0.4), 1), &NumericsSpec::default()).unwrap();
        assert!(r.passed && r.advisory, "{r:?}");
    }

    #[test]
    fn ybe_identity_out_of_domain() {
        let bd = ybe_points()[0].2;
        let r = check_irf_ybe(DilogSpec::Tropical, (ONE, 0), (c(0.0, 1.7), 0), bd, &NumericsSpec::default());
        assert!(matches!(r, Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn star_triangle_skips_identity() {
        let el = |z: C64, m: i64| GroupElement::CircleInt(z, m);
        let r = check_star_triangle(
            DilogSpec::Tropical,
            &el(c(2.0, 0.0), 0),
            &el(ONE, 0),
            &el(c(1.1, 0.0), 0),
            &el(c(0.95, 0.0), 0),
            &NumericsSpec::default(),
        )
        .unwrap();
        assert!(r.skipped);
    }

    #[test]
    fn star_triangle_domain_violation() {
        let el = |z: C64, m: i64| GroupElement::CircleInt(z, m);
        let r = check_star_triangle(
            DilogSpec::Tropical,
            &el(c(2.0, 0.0), 0),
            &el(c(0.0, 1.8), 0),
            &el(c(3.0, 0.0), 0),
            &el(c(0.95, 0.0), 0),
            &NumericsSpec::default(),
        );
        assert!(matches!(r, Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn reports_keep_worst_sample() {
        let mut w = Worst::default();
        w.push(ONE, ONE);
        w.push(c(2.0, 0.0), c(1.0, 0.0));
        w.push(ONE, c(1.0, 1e-9));
        assert_eq!(w.lhs, c(2.0, 0.0));
        let r = VerificationReport::new("t", None, None, 1e-3).finish(&w);
        assert!(!r.passed);
    }
}
