//! Quadrature and truncation engines: trapezoid on a shifted line, on a
//! circle and on the periodic unit interval, and symmetric bilateral sums.
//!
//! Every engine doubles its resolution until two successive estimates agree
//! to `max(abs_tol, rel_tol * |value|)`. Summation order is fixed, so results
//! are bit-reproducible.

use core::cell::Cell;

use crate::cmath::{c, cis, is_finite, C64, TAU, ZERO};
use crate::error::{Error, Result};

/// Magnitude threshold used by the pole-on-contour heuristic.
const BLOWUP: f64 = 1e8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericsSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Node budget for one quadrature (power of two).
    pub max_nodes: usize,
    /// Largest half-width of a bilateral truncation.
    pub max_shells: usize,
    /// Starting node count on circles and periodic intervals (power of two).
    pub contour_nodes_initial: usize,
    /// Radius override for circle contours on the circle group.
    pub contour_radius: Option<f64>,
    /// Imaginary shift override for unit-interval contours on the real groups.
    pub contour_shift: Option<f64>,
}

impl Default for NumericsSpec {
    fn default() -> Self {
        NumericsSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_nodes: 1 << 20,
            max_shells: 1 << 16,
            contour_nodes_initial: 64,
            contour_radius: None,
            contour_shift: None,
        }
    }
}

impl NumericsSpec {
    /// Same spec with both tolerances replaced.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self.rel_tol = tol;
        self
    }

    pub fn tolerance(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::OutOfDomain("tolerances must be positive"));
        }
        if !self.max_nodes.is_power_of_two() || !self.contour_nodes_initial.is_power_of_two() {
            return Err(Error::OutOfDomain("node counts must be powers of two"));
        }
        if self.contour_nodes_initial > self.max_nodes {
            return Err(Error::OutOfDomain("initial node count exceeds budget"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: C64,
    pub error_estimate: f64,
    pub nodes_used: usize,
    pub converged: bool,
}

impl QuadratureResult {
    pub fn exact(value: C64) -> Self {
        QuadratureResult { value, error_estimate: 0.0, nodes_used: 0, converged: true }
    }
}

/// Accepts the estimate when the last two differences are within tolerance
/// and did not grow.
fn settled(diff: f64, prev_diff: f64, value: C64, spec: &NumericsSpec) -> bool {
    diff <= spec.tolerance(value.norm()) && diff <= prev_diff
}

/// `integral of f(t + i eps) dt` over the whole line.
///
/// The window is grown in unit steps until the integrand drops below
/// `abs_tol / 100` on two consecutive points on each side; the trapezoid
/// rule is then refined by halving the step.
pub fn integrate_line(f: &dyn Fn(C64) -> C64, eps: f64, spec: &NumericsSpec) -> Result<QuadratureResult> {
    let at = |t: f64| f(c(t, eps));
    let cutoff = spec.abs_tol * 1e-2;
    let reach = |dir: f64| -> Result<f64> {
        let mut quiet = 0;
        let mut t = 0.0;
        for _ in 0..100_000 {
            t += 1.0;
            let v = at(dir * t);
            if !is_finite(v) {
                return Err(Error::QuadratureFailure);
            }
            if v.norm() < cutoff {
                quiet += 1;
                if quiet >= 2 && t >= 4.0 {
                    return Ok(t);
                }
            } else {
                quiet = 0;
            }
        }
        Err(Error::QuadratureFailure)
    };
    let left = reach(-1.0)?;
    let right = reach(1.0)?;
    let len = left + right;

    let mut intervals = (2.0 * len) as usize;
    let mut h = len / intervals as f64;
    let mut sum = ZERO;
    for j in 0..=intervals {
        let w = if j == 0 || j == intervals { 0.5 } else { 1.0 };
        sum += at(-left + j as f64 * h) * w;
    }
    let mut estimate = sum * h;
    let mut prev_diff = f64::INFINITY;
    let mut level = 0;
    loop {
        if 2 * intervals + 1 > spec.max_nodes {
            return Err(Error::QuadratureFailure);
        }
        let mut mid = ZERO;
        for j in 0..intervals {
            mid += at(-left + (j as f64 + 0.5) * h);
        }
        sum += mid;
        intervals *= 2;
        h *= 0.5;
        let next = sum * h;
        if !is_finite(next) {
            return Err(Error::QuadratureFailure);
        }
        let diff = (next - estimate).norm();
        estimate = next;
        level += 1;
        if level >= 2 && settled(diff, prev_diff, estimate, spec) {
            return Ok(QuadratureResult {
                value: estimate,
                error_estimate: diff,
                nodes_used: intervals + 1,
                converged: true,
            });
        }
        prev_diff = diff;
    }
}

/// `(1/2 pi i) * contour integral of f(v) dv` over `|v| = r`.
pub fn integrate_circle(f: &dyn Fn(C64) -> C64, r: f64, spec: &NumericsSpec) -> Result<QuadratureResult> {
    if !(r > 0.0) {
        return Err(Error::OutOfDomain("contour radius must be positive"));
    }
    let node = |j: usize, n: usize| -> C64 {
        let v = cis(TAU * j as f64 / n as f64) * r;
        f(v) * v
    };
    let mut n = spec.contour_nodes_initial.max(4);
    let mut peak = 0.0f64;
    let mut sum = ZERO;
    for j in 0..n {
        let y = node(j, n);
        peak = peak.max(y.norm());
        sum += y;
    }
    let mut estimate = sum / n as f64;
    let mut prev_diff = f64::INFINITY;
    loop {
        if !is_finite(estimate) || !peak.is_finite() {
            return Err(Error::PoleOnContour);
        }
        if 2 * n > spec.max_nodes {
            return Err(if peak > BLOWUP * estimate.norm().max(1.0) {
                Error::PoleOnContour
            } else {
                Error::QuadratureFailure
            });
        }
        let m = 2 * n;
        for j in 0..n {
            let y = node(2 * j + 1, m);
            peak = peak.max(y.norm());
            sum += y;
        }
        n = m;
        let next = sum / n as f64;
        let diff = (next - estimate).norm();
        estimate = next;
        if settled(diff, prev_diff, estimate, spec) && is_finite(estimate) {
            return Ok(QuadratureResult { value: estimate, error_estimate: diff, nodes_used: n, converged: true });
        }
        prev_diff = diff;
    }
}

/// `integral over [0,1) of f(u) du` for a 1-periodic integrand.
pub fn integrate_unit_interval_periodic(f: &dyn Fn(f64) -> C64, spec: &NumericsSpec) -> Result<QuadratureResult> {
    let mut n = spec.contour_nodes_initial.max(4);
    let mut sum = ZERO;
    for j in 0..n {
        sum += f(j as f64 / n as f64);
    }
    let mut estimate = sum / n as f64;
    let mut prev_diff = f64::INFINITY;
    loop {
        if !is_finite(estimate) {
            return Err(Error::PoleOnContour);
        }
        if 2 * n > spec.max_nodes {
            return Err(Error::QuadratureFailure);
        }
        let m = 2 * n;
        for j in 0..n {
            sum += f((2 * j + 1) as f64 / m as f64);
        }
        n = m;
        let next = sum / n as f64;
        let diff = (next - estimate).norm();
        estimate = next;
        if settled(diff, prev_diff, estimate, spec) && is_finite(estimate) {
            return Ok(QuadratureResult { value: estimate, error_estimate: diff, nodes_used: n, converged: true });
        }
        prev_diff = diff;
    }
}

/// Runs `run` on an infallible adapter of `f`; the first error raised by
/// `f` replaces the quadrature result.
fn with_fallible<T: Copy>(
    f: &dyn Fn(T) -> Result<C64>,
    run: impl FnOnce(&dyn Fn(T) -> C64) -> Result<QuadratureResult>,
) -> Result<QuadratureResult> {
    let failed: Cell<Option<Error>> = Cell::new(None);
    let g = |t: T| match f(t) {
        Ok(v) => v,
        Err(e) => {
            let first = failed.take().unwrap_or(e);
            failed.set(Some(first));
            C64::new(f64::NAN, f64::NAN)
        }
    };
    let r = run(&g);
    match failed.take() {
        Some(e) => Err(e),
        None => r,
    }
}

/// [`integrate_circle`] for a fallible integrand.
pub fn try_integrate_circle(f: &dyn Fn(C64) -> Result<C64>, r: f64, spec: &NumericsSpec) -> Result<QuadratureResult> {
    with_fallible(f, |g| integrate_circle(g, r, spec))
}

/// [`integrate_unit_interval_periodic`] for a fallible integrand.
pub fn try_integrate_periodic(f: &dyn Fn(f64) -> Result<C64>, spec: &NumericsSpec) -> Result<QuadratureResult> {
    with_fallible(f, |g| integrate_unit_interval_periodic(g, spec))
}

/// `sum over k in Z of term(k)`, truncated symmetrically at `+-K` with `K`
/// doubled until two consecutive shells carry less than `tol / 10` in
/// absolute terms, or one does after dropping by a factor of 1000. The
/// geometric tail estimate goes into `error_estimate` and is not added to
/// the value.
pub fn sum_bilateral(term: &dyn Fn(i64) -> Result<C64>, spec: &NumericsSpec) -> Result<QuadratureResult> {
    let mut total = term(0)?;
    let mut k = 0usize;
    let mut next = 8usize;
    let mut quiet = 0;
    let mut prev_shell = f64::INFINITY;
    loop {
        if next > spec.max_shells {
            return Err(Error::NonConvergent);
        }
        let mut shell = ZERO;
        let mut shell_abs = 0.0;
        for j in (k + 1)..=next {
            let a = term(j as i64)?;
            let b = term(-(j as i64))?;
            shell += a + b;
            shell_abs += a.norm() + b.norm();
        }
        total += shell;
        if !is_finite(total) || !shell_abs.is_finite() {
            return Err(Error::NonConvergent);
        }
        k = next;
        next *= 2;
        if shell_abs <= 0.1 * spec.tolerance(total.norm()) {
            quiet += 1;
        } else {
            quiet = 0;
        }
        let decaying = shell_abs <= 1e-3 * prev_shell;
        if quiet >= 2 || (quiet == 1 && decaying) {
            let ratio = if prev_shell > 0.0 { shell_abs / prev_shell } else { 0.0 };
            let tail = if ratio < 1.0 { shell_abs * ratio / (1.0 - ratio) } else { shell_abs };
            return Ok(QuadratureResult {
                value: total,
                error_estimate: shell_abs.max(tail),
                nodes_used: 2 * k + 1,
                converged: true,
            });
        }
        prev_shell = shell_abs;
    }
}
