//! Single checks by name, with default points that can be overridden
//! through `--point`.

use qdilog_core::qdilog::Representation;
use qdilog_core::transforms::special_b;
use qdilog_core::verify::{self as v, VerificationReport, YbeBoundary};
use qdilog_core::{DilogSpec, GroupElement, GroupId, NumericsSpec, Result, C64};

use crate::config::{usage, CliError};
use crate::eval::ArgMap;

/// Names accepted by `verify --check`.
pub const CHECKS: [&str; 16] = [
    "inversion",
    "unitarity",
    "representation_agreement",
    "wgz_special",
    "wgz_quasi_periodicity",
    "1psi1",
    "weil_closed_forms",
    "weil_weight_factorization",
    "epsilon_shift",
    "irf_quasi_invariance",
    "tropical_m_representations",
    "faddeev_irf_m",
    "irf_ybe",
    "star_triangle",
    "int_id",
    "pentagon",
];

/// Inputs of a single check.
pub struct CheckInput<'a> {
    pub dilog: Option<DilogSpec>,
    pub b: Option<C64>,
    pub seed: u64,
    pub samples: Option<usize>,
    pub point: &'a ArgMap,
    pub spec: NumericsSpec,
}

impl CheckInput<'_> {
    fn dilog(&self) -> std::result::Result<DilogSpec, CliError> {
        self.dilog.ok_or_else(|| CliError::Usage("this check needs --family".into()))
    }

    fn real_or(&self, k: &str, default: f64) -> std::result::Result<f64, CliError> {
        Ok(self.point.real(k)?.unwrap_or(default))
    }

    fn grid(&self, lo: f64, hi: f64, n: usize) -> std::result::Result<Vec<f64>, CliError> {
        let lo = self.real_or("lo", lo)?;
        let hi = self.real_or("hi", hi)?;
        let n = self.point.int("n")?.map_or(n, |n| n.max(1) as usize);
        Ok(if n == 1 { vec![lo] } else { (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect() })
    }

    fn pair(&self, name: &str, default: (C64, i64)) -> std::result::Result<(C64, i64), CliError> {
        let e =
            self.point.named_or(GroupId::CircleTimesIntegers, name, GroupElement::CircleInt(default.0, default.1))?;
        Ok((e.coord(), e.index()))
    }

    fn complex_or(&self, k: &str, default: C64) -> std::result::Result<C64, CliError> {
        Ok(self.point.complex(k)?.unwrap_or(default))
    }
}

fn representation(name: &str) -> std::result::Result<Representation, CliError> {
    match name {
        "product" => Ok(Representation::Product),
        "integral" => Ok(Representation::FaddeevIntegral),
        "woronowicz" => Ok(Representation::Woronowicz),
        other => usage(format!("unknown representation `{other}`")),
    }
}

/// Runs one check. Usage problems are returned as errors; failures inside
/// the check become a failed report.
pub fn run_check(name: &str, inp: &CheckInput) -> std::result::Result<VerificationReport, CliError> {
    let (group, dilog) = match inp.dilog {
        Some(d) => (Some(d.group()), Some(d)),
        None => (None, None),
    };
    let outcome = dispatch(name, inp)?;
    inp.point.finish()?;
    let mut r = outcome.unwrap_or_else(|e| VerificationReport::failed(name, group, dilog, e));
    r.advisory |= name == "pentagon";
    Ok(r)
}

fn dispatch(name: &str, inp: &CheckInput) -> std::result::Result<Result<VerificationReport>, CliError> {
    let spec = &inp.spec;
    let seed = inp.seed;
    let p = inp.point;
    Ok(match name {
        "inversion" => v::check_inversion(inp.dilog()?, inp.samples.unwrap_or(50), seed, spec),
        "unitarity" => {
            let b = inp.b.unwrap_or(C64::new(1.0, 0.0));
            let xs = inp.grid(-3.0, 3.0, 121)?;
            v::check_unitarity(b, xs[0], xs[xs.len() - 1], xs.len(), spec)
        }
        "representation_agreement" => {
            let b = inp.b.unwrap_or_else(|| C64::from_polar(1.0, std::f64::consts::PI / 5.0));
            let first = representation(p.raw_or("first", "product"))?;
            let second = representation(p.raw_or("second", "integral"))?;
            let tol = inp.real_or("tol", 1e-8)?;
            let xs = inp.grid(-2.0, 2.0, 9)?;
            v::check_representation_agreement(b, first, second, &xs, tol, spec)
        }
        "wgz_special" | "wgz_quasi_periodicity" => {
            let pts = if p.has("x") || p.has("y") {
                vec![(p.require("x")?, p.require("y")?)]
            } else {
                v::WGZ_POINTS.to_vec()
            };
            if name == "wgz_special" {
                v::check_wgz_special(&pts, spec)
            } else {
                v::check_wgz_quasi_periodicity(&pts)
            }
        }
        "1psi1" => {
            let params = if p.is_empty() {
                v::psi_samples(seed, inp.samples.unwrap_or(5))
            } else {
                vec![[p.require("a")?, p.require("b")?, p.require("z")?, p.require("q")?]]
            };
            v::check_1psi1(&params, spec)
        }
        "weil_closed_forms" => v::check_weil_closed_forms(inp.dilog()?, inp.samples.unwrap_or(20), seed, spec),
        "weil_weight_factorization" => {
            v::check_weil_weight_factorization(inp.dilog()?, inp.samples.unwrap_or(10), seed, spec)
        }
        "epsilon_shift" => {
            let d = inp.dilog()?;
            let g = d.group();
            let el = GroupElement::CircleInt;
            let lam = p.named_or(g, "lambda", el(C64::new(2.5, 0.4), 1))?;
            let s = p.named_or(g, "s", el(C64::new(0.9, 0.3), 0))?;
            let t = p.named_or(g, "t", el(C64::new(0.95, -0.2), 2))?;
            v::check_epsilon_shift(d, &lam, &s, &t, spec)
        }
        "irf_quasi_invariance" | "faddeev_irf_m" => {
            let d = if name == "faddeev_irf_m" { DilogSpec::Faddeev { b: special_b() } } else { inp.dilog()? };
            let g = d.group();
            let pts = if p.is_empty() {
                v::quasi_invariance_points(g)
            } else {
                vec![(p.named(g, "x")?, p.named(g, "y")?, p.named(g, "z")?)]
            };
            if name == "faddeev_irf_m" {
                v::check_faddeev_m_forms(&pts, spec)
            } else {
                v::check_irf_quasi_invariance(d, &pts, spec)
            }
        }
        "tropical_m_representations" => {
            let pts = if p.is_empty() {
                v::tropical_m_samples(seed, inp.samples.unwrap_or(20))
            } else {
                vec![(p.require("x")?, p.require("y")?, p.require("z")?, p.int("m")?.unwrap_or(0))]
            };
            v::check_tropical_m_representations(&pts, spec)
        }
        "irf_ybe" => {
            let (x0, y0, bd0) = v::ybe_points()[0];
            let x = inp.pair("x", x0)?;
            let y = inp.pair("y", y0)?;
            let bd = YbeBoundary {
                p: inp.complex_or("p", bd0.p)?,
                q: inp.complex_or("q", bd0.q)?,
                u: inp.complex_or("u", bd0.u)?,
                v: inp.complex_or("v", bd0.v)?,
            };
            v::check_irf_ybe(inp.dilog()?, x, y, bd, spec)
        }
        "star_triangle" | "int_id" => {
            let d = inp.dilog()?;
            let g = d.group();
            let (x0, y0, u0, s0) =
                if name == "star_triangle" { v::star_triangle_points()[0] } else { v::int_id_points()[0] };
            let last = if name == "star_triangle" { "s" } else { "v" };
            let x = p.named_or(g, "x", x0)?;
            let y = p.named_or(g, "y", y0)?;
            let u = p.named_or(g, "u", u0)?;
            let s = p.named_or(g, last, s0)?;
            if name == "star_triangle" {
                v::check_star_triangle(d, &x, &y, &u, &s, spec)
            } else {
                v::check_int_id(d, &x, &y, &u, &s, spec)
            }
        }
        "pentagon" => match inp.dilog()? {
            DilogSpec::Faddeev { b } => {
                let x = inp.real_or("x", 0.1)?;
                let y = inp.real_or("y", 0.2)?;
                let h = inp.real_or("h", 0.01)?;
                v::check_pentagon_faddeev(b, x, y, &[0.2, 0.1, 0.05], h, spec)
            }
            DilogSpec::Tropical => {
                let x = inp.pair("x", (C64::new(1.3, 0.2), 2))?;
                let y = inp.pair("y", (C64::new(0.7, -0.4), 1))?;
                v::check_pentagon_tropical(x, y, spec)
            }
            _ => return usage("pentagon is offered for families tropical and faddeev"),
        },
        other => {
            return Err(CliError::Usage(format!("unknown check `{other}`; expected one of {}", CHECKS.join(", "))))
        }
    })
}
