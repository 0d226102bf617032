//! Single-point evaluation of every exposed function.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};

use qdilog_core::qdilog::{faddeev_phi_estimate, qpochhammer, theta_q, theta_q_series, PochIndex, Representation};
use qdilog_core::transforms::{special_b, weil_forward, Provenance, WeilFunction};
use qdilog_core::weights::{dgg_irf_m, faddeev_irf_m, faddeev_irf_m_special, tropical_irf_m, MRep, WeightEvaluator};
use qdilog_core::{DilogSpec, Error, GroupElement, GroupId, NumericsSpec, QuadratureResult, SubgroupB, C64};

use crate::config::{usage, CliError, Target};
use crate::parse::parse_complex;

/// `name=value` arguments that remember which names were read, so that
/// misspelled or irrelevant names are reported instead of ignored.
pub struct ArgMap {
    map: BTreeMap<String, String>,
    used: RefCell<BTreeSet<String>>,
}

impl ArgMap {
    pub fn new(map: BTreeMap<String, String>) -> Self {
        ArgMap { map, used: RefCell::new(BTreeSet::new()) }
    }

    fn raw(&self, k: &str) -> Option<&str> {
        let v = self.map.get(k)?;
        self.used.borrow_mut().insert(k.to_string());
        Some(v.as_str())
    }

    pub fn raw_or<'a>(&'a self, k: &str, default: &'a str) -> &'a str {
        self.raw(k).unwrap_or(default)
    }

    pub fn complex(&self, k: &str) -> Result<Option<C64>, CliError> {
        self.raw(k).map(|v| parse_complex(v).map_err(|e| CliError::Usage(format!("{k}: {e}")))).transpose()
    }

    pub fn require(&self, k: &str) -> Result<C64, CliError> {
        self.complex(k)?.ok_or_else(|| CliError::Usage(format!("missing argument `{k}`")))
    }

    pub fn real(&self, k: &str) -> Result<Option<f64>, CliError> {
        match self.complex(k)? {
            Some(z) if z.im != 0.0 => usage(format!("`{k}` must be real")),
            z => Ok(z.map(|z| z.re)),
        }
    }

    /// Integer argument; grid values such as `"-1.0e0 0.0e0"` are accepted
    /// when they are exact integers.
    pub fn int(&self, k: &str) -> Result<Option<i64>, CliError> {
        let Some(v) = self.raw(k) else { return Ok(None) };
        if let Ok(i) = v.trim().parse::<i64>() {
            return Ok(Some(i));
        }
        match parse_complex(v) {
            Ok(z) if z.im == 0.0 && z.re.fract() == 0.0 && z.re.abs() < 9e15 => Ok(Some(z.re as i64)),
            _ => usage(format!("`{k}` must be an integer, got `{v}`")),
        }
    }

    /// Group element from a coordinate `name` and, off the real line, an
    /// index `idx` (default 0).
    pub fn element(&self, g: GroupId, name: &str, idx: &str) -> Result<GroupElement, CliError> {
        let x = self.require(name)?;
        let m = match g {
            GroupId::RealLine => 0,
            _ => self.int(idx)?.unwrap_or(0),
        };
        Ok(g.element(x, m))
    }

    /// Element whose index companion is `<name>_m`.
    pub fn named(&self, g: GroupId, name: &str) -> Result<GroupElement, CliError> {
        self.element(g, name, &format!("{name}_m"))
    }

    pub fn named_or(&self, g: GroupId, name: &str, default: GroupElement) -> Result<GroupElement, CliError> {
        if self.map.contains_key(name) {
            self.named(g, name)
        } else {
            Ok(default)
        }
    }

    pub fn has(&self, k: &str) -> bool {
        self.map.contains_key(k)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Fails on any argument that was never read.
    pub fn finish(&self) -> Result<(), CliError> {
        let used = self.used.borrow();
        let extra: Vec<&str> = self.map.keys().filter(|k| !used.contains(*k)).map(String::as_str).collect();
        if extra.is_empty() {
            Ok(())
        } else {
            usage(format!("unused argument(s): {}", extra.join(", ")))
        }
    }
}

/// A computed value with its error estimate; `index` is set for targets
/// whose result is a group element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: C64,
    pub err: f64,
    pub index: Option<i64>,
}

impl Evaluation {
    fn exact(value: C64) -> Self {
        Evaluation { value, err: 0.0, index: None }
    }
}

impl From<QuadratureResult> for Evaluation {
    fn from(r: QuadratureResult) -> Self {
        Evaluation { value: r.value, err: r.error_estimate, index: None }
    }
}

/// Fixed inputs of an evaluation besides its arguments.
pub struct EvalContext {
    pub dilog: Option<DilogSpec>,
    pub rep: Option<String>,
    /// `--q`, used by `theta` and `qpoch` when no `q` argument is given.
    pub q: Option<f64>,
    pub spec: NumericsSpec,
}

impl EvalContext {
    fn dilog(&self) -> Result<DilogSpec, CliError> {
        self.dilog.ok_or_else(|| CliError::Usage("--family is required for this target".into()))
    }

    fn rep(&self, allowed: &[&str]) -> Result<Option<&str>, CliError> {
        match self.rep.as_deref() {
            None => Ok(None),
            Some(r) if allowed.contains(&r) => Ok(Some(r)),
            Some(r) => usage(format!("--rep `{r}` not available here; expected one of {}", allowed.join("|"))),
        }
    }

    fn q_arg(&self, args: &ArgMap) -> Result<C64, CliError> {
        match args.complex("q")? {
            Some(q) => Ok(q),
            None => self.q.map(|q| C64::new(q, 0.0)).ok_or_else(|| CliError::Usage("missing argument `q`".into())),
        }
    }
}

fn coordinate_name(g: GroupId) -> &'static str {
    match g {
        GroupId::CircleTimesIntegers => "z",
        _ => "x",
    }
}

fn representation(r: Option<&str>) -> Representation {
    match r {
        Some("product") => Representation::Product,
        Some("integral") => Representation::FaddeevIntegral,
        Some("woronowicz") => Representation::Woronowicz,
        _ => Representation::Auto,
    }
}

/// Evaluates `target` and checks that every argument was used.
pub fn evaluate(target: Target, ctx: &EvalContext, args: &ArgMap) -> Result<Evaluation, CliError> {
    let out = evaluate_inner(target, ctx, args)?;
    args.finish()?;
    Ok(out)
}

fn evaluate_inner(target: Target, ctx: &EvalContext, args: &ArgMap) -> Result<Evaluation, CliError> {
    let spec = &ctx.spec;
    match target {
        Target::Phi => {
            let d = ctx.dilog()?;
            let g = d.group();
            let x = args.element(g, coordinate_name(g), "m")?;
            match d {
                DilogSpec::Faddeev { b } => {
                    let rep = representation(ctx.rep(&["product", "integral", "woronowicz", "auto"])?);
                    Ok(faddeev_phi_estimate(b, x.coord(), rep, spec)?.into())
                }
                _ => {
                    ctx.rep(&[])?;
                    Ok(Evaluation::exact(d.eval(&x, spec)?))
                }
            }
        }
        Target::WeilPhi => {
            let d = ctx.dilog()?;
            let g = d.group();
            let (x, y) = match g {
                GroupId::CircleTimesIntegers => (args.element(g, "u", "m")?, args.element(g, "v", "n")?),
                _ => (args.element(g, "x", "m")?, args.element(g, "y", "n")?),
            };
            let closed = WeilFunction::of_dilog(d, *spec);
            let want = ctx.rep(&["closed", "series", "auto"])?;
            match (want, closed.provenance) {
                (Some("series"), _) | (None | Some("auto"), Provenance::Series) => {
                    let sub = SubgroupB::of(g);
                    Ok(weil_forward(&sub, &|p| d.eval(p, spec), &x, &y, spec)?.into())
                }
                (_, Provenance::ClosedForm) => Ok(Evaluation::exact(closed.eval(&x, &y)?)),
                (_, Provenance::Series) => usage(format!("no closed form for family {}", d.name())),
            }
        }
        Target::FvWeight => {
            let e = WeightEvaluator::new(ctx.dilog()?, *spec)?;
            let (lam, x) = (args.named(e.group(), "lambda")?, args.named(e.group(), "x")?);
            let v = match ctx.rep(&["direct", "ratio"])? {
                Some("ratio") => e.fv_weight_ratio(&lam, &x)?,
                _ => e.fv_weight(&lam, &x)?,
            };
            Ok(Evaluation::exact(v))
        }
        Target::StarWeight => {
            ctx.rep(&[])?;
            let e = WeightEvaluator::new(ctx.dilog()?, *spec)?;
            let (lam, y) = (args.named(e.group(), "lambda")?, args.named(e.group(), "y")?);
            Ok(e.star_weight(&lam, &y)?.into())
        }
        Target::WeilWeight => {
            let e = WeightEvaluator::new(ctx.dilog()?, *spec)?;
            let g = e.group();
            let (lam, s, t) = (args.named(g, "lambda")?, args.named(g, "s")?, args.named(g, "t")?);
            Ok(match ctx.rep(&["direct", "factored"])? {
                Some("factored") => e.weil_weight_factored(&lam, &s, &t)?,
                _ => e.weil_weight(&lam, &s, &t)?,
            }
            .into())
        }
        Target::IrfM => irf_m(ctx, args),
        Target::Theta => {
            let q = ctx.q_arg(args)?;
            let x = args.require("x")?;
            Ok(Evaluation::exact(match ctx.rep(&["product", "series"])? {
                Some("series") => theta_q_series(q, x)?,
                _ => theta_q(q, x)?,
            }))
        }
        Target::Qpoch => {
            ctx.rep(&[])?;
            let q = ctx.q_arg(args)?;
            let a = args.require("a")?;
            let k = match args.raw("k") {
                None | Some("inf") => PochIndex::Infinite,
                Some(_) => PochIndex::Finite(args.int("k")?.unwrap_or(0)),
            };
            Ok(Evaluation::exact(qpochhammer(a, q, k)?))
        }
        Target::Gamma => {
            ctx.rep(&[])?;
            let g = group_with_gaussian(ctx)?;
            Ok(Evaluation::exact(g.gamma_constant()))
        }
        Target::Epsilon => {
            ctx.rep(&[])?;
            let e = group_with_gaussian(ctx)?.epsilon();
            Ok(Evaluation { value: e.coord(), err: 0.0, index: Some(e.index()) })
        }
    }
}

/// The family's group, refusing groups without a bicharacter (even cyclic order).
fn group_with_gaussian(ctx: &EvalContext) -> Result<GroupId, CliError> {
    let g = ctx.dilog()?.group();
    g.bicharacter(&g.identity(), &g.identity())?;
    Ok(g)
}

fn irf_m(ctx: &EvalContext, args: &ArgMap) -> Result<Evaluation, CliError> {
    let spec = &ctx.spec;
    let d = ctx.dilog()?;
    let g = d.group();
    let (x, y, z) = (args.named(g, "x")?, args.named(g, "y")?, args.named(g, "z")?);
    let rep = ctx.rep(&["generic", "contour", "sum", "residue", "bhatb", "special"])?;
    let coords = (x.coord(), y.coord(), z.coord());
    let r = match (rep, d) {
        (None | Some("generic"), _) => WeightEvaluator::new(d, *spec)?.irf_weight_m(&x, &y, &z)?,
        (Some("bhatb"), _) => WeightEvaluator::new(d, *spec)?.irf_weight_bhatb(&z, &x, &y)?,
        (Some(r @ ("contour" | "sum" | "residue")), DilogSpec::Tropical) => {
            let rep = match r {
                "contour" => MRep::Contour,
                "sum" => MRep::Sum,
                _ => MRep::Residue,
            };
            tropical_irf_m(coords.0, x.index(), coords.1, y.index(), coords.2, z.index(), rep, spec)?
        }
        (Some("contour"), DilogSpec::Dgg { q }) => {
            dgg_irf_m(q, coords.0, x.index(), coords.1, y.index(), coords.2, z.index(), spec)?
        }
        (Some("contour"), DilogSpec::Faddeev { b }) => faddeev_irf_m(b, coords.0, coords.1, coords.2, spec)?,
        (Some("special"), DilogSpec::Faddeev { b }) if (b - special_b()).norm() < 1e-14 => {
            faddeev_irf_m_special(coords.0, coords.1, coords.2, spec)?
        }
        (Some(r), _) => return usage(format!("--rep {r} is not offered for family {}", d.name())),
    };
    Ok(r.into())
}

/// Maps a non-finite result to an explicit error.
pub fn finite(e: Evaluation) -> Result<Evaluation, CliError> {
    if e.value.re.is_finite() && e.value.im.is_finite() && e.err.is_finite() {
        Ok(e)
    } else {
        Err(CliError::Core(Error::NonConvergent))
    }
}
