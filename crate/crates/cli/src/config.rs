//! Run configuration: what the flags and the `--config` JSON document both
//! resolve to.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Deserializer};

use qdilog_core::{DilogSpec, Error, NumericsSpec};

use crate::parse::parse_complex;

/// Environment variable overriding the default tolerance (both absolute
/// and relative) before the config file and flags are applied.
pub const TOL_ENV: &str = "QDILOG_TOL";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Command {
    Eval,
    Verify,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Family {
    Tropical,
    Dgg,
    Faddeev,
    Cyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Target {
    Phi,
    WeilPhi,
    FvWeight,
    StarWeight,
    WeilWeight,
    IrfM,
    Theta,
    Qpoch,
    Gamma,
    Epsilon,
}

impl Target {
    pub fn name(&self) -> &'static str {
        match self {
            Target::Phi => "phi",
            Target::WeilPhi => "weil_phi",
            Target::FvWeight => "fv_weight",
            Target::StarWeight => "star_weight",
            Target::WeilWeight => "weil_weight",
            Target::IrfM => "irf_m",
            Target::Theta => "theta",
            Target::Qpoch => "qpoch",
            Target::Gamma => "gamma",
            Target::Epsilon => "epsilon",
        }
    }
}

/// Everything that can go wrong outside a check itself.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, names or values: exit 64.
    Usage(String),
    /// An evaluator refused or failed: exit 2 for domain errors, 1 otherwise.
    Core(Error),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Core(e) => write!(f, "{}: {e}", e.kind()),
            CliError::Io(m) => write!(f, "io: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownSuite(name) => CliError::Usage(format!("unknown suite or check `{name}`")),
            e => CliError::Core(e),
        }
    }
}

/// Errors caused by the inputs rather than by the numerics.
pub fn is_domain(e: &Error) -> bool {
    matches!(
        e,
        Error::GroupMismatch
            | Error::EvenCyclicOrder
            | Error::DivergentParameter
            | Error::PoleHit
            | Error::PoleProximity
            | Error::OutOfDomain(_)
            | Error::UnsupportedGroup
    )
}

pub fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

/// A JSON scalar kept as text, so `"b": 1.1` and `"b": "1.1"` are equivalent.
#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<Scalar> for String {
    fn from(s: Scalar) -> String {
        match s {
            Scalar::Int(i) => i.to_string(),
            Scalar::Float(x) => x.to_string(),
            Scalar::Text(t) => t,
        }
    }
}

fn text<'de, D: Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
    Ok(Option::<Scalar>::deserialize(d)?.map(String::from))
}

fn text_map<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, String>, D::Error> {
    let m = BTreeMap::<String, Scalar>::deserialize(d)?;
    Ok(m.into_iter().map(|(k, v)| (k, v.into())).collect())
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NumericsOverrides {
    /// Sets both tolerances.
    pub tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub max_nodes: Option<usize>,
    pub max_shells: Option<usize>,
    pub contour_nodes_initial: Option<usize>,
    pub contour_radius: Option<f64>,
    pub contour_shift: Option<f64>,
}

impl NumericsOverrides {
    fn overlay(&mut self, top: NumericsOverrides) {
        macro_rules! take {
            ($($f:ident),*) => { $( if top.$f.is_some() { self.$f = top.$f; } )* };
        }
        if top.tol.is_some() {
            self.abs_tol = None;
            self.rel_tol = None;
        }
        take!(tol, abs_tol, rel_tol, max_nodes, max_shells, contour_nodes_initial, contour_radius, contour_shift);
    }

    pub fn apply(&self, mut spec: NumericsSpec) -> NumericsSpec {
        if let Some(t) = self.tol {
            spec = spec.with_tol(t);
        }
        if let Some(t) = self.abs_tol {
            spec.abs_tol = t;
        }
        if let Some(t) = self.rel_tol {
            spec.rel_tol = t;
        }
        if let Some(n) = self.max_nodes {
            spec.max_nodes = n;
        }
        if let Some(n) = self.max_shells {
            spec.max_shells = n;
        }
        if let Some(n) = self.contour_nodes_initial {
            spec.contour_nodes_initial = n;
        }
        if self.contour_radius.is_some() {
            spec.contour_radius = self.contour_radius;
        }
        if self.contour_shift.is_some() {
            spec.contour_shift = self.contour_shift;
        }
        spec
    }
}

/// Resolved run configuration. Parameter values stay textual until a
/// command knows which group they belong to.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CliConfig {
    pub command: Option<Command>,
    pub family: Option<Family>,
    #[serde(deserialize_with = "text")]
    pub b: Option<String>,
    pub q: Option<f64>,
    pub n: Option<u32>,
    pub theta: Option<f64>,
    pub target: Option<Target>,
    pub rep: Option<String>,
    #[serde(deserialize_with = "text_map")]
    pub args: BTreeMap<String, String>,
    pub suite: Option<String>,
    pub check: Option<String>,
    #[serde(deserialize_with = "text_map")]
    pub point: BTreeMap<String, String>,
    pub samples: Option<usize>,
    pub grid: Vec<String>,
    pub numerics: NumericsOverrides,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl CliConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    /// Fields set in `top` win; maps are merged key by key.
    pub fn overlay(mut self, top: CliConfig) -> CliConfig {
        macro_rules! take {
            ($($f:ident),*) => { $( if top.$f.is_some() { self.$f = top.$f; } )* };
        }
        take!(command, family, b, q, n, theta, target, rep, suite, check, samples, format, output, seed);
        self.args.extend(top.args);
        self.point.extend(top.point);
        if !top.grid.is_empty() {
            self.grid = top.grid;
        }
        self.numerics.overlay(top.numerics);
        self
    }

    /// Default spec, then the environment tolerance, then overrides.
    pub fn numerics(&self, env_tol: Option<&str>) -> Result<NumericsSpec, CliError> {
        let mut spec = NumericsSpec::default();
        if let Some(t) = env_tol {
            let t: f64 = t.trim().parse().map_err(|_| CliError::Usage(format!("{TOL_ENV}=`{t}` is not a number")))?;
            spec = spec.with_tol(t);
        }
        let spec = self.numerics.apply(spec);
        spec.validate().map_err(|e| CliError::Usage(format!("numerics: {e}")))?;
        Ok(spec)
    }

    pub fn b(&self) -> Result<Option<qdilog_core::C64>, CliError> {
        self.b.as_deref().map(parse_complex).transpose().map_err(CliError::Usage)
    }

    /// The dilogarithm selected by `family` and its parameters, if any.
    pub fn dilog(&self) -> Result<Option<DilogSpec>, CliError> {
        let Some(family) = self.family else { return Ok(None) };
        let d = match family {
            Family::Tropical => DilogSpec::Tropical,
            Family::Dgg => DilogSpec::Dgg { q: self.q.ok_or_else(|| CliError::Usage("family dgg needs --q".into()))? },
            Family::Faddeev => {
                DilogSpec::Faddeev { b: self.b()?.ok_or_else(|| CliError::Usage("family faddeev needs --b".into()))? }
            }
            Family::Cyclic => DilogSpec::CyclicFaddeev {
                n: self.n.ok_or_else(|| CliError::Usage("family cyclic needs --n".into()))?,
                theta: self.theta.ok_or_else(|| CliError::Usage("family cyclic needs --theta".into()))?,
            },
        };
        Ok(Some(d))
    }

    pub fn require_dilog(&self) -> Result<DilogSpec, CliError> {
        self.dilog()?.ok_or_else(|| CliError::Usage("--family is required".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_rejected() {
        assert!(CliConfig::from_json(r#"{"famliy": "tropical"}"#).is_err());
        assert!(CliConfig::from_json(r#"{"numerics": {"tolerance": 1e-9}}"#).is_err());
    }

    #[test]
    fn json_document() {
        let c = CliConfig::from_json(
            r#"{"command": "eval", "family": "dgg", "q": 0.3, "target": "weil_phi",
                "args": {"u": 0.4, "m": 0, "v": "2", "n": 0}, "numerics": {"tol": 1e-12}}"#,
        )
        .unwrap();
        assert_eq!(c.command, Some(Command::Eval));
        assert_eq!(c.target, Some(Target::WeilPhi));
        assert_eq!(c.args["u"], "0.4");
        assert_eq!(c.args["m"], "0");
        assert_eq!(c.dilog().unwrap(), Some(DilogSpec::Dgg { q: 0.3 }));
        assert_eq!(c.numerics(None).unwrap().abs_tol, 1e-12);
    }

    #[test]
    fn overlay_precedence() {
        let base = CliConfig::from_json(r#"{"family": "tropical", "seed": 3, "args": {"z": "1", "m": "2"}}"#).unwrap();
        let top = CliConfig {
            seed: Some(9),
            args: [("m".to_string(), "5".to_string())].into_iter().collect(),
            ..Default::default()
        };
        let c = base.overlay(top);
        assert_eq!(c.seed, Some(9));
        assert_eq!(c.family, Some(Family::Tropical));
        assert_eq!(c.args["z"], "1");
        assert_eq!(c.args["m"], "5");
    }

    #[test]
    fn env_tolerance_then_overrides() {
        let c = CliConfig::default();
        assert_eq!(c.numerics(Some("1e-7")).unwrap().rel_tol, 1e-7);
        assert!(c.numerics(Some("tight")).is_err());
        let c = CliConfig::from_json(r#"{"numerics": {"abs_tol": 1e-9}}"#).unwrap();
        let s = c.numerics(Some("1e-7")).unwrap();
        assert_eq!((s.abs_tol, s.rel_tol), (1e-9, 1e-7));
    }

    #[test]
    fn missing_family_parameters() {
        let c = CliConfig { family: Some(Family::Faddeev), ..Default::default() };
        assert!(matches!(c.dilog(), Err(CliError::Usage(_))));
        let c = CliConfig { family: Some(Family::Faddeev), b: Some("0.8+0.6i".into()), ..Default::default() };
        assert!(matches!(c.dilog().unwrap(), Some(DilogSpec::Faddeev { .. })));
    }
}
