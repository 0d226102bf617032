//! Command-line frontend for `qdilog-core`: `eval`, `verify` and `table`.
//!
//! Exit codes: 0 success, 1 check or numerical failure, 2 domain error,
//! 64 usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Map, Value};

use qdilog_core::verify::{run_suite, SuiteConfig};

pub mod args;
pub mod checks;
pub mod config;
pub mod eval;
pub mod parse;
pub mod report;
pub mod table;

use config::{is_domain, usage, CliConfig, CliError, Command, Format, TOL_ENV};
use eval::{evaluate, finite, ArgMap, EvalContext};
use parse::{format_complex, format_real};
use report::{report_human, report_json, Summary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Output text plus exit code.
struct Outcome {
    text: String,
    code: i32,
}

fn exit_code(e: &CliError) -> i32 {
    match e {
        CliError::Usage(_) => EXIT_USAGE,
        CliError::Core(e) if is_domain(e) => EXIT_DOMAIN,
        _ => EXIT_FAIL,
    }
}

/// Parses `argv`, runs the command and writes its output. Returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let env_tol = std::env::var(TOL_ENV).ok();
    let cfg = match resolve(cli) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    match execute(&cfg, env_tol.as_deref()) {
        Ok(out) => match emit(&cfg, &out.text, stdout) {
            Ok(()) => out.code,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_FAIL
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Config file (if any) under the flags.
fn resolve(cli: args::Cli) -> Result<CliConfig, CliError> {
    let base = match &cli.config {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            CliConfig::from_json(&text)?
        }
        None => CliConfig::default(),
    };
    let top = match cli.command {
        Some(sub) => sub.into_config().map_err(CliError::Usage)?,
        None => CliConfig::default(),
    };
    Ok(base.overlay(top))
}

fn emit(cfg: &CliConfig, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Runs a resolved configuration without touching stdout.
pub fn execute_config(cfg: &CliConfig, env_tol: Option<&str>) -> Result<(String, i32), CliError> {
    execute(cfg, env_tol).map(|o| (o.text, o.code))
}

fn execute(cfg: &CliConfig, env_tol: Option<&str>) -> Result<Outcome, CliError> {
    let spec = cfg.numerics(env_tol)?;
    match cfg.command {
        Some(Command::Eval) => cmd_eval(cfg, spec),
        Some(Command::Verify) => cmd_verify(cfg, spec),
        Some(Command::Table) => cmd_table(cfg, spec),
        None => usage("no command given (eval, verify or table)"),
    }
}

fn context(cfg: &CliConfig, spec: qdilog_core::NumericsSpec) -> Result<EvalContext, CliError> {
    Ok(EvalContext { dilog: cfg.dilog()?, rep: cfg.rep.clone(), q: cfg.q, spec })
}

fn cmd_eval(cfg: &CliConfig, spec: qdilog_core::NumericsSpec) -> Result<Outcome, CliError> {
    let target = cfg.target.ok_or_else(|| CliError::Usage("eval needs --target".into()))?;
    let ctx = context(cfg, spec)?;
    let e = finite(evaluate(target, &ctx, &ArgMap::new(cfg.args.clone()))?)?;
    let text = match cfg.format.unwrap_or(Format::Human) {
        Format::Human => {
            let mut s = format!("{} = {}  err {}", target.name(), format_complex(e.value), format_real(e.err));
            if let Some(m) = e.index {
                s.push_str(&format!("  index {m}"));
            }
            s.push('\n');
            s
        }
        Format::Json => {
            let mut o = Map::new();
            o.insert("target".into(), json!(target.name()));
            o.insert("dilog".into(), ctx.dilog.as_ref().map_or(Value::Null, report::dilog_json));
            o.insert("args".into(), json!(cfg.args));
            o.insert("value".into(), json!(format_complex(e.value)));
            o.insert("abs".into(), json!(e.value.norm()));
            o.insert("err".into(), json!(e.err));
            if let Some(m) = e.index {
                o.insert("index".into(), json!(m));
            }
            format!("{}\n", Value::Object(o))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Io(e.to_string());
            let mut header: Vec<&str> = cfg.args.keys().map(String::as_str).collect();
            header.extend(["re", "im", "abs", "err"]);
            w.write_record(&header).map_err(io)?;
            let mut rec: Vec<String> = cfg.args.values().cloned().collect();
            rec.extend([
                format_real(e.value.re),
                format_real(e.value.im),
                format_real(e.value.norm()),
                format_real(e.err),
            ]);
            w.write_record(&rec).map_err(io)?;
            String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?)
                .map_err(|e| CliError::Io(e.to_string()))?
        }
    };
    Ok(Outcome { text, code: EXIT_OK })
}

fn cmd_verify(cfg: &CliConfig, spec: qdilog_core::NumericsSpec) -> Result<Outcome, CliError> {
    let seed = cfg.seed.unwrap_or(SuiteConfig::default().seed);
    let reports = match (&cfg.suite, &cfg.check) {
        (Some(_), Some(_)) => return usage("give either --suite or --check, not both"),
        (None, None) => return usage("verify needs --suite or --check"),
        (Some(name), None) => {
            if !cfg.point.is_empty() || cfg.family.is_some() || cfg.samples.is_some() {
                return usage("--point, --family and --samples apply to --check only");
            }
            run_suite(name, &SuiteConfig { seed, numerics: spec })?
        }
        (None, Some(name)) => {
            let point = ArgMap::new(cfg.point.clone());
            let inp = checks::CheckInput {
                dilog: cfg.dilog()?,
                b: cfg.b()?,
                seed,
                samples: cfg.samples,
                point: &point,
                spec,
            };
            vec![checks::run_check(name, &inp)?]
        }
    };
    let summary = Summary::of(&reports);
    let mut text = String::new();
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            for r in &reports {
                text.push_str(&report_json(r).to_string());
                text.push('\n');
            }
            text.push_str(&summary.json().to_string());
            text.push('\n');
        }
        Format::Human => {
            for r in &reports {
                text.push_str(&report_human(r));
                text.push('\n');
            }
            text.push_str(&format!(
                "{} reports: {} passed, {} failed, {} skipped, {} advisory\n",
                summary.reports, summary.passed, summary.failed, summary.skipped, summary.advisory
            ));
        }
        Format::Csv => return usage("verify writes json or human output"),
    }
    Ok(Outcome { text, code: summary.exit_code() })
}

fn cmd_table(cfg: &CliConfig, spec: qdilog_core::NumericsSpec) -> Result<Outcome, CliError> {
    let target = cfg.target.ok_or_else(|| CliError::Usage("table needs --target".into()))?;
    let ctx = context(cfg, spec)?;
    let t = table::build(target, &ctx, &cfg.args, &cfg.grid)?;
    let text = table::render(&t, cfg.format.unwrap_or(Format::Csv))?;
    Ok(Outcome { text, code: t.exit_code() })
}
