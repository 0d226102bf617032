//! Grid tables: one evaluation per grid point, in row-major order.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use qdilog_core::C64;

use crate::config::{is_domain, usage, CliError, Format, Target};
use crate::eval::{evaluate, finite, ArgMap, EvalContext, Evaluation};
use crate::parse::{format_complex, format_real, parse_grid, Axis};

/// Axis names that sweep a numerics setting instead of an argument.
const SPEC_AXES: [&str; 2] = ["contour_radius", "contour_shift"];

pub struct Row {
    pub point: Vec<C64>,
    pub result: Result<Evaluation, CliError>,
}

pub struct Table {
    pub axes: Vec<Axis>,
    pub rows: Vec<Row>,
}

impl Table {
    /// 0 when every row evaluated, 2 if any row hit a domain error, else 1.
    pub fn exit_code(&self) -> i32 {
        let mut code = 0;
        for r in &self.rows {
            match &r.result {
                Ok(_) => {}
                Err(CliError::Core(e)) if is_domain(e) => code = 2,
                Err(_) => code = code.max(1),
            }
        }
        code
    }
}

pub fn build(
    target: Target,
    ctx: &EvalContext,
    fixed: &BTreeMap<String, String>,
    grids: &[String],
) -> Result<Table, CliError> {
    if grids.is_empty() || grids.len() > 2 {
        return usage("table needs one or two --grid specs");
    }
    let axes = grids.iter().map(|g| parse_grid(g)).collect::<Result<Vec<_>, _>>().map_err(CliError::Usage)?;
    for a in &axes {
        if fixed.contains_key(&a.name) {
            return usage(format!("`{}` is both a grid axis and a fixed argument", a.name));
        }
        if SPEC_AXES.contains(&a.name.as_str()) && a.points.iter().any(|z| z.im != 0.0) {
            return usage(format!("`{}` must be real", a.name));
        }
    }
    if axes.len() == 2 && axes[0].name == axes[1].name {
        return usage("grid axes must have distinct names");
    }
    let mut points: Vec<Vec<C64>> = axes[0].points.iter().map(|&p| vec![p]).collect();
    if let Some(second) = axes.get(1) {
        points = points.into_iter().flat_map(|p| second.points.iter().map(move |&q| vec![p[0], q])).collect();
    }
    let mut rows = Vec::with_capacity(points.len());
    for point in points {
        let mut args = fixed.clone();
        let mut spec = ctx.spec;
        for (axis, z) in axes.iter().zip(&point) {
            match axis.name.as_str() {
                "contour_radius" => spec.contour_radius = Some(z.re),
                "contour_shift" => spec.contour_shift = Some(z.re),
                name => {
                    args.insert(name.to_string(), format_complex(*z));
                }
            }
        }
        let row_ctx = EvalContext { dilog: ctx.dilog, rep: ctx.rep.clone(), q: ctx.q, spec };
        let result = evaluate(target, &row_ctx, &ArgMap::new(args)).and_then(finite);
        if let Err(e @ CliError::Usage(_)) = result {
            return Err(e);
        }
        rows.push(Row { point, result });
    }
    Ok(Table { axes, rows })
}

fn coordinate(z: C64, real_axis: bool) -> String {
    if real_axis {
        format_real(z.re)
    } else {
        format_complex(z)
    }
}

fn error_text(e: &CliError) -> String {
    match e {
        CliError::Core(e) => e.kind().to_string(),
        other => other.to_string(),
    }
}

/// CSV with header `axis..., re, im, abs, err`. Failed rows leave the
/// value columns empty and put the error kind in `err`.
pub fn write_csv(t: &Table) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    let real_axes: Vec<bool> = t.axes.iter().map(|a| a.points.iter().all(|z| z.im == 0.0)).collect();
    let mut header: Vec<&str> = t.axes.iter().map(|a| a.name.as_str()).collect();
    header.extend(["re", "im", "abs", "err"]);
    w.write_record(&header).map_err(io)?;
    for row in &t.rows {
        let mut rec: Vec<String> = row.point.iter().zip(&real_axes).map(|(z, &r)| coordinate(*z, r)).collect();
        match &row.result {
            Ok(e) => rec.extend([
                format_real(e.value.re),
                format_real(e.value.im),
                format_real(e.value.norm()),
                format_real(e.err),
            ]),
            Err(e) => rec.extend([String::new(), String::new(), String::new(), error_text(e)]),
        }
        w.write_record(&rec).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

/// One JSON object per row.
pub fn write_json(t: &Table) -> String {
    let mut out = String::new();
    for row in &t.rows {
        let mut o = Map::new();
        for (a, z) in t.axes.iter().zip(&row.point) {
            o.insert(a.name.clone(), json!(format_complex(*z)));
        }
        match &row.result {
            Ok(e) => {
                o.insert("value".into(), json!(format_complex(e.value)));
                o.insert("abs".into(), json!(e.value.norm()));
                o.insert("err".into(), json!(e.err));
            }
            Err(e) => {
                o.insert("error".into(), json!(error_text(e)));
            }
        }
        out.push_str(&Value::Object(o).to_string());
        out.push('\n');
    }
    out
}

pub fn render(t: &Table, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(write_json(t)),
        Format::Csv | Format::Human => write_csv(t),
    }
}
