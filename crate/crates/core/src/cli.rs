//! Command-line front end.
//!
//! Exit codes: 0 success, 2 input or usage error, 3 numeric failure,
//! 4 configuration or domain error.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analysis::{
    asymptotic_equivalence_profile, franke_1d, order_table, smoothness_probe, symbol_from_mask,
    DiagnosticReport, SmoothnessReport,
};
use crate::error::NuccError;
use crate::masks::{EpsilonSign, MaskQuad};
use crate::seq::{Boundary, LevelSequence};
use crate::subdivision::{
    refine_curve, run, run_traced, ControlPolygon, Scheme, SchemeConfig, Variant,
};

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;
pub const EXIT_CONFIG: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "nucc",
    version,
    about = "Non-uniform corner-cutting subdivision"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Refine a scalar sequence.
    Refine(RefineArgs),
    /// Refine a 2D control polygon.
    Curve(CurveArgs),
    /// Approximation-order table on the scaled Franke function.
    OrderTable(OrderTableArgs),
    /// Refine the Kronecker delta and track divided differences.
    Smoothness(SmoothnessArgs),
    /// Symbol diagnostics of the masks used on Franke-sampled data.
    SymbolCheck(SymbolCheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeName {
    Chaikin,
    Expb,
    Nucc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EpsilonMode {
    /// `ε` takes the sign of the value it is added to.
    Match,
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Auto,
    Primary,
    Alternative,
}

#[derive(Debug, Clone, Args)]
pub struct SchemeOpts {
    /// Exponential B-spline shape parameter.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub gamma: f64,
    /// `|ε|` at k0 = 0; rescaled by 2^{-2 k0} for denser data.
    #[arg(long)]
    pub epsilon_mag: Option<f64>,
    #[arg(long, value_enum, default_value_t = EpsilonMode::Match)]
    pub epsilon_mode: EpsilonMode,
    /// Project NUCC coefficients into the Chaikin band.
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub clamp: bool,
    /// Variant threshold at k0 = 0; rescaled by 2^{-2 k0} for denser data.
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long, value_enum, default_value_t = VariantArg::Auto)]
    pub variant: VariantArg,
    /// Use this λ for every NUCC rule.
    #[arg(long, allow_negative_numbers = true)]
    pub fixed_lambda: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputOpts {
    /// Output file; standard output when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct RefineArgs {
    /// CSV (one value or "t,v" per line) or JSON `{"values": [...]}`; standard input when absent.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SchemeName::Nucc)]
    pub scheme: SchemeName,
    #[arg(long, default_value_t = 5)]
    pub levels: u32,
    /// Initial density exponent (spacing 2^{-k0}).
    #[arg(long)]
    pub k0: Option<u32>,
    /// Treat the sequence as periodic.
    #[arg(long)]
    pub closed: bool,
    #[command(flatten)]
    pub opts: SchemeOpts,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    /// CSV ("x,y" per line) or JSON `{"points": [[x, y], ...], "closed": bool}`.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SchemeName::Nucc)]
    pub scheme: SchemeName,
    #[arg(long, default_value_t = 5)]
    pub levels: u32,
    #[arg(long)]
    pub closed: bool,
    #[command(flatten)]
    pub opts: SchemeOpts,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Debug, Clone, Args)]
pub struct OrderTableArgs {
    /// Comma-separated list of schemes.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "nucc")]
    pub scheme: Vec<SchemeName>,
    /// Inclusive range "a..b".
    #[arg(long, value_parser = parse_k0_range, default_value = "0..7")]
    pub k0: RangeInclusive<u32>,
    /// Sampling interval "lo,hi".
    #[arg(long, value_parser = parse_domain, default_value = "-2,8", allow_hyphen_values = true)]
    pub domain: (f64, f64),
    /// Refinement levels before the error is measured.
    #[arg(long, default_value_t = 8)]
    pub levels: u32,
    #[command(flatten)]
    pub opts: SchemeOpts,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Debug, Clone, Args)]
pub struct SmoothnessArgs {
    #[arg(long, value_enum, default_value_t = SchemeName::Nucc)]
    pub scheme: SchemeName,
    #[arg(long, default_value_t = 10)]
    pub levels: u32,
    #[command(flatten)]
    pub opts: SchemeOpts,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Debug, Clone, Args)]
pub struct SymbolCheckArgs {
    #[arg(long, value_enum, default_value_t = SchemeName::Nucc)]
    pub scheme: SchemeName,
    #[arg(long, default_value_t = 3)]
    pub k0: u32,
    #[arg(long, default_value_t = 12)]
    pub levels: u32,
    #[arg(long, value_parser = parse_domain, default_value = "-2,8", allow_hyphen_values = true)]
    pub domain: (f64, f64),
    #[command(flatten)]
    pub opts: SchemeOpts,
    #[command(flatten)]
    pub out: OutputOpts,
}

/// A failure with its process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_NUMERIC,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<NuccError> for CliError {
    fn from(e: NuccError) -> Self {
        let code = match e {
            NuccError::InsufficientSupport { .. } => EXIT_INPUT,
            NuccError::TrigonometricSingularity { .. }
            | NuccError::DegenerateSystem { .. }
            | NuccError::ParameterOutOfRange(_) => EXIT_NUMERIC,
            NuccError::DomainTooSmall(_) | NuccError::InvalidConfig(_) => EXIT_CONFIG,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses "a..b" or "a..=b" (both inclusive) or a single "a".
pub fn parse_k0_range(s: &str) -> std::result::Result<RangeInclusive<u32>, String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let parse = |v: &str| {
        v.trim()
            .parse::<u32>()
            .map_err(|e| format!("bad k0 bound {v:?}: {e}"))
    };
    let r = parse(a)?..=parse(b)?;
    if r.is_empty() {
        return Err(format!("empty k0 range {s:?}"));
    }
    Ok(r)
}

/// Parses "lo,hi".
pub fn parse_domain(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"lo,hi\", got {s:?}"))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("bad domain bound {v:?}"))
    };
    Ok((parse(lo)?, parse(hi)?))
}

#[derive(Debug, Deserialize)]
struct SequenceDoc {
    values: Vec<f64>,
    #[serde(default)]
    k0: Option<u32>,
}

#[derive(Debug, Deserialize)]
struct CurveDoc {
    points: Vec<[f64; 2]>,
    #[serde(default)]
    closed: bool,
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn csv_rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split(',').map(str::trim).collect()))
}

fn parse_value(line: usize, s: &str) -> CliResult<f64> {
    s.parse::<f64>()
        .map_err(|_| CliError::input(format!("line {line}: cannot parse {s:?} as a number")))
}

/// Scalar sequence and optional `k0` from CSV or JSON text.
///
/// CSV lines hold either a value or `t,v`; the abscissa is ignored.
pub fn parse_sequence(text: &str) -> CliResult<(Vec<f64>, Option<u32>)> {
    if is_json(text) {
        let doc: SequenceDoc =
            serde_json::from_str(text).map_err(|e| CliError::input(format!("JSON: {e}")))?;
        return Ok((doc.values, doc.k0));
    }
    let mut values = Vec::new();
    for (line, fields) in csv_rows(text) {
        match fields.as_slice() {
            [v] | [_, v] => values.push(parse_value(line, v)?),
            _ => {
                return Err(CliError::input(format!(
                    "line {line}: expected 1 or 2 columns"
                )))
            }
        }
    }
    if values.is_empty() {
        return Err(CliError::input("no values in input"));
    }
    Ok((values, None))
}

/// Points and the JSON `closed` flag (false for CSV).
pub fn parse_points(text: &str) -> CliResult<(Vec<[f64; 2]>, bool)> {
    if is_json(text) {
        let doc: CurveDoc =
            serde_json::from_str(text).map_err(|e| CliError::input(format!("JSON: {e}")))?;
        return Ok((doc.points, doc.closed));
    }
    let mut points = Vec::new();
    for (line, fields) in csv_rows(text) {
        match fields.as_slice() {
            [x, y] => points.push([parse_value(line, x)?, parse_value(line, y)?]),
            _ => return Err(CliError::input(format!("line {line}: expected \"x,y\""))),
        }
    }
    Ok((points, false))
}

fn read_input(path: &Option<PathBuf>) -> CliResult<String> {
    match path {
        Some(p) => {
            std::fs::read_to_string(p).map_err(|e| CliError::input(format!("{}: {e}", p.display())))
        }
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::input(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn write_output(out: &OutputOpts, body: &str) -> CliResult<()> {
    let res = match &out.output {
        Some(p) => std::fs::write(p, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    };
    res.map_err(|e| CliError::input(format!("writing output: {e}")))
}

fn scheme_of(name: SchemeName, gamma: f64) -> Scheme {
    match name {
        SchemeName::Chaikin => Scheme::Chaikin,
        SchemeName::Expb => Scheme::ExpBSpline { gamma },
        SchemeName::Nucc => Scheme::Nucc,
    }
}

fn scheme_label(name: SchemeName) -> &'static str {
    match name {
        SchemeName::Chaikin => "chaikin",
        SchemeName::Expb => "expb",
        SchemeName::Nucc => "nucc",
    }
}

/// Level-0 configuration for `name` with the overrides in `o`.
pub fn scheme_config(name: SchemeName, o: &SchemeOpts) -> CliResult<SchemeConfig> {
    let mut cfg = SchemeConfig::new(scheme_of(name, o.gamma));
    if let Some(m) = o.epsilon_mag {
        cfg.eps_scale = m;
        cfg.eps.magnitude = m;
    }
    cfg.eps.sign_mode = match o.epsilon_mode {
        EpsilonMode::Match => EpsilonSign::MatchLocalValue,
        EpsilonMode::Positive => EpsilonSign::FixedPositive,
    };
    if let Some(t) = o.threshold {
        cfg.threshold_scale = t;
        cfg.variant_threshold = t;
    }
    cfg.variant = match o.variant {
        VariantArg::Auto => Variant::Auto,
        VariantArg::Primary => Variant::Primary,
        VariantArg::Alternative => Variant::Alternative,
    };
    cfg.clamp = o.clamp;
    cfg.fixed_lambda = o.fixed_lambda;
    cfg.validate()?;
    Ok(cfg)
}

fn require_tabular(out: &OutputOpts, command: &str) -> CliResult<()> {
    if out.format == Format::Svg {
        return Err(CliError::config(format!(
            "svg output is only available for curve, not {command}"
        )));
    }
    Ok(())
}

fn check_finite<'a>(values: impl IntoIterator<Item = &'a f64>) -> CliResult<()> {
    if values.into_iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(CliError::numeric("refinement produced non-finite values"))
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

/// Shortest representation that parses back to the same `f64`.
fn num(v: f64) -> String {
    format!("{v:?}")
}

fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

#[derive(Debug, Serialize)]
struct SequenceOut<'a> {
    level: u32,
    k0: u32,
    first_index: i64,
    values: &'a [f64],
    abscissae: Vec<f64>,
}

pub fn cmd_refine(a: &RefineArgs) -> CliResult<()> {
    require_tabular(&a.out, "refine")?;
    let (values, doc_k0) = parse_sequence(&read_input(&a.input)?)?;
    let k0 = a.k0.or(doc_k0).unwrap_or(0);
    let boundary = if a.closed {
        Boundary::Periodic
    } else {
        Boundary::ReplicateEnd
    };
    let cfg = scheme_config(a.scheme, &a.opts)?
        .with_boundary(boundary)
        .at_density(k0);
    let f0 = LevelSequence::new(values, 0, 0, k0, boundary)?;
    let f = run(f0, &cfg, a.levels)?.f;
    check_finite(f.values())?;

    let body = match a.out.format {
        Format::Json => to_json(&SequenceOut {
            level: f.level(),
            k0,
            first_index: f.first_index(),
            values: f.values(),
            abscissae: f.iter_points().map(|(_, t, _)| t).collect(),
        }),
        _ => {
            let mut s = format!(
                "# level={} k0={} first_index={}\n# t,v\n",
                f.level(),
                k0,
                f.first_index()
            );
            for (_, t, v) in f.iter_points() {
                let _ = writeln!(s, "{},{}", num(t), num(v));
            }
            s
        }
    };
    write_output(&a.out, &body)
}

/// Input polygon dashed, refined curve as one solid polyline.
pub fn curve_svg(input: &ControlPolygon, refined: &ControlPolygon) -> String {
    let all = || input.points.iter().chain(&refined.points);
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in all() {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    let (w, h) = (x1 - x0, y1 - y0);
    let size = if w.max(h) > 0.0 { w.max(h) } else { 1.0 };
    let (mx, my) = (
        if w > 0.0 { 0.05 * w } else { 0.05 * size },
        if h > 0.0 { 0.05 * h } else { 0.05 * size },
    );
    let stroke = size * 4e-3;
    // SVG's y axis points down
    let pt = |p: &[f64; 2]| format!("{},{}", num(p[0]), num(0.0 - p[1]));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        num(x0 - mx),
        num(-y1 - my),
        num(w + 2.0 * mx),
        num(h + 2.0 * my)
    );
    let mut d = String::new();
    for (i, p) in input.points.iter().enumerate() {
        let _ = write!(d, "{}{} ", if i == 0 { 'M' } else { 'L' }, pt(p));
    }
    if input.closed {
        d.push('Z');
    }
    let _ = writeln!(
        s,
        r#"  <path d="{}" fill="none" stroke="gray" stroke-width="{}" stroke-dasharray="{} {}"/>"#,
        d.trim_end(),
        num(stroke),
        num(4.0 * stroke),
        num(3.0 * stroke)
    );
    let pts: Vec<String> = refined.points.iter().map(pt).collect();
    let _ = writeln!(
        s,
        r#"  <polyline points="{}" fill="none" stroke="black" stroke-width="{}"/>"#,
        pts.join(" "),
        num(stroke)
    );
    s.push_str("</svg>\n");
    s
}

pub fn cmd_curve(a: &CurveArgs) -> CliResult<()> {
    let (points, doc_closed) = parse_points(&read_input(&a.input)?)?;
    let input = ControlPolygon::new(points, a.closed || doc_closed)?;
    let cfg = scheme_config(a.scheme, &a.opts)?;
    let refined = refine_curve(&input, &cfg, a.levels)?;
    check_finite(refined.points.iter().flatten())?;

    let body = match a.out.format {
        Format::Svg => curve_svg(&input, &refined),
        Format::Json => to_json(&refined),
        Format::Csv => {
            let mut s = format!("# levels={} closed={}\n# x,y\n", a.levels, refined.closed);
            for p in &refined.points {
                let _ = writeln!(s, "{},{}", num(p[0]), num(p[1]));
            }
            s
        }
    };
    write_output(&a.out, &body)
}

#[derive(Debug, Serialize)]
struct OrderRowOut {
    k0: u32,
    density: f64,
    max_error: f64,
    est_order: Option<f64>,
}

#[derive(Debug, Serialize)]
struct OrderTableOut {
    scheme: &'static str,
    rows: Vec<OrderRowOut>,
}

pub fn cmd_order_table(a: &OrderTableArgs) -> CliResult<()> {
    require_tabular(&a.out, "order-table")?;
    let mut tables = Vec::new();
    for &name in &a.scheme {
        let cfg = scheme_config(name, &a.opts)?;
        let rows = order_table(franke_1d, &cfg, a.k0.clone(), a.domain, a.levels)?;
        tables.push(OrderTableOut {
            scheme: scheme_label(name),
            rows: rows
                .into_iter()
                .map(|r| OrderRowOut {
                    k0: r.k0,
                    density: r.density(),
                    max_error: r.max_error,
                    est_order: r.est_order,
                })
                .collect(),
        });
    }
    let body = match a.out.format {
        Format::Json => to_json(&tables),
        _ => {
            let mut s = format!(
                "# franke_1d on [{}, {}], {} levels\nscheme,k0,density,max_error,est_order\n",
                num(a.domain.0),
                num(a.domain.1),
                a.levels
            );
            for t in &tables {
                for r in &t.rows {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{}",
                        t.scheme,
                        r.k0,
                        num(r.density),
                        num(r.max_error),
                        opt_num(r.est_order)
                    );
                }
            }
            s
        }
    };
    write_output(&a.out, &body)
}

fn smoothness_csv(r: &SmoothnessReport) -> String {
    let mut s = String::from("# levels\nlevel,max_first_difference,increment,ratio\n");
    for l in &r.levels {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            l.level,
            num(l.max_first_difference),
            opt_num(l.increment),
            opt_num(l.ratio)
        );
    }
    for (title, pts) in [
        ("limit", &r.limit),
        ("first_derivative", &r.first_derivative),
        ("second_derivative", &r.second_derivative),
    ] {
        let _ = writeln!(s, "# {title}\nt,value");
        for p in pts {
            let _ = writeln!(s, "{},{}", num(p[0]), num(p[1]));
        }
    }
    s
}

pub fn cmd_smoothness(a: &SmoothnessArgs) -> CliResult<()> {
    require_tabular(&a.out, "smoothness")?;
    let cfg = scheme_config(a.scheme, &a.opts)?;
    let report = smoothness_probe(&cfg, a.levels)?;
    if report
        .levels
        .iter()
        .any(|l| !l.max_first_difference.is_finite())
    {
        return Err(CliError::numeric("probe produced non-finite differences"));
    }
    let body = match a.out.format {
        Format::Json => to_json(&report),
        _ => smoothness_csv(&report),
    };
    write_output(&a.out, &body)
}

/// `sup_j |a(1) - 2|` and `sup_j |a(-1)|` at one level.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PartitionLine {
    pub level: u32,
    pub sum_error: f64,
    pub alternating_sum: f64,
}

fn partition_lines(trace: &[Vec<MaskQuad>]) -> Vec<PartitionLine> {
    trace
        .iter()
        .enumerate()
        .map(|(k, masks)| {
            let (mut one, mut minus) = (0.0f64, 0.0f64);
            for m in masks {
                let sym = symbol_from_mask(m);
                one = one.max((sym.eval(1.0) - 2.0).abs());
                minus = minus.max(sym.eval(-1.0).abs());
            }
            PartitionLine {
                level: k as u32,
                sum_error: one,
                alternating_sum: minus,
            }
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct SymbolCheckOut<'a> {
    scheme: &'static str,
    k0: u32,
    report: &'a DiagnosticReport,
    partition: &'a [PartitionLine],
}

pub fn cmd_symbol_check(a: &SymbolCheckArgs) -> CliResult<()> {
    require_tabular(&a.out, "symbol-check")?;
    let cfg = scheme_config(a.scheme, &a.opts)?.at_density(a.k0);
    let (lo, hi) = a.domain;
    let scale = f64::from(1u32 << a.k0.min(30));
    let range = (lo * scale + 0.5).ceil() as i64..=(hi * scale + 0.5).floor() as i64;
    let f0 = LevelSequence::sample(franke_1d, range, a.k0, Boundary::ReplicateEnd)?;
    let (_, trace) = run_traced(f0, &cfg, a.levels)?;
    let report = asymptotic_equivalence_profile(&trace);
    let partition = partition_lines(&trace);

    let body = match a.out.format {
        Format::Json => to_json(&SymbolCheckOut {
            scheme: scheme_label(a.scheme),
            k0: a.k0,
            report: &report,
            partition: &partition,
        }),
        _ => {
            let (f0, f1) = report.fit_levels;
            let mut s = format!(
                "# scheme={} k0={} levels={}\n# fit_levels={f0}..{f1}\n# ae_decay_exponent={}\n# property_a_decay_exponent={}\n",
                scheme_label(a.scheme),
                a.k0,
                a.levels,
                opt_num(report.ae_decay_exponent),
                opt_num(report.property_a_decay_exponent),
            );
            s.push_str("level,ae_deviation,ae_partial_sum,property_a,partition_error\n");
            for l in &report.levels {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    l.level,
                    num(l.ae_deviation),
                    num(l.ae_partial_sum),
                    num(l.property_a),
                    num(l.partition_error)
                );
            }
            s.push_str(
                "# partition of unity: sup |a(1) - 2| and sup |a(-1)|\nlevel,a(1)-2,a(-1)\n",
            );
            for p in &partition {
                let _ = writeln!(
                    s,
                    "{},{},{}",
                    p.level,
                    num(p.sum_error),
                    num(p.alternating_sum)
                );
            }
            s
        }
    };
    write_output(&a.out, &body)
}

pub fn execute(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Refine(a) => cmd_refine(a),
        Command::Curve(a) => cmd_curve(a),
        Command::OrderTable(a) => cmd_order_table(a),
        Command::Smoothness(a) => cmd_smoothness(a),
        Command::SymbolCheck(a) => cmd_symbol_check(a),
    }
}

/// Parses `args`, runs the command and maps failures to exit codes.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::new().filter("NUCC_LOG")).try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nucc: {e}");
            ExitCode::from(e.code)
        }
    }
}
