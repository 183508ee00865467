//! The `cmh` command line. [`run`] never panics on bad input and always
//! returns 0, 1 or 2.

use crate::gen_func::ShiftedTFunction;
use crate::grid::GridSpec;
use crate::harmonic_map::{
    certify_qc_grid, certify_qc_via_limit, certify_qc_via_ratio, harnack_ratio_bound, ratio_bound_sup, HarmonicMap,
    QcCertificate, Verdict,
};
use crate::json::{flatten, fmt_f64, parse_map, parse_measure, to_json, HypergeomPair, MapSpec, PolylogPair};
use crate::measure::Measure;
use crate::moment_seq::MomentSequence;
use crate::special_fn::{
    certify_hypergeom_map, certify_polylog_map, l_derivative, l_function, polylog, SeriesOptions, MAX_SERIES_TERMS,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable capping the number of series terms.
pub const MAX_TERMS_ENV: &str = "CMH_MAX_TERMS";

#[derive(Debug, Parser)]
#[command(
    name = "cmh",
    version,
    about = "Completely monotone sequences and quasiconformal harmonic maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Outer radius of the disk grid.
    #[arg(long = "grid-r", visible_alias = "rmax")]
    grid_r: Option<f64>,
    /// Angles per circle.
    #[arg(long = "grid-n", visible_alias = "ntheta")]
    grid_n: Option<usize>,
    /// Number of circles.
    #[arg(long)]
    nr: Option<usize>,
    /// Inner radius of the disk grid.
    #[arg(long)]
    rmin: Option<f64>,
    /// Half-plane rectangle `x_min,x_max,y_min,y_max[,nx,ny]`.
    #[arg(long, allow_hyphen_values = true)]
    rect: Option<String>,
    /// Samples of t in [0, 1] for ratio sweeps.
    #[arg(long)]
    nt: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Sampled sup of |ω| over the disk grid.
    Grid,
    /// h + c·conj(h∗g) via the sampled ratio sup of |h'(tz)/h'(z)|.
    #[value(alias = "thm1.6")]
    RatioBound,
    /// Closed-form constants for Li_α + c·conj(Li_β).
    #[value(alias = "thm1.7")]
    Polylog,
    /// Boundary limit of g'/h' under the density cross-ratio condition.
    #[value(alias = "thm1.9")]
    DerivativeLimit,
    /// Closed-form constants for L_{a,c} + b·conj(L_{a2,c2}).
    #[value(alias = "hyp")]
    Hypergeom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    /// |a + f(z)| ≥ a + f(-|z|) ≥ a + lim f(-r) on the disk grid.
    #[value(alias = "1.2")]
    Modulus,
    /// Signs of -y ∂_y Re f and y ∂_x Im f on the half-plane grid.
    #[value(alias = "1.3")]
    Signs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a JSON array of numbers for complete monotonicity.
    CheckCm {
        path: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Moments a_0..a_{n-1} of a measure spec.
    Moments {
        path: PathBuf,
        #[arg(long, default_value_t = 13)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate f at points `re,im`.
    Eval {
        path: PathBuf,
        #[arg(long = "z", required = true, allow_hyphen_values = true)]
        z: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Dilatation and Jacobian at points `re,im` of the open disk.
    Dilatation {
        path: PathBuf,
        #[arg(long = "z", required = true, allow_hyphen_values = true)]
        z: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Certify sup |ω| ≤ k. Exit 0 certified, 1 violated, 2 inconclusive.
    Certify {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "grid")]
        method: Method,
        #[arg(long)]
        k: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Check a univalence-related inequality. Exit 0 holds, 1 fails.
    VerifyThm {
        #[arg(value_enum)]
        check: Check,
        path: PathBuf,
        /// Shift for the modulus check; defaults to max(0, -lim f(-r)).
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Sampled sup of |h'(tz)/h'(z)| for h given by a measure spec.
    RatioSup {
        path: PathBuf,
        /// Also test Re(z h''/h') ≥ -m and the bound e^{2m}.
        #[arg(long)]
        m: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Image of a curve as CSV rows `param,re_z,im_z,re_f,im_f`.
    Render {
        path: PathBuf,
        /// `circle:r`, `segment:x0,y0,x1,y1` or `arc:cx,cy,r,theta0,theta1`.
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

type Fallible<T> = Result<T, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, errw: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = errw.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(errw, "error: {msg}");
            2
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Fallible<i32> {
    match cmd {
        Command::CheckCm { path, tol, output } => check_cm(&path, tol, &output, out),
        Command::Moments { path, n, output } => moments(&path, n, &output, out),
        Command::Eval { path, z, output } => eval(&path, &z, &output, out),
        Command::Dilatation { path, z, output } => dilatation(&path, &z, &output, out),
        Command::Certify {
            path,
            method,
            k,
            grid,
            output,
        } => certify(&path, method, k, &grid, &output, out),
        Command::VerifyThm {
            check,
            path,
            a,
            grid,
            output,
        } => verify(check, &path, a, &grid, &output, out),
        Command::RatioSup { path, m, grid, output } => ratio_sup(&path, m, &grid, &output, out),
        Command::Render {
            path,
            curve,
            n,
            out: file,
        } => render(&path, &curve, n, file.as_deref(), out),
    }
}

fn read_json(path: &Path) -> Fallible<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(text: &str, file: Option<&Path>, out: &mut dyn Write) -> Fallible<()> {
    match file {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => out.write_all(text.as_bytes()).map_err(err),
    }
}

/// JSON as is, or CSV `key,value` rows of the flattened document.
fn emit_doc<T: Serialize>(doc: &T, output: &Output, out: &mut dyn Write) -> Fallible<()> {
    let text = match output.format {
        Format::Json => to_json(doc),
        Format::Csv => {
            let v = serde_json::to_value(doc).map_err(err)?;
            let mut s = String::from("key,value\n");
            for (k, v) in flatten(&v) {
                s.push_str(&format!("{k},{v}\n"));
            }
            s
        }
    };
    emit(&text, output.out.as_deref(), out)
}

fn emit_rows(header: &str, rows: &[Vec<f64>], output: &Output, doc: Value, out: &mut dyn Write) -> Fallible<()> {
    match output.format {
        Format::Json => emit(&to_json(&doc), output.out.as_deref(), out),
        Format::Csv => {
            let mut s = format!("{header}\n");
            for row in rows {
                let cells: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            emit(&s, output.out.as_deref(), out)
        }
    }
}

fn positive_tol(tol: f64) -> Fallible<f64> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(format!("--tol must be positive, got {tol}"))
    }
}

fn series_options() -> Fallible<SeriesOptions> {
    let mut opts = SeriesOptions::default();
    if let Ok(v) = std::env::var(MAX_TERMS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| format!("{MAX_TERMS_ENV} must be a positive integer, got {v:?}"))?;
        if n == 0 {
            return Err(format!("{MAX_TERMS_ENV} must be positive"));
        }
        opts.max_terms = n.min(MAX_SERIES_TERMS);
    }
    Ok(opts)
}

fn parse_floats(s: &str, count: usize, what: &str) -> Fallible<Vec<f64>> {
    let v: Result<Vec<f64>, _> = s.split(',').map(|p| p.trim().parse::<f64>()).collect();
    match v {
        Ok(v) if v.len() == count && v.iter().all(|x| x.is_finite()) => Ok(v),
        _ => Err(format!(
            "{what} expects {count} comma-separated finite numbers, got {s:?}"
        )),
    }
}

fn parse_point(s: &str) -> Fallible<Complex64> {
    let v = parse_floats(s, 2, "--z")?;
    Ok(Complex64::new(v[0], v[1]))
}

fn grid_spec(args: &GridArgs) -> Fallible<GridSpec> {
    let mut g = GridSpec::default();
    if let Some(r) = args.grid_r {
        g.r_max = r;
    }
    if let Some(r) = args.rmin {
        g.r_min = r;
    }
    if let Some(n) = args.grid_n {
        g.n_theta = n;
    }
    if let Some(n) = args.nr {
        g.n_r = n;
    }
    if let Some(n) = args.nt {
        g.n_t = n;
    }
    if let Some(rect) = &args.rect {
        let parts: Vec<&str> = rect.split(',').collect();
        let v = match parts.len() {
            4 | 6 => parse_floats(rect, parts.len(), "--rect")?,
            _ => return Err(format!("--rect expects x_min,x_max,y_min,y_max[,nx,ny], got {rect:?}")),
        };
        g.rect.x_min = v[0];
        g.rect.x_max = v[1];
        g.rect.y_min = v[2];
        g.rect.y_max = v[3];
        if v.len() == 6 {
            for x in &v[4..] {
                if x.fract() != 0.0 || *x < 0.0 {
                    return Err(format!("--rect counts must be whole numbers, got {x}"));
                }
            }
            g.rect.nx = v[4] as usize;
            g.rect.ny = v[5] as usize;
        }
    }
    g.validate().map_err(err)?;
    Ok(g)
}

fn check_cm(path: &Path, tol: f64, output: &Output, out: &mut dyn Write) -> Fallible<i32> {
    let tol = positive_tol(tol)?;
    let v = read_json(path)?;
    let values: Vec<f64> = serde_json::from_value(v).map_err(|e| format!("expected a JSON array of numbers: {e}"))?;
    let seq = MomentSequence::new(values).map_err(err)?;
    let verdict = seq.is_completely_monotone(tol);
    let doc = json!({
        "length": seq.values().len(),
        "tol": tol,
        "normalized": seq.is_normalized(),
        "result": verdict,
    });
    emit_doc(&doc, output, out)?;
    Ok(if verdict.holds() { 0 } else { 1 })
}

fn moments(path: &Path, n: usize, output: &Output, out: &mut dyn Write) -> Fallible<i32> {
    if n == 0 {
        return Err("--n must be at least 1".into());
    }
    let mu = parse_measure(&read_json(path)?).map_err(err)?;
    let m = mu.moments(n).map_err(err)?;
    let rows: Vec<Vec<f64>> = m.iter().enumerate().map(|(i, &v)| vec![i as f64, v]).collect();
    emit_rows("n,moment", &rows, output, json!({ "moments": m }), out)?;
    Ok(0)
}

/// Evaluates a map spec, using the special-function series for polylog and
/// hypergeometric pairs.
enum Evaluator {
    Map(HarmonicMap),
    Polylog(PolylogPair, f64, SeriesOptions),
    Hypergeom(HypergeomPair, f64, SeriesOptions),
}

impl Evaluator {
    fn new(spec: &MapSpec) -> Fallible<Self> {
        Ok(match spec {
            MapSpec::Polylog { pair, c } => {
                spec.build().map_err(err)?;
                Evaluator::Polylog(*pair, *c, series_options()?)
            }
            MapSpec::Hypergeom { pair, b } => {
                spec.build().map_err(err)?;
                Evaluator::Hypergeom(*pair, *b, series_options()?)
            }
            _ => Evaluator::Map(spec.build().map_err(err)?),
        })
    }

    fn eval(&self, z: Complex64) -> Fallible<Complex64> {
        match self {
            Evaluator::Map(f) => f.eval(z).map_err(err),
            Evaluator::Polylog(p, c, o) => {
                Ok(polylog(p.alpha, z, o).map_err(err)? + *c * polylog(p.beta, z, o).map_err(err)?.conj())
            }
            Evaluator::Hypergeom(p, b, o) => {
                Ok(l_function(p.a, p.c, z, o).map_err(err)? + *b * l_function(p.a2, p.c2, z, o).map_err(err)?.conj())
            }
        }
    }

    /// `(h'(z), g'(z), c)`.
    fn derivatives(&self, z: Complex64) -> Fallible<(Complex64, Complex64, f64)> {
        // Li_α'(z) = Li_{α-1}(z)/z
        let li_prime = |s: f64, o: &SeriesOptions| -> Fallible<Complex64> {
            if z == Complex64::new(0.0, 0.0) {
                return Ok(Complex64::new(1.0, 0.0));
            }
            if s < 1.0 {
                return Err(format!("the derivative of Li_{s} needs order at least 1"));
            }
            Ok(polylog(s - 1.0, z, o).map_err(err)? / z)
        };
        match self {
            Evaluator::Map(f) => {
                let (h, g) = f.derivatives(z).map_err(err)?;
                Ok((h, g, f.real_c().map_err(err)?))
            }
            Evaluator::Polylog(p, c, o) => Ok((li_prime(p.alpha, o)?, li_prime(p.beta, o)?, *c)),
            Evaluator::Hypergeom(p, b, o) => Ok((
                l_derivative(p.a, p.c, z, o).map_err(err)?,
                l_derivative(p.a2, p.c2, z, o).map_err(err)?,
                *b,
            )),
        }
    }
}

fn load_map(path: &Path) -> Fallible<MapSpec> {
    parse_map(&read_json(path)?).map_err(err)
}

fn eval(path: &Path, points: &[String], output: &Output, out: &mut dyn Write) -> Fallible<i32> {
    let f = Evaluator::new(&load_map(path)?)?;
    let zs: Vec<Complex64> = points.iter().map(|s| parse_point(s)).collect::<Fallible<_>>()?;
    let ws: Vec<Complex64> = zs.iter().map(|&z| f.eval(z)).collect::<Fallible<_>>()?;
    let rows: Vec<Vec<f64>> = zs.iter().zip(&ws).map(|(z, w)| vec![z.re, z.im, w.re, w.im]).collect();
    let doc =
        json!({ "points": rows.iter().map(|r| json!({"z": [r[0], r[1]], "f": [r[2], r[3]]})).collect::<Vec<_>>() });
    emit_rows("re_z,im_z,re_f,im_f", &rows, output, doc, out)?;
    Ok(0)
}

fn dilatation(path: &Path, points: &[String], output: &Output, out: &mut dyn Write) -> Fallible<i32> {
    let f = Evaluator::new(&load_map(path)?)?;
    let mut rows = Vec::new();
    for s in points {
        let z = parse_point(s)?;
        if !(z.norm() < 1.0) {
            return Err(format!("z = {z} must lie in the open unit disk"));
        }
        let (hp, gp, c) = f.derivatives(z)?;
        if hp.norm() < crate::harmonic_map::SINGULAR_DERIVATIVE {
            return Err(format!("h'({z}) vanishes numerically"));
        }
        let omega = c * gp / hp;
        let jac = hp.norm_sqr() - c * c * gp.norm_sqr();
        rows.push(vec![z.re, z.im, omega.re, omega.im, omega.norm(), jac]);
    }
    let doc = json!({ "points": rows.iter().map(|r| json!({
        "z": [r[0], r[1]], "omega": [r[2], r[3]], "abs_omega": r[4], "jacobian": r[5]
    })).collect::<Vec<_>>() });
    emit_rows(
        "re_z,im_z,re_omega,im_omega,abs_omega,jacobian",
        &rows,
        output,
        doc,
        out,
    )?;
    Ok(0)
}

fn measure_pair(spec: &MapSpec) -> Option<(Measure, Measure, f64)> {
    match spec {
        MapSpec::Direct { h, g, c } | MapSpec::Convolution { h, g, c } => Some((h.clone(), g.clone(), *c)),
        MapSpec::Polylog { pair, c } => Some((
            Measure::loggamma(pair.alpha).ok()?,
            Measure::loggamma(pair.beta).ok()?,
            *c,
        )),
        MapSpec::Hypergeom { pair, b } => Some((
            Measure::beta(pair.a, pair.c).ok()?,
            Measure::beta(pair.a2, pair.c2).ok()?,
            *b,
        )),
    }
}

fn certify(
    path: &Path,
    method: Method,
    k: f64,
    grid: &GridArgs,
    output: &Output,
    out: &mut dyn Write,
) -> Fallible<i32> {
    let spec = load_map(path)?;
    let grid = grid_spec(grid)?;
    let generated = |m: Measure| ShiftedTFunction::from_measure(m).map_err(err);
    let cert: QcCertificate = match (method, &spec) {
        (Method::Grid, _) => certify_qc_grid(&spec.build().map_err(err)?, k, &grid).map_err(err)?,
        (Method::RatioBound, MapSpec::Direct { h, g, c } | MapSpec::Convolution { h, g, c }) => {
            certify_qc_via_ratio(&generated(h.clone())?, &generated(g.clone())?, *c, k, &grid).map_err(err)?
        }
        (Method::Polylog, MapSpec::Polylog { pair, c }) => {
            certify_polylog_map(pair.alpha, pair.beta, *c, k, &grid).map_err(err)?
        }
        (Method::Hypergeom, MapSpec::Hypergeom { pair, b }) => {
            certify_hypergeom_map(pair.a, pair.c, pair.a2, pair.c2, *b, k, &grid).map_err(err)?
        }
        (Method::DerivativeLimit, MapSpec::Convolution { .. }) => {
            return Err("derivative-limit needs h + c·conj(g), not a convolution construction".into())
        }
        (Method::DerivativeLimit, s) => {
            let (mu, nu, c) = measure_pair(s).ok_or("invalid measures in map spec")?;
            certify_qc_via_limit(&generated(mu)?, &generated(nu)?, c, k).map_err(err)?
        }
        (m, _) => {
            let wanted = match m {
                Method::RatioBound => "a map with measures `h` and `g`",
                Method::Polylog => "a `polylog` spec",
                _ => "a `hypergeom` spec",
            };
            return Err(format!("method {m:?} needs {wanted}"));
        }
    };
    emit_doc(&cert, output, out)?;
    Ok(match cert.verdict {
        Verdict::Certified => 0,
        Verdict::Violated => 1,
        Verdict::Inconclusive => 2,
    })
}

fn verify(
    check: Check,
    path: &Path,
    a: Option<f64>,
    grid: &GridArgs,
    output: &Output,
    out: &mut dyn Write,
) -> Fallible<i32> {
    let f = load_map(path)?.build().map_err(err)?;
    let grid = grid_spec(grid)?;
    match check {
        Check::Modulus => {
            let a = match a {
                Some(a) => a,
                None => {
                    let c = f.real_c().map_err(err)?;
                    let lim = f.h().limit_at_minus_one().map_err(err)? + c * f.g().limit_at_minus_one().map_err(err)?;
                    (-lim).max(0.0)
                }
            };
            let report = f.modulus_lower_bound_check(a, &grid.disk_points()).map_err(err)?;
            emit_doc(&report, output, out)?;
            Ok(if report.holds { 0 } else { 1 })
        }
        Check::Signs => {
            if a.is_some() {
                return Err("--a only applies to the modulus check".into());
            }
            let report = f.partial_sign_check(&grid).map_err(err)?;
            let second_ok = match report.second {
                crate::harmonic_map::SecondSignCheck::Checked { holds, .. } => holds,
                crate::harmonic_map::SecondSignCheck::Skipped { .. } => true,
            };
            emit_doc(&report, output, out)?;
            Ok(if report.first_holds && second_ok { 0 } else { 1 })
        }
    }
}

fn ratio_sup(path: &Path, m: Option<f64>, grid: &GridArgs, output: &Output, out: &mut dyn Write) -> Fallible<i32> {
    let h = ShiftedTFunction::from_measure(parse_measure(&read_json(path)?).map_err(err)?).map_err(err)?;
    let grid = grid_spec(grid)?;
    match m {
        None => {
            let r = ratio_bound_sup(&h, &grid).map_err(err)?;
            emit_doc(&r, output, out)?;
            Ok(0)
        }
        Some(m) => {
            let r = harnack_ratio_bound(&h, m, &grid).map_err(err)?;
            emit_doc(&r, output, out)?;
            Ok(if r.hypothesis_holds && r.bound_respected { 0 } else { 1 })
        }
    }
}

/// Curve samples as `(param, z)`.
fn curve_points(curve: &str, n: usize) -> Fallible<Vec<(f64, Complex64)>> {
    if n < 2 {
        return Err("--n must be at least 2".into());
    }
    let (kind, params) = curve
        .split_once(':')
        .ok_or_else(|| format!("curve {curve:?} must look like kind:params"))?;
    let step = |j: usize| j as f64 / (n - 1) as f64;
    let pts: Vec<(f64, Complex64)> = match kind {
        "circle" => {
            let r = parse_floats(params, 1, "circle")?[0];
            (0..n)
                .map(|j| {
                    let th = 2.0 * PI * j as f64 / n as f64;
                    (th, Complex64::from_polar(r, th))
                })
                .collect()
        }
        "segment" => {
            let v = parse_floats(params, 4, "segment")?;
            let (a, b) = (Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]));
            (0..n).map(|j| (step(j), a + (b - a) * step(j))).collect()
        }
        "arc" => {
            let v = parse_floats(params, 5, "arc")?;
            let centre = Complex64::new(v[0], v[1]);
            (0..n)
                .map(|j| {
                    let th = v[3] + (v[4] - v[3]) * step(j);
                    (th, centre + Complex64::from_polar(v[2], th))
                })
                .collect()
        }
        _ => return Err(format!("unknown curve kind {kind:?}; use circle, segment or arc")),
    };
    if let Some((_, z)) = pts.iter().find(|(_, z)| !(z.norm() < 1.0)) {
        return Err(format!("curve leaves the open unit disk at z = {z}"));
    }
    Ok(pts)
}

fn render(path: &Path, curve: &str, n: usize, file: Option<&Path>, out: &mut dyn Write) -> Fallible<i32> {
    let f = Evaluator::new(&load_map(path)?)?;
    let pts = curve_points(curve, n)?;
    let rows: Vec<Fallible<String>> = pts
        .par_iter()
        .map(|&(p, z)| {
            let w = f.eval(z)?;
            Ok([p, z.re, z.im, w.re, w.im].map(fmt_f64).join(","))
        })
        .collect();
    let mut s = String::from("param,re_z,im_z,re_f,im_f\n");
    for row in rows {
        s.push_str(&row?);
        s.push('\n');
    }
    emit(&s, file, out)?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("cmh").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&[]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["check-cm", "/nonexistent/file.json"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn curves() {
        let c = curve_points("circle:0.5", 4).unwrap();
        assert_eq!(c.len(), 4);
        assert!((c[2].1 + 0.5).norm() < 1e-15);
        let s = curve_points("segment:-0.9,0,0.9,0", 3).unwrap();
        assert_eq!(s[1].1, Complex64::new(0.0, 0.0));
        assert!(curve_points("circle:1", 8).is_err());
        assert!(curve_points("segment:0,0,1.2,0", 8).is_err());
        assert!(curve_points("spiral:1", 8).is_err());
        assert!(curve_points("circle:0.5", 1).is_err());
    }

    #[test]
    fn grid_flags() {
        let g = GridArgs {
            grid_r: Some(0.9),
            grid_n: Some(8),
            nr: Some(3),
            rmin: None,
            rect: Some("-2,0.9,0.05,2,11,12".into()),
            nt: None,
        };
        let s = grid_spec(&g).unwrap();
        assert_eq!((s.r_max, s.n_theta, s.n_r, s.rect.nx, s.rect.ny), (0.9, 8, 3, 11, 12));
        let bad = GridArgs { grid_r: Some(1.0), ..g };
        assert!(grid_spec(&bad).is_err());
    }
}
