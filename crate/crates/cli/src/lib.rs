//! Argument parsing, dispatch and JSON rendering for the `rm-torus` binary.

use clap::{Args, Parser, Subcommand, ValueEnum};
use free_algebra_groebner::{basis_json, complete_to_degree, from_presentation, linear_basis, GroebnerError, GroebnerState};
use geometric_data::{als_search, graph_member, minor_equations, minors_json, multilinearize, omega_matrix, GeomError};
use modular_symbols::{averaged_json, averaged_relations, GroupSpec, QuadratureControl, SymbolError};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use presentation::{
    hilbert_coeffs, monic_ordered, normalize_modular, normalize_rational, presentation_json, relations, Presentation,
    PresentationError,
};
use rm_core::{canonical_g, lambda_display, validate, IntMatrix2, QuadraticSurd, RMData, RmError};
use serde_json::{json, Value};
use std::path::PathBuf;
use theta_engine::{theta, RationalChar, SeriesControl, ThetaError, UpperHalfPoint, Q};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("UsageError: {0}")]
    Usage(String),
    #[error("IoError: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Rm(#[from] RmError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Io(_) => "IoError",
            CliError::Theta(e) => e.name(),
            CliError::Rm(e) => e.name(),
            CliError::Presentation(e) => e.name(),
            CliError::Groebner(e) => e.name(),
            CliError::Symbol(e) => e.name(),
            CliError::Geom(e) => e.name(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    /// The message on one line.
    pub fn diagnostic(&self) -> String {
        self.to_string().split_whitespace().collect::<Vec<_>>().join(" ")
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "rm-torus", version, about = "Homogeneous coordinate rings of noncommutative tori with real multiplication")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check g and print its invariants.
    Validate(MatrixArgs),
    /// Quadratic relations at a point tau.
    Present(PresentArgs),
    /// Normal words of a given degree.
    Basis(BasisArgs),
    /// Hilbert series coefficients.
    Hilbert(HilbertArgs),
    /// A theta function value.
    Theta(ThetaArgs),
    /// Relations averaged along the limiting modular symbol.
    Average(AverageArgs),
    /// Maximal minors of the linear-form matrix.
    Geom(GeomArgs),
}

#[derive(Args, Debug, Clone)]
pub struct MatrixArgs {
    /// Entries of g = [[A, B], [C, D]].
    #[arg(long, num_args = 4, value_names = ["A", "B", "C", "D"], allow_negative_numbers = true,
          required_unless_present = "trace", conflicts_with = "trace")]
    pub g: Option<Vec<i64>>,
    /// Use the canonical matrix [[T+1, -1], [T+2, -1]].
    #[arg(long, value_name = "T", allow_negative_numbers = true)]
    pub trace: Option<i64>,
}

#[derive(Args, Debug, Clone)]
pub struct TauArgs {
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true, default_values_t = [0.0, 2.0])]
    pub tau: Vec<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write the JSON to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizeArg {
    Raw,
    Rational,
    Modular,
    Monic,
}

#[derive(Args, Debug, Clone)]
pub struct PresentArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[command(flatten)]
    pub tau: TauArgs,
    #[arg(long, value_enum, default_value_t = NormalizeArg::Raw)]
    pub normalize: NormalizeArg,
    /// Series tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct BasisArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[command(flatten)]
    pub tau: TauArgs,
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct HilbertArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// Highest degree.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ThetaArgs {
    /// Characteristic r as P or P/Q.
    #[arg(long, allow_hyphen_values = true)]
    pub r: String,
    /// Characteristic s as P or P/Q.
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    #[command(flatten)]
    pub tau: TauArgs,
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true, default_values_t = [0.0, 0.0])]
    pub z: Vec<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct AverageArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    /// Level n of the bracket group; defaults to l^2.
    #[arg(long)]
    pub level: Option<u64>,
    /// Conjugation parameter m of the bracket group; defaults to l.
    #[arg(long)]
    pub bracket: Option<u64>,
    /// Quadrature tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Evaluation cap per integral.
    #[arg(long)]
    pub cap: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GeomArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[command(flatten)]
    pub tau: TauArgs,
    #[arg(long, value_enum, default_value_t = NormalizeArg::Raw)]
    pub normalize: NormalizeArg,
    /// Largest number of minors to expand.
    #[arg(long, default_value_t = geometric_data::DEFAULT_CAP)]
    pub cap: u128,
    /// Random starts of a search for a common zero; 0 skips the search.
    #[arg(long, default_value_t = 0)]
    pub starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parsed and checked inputs shared by the commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub g: Option<IntMatrix2>,
    pub tau: Option<UpperHalfPoint>,
    pub series: SeriesControl,
    pub quadrature: QuadratureControl,
    pub truncation: Option<usize>,
    pub cap: Option<u128>,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            g: None,
            tau: None,
            series: SeriesControl::from_env(),
            quadrature: QuadratureControl::default(),
            truncation: None,
            cap: None,
            out: None,
            seed: 0,
        }
    }
}

fn matrix(m: &MatrixArgs) -> Result<IntMatrix2> {
    match (&m.g, m.trace) {
        (Some(v), _) => Ok(IntMatrix2::new(v[0], v[1], v[2], v[3])),
        (None, Some(t)) => Ok(canonical_g(t)?),
        (None, None) => Err(CliError::Usage("one of --g or --trace is required".into())),
    }
}

fn upper_half(v: &[f64]) -> Result<UpperHalfPoint> {
    let (re, im) = (v[0], v[1]);
    if !(re.is_finite() && im.is_finite() && im > 0.0) {
        return Err(CliError::Usage(format!("--tau {} {} is not in the upper half plane", re, im)));
    }
    Ok(UpperHalfPoint::from_parts(re, im)?)
}

fn series(tol: Option<f64>) -> Result<SeriesControl> {
    let mut c = SeriesControl::from_env();
    if let Some(t) = tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(CliError::Usage(format!("--tol {} must lie in (0, 1)", t)));
        }
        c.tolerance = t;
    }
    Ok(c)
}

fn rational(s: &str) -> Result<Q> {
    let bad = || CliError::Usage(format!("{:?} is not a rational number P/Q", s));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if q == 0 {
        return Err(bad());
    }
    Ok(Q::new(p, q))
}

impl Command {
    /// Checks the arguments against the module preconditions.
    pub fn config(&self) -> Result<RunConfig> {
        let mut c = RunConfig::default();
        match self {
            Command::Validate(m) => c.g = Some(matrix(m)?),
            Command::Present(a) => {
                c.g = Some(matrix(&a.matrix)?);
                c.tau = Some(upper_half(&a.tau.tau)?);
                c.series = series(a.tol)?;
                c.out = a.output.out.clone();
            }
            Command::Basis(a) => {
                c.g = Some(matrix(&a.matrix)?);
                c.tau = Some(upper_half(&a.tau.tau)?);
                c.series = series(a.tol)?;
                c.truncation = Some(a.degree);
                c.out = a.output.out.clone();
            }
            Command::Hilbert(a) => {
                c.g = Some(matrix(&a.matrix)?);
                c.truncation = Some(a.n);
                c.out = a.output.out.clone();
            }
            Command::Theta(a) => {
                c.tau = Some(upper_half(&a.tau.tau)?);
                c.series = series(a.tol)?;
                c.out = a.output.out.clone();
            }
            Command::Average(a) => {
                c.g = Some(matrix(&a.matrix)?);
                if let Some(t) = a.tol {
                    if !(t > 0.0 && t < 1.0) {
                        return Err(CliError::Usage(format!("--tol {} must lie in (0, 1)", t)));
                    }
                    c.quadrature.tolerance = t;
                }
                if let Some(k) = a.cap {
                    c.quadrature.max_evaluations = k;
                }
                c.out = a.output.out.clone();
            }
            Command::Geom(a) => {
                c.g = Some(matrix(&a.matrix)?);
                c.tau = Some(upper_half(&a.tau.tau)?);
                c.series = series(a.tol)?;
                c.cap = Some(a.cap);
                c.seed = a.seed;
                c.out = a.output.out.clone();
            }
        }
        Ok(c)
    }
}

/// Integers as JSON numbers when they fit in 64 bits, decimal strings otherwise.
pub fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// `(p + q sqrt(D)) / r` as `{p, q, r, D}`.
pub fn surd_json(s: &QuadraticSurd) -> Value {
    json!({"p": int_json(&s.p), "q": int_json(&s.q), "r": int_json(&s.r), "D": int_json(&s.d)})
}

fn complex_json(re: f64, im: f64) -> Value {
    json!({"re": re, "im": im})
}

fn g_json(g: &IntMatrix2) -> Value {
    json!([g.a, g.b, g.c, g.d])
}

pub fn rmdata_json(rm: &RMData) -> Value {
    json!({
        "g": g_json(&rm.g),
        "trace": rm.trace(),
        "l": rm.l,
        "w": rm.w,
        "generators": rm.n_gen(),
        "rank": rm.rank(),
        "relations_per_block": rm.relations_per_block(),
        "theta": surd_json(&rm.theta),
        "theta_prime": surd_json(&rm.theta_prime),
        "lambda_plus": surd_json(&rm.lambda_plus),
        "lambda_minus": surd_json(&rm.lambda_minus),
        "lambda_display": lambda_display(rm),
    })
}

fn presentation_for(rm: &RMData, tau: &UpperHalfPoint, ctl: &SeriesControl, n: NormalizeArg) -> Result<Presentation> {
    let raw = relations(rm, tau, ctl)?;
    Ok(match n {
        NormalizeArg::Raw => raw,
        NormalizeArg::Rational => normalize_rational(&raw, ctl)?,
        NormalizeArg::Modular => normalize_modular(&raw, ctl)?,
        NormalizeArg::Monic => monic_ordered(&raw)?,
    })
}

fn u128_json(x: u128) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

/// Runs a command and returns its JSON output.
pub fn execute(cmd: &Command, cfg: &RunConfig) -> Result<Value> {
    let rm = match cfg.g {
        Some(g) => Some(validate(&g)?),
        None => None,
    };
    let rm = rm.as_ref();
    let tau = cfg.tau.as_ref();
    match cmd {
        Command::Validate(_) => Ok(rmdata_json(rm.expect("matrix"))),
        Command::Present(a) => {
            let p = presentation_for(rm.expect("matrix"), tau.expect("tau"), &cfg.series, a.normalize)?;
            Ok(presentation_json(&p))
        }
        Command::Basis(a) => {
            let rm = rm.expect("matrix");
            let p = presentation_for(rm, tau.expect("tau"), &cfg.series, NormalizeArg::Monic)?;
            let st = GroebnerState::new(rm.n_gen(), a.degree.max(2));
            let st = complete_to_degree(&st, &from_presentation(&p), a.degree.max(2))?;
            let words = linear_basis(&st, a.degree)?;
            Ok(json!({
                "degree": a.degree,
                "count": words.len(),
                "words": basis_json(&words),
                "new_leading_terms": basis_json(&st.adjoined_of_degree(a.degree)),
            }))
        }
        Command::Hilbert(a) => {
            let h = hilbert_coeffs(rm.expect("matrix"), a.n)?;
            Ok(Value::Array(h.coefficients.iter().map(|&x| u128_json(x)).collect()))
        }
        Command::Theta(a) => {
            let (r, s) = (rational(&a.r)?, rational(&a.s)?);
            let ch = RationalChar::new(r, s);
            let tau = tau.expect("tau");
            let z = Complex64::new(a.z[0], a.z[1]);
            let v = theta(&ch, z, tau, &cfg.series)?;
            Ok(json!({
                "r": [*r.numer(), *r.denom()],
                "s": [*s.numer(), *s.denom()],
                "tau": complex_json(tau.re(), tau.im()),
                "z": complex_json(a.z[0], a.z[1]),
                "value": complex_json(v.re, v.im),
            }))
        }
        Command::Average(a) => {
            let rm = rm.expect("matrix");
            let l = rm.l.unsigned_abs();
            let spec = GroupSpec::Bracket {
                n: a.level.unwrap_or(l * l),
                m: a.bracket.unwrap_or(l),
            };
            let p = averaged_relations(rm, &spec, &cfg.series, &cfg.quadrature)?;
            Ok(averaged_json(&p)?)
        }
        Command::Geom(a) => {
            let p = presentation_for(rm.expect("matrix"), tau.expect("tau"), &cfg.series, a.normalize)?;
            let m = omega_matrix(&p)?;
            let minors = minor_equations(&m, cfg.cap.unwrap_or(geometric_data::DEFAULT_CAP))?;
            let mut out = json!({
                "rows": m.n_rows(),
                "columns": m.n_cols,
                "count": minors.len(),
                "minors": minors_json(&minors),
            });
            if a.starts > 0 {
                let rels = multilinearize(&p);
                let n = p.rm.n_gen();
                let pt = als_search(&rels, n, a.starts, 200, cfg.seed)?;
                let member = graph_member(&rels, &pt.u, &pt.v, 1e-6)?;
                let vec = |v: &[Complex64]| Value::Array(v.iter().map(|z| complex_json(z.re, z.im)).collect());
                out["graph_point"] = json!({
                    "u": vec(&pt.u),
                    "v": vec(&pt.v),
                    "residual": pt.residual,
                    "member": member,
                    "seed": cfg.seed,
                });
            }
            Ok(out)
        }
    }
}

/// Pretty JSON with sorted keys and shortest round-trip floats.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn output_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Validate(_) => None,
        Command::Present(a) => a.output.out.as_ref(),
        Command::Basis(a) => a.output.out.as_ref(),
        Command::Hilbert(a) => a.output.out.as_ref(),
        Command::Theta(a) => a.output.out.as_ref(),
        Command::Average(a) => a.output.out.as_ref(),
        Command::Geom(a) => a.output.out.as_ref(),
    }
}

/// Parses `args` (program name first), runs the command and returns the text for standard output.
pub fn run<I, T>(args: I) -> Result<String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(clap_summary(&e)))?;
    let cfg = cli.command.config()?;
    let text = render(&execute(&cli.command, &cfg)?);
    match output_path(&cli.command) {
        Some(path) => {
            std::fs::write(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// A clap error on one line, without its `error:` prefix and usage hint.
pub fn clap_summary(e: &clap::Error) -> String {
    let s = e.to_string();
    let text: Vec<&str> = s
        .lines()
        .take_while(|l| !l.starts_with("Usage:"))
        .map(|l| l.trim())
        .filter(|l| !l.is_empty())
        .collect();
    let line = text.join(" ");
    let line = line.trim_start_matches("error:").trim();
    if line.is_empty() {
        "invalid arguments".to_string()
    } else {
        line.to_string()
    }
}
