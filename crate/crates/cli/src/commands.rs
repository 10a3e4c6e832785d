use std::ffi::OsString;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use torcone_core::classify::{AnglePair, Winding};
use torcone_core::cone::probe_vector;
use torcone_core::forms::{
    verify_contact_condition, verify_moment_image, verify_strong_filling, verify_weak_fill,
    FormsError, NamedForm, VerificationReport,
};
use torcone_core::lattice::gcd_reduce;
use torcone_core::{
    classify, BigInt, ClassifyError, Cone, ConeError, IntVector, LatticeError, Rational, ToricInput,
};

use crate::schema::{self, Body, ConeJson, Response, Status};

pub const DIM_CAP_VAR: &str = "TORCONE_DIM_CAP";
pub const DEFAULT_DIM_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn status(&self) -> Status {
        match self {
            CliError::Invalid(_) => Status::InvalidInput,
            CliError::Unsupported(_) => Status::Unsupported,
            CliError::Failed(_) => Status::VerdictFailure,
        }
    }
}

impl From<ConeError> for CliError {
    fn from(e: ConeError) -> Self {
        match e {
            ConeError::DimensionCapExceeded { .. } | ConeError::NotUnimodular(_) => {
                CliError::Unsupported(e.to_string())
            }
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::UnclassifiableCone(_) => CliError::Unsupported(e.to_string()),
            ClassifyError::Cone(c) => c.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<FormsError> for CliError {
    fn from(e: FormsError) -> Self {
        match e {
            FormsError::NoPositiveT => CliError::Failed(e.to_string()),
            FormsError::UnsupportedRotation(_) => CliError::Unsupported(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

/// Exact toric contact classification and form verification.
///
/// Results are JSON on standard output. Exit codes: 0 ok, 1 a verification
/// found a counterexample, 2 invalid input, 3 unsupported input.
#[derive(Debug, Parser)]
#[command(name = "torcone", version)]
struct Cli {
    /// Print a short human-readable summary instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a toric contact manifold from its moment data.
    Classify(ClassifyArgs),
    /// Reduce an integer triple to (gcd, 0, 0) by an SL(3,Z) matrix.
    ReduceTriple {
        #[arg(num_args = 3, required = true, allow_negative_numbers = true, value_names = ["K1", "K2", "K3"])]
        entries: Vec<String>,
    },
    /// Map a non-pointed cone onto {x_1, ..., x_{d-k} >= 0}.
    Normalize(ConeArg),
    /// Sum of the inward facet normals of a pointed cone.
    Reeb(ConeArg),
    /// Section of a cone by <R, x> = 1.
    Slice {
        #[command(flatten)]
        cone: ConeArg,
        /// Comma-separated R; defaults to the Reeb vector, or a probe vector
        /// for cones that have none.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        reeb: Option<Vec<String>>,
    },
    /// Exact sampled checks of the explicit forms.
    #[command(subcommand)]
    Verify(VerifyKind),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct ClassifyArgs {
    /// Moment cone as JSON (a leading '@' reads a file).
    #[arg(long, value_name = "JSON")]
    cone: Option<String>,
    /// Bundle triple of a free T^3-action on a 5-manifold.
    #[arg(long, num_args = 3, allow_negative_numbers = true, value_names = ["K1", "K2", "K3"])]
    triple: Option<Vec<String>>,
    /// Number of fiber components of a free action on T^3.
    #[arg(long, value_name = "K", allow_negative_numbers = true)]
    torus3: Option<String>,
    /// Dimension d >= 4 of a trivial free action, T^d x S^(d-1).
    #[arg(long, value_name = "D")]
    trivial: Option<usize>,
}

#[derive(Debug, Args)]
struct ConeArg {
    /// Cone as JSON (a leading '@' reads a file).
    #[arg(long, value_name = "JSON")]
    cone: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormName {
    Beta,
    Cosphere,
    Alpha,
    Dtheta1,
}

#[derive(Debug, Args)]
struct FormArgs {
    #[arg(long, value_enum, default_value = "beta")]
    form: FormName,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum VerifyKind {
    /// alpha ∧ (dalpha)^(d-1) > 0 at exact sample points.
    Contact(FormArgs),
    /// Moment-map image of the standard torus action.
    Moment(FormArgs),
    /// Exact identities of the filling of T^k x S^(2d-k-1).
    Strongfill {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
    /// Positivity of P_t(tau) on T^2 x S^3.
    Weakfill {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, value_delimiter = ',', default_value = "0,1,10,100")]
        tau: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Classify(_) => "classify".into(),
            Command::ReduceTriple { .. } => "reduce-triple".into(),
            Command::Normalize(_) => "normalize".into(),
            Command::Reeb(_) => "reeb".into(),
            Command::Slice { .. } => "slice".into(),
            Command::Verify(v) => match v {
                VerifyKind::Contact(_) => "verify contact",
                VerifyKind::Moment(_) => "verify moment",
                VerifyKind::Strongfill { .. } => "verify strongfill",
                VerifyKind::Weakfill { .. } => "verify weakfill",
            }
            .into(),
        }
    }
}

/// Runs one command. `dim_cap` is the raw value of [`DIM_CAP_VAR`], if set.
pub fn run<I, T>(args: I, dim_cap: Option<&str>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Output {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => {
                    let response = Response {
                        status: Status::InvalidInput,
                        command: String::new(),
                        result: None,
                        error: Some(text.lines().next().unwrap_or_default().trim_start_matches("error: ").into()),
                    };
                    finish(response, false, text)
                }
            };
        }
    };
    let command = cli.command.name();
    let outcome = parse_cap(dim_cap).and_then(|cap| dispatch(&cli.command, cap));
    let (response, diagnostic) = match outcome {
        Ok((status, body)) => (
            Response {
                status,
                command,
                result: Some(body),
                error: None,
            },
            String::new(),
        ),
        Err(e) => {
            let msg = e.to_string();
            (
                Response {
                    status: e.status(),
                    command: command.clone(),
                    result: None,
                    error: Some(msg.clone()),
                },
                format!("torcone {command}: {msg}\n"),
            )
        }
    };
    finish(response, cli.text, diagnostic)
}

fn finish(response: Response, text: bool, stderr: String) -> Output {
    let stdout = if text {
        summary(&response)
    } else {
        let mut s = serde_json::to_string(&response).expect("response serializes");
        s.push('\n');
        s
    };
    Output {
        code: response.status.exit_code(),
        stdout,
        stderr,
    }
}

fn parse_cap(raw: Option<&str>) -> Result<usize, CliError> {
    match raw {
        None => Ok(DEFAULT_DIM_CAP),
        Some(s) => s
            .trim()
            .parse()
            .ok()
            .filter(|c| *c >= 1)
            .ok_or_else(|| CliError::Invalid(format!("{DIM_CAP_VAR} must be a positive integer, got {s:?}"))),
    }
}

fn dispatch(cmd: &Command, cap: usize) -> Result<(Status, Body), CliError> {
    let ok = |b| Ok((Status::Ok, b));
    match cmd {
        Command::Classify(a) => ok(Body::Classification(run_classify(a, cap)?)),
        Command::ReduceTriple { entries } => {
            let v = IntVector::new(entries.iter().map(|e| parse_int(e)).collect::<Result<_, _>>()?);
            let (g, u) = gcd_reduce(&v)?;
            ok(Body::Reduction(schema::ReductionJson {
                gcd: g.to_string(),
                matrix: schema::rows(u.matrix()),
                inverse: schema::rows(u.inverse()),
                image: schema::ints(&u.apply(&v)),
            }))
        }
        Command::Normalize(c) => {
            let cone = read_cone(&c.cone, cap)?.cone;
            let w = cone.normalize_to_standard()?;
            let image = cone.transformed(&w.transform)?.dual_description()?;
            ok(Body::Normalization(schema::NormalizationJson {
                k: w.k,
                transform: schema::witness_matrix(&w.transform),
                image: cone_json(&image),
            }))
        }
        Command::Reeb(c) => {
            let cone = read_cone(&c.cone, cap)?.cone;
            ok(Body::Reeb(schema::ReebJson {
                reeb_vector: schema::ints(&cone.reeb_vector()?),
            }))
        }
        Command::Slice { cone, reeb } => {
            let cone = read_cone(&cone.cone, cap)?.cone;
            let r = match reeb {
                Some(entries) => {
                    let r = IntVector::new(entries.iter().map(|e| parse_int(e)).collect::<Result<_, _>>()?);
                    if r.dim() != cone.dim() {
                        return Err(CliError::Invalid(format!(
                            "Reeb vector has {} entries, cone has dimension {}",
                            r.dim(),
                            cone.dim()
                        )));
                    }
                    r
                }
                None => match cone.reeb_vector() {
                    Ok(r) => r,
                    Err(ConeError::NotStrictlyConvex | ConeError::NotFullDimensional) => probe_vector(&cone)?,
                    Err(e) => return Err(e.into()),
                },
            };
            ok(Body::Slice(schema::slice(&cone.slice(&r)?)))
        }
        Command::Verify(kind) => run_verify(kind),
    }
}

fn run_classify(a: &ClassifyArgs, cap: usize) -> Result<schema::ClassificationJson, CliError> {
    let input = if let Some(raw) = &a.cone {
        let parsed = read_cone(raw, cap)?;
        match parsed.angle {
            Some(pair) => ToricInput::AnglePair(pair),
            None => ToricInput::Cone(parsed.cone),
        }
    } else if let Some(t) = &a.triple {
        ToricInput::FreeTriple(IntVector::new(t.iter().map(|e| parse_int(e)).collect::<Result<_, _>>()?))
    } else if let Some(k) = &a.torus3 {
        ToricInput::FreeTorus3(parse_int(k)?)
    } else if let Some(d) = a.trivial {
        ToricInput::FreeTrivial(d)
    } else {
        unreachable!("clap requires one input")
    };
    Ok(schema::classification(&classify(&input)?))
}

fn report_status(r: &VerificationReport) -> Status {
    if r.passed() {
        Status::Ok
    } else {
        Status::VerdictFailure
    }
}

fn named_form(a: &FormArgs) -> Result<NamedForm, CliError> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| CliError::Invalid(format!("--{flag} is required for this form")))
    };
    Ok(match a.form {
        FormName::Beta => NamedForm::Beta {
            d: need(a.d, "d")?,
            k: need(a.k, "k")?,
        },
        FormName::Cosphere => NamedForm::Cosphere { d: need(a.d, "d")? },
        FormName::Alpha => NamedForm::Alpha,
        FormName::Dtheta1 => NamedForm::DTheta1,
    })
}

fn check_samples(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Invalid("--samples must be at least 1".into()));
    }
    Ok(())
}

fn run_verify(kind: &VerifyKind) -> Result<(Status, Body), CliError> {
    match kind {
        VerifyKind::Contact(a) | VerifyKind::Moment(a) => {
            check_samples(a.samples)?;
            let form = named_form(a)?;
            let (chart, alpha) = form.build()?;
            let (check, report) = match kind {
                VerifyKind::Contact(_) => (
                    format!("contact {}", form.name()),
                    verify_contact_condition(&chart, &alpha, a.samples, a.seed)?,
                ),
                _ => (
                    format!("moment {}", form.name()),
                    verify_moment_image(&chart, &alpha, a.samples, a.seed)?,
                ),
            };
            Ok((report_status(&report), Body::Report(schema::report(&check, &report))))
        }
        VerifyKind::Strongfill { d, k } => {
            let report = verify_strong_filling(*d, *k)?;
            let check = format!("strong filling d={d} k={k}");
            Ok((report_status(&report), Body::Report(schema::report(&check, &report))))
        }
        VerifyKind::Weakfill { samples, tau, seed } => {
            check_samples(*samples)?;
            let grid: Vec<Rational> = tau.iter().map(|t| parse_rational(t)).collect::<Result<_, _>>()?;
            if grid.iter().any(|t| *t < Rational::from_integer(0.into())) {
                return Err(CliError::Invalid("τ grid values must be nonnegative".into()));
            }
            let r = verify_weak_fill(*samples, &grid, *seed)?;
            Ok((report_status(&r.combined()), Body::WeakFill(schema::weak_fill(&r))))
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt, CliError> {
    BigInt::from_str(s.trim()).map_err(|_| CliError::Invalid(format!("not an integer: {s:?}")))
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let s = s.trim();
    let bad = || CliError::Invalid(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

struct ParsedCone {
    cone: Cone,
    angle: Option<AnglePair>,
}

fn read_json_arg(raw: &str) -> Result<String, CliError> {
    match raw.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{path}: {e}"))),
        None => Ok(raw.to_string()),
    }
}

fn vectors(dim: usize, raw: &[Vec<String>], what: &str) -> Result<Vec<IntVector>, CliError> {
    raw.iter()
        .map(|v| {
            if v.len() != dim {
                return Err(CliError::Invalid(format!(
                    "{what} {v:?} has {} entries, expected {dim}",
                    v.len()
                )));
            }
            let q: Vec<Rational> = v.iter().map(|e| parse_rational(e)).collect::<Result<_, _>>()?;
            IntVector::primitive_from_rationals(&q)
                .ok_or_else(|| CliError::Invalid(format!("{what} {v:?} is zero")))
        })
        .collect()
}

fn read_cone(raw: &str, cap: usize) -> Result<ParsedCone, CliError> {
    let text = read_json_arg(raw)?;
    let json: ConeJson =
        serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("cone JSON: {e}")))?;
    let d = json.dim;
    let gens = json.generators.as_deref().map(|g| vectors(d, g, "generator")).transpose()?;
    let normals = json.facet_normals.as_deref().map(|n| vectors(d, n, "facet normal")).transpose()?;
    let angle = match &json.winding {
        None => None,
        Some(w) => {
            let winding = Winding::parse(w).ok_or_else(|| {
                CliError::Invalid(format!("winding must be convex, straight, reflex or full, got {w:?}"))
            })?;
            let rays = match (&gens, d) {
                (Some(g), 2) if g.len() == 2 => g,
                _ => {
                    return Err(CliError::Invalid(
                        "winding needs dim 2 and exactly two generators".into(),
                    ))
                }
            };
            let pair = AnglePair::new(rays[0].clone(), rays[1].clone(), winding == Winding::Full);
            if winding != Winding::Full {
                let actual = pair.winding()?;
                if actual != winding {
                    return Err(CliError::Invalid(format!(
                        "rays {} and {} wind {}, not {}",
                        rays[0],
                        rays[1],
                        actual.as_str(),
                        winding.as_str()
                    )));
                }
            }
            Some(pair)
        }
    };
    let cone = match (gens, normals) {
        (Some(g), Some(n)) => Cone::from_descriptions(d, g, n)?,
        (Some(g), None) => Cone::from_generators(d, g)?,
        (None, Some(n)) => Cone::from_facet_normals(d, n)?,
        (None, None) => {
            return Err(CliError::Invalid(
                "cone needs generators or facet_normals".into(),
            ))
        }
    };
    if d > cap {
        return Err(ConeError::DimensionCapExceeded { dim: d, cap }.into());
    }
    Ok(ParsedCone {
        cone: cone.with_dim_cap(cap),
        angle,
    })
}

fn cone_json(c: &Cone) -> ConeJson {
    let list = |v: Option<&[IntVector]>| v.map(|v| v.iter().map(schema::ints).collect());
    ConeJson {
        dim: c.dim(),
        generators: list(c.generators()),
        facet_normals: list(c.facet_normals()),
        winding: None,
    }
}

fn summary(r: &Response) -> String {
    let mut out = match &r.result {
        None => format!("{}: {}", r.command, r.error.as_deref().unwrap_or("failed")),
        Some(Body::Classification(c)) => {
            let mut s = format!("{}: {}", c.manifold, c.verdict);
            if let Some(note) = &c.stein_note {
                s.push_str(&format!(" ({note})"));
            }
            if c.reeb_type && !c.manifold.contains("Reeb") {
                s.push_str(", Reeb type");
            }
            s
        }
        Some(Body::Reduction(x)) => format!("gcd {}, image ({})", x.gcd, x.image.join(", ")),
        Some(Body::Normalization(x)) => format!("lineality {}, transform {:?}", x.k, x.transform.matrix),
        Some(Body::Reeb(x)) => format!("R = ({})", x.reeb_vector.join(", ")),
        Some(Body::Slice(x)) => format!(
            "{} vertices, {}",
            x.vertices.len(),
            if x.bounded { "bounded" } else { "unbounded" }
        ),
        Some(Body::Report(x)) => report_line(x),
        Some(Body::WeakFill(x)) => format!(
            "t* = {}; {}; {}; {}",
            x.t_star,
            report_line(&x.identities),
            report_line(&x.derivative),
            report_line(&x.value)
        ),
    };
    out.push('\n');
    out
}

fn report_line(x: &schema::ReportJson) -> String {
    let mut s = format!("{}: {}/{} passed", x.check, x.checked - x.failures, x.checked);
    if let Some(m) = &x.min_margin {
        s.push_str(&format!(", min margin {m}"));
    }
    s
}
