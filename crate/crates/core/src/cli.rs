//! Command-line front end. Every command produces one JSON report; the
//! text format is a rendering of that same report.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::wedderburn::{wedderburn, DEFAULT_SEED};
use crate::algebra::{
    center, is_central_simple, is_semisimple, is_separable, jacobson_radical, unit_group_order, Algebra, IdealBasis,
    MAX_DIM,
};
use crate::doc::{self, Node};
use crate::error::{Error, Result};
use crate::exactmath::field::parse_rational;
use crate::hochschild::{hh0_dim, hh_dims, max_cells_from_env};
use crate::k0ring::{localize_invert, nilpotence_witness, K0RingModel, DEFAULT_MAX_EXP};
use crate::motives::{
    motive_atom, motive_reduce_seeded, nil_reduce, quadric_motive, severi_brauer_motive, CoefficientRing, MotiveExpr,
    TraceStep,
};
use crate::quadform::{clifford_verify, QuadraticForm};

/// Default `--max-degree` for `hh`.
pub const DEFAULT_HH_DEGREE: usize = 2;

#[derive(Parser, Debug)]
#[command(name = "motivecalc", version, about = "Exact structure theory of finite-dimensional algebras and motive reductions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Primes to invert in the coefficient ring, e.g. `2,3` for Z[1/6].
    #[arg(long, global = true, value_delimiter = ',')]
    pub invert: Vec<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for randomized searches (idempotent splitting).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Reject input algebras above this dimension.
    #[arg(long, global = true, default_value_t = MAX_DIM)]
    pub max_dim: usize,
    /// Highest Hochschild degree for `hh`.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Algebra analysis.
    Alg {
        #[command(subcommand)]
        action: AlgAction,
    },
    /// Predict and verify the structure of C(q) and C_0(q).
    Clifford(FormInput),
    /// Motive expressions.
    Motive {
        #[command(subcommand)]
        action: MotiveAction,
    },
    /// Motive of the Severi-Brauer variety of a central simple algebra.
    Sb(AlgInput),
    /// Motive of the quadric of a form with n >= 3.
    Quadric(FormInput),
    /// K0 ring models: nilpotence witnesses and localized inverses.
    K0(K0Args),
    /// Hochschild homology dimensions.
    Hh(AlgInput),
    /// Motive of an algebra modulo a nilpotent ideal.
    Nil(NilArgs),
}

#[derive(Subcommand, Debug)]
pub enum AlgAction {
    /// Radical, center, separability, central simplicity and Wedderburn report.
    Analyze(AlgInput),
}

#[derive(Subcommand, Debug)]
pub enum MotiveAction {
    /// Reduce `U(A)` or an expression document to normal form.
    Reduce {
        #[command(flatten)]
        input: AlgInput,
        /// Expression document (list of {"atom", "coeff"}).
        #[arg(long, conflicts_with_all = ["alg", "make"])]
        expr: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct AlgInput {
    /// Algebra document (table or {"make": ...}).
    #[arg(long)]
    pub alg: Option<PathBuf>,
    /// Inline constructor: matrix:N, quaternion:A,B, upper_triangular:N,
    /// cyclic_group:N, poly_quotient:C0,C1,..., weyl_fiber:P,A,B,
    /// dual_numbers, kronecker, field.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "alg")]
    pub make: Option<String>,
    /// Base field for --make: Q or F<p>.
    #[arg(long, default_value = "Q")]
    pub field: String,
}

#[derive(Args, Debug, Clone)]
pub struct FormInput {
    /// Form document ({"field", "diag"} or {"field", "gram"}).
    #[arg(long)]
    pub form: Option<PathBuf>,
    /// Base field for --diag: Q or F<p>.
    #[arg(long, default_value = "Q")]
    pub field: String,
    /// Diagonal entries, comma separated.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "form")]
    pub diag: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum K0Action {
    Nilpotence,
    Invert,
}

#[derive(Args, Debug)]
pub struct K0Args {
    /// Defaults to `invert` when --invert-elt is given.
    #[arg(value_enum)]
    pub action: Option<K0Action>,
    /// point, P1..P4 or dedekind-C.
    #[arg(long, conflicts_with = "model")]
    pub builtin: Option<String>,
    /// Model document.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Element coordinates, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub elt: Option<String>,
    /// Shorthand for `invert --elt`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "elt")]
    pub invert_elt: Option<String>,
    /// Primes to invert (merged with --invert).
    #[arg(long, value_delimiter = ',')]
    pub primes: Vec<u64>,
    #[arg(long, default_value_t = DEFAULT_MAX_EXP)]
    pub max_exp: u32,
}

#[derive(Args, Debug)]
pub struct NilArgs {
    #[command(flatten)]
    pub input: AlgInput,
    /// `radical`, `zero`, or an ideal document ({"basis": [...]}).
    #[arg(long, default_value = "radical")]
    pub ideal: String,
    /// Assert that the quotient has finite global dimension (needed when
    /// the ideal is not the radical).
    #[arg(long)]
    pub quotient_finite_gldim: bool,
}

#[derive(Serialize)]
struct ErrorReport {
    kind: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    clause: Option<String>,
}

#[derive(Serialize)]
struct Report {
    command: String,
    status: &'static str,
    exit_code: i32,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    ring: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorReport>,
    trace: Vec<Value>,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    /// What goes to standard output.
    pub stdout: String,
    /// Diagnostics for standard error.
    pub stderr: String,
}

/// Parses arguments and runs the command. Never panics on bad input; the
/// exit code is 0 (success), 2 (hypothesis unsatisfied), 3 (invalid
/// input) or 4 (resource cap).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { exit_code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { exit_code: 3, stdout: String::new(), stderr: text },
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    let name = command_name(&cli.command);
    let mut primes = cli.invert.clone();
    if let Command::K0(k) = &cli.command {
        primes.extend(&k.primes);
    }
    let ring = CoefficientRing::inverting(&primes);
    let (outcome, ring_name) = match ring {
        Ok(r) => {
            let shown = uses_ring(&cli.command).then(|| r.to_string());
            (dispatch(cli, &r), shown)
        }
        Err(e) => (Err(e), None),
    };
    let report = match outcome {
        Ok(mut result) => {
            let trace = take_trace(&mut result);
            Report {
                command: name,
                status: "ok",
                exit_code: 0,
                seed: cli.seed,
                ring: ring_name,
                result: Some(result),
                error: None,
                trace,
            }
        }
        Err(e) => {
            let clause = match &e {
                Error::HypothesisUnsatisfied { clause } => Some(clause.clone()),
                _ => None,
            };
            let trace = match (&cli.command, &clause) {
                (Command::Nil(_), Some(c)) => vec![json!(TraceStep {
                    rule: "NIL",
                    from: "U(S)".into(),
                    to: "refused".into(),
                    hypothesis: c.clone(),
                    rank: None,
                })],
                _ => Vec::new(),
            };
            Report {
                command: name,
                status: "error",
                exit_code: e.exit_code(),
                seed: cli.seed,
                ring: ring_name,
                result: None,
                error: Some(ErrorReport { kind: e.kind(), message: e.to_string(), clause }),
                trace,
            }
        }
    };
    let value = serde_json::to_value(&report).expect("reports serialize");
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&value).expect("reports serialize") + "\n",
        Format::Text => render_text(&value),
    };
    let stderr = report.error.as_ref().map(|e| format!("motivecalc: {}\n", e.message)).unwrap_or_default();
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { exit_code: report.exit_code, stdout: String::new(), stderr },
            Err(e) => Outcome {
                exit_code: 3,
                stdout: String::new(),
                stderr: format!("motivecalc: cannot write {}: {e}\n", path.display()),
            },
        },
        None => Outcome { exit_code: report.exit_code, stdout: text, stderr },
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Alg { .. } => "alg analyze".into(),
        Command::Clifford(_) => "clifford".into(),
        Command::Motive { .. } => "motive reduce".into(),
        Command::Sb(_) => "sb".into(),
        Command::Quadric(_) => "quadric".into(),
        Command::K0(k) => match k0_action(k) {
            K0Action::Nilpotence => "k0 nilpotence".into(),
            K0Action::Invert => "k0 invert".into(),
        },
        Command::Hh(_) => "hh".into(),
        Command::Nil(_) => "nil".into(),
    }
}

fn uses_ring(c: &Command) -> bool {
    matches!(c, Command::Motive { .. } | Command::Sb(_) | Command::Quadric(_) | Command::Nil(_))
        || matches!(c, Command::K0(k) if k0_action(k) == K0Action::Invert)
}

fn k0_action(k: &K0Args) -> K0Action {
    match (k.action, &k.invert_elt) {
        (Some(a), _) => a,
        (None, Some(_)) => K0Action::Invert,
        (None, None) => K0Action::Nilpotence,
    }
}

/// Moves a rule trace out of the result (top level or under
/// `reduction`) so every report carries it in the same place.
fn take_trace(result: &mut Value) -> Vec<Value> {
    let Some(obj) = result.as_object_mut() else { return Vec::new() };
    let found = match obj.remove("trace") {
        Some(t) => Some(t),
        None => obj.get_mut("reduction").and_then(|r| r.as_object_mut()).and_then(|r| r.remove("trace")),
    };
    match found {
        Some(Value::Array(v)) => v,
        _ => Vec::new(),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(input: &AlgInput, max_dim: usize) -> Result<Algebra> {
    let a = match (&input.alg, &input.make) {
        (Some(path), _) => {
            let v = doc::parse_json(&read(path)?)?;
            doc::algebra_doc(&Node::root(&v))?
        }
        (None, Some(shorthand)) => {
            let v = make_shorthand(shorthand, &input.field)?;
            doc::algebra_doc(&Node::root(&v))?
        }
        (None, None) => return Err(Error::InvalidArgument("an algebra is required (--alg FILE or --make SPEC)".into())),
    };
    if a.dim() > max_dim {
        return Err(Error::DimensionCap(format!("algebra has dimension {} > --max-dim {max_dim}", a.dim())));
    }
    Ok(a)
}

/// `name[:a,b,...]` to a constructor document.
fn make_shorthand(shorthand: &str, field: &str) -> Result<Value> {
    let (name, args) = match shorthand.split_once(':') {
        Some((n, a)) => (n.trim(), a.split(',').map(|s| s.trim().to_string()).collect::<Vec<_>>()),
        None => (shorthand.trim(), Vec::new()),
    };
    let field = json!(field);
    let want = |k: usize| -> Result<()> {
        if args.len() == k {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("--make {name} takes {k} argument(s), got {}", args.len())))
        }
    };
    let int = |s: &str| -> Result<Value> {
        s.parse::<i64>().map(Value::from).map_err(|_| Error::InvalidArgument(format!("expected an integer, found {s:?}")))
    };
    Ok(match name {
        "matrix" | "upper_triangular" | "cyclic_group" => {
            want(1)?;
            json!({"make": name, "field": field, "n": int(&args[0])?})
        }
        "quaternion" => {
            want(2)?;
            json!({"make": name, "field": field, "a": args[0], "b": args[1]})
        }
        "poly_quotient" => json!({"make": name, "field": field, "poly": args}),
        "weyl_fiber" => {
            want(3)?;
            json!({"make": name, "p": int(&args[0])?, "a": int(&args[1])?, "b": int(&args[2])?})
        }
        "dual_numbers" | "kronecker" | "field" => {
            want(0)?;
            json!({"make": name, "field": field})
        }
        other => json!({"make": other, "field": field}),
    })
}

fn load_form(input: &FormInput) -> Result<QuadraticForm> {
    match (&input.form, &input.diag) {
        (Some(path), _) => {
            let v = doc::parse_json(&read(path)?)?;
            doc::form(&Node::root(&v))
        }
        (None, Some(diag)) => {
            let entries: Vec<&str> = diag.split(',').map(str::trim).collect();
            let v = json!({"field": input.field, "diag": entries});
            doc::form(&Node::root(&v))
        }
        (None, None) => Err(Error::InvalidArgument("a form is required (--form FILE or --diag a,b,...)".into())),
    }
}

fn load_model(k: &K0Args) -> Result<K0RingModel> {
    match (&k.builtin, &k.model) {
        (Some(name), _) => K0RingModel::builtin(name),
        (None, Some(path)) => {
            let v = doc::parse_json(&read(path)?)?;
            doc::k0_model(&Node::root(&v))
        }
        (None, None) => Err(Error::InvalidArgument("a model is required (--builtin NAME or --model FILE)".into())),
    }
}

fn parse_coords(s: &str) -> Result<Vec<BigRational>> {
    s.split(',')
        .map(|c| parse_rational(c.trim()).ok_or_else(|| Error::InvalidArgument(format!("bad coordinate {c:?}"))))
        .collect()
}

/// Runs a section of `alg analyze`, recording failures in place.
fn section<T: Serialize>(r: Result<T>) -> Value {
    match r {
        Ok(x) => to_value(&x),
        Err(e) => json!({"error": {"kind": e.kind(), "message": e.to_string()}}),
    }
}

fn analyze(a: &Algebra, seed: u64) -> Value {
    let radical = jacobson_radical(a);
    let mut m = Map::new();
    m.insert("label".into(), json!(a.label()));
    m.insert("field".into(), json!(a.field().name()));
    m.insert("dim".into(), json!(a.dim()));
    m.insert(
        "flags".into(),
        json!({"finite_global_dimension": a.flags().finite_global_dimension.as_str(), "provenance": a.flags().provenance}),
    );
    m.insert("fingerprint".into(), json!(a.fingerprint()));
    m.insert("commutative".into(), json!(a.is_commutative()));
    m.insert("radical_dim".into(), section(radical.as_ref().map(IdealBasis::dim).map_err(Clone::clone)));
    m.insert("semisimple".into(), section(is_semisimple(a)));
    m.insert("center_dim".into(), section(center(a).map(|c| c.dim())));
    m.insert(
        "separable".into(),
        section(is_separable(a).map(|s| json!({"separable": s.separable, "method": s.method}))),
    );
    m.insert("central_simple".into(), section(is_central_simple(a)));
    m.insert("wedderburn".into(), section(wedderburn(a, seed)));
    m.insert("hh0_dim".into(), json!(hh0_dim(a)));
    m.insert("unit_group_order".into(), section(unit_group_order(a)));
    Value::Object(m)
}

fn ideal_for(a: &Algebra, which: &str) -> Result<IdealBasis> {
    match which {
        "radical" => jacobson_radical(a),
        "zero" => Ok(IdealBasis::zero(a)),
        path => {
            let v = doc::parse_json(&read(Path::new(path))?)?;
            doc::ideal(&Node::root(&v), a)
        }
    }
}

fn dispatch(cli: &Cli, ring: &CoefficientRing) -> Result<Value> {
    match &cli.command {
        Command::Alg { action: AlgAction::Analyze(input) } => Ok(analyze(&load_algebra(input, cli.max_dim)?, cli.seed)),
        Command::Clifford(input) => Ok(to_value(&clifford_verify(&load_form(input)?)?)),
        Command::Motive { action: MotiveAction::Reduce { input, expr } } => {
            let e = match expr {
                Some(path) => {
                    let v = doc::parse_json(&read(path)?)?;
                    doc::expr(&Node::root(&v), ring)?
                }
                None => motive_atom(&load_algebra(input, cli.max_dim)?, ring),
            };
            reduce(&e, ring, cli.seed)
        }
        Command::Sb(input) => Ok(to_value(&severi_brauer_motive(&load_algebra(input, cli.max_dim)?, ring)?)),
        Command::Quadric(input) => Ok(to_value(&quadric_motive(&load_form(input)?, ring)?)),
        Command::K0(k) => {
            let model = load_model(k)?;
            let coords = k
                .invert_elt
                .as_deref()
                .or(k.elt.as_deref())
                .ok_or_else(|| Error::InvalidArgument("an element is required (--elt or --invert-elt)".into()))?;
            let coords = parse_coords(coords)?;
            match k0_action(k) {
                K0Action::Nilpotence => {
                    let e = model.normalize(coords, &CoefficientRing::integers())?;
                    Ok(to_value(&nilpotence_witness(&model, &e, k.max_exp)?))
                }
                K0Action::Invert => {
                    let e = model.normalize(coords, ring)?;
                    Ok(to_value(&localize_invert(&model, &e, ring, k.max_exp)?))
                }
            }
        }
        Command::Hh(input) => {
            let a = load_algebra(input, cli.max_dim)?;
            let d = cli.max_degree.unwrap_or(DEFAULT_HH_DEGREE);
            Ok(to_value(&hh_dims(&a, d, max_cells_from_env())?))
        }
        Command::Nil(n) => {
            let a = load_algebra(&n.input, cli.max_dim)?;
            let ideal = ideal_for(&a, &n.ideal)?;
            Ok(to_value(&nil_reduce(&a, &ideal, ring, n.quotient_finite_gldim)?))
        }
    }
}

fn reduce(e: &MotiveExpr, ring: &CoefficientRing, seed: u64) -> Result<Value> {
    Ok(to_value(&motive_reduce_seeded(e, ring, seed)?))
}

/// Indented `key: value` rendering of a JSON report.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar_text(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn render_into(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_into(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_into(x, indent + 1, out);
                    }
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar_text(x).unwrap_or_default())),
    }
}
