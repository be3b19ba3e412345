//! Command-line front end for `kdilate-core`.
//!
//! [`run`] takes the argument list and returns the exit code with whatever
//! would have been written to standard output and standard error, so the
//! binary is a thin wrapper and tests can call it directly.

pub mod error;
pub mod problem;
pub mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use kdilate_core::abelian::GroupHom;
use kdilate_core::colimit::{classify_colimit, eventual_kernel, ker_coker_one_minus, DilationProblem};
use kdilate_core::graphalg::{
    crossed_subquotient_k, enumerate_hereditary_saturated, ideal_lattice_hasse, prim_poset, subquotient_k, Graph,
    VertexSet,
};
use kdilate_core::kcrossed::{
    cuntz_closed_form, pv_crossed_product, pv_verify_exactness, scale_k_map, CuntzIndex, KTheoryData,
};
use kdilate_core::matrix::smith_normal_form;
use serde_json::{json, Value};

pub use error::{CliError, EXIT_INPUT, EXIT_OK, EXIT_UNRESOLVED};
use problem::Problem;

#[derive(Debug, Parser)]
#[command(name = "kdilate", version, about = "K-theory of dilations and crossed products by endomorphisms")]
struct Cli {
    /// Output format; dot is available for graph-lattice and graph-prim.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Problem file (JSON); `-` reads standard input.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Smith normal form of a matrix (or of a group's relation matrix).
    Snf,
    /// Direct limit of a group along an endomorphism.
    Colim,
    /// Kernel and cokernel of 1 - f on the direct limit.
    Kercoker,
    /// K-theory of the crossed product from K-data.
    Pv,
    /// Crossed products of Cuntz algebras by multiplication endomorphisms.
    Cuntz {
        /// n (an integer ≥ 2, or `inf`)
        n: Option<String>,
        /// m (a positive integer)
        m: Option<String>,
    },
    /// Hereditary saturated vertex sets.
    GraphHs,
    /// Lattice of hereditary saturated sets.
    GraphLattice,
    /// Primitive ideal space.
    GraphPrim,
    /// K-theory of a subquotient I_Z / I_Y.
    GraphK {
        /// Z as comma-separated vertex names (empty for the empty set)
        z: String,
        /// Y as comma-separated vertex names (empty for the empty set)
        y: String,
    },
    /// K-theory of the subquotient in the crossed product.
    GraphCrossedK { z: String, y: String },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A command's result in every format it supports.
struct Report {
    text: String,
    json: Value,
    dot: Option<String>,
    resolved: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Self { text, json, dot: None, resolved: true }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code: EXIT_OK, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => emit(cli.format, report),
        Err(e) => failure(cli.format, &e),
    }
}

fn emit(format: Format, mut report: Report) -> Outcome {
    let status = if report.resolved { "ok" } else { "unresolved" };
    let code = if report.resolved { EXIT_OK } else { EXIT_UNRESOLVED };
    let stdout = match format {
        Format::Text => {
            if !report.resolved {
                report.text.push_str("status = unresolved\n");
            }
            report.text
        }
        Format::Json => {
            report.json["status"] = Value::from(status);
            render::to_json_text(&report.json)
        }
        Format::Dot => match report.dot {
            Some(dot) => dot,
            None => {
                let msg = "dot output is only available for graph-lattice and graph-prim";
                return Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") };
            }
        },
    };
    let stderr = if report.resolved { String::new() } else { "note: result is unresolved\n".into() };
    Outcome { code, stdout, stderr }
}

fn failure(format: Format, e: &CliError) -> Outcome {
    let stderr = format!("error: {e}\n");
    // undetermined results still produce a document carrying the status
    let stdout = match (e, format) {
        (CliError::Undetermined(_), Format::Json) => {
            render::to_json_text(&json!({ "status": "undetermined", "error": e.to_string() }))
        }
        (CliError::Undetermined(_), _) => "status = undetermined\n".into(),
        _ => String::new(),
    };
    Outcome { code: e.exit_code(), stdout, stderr }
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Cuntz { n: Some(n), m: Some(m) } => {
            if cli.input.is_some() {
                return Err(CliError::Usage("give either positional n m or --input, not both".into()));
            }
            cuntz(&[(problem::cuntz_index_arg(n)?, problem::integer_arg(m)?)])
        }
        Command::Cuntz { n: Some(_), m: None } => Err(CliError::Usage("cuntz needs both n and m".into())),
        command => {
            let problem = load(cli.input.as_ref())?;
            dispatch(command, problem)
        }
    }
}

fn load(path: Option<&PathBuf>) -> Result<Problem, CliError> {
    let path = path.ok_or_else(|| CliError::Usage("this subcommand needs --input FILE".into()))?;
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    problem::parse(&text)
}

fn wrong_kind(command: &str, want: &str, got: &Problem) -> CliError {
    CliError::schema("$.kind", format!("{command} expects a {want} problem, got {}", got.kind()))
}

fn dispatch(command: &Command, problem: Problem) -> Result<Report, CliError> {
    match (command, problem) {
        (Command::Snf, Problem::Matrix(m)) => Ok(snf(&m)),
        (Command::Snf, Problem::GroupEndo { base, .. }) => Ok(snf(base.relations())),
        (Command::Snf, p) => Err(wrong_kind("snf", "matrix or group_endo", &p)),
        (Command::Colim | Command::Kercoker, Problem::GroupEndo { base, endomorphism }) => {
            let dp = DilationProblem::from_presentation(&base, &endomorphism)?;
            if matches!(command, Command::Colim) {
                colim(&dp)
            } else {
                kercoker(&dp)
            }
        }
        (Command::Colim, p) => Err(wrong_kind("colim", "group_endo", &p)),
        (Command::Kercoker, p) => Err(wrong_kind("kercoker", "group_endo", &p)),
        (Command::Pv, Problem::KData { k0, k1, map0, map1, multiplier }) => {
            let mut d = KTheoryData::new(
                GroupHom::from_presentations(&k0, &k0, &map0)?,
                GroupHom::from_presentations(&k1, &k1, &map1)?,
            )?;
            if let Some(c) = multiplier {
                d = scale_k_map(&d, &c);
            }
            pv(&d)
        }
        (Command::Pv, p) => Err(wrong_kind("pv", "k_data", &p)),
        (Command::Cuntz { .. }, Problem::Cuntz(cases)) => cuntz(&cases),
        (Command::Cuntz { .. }, p) => Err(wrong_kind("cuntz", "cuntz", &p)),
        (Command::GraphHs, Problem::Graph(g)) => Ok(graph_hs(&g)),
        (Command::GraphLattice, Problem::Graph(g)) => Ok(poset_report(&ideal_lattice_hasse(&g))),
        (Command::GraphPrim, Problem::Graph(g)) => {
            let p = prim_poset(&g)?;
            let mut report = poset_report(&p);
            let undirected: Vec<Value> = p.undirected_covers().into_iter().map(|(a, b)| json!([a, b])).collect();
            report.json["undirected_covers"] = Value::Array(undirected);
            Ok(report)
        }
        (Command::GraphK { z, y }, Problem::Graph(g)) => graph_k(&g, z, y, false),
        (Command::GraphCrossedK { z, y }, Problem::Graph(g)) => graph_k(&g, z, y, true),
        (_, p) => Err(wrong_kind("graph subcommands", "graph", &p)),
    }
}

fn snf(m: &kdilate_core::matrix::IntMatrix) -> Report {
    let f = smith_normal_form(m);
    let diag = f.diagonal();
    let diag_text: Vec<String> = diag.iter().map(ToString::to_string).collect();
    let text = format!("S = {}\nU = {}\nV = {}\ndiagonal = [{}]\n", f.s, f.u, f.v, diag_text.join(", "));
    let json = json!({
        "command": "snf",
        "s": render::matrix(&f.s),
        "u": render::matrix(&f.u),
        "v": render::matrix(&f.v),
        "diagonal": render::ints(&diag),
        "rank": f.rank,
    });
    Report::new(text, json)
}

fn colim(dp: &DilationProblem) -> Result<Report, CliError> {
    let ek = eventual_kernel(dp)?;
    let limit = classify_colimit(dp)?;
    let text = format!("colim = {limit}\n");
    let json = json!({
        "command": "colim",
        "base": render::group(dp.base()),
        "eventual_kernel": render::group(&ek.group),
        "stabilization_index": ek.stabilization_index,
        "limit": render::description(&limit),
    });
    Ok(Report { resolved: limit.is_resolved(), ..Report::new(text, json) })
}

fn kercoker(dp: &DilationProblem) -> Result<Report, CliError> {
    let (ker, coker) = ker_coker_one_minus(dp)?;
    let text = format!("ker(1 - f) = {ker}, coker(1 - f) = {coker}\n");
    let json = json!({
        "command": "kercoker",
        "kernel": render::description(&ker),
        "cokernel": render::description(&coker),
    });
    Ok(Report { resolved: ker.is_resolved() && coker.is_resolved(), ..Report::new(text, json) })
}

fn pv(d: &KTheoryData) -> Result<Report, CliError> {
    let out = pv_crossed_product(d)?;
    let text = format!("K0 = {}, K1 = {}\n", out.k0, out.k1);
    let json = json!({
        "command": "pv",
        "k0": render::piece(&out.k0),
        "k1": render::piece(&out.k1),
        "exact": pv_verify_exactness(d, &out),
    });
    Ok(Report { resolved: out.is_resolved(), ..Report::new(text, json) })
}

fn cuntz(cases: &[(CuntzIndex, kdilate_core::BigInt)]) -> Result<Report, CliError> {
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for (n, m) in cases {
        let cf = cuntz_closed_form(n, m)?;
        let mut line = format!("K0 = {}, K1 = {}, label = {}", cf.k0, cf.k1, cf.label);
        if let (Some(k), Some(g), Some(l)) = (&cf.k, &cf.oracle_g, &cf.closed_form_l) {
            line.push_str(&format!(", k = {k}, g = {g}, l = {l}"));
        }
        if cases.len() > 1 {
            line = format!("n = {n}, m = {m}: {line}");
        }
        lines.push(line);
        let opt = |x: &Option<kdilate_core::BigInt>| x.as_ref().map_or(Value::Null, render::int);
        entries.push(json!({
            "n": render::cuntz_index(n),
            "m": render::int(m),
            "k": opt(&cf.k),
            "g": opt(&cf.oracle_g),
            "l": opt(&cf.closed_form_l),
            "label": cf.label,
            "closed_form_label": cf.closed_form_label,
            "k0": render::description(&cf.k0),
            "k1": render::description(&cf.k1),
        }));
    }
    let text = lines.join("\n") + "\n";
    Ok(Report::new(text, json!({ "command": "cuntz", "cases": entries })))
}

fn graph_hs(g: &Graph) -> Report {
    let family = enumerate_hereditary_saturated(g);
    let text: String = family.iter().map(|s| g.label(s) + "\n").collect();
    let sets: Vec<Value> = family.iter().map(|s| names(g, s)).collect();
    Report::new(text, json!({ "command": "graph-hs", "sets": sets }))
}

fn poset_report(p: &kdilate_core::poset::PosetDiagram) -> Report {
    let mut covers: Vec<(&str, &str)> = p.cover_labels().collect();
    covers.sort();
    let mut text: String = covers.iter().map(|(a, b)| format!("{a} < {b}\n")).collect();
    if covers.is_empty() {
        text = p.elements().iter().map(|e| format!("{e}\n")).collect();
    }
    Report { dot: Some(render::dot(p)), ..Report::new(text, render::poset(p)) }
}

fn graph_k(g: &Graph, z: &str, y: &str, crossed: bool) -> Result<Report, CliError> {
    let (zs, ys) = (vertex_set(g, z)?, vertex_set(g, y)?);
    let mut json = json!({
        "z": names(g, &zs),
        "y": names(g, &ys),
        "x": names(g, &zs.difference(&ys)),
    });
    if crossed {
        let out = crossed_subquotient_k(g, &zs, &ys)?;
        json["command"] = "graph-crossed-k".into();
        json["k0"] = render::piece(&out.k0);
        json["k1"] = render::piece(&out.k1);
        let text = format!("K0 = {}, K1 = {}\n", out.k0, out.k1);
        Ok(Report { resolved: out.is_resolved(), ..Report::new(text, json) })
    } else {
        let (k0, k1) = subquotient_k(g, &zs, &ys)?;
        json["command"] = "graph-k".into();
        json["k0"] = render::group(&k0);
        json["k1"] = render::group(&k1);
        Ok(Report::new(format!("K0 = {k0}, K1 = {k1}\n"), json))
    }
}

/// Comma-separated names, optionally in braces; empty means the empty set.
fn vertex_set(g: &Graph, spec: &str) -> Result<VertexSet, CliError> {
    let inner = spec.trim();
    let inner = inner.strip_prefix('{').and_then(|s| s.strip_suffix('}')).unwrap_or(inner);
    let parts = inner.split(',').map(str::trim).filter(|s| !s.is_empty());
    g.vertex_set(parts).map_err(|e| CliError::Usage(e.to_string()))
}

fn names(g: &Graph, s: &VertexSet) -> Value {
    Value::Array(s.iter().map(|v| Value::from(g.vertices()[v].as_str())).collect())
}
