//! Command-line front end: deterministic JSON and text reports over the
//! graph, K-theory, classification, synthesis, presentation, and
//! profile operations.
//!
//! Exit codes: 0 success, 1 validation error (bad flags, unreadable or
//! malformed input, unrealizable targets), 2 verification failure (a
//! produced artifact failed its own re-verification, or a self-check
//! mismatched). Reports are byte-identical across runs on identical
//! inputs: every collection is emitted in a deterministic order, and
//! integers beyond 2⁵³ are serialized as decimal strings.
//!
//! The environment variable `OKGRAPH_SEARCH_BOUND` overrides the cycle
//! search bound used by `classify`.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{dichotomy_with_bound, AlgebraVerdict, DEFAULT_SEARCH_BOUND};
use crate::graph::{
    fiber_image, has_loop, m_vertices, p_value, regular_vertices, CirclePoint, Edge, Path,
    WeightedGraph,
};
use crate::intlin::AbelianGroup;
use crate::ktheory::{k_invariants, one_vertex_reference, report, KReport};
use crate::present::{
    one_vertex_reduced, relative_profile, star_presentation, toeplitz_profile,
    CircleAlgebraProfile, PresentError, StarPresentation,
};
use crate::realize::{realize, GroupSpec, RealizeError};

/// Environment variable overriding the classify search bound.
pub const ENV_SEARCH_BOUND: &str = "OKGRAPH_SEARCH_BOUND";

#[derive(Parser)]
#[command(
    name = "okgraph",
    version,
    about = "Classification invariants and synthesis for algebras of weighted directed graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Structural summary: vertices, arcs, regularity sets, loops.
    Inspect {
        /// Graph JSON file.
        #[arg(value_name = "GRAPH", required_unless_present = "batch")]
        input: Option<PathBuf>,
        /// Process every .json file in a directory instead.
        #[arg(long, value_name = "DIR", conflicts_with = "input")]
        batch: Option<PathBuf>,
    },
    /// K-groups, unit class, and the defining matrices.
    Ktheory {
        /// Graph JSON file.
        #[arg(value_name = "GRAPH", required_unless_present = "batch")]
        input: Option<PathBuf>,
        /// Process every .json file in a directory instead.
        #[arg(long, value_name = "DIR", conflicts_with = "input")]
        batch: Option<PathBuf>,
    },
    /// Minimality certificates and the simple/purely-infinite verdict.
    Classify {
        /// Graph JSON file.
        #[arg(value_name = "GRAPH", required_unless_present = "batch")]
        input: Option<PathBuf>,
        /// Process every .json file in a directory instead.
        #[arg(long, value_name = "DIR", conflicts_with = "input")]
        batch: Option<PathBuf>,
    },
    /// Synthesize a graph with prescribed K-groups and unit class.
    Realize {
        /// K₀ target, e.g. "Z^2 + Z/4 + Z/2" or "0".
        #[arg(long, value_name = "GROUP")]
        k0: String,
        /// Unit class in K₀ as comma-separated coordinates (free then
        /// torsion), e.g. "0,0,1,0"; defaults to zero.
        #[arg(long, value_name = "COORDS")]
        unit: Option<String>,
        /// K₁ target.
        #[arg(long, value_name = "GROUP")]
        k1: String,
    },
    /// Generator-relation presentation of the graph algebra.
    Present {
        /// Graph JSON file.
        #[arg(value_name = "GRAPH", required_unless_present = "batch")]
        input: Option<PathBuf>,
        /// Process every .json file in a directory instead.
        #[arg(long, value_name = "DIR", conflicts_with = "input")]
        batch: Option<PathBuf>,
        /// Present the Toeplitz extension (drop receiver relations).
        #[arg(long)]
        toeplitz: bool,
        /// Reduced two-generator / regrouped form for one-loop graphs;
        /// falls back to the general presentation when the winding
        /// number is zero.
        #[arg(long = "one-vertex")]
        one_vertex: bool,
    },
    /// Circle-algebra block profile of a loop-free graph.
    Toeplitz {
        /// Graph JSON file (the loop-free graph).
        #[arg(value_name = "GRAPH", required_unless_present = "batch")]
        input: Option<PathBuf>,
        /// Process every .json file in a directory instead.
        #[arg(long, value_name = "DIR", conflicts_with = "input")]
        batch: Option<PathBuf>,
        /// Ambient graph: emit the profile of the subalgebra the input
        /// generates inside this graph's algebra.
        #[arg(long, value_name = "AMBIENT", conflicts_with = "batch")]
        within: Option<PathBuf>,
    },
    /// Self-check: reference K-theory table and circle-fiber oracle.
    Oracle {
        /// RNG seed for the randomized checks.
        #[arg(long, default_value_t = 20260817)]
        seed: u64,
        /// Number of randomized fiber checks.
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

/// A failed command: exit code (1 validation, 2 verification) plus a
/// message for the report stream.
struct Failure {
    code: i32,
    message: String,
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn unverified(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CmdResult = Result<String, Failure>;

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

/// Binary entry point: parses `std::env::args` and writes to stdout.
pub fn main_entry() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut out = std::io::stdout().lock();
    let code = run(&args, &mut out);
    ExitCode::from(code.clamp(0, 255) as u8)
}

/// Runs one invocation against an output stream and returns the exit
/// code. All report and error text goes to `out`.
pub fn run(args: &[String], out: &mut dyn Write) -> i32 {
    let argv = std::iter::once("okgraph".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{e}");
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    let format = cli.format;
    let (text, code) = match &cli.command {
        Command::Inspect { input, batch } => {
            dispatch(input, batch, |g| Ok(render_inspect(g, format)))
        }
        Command::Ktheory { input, batch } => {
            dispatch(input, batch, |g| Ok(render_ktheory(g, format)))
        }
        Command::Classify { input, batch } => match classify_bound() {
            Ok(bound) => dispatch(input, batch, move |g| Ok(render_classify(g, bound, format))),
            Err(f) => (f.message, f.code),
        },
        Command::Realize { k0, unit, k1 } => collapse(run_realize(k0, unit.as_deref(), k1, format)),
        Command::Present {
            input,
            batch,
            toeplitz,
            one_vertex,
        } => {
            let (t, ov) = (*toeplitz, *one_vertex);
            dispatch(input, batch, move |g| render_present(g, t, ov, format))
        }
        Command::Toeplitz {
            input,
            batch,
            within,
        } => match within {
            Some(ambient_path) => collapse(run_relative(
                input.as_deref().expect("clap requires input without batch"),
                ambient_path,
                format,
            )),
            None => dispatch(input, batch, move |g| {
                let profile = toeplitz_profile(g).map_err(present_failure)?;
                Ok(render_profile(&profile, format))
            }),
        },
        Command::Oracle { seed, cases } => collapse(run_oracle(*seed, *cases, format)),
    };
    let _ = writeln!(out, "{}", text.trim_end());
    code
}

fn collapse(r: CmdResult) -> (String, i32) {
    match r {
        Ok(text) => (text, 0),
        Err(f) => (f.message, f.code),
    }
}

/// Runs a per-graph handler on a single file or on every `.json` file
/// of a batch directory (computed concurrently, printed in sorted
/// order; the exit code is the worst individual code).
fn dispatch<F>(input: &Option<PathBuf>, batch: &Option<PathBuf>, handler: F) -> (String, i32)
where
    F: Fn(&WeightedGraph) -> CmdResult + Sync,
{
    let on_file = |path: &FsPath| -> CmdResult {
        let g = load_graph(path)?;
        handler(&g)
    };
    match (input, batch) {
        (Some(path), None) => collapse(on_file(path)),
        (None, Some(dir)) => {
            let mut files = match std::fs::read_dir(dir) {
                Ok(entries) => entries
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "json"))
                    .collect::<Vec<_>>(),
                Err(e) => return (format!("cannot read directory {}: {e}", dir.display()), 1),
            };
            files.sort();
            let results: Vec<CmdResult> = std::thread::scope(|scope| {
                let handles: Vec<_> = files
                    .iter()
                    .map(|path| scope.spawn(|| on_file(path)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("batch worker panicked"))
                    .collect()
            });
            let mut text = String::new();
            let mut code = 0;
            for (path, result) in files.iter().zip(results) {
                let name = path
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                let _ = writeln!(text, "== {name} ==");
                match result {
                    Ok(report) => {
                        let _ = writeln!(text, "{}", report.trim_end());
                    }
                    Err(f) => {
                        let _ = writeln!(text, "{}", f.message.trim_end());
                        code = code.max(f.code);
                    }
                }
            }
            (text, code)
        }
        // clap's required_unless_present/conflicts_with rules make the
        // remaining combinations unrepresentable
        _ => unreachable!("argument parsing enforces exactly one input source"),
    }
}

fn load_graph(path: &FsPath) -> Result<WeightedGraph, Failure> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    WeightedGraph::from_json(&raw)
        .map_err(|e| invalid(format!("invalid graph in {}: {e}", path.display())))
}

fn classify_bound() -> Result<usize, Failure> {
    match std::env::var(ENV_SEARCH_BOUND) {
        Err(_) => Ok(DEFAULT_SEARCH_BOUND),
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .map_err(|_| invalid(format!("invalid {ENV_SEARCH_BOUND} value: {raw:?}"))),
    }
}

fn present_failure(e: PresentError) -> Failure {
    invalid(format!("{e}"))
}

// ---------------------------------------------------------------------------
// Renderers
// ---------------------------------------------------------------------------

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("report serialization is valid")
}

fn render_inspect(g: &WeightedGraph, format: Format) -> String {
    let loop_edges = has_loop(g).map(|p| p.ids(g));
    match format {
        Format::Json => {
            let graph: serde_json::Value =
                serde_json::from_str(&g.to_json()).expect("graph serialization is valid");
            let mut obj = graph.as_object().cloned().expect("graph JSON is an object");
            obj.insert(
                "regular_vertices".into(),
                serde_json::json!(regular_vertices(g)),
            );
            obj.insert(
                "winding_receivers".into(),
                serde_json::json!(m_vertices(g)),
            );
            obj.insert("loop_edges".into(), serde_json::json!(loop_edges));
            pretty(&serde_json::Value::Object(obj))
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "vertices ({}): {}", g.vertices().len(), g.vertices().join(", "));
            let _ = writeln!(out, "edges ({}):", g.edges().len());
            for e in g.edges() {
                let _ = writeln!(
                    out,
                    "  {}: {} -> {}  degree {}  winding {}",
                    e.id, e.dom, e.ran, e.n, e.m
                );
            }
            if !g.families().is_empty() {
                let _ = writeln!(out, "infinite families ({}):", g.families().len());
                for (i, f) in g.families().iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "  ~family{}: {} -> {}  degree {}  winding {}",
                        i, f.dom, f.ran, f.n, f.m
                    );
                }
            }
            let _ = writeln!(out, "regular vertices: {}", list_or_none(&regular_vertices(g)));
            let _ = writeln!(out, "winding receivers: {}", list_or_none(&m_vertices(g)));
            match loop_edges {
                Some(ids) => {
                    let _ = writeln!(out, "loop: via edges [{}]", ids.join(", "));
                }
                None => {
                    let _ = writeln!(out, "loop: none");
                }
            }
            out
        }
    }
}

fn list_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".to_string()
    } else {
        items.join(", ")
    }
}

fn render_ktheory(g: &WeightedGraph, format: Format) -> String {
    let rep: KReport = report(g);
    match format {
        Format::Json => serde_json::to_string_pretty(&rep).expect("report serialization is valid"),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "K0 = {}", rep.k0);
            let unit = rep
                .unit
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            let _ = writeln!(out, "unit = [{unit}]");
            let _ = writeln!(out, "K1 = {}", rep.k1);
            let _ = writeln!(
                out,
                "degree matrix (rows: all vertices; columns: {}):",
                list_or_none(&rep.rg_m_columns)
            );
            for row in &rep.n_matrix {
                let _ = writeln!(out, "  {}", row_text(row));
            }
            let _ = writeln!(
                out,
                "winding matrix (columns: {}):",
                list_or_none(&rep.m_columns)
            );
            for row in &rep.m_matrix {
                let _ = writeln!(out, "  {}", row_text(row));
            }
            out
        }
    }
}

fn row_text(row: &[BigInt]) -> String {
    let cells = row.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    format!("[{}]", cells.join(", "))
}

fn render_classify(g: &WeightedGraph, bound: usize, format: Format) -> String {
    let verdict: AlgebraVerdict = dichotomy_with_bound(g, bound);
    match format {
        Format::Json => {
            serde_json::to_string_pretty(&verdict).expect("verdict serialization is valid")
        }
        Format::Text => {
            let mut out = String::new();
            let label = serde_json::to_value(verdict.label)
                .expect("label serialization is valid")
                .as_str()
                .expect("label is a string")
                .to_string();
            let _ = writeln!(out, "verdict: {label}");
            let _ = writeln!(out, "{}", verdict.justification);
            out
        }
    }
}

fn parse_group(text: &str) -> Result<AbelianGroup, Failure> {
    text.parse::<AbelianGroup>()
        .map_err(|e| invalid(format!("invalid group {text:?}: {e}")))
}

fn parse_unit(text: &str) -> Result<Vec<BigInt>, Failure> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<BigInt>()
                .map_err(|_| invalid(format!("invalid unit coordinate {part:?}")))
        })
        .collect()
}

fn run_realize(k0: &str, unit: Option<&str>, k1: &str, format: Format) -> CmdResult {
    let group0 = parse_group(k0)?;
    let group1 = parse_group(k1)?;
    let unit_coords = unit.map(parse_unit).transpose()?;
    let k0_spec = GroupSpec::new(group0, unit_coords)
        .map_err(|e| invalid(format!("invalid unit class: {e}")))?;
    let k1_spec = GroupSpec::plain(group1);
    let report = realize(&k0_spec, &k1_spec).map_err(|e| match e {
        RealizeError::Verification(_) => unverified(format!("{e}")),
        other => invalid(format!("{other}")),
    })?;
    match format {
        Format::Json => Ok(report.to_json()),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "verified realization");
            let _ = writeln!(
                out,
                "K0 = {} with unit {:?}, K1 = {}",
                report.computed.k0,
                report
                    .k0_target
                    .unit_or_zero()
                    .flat_coords()
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>(),
                report.computed.k1
            );
            let _ = writeln!(
                out,
                "graph: {} vertices, {} edges, {} infinite families",
                report.graph.vertices().len(),
                report.graph.edges().len(),
                report.graph.families().len()
            );
            let _ = writeln!(out, "minimality: certified");
            Ok(out)
        }
    }
}

fn render_present(
    g: &WeightedGraph,
    toeplitz: bool,
    one_vertex: bool,
    format: Format,
) -> CmdResult {
    if one_vertex {
        if g.vertices().len() != 1 || g.edges().len() != 1 || !g.families().is_empty() {
            return Err(invalid(
                "--one-vertex needs a graph with exactly one vertex, one edge, and no families",
            ));
        }
        let e = &g.edges()[0];
        match one_vertex_reduced(&e.n, &e.m) {
            Ok(reduced) => {
                return Ok(match format {
                    Format::Json => reduced.to_json(),
                    Format::Text => reduced.render_text(),
                });
            }
            Err(PresentError::ZeroWinding) => {
                // fall through to the general presentation
                let p = star_presentation(g, toeplitz).map_err(present_failure)?;
                return Ok(match format {
                    Format::Json => p.to_json(),
                    Format::Text => format!(
                        "no reduced form for winding number 0; general presentation:\n{}",
                        p.render_text()
                    ),
                });
            }
            Err(other) => return Err(present_failure(other)),
        }
    }
    let p: StarPresentation = star_presentation(g, toeplitz).map_err(present_failure)?;
    Ok(match format {
        Format::Json => p.to_json(),
        Format::Text => p.render_text(),
    })
}

fn render_profile(profile: &CircleAlgebraProfile, format: Format) -> String {
    match format {
        Format::Json => profile.to_json(),
        Format::Text => profile.render_text(),
    }
}

fn run_relative(inner_path: &FsPath, ambient_path: &FsPath, format: Format) -> CmdResult {
    let inner = load_graph(inner_path)?;
    let ambient = load_graph(ambient_path)?;
    let profile = relative_profile(&ambient, &inner).map_err(present_failure)?;
    Ok(render_profile(&profile, format))
}

// ---------------------------------------------------------------------------
// Oracle self-checks
// ---------------------------------------------------------------------------

/// Random small graph for the fiber self-check.
fn random_graph(rng: &mut ChaCha8Rng) -> WeightedGraph {
    let nv = rng.gen_range(1..=3usize);
    let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let ne = rng.gen_range(1..=5usize);
    let edges = (0..ne)
        .map(|i| {
            Edge::new(
                format!("e{i}"),
                vertices[rng.gen_range(0..nv)].clone(),
                vertices[rng.gen_range(0..nv)].clone(),
                rng.gen_range(1..=4i64),
                rng.gen_range(-4..=4i64),
            )
        })
        .collect();
    WeightedGraph::build(vertices, edges, vec![]).expect("random graph is well formed")
}

/// Random composable path of length ≤ 4 (None if the start has no
/// continuation; single arcs always succeed).
fn random_path(g: &WeightedGraph, rng: &mut ChaCha8Rng) -> Path {
    let arcs = g.arcs();
    let mut picked = vec![rng.gen_range(0..arcs.len())];
    let target_len = rng.gen_range(1..=4usize);
    while picked.len() < target_len {
        let need = arcs[*picked.last().expect("nonempty")].dom;
        let candidates: Vec<usize> = (0..arcs.len()).filter(|&i| arcs[i].ran == need).collect();
        if candidates.is_empty() {
            break;
        }
        picked.push(candidates[rng.gen_range(0..candidates.len())]);
    }
    Path::new(g, picked).expect("constructed path is composable")
}

fn run_oracle(seed: u64, cases: usize, format: Format) -> CmdResult {
    let mut failures: Vec<String> = Vec::new();
    let mut checked = 0usize;

    // reference K-theory table on one-loop graphs
    for n in 1..=6i64 {
        for m in -6..=6i64 {
            checked += 1;
            let computed = k_invariants(&WeightedGraph::single_loop(n, m));
            let expected = one_vertex_reference(n, m);
            if computed != expected {
                failures.push(format!(
                    "one-loop table mismatch at degree {n}, winding {m}"
                ));
            }
        }
    }

    // fiber images over the base point match the p-value roots exactly
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        checked += 1;
        let g = random_graph(&mut rng);
        let path = random_path(&g, &mut rng);
        let p = p_value(&g, &path);
        let image = fiber_image(&g, &path, &CirclePoint::one());
        let expected = CirclePoint::one().nth_roots(&p);
        if p < BigInt::one() || image != expected {
            failures.push(format!(
                "fiber mismatch in case {case}: p = {p}, image size {}",
                image.len()
            ));
        }
    }

    let ok = failures.is_empty();
    let text = match format {
        Format::Json => pretty(&serde_json::json!({
            "seed": seed,
            "cases": cases,
            "checked": checked,
            "failures": failures,
        })),
        Format::Text => {
            if ok {
                format!("oracle self-check: {checked} checks passed (seed {seed})")
            } else {
                let mut out = format!(
                    "oracle self-check: {} of {checked} checks failed (seed {seed})\n",
                    failures.len()
                );
                for f in &failures {
                    let _ = writeln!(out, "  {f}");
                }
                out
            }
        }
    };
    if ok {
        Ok(text)
    } else {
        Err(unverified(text))
    }
}
