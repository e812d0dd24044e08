//! Command-line front end: argument model, edge selectors, report rendering.
//!
//! Exit codes: 0 success, 1 infeasible instance, 2 usage/parse error,
//! 3 verification property failure. Errors are written as a single line
//! prefixed with `error:<kind>:`.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bound::{lower_bound, BoundReport};
use crate::error::Error;
use crate::graph::{parse_graph, EdgeId, Graph};
use crate::imposition::{impose_all, ImpositionState};
use crate::mst::{minimum_spanning_tree, ImposedSet, SpanningTree};
use crate::random::{random_connected_graph, DEFAULT_COSTS};
use crate::tree_analysis::ExtCost;
use crate::verify::{all_passed, budget_from_env, verify_graph, PropertyOutcome, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PROPERTY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "mst-impose",
    version,
    about = "Minimum spanning trees with imposed edges"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a minimum spanning tree and its cost.
    Mst(GraphArgs),
    /// Impose edges one at a time by swaps and print each step.
    Impose(ImposeArgs),
    /// Print the replacement-cost lower bound for an imposed set, with the exact optimum.
    Bound(ImposeArgs),
    /// Check the solvers against brute-force enumeration.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Edge-list graph file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ImposeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Comma-separated edge selectors: `#<id>` or `<u>-<v>`.
    #[arg(long, default_value = "")]
    pub impose: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Graph to verify (skipped if larger than the enumeration budget).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Generate K random connected graphs with N nodes and M edges.
    #[arg(long, num_args = 3, value_names = ["N", "M", "K"])]
    pub random: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Rendered result of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, kind: &str, message: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error:{kind}: {message}\n"),
        }
    }

    fn from_error(err: &Error) -> Self {
        let code = if err.is_infeasible() {
            EXIT_INFEASIBLE
        } else {
            EXIT_USAGE
        };
        Self::fail(code, err.kind(), err)
    }
}

/// Resolves comma-separated selectors against `g`, preserving order.
pub fn parse_selectors(g: &Graph, spec: &str) -> Result<Vec<EdgeId>, String> {
    let mut out = Vec::new();
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some(id) = token.strip_prefix('#') {
            let id: usize = id
                .parse()
                .map_err(|_| format!("invalid edge id `{token}`"))?;
            if id >= g.edge_count() {
                return Err(format!("edge `{token}` does not exist"));
            }
            out.push(EdgeId(id));
            continue;
        }
        let (u, v) = token
            .split_once('-')
            .ok_or_else(|| format!("invalid selector `{token}` (expected `#id` or `u-v`)"))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid node in selector `{token}`"))
        };
        let matches = g.edges_between(parse(u)?, parse(v)?);
        match matches.as_slice() {
            [e] => out.push(*e),
            [] => return Err(format!("no edge matches `{token}`")),
            _ => {
                let ids: Vec<String> = matches.iter().map(ToString::to_string).collect();
                return Err(format!(
                    "`{token}` matches parallel edges {}; select by id",
                    ids.join(",")
                ));
            }
        }
    }
    Ok(out)
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Mst(args) => with_graph(args, |g| run_mst(g, args.format)),
        Command::Impose(args) => with_graph(&args.graph, |g| {
            run_impose(g, &args.impose, args.graph.format)
        }),
        Command::Bound(args) => with_graph(&args.graph, |g| {
            run_bound(g, &args.impose, args.graph.format)
        }),
        Command::Verify(args) => run_verify(args),
    }
}

fn load(path: &PathBuf) -> Result<Graph, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_USAGE, "io", format!("{}: {e}", path.display())))?;
    parse_graph(&text)
        .map_err(|e| Outcome::fail(EXIT_USAGE, "parse", format!("{}: {e}", path.display())))
}

fn with_graph(args: &GraphArgs, f: impl FnOnce(&Graph) -> Outcome) -> Outcome {
    match load(&args.input) {
        Ok(g) => f(&g),
        Err(o) => o,
    }
}

fn edge_json(g: &Graph, e: EdgeId) -> Value {
    let edge = g.edge(e);
    json!({"edge": e.0, "u": edge.u, "v": edge.v, "cost": edge.cost})
}

fn edge_text(g: &Graph, e: EdgeId) -> String {
    let edge = g.edge(e);
    format!("{e} {}-{} cost {}", edge.u, edge.v, edge.cost)
}

fn ext_json(c: ExtCost) -> Value {
    match c {
        ExtCost::Finite(v) => json!(v),
        ExtCost::Infinite => json!("inf"),
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn tree_lines(g: &Graph, t: &SpanningTree, out: &mut String) {
    for &e in t.edges() {
        let _ = writeln!(out, "  {}", edge_text(g, e));
    }
}

fn run_mst(g: &Graph, format: Format) -> Outcome {
    let t = match minimum_spanning_tree(g) {
        Ok(t) => t,
        Err(e) => return Outcome::from_error(&e),
    };
    Outcome::ok(match format {
        Format::Json => render_json(&json!({
            "edges": t.edges().iter().map(|&e| edge_json(g, e)).collect::<Vec<_>>(),
            "total_cost": t.total_cost(),
        })),
        Format::Text => {
            let mut s = format!("tree edges ({}):\n", t.edges().len());
            tree_lines(g, &t, &mut s);
            let _ = writeln!(s, "total_cost {}", t.total_cost());
            s
        }
    })
}

fn run_impose(g: &Graph, spec: &str, format: Format) -> Outcome {
    let edges = match parse_selectors(g, spec) {
        Ok(e) => e,
        Err(msg) => return Outcome::fail(EXIT_USAGE, "selector", msg),
    };
    let state = match impose_all(g, &edges) {
        Ok(s) => s,
        Err(e) => return Outcome::from_error(&e),
    };
    Outcome::ok(render_imposition(g, &state, format))
}

fn render_imposition(g: &Graph, state: &ImpositionState, format: Format) -> String {
    match format {
        Format::Json => render_json(&json!({
            "history": state.history().iter().map(|s| json!({
                "imposed": s.imposed.0,
                "removed": s.removed.map(|r| r.0),
                "cost_after": s.cost_after,
            })).collect::<Vec<_>>(),
            "imposed": state.imposed().iter().map(|e| e.0).collect::<Vec<_>>(),
            "edges": state.tree().edges().iter().map(|&e| edge_json(g, e)).collect::<Vec<_>>(),
            "total_cost": state.total_cost(),
        })),
        Format::Text => {
            let mut s = String::new();
            for (i, step) in state.history().iter().enumerate() {
                let removed = match step.removed {
                    Some(r) => format!("removed {}", edge_text(g, r)),
                    None => "already in tree".to_string(),
                };
                let _ = writeln!(
                    s,
                    "step {i}: imposed {}; {removed}; total {}",
                    edge_text(g, step.imposed),
                    step.cost_after
                );
            }
            let _ = writeln!(s, "tree edges ({}):", state.tree().edges().len());
            tree_lines(g, state.tree(), &mut s);
            let _ = writeln!(s, "total_cost {}", state.total_cost());
            s
        }
    }
}

fn run_bound(g: &Graph, spec: &str, format: Format) -> Outcome {
    let edges = match parse_selectors(g, spec) {
        Ok(e) => e,
        Err(msg) => return Outcome::fail(EXIT_USAGE, "selector", msg),
    };
    let report = ImposedSet::new(g, edges).and_then(|imposed| lower_bound(g, &imposed, true));
    match report {
        Ok(r) => Outcome::ok(render_bound(g, &r, format)),
        Err(e) => Outcome::from_error(&e),
    }
}

/// Renders a bound report. The JSON form is
/// `{"base_cost", "contributions": [{"edge","u","v","r_edge","r_cost"}], "lower_bound", "exact_cost", "gap"}`
/// with infinite values encoded as the string `"inf"`.
pub fn render_bound(g: &Graph, r: &BoundReport, format: Format) -> String {
    match format {
        Format::Json => render_json(&json!({
            "base_cost": r.base_cost,
            "contributions": r.contributions.iter().map(|c| {
                let e = g.edge(c.edge);
                json!({
                    "edge": c.edge.0,
                    "u": e.u,
                    "v": e.v,
                    "r_edge": c.r_edge.map(|x| x.0),
                    "r_cost": ext_json(c.r_cost),
                })
            }).collect::<Vec<_>>(),
            "lower_bound": ext_json(r.lower_bound),
            "exact_cost": r.exact_cost,
            "gap": r.gap,
        })),
        Format::Text => {
            let mut s = format!("base_cost {}\n", r.base_cost);
            for c in &r.contributions {
                let r_edge = c.r_edge.map_or("-".to_string(), |x| x.to_string());
                let _ = writeln!(
                    s,
                    "contribution {} r_edge {r_edge} r_cost {}",
                    edge_text(g, c.edge),
                    c.r_cost
                );
            }
            let _ = writeln!(s, "lower_bound {}", r.lower_bound);
            let opt = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
            let _ = writeln!(s, "exact_cost {}", opt(r.exact_cost));
            let _ = writeln!(s, "gap {}", opt(r.gap));
            s
        }
    }
}

enum InstanceResult {
    Checked(Vec<PropertyOutcome>),
    Skipped(String),
}

struct Instance {
    name: String,
    nodes: usize,
    edges: usize,
    result: InstanceResult,
}

fn run_verify(args: &VerifyArgs) -> Outcome {
    if args.input.is_none() && args.random.is_none() {
        return Outcome::fail(
            EXIT_USAGE,
            "usage",
            "verify needs --input and/or --random N M K",
        );
    }
    let budget = match budget_from_env() {
        Ok(b) => b,
        Err(e) => return Outcome::fail(EXIT_USAGE, "usage", e),
    };
    let opts = VerifyOptions {
        budget,
        ..VerifyOptions::default()
    };

    let mut graphs: Vec<(String, Graph)> = Vec::new();
    if let Some(path) = &args.input {
        match load(path) {
            Ok(g) => graphs.push(("input".into(), g)),
            Err(o) => return o,
        }
    }
    if let Some(spec) = &args.random {
        let (n, m, k) = (spec[0], spec[1], spec[2]);
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        for i in 0..k {
            match random_connected_graph(&mut rng, n, m, DEFAULT_COSTS) {
                Ok(g) => graphs.push((format!("random-{i}"), g)),
                Err(e) => return Outcome::fail(EXIT_USAGE, "usage", e),
            }
        }
    }

    let mut instances = Vec::with_capacity(graphs.len());
    for (name, g) in graphs {
        let result = match verify_graph(&g, &opts) {
            Ok(outcomes) => InstanceResult::Checked(outcomes),
            Err(Error::Budget(why)) => InstanceResult::Skipped(why),
            Err(e) => return Outcome::from_error(&e),
        };
        instances.push(Instance {
            name,
            nodes: g.node_count(),
            edges: g.edge_count(),
            result,
        });
    }

    let passed = instances.iter().all(|i| match &i.result {
        InstanceResult::Checked(o) => all_passed(o),
        InstanceResult::Skipped(_) => true,
    });
    let stdout = match args.format {
        Format::Json => render_json(&json!({
            "seed": args.seed,
            "instances": instances.iter().map(|i| {
                let mut v = json!({"name": i.name, "nodes": i.nodes, "edges": i.edges});
                match &i.result {
                    InstanceResult::Checked(outcomes) => {
                        v["status"] = json!("checked");
                        v["properties"] = outcomes.iter().map(|o| json!({
                            "name": o.name,
                            "pass": o.passed(),
                            "checks": o.checks,
                            "failures": o.failures,
                            "first_failure": o.first_failure,
                        })).collect();
                    }
                    InstanceResult::Skipped(why) => {
                        v["status"] = json!("skipped");
                        v["reason"] = json!(why);
                    }
                }
                v
            }).collect::<Vec<_>>(),
            "pass": passed,
        })),
        Format::Text => {
            let mut s = String::new();
            for i in &instances {
                let _ = writeln!(s, "instance {} (n={}, m={})", i.name, i.nodes, i.edges);
                match &i.result {
                    InstanceResult::Checked(outcomes) => {
                        for o in outcomes {
                            let verdict = if o.passed() { "pass" } else { "FAIL" };
                            let _ = write!(s, "  {}: {verdict} ({} checks", o.name, o.checks);
                            if o.failures > 0 {
                                let _ = write!(s, ", {} failures", o.failures);
                            }
                            s.push(')');
                            if let Some(f) = &o.first_failure {
                                let _ = write!(s, " first: {f}");
                            }
                            s.push('\n');
                        }
                    }
                    InstanceResult::Skipped(why) => {
                        let _ = writeln!(s, "  skipped: {why}");
                    }
                }
            }
            let _ = writeln!(s, "result: {}", if passed { "pass" } else { "FAIL" });
            s
        }
    };
    Outcome {
        code: if passed { EXIT_OK } else { EXIT_PROPERTY },
        stdout,
        stderr: String::new(),
    }
}
