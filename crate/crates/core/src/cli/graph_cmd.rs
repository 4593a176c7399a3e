use clap::{Args, Subcommand};

use super::{fmt_float, Ctx, Failure, InputArg};
use crate::error::Error;
use crate::graph::{parse_edge_list, Graph};
use crate::graph_stream::{
    cc_sketch, clustering_coefficient, count_triangles_moments, spanner, sparsify, EdgeUpdate, MomentMode,
};
use crate::hashing::HashSeed;

#[derive(Debug, Subcommand)]
pub(super) enum GraphCommand {
    /// Greedy alpha-spanner of the edge stream, as an edge list.
    Spanner(SpannerArgs),
    /// Cut sparsifier, as a weighted edge list.
    Sparsify(SparsifyArgs),
    /// Connected components from per-vertex linear sketches.
    Cc(CcArgs),
    /// Triangle count from token-stream frequency moments.
    Triangles(TrianglesArgs),
    /// Mean local clustering coefficient.
    Clustering(GraphInput),
}

#[derive(Debug, Args)]
pub(super) struct GraphInput {
    #[command(flatten)]
    input: InputArg,
}

#[derive(Debug, Args)]
pub(super) struct SpannerArgs {
    /// Stretch bound.
    #[arg(long, default_value_t = 3.0)]
    alpha: f64,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Debug, Args)]
pub(super) struct SparsifyArgs {
    /// Target cut distortion, in (0, 1).
    #[arg(long)]
    epsilon: f64,
    /// Minimum cut value; computed exactly when omitted.
    #[arg(long)]
    lambda: Option<f64>,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Debug, Args)]
pub(super) struct CcArgs {
    /// Read lines as `u v [delta]` turnstile updates instead of edges.
    #[arg(long)]
    turnstile: bool,
    /// Vertex count when the input has no `# n=N` header.
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Debug, Args)]
pub(super) struct TrianglesArgs {
    /// Exact moment tables instead of sketches.
    #[arg(long)]
    exact: bool,
    #[command(flatten)]
    input: InputArg,
}

pub(super) fn read_graph(input: &InputArg, directed: bool) -> Result<Graph, Failure> {
    Ok(parse_edge_list(&input.read()?, directed)?)
}

/// `u v [delta]` lines with an optional `# n=N` first line.
fn parse_turnstile(text: &str) -> Result<(Option<usize>, Vec<EdgeUpdate>), Error> {
    let mut n = None;
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            if idx == 0 {
                if let Some(v) = c.trim().strip_prefix("n=") {
                    n = Some(v.trim().parse().map_err(|_| Error::Parse {
                        line: 1,
                        message: format!("bad vertex count header {line:?}"),
                    })?);
                }
            }
            continue;
        }
        let err = |message: String| Error::Parse { line: idx + 1, message };
        let f: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&f.len()) {
            return Err(err(format!("expected `u v [delta]`, got {} fields", f.len())));
        }
        let id = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad vertex id {s:?}")));
        let delta = match f.get(2) {
            None => 1,
            Some(d) => d
                .strip_prefix('+')
                .unwrap_or(d)
                .parse::<i64>()
                .map_err(|_| err(format!("bad delta {d:?}")))?,
        };
        out.push(EdgeUpdate {
            u: id(f[0])?,
            v: id(f[1])?,
            delta,
        });
    }
    Ok((n, out))
}

pub(super) fn run(cmd: &GraphCommand, ctx: &mut Ctx) -> Result<(), Failure> {
    let seed = HashSeed(ctx.seed);
    match cmd {
        GraphCommand::Spanner(a) => {
            let g = read_graph(&a.input, false)?;
            let h = spanner(&g, a.alpha)?;
            ctx.out.push_str(&h.to_edge_list(true));
        }
        GraphCommand::Sparsify(a) => {
            let g = read_graph(&a.input, false)?;
            let s = sparsify(&g, a.epsilon, a.lambda, seed)?;
            ctx.line(format!("# n={}", g.n()));
            ctx.line(format!("# sparsified p={}", fmt_float(s.p)));
            for e in s.graph.edges() {
                ctx.line(format!("{} {} {}", e.u, e.v, fmt_float(e.w)));
            }
        }
        GraphCommand::Cc(a) => {
            let (n, updates) = if a.turnstile {
                let (header, ups) = parse_turnstile(&a.input.read()?)?;
                let implied = ups.iter().map(|e| e.u.max(e.v) + 1).max().unwrap_or(0);
                (a.n.or(header).unwrap_or(implied), ups)
            } else {
                let g = read_graph(&a.input, false)?;
                let ups = g
                    .edges()
                    .iter()
                    .map(|e| EdgeUpdate { u: e.u, v: e.v, delta: 1 })
                    .collect();
                (a.n.unwrap_or(g.n()).max(g.n()), ups)
            };
            let c = cc_sketch(n, updates, seed)?;
            ctx.line(format!("components\t{}", c.count));
            for (v, l) in c.labels.iter().enumerate() {
                ctx.line(format!("{v}\t{l}"));
            }
        }
        GraphCommand::Triangles(a) => {
            let g = read_graph(&a.input, false)?;
            let mode = if a.exact {
                MomentMode::Exact
            } else {
                MomentMode::Estimated { seed }
            };
            ctx.line(fmt_float(count_triangles_moments(&g, mode)?));
        }
        GraphCommand::Clustering(a) => {
            let g = read_graph(&a.input, false)?;
            ctx.line(fmt_float(clustering_coefficient(&g)));
        }
    }
    Ok(())
}
