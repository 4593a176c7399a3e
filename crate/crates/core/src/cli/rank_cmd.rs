use clap::{Args, Subcommand, ValueEnum};

use super::graph_cmd::read_graph;
use super::{fmt_float, Ctx, Failure, InputArg};
use crate::error::Error;
use crate::graph::Graph;
use crate::graph_stream::sparsify;
use crate::hashing::HashSeed;
use crate::pagerank::{
    self, pagerank_algebraic, pagerank_iterative, pagerank_random_walk, rank_order, ConvergenceCriterion, Norm,
    RankVector, TransitionModel, ALGEBRAIC_LIMIT, DEFAULT_BETA,
};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub(super) enum Method {
    Iterative,
    Algebraic,
    RandomWalk,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub(super) enum NormArg {
    L1,
    Linf,
}

#[derive(Debug, Args)]
pub(super) struct Convergence {
    /// Convergence threshold on successive iterates.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    #[arg(long, value_enum, default_value_t = NormArg::L1)]
    norm: NormArg,
}

impl Convergence {
    fn criterion(&self) -> Result<ConvergenceCriterion, Failure> {
        let norm = match self.norm {
            NormArg::L1 => Norm::L1,
            NormArg::Linf => Norm::LInf,
        };
        Ok(ConvergenceCriterion::new(norm, self.tol, self.max_iter)?)
    }
}

#[derive(Debug, Args)]
pub(super) struct PagerankArgs {
    /// Damping factor beta.
    #[arg(long, default_value_t = DEFAULT_BETA)]
    beta: f64,
    #[arg(long, value_enum, default_value_t = Method::Iterative)]
    method: Method,
    #[command(flatten)]
    conv: Convergence,
    /// Personalize on a single vertex.
    #[arg(long, conflicts_with = "personalization")]
    source: Option<usize>,
    /// File with one nonnegative weight per vertex, summing to 1.
    #[arg(long)]
    personalization: Option<std::path::PathBuf>,
    /// Treat each edge as undirected.
    #[arg(long)]
    undirected: bool,
    /// Exit with status 3 if the solver does not converge.
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Debug, Args)]
pub(super) struct SimrankArgs {
    /// Decay constant c in (0, 1).
    #[arg(long, default_value_t = 0.2)]
    decay: f64,
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Debug, Args)]
pub(super) struct HitsArgs {
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Debug, Subcommand)]
pub(super) enum CompareCommand {
    /// PageRank of an undirected graph against PageRank of its sparsifier.
    PagerankSparsified(CompareArgs),
}

#[derive(Debug, Args)]
pub(super) struct CompareArgs {
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_BETA)]
    beta: f64,
    #[command(flatten)]
    conv: Convergence,
    #[command(flatten)]
    input: InputArg,
}

fn personalization(a: &PagerankArgs, n: usize) -> Result<Option<Vec<f64>>, Failure> {
    if let Some(s) = a.source {
        if s >= n {
            return Err(Error::Domain {
                item: s as u64,
                domain: n as u64,
            }
            .into());
        }
        let mut p = vec![0.0; n];
        p[s] = 1.0;
        return Ok(Some(p));
    }
    let Some(path) = &a.personalization else {
        return Ok(None);
    };
    let text = std::fs::read_to_string(path).map_err(Error::Io)?;
    let p = text
        .split_whitespace()
        .map(|t| {
            t.parse::<f64>().map_err(|_| Error::Parse {
                line: 1,
                message: format!("personalization weight {t:?} is not a number"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Some(p))
}

fn print_ranking(ctx: &mut Ctx, scores: &[f64]) {
    for (rank, v) in rank_order(scores).into_iter().enumerate() {
        ctx.line(format!("{}\t{v}\t{}", rank + 1, fmt_float(scores[v])));
    }
}

pub(super) fn pagerank(a: &PagerankArgs, ctx: &mut Ctx) -> Result<(), Failure> {
    let g = read_graph(&a.input, !a.undirected)?;
    let model = TransitionModel::new(&g, a.beta, personalization(a, g.n())?)?;
    let crit = a.conv.criterion()?;
    let r = match a.method {
        Method::Algebraic => pagerank_algebraic(&model)?,
        Method::Iterative => pagerank_iterative(&model, &crit),
        Method::RandomWalk => pagerank_random_walk(&model, &crit, HashSeed(ctx.seed))?,
    };
    if !r.converged {
        let msg = format!("no convergence within {} iterations", r.iterations);
        if a.strict {
            return Err(Failure::NotConverged(msg));
        }
        ctx.warn(msg);
    }
    print_ranking(ctx, &r.scores);
    Ok(())
}

pub(super) fn simrank(a: &SimrankArgs, ctx: &mut Ctx) -> Result<(), Failure> {
    let g = read_graph(&a.input, true)?;
    let s = pagerank::simrank(&g, a.decay, a.max_iter, a.tol)?;
    if !s.converged {
        ctx.warn(format!("no convergence within {} iterations", s.iterations));
    }
    for u in 0..s.n {
        for v in u + 1..s.n {
            let x = s.get(u, v);
            if x != 0.0 {
                ctx.line(format!("{u}\t{v}\t{}", fmt_float(x)));
            }
        }
    }
    Ok(())
}

pub(super) fn hits(a: &HitsArgs, ctx: &mut Ctx) -> Result<(), Failure> {
    let g = read_graph(&a.input, true)?;
    let r = pagerank::hits(&g, a.tol, a.max_iter);
    if !r.converged {
        ctx.warn(format!("no convergence within {} iterations", r.iterations));
    }
    for v in 0..g.n() {
        ctx.line(format!("{v}\t{}\t{}", fmt_float(r.authority[v]), fmt_float(r.hub[v])));
    }
    Ok(())
}

/// Fraction of vertex pairs ordered differently by two rankings.
pub fn kendall_tau_distance(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len();
    if n < 2 {
        return 0.0;
    }
    let mut pos = vec![0usize; n];
    for (i, &v) in b.iter().enumerate() {
        pos[v] = i;
    }
    let mapped: Vec<usize> = a.iter().map(|&v| pos[v]).collect();
    let mut discordant = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if mapped[i] > mapped[j] {
                discordant += 1;
            }
        }
    }
    discordant as f64 / (n * (n - 1) / 2) as f64
}

fn exact_rank(g: &Graph, beta: f64, crit: &ConvergenceCriterion) -> Result<RankVector, Failure> {
    let model = TransitionModel::new(g, beta, None)?;
    if g.n() <= ALGEBRAIC_LIMIT {
        Ok(pagerank_algebraic(&model)?)
    } else {
        Ok(pagerank_iterative(&model, crit))
    }
}

pub(super) fn compare(cmd: &CompareCommand, ctx: &mut Ctx) -> Result<(), Failure> {
    let CompareCommand::PagerankSparsified(a) = cmd;
    let g = read_graph(&a.input, false)?;
    let crit = a.conv.criterion()?;
    let s = sparsify(&g, a.epsilon, a.lambda, HashSeed(ctx.seed))?;
    let pg = exact_rank(&g, a.beta, &crit)?;
    let ph = exact_rank(&s.graph, a.beta, &crit)?;
    let l1 = Norm::L1.distance(&pg.scores, &ph.scores);
    let linf = Norm::LInf.distance(&pg.scores, &ph.scores);
    let tau = kendall_tau_distance(&rank_order(&pg.scores), &rank_order(&ph.scores));
    ctx.line(format!("l1\t{}", fmt_float(l1)));
    ctx.line(format!("linf\t{}", fmt_float(linf)));
    ctx.line(format!("kendall_tau\t{}", fmt_float(tau)));
    Ok(())
}
