//! Graph model, edge-list ingestion and matrix views.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Largest vertex count for which matrix views are stored densely.
pub const DENSE_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Vertex count plus an edge multiset. Parallel edges and self-loops are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    directed: bool,
    weighted: bool,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(n: usize, directed: bool) -> Self {
        Graph {
            n,
            directed,
            weighted: false,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(n: usize, directed: bool, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::new(n, directed);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.push(u, v, 1.0)
    }

    pub fn add_weighted_edge(&mut self, u: usize, v: usize, w: f64) -> Result<()> {
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::Validation(format!("edge ({u}, {v}) has non-positive weight {w}")));
        }
        self.weighted |= w != 1.0;
        self.push(u, v, w)
    }

    fn push(&mut self, u: usize, v: usize, w: f64) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Validation(format!(
                "edge ({u}, {v}) out of range for n={}",
                self.n
            )));
        }
        self.edges.push(Edge { u, v, w });
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Same vertices and edges read the other way.
    pub fn as_undirected(&self) -> Graph {
        Graph {
            directed: false,
            ..self.clone()
        }
    }

    /// Neighbour sets of the underlying simple undirected graph: direction,
    /// multiplicity, weights and self-loops are dropped.
    pub fn simple_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            if e.u != e.v {
                adj[e.u].push(e.v);
                adj[e.v].push(e.u);
            }
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        adj
    }

    /// Out-neighbours with accumulated weight, in vertex order. Undirected
    /// edges appear in both endpoint rows (a self-loop once).
    pub fn weighted_out(&self) -> Vec<Vec<(usize, f64)>> {
        let mut rows: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); self.n];
        for e in &self.edges {
            *rows[e.u].entry(e.v).or_insert(0.0) += e.w;
            if !self.directed && e.u != e.v {
                *rows[e.v].entry(e.u).or_insert(0.0) += e.w;
            }
        }
        rows.into_iter().map(|r| r.into_iter().collect()).collect()
    }

    pub fn degrees(&self) -> DegreeVector {
        let mut out = vec![0usize; self.n];
        let mut inn = vec![0usize; self.n];
        for e in &self.edges {
            out[e.u] += 1;
            inn[e.v] += 1;
            if !self.directed && e.u != e.v {
                out[e.v] += 1;
                inn[e.u] += 1;
            }
        }
        DegreeVector {
            out,
            inn,
            directed: self.directed,
        }
    }

    /// Edge-list text: optional `# n=N` header, then `u v [w]` lines.
    pub fn to_edge_list(&self, header: bool) -> String {
        let mut s = String::new();
        if header {
            let _ = writeln!(s, "# n={}", self.n);
        }
        for e in &self.edges {
            if self.weighted {
                let _ = writeln!(s, "{} {} {}", e.u, e.v, e.w);
            } else {
                let _ = writeln!(s, "{} {}", e.u, e.v);
            }
        }
        s
    }
}

/// Parses edge-list text.
///
/// Blank lines and `#` lines are skipped, except a `# n=N` header on the
/// first line which fixes the vertex count. Otherwise `n = 1 + max id`.
pub fn parse_edge_list(text: &str, directed: bool) -> Result<Graph> {
    let mut declared_n = None;
    let mut edges = Vec::new();
    let mut any_weight = false;
    let mut max_id = None::<usize>;
    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let trimmed = line.trim_matches(|c| c == ' ' || c == '\t');
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if idx == 0 {
                if let Some(v) = comment.trim().strip_prefix("n=") {
                    let n = v.trim().parse::<usize>().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("bad vertex count header {trimmed:?}"),
                    })?;
                    declared_n = Some(n);
                }
            }
            continue;
        }
        let fields: Vec<&str> = trimmed.split([' ', '\t']).filter(|f| !f.is_empty()).collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `u v [w]`, got {} fields", fields.len()),
            });
        }
        let id = |f: &str| {
            f.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad vertex id {f:?}"),
            })
        };
        let (u, v) = (id(fields[0])?, id(fields[1])?);
        let w = match fields.get(2) {
            None => 1.0,
            Some(f) => {
                any_weight = true;
                let w = f.parse::<f64>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad weight {f:?}"),
                })?;
                if !(w > 0.0 && w.is_finite()) {
                    return Err(Error::Validation(format!(
                        "line {line_no}: edge weight must be positive, got {w}"
                    )));
                }
                w
            }
        };
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push(Edge { u, v, w });
    }
    let implied = max_id.map_or(0, |m| m + 1);
    let n = match declared_n {
        Some(n) if n < implied => {
            return Err(Error::Validation(format!(
                "header declares n={n} but vertex id {} appears",
                implied - 1
            )))
        }
        Some(n) => n,
        None => implied,
    };
    Ok(Graph {
        n,
        directed,
        weighted: any_weight,
        edges,
    })
}

pub fn load_edge_list(path: &Path, directed: bool) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?, directed)
}

/// In- and out-degrees; for undirected graphs both equal the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVector {
    pub out: Vec<usize>,
    pub inn: Vec<usize>,
    directed: bool,
}

impl DegreeVector {
    /// `d+ + d-` for directed graphs, the plain degree otherwise.
    pub fn total(&self, v: usize) -> usize {
        if self.directed {
            self.out[v] + self.inn[v]
        } else {
            self.out[v]
        }
    }
}

/// Square matrix stored densely up to [`DENSE_LIMIT`] rows, as compressed
/// rows beyond.
#[derive(Debug, Clone, PartialEq)]
pub enum Matrix {
    Dense { n: usize, data: Vec<f64> },
    Sparse { n: usize, row_ptr: Vec<usize>, cols: Vec<usize>, vals: Vec<f64> },
}

impl Matrix {
    fn from_rows(rows: Vec<Vec<(usize, f64)>>) -> Matrix {
        let n = rows.len();
        if n <= DENSE_LIMIT {
            let mut data = vec![0.0; n * n];
            for (i, row) in rows.iter().enumerate() {
                for &(j, x) in row {
                    data[i * n + j] += x;
                }
            }
            Matrix::Dense { n, data }
        } else {
            let mut row_ptr = Vec::with_capacity(n + 1);
            let mut cols = Vec::new();
            let mut vals = Vec::new();
            row_ptr.push(0);
            for row in rows {
                let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
                for (j, x) in row {
                    *acc.entry(j).or_insert(0.0) += x;
                }
                for (j, x) in acc.into_iter().filter(|&(_, x)| x != 0.0) {
                    cols.push(j);
                    vals.push(x);
                }
                row_ptr.push(cols.len());
            }
            Matrix::Sparse { n, row_ptr, cols, vals }
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Matrix::Dense { n, .. } | Matrix::Sparse { n, .. } => *n,
        }
    }

    pub fn is_dense(&self) -> bool {
        matches!(self, Matrix::Dense { .. })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match self {
            Matrix::Dense { n, data } => data[i * n + j],
            Matrix::Sparse { row_ptr, cols, vals, .. } => {
                let (lo, hi) = (row_ptr[i], row_ptr[i + 1]);
                cols[lo..hi]
                    .binary_search(&j)
                    .map_or(0.0, |k| vals[lo + k])
            }
        }
    }

    /// Nonzero entries of row `i` in column order.
    pub fn row(&self, i: usize) -> Vec<(usize, f64)> {
        match self {
            Matrix::Dense { n, data } => data[i * n..(i + 1) * n]
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0.0)
                .map(|(j, &x)| (j, x))
                .collect(),
            Matrix::Sparse { row_ptr, cols, vals, .. } => {
                let (lo, hi) = (row_ptr[i], row_ptr[i + 1]);
                cols[lo..hi].iter().copied().zip(vals[lo..hi].iter().copied()).collect()
            }
        }
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut r = vec![0.0; n];
                for (j, x) in self.row(i) {
                    r[j] = x;
                }
                r
            })
            .collect()
    }

    /// `x^T M x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        (0..self.n())
            .map(|i| x[i] * self.row(i).iter().map(|&(j, a)| a * x[j]).sum::<f64>())
            .sum()
    }
}

/// `A[i][j]` is the summed weight of edges `i -> j`; symmetric for
/// undirected graphs.
pub fn adjacency(g: &Graph) -> Matrix {
    Matrix::from_rows(g.weighted_out())
}

/// `L = D - A` with `D` the weighted degree.
pub fn laplacian(g: &Graph) -> Result<Matrix> {
    if g.is_directed() {
        return Err(Error::UnsupportedModel(
            "the combinatorial Laplacian is defined for undirected graphs".into(),
        ));
    }
    let rows = g
        .weighted_out()
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let d: f64 = row.iter().map(|&(_, w)| w).sum();
            let mut out: Vec<(usize, f64)> = row.into_iter().map(|(j, w)| (j, -w)).collect();
            out.push((i, d));
            out
        })
        .collect();
    Ok(Matrix::from_rows(rows))
}

/// Random-walk Laplacian `I - P` on non-isolated rows, with
/// `P[i][j] = A[i][j] / sum_k A[i][k]`. Rows of vertices without outgoing
/// weight are zero.
pub fn rw_laplacian(g: &Graph) -> Matrix {
    let rows = g
        .weighted_out()
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let d: f64 = row.iter().map(|&(_, w)| w).sum();
            if d == 0.0 {
                return Vec::new();
            }
            let mut out: Vec<(usize, f64)> = row.into_iter().map(|(j, w)| (j, -w / d)).collect();
            out.push((i, 1.0));
            out
        })
        .collect();
    Matrix::from_rows(rows)
}
