use crate::error::{Error, Result};
use crate::hashing::HashSeed;
use crate::samplers::L0Sampler;

/// One turnstile edge event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeUpdate {
    pub u: usize,
    pub v: usize,
    pub delta: i64,
}

/// Component count and a labelling where each vertex carries the smallest
/// vertex id of its component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    pub labels: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Smaller id becomes the root so labels are canonical.
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    fn components(mut self) -> Components {
        let n = self.parent.len();
        let labels: Vec<usize> = (0..n).map(|v| self.find(v)).collect();
        let count = (0..n).filter(|&v| labels[v] == v).count();
        Components { count, labels }
    }
}

/// Exact components of `n` vertices under a set of undirected edges.
pub fn connected_components(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Components {
    let mut dsu = Dsu::new(n);
    for (u, v) in edges {
        dsu.union(u, v);
    }
    dsu.components()
}

/// `max(1, ceil(log2 n))`.
pub fn cc_sketch_rounds(n: usize) -> usize {
    (usize::BITS - n.saturating_sub(1).leading_zeros()).max(1) as usize
}

/// Connected components of the net graph of a turnstile edge stream using
/// only per-vertex linear sketches.
///
/// Edge `{u, v}` with `u < v` is coordinate `u*n + v` of the incidence
/// vector; vertex `u` records `+delta` there and `v` records `-delta`, so
/// summing the sketches of a vertex set cancels its internal edges. Each
/// Boruvka round uses its own independent set of samplers.
pub fn cc_sketch(n: usize, stream: impl IntoIterator<Item = EdgeUpdate>, seed: HashSeed) -> Result<Components> {
    if n == 0 {
        return Ok(Components {
            count: 0,
            labels: Vec::new(),
        });
    }
    let domain = (n as u64).checked_mul(n as u64).ok_or_else(|| {
        Error::InvalidArgument(format!("vertex count {n} too large for the edge encoding"))
    })?;
    let rounds = cc_sketch_rounds(n);
    let mut sketches: Vec<Vec<L0Sampler>> = (0..rounds as u64)
        .map(|r| {
            let s = L0Sampler::new(domain, seed.derive(r))?;
            Ok(vec![s; n])
        })
        .collect::<Result<_>>()?;

    for EdgeUpdate { u, v, delta } in stream {
        if u >= n || v >= n {
            return Err(Error::Validation(format!("edge ({u}, {v}) out of range for n={n}")));
        }
        if u == v || delta == 0 {
            continue;
        }
        let (lo, hi) = (u.min(v), u.max(v));
        let idx = (lo * n + hi) as u64;
        for round in &mut sketches {
            round[lo].update(idx, delta)?;
            round[hi].update(idx, -delta)?;
        }
    }

    let mut dsu = Dsu::new(n);
    for round in &sketches {
        let mut merged: Vec<Option<L0Sampler>> = vec![None; n];
        for (v, s) in round.iter().enumerate() {
            let root = dsu.find(v);
            match &mut merged[root] {
                Some(acc) => acc.merge(s)?,
                slot @ None => *slot = Some(s.clone()),
            }
        }
        if merged.iter().flatten().all(L0Sampler::is_zero) {
            break;
        }
        let picked: Vec<(usize, usize)> = merged
            .iter()
            .flatten()
            .filter_map(|s| s.sample())
            .map(|o| ((o.item / n as u64) as usize, (o.item % n as u64) as usize))
            .collect();
        for (a, b) in picked {
            dsu.union(a, b);
        }
    }
    Ok(dsu.components())
}
