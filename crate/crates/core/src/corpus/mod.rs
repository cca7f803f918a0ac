//! Graph corpora: fixtures, exhaustive labeled enumeration, seeded sampling,
//! and the crosscheck harness that runs theorem checks over them.

pub mod checks;
pub mod crosscheck;
pub mod fixtures;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::format::to_graph6;
use crate::graph::Graph;

pub use crosscheck::{crosscheck, Check, CheckReport, CheckVerdict, CrosscheckReport, Disagreement, Generator};
pub use fixtures::{fixture, FixtureError, FixtureId};

/// Largest `n` accepted by the exhaustive enumeration.
pub const ENUMERATION_LIMIT: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("exhaustive enumeration is limited to n <= {limit}, got {n}")]
    TooLarge { n: usize, limit: usize },
}

/// Vertex pairs `(i, j)`, `i < j`, in the order of the enumeration bits.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

fn connected_masks(n: usize, adj: &[u64]) -> bool {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen & full == full
}

fn bipartite_masks(n: usize, adj: &[u64]) -> bool {
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let mut m = adj[u];
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    stack.push(w);
                } else if side[w] == side[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Connected labeled graphs on `n` vertices in ascending edge-bitmask order,
/// where bit `p` stands for the `p`-th pair `(i, j)`, `i < j`, in
/// lexicographic order.
pub struct ConnectedGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
    bipartite_only: bool,
}

impl ConnectedGraphs {
    pub fn bipartite_only(mut self) -> Self {
        self.bipartite_only = true;
        self
    }
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let mut adj = vec![0u64; self.n];
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            adj.iter_mut().for_each(|a| *a = 0);
            for (p, &(i, j)) in self.pairs.iter().enumerate() {
                if mask >> p & 1 == 1 {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
            if !connected_masks(self.n, &adj) || (self.bipartite_only && !bipartite_masks(self.n, &adj)) {
                continue;
            }
            let edges: Vec<(usize, usize)> = self
                .pairs
                .iter()
                .enumerate()
                .filter(|(p, _)| mask >> p & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            return Some(Graph::new(self.n, &edges).expect("enumerated graphs are simple"));
        }
        None
    }
}

/// All connected labeled graphs on `n` vertices (`n = 0` yields none).
pub fn enumerate_connected(n: usize) -> Result<ConnectedGraphs, CorpusError> {
    if n > ENUMERATION_LIMIT {
        return Err(CorpusError::TooLarge {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let pairs = pairs(n);
    Ok(ConnectedGraphs {
        n,
        end: if n == 0 { 0 } else { 1u64 << pairs.len() },
        pairs,
        next: 0,
        bipartite_only: false,
    })
}

/// Connected labeled bipartite graphs on `n` vertices.
pub fn enumerate_connected_bipartite(n: usize) -> Result<ConnectedGraphs, CorpusError> {
    Ok(enumerate_connected(n)?.bipartite_only())
}

/// `count` connected graphs on `n` vertices, each edge present with
/// probability 1/2, rejection-sampled. Identical seeds give identical output.
pub fn sample_connected(n: usize, count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = pairs(n);
    let mut out = Vec::with_capacity(count);
    if n == 0 {
        return out;
    }
    while out.len() < count {
        let edges: Vec<(usize, usize)> = pairs.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let g = Graph::new(n, &edges).expect("sampled graphs are simple");
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// FNV-1a digest of the graph6 encodings, one per line.
pub fn digest(graphs: &[Graph]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for g in graphs {
        for b in to_graph6(g).bytes().chain(std::iter::once(b'\n')) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}
