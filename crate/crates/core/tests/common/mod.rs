//! Shared helpers for integration tests: plain adjacency-list graphs with
//! naive BFS, and proptest strategies for random graphs.

#![allow(dead_code)]

use std::collections::VecDeque;

use copwin::graph::{Graph, Radius};
use proptest::prelude::*;

/// Naive adjacency lists built from the edge list only.
pub struct Plain {
    pub n: usize,
    pub adj: Vec<Vec<usize>>,
}

impl Plain {
    pub fn new(g: &Graph) -> Plain {
        let mut adj = vec![Vec::new(); g.n()];
        for (u, v) in g.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        Plain { n: g.n(), adj }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Vertices reachable from `x` in at most `r` steps (unbounded when
    /// `None`) using only vertices in `allowed` and never `avoid`.
    pub fn reach(&self, x: usize, r: Option<u32>, avoid: &[usize], allowed: &[bool]) -> Vec<bool> {
        let mut dist = vec![u32::MAX; self.n];
        let mut seen = vec![false; self.n];
        if avoid.contains(&x) || !allowed[x] {
            return seen;
        }
        dist[x] = 0;
        seen[x] = true;
        let mut q = VecDeque::from([x]);
        while let Some(u) = q.pop_front() {
            if r.is_some_and(|r| dist[u] >= r) {
                continue;
            }
            for &w in &self.adj[u] {
                if !seen[w] && allowed[w] && !avoid.contains(&w) {
                    seen[w] = true;
                    dist[w] = dist[u] + 1;
                    q.push_back(w);
                }
            }
        }
        seen
    }

    pub fn ball(&self, x: usize, r: Option<u32>) -> Vec<bool> {
        self.reach(x, r, &[], &vec![true; self.n])
    }

    pub fn dist(&self, x: usize) -> Vec<u32> {
        let mut d = vec![u32::MAX; self.n];
        d[x] = 0;
        let mut q = VecDeque::from([x]);
        while let Some(u) = q.pop_front() {
            for &w in &self.adj[u] {
                if d[w] == u32::MAX {
                    d[w] = d[u] + 1;
                    q.push_back(w);
                }
            }
        }
        d
    }
}

pub fn radius(r: Option<u32>) -> Radius {
    r.map_or(Radius::Unbounded, Radius::Finite)
}

pub fn slow() -> bool {
    std::env::var("COPWIN_SLOW").is_ok_and(|v| v == "1")
}

/// A connected graph on `n` vertices: a random spanning tree plus random
/// extra edges.
pub fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|v| (0..v).boxed()).collect();
            (
                Just(n),
                parents,
                proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2),
            )
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges = Vec::new();
            for (i, p) in parents.into_iter().enumerate() {
                edges.push((p, i + 1));
            }
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if extra[idx] && !edges.contains(&(u, v)) {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
}

/// Any simple graph on up to `max_n` vertices.
pub fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(proptest::bool::weighted(0.3), n * n.saturating_sub(1) / 2),
            )
        })
        .prop_map(|(n, bits)| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[idx] {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
}

/// A connected bipartite graph: random side assignment, a spanning tree
/// across sides, and random extra cross edges.
pub fn connected_bipartite(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(any::<bool>(), n * n),
            )
        })
        .prop_map(|(n, mut side, extra)| {
            side[0] = false;
            side[1] = true;
            let (a, b): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| !side[v]);
            let mut edges = Vec::new();
            for &v in &b {
                edges.push((a[0], v));
            }
            for &v in &a[1..] {
                edges.push((b[0], v));
            }
            for &u in &a {
                for &v in &b {
                    let e = (u.min(v), u.max(v));
                    if extra[u * n + v] && !edges.contains(&e) && !edges.contains(&(e.1, e.0)) {
                        edges.push(e);
                    }
                }
            }
            Graph::new(n, &edges).unwrap()
        })
}

/// Relabels `g` by `perm`: vertex `v` becomes `perm[v]`.
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::new(g.n(), &edges).unwrap()
}

pub fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    connected_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })
}

/// Every permutation of `0..n`, by Heap's algorithm.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}
