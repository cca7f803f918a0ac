//! Simple undirected graphs with an eager all-pairs distance matrix.
//!
//! Vertices are `0..n`. Every set-valued query returns vertices in ascending
//! order, and every "pick one" query breaks ties toward the smallest id.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Distance value stored for pairs in different components.
pub const UNREACHABLE: u32 = u32::MAX;

/// Largest graph for which the `u64` vertex-mask helpers are available.
pub const MASK_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("the ball center {0} is one of the removed vertices")]
    CenterRemoved(usize),
    #[error("the graph is not connected")]
    Disconnected,
    #[error("the vertex set is empty")]
    EmptySet,
}

/// A ball radius or a player speed. `Unbounded` compares greater than every
/// finite value and reaches the whole component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Radius {
    Finite(u32),
    Unbounded,
}

impl Radius {
    pub const ONE: Radius = Radius::Finite(1);

    /// True when a vertex at distance `d` lies inside the ball.
    #[inline]
    pub fn covers(self, d: u32) -> bool {
        match self {
            Radius::Finite(r) => d <= r,
            Radius::Unbounded => d != UNREACHABLE,
        }
    }

    /// Number of BFS layers to expand, `None` meaning "until exhausted".
    #[inline]
    pub fn layers(self) -> Option<u32> {
        match self {
            Radius::Finite(r) => Some(r),
            Radius::Unbounded => None,
        }
    }

    pub fn finite(self) -> Option<u32> {
        self.layers()
    }

    pub fn saturating_add(self, other: Radius) -> Radius {
        match (self, other) {
            (Radius::Finite(a), Radius::Finite(b)) => Radius::Finite(a.saturating_add(b)),
            _ => Radius::Unbounded,
        }
    }
}

impl From<u32> for Radius {
    fn from(r: u32) -> Self {
        Radius::Finite(r)
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Finite(r) => write!(f, "{r}"),
            Radius::Unbounded => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid speed {0:?}: expected a non-negative integer or \"inf\"")]
pub struct ParseRadiusError(pub String);

impl FromStr for Radius {
    type Err = ParseRadiusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Radius::Unbounded);
        }
        t.parse::<u32>()
            .map(Radius::Finite)
            .map_err(|_| ParseRadiusError(s.to_string()))
    }
}

impl Serialize for Radius {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Radius::Finite(r) => serializer.serialize_u32(*r),
            Radius::Unbounded => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Radius {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(r) => Ok(Radius::Finite(r)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Blocks (maximal 2-connected subgraphs or bridges) and cut vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCutTree {
    /// Vertex sets of the blocks, each sorted, listed in ascending order.
    pub blocks: Vec<Vec<usize>>,
    /// Articulation points in ascending order.
    pub articulations: Vec<usize>,
    /// For every vertex, the indices of the blocks containing it.
    pub membership: Vec<Vec<usize>>,
}

impl BlockCutTree {
    pub fn is_articulation(&self, v: usize) -> bool {
        self.membership[v].len() > 1
    }

    /// Blocks meeting the rest of the graph in at most one articulation point.
    pub fn leaf_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.blocks[b].iter().filter(|&&v| self.is_articulation(v)).count() <= 1)
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    dist: Vec<u32>,
    masks: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Edges are unordered pairs.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0];
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        let mut dist = vec![UNREACHABLE; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let du = row[u];
                for &w in &adj[u] {
                    if row[w] == UNREACHABLE {
                        row[w] = du + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        let masks = if n <= MASK_LIMIT {
            adj.iter()
                .map(|l| l.iter().fold(0u64, |m, &w| m | (1u64 << w)))
                .collect()
        } else {
            Vec::new()
        };
        Ok(Graph { n, adj, dist, masks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Raw distance, `UNREACHABLE` across components.
    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<u32> {
        let d = self.dist(u, v);
        (d != UNREACHABLE).then_some(d)
    }

    /// Largest distance, `None` for disconnected graphs.
    pub fn diameter(&self) -> Option<u32> {
        let d = self.dist.iter().copied().max().unwrap_or(0);
        (d != UNREACHABLE).then_some(d)
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::OutOfRange { vertex: v, n: self.n })
        }
    }

    /// `N_r[x]`: vertices at distance at most `r` from `x`.
    pub fn ball(&self, x: usize, r: Radius) -> Vec<usize> {
        (0..self.n).filter(|&v| r.covers(self.dist(x, v))).collect()
    }

    /// `N_r(x, G - y)`: the ball around `x` in the graph with `y` deleted.
    pub fn punctured_ball(&self, x: usize, r: Radius, y: usize) -> Result<Vec<usize>, GraphError> {
        self.check(x)?;
        self.check(y)?;
        if x == y {
            return Err(GraphError::CenterRemoved(x));
        }
        Ok(self.ball_avoiding(x, r, &[y]))
    }

    /// Ball around `x` in the graph with every vertex of `avoid` deleted.
    /// Empty when `x` itself is deleted.
    pub fn ball_avoiding(&self, x: usize, r: Radius, avoid: &[usize]) -> Vec<usize> {
        let mut keep = vec![true; self.n];
        for &a in avoid {
            keep[a] = false;
        }
        self.ball_within(x, r, &keep)
    }

    /// Ball around `x` in the subgraph induced by `{v : keep[v]}`.
    pub fn ball_within(&self, x: usize, r: Radius, keep: &[bool]) -> Vec<usize> {
        if !keep[x] {
            return Vec::new();
        }
        let mut seen = vec![false; self.n];
        seen[x] = true;
        let mut frontier = vec![x];
        let mut depth = 0u32;
        while !frontier.is_empty() && r.layers().is_none_or(|l| depth < l) {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.adj[u] {
                    if keep[w] && !seen[w] {
                        seen[w] = true;
                        next.push(w);
                    }
                }
            }
            frontier = next;
            depth += 1;
        }
        (0..self.n).filter(|&v| seen[v]).collect()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if done[s] {
                continue;
            }
            let comp: Vec<usize> = (0..self.n).filter(|&v| self.dist(s, v) != UNREACHABLE).collect();
            for &v in &comp {
                done[v] = true;
            }
            out.push(comp);
        }
        out
    }

    /// Components of the subgraph induced by `{v : keep[v]}`.
    pub fn components_within(&self, keep: &[bool]) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if done[s] || !keep[s] {
                continue;
            }
            let comp = self.ball_within(s, Radius::Unbounded, keep);
            for &v in &comp {
                done[v] = true;
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        (0..self.n).all(|v| self.dist(0, v) != UNREACHABLE)
    }

    pub fn require_connected(&self) -> Result<(), GraphError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    /// Two colour classes if the graph is bipartite. In every component the
    /// smallest vertex goes to the first class.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut colour = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[u];
                        queue.push_back(w);
                    } else if colour[w] == colour[u] {
                        return None;
                    }
                }
            }
        }
        let left = (0..self.n).filter(|&v| colour[v] == 0).collect();
        let right = (0..self.n).filter(|&v| colour[v] == 1).collect();
        Some((left, right))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Smallest `y` in `xs` adjacent or equal to every member of `xs`.
    pub fn dominating_vertex(&self, xs: &[usize]) -> Result<Option<usize>, GraphError> {
        if xs.is_empty() {
            return Err(GraphError::EmptySet);
        }
        for &x in xs {
            self.check(x)?;
        }
        let mut sorted = xs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        Ok(sorted
            .iter()
            .copied()
            .find(|&y| sorted.iter().all(|&v| v == y || self.has_edge(y, v))))
    }

    /// Block decomposition of a connected graph. A single vertex is one
    /// trivial block.
    pub fn blocks_and_articulations(&self) -> Result<BlockCutTree, GraphError> {
        self.require_connected()?;
        let n = self.n;
        if n == 1 {
            return Ok(BlockCutTree {
                blocks: vec![vec![0]],
                articulations: Vec::new(),
                membership: vec![vec![0]],
            });
        }
        // Iterative Hopcroft-Tarjan over an edge stack.
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut next_child = vec![0usize; n];
        let mut parent = vec![usize::MAX; n];
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut time = 0;
        disc[0] = 0;
        low[0] = 0;
        time += 1;
        let mut stack = vec![0usize];
        while let Some(&u) = stack.last() {
            if next_child[u] < self.adj[u].len() {
                let w = self.adj[u][next_child[u]];
                next_child[u] += 1;
                if disc[w] == usize::MAX {
                    parent[w] = u;
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((u, w));
                    stack.push(w);
                } else if w != parent[u] && disc[w] < disc[u] {
                    low[u] = low[u].min(disc[w]);
                    edge_stack.push((u, w));
                }
            } else {
                stack.pop();
                let p = parent[u];
                if p == usize::MAX {
                    continue;
                }
                low[p] = low[p].min(low[u]);
                if low[u] >= disc[p] {
                    let mut block = Vec::new();
                    while let Some((a, b)) = edge_stack.pop() {
                        block.push(a);
                        block.push(b);
                        if (a, b) == (p, u) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    blocks.push(block);
                }
            }
        }
        blocks.sort();
        let mut membership = vec![Vec::new(); n];
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                membership[v].push(i);
            }
        }
        let articulations = (0..n).filter(|&v| membership[v].len() > 1).collect();
        Ok(BlockCutTree {
            blocks,
            articulations,
            membership,
        })
    }

    /// True when the `u64` mask helpers may be used.
    pub fn fits_mask(&self) -> bool {
        self.n <= MASK_LIMIT
    }

    /// Open neighbourhood as a bit mask. Requires `fits_mask()`.
    #[inline]
    pub fn adj_mask(&self, v: usize) -> u64 {
        self.masks[v]
    }

    /// Mask of all vertices. Requires `fits_mask()`.
    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Ball around `x` inside the vertex mask `keep`, as a mask.
    pub fn ball_mask(&self, x: usize, r: Radius, keep: u64) -> u64 {
        if keep & (1u64 << x) == 0 {
            return 0;
        }
        let mut seen = 1u64 << x;
        let mut frontier = seen;
        let mut depth = 0u32;
        while frontier != 0 && r.layers().is_none_or(|l| depth < l) {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.masks[u];
            }
            next &= keep & !seen;
            seen |= next;
            frontier = next;
            depth += 1;
        }
        seen
    }

    /// Closed ball `N_r[x]` in the whole graph as a mask.
    pub fn dist_ball_mask(&self, x: usize, r: Radius) -> u64 {
        let row = &self.dist[x * self.n..(x + 1) * self.n];
        row.iter()
            .enumerate()
            .filter(|(_, &d)| r.covers(d))
            .fold(0u64, |m, (v, _)| m | (1u64 << v))
    }
}

/// Vertices of a mask in ascending order.
pub fn mask_to_vec(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

pub fn vec_to_mask(vs: &[usize]) -> u64 {
    vs.iter().fold(0u64, |m, &v| m | (1u64 << v))
}
