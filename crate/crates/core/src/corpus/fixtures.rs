//! Named example graphs with fixed vertex numbering.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}")]
    Unknown(String),
    #[error("invalid parameters for {0}")]
    Parameters(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixtureId {
    Sun3,
    Gk(usize),
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Star(usize),
    TwoTrianglesSharedEdge,
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureId::Sun3 => write!(f, "sun3"),
            FixtureId::Gk(k) => write!(f, "gk({k})"),
            FixtureId::Path(n) => write!(f, "path({n})"),
            FixtureId::Cycle(n) => write!(f, "cycle({n})"),
            FixtureId::Complete(n) => write!(f, "complete({n})"),
            FixtureId::CompleteBipartite(a, b) => write!(f, "complete_bipartite({a},{b})"),
            FixtureId::Star(n) => write!(f, "star({n})"),
            FixtureId::TwoTrianglesSharedEdge => write!(f, "two_triangles_shared_edge"),
        }
    }
}

impl FromStr for FixtureId {
    type Err = FixtureError;

    /// Accepts the `Display` form, e.g. `gk(2)` or `complete_bipartite(3,3)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (name, args) = match t.split_once('(') {
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| FixtureError::Unknown(s.to_string()))?;
                let args = inner
                    .split(',')
                    .map(|a| a.parse::<usize>().map_err(|_| FixtureError::Parameters(s.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                (name.to_string(), args)
            }
            None => (t, Vec::new()),
        };
        let bad = || FixtureError::Parameters(s.to_string());
        Ok(match (name.as_str(), args.as_slice()) {
            ("sun3", []) => FixtureId::Sun3,
            ("two_triangles_shared_edge", []) => FixtureId::TwoTrianglesSharedEdge,
            ("gk", [k]) => FixtureId::Gk(*k),
            ("path", [n]) => FixtureId::Path(*n),
            ("cycle", [n]) => FixtureId::Cycle(*n),
            ("complete", [n]) => FixtureId::Complete(*n),
            ("star", [n]) => FixtureId::Star(*n),
            ("complete_bipartite", [a, b]) => FixtureId::CompleteBipartite(*a, *b),
            (
                "sun3"
                | "two_triangles_shared_edge"
                | "gk"
                | "path"
                | "cycle"
                | "complete"
                | "star"
                | "complete_bipartite",
                _,
            ) => return Err(bad()),
            _ => return Err(FixtureError::Unknown(s.to_string())),
        })
    }
}

/// Builds a fixture, validating its parameters.
pub fn fixture(id: FixtureId) -> Result<Graph, FixtureError> {
    let bad = || FixtureError::Parameters(id.to_string());
    Ok(match id {
        FixtureId::Sun3 => sun3(),
        FixtureId::TwoTrianglesSharedEdge => two_triangles_shared_edge(),
        FixtureId::Gk(k) if k >= 1 => gk(k),
        FixtureId::Path(n) if n >= 1 => path(n),
        FixtureId::Cycle(n) if n >= 3 => cycle(n),
        FixtureId::Complete(n) if n >= 1 => complete(n),
        FixtureId::Star(n) => star(n),
        FixtureId::CompleteBipartite(a, b) if a >= 1 && b >= 1 => complete_bipartite(a, b),
        _ => return Err(bad()),
    })
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).expect("fixture edge lists are simple")
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &e)
}

/// Cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    e.push((0, n - 1));
    build(n, &e)
}

pub fn complete(n: usize) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    build(n, &e)
}

/// Sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut e = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            e.push((u, v));
        }
    }
    build(a + b, &e)
}

/// `K_{1,n}`: centre 0 and leaves `1..=n`.
pub fn star(n: usize) -> Graph {
    let e: Vec<_> = (1..=n).map(|i| (0, i)).collect();
    build(n + 1, &e)
}

/// Triangles `0 1 2` and `1 2 3` sharing the edge `1 2`.
pub fn two_triangles_shared_edge() -> Graph {
    build(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
}

/// The 3-sun: inner triangle `0 1 2`; corner 3 on edge `0 1`, corner 4 on
/// edge `1 2`, corner 5 on edge `2 0`.
pub fn sun3() -> Graph {
    build(
        6,
        &[(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 2), (5, 0)],
    )
}

/// Separation graph on `2k + 4` vertices: `x = 0`, `y = 1`, `u = 2`, `v = 3`,
/// `u_i = 3 + i` and `v_i = 3 + k + i` for `i = 1..=k`.
///
/// `x` is adjacent to everything but `v`, `y` to everything but `u`, and `x y`
/// is an edge. Consecutive levels of the ladder are completely joined:
/// `u_i, v_i` are both adjacent to `u_{i+1}, v_{i+1}`. Finally `u` is adjacent
/// to `u_1, v_1` and `v` to `u_k, v_k`.
pub fn gk(k: usize) -> Graph {
    assert!(k >= 1, "gk needs k >= 1");
    let n = 2 * k + 4;
    let (x, y, u, v) = (0, 1, 2, 3);
    let ui = |i: usize| 3 + i;
    let vi = |i: usize| 3 + k + i;
    let mut e = vec![(x, y)];
    for w in 2..n {
        if w != v {
            e.push((x, w));
        }
        if w != u {
            e.push((y, w));
        }
    }
    for i in 1..k {
        e.push((ui(i), ui(i + 1)));
        e.push((ui(i), vi(i + 1)));
        e.push((vi(i), vi(i + 1)));
        e.push((vi(i), ui(i + 1)));
    }
    e.extend([(u, ui(1)), (u, vi(1)), (v, ui(k)), (v, vi(k))]);
    build(n, &e)
}

/// Every fixture with small default parameters.
pub fn catalogue() -> Vec<(FixtureId, Graph)> {
    let ids = [
        FixtureId::Sun3,
        FixtureId::Gk(1),
        FixtureId::Gk(2),
        FixtureId::Gk(3),
        FixtureId::Path(5),
        FixtureId::Cycle(4),
        FixtureId::Cycle(5),
        FixtureId::Cycle(6),
        FixtureId::Complete(4),
        FixtureId::CompleteBipartite(3, 3),
        FixtureId::Star(3),
        FixtureId::TwoTrianglesSharedEdge,
    ];
    ids.iter()
        .map(|&id| (id, fixture(id).expect("valid defaults")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let s = sun3();
        assert_eq!((s.n(), s.edge_count()), (6, 9));
        for i in 0..3 {
            assert_eq!(s.degree(i), 4);
        }
        for k in 1..=4 {
            let g = gk(k);
            assert_eq!((g.n(), g.edge_count()), (2 * k + 4, 8 * k + 3));
        }
        assert_eq!(gk(2).edge_count(), 19);
    }

    #[test]
    fn gk_adjacency() {
        let g = gk(2);
        assert!(!g.has_edge(0, 3) && !g.has_edge(1, 2) && g.has_edge(0, 1));
        assert_eq!(g.neighbors(2), &[0, 4, 6]);
        assert_eq!(g.neighbors(3), &[1, 5, 7]);
    }

    #[test]
    fn parse_ids() {
        for (id, _) in catalogue() {
            assert_eq!(id.to_string().parse::<FixtureId>().unwrap(), id);
        }
        assert!("gk(0)".parse::<FixtureId>().map(fixture).unwrap().is_err());
        assert!("nope".parse::<FixtureId>().is_err());
        assert!("cycle(2)".parse::<FixtureId>().map(fixture).unwrap().is_err());
    }
}
