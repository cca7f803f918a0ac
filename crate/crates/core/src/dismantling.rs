//! Dismantling orders and their certificates.
//!
//! A certificate lists the vertices in elimination order `v_1, ..., v_n`
//! together with, for every vertex except the last one(s), an eliminator that
//! appears strictly later. `X_i` denotes the suffix `{v_i, ..., v_n}`.
//!
//! The polynomial recognisers (`ss_dismantle`, `ss_dismantle_local`,
//! `mno_order`) are greedy: any valid elimination can be taken first. The
//! bipartite and bidismantling recognisers backtrack over the remaining set.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Radius};

/// Largest graph accepted by the backtracking recognisers.
pub const BACKTRACK_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DismantleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("the graph is not bipartite")]
    NotBipartite,
    #[error("the search handles at most {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `(s, s')`-dismantling with balls taken in the whole graph.
    Ss,
    /// Maximum neighbourhood ordering.
    Mno,
    /// Bipartite dismantling ending on an edge.
    Bipartite,
    /// `k`-bidismantling.
    Bidismantle,
    /// Strong 2-bidismantling.
    StrongBidismantle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Params {
    None,
    Speeds { s: Radius, s_prime: Radius },
    Phase { k: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Eliminator {
    Pair { x: usize, y: usize },
    Single { y: usize },
}

impl Eliminator {
    /// The dominating member of the eliminator.
    pub fn y(&self) -> usize {
        match *self {
            Eliminator::Single { y } | Eliminator::Pair { y, .. } => y,
        }
    }

    /// The guarding member; equal to `y` for single eliminators.
    pub fn x(&self) -> usize {
        match *self {
            Eliminator::Single { y } => y,
            Eliminator::Pair { x, .. } => x,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub family: Family,
    pub params: Params,
    pub order: Vec<usize>,
    /// Aligned with `order`; `None` exactly for the trailing vertices.
    pub eliminators: Vec<Option<Eliminator>>,
}

impl Certificate {
    fn from_steps(family: Family, params: Params, steps: Vec<(usize, Eliminator)>, rest: Vec<usize>) -> Self {
        let mut order = Vec::with_capacity(steps.len() + rest.len());
        let mut eliminators = Vec::with_capacity(order.capacity());
        for (v, e) in steps {
            order.push(v);
            eliminators.push(Some(e));
        }
        for v in rest {
            order.push(v);
            eliminators.push(None);
        }
        Certificate {
            family,
            params,
            order,
            eliminators,
        }
    }

    /// Number of trailing vertices without an eliminator.
    pub fn tail_len(family: Family, n: usize) -> usize {
        match family {
            Family::Bipartite => n.min(2),
            _ => 1,
        }
    }
}

/// How the backtracking recognisers search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchMode {
    /// Complete search; a `None` result is a proof of non-membership.
    #[default]
    Exhaustive,
    /// First valid choice at every step; `None` proves nothing.
    GreedyOnly,
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

fn closed(g: &Graph, v: usize) -> u64 {
    g.adj_mask(v) | bit(v)
}

/// Runs a greedy elimination. `pick` returns the first valid `(v, elim)`.
fn greedy(g: &Graph, mut pick: impl FnMut(u64) -> Option<(usize, Eliminator)>) -> Option<Vec<(usize, Eliminator)>> {
    let mut x = g.full_mask();
    let mut steps = Vec::with_capacity(g.n());
    while x.count_ones() > 1 {
        let (v, e) = pick(x)?;
        steps.push((v, e));
        x &= !bit(v);
    }
    Some(steps)
}

fn remaining(x: u64) -> Vec<usize> {
    crate::graph::mask_to_vec(x)
}

fn require_mask_size(g: &Graph) -> Result<(), DismantleError> {
    if !g.fits_mask() {
        return Err(DismantleError::TooLarge {
            n: g.n(),
            limit: crate::graph::MASK_LIMIT,
        });
    }
    Ok(())
}

/// Greedy `(s, s')`-dismantling: repeatedly removes the smallest `v` that has
/// some `u` with `N_s(v, G - u) ∩ X ⊆ N_{s'}[u]`, taking the smallest `u`.
pub fn ss_dismantle(g: &Graph, s: Radius, s_prime: Radius) -> Result<Option<Certificate>, DismantleError> {
    g.require_connected()?;
    require_mask_size(g)?;
    let n = g.n();
    let full = g.full_mask();
    let cop_balls: Vec<u64> = (0..n).map(|u| g.dist_ball_mask(u, s_prime)).collect();
    let steps = greedy(g, |x| {
        for v in remaining(x) {
            for u in remaining(x & !bit(v)) {
                if g.ball_mask(v, s, full & !bit(u)) & x & !cop_balls[u] == 0 {
                    return Some((v, Eliminator::Single { y: u }));
                }
            }
        }
        None
    });
    Ok(steps.map(|steps| {
        let rest = remaining(steps.iter().fold(full, |m, (v, _)| m & !bit(*v)));
        Certificate::from_steps(Family::Ss, Params::Speeds { s, s_prime }, steps, rest)
    }))
}

/// Greedy `(s, 1)`-dismantling with every ball taken inside the current
/// induced subgraph: `N_s(v, G_i - u) ⊆ N_1[u] ∩ X_i`.
pub fn ss_dismantle_local(g: &Graph, s: Radius) -> Result<Option<Certificate>, DismantleError> {
    g.require_connected()?;
    require_mask_size(g)?;
    let full = g.full_mask();
    let steps = greedy(g, |x| {
        for v in remaining(x) {
            for u in remaining(x & !bit(v)) {
                if g.ball_mask(v, s, x & !bit(u)) & !closed(g, u) == 0 {
                    return Some((v, Eliminator::Single { y: u }));
                }
            }
        }
        None
    });
    Ok(steps.map(|steps| {
        let rest = remaining(steps.iter().fold(full, |m, (v, _)| m & !bit(*v)));
        Certificate::from_steps(
            Family::Ss,
            Params::Speeds {
                s,
                s_prime: Radius::ONE,
            },
            steps,
            rest,
        )
    }))
}

fn mno_ok(g: &Graph, x: u64, v: usize, u: usize) -> bool {
    let cu = closed(g, u) & x;
    if g.adj_mask(v) & x & bit(u) == 0 {
        return false;
    }
    remaining(closed(g, v) & x)
        .into_iter()
        .all(|w| closed(g, w) & x & !cu == 0)
}

/// Greedy maximum neighbourhood ordering: `v_i` needs a neighbour `u` in
/// `G_i` whose closed neighbourhood contains that of every `w ∈ N_1[v_i]`.
pub fn mno_order(g: &Graph) -> Result<Option<Certificate>, DismantleError> {
    g.require_connected()?;
    require_mask_size(g)?;
    let full = g.full_mask();
    let steps = greedy(g, |x| {
        for v in remaining(x) {
            for u in remaining(g.adj_mask(v) & x) {
                if mno_ok(g, x, v, u) {
                    return Some((v, Eliminator::Single { y: u }));
                }
            }
        }
        None
    });
    Ok(steps.map(|steps| {
        let rest = remaining(steps.iter().fold(full, |m, (v, _)| m & !bit(*v)));
        Certificate::from_steps(Family::Mno, Params::None, steps, rest)
    }))
}

/// Depth-first search over remaining sets with a failure memo.
struct Backtrack<'a, F> {
    candidates: F,
    done: &'a dyn Fn(u64) -> bool,
    failed: HashSet<u64>,
    mode: SearchMode,
    path: Vec<(usize, Eliminator)>,
}

impl<F: FnMut(u64) -> Vec<(usize, Eliminator)>> Backtrack<'_, F> {
    fn run(&mut self, x: u64) -> bool {
        if (self.done)(x) {
            return true;
        }
        if self.failed.contains(&x) {
            return false;
        }
        let options = (self.candidates)(x);
        for (v, e) in options {
            self.path.push((v, e));
            if self.run(x & !bit(v)) {
                return true;
            }
            self.path.pop();
            if self.mode == SearchMode::GreedyOnly {
                break;
            }
        }
        self.failed.insert(x);
        false
    }
}

fn backtrack(
    g: &Graph,
    mode: SearchMode,
    done: &dyn Fn(u64) -> bool,
    candidates: impl FnMut(u64) -> Vec<(usize, Eliminator)>,
) -> Option<(Vec<(usize, Eliminator)>, u64)> {
    let mut search = Backtrack {
        candidates,
        done,
        failed: HashSet::new(),
        mode,
        path: Vec::new(),
    };
    let full = g.full_mask();
    if search.run(full) {
        let rest = search.path.iter().fold(full, |m, (v, _)| m & !bit(*v));
        Some((search.path, rest))
    } else {
        None
    }
}

fn require_small(g: &Graph) -> Result<(), DismantleError> {
    if g.n() > BACKTRACK_LIMIT {
        return Err(DismantleError::TooLarge {
            n: g.n(),
            limit: BACKTRACK_LIMIT,
        });
    }
    Ok(())
}

pub fn bipartite_dismantle(g: &Graph) -> Result<Option<Certificate>, DismantleError> {
    bipartite_dismantle_with(g, SearchMode::Exhaustive)
}

/// Bipartite dismantling: the last two vertices are adjacent and every
/// earlier `v_i` has a later non-neighbour `y` with `N(v_i, G_i) ⊆ N_1[y]`.
pub fn bipartite_dismantle_with(g: &Graph, mode: SearchMode) -> Result<Option<Certificate>, DismantleError> {
    g.require_connected()?;
    if !g.is_bipartite() {
        return Err(DismantleError::NotBipartite);
    }
    require_small(g)?;
    let done = |x: u64| match x.count_ones() {
        0 | 1 => true,
        2 => {
            let a = x.trailing_zeros() as usize;
            g.adj_mask(a) & x != 0
        }
        _ => false,
    };
    let found = backtrack(g, mode, &done, |x| {
        if x.count_ones() <= 2 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for v in remaining(x) {
            let open = g.adj_mask(v) & x;
            for y in remaining(x & !bit(v) & !g.adj_mask(v)) {
                if open & !closed(g, y) == 0 {
                    out.push((v, Eliminator::Single { y }));
                }
            }
        }
        out
    });
    Ok(found.map(|(steps, rest)| Certificate::from_steps(Family::Bipartite, Params::None, steps, remaining(rest))))
}

fn bi_ok(g: &Graph, x_set: u64, k: u32, v: usize, x: usize, y: usize) -> bool {
    let keep = g.full_mask() & !bit(x) & !bit(y);
    g.ball_mask(v, Radius::Finite(k), keep) & x_set & !closed(g, y) == 0
}

fn strong_ok(g: &Graph, x_set: u64, v: usize, x: usize, y: usize) -> bool {
    if x == y {
        return true;
    }
    let keep = g.full_mask() & !bit(y);
    let two = Radius::Finite(2);
    g.ball_mask(v, two, keep) & x_set & !g.ball_mask(x, two, keep) == 0
}

fn bi_candidates(g: &Graph, x_set: u64, k: u32, strong: bool) -> Vec<(usize, Eliminator)> {
    let mut out = Vec::new();
    for v in remaining(x_set) {
        let later = x_set & !bit(v);
        for y in remaining(later) {
            for x in remaining(later & (g.adj_mask(y) | bit(y))) {
                if bi_ok(g, x_set, k, v, x, y) && (!strong || strong_ok(g, x_set, v, x, y)) {
                    let e = if x == y {
                        Eliminator::Single { y }
                    } else {
                        Eliminator::Pair { x, y }
                    };
                    out.push((v, e));
                }
            }
        }
    }
    out
}

pub fn bidismantle(g: &Graph, k: u32) -> Result<Option<Certificate>, DismantleError> {
    bidismantle_with(g, k, SearchMode::Exhaustive)
}

/// `k`-bidismantling: every `v_i` but the last has later vertices `x, y`,
/// equal or adjacent, with `N_k(v_i, G - {x, y}) ∩ X_i ⊆ N_1[y]`.
pub fn bidismantle_with(g: &Graph, k: u32, mode: SearchMode) -> Result<Option<Certificate>, DismantleError> {
    g.require_connected()?;
    require_small(g)?;
    let done = |x: u64| x.count_ones() <= 1;
    let found = backtrack(g, mode, &done, |x| bi_candidates(g, x, k, false));
    Ok(found
        .map(|(steps, rest)| Certificate::from_steps(Family::Bidismantle, Params::Phase { k }, steps, remaining(rest))))
}

pub fn strong_bidismantle(g: &Graph) -> Result<Option<Certificate>, DismantleError> {
    strong_bidismantle_with(g, SearchMode::Exhaustive)
}

/// 2-bidismantling where additionally `x = y` or
/// `N_2(v_i, G - y) ∩ X_i ⊆ N_2(x, G - y)`.
pub fn strong_bidismantle_with(g: &Graph, mode: SearchMode) -> Result<Option<Certificate>, DismantleError> {
    g.require_connected()?;
    require_small(g)?;
    let done = |x: u64| x.count_ones() <= 1;
    let found = backtrack(g, mode, &done, |x| bi_candidates(g, x, 2, true));
    Ok(found.map(|(steps, rest)| {
        Certificate::from_steps(
            Family::StrongBidismantle,
            Params::Phase { k: 2 },
            steps,
            remaining(rest),
        )
    }))
}

/// Re-checks a certificate from scratch with plain set operations.
///
/// Structural defects (wrong lengths, not a permutation, missing or
/// superfluous eliminators, mismatched parameters) are errors. A well-formed
/// certificate whose conditions fail, including an eliminator that does not
/// come later, yields `Ok(false)`.
pub fn verify_certificate(g: &Graph, cert: &Certificate) -> Result<bool, DismantleError> {
    let n = g.n();
    let malformed = |m: &str| Err(DismantleError::Malformed(m.to_string()));
    if cert.order.len() != n || cert.eliminators.len() != n {
        return malformed("order and eliminators must list every vertex once");
    }
    let mut position = vec![usize::MAX; n];
    for (i, &v) in cert.order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return malformed("order is not a permutation of the vertices");
        }
        position[v] = i;
    }
    let tail = Certificate::tail_len(cert.family, n);
    for (i, e) in cert.eliminators.iter().enumerate() {
        let needed = i + tail < n;
        match e {
            None if needed => return malformed("missing eliminator"),
            Some(_) if !needed => return malformed("trailing vertices take no eliminator"),
            Some(e) if e.x() >= n || e.y() >= n => return malformed("eliminator out of range"),
            _ => {}
        }
    }
    let params_ok = matches!(
        (cert.family, cert.params),
        (Family::Ss, Params::Speeds { .. })
            | (Family::Mno, Params::None)
            | (Family::Bipartite, Params::None)
            | (Family::Bidismantle, Params::Phase { .. })
            | (Family::StrongBidismantle, Params::Phase { k: 2 })
    );
    if !params_ok {
        return malformed("parameters do not match the family");
    }
    if !g.is_connected() {
        return Ok(false);
    }
    if cert.family == Family::Bipartite {
        if !g.is_bipartite() {
            return Ok(false);
        }
        if n >= 2 {
            let (a, b) = (cert.order[n - 2], cert.order[n - 1]);
            if !g.has_edge(a, b) {
                return Ok(false);
            }
        }
    }
    let mut in_x = vec![true; n];
    for (i, (&v, e)) in cert.order.iter().zip(&cert.eliminators).enumerate() {
        let Some(e) = e else { break };
        let (x, y) = (e.x(), e.y());
        if position[x] <= i || position[y] <= i {
            return Ok(false);
        }
        let members = |set: &[usize]| set.iter().copied().filter(|&w| in_x[w]).collect::<Vec<_>>();
        let within = |w: usize, set: &[usize]| set.binary_search(&w).is_ok();
        let ok = match (cert.family, cert.params) {
            (Family::Ss, Params::Speeds { s, s_prime }) => {
                let cop = g.ball(y, s_prime);
                members(&g.ball_avoiding(v, s, &[y])).iter().all(|&w| within(w, &cop))
            }
            (Family::Mno, _) => {
                let local = |w: usize| -> Vec<usize> { members(&g.ball(w, Radius::ONE)) };
                let nu = local(y);
                g.has_edge(v, y) && local(v).iter().all(|&w| local(w).iter().all(|&z| within(z, &nu)))
            }
            (Family::Bipartite, _) => {
                let ny = g.ball(y, Radius::ONE);
                !g.has_edge(v, y) && members(g.neighbors(v)).iter().all(|&w| within(w, &ny))
            }
            (Family::Bidismantle, Params::Phase { k }) | (Family::StrongBidismantle, Params::Phase { k }) => {
                let pair_ok = x == y || g.has_edge(x, y);
                let ny = g.ball(y, Radius::ONE);
                let dominated = members(&g.ball_avoiding(v, Radius::Finite(k), &[x, y]))
                    .iter()
                    .all(|&w| within(w, &ny));
                let strong = cert.family != Family::StrongBidismantle || x == y || {
                    let two = Radius::Finite(2);
                    let from_x = g.ball_avoiding(x, two, &[y]);
                    members(&g.ball_avoiding(v, two, &[y]))
                        .iter()
                        .all(|&w| within(w, &from_x))
                };
                pair_ok && dominated && strong
            }
            _ => unreachable!("parameters were checked above"),
        };
        if !ok {
            return Ok(false);
        }
        in_x[v] = false;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures;

    fn ok(g: &Graph, c: &Option<Certificate>) -> bool {
        c.as_ref().is_some_and(|c| verify_certificate(g, c).unwrap())
    }

    #[test]
    fn complete_graph_is_dismantlable_in_vertex_order() {
        let g = fixtures::complete(4);
        let c = ss_dismantle(&g, Radius::ONE, Radius::ONE).unwrap().unwrap();
        assert_eq!(c.order, vec![0, 1, 2, 3]);
        assert_eq!(c.eliminators[0], Some(Eliminator::Single { y: 1 }));
        assert_eq!(c.eliminators[3], None);
        assert!(verify_certificate(&g, &c).unwrap());
    }

    #[test]
    fn reversed_order_with_stale_eliminators_is_rejected() {
        let g = fixtures::complete(4);
        let mut c = ss_dismantle(&g, Radius::ONE, Radius::ONE).unwrap().unwrap();
        c.order.reverse();
        assert!(!verify_certificate(&g, &c).unwrap());
    }

    #[test]
    fn c4_is_not_dismantlable() {
        let g = fixtures::cycle(4);
        assert_eq!(ss_dismantle(&g, Radius::ONE, Radius::ONE).unwrap(), None);
        assert_eq!(mno_order(&g).unwrap(), None);
    }

    #[test]
    fn star_is_not_dismantlable_against_a_fast_robber() {
        let g = fixtures::sun3();
        assert!(ok(&g, &ss_dismantle(&g, Radius::ONE, Radius::ONE).unwrap()));
        assert_eq!(ss_dismantle(&g, Radius::Finite(2), Radius::ONE).unwrap(), None);
        assert_eq!(mno_order(&g).unwrap(), None);
    }

    #[test]
    fn bipartite_examples() {
        let k33 = fixtures::complete_bipartite(3, 3);
        assert!(ok(&k33, &bipartite_dismantle(&k33).unwrap()));
        let p4 = fixtures::path(4);
        assert!(ok(&p4, &bipartite_dismantle(&p4).unwrap()));
        assert_eq!(bipartite_dismantle(&fixtures::cycle(6)).unwrap(), None);
        assert_eq!(
            bipartite_dismantle(&fixtures::cycle(5)),
            Err(DismantleError::NotBipartite)
        );
    }

    #[test]
    fn bidismantling_examples() {
        let c5 = fixtures::cycle(5);
        assert_eq!(bidismantle(&c5, 2).unwrap(), None);
        assert_eq!(strong_bidismantle(&c5).unwrap(), None);
        let sun = fixtures::sun3();
        assert!(ok(&sun, &bidismantle(&sun, 2).unwrap()));
    }

    #[test]
    fn single_vertex_certificates() {
        let g = Graph::new(1, &[]).unwrap();
        for c in [
            ss_dismantle(&g, Radius::ONE, Radius::ONE).unwrap(),
            mno_order(&g).unwrap(),
            bipartite_dismantle(&g).unwrap(),
            bidismantle(&g, 3).unwrap(),
        ] {
            assert!(ok(&g, &c));
        }
    }

    #[test]
    fn malformed_certificates_are_errors() {
        let g = fixtures::path(3);
        let mut c = ss_dismantle(&g, Radius::ONE, Radius::ONE).unwrap().unwrap();
        c.order[0] = c.order[1];
        assert!(matches!(verify_certificate(&g, &c), Err(DismantleError::Malformed(_))));
        let mut c = mno_order(&g).unwrap().unwrap();
        c.params = Params::Phase { k: 2 };
        assert!(verify_certificate(&g, &c).is_err());
    }

    #[test]
    fn certificate_json_round_trip() {
        let g = fixtures::sun3();
        let c = bidismantle(&g, 2).unwrap().unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
}
