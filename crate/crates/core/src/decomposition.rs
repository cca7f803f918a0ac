//! Big brother and big two-brother decompositions.
//!
//! A decomposition lists pieces `G_1, ..., G_r` whose union is the graph.
//! `G_1` is the root; every later piece meets the union of the earlier ones
//! in its attachment set (`{x_i}` or the edge `{x_i, y_i}`) and is dominated
//! by its big brother `y_i`. Both recognisers peel pieces greedily off the
//! current graph; what is left when a dominating vertex appears is the root.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed decomposition: {0}")]
    Malformed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionKind {
    /// Pieces are blocks, each dominated by its attaching articulation point.
    BigBrother,
    /// Pieces attach along a vertex or an edge.
    BigTwoBrother,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    /// Sorted vertex sets, root first.
    pub pieces: Vec<Vec<usize>>,
    /// `y_i`: dominates piece `i`.
    pub big_brother: Vec<usize>,
    /// `x_i`: the other attachment vertex; `None` for the root.
    pub small_brother: Vec<Option<usize>>,
    /// Earlier piece containing the attachment set; `None` for the root.
    pub parent: Vec<Option<usize>>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Attachment set of piece `i`, empty for the root.
    pub fn attachment(&self, i: usize) -> Vec<usize> {
        match self.small_brother[i] {
            None => Vec::new(),
            Some(x) if x == self.big_brother[i] => vec![x],
            Some(x) => {
                let y = self.big_brother[i];
                vec![x.min(y), x.max(y)]
            }
        }
    }

    /// Pieces ordered root first, children after parents.
    pub fn children(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.parent[j] == Some(i)).collect()
    }

    /// Relabels as a two-brother decomposition; every big brother
    /// decomposition is also one.
    pub fn as_big_two_brother(&self) -> Decomposition {
        Decomposition {
            kind: DecompositionKind::BigTwoBrother,
            ..self.clone()
        }
    }
}

fn assemble(
    kind: DecompositionKind,
    root: (Vec<usize>, usize),
    peeled: Vec<(Vec<usize>, usize, usize)>,
) -> Decomposition {
    let mut pieces = vec![root.0];
    let mut big_brother = vec![root.1];
    let mut small_brother = vec![None];
    for (piece, x, y) in peeled.into_iter().rev() {
        pieces.push(piece);
        big_brother.push(y);
        small_brother.push(Some(x));
    }
    let mut d = Decomposition {
        kind,
        pieces,
        big_brother,
        small_brother,
        parent: Vec::new(),
    };
    d.parent = (0..d.len())
        .map(|i| {
            let att = d.attachment(i);
            if i == 0 {
                return None;
            }
            (0..i).find(|&j| att.iter().all(|v| d.pieces[j].binary_search(v).is_ok()))
        })
        .collect();
    d
}

/// Induced subgraph on `keep`, with the map back to original labels.
fn induced(g: &Graph, keep: &[bool]) -> (Graph, Vec<usize>) {
    let verts: Vec<usize> = (0..g.n()).filter(|&v| keep[v]).collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| keep[u] && keep[v])
        .map(|(u, v)| (index[u], index[v]))
        .collect();
    (
        Graph::new(verts.len(), &edges).expect("induced subgraph is simple"),
        verts,
    )
}

fn alive_vertices(keep: &[bool]) -> Vec<usize> {
    (0..keep.len()).filter(|&v| keep[v]).collect()
}

/// Big brother decomposition, or `None` when the graph has none.
pub fn big_brother(g: &Graph) -> Result<Option<Decomposition>, DecompositionError> {
    g.require_connected()?;
    let mut keep = vec![true; g.n()];
    let mut peeled = Vec::new();
    loop {
        let (sub, map) = induced(g, &keep);
        let tree = sub.blocks_and_articulations()?;
        let blocks: Vec<Vec<usize>> = tree
            .blocks
            .iter()
            .map(|b| b.iter().map(|&v| map[v]).collect())
            .collect();
        if blocks.len() == 1 {
            let y = g.dominating_vertex(&blocks[0])?;
            return Ok(y.map(|y| assemble(DecompositionKind::BigBrother, (blocks[0].clone(), y), peeled)));
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for b in tree.leaf_blocks() {
            let Some(&a) = tree.blocks[b].iter().find(|&&v| tree.is_articulation(v)) else {
                continue;
            };
            let a = map[a];
            let dominated = blocks[b].iter().all(|&v| v == a || g.has_edge(a, v));
            if !dominated {
                continue;
            }
            let low = *blocks[b].iter().find(|&&v| v != a).expect("blocks have two vertices");
            if best.is_none_or(|(l, _, _)| low < l) {
                best = Some((low, b, a));
            }
        }
        let Some((_, b, a)) = best else {
            return Ok(None);
        };
        for &v in &blocks[b] {
            if v != a {
                keep[v] = false;
            }
        }
        peeled.push((blocks[b].clone(), a, a));
    }
}

/// Big two-brother decomposition, or `None` when the graph has none.
///
/// Each step first peels the smallest vertex of degree one toward its
/// neighbour; otherwise it removes the component `C` of `G - {x, y}` with
/// `y` adjacent to all of `C`, minimising `(min C, y, x)`.
pub fn big_two_brother(g: &Graph) -> Result<Option<Decomposition>, DecompositionError> {
    g.require_connected()?;
    let n = g.n();
    let mut keep = vec![true; n];
    let mut peeled = Vec::new();
    loop {
        let alive = alive_vertices(&keep);
        if let Some(y) = g.dominating_vertex(&alive)? {
            return Ok(Some(assemble(DecompositionKind::BigTwoBrother, (alive, y), peeled)));
        }
        let live_neighbours = |v: usize| g.neighbors(v).iter().copied().filter(|&w| keep[w]).collect::<Vec<_>>();
        if let Some((z, w)) = alive.iter().find_map(|&z| match live_neighbours(z)[..] {
            [w] => Some((z, w)),
            _ => None,
        }) {
            keep[z] = false;
            peeled.push((sorted(vec![z, w]), w, w));
            continue;
        }
        let mut best: Option<((usize, usize, usize), Vec<usize>)> = None;
        for &y in &alive {
            let mut partners = vec![y];
            partners.extend(live_neighbours(y));
            for &x in &partners {
                let mut rest = keep.clone();
                rest[x] = false;
                rest[y] = false;
                for comp in g.components_within(&rest) {
                    if comp.iter().all(|&v| g.has_edge(y, v)) {
                        let key = (comp[0], y, x);
                        if best.as_ref().is_none_or(|(b, _)| key < *b) {
                            best = Some((key, comp));
                        }
                    }
                }
            }
        }
        let Some(((_, y, x), comp)) = best else {
            return Ok(None);
        };
        for &v in &comp {
            keep[v] = false;
        }
        let mut piece = comp;
        piece.push(x);
        piece.push(y);
        peeled.push((sorted(piece), x, y));
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Re-checks a decomposition against its definition.
///
/// Inconsistent shapes and out-of-range vertices are errors; a well-formed
/// decomposition that violates a condition yields `Ok(false)`.
#[allow(clippy::needless_range_loop)]
pub fn verify_decomposition(g: &Graph, d: &Decomposition) -> Result<bool, DecompositionError> {
    let n = g.n();
    let r = d.pieces.len();
    let malformed = |m: &str| Err(DecompositionError::Malformed(m.to_string()));
    if r == 0 || d.big_brother.len() != r || d.small_brother.len() != r || d.parent.len() != r {
        return malformed("pieces, brothers and parents must have equal nonzero length");
    }
    let out_of_range = d.pieces.iter().flatten().any(|&v| v >= n)
        || d.big_brother.iter().any(|&v| v >= n)
        || d.small_brother.iter().flatten().any(|&v| v >= n);
    if out_of_range {
        return malformed("vertex out of range");
    }
    if d.small_brother[0].is_some() || d.parent[0].is_some() {
        return malformed("the root has no small brother and no parent");
    }
    if (1..r).any(|i| d.small_brother[i].is_none() || d.parent[i].is_none()) {
        return malformed("every non-root piece needs a small brother and a parent");
    }
    if !g.is_connected() {
        return Ok(false);
    }
    let pieces: Vec<Vec<usize>> = d.pieces.iter().map(|p| sorted(p.clone())).collect();
    let contains = |i: usize, v: usize| pieces[i].binary_search(&v).is_ok();
    let mut covered = vec![false; n];
    for p in &pieces {
        for &v in p {
            covered[v] = true;
        }
    }
    if covered.iter().any(|&c| !c) {
        return Ok(false);
    }
    if !g
        .edges()
        .iter()
        .all(|&(u, v)| (0..r).any(|i| contains(i, u) && contains(i, v)))
    {
        return Ok(false);
    }
    let blocks = match d.kind {
        DecompositionKind::BigBrother => Some(g.blocks_and_articulations()?.blocks),
        DecompositionKind::BigTwoBrother => None,
    };
    let mut earlier = vec![false; n];
    for i in 0..r {
        let y = d.big_brother[i];
        if !contains(i, y) || !pieces[i].iter().all(|&v| v == y || g.has_edge(y, v)) {
            return Ok(false);
        }
        if let Some(blocks) = &blocks {
            if !blocks.contains(&pieces[i]) {
                return Ok(false);
            }
        }
        if i > 0 {
            let x = d.small_brother[i].expect("checked above");
            let p = d.parent[i].expect("checked above");
            let meet: Vec<usize> = pieces[i].iter().copied().filter(|&v| earlier[v]).collect();
            let attach_ok = match d.kind {
                DecompositionKind::BigBrother => x == y && meet == [y],
                DecompositionKind::BigTwoBrother => {
                    meet == [x] || (x != y && g.has_edge(x, y) && meet == sorted(vec![x, y]))
                }
            };
            if !attach_ok || p >= i || !meet.iter().all(|&v| contains(p, v)) {
                return Ok(false);
            }
            if meet.len() == pieces[i].len() {
                return Ok(false);
            }
        }
        for &v in &pieces[i] {
            earlier[v] = true;
        }
    }
    Ok(true)
}
