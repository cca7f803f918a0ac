//! Gromov hyperbolicity through the four-point condition.
//!
//! All quantities are kept doubled so they stay integral: for a quadruple the
//! three pair sums are `S1 >= S2 >= S3`, `2ξ = S1 - S2` and `2η = S1 - S3`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dismantling::{ss_dismantle, Certificate, DismantleError};
use crate::graph::{Graph, GraphError, Radius};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperbolicityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Dismantle(#[from] DismantleError),
    #[error("radius {r} is below twice the hyperbolicity ({two_delta})")]
    RadiusTooSmall { r: u32, two_delta: u32 },
    #[error("radius must be at least 1")]
    ZeroRadius,
}

/// The three pair sums of a quadruple, in descending order, plus the
/// doubled four-point quantities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourPoint {
    pub sums: [u32; 3],
    pub two_xi: u32,
    pub two_eta: u32,
}

pub fn four_point(g: &Graph, u: usize, v: usize, x: usize, y: usize) -> Result<FourPoint, GraphError> {
    let d = |a: usize, b: usize| g.distance(a, b).ok_or(GraphError::Disconnected);
    let mut sums = [d(u, v)? + d(x, y)?, d(u, x)? + d(v, y)?, d(u, y)? + d(v, x)?];
    sums.sort_unstable_by(|a, b| b.cmp(a));
    Ok(FourPoint {
        sums,
        two_xi: sums[0] - sums[1],
        two_eta: sums[0] - sums[2],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperbolicity {
    /// `2δ`, the largest `2ξ` over all quadruples.
    pub two_delta: u32,
    /// Lexicographically smallest quadruple attaining `two_delta`.
    pub witness: [usize; 4],
}

/// Exact hyperbolicity by scanning all quadruples.
pub fn hyperbolicity(g: &Graph) -> Result<Hyperbolicity, GraphError> {
    g.require_connected()?;
    let n = g.n();
    let mut best = Hyperbolicity {
        two_delta: 0,
        witness: [0; 4],
    };
    // The quantity is symmetric, so sorted quadruples suffice and the first
    // maximiser found in this order is the lexicographically smallest one.
    for u in 0..n {
        for v in u..n {
            let duv = g.dist(u, v);
            for x in v..n {
                let (dux, dvx) = (g.dist(u, x), g.dist(v, x));
                for y in x..n {
                    let mut s = [duv + g.dist(x, y), dux + g.dist(v, y), g.dist(u, y) + dvx];
                    s.sort_unstable();
                    let two_xi = s[2] - s[1];
                    if two_xi > best.two_delta {
                        best = Hyperbolicity {
                            two_delta: two_xi,
                            witness: [u, v, x, y],
                        };
                    }
                }
            }
        }
    }
    Ok(best)
}

/// Dismantling for robber speed `2r` and cop speed `r + 2δ`, which exists
/// whenever `r >= 2δ`.
pub fn check_hyperbolic_dismantling(g: &Graph, r: u32) -> Result<Option<Certificate>, HyperbolicityError> {
    if r == 0 {
        return Err(HyperbolicityError::ZeroRadius);
    }
    let h = hyperbolicity(g)?;
    if r < h.two_delta {
        return Err(HyperbolicityError::RadiusTooSmall {
            r,
            two_delta: h.two_delta,
        });
    }
    Ok(ss_dismantle(g, Radius::Finite(2 * r), Radius::Finite(r + h.two_delta))?)
}
