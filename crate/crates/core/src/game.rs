//! Exact solvers for the three pursuit games.
//!
//! A configuration `(c, r)` is a cop position and a robber position with the
//! cop about to move. Solvers compute the least fixpoint of the cop attractor
//! in synchronous rounds, so a configuration's label is the round in which it
//! became cop-winning: the number of cop moves (or phases, in the witness game)
//! the cop needs against best resistance. Immediate captures have label 1 and
//! the diagonal `c == r` has label 0.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Radius, MASK_LIMIT};

/// Witness games with longer phases are refused unless forced.
pub const WITNESS_PHASE_LIMIT: u32 = 8;
/// Witness games on more vertices are refused unless forced.
pub const WITNESS_VERTEX_LIMIT: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("the solver handles at most {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("phase length {k} exceeds the limit of {limit}; pass force to override")]
    PhaseTooLong { k: u32, limit: u32 },
    #[error("invalid game parameters: {0}")]
    InvalidSpec(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Robber always visible; speeds `(s, s')`.
    Visible,
    /// Robber visible every `k` cop moves; cop speed 1.
    Witness,
    /// Both speeds 1; capture at distance `radius`.
    Capture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameSpec {
    pub variant: Variant,
    pub robber_speed: Radius,
    pub cop_speed: Radius,
    /// Phase length (witness game); 1 otherwise.
    pub phase: u32,
    /// Capture radius (capture game); 0 otherwise.
    pub capture_radius: u32,
}

impl GameSpec {
    pub fn visible(s: Radius, s_prime: Radius) -> GameSpec {
        GameSpec {
            variant: Variant::Visible,
            robber_speed: s,
            cop_speed: s_prime,
            phase: 1,
            capture_radius: 0,
        }
    }

    pub fn witness(k: u32, s: Radius) -> GameSpec {
        GameSpec {
            variant: Variant::Witness,
            robber_speed: s,
            cop_speed: Radius::ONE,
            phase: k,
            capture_radius: 0,
        }
    }

    pub fn capture(radius: u32) -> GameSpec {
        GameSpec {
            variant: Variant::Capture,
            robber_speed: Radius::ONE,
            cop_speed: Radius::ONE,
            phase: 1,
            capture_radius: radius,
        }
    }

    /// Cop moves per visible moment.
    pub fn steps_per_phase(&self) -> usize {
        self.phase as usize
    }

    pub fn validate(&self) -> Result<(), GameError> {
        match self.variant {
            Variant::Visible if self.phase != 1 => Err(GameError::InvalidSpec("visible games have phase 1".into())),
            Variant::Witness if self.phase == 0 => {
                Err(GameError::InvalidSpec("phase length must be at least 1".into()))
            }
            Variant::Witness if self.cop_speed != Radius::ONE => {
                Err(GameError::InvalidSpec("witness games use cop speed 1".into()))
            }
            Variant::Capture
                if self.cop_speed != Radius::ONE || self.robber_speed != Radius::ONE || self.phase != 1 =>
            {
                Err(GameError::InvalidSpec("capture games use speeds 1 and phase 1".into()))
            }
            _ => Ok(()),
        }
    }

    /// Cop destinations from `c` in one move, as a mask.
    pub(crate) fn cop_step_mask(&self, g: &Graph, c: usize) -> u64 {
        g.dist_ball_mask(c, self.cop_speed)
    }

    /// Robber destinations from `r` after the cop has moved to `c`.
    pub(crate) fn robber_step_mask(&self, g: &Graph, r: usize, c: usize) -> u64 {
        g.ball_mask(r, self.robber_speed, g.full_mask() & !(1u64 << c))
    }

    /// Whether a cop standing on `c` has captured a robber on `r`.
    pub fn captures(&self, g: &Graph, c: usize, r: usize) -> bool {
        match self.variant {
            Variant::Capture => g.dist(c, r) <= self.capture_radius,
            _ => c == r,
        }
    }
}

impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            Variant::Visible => write!(f, "visible(s={}, s'={})", self.robber_speed, self.cop_speed),
            Variant::Witness => write!(f, "witness(k={}, s={})", self.phase, self.robber_speed),
            Variant::Capture => write!(f, "capture(radius={})", self.capture_radius),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Player {
    Cop,
    Robber,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Cop => "COP",
            Player::Robber => "ROBBER",
        })
    }
}

const UNLABELED: u32 = u32::MAX;

/// Solved game: winner and label of every configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameValue {
    pub spec: GameSpec,
    n: usize,
    labels: Vec<u32>,
    /// Cop-favourable iff some start beats every robber start.
    pub verdict: Player,
    /// Smallest winning cop start when the verdict is `Cop`.
    pub best_start: Option<usize>,
}

impl GameValue {
    fn from_labels(spec: GameSpec, n: usize, labels: Vec<u32>) -> GameValue {
        let best_start = (0..n).find(|&c| (0..n).all(|r| labels[c * n + r] != UNLABELED));
        GameValue {
            spec,
            n,
            labels,
            verdict: if best_start.is_some() {
                Player::Cop
            } else {
                Player::Robber
            },
            best_start,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn winner(&self, c: usize, r: usize) -> Player {
        if self.labels[c * self.n + r] == UNLABELED {
            Player::Robber
        } else {
            Player::Cop
        }
    }

    /// Rounds to capture for cop-winning configurations.
    pub fn label(&self, c: usize, r: usize) -> Option<u32> {
        let l = self.labels[c * self.n + r];
        (l != UNLABELED).then_some(l)
    }

    /// Label with robber wins mapped to `u32::MAX`, for comparisons.
    pub(crate) fn cost(&self, c: usize, r: usize) -> u32 {
        self.labels[c * self.n + r]
    }

    pub fn is_cop_win(&self) -> bool {
        self.verdict == Player::Cop
    }
}

fn check_size(g: &Graph) -> Result<(), GameError> {
    if g.n() > MASK_LIMIT {
        return Err(GameError::TooLarge {
            n: g.n(),
            limit: MASK_LIMIT,
        });
    }
    g.require_connected()?;
    Ok(())
}

/// Round-based attractor for games with one cop move per robber move.
fn solve_positional(g: &Graph, spec: GameSpec) -> GameValue {
    let n = g.n();
    let cop_moves: Vec<u64> = (0..n).map(|c| spec.cop_step_mask(g, c)).collect();
    let mut robber_moves = vec![0u64; n * n];
    for r in 0..n {
        for c in 0..n {
            if r != c {
                robber_moves[r * n + c] = spec.robber_step_mask(g, r, c);
            }
        }
    }
    let mut labels = vec![UNLABELED; n * n];
    for c in 0..n {
        for r in 0..n {
            if c == r {
                labels[c * n + r] = 0;
            } else if crate::graph::mask_to_vec(cop_moves[c])
                .into_iter()
                .any(|d| spec.captures(g, d, r))
            {
                labels[c * n + r] = 1;
            }
        }
    }
    let mut level = 1;
    loop {
        let won: Vec<u64> = (0..n)
            .map(|c| {
                (0..n)
                    .filter(|&r| labels[c * n + r] != UNLABELED)
                    .fold(0u64, |m, r| m | (1u64 << r))
            })
            .collect();
        let mut changed = false;
        for c in 0..n {
            for r in 0..n {
                if labels[c * n + r] != UNLABELED {
                    continue;
                }
                let mut moves = cop_moves[c];
                while moves != 0 {
                    let d = moves.trailing_zeros() as usize;
                    moves &= moves - 1;
                    if robber_moves[r * n + d] & !won[d] == 0 {
                        labels[c * n + r] = level + 1;
                        changed = true;
                        break;
                    }
                }
            }
        }
        if !changed {
            break;
        }
        level += 1;
    }
    GameValue::from_labels(spec, n, labels)
}

/// Robber always visible, robber speed `s`, cop speed `s_prime`.
pub fn solve_visible(g: &Graph, s: Radius, s_prime: Radius) -> Result<GameValue, GameError> {
    check_size(g)?;
    Ok(solve_positional(g, GameSpec::visible(s, s_prime)))
}

/// Both speeds 1; the cop wins once within `radius` of the robber after
/// one of its moves. The robber may not step onto the cop.
pub fn solve_capture(g: &Graph, radius: u32) -> Result<GameValue, GameError> {
    check_size(g)?;
    Ok(solve_positional(g, GameSpec::capture(radius)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WitnessOptions {
    /// Lift the phase and vertex guards.
    pub force: bool,
}

/// Cop speed 1, robber speed `s`, robber visible every `k` cop moves.
pub fn solve_witness(g: &Graph, k: u32, s: Radius) -> Result<GameValue, GameError> {
    solve_witness_with(g, k, s, WitnessOptions::default())
}

pub fn solve_witness_with(g: &Graph, k: u32, s: Radius, options: WitnessOptions) -> Result<GameValue, GameError> {
    let spec = GameSpec::witness(k, s);
    spec.validate()?;
    check_size(g)?;
    if !options.force {
        if k > WITNESS_PHASE_LIMIT {
            return Err(GameError::PhaseTooLong {
                k,
                limit: WITNESS_PHASE_LIMIT,
            });
        }
        if g.n() > WITNESS_VERTEX_LIMIT {
            return Err(GameError::TooLarge {
                n: g.n(),
                limit: WITNESS_VERTEX_LIMIT,
            });
        }
    }
    let n = g.n();
    let steps = PhaseSteps::new(g, spec);
    let mut labels = vec![UNLABELED; n * n];
    for c in 0..n {
        labels[c * n + c] = 0;
        for &r in g.neighbors(c) {
            labels[c * n + r] = 1;
        }
    }
    let mut level = 1;
    loop {
        let won: Vec<u64> = (0..n)
            .map(|c| {
                (0..n)
                    .filter(|&r| labels[c * n + r] != UNLABELED)
                    .fold(0u64, |m, r| m | (1u64 << r))
            })
            .collect();
        let mut search = PlanSearch {
            g,
            steps: &steps,
            k: k as usize,
            won: &won,
            memo: HashMap::new(),
        };
        let mut newly = Vec::new();
        for c in 0..n {
            for r in 0..n {
                if labels[c * n + r] == UNLABELED && search.winnable(0, c, 1u64 << r) {
                    newly.push(c * n + r);
                }
            }
        }
        if newly.is_empty() {
            break;
        }
        for i in newly {
            labels[i] = level + 1;
        }
        level += 1;
    }
    Ok(GameValue::from_labels(spec, n, labels))
}

/// Precomputed robber responses for one game.
pub(crate) struct PhaseSteps {
    n: usize,
    moves: Vec<u64>,
}

impl PhaseSteps {
    pub(crate) fn new(g: &Graph, spec: GameSpec) -> PhaseSteps {
        let n = g.n();
        let mut moves = vec![0u64; n * n];
        for p in 0..n {
            for c in 0..n {
                if p != c {
                    moves[p * n + c] = spec.robber_step_mask(g, p, c);
                }
            }
        }
        PhaseSteps { n, moves }
    }

    /// Robber positions after the cop steps onto `c`, starting from `from`.
    pub(crate) fn advance(&self, from: u64, c: usize) -> u64 {
        let mut alive = from & !(1u64 << c);
        let mut out = 0u64;
        while alive != 0 {
            let p = alive.trailing_zeros() as usize;
            alive &= alive - 1;
            out |= self.moves[p * self.n + c];
        }
        out
    }

    pub(crate) fn single(&self, p: usize, c: usize) -> u64 {
        self.moves[p * self.n + c]
    }
}

struct PlanSearch<'a> {
    g: &'a Graph,
    steps: &'a PhaseSteps,
    k: usize,
    won: &'a [u64],
    memo: HashMap<(usize, usize, u64), bool>,
}

impl PlanSearch<'_> {
    /// Whether the cop, after `done` moves of the phase ending on `c` with
    /// robber set `reach`, can finish the phase into won configurations.
    fn winnable(&mut self, done: usize, c: usize, reach: u64) -> bool {
        if reach == 0 {
            return true;
        }
        if done == self.k {
            return reach & !self.won[c] == 0;
        }
        if let Some(&v) = self.memo.get(&(done, c, reach)) {
            return v;
        }
        let mut result = false;
        let mut options = self.g.adj_mask(c) | (1u64 << c);
        while options != 0 {
            let d = options.trailing_zeros() as usize;
            options &= options - 1;
            let next = self.steps.advance(reach, d);
            if self.winnable(done + 1, d, next) {
                result = true;
                break;
            }
        }
        self.memo.insert((done, c, reach), result);
        result
    }
}

/// Cop-optimal table and solver-optimal robber for a solved game.
pub fn extract_optimal_policies<'a>(
    g: &Graph,
    value: &'a GameValue,
) -> Result<(crate::strategy::StrategyTable, crate::strategy::OptimalRobber<'a>), GameError> {
    if g.n() != value.n() {
        return Err(GameError::InvalidSpec(
            "game value was computed for a different graph".into(),
        ));
    }
    let table = optimal_cop_table(g, value);
    Ok((table, crate::strategy::OptimalRobber::new(value)))
}

fn optimal_cop_table(g: &Graph, value: &GameValue) -> crate::strategy::StrategyTable {
    let spec = value.spec;
    let n = g.n();
    let steps = PhaseSteps::new(g, spec);
    let start = value.best_start.unwrap_or(0);
    let mut table = crate::strategy::StrategyTable::new(spec, n, start);
    for c in 0..n {
        for r in 0..n {
            if c == r {
                continue;
            }
            let plan = match spec.variant {
                Variant::Witness => best_plan(g, value, &steps, c, r),
                _ => {
                    let mut best = (u32::MAX, usize::MAX);
                    for d in crate::graph::mask_to_vec(spec.cop_step_mask(g, c)) {
                        let cost = if spec.captures(g, d, r) {
                            0
                        } else {
                            crate::graph::mask_to_vec(steps.single(r, d))
                                .into_iter()
                                .map(|t| value.cost(d, t))
                                .max()
                                .unwrap_or(0)
                        };
                        if best.1 == usize::MAX || cost < best.0 {
                            best = (cost, d);
                        }
                    }
                    vec![best.1]
                }
            };
            table.set(c, r, plan);
        }
    }
    table
}

/// Lexicographically first plan minimising the worst successor label.
fn best_plan(g: &Graph, value: &GameValue, steps: &PhaseSteps, c: usize, r: usize) -> Vec<usize> {
    let k = value.spec.steps_per_phase();
    let mut best: Option<(u32, Vec<usize>)> = None;
    let mut plan = Vec::with_capacity(k);
    #[allow(clippy::too_many_arguments)]
    fn walk(
        g: &Graph,
        value: &GameValue,
        steps: &PhaseSteps,
        k: usize,
        c: usize,
        reach: u64,
        plan: &mut Vec<usize>,
        best: &mut Option<(u32, Vec<usize>)>,
    ) {
        if reach == 0 || plan.len() == k {
            let cost = if reach == 0 {
                0
            } else {
                crate::graph::mask_to_vec(reach)
                    .into_iter()
                    .map(|t| value.cost(c, t))
                    .max()
                    .unwrap_or(0)
            };
            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                let mut full = plan.clone();
                // After a capture the remaining moves stay put.
                while full.len() < k {
                    full.push(c);
                }
                *best = Some((cost, full));
            }
            return;
        }
        let mut options = g.adj_mask(c) | (1u64 << c);
        while options != 0 {
            let d = options.trailing_zeros() as usize;
            options &= options - 1;
            plan.push(d);
            walk(g, value, steps, k, d, steps.advance(reach, d), plan, best);
            plan.pop();
            if matches!(best, Some((0, _))) {
                return;
            }
        }
    }
    walk(g, value, steps, k, c, 1u64 << r, &mut plan, &mut best);
    best.map(|(_, p)| p).unwrap_or_else(|| vec![c; k])
}
