//! Positional cop strategies, robber policies and game simulation.
//!
//! A strategy table maps a configuration seen at a visible moment to the
//! cop's next moves: one destination in the visible and capture games, a
//! walk of `k` vertices in the witness game.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::{verify_decomposition, Decomposition, DecompositionError, DecompositionKind};
use crate::dismantling::{verify_certificate, Certificate, DismantleError, Family, Params};
use crate::game::{GameError, GameSpec, GameValue, PhaseSteps, Variant};
use crate::graph::{mask_to_vec, Graph, Radius, MASK_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Dismantle(#[from] DismantleError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error("the input does not verify: {0}")]
    Unverified(&'static str),
    #[error("the oscillating strategy needs an odd phase length, got {0}")]
    EvenPhase(u32),
    #[error("configuration (cop {cop}, robber {robber}) is not marked")]
    Unmarked { cop: usize, robber: usize },
    #[error("no move is defined for cop {cop}, robber {robber}")]
    Undefined { cop: usize, robber: usize },
    #[error("illegal {who} move from {from} to {to}")]
    IllegalMove { who: &'static str, from: usize, to: usize },
    #[error("the strategy handles at most {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
}

/// Cop strategy keyed by configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyTable {
    pub spec: GameSpec,
    n: usize,
    /// Cop's initial vertex.
    pub start: usize,
    moves: Vec<Option<Vec<usize>>>,
    /// Configurations whose entry is an intermediate step of a two-phase
    /// manoeuvre. Only the two-brother strategy at `k = 1` sets this.
    pub memory_bits: Option<Vec<bool>>,
}

impl StrategyTable {
    pub fn new(spec: GameSpec, n: usize, start: usize) -> StrategyTable {
        StrategyTable {
            spec,
            n,
            start,
            moves: vec![None; n * n],
            memory_bits: None,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, c: usize, r: usize, plan: Vec<usize>) {
        self.moves[c * self.n + r] = Some(plan);
    }

    /// Moves for the configuration, if defined.
    pub fn plan(&self, c: usize, r: usize) -> Option<&[usize]> {
        self.moves[c * self.n + r].as_deref()
    }

    /// Checks every defined entry is a legal walk for the game.
    pub fn validate(&self, g: &Graph) -> Result<(), StrategyError> {
        let k = self.spec.steps_per_phase();
        for c in 0..self.n {
            for r in 0..self.n {
                let Some(plan) = self.plan(c, r) else { continue };
                if plan.len() != k {
                    return Err(StrategyError::Unverified("plan length differs from the phase length"));
                }
                let mut at = c;
                for &d in plan {
                    if d >= self.n || !self.spec.cop_speed.covers(g.dist(at, d)) {
                        return Err(StrategyError::IllegalMove {
                            who: "cop",
                            from: at,
                            to: d,
                        });
                    }
                    at = d;
                }
            }
        }
        Ok(())
    }
}

/// Source of cop moves for [`simulate`].
pub trait CopPolicy {
    fn start(&self) -> usize;
    fn plan(&self, cop: usize, robber: usize) -> Option<Vec<usize>>;
}

impl CopPolicy for StrategyTable {
    fn start(&self) -> usize {
        self.start
    }

    fn plan(&self, cop: usize, robber: usize) -> Option<Vec<usize>> {
        StrategyTable::plan(self, cop, robber).map(<[usize]>::to_vec)
    }
}

/// Source of robber moves for [`simulate`]. The robber sees the cop's whole
/// plan for the phase and answers with its position after each cop move; it
/// may stop early if it is caught before the end of the phase.
pub trait RobberPolicy {
    fn start(&mut self, g: &Graph, spec: &GameSpec, cop: usize) -> usize;
    fn respond(&mut self, g: &Graph, spec: &GameSpec, robber: usize, plan: &[usize]) -> Vec<usize>;
}

/// Robber that follows solver labels: it heads for a robber-winning
/// configuration when one is reachable and otherwise maximises the label,
/// breaking ties toward the smallest vertex.
pub struct OptimalRobber<'a> {
    value: &'a GameValue,
    steps: Option<PhaseSteps>,
}

impl<'a> OptimalRobber<'a> {
    pub fn new(value: &'a GameValue) -> OptimalRobber<'a> {
        OptimalRobber { value, steps: None }
    }
}

impl RobberPolicy for OptimalRobber<'_> {
    fn start(&mut self, g: &Graph, _spec: &GameSpec, cop: usize) -> usize {
        let mut best = (0u32, cop);
        for r in 0..g.n() {
            if r != cop && (best.1 == cop || self.value.cost(cop, r) > best.0) {
                best = (self.value.cost(cop, r), r);
            }
        }
        best.1
    }

    fn respond(&mut self, g: &Graph, _spec: &GameSpec, robber: usize, plan: &[usize]) -> Vec<usize> {
        let spec = self.value.spec;
        let steps = self.steps.get_or_insert_with(|| PhaseSteps::new(g, spec));
        let mut layers = vec![1u64 << robber];
        for &c in plan {
            let next = steps.advance(*layers.last().expect("nonempty"), c);
            if next == 0 {
                break;
            }
            layers.push(next);
        }
        let last = layers.len() - 1;
        let mut target = if last == plan.len() {
            let c = plan[last - 1];
            let mut best = (0u32, usize::MAX);
            for t in mask_to_vec(layers[last]) {
                let cost = self.value.cost(c, t);
                if best.1 == usize::MAX || cost > best.0 {
                    best = (cost, t);
                }
            }
            best.1
        } else {
            layers[last].trailing_zeros() as usize
        };
        let mut path = vec![0; last];
        for j in (1..=last).rev() {
            path[j - 1] = target;
            let c = plan[j - 1];
            let alive = layers[j - 1] & !(1u64 << c);
            target = mask_to_vec(alive)
                .into_iter()
                .find(|&p| steps.single(p, c) & (1u64 << target) != 0)
                .expect("layer was built from these predecessors");
        }
        path
    }
}

/// Uniformly random legal moves from a seeded generator.
pub struct RandomRobber {
    rng: ChaCha8Rng,
}

impl RandomRobber {
    pub fn new(seed: u64) -> RandomRobber {
        RandomRobber {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl RobberPolicy for RandomRobber {
    fn start(&mut self, g: &Graph, _spec: &GameSpec, cop: usize) -> usize {
        let options: Vec<usize> = (0..g.n()).filter(|&v| v != cop).collect();
        options.choose(&mut self.rng).copied().unwrap_or(cop)
    }

    fn respond(&mut self, g: &Graph, spec: &GameSpec, robber: usize, plan: &[usize]) -> Vec<usize> {
        let mut at = robber;
        let mut path = Vec::with_capacity(plan.len());
        for &c in plan {
            if spec.captures(g, c, at) {
                break;
            }
            let options = mask_to_vec(spec.robber_step_mask(g, at, c));
            at = *options.choose(&mut self.rng).expect("staying is always legal");
            path.push(at);
        }
        path
    }
}

/// Replays a fixed sequence of robber positions, then stays put.
pub struct ScriptedRobber {
    start: usize,
    moves: Vec<usize>,
    next: usize,
}

impl ScriptedRobber {
    pub fn new(start: usize, moves: Vec<usize>) -> ScriptedRobber {
        ScriptedRobber { start, moves, next: 0 }
    }
}

impl RobberPolicy for ScriptedRobber {
    fn start(&mut self, _g: &Graph, _spec: &GameSpec, _cop: usize) -> usize {
        self.start
    }

    fn respond(&mut self, _g: &Graph, _spec: &GameSpec, robber: usize, plan: &[usize]) -> Vec<usize> {
        let mut at = robber;
        let mut path = Vec::with_capacity(plan.len());
        for _ in plan {
            if let Some(&m) = self.moves.get(self.next) {
                at = m;
                self.next += 1;
            }
            path.push(at);
        }
        path
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Capture happened on this cop move (1-based; 0 means placed on top).
    Captured { step: usize },
    /// The step cap was reached.
    Survived { steps: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub spec: GameSpec,
    /// Position after each cop move, starting with the initial placement.
    pub cop_positions: Vec<usize>,
    /// Position after each robber response, aligned with `cop_positions`.
    pub robber_positions: Vec<usize>,
    pub outcome: Outcome,
}

impl Trace {
    pub fn captured(&self) -> bool {
        matches!(self.outcome, Outcome::Captured { .. })
    }
}

/// Default step cap: `4 n^2 k`.
pub fn default_cap(n: usize, spec: &GameSpec) -> usize {
    4 * n * n * spec.steps_per_phase()
}

/// Plays the game until capture or until `cap` cop moves have been made.
pub fn simulate(
    g: &Graph,
    spec: &GameSpec,
    cop: &dyn CopPolicy,
    robber: &mut dyn RobberPolicy,
    cap: Option<usize>,
) -> Result<Trace, StrategyError> {
    let n = g.n();
    if n > MASK_LIMIT {
        return Err(StrategyError::TooLarge { n, limit: MASK_LIMIT });
    }
    spec.validate()?;
    let cap = cap.unwrap_or_else(|| default_cap(n, spec));
    let k = spec.steps_per_phase();
    let mut c = cop.start();
    let mut r = robber.start(g, spec, c);
    if c >= n || r >= n {
        return Err(StrategyError::IllegalMove {
            who: "placement",
            from: c,
            to: r,
        });
    }
    let mut trace = Trace {
        spec: *spec,
        cop_positions: vec![c],
        robber_positions: vec![r],
        outcome: Outcome::Survived { steps: 0 },
    };
    if spec.captures(g, c, r) {
        trace.outcome = Outcome::Captured { step: 0 };
        return Ok(trace);
    }
    let mut steps = 0;
    while steps < cap {
        let plan = cop.plan(c, r).ok_or(StrategyError::Undefined { cop: c, robber: r })?;
        if plan.len() != k {
            return Err(StrategyError::Unverified("plan length differs from the phase length"));
        }
        let path = robber.respond(g, spec, r, &plan);
        for (i, &d) in plan.iter().enumerate() {
            if steps >= cap {
                break;
            }
            if d >= n || !spec.cop_speed.covers(g.dist(c, d)) {
                return Err(StrategyError::IllegalMove {
                    who: "cop",
                    from: c,
                    to: d,
                });
            }
            c = d;
            steps += 1;
            if spec.captures(g, c, r) {
                trace.cop_positions.push(c);
                trace.robber_positions.push(r);
                trace.outcome = Outcome::Captured { step: steps };
                return Ok(trace);
            }
            let next = *path.get(i).ok_or(StrategyError::IllegalMove {
                who: "robber",
                from: r,
                to: r,
            })?;
            if next >= n || spec.robber_step_mask(g, r, c) & (1u64 << next) == 0 {
                return Err(StrategyError::IllegalMove {
                    who: "robber",
                    from: r,
                    to: next,
                });
            }
            r = next;
            trace.cop_positions.push(c);
            trace.robber_positions.push(r);
        }
    }
    trace.outcome = Outcome::Survived { steps };
    Ok(trace)
}

/// Whether the table captures every robber from its start, checked by an
/// attractor over all robber behaviours.
pub fn verify_strategy(g: &Graph, table: &StrategyTable) -> Result<bool, StrategyError> {
    let n = g.n();
    if n > MASK_LIMIT {
        return Err(StrategyError::TooLarge { n, limit: MASK_LIMIT });
    }
    table.validate(g)?;
    let spec = table.spec;
    let caught: Vec<u64> = (0..n)
        .map(|c| {
            (0..n)
                .filter(|&r| spec.captures(g, c, r))
                .fold(0u64, |m, r| m | (1u64 << r))
        })
        .collect();
    let moves: Vec<u64> = (0..n * n)
        .map(|i| {
            let (p, c) = (i / n, i % n);
            if p == c {
                0
            } else {
                spec.robber_step_mask(g, p, c)
            }
        })
        .collect();
    let outcome = |c: usize, r: usize| -> Option<(usize, u64)> {
        let plan = table.plan(c, r)?;
        let mut reach = 1u64 << r;
        let mut at = c;
        for &d in plan {
            at = d;
            let mut alive = reach & !caught[d];
            reach = 0;
            while alive != 0 {
                let p = alive.trailing_zeros() as usize;
                alive &= alive - 1;
                reach |= moves[p * n + d];
            }
        }
        Some((at, reach))
    };
    let mut won = caught.clone();
    loop {
        let mut changed = false;
        for c in 0..n {
            for r in 0..n {
                if won[c] & (1u64 << r) != 0 {
                    continue;
                }
                if let Some((end, reach)) = outcome(c, r) {
                    if reach & !won[end] == 0 {
                        won[c] |= 1u64 << r;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(table.start < n && won[table.start] == g.full_mask())
}

/// Strategy read off an `(s, s')`-dismantling certificate: the cop chases the
/// robber's shadow, which follows eliminators down the order.
pub fn shadow_strategy(g: &Graph, cert: &Certificate) -> Result<StrategyTable, StrategyError> {
    let Params::Speeds { s, s_prime } = cert.params else {
        return Err(StrategyError::Unverified("shadow strategies need speed parameters"));
    };
    if cert.family != Family::Ss || !verify_certificate(g, cert)? {
        return Err(StrategyError::Unverified("certificate"));
    }
    let n = g.n();
    let spec = GameSpec::visible(s, s_prime);
    let mut table = StrategyTable::new(spec, n, cert.order[n - 1]);
    for c in 0..n {
        for r0 in 0..n {
            if c == r0 {
                continue;
            }
            let mut r = r0;
            let mut dest = None;
            for (v, e) in cert.order.iter().zip(&cert.eliminators) {
                if s_prime.covers(g.dist(c, r)) {
                    dest = Some(r);
                    break;
                }
                let e = e.expect("only the last vertex lacks an eliminator").y();
                if c == *v {
                    dest = Some(e);
                    break;
                }
                if r == *v {
                    r = e;
                }
            }
            table.set(c, r0, vec![dest.unwrap_or(r)]);
        }
    }
    Ok(table)
}

/// Result of the marking procedure on a vertex set `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkTable {
    pub k: u32,
    n: usize,
    region: u64,
    labels: Vec<Option<u32>>,
    choice: Vec<Option<(usize, usize)>>,
}

impl MarkTable {
    pub fn region(&self) -> Vec<usize> {
        mask_to_vec(self.region)
    }

    pub fn label(&self, c: usize, r: usize) -> Option<u32> {
        self.labels[c * self.n + r]
    }

    /// The `(y, x)` pair used to mark a non-terminal configuration.
    pub fn choice(&self, c: usize, r: usize) -> Option<(usize, usize)> {
        self.choice[c * self.n + r]
    }

    /// Configurations of `X` with distinct positions left unmarked.
    pub fn unmarked(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for c in mask_to_vec(self.region) {
            for r in mask_to_vec(self.region & !(1u64 << c)) {
                if self.label(c, r).is_none() {
                    out.push((c, r));
                }
            }
        }
        out
    }

    pub fn all_marked(&self) -> bool {
        self.unmarked().is_empty()
    }
}

/// Marks configurations of `X x X` from which an oscillating cop captures.
///
/// `(c, r)` gets label 1 when `r` is adjacent to `c`. Otherwise it gets the
/// smallest `l + 1` for which some `y ∈ N_1[c] ∩ X` and
/// `x ∈ (N_1[y] - r) ∩ X` make every `z ∈ N_k(r, G - {x, y}) ∩ X` satisfy
/// `label(y, z) <= l`.
pub fn mark_procedure(g: &Graph, x_set: &[usize], k: u32) -> Result<MarkTable, StrategyError> {
    let n = g.n();
    if n > MASK_LIMIT {
        return Err(StrategyError::TooLarge { n, limit: MASK_LIMIT });
    }
    let region = x_set.iter().fold(0u64, |m, &v| m | (1u64 << v));
    let closed = |v: usize| g.adj_mask(v) | (1u64 << v);
    let mut labels = vec![None; n * n];
    let mut choice = vec![None; n * n];
    for c in mask_to_vec(region) {
        for r in mask_to_vec(g.adj_mask(c) & region) {
            labels[c * n + r] = Some(1);
        }
    }
    let mut level = 1;
    loop {
        let won: Vec<u64> = (0..n)
            .map(|c| {
                (0..n)
                    .filter(|&r| labels[c * n + r].is_some())
                    .fold(0u64, |m, r| m | (1u64 << r))
            })
            .collect();
        let mut newly = Vec::new();
        for c in mask_to_vec(region) {
            for r in mask_to_vec(region & !(1u64 << c)) {
                if labels[c * n + r].is_some() {
                    continue;
                }
                'search: for y in mask_to_vec(closed(c) & region) {
                    for x in mask_to_vec(closed(y) & region & !(1u64 << r)) {
                        let keep = g.full_mask() & !(1u64 << x) & !(1u64 << y);
                        let zs = g.ball_mask(r, Radius::Finite(k), keep) & region;
                        if zs & !won[y] == 0 {
                            newly.push((c * n + r, y, x));
                            break 'search;
                        }
                    }
                }
            }
        }
        if newly.is_empty() {
            break;
        }
        for (i, y, x) in newly {
            labels[i] = Some(level + 1);
            choice[i] = Some((y, x));
        }
        level += 1;
    }
    Ok(MarkTable {
        k,
        n,
        region,
        labels,
        choice,
    })
}

/// Witness strategy from a fully marked table with odd `k`: step to `y`, then
/// alternate `x, y, ...` so the phase ends on `y`.
pub fn mark_strategy(g: &Graph, table: &MarkTable) -> Result<StrategyTable, StrategyError> {
    let k = table.k;
    if k.is_multiple_of(2) {
        return Err(StrategyError::EvenPhase(k));
    }
    if let Some(&(c, r)) = table.unmarked().first() {
        return Err(StrategyError::Unmarked { cop: c, robber: r });
    }
    let region = table.region();
    let n = g.n();
    let mut out = StrategyTable::new(GameSpec::witness(k, Radius::ONE), n, region[0]);
    for &c in &region {
        for &r in &region {
            if c == r {
                continue;
            }
            let plan = match table.choice(c, r) {
                None => vec![r; k as usize],
                Some((y, x)) => (0..k as usize).map(|i| if i % 2 == 0 { y } else { x }).collect(),
            };
            out.set(c, r, plan);
        }
    }
    Ok(out)
}

/// Visible-game strategy from a big brother decomposition: start on the
/// root's big brother and always step to the neighbour closest to the robber.
pub fn bb_strategy(g: &Graph, d: &Decomposition, s: Radius) -> Result<StrategyTable, StrategyError> {
    if d.kind != DecompositionKind::BigBrother || !verify_decomposition(g, d)? {
        return Err(StrategyError::Unverified("big brother decomposition"));
    }
    let n = g.n();
    let mut table = StrategyTable::new(GameSpec::visible(s, Radius::ONE), n, d.big_brother[0]);
    for c in 0..n {
        for r in 0..n {
            if c == r {
                continue;
            }
            let next = g
                .neighbors(c)
                .iter()
                .copied()
                .min_by_key(|&w| (g.dist(w, r), w))
                .unwrap_or(c);
            table.set(c, r, vec![next]);
        }
    }
    Ok(table)
}

/// Witness strategy from a big two-brother decomposition.
///
/// With the cop on `y_i` and the robber below piece `i`, the cop walks to the
/// attachment of the child piece `j` leading to the robber and guards it for
/// the whole phase so that it ends on `y_j`: it sits on `x_j` and steps to
/// `y_j` last when the attachment is a vertex, and alternates between `x_j`
/// and `y_j` when it is an edge.
pub fn btb_witness_strategy(g: &Graph, d: &Decomposition, k: u32) -> Result<StrategyTable, StrategyError> {
    if k == 0 {
        return Err(GameError::InvalidSpec("phase length must be at least 1".into()).into());
    }
    if !verify_decomposition(g, d)? {
        return Err(StrategyError::Unverified("two-brother decomposition"));
    }
    let n = g.n();
    let r_count = d.len();
    let mut depth = vec![0usize; r_count];
    for i in 1..r_count {
        depth[i] = depth[d.parent[i].expect("verified")] + 1;
    }
    // Vertices of all pieces in each subtree.
    let mut below = vec![vec![false; n]; r_count];
    for i in (0..r_count).rev() {
        for &v in &d.pieces[i] {
            below[i][v] = true;
        }
        if let Some(p) = d.parent[i] {
            let child = below[i].clone();
            for v in 0..n {
                below[p][v] |= child[v];
            }
        }
    }
    let ku = k as usize;
    let guard_plan = |j: usize| -> Vec<usize> {
        let att = d.attachment(j);
        let (x, y) = (d.small_brother[j].expect("non-root"), d.big_brother[j]);
        if att.len() == 2 {
            (0..ku)
                .map(|t| if (ku - 1 - t).is_multiple_of(2) { y } else { x })
                .collect()
        } else if x == y || ku == 1 {
            vec![x; ku]
        } else {
            let mut p = vec![x; ku - 1];
            p.push(y);
            p
        }
    };
    let mut table = StrategyTable::new(GameSpec::witness(k, Radius::ONE), n, d.big_brother[0]);
    let mut memory = vec![false; n * n];
    for c in 0..n {
        for r in 0..n {
            if c == r {
                continue;
            }
            if g.has_edge(c, r) {
                table.set(c, r, vec![r; ku]);
                continue;
            }
            let owner = (0..r_count)
                .filter(|&i| d.big_brother[i] == c && below[i][r])
                .max_by_key(|&i| (depth[i], std::cmp::Reverse(i)));
            if let Some(i) = owner {
                if let Some(j) = d.children(i).into_iter().find(|&j| below[j][r]) {
                    table.set(c, r, guard_plan(j));
                }
                continue;
            }
            // Second half of a vertex attachment when k = 1: the cop sits on
            // x_j and now moves to y_j.
            if ku == 1 {
                let pending = (1..r_count).find(|&j| {
                    d.attachment(j).len() == 1 && d.small_brother[j] == Some(c) && d.big_brother[j] != c && below[j][r]
                });
                if let Some(j) = pending {
                    table.set(c, r, vec![d.big_brother[j]]);
                    memory[c * n + r] = true;
                }
            }
        }
    }
    if memory.iter().any(|&b| b) {
        table.memory_bits = Some(memory);
    }
    Ok(table)
}

/// Convenience for solving a game described by a spec.
pub fn solve(g: &Graph, spec: &GameSpec) -> Result<GameValue, GameError> {
    match spec.variant {
        Variant::Visible => crate::game::solve_visible(g, spec.robber_speed, spec.cop_speed),
        Variant::Witness => crate::game::solve_witness(g, spec.phase, spec.robber_speed),
        Variant::Capture => crate::game::solve_capture(g, spec.capture_radius),
    }
}
