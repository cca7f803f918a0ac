//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance`. Pass `--slow` after `--` (or set
//! `COPWIN_SLOW=1`) to extend the exhaustive corpus to six vertices where the
//! criteria allow it.

use std::collections::VecDeque;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use copwin::corpus::checks::{by_name, recognizer_outputs};
use copwin::corpus::fixtures::{self, complete, cycle, gk, path, star, sun3};
use copwin::corpus::{crosscheck, enumerate_connected, Check, Generator};
use copwin::decomposition::{big_brother, big_two_brother, verify_decomposition, Decomposition, DecompositionKind};
use copwin::dismantling::{bidismantle, ss_dismantle, verify_certificate, Certificate, Eliminator, Family, Params};
use copwin::format::{format_edge_list, parse_edge_list, parse_graph6, to_graph6};
use copwin::game::{solve_witness, Player};
use copwin::graph::{Graph, Radius};
use copwin::hyperbolicity::hyperbolicity;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ONE: Radius = Radius::Finite(1);
const MUTATIONS: usize = 1000;
/// Wall-clock budgets.
const CRITERION_ONE_BUDGET: Duration = Duration::from_secs(5 * 60);
const CRITERION_ONE_SLOW_BUDGET: Duration = Duration::from_secs(60 * 60);
const SEPARATION_BUDGET: Duration = Duration::from_secs(60);

struct Ctx {
    slow: bool,
}

impl Ctx {
    /// Largest order of the exhaustive corpus for criteria that default to
    /// five vertices.
    fn max_n(&self) -> usize {
        if self.slow {
            6
        } else {
            5
        }
    }
}

type Outcome = Result<String, String>;
type Criterion = (u8, &'static str, fn(&Ctx) -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Runs named catalogue checks and requires zero disagreements.
fn zero_disagreements(gen: &Generator, names: &[&str]) -> Outcome {
    let checks: Vec<_> = names.iter().map(|n| by_name(n).expect("catalogued check")).collect();
    let refs: Vec<&dyn Check> = checks.iter().map(|c| c as &dyn Check).collect();
    let report = crosscheck(gen, &refs).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for c in &report.checks {
        if c.disagreement_count > 0 {
            let first = &c.disagreements[0];
            return Err(format!(
                "{}: {} disagreements, first {} ({})",
                c.name, c.disagreement_count, first.graph6, first.detail
            ));
        }
        parts.push(format!("{} {}/{} applicable", c.name, c.agreements, c.graphs_tested));
    }
    Ok(parts.join(", "))
}

fn connected_upto(max_n: usize) -> Generator {
    Generator::Connected { min_n: 1, max_n }
}

fn criterion_1(ctx: &Ctx) -> Outcome {
    let start = Instant::now();
    let mut detail = zero_disagreements(&connected_upto(5), &["visible_vs_dismantling"])?;
    let elapsed = start.elapsed();
    ensure(elapsed <= CRITERION_ONE_BUDGET, format!("n <= 5 took {elapsed:?}"))?;
    detail.push_str(&format!(" (n <= 5 in {:.1}s)", elapsed.as_secs_f64()));
    if ctx.slow {
        let start = Instant::now();
        let more = zero_disagreements(
            &Generator::Connected { min_n: 6, max_n: 6 },
            &["visible_vs_dismantling"],
        )?;
        let elapsed = start.elapsed();
        ensure(elapsed <= CRITERION_ONE_SLOW_BUDGET, format!("n = 6 took {elapsed:?}"))?;
        detail.push_str(&format!("; n = 6: {more} in {:.1}s", elapsed.as_secs_f64()));
    }
    Ok(detail)
}

fn criterion_2(ctx: &Ctx) -> Outcome {
    zero_disagreements(&connected_upto(ctx.max_n()), &["dually_chordal"])
}

fn criterion_3(ctx: &Ctx) -> Outcome {
    zero_disagreements(&connected_upto(ctx.max_n()), &["big_brother_speeds"])
}

fn criterion_4(_: &Ctx) -> Outcome {
    let g = sun3();
    ensure(
        g.n() == 6 && g.edge_count() == 9,
        "sun3 must have 6 vertices and 9 edges",
    )?;
    let ss = |s: u32| ss_dismantle(&g, Radius::Finite(s), ONE).map(|c| c.is_some());
    ensure(!ss(2).map_err(|e| e.to_string())?, "ss_dismantle(2,1) should fail")?;
    ensure(ss(1).map_err(|e| e.to_string())?, "ss_dismantle(1,1) should succeed")?;
    for k in 2..=4 {
        let v = solve_witness(&g, k, ONE).map_err(|e| e.to_string())?;
        ensure(v.verdict == Player::Cop, format!("witness k={k} should be COP"))?;
    }
    ensure(
        big_brother(&g).map_err(|e| e.to_string())?.is_none(),
        "big_brother should fail",
    )?;
    ensure(
        big_two_brother(&g).map_err(|e| e.to_string())?.is_some(),
        "big_two_brother should succeed",
    )?;
    ensure(
        bidismantle(&g, 2).map_err(|e| e.to_string())?.is_some(),
        "bidismantle(2) should succeed",
    )?;
    Ok("all six memberships as stated".into())
}

fn criterion_5(_: &Ctx) -> Outcome {
    let start = Instant::now();
    let mut seen = Vec::new();
    for k in 1..=3u32 {
        let g = gk(k as usize);
        let at_k = solve_witness(&g, k, ONE).map_err(|e| e.to_string())?.verdict;
        let above = solve_witness(&g, k + 1, ONE).map_err(|e| e.to_string())?.verdict;
        ensure(
            at_k == Player::Cop && above == Player::Robber,
            format!("gk({k}): witness({k})={at_k}, witness({})={above}", k + 1),
        )?;
        seen.push(format!("gk({k}) {}v", g.n()));
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= SEPARATION_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("{} in {:.2}s", seen.join(", "), elapsed.as_secs_f64()))
}

fn criterion_6(_: &Ctx) -> Outcome {
    zero_disagreements(
        &connected_upto(5),
        &[
            "witness_two_necessary",
            "strong_bidismantle_sufficient",
            "odd_bidismantle_sufficient",
        ],
    )
}

fn criterion_7(_: &Ctx) -> Outcome {
    zero_disagreements(&connected_upto(5), &["big_two_brother_witness"])
}

fn criterion_8(_: &Ctx) -> Outcome {
    zero_disagreements(&connected_upto(5), &["fast_robber_witness"])
}

fn criterion_9(ctx: &Ctx) -> Outcome {
    let a = zero_disagreements(
        &Generator::ConnectedBipartite { min_n: 1, max_n: 7 },
        &["bipartite_capture"],
    )?;
    let b = zero_disagreements(&connected_upto(ctx.max_n()), &["diameter_two_capture"])?;
    Ok(format!("{a}; {b}"))
}

fn criterion_10(_: &Ctx) -> Outcome {
    let td = |g: &Graph| hyperbolicity(g).map(|h| h.two_delta).map_err(|e| e.to_string());
    let mut trees = 0;
    for g in (1..=6).flat_map(|n| enumerate_connected(n).expect("small n")) {
        if g.edge_count() + 1 == g.n() {
            ensure(
                td(&g)? == 0,
                format!("tree {} has nonzero hyperbolicity", to_graph6(&g)),
            )?;
            trees += 1;
        }
    }
    for g in [path(12), star(9)] {
        ensure(td(&g)? == 0, "large tree has nonzero hyperbolicity")?;
    }
    ensure(td(&cycle(4))? == 2, "C4 should have two_delta 2")?;
    for n in 1..=8 {
        ensure(td(&complete(n))? == 0, format!("K{n} should have two_delta 0"))?;
    }
    let sweep = zero_disagreements(&connected_upto(6), &["hyperbolic_dismantling", "hyperbolicity_bound"])?;
    Ok(format!("{trees} trees, C4, K1..K8 exact; {sweep}"))
}

fn criterion_11(_: &Ctx) -> Outcome {
    zero_disagreements(&connected_upto(5), &["strategy_soundness"])
}

// Independent re-statement of the certificate and decomposition
// definitions, used to decide whether a mutation really broke an object.

struct Plain {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl Plain {
    fn new(g: &Graph) -> Plain {
        let n = g.n();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in g.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Plain { n, adj }
    }

    /// Vertices within `r` steps of `x` avoiding `avoid`, as a membership
    /// vector; `None` means unbounded.
    fn reach(&self, x: usize, r: Option<u32>, avoid: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        if avoid.contains(&x) {
            return seen;
        }
        let mut dist = vec![0u32; self.n];
        seen[x] = true;
        let mut q = VecDeque::from([x]);
        while let Some(u) = q.pop_front() {
            if r.is_some_and(|r| dist[u] >= r) {
                continue;
            }
            for w in 0..self.n {
                if self.adj[u][w] && !seen[w] && !avoid.contains(&w) {
                    seen[w] = true;
                    dist[w] = dist[u] + 1;
                    q.push_back(w);
                }
            }
        }
        seen
    }

    fn closed(&self, v: usize) -> Vec<bool> {
        let mut c = self.adj[v].clone();
        c[v] = true;
        c
    }

    fn connected_within(&self, set: &[usize]) -> bool {
        let Some(&s) = set.first() else { return true };
        let mut seen = vec![s];
        let mut i = 0;
        while i < seen.len() {
            let u = seen[i];
            for &w in set {
                if self.adj[u][w] && !seen.contains(&w) {
                    seen.push(w);
                }
            }
            i += 1;
        }
        seen.len() == set.len()
    }

    /// Whether `set` is a block: biconnected (or a bridge, or the whole
    /// one-vertex graph) and no outside path joins two of its vertices.
    fn is_block(&self, set: &[usize]) -> bool {
        let inner = match set.len() {
            0 => false,
            1 => self.n == 1,
            2 => self.adj[set[0]][set[1]],
            _ => {
                self.connected_within(set)
                    && set.iter().all(|&v| {
                        let rest: Vec<usize> = set.iter().copied().filter(|&w| w != v).collect();
                        self.connected_within(&rest)
                    })
            }
        };
        if !inner {
            return false;
        }
        let outside: Vec<usize> = (0..self.n).filter(|v| !set.contains(v)).collect();
        let mut assigned = vec![false; self.n];
        for &s in &outside {
            if assigned[s] {
                continue;
            }
            let mut comp = vec![s];
            assigned[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                for &w in &outside {
                    if self.adj[u][w] && !assigned[w] {
                        assigned[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            let touched = set.iter().filter(|&&p| comp.iter().any(|&c| self.adj[c][p])).count();
            if touched > 1 {
                return false;
            }
        }
        true
    }
}

fn subset_within(a: &[bool], x: &[bool], b: &[bool]) -> bool {
    (0..a.len()).all(|i| !(a[i] && x[i]) || b[i])
}

fn certificate_is_valid(g: &Graph, c: &Certificate) -> bool {
    let p = Plain::new(g);
    let n = p.n;
    if c.order.len() != n || c.eliminators.len() != n {
        return false;
    }
    let mut sorted = c.order.clone();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return false;
    }
    let tail = if c.family == Family::Bipartite { n.min(2) } else { 1 };
    let params_ok = match (c.family, c.params) {
        (Family::Ss, Params::Speeds { .. }) | (Family::Mno, Params::None) | (Family::Bipartite, Params::None) => true,
        (Family::Bidismantle, Params::Phase { .. }) => true,
        (Family::StrongBidismantle, Params::Phase { k }) => k == 2,
        _ => false,
    };
    if !params_ok {
        return false;
    }
    if c.family == Family::Bipartite && (!g.is_bipartite() || (n >= 2 && !p.adj[c.order[n - 2]][c.order[n - 1]])) {
        return false;
    }
    let mut x = vec![true; n];
    for i in 0..n {
        let v = c.order[i];
        if i + tail >= n {
            if c.eliminators[i].is_some() {
                return false;
            }
            continue;
        }
        let Some(e) = c.eliminators[i] else { return false };
        let (ex, ey) = match e {
            Eliminator::Pair { x, y } => (x, y),
            Eliminator::Single { y } => (y, y),
        };
        if ex >= n || ey >= n || !x[ex] || !x[ey] || ex == v || ey == v {
            return false;
        }
        let ok = match (c.family, c.params) {
            (Family::Ss, Params::Speeds { s, s_prime }) => {
                subset_within(&p.reach(v, s.finite(), &[ey]), &x, &p.reach(ey, s_prime.finite(), &[]))
            }
            (Family::Mno, _) => {
                p.adj[v][ey]
                    && (0..n)
                        .filter(|&w| x[w] && p.closed(v)[w])
                        .all(|w| subset_within(&p.closed(w), &x, &p.closed(ey)))
            }
            (Family::Bipartite, _) => !p.adj[v][ey] && subset_within(&p.adj[v], &x, &p.closed(ey)),
            (family, Params::Phase { k }) => {
                let pair = ex == ey || p.adj[ex][ey];
                let dom = subset_within(&p.reach(v, Some(k), &[ex, ey]), &x, &p.closed(ey));
                let strong = family != Family::StrongBidismantle
                    || ex == ey
                    || subset_within(&p.reach(v, Some(2), &[ey]), &x, &p.reach(ex, Some(2), &[ey]));
                pair && dom && strong
            }
            _ => false,
        };
        if !ok {
            return false;
        }
        x[v] = false;
    }
    true
}

fn decomposition_is_valid(g: &Graph, d: &Decomposition) -> bool {
    let p = Plain::new(g);
    let n = p.n;
    let r = d.pieces.len();
    if r == 0 || d.big_brother.len() != r || d.small_brother.len() != r || d.parent.len() != r {
        return false;
    }
    if d.small_brother[0].is_some() || d.parent[0].is_some() {
        return false;
    }
    let mut covered = vec![false; n];
    for piece in &d.pieces {
        for &v in piece {
            if v >= n {
                return false;
            }
            covered[v] = true;
        }
    }
    if covered.contains(&false) {
        return false;
    }
    for (u, v) in g.edges() {
        if !d.pieces.iter().any(|q| q.contains(&u) && q.contains(&v)) {
            return false;
        }
    }
    let mut earlier = vec![false; n];
    for i in 0..r {
        let piece = &d.pieces[i];
        let y = d.big_brother[i];
        if y >= n || !piece.contains(&y) || !piece.iter().all(|&v| v == y || p.adj[y][v]) {
            return false;
        }
        if d.kind == DecompositionKind::BigBrother && !p.is_block(piece) {
            return false;
        }
        if i > 0 {
            let (Some(x), Some(parent)) = (d.small_brother[i], d.parent[i]) else {
                return false;
            };
            if x >= n || parent >= i {
                return false;
            }
            let mut meet: Vec<usize> = piece.iter().copied().filter(|&v| earlier[v]).collect();
            meet.sort_unstable();
            let ok = match d.kind {
                DecompositionKind::BigBrother => x == y && meet == [y],
                DecompositionKind::BigTwoBrother => {
                    meet == [x] || (x != y && p.adj[x][y] && meet == [x.min(y), x.max(y)])
                }
            };
            if !ok || meet.len() == piece.len() || !meet.iter().all(|v| d.pieces[parent].contains(v)) {
                return false;
            }
        }
        for &v in piece {
            earlier[v] = true;
        }
    }
    true
}

fn mutate_certificate(c: &Certificate, n: usize, rng: &mut ChaCha8Rng) -> Certificate {
    let mut m = c.clone();
    let len = m.order.len();
    let i = rng.gen_range(0..len);
    let j = rng.gen_range(0..len);
    match rng.gen_range(0..7) {
        0 => m.order.swap(i, j),
        1 => {
            let w = rng.gen_range(0..=n);
            m.eliminators[i] = Some(match m.eliminators[i] {
                Some(Eliminator::Pair { x, .. }) if rng.gen_bool(0.5) => Eliminator::Pair { x, y: w },
                Some(Eliminator::Pair { y, .. }) => Eliminator::Pair { x: w, y },
                _ => Eliminator::Single { y: w },
            });
        }
        2 => {
            m.eliminators[i] = match m.eliminators[i] {
                Some(_) => None,
                None => Some(Eliminator::Single { y: m.order[j] }),
            }
        }
        3 => m.order[i] = m.order[j],
        4 => {
            let v = m.order.remove(i);
            let e = m.eliminators.remove(i);
            m.order.insert(j, v);
            m.eliminators.insert(j, e);
        }
        5 => {
            m.params = match m.params {
                Params::Speeds { s, s_prime } => Params::Speeds {
                    s: s.saturating_add(ONE),
                    s_prime,
                },
                Params::Phase { k } => Params::Phase { k: k + 1 },
                Params::None => Params::Phase { k: 1 },
            }
        }
        _ => {
            m.order.reverse();
        }
    }
    m
}

fn mutate_decomposition(d: &Decomposition, n: usize, rng: &mut ChaCha8Rng) -> Decomposition {
    let mut m = d.clone();
    let r = m.len();
    let i = rng.gen_range(0..r);
    let j = rng.gen_range(0..r);
    let w = rng.gen_range(0..n);
    match rng.gen_range(0..9) {
        0 => m.big_brother[i] = w,
        1 => m.small_brother[i] = Some(w),
        2 => m.parent[i] = Some(rng.gen_range(0..r + 1)),
        3 => {
            if m.pieces[i].len() > 1 {
                let k = rng.gen_range(0..m.pieces[i].len());
                m.pieces[i].remove(k);
            }
        }
        4 => {
            if !m.pieces[i].contains(&w) {
                m.pieces[i].push(w);
                m.pieces[i].sort_unstable();
            }
        }
        5 => {
            m.pieces.swap(i, j);
            m.big_brother.swap(i, j);
            m.small_brother.swap(i, j);
            m.parent.swap(i, j);
        }
        6 => {
            m.pieces.push(m.pieces[i].clone());
            m.big_brother.push(m.big_brother[i]);
            m.small_brother
                .push(Some(m.small_brother[i].unwrap_or(m.big_brother[i])));
            m.parent.push(Some(m.parent[i].unwrap_or(0)));
        }
        7 => {
            if r > 1 {
                let k = 1 + i % (r - 1);
                m.pieces.remove(k);
                m.big_brother.remove(k);
                m.small_brother.remove(k);
                m.parent.remove(k);
            }
        }
        _ => {
            m.kind = match m.kind {
                DecompositionKind::BigBrother => DecompositionKind::BigTwoBrother,
                DecompositionKind::BigTwoBrother => DecompositionKind::BigBrother,
            }
        }
    }
    m
}

/// Verifier verdict, with structural errors counting as rejection.
fn accepted<E>(r: Result<bool, E>) -> bool {
    matches!(r, Ok(true))
}

type Pool = (Vec<(Graph, Certificate)>, Vec<(Graph, Decomposition)>);

fn mutation_pool() -> Result<Pool, String> {
    let mut certs = Vec::new();
    let mut decs = Vec::new();
    let corpus = (2..=5)
        .flat_map(|n| enumerate_connected(n).expect("small n"))
        .chain(copwin::corpus::sample_connected(7, 40, 3))
        .chain(
            fixtures::catalogue()
                .into_iter()
                .map(|(_, g)| g)
                .filter(|g| g.n() <= 12),
        );
    for g in corpus {
        let (cs, ds) = recognizer_outputs(&g)?;
        for c in cs {
            if !verify_certificate(&g, &c).map_err(|e| e.to_string())? {
                return Err(format!("recognizer output rejected on {}", to_graph6(&g)));
            }
            certs.push((g.clone(), c));
        }
        for d in ds {
            if !verify_decomposition(&g, &d).map_err(|e| e.to_string())? {
                return Err(format!("decomposition rejected on {}", to_graph6(&g)));
            }
            decs.push((g.clone(), d));
        }
    }
    Ok((certs, decs))
}

fn criterion_12(_: &Ctx) -> Outcome {
    let (certs, decs) = mutation_pool()?;
    let mut rng = ChaCha8Rng::seed_from_u64(12);

    let mut invalid = 0;
    let mut still_valid = 0;
    let mut attempts = 0;
    while invalid < MUTATIONS {
        attempts += 1;
        ensure(
            attempts < 200 * MUTATIONS,
            "could not generate enough invalid certificates",
        )?;
        let (g, c) = certs.choose(&mut rng).expect("nonempty pool");
        let m = mutate_certificate(c, g.n(), &mut rng);
        if &m == c {
            continue;
        }
        let verdict = accepted(verify_certificate(g, &m));
        if certificate_is_valid(g, &m) {
            still_valid += 1;
            ensure(
                verdict,
                format!("valid mutated certificate rejected on {}: {m:?}", to_graph6(g)),
            )?;
        } else {
            invalid += 1;
            ensure(
                !verdict,
                format!("invalid certificate accepted on {}: {m:?}", to_graph6(g)),
            )?;
        }
    }
    let cert_line = format!(
        "{} certificates verified, {invalid} invalid mutations rejected, {still_valid} valid mutations accepted",
        certs.len()
    );

    let (mut invalid_d, mut valid_d, mut attempts) = (0, 0, 0);
    while invalid_d < MUTATIONS {
        attempts += 1;
        ensure(
            attempts < 200 * MUTATIONS,
            "could not generate enough invalid decompositions",
        )?;
        let (g, d) = decs.choose(&mut rng).expect("nonempty pool");
        let m = mutate_decomposition(d, g.n(), &mut rng);
        if &m == d {
            continue;
        }
        let verdict = accepted(verify_decomposition(g, &m));
        if decomposition_is_valid(g, &m) {
            valid_d += 1;
            ensure(
                verdict,
                format!("valid mutated decomposition rejected on {}: {m:?}", to_graph6(g)),
            )?;
        } else {
            invalid_d += 1;
            ensure(
                !verdict,
                format!("invalid decomposition accepted on {}: {m:?}", to_graph6(g)),
            )?;
        }
    }
    let dec_line = format!(
        "{} decompositions verified, {invalid_d} invalid mutations rejected, {valid_d} valid mutations accepted",
        decs.len()
    );

    let mut round_trips = 0;
    for g in (1..=5)
        .flat_map(|n| enumerate_connected(n).expect("small n"))
        .chain(fixtures::catalogue().into_iter().map(|(_, g)| g))
    {
        let text = format_edge_list(&g);
        let back = parse_edge_list(&text).map_err(|e| e.to_string())?;
        ensure(
            back == g && format_edge_list(&back) == text,
            format!("edge-list round trip failed on {text:?}"),
        )?;
        ensure(
            parse_graph6(&to_graph6(&g)).map_err(|e| e.to_string())? == g,
            "graph6 round trip failed",
        )?;
        round_trips += 1;
    }

    let codes = exit_codes()?;
    Ok(format!(
        "{cert_line}; {dec_line}; {round_trips} round trips; exit codes {codes}"
    ))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("copwin-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let p = dir.join(name);
    std::fs::write(&p, contents).expect("temp file");
    p
}

fn exit_codes() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_copwin");
    let status = |args: &[&str]| -> Result<i32, String> {
        let out = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        out.status.code().ok_or_else(|| "terminated by a signal".to_string())
    };
    let c4 = scratch("c4.txt", &format_edge_list(&cycle(4)));
    let split = scratch("split.txt", "4 2\n0 1\n2 3\n");
    let garbage = scratch("garbage.txt", "3 2\n0 1\nnot an edge\n");
    let missing = std::env::temp_dir().join("copwin-acceptance-does-not-exist.txt");
    let cases: [(&str, Vec<&str>, i32); 7] = [
        (
            "passing crosscheck",
            vec!["crosscheck", "--max-n", "4", "--checks", "visible_vs_dismantling"],
            0,
        ),
        (
            "injected broken solver",
            vec![
                "crosscheck",
                "--max-n",
                "4",
                "--checks",
                "visible_vs_dismantling",
                "--inject-broken-solver",
            ],
            1,
        ),
        (
            "unknown check",
            vec!["crosscheck", "--max-n", "3", "--checks", "bogus"],
            2,
        ),
        ("unknown flag", vec!["crosscheck", "--frobnicate"], 2),
        (
            "missing file",
            vec!["hyperbolicity", missing.to_str().expect("utf8")],
            3,
        ),
        (
            "disconnected graph",
            vec!["hyperbolicity", split.to_str().expect("utf8")],
            3,
        ),
        ("parse error", vec!["hyperbolicity", garbage.to_str().expect("utf8")], 3),
    ];
    for (what, args, expected) in &cases {
        let got = status(args)?;
        ensure(got == *expected, format!("{what}: exit {got}, expected {expected}"))?;
    }
    let ok = status(&["solve", "capture", "--radius", "1", c4.to_str().expect("utf8")])?;
    ensure(ok == 0, format!("solve exit {ok}"))?;
    Ok("0/1/2/3 as specified".into())
}

fn main() {
    let ctx = Ctx {
        slow: std::env::args().any(|a| a == "--slow") || std::env::var("COPWIN_SLOW").is_ok_and(|v| v == "1"),
    };
    let criteria: [Criterion; 12] = [
        (1, "visible game equivalence with (s,s')-dismantling", criterion_1),
        (2, "speed 2 cop win equals dually chordal", criterion_2),
        (3, "speeds 3, 4 and unbounded equal big brother", criterion_3),
        (4, "sun fixture memberships", criterion_4),
        (5, "separation family gk", criterion_5),
        (6, "witness necessary and sufficient conditions", criterion_6),
        (7, "big two-brother and witness games", criterion_7),
        (8, "fast robber witness games equal big brother", criterion_8),
        (9, "bipartite capture radius one", criterion_9),
        (10, "hyperbolicity values, dismantling and bound", criterion_10),
        (11, "strategy soundness against the optimal robber", criterion_11),
        (12, "verifiers, mutations, round trips, exit codes", criterion_12),
    ];
    println!(
        "acceptance: corpus n <= {} ({})",
        ctx.max_n(),
        if ctx.slow { "slow" } else { "default" }
    );
    let mut failed = 0;
    for (id, title, run) in criteria {
        let start = Instant::now();
        let result = run(&ctx);
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {id:>2} PASS [{secs:.1}s] {title}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL [{secs:.1}s] {title}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
