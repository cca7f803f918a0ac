//! The catalogue of theorem checks run by [`super::crosscheck`].

use std::fmt::Display;

use super::crosscheck::{Check, CheckVerdict};
use crate::decomposition::{big_brother, big_two_brother, verify_decomposition};
use crate::dismantling::{
    bidismantle, bipartite_dismantle, mno_order, ss_dismantle, ss_dismantle_local, strong_bidismantle,
    verify_certificate, Certificate,
};
use crate::game::{solve_capture, solve_visible, solve_witness, GameSpec, GameValue};
use crate::graph::{Graph, Radius};
use crate::hyperbolicity::{check_hyperbolic_dismantling, hyperbolicity};
use crate::strategy::{
    bb_strategy, btb_witness_strategy, mark_procedure, mark_strategy, shadow_strategy, simulate, verify_strategy,
    OptimalRobber, RobberPolicy, StrategyTable,
};

const INF: Radius = Radius::Unbounded;

fn fin(r: u32) -> Radius {
    Radius::Finite(r)
}

/// Speed pairs `(s, s')` swept by the visible-game equivalence.
pub fn speed_pairs() -> [(Radius, Radius); 7] {
    [
        (fin(1), fin(1)),
        (fin(2), fin(1)),
        (fin(3), fin(1)),
        (fin(2), fin(2)),
        (fin(3), fin(2)),
        (fin(4), fin(2)),
        (INF, fin(1)),
    ]
}

type CheckResult = Result<CheckVerdict, String>;

/// A named check with a one-line statement of what it asserts.
pub struct TheoremCheck {
    pub name: &'static str,
    pub statement: &'static str,
    run: fn(&Graph) -> CheckResult,
}

impl Check for TheoremCheck {
    fn name(&self) -> &str {
        self.name
    }

    fn run(&self, g: &Graph) -> CheckVerdict {
        (self.run)(g).unwrap_or_else(|e| CheckVerdict::Disagree(format!("error: {e}")))
    }
}

fn err<E: Display>(e: E) -> String {
    e.to_string()
}

/// Collects failures; agrees when there are none.
#[derive(Default)]
struct Findings(Vec<String>);

impl Findings {
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }

    fn verdict(self) -> CheckVerdict {
        if self.0.is_empty() {
            CheckVerdict::Agree
        } else {
            CheckVerdict::Disagree(self.0.join("; "))
        }
    }
}

fn visible(g: &Graph, s: Radius, sp: Radius) -> Result<bool, String> {
    Ok(solve_visible(g, s, sp).map_err(err)?.is_cop_win())
}

fn witness(g: &Graph, k: u32, s: Radius) -> Result<bool, String> {
    Ok(solve_witness(g, k, s).map_err(err)?.is_cop_win())
}

fn ss(g: &Graph, s: Radius, sp: Radius) -> Result<bool, String> {
    Ok(ss_dismantle(g, s, sp).map_err(err)?.is_some())
}

fn visible_vs_dismantling(g: &Graph) -> CheckResult {
    let mut f = Findings::default();
    for (s, sp) in speed_pairs() {
        let (a, b) = (ss(g, s, sp)?, visible(g, s, sp)?);
        f.require(a == b, || format!("({s},{sp}): dismantlable={a} cop_win={b}"));
    }
    Ok(f.verdict())
}

fn local_vs_global(g: &Graph) -> CheckResult {
    let mut f = Findings::default();
    for s in [fin(1), fin(2), fin(3), INF] {
        let a = ss_dismantle_local(g, s).map_err(err)?.is_some();
        let b = ss(g, s, fin(1))?;
        f.require(a == b, || format!("s={s}: local={a} global={b}"));
    }
    Ok(f.verdict())
}

fn dually_chordal(g: &Graph) -> CheckResult {
    let m = mno_order(g).map_err(err)?.is_some();
    let d = ss(g, fin(2), fin(1))?;
    let v = visible(g, fin(2), fin(1))?;
    let mut f = Findings::default();
    f.require(m == d && d == v, || format!("mno={m} ss(2,1)={d} cop_win(2,1)={v}"));
    Ok(f.verdict())
}

fn big_brother_speeds(g: &Graph) -> CheckResult {
    let bb = big_brother(g).map_err(err)?.is_some();
    let v3 = visible(g, fin(3), fin(1))?;
    let v4 = visible(g, fin(4), fin(1))?;
    let vi = visible(g, INF, fin(1))?;
    let mut f = Findings::default();
    f.require(bb == v3 && v3 == v4 && v4 == vi, || {
        format!("big_brother={bb} cop_win(3,1)={v3} cop_win(4,1)={v4} cop_win(inf,1)={vi}")
    });
    Ok(f.verdict())
}

fn witness_two_necessary(g: &Graph) -> CheckResult {
    if !witness(g, 2, fin(1))? {
        return Ok(CheckVerdict::NotApplicable);
    }
    let b = bidismantle(g, 2).map_err(err)?.is_some();
    let mut f = Findings::default();
    f.require(b, || "witness(2) cop win but not 2-bidismantlable".into());
    Ok(f.verdict())
}

fn strong_bidismantle_sufficient(g: &Graph) -> CheckResult {
    if strong_bidismantle(g).map_err(err)?.is_none() {
        return Ok(CheckVerdict::NotApplicable);
    }
    let mut f = Findings::default();
    f.require(witness(g, 2, fin(1))?, || {
        "strongly bidismantlable but witness(2) robber win".into()
    });
    Ok(f.verdict())
}

fn odd_bidismantle_sufficient(g: &Graph) -> CheckResult {
    let mut f = Findings::default();
    let mut applied = false;
    for k in [3, 5] {
        if bidismantle(g, k).map_err(err)?.is_some() {
            applied = true;
            f.require(witness(g, k, fin(1))?, || {
                format!("{k}-bidismantlable but witness({k}) robber win")
            });
        }
    }
    Ok(if applied {
        f.verdict()
    } else {
        CheckVerdict::NotApplicable
    })
}

fn big_two_brother_witness(g: &Graph) -> CheckResult {
    let mut f = Findings::default();
    if big_two_brother(g).map_err(err)?.is_some() {
        for k in 1..=5 {
            f.require(witness(g, k, fin(1))?, || {
                format!("big two-brother but witness({k}) robber win")
            });
        }
    } else {
        let k = g.n() as u32;
        let b = bidismantle(g, k).map_err(err)?.is_some();
        f.require(!b, || {
            format!("no big two-brother decomposition but {k}-bidismantlable")
        });
    }
    Ok(f.verdict())
}

fn fast_robber_witness(g: &Graph) -> CheckResult {
    let bb = big_brother(g).map_err(err)?.is_some();
    let w22 = witness(g, 2, fin(2))?;
    let w13 = witness(g, 1, fin(3))?;
    let mut f = Findings::default();
    f.require(bb == w22 && bb == w13, || {
        format!("big_brother={bb} witness(k=2,s=2)={w22} witness(k=1,s=3)={w13}")
    });
    Ok(f.verdict())
}

fn bipartite_capture(g: &Graph) -> CheckResult {
    if !g.is_bipartite() {
        return Ok(CheckVerdict::NotApplicable);
    }
    let d = bipartite_dismantle(g).map_err(err)?.is_some();
    let c = solve_capture(g, 1).map_err(err)?.is_cop_win();
    let mut f = Findings::default();
    f.require(d == c, || format!("bipartite_dismantlable={d} capture(1) cop_win={c}"));
    Ok(f.verdict())
}

fn diameter_two_capture(g: &Graph) -> CheckResult {
    if g.diameter() != Some(2) {
        return Ok(CheckVerdict::NotApplicable);
    }
    let mut f = Findings::default();
    f.require(solve_capture(g, 1).map_err(err)?.is_cop_win(), || {
        "diameter two but capture(1) robber win".into()
    });
    Ok(f.verdict())
}

fn hyperbolic_dismantling(g: &Graph) -> CheckResult {
    let h = hyperbolicity(g).map_err(err)?;
    let r = h.two_delta.max(1);
    let ok = check_hyperbolic_dismantling(g, r).map_err(err)?.is_some();
    let mut f = Findings::default();
    f.require(ok, || {
        format!(
            "2delta={} but not ({},{})-dismantlable",
            h.two_delta,
            2 * r,
            r + h.two_delta
        )
    });
    Ok(f.verdict())
}

fn hyperbolicity_bound(g: &Graph) -> CheckResult {
    let two_delta = hyperbolicity(g).map_err(err)?.two_delta;
    let mut f = Findings::default();
    let mut applied = false;
    for (s, sp) in [(2, 1), (4, 2)] {
        if visible(g, fin(s), fin(sp))? {
            applied = true;
            f.require(two_delta <= 2 * (s - 1), || {
                format!("cop win at ({s},{sp}) with 2delta={two_delta} > {}", 2 * (s - 1))
            });
        }
    }
    Ok(if applied {
        f.verdict()
    } else {
        CheckVerdict::NotApplicable
    })
}

fn capture_zero_is_visible(g: &Graph) -> CheckResult {
    let a = solve_capture(g, 0).map_err(err)?.is_cop_win();
    let b = visible(g, fin(1), fin(1))?;
    let mut f = Findings::default();
    f.require(a == b, || format!("capture(0)={a} visible(1,1)={b}"));
    Ok(f.verdict())
}

fn witness_one_is_visible(g: &Graph) -> CheckResult {
    let mut f = Findings::default();
    for s in [fin(1), fin(2), fin(3), INF] {
        let (a, b) = (witness(g, 1, s)?, visible(g, s, fin(1))?);
        f.require(a == b, || format!("s={s}: witness(1)={a} visible(s,1)={b}"));
    }
    Ok(f.verdict())
}

fn monotonicity(g: &Graph) -> CheckResult {
    let mut f = Findings::default();
    for s in [fin(1), fin(2), fin(3), fin(4), INF] {
        let mut prev = visible(g, s, fin(1))?;
        for sp in 2..=3 {
            let cur = visible(g, s, fin(sp))?;
            f.require(!prev || cur, || {
                format!("visible({s},{}) cop win but ({s},{sp}) not", sp - 1)
            });
            prev = cur;
        }
    }
    let mut prev = witness(g, 1, fin(1))?;
    for k in 2..=5 {
        let cur = witness(g, k, fin(1))?;
        f.require(prev || !cur, || {
            format!("witness({k}) cop win but witness({}) not", k - 1)
        });
        prev = cur;
    }
    Ok(f.verdict())
}

fn mark_sufficient(g: &Graph) -> CheckResult {
    let all: Vec<usize> = (0..g.n()).collect();
    let mut f = Findings::default();
    let mut applied = false;
    for k in [3, 5] {
        if mark_procedure(g, &all, k).map_err(err)?.all_marked() {
            applied = true;
            f.require(witness(g, k, fin(1))?, || {
                format!("all marked for k={k} but witness({k}) robber win")
            });
        }
    }
    Ok(if applied {
        f.verdict()
    } else {
        CheckVerdict::NotApplicable
    })
}

/// Optimal robber responses from a chosen start.
struct StartAt<'a> {
    start: usize,
    inner: OptimalRobber<'a>,
}

impl RobberPolicy for StartAt<'_> {
    fn start(&mut self, _g: &Graph, _spec: &GameSpec, _cop: usize) -> usize {
        self.start
    }

    fn respond(&mut self, g: &Graph, spec: &GameSpec, robber: usize, plan: &[usize]) -> Vec<usize> {
        self.inner.respond(g, spec, robber, plan)
    }
}

/// Checks a table exhaustively and by simulation against the solver-optimal
/// robber from every start.
fn sound(g: &Graph, label: &str, table: &StrategyTable, value: &GameValue, f: &mut Findings) -> Result<(), String> {
    f.require(verify_strategy(g, table).map_err(err)?, || {
        format!("{label}: not winning")
    });
    let spec = table.spec;
    let mut robbers: Vec<Box<dyn RobberPolicy>> = vec![Box::new(OptimalRobber::new(value))];
    for r in (0..g.n()).filter(|&r| r != table.start) {
        robbers.push(Box::new(StartAt {
            start: r,
            inner: OptimalRobber::new(value),
        }));
    }
    for robber in robbers.iter_mut() {
        let trace = simulate(g, &spec, table, robber.as_mut(), None).map_err(err)?;
        let start = trace.robber_positions[0];
        f.require(trace.captured(), || {
            format!("{label}: robber from {start} survives the cap")
        });
    }
    Ok(())
}

fn strategy_soundness(g: &Graph) -> CheckResult {
    let mut f = Findings::default();
    let mut applied = false;
    for (s, sp) in speed_pairs() {
        if let Some(cert) = ss_dismantle(g, s, sp).map_err(err)? {
            applied = true;
            let table = shadow_strategy(g, &cert).map_err(err)?;
            let value = solve_visible(g, s, sp).map_err(err)?;
            sound(g, &format!("shadow({s},{sp})"), &table, &value, &mut f)?;
        }
    }
    let all: Vec<usize> = (0..g.n()).collect();
    for k in [3, 5] {
        let marks = mark_procedure(g, &all, k).map_err(err)?;
        if marks.all_marked() {
            applied = true;
            let table = mark_strategy(g, &marks).map_err(err)?;
            let value = solve_witness(g, k, fin(1)).map_err(err)?;
            sound(g, &format!("mark(k={k})"), &table, &value, &mut f)?;
        }
    }
    if let Some(d) = big_brother(g).map_err(err)? {
        applied = true;
        for s in [fin(1), fin(2), fin(3), INF] {
            let table = bb_strategy(g, &d, s).map_err(err)?;
            let value = solve_visible(g, s, fin(1)).map_err(err)?;
            sound(g, &format!("big_brother(s={s})"), &table, &value, &mut f)?;
        }
    }
    if let Some(d) = big_two_brother(g).map_err(err)? {
        applied = true;
        for k in 1..=5 {
            let table = btb_witness_strategy(g, &d, k).map_err(err)?;
            let value = solve_witness(g, k, fin(1)).map_err(err)?;
            sound(g, &format!("big_two_brother(k={k})"), &table, &value, &mut f)?;
        }
    }
    Ok(if applied {
        f.verdict()
    } else {
        CheckVerdict::NotApplicable
    })
}

/// Every certificate and decomposition the recognizers produce.
pub fn recognizer_outputs(g: &Graph) -> Result<(Vec<Certificate>, Vec<crate::decomposition::Decomposition>), String> {
    let mut certs = Vec::new();
    for (s, sp) in speed_pairs() {
        certs.extend(ss_dismantle(g, s, sp).map_err(err)?);
    }
    for s in [fin(1), fin(2), fin(3), INF] {
        certs.extend(ss_dismantle_local(g, s).map_err(err)?);
    }
    certs.extend(mno_order(g).map_err(err)?);
    if g.is_bipartite() {
        certs.extend(bipartite_dismantle(g).map_err(err)?);
    }
    for k in 1..=5 {
        certs.extend(bidismantle(g, k).map_err(err)?);
    }
    certs.extend(strong_bidismantle(g).map_err(err)?);
    let mut decs = Vec::new();
    decs.extend(big_brother(g).map_err(err)?);
    decs.extend(big_two_brother(g).map_err(err)?);
    Ok((certs, decs))
}

fn certificates_verify(g: &Graph) -> CheckResult {
    let (certs, decs) = recognizer_outputs(g)?;
    let mut f = Findings::default();
    for c in &certs {
        f.require(verify_certificate(g, c).map_err(err)?, || {
            format!("{:?} {:?} rejected", c.family, c.params)
        });
    }
    for d in &decs {
        f.require(verify_decomposition(g, d).map_err(err)?, || {
            format!("{:?} rejected", d.kind)
        });
    }
    Ok(f.verdict())
}

/// All named checks, in catalogue order.
pub fn catalog() -> Vec<TheoremCheck> {
    macro_rules! check {
        ($name:literal, $statement:literal, $run:ident) => {
            TheoremCheck {
                name: $name,
                statement: $statement,
                run: $run,
            }
        };
    }
    vec![
        check!(
            "visible_vs_dismantling",
            "(s,s')-dismantlable iff cop win in the visible game, for every swept speed pair",
            visible_vs_dismantling
        ),
        check!(
            "local_vs_global",
            "dismantling with cop speed 1 agrees when balls are taken in the shrinking subgraph",
            local_vs_global
        ),
        check!(
            "dually_chordal",
            "maximum neighbourhood order iff (2,1)-dismantlable iff cop win at (2,1)",
            dually_chordal
        ),
        check!(
            "big_brother_speeds",
            "big brother iff cop win at (3,1), (4,1) and (inf,1)",
            big_brother_speeds
        ),
        check!(
            "witness_two_necessary",
            "cop win with witness phase 2 implies 2-bidismantlable",
            witness_two_necessary
        ),
        check!(
            "strong_bidismantle_sufficient",
            "strongly 2-bidismantlable implies cop win with witness phase 2",
            strong_bidismantle_sufficient
        ),
        check!(
            "odd_bidismantle_sufficient",
            "k-bidismantlable implies cop win with witness phase k, for k in {3,5}",
            odd_bidismantle_sufficient
        ),
        check!(
            "big_two_brother_witness",
            "big two-brother implies witness cop win for k in 1..=5; otherwise not n-bidismantlable",
            big_two_brother_witness
        ),
        check!(
            "fast_robber_witness",
            "witness cop win at (k=2,s=2) and at (k=1,s=3) iff big brother",
            fast_robber_witness
        ),
        check!(
            "bipartite_capture",
            "on bipartite graphs, bipartite dismantlable iff cop win with capture radius 1",
            bipartite_capture
        ),
        check!(
            "diameter_two_capture",
            "diameter two implies cop win with capture radius 1",
            diameter_two_capture
        ),
        check!(
            "hyperbolic_dismantling",
            "(2r, r+2delta)-dismantlable at r = max(1, 2delta)",
            hyperbolic_dismantling
        ),
        check!(
            "hyperbolicity_bound",
            "cop win at (2,1) or (4,2) implies 2delta <= 2(s-1)",
            hyperbolicity_bound
        ),
        check!(
            "capture_zero_is_visible",
            "capture radius 0 agrees with the visible game at (1,1)",
            capture_zero_is_visible
        ),
        check!(
            "witness_one_is_visible",
            "witness phase 1 agrees with the visible game at (s,1)",
            witness_one_is_visible
        ),
        check!(
            "monotonicity",
            "a faster cop never loses a won game; a shorter witness phase never loses a won game",
            monotonicity
        ),
        check!(
            "mark_sufficient",
            "a fully marked table for odd k implies witness cop win",
            mark_sufficient
        ),
        check!(
            "strategy_soundness",
            "shadow, mark, big brother and big two-brother strategies win exhaustively and in simulation",
            strategy_soundness
        ),
        check!(
            "certificates_verify",
            "every recognizer output passes its verifier",
            certificates_verify
        ),
    ]
}

pub fn by_name(name: &str) -> Option<TheoremCheck> {
    catalog().into_iter().find(|c| c.name == name)
}
