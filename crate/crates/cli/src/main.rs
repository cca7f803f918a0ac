//! `copwin` command-line front end.
//!
//! Results go to stdout as JSON (a short summary with `--pretty`), errors to
//! stderr. Exit status: 0 success, 1 crosscheck disagreement, 2 usage or
//! parameter error, 3 input error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use copwin::corpus::checks::{self, TheoremCheck};
use copwin::corpus::{crosscheck, fixture, Check, CheckVerdict, FixtureId, Generator};
use copwin::decomposition::{big_brother, big_two_brother, Decomposition, DecompositionError};
use copwin::dismantling::{
    bidismantle, bipartite_dismantle, mno_order, ss_dismantle, ss_dismantle_local, strong_bidismantle, Certificate,
    DismantleError,
};
use copwin::format::{format_edge_list, parse_any, FormatError};
use copwin::game::{extract_optimal_policies, GameError, GameSpec, GameValue};
use copwin::graph::{Graph, GraphError, Radius};
use copwin::hyperbolicity::{check_hyperbolic_dismantling, hyperbolicity, HyperbolicityError};
use copwin::strategy::{
    bb_strategy, btb_witness_strategy, mark_procedure, mark_strategy, shadow_strategy, simulate, solve, OptimalRobber,
    RandomRobber, RobberPolicy, StrategyError, StrategyTable,
};

const EXIT_DISAGREEMENT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Graph(g) => g.into(),
            GameError::TooLarge { .. } => CliError::Input(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<DismantleError> for CliError {
    fn from(e: DismantleError) -> Self {
        match e {
            DismantleError::Graph(g) => g.into(),
            DismantleError::Malformed(_) => CliError::Input(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<DecompositionError> for CliError {
    fn from(e: DecompositionError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<HyperbolicityError> for CliError {
    fn from(e: HyperbolicityError) -> Self {
        match e {
            HyperbolicityError::Graph(g) => g.into(),
            HyperbolicityError::Dismantle(d) => d.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<StrategyError> for CliError {
    fn from(e: StrategyError) -> Self {
        match e {
            StrategyError::Game(g) => g.into(),
            StrategyError::Dismantle(d) => d.into(),
            StrategyError::Decomposition(d) => d.into(),
            StrategyError::TooLarge { .. } => CliError::Input(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "copwin",
    version,
    about = "Cops and robber games: solvers, recognizers and crosschecks"
)]
struct Cli {
    /// Print a short human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Edge-list or graph6 file; `-` reads stdin.
    graph: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum GameKind {
    Visible,
    Witness,
    Capture,
}

#[derive(Args)]
struct GameArgs {
    /// Robber speed (`inf` allowed).
    #[arg(long, default_value = "1")]
    s: Radius,
    /// Cop speed in the visible game (`inf` allowed).
    #[arg(long = "sprime", default_value = "1")]
    s_prime: Radius,
    /// Witness phase length.
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Capture radius.
    #[arg(long, default_value_t = 1)]
    radius: u32,
}

impl GameArgs {
    fn spec(&self, kind: GameKind) -> GameSpec {
        match kind {
            GameKind::Visible => GameSpec::visible(self.s, self.s_prime),
            GameKind::Witness => GameSpec::witness(self.k, self.s),
            GameKind::Capture => GameSpec::capture(self.radius),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Ss,
    SsLocal,
    Mno,
    Bipartite,
    Bi,
    Strongbi,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Blocks,
    Bb,
    Btb,
}

#[derive(Clone, Copy, ValueEnum)]
enum CopArg {
    Shadow,
    Mark,
    Bb,
    Btb,
    Optimal,
}

#[derive(Subcommand)]
enum Command {
    /// (s,s')-dismantling verdict and certificate.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "1")]
        s: Radius,
        #[arg(long = "sprime", default_value = "1")]
        s_prime: Radius,
    },
    /// Solve a game exactly.
    Solve {
        game: GameKind,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        params: GameArgs,
        /// Include the label of every configuration.
        #[arg(long)]
        dump_value: bool,
    },
    /// Run a dismantling recognizer.
    Dismantle {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        family: FamilyArg,
        #[arg(long, default_value = "1")]
        s: Radius,
        #[arg(long = "sprime", default_value = "1")]
        s_prime: Radius,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Block structure or brother decompositions.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        kind: KindArg,
    },
    /// Exact hyperbolicity by the four-point condition.
    Hyperbolicity {
        #[command(flatten)]
        input: Input,
        /// Also test (2r, r+2delta)-dismantlability at this r.
        #[arg(long)]
        check_r: Option<u32>,
    },
    /// Play a strategy against a robber.
    Simulate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        cop: CopArg,
        /// `optimal` or `random:SEED`.
        #[arg(long, default_value = "optimal")]
        robber: String,
        /// Step cap; defaults to 4 n^2 k.
        #[arg(long)]
        cap: Option<usize>,
        /// Game for the `optimal` cop.
        #[arg(long, default_value = "visible")]
        game: GameKind,
        #[command(flatten)]
        params: GameArgs,
    },
    /// Run theorem checks over a corpus.
    Crosscheck {
        /// Enumerate every connected graph up to this order.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Sample this many random connected graphs instead.
        #[arg(long)]
        sample: Option<usize>,
        /// Order of sampled graphs (defaults to max-n, else 8).
        #[arg(long)]
        sample_n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only bipartite graphs when enumerating.
        #[arg(long)]
        bipartite: bool,
        /// Read the corpus from a graph6 file instead.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Use the built-in fixtures.
        #[arg(long)]
        fixtures: bool,
        /// List the available checks and exit.
        #[arg(long)]
        list: bool,
        /// Add a check backed by a solver that always answers "robber".
        #[arg(long, hide = true)]
        inject_broken_solver: bool,
    },
    /// Print a named fixture as an edge list, e.g. `sun3` or `gk(2)`.
    Fixture { id: String },
}

fn read_text(path: &PathBuf) -> Result<String, CliError> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn read_graph(input: &Input) -> Result<Graph, CliError> {
    let mut graphs = parse_any(&read_text(&input.graph)?)?;
    if graphs.len() != 1 {
        return Err(CliError::Input(format!("expected one graph, found {}", graphs.len())));
    }
    let g = graphs.pop().expect("one graph");
    g.require_connected()?;
    Ok(g)
}

fn schema(kind: &str) -> String {
    format!("copwin/{kind}/1")
}

fn with_schema<T: Serialize>(kind: &str, body: &T) -> Value {
    let mut v = serde_json::to_value(body).expect("serializable");
    match v.as_object_mut() {
        Some(map) => {
            map.insert("schema".into(), json!(schema(kind)));
            v
        }
        None => json!({ "schema": schema(kind), "value": v }),
    }
}

struct Output {
    json: Value,
    summary: String,
    code: u8,
}

impl Output {
    fn ok(json: Value, summary: String) -> Output {
        Output { json, summary, code: 0 }
    }
}

fn certificate_output(cert: Option<Certificate>, what: &str) -> Output {
    match cert {
        Some(c) => {
            let summary = format!("{what}: order {:?}", c.order);
            Output::ok(with_schema("certificate", &c), summary)
        }
        None => Output::ok(json!("none"), format!("{what}: none")),
    }
}

fn value_json(value: &GameValue, dump: bool) -> Value {
    let mut out = json!({
        "schema": schema("game_value"),
        "spec": value.spec,
        "n": value.n(),
        "verdict": value.verdict,
        "best_start": value.best_start,
    });
    if dump {
        let n = value.n();
        let labels: Vec<Vec<Option<u32>>> = (0..n).map(|c| (0..n).map(|r| value.label(c, r)).collect()).collect();
        out["labels"] = json!(labels);
    }
    out
}

fn decomposition_output(d: Option<Decomposition>, what: &str) -> Output {
    match d {
        Some(d) => {
            let summary = format!("{what}: {} pieces, root {:?}", d.len(), d.pieces[0]);
            Output::ok(with_schema("decomposition", &d), summary)
        }
        None => Output::ok(json!("none"), format!("{what}: none")),
    }
}

fn cop_table(g: &Graph, cop: CopArg, game: GameKind, p: &GameArgs) -> Result<(StrategyTable, GameSpec), CliError> {
    let unavailable = |what: &str| CliError::Usage(format!("{what}; strategy unavailable for this graph"));
    let table = match cop {
        CopArg::Shadow => {
            let cert = ss_dismantle(g, p.s, p.s_prime)?
                .ok_or_else(|| unavailable(&format!("not ({},{})-dismantlable", p.s, p.s_prime)))?;
            shadow_strategy(g, &cert)?
        }
        CopArg::Mark => {
            let all: Vec<usize> = (0..g.n()).collect();
            mark_strategy(g, &mark_procedure(g, &all, p.k)?)?
        }
        CopArg::Bb => {
            let d = big_brother(g)?.ok_or_else(|| unavailable("no big brother decomposition"))?;
            bb_strategy(g, &d, p.s)?
        }
        CopArg::Btb => {
            let d = big_two_brother(g)?.ok_or_else(|| unavailable("no big two-brother decomposition"))?;
            btb_witness_strategy(g, &d, p.k)?
        }
        CopArg::Optimal => {
            let value = solve(g, &p.spec(game))?;
            if !value.is_cop_win() {
                return Err(unavailable("the robber wins this game"));
            }
            extract_optimal_policies(g, &value)?.0
        }
    };
    let spec = table.spec;
    Ok((table, spec))
}

/// Harness self-test: compares dismantlability with a solver that always
/// declares the robber the winner.
struct BrokenSolver;

impl Check for BrokenSolver {
    fn name(&self) -> &str {
        "broken_solver"
    }

    fn run(&self, g: &Graph) -> CheckVerdict {
        match ss_dismantle(g, Radius::ONE, Radius::ONE) {
            Ok(Some(_)) => CheckVerdict::Disagree("dismantlable, but the solver says robber".into()),
            Ok(None) => CheckVerdict::Agree,
            Err(e) => CheckVerdict::Disagree(format!("error: {e}")),
        }
    }
}

fn selected_checks(list: &str) -> Result<Vec<TheoremCheck>, CliError> {
    if list == "all" {
        return Ok(checks::catalog());
    }
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| checks::by_name(name).ok_or_else(|| CliError::Usage(format!("unknown check {name:?}"))))
        .collect()
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Classify { input, s, s_prime } => {
            let g = read_graph(input)?;
            let cert = ss_dismantle(&g, *s, *s_prime)?;
            let dismantlable = cert.is_some();
            let summary = format!("({s},{s_prime})-dismantlable: {dismantlable}");
            Ok(Output::ok(
                json!({
                    "schema": schema("classification"),
                    "s": s,
                    "s_prime": s_prime,
                    "dismantlable": dismantlable,
                    "certificate": cert,
                }),
                summary,
            ))
        }
        Command::Solve {
            game,
            input,
            params,
            dump_value,
        } => {
            let g = read_graph(input)?;
            let value = solve(&g, &params.spec(*game))?;
            let summary = format!(
                "{}: {} (best start {})",
                value.spec,
                value.verdict,
                value.best_start.map_or("none".to_string(), |c| c.to_string())
            );
            Ok(Output::ok(value_json(&value, *dump_value), summary))
        }
        Command::Dismantle {
            input,
            family,
            s,
            s_prime,
            k,
        } => {
            let g = read_graph(input)?;
            Ok(match family {
                FamilyArg::Ss => certificate_output(ss_dismantle(&g, *s, *s_prime)?, "ss"),
                FamilyArg::SsLocal => certificate_output(ss_dismantle_local(&g, *s)?, "ss-local"),
                FamilyArg::Mno => certificate_output(mno_order(&g)?, "mno"),
                FamilyArg::Bipartite => certificate_output(bipartite_dismantle(&g)?, "bipartite"),
                FamilyArg::Bi => certificate_output(bidismantle(&g, *k)?, "bi"),
                FamilyArg::Strongbi => certificate_output(strong_bidismantle(&g)?, "strongbi"),
            })
        }
        Command::Decompose { input, kind } => {
            let g = read_graph(input)?;
            Ok(match kind {
                KindArg::Blocks => {
                    let t = g.blocks_and_articulations()?;
                    let articulations: Vec<usize> = (0..g.n()).filter(|&v| t.is_articulation(v)).collect();
                    let summary = format!("{} blocks, articulations {articulations:?}", t.blocks.len());
                    Output::ok(
                        json!({
                            "schema": schema("blocks"),
                            "blocks": t.blocks,
                            "articulations": articulations,
                            "leaf_blocks": t.leaf_blocks(),
                        }),
                        summary,
                    )
                }
                KindArg::Bb => decomposition_output(big_brother(&g)?, "big brother"),
                KindArg::Btb => decomposition_output(big_two_brother(&g)?, "big two-brother"),
            })
        }
        Command::Hyperbolicity { input, check_r } => {
            let g = read_graph(input)?;
            let h = hyperbolicity(&g)?;
            let mut out = with_schema("hyperbolicity", &h);
            let mut summary = format!("two_delta {} witness {:?}", h.two_delta, h.witness);
            if let Some(r) = check_r {
                let cert = check_hyperbolic_dismantling(&g, *r)?;
                summary.push_str(&format!("; (2r, r+2delta)-dismantlable at r={r}: {}", cert.is_some()));
                out["dismantling"] = json!({ "r": r, "dismantlable": cert.is_some(), "certificate": cert });
            }
            Ok(Output::ok(out, summary))
        }
        Command::Simulate {
            input,
            cop,
            robber,
            cap,
            game,
            params,
        } => {
            let g = read_graph(input)?;
            let (table, spec) = cop_table(&g, *cop, *game, params)?;
            let value;
            let mut policy: Box<dyn RobberPolicy> = if robber == "optimal" {
                value = solve(&g, &spec)?;
                Box::new(OptimalRobber::new(&value))
            } else if let Some(seed) = robber.strip_prefix("random:") {
                let seed = seed
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad robber seed {seed:?}")))?;
                Box::new(RandomRobber::new(seed))
            } else {
                return Err(CliError::Usage(format!("unknown robber {robber:?}")));
            };
            let trace = simulate(&g, &spec, &table, policy.as_mut(), *cap)?;
            let summary = format!(
                "{spec}: {:?} after {} positions",
                trace.outcome,
                trace.cop_positions.len()
            );
            Ok(Output::ok(with_schema("trace", &trace), summary))
        }
        Command::Crosscheck {
            max_n,
            min_n,
            checks: names,
            sample,
            sample_n,
            seed,
            bipartite,
            input,
            fixtures,
            list,
            inject_broken_solver,
        } => {
            if *list {
                let all = checks::catalog();
                let summary = all
                    .iter()
                    .map(|c| format!("{}: {}", c.name, c.statement))
                    .collect::<Vec<_>>()
                    .join("\n");
                let json = json!({
                    "schema": schema("check_list"),
                    "checks": all.iter().map(|c| json!({"name": c.name, "statement": c.statement})).collect::<Vec<_>>(),
                });
                return Ok(Output::ok(json, summary));
            }
            let selected = selected_checks(names)?;
            let gen = if let Some(path) = input {
                let graphs = parse_any(&read_text(path)?)?;
                if let Some(g) = graphs.iter().find(|g| !g.is_connected()) {
                    return Err(CliError::Input(format!(
                        "corpus graph {} is disconnected",
                        copwin::format::to_graph6(g)
                    )));
                }
                Generator::Graphs(graphs)
            } else if *fixtures {
                Generator::Fixtures
            } else if let Some(count) = sample {
                Generator::Sample {
                    n: sample_n.or(*max_n).unwrap_or(8),
                    count: *count,
                    seed: *seed,
                }
            } else if let Some(max_n) = max_n {
                if *bipartite {
                    Generator::ConnectedBipartite {
                        min_n: *min_n,
                        max_n: *max_n,
                    }
                } else {
                    Generator::Connected {
                        min_n: *min_n,
                        max_n: *max_n,
                    }
                }
            } else {
                return Err(CliError::Usage(
                    "crosscheck needs --max-n, --sample, --input or --fixtures".into(),
                ));
            };
            let mut refs: Vec<&dyn Check> = selected.iter().map(|c| c as &dyn Check).collect();
            if *inject_broken_solver {
                refs.push(&BrokenSolver);
            }
            let report = crosscheck(&gen, &refs).map_err(|e| CliError::Usage(e.to_string()))?;
            let summary = report
                .checks
                .iter()
                .map(|c| {
                    format!(
                        "{}: {} graphs, {} agree, {} skipped, {} disagree ({} ms)",
                        c.name, c.graphs_tested, c.agreements, c.skipped, c.disagreement_count, c.wall_ms
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let code = if report.passed() { 0 } else { EXIT_DISAGREEMENT };
            Ok(Output {
                json: with_schema("crosscheck", &report),
                summary,
                code,
            })
        }
        Command::Fixture { id } => {
            let id: FixtureId = id
                .parse()
                .map_err(|e: copwin::corpus::FixtureError| CliError::Usage(e.to_string()))?;
            let g = fixture(id).map_err(|e| CliError::Usage(e.to_string()))?;
            let text = format_edge_list(&g);
            Ok(Output {
                summary: text.trim_end().to_string(),
                json: Value::Null,
                code: 0,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = if cli.pretty || out.json.is_null() {
                out.summary
            } else {
                serde_json::to_string_pretty(&out.json).expect("serializable")
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(io::stdout().lock(), "{text}");
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("copwin: {e}");
            ExitCode::from(e.code())
        }
    }
}
