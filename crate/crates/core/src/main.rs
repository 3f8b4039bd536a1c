use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use catmouse::cat::{
    forest_cat, round_budget, seager_demo_cat, solver_cat, tstar_weakened_cat, StrategyError,
};
use catmouse::graph::{
    enumerate_labeled_trees, make_named, parse_graph, spider, tree_from_prufer, ForestCheck, Graph,
};
use catmouse::mouse::{cycle_mouse, path_mouse, phantom_adversary, random_mouse, PhantomMode};
use catmouse::play::{HumanCat, HumanMouse, END_OF_INPUT};
use catmouse::rules::{
    play_game, CatStrategy, Channel, GameError, MouseAgent, Movement, Outcome, RuleSet,
};
use catmouse::solver::{variant_table, SolvedGame, SolverLimits};
use catmouse::suites::{run_suite, SUITES};

#[derive(Parser)]
#[command(name = "catmouse", version, about = "Cat-and-mouse pursuit on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite (or `all`); exits nonzero on any failure.
    Verify {
        #[arg(long)]
        suite: String,
        /// Largest instance size; each suite has its own default and cap.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide the winner and the optimal capture time.
    Solve {
        #[command(flatten)]
        game: GameArgs,
        /// Solve under every channel and movement rule.
        #[arg(long)]
        all_rules: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play one game and write its trace.
    Simulate {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value = "transition")]
        cat: CatKind,
        #[arg(long, default_value = "phantom-greedy")]
        mouse: String,
        #[arg(long, default_value_t = 10_000)]
        max_rounds: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write every labeled tree on `n` vertices in edge-list format.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rounds used by the tree strategy against the greedy adversary, by
    /// tree family and order.
    Bench {
        /// Largest order.
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interactive game on the terminal.
    Play {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_enum)]
        role: Role,
        /// Opponent when the human is the mouse.
        #[arg(long, default_value = "transition")]
        cat: CatKind,
        /// Opponent when the human is the cat.
        #[arg(long, default_value = "phantom-greedy")]
        mouse: String,
        #[arg(long, default_value_t = 100)]
        max_rounds: usize,
    },
}

#[derive(Args)]
struct GameArgs {
    /// Edge-list file or `shape:param` (`path:5`, `cycle:4`, `star:3`,
    /// `spider:4`, `t_star`).
    #[arg(long)]
    graph: String,
    #[arg(long, default_value = "coarse-cmp")]
    channel: Channel,
    #[arg(long, default_value = "must-move")]
    movement: Movement,
}

impl GameArgs {
    fn rules(&self) -> RuleSet {
        RuleSet::new(self.channel, self.movement)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Role {
    Cat,
    Mouse,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CatKind {
    /// Tree strategy; the graph must be a tree.
    Transition,
    /// Tree strategy per component; on a graph with cycles it plays a
    /// spanning forest and starts over whenever it runs out.
    Forest,
    TstarScript,
    SeagerDemo,
    Solver,
    Human,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type Failure = Box<dyn std::error::Error>;

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Verify { suite, n, out } => {
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut text = String::new();
            let mut ok = true;
            for name in names {
                let report = run_suite(name, n)?;
                ok &= report.passed();
                text.push_str(&report.to_string());
            }
            emit(out.as_deref(), &text)?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Solve {
            game,
            all_rules,
            out,
        } => {
            let g = load_graph(&game.graph)?;
            let rules: Vec<RuleSet> = if all_rules {
                RuleSet::all().collect()
            } else {
                vec![game.rules()]
            };
            let rows = variant_table(&[(game.graph.clone(), g)], &rules, SolverLimits::default());
            let text: String = rows.iter().map(|r| format!("{r}\n")).collect();
            emit(out.as_deref(), &text)?;
            Ok(if rows.iter().all(|r| r.result.is_ok()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Simulate {
            game,
            cat,
            mouse,
            max_rounds,
            out,
        } => {
            let g = load_graph(&game.graph)?;
            let rules = game.rules();
            if cat == CatKind::Human && mouse == "human" {
                return Err("at most one side can be human".into());
            }
            let mut cat = build_cat(cat, &g, rules, stdin_if(cat == CatKind::Human))?;
            let mut mouse = build_mouse(&mouse, &g, rules, stdin_if(mouse == "human"))?;
            let r = play_game(&g, rules, &mut cat, &mut mouse, max_rounds)?;
            emit(out.as_deref(), &r.to_trace_text())?;
            eprintln!("outcome={} rounds={}", r.outcome.id(), r.rounds_played);
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { n, out } => {
            let mut text = String::new();
            for (i, t) in enumerate_labeled_trees(n)?.enumerate() {
                text.push_str(&format!("# tree {}\n{}", i + 1, t.to_text()));
            }
            emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { n, out } => {
            let text = bench(n)?;
            emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Play {
            game,
            role,
            cat,
            mouse,
            max_rounds,
        } => {
            let g = load_graph(&game.graph)?;
            let rules = game.rules();
            let result = match role {
                Role::Mouse => {
                    let mut cat = build_cat(cat, &g, rules, stdin_if(false))?;
                    let mut human = HumanMouse::new(io::stdin().lock(), io::stdout());
                    play_game(&g, rules, &mut cat, &mut human, max_rounds)
                }
                Role::Cat => {
                    let mut human = HumanCat::new(g.vertex_count(), io::stdin().lock(), io::stdout());
                    let mut mouse = build_mouse(&mouse, &g, rules, stdin_if(false))?;
                    play_game(&g, rules, &mut human, &mut mouse, max_rounds)
                }
            };
            match result {
                Ok(r) => {
                    let verdict = match r.outcome {
                        Outcome::CatWins => format!("captured in round {}", r.rounds_played),
                        Outcome::MouseNoLegalMove => {
                            format!("mouse has no legal move in round {}", r.rounds_played)
                        }
                        Outcome::MouseSurvivedHorizon => {
                            format!("mouse not caught after {} rounds", r.rounds_played)
                        }
                    };
                    println!("{verdict}");
                    if let Some(w) = r.witness {
                        let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                        println!("one consistent mouse path: {}", w.join(" "));
                    }
                }
                Err(GameError::Strategy {
                    source: StrategyError::Aborted(m),
                    ..
                }) if m == END_OF_INPUT => println!("\nsession ended"),
                Err(e) => return Err(e.into()),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn load_graph(arg: &str) -> Result<Graph, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(parse_graph(&fs::read_to_string(path)?)?);
    }
    let (name, param) = match arg.split_once(':') {
        Some((name, k)) => (name, k.parse().map_err(|_| format!("bad parameter in `{arg}`"))?),
        None => (arg, 0),
    };
    Ok(make_named(name, param)?)
}

/// Standard input for the human side, an empty reader otherwise.
fn stdin_if(human: bool) -> Box<dyn BufRead> {
    if human {
        Box::new(io::stdin().lock())
    } else {
        Box::new(io::empty())
    }
}

fn build_cat(
    kind: CatKind,
    g: &Graph,
    rules: RuleSet,
    input: Box<dyn BufRead>,
) -> Result<Box<dyn CatStrategy>, Failure> {
    Ok(match kind {
        CatKind::Transition => {
            if !g.is_connected() {
                return Err("the transition cat needs a tree; use --cat forest".into());
            }
            Box::new(forest_cat(g, rules)?)
        }
        CatKind::Forest if g.is_forest() => Box::new(forest_cat(g, rules)?),
        CatKind::Forest => Box::new(forest_cat(&g.spanning_forest(), rules)?.restarting()),
        CatKind::TstarScript => Box::new(tstar_weakened_cat(g, rules)?),
        CatKind::SeagerDemo => Box::new(seager_demo_cat()),
        CatKind::Solver => Box::new(solver_cat(g, rules)?),
        CatKind::Human => Box::new(HumanCat::new(g.vertex_count(), input, io::stderr())),
    })
}

fn build_mouse(
    kind: &str,
    g: &Graph,
    rules: RuleSet,
    input: Box<dyn BufRead>,
) -> Result<Box<dyn MouseAgent>, Failure> {
    Ok(match kind {
        "phantom-greedy" => Box::new(phantom_adversary(g, rules, PhantomMode::Greedy)),
        "phantom-exact" => {
            let game = SolvedGame::new(g, rules, SolverLimits::default())?;
            Box::new(phantom_adversary(g, rules, PhantomMode::Exact(Arc::new(game))))
        }
        "cycle" => match g.forest_check() {
            ForestCheck::Cycle(c) => Box::new(cycle_mouse(g, &c)?),
            _ => return Err("the cycle mouse needs a graph with a cycle".into()),
        },
        "path" => Box::new(path_mouse(g)?),
        "human" => Box::new(HumanMouse::new(input, io::stderr())),
        other => match other.strip_prefix("random:") {
            Some(seed) => Box::new(random_mouse(seed.parse().map_err(|_| format!("bad seed `{seed}`"))?)),
            None => {
                return Err(format!(
                    "unknown mouse `{other}` (phantom-greedy, phantom-exact, cycle, path, random:<seed>, human)"
                )
                .into())
            }
        },
    })
}

/// One line per (family, n): rounds used against the greedy phantom, the
/// round budget, the transition counts and the wall time.
fn bench(n_max: usize) -> Result<String, Failure> {
    let mut out = String::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6265_6e63);
    for n in 2..=n_max {
        let legs = (n - 1).div_ceil(3).max(1);
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        let mut families = vec![
            ("path", make_named("path", n)?),
            ("star", make_named("star", n - 1)?),
            ("random", tree_from_prufer(&seq, n)),
        ];
        if (n - 1) % 3 == 0 {
            families.push(("spider3", spider(legs, 3)));
        }
        for (family, g) in families {
            let start = Instant::now();
            let mut cat = forest_cat(&g, RuleSet::MAIN)?;
            let mut mouse = phantom_adversary(&g, RuleSet::MAIN, PhantomMode::Greedy);
            let r = play_game(&g, RuleSet::MAIN, &mut cat, &mut mouse, round_budget(n) + 1)?;
            let counts = cat.accounts().first().map(|a| a.counts).unwrap_or_default();
            out.push_str(&format!(
                "family={family} n={n} outcome={} rounds={} budget={} t={:?} ms={:.3}\n",
                r.outcome.id(),
                r.rounds_played,
                round_budget(n),
                counts,
                start.elapsed().as_secs_f64() * 1e3
            ));
        }
    }
    Ok(out)
}
