//! Verification suites: deterministic batch checks composed from the rest of
//! the crate, each producing a [`SuiteReport`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cat::{
    forest_cat, round_budget, seager_demo_cat, tstar_weakened_cat, ForestCat, RandomCat, SolverCat,
};
use crate::graph::{
    enumerate_labeled_graphs, enumerate_labeled_trees, make_named, tree_from_prufer, ForestCheck,
    Graph,
};
use crate::mouse::{
    cycle_mouse, explore_all_branches, path_mouse, phantom_adversary, random_mouse, ExploreLimits,
    ExploreReport, LeafKind, Node, PhantomMode,
};
use crate::oracle::check_against_brute_force;
use crate::rules::{
    parse_trace, play_game, validate_trace, CatStrategy, Channel, GameResult, MouseAgent, Movement,
    Outcome, RuleSet,
};
use crate::solver::{solve, SolvedGame, SolverLimits};

/// Suite names accepted by [`run_suite`].
pub const SUITES: [&str; 9] = [
    "tree-bound",
    "cycles",
    "original-game",
    "tstar-weakened",
    "seager-demo",
    "accounting",
    "consistency-oracle",
    "path-survival",
    "solver-consistency",
];

/// Failure lines kept verbatim; the rest are only counted.
const KEPT_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub instance: String,
    pub reason: String,
}

/// Outcome of one suite run. Contains no timing, so reruns are identical.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: usize,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
    pub stats: BTreeMap<String, String>,
}

impl SuiteReport {
    fn new(suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            ..SuiteReport::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn fail(&mut self, instance: impl Into<String>, reason: impl Into<String>) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(Failure {
                instance: instance.into(),
                reason: reason.into(),
            });
        }
    }

    fn stat(&mut self, key: &str, value: impl fmt::Display) {
        self.stats.insert(key.to_string(), value.to_string());
    }

    fn max_stat(&mut self, key: &str, value: usize) {
        let old = self.stats.get(key).and_then(|s| s.parse::<usize>().ok()).unwrap_or(0);
        self.stat(key, old.max(value));
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "suite={} instances={} failures={}",
            self.suite, self.instances, self.failure_count
        )?;
        for (k, v) in &self.stats {
            write!(f, " {k}={v}")?;
        }
        writeln!(f)?;
        for x in &self.failures {
            writeln!(f, "failure instance={} reason={}", x.instance, x.reason)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (known: {list})", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("suite {suite}: n = {n} is above the cap of {cap}")]
    TooLarge { suite: String, n: usize, cap: usize },
}

/// Runs a suite by name. `n_max` overrides the suite's default size.
pub fn run_suite(name: &str, n_max: Option<usize>) -> Result<SuiteReport, SuiteError> {
    let size = |default: usize, cap: usize| {
        let n = n_max.unwrap_or(default);
        if n > cap {
            Err(SuiteError::TooLarge {
                suite: name.to_string(),
                n,
                cap,
            })
        } else {
            Ok(n)
        }
    };
    Ok(match name {
        "tree-bound" => tree_bound(size(6, 8)?, 1000),
        "cycles" => cycles(size(6, 6)?),
        "original-game" => original_game(size(7, 8)?),
        "tstar-weakened" => tstar_weakened(),
        "seager-demo" => seager_demo(),
        "accounting" => accounting(size(6, 8)?),
        "consistency-oracle" => consistency_oracle(size(5, 6)?),
        "path-survival" => path_survival(size(9, 12)?),
        "solver-consistency" => solver_consistency(size(5, 7)?),
        other => return Err(SuiteError::UnknownSuite(other.to_string())),
    })
}

/// `n=<n>:<u>-<v>,...`.
pub fn describe(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("n={}:{}", g.vertex_count(), edges.join(","))
}

fn trees_up_to(n_max: usize) -> impl Iterator<Item = Graph> {
    (1..=n_max).flat_map(|n| enumerate_labeled_trees(n).expect("within the tree cap"))
}

/// Checks made on every branch of an exhaustive run of the forest cat.
fn forest_branch_check(node: &Node<'_, ForestCat>) -> Result<(), String> {
    for e in node.events {
        if !e.is_well_formed() {
            return Err(format!("malformed event `{e}` ({e:?})"));
        }
    }
    for a in node.cat.accounts() {
        a.check_bounds()?;
    }
    if let Some(s) = node.cat.current() {
        if s.type1_repeats() > 0 {
            return Err("type 1 transition directly after another type 1".into());
        }
        if let Some(free) = s.certified_free() {
            if let Some(&(m, _)) = node.before.elements().iter().find(|e| free.contains(e.0)) {
                return Err(format!("mouse position {m} lies in the certified set X ∪ Y"));
            }
        }
    }
    Ok(())
}

fn explore_forest_cat(g: &Graph) -> Result<(ExploreReport, [usize; 5]), String> {
    let cat = forest_cat(g, RuleSet::MAIN).map_err(|e| e.to_string())?;
    let budget = g.components().iter().map(|c| round_budget(c.len())).sum::<usize>();
    let limits = ExploreLimits {
        max_rounds: budget + 1,
        ..ExploreLimits::default()
    };
    // Max over branches of t1..t4 and refinements.
    let mut maxima = [0usize; 5];
    let report = explore_all_branches(g, RuleSet::MAIN, cat, limits, |node| {
        forest_branch_check(node)?;
        if let Some(s) = node.cat.current() {
            for (m, t) in maxima.iter_mut().zip(s.counts()) {
                *m = (*m).max(t);
            }
            maxima[4] = maxima[4].max(s.refinements());
        }
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    Ok((report, maxima))
}

fn check_phantom_game(r: &GameResult, g: &Graph, rules: RuleSet) -> Result<(), String> {
    let full = r.omniscient_trace().ok_or("no witness for the phantom game")?;
    match validate_trace(g, rules, &full) {
        crate::rules::TraceVerdict::Valid => Ok(()),
        crate::rules::TraceVerdict::Invalid { round, reason } => {
            Err(format!("witness trace invalid at round {round}: {reason}"))
        }
    }
}

/// Exhaustive: the forest cat against every mouse on every labeled tree up
/// to `n_max`; sampled: `samples` random trees of order `n_max + 1` against
/// the greedy phantom.
pub fn tree_bound(n_max: usize, samples: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("tree-bound");
    let mut branches = 0usize;
    for g in trees_up_to(n_max) {
        rep.instances += 1;
        let name = describe(&g);
        let n = g.vertex_count();
        let (report, maxima) = match explore_forest_cat(&g) {
            Ok(x) => x,
            Err(e) => {
                rep.fail(name, e);
                continue;
            }
        };
        branches += report.leaves;
        if !report.cat_always_wins() {
            let e = report.first_escape.as_ref().expect("escape recorded");
            rep.fail(&name, format!("mouse escapes ({:?}) with witness {:?}", e.kind, e.witness));
            continue;
        }
        if report.worst_round > round_budget(n) {
            rep.fail(&name, format!("capture in round {} > {}", report.worst_round, round_budget(n)));
        }
        for (key, v) in ["max_t1", "max_t2", "max_t3", "max_t4", "max_refinements"].iter().zip(maxima) {
            rep.max_stat(key, v);
        }
        rep.max_stat("max_rounds", report.worst_round);
        rep.max_stat(&format!("max_rounds_n{n}"), report.worst_round);

        // Optimal play is never slower than the strategy's worst case, and
        // the exact phantom gives a replayable game within the bound.
        match SolvedGame::new(&g, RuleSet::MAIN, SolverLimits::default()) {
            Ok(game) => {
                let opt = game.result().optimal_rounds();
                if opt.is_none_or(|k| k as usize > report.worst_round) {
                    rep.fail(&name, format!("solver optimum {opt:?} above strategy worst case {}", report.worst_round));
                }
                let mut cat = forest_cat(&g, RuleSet::MAIN).expect("tree");
                let mut mouse = phantom_adversary(&g, RuleSet::MAIN, PhantomMode::Exact(Arc::new(game)));
                match play_game(&g, RuleSet::MAIN, &mut cat, &mut mouse, round_budget(n) + 1) {
                    Ok(r) if r.outcome == Outcome::CatWins && r.rounds_played <= round_budget(n) => {
                        if let Err(e) = check_phantom_game(&r, &g, RuleSet::MAIN) {
                            rep.fail(&name, e);
                        }
                    }
                    Ok(r) => rep.fail(&name, format!("exact phantom: {} after {}", r.outcome.id(), r.rounds_played)),
                    Err(e) => rep.fail(&name, e.to_string()),
                }
            }
            Err(e) => rep.fail(&name, e.to_string()),
        }
    }
    rep.stat("branches", branches);

    let n = n_max + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(0x7472_6565);
    for _ in 0..samples {
        rep.instances += 1;
        let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
        let g = tree_from_prufer(&seq, n);
        let name = describe(&g);
        let mut cat = forest_cat(&g, RuleSet::MAIN).expect("tree");
        let mut mouse = phantom_adversary(&g, RuleSet::MAIN, PhantomMode::Greedy);
        match play_game(&g, RuleSet::MAIN, &mut cat, &mut mouse, round_budget(n) + 1) {
            Ok(r) if r.outcome == Outcome::CatWins => {
                rep.max_stat("sampled_max_rounds", r.rounds_played);
                let bounds = cat.accounts().iter().try_for_each(|a| a.check_bounds());
                if let Err(e) = bounds.and_then(|_| check_phantom_game(&r, &g, RuleSet::MAIN)) {
                    rep.fail(&name, e);
                }
            }
            Ok(r) => rep.fail(&name, format!("greedy phantom: {} after {}", r.outcome.id(), r.rounds_played)),
            Err(e) => rep.fail(&name, e.to_string()),
        }
    }
    rep.stat("sampled_n", n);
    rep.stat("sampled", samples);
    rep
}

/// Every connected graph with a cycle up to `n_max` is a mouse win, and the
/// cycle-walking mouse outlasts 1000 rounds of a spanning-forest cat and of
/// a random cat.
pub fn cycles(n_max: usize) -> SuiteReport {
    const HORIZON: usize = 1000;
    let mut rep = SuiteReport::new("cycles");
    let mut games = 0;
    for n in 3..=n_max {
        for (index, g) in enumerate_labeled_graphs(n).expect("within the graph cap").enumerate() {
            if !g.is_connected() {
                continue;
            }
            let ForestCheck::Cycle(cycle) = g.forest_check() else {
                continue;
            };
            rep.instances += 1;
            let name = describe(&g);
            match solve(&g, RuleSet::MAIN, SolverLimits::default()) {
                Ok(r) if !r.cat_wins() => {}
                Ok(r) => rep.fail(&name, format!("solver says cat wins: {r}")),
                Err(e) => rep.fail(&name, e.to_string()),
            }
            let spanning = g.spanning_forest();
            let forest = forest_cat(&spanning, RuleSet::MAIN).expect("spanning forest").restarting();
            let cats: [Box<dyn CatStrategy>; 2] = [
                Box::new(forest),
                Box::new(RandomCat::new(n, index as u64)),
            ];
            for (label, mut cat) in ["spanning-forest", "random"].into_iter().zip(cats) {
                games += 1;
                let mut mouse = cycle_mouse(&g, &cycle).expect("witness is a cycle");
                match play_game(&g, RuleSet::MAIN, &mut cat, &mut mouse, HORIZON) {
                    Ok(r) if r.outcome == Outcome::MouseSurvivedHorizon && r.rounds_played == HORIZON => {}
                    Ok(r) => rep.fail(&name, format!("cycle mouse vs {label}: {} after {}", r.outcome.id(), r.rounds_played)),
                    Err(e) => rep.fail(&name, format!("cycle mouse vs {label}: {e}")),
                }
            }
        }
    }
    rep.stat("games", games);
    rep.stat("horizon", HORIZON);
    rep
}

/// Binary feedback: T* is a mouse win, every tree up to `n_max` a cat win.
pub fn original_game(n_max: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("original-game");
    let t = make_named("t_star", 0).expect("t_star");
    rep.instances += 1;
    match solve(&t, RuleSet::ORIGINAL, SolverLimits::default()) {
        Ok(r) if !r.cat_wins() => rep.stat("t_star", format!("mouse/{}", r.states_explored)),
        Ok(r) => rep.fail("t_star", format!("expected a mouse win, got {r}")),
        Err(e) => rep.fail("t_star", e.to_string()),
    }
    if t.contains_t_star_subtree() != Ok(true) {
        rep.fail("t_star", "containment check misses T* itself");
    }
    for g in trees_up_to(n_max) {
        rep.instances += 1;
        let name = describe(&g);
        if g.contains_t_star_subtree() != Ok(false) {
            rep.fail(&name, "small tree reported to contain T*");
        }
        match solve(&g, RuleSet::ORIGINAL, SolverLimits::default()) {
            Ok(r) if r.cat_wins() => {
                let k = r.optimal_rounds().unwrap_or(0) as usize;
                rep.max_stat(&format!("max_rounds_n{}", g.vertex_count()), k);
            }
            Ok(r) => rep.fail(&name, format!("expected a cat win, got {r}")),
            Err(e) => rep.fail(&name, e.to_string()),
        }
    }
    rep
}

/// The T* cats for coarse-only and comparison-only feedback catch every
/// mouse; the solver agrees that both variants are cat wins.
pub fn tstar_weakened() -> SuiteReport {
    let mut rep = SuiteReport::new("tstar-weakened");
    let g = make_named("t_star", 0).expect("t_star");
    for channel in [Channel::Coarse, Channel::CmpOnly] {
        let rules = RuleSet::new(channel, Movement::MustMove);
        let name = format!("t_star/{channel}");
        rep.instances += 1;
        let cat = tstar_weakened_cat(&g, rules).expect("canonical T*");
        match explore_all_branches(&g, rules, cat, ExploreLimits::default(), |_| Ok(())) {
            Ok(r) if r.cat_always_wins() => {
                rep.stat(&format!("{channel}_worst_rounds"), r.worst_round);
                rep.stat(&format!("{channel}_branches"), r.leaves);
            }
            Ok(r) => {
                let e = r.first_escape.expect("escape recorded");
                rep.fail(&name, format!("escape ({:?}) with witness {:?}", e.kind, e.witness));
            }
            Err(e) => rep.fail(&name, e.to_string()),
        }
        match solve(&g, rules, SolverLimits::default()) {
            Ok(r) if r.cat_wins() => {
                rep.stat(&format!("{channel}_optimal_rounds"), r.optimal_rounds().unwrap_or(0))
            }
            Ok(r) => rep.fail(&name, format!("solver: {r}")),
            Err(e) => rep.fail(&name, e.to_string()),
        }
    }
    rep
}

/// The seven-move script on T* leaves no trajectory alive under
/// must-move-avoid-cat play, and does leave one under plain must-move play.
pub fn seager_demo() -> SuiteReport {
    let mut rep = SuiteReport::new("seager-demo");
    let g = make_named("t_star", 0).expect("t_star");
    for channel in Channel::ALL {
        let restricted = RuleSet::new(channel, Movement::MustMoveAvoidCat);
        let name = format!("t_star/{channel}/{}", restricted.movement);
        rep.instances += 1;
        match explore_all_branches(&g, restricted, seager_demo_cat(), ExploreLimits::default(), |_| Ok(())) {
            Ok(r) if r.cat_always_wins() && r.worst_round <= 7 => {
                rep.max_stat("stuck_branches", r.no_legal_move);
            }
            Ok(r) => {
                let w = r.first_escape.map(|e| e.witness);
                rep.fail(&name, format!("survivor after round 7: {w:?}"));
            }
            Err(e) => rep.fail(&name, e.to_string()),
        }
        let free = RuleSet::new(channel, Movement::MustMove);
        let name = format!("t_star/{channel}/{}", free.movement);
        rep.instances += 1;
        match explore_all_branches(&g, free, seager_demo_cat(), ExploreLimits::default(), |_| Ok(())) {
            Ok(r) => match r.first_escape {
                Some(e) if e.kind == LeafKind::Resigned && e.rounds == 7 => {
                    let w: Vec<String> = e.witness.iter().map(ToString::to_string).collect();
                    rep.stat(&format!("must_move_survivor_{channel}"), w.join(","));
                }
                _ => rep.fail(&name, "no survivor without the avoid-cat restriction"),
            },
            Err(e) => rep.fail(&name, e.to_string()),
        }
    }
    rep
}

/// Per-game accounting on every tree up to `n_max`: the greedy phantom and
/// ten seeded random mice against the forest cat, with bounds, event shapes,
/// trace text round trips and replay validation.
pub fn accounting(n_max: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("accounting");
    let mut games = 0;
    for (index, g) in trees_up_to(n_max).enumerate() {
        rep.instances += 1;
        let name = describe(&g);
        let n = g.vertex_count();
        let mut mice: Vec<Box<dyn MouseAgent>> =
            vec![Box::new(phantom_adversary(&g, RuleSet::MAIN, PhantomMode::Greedy))];
        for s in 0..10 {
            mice.push(Box::new(random_mouse((index * 10 + s) as u64)));
        }
        for mut mouse in mice {
            games += 1;
            let mut cat = forest_cat(&g, RuleSet::MAIN).expect("tree");
            let r = match play_game(&g, RuleSet::MAIN, &mut cat, &mut mouse, round_budget(n) + 1) {
                Ok(r) => r,
                Err(e) => {
                    rep.fail(&name, e.to_string());
                    continue;
                }
            };
            if let Err(e) = check_accounting(&r, &cat, &g) {
                rep.fail(&name, e);
            }
            rep.max_stat("max_rounds", r.rounds_played);
            for a in cat.accounts() {
                for (key, t) in ["max_t1", "max_t2", "max_t3", "max_t4"].iter().zip(a.counts) {
                    rep.max_stat(key, t);
                }
            }
        }
    }
    rep.stat("games", games);
    rep
}

fn check_accounting(r: &GameResult, cat: &ForestCat, g: &Graph) -> Result<(), String> {
    if r.outcome != Outcome::CatWins {
        return Err(format!("{} after {} rounds", r.outcome.id(), r.rounds_played));
    }
    for a in cat.accounts() {
        a.check_bounds()?;
    }
    if let Some((_, e)) = r.events.iter().find(|(_, e)| !e.is_well_formed()) {
        return Err(format!("malformed event {e:?}"));
    }
    let text = r.to_trace_text();
    let parsed = parse_trace(&text).map_err(|e| e.to_string())?;
    let lines: Vec<_> = r.events.iter().map(|(at, e)| (*at, e.line())).collect();
    if parsed.records != r.trace || parsed.events != lines || parsed.witness != r.witness {
        return Err("trace text does not round-trip".into());
    }
    check_phantom_game(r, g, RuleSet::MAIN)
}

/// Incremental consistency sets against brute-force trajectory enumeration:
/// every labeled graph up to `n_max`, every rule set, signal sequences of
/// length up to 4.
pub fn consistency_oracle(n_max: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("consistency-oracle");
    let mut comparisons = 0;
    for n in 1..=n_max {
        for g in enumerate_labeled_graphs(n).expect("within the graph cap") {
            for rules in RuleSet::all() {
                rep.instances += 1;
                match check_against_brute_force(&g, rules, 4) {
                    Ok(k) => comparisons += k,
                    Err(e) => rep.fail(describe(&g), e),
                }
            }
        }
    }
    rep.stat("comparisons", comparisons);
    rep
}

/// Paths under exact feedback: the optimal capture time is at least
/// `floor(n/2) - 1`, and the path mouse survives that many rounds against
/// the optimal cat.
pub fn path_survival(n_max: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("path-survival");
    let rules = RuleSet::new(Channel::Exact, Movement::MustMove);
    let mut table = Vec::new();
    for n in 2..=n_max {
        rep.instances += 1;
        let name = format!("path:{n}");
        let g = make_named("path", n).expect("path");
        let floor = (n / 2).saturating_sub(1);
        let game = match SolvedGame::new(&g, rules, SolverLimits::default()) {
            Ok(game) => Arc::new(game),
            Err(e) => {
                rep.fail(&name, e.to_string());
                continue;
            }
        };
        let Some(opt) = game.result().optimal_rounds() else {
            rep.fail(&name, "solver says the mouse wins");
            continue;
        };
        let mut cat = SolverCat::new(game);
        let mut mouse = path_mouse(&g).expect("path");
        let survived = match play_game(&g, rules, &mut cat, &mut mouse, 10 * n) {
            Ok(r) if r.outcome == Outcome::CatWins => r.rounds_played - 1,
            Ok(r) => r.rounds_played,
            Err(e) => {
                rep.fail(&name, e.to_string());
                continue;
            }
        };
        table.push(format!("{n}:{opt}:{survived}"));
        if (opt as usize) < floor {
            rep.fail(&name, format!("optimum {opt} below floor(n/2)-1 = {floor}"));
        }
        if survived < floor {
            rep.fail(&name, format!("path mouse survived {survived} < {floor} rounds"));
        }
    }
    rep.stat("n:optimal:path_mouse_survived", table.join(","));
    rep
}

/// On every tree up to `n_max`: the optimal cat beats the exact phantom in
/// exactly the optimal number of rounds, and more informative channels
/// never make the cat slower.
pub fn solver_consistency(n_max: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("solver-consistency");
    // (less informative, more informative)
    const CHAIN: [(Channel, Channel); 5] = [
        (Channel::Binary, Channel::Coarse),
        (Channel::Coarse, Channel::CoarseCmp),
        (Channel::CmpOnly, Channel::CoarseCmp),
        (Channel::CoarseCmp, Channel::Exact),
        (Channel::Binary, Channel::CmpOnly),
    ];
    for g in trees_up_to(n_max) {
        rep.instances += 1;
        let name = describe(&g);
        let game = match SolvedGame::new(&g, RuleSet::MAIN, SolverLimits::default()) {
            Ok(game) => Arc::new(game),
            Err(e) => {
                rep.fail(&name, e.to_string());
                continue;
            }
        };
        match game.result().optimal_rounds() {
            Some(k) => {
                let mut cat = SolverCat::new(game.clone());
                let mut mouse = phantom_adversary(&g, RuleSet::MAIN, PhantomMode::Exact(game));
                match play_game(&g, RuleSet::MAIN, &mut cat, &mut mouse, k as usize + 5) {
                    Ok(r) if r.outcome == Outcome::CatWins && r.rounds_played == k as usize => {
                        if let Err(e) = check_phantom_game(&r, &g, RuleSet::MAIN) {
                            rep.fail(&name, e);
                        }
                    }
                    Ok(r) => rep.fail(&name, format!("optimum {k}, game: {} after {}", r.outcome.id(), r.rounds_played)),
                    Err(e) => rep.fail(&name, e.to_string()),
                }
            }
            None => rep.fail(&name, "tree reported as a mouse win"),
        }
        let mut rounds = BTreeMap::new();
        for channel in Channel::ALL {
            match solve(&g, RuleSet::new(channel, Movement::MustMove), SolverLimits::default()) {
                Ok(r) => {
                    rounds.insert(channel, r.optimal_rounds());
                }
                Err(e) => rep.fail(&name, e.to_string()),
            }
        }
        for (weak, strong) in CHAIN {
            let (Some(&a), Some(&b)) = (rounds.get(&weak), rounds.get(&strong)) else {
                continue;
            };
            // `None` (mouse wins) ranks above every round count.
            let worse = |x: Option<u32>| x.map_or(u64::MAX, u64::from);
            if worse(b) > worse(a) {
                rep.fail(&name, format!("{strong} ({b:?}) slower than {weak} ({a:?})"));
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for (name, n) in [
            ("tree-bound", Some(4)),
            ("cycles", Some(4)),
            ("original-game", Some(5)),
            ("accounting", Some(4)),
            ("consistency-oracle", Some(3)),
            ("path-survival", Some(6)),
            ("solver-consistency", Some(4)),
        ] {
            let rep = run_suite(name, n).unwrap();
            assert!(rep.passed(), "{rep}");
            assert!(rep.instances > 0);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite("seager-demo", None).unwrap();
        let b = run_suite("seager-demo", None).unwrap();
        assert_eq!(a.to_string(), b.to_string());
        assert!(a.passed(), "{a}");
    }

    #[test]
    fn unknown_and_oversized() {
        assert!(matches!(run_suite("nope", None), Err(SuiteError::UnknownSuite(_))));
        assert!(matches!(run_suite("cycles", Some(9)), Err(SuiteError::TooLarge { .. })));
    }

    #[test]
    fn failure_lines() {
        let mut rep = SuiteReport::new("x");
        rep.instances = 2;
        rep.fail("a", "broken");
        rep.stat("k", 3);
        assert_eq!(
            rep.to_string(),
            "suite=x instances=2 failures=1 k=3\nfailure instance=a reason=broken\n"
        );
        assert!(!rep.passed());
    }
}
