use catmouse::cat::{forest_cat, round_budget};
use catmouse::graph::{parse_graph, tree_from_prufer};
use catmouse::mouse::random_mouse;
use catmouse::rules::{parse_trace, play_game, validate_trace, Outcome, RuleSet};
use proptest::prelude::*;

fn prufer() -> impl Strategy<Value = (Vec<usize>, usize)> {
    (3usize..=10).prop_flat_map(|n| (prop::collection::vec(0..n, n - 2), Just(n)))
}

proptest! {
    #[test]
    fn graph_text_round_trips((seq, n) in prufer()) {
        let g = tree_from_prufer(&seq, n);
        prop_assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn forest_cat_catches_random_mice((seq, n) in prufer(), seed in any::<u64>()) {
        let g = tree_from_prufer(&seq, n);
        let rules = RuleSet::MAIN;
        let mut cat = forest_cat(&g, rules).unwrap();
        let mut mouse = random_mouse(seed);
        let r = play_game(&g, rules, &mut cat, &mut mouse, 10 * round_budget(n)).unwrap();
        prop_assert_eq!(r.outcome, Outcome::CatWins);
        prop_assert!(r.rounds_played <= round_budget(n));

        let parsed = parse_trace(&r.to_trace_text()).unwrap();
        prop_assert_eq!(&parsed.records, &r.trace);
        prop_assert_eq!(parsed.events.len(), r.events.len());
        prop_assert!(validate_trace(&g, rules, &parsed.records).is_valid());
    }
}
