use std::fmt;

use super::{solve, SolveError, SolveResult, SolverLimits};
use crate::graph::Graph;
use crate::rules::RuleSet;

/// One line of a variant table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub instance: String,
    pub rules: RuleSet,
    pub result: Result<SolveResult, SolveError>,
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "instance={} channel={} movement={} ",
            self.instance, self.rules.channel, self.rules.movement
        )?;
        match &self.result {
            Ok(r) => write!(f, "{r}"),
            Err(e) => write!(f, "outcome=error rounds=- states=- # {e}"),
        }
    }
}

/// Solves every `(instance, rules)` pair. Per-instance failures are kept in
/// the row rather than aborting the table.
pub fn variant_table(
    instances: &[(String, Graph)],
    rule_sets: &[RuleSet],
    limits: SolverLimits,
) -> Vec<TableRow> {
    instances
        .iter()
        .flat_map(|(name, g)| {
            rule_sets.iter().map(move |&rules| TableRow {
                instance: name.clone(),
                rules,
                result: solve(g, rules, limits),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_named;
    use crate::rules::{Channel, Movement};

    #[test]
    fn t_star_weakened_channels_are_cat_wins() {
        let rows = variant_table(
            &[("t_star".into(), make_named("t_star", 0).unwrap())],
            &[
                RuleSet::new(Channel::Coarse, Movement::MustMove),
                RuleSet::new(Channel::CmpOnly, Movement::MustMove),
            ],
            SolverLimits::default(),
        );
        assert_eq!(rows.len(), 2);
        for row in &rows {
            assert!(row.result.as_ref().unwrap().cat_wins(), "{row}");
        }
        assert!(rows[0]
            .to_string()
            .starts_with("instance=t_star channel=coarse movement=must-move outcome=cat rounds="));
    }

    #[test]
    fn errors_stay_in_the_table() {
        let rows = variant_table(
            &[
                ("big".into(), make_named("path", 20).unwrap()),
                ("k2".into(), make_named("path", 2).unwrap()),
            ],
            &[RuleSet::MAIN],
            SolverLimits::default(),
        );
        assert!(rows[0].result.is_err());
        assert!(rows[0].to_string().contains("outcome=error"));
        assert!(rows[1]
            .to_string()
            .starts_with("instance=k2 channel=coarse-cmp movement=must-move outcome=cat rounds=2 states="));
    }

    #[test]
    fn path_optimal_rounds_under_exact_channel() {
        let exact = RuleSet::new(Channel::Exact, Movement::MustMove);
        let paths: Vec<_> = (2..=9)
            .map(|n| (format!("path:{n}"), make_named("path", n).unwrap()))
            .collect();
        let rounds: Vec<u32> = variant_table(&paths, &[exact], SolverLimits::default())
            .iter()
            .map(|r| r.result.as_ref().unwrap().optimal_rounds().unwrap())
            .collect();
        for (n, &k) in (2..=9).zip(&rounds) {
            assert!(k as usize + 1 >= n / 2, "P{n}: {k}");
        }
    }
}
