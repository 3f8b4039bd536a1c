use std::fmt;

use thiserror::Error;

use super::{feedback, legal_mouse_moves, Cmp, DistClass, Observation, RuleSet};
use crate::cat::EventLine;
use crate::graph::{Dist, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    pub round: usize,
    pub cat: Vertex,
    /// Present only in omniscient logs.
    pub mouse: Option<Vertex>,
    pub observation: Observation,
}

impl fmt::Display for RoundRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "round={} cat={} {} mouse=",
            self.round, self.cat, self.observation
        )?;
        match self.mouse {
            Some(m) => write!(f, "{m}"),
            None => f.write_str("-"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("trace line {line}: {message}")]
pub struct TraceError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParsedTrace {
    pub records: Vec<RoundRecord>,
    /// Transition events tagged with the round record they follow (0 if
    /// they precede every record).
    pub events: Vec<(usize, EventLine)>,
    pub witness: Option<Vec<Vertex>>,
}

/// Parses the line-delimited trace format written by
/// [`GameResult::to_trace_text`](super::GameResult::to_trace_text).
pub fn parse_trace(text: &str) -> Result<ParsedTrace, TraceError> {
    let mut out = ParsedTrace::default();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| TraceError {
            line: line_no,
            message,
        };
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(list) = line.strip_prefix("witness=") {
            let w = list
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| err(format!("bad witness vertex `{s}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            out.witness = Some(w);
        } else if line.starts_with("transition ") {
            let e: EventLine = line.parse().map_err(err)?;
            let after = out.records.last().map_or(0, |r| r.round);
            out.events.push((after, e));
        } else {
            out.records.push(parse_record(line).map_err(err)?);
        }
    }
    Ok(out)
}

fn parse_record(line: &str) -> Result<RoundRecord, String> {
    let fields = key_values(line, &["round", "cat", "class", "cmp", "mouse"])?;
    let number = |s: &str| s.parse::<usize>().map_err(|_| format!("bad number `{s}`"));
    let cmp = match fields[3] {
        "-" => None,
        "le" => Some(Cmp::NotGreater),
        "gt" => Some(Cmp::Greater),
        other => return Err(format!("bad cmp `{other}`")),
    };
    Ok(RoundRecord {
        round: number(fields[0])?,
        cat: number(fields[1])?,
        mouse: match fields[4] {
            "-" => None,
            m => Some(number(m)?),
        },
        observation: Observation {
            class: fields[2].parse::<DistClass>()?,
            cmp,
        },
    })
}

/// Splits `k1=v1 k2=v2 ...`, requiring exactly the given keys in order.
pub(crate) fn key_values<'a>(line: &'a str, keys: &[&str]) -> Result<Vec<&'a str>, String> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != keys.len() {
        return Err(format!("expected fields {keys:?}, got `{line}`"));
    }
    parts
        .iter()
        .zip(keys)
        .map(|(part, key)| {
            part.strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .ok_or_else(|| format!("expected `{key}=`, got `{part}`"))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceVerdict {
    Valid,
    Invalid { round: usize, reason: String },
}

impl TraceVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, TraceVerdict::Valid)
    }
}

/// Replays an omniscient trace, recomputing every observation from scratch
/// and checking every mouse move against the movement rule.
pub fn validate_trace(g: &Graph, rules: RuleSet, trace: &[RoundRecord]) -> TraceVerdict {
    let n = g.vertex_count();
    let mut prev: Option<(Vertex, Vertex, Dist)> = None;
    for (i, rec) in trace.iter().enumerate() {
        let invalid = |reason: String| TraceVerdict::Invalid {
            round: rec.round,
            reason,
        };
        if rec.round != i + 1 {
            return invalid(format!("expected round {}", i + 1));
        }
        if rec.cat >= n {
            return invalid(format!("cat vertex {} out of range", rec.cat));
        }
        let Some(m) = rec.mouse else {
            return invalid("mouse position missing".into());
        };
        if m >= n {
            return invalid(format!("mouse vertex {m} out of range"));
        }
        if let Some((m_prev, c_prev, _)) = prev {
            if !legal_mouse_moves(rules, g, m_prev, c_prev).contains(&m) {
                return invalid(format!("illegal mouse move {m_prev} -> {m}"));
            }
        }
        let d = g.distances_from(rec.cat)[m];
        let expected = feedback(rules, d, prev.map(|p| p.2));
        if expected != rec.observation {
            return invalid(format!(
                "observation `{}` should be `{expected}`",
                rec.observation
            ));
        }
        if rec.observation.is_capture() && i + 1 != trace.len() {
            return invalid("records continue after capture".into());
        }
        prev = Some((m, rec.cat, d));
    }
    TraceVerdict::Valid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_named;

    fn rec(round: usize, cat: Vertex, mouse: Vertex, class: DistClass, cmp: Option<Cmp>) -> RoundRecord {
        RoundRecord {
            round,
            cat,
            mouse: Some(mouse),
            observation: Observation { class, cmp },
        }
    }

    fn p4_trace() -> Vec<RoundRecord> {
        vec![
            rec(1, 0, 2, DistClass::TwoPlus, None),
            rec(2, 0, 3, DistClass::TwoPlus, Some(Cmp::Greater)),
            rec(3, 1, 2, DistClass::One, Some(Cmp::NotGreater)),
            rec(4, 1, 1, DistClass::Zero, Some(Cmp::NotGreater)),
        ]
    }

    #[test]
    fn valid_trace_and_tampering() {
        let g = make_named("path", 4).unwrap();
        let t = p4_trace();
        assert_eq!(validate_trace(&g, RuleSet::MAIN, &t), TraceVerdict::Valid);

        let mut tampered = t.clone();
        tampered[2].observation.cmp = Some(Cmp::Greater);
        assert!(matches!(
            validate_trace(&g, RuleSet::MAIN, &tampered),
            TraceVerdict::Invalid { round: 3, .. }
        ));

        let mut teleport = t.clone();
        teleport[1] = rec(2, 0, 0, DistClass::Zero, Some(Cmp::NotGreater));
        teleport.truncate(2);
        assert!(matches!(
            validate_trace(&g, RuleSet::MAIN, &teleport),
            TraceVerdict::Invalid { round: 2, .. }
        ));

        let mut after_capture = t;
        after_capture.push(rec(5, 0, 2, DistClass::TwoPlus, Some(Cmp::Greater)));
        assert!(!validate_trace(&g, RuleSet::MAIN, &after_capture).is_valid());
    }

    #[test]
    fn text_round_trip() {
        let mut text = String::new();
        for r in p4_trace() {
            text.push_str(&format!("{r}\n"));
        }
        assert!(text.starts_with("round=1 cat=0 class=2+ cmp=- mouse=2\n"));
        let parsed = parse_trace(&format!("{text}witness=2,3,2,1\n")).unwrap();
        assert_eq!(parsed.records, p4_trace());
        assert_eq!(parsed.witness, Some(vec![2, 3, 2, 1]));
        assert!(parse_trace("round=1 cat=0 class=3 cmp=- mouse=-").is_err());
        assert!(parse_trace("round=1 cat=0 cmp=- class=2+ mouse=-").is_err());
    }
}
