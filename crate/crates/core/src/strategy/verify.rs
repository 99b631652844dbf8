//! Simulation checks for a defender engine.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::game::{applicable_attacks, Attack, Configuration, GameVariant};
use crate::graph::Graph;
use crate::oracle::traversable;

use super::engine::{DefenderEngine, EngineState};

/// Problems with one response: the attack is not answered, the new
/// configuration has the wrong size, repeats a vertex, does not dominate, or
/// cannot be reached in one move.
pub fn check_response(g: &Graph, guards: usize, before: &Configuration, attack: Attack, after: &Configuration) -> Vec<String> {
    check_response_in(g, GameVariant::Ede, guards, before, attack, after)
}

/// [`check_response`] under the rules of `variant`: repeated vertices are
/// allowed when the variant allows them.
pub fn check_response_in(
    g: &Graph,
    variant: GameVariant,
    guards: usize,
    before: &Configuration,
    attack: Attack,
    after: &Configuration,
) -> Vec<String> {
    let mut out = Vec::new();
    let pos = after.positions();
    if !attack.satisfied_by(pos) {
        out.push(format!("{attack} not answered"));
    }
    if after.order() != guards {
        out.push(format!("{} guards instead of {guards}", after.order()));
    }
    if !variant.allows_duplicates() && after.has_duplicates() {
        out.push("two guards on one vertex".into());
    }
    if !g.is_dominating(pos) {
        out.push("not dominating".into());
    }
    match traversable(g, before, after) {
        Ok(true) => {}
        Ok(false) => out.push("not reachable in one move".into()),
        Err(e) => out.push(format!("move check failed: {e}")),
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: usize,
    pub step: usize,
    pub attack: Attack,
    pub before: Configuration,
    pub after: Option<Configuration>,
    pub problems: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub trials: usize,
    pub length: usize,
    pub responses: usize,
    pub violations: Vec<Violation>,
    /// Distinct configurations seen over all trials.
    pub distinct_configurations: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Plays `trials` random games of `length` attacks each, every game from the
/// initial configuration, with attacks drawn uniformly from all attacks of
/// the eviction game. Every response and the engine invariants are checked.
pub fn verify_strategy(g: &Graph, engine: &mut DefenderEngine, trials: usize, length: usize, seed: u64) -> VerifyReport {
    let attacks = applicable_attacks(g, GameVariant::Ede);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut report = VerifyReport {
        trials,
        length,
        responses: 0,
        violations: Vec::new(),
        distinct_configurations: 0,
    };
    for trial in 0..trials {
        engine.reset();
        seen.insert(engine.current());
        for step in 0..length {
            let attack = attacks[rng.gen_range(0..attacks.len())];
            let before = engine.current();
            let (after, problems) = play(g, engine, &before, attack);
            report.responses += 1;
            if let Some(c) = &after {
                seen.insert(c.clone());
            }
            if !problems.is_empty() {
                report.violations.push(Violation {
                    trial,
                    step,
                    attack,
                    before,
                    after,
                    problems,
                });
                break;
            }
        }
    }
    engine.reset();
    report.distinct_configurations = seen.len();
    report
}

fn play(g: &Graph, engine: &mut DefenderEngine, before: &Configuration, attack: Attack) -> (Option<Configuration>, Vec<String>) {
    match engine.respond(attack) {
        Ok(after) => {
            let mut problems = check_response(g, engine.guard_count(), before, attack, &after);
            problems.extend(engine.check_invariants());
            (Some(after), problems)
        }
        Err(e) => (None, vec![e.to_string()]),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploreReport {
    /// Engine states reached.
    pub states: usize,
    pub responses: usize,
    /// Deepest level fully explored.
    pub depth: usize,
    pub violations: Vec<Violation>,
}

/// Breadth-first search over engine states: every attack from every state
/// reachable within `max_depth` attacks. Stops early once no new state
/// appears, in which case every reachable state has been checked.
pub fn explore_states(g: &Graph, engine: &mut DefenderEngine, max_depth: usize) -> ExploreReport {
    let attacks = applicable_attacks(g, GameVariant::Ede);
    engine.reset();
    let mut seen: HashSet<EngineState> = HashSet::new();
    seen.insert(engine.state().clone());
    let mut frontier = vec![engine.state().clone()];
    let mut report = ExploreReport {
        states: 1,
        responses: 0,
        depth: 0,
        violations: Vec::new(),
    };
    while report.depth < max_depth && !frontier.is_empty() {
        let mut next = Vec::new();
        for state in frontier {
            for &attack in &attacks {
                engine.restore(state.clone());
                let before = engine.current();
                let (after, problems) = play(g, engine, &before, attack);
                report.responses += 1;
                if !problems.is_empty() {
                    report.violations.push(Violation {
                        trial: 0,
                        step: report.depth,
                        attack,
                        before,
                        after,
                        problems,
                    });
                    continue;
                }
                if seen.insert(engine.state().clone()) {
                    next.push(engine.state().clone());
                }
            }
        }
        report.depth += 1;
        frontier = next;
    }
    report.states = seen.len();
    engine.reset();
    report
}
