use super::*;
use crate::game::{Attack, Configuration};
use crate::generate::{enumerate_christmas, generate, GeneratorSpec};
use crate::graph::{families, Graph};
use crate::reduction::{meden, meden_with_trace};

fn engine(g: &Graph) -> DefenderEngine {
    DefenderEngine::for_graph(g).unwrap()
}

fn explore_clean(g: &Graph) -> ExploreReport {
    let mut e = engine(g);
    let r = explore_states(g, &mut e, usize::MAX);
    assert!(r.violations.is_empty(), "{:?}: {:?}", g.edges().collect::<Vec<_>>(), &r.violations[..1]);
    r
}

#[test]
fn c6_initial_and_rotation() {
    let g = families::cycle(6);
    let mut e = engine(&g);
    assert_eq!(e.guard_count(), 2);
    assert_eq!(e.current(), Configuration::new(vec![0, 3]));
    assert_eq!(e.respond(Attack::Vertex(1)).unwrap(), Configuration::new(vec![1, 4]));
    e.reset();
    let c = e.respond(Attack::EvictEdge(0, 1)).unwrap();
    assert!(!c.contains(0) && !c.contains(1));
}

#[test]
fn c3_single_guard_moves() {
    let g = families::cycle(3);
    let mut e = engine(&g);
    assert_eq!(e.current(), Configuration::new(vec![0]));
    assert_eq!(e.respond(Attack::Vertex(1)).unwrap(), Configuration::new(vec![1]));
}

#[test]
fn single_edge_oscillates() {
    let g = families::path(2);
    let mut e = engine(&g);
    assert_eq!(e.guard_count(), 1);
    assert_eq!(e.respond(Attack::Vertex(1)).unwrap(), Configuration::new(vec![1]));
    assert_eq!(e.respond(Attack::Vertex(0)).unwrap(), Configuration::new(vec![0]));
}

#[test]
fn bull_guards_one_per_pendant_edge() {
    let g = families::bull();
    let e = engine(&g);
    assert_eq!(e.guard_count(), 3);
    // hub, then one guard on each of {1, 3} and {2, 4}
    assert_eq!(e.current(), Configuration::new(vec![0, 1, 2]));
    explore_clean(&g);
}

#[test]
fn satisfied_attack_keeps_configuration() {
    let g = families::cycle(9);
    let mut e = engine(&g);
    let before = e.current();
    assert_eq!(e.respond(Attack::Vertex(before.positions()[0])).unwrap(), before);
}

#[test]
fn malformed_attacks_rejected() {
    let g = families::path(4);
    let mut e = engine(&g);
    assert!(matches!(e.respond(Attack::Vertex(9)), Err(StrategyError::Malformed { .. })));
    assert!(matches!(e.respond(Attack::EvictEdge(0, 1)), Err(StrategyError::Malformed { .. })));
}

#[test]
fn trace_mismatch_rejected() {
    let (_, trace) = meden_with_trace(&families::cycle(6)).unwrap();
    assert!(matches!(
        synthesize(&families::cycle(7), &trace),
        Err(StrategyError::TraceMismatch(_))
    ));
    let mut bad = trace.clone();
    bad.total += 1;
    assert!(matches!(synthesize(&families::cycle(6), &bad), Err(StrategyError::TraceMismatch(_))));
    assert!(synthesize(&families::cycle(6), &trace).is_ok());
}

#[test]
fn c9_random_games() {
    let g = families::cycle(9);
    let mut e = engine(&g);
    let r = verify_strategy(&g, &mut e, 100, 50, 7);
    assert!(r.passed());
    assert_eq!(r.responses, 5000);
    assert!(r.distinct_configurations >= 3);
}

#[test]
fn zero_trials_empty_report() {
    let g = families::cycle(5);
    let mut e = engine(&g);
    let r = verify_strategy(&g, &mut e, 0, 10, 1);
    assert_eq!((r.responses, r.violations.len()), (0, 0));
}

#[test]
fn each_gadget_kind_exhaustively() {
    let graphs = [
        // leaf edge: path
        families::path(6),
        // pendant on a long cycle
        Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 5)]).unwrap(),
        // cycle removal: C4 and C7 hanging off paths
        families::cycle_with_tail(4, 2),
        families::cycle_with_tail(7, 2),
        // cycle shrink: C5 and C6 with tails
        families::cycle_with_tail(5, 2),
        families::cycle_with_tail(6, 1),
        families::cycle_with_tail(3, 3),
        // bull and pan behind a triangle
        Graph::new(8, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (0, 5), (0, 6), (5, 6), (5, 7)]).unwrap(),
        families::bridged_triangles(),
    ];
    for g in graphs {
        let e = engine(&g);
        assert_eq!(e.guard_count(), meden(&g).unwrap());
        explore_clean(&g);
    }
}

#[test]
fn corpus_up_to_seven_explored_fully() {
    for g in enumerate_christmas(7) {
        let r = explore_clean(&g);
        assert!(r.states >= 1);
    }
}

#[test]
fn random_larger_graphs() {
    for seed in 0..40 {
        let g = generate(&GeneratorSpec {
            n: 8 + (seed as usize % 6),
            seed,
            ..Default::default()
        })
        .unwrap();
        let mut e = engine(&g);
        let r = verify_strategy(&g, &mut e, 20, 100, seed);
        assert!(r.passed(), "{:?} {:?}", g.edges().collect::<Vec<_>>(), r.violations[0]);
    }
}
