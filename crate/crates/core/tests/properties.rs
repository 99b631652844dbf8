use meden_core::generate::{enumerate_christmas, generate, random_connected, GeneratorSpec};
use meden_core::oracle::{domination_number, exact_number, solve_safety, traversable, validate_witness, OracleLimits};
use meden_core::reduction::WorkGraph;
use meden_core::strategy::verify_strategy;
use meden_core::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn limits() -> OracleLimits {
    OracleLimits::default()
}

fn christmas(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), 0.0..=1.0f64, 3usize..=9).prop_map(|(n, seed, cycle_ratio, max_cycle)| {
        generate(&GeneratorSpec {
            n,
            cycle_ratio,
            max_cycle,
            christmas: true,
            seed,
        })
        .unwrap()
    })
}

fn cactus(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), 0.0..=1.0f64).prop_map(|(n, seed, cycle_ratio)| {
        generate(&GeneratorSpec {
            n,
            cycle_ratio,
            max_cycle: 6,
            christmas: false,
            seed,
        })
        .unwrap()
    })
}

fn connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..0.7f64, any::<u64>()).prop_map(|(n, extra, seed)| random_connected(n, extra, seed))
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn block_sizes_sum_identity(g in connected(30)) {
        let bc = block_cut_tree(&g).unwrap();
        let total: usize = bc.blocks.iter().map(|b| b.size()).sum();
        let extra: usize = (0..g.n()).map(|v| bc.blocks_of(v).len() - 1).sum();
        prop_assert_eq!(total, g.n() + extra);
    }

    #[test]
    fn block_cut_tree_is_a_tree(g in connected(30)) {
        let bc = block_cut_tree(&g).unwrap();
        prop_assert!(bc.is_tree());
        for &(a, b) in &bc.edges {
            prop_assert!(bc.members(b).contains(&bc.articulations[a]));
        }
    }

    #[test]
    fn class_lattice_is_monotone(g in connected(12)) {
        let c = classify(&g).unwrap();
        if c.is_christmas_cactus() {
            prop_assert!(c.is_cactus());
        }
        prop_assert_eq!(c.witness.is_some(), c.kind != ClassKind::ChristmasCactus);
    }

    #[test]
    fn edge_list_round_trip(g in connected(25)) {
        prop_assert_eq!(parse_graph(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn trace_is_consistent(g in christmas(60)) {
        let (k, trace) = meden_with_trace(&g).unwrap();
        prop_assert_eq!(k, meden(&g).unwrap());
        prop_assert_eq!(k, trace.total);
        prop_assert_eq!(trace.steps.iter().map(|s| s.guard_increment).sum::<usize>(), k);
        prop_assert!(trace.check().is_empty(), "{:?}", trace.check());
        prop_assert!(trace.steps.len() <= g.n());
        for s in &trace.steps {
            prop_assert!(!s.removed_vertices.is_empty());
            if s.kind == StepKind::LeafCycleShrink {
                let len = s.cycle_length.unwrap();
                prop_assert!(len % 3 != 1);
                prop_assert_eq!(s.guard_increment, len.div_ceil(3) - 1);
            }
        }
    }

    #[test]
    fn residual_stays_christmas(g in christmas(25)) {
        let mut work = WorkGraph::new(&g);
        let mut size = g.n();
        while let Ok(r) = work.next_reduction() {
            work.apply(&r);
            let (h, _) = work.compact();
            prop_assert!(h.n() < size);
            size = h.n();
            prop_assert!(classify(&h).unwrap().is_christmas_cactus());
        }
    }

    #[test]
    fn reduction_order_does_not_matter(g in christmas(40)) {
        let (_, _, total) = meden_core::reduction::reduce_fully(&g).unwrap();
        prop_assert_eq!(total, meden(&g).unwrap());
    }

    #[test]
    fn bound_degenerates_on_christmas(g in christmas(60)) {
        prop_assert_eq!(cactus_upper_bound(&g).unwrap(), meden(&g).unwrap());
    }

    #[test]
    fn components_partition_contracted_edges(g in cactus(40)) {
        let d = christmas_decomposition(&g);
        prop_assume!(d.is_ok());
        let d = d.unwrap();
        let sum: usize = d.components.iter().map(|c| c.graph.m()).sum();
        prop_assert_eq!(sum, d.contracted.graph.m());
    }

    #[test]
    fn red_coloring_follows_relabelling(g in cactus(40), seed in any::<u64>()) {
        let perm = permutation(g.n(), seed);
        let before = color_red(&g).unwrap();
        let after = color_red(&g.relabel(&perm)).unwrap();
        for (v, &w) in perm.iter().enumerate() {
            prop_assert_eq!(before.red[v], after.red[w]);
        }
        prop_assert_eq!(before.group_count(), after.group_count());
    }

    #[test]
    fn traversable_is_symmetric(g in connected(8), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..=g.n());
        let pick = |rng: &mut ChaCha8Rng| {
            let mut p: Vec<usize> = (0..g.n()).collect();
            p.shuffle(rng);
            Configuration::new(p[..k].to_vec())
        };
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        prop_assert_eq!(traversable(&g, &a, &b).unwrap(), traversable(&g, &b, &a).unwrap());
    }

    #[test]
    fn generator_is_deterministic(n in 1usize..200, seed in any::<u64>(), christmas in any::<bool>()) {
        let spec = GeneratorSpec { n, christmas, seed, ..GeneratorSpec::default() };
        let g = generate(&spec).unwrap();
        prop_assert_eq!(&g, &generate(&spec).unwrap());
        let c = classify(&g).unwrap();
        prop_assert!(c.is_cactus());
        prop_assert!(!christmas || c.is_christmas_cactus());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chain_holds(g in connected(6)) {
        let gamma = domination_number(&g, &limits()).unwrap();
        let egc = exact_number(&g, GameVariant::Egc, &limits()).unwrap();
        let edn = exact_number(&g, GameVariant::Edn, &limits()).unwrap();
        let ede = exact_number(&g, GameVariant::Ede, &limits()).unwrap();
        prop_assert!(gamma <= egc && egc <= edn && edn <= ede, "{} {} {} {}", gamma, egc, edn, ede);
    }

    #[test]
    fn oracle_equality_on_christmas(g in christmas(8)) {
        let k = meden(&g).unwrap();
        for v in [GameVariant::Egc, GameVariant::Edn, GameVariant::Ede] {
            prop_assert_eq!(exact_number(&g, v, &limits()).unwrap(), k);
        }
    }

    #[test]
    fn bound_is_sound(g in cactus(8)) {
        let edn = exact_number(&g, GameVariant::Edn, &limits()).unwrap();
        prop_assert!(cactus_upper_bound(&g).unwrap() >= edn);
    }

    #[test]
    fn witnesses_validate(g in connected(6), v in prop_oneof![Just(GameVariant::Egc), Just(GameVariant::Edn), Just(GameVariant::Ede)]) {
        let k = exact_number(&g, v, &limits()).unwrap();
        let w = solve_safety(&g, k, v, &limits()).unwrap().unwrap();
        prop_assert!(validate_witness(&g, &w).is_empty());
        if k > 1 {
            prop_assert!(solve_safety(&g, k - 1, v, &limits()).unwrap().is_none());
        }
    }

    #[test]
    fn guard_count_is_monotone_for_multisets(g in connected(6)) {
        let k = exact_number(&g, GameVariant::Egc, &limits()).unwrap();
        prop_assert!(solve_safety(&g, k + 1, GameVariant::Egc, &limits()).unwrap().is_some());
    }

    #[test]
    fn engine_uses_the_optimal_count(g in christmas(8)) {
        let engine = DefenderEngine::for_graph(&g).unwrap();
        prop_assert_eq!(engine.guard_count(), exact_number(&g, GameVariant::Ede, &limits()).unwrap());
    }

    #[test]
    fn engine_is_deterministic(g in christmas(30), seed in any::<u64>()) {
        let attacks = applicable_attacks(&g, GameVariant::Ede);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seq: Vec<Attack> = (0..100).map(|_| attacks[rng.gen_range(0..attacks.len())]).collect();
        let mut a = DefenderEngine::for_graph(&g).unwrap();
        let mut b = DefenderEngine::for_graph(&g).unwrap();
        for &x in &seq {
            prop_assert_eq!(a.respond(x).unwrap(), b.respond(x).unwrap());
        }
    }

    #[test]
    fn engine_survives_random_play(g in christmas(40), seed in any::<u64>()) {
        let mut engine = DefenderEngine::for_graph(&g).unwrap();
        let report = verify_strategy(&g, &mut engine, 5, 100, seed);
        prop_assert!(report.passed(), "{:?}", report.violations.first());
    }
}

#[test]
fn cycle_formula_up_to_thirty() {
    for k in 3..=30 {
        assert_eq!(meden(&families::cycle(k)).unwrap(), k.div_ceil(3), "C{k}");
    }
}

#[test]
fn edn_monotone_on_fixtures() {
    for g in enumerate_christmas(6) {
        let k = exact_number(&g, GameVariant::Edn, &limits()).unwrap();
        for order in k..=g.n() {
            assert!(solve_safety(&g, order, GameVariant::Edn, &limits()).unwrap().is_some(), "{g:?} {order}");
        }
    }
}

#[test]
fn eviction_game_is_not_monotone() {
    // a second guard on an edge has nowhere to go when its vertex is evicted
    let g = families::path(2);
    assert!(solve_safety(&g, 1, GameVariant::Ede, &limits()).unwrap().is_some());
    assert!(solve_safety(&g, 2, GameVariant::Ede, &limits()).unwrap().is_none());
}

#[test]
fn cycle_through_two_red_groups_is_rejected() {
    // square 0-1-2-3 where 0 and 2 are red but not adjacent: the arc 0-1-2
    // plus the pendant on 1 puts vertex 1 in three blocks of its component
    let g = Graph::new(9, [(0, 1), (0, 3), (0, 7), (0, 8), (1, 2), (1, 6), (2, 3), (2, 4), (2, 5)]).unwrap();
    assert!(matches!(
        christmas_decomposition(&g),
        Err(DecompositionError::ComponentNotChristmas { kind: ClassKind::Cactus, .. })
    ));
    assert!(cactus_upper_bound(&g).is_err());
    assert_eq!(exact_number(&g, GameVariant::Edn, &limits()).unwrap(), 4);
}
