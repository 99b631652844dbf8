use serde::{Deserialize, Serialize};

use crate::game::{applicable_attacks, Attack, Configuration, GameVariant};
use crate::graph::{Graph, Vertex};

use super::{
    configuration_count, domination_number, first_selection, next_selection, traversable, OracleError,
    OracleLimits,
};

/// A winning defender strategy: every listed configuration answers every
/// attack with another listed configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyWitness {
    pub variant: GameVariant,
    pub order: usize,
    pub attacks: Vec<Attack>,
    /// Surviving configurations in lexicographic order.
    pub configurations: Vec<Configuration>,
    /// `responses[c][a]` is the index of the answer to `attacks[a]` from
    /// configuration `c`.
    pub responses: Vec<Vec<usize>>,
}

impl StrategyWitness {
    pub fn index_of(&self, c: &Configuration) -> Option<usize> {
        self.configurations.binary_search(c).ok()
    }

    pub fn attack_index(&self, attack: Attack) -> Option<usize> {
        let a = attack.normalized();
        self.attacks.iter().position(|&x| x == a)
    }

    /// Successor of configuration `from` under `attack`.
    pub fn respond(&self, from: usize, attack: Attack) -> Option<usize> {
        Some(self.responses.get(from)?[self.attack_index(attack)?])
    }
}

/// Dense index of sorted selections via the combinatorial number system.
struct Ranker {
    binom: Vec<Vec<u64>>,
    duplicates: bool,
}

impl Ranker {
    fn new(n: usize, k: usize, duplicates: bool) -> Self {
        let top = n + k + 1;
        let mut binom = vec![vec![0u64; k + 2]; top];
        for row in binom.iter_mut() {
            row[0] = 1;
        }
        for m in 1..top {
            for j in 1..=k + 1 {
                binom[m][j] = binom[m - 1][j - 1].saturating_add(binom[m - 1][j]);
            }
        }
        Self { binom, duplicates }
    }

    fn rank(&self, c: &[Vertex]) -> usize {
        let mut r = 0u64;
        for (i, &v) in c.iter().enumerate() {
            let d = if self.duplicates { v + i } else { v };
            r += self.binom[d][i + 1];
        }
        r as usize
    }
}

struct Space {
    configs: Vec<Vec<Vertex>>,
    /// successor lists, ascending, including the configuration itself
    succ: Vec<Vec<u32>>,
}

fn build_space(g: &Graph, order: usize, duplicates: bool) -> Space {
    let n = g.n();
    let total = configuration_count(n, order, duplicates) as usize;
    let ranker = Ranker::new(n, order, duplicates);
    let mut configs = Vec::with_capacity(total);
    let mut index_of_rank = vec![u32::MAX; total];
    let mut c = first_selection(order, duplicates);
    loop {
        index_of_rank[ranker.rank(&c)] = configs.len() as u32;
        configs.push(c.clone());
        if !next_selection(&mut c, n, duplicates) {
            break;
        }
    }

    let mut stamp = vec![u32::MAX; total];
    let mut succ = Vec::with_capacity(total);
    let mut choice = vec![0usize; order];
    let mut target = vec![0; order];
    for (i, c) in configs.iter().enumerate() {
        let options: Vec<Vec<Vertex>> = c
            .iter()
            .map(|&u| std::iter::once(u).chain(g.neighbors(u).iter().copied()).collect())
            .collect();
        let product = options.iter().fold(1u128, |acc, o| acc.saturating_mul(o.len() as u128));
        let mut list: Vec<u32> = Vec::new();
        if product > total as u128 {
            // cheaper to test every configuration by matching
            let from = Configuration::new(c.clone());
            for (j, d) in configs.iter().enumerate() {
                if traversable(g, &from, &Configuration::new(d.clone())).unwrap_or(false) {
                    list.push(j as u32);
                }
            }
        } else {
            choice.iter_mut().for_each(|x| *x = 0);
            'odometer: loop {
                for (t, (o, &ch)) in target.iter_mut().zip(options.iter().zip(&choice)) {
                    *t = o[ch];
                }
                target.sort_unstable();
                let ok = duplicates || target.windows(2).all(|w| w[0] != w[1]);
                if ok {
                    let j = index_of_rank[ranker.rank(&target)];
                    if stamp[j as usize] != i as u32 {
                        stamp[j as usize] = i as u32;
                        list.push(j);
                    }
                }
                for p in 0..order {
                    choice[p] += 1;
                    if choice[p] < options[p].len() {
                        continue 'odometer;
                    }
                    choice[p] = 0;
                }
                break;
            }
            list.sort_unstable();
        }
        succ.push(list);
    }
    Space { configs, succ }
}

/// Greatest set of configurations of `order` guards that can answer every
/// attack of `variant` forever, with a response table. `None` when the
/// attacker wins against `order` guards.
pub fn solve_safety(
    g: &Graph,
    order: usize,
    variant: GameVariant,
    limits: &OracleLimits,
) -> Result<Option<StrategyWitness>, OracleError> {
    g.require_connected()?;
    if order == 0 {
        return Err(OracleError::ZeroOrder);
    }
    let n = g.n();
    let duplicates = variant.allows_duplicates();
    if !duplicates && order > n {
        return Ok(None);
    }
    let attacks = applicable_attacks(g, variant);
    let total = configuration_count(n, order, duplicates);
    let pairs = total.saturating_mul(attacks.len() as u128);
    if pairs > limits.max_pairs as u128 {
        return Err(OracleError::BudgetExceeded {
            pairs,
            limit: limits.max_pairs,
        });
    }

    let space = build_space(g, order, duplicates);
    let count = space.configs.len();
    let sat = |a: &Attack, j: u32| a.satisfied_by(&space.configs[j as usize]);

    let mut alive = vec![true; count];
    let mut queued = vec![true; count];
    let mut queue: Vec<u32> = (0..count as u32).rev().collect();
    while let Some(i) = queue.pop() {
        let i = i as usize;
        queued[i] = false;
        if !alive[i] {
            continue;
        }
        let safe = attacks
            .iter()
            .all(|a| space.succ[i].iter().any(|&j| alive[j as usize] && sat(a, j)));
        if !safe {
            alive[i] = false;
            // traversability is symmetric, so successors are also predecessors
            for &p in &space.succ[i] {
                let p = p as usize;
                if alive[p] && !queued[p] {
                    queued[p] = true;
                    queue.push(p as u32);
                }
            }
        }
    }

    let survivors: Vec<usize> = (0..count).filter(|&i| alive[i]).collect();
    if survivors.is_empty() {
        return Ok(None);
    }
    let mut new_index = vec![usize::MAX; count];
    for (k, &i) in survivors.iter().enumerate() {
        new_index[i] = k;
    }
    let responses = survivors
        .iter()
        .map(|&i| {
            attacks
                .iter()
                .map(|a| {
                    if sat(a, i as u32) {
                        new_index[i]
                    } else {
                        let j = space.succ[i]
                            .iter()
                            .copied()
                            .find(|&j| alive[j as usize] && sat(a, j))
                            .expect("surviving configuration has an answer");
                        new_index[j as usize]
                    }
                })
                .collect()
        })
        .collect();
    Ok(Some(StrategyWitness {
        variant,
        order,
        attacks,
        configurations: survivors
            .iter()
            .map(|&i| Configuration::new(space.configs[i].clone()))
            .collect(),
        responses,
    }))
}

/// The minimum number of guards for `variant`, searching upward from the
/// domination number.
pub fn exact_number(g: &Graph, variant: GameVariant, limits: &OracleLimits) -> Result<usize, OracleError> {
    let start = domination_number(g, limits)?;
    let max_order = limits.max_order.unwrap_or(g.n());
    for k in start..=max_order {
        if solve_safety(g, k, variant, limits)?.is_some() {
            return Ok(k);
        }
    }
    Err(OracleError::NoWinningOrder { max_order })
}

/// Independent check of a witness: shape, attack coverage, satisfaction and
/// traversability (by matching) of every response. Returns the problems found.
pub fn validate_witness(g: &Graph, w: &StrategyWitness) -> Vec<String> {
    let mut problems = Vec::new();
    let mut expected = applicable_attacks(g, w.variant);
    expected.sort_unstable();
    let mut listed = w.attacks.clone();
    listed.sort_unstable();
    if expected != listed {
        problems.push("attack list differs from the applicable attacks".to_string());
    }
    if w.configurations.is_empty() {
        problems.push("empty strategy".to_string());
    }
    if w.responses.len() != w.configurations.len() {
        problems.push("response table has the wrong number of rows".to_string());
        return problems;
    }
    for (ci, c) in w.configurations.iter().enumerate() {
        if c.order() != w.order {
            problems.push(format!("{c} has order {} instead of {}", c.order(), w.order));
        }
        if !w.variant.allows_duplicates() && c.has_duplicates() {
            problems.push(format!("{c} stacks guards"));
        }
        if c.positions().iter().any(|&v| v >= g.n()) {
            problems.push(format!("{c} uses a vertex outside the graph"));
            continue;
        }
        if w.responses[ci].len() != w.attacks.len() {
            problems.push(format!("{c} has {} responses", w.responses[ci].len()));
            continue;
        }
        for (a, &r) in w.attacks.iter().zip(&w.responses[ci]) {
            let Some(next) = w.configurations.get(r) else {
                problems.push(format!("{c} answers {a} with unknown index {r}"));
                continue;
            };
            if !a.satisfied_by(next.positions()) {
                problems.push(format!("{c} answers {a} with {next}, which does not satisfy it"));
            }
            if !traversable(g, c, next).unwrap_or(false) {
                problems.push(format!("{c} cannot move to {next}"));
            }
        }
    }
    problems
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    fn limits() -> OracleLimits {
        OracleLimits::default()
    }

    #[test]
    fn ranks_are_dense() {
        for duplicates in [false, true] {
            let (n, k) = (6, 3);
            let r = Ranker::new(n, k, duplicates);
            let mut seen = vec![false; configuration_count(n, k, duplicates) as usize];
            let mut c = first_selection(k, duplicates);
            loop {
                let x = r.rank(&c);
                assert!(!seen[x]);
                seen[x] = true;
                if !next_selection(&mut c, n, duplicates) {
                    break;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn triangle_one_guard() {
        let w = solve_safety(&families::cycle(3), 1, GameVariant::Edn, &limits()).unwrap();
        let w = w.expect("one guard defends a triangle");
        assert_eq!(w.configurations.len(), 3);
        assert!(validate_witness(&families::cycle(3), &w).is_empty());
    }

    #[test]
    fn square_needs_two() {
        let g = families::cycle(4);
        assert!(solve_safety(&g, 1, GameVariant::Edn, &limits()).unwrap().is_none());
        assert!(solve_safety(&g, 2, GameVariant::Edn, &limits()).unwrap().is_some());
    }

    #[test]
    fn hexagon_two_guards_with_evictions() {
        let g = families::cycle(6);
        let w = solve_safety(&g, 2, GameVariant::Ede, &limits()).unwrap().unwrap();
        assert!(validate_witness(&g, &w).is_empty());
        assert_eq!(w.attacks.len(), 6 + 6 + 6);
    }

    #[test]
    fn small_exact_numbers() {
        let l = limits();
        assert_eq!(exact_number(&families::cycle(9), GameVariant::Edn, &l).unwrap(), 3);
        assert_eq!(exact_number(&families::star(3), GameVariant::Edn, &l).unwrap(), 2);
        for v in GameVariant::ALL {
            assert_eq!(exact_number(&families::bull(), v, &l).unwrap(), 3, "{v}");
            assert_eq!(exact_number(&families::single_vertex(), v, &l).unwrap(), 1, "{v}");
        }
    }

    #[test]
    fn validator_catches_broken_response() {
        let g = families::cycle(4);
        let mut w = solve_safety(&g, 2, GameVariant::Edn, &limits()).unwrap().unwrap();
        // answer every attack from the first configuration with itself
        let row = vec![0; w.attacks.len()];
        w.responses[0] = row;
        assert!(!validate_witness(&g, &w).is_empty());
    }

    #[test]
    fn witness_round_trips_through_json() {
        let g = families::three_pan();
        let w = solve_safety(&g, 2, GameVariant::Ede, &limits()).unwrap().unwrap();
        let text = serde_json::to_string(&w).unwrap();
        let back: StrategyWitness = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
        let start = 0;
        let a = w.attacks[0];
        let next = w.respond(start, a).unwrap();
        assert!(a.satisfied_by(w.configurations[next].positions()));
    }
}
