//! Inputs shared by the benchmarks.

use meden_core::generate::{generate, GeneratorSpec};
use meden_core::Graph;

/// Christmas cactus on `n` vertices with the default block mix.
pub fn christmas(n: usize, seed: u64) -> Graph {
    generate(&GeneratorSpec {
        n,
        seed,
        ..GeneratorSpec::default()
    })
    .expect("n >= 1")
}

/// Same graph with its vertices renamed by a fixed pseudo-random permutation.
pub fn scrambled(g: &Graph, seed: u64) -> Graph {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut x = seed | 1;
    for i in (1..n).rev() {
        // xorshift is enough to scatter the labels
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        perm.swap(i, (x % (i as u64 + 1)) as usize);
    }
    g.relabel(&perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scrambled_is_a_relabelling() {
        let g = christmas(50, 1);
        let h = scrambled(&g, 9);
        assert_eq!(g.m(), h.m());
        assert_eq!(meden_core::meden(&g).unwrap(), meden_core::meden(&h).unwrap());
    }
}
