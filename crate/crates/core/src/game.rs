//! Domain types of the guarding game: configurations, attacks, variants.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::blocks::block_cut_tree;
use crate::graph::{Graph, Vertex};

/// The three game variants.
///
/// `Egc` allows several guards on one vertex; `Edn` forbids it; `Ede` forbids
/// it and adds vertex and cycle-edge evictions to the attacker's moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameVariant {
    Egc,
    Edn,
    Ede,
}

impl GameVariant {
    pub const ALL: [GameVariant; 3] = [GameVariant::Egc, GameVariant::Edn, GameVariant::Ede];

    pub fn allows_duplicates(self) -> bool {
        self == GameVariant::Egc
    }

    pub fn allows_evictions(self) -> bool {
        self == GameVariant::Ede
    }
}

impl fmt::Display for GameVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameVariant::Egc => "egc",
            GameVariant::Edn => "edn",
            GameVariant::Ede => "ede",
        })
    }
}

impl FromStr for GameVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "egc" => Ok(GameVariant::Egc),
            "edn" => Ok(GameVariant::Edn),
            "ede" => Ok(GameVariant::Ede),
            other => Err(format!("unknown variant `{other}` (expected egc, edn or ede)")),
        }
    }
}

/// One attacker move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Attack {
    /// A guard must stand on the vertex after the response.
    Vertex(Vertex),
    /// No guard may stand on the vertex after the response.
    EvictVertex(Vertex),
    /// No guard may stand on either endpoint of the (cycle) edge.
    EvictEdge(Vertex, Vertex),
}

impl Attack {
    /// Same attack with edge endpoints ordered.
    pub fn normalized(self) -> Attack {
        match self {
            Attack::EvictEdge(u, v) if u > v => Attack::EvictEdge(v, u),
            other => other,
        }
    }

    pub fn is_eviction(&self) -> bool {
        !matches!(self, Attack::Vertex(_))
    }

    /// Whether a configuration (sorted positions) already answers the attack.
    pub fn satisfied_by(&self, positions: &[Vertex]) -> bool {
        let has = |v: &Vertex| positions.binary_search(v).is_ok();
        match self {
            Attack::Vertex(v) => has(v),
            Attack::EvictVertex(v) => !has(v),
            Attack::EvictEdge(u, v) => !has(u) && !has(v),
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        let (a, b) = match *self {
            Attack::Vertex(v) | Attack::EvictVertex(v) => (v, None),
            Attack::EvictEdge(u, v) => (u, Some(v)),
        };
        std::iter::once(a).chain(b)
    }
}

impl fmt::Display for Attack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Attack::Vertex(v) => write!(f, "attack {v}"),
            Attack::EvictVertex(v) => write!(f, "evictv {v}"),
            Attack::EvictEdge(u, v) => write!(f, "evicte {u} {v}"),
        }
    }
}

impl FromStr for Attack {
    type Err = String;

    /// Parses `attack v`, `evictv v` or `evicte u v`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fields: Vec<&str> = s.split_whitespace().collect();
        let num = |i: usize| -> Result<Vertex, String> {
            fields
                .get(i)
                .ok_or_else(|| format!("missing vertex in `{s}`"))?
                .parse()
                .map_err(|_| format!("bad vertex id in `{s}`"))
        };
        let attack = match fields.first().copied() {
            Some("attack") if fields.len() == 2 => Attack::Vertex(num(1)?),
            Some("evictv") if fields.len() == 2 => Attack::EvictVertex(num(1)?),
            Some("evicte") if fields.len() == 3 => Attack::EvictEdge(num(1)?, num(2)?),
            _ => return Err(format!("expected `attack v`, `evictv v` or `evicte u v`, got `{s}`")),
        };
        Ok(attack.normalized())
    }
}

/// Guard positions, kept sorted so equal configurations compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Configuration(Vec<Vertex>);

impl Configuration {
    pub fn new(mut positions: Vec<Vertex>) -> Self {
        positions.sort_unstable();
        Self(positions)
    }

    pub fn positions(&self) -> &[Vertex] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn has_duplicates(&self) -> bool {
        self.0.windows(2).any(|w| w[0] == w[1])
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

impl From<Vec<Vertex>> for Configuration {
    fn from(v: Vec<Vertex>) -> Self {
        Configuration::new(v)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Edges lying on some cycle, i.e. edges of blocks with at least three vertices.
pub fn cycle_edges(g: &Graph) -> Vec<(Vertex, Vertex)> {
    let Ok(bc) = block_cut_tree(g) else {
        return Vec::new();
    };
    let mut out: Vec<(Vertex, Vertex)> = g
        .edges()
        .filter(|&(u, v)| {
            bc.blocks_of(u)
                .iter()
                .any(|&b| bc.blocks[b].size() >= 3 && bc.members(b).binary_search(&v).is_ok())
        })
        .collect();
    out.sort_unstable();
    out
}

/// All attacks the attacker may play in `variant`.
///
/// Vertex evictions are offered only when the graph has a second vertex to
/// retreat to; on a single vertex they cannot be answered by any strategy.
pub fn applicable_attacks(g: &Graph, variant: GameVariant) -> Vec<Attack> {
    let mut attacks: Vec<Attack> = (0..g.n()).map(Attack::Vertex).collect();
    if variant.allows_evictions() {
        if g.n() >= 2 {
            attacks.extend((0..g.n()).map(Attack::EvictVertex));
        }
        attacks.extend(cycle_edges(g).into_iter().map(|(u, v)| Attack::EvictEdge(u, v)));
    }
    attacks
}

/// Checks that `attack` is legal in `variant` on `g`.
pub fn check_attack(g: &Graph, variant: GameVariant, attack: Attack) -> Result<Attack, String> {
    let attack = attack.normalized();
    if let Some(v) = attack.vertices().find(|&v| v >= g.n()) {
        return Err(format!("vertex {v} out of range"));
    }
    match attack {
        Attack::Vertex(_) => Ok(attack),
        _ if !variant.allows_evictions() => Err(format!("evictions are not part of the {variant} game")),
        Attack::EvictVertex(_) if g.n() < 2 => Err("cannot evict the only vertex".into()),
        Attack::EvictVertex(_) => Ok(attack),
        Attack::EvictEdge(u, v) => {
            if !g.has_edge(u, v) {
                Err(format!("{u}-{v} is not an edge"))
            } else if cycle_edges(g).binary_search(&(u, v)).is_err() {
                Err(format!("{u}-{v} does not lie on a cycle"))
            } else {
                Ok(attack)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    #[test]
    fn attack_parsing() {
        assert_eq!("attack 3".parse::<Attack>(), Ok(Attack::Vertex(3)));
        assert_eq!("evictv 0".parse::<Attack>(), Ok(Attack::EvictVertex(0)));
        assert_eq!("evicte 4 1".parse::<Attack>(), Ok(Attack::EvictEdge(1, 4)));
        assert!("evicte 4".parse::<Attack>().is_err());
        assert!("shoot 4".parse::<Attack>().is_err());
    }

    #[test]
    fn satisfaction() {
        let c = [1, 4];
        assert!(Attack::Vertex(1).satisfied_by(&c));
        assert!(!Attack::Vertex(2).satisfied_by(&c));
        assert!(Attack::EvictEdge(2, 3).satisfied_by(&c));
        assert!(!Attack::EvictEdge(3, 4).satisfied_by(&c));
    }

    #[test]
    fn cycle_edges_skip_bridges() {
        let g = families::three_pan();
        assert_eq!(cycle_edges(&g), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(cycle_edges(&families::path(4)).is_empty());
    }

    #[test]
    fn attack_gating() {
        let g = families::three_pan();
        assert!(check_attack(&g, GameVariant::Edn, Attack::EvictVertex(0)).is_err());
        assert!(check_attack(&g, GameVariant::Ede, Attack::EvictEdge(1, 3)).is_err());
        assert!(check_attack(&g, GameVariant::Ede, Attack::EvictEdge(2, 1)).is_ok());
        assert!(check_attack(&g, GameVariant::Ede, Attack::Vertex(9)).is_err());
        assert_eq!(applicable_attacks(&g, GameVariant::Ede).len(), 4 + 4 + 3);
        assert_eq!(applicable_attacks(&families::single_vertex(), GameVariant::Ede).len(), 1);
    }
}
