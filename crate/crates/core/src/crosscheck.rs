//! Every computable value for one graph and the relations between them.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::class::{classify, ClassKind};
use crate::decomposition::{cactus_upper_bound, DecompositionError};
use crate::game::GameVariant;
use crate::graph::{Graph, GraphError};
use crate::oracle::{domination_number, exact_number, OracleError, OracleLimits};
use crate::reduction::{meden, ReductionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrosscheckError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub n: usize,
    pub m: usize,
    pub class: ClassKind,
    pub domination: usize,
    pub egc: usize,
    pub edn: usize,
    pub ede: usize,
    /// Only for Christmas cacti.
    pub meden: Option<usize>,
    /// Only for cacti.
    pub bound: Option<usize>,
    pub relations: Vec<Relation>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(|r| !r.holds)
    }
}

pub fn crosscheck(g: &Graph, limits: &OracleLimits) -> Result<CrosscheckReport, CrosscheckError> {
    let class = classify(g)?;
    let domination = domination_number(g, limits)?;
    let egc = exact_number(g, GameVariant::Egc, limits)?;
    let edn = exact_number(g, GameVariant::Edn, limits)?;
    let ede = exact_number(g, GameVariant::Ede, limits)?;
    let meden = if class.is_christmas_cactus() { Some(meden(g)?) } else { None };
    let bound = if class.is_cactus() { Some(cactus_upper_bound(g)?) } else { None };

    let mut relations = Vec::new();
    let mut push = |name: &str, holds: bool| {
        relations.push(Relation {
            name: name.to_string(),
            holds,
        })
    };
    push("domination <= egc", domination <= egc);
    push("egc <= edn", egc <= edn);
    push("edn <= ede", edn <= ede);
    if let Some(k) = meden {
        push("egc == edn == ede", egc == edn && edn == ede);
        push("meden == ede", k == ede);
    }
    if let Some(b) = bound {
        push("bound >= edn", b >= edn);
        if let Some(k) = meden {
            push("bound == meden", b == k);
        }
    }
    Ok(CrosscheckReport {
        n: g.n(),
        m: g.m(),
        class: class.kind,
        domination,
        egc,
        edn,
        ede,
        meden,
        bound,
        relations,
    })
}
