//! Guard counts of Christmas cacti by repeated reduction.

mod elementary;
mod fast;
mod rules;

pub use elementary::{elementary_value, is_elementary, ElementaryKind};
pub use fast::{meden, meden_with_order, meden_with_trace, LeafOrder, ReductionStep, ReductionTrace, StepKind};
pub use rules::{choose_reduction, reduce_fully, Reduction, WorkGraph};

use thiserror::Error;

use crate::class::{ClassKind, Witness};
use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("not a Christmas cactus (class {kind:?}, witness {witness:?})")]
    NotChristmasCactus { kind: ClassKind, witness: Option<Witness> },
    #[error("graph is elementary ({0}); nothing to reduce")]
    Elementary(ElementaryKind),
    #[error("no reduction applies")]
    NoReduction,
}
