//! m-eternal domination on cactus graphs.
//!
//! * [`meden`] computes the optimal guard count of a Christmas cactus in
//!   linear time, with a trace of the reductions it applied.
//! * [`cactus_upper_bound`] bounds the count for general cacti.
//! * [`DefenderEngine`] plays an optimal defender strategy.
//! * [`oracle`] solves the game exactly on small graphs.

pub mod blocks;
pub mod class;
pub mod crosscheck;
pub mod decomposition;
pub mod generate;
pub mod game;
pub mod graph;
pub mod oracle;
pub mod reduction;
pub mod scaling;
pub mod strategy;

pub use blocks::{block_cut_tree, leaf_blocks, Block, BlockCutTree, BlockId};
pub use crosscheck::{crosscheck, CrosscheckError, CrosscheckReport, Relation};
pub use class::{classify, ClassKind, GraphClass, Witness};
pub use game::{applicable_attacks, check_attack, cycle_edges, Attack, Configuration, GameVariant};
pub use graph::{families, parse_graph, parse_labels, Graph, GraphError, Vertex};
pub use strategy::{synthesize, verify_strategy, DefenderEngine, StrategyError};
pub use scaling::{scaling_table, ScalingRow};
pub use reduction::{meden, meden_with_trace, ElementaryKind, ReductionError, ReductionStep, ReductionTrace, StepKind};
pub use decomposition::{cactus_upper_bound, christmas_decomposition, color_red, Decomposition, DecompositionError};
