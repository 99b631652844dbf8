//! Executable defender strategies for Christmas cacti.

mod cycle;
mod engine;
mod tables;
mod verify;

pub use engine::{DefenderEngine, EngineState, Gadget, StrategyError};
pub use verify::{check_response, check_response_in, explore_states, verify_strategy, ExploreReport, Violation, VerifyReport};

/// Builds the engine for `g` from its reduction trace.
pub fn synthesize(g: &crate::graph::Graph, trace: &crate::reduction::ReductionTrace) -> Result<DefenderEngine, StrategyError> {
    DefenderEngine::synthesize(g, trace)
}

#[cfg(test)]
mod tests;
