//! Graph polynomials of Feynman graphs and Monte Carlo evaluation of the
//! periods of primitive log-divergent graphs.
//!
//! The integral is taken on the section `α_n = 1` (last edge), with each
//! remaining parameter mapped from the unit interval by
//! `α = (x/(1-x))^p`. With `p = 1` the integrand of graphs such as K4 is not
//! square integrable near subgraph boundaries and the standard error is
//! unreliable; the default `p = 2.5` keeps the variance finite in practice.

mod graph;
mod mc;
mod polynomial;

pub use graph::MultiGraph;
pub use mc::{
    integrator_selftest, period_mc, period_mc_with, snap_to_multiple, PeriodEstimate, SelfTestCase,
    MAP_EXPONENT, SHARDS,
};
pub use polynomial::{
    deletion_contraction_holds, divergent_subgraph, is_primitive_log_divergent, kirchhoff_polynomial,
    matrix_tree_count, spanning_trees, GraphPolynomial, SUBGRAPH_EDGE_LIMIT, TREE_EDGE_LIMIT,
};

#[cfg(test)]
mod tests;
