//! Exact tools for middle cube graphs, odd graphs and bipartite doubles.

pub mod algebra;
pub mod boundary;
pub mod cli;
pub mod doubles;
pub mod drg;
pub mod families;
pub mod graph;
pub mod hamilton;
pub mod spectral;
