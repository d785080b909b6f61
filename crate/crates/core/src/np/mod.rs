//! Satisfiability and Hamiltonian paths as functions on natural numbers.
//!
//! A Boolean expression is numbered through its symbol sequence
//! `s₁ s₂ … s_n` as `2^SN(s₁) · 3^SN(s₂) ⋯`, and `sat_fn(x)` is 1 exactly when
//! `x` numbers a satisfiable expression. Graphs with designated end points are
//! numbered likewise and `hampath_fn` decides Hamiltonian paths.

mod boolexpr;
mod graph;
mod sat;

use thiserror::Error;

pub use boolexpr::{decode_gn, gn, parse_bool, parse_expr_file, sn, BoolExpr, NotWellFormed, Symbol};
pub use graph::{
    decode_graph, encode_graph, hampath_brute, hampath_fn, parse_graph, render_graph, Digraph, MAX_NODES,
};
pub use sat::{sat_fn, truth_table, truth_table_sat, TruthTable, MAX_VARIABLES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NpError {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("line {line}: {msg}")]
    FileLine { line: usize, msg: String },
    #[error("{0} variables exceed the truth-table limit of {MAX_VARIABLES}")]
    TooManyVariables(usize),
    #[error("{0} nodes exceed the search limit of {MAX_NODES}")]
    TooManyNodes(usize),
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
}

#[cfg(test)]
mod tests;
