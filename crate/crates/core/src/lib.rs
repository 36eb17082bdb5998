//! T-depth-optimal Clifford+T synthesis for multi-output Boolean functions.
//!
//! The pipeline compiles a function given in algebraic normal form (or as a
//! truth table) into a reversible circuit with four stages: CNOT fan-out of
//! input copies, one balanced AND-tree per nonlinear monomial (all trees run
//! in parallel), CNOT accumulation of each output coordinate, and
//! measurement-based uncomputation of every scratch qubit. With the
//! T-depth-1 Toffoli gadget the whole circuit reaches T depth
//! `ceil(log2(deg f))`; the logical-AND gadget trades one extra T layer for
//! fewer qubits.
//!
//! Modules:
//! - [`anf`]: Boolean functions, truth-table/ANF conversion, the text formats
//! - [`circuit`]: gate-level IR, ASAP scheduling, depth/count metrics, export
//! - [`decomp`]: Toffoli gadgets and balanced multi-controlled-Toffoli trees
//! - [`synth`]: the four-stage compiler
//! - [`estimate`]: closed-form and per-function resource accounting
//! - [`verify`]: reversible and branched statevector simulation oracles
//! - [`ciphers`]: LowMC and AES S-box targets plus AES aggregate costs
//! - [`cli`]: the `anf-tdepth` command line

pub mod anf;
pub mod ciphers;
pub mod circuit;
pub mod cli;
pub mod decomp;
pub mod estimate;
pub mod synth;
pub mod verify;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("format error: {0}")]
    Format(String),
    #[error("variable index {index} out of range for {n} variables")]
    VariableRange { index: usize, n: usize },
    #[error("arity {n} exceeds the dense truth-table limit of {limit} variables")]
    ArityLimit { n: usize, limit: usize },
    #[error("gate operands must be distinct and reference allocated qubits")]
    InvalidOperands,
    #[error("classical bit {0} is read before any measurement writes it")]
    UnwrittenClassicalBit(u32),
    #[error("operation requires {expected:?} granularity, circuit is {actual:?}")]
    Granularity {
        expected: crate::circuit::Granularity,
        actual: crate::circuit::Granularity,
    },
    #[error("T metrics are undefined at Toffoli granularity; lower the circuit first")]
    TMetricsAtToffoliLevel,
    #[error("lowering needs {needed} helper qubits but only {available} are reserved")]
    HelperAllocation { needed: usize, available: usize },
    #[error("statevector width {width} exceeds the {limit}-qubit simulation limit")]
    StateWidth { width: usize, limit: usize },
    #[error("exhaustive check supports at most {limit} input variables, got {n}")]
    ExhaustiveWidth { n: usize, limit: usize },
    #[error("{0}")]
    Domain(String),
    #[error("embedded table integrity check failed: {0}")]
    Integrity(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
