//! Synthesis of adaptive test strategies for reactive systems from LTL
//! specifications.
//!
//! The pipeline: an LTL specification of the system under test plus a fault
//! model (kind and occurrence frequency) is turned into a synthesis
//! objective; bounded SAT-based synthesis with partial information produces
//! finite-state test strategies that force a specification violation on
//! every faulty realization; a model checker certifies every strategy; and
//! the harness executes strategies against machine-level implementations
//! and mutants.

pub mod context;
pub mod fault;
pub mod ltl;
pub mod signal;
pub mod trace;

pub mod testutil;
