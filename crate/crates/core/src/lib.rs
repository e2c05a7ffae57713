//! Computable permutations of countable sets and the constructions that
//! factor them: commutators, replete products, bounded-length words over
//! full moieties, monotone factorizations of ℚ, diagonal gluing, and a finite
//! Cayley-graph lab.

pub mod cli;
pub mod countable;
pub mod diagonal;
pub mod dsl;
pub mod error;
pub mod finite;
pub mod monotone;
pub mod orbits;
pub mod perm;
pub mod replete;
pub mod words;

pub use error::{Error, Result};
pub use perm::{Perm, Point};

/// Bounds shared by the lazy constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    /// Verification prefix.
    pub prefix: u64,
    /// Orbit tracing ceiling.
    pub trace_bound: u64,
    /// Points of Σ₁∩Σ₂ scanned when choosing a case.
    pub case_scan: u64,
    /// Candidates searched before a lazy choice gives up.
    pub stall_bound: u64,
    /// Stages a back-and-forth construction may run.
    pub stage_cap: u64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            prefix: 10_000,
            trace_bound: 1 << 20,
            case_scan: 10_000,
            stall_bound: 1_000_000,
            stage_cap: 10_000_000,
        }
    }
}
