//! Proper power graphs of finite permutation groups and the quotient
//! graphs that make their connected components countable.
//!
//! For a group `G ≤ S_n` the crate builds
//!
//! * the proper power graph `P_0(G)` on `G \ {id}`,
//! * the quotient power graph, identifying generators of the same cyclic
//!   subgroup,
//! * the order graph on element orders,
//! * the power-type graph on cycle types,
//!
//! together with the projections between them, and counts components by
//! breadth-first search, by the type-graph formula for fusion-controlled
//! groups, and by closed forms for `S_n`.
//!
//! ```
//! use powergraph::{counting, Caps};
//!
//! let trace = counting::run_procedure_sn(5, &Caps::default()).unwrap();
//! assert_eq!(trace.total.to_string(), "31");
//! assert_eq!(trace.step_count(), 3);
//! ```
//!
//! The `book/` directory next to this crate walks through the concepts; its
//! code listings are compiled and run as doc-tests of this crate.

pub mod counting;
pub mod error;
pub mod graphcore;
pub mod partitions;
pub mod permutations;
pub mod powergraphs;

pub use error::{Error, Result};

/// Resource caps for explicit enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Largest `n` for which `S_n` or `A_n` is enumerated.
    pub max_enumeration_degree: usize,
    /// Largest `n` for brute-force searches over `S_n` (normalizers, fusion).
    pub max_bruteforce_degree: usize,
    /// Largest order of a group closed from generators.
    pub max_group_order: usize,
    /// Largest group order for which the explicit graph `P_0(G)` is built.
    pub max_explicit_order: usize,
    /// Largest `n` for the graph-based `S_n` pipeline (quotient graph BFS).
    pub max_pipeline_degree: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_enumeration_degree: 10,
            max_bruteforce_degree: 7,
            max_group_order: 3_628_800,
            max_explicit_order: 40_320,
            max_pipeline_degree: 9,
        }
    }
}

impl Caps {
    pub fn unbounded() -> Self {
        Caps {
            max_enumeration_degree: usize::MAX,
            max_bruteforce_degree: usize::MAX,
            max_group_order: usize::MAX,
            max_explicit_order: usize::MAX,
            max_pipeline_degree: usize::MAX,
        }
    }
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/partitions.md")]
    mod partitions {}
    #[doc = include_str!("../../../book/src/permutations.md")]
    mod permutations {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/power-graphs.md")]
    mod power_graphs {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
