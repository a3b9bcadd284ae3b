//! Analysis toolkit for federated Byzantine agreement systems (FBAS).
//!
//! An FBAS is a set of nodes where each node names the *quorum slices* it
//! trusts. A quorum is a nonempty node set containing a slice of each of its
//! members. This crate decides whether two disjoint quorums exist, finds
//! minimal and minimum quorums, answers quorum containment queries in linear
//! time, enumerates quorums with polynomial delay and generates hard
//! instances from classical NP-hard and P-complete problems.

pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod intersect;
pub mod io;
pub mod model;
pub mod nodeset;
pub mod reductions;
pub mod satisfaction;

pub use error::{Error, Result};
pub use model::{
    has_errors, instance_size, validate, Diagnostic, FbasInstance, Member, Severity, SliceSpec,
    ThresholdDef, DEFAULT_EXPANSION_CAP,
};
pub use nodeset::{NodeId, NodeSet};
pub use satisfaction::{
    has_slice_in, is_quorum, max_quorum_within, quorum_subset, FixpointStats, SatisfactionIndex,
};
pub use enumerate::{
    enumerate_quorums, find_min_quorum, mqp_bounded_search, shrink_to_minimal, QuorumEnumerator,
};
pub use graph::{build_graph, check_guidelines, generate_guideline_config, scc_partition};
pub use intersect::{
    brute_force_dqp, brute_force_min_quorum, disjoint_quorums, dqp_k_random, Verdict, Witness,
};
pub use io::{generate_random, parse_instance, serialize_instance, Profile};
