//! Dependency graph of an instance, its strongly connected components and the
//! configuration guideline that forces quorum intersection.
//!
//! Orientation: `C1 ⪰ C2` iff `C2` is reachable from `C1`. The greatest
//! element, when it exists, is the unique sink of the condensation.

use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{FbasInstance, Member, SliceSpec, ThresholdDef};
use crate::nodeset::{NodeId, NodeSet};

/// Edge `a -> b` iff `b` occurs anywhere in `a`'s slice specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FbasGraph {
    adjacency: Vec<Vec<NodeId>>,
}

impl FbasGraph {
    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    /// Sorted, deduplicated successors.
    pub fn successors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v.0]
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.adjacency[a.0].binary_search(&b).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    /// Whether the subgraph induced by `set` is strongly connected.
    pub fn induces_strongly_connected(&self, set: &NodeSet) -> bool {
        let Some(start) = set.iter().next() else {
            return false;
        };
        let forward = self.reach_within(start, set, false);
        let backward = self.reach_within(start, set, true);
        forward == *set && backward == *set
    }

    fn reach_within(&self, start: NodeId, set: &NodeSet, reverse: bool) -> NodeSet {
        let mut seen = NodeSet::empty(self.len());
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let next: Box<dyn Iterator<Item = NodeId>> = if reverse {
                Box::new(set.iter().filter(move |&u| self.has_edge(u, v)))
            } else {
                Box::new(self.adjacency[v.0].iter().copied())
            };
            for u in next {
                if set.contains(u) && seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen
    }
}

pub fn build_graph(instance: &FbasInstance) -> FbasGraph {
    let n = instance.len();
    let adjacency = instance
        .nodes()
        .map(|v| {
            let mut succ: Vec<NodeId> = instance
                .spec(v)
                .leaves()
                .into_iter()
                .filter(|u| u.0 < n)
                .collect();
            succ.sort_unstable();
            succ.dedup();
            succ
        })
        .collect();
    FbasGraph { adjacency }
}

/// Strongly connected components with their condensation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccPartition {
    /// Component id per node. Ids are assigned by smallest contained node.
    component_of: Vec<usize>,
    /// Node sets, indexed by component id.
    members: Vec<NodeSet>,
    /// Component ids in reverse topological order (sinks first).
    reverse_topological: Vec<usize>,
    /// Sorted successor components of each component in the condensation.
    successors: Vec<Vec<usize>>,
}

impl SccPartition {
    pub fn component_count(&self) -> usize {
        self.members.len()
    }

    pub fn component_of(&self, v: NodeId) -> usize {
        self.component_of[v.0]
    }

    pub fn members(&self, c: usize) -> &NodeSet {
        &self.members[c]
    }

    pub fn components(&self) -> &[NodeSet] {
        &self.members
    }

    pub fn reverse_topological(&self) -> &[usize] {
        &self.reverse_topological
    }

    pub fn successors(&self, c: usize) -> &[usize] {
        &self.successors[c]
    }

    /// Components with no outgoing condensation edge, i.e. the maximal
    /// elements of `⪰`.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&c| self.successors[c].is_empty())
            .collect()
    }

    /// The component reachable from every component, if there is exactly one
    /// sink.
    pub fn greatest(&self) -> Option<usize> {
        match self.sinks().as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }

    /// Whether `to` is reachable from `from` in the condensation (reflexive).
    pub fn reaches(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.members.len()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(c) = stack.pop() {
            if c == to {
                return true;
            }
            for &d in &self.successors[c] {
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        false
    }
}

pub fn scc_partition(graph: &FbasGraph) -> SccPartition {
    let n = graph.len();
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, graph.edge_count());
    for _ in 0..n {
        g.add_node(());
    }
    for a in 0..n {
        for b in &graph.adjacency[a] {
            g.add_edge(NodeIndex::new(a), NodeIndex::new(b.0), ());
        }
    }
    // Tarjan emits components in reverse topological order.
    let raw = tarjan_scc(&g);

    let mut by_min: Vec<(usize, usize)> = raw
        .iter()
        .enumerate()
        .map(|(i, comp)| (comp.iter().map(|x| x.index()).min().unwrap_or(0), i))
        .collect();
    by_min.sort_unstable();
    let mut id_of_raw = vec![0usize; raw.len()];
    for (id, &(_, raw_i)) in by_min.iter().enumerate() {
        id_of_raw[raw_i] = id;
    }

    let mut component_of = vec![0usize; n];
    let mut members = vec![NodeSet::empty(n); raw.len()];
    for (raw_i, comp) in raw.iter().enumerate() {
        let id = id_of_raw[raw_i];
        for x in comp {
            component_of[x.index()] = id;
            members[id].insert(NodeId(x.index()));
        }
    }
    let reverse_topological = (0..raw.len()).map(|i| id_of_raw[i]).collect();

    let mut successors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); raw.len()];
    for a in 0..n {
        for b in &graph.adjacency[a] {
            let (ca, cb) = (component_of[a], component_of[b.0]);
            if ca != cb {
                successors[ca].insert(cb);
            }
        }
    }

    SccPartition {
        component_of,
        members,
        reverse_topological,
        successors: successors
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GuidelineReport {
    pub conforms: bool,
    pub reasons: Vec<String>,
}

/// Checks the two configuration rules:
///
/// 1. the condensation has a unique greatest component;
/// 2. each node declares exactly the canonical pattern: inside the greatest
///    component `G` of size `m`, a single `(m/2 + 1) of G`; elsewhere a
///    single `2 of {(m/2 + 1) of own component, 1 of D}` where `D` is the full
///    node set of a different component.
pub fn check_guidelines(instance: &FbasInstance) -> GuidelineReport {
    let graph = build_graph(instance);
    let scc = scc_partition(&graph);
    let mut reasons = Vec::new();

    let greatest = scc.greatest();
    if greatest.is_none() {
        let sinks = scc.sinks();
        reasons.push(format!(
            "rule 1: no greatest strongly connected component ({} maximal components)",
            sinks.len()
        ));
    }

    for v in instance.nodes() {
        let own = scc.component_of(v);
        let own_set = scc.members(own);
        let ok = match instance.spec(v) {
            SliceSpec::Nested(decls) if decls.len() == 1 => {
                let d = &decls[0];
                if Some(own) == greatest || greatest.is_none() && scc.successors(own).is_empty() {
                    is_majority_of(d, own_set)
                } else {
                    is_canonical_dependent(d, own_set, &scc, own)
                }
            }
            _ => false,
        };
        if !ok {
            reasons.push(format!(
                "rule 2: node {} does not declare a majority of its own component{}",
                instance.name(v),
                if Some(own) == greatest {
                    ""
                } else {
                    " plus one node of another component"
                }
            ));
        }
    }

    GuidelineReport {
        conforms: reasons.is_empty(),
        reasons,
    }
}

fn leaf_set(def: &ThresholdDef, universe: usize) -> Option<NodeSet> {
    let mut set = NodeSet::empty(universe);
    for m in &def.members {
        match m {
            Member::Node(v) if v.0 < universe => {
                if !set.insert(*v) {
                    return None;
                }
            }
            _ => return None,
        }
    }
    Some(set)
}

fn majority(m: usize) -> usize {
    m / 2 + 1
}

fn is_majority_of(def: &ThresholdDef, component: &NodeSet) -> bool {
    def.threshold == majority(component.len())
        && leaf_set(def, component.universe()).as_ref() == Some(component)
}

fn is_canonical_dependent(def: &ThresholdDef, own_set: &NodeSet, scc: &SccPartition, own: usize) -> bool {
    let [Member::Inner(first), Member::Inner(second)] = def.members.as_slice() else {
        return false;
    };
    if def.threshold != 2 || !is_majority_of(first, own_set) || second.threshold != 1 {
        return false;
    }
    let Some(other) = leaf_set(second, own_set.universe()) else {
        return false;
    };
    let Some(first_node) = other.iter().next() else {
        return false;
    };
    let target = scc.component_of(first_node);
    target != own && scc.members(target) == &other
}

/// Emits a guideline-conforming nested instance. Component 0 is the greatest
/// one; every later component `i` depends on a component chosen uniformly
/// among `0..i` (seeded). Node names are `c<i>n<j>`.
pub fn generate_guideline_config(scc_sizes: &[usize], seed: u64) -> Result<FbasInstance> {
    if scc_sizes.is_empty() {
        return Err(Error::InvalidInput("at least one component size required".into()));
    }
    if let Some(pos) = scc_sizes.iter().position(|&m| m == 0) {
        return Err(Error::InvalidInput(format!("component {pos} has size 0")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut offsets = Vec::with_capacity(scc_sizes.len());
    let mut names = Vec::new();
    for (i, &m) in scc_sizes.iter().enumerate() {
        offsets.push(names.len());
        names.extend((0..m).map(|j| format!("c{i}n{j}")));
    }
    let range = |i: usize| (offsets[i]..offsets[i] + scc_sizes[i]).map(NodeId);

    let mut specs = Vec::with_capacity(names.len());
    for (i, &m) in scc_sizes.iter().enumerate() {
        let own = ThresholdDef::of_nodes(majority(m), range(i));
        let decl = if i == 0 {
            own
        } else {
            let target = rng.random_range(0..i);
            ThresholdDef::new(
                2,
                vec![
                    Member::Inner(own),
                    Member::Inner(ThresholdDef::of_nodes(1, range(target))),
                ],
            )
        };
        for _ in 0..m {
            specs.push(SliceSpec::Nested(vec![decl.clone()]));
        }
    }
    FbasInstance::new(names, specs)
}
