//! Quorum enumeration with polynomial delay, greedy shrinking to a minimal
//! quorum, exact minimum-quorum search and the bounded search for instances
//! with few slices per cardinality.
//!
//! Enumeration branches over nodes in declaration order σ. A branch keeps the
//! undecided set `V1` and the required set `V2`; it stays alive only while
//! `V2` lies inside the greatest quorum of `V1 ∪ V2`. Including the next node
//! first yields quorums in σ-lexicographic order.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{FbasInstance, SliceSpec};
use crate::nodeset::{NodeId, NodeSet};
use crate::satisfaction::{is_quorum, SatisfactionIndex};

/// One node of the branching tree. `pool` is `V1 ∪ V2`, `core` its greatest
/// quorum; `required` is `V2`.
#[derive(Clone, Debug)]
struct Branch {
    pool: NodeSet,
    core: NodeSet,
    required: NodeSet,
    cursor: usize,
}

/// Streams every quorum inside a node set, each exactly once, in
/// σ-lexicographic order. Pull-based: drop it to stop early.
pub struct QuorumEnumerator<'a> {
    instance: &'a FbasInstance,
    index: SatisfactionIndex,
    order: Vec<NodeId>,
    stack: Vec<Branch>,
    work: usize,
    branches: usize,
}

impl<'a> QuorumEnumerator<'a> {
    pub fn new(instance: &'a FbasInstance, within: &NodeSet) -> Self {
        let index = SatisfactionIndex::new(instance);
        let order: Vec<NodeId> = within.iter().collect();
        let (core, stats) = index.run(within);
        let mut stack = Vec::new();
        if !core.is_empty() {
            stack.push(Branch {
                pool: within.clone(),
                core,
                required: instance.empty_set(),
                cursor: 0,
            });
        }
        QuorumEnumerator {
            instance,
            index,
            order,
            stack,
            work: stats.work(),
            branches: 0,
        }
    }

    /// Elementary steps performed so far (fixed-point work, quorum checks
    /// and branch bookkeeping).
    pub fn work(&self) -> usize {
        self.work
    }

    /// Branching-tree nodes expanded so far.
    pub fn branches(&self) -> usize {
        self.branches
    }
}

impl Iterator for QuorumEnumerator<'_> {
    type Item = NodeSet;

    fn next(&mut self) -> Option<NodeSet> {
        while let Some(b) = self.stack.pop() {
            self.branches += 1;
            self.work += 1;
            if b.cursor == self.order.len() {
                continue;
            }
            let u = self.order[b.cursor];

            // Exclude u. If u is outside the core the core is unchanged.
            let excluded_pool = b.pool.without(u);
            let excluded_core = if b.core.contains(u) {
                let (core, stats) = self.index.run(&excluded_pool);
                self.work += stats.work();
                core
            } else {
                b.core.clone()
            };
            if !excluded_core.is_empty() && b.required.is_subset(&excluded_core) {
                self.stack.push(Branch {
                    pool: excluded_pool,
                    core: excluded_core,
                    required: b.required.clone(),
                    cursor: b.cursor + 1,
                });
            }

            // Include u; pool and core stay the same.
            if b.core.contains(u) {
                let required = b.required.with(u);
                let emitted = quorum_check(self.instance, &required, &mut self.work);
                self.stack.push(Branch {
                    pool: b.pool,
                    core: b.core,
                    required: required.clone(),
                    cursor: b.cursor + 1,
                });
                if emitted {
                    return Some(required);
                }
            }
        }
        None
    }
}

fn quorum_check(instance: &FbasInstance, set: &NodeSet, work: &mut usize) -> bool {
    *work += set.iter().map(|v| instance.spec(v).size() + 1).sum::<usize>();
    is_quorum(instance, set)
}

/// Feeds quorums inside `within` to `emit` until exhaustion, `limit`
/// emissions, or `emit` returns `false`. Returns the number emitted.
pub fn enumerate_quorums<F>(
    instance: &FbasInstance,
    within: &NodeSet,
    limit: Option<usize>,
    mut emit: F,
) -> usize
where
    F: FnMut(&NodeSet) -> bool,
{
    let mut count = 0;
    for q in QuorumEnumerator::new(instance, within) {
        if limit.is_some_and(|l| count >= l) {
            break;
        }
        count += 1;
        if !emit(&q) {
            break;
        }
    }
    count
}

/// A quorum is minimal iff removing any single member leaves no quorum
/// inside the rest.
pub fn is_minimal_quorum(index: &SatisfactionIndex, instance: &FbasInstance, q: &NodeSet) -> bool {
    is_quorum(instance, q) && q.iter().all(|v| index.max_quorum_within(&q.without(v)).is_empty())
}

/// Greedy shrink in σ order: drop a node whenever the rest still contains a
/// quorum, continuing from that greatest quorum.
pub fn shrink_to_minimal(instance: &FbasInstance, u: &NodeSet) -> Result<NodeSet> {
    if !is_quorum(instance, u) {
        return Err(Error::NotAQuorum);
    }
    let index = SatisfactionIndex::new(instance);
    Ok(shrink_with(&index, u))
}

fn shrink_with(index: &SatisfactionIndex, u: &NodeSet) -> NodeSet {
    let mut current = u.clone();
    for v in u.iter() {
        if !current.contains(v) {
            continue;
        }
        let rest = index.max_quorum_within(&current.without(v));
        if !rest.is_empty() {
            current = rest;
        }
    }
    current
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub branches: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinQuorum {
    pub quorum: NodeSet,
    pub stats: SearchStats,
}

/// Exact minimum quorum by branch and bound over the enumeration tree.
/// Ties go to the σ-lexicographically smallest set.
pub fn find_min_quorum(instance: &FbasInstance) -> Result<MinQuorum> {
    let index = SatisfactionIndex::new(instance);
    let all = instance.full_set();
    let core = index.max_quorum_within(&all);
    if core.is_empty() {
        return Err(Error::NoQuorum);
    }
    let mut best = shrink_with(&index, &core);
    let order: Vec<NodeId> = instance.nodes().collect();
    let mut stats = SearchStats::default();
    let mut stack = vec![Branch {
        pool: all,
        core,
        required: instance.empty_set(),
        cursor: 0,
    }];

    while let Some(b) = stack.pop() {
        stats.branches += 1;
        if b.cursor == order.len() || b.required.len() >= best.len() {
            continue;
        }
        let u = order[b.cursor];

        let excluded_pool = b.pool.without(u);
        let excluded_core = if b.core.contains(u) {
            index.max_quorum_within(&excluded_pool)
        } else {
            b.core.clone()
        };
        if !excluded_core.is_empty() && b.required.is_subset(&excluded_core) {
            stack.push(Branch {
                pool: excluded_pool,
                core: excluded_core,
                required: b.required.clone(),
                cursor: b.cursor + 1,
            });
        }

        if b.core.contains(u) {
            let required = b.required.with(u);
            if is_quorum(instance, &required) {
                if required.len() < best.len() || required.len() == best.len() && required < best {
                    best = required;
                }
            } else if required.len() < best.len() {
                stack.push(Branch {
                    pool: b.pool,
                    core: b.core,
                    required,
                    cursor: b.cursor + 1,
                });
            }
        }
    }
    Ok(MinQuorum {
        quorum: best,
        stats,
    })
}

/// Bounded search for a quorum of at most `k` nodes on a plain instance where
/// every node has at most `r` slices of any one cardinality. Work is
/// `O((k r)^k · poly(n))`.
pub fn mqp_bounded_search(
    instance: &FbasInstance,
    k: usize,
    r: usize,
) -> Result<(Option<NodeSet>, SearchStats)> {
    let n = instance.len();
    let mut slices: Vec<Vec<NodeSet>> = Vec::with_capacity(n);
    for v in instance.nodes() {
        let SliceSpec::Plain(list) = instance.spec(v) else {
            return Err(Error::NestedEncoding("bounded search"));
        };
        let sets: Vec<NodeSet> = list
            .iter()
            .map(|s| NodeSet::from_indices(n, s.iter().copied()))
            .collect();
        let mut per_size: HashMap<usize, usize> = HashMap::new();
        for s in &sets {
            *per_size.entry(s.len()).or_default() += 1;
        }
        if let Some((&cardinality, &count)) = per_size
            .iter()
            .filter(|(_, &c)| c > r)
            .min_by_key(|(&card, _)| card)
        {
            return Err(Error::MultiplicityExceeded {
                node: instance.name(v).to_string(),
                cardinality,
                count,
                bound: r,
            });
        }
        slices.push(sets.into_iter().filter(|s| s.len() <= k).collect());
    }

    let mut stats = SearchStats::default();
    if k == 0 {
        return Ok((None, stats));
    }
    for v in instance.nodes() {
        let seed = instance.set_of([v]);
        if let Some(q) = bounded_branch(instance, &slices, seed, k, &mut stats) {
            debug_assert!(is_quorum(instance, &q) && q.len() <= k);
            return Ok((Some(q), stats));
        }
    }
    Ok((None, stats))
}

fn bounded_branch(
    instance: &FbasInstance,
    slices: &[Vec<NodeSet>],
    w: NodeSet,
    k: usize,
    stats: &mut SearchStats,
) -> Option<NodeSet> {
    stats.branches += 1;
    if w.len() > k {
        return None;
    }
    let Some(lacking) = w.iter().find(|&v| !slices_hit(instance, v, &w)) else {
        return Some(w);
    };
    for s in &slices[lacking.0] {
        let next = w.union(s);
        if next.len() <= k {
            if let Some(q) = bounded_branch(instance, slices, next, k, stats) {
                return Some(q);
            }
        }
    }
    None
}

fn slices_hit(instance: &FbasInstance, v: NodeId, w: &NodeSet) -> bool {
    instance.spec(v).is_satisfied_by(w)
}
