//! Slice satisfaction, quorum tests and the greatest-quorum fixed point.
//!
//! [`SatisfactionIndex`] flattens every plain slice and every threshold
//! declaration (at any nesting level) into a *slot* with a counter of members
//! that are still available. Removing a node walks its occurrence list once;
//! a slot whose counter drops below its threshold dies and notifies its
//! parent (an enclosing declaration, or the owning node). A node dies once
//! all of its top-level slots are dead. Every occurrence is visited at most
//! once per run, so a run is linear in the instance size.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::model::{FbasInstance, Member, SliceSpec, ThresholdDef};
use crate::nodeset::{NodeId, NodeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Parent {
    Owner(u32),
    Slot(u32),
}

/// Instrumentation for one fixed-point run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FixpointStats {
    /// Node-to-slot occurrence references followed.
    pub reference_visits: usize,
    /// Nested declaration deaths forwarded to an enclosing declaration.
    pub slot_propagations: usize,
    /// Nodes of the input set removed by the fixed point.
    pub removed: usize,
    /// Counter and membership entries initialised for the run.
    pub setup: usize,
}

impl FixpointStats {
    /// Total elementary steps of the run.
    pub fn work(&self) -> usize {
        self.reference_visits + self.slot_propagations + self.removed + self.setup
    }
}

/// Reusable occurrence index over one instance.
#[derive(Clone, Debug)]
pub struct SatisfactionIndex {
    n: usize,
    need: Vec<u32>,
    initial_avail: Vec<u32>,
    parent: Vec<Parent>,
    initial_live: Vec<u32>,
    occ_start: Vec<usize>,
    occ_slot: Vec<u32>,
    nested_slots: usize,
}

impl SatisfactionIndex {
    pub fn new(instance: &FbasInstance) -> Self {
        let n = instance.len();
        let mut b = Builder {
            need: Vec::new(),
            avail: Vec::new(),
            parent: Vec::new(),
            pairs: Vec::new(),
            nested_slots: 0,
        };
        let mut initial_live = vec![0u32; n];
        for v in instance.nodes() {
            let owner = Parent::Owner(v.0 as u32);
            match instance.spec(v) {
                SliceSpec::Plain(slices) => {
                    for s in slices {
                        let id = b.slot(s.len(), s.len(), owner);
                        for u in s {
                            b.pairs.push((u.0, id));
                        }
                    }
                    initial_live[v.0] = slices.len() as u32;
                }
                SliceSpec::Nested(decls) => {
                    for d in decls {
                        b.threshold(d, owner);
                    }
                    initial_live[v.0] = decls.len() as u32;
                }
            }
        }

        // Counting sort of (node, slot) pairs into CSR form.
        let mut occ_start = vec![0usize; n + 1];
        for &(u, _) in &b.pairs {
            if u < n {
                occ_start[u + 1] += 1;
            }
        }
        for i in 0..n {
            occ_start[i + 1] += occ_start[i];
        }
        let mut cursor = occ_start.clone();
        let mut occ_slot = vec![0u32; occ_start[n]];
        for &(u, s) in &b.pairs {
            if u < n {
                occ_slot[cursor[u]] = s;
                cursor[u] += 1;
            }
        }

        SatisfactionIndex {
            n,
            need: b.need,
            initial_avail: b.avail,
            parent: b.parent,
            initial_live,
            occ_start,
            occ_slot,
            nested_slots: b.nested_slots,
        }
    }

    /// Number of node occurrences across all slice specifications.
    pub fn reference_count(&self) -> usize {
        self.occ_slot.len()
    }

    pub fn slot_count(&self) -> usize {
        self.need.len()
    }

    /// Threshold declarations that sit inside another declaration.
    pub fn nested_slot_count(&self) -> usize {
        self.nested_slots
    }

    pub fn max_quorum_within(&self, w: &NodeSet) -> NodeSet {
        self.run(w).0
    }

    /// Greatest fixed point of `x -> {v in x : v has a slice in x}` below `w`,
    /// with instrumentation.
    pub fn run(&self, w: &NodeSet) -> (NodeSet, FixpointStats) {
        let mut avail = self.initial_avail.clone();
        let mut live = self.initial_live.clone();
        let mut dead = vec![false; self.need.len()];
        let mut current = w.clone();
        let mut stats = FixpointStats {
            setup: self.n + self.need.len(),
            ..Default::default()
        };
        let mut queue: VecDeque<u32> = VecDeque::new();

        for v in 0..self.n {
            if !current.contains(NodeId(v)) {
                queue.push_back(v as u32);
            }
        }
        for s in 0..self.need.len() {
            if !dead[s] && avail[s] < self.need[s] {
                self.kill(s, &mut avail, &mut live, &mut dead, &mut current, &mut queue, &mut stats);
            }
        }

        while let Some(v) = queue.pop_front() {
            let v = v as usize;
            for k in self.occ_start[v]..self.occ_start[v + 1] {
                stats.reference_visits += 1;
                let s = self.occ_slot[k] as usize;
                avail[s] -= 1;
                if !dead[s] && avail[s] < self.need[s] {
                    self.kill(s, &mut avail, &mut live, &mut dead, &mut current, &mut queue, &mut stats);
                }
            }
        }
        (current, stats)
    }

    #[allow(clippy::too_many_arguments)]
    fn kill(
        &self,
        mut s: usize,
        avail: &mut [u32],
        live: &mut [u32],
        dead: &mut [bool],
        current: &mut NodeSet,
        queue: &mut VecDeque<u32>,
        stats: &mut FixpointStats,
    ) {
        loop {
            dead[s] = true;
            match self.parent[s] {
                Parent::Owner(u) => {
                    let u = u as usize;
                    live[u] -= 1;
                    if live[u] == 0 && current.remove(NodeId(u)) {
                        stats.removed += 1;
                        queue.push_back(u as u32);
                    }
                    return;
                }
                Parent::Slot(p) => {
                    stats.slot_propagations += 1;
                    let p = p as usize;
                    avail[p] -= 1;
                    if dead[p] || avail[p] >= self.need[p] {
                        return;
                    }
                    s = p;
                }
            }
        }
    }
}

struct Builder {
    need: Vec<u32>,
    avail: Vec<u32>,
    parent: Vec<Parent>,
    pairs: Vec<(usize, u32)>,
    nested_slots: usize,
}

impl Builder {
    fn slot(&mut self, need: usize, avail: usize, parent: Parent) -> u32 {
        let id = self.need.len() as u32;
        self.need.push(need as u32);
        self.avail.push(avail as u32);
        self.parent.push(parent);
        id
    }

    fn threshold(&mut self, def: &ThresholdDef, parent: Parent) -> u32 {
        if matches!(parent, Parent::Slot(_)) {
            self.nested_slots += 1;
        }
        let id = self.slot(def.threshold, def.members.len(), parent);
        for m in &def.members {
            match m {
                Member::Node(u) => self.pairs.push((u.0, id)),
                Member::Inner(inner) => {
                    self.threshold(inner, Parent::Slot(id));
                }
            }
        }
        id
    }
}

/// Whether `v`'s slice specification is satisfied by `w`. Linear in the size
/// of that specification.
pub fn has_slice_in(instance: &FbasInstance, v: NodeId, w: &NodeSet) -> Result<bool> {
    if !instance.contains_node(v) {
        return Err(Error::UnknownNode(v.to_string()));
    }
    Ok(instance.spec(v).is_satisfied_by(w))
}

/// Nonempty and every member has a slice inside the set.
pub fn is_quorum(instance: &FbasInstance, u: &NodeSet) -> bool {
    !u.is_empty() && u.iter().all(|v| instance.spec(v).is_satisfied_by(u))
}

/// The unique greatest quorum contained in `w`, or the empty set.
pub fn max_quorum_within(instance: &FbasInstance, w: &NodeSet) -> NodeSet {
    SatisfactionIndex::new(instance).max_quorum_within(w)
}

/// Does `w` contain a quorum that includes `v`?
pub fn quorum_subset(instance: &FbasInstance, w: &NodeSet, v: NodeId) -> Result<bool> {
    Ok(quorum_subset_with_stats(instance, w, v)?.0)
}

/// [`quorum_subset`] plus the instrumentation of its fixed-point run.
pub fn quorum_subset_with_stats(
    instance: &FbasInstance,
    w: &NodeSet,
    v: NodeId,
) -> Result<(bool, FixpointStats)> {
    if !instance.contains_node(v) {
        return Err(Error::UnknownNode(v.to_string()));
    }
    let (q, stats) = SatisfactionIndex::new(instance).run(w);
    Ok((q.contains(v), stats))
}
