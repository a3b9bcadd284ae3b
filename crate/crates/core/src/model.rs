//! FBAS data model: nodes, slice specifications in the plain and the nested
//! threshold encodings, validation and size metrics.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::nodeset::{NodeId, NodeSet};

/// Default cap on the number of sets [`ThresholdDef::expand`] may produce.
pub const DEFAULT_EXPANSION_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Member {
    Node(NodeId),
    Inner(ThresholdDef),
}

/// "`threshold` of `members`".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdDef {
    pub threshold: usize,
    pub members: Vec<Member>,
}

impl ThresholdDef {
    pub fn new(threshold: usize, members: Vec<Member>) -> Self {
        ThresholdDef { threshold, members }
    }

    /// Threshold declaration over plain node leaves.
    pub fn of_nodes<I>(threshold: usize, nodes: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<NodeId>,
    {
        ThresholdDef {
            threshold,
            members: nodes.into_iter().map(|v| Member::Node(v.into())).collect(),
        }
    }

    pub fn is_satisfied_by(&self, w: &NodeSet) -> bool {
        let mut hits = 0;
        for m in &self.members {
            let ok = match m {
                Member::Node(v) => w.contains(*v),
                Member::Inner(d) => d.is_satisfied_by(w),
            };
            if ok {
                hits += 1;
                if hits >= self.threshold {
                    return true;
                }
            }
        }
        hits >= self.threshold
    }

    /// Recursive size: a node leaf counts one, a nested declaration counts the
    /// sum of its own members' sizes.
    pub fn size(&self) -> usize {
        self.members
            .iter()
            .map(|m| match m {
                Member::Node(_) => 1,
                Member::Inner(d) => d.size(),
            })
            .sum()
    }

    /// Every node leaf, in declaration order, duplicates included.
    pub fn leaves(&self) -> Vec<NodeId> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<NodeId>) {
        for m in &self.members {
            match m {
                Member::Node(v) => out.push(*v),
                Member::Inner(d) => d.collect_leaves(out),
            }
        }
    }

    pub fn depth(&self) -> usize {
        1 + self
            .members
            .iter()
            .map(|m| match m {
                Member::Node(_) => 0,
                Member::Inner(d) => d.depth(),
            })
            .max()
            .unwrap_or(0)
    }

    /// Minimal node sets satisfying this declaration: every satisfying set is
    /// a superset of one of them and none contains another. Output can be
    /// exponential in the input; meant as a small-instance oracle.
    pub fn expand(&self, universe: usize, cap: usize) -> Result<Vec<NodeSet>> {
        let families = self
            .members
            .iter()
            .map(|m| match m {
                Member::Node(v) => Ok(vec![NodeSet::from_indices(universe, [*v])]),
                Member::Inner(d) => d.expand(universe, cap),
            })
            .collect::<Result<Vec<_>>>()?;

        let t = self.threshold;
        if t == 0 {
            return Ok(vec![NodeSet::empty(universe)]);
        }
        if t > families.len() {
            return Ok(Vec::new());
        }

        let mut acc: BTreeSet<NodeSet> = BTreeSet::new();
        let mut chosen = Vec::with_capacity(t);
        choose_and_combine(&families, t, 0, &mut chosen, universe, cap, &mut acc)?;
        Ok(minimize(acc))
    }
}

fn choose_and_combine(
    families: &[Vec<NodeSet>],
    t: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    universe: usize,
    cap: usize,
    acc: &mut BTreeSet<NodeSet>,
) -> Result<()> {
    if chosen.len() == t {
        let mut partial = vec![NodeSet::empty(universe)];
        for &i in chosen.iter() {
            let mut next = Vec::with_capacity(partial.len() * families[i].len());
            for p in &partial {
                for s in &families[i] {
                    next.push(p.union(s));
                    if next.len() > cap {
                        return Err(Error::ExpansionCap { cap });
                    }
                }
            }
            partial = next;
        }
        acc.extend(partial);
        if acc.len() > cap {
            return Err(Error::ExpansionCap { cap });
        }
        return Ok(());
    }
    let remaining = t - chosen.len();
    for i in start..=families.len() - remaining {
        chosen.push(i);
        choose_and_combine(families, t, i + 1, chosen, universe, cap, acc)?;
        chosen.pop();
    }
    Ok(())
}

/// Keep only sets that contain no other set of the family.
fn minimize(family: BTreeSet<NodeSet>) -> Vec<NodeSet> {
    let mut by_size: Vec<NodeSet> = family.into_iter().collect();
    by_size.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<NodeSet> = Vec::new();
    for s in by_size {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Q(v): either explicit slices or alternative nested declarations. Both
/// lists are disjunctions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceSpec {
    Plain(Vec<Vec<NodeId>>),
    Nested(Vec<ThresholdDef>),
}

impl SliceSpec {
    pub fn is_satisfied_by(&self, w: &NodeSet) -> bool {
        match self {
            SliceSpec::Plain(slices) => slices.iter().any(|s| s.iter().all(|v| w.contains(*v))),
            SliceSpec::Nested(decls) => decls.iter().any(|d| d.is_satisfied_by(w)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            SliceSpec::Plain(slices) => slices.iter().map(Vec::len).sum(),
            SliceSpec::Nested(decls) => decls.iter().map(ThresholdDef::size).sum(),
        }
    }

    pub fn is_plain(&self) -> bool {
        matches!(self, SliceSpec::Plain(_))
    }

    /// Every node occurrence, declaration order, duplicates included.
    pub fn leaves(&self) -> Vec<NodeId> {
        match self {
            SliceSpec::Plain(slices) => slices.iter().flatten().copied().collect(),
            SliceSpec::Nested(decls) => decls.iter().flat_map(ThresholdDef::leaves).collect(),
        }
    }

    /// Minimal slices equivalent to this specification.
    pub fn expand(&self, universe: usize, cap: usize) -> Result<Vec<NodeSet>> {
        let mut all = BTreeSet::new();
        match self {
            SliceSpec::Plain(slices) => {
                all.extend(slices.iter().map(|s| NodeSet::from_indices(universe, s.iter().copied())));
            }
            SliceSpec::Nested(decls) => {
                for d in decls {
                    all.extend(d.expand(universe, cap)?);
                    if all.len() > cap {
                        return Err(Error::ExpansionCap { cap });
                    }
                }
            }
        }
        Ok(minimize(all))
    }
}

/// An FBAS `(V, Q)`. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FbasInstance {
    names: Vec<String>,
    specs: Vec<SliceSpec>,
    lookup: HashMap<String, NodeId>,
}

impl FbasInstance {
    /// Builds an instance from names and per-node specifications given in the
    /// same order. Only shape and name uniqueness are checked here; run
    /// [`validate`] for the semantic checks.
    pub fn new(names: Vec<String>, specs: Vec<SliceSpec>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if names.len() != specs.len() {
            return Err(Error::ShapeMismatch {
                names: names.len(),
                specs: specs.len(),
            });
        }
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if lookup.insert(name.clone(), NodeId(i)).is_some() {
                return Err(Error::DuplicateNode(name.clone()));
            }
        }
        Ok(FbasInstance {
            names,
            specs,
            lookup,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.names.len()).map(NodeId)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v.0]
    }

    pub fn id(&self, name: &str) -> Option<NodeId> {
        self.lookup.get(name).copied()
    }

    pub fn require_id(&self, name: &str) -> Result<NodeId> {
        self.id(name).ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn spec(&self, v: NodeId) -> &SliceSpec {
        &self.specs[v.0]
    }

    pub fn specs(&self) -> &[SliceSpec] {
        &self.specs
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        v.0 < self.names.len()
    }

    pub fn is_plain(&self) -> bool {
        self.specs.iter().all(SliceSpec::is_plain)
    }

    pub fn empty_set(&self) -> NodeSet {
        NodeSet::empty(self.len())
    }

    pub fn full_set(&self) -> NodeSet {
        NodeSet::full(self.len())
    }

    pub fn set_of<I>(&self, nodes: I) -> NodeSet
    where
        I: IntoIterator,
        I::Item: Into<NodeId>,
    {
        NodeSet::from_indices(self.len(), nodes)
    }

    /// Resolves names; unknown names are an error.
    pub fn set_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<NodeSet> {
        let mut set = self.empty_set();
        for n in names {
            set.insert(self.require_id(n.as_ref())?);
        }
        Ok(set)
    }

    pub fn set_names(&self, set: &NodeSet) -> Vec<String> {
        set.iter().map(|v| self.names[v.0].clone()).collect()
    }

    /// Same instance with every nested specification replaced by its
    /// expansion into explicit minimal slices.
    pub fn expand_to_plain(&self, cap: usize) -> Result<FbasInstance> {
        let specs = self
            .specs
            .iter()
            .map(|s| match s {
                SliceSpec::Plain(_) => Ok(s.clone()),
                SliceSpec::Nested(_) => Ok(SliceSpec::Plain(
                    s.expand(self.len(), cap)?.iter().map(NodeSet::to_vec).collect(),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        FbasInstance::new(self.names.clone(), specs)
    }
}

/// `|V|` plus the size of every slice specification.
pub fn instance_size(instance: &FbasInstance) -> usize {
    instance.len() + instance.specs().iter().map(SliceSpec::size).sum::<usize>()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub node: Option<String>,
    pub message: String,
}

impl Diagnostic {
    pub fn error(node: Option<&str>, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            node: node.map(str::to_string),
            message: message.into(),
        }
    }

    pub fn warning(node: Option<&str>, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            node: node.map(str::to_string),
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        match &self.node {
            Some(n) => write!(f, "{tag}: node {n}: {}", self.message),
            None => write!(f, "{tag}: {}", self.message),
        }
    }
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}

/// Semantic checks. Errors: dangling references, empty slice lists or slices,
/// duplicate slices, thresholds out of range, duplicate declaration members.
/// Warnings: a plain slice that omits its owner, repeated nodes inside one
/// plain slice.
pub fn validate(instance: &FbasInstance) -> Vec<Diagnostic> {
    let n = instance.len();
    let mut out = Vec::new();
    for v in instance.nodes() {
        let name = instance.name(v);
        let here = Some(name);
        let check_ref = |u: NodeId, out: &mut Vec<Diagnostic>| {
            if u.0 >= n {
                out.push(Diagnostic::error(here, format!("unknown node {u}")));
                false
            } else {
                true
            }
        };
        match instance.spec(v) {
            SliceSpec::Plain(slices) => {
                if slices.is_empty() {
                    out.push(Diagnostic::error(here, "empty slice list"));
                }
                let mut seen: HashSet<BTreeSet<NodeId>> = HashSet::new();
                let mut omits_owner = false;
                for (i, s) in slices.iter().enumerate() {
                    if s.is_empty() {
                        out.push(Diagnostic::error(here, format!("slice {i} is empty")));
                        continue;
                    }
                    let mut all_ok = true;
                    for &u in s {
                        all_ok &= check_ref(u, &mut out);
                    }
                    let members: BTreeSet<NodeId> = s.iter().copied().collect();
                    if members.len() != s.len() {
                        out.push(Diagnostic::warning(
                            here,
                            format!("slice {i} repeats a node"),
                        ));
                    }
                    if all_ok && !members.contains(&v) {
                        omits_owner = true;
                    }
                    if !seen.insert(members) {
                        out.push(Diagnostic::error(here, format!("duplicate slice {i}")));
                    }
                }
                if omits_owner {
                    out.push(Diagnostic::warning(
                        here,
                        "a slice omits its owner node (quorum semantics unaffected)",
                    ));
                }
            }
            SliceSpec::Nested(decls) => {
                if decls.is_empty() {
                    out.push(Diagnostic::error(here, "empty declaration list"));
                }
                for d in decls {
                    validate_threshold(d, n, here, &mut out);
                }
            }
        }
    }
    out
}

fn validate_threshold(def: &ThresholdDef, n: usize, here: Option<&str>, out: &mut Vec<Diagnostic>) {
    if def.members.is_empty() {
        out.push(Diagnostic::error(here, "declaration has no members"));
    } else if def.threshold == 0 {
        out.push(Diagnostic::error(here, "threshold must be positive"));
    } else if def.threshold > def.members.len() {
        out.push(Diagnostic::error(
            here,
            format!(
                "threshold exceeds members ({} > {})",
                def.threshold,
                def.members.len()
            ),
        ));
    }
    let mut seen_nodes = HashSet::new();
    let mut seen_inner: Vec<&ThresholdDef> = Vec::new();
    for m in &def.members {
        match m {
            Member::Node(u) => {
                if u.0 >= n {
                    out.push(Diagnostic::error(here, format!("unknown node {u}")));
                }
                if !seen_nodes.insert(*u) {
                    out.push(Diagnostic::error(
                        here,
                        format!("duplicate member {u} in declaration"),
                    ));
                }
            }
            Member::Inner(d) => {
                if seen_inner.contains(&d) {
                    out.push(Diagnostic::error(here, "duplicate nested declaration"));
                }
                seen_inner.push(d);
                validate_threshold(d, n, here, out);
            }
        }
    }
}
