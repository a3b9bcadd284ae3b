//! JSON instance documents and seeded random instances.
//!
//! ```json
//! {
//!   "nodes": [
//!     { "id": "a", "slices": [["a", "b"]] },
//!     { "id": "b", "qset": [{ "threshold": 1, "members": ["a", { "threshold": 1, "members": ["b"] }] }] }
//!   ]
//! }
//! ```
//!
//! Each node carries exactly one of `slices` (plain) or `qset` (nested).
//! Serialization is canonical: declaration order, two-space indentation and a
//! single trailing newline, so `serialize ∘ parse ∘ serialize = serialize`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::model::{validate, Diagnostic, FbasInstance, Member, SliceSpec, ThresholdDef};
use crate::nodeset::NodeId;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    nodes: Vec<NodeDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    slices: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    qset: Option<Vec<ThresholdDoc>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThresholdDoc {
    threshold: usize,
    members: Vec<MemberDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum MemberDoc {
    Node(String),
    Inner(ThresholdDoc),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("invalid instance:\n{}", DiagnosticList(.0))]
    Invalid(Vec<Diagnostic>),
}

struct DiagnosticList<'a>(&'a [Diagnostic]);

impl fmt::Display for DiagnosticList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  {d}")?;
        }
        Ok(())
    }
}

impl ParseError {
    /// Diagnostics of a structurally readable but invalid document.
    pub fn diagnostics(&self) -> Option<&[Diagnostic]> {
        match self {
            ParseError::Invalid(d) => Some(d),
            _ => None,
        }
    }
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

/// Reads JSON text into the wire form, reporting syntax errors by position
/// and type mismatches by JSON path.
fn read_document(text: &str) -> Result<Document, ParseError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_syntax() || inner.is_eof() {
            ParseError::Syntax {
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        } else {
            schema(path, inner.to_string())
        }
    })?;
    Ok(doc)
}

/// Parses and resolves names without semantic validation. Unknown names are
/// still reported, as [`ParseError::Invalid`].
pub fn parse_unvalidated(text: &str) -> Result<FbasInstance, ParseError> {
    let doc = read_document(text)?;
    if doc.nodes.is_empty() {
        return Err(schema("nodes", "instance has no nodes"));
    }
    let mut lookup: HashMap<&str, NodeId> = HashMap::with_capacity(doc.nodes.len());
    for (i, node) in doc.nodes.iter().enumerate() {
        if lookup.insert(node.id.as_str(), NodeId(i)).is_some() {
            return Err(schema(format!("nodes[{i}].id"), format!("duplicate node id {}", node.id)));
        }
    }

    let mut diagnostics = Vec::new();
    let mut specs = Vec::with_capacity(doc.nodes.len());
    for (i, node) in doc.nodes.iter().enumerate() {
        let mut resolve = |name: &str| match lookup.get(name) {
            Some(&v) => v,
            None => {
                diagnostics.push(Diagnostic::error(
                    Some(&node.id),
                    format!("unknown node {name}"),
                ));
                NodeId(usize::MAX)
            }
        };
        let spec = match (&node.slices, &node.qset) {
            (Some(slices), None) => SliceSpec::Plain(
                slices
                    .iter()
                    .map(|s| s.iter().map(|n| resolve(n)).collect())
                    .collect(),
            ),
            (None, Some(qset)) => {
                SliceSpec::Nested(qset.iter().map(|t| resolve_threshold(t, &mut resolve)).collect())
            }
            (Some(_), Some(_)) => {
                return Err(schema(
                    format!("nodes[{i}]"),
                    format!("node {} has both \"slices\" and \"qset\"", node.id),
                ))
            }
            (None, None) => {
                return Err(schema(
                    format!("nodes[{i}]"),
                    format!("node {} has no slice specification", node.id),
                ))
            }
        };
        specs.push(spec);
    }
    if !diagnostics.is_empty() {
        return Err(ParseError::Invalid(diagnostics));
    }
    let names = doc.nodes.into_iter().map(|n| n.id).collect();
    FbasInstance::new(names, specs).map_err(|e| schema("nodes", e.to_string()))
}

fn resolve_threshold(t: &ThresholdDoc, resolve: &mut impl FnMut(&str) -> NodeId) -> ThresholdDef {
    ThresholdDef {
        threshold: t.threshold,
        members: t
            .members
            .iter()
            .map(|m| match m {
                MemberDoc::Node(n) => Member::Node(resolve(n)),
                MemberDoc::Inner(inner) => Member::Inner(resolve_threshold(inner, resolve)),
            })
            .collect(),
    }
}

/// Parses a document and rejects it if validation reports any error.
/// Warning-only instances are accepted.
pub fn parse_instance(text: &str) -> Result<FbasInstance, ParseError> {
    let instance = parse_unvalidated(text)?;
    let diagnostics = validate(&instance);
    if diagnostics.iter().any(Diagnostic::is_error) {
        return Err(ParseError::Invalid(
            diagnostics.into_iter().filter(Diagnostic::is_error).collect(),
        ));
    }
    Ok(instance)
}

/// Canonical document text, ending in a single newline.
pub fn serialize_instance(instance: &FbasInstance) -> String {
    let name = |v: &NodeId| instance.name(*v).to_string();
    let nodes = instance
        .nodes()
        .map(|v| {
            let (slices, qset) = match instance.spec(v) {
                SliceSpec::Plain(list) => (
                    Some(list.iter().map(|s| s.iter().map(name).collect()).collect()),
                    None,
                ),
                SliceSpec::Nested(decls) => (
                    None,
                    Some(decls.iter().map(|d| threshold_doc(instance, d)).collect()),
                ),
            };
            NodeDoc {
                id: instance.name(v).to_string(),
                slices,
                qset,
            }
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&Document { nodes }).expect("document serializes");
    out.push('\n');
    out
}

fn threshold_doc(instance: &FbasInstance, d: &ThresholdDef) -> ThresholdDoc {
    ThresholdDoc {
        threshold: d.threshold,
        members: d
            .members
            .iter()
            .map(|m| match m {
                Member::Node(v) => MemberDoc::Node(instance.name(*v).to_string()),
                Member::Inner(inner) => MemberDoc::Inner(threshold_doc(instance, inner)),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlainProfile {
    pub min_slices: usize,
    pub max_slices: usize,
    pub min_slice_size: usize,
    pub max_slice_size: usize,
    /// Probability that a slice is forced to contain its owner.
    pub owner_probability: f64,
}

impl Default for PlainProfile {
    fn default() -> Self {
        PlainProfile {
            min_slices: 1,
            max_slices: 3,
            min_slice_size: 1,
            max_slice_size: 3,
            owner_probability: 0.7,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NestedProfile {
    pub max_declarations: usize,
    pub max_members: usize,
    pub max_depth: usize,
    /// Probability that a member below `max_depth` is a nested declaration.
    pub inner_probability: f64,
}

impl Default for NestedProfile {
    fn default() -> Self {
        NestedProfile {
            max_declarations: 2,
            max_members: 4,
            max_depth: 2,
            inner_probability: 0.3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Profile {
    Plain(PlainProfile),
    Nested(NestedProfile),
}

impl Profile {
    pub fn plain() -> Self {
        Profile::Plain(PlainProfile::default())
    }

    pub fn nested() -> Self {
        Profile::Nested(NestedProfile::default())
    }
}

/// Seeded random instance with nodes `n0..n{n-1}`. A pure function of its
/// arguments; the output always validates without errors.
pub fn generate_random(n: usize, profile: &Profile, seed: u64) -> Result<FbasInstance, Error> {
    if n == 0 {
        return Err(Error::InfeasibleProfile("node count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let specs = match profile {
        Profile::Plain(p) => {
            check_plain(p, n)?;
            (0..n).map(|v| random_plain(&mut rng, p, n, v)).collect()
        }
        Profile::Nested(p) => {
            if p.max_declarations == 0 || p.max_members == 0 || p.max_depth == 0 {
                return Err(Error::InfeasibleProfile(
                    "declaration count, member count and depth must be positive".into(),
                ));
            }
            (0..n)
                .map(|_| {
                    let k = rng.random_range(1..=p.max_declarations);
                    SliceSpec::Nested((0..k).map(|_| random_threshold(&mut rng, p, n, 1)).collect())
                })
                .collect()
        }
    };
    FbasInstance::new(names, specs)
}

fn check_plain(p: &PlainProfile, n: usize) -> Result<(), Error> {
    let bad = |m: &str| Err(Error::InfeasibleProfile(m.to_string()));
    if p.min_slices == 0 || p.min_slices > p.max_slices {
        return bad("slice count range must satisfy 1 <= min <= max");
    }
    if p.min_slice_size == 0 || p.min_slice_size > p.max_slice_size {
        return bad("slice size range must satisfy 1 <= min <= max");
    }
    if p.min_slice_size > n {
        return Err(Error::InfeasibleProfile(format!(
            "slice size {} exceeds node count {n}",
            p.min_slice_size
        )));
    }
    if !(0.0..=1.0).contains(&p.owner_probability) {
        return bad("owner probability must lie in [0, 1]");
    }
    Ok(())
}

fn random_plain(rng: &mut ChaCha8Rng, p: &PlainProfile, n: usize, owner: usize) -> SliceSpec {
    let wanted = rng.random_range(p.min_slices..=p.max_slices);
    let max_size = p.max_slice_size.min(n);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut slices = Vec::with_capacity(wanted);
    // Duplicates are redrawn a bounded number of times; small universes may
    // not have enough distinct slices.
    for _ in 0..wanted * 4 {
        if slices.len() == wanted {
            break;
        }
        let size = rng.random_range(p.min_slice_size..=max_size);
        let mut members: Vec<usize> = if rng.random_bool(p.owner_probability) {
            let mut others: Vec<usize> = sample(rng, n - 1, size - 1)
                .into_iter()
                .map(|i| if i >= owner { i + 1 } else { i })
                .collect();
            others.push(owner);
            others
        } else {
            sample(rng, n, size).into_vec()
        };
        members.sort_unstable();
        if seen.insert(members.clone()) {
            slices.push(members.into_iter().map(NodeId).collect());
        }
    }
    SliceSpec::Plain(slices)
}

fn random_threshold(rng: &mut ChaCha8Rng, p: &NestedProfile, n: usize, depth: usize) -> ThresholdDef {
    let count = rng.random_range(1..=p.max_members);
    let inner = if depth < p.max_depth {
        (0..count).filter(|_| rng.random_bool(p.inner_probability)).count()
    } else {
        0
    };
    let leaves = (count - inner).min(n);
    let mut members: Vec<Member> = sample(rng, n, leaves)
        .into_iter()
        .map(|i| Member::Node(NodeId(i)))
        .collect();
    members.sort_by_key(|m| match m {
        Member::Node(v) => v.0,
        Member::Inner(_) => usize::MAX,
    });
    for _ in 0..inner {
        let d = random_threshold(rng, p, n, depth + 1);
        if !members.iter().any(|m| matches!(m, Member::Inner(x) if *x == d)) {
            members.push(Member::Inner(d));
        }
    }
    if members.is_empty() {
        members.push(Member::Node(NodeId(rng.random_range(0..n))));
    }
    let threshold = rng.random_range(1..=members.len());
    ThresholdDef { threshold, members }
}
