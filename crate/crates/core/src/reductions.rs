//! Instance generators that encode classical problems as FBAS questions, plus
//! the transform that bounds every node to two slices of two nodes.
//!
//! | source problem        | FBAS question                               |
//! |-----------------------|---------------------------------------------|
//! | set splitting         | two disjoint quorums exist                  |
//! | vertex cover          | minimum quorum size is `|E| + cover size`   |
//! | monotone circuit value| `W` holds a quorum containing the output    |
//! | k-clique              | a quorum of exactly `k` nodes exists        |
//!
//! Each source problem also ships a brute-force solver so the encodings can be
//! cross-checked end to end.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{FbasInstance, SliceSpec, ThresholdDef};
use crate::nodeset::{NodeId, NodeSet};

/// Where an output node came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Element(String),
    /// `member` is false for the redundant pairs with `element ∉ set`.
    SetElement {
        set: usize,
        element: String,
        member: bool,
    },
    Vertex(String),
    Edge(String, String),
    Gate(usize),
    Sink,
    Padding,
}

#[derive(Clone, Debug)]
pub struct Reduced {
    pub instance: FbasInstance,
    /// Indexed by node.
    pub origins: Vec<Origin>,
}

impl Reduced {
    /// `[{"node": .., "origin": ..}, ..]` in node order.
    pub fn metadata_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.instance
                .nodes()
                .map(|v| {
                    serde_json::json!({
                        "node": self.instance.name(v),
                        "origin": self.origins[v.0],
                    })
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetSplittingInput {
    pub ground: Vec<String>,
    pub family: Vec<Vec<String>>,
}

impl SetSplittingInput {
    pub fn new(ground: &[&str], family: &[&[&str]]) -> Self {
        SetSplittingInput {
            ground: ground.iter().map(|s| s.to_string()).collect(),
            family: family
                .iter()
                .map(|f| f.iter().map(|s| s.to_string()).collect())
                .collect(),
        }
    }

    fn check(&self) -> Result<HashMap<&str, usize>> {
        if self.ground.is_empty() {
            return Err(Error::InvalidInput("ground set is empty".into()));
        }
        if self.family.is_empty() {
            return Err(Error::InvalidInput("family is empty".into()));
        }
        let mut pos = HashMap::new();
        for (i, x) in self.ground.iter().enumerate() {
            if pos.insert(x.as_str(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate element {x}")));
            }
        }
        for (i, f) in self.family.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::InvalidInput(format!("family member {i} is empty")));
            }
            if let Some(x) = f.iter().find(|x| !pos.contains_key(x.as_str())) {
                return Err(Error::InvalidInput(format!(
                    "family member {i} names unknown element {x}"
                )));
            }
        }
        Ok(pos)
    }

    /// Exhaustive 2-colouring: is there a partition splitting every member?
    pub fn is_splittable_brute_force(&self) -> bool {
        let Ok(pos) = self.check() else {
            return false;
        };
        let n = self.ground.len();
        assert!(n < 64, "brute force over at most 63 elements");
        let members: Vec<u64> = self
            .family
            .iter()
            .map(|f| f.iter().fold(0u64, |m, x| m | 1 << pos[x.as_str()]))
            .collect();
        (0u64..1 << n).any(|red| members.iter().all(|&f| f & red != 0 && f & !red != 0))
    }
}

/// Node `x:<e>` per element with the single slice `{fx:<i>:<e> : all i}`, and
/// node `fx:<i>:<e>` for every family member `i` and element `e` (including
/// `e ∉ member i`), with one slice `{x:<y>}` per `y` in member `i`.
pub fn set_splitting_to_fbas(input: &SetSplittingInput) -> Result<Reduced> {
    let pos = input.check()?;
    let s = input.ground.len();
    let fam = input.family.len();
    let element = |e: usize| NodeId(e);
    let pair = |i: usize, e: usize| NodeId(s + i * s + e);

    let mut names = Vec::with_capacity(s + fam * s);
    let mut origins = Vec::with_capacity(names.capacity());
    let mut specs = Vec::with_capacity(names.capacity());
    for (e, x) in input.ground.iter().enumerate() {
        names.push(format!("x:{x}"));
        origins.push(Origin::Element(x.clone()));
        specs.push(SliceSpec::Plain(vec![(0..fam).map(|i| pair(i, e)).collect()]));
    }
    for (i, f) in input.family.iter().enumerate() {
        let ys: BTreeSet<usize> = f.iter().map(|y| pos[y.as_str()]).collect();
        for (e, x) in input.ground.iter().enumerate() {
            names.push(format!("fx:{i}:{x}"));
            origins.push(Origin::SetElement {
                set: i,
                element: x.clone(),
                member: ys.contains(&e),
            });
            specs.push(SliceSpec::Plain(ys.iter().map(|&y| vec![element(y)]).collect()));
        }
    }
    Ok(Reduced {
        instance: FbasInstance::new(names, specs)?,
        origins,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphInput {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl GraphInput {
    pub fn new(vertices: &[&str], edges: &[(&str, &str)]) -> Self {
        GraphInput {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
    }

    /// Validated edge list as vertex index pairs.
    pub fn indexed_edges(&self) -> Result<Vec<(usize, usize)>> {
        let mut pos = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if pos.insert(v.as_str(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate vertex {v}")));
            }
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(self.edges.len());
        for (a, b) in &self.edges {
            let lookup = |x: &String| {
                pos.get(x.as_str())
                    .copied()
                    .ok_or_else(|| Error::InvalidInput(format!("edge names unknown vertex {x}")))
            };
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i == j {
                return Err(Error::InvalidInput(format!("loop at vertex {a}")));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidInput(format!("duplicate edge {a}-{b}")));
            }
            out.push((i, j));
        }
        Ok(out)
    }

    fn adjacency(&self) -> Result<Vec<Vec<bool>>> {
        let n = self.vertices.len();
        let mut adj = vec![vec![false; n]; n];
        for (i, j) in self.indexed_edges()? {
            adj[i][j] = true;
            adj[j][i] = true;
        }
        Ok(adj)
    }

    /// Smallest vertex cover by subset scan.
    pub fn min_vertex_cover_brute_force(&self) -> Result<usize> {
        let edges = self.indexed_edges()?;
        let n = self.vertices.len();
        assert!(n < 32, "brute force over at most 31 vertices");
        Ok((0u32..1 << n)
            .filter(|c| edges.iter().all(|&(i, j)| c >> i & 1 == 1 || c >> j & 1 == 1))
            .map(u32::count_ones)
            .min()
            .unwrap_or(0) as usize)
    }

    /// Is there a set of `k` pairwise adjacent vertices? Subset scan.
    pub fn has_clique_brute_force(&self, k: usize) -> Result<bool> {
        let adj = self.adjacency()?;
        let n = self.vertices.len();
        assert!(n < 32, "brute force over at most 31 vertices");
        Ok((0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|m| {
            let vs: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            vs.iter()
                .enumerate()
                .all(|(a, &i)| vs[a + 1..].iter().all(|&j| adj[i][j]))
        }))
    }
}

/// Node `v:<u>` per vertex with one slice holding every edge node, and node
/// `edge:<u>-<w>` per edge with slices `{v:<u>}` and `{v:<w>}`. Edgeless
/// graphs are rejected: vertex nodes would get an empty slice.
pub fn vertex_cover_to_fbas(input: &GraphInput) -> Result<Reduced> {
    let edges = input.indexed_edges()?;
    if edges.is_empty() {
        return Err(Error::InvalidInput("graph has no edges".into()));
    }
    let nv = input.vertices.len();
    let edge_nodes: Vec<NodeId> = (0..edges.len()).map(|e| NodeId(nv + e)).collect();
    let mut names = Vec::new();
    let mut origins = Vec::new();
    let mut specs = Vec::new();
    for u in &input.vertices {
        names.push(format!("v:{u}"));
        origins.push(Origin::Vertex(u.clone()));
        specs.push(SliceSpec::Plain(vec![edge_nodes.clone()]));
    }
    for (&(i, j), (a, b)) in edges.iter().zip(&input.edges) {
        names.push(format!("edge:{a}-{b}"));
        origins.push(Origin::Edge(a.clone(), b.clone()));
        specs.push(SliceSpec::Plain(vec![vec![NodeId(i)], vec![NodeId(j)]]));
    }
    Ok(Reduced {
        instance: FbasInstance::new(names, specs)?,
        origins,
    })
}

/// One gate of a monotone circuit. Inputs refer to earlier gates by 1-based
/// position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gate {
    Const(bool),
    And(usize, usize),
    Or(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitInput {
    pub gates: Vec<Gate>,
}

impl CircuitInput {
    fn check(&self) -> Result<()> {
        if self.gates.is_empty() {
            return Err(Error::InvalidInput("circuit has no gates".into()));
        }
        for (i, g) in self.gates.iter().enumerate() {
            let pos = i + 1;
            if let Gate::And(a, b) | Gate::Or(a, b) = *g {
                for r in [a, b] {
                    if r == 0 || r >= pos {
                        return Err(Error::InvalidInput(format!(
                            "gate {pos} refers to gate {r}, which is not an earlier gate"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Direct evaluation of every gate; returns the value of the last one.
    pub fn evaluate(&self) -> Result<bool> {
        self.check()?;
        let mut val: Vec<bool> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let x = match *g {
                Gate::Const(b) => b,
                Gate::And(a, b) => val[a - 1] && val[b - 1],
                Gate::Or(a, b) => val[a - 1] || val[b - 1],
            };
            val.push(x);
        }
        Ok(*val.last().expect("nonempty"))
    }
}

#[derive(Clone, Debug)]
pub struct McvpReduction {
    pub reduced: Reduced,
    pub subset: NodeSet,
    pub query: NodeId,
}

impl McvpReduction {
    /// Sidecar document: `{"subset": [..], "node": ".."}`.
    pub fn sidecar_json(&self) -> serde_json::Value {
        let f = &self.reduced.instance;
        serde_json::json!({
            "subset": f.set_names(&self.subset),
            "node": f.name(self.query),
        })
    }
}

/// Node `gate:<i>` per gate. AND `g_j ∧ g_k`: slice `{g_i, g_j, g_k}`; OR:
/// slices `{g_i, g_j}` and `{g_i, g_k}`; constants: slice `{g_i}`. Every gate
/// except the false constants goes into `W`. The query node is the last gate.
pub fn mcvp_to_qsp(input: &CircuitInput) -> Result<McvpReduction> {
    input.check()?;
    let n = input.gates.len();
    let mut names = Vec::with_capacity(n);
    let mut origins = Vec::with_capacity(n);
    let mut specs = Vec::with_capacity(n);
    let mut subset = NodeSet::empty(n);
    let dedup = |mut s: Vec<NodeId>| {
        let mut seen = HashSet::new();
        s.retain(|v| seen.insert(*v));
        s
    };
    for (i, g) in input.gates.iter().enumerate() {
        let me = NodeId(i);
        names.push(format!("gate:{}", i + 1));
        origins.push(Origin::Gate(i + 1));
        let spec = match *g {
            Gate::Const(value) => {
                if value {
                    subset.insert(me);
                }
                vec![vec![me]]
            }
            Gate::And(a, b) => {
                subset.insert(me);
                vec![dedup(vec![me, NodeId(a - 1), NodeId(b - 1)])]
            }
            Gate::Or(a, b) => {
                subset.insert(me);
                let mut slices = vec![vec![me, NodeId(a - 1)]];
                if a != b {
                    slices.push(vec![me, NodeId(b - 1)]);
                }
                slices
            }
        };
        specs.push(SliceSpec::Plain(spec));
    }
    Ok(McvpReduction {
        reduced: Reduced {
            instance: FbasInstance::new(names, specs)?,
            origins,
        },
        subset,
        query: NodeId(n - 1),
    })
}

/// Node `v:<u>` per vertex plus a sink node `s`. A vertex with fewer than
/// `k - 1` neighbours declares `1 of {s}`; otherwise `(k - 1) of` its
/// neighbours. `s` declares all nodes.
///
/// When the graph has exactly `k - 1` vertices the set of all nodes would be a
/// quorum of size `k` without any `k`-clique, so one isolated padding vertex
/// `pad:0` is added in that case.
pub fn clique_to_xy_fbas(input: &GraphInput, k: usize) -> Result<Reduced> {
    if k < 2 {
        return Err(Error::InvalidInput("clique size k must be at least 2".into()));
    }
    let edges = input.indexed_edges()?;
    let nv = input.vertices.len();
    let padding = usize::from(nv + 1 == k);
    let total = nv + padding + 1;
    let sink = NodeId(total - 1);

    let mut neighbours: Vec<Vec<NodeId>> = vec![Vec::new(); nv + padding];
    for &(i, j) in &edges {
        neighbours[i].push(NodeId(j));
        neighbours[j].push(NodeId(i));
    }
    let mut names = Vec::with_capacity(total);
    let mut origins = Vec::with_capacity(total);
    for u in &input.vertices {
        names.push(format!("v:{u}"));
        origins.push(Origin::Vertex(u.clone()));
    }
    for p in 0..padding {
        names.push(format!("pad:{p}"));
        origins.push(Origin::Padding);
    }
    names.push("s".to_string());
    origins.push(Origin::Sink);

    let mut specs = Vec::with_capacity(total);
    for nbrs in &mut neighbours {
        nbrs.sort_unstable();
        let decl = if nbrs.len() < k - 1 {
            ThresholdDef::of_nodes(1, [sink])
        } else {
            ThresholdDef::of_nodes(k - 1, nbrs.iter().copied())
        };
        specs.push(SliceSpec::Nested(vec![decl]));
    }
    specs.push(SliceSpec::Nested(vec![ThresholdDef::of_nodes(
        total,
        (0..total).map(NodeId),
    )]));
    Ok(Reduced {
        instance: FbasInstance::new(names, specs)?,
        origins,
    })
}

/// Rewrites a plain instance until every node has at most two slices and
/// every slice at most two nodes:
///
/// * `Q(v) = {q1, .., qm}`, `m ≥ 3` becomes `{q1, {v'}}` with
///   `Q(v') = {q2, .., qm}`;
/// * a slice `{v1, .., vm}`, `m ≥ 3` becomes `{v1, v'}` with
///   `Q(v') = {{v2, .., vm}}`.
///
/// Nodes are processed first-in first-out, slice lists before slice contents.
/// Auxiliary nodes are named `<owner>~<i>`.
pub fn degree_reduce(instance: &FbasInstance) -> Result<FbasInstance> {
    let mut names: Vec<String> = instance.names().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    let mut slices: Vec<Vec<Vec<NodeId>>> = Vec::with_capacity(instance.len());
    for v in instance.nodes() {
        match instance.spec(v) {
            SliceSpec::Plain(list) => slices.push(list.clone()),
            SliceSpec::Nested(_) => return Err(Error::NestedEncoding("degree reduction")),
        }
    }

    let mut counters: HashMap<usize, usize> = HashMap::new();
    let mut fresh = |owner: usize, names: &mut Vec<String>, taken: &mut HashSet<String>| {
        let base = names[owner].clone();
        let c = counters.entry(owner).or_insert(0);
        loop {
            *c += 1;
            let candidate = format!("{base}~{c}");
            if taken.insert(candidate.clone()) {
                names.push(candidate);
                return NodeId(names.len() - 1);
            }
        }
    };

    let mut queue: VecDeque<usize> = (0..slices.len()).collect();
    while let Some(v) = queue.pop_front() {
        if slices[v].len() >= 3 {
            let tail = slices[v].split_off(1);
            let aux = fresh(v, &mut names, &mut taken);
            slices.push(tail);
            slices[v].push(vec![aux]);
            queue.push_back(aux.0);
        }
        for i in 0..slices[v].len() {
            if slices[v][i].len() >= 3 {
                let tail = slices[v][i].split_off(1);
                let aux = fresh(v, &mut names, &mut taken);
                slices.push(vec![tail]);
                slices[v][i].push(aux);
                queue.push_back(aux.0);
            }
        }
    }
    FbasInstance::new(names, slices.into_iter().map(SliceSpec::Plain).collect())
}

/// Largest slice count and slice size over a plain instance.
pub fn plain_degrees(instance: &FbasInstance) -> Option<(usize, usize)> {
    let mut most_slices = 0;
    let mut largest = 0;
    for spec in instance.specs() {
        let SliceSpec::Plain(list) = spec else {
            return None;
        };
        most_slices = most_slices.max(list.len());
        largest = largest.max(list.iter().map(Vec::len).max().unwrap_or(0));
    }
    Some((most_slices, largest))
}
