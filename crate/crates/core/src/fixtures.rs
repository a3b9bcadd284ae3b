//! Small named instances used across tests, examples and documentation.

use crate::model::{FbasInstance, Member, SliceSpec, ThresholdDef};
use crate::nodeset::NodeId;

/// Builds a plain instance from `(name, slices)` pairs. Panics on unknown
/// names; intended for hand-written fixtures.
pub fn plain(nodes: &[(&str, &[&[&str]])]) -> FbasInstance {
    let names: Vec<String> = nodes.iter().map(|(n, _)| n.to_string()).collect();
    let idx = |s: &str| {
        NodeId(
            names
                .iter()
                .position(|n| n == s)
                .unwrap_or_else(|| panic!("unknown node {s}")),
        )
    };
    let specs = nodes
        .iter()
        .map(|(_, slices)| {
            SliceSpec::Plain(
                slices
                    .iter()
                    .map(|s| s.iter().map(|n| idx(n)).collect())
                    .collect(),
            )
        })
        .collect();
    FbasInstance::new(names, specs).expect("fixture is well formed")
}

/// One self-quorum node.
pub fn f1() -> FbasInstance {
    plain(&[("a", &[&["a"]])])
}

/// Two independent self-quorum nodes.
pub fn f2() -> FbasInstance {
    plain(&[("a", &[&["a"]]), ("b", &[&["b"]])])
}

/// Two nodes that need each other.
pub fn f3() -> FbasInstance {
    plain(&[("a", &[&["a", "b"]]), ("b", &[&["a", "b"]])])
}

/// Three nodes; each accepts either pair containing it.
pub fn f4() -> FbasInstance {
    plain(&[
        ("a", &[&["a", "b"], &["a", "c"]]),
        ("b", &[&["a", "b"], &["b", "c"]]),
        ("c", &[&["a", "c"], &["b", "c"]]),
    ])
}

/// Chain a -> b -> c where c is a self-quorum.
pub fn f6() -> FbasInstance {
    plain(&[("a", &[&["a", "b"]]), ("b", &[&["b", "c"]]), ("c", &[&["c"]])])
}

/// Node `v` declares `{2 of {v1,v2,v3}, 1 of {1 of {v4,v5}, 2 of {v6,v7,v8}}}`;
/// `v1..v8` are self-quorums.
pub fn nested_example() -> FbasInstance {
    let mut names = vec!["v".to_string()];
    names.extend((1..=8).map(|i| format!("v{i}")));
    let leaf = |i: usize| Member::Node(NodeId(i));
    let v_spec = SliceSpec::Nested(vec![
        ThresholdDef::new(2, vec![leaf(1), leaf(2), leaf(3)]),
        ThresholdDef::new(
            1,
            vec![
                Member::Inner(ThresholdDef::new(1, vec![leaf(4), leaf(5)])),
                Member::Inner(ThresholdDef::new(2, vec![leaf(6), leaf(7), leaf(8)])),
            ],
        ),
    ]);
    let mut specs = vec![v_spec];
    specs.extend((1..=8).map(|i| SliceSpec::Plain(vec![vec![NodeId(i)]])));
    FbasInstance::new(names, specs).expect("fixture is well formed")
}

/// Chain of `n` nodes: node i needs `{i, i+1}`, the last node is a
/// self-quorum. Every quorum contains the last node.
pub fn chain(n: usize) -> FbasInstance {
    let names = (0..n).map(|i| format!("c{i}")).collect();
    let specs = (0..n)
        .map(|i| {
            if i + 1 < n {
                SliceSpec::Plain(vec![vec![NodeId(i), NodeId(i + 1)]])
            } else {
                SliceSpec::Plain(vec![vec![NodeId(i)]])
            }
        })
        .collect();
    FbasInstance::new(names, specs).expect("chain is well formed")
}
