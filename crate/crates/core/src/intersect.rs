//! Disjoint-quorum decision: the exact SCC-guided algorithm, the randomized
//! two-colouring search for small witnesses, and brute-force oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::enumerate::QuorumEnumerator;
use crate::error::{Error, Result};
use crate::graph::{build_graph, scc_partition};
use crate::model::FbasInstance;
use crate::nodeset::NodeSet;
use crate::satisfaction::{is_quorum, SatisfactionIndex};

/// Largest instance the exhaustive oracles accept.
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    Intersecting,
    Disjoint,
    /// One-sided answer of the randomized search: no witness was found.
    IntersectingUnproven,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Intersecting => "INTERSECTING",
            Verdict::Disjoint => "DISJOINT",
            Verdict::IntersectingUnproven => "INTERSECTING-UNPROVEN",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WitnessStats {
    /// Strongly connected components examined.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
    /// Quorums enumerated inside the quorum-bearing component.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quorums_enumerated: Option<usize>,
    /// Colourings tried by the randomized search.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    /// Subsets scanned by an oracle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subsets: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub verdict: Verdict,
    pub quorums: Option<(NodeSet, NodeSet)>,
    pub stats: WitnessStats,
}

impl Witness {
    fn disjoint(instance: &FbasInstance, q1: NodeSet, q2: NodeSet, stats: WitnessStats) -> Self {
        assert!(
            is_quorum(instance, &q1) && is_quorum(instance, &q2) && q1.is_disjoint(&q2),
            "disjoint-quorum witness failed re-verification"
        );
        let (q1, q2) = if q2 < q1 { (q2, q1) } else { (q1, q2) };
        Witness {
            verdict: Verdict::Disjoint,
            quorums: Some((q1, q2)),
            stats,
        }
    }

    fn without_pair(verdict: Verdict, stats: WitnessStats) -> Self {
        Witness {
            verdict,
            quorums: None,
            stats,
        }
    }

    /// Re-checks a DISJOINT witness; other verdicts carry nothing to check.
    pub fn verify(&self, instance: &FbasInstance) -> bool {
        match (&self.verdict, &self.quorums) {
            (Verdict::Disjoint, Some((a, b))) => {
                is_quorum(instance, a) && is_quorum(instance, b) && a.is_disjoint(b)
            }
            (Verdict::Disjoint, None) => false,
            (_, pair) => pair.is_none(),
        }
    }
}

/// Exact decision.
///
/// 1. If `V` holds no quorum, quorums intersect vacuously.
/// 2. Each strongly connected component is tested for a quorum inside it;
///    two quorum-bearing components give disjoint witnesses at once.
/// 3. With a single quorum-bearing component `C`, every quorum `q ⊆ C` is
///    enumerated and `C \ q` is tested for a quorum.
///
/// Every minimal quorum lies inside one component, so step 3 is exhaustive.
pub fn disjoint_quorums(instance: &FbasInstance) -> Witness {
    let index = SatisfactionIndex::new(instance);
    let mut stats = WitnessStats::default();
    if index.max_quorum_within(&instance.full_set()).is_empty() {
        return Witness::without_pair(Verdict::Intersecting, stats);
    }

    let scc = scc_partition(&build_graph(instance));
    stats.components = Some(scc.component_count());
    let mut bearing: Vec<(usize, NodeSet)> = Vec::new();
    // Non-sink components first, in the spirit of checking everything below
    // the top of the order before the top itself.
    for &c in scc.reverse_topological().iter().rev() {
        let q = index.max_quorum_within(scc.members(c));
        if !q.is_empty() {
            bearing.push((c, q));
            if bearing.len() == 2 {
                let (_, q2) = bearing.pop().unwrap();
                let (_, q1) = bearing.pop().unwrap();
                return Witness::disjoint(instance, q1, q2, stats);
            }
        }
    }

    let (c, _) = bearing
        .pop()
        .expect("a quorum exists, so some component holds a minimal one");
    let component = scc.members(c);
    let mut enumerated = 0;
    for q in QuorumEnumerator::new(instance, component) {
        enumerated += 1;
        let rest = index.max_quorum_within(&component.difference(&q));
        if !rest.is_empty() {
            stats.quorums_enumerated = Some(enumerated);
            return Witness::disjoint(instance, q, rest, stats);
        }
    }
    stats.quorums_enumerated = Some(enumerated);
    Witness::without_pair(Verdict::Intersecting, stats)
}

/// Randomized search for two disjoint quorums via uniform red/green
/// colourings. Sound: a DISJOINT answer always carries verified quorums.
/// Trial `t` draws from stream `t` of a ChaCha generator seeded by `seed`,
/// so results do not depend on execution order. Default trials: `2^k`.
pub fn dqp_k_random(instance: &FbasInstance, k: usize, trials: Option<usize>, seed: u64) -> Result<Witness> {
    if k < 2 {
        return Err(Error::InvalidInput("k must be at least 2".into()));
    }
    let trials = match trials {
        Some(t) => t,
        None => 1usize
            .checked_shl(k as u32)
            .ok_or_else(|| Error::InvalidInput(format!("2^{k} trials overflow")))?,
    };
    let index = SatisfactionIndex::new(instance);
    let n = instance.len();
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        let mut red = NodeSet::empty(n);
        for v in instance.nodes() {
            if rng.random::<bool>() {
                red.insert(v);
            }
        }
        let green = red.complement();
        let q_red = index.max_quorum_within(&red);
        if q_red.is_empty() {
            continue;
        }
        let q_green = index.max_quorum_within(&green);
        if !q_green.is_empty() {
            let stats = WitnessStats {
                trials: Some(t + 1),
                ..Default::default()
            };
            return Ok(Witness::disjoint(instance, q_red, q_green, stats));
        }
    }
    Ok(Witness::without_pair(
        Verdict::IntersectingUnproven,
        WitnessStats {
            trials: Some(trials),
            ..Default::default()
        },
    ))
}

fn guard(instance: &FbasInstance) -> Result<usize> {
    let n = instance.len();
    if n > BRUTE_FORCE_LIMIT {
        Err(Error::SizeGuard {
            n,
            limit: BRUTE_FORCE_LIMIT,
        })
    } else {
        Ok(n)
    }
}

/// For every subset mask, some quorum contained in it (as a mask), computed
/// from `is_quorum` alone by a subset dynamic programme.
fn quorum_inside_table(instance: &FbasInstance, n: usize) -> Vec<Option<u32>> {
    let size = 1usize << n;
    let mut inside: Vec<Option<u32>> = vec![None; size];
    for mask in 1..size {
        if is_quorum(instance, &NodeSet::from_mask(n, mask as u64)) {
            inside[mask] = Some(mask as u32);
            continue;
        }
        let mut bits = mask;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            if let Some(q) = inside[mask ^ low] {
                inside[mask] = Some(q);
                break;
            }
            bits ^= low;
        }
    }
    inside
}

/// Exhaustive oracle: DISJOINT iff some subset `S` and its complement both
/// contain a quorum. Uses only the direct quorum test, not the fixed point.
pub fn brute_force_dqp(instance: &FbasInstance) -> Result<Witness> {
    let n = guard(instance)?;
    let inside = quorum_inside_table(instance, n);
    let full = (1usize << n) - 1;
    let stats = WitnessStats {
        subsets: Some(1 << n),
        ..Default::default()
    };
    for mask in 1..full {
        if let (Some(a), Some(b)) = (inside[mask], inside[full ^ mask]) {
            return Ok(Witness::disjoint(
                instance,
                NodeSet::from_mask(n, a as u64),
                NodeSet::from_mask(n, b as u64),
                stats,
            ));
        }
    }
    Ok(Witness::without_pair(Verdict::Intersecting, stats))
}

/// Every quorum, by subset scan, in σ-lexicographic order.
pub fn brute_force_quorums(instance: &FbasInstance) -> Result<Vec<NodeSet>> {
    let n = guard(instance)?;
    let mut out: Vec<NodeSet> = (1u64..1 << n)
        .map(|m| NodeSet::from_mask(n, m))
        .filter(|s| is_quorum(instance, s))
        .collect();
    out.sort();
    Ok(out)
}

/// Smallest quorum by subset scan; ties go to the σ-lexicographically
/// smallest. `None` when the instance has no quorum.
pub fn brute_force_min_quorum(instance: &FbasInstance) -> Result<Option<NodeSet>> {
    let n = guard(instance)?;
    let mut best: Option<NodeSet> = None;
    for mask in 1u64..1 << n {
        let s = NodeSet::from_mask(n, mask);
        if !is_quorum(instance, &s) {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => s.len() < b.len() || s.len() == b.len() && s < *b,
        };
        if better {
            best = Some(s);
        }
    }
    Ok(best)
}

/// Minimal quorums by subset scan.
pub fn brute_force_minimal_quorums(instance: &FbasInstance) -> Result<Vec<NodeSet>> {
    let all = brute_force_quorums(instance)?;
    Ok(all
        .iter()
        .filter(|q| !all.iter().any(|p| p != *q && p.is_subset(q)))
        .cloned()
        .collect())
}
