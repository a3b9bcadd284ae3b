//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.
//!
//! Run alone with `cargo test -p fbas-core --test acceptance`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fbas_core::enumerate::is_minimal_quorum;
use fbas_core::fixtures;
use fbas_core::intersect::{brute_force_minimal_quorums, brute_force_quorums};
use fbas_core::reductions::{
    clique_to_xy_fbas, degree_reduce, mcvp_to_qsp, set_splitting_to_fbas, vertex_cover_to_fbas,
    CircuitInput, Gate, GraphInput, SetSplittingInput,
};
use fbas_core::satisfaction::quorum_subset_with_stats;
use fbas_core::{
    brute_force_dqp, brute_force_min_quorum, check_guidelines, disjoint_quorums, dqp_k_random,
    find_min_quorum, generate_guideline_config, generate_random, instance_size, is_quorum,
    quorum_subset, Error, FbasInstance, NodeId, NodeSet, Profile, QuorumEnumerator,
    Member, SatisfactionIndex, SliceSpec, ThresholdDef, Verdict,
};

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Random instances with n ≤ 12, alternating plain and nested encodings.
fn corpus() -> Vec<FbasInstance> {
    (0..1200u64)
        .map(|i| {
            let n = 2 + (i as usize % 11);
            let profile = if i % 2 == 0 { Profile::plain() } else { Profile::nested() };
            generate_random(n, &profile, i).expect("feasible profile")
        })
        .collect()
}

fn graph_from_mask(nv: usize, mask: u32) -> GraphInput {
    let vertices: Vec<String> = (0..nv).map(|i| format!("u{i}")).collect();
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..nv {
        for j in i + 1..nv {
            if mask >> bit & 1 == 1 {
                edges.push((vertices[i].clone(), vertices[j].clone()));
            }
            bit += 1;
        }
    }
    GraphInput { vertices, edges }
}

fn pair_count(nv: usize) -> usize {
    nv * nv.saturating_sub(1) / 2
}

fn adjacency(nv: usize, mask: u32) -> Vec<u32> {
    let mut adj = vec![0u32; nv];
    let mut bit = 0;
    for i in 0..nv {
        for j in i + 1..nv {
            if mask >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    adj
}

/// Smallest vertex subset touching every edge, by subset scan.
fn vertex_cover_oracle(nv: usize, mask: u32) -> usize {
    let adj = adjacency(nv, mask);
    (0u32..1 << nv)
        .filter(|&c| (0..nv).all(|i| c >> i & 1 == 1 || adj[i] & !c == 0))
        .map(|c| c.count_ones() as usize)
        .min()
        .expect("full set covers")
}

fn clique_oracle(nv: usize, mask: u32, k: usize) -> bool {
    let adj = adjacency(nv, mask);
    (0u32..1 << nv).any(|c| {
        c.count_ones() as usize == k && (0..nv).all(|i| c >> i & 1 == 0 || (adj[i] | 1 << i) & c == c)
    })
}

/// Is some k-element subset a quorum? Direct scan, no fixed point.
fn has_quorum_of_size(f: &FbasInstance, k: usize) -> bool {
    let n = f.len();
    (1u64..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .any(|m| is_quorum(f, &NodeSet::from_mask(n, m)))
}

fn reduction_fixtures() -> Vec<(String, FbasInstance)> {
    let mut out: Vec<(String, FbasInstance)> = vec![
        ("f1".into(), fixtures::f1()),
        ("f2".into(), fixtures::f2()),
        ("f3".into(), fixtures::f3()),
        ("f4".into(), fixtures::f4()),
        ("f6".into(), fixtures::f6()),
        ("nested".into(), fixtures::nested_example()),
        ("chain12".into(), fixtures::chain(12)),
    ];
    let splitting = [
        SetSplittingInput::new(&["1", "2", "3"], &[&["1", "2"], &["2", "3"]]),
        SetSplittingInput::new(&["1", "2"], &[&["1", "2"], &["1"]]),
        SetSplittingInput::new(&["1", "2", "3"], &[&["1", "2"], &["2", "3"], &["1", "3"]]),
        SetSplittingInput::new(&["a", "b", "c", "d"], &[&["a", "b", "c"], &["b", "d"]]),
    ];
    for (i, s) in splitting.iter().enumerate() {
        out.push((format!("set-splitting-{i}"), set_splitting_to_fbas(s).unwrap().instance));
    }
    for (i, g) in [
        GraphInput::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]),
        GraphInput::new(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]),
        GraphInput::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]),
    ]
    .iter()
    .enumerate()
    {
        out.push((format!("vertex-cover-{i}"), vertex_cover_to_fbas(g).unwrap().instance));
        for k in 2..=3 {
            out.push((format!("clique-{i}-k{k}"), clique_to_xy_fbas(g, k).unwrap().instance));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..10 {
        let c = random_circuit(&mut rng, 12);
        out.push((format!("mcvp-{i}"), mcvp_to_qsp(&c).unwrap().reduced.instance));
    }
    for seed in 0..5 {
        let f = generate_random(6, &Profile::plain(), 9000 + seed).unwrap();
        let r = degree_reduce(&f).unwrap();
        if r.len() <= 16 {
            out.push((format!("degree-reduced-{seed}"), r));
        }
        out.push((
            format!("guideline-{seed}"),
            generate_guideline_config(&[4, 3, 2], seed).unwrap(),
        ));
    }
    out
}

fn random_circuit(rng: &mut ChaCha8Rng, max_gates: usize) -> CircuitInput {
    let n = rng.random_range(1..=max_gates);
    let gates = (1..=n)
        .map(|pos| {
            if pos == 1 || rng.random_bool(0.3) {
                Gate::Const(rng.random_bool(0.5))
            } else {
                let a = rng.random_range(1..pos);
                let b = rng.random_range(1..pos);
                if rng.random_bool(0.5) {
                    Gate::And(a, b)
                } else {
                    Gate::Or(a, b)
                }
            }
        })
        .collect();
    CircuitInput { gates }
}

/// Circuit value computed here, independent of the library evaluator.
fn circuit_oracle(c: &CircuitInput) -> bool {
    let mut val = Vec::new();
    for g in &c.gates {
        val.push(match *g {
            Gate::Const(b) => b,
            Gate::And(a, b) => val[a - 1] & val[b - 1],
            Gate::Or(a, b) => val[a - 1] | val[b - 1],
        });
    }
    val[val.len() - 1]
}

fn plain_lists(f: &FbasInstance) -> Vec<&Vec<Vec<NodeId>>> {
    f.specs()
        .iter()
        .map(|s| match s {
            SliceSpec::Plain(l) => l,
            SliceSpec::Nested(_) => panic!("plain instance expected"),
        })
        .collect()
}

/// Mutual reachability in G_F by transitive closure over the leaf references.
#[allow(clippy::needless_range_loop)]
fn reachability(f: &FbasInstance) -> Vec<Vec<bool>> {
    let n = f.len();
    let mut r = vec![vec![false; n]; n];
    for v in f.nodes() {
        r[v.0][v.0] = true;
        for u in f.spec(v).leaves() {
            r[v.0][u.0] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

fn induces_strongly_connected(f: &FbasInstance, q: &NodeSet) -> bool {
    let members: Vec<NodeId> = q.iter().collect();
    let start = members[0];
    let reach = |forward: bool| {
        let mut seen = NodeSet::empty(f.len());
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for &b in &members {
                let edge = if forward {
                    f.spec(a).leaves().contains(&b)
                } else {
                    f.spec(b).leaves().contains(&a)
                };
                if edge && seen.insert(b) {
                    stack.push(b);
                }
            }
        }
        seen.len() == members.len()
    };
    reach(true) && reach(false)
}

fn criterion_1(corpus: &[FbasInstance], brute: &[Verdict]) -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for (i, f) in corpus.iter().enumerate() {
        let w = disjoint_quorums(f);
        if w.verdict != brute[i] || !w.verify(f) {
            mismatches.push(format!("corpus#{i}"));
        }
    }
    let fixtures = reduction_fixtures();
    for (name, f) in &fixtures {
        let w = disjoint_quorums(f);
        if w.verdict != brute_force_dqp(f).unwrap().verdict {
            mismatches.push(name.clone());
        }
    }
    let disjoint = brute.iter().filter(|v| **v == Verdict::Disjoint).count();
    outcome(
        mismatches.is_empty(),
        format!(
            "{} random ({} disjoint, {} intersecting) + {} fixtures, {} mismatches {:?}, {:.1}s",
            corpus.len(),
            disjoint,
            corpus.len() - disjoint,
            fixtures.len(),
            mismatches.len(),
            &mismatches[..mismatches.len().min(5)],
            start.elapsed().as_secs_f64()
        ),
    )
}

fn criterion_2(corpus: &[FbasInstance]) -> Outcome {
    let mut bad = 0;
    let mut without = 0;
    for f in corpus {
        let fast = match find_min_quorum(f) {
            Ok(m) => {
                assert!(is_quorum(f, &m.quorum));
                Some(m.quorum.len())
            }
            Err(Error::NoQuorum) => None,
            Err(e) => panic!("{e}"),
        };
        let slow = brute_force_min_quorum(f).unwrap().map(|q| q.len());
        without += usize::from(slow.is_none());
        bad += usize::from(fast != slow);
    }
    outcome(
        bad == 0,
        format!("{} instances ({without} without quorum), {bad} mismatches", corpus.len()),
    )
}

fn chain_run(n: usize) -> Duration {
    let f = fixtures::chain(n);
    // Dropping the last node makes every other node lose its slice in turn.
    let w = f.full_set().without(NodeId(n - 1));
    // Best of several runs; small sizes are dominated by timer and cache noise.
    let mut best = Duration::MAX;
    for _ in 0..7 {
        let t = Instant::now();
        let (answer, stats) = quorum_subset_with_stats(&f, &w, NodeId(0)).unwrap();
        best = best.min(t.elapsed());
        assert!(!answer && stats.removed == n - 1);
    }
    best
}

fn criterion_3(corpus: &[FbasInstance]) -> Outcome {
    let mut calls = 0;
    let mut violations = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for f in corpus {
        let n = f.len();
        let references = instance_size(f) - n;
        for _ in 0..4 {
            let w = NodeSet::from_mask(n, rng.random_range(0..1u64 << n));
            let v = NodeId(rng.random_range(0..n));
            let (_, stats) = quorum_subset_with_stats(f, &w, v).unwrap();
            calls += 1;
            violations += usize::from(stats.reference_visits > references);
        }
        let (_, stats) = quorum_subset_with_stats(f, &f.full_set(), NodeId(0)).unwrap();
        calls += 1;
        violations += usize::from(stats.reference_visits > references);
    }
    let times: Vec<Duration> = [10_000, 100_000, 1_000_000].map(chain_run).to_vec();
    let ratios: Vec<f64> = times
        .windows(2)
        .map(|w| w[1].as_secs_f64() / w[0].as_secs_f64().max(1e-9))
        .collect();
    let pass = violations == 0
        && ratios.iter().all(|&r| r <= 15.0)
        && times.iter().all(|t| *t <= Duration::from_secs(5));
    outcome(
        pass,
        format!(
            "{calls} calls, {violations} visit-bound violations; chain 1e4/1e5/1e6: {:?}, growth {:.1}x/{:.1}x",
            times, ratios[0], ratios[1]
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = 0;
    let mut trues = 0;
    let runs = 1500;
    for _ in 0..runs {
        let c = random_circuit(&mut rng, 20);
        let m = mcvp_to_qsp(&c).unwrap();
        let got = quorum_subset(&m.reduced.instance, &m.subset, m.query).unwrap();
        let want = circuit_oracle(&c);
        trues += usize::from(want);
        bad += usize::from(got != want);
    }
    outcome(bad == 0, format!("{runs} circuits ({trues} true), {bad} mismatches"))
}

fn criterion_5() -> Outcome {
    let (mut graphs, mut bad, mut skipped) = (0, 0, 0);
    for nv in 1..=5 {
        for mask in 0u32..1 << pair_count(nv) {
            let g = graph_from_mask(nv, mask);
            if g.edges.is_empty() {
                assert!(vertex_cover_to_fbas(&g).is_err());
                skipped += 1;
                continue;
            }
            graphs += 1;
            let f = vertex_cover_to_fbas(&g).unwrap().instance;
            let size = find_min_quorum(&f).unwrap().quorum.len();
            if size != g.edges.len() + vertex_cover_oracle(nv, mask) {
                bad += 1;
            }
        }
    }
    outcome(
        bad == 0,
        format!("{graphs} graphs on ≤5 vertices ({skipped} edgeless rejected), {bad} mismatches"),
    )
}

fn criterion_6() -> Outcome {
    let (mut cases, mut bad, mut yes) = (0, 0, 0);
    let mut graphs = 0;
    for nv in 1..=6 {
        for mask in 0u32..1 << pair_count(nv) {
            graphs += 1;
            let g = graph_from_mask(nv, mask);
            for k in 2..=4 {
                let f = clique_to_xy_fbas(&g, k).unwrap().instance;
                let want = clique_oracle(nv, mask, k);
                let scanned = has_quorum_of_size(&f, k);
                let searched = find_min_quorum(&f).unwrap().quorum.len() == k;
                cases += 1;
                yes += usize::from(want);
                bad += usize::from(scanned != want || searched != want);
            }
        }
    }
    outcome(
        bad == 0,
        format!("{graphs} graphs × k∈{{2,3,4}} = {cases} cases ({yes} with clique), {bad} mismatches"),
    )
}

fn criterion_7() -> Outcome {
    let (mut bad_degree, mut bad_size, mut bad_verdict) = (0, 0, 0);
    let (mut brute_arm, mut exact_arm) = (0, 0);
    let mut worst: f64 = 0.0;
    for seed in 0..300u64 {
        let n = 2 + seed as usize % 7;
        let f = generate_random(n, &Profile::plain(), 70_000 + seed).unwrap();
        let r = degree_reduce(&f).unwrap();
        let degrees_ok = plain_lists(&r)
            .iter()
            .all(|l| l.len() <= 2 && l.iter().all(|s| s.len() <= 2));
        bad_degree += usize::from(!degrees_ok);
        let ratio = instance_size(&r) as f64 / instance_size(&f) as f64;
        worst = worst.max(ratio);
        bad_size += usize::from(ratio > 2.0);
        let before = brute_force_dqp(&f).unwrap().verdict;
        // The output can exceed the brute-force size guard; fall back to the
        // exact algorithm, itself checked against brute force above.
        let after = if r.len() <= 20 {
            brute_arm += 1;
            brute_force_dqp(&r).unwrap().verdict
        } else {
            exact_arm += 1;
            disjoint_quorums(&r).verdict
        };
        bad_verdict += usize::from(before != after);
    }
    outcome(
        bad_degree + bad_size + bad_verdict == 0,
        format!(
            "300 cases (output checked by brute force {brute_arm}, exact {exact_arm}); degree {bad_degree}, size {bad_size}, verdict {bad_verdict} failures; max size ratio {worst:.2}"
        ),
    )
}

/// Guideline core plus planted quorums disjoint from each other.
fn planted(k: usize, seed: u64) -> FbasInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes: Vec<usize> = (0..rng.random_range(1..=3)).map(|_| rng.random_range(1..=5)).collect();
    let core = generate_guideline_config(&sizes, seed).unwrap();
    let mut names = core.names().to_vec();
    let mut specs = core.specs().to_vec();
    let base = names.len();
    // Group sizes of the planted pair, combined size k.
    let groups: &[usize] = match k {
        2 => &[1, 1],
        3 => &[1, 2],
        4 => &[2, 2],
        _ => unreachable!(),
    };
    let mut next = base;
    for (g, &m) in groups.iter().enumerate() {
        let members: Vec<NodeId> = (next..next + m).map(NodeId).collect();
        for (j, _) in members.iter().enumerate() {
            names.push(format!("p{g}_{j}"));
            let anchor = NodeId(rng.random_range(0..base));
            let mut with_anchor = members.clone();
            with_anchor.push(anchor);
            specs.push(SliceSpec::Plain(vec![members.clone(), with_anchor]));
        }
        next += m;
    }
    FbasInstance::new(names, specs).unwrap()
}

fn criterion_8(corpus: &[FbasInstance], brute: &[Verdict]) -> Outcome {
    let mut worst = 1.0f64;
    let mut below = 0;
    let mut instances = 0;
    for k in 2..=4 {
        for i in 0..34u64 {
            let f = planted(k, 1000 * k as u64 + i);
            assert_eq!(brute_force_dqp(&f).unwrap().verdict, Verdict::Disjoint);
            let hits = (0..100u64)
                .filter(|&s| dqp_k_random(&f, k, None, s).unwrap().verdict == Verdict::Disjoint)
                .count();
            let rate = hits as f64 / 100.0;
            worst = worst.min(rate);
            below += usize::from(rate < 0.5);
            instances += 1;
        }
    }
    let mut false_disjoint = 0;
    let mut runs = 0;
    let intersecting = corpus
        .iter()
        .zip(brute)
        .filter(|(_, v)| **v == Verdict::Intersecting)
        .map(|(f, _)| f.clone());
    let guidelines = (0..50).map(|s| generate_guideline_config(&[5, 4, 3], s).unwrap());
    for f in intersecting.chain(guidelines) {
        for seed in 0..3 {
            runs += 1;
            if dqp_k_random(&f, 4, None, seed).unwrap().verdict == Verdict::Disjoint {
                false_disjoint += 1;
            }
        }
    }
    outcome(
        below == 0 && false_disjoint == 0,
        format!(
            "{instances} planted instances, worst success rate {worst:.2} ({below} below 0.50); {false_disjoint} false DISJOINT in {runs} runs on intersecting instances"
        ),
    )
}

fn criterion_9() -> Outcome {
    const C: f64 = 10.0;
    let n = 30;
    // Fifteen mutual pairs: every nonempty union of pairs is a quorum.
    let pairs = FbasInstance::new(
        (0..n).map(|i| format!("m{i}")).collect(),
        (0..n)
            .map(|i| SliceSpec::Plain(vec![vec![NodeId(i & !1), NodeId(i | 1)]]))
            .collect(),
    )
    .unwrap();
    // Thirty self-reliant nodes with nested declarations `1 of {v, 2 of {v, w}}`.
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let specs = (0..n)
        .map(|i| {
            SliceSpec::Nested(vec![ThresholdDef::new(
                1,
                vec![
                    Member::Node(NodeId(i)),
                    Member::Inner(ThresholdDef::of_nodes(
                        2,
                        [i, (i + 1) % n],
                    )),
                ],
            )])
        })
        .collect();
    let selfish = FbasInstance::new(names, specs).unwrap();

    let mut details = Vec::new();
    let mut pass = true;
    for (label, f) in [("pairs", &pairs), ("nested", &selfish)] {
        let bound = C * (n * instance_size(f)) as f64;
        let mut e = QuorumEnumerator::new(f, &f.full_set());
        let mut last = 0;
        let mut max_delay = 0;
        let mut emitted = 0;
        while emitted < 10_000 {
            let Some(q) = e.next() else { break };
            debug_assert!(is_quorum(f, &q));
            max_delay = max_delay.max(e.work() - last);
            last = e.work();
            emitted += 1;
        }
        let ok = emitted == 10_000 && (max_delay as f64) <= bound;
        pass &= ok;
        details.push(format!(
            "{label}: {emitted} emitted, max delay {max_delay} = {:.3}·n·size",
            max_delay as f64 / (n * instance_size(f)) as f64
        ));
    }
    outcome(pass, format!("C = {C}; {}", details.join("; ")))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut configs, mut brute_checked, mut bad) = (0, 0, 0);
    for seed in 0..250u64 {
        let count = rng.random_range(1..=4);
        let mut sizes: Vec<usize> = (0..count).map(|_| rng.random_range(1..=12)).collect();
        let brute = seed < 200;
        if brute {
            // Keep the whole instance within the oracle's reach.
            while sizes.iter().sum::<usize>() > 16 {
                let i = sizes.iter().enumerate().max_by_key(|(_, s)| **s).unwrap().0;
                sizes[i] -= 1;
            }
        }
        let f = generate_guideline_config(&sizes, seed).unwrap();
        configs += 1;
        let mut ok = check_guidelines(&f).conforms && disjoint_quorums(&f).verdict == Verdict::Intersecting;
        if brute {
            brute_checked += 1;
            ok &= brute_force_dqp(&f).unwrap().verdict == Verdict::Intersecting;
        }
        bad += usize::from(!ok);
    }
    outcome(
        bad == 0,
        format!("{configs} configurations ({brute_checked} also by brute force), {bad} failures"),
    )
}

fn criterion_11(corpus: &[FbasInstance], brute: &[Verdict]) -> Outcome {
    let (mut minimal, mut bad_scc, mut bad_single, mut bad_common) = (0, 0, 0, 0);
    let mut intersecting_with_quorums = 0;
    for (f, verdict) in corpus.iter().zip(brute) {
        let qs = brute_force_minimal_quorums(f).unwrap();
        let reach = reachability(f);
        let same_scc = |nodes: &[NodeId]| {
            nodes
                .iter()
                .all(|a| nodes.iter().all(|b| reach[a.0][b.0] && reach[b.0][a.0]))
        };
        let index = SatisfactionIndex::new(f);
        for q in &qs {
            minimal += 1;
            assert!(is_minimal_quorum(&index, f, q));
            bad_scc += usize::from(!induces_strongly_connected(f, q));
            bad_single += usize::from(!same_scc(&q.to_vec()));
        }
        if *verdict == Verdict::Intersecting && !qs.is_empty() {
            intersecting_with_quorums += 1;
            let all: Vec<NodeId> = qs.iter().flat_map(|q| q.to_vec()).collect();
            bad_common += usize::from(!same_scc(&all));
        }
    }
    let sanity = brute_force_quorums(&fixtures::f3()).unwrap().len();
    outcome(
        bad_scc + bad_single + bad_common == 0 && sanity > 0,
        format!(
            "{minimal} minimal quorums; {bad_scc} not strongly connected, {bad_single} spanning SCCs; {intersecting_with_quorums} intersecting instances, {bad_common} without a common SCC"
        ),
    )
}

fn main() {
    let started = Instant::now();
    let corpus = corpus();
    let brute: Vec<Verdict> = corpus
        .iter()
        .map(|f| brute_force_dqp(f).unwrap().verdict)
        .collect();

    let criteria: Vec<(&str, Check)> = vec![
        ("1 DQP oracle equivalence", Box::new(|| criterion_1(&corpus, &brute))),
        ("2 MQP oracle equivalence", Box::new(|| criterion_2(&corpus))),
        ("3 QSP linear-time evidence", Box::new(|| criterion_3(&corpus))),
        ("4 MCVP correctness", Box::new(criterion_4)),
        ("5 vertex-cover size law", Box::new(criterion_5)),
        ("6 clique law", Box::new(criterion_6)),
        ("7 degree reduction", Box::new(criterion_7)),
        ("8 random separation", Box::new(|| criterion_8(&corpus, &brute))),
        ("9 polynomial delay", Box::new(criterion_9)),
        ("10 guideline soundness", Box::new(criterion_10)),
        ("11 minimal-quorum structure", Box::new(|| criterion_11(&corpus, &brute))),
    ];

    let mut failed = 0;
    for (name, check) in &criteria {
        let t = Instant::now();
        let o = check();
        failed += usize::from(!o.pass);
        println!(
            "{} criterion {name}: {} [{:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
