//! `fbas` command line: parses arguments, runs one analysis or generator and
//! writes the result as text or JSON.
//!
//! Exit codes: 0 when the command ran (the verdict is in the output), 1 for
//! usage, input and parse errors, 2 when an internal guard tripped or a
//! `--verify` re-check failed.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fbas_core::enumerate::is_minimal_quorum;
use fbas_core::graph::SccPartition;
use fbas_core::intersect::{brute_force_dqp, brute_force_min_quorum};
use fbas_core::io::{parse_unvalidated, NestedProfile, ParseError, PlainProfile};
use fbas_core::reductions::{
    clique_to_xy_fbas, degree_reduce, mcvp_to_qsp, set_splitting_to_fbas, vertex_cover_to_fbas,
    CircuitInput, GraphInput, Reduced, SetSplittingInput,
};
use fbas_core::{
    build_graph, check_guidelines, disjoint_quorums, dqp_k_random, find_min_quorum,
    generate_guideline_config, generate_random, instance_size, is_quorum, mqp_bounded_search,
    parse_instance, scc_partition, serialize_instance, validate, Error, FbasInstance, NodeSet,
    Profile, QuorumEnumerator, SatisfactionIndex, Severity, SliceSpec, Witness,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_GUARD: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "fbas", version, about = "Quorum analysis for federated Byzantine agreement systems")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Re-check every witness before printing; exit 2 on mismatch.
    #[arg(long, global = true)]
    verify: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether two disjoint quorums exist.
    CheckIntersection {
        file: PathBuf,
        /// Randomized one-sided search for a disjoint pair of combined size ≤ k.
        #[arg(long, requires = "k")]
        randomized: bool,
        #[arg(long)]
        k: Option<usize>,
        /// Colourings to try (default 2^k).
        #[arg(long, requires = "randomized")]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Find a minimum quorum, or decide whether one of size ≤ k exists.
    MinQuorum {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Bounded search; needs --k and --r.
        #[arg(long, requires_all = ["k", "r"])]
        fpt: bool,
        /// Maximum number of slices of one cardinality per node.
        #[arg(long, requires = "fpt")]
        r: Option<usize>,
    },
    /// Does the subset contain a quorum that includes the node?
    Qsp {
        file: PathBuf,
        #[arg(long)]
        node: String,
        #[arg(long, value_delimiter = ',')]
        subset: Vec<String>,
    },
    /// List quorums in declaration-lexicographic order.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        minimal_only: bool,
        #[arg(long, value_delimiter = ',')]
        within: Option<Vec<String>>,
    },
    /// Report all diagnostics for an instance document.
    Validate { file: PathBuf },
    /// Size and structure summary.
    Stats { file: PathBuf },
    /// Check the two configuration guidelines.
    GuidelineCheck { file: PathBuf },
    /// Produce an instance document.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Rewrite a plain instance to at most two slices per node and two nodes per slice.
    DegreeReduce { file: PathBuf },
    /// Exhaustive oracles (n ≤ 20).
    Oracle {
        #[command(subcommand)]
        kind: OracleKind,
    },
}

#[derive(Subcommand, Debug)]
enum GenerateKind {
    /// From `{"ground": [..], "family": [[..], ..]}`.
    SetSplitting {
        input: PathBuf,
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// From `{"vertices": [..], "edges": [[u, w], ..]}`.
    VertexCover {
        input: PathBuf,
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// From `{"gates": [{"const": true}, {"and": [1, 2]}, {"or": [1, 2]}, ..]}`.
    Mcvp {
        input: PathBuf,
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Nested instance with a size-k quorum iff the graph has a k-clique.
    Clique {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Guideline-conforming configuration with the given component sizes.
    Guideline {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Seeded random instance.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ProfileKind::Plain)]
        profile: ProfileKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ProfileKind {
    Plain,
    Nested,
}

#[derive(Subcommand, Debug)]
enum OracleKind {
    Dqp { file: PathBuf },
    MinQuorum { file: PathBuf },
}

/// Why a command did not produce its normal output.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeGuard { .. } | Error::ExpansionCap { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let ctx = Ctx {
        json: cli.format == Format::Json,
        verify: cli.verify,
    };
    match ctx.dispatch(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Guard(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_GUARD
        }
    }
}

struct Ctx {
    json: bool,
    verify: bool,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<FbasInstance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn names(f: &FbasInstance, set: &NodeSet) -> Vec<String> {
    f.set_names(set)
}

fn braces(f: &FbasInstance, set: &NodeSet) -> String {
    format!("{{{}}}", f.set_names(set).join(", "))
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json value serializes");
    s.push('\n');
    s
}

fn write_meta(path: &Option<PathBuf>, meta: Value) -> Result<(), Failure> {
    if let Some(p) = path {
        let mut text = serde_json::to_string_pretty(&meta).expect("json value serializes");
        text.push('\n');
        fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn verification_failed(what: &str) -> Failure {
    Failure::Guard(format!("verification failed: {what}"))
}

impl Ctx {
    fn dispatch(&self, command: Command) -> Outcome {
        match command {
            Command::CheckIntersection {
                file,
                randomized,
                k,
                trials,
                seed,
            } => {
                let f = load(&file)?;
                let w = if randomized {
                    dqp_k_random(&f, k.expect("clap enforces --k"), trials, seed)?
                } else {
                    disjoint_quorums(&f)
                };
                self.witness(&f, &w)
            }
            Command::MinQuorum { file, k, fpt, r } => self.min_quorum(&load(&file)?, k, fpt, r),
            Command::Qsp { file, node, subset } => self.qsp(&load(&file)?, &node, &subset),
            Command::Enumerate {
                file,
                limit,
                minimal_only,
                within,
            } => self.enumerate(&load(&file)?, limit, minimal_only, within.as_deref()),
            Command::Validate { file } => self.validate(&file),
            Command::Stats { file } => self.stats(&load(&file)?),
            Command::GuidelineCheck { file } => {
                let f = load(&file)?;
                let report = check_guidelines(&f);
                if self.json {
                    return Ok(json_line(&serde_json::to_value(&report).expect("serializes")));
                }
                let mut s = String::from(if report.conforms { "CONFORMS\n" } else { "DOES NOT CONFORM\n" });
                for r in &report.reasons {
                    s.push_str(&format!("  {r}\n"));
                }
                Ok(s)
            }
            Command::Generate { kind } => self.generate(kind),
            Command::DegreeReduce { file } => Ok(serialize_instance(&degree_reduce(&load(&file)?)?)),
            Command::Oracle { kind } => match kind {
                OracleKind::Dqp { file } => {
                    let f = load(&file)?;
                    let w = brute_force_dqp(&f)?;
                    self.witness(&f, &w)
                }
                OracleKind::MinQuorum { file } => {
                    let f = load(&file)?;
                    let q = brute_force_min_quorum(&f)?;
                    self.quorum_answer(&f, q.as_ref(), None, None)
                }
            },
        }
    }

    fn witness(&self, f: &FbasInstance, w: &Witness) -> Outcome {
        if self.verify && !w.verify(f) {
            return Err(verification_failed("disjoint-quorum witness"));
        }
        if self.json {
            let mut v = json!({ "verdict": w.verdict });
            if let Some((a, b)) = &w.quorums {
                v["quorum1"] = json!(names(f, a));
                v["quorum2"] = json!(names(f, b));
            }
            v["stats"] = json!(w.stats);
            return Ok(json_line(&v));
        }
        let mut s = format!("{}\n", w.verdict.as_str());
        if let Some((a, b)) = &w.quorums {
            s.push_str(&format!("quorum 1: {}\nquorum 2: {}\n", braces(f, a), braces(f, b)));
        }
        Ok(s)
    }

    /// Prints a (possibly absent) quorum; with `k`, also the decision
    /// "is there a quorum of at most k nodes".
    fn quorum_answer(
        &self,
        f: &FbasInstance,
        q: Option<&NodeSet>,
        k: Option<usize>,
        branches: Option<usize>,
    ) -> Outcome {
        if let Some(q) = q {
            if self.verify && !is_quorum(f, q) {
                return Err(verification_failed("reported set is not a quorum"));
            }
        }
        let exists = k.map(|k| q.is_some_and(|q| q.len() <= k));
        let shown = match exists {
            Some(false) => None,
            _ => q,
        };
        if self.json {
            let mut v = json!({
                "quorum": shown.map(|q| names(f, q)),
                "size": shown.map(|q| q.len()),
            });
            if let Some(k) = k {
                v["k"] = json!(k);
                v["exists"] = json!(exists);
            }
            if let Some(b) = branches {
                v["stats"] = json!({ "branches": b });
            }
            return Ok(json_line(&v));
        }
        let mut s = String::new();
        if let Some(e) = exists {
            s.push_str(if e { "YES\n" } else { "NO\n" });
        }
        match shown {
            Some(q) => s.push_str(&format!("quorum (size {}): {}\n", q.len(), braces(f, q))),
            None if exists.is_none() => s.push_str("NO QUORUM\n"),
            None => {}
        }
        Ok(s)
    }

    fn min_quorum(&self, f: &FbasInstance, k: Option<usize>, fpt: bool, r: Option<usize>) -> Outcome {
        if fpt {
            let (k, r) = (k.expect("clap enforces --k"), r.expect("clap enforces --r"));
            let (q, stats) = mqp_bounded_search(f, k, r)?;
            return self.quorum_answer(f, q.as_ref(), Some(k), Some(stats.branches));
        }
        match find_min_quorum(f) {
            Ok(m) => self.quorum_answer(f, Some(&m.quorum), k, Some(m.stats.branches)),
            Err(Error::NoQuorum) => self.quorum_answer(f, None, k, None),
            Err(e) => Err(e.into()),
        }
    }

    fn qsp(&self, f: &FbasInstance, node: &str, subset: &[String]) -> Outcome {
        let v = f.require_id(node)?;
        let w = f.set_by_names(subset)?;
        let q = SatisfactionIndex::new(f).max_quorum_within(&w);
        let yes = q.contains(v);
        if self.verify && yes && !(is_quorum(f, &q) && q.is_subset(&w)) {
            return Err(verification_failed("quorum inside subset"));
        }
        if self.json {
            return Ok(json_line(&json!({
                "answer": if yes { "YES" } else { "NO" },
                "quorum": yes.then(|| names(f, &q)),
            })));
        }
        Ok(if yes {
            format!("YES\nquorum: {}\n", braces(f, &q))
        } else {
            "NO\n".to_string()
        })
    }

    fn enumerate(
        &self,
        f: &FbasInstance,
        limit: Option<usize>,
        minimal_only: bool,
        within: Option<&[String]>,
    ) -> Outcome {
        let within = match within {
            Some(list) => f.set_by_names(list)?,
            None => f.full_set(),
        };
        let index = SatisfactionIndex::new(f);
        let mut found = Vec::new();
        let mut truncated = false;
        for q in QuorumEnumerator::new(f, &within) {
            if minimal_only && !is_minimal_quorum(&index, f, &q) {
                continue;
            }
            if limit.is_some_and(|l| found.len() == l) {
                truncated = true;
                break;
            }
            if self.verify && !(is_quorum(f, &q) && q.is_subset(&within)) {
                return Err(verification_failed("enumerated set is not a quorum"));
            }
            found.push(q);
        }
        if self.json {
            let list: Vec<Vec<String>> = found.iter().map(|q| names(f, q)).collect();
            return Ok(json_line(&json!({
                "count": found.len(),
                "truncated": truncated,
                "quorums": list,
            })));
        }
        let mut s: String = found.iter().map(|q| format!("{}\n", braces(f, q))).collect();
        s.push_str(&format!(
            "{} quorum(s){}\n",
            found.len(),
            if truncated { ", limit reached" } else { "" }
        ));
        Ok(s)
    }

    fn validate(&self, path: &Path) -> Outcome {
        let diagnostics = match parse_unvalidated(&read(path)?) {
            Ok(f) => validate(&f),
            Err(ParseError::Invalid(d)) => d,
            Err(e) => return Err(Failure::Usage(format!("{}: {e}", path.display()))),
        };
        let errors = diagnostics
            .iter()
            .filter(|d| d.severity == Severity::Error)
            .count();
        if self.json {
            let list: Vec<Value> = diagnostics
                .iter()
                .map(|d| {
                    json!({
                        "severity": match d.severity { Severity::Error => "error", Severity::Warning => "warning" },
                        "node": d.node,
                        "message": d.message,
                    })
                })
                .collect();
            return Ok(json_line(&json!({ "valid": errors == 0, "diagnostics": list })));
        }
        let mut s: String = diagnostics.iter().map(|d| format!("{d}\n")).collect();
        s.push_str(&if errors == 0 {
            "VALID\n".to_string()
        } else {
            format!("INVALID ({errors} error(s))\n")
        });
        Ok(s)
    }

    fn stats(&self, f: &FbasInstance) -> Outcome {
        let g = build_graph(f);
        let sccs: SccPartition = scc_partition(&g);
        let plain = f.specs().iter().filter(|s| s.is_plain()).count();
        let encoding = match plain {
            p if p == f.len() => "plain",
            0 => "nested",
            _ => "mixed",
        };
        let max_depth = f
            .specs()
            .iter()
            .map(|s| match s {
                SliceSpec::Plain(_) => 1,
                SliceSpec::Nested(d) => d.iter().map(|t| t.depth()).max().unwrap_or(0),
            })
            .max()
            .unwrap_or(0);
        let greatest = sccs.greatest().map(|c| sccs.members(c).len());
        let stats = json!({
            "nodes": f.len(),
            "size": instance_size(f),
            "encoding": encoding,
            "max_depth": max_depth,
            "edges": g.edge_count(),
            "components": sccs.component_count(),
            "sink_components": sccs.sinks().len(),
            "greatest_component_size": greatest,
        });
        if self.json {
            return Ok(json_line(&stats));
        }
        let mut s = String::new();
        for (k, v) in stats.as_object().expect("object") {
            s.push_str(&format!("{k}: {}\n", if v.is_null() { "none".into() } else { v.to_string().trim_matches('"').to_string() }));
        }
        Ok(s)
    }

    fn generate(&self, kind: GenerateKind) -> Outcome {
        let (reduced, meta_path, extra): (Reduced, Option<PathBuf>, Option<Value>) = match kind {
            GenerateKind::SetSplitting { input, meta } => {
                (set_splitting_to_fbas(&load_json::<SetSplittingInput>(&input)?)?, meta, None)
            }
            GenerateKind::VertexCover { input, meta } => {
                (vertex_cover_to_fbas(&load_json::<GraphInput>(&input)?)?, meta, None)
            }
            GenerateKind::Mcvp { input, meta } => {
                let m = mcvp_to_qsp(&load_json::<CircuitInput>(&input)?)?;
                let side = m.sidecar_json();
                (m.reduced, meta, Some(side))
            }
            GenerateKind::Clique { input, k, meta } => {
                (clique_to_xy_fbas(&load_json::<GraphInput>(&input)?, k)?, meta, None)
            }
            GenerateKind::Guideline { sizes, seed } => {
                return Ok(serialize_instance(&generate_guideline_config(&sizes, seed)?));
            }
            GenerateKind::Random { n, profile, seed } => {
                let p = match profile {
                    ProfileKind::Plain => Profile::Plain(PlainProfile::default()),
                    ProfileKind::Nested => Profile::Nested(NestedProfile::default()),
                };
                return Ok(serialize_instance(&generate_random(n, &p, seed)?));
            }
        };
        let mut meta = json!({ "origins": reduced.metadata_json() });
        if let Some(Value::Object(side)) = extra {
            for (k, v) in side {
                meta[k] = v;
            }
        }
        write_meta(&meta_path, meta)?;
        Ok(serialize_instance(&reduced.instance))
    }
}
