//! The motif code and the log-factor.
//!
//! A graph is stored as its dimensions, the pattern, the template (the graph
//! minus every triple produced by an instance) and the instances. The
//! instances are coded with an extension of the EL code to the hypergraph
//! formed by the instances: per variable slot, a degree constraint counts how
//! often each graph node or relation fills that slot, and the instance list
//! is one of the sequences satisfying those counts.

use std::collections::{HashMap, HashSet};

use crate::codes::{length_nonneg_int, log2_factorial, pitman_yor_length, sum_log2_factorials, Bits, PitmanYorConfig};
use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, KnowledgeGraph, Triple};
use crate::matcher::{find_instances, prune_overlap, Instance, MatchBudget};
use crate::nullmodel::{base_bits, null_bits};
use crate::pattern::{Pattern, Slot};

/// Log-factor above which the null model is rejected at `p < 0.001`.
pub const SIGNIFICANCE_BITS: Bits = 10.0;

/// Per-slot binding counts of an instance list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeConstraint {
    /// `node_counts[i][q]`: instances binding node variable `i` to node `q`.
    pub node_counts: Vec<Vec<u64>>,
    /// `rel_counts[j][p]`: instances binding relation variable `j` to `p`.
    pub rel_counts: Vec<Vec<u64>>,
    pub k: u64,
}

impl DegreeConstraint {
    pub fn w(&self) -> usize {
        self.node_counts.len()
    }

    pub fn l(&self) -> usize {
        self.rel_counts.len()
    }

    fn sequences(&self) -> impl Iterator<Item = &Vec<u64>> {
        self.node_counts.iter().chain(&self.rel_counts)
    }
}

/// Counts bindings per slot. Instances must be valid for `pattern` and
/// pairwise edge-disjoint.
pub fn degree_constraint(
    graph: &KnowledgeGraph,
    pattern: &Pattern,
    instances: &[Instance],
) -> Result<DegreeConstraint> {
    produced_triples(graph, pattern, instances)?;
    Ok(count_bindings(graph, pattern, instances))
}

fn count_bindings(graph: &KnowledgeGraph, pattern: &Pattern, instances: &[Instance]) -> DegreeConstraint {
    let mut node_counts = vec![vec![0u64; graph.v()]; pattern.node_vars()];
    let mut rel_counts = vec![vec![0u64; graph.r()]; pattern.rel_vars()];
    for inst in instances {
        for (i, &n) in inst.nodes.iter().enumerate() {
            node_counts[i][n as usize] += 1;
        }
        for (j, &p) in inst.relations.iter().enumerate() {
            rel_counts[j][p as usize] += 1;
        }
    }
    DegreeConstraint {
        node_counts,
        rel_counts,
        k: instances.len() as u64,
    }
}

/// All triples produced by `instances`, checking that each instance is
/// well-formed, that every triple is in the graph and that no triple is
/// produced twice.
fn produced_triples(graph: &KnowledgeGraph, pattern: &Pattern, instances: &[Instance]) -> Result<Vec<Triple>> {
    let mut seen: HashSet<Triple> = HashSet::with_capacity(instances.len() * pattern.len());
    let mut out = Vec::with_capacity(instances.len() * pattern.len());
    for inst in instances {
        if inst.nodes.len() != pattern.node_vars() || inst.relations.len() != pattern.rel_vars() {
            return Err(Error::Contract("instance does not fit the pattern".into()));
        }
        if inst.nodes.iter().any(|&n| n as usize >= graph.v()) || inst.relations.iter().any(|&p| p as usize >= graph.r()) {
            return Err(Error::Contract("instance binding out of range".into()));
        }
        let distinct: HashSet<u32> = inst.nodes.iter().copied().collect();
        if distinct.len() != inst.nodes.len() {
            return Err(Error::Contract("instance binds two node variables to one node".into()));
        }
        for t in inst.triples(pattern) {
            if !graph.contains(t) {
                return Err(Error::Contract(format!("instance triple {t} is not in the graph")));
            }
            if !seen.insert(t) {
                return Err(Error::Contract(format!("triple {t} is produced twice")));
            }
            out.push(t);
        }
    }
    Ok(out)
}

/// `(w+l-1) log2(k!) - sum log2(D^i_q!) - sum log2(C^j_p!)`.
pub fn instance_structure_bits(dc: &DegreeConstraint) -> Bits {
    if dc.k <= 1 {
        return 0.0;
    }
    let slots = (dc.w() + dc.l()) as f64;
    (slots - 1.0) * log2_factorial(dc.k) - sum_log2_factorials(dc.sequences().flatten().copied())
}

/// The four parts of the motif code.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CodeBreakdown {
    pub b_dim: Bits,
    pub b_pattern: Bits,
    pub b_template: Bits,
    pub b_instances: Bits,
    pub total: Bits,
}

impl CodeBreakdown {
    fn new(b_dim: Bits, b_pattern: Bits, b_template: Bits, b_instances: Bits) -> Self {
        CodeBreakdown {
            b_dim,
            b_pattern,
            b_template,
            b_instances,
            total: b_dim + b_pattern + b_template + b_instances,
        }
    }
}

/// A pattern scored against one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredMotif {
    pub pattern: Pattern,
    /// Number of instances after overlap pruning.
    pub frequency: usize,
    /// Whether the matcher finished inside its budget.
    pub complete: bool,
    pub breakdown: CodeBreakdown,
    pub log_factor: Bits,
}

impl ScoredMotif {
    pub fn is_significant(&self) -> bool {
        self.log_factor > SIGNIFICANCE_BITS
    }
}

/// Maps an integer label to a nonnegative symbol: `x >= 0` to `2x`, `x < 0`
/// to `-2x - 1`.
pub fn interleave(x: i64) -> u64 {
    if x >= 0 {
        2 * x as u64
    } else {
        (-2 * x - 1) as u64
    }
}

/// The pattern as a plain graph `M'` over contiguous indices plus its label
/// sequence `S_M`, both in first-occurrence order over the triples.
pub fn pattern_graph(pattern: &Pattern) -> (KnowledgeGraph, Vec<u64>) {
    let mut nodes: HashMap<Slot, u32> = HashMap::new();
    let mut rels: HashMap<Slot, u32> = HashMap::new();
    let mut node_labels = Vec::new();
    let mut rel_labels = Vec::new();
    let mut edges = Vec::with_capacity(pattern.len());
    for t in pattern.triples() {
        let mut node = |slot: Slot| {
            *nodes.entry(slot).or_insert_with(|| {
                node_labels.push(interleave(pattern.node_label(slot)));
                node_labels.len() as u32 - 1
            })
        };
        let s = node(t.s);
        let o = node(t.o);
        let p = *rels.entry(t.p).or_insert_with(|| {
            rel_labels.push(interleave(pattern.rel_label(t.p)));
            rel_labels.len() as u32 - 1
        });
        edges.push(Triple::new(s, p, o));
    }
    let graph = KnowledgeGraph::new(node_labels.len(), rel_labels.len(), edges)
        .expect("pattern indices are in range");
    node_labels.extend(rel_labels);
    (graph, node_labels)
}

/// `L^base(M') + L^PY(S_M)`.
pub fn pattern_bits(pattern: &Pattern, cfg: &PitmanYorConfig) -> Result<Bits> {
    let (graph, labels) = pattern_graph(pattern);
    Ok(base_bits(&graph.degree_sequence(), cfg)? + pitman_yor_length(&labels, cfg)?)
}

fn dim_bits(graph: &KnowledgeGraph) -> Bits {
    length_nonneg_int(graph.v() as u64) + length_nonneg_int(graph.r() as u64) + length_nonneg_int(graph.m() as u64)
}

/// Degree sequence of `graph` with `drop` removed.
fn template_degrees(graph: &KnowledgeGraph, drop: &[Triple]) -> DegreeSequence {
    let mut d = graph.degree_sequence();
    for t in drop {
        d.d_out[t.s as usize] -= 1;
        d.d_rel[t.p as usize] -= 1;
        d.d_in[t.o as usize] -= 1;
    }
    d
}

/// The motif codelength of `graph` given `pattern` and pairwise
/// edge-disjoint `instances`.
pub fn motif_bits(
    graph: &KnowledgeGraph,
    pattern: &Pattern,
    instances: &[Instance],
    cfg: &PitmanYorConfig,
) -> Result<CodeBreakdown> {
    cfg.validate()?;
    let produced = produced_triples(graph, pattern, instances)?;
    let b_dim = dim_bits(graph);
    let b_pattern = pattern_bits(pattern, cfg)?;
    let b_template = base_bits(&template_degrees(graph, &produced), cfg)?;

    let dc = count_bindings(graph, pattern, instances);
    let mut b_instances = instance_structure_bits(&dc);
    if dc.w() + dc.l() == 0 {
        // nothing to recover k from
        b_instances += length_nonneg_int(dc.k);
    }
    for seq in dc.sequences() {
        b_instances += pitman_yor_length(seq, cfg)?;
    }
    Ok(CodeBreakdown::new(b_dim, b_pattern, b_template, b_instances))
}

/// Matches, prunes and scores `pattern`, with `null` the precomputed
/// [`null_bits`] of `graph`.
pub fn score_pattern(
    graph: &KnowledgeGraph,
    null: Bits,
    pattern: &Pattern,
    budget: &MatchBudget,
    cfg: &PitmanYorConfig,
) -> Result<(ScoredMotif, Vec<Instance>)> {
    let found = find_instances(graph, pattern, budget)?;
    let instances = prune_overlap(&found.instances, pattern);
    let breakdown = motif_bits(graph, pattern, &instances, cfg)?;
    let scored = ScoredMotif {
        pattern: pattern.clone(),
        frequency: instances.len(),
        complete: found.complete,
        breakdown,
        log_factor: null - breakdown.total,
    };
    Ok((scored, instances))
}

/// `null_bits(G) - motif_bits(G; M, I)` with `I` the pruned instances found
/// within `budget`.
pub fn log_factor(
    graph: &KnowledgeGraph,
    pattern: &Pattern,
    budget: &MatchBudget,
    cfg: &PitmanYorConfig,
) -> Result<ScoredMotif> {
    Ok(score_pattern(graph, null_bits(graph), pattern, budget, cfg)?.0)
}
