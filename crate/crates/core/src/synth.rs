//! Random knowledge graphs, random patterns and injection experiments.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::codes::{Bits, PitmanYorConfig};
use crate::error::{Error, Result};
use crate::graph::{KnowledgeGraph, Triple};
use crate::matcher::{Instance, MatchBudget};
use crate::motifcode::log_factor;
use crate::pattern::{Pattern, PatternTriple, Slot};

/// Graph dimensions of a synthetic run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Dims {
    pub n: usize,
    pub m: usize,
    pub r: usize,
}

impl Dims {
    pub const fn new(n: usize, m: usize, r: usize) -> Self {
        Dims { n, m, r }
    }

    /// Dimensions of the MUTAG dataset.
    pub const MUTAG: Dims = Dims::new(23644, 74567, 24);
    /// Dimensions of the AIFB dataset.
    pub const AIFB: Dims = Dims::new(8285, 29226, 47);

    pub fn validate(&self) -> Result<()> {
        let pairs = self.n.saturating_mul(self.n.saturating_sub(1));
        if self.m > pairs {
            return Err(Error::Domain(format!(
                "{} edges do not fit in {} nodes without loops or repeated pairs",
                self.m, self.n
            )));
        }
        if self.r == 0 && self.m > 0 {
            return Err(Error::Domain("edges need at least one relation".into()));
        }
        Ok(())
    }
}

/// A single-pattern injection run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SynthSpec {
    pub dims: Dims,
    pub k: usize,
    pub seed: u64,
}

/// A directed G(n, m) graph without loops or repeated `(s, o)` pairs, each
/// edge labelled with a uniform relation.
pub fn sample_er_kg<R: Rng>(dims: Dims, rng: &mut R) -> Result<KnowledgeGraph> {
    dims.validate()?;
    let n = dims.n;
    let pairs = index::sample(rng, n * n.saturating_sub(1), dims.m).into_vec();
    let mut triples = Vec::with_capacity(dims.m);
    for i in pairs {
        let s = i / (n - 1);
        let mut o = i % (n - 1);
        if o >= s {
            o += 1;
        }
        let p = rng.gen_range(0..dims.r);
        triples.push(Triple::new(s as u32, p as u32, o as u32));
    }
    KnowledgeGraph::new(n, dims.r, triples)
}

const PATTERN_ATTEMPTS: usize = 10_000;

/// A random pattern: `n ~ U(3, 6)` nodes, `m ~ U(n, n^2 - n)` links of a
/// directed G(n, m) graph, `U(0, n)` nodes and `U(0, m)` links made
/// variables and the rest filled with uniform graph constants. Disconnected
/// draws are rejected.
pub fn sample_pattern<R: Rng>(graph: &KnowledgeGraph, rng: &mut R) -> Result<Pattern> {
    if graph.v() < 6 || graph.r() == 0 {
        return Err(Error::Domain("graph is too small to sample patterns from".into()));
    }
    for _ in 0..PATTERN_ATTEMPTS {
        let n = rng.gen_range(3..=6usize);
        let m = rng.gen_range(n..=n * n - n);
        let shape = sample_er_kg(Dims::new(n, m, 1), rng)?;
        if (0..n as u32).any(|x| shape.out_degree(x) + shape.in_degree(x) == 0) {
            continue;
        }

        let node_vars = rng.gen_range(0..=n);
        let link_vars = rng.gen_range(0..=m);
        let mut nodes: Vec<usize> = (0..n).collect();
        nodes.shuffle(rng);
        let constants = index::sample(rng, graph.v(), n - node_vars).into_vec();
        let mut slot = vec![Slot::Const(0); n];
        for (i, &node) in nodes.iter().enumerate() {
            slot[node] = if i < node_vars {
                Slot::Var(i as u32)
            } else {
                Slot::Const(constants[i - node_vars] as u32)
            };
        }
        let mut links: Vec<usize> = (0..m).collect();
        links.shuffle(rng);
        let mut rel = vec![Slot::Const(0); m];
        for (i, &link) in links.iter().enumerate() {
            rel[link] = if i < link_vars {
                Slot::Var(i as u32)
            } else {
                Slot::Const(rng.gen_range(0..graph.r()) as u32)
            };
        }
        let triples = shape
            .triples()
            .iter()
            .enumerate()
            .map(|(i, t)| PatternTriple::new(slot[t.s as usize], rel[i], slot[t.o as usize]))
            .collect();
        if let Ok(p) = Pattern::compact(triples) {
            return Ok(p);
        }
    }
    Err(Error::Domain("no connected pattern after many attempts".into()))
}

const INJECTION_ATTEMPTS: usize = 1000;

/// Plants `k` random instances of `pattern`: distinct uniform nodes for the
/// node variables, uniform relations for the relation variables. Triples
/// already present are left as they are.
pub fn inject<R: Rng>(
    graph: &KnowledgeGraph,
    pattern: &Pattern,
    k: usize,
    rng: &mut R,
) -> Result<(KnowledgeGraph, Vec<Instance>)> {
    if pattern.node_vars() > graph.v() {
        return Err(Error::Injection("more node variables than graph nodes".into()));
    }
    if pattern.rel_vars() > 0 && graph.r() == 0 {
        return Err(Error::Injection("graph has no relations".into()));
    }
    let mut instances = Vec::with_capacity(k);
    let mut added = Vec::with_capacity(k * pattern.len());
    for _ in 0..k {
        let inst = (0..INJECTION_ATTEMPTS)
            .find_map(|_| {
                let nodes = index::sample(rng, graph.v(), pattern.node_vars())
                    .into_iter()
                    .map(|n| n as u32)
                    .collect();
                let relations = (0..pattern.rel_vars()).map(|_| rng.gen_range(0..graph.r()) as u32).collect();
                let inst = Instance::new(nodes, relations);
                let mut triples = inst.triples(pattern);
                triples.sort_unstable();
                let distinct = triples.windows(2).all(|w| w[0] != w[1]);
                distinct.then_some(inst)
            })
            .ok_or_else(|| Error::Injection("could not draw an instance with distinct triples".into()))?;
        added.extend(inst.triples(pattern));
        instances.push(inst);
    }
    Ok((graph.with_triples(added)?, instances))
}

/// One row of the repeated injection experiment.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ExperimentRow {
    pub k: usize,
    pub repeat: usize,
    pub frequency: usize,
    pub complete: bool,
    pub log_factor: Bits,
}

/// Settings of the repeated injection experiment.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ExperimentConfig {
    pub dims: Dims,
    pub k_values: Vec<usize>,
    pub repeats: usize,
    pub seed: u64,
    pub budget: MatchBudget,
    pub py: PitmanYorConfig,
}

/// RNG keyed by `(seed, stream, repeat)`.
fn keyed_rng(seed: u64, stream: u64, repeat: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&stream.to_le_bytes());
    key[16..24].copy_from_slice(&(repeat as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// One cell: `k` planted instances and the log-factor of the planted
/// pattern. The base graph and pattern depend only on `repeat`, so every
/// `k` of one repeat sees the same pair and the sweep compares like with
/// like. Injection draws depend on `k` as well.
pub fn run_injection_cell(cfg: &ExperimentConfig, k: usize, repeat: usize) -> Result<ExperimentRow> {
    let mut rng = keyed_rng(cfg.seed, u64::MAX, repeat);
    let graph = sample_er_kg(cfg.dims, &mut rng)?;
    let pattern = sample_pattern(&graph, &mut rng)?;
    let mut rng = keyed_rng(cfg.seed, k as u64, repeat);
    let (graph, _) = inject(&graph, &pattern, k, &mut rng)?;
    let scored = log_factor(&graph, &pattern, &cfg.budget, &cfg.py)?;
    Ok(ExperimentRow {
        k,
        repeat,
        frequency: scored.frequency,
        complete: scored.complete,
        log_factor: scored.log_factor,
    })
}

/// Every `(k, repeat)` cell, run in parallel, in `(k, repeat)` order.
pub fn run_injection_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    let cells: Vec<(usize, usize)> = cfg
        .k_values
        .iter()
        .flat_map(|&k| (0..cfg.repeats).map(move |r| (k, r)))
        .collect();
    cells.into_par_iter().map(|(k, r)| run_injection_cell(cfg, k, r)).collect()
}

/// CSV with header `k,repeat,frequency,log_factor`.
pub fn rows_to_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::from("k,repeat,frequency,log_factor\n");
    for row in rows {
        out.push_str(&format!("{},{},{},{:.6}\n", row.k, row.repeat, row.frequency, row.log_factor));
    }
    out
}

/// Mean log-factor per `k` over rows with at least `min_frequency` pruned
/// instances. `None` when no row qualifies.
pub fn mean_log_factor_by_k(rows: &[ExperimentRow], min_frequency: usize) -> Vec<(usize, Option<Bits>)> {
    let mut ks: Vec<usize> = rows.iter().map(|r| r.k).collect();
    ks.sort_unstable();
    ks.dedup();
    ks.into_iter()
        .map(|k| {
            let kept: Vec<Bits> = rows
                .iter()
                .filter(|r| r.k == k && r.frequency >= min_frequency)
                .map(|r| r.log_factor)
                .collect();
            let mean = (!kept.is_empty()).then(|| kept.iter().sum::<Bits>() / kept.len() as f64);
            (k, mean)
        })
        .collect()
}
