//! Simulated-annealing search over patterns.
//!
//! Each worker starts from a random triple with its relation made a variable
//! and repeatedly applies one of seven transitions. A candidate with a
//! strictly shorter motif code is always accepted; otherwise it is accepted
//! with a fixed probability. Every pattern a worker scores is remembered
//! under its canonical form.

use std::cmp::Ordering;
use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::codes::{Bits, PitmanYorConfig};
use crate::error::{Error, Result};
use crate::graph::{KnowledgeGraph, Triple};
use crate::matcher::{Instance, MatchBudget};
use crate::motifcode::{score_pattern, ScoredMotif};
use crate::nullmodel::null_bits;
use crate::pattern::{Pattern, PatternTriple, Slot, MAX_CANONICAL_NODE_VARS};

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SearchConfig {
    /// Steps per worker, counting the initial pattern.
    pub iterations: usize,
    pub workers: usize,
    /// Probability of accepting a candidate that is not strictly better.
    pub accept_prob: f64,
    pub budget: MatchBudget,
    pub top_per_worker: usize,
    pub seed: u64,
    pub py: PitmanYorConfig,
    /// Emit a `worker,iter,best_logfactor` line on stderr this often.
    pub progress_every: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            iterations: 1000,
            workers: 1,
            accept_prob: 0.5,
            budget: MatchBudget::default(),
            top_per_worker: 1000,
            seed: 0,
            py: PitmanYorConfig::default(),
            progress_every: None,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.accept_prob > 0.0 && self.accept_prob < 1.0) {
            return Err(Error::Domain(format!(
                "acceptance probability must be in (0, 1), got {}",
                self.accept_prob
            )));
        }
        if self.iterations == 0 {
            return Err(Error::Domain("at least one iteration is needed".into()));
        }
        self.py.validate()
    }
}

/// The seven pattern transitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Extend,
    NodeToVariable,
    EdgeToVariable,
    VariableNodeToConstant,
    VariableEdgeToConstant,
    RemoveEdge,
    Couple,
}

impl Move {
    pub const ALL: [Move; 7] = [
        Move::Extend,
        Move::NodeToVariable,
        Move::EdgeToVariable,
        Move::VariableNodeToConstant,
        Move::VariableEdgeToConstant,
        Move::RemoveEdge,
        Move::Couple,
    ];
}

/// A random non-loop triple with its relation made a variable.
pub fn initial_pattern<R: Rng>(graph: &KnowledgeGraph, rng: &mut R) -> Result<Pattern> {
    if graph.m() == 0 {
        return Err(Error::Initialization("graph has no triples".into()));
    }
    // Rejection first; the filtered draw has the same distribution and only
    // runs when loops are common.
    let pick = (0..graph.m())
        .map(|_| graph.triples()[rng.gen_range(0..graph.m())])
        .find(|t| t.s != t.o)
        .or_else(|| {
            let loop_free: Vec<Triple> = graph.triples().iter().copied().filter(|t| t.s != t.o).collect();
            loop_free.choose(rng).copied()
        })
        .ok_or_else(|| Error::Initialization("every triple is a self-loop".into()))?;
    Pattern::new(vec![PatternTriple::new(Slot::Const(pick.s), Slot::Var(0), Slot::Const(pick.o))])
}

fn finish(triples: Vec<PatternTriple>) -> Option<Pattern> {
    let p = Pattern::compact(triples).ok()?;
    (p.node_vars() <= MAX_CANONICAL_NODE_VARS).then_some(p)
}

fn replace_node(triples: &[PatternTriple], from: Slot, to: Slot) -> Vec<PatternTriple> {
    let swap = |s: Slot| if s == from { to } else { s };
    triples.iter().map(|t| PatternTriple::new(swap(t.s), t.p, swap(t.o))).collect()
}

fn replace_rel(triples: &[PatternTriple], from: Slot, to: Slot) -> Vec<PatternTriple> {
    triples
        .iter()
        .map(|t| PatternTriple::new(t.s, if t.p == from { to } else { t.p }, t.o))
        .collect()
}

/// Applies one transition of the given kind, or `None` if it does not apply
/// or yields an invalid pattern.
pub fn apply_move<R: Rng>(
    kind: Move,
    pattern: &Pattern,
    graph: &KnowledgeGraph,
    instances: &[Instance],
    rng: &mut R,
) -> Option<Pattern> {
    let triples = pattern.triples();
    match kind {
        Move::Extend => {
            let inst = instances.choose(rng)?;
            let produced = inst.triples(pattern);
            let mut bound: Vec<u32> = produced.iter().flat_map(|t| [t.s, t.o]).collect();
            bound.sort_unstable();
            bound.dedup();
            let mut adjacent: Vec<Triple> = bound
                .iter()
                .flat_map(|&n| graph.out_edges(n).iter().copied().chain(graph.in_edges(n)))
                .filter(|t| !produced.contains(t))
                .collect();
            adjacent.sort_unstable();
            adjacent.dedup();
            let t = *adjacent.choose(rng)?;
            // Endpoints the instance binds keep the pattern's own label so the
            // result stays connected and the instance stays an instance.
            let slot_of = |n: u32| {
                if let Some(i) = inst.nodes.iter().position(|&b| b == n) {
                    Slot::Var(i as u32)
                } else {
                    Slot::Const(n)
                }
            };
            let mut next = triples.to_vec();
            next.push(PatternTriple::new(slot_of(t.s), Slot::Const(t.p), slot_of(t.o)));
            finish(next)
        }
        Move::NodeToVariable => {
            let c = *pattern.constant_nodes().choose(rng)?;
            let fresh = Slot::Var(pattern.node_vars() as u32);
            finish(replace_node(triples, Slot::Const(c), fresh))
        }
        Move::EdgeToVariable => {
            let positions: Vec<usize> = (0..triples.len()).filter(|&i| !triples[i].p.is_var()).collect();
            let i = *positions.choose(rng)?;
            let mut next = triples.to_vec();
            next[i].p = Slot::Var(pattern.rel_vars() as u32);
            finish(next)
        }
        Move::VariableNodeToConstant => {
            if pattern.node_vars() == 0 {
                return None;
            }
            let inst = instances.choose(rng)?;
            let var = rng.gen_range(0..pattern.node_vars());
            finish(replace_node(triples, Slot::Var(var as u32), Slot::Const(inst.nodes[var])))
        }
        Move::VariableEdgeToConstant => {
            if pattern.rel_vars() == 0 {
                return None;
            }
            let inst = instances.choose(rng)?;
            let var = rng.gen_range(0..pattern.rel_vars());
            finish(replace_rel(triples, Slot::Var(var as u32), Slot::Const(inst.relations[var])))
        }
        Move::RemoveEdge => {
            let removable: Vec<usize> = (0..triples.len()).filter(|&i| pattern.can_remove(i)).collect();
            let i = *removable.choose(rng)?;
            let mut next = triples.to_vec();
            next.remove(i);
            finish(next)
        }
        Move::Couple => {
            let l = pattern.rel_vars();
            let pairs: Vec<(u32, u32)> = (0..l)
                .flat_map(|a| (a + 1..l).map(move |b| (a, b)))
                .filter(|&(a, b)| instances.iter().any(|inst| inst.relations[a] == inst.relations[b]))
                .map(|(a, b)| (a as u32, b as u32))
                .collect();
            let &(a, b) = pairs.choose(rng)?;
            finish(replace_rel(triples, Slot::Var(b), Slot::Var(a)))
        }
    }
}

/// Applies a uniformly chosen applicable transition. Kinds are tried in a
/// random order until one yields a valid pattern.
pub fn transition<R: Rng>(
    pattern: &Pattern,
    graph: &KnowledgeGraph,
    instances: &[Instance],
    rng: &mut R,
) -> Result<Pattern> {
    let mut kinds = Move::ALL;
    kinds.shuffle(rng);
    kinds
        .into_iter()
        .find_map(|kind| apply_move(kind, pattern, graph, instances, rng))
        .ok_or(Error::Stuck)
}

/// The acceptance rule: strictly shorter codes are always taken, others
/// with probability `accept_prob` using one uniform draw.
pub fn accept<R: Rng>(candidate: Bits, current: Bits, accept_prob: f64, rng: &mut R) -> bool {
    candidate < current || rng.gen::<f64>() < accept_prob
}

/// Ranking order: log-factor descending, then frequency descending, then
/// the canonical integer labels ascending.
pub fn rank_order(a: &ScoredMotif, b: &ScoredMotif) -> Ordering {
    b.log_factor
        .total_cmp(&a.log_factor)
        .then(b.frequency.cmp(&a.frequency))
        .then_with(|| a.pattern.to_labels().cmp(&b.pattern.to_labels()))
}

/// Per-worker RNG.
pub fn worker_rng(seed: u64, worker: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(worker as u64))
}

struct Chain<'a> {
    graph: &'a KnowledgeGraph,
    cfg: &'a SearchConfig,
    null: Bits,
    seen: HashMap<Pattern, ScoredMotif>,
}

impl Chain<'_> {
    /// Scores a canonical pattern, reusing earlier scores. Instances are
    /// only returned when they had to be computed.
    fn score(&mut self, pattern: &Pattern) -> Result<(ScoredMotif, Option<Vec<Instance>>)> {
        if let Some(s) = self.seen.get(pattern) {
            return Ok((s.clone(), None));
        }
        let (scored, instances) = score_pattern(self.graph, self.null, pattern, &self.cfg.budget, &self.cfg.py)?;
        self.seen.insert(pattern.clone(), scored.clone());
        Ok((scored, Some(instances)))
    }

    fn instances(&self, pattern: &Pattern) -> Result<Vec<Instance>> {
        Ok(score_pattern(self.graph, self.null, pattern, &self.cfg.budget, &self.cfg.py)?.1)
    }

    fn start<R: Rng>(&mut self, rng: &mut R) -> Result<(ScoredMotif, Vec<Instance>)> {
        let p = initial_pattern(self.graph, rng)?.canonicalize()?;
        let (scored, inst) = self.score(&p)?;
        let inst = match inst {
            Some(i) => i,
            None => self.instances(&p)?,
        };
        Ok((scored, inst))
    }
}

/// One annealing chain. Returns the best `top_per_worker` patterns it
/// scored, ranked.
pub fn anneal(graph: &KnowledgeGraph, cfg: &SearchConfig, worker: usize) -> Result<Vec<ScoredMotif>> {
    cfg.validate()?;
    let mut rng = worker_rng(cfg.seed, worker);
    let mut chain = Chain {
        graph,
        cfg,
        null: null_bits(graph),
        seen: HashMap::new(),
    };
    let (mut current, mut instances) = chain.start(&mut rng)?;
    let mut best = current.log_factor;

    for iter in 1..cfg.iterations {
        match transition(&current.pattern, graph, &instances, &mut rng) {
            Ok(candidate) => {
                let candidate = candidate.canonicalize()?;
                let (scored, fresh) = chain.score(&candidate)?;
                if accept(scored.breakdown.total, current.breakdown.total, cfg.accept_prob, &mut rng) {
                    instances = match fresh {
                        Some(i) => i,
                        None => chain.instances(&candidate)?,
                    };
                    current = scored;
                }
            }
            Err(Error::Stuck) => {
                (current, instances) = chain.start(&mut rng)?;
            }
            Err(e) => return Err(e),
        }
        best = best.max(current.log_factor);
        if let Some(every) = cfg.progress_every {
            if every > 0 && (iter + 1) % every == 0 {
                eprintln!("{worker},{},{best:.3}", iter + 1);
            }
        }
    }

    let mut out: Vec<ScoredMotif> = chain.seen.into_values().collect();
    out.sort_by(rank_order);
    out.truncate(cfg.top_per_worker);
    Ok(out)
}

/// Merges per-worker results: one row per canonical pattern, keeping the
/// best score, ranked by [`rank_order`].
pub fn merge_results(results: impl IntoIterator<Item = Vec<ScoredMotif>>) -> Vec<ScoredMotif> {
    let mut best: HashMap<Pattern, ScoredMotif> = HashMap::new();
    for s in results.into_iter().flatten() {
        match best.get(&s.pattern) {
            Some(old) if rank_order(old, &s) != Ordering::Greater => {}
            _ => {
                best.insert(s.pattern.clone(), s);
            }
        }
    }
    let mut out: Vec<ScoredMotif> = best.into_values().collect();
    out.sort_by(rank_order);
    out
}

/// Runs `cfg.workers` independent chains in parallel and merges them.
pub fn run_search(graph: &KnowledgeGraph, cfg: &SearchConfig) -> Result<Vec<ScoredMotif>> {
    cfg.validate()?;
    let results = (0..cfg.workers.max(1))
        .into_par_iter()
        .map(|w| anneal(graph, cfg, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(merge_results(results))
}
