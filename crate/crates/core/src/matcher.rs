//! Instance enumeration for patterns.
//!
//! Matching semantics differ slightly from SPARQL basic graph patterns:
//!
//! - node variables bind pairwise distinct nodes;
//! - distinct pattern triples must map to distinct graph triples;
//! - relation variables with different ids may bind the same relation.
//!
//! A node variable may bind a node that also appears as a constant in the
//! same pattern.
//!
//! The search first narrows the candidate nodes of every variable with a
//! dual-simulation style fixpoint, then backtracks over the pattern triples
//! in a fixed order, visiting candidates in ascending index order. The
//! instance order is therefore deterministic, which in turn fixes the result
//! of greedy overlap pruning.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{KnowledgeGraph, Triple};
use crate::pattern::{Pattern, PatternTriple, Slot};

/// Limits for one matcher call. At least one limit should be set; an
/// unlimited budget enumerates everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MatchBudget {
    pub wall_clock_limit: Option<Duration>,
    pub max_instances: Option<usize>,
    /// Cap on backtracking steps, a deterministic stand-in for the clock.
    pub max_steps: Option<u64>,
}

impl Default for MatchBudget {
    fn default() -> Self {
        MatchBudget {
            wall_clock_limit: Some(Duration::from_secs(5)),
            max_instances: None,
            max_steps: None,
        }
    }
}

impl MatchBudget {
    pub fn unlimited() -> Self {
        MatchBudget {
            wall_clock_limit: None,
            max_instances: None,
            max_steps: None,
        }
    }

    /// Deterministic budget: instance and step caps, no clock.
    pub fn counted(max_instances: usize, max_steps: u64) -> Self {
        MatchBudget {
            wall_clock_limit: None,
            max_instances: Some(max_instances),
            max_steps: Some(max_steps),
        }
    }

    pub fn is_deterministic(&self) -> bool {
        self.wall_clock_limit.is_none()
    }
}

/// Bindings for one occurrence of a pattern: `nodes[i]` for node variable
/// `i`, `relations[j]` for relation variable `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Instance {
    pub nodes: Vec<u32>,
    pub relations: Vec<u32>,
}

impl Instance {
    pub fn new(nodes: Vec<u32>, relations: Vec<u32>) -> Self {
        Instance { nodes, relations }
    }

    fn resolve(&self, slot: Slot, relation: bool) -> u32 {
        match (slot, relation) {
            (Slot::Const(c), _) => c,
            (Slot::Var(i), false) => self.nodes[i as usize],
            (Slot::Var(j), true) => self.relations[j as usize],
        }
    }

    /// The graph triples this instance produces, in pattern order.
    pub fn triples(&self, pattern: &Pattern) -> Vec<Triple> {
        pattern
            .triples()
            .iter()
            .map(|t| {
                Triple::new(
                    self.resolve(t.s, false),
                    self.resolve(t.p, true),
                    self.resolve(t.o, false),
                )
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchResult {
    pub instances: Vec<Instance>,
    /// True iff the search ran to completion inside its budget.
    pub complete: bool,
}

/// Whether `inst` is a valid instance of `pattern` in `graph`.
pub fn is_valid_instance(graph: &KnowledgeGraph, pattern: &Pattern, inst: &Instance) -> bool {
    if inst.nodes.len() != pattern.node_vars() || inst.relations.len() != pattern.rel_vars() {
        return false;
    }
    if inst.nodes.iter().any(|&n| n as usize >= graph.v())
        || inst.relations.iter().any(|&r| r as usize >= graph.r())
    {
        return false;
    }
    let distinct: HashSet<u32> = inst.nodes.iter().copied().collect();
    if distinct.len() != inst.nodes.len() {
        return false;
    }
    let triples = inst.triples(pattern);
    let unique: HashSet<Triple> = triples.iter().copied().collect();
    unique.len() == triples.len() && triples.iter().all(|&t| graph.contains(t))
}

fn check_constants(graph: &KnowledgeGraph, pattern: &Pattern) -> Result<()> {
    for t in pattern.triples() {
        for slot in [t.s, t.o] {
            if let Slot::Const(c) = slot {
                if c as usize >= graph.v() {
                    return Err(Error::Contract(format!("constant node {c} out of range")));
                }
            }
        }
        if let Slot::Const(c) = t.p {
            if c as usize >= graph.r() {
                return Err(Error::Contract(format!("constant relation {c} out of range")));
            }
        }
    }
    Ok(())
}

/// Node-variable candidate sets, narrowed to a fixpoint.
///
/// A node stays a candidate for variable `x` only if, for every pattern
/// triple touching `x`, it has a matching graph triple whose other endpoint
/// is a constant match or still a candidate for the other variable, and if
/// it has at least as many in- and out-edges as `x` has pattern triples.
fn candidate_domains(graph: &KnowledgeGraph, pattern: &Pattern) -> Vec<Vec<bool>> {
    let nv = pattern.node_vars();
    let mut domains = vec![vec![true; graph.v()]; nv];
    let mut out_needed = vec![0usize; nv];
    let mut in_needed = vec![0usize; nv];
    for t in pattern.triples() {
        if let Slot::Var(x) = t.s {
            out_needed[x as usize] += 1;
        }
        if let Slot::Var(x) = t.o {
            in_needed[x as usize] += 1;
        }
    }
    for x in 0..nv {
        for n in 0..graph.v() as u32 {
            domains[x][n as usize] =
                graph.out_degree(n) >= out_needed[x] && graph.in_degree(n) >= in_needed[x];
        }
    }

    let rel_ok = |slot: Slot, p: u32| match slot {
        Slot::Const(c) => c == p,
        Slot::Var(_) => true,
    };
    for _round in 0..4 {
        let mut changed = false;
        for t in pattern.triples() {
            // subject side
            if let Slot::Var(x) = t.s {
                let x = x as usize;
                for n in 0..graph.v() as u32 {
                    if !domains[x][n as usize] {
                        continue;
                    }
                    let ok = graph.out_edges(n).iter().any(|e| {
                        rel_ok(t.p, e.p)
                            && match t.o {
                                Slot::Const(c) => e.o == c,
                                Slot::Var(y) if y as usize == x => e.o == n,
                                Slot::Var(y) => domains[y as usize][e.o as usize] && e.o != n,
                            }
                    });
                    if !ok {
                        domains[x][n as usize] = false;
                        changed = true;
                    }
                }
            }
            // object side
            if let Slot::Var(y) = t.o {
                let y = y as usize;
                for n in 0..graph.v() as u32 {
                    if !domains[y][n as usize] {
                        continue;
                    }
                    let ok = graph.in_edges(n).any(|e| {
                        rel_ok(t.p, e.p)
                            && match t.s {
                                Slot::Const(c) => e.s == c,
                                Slot::Var(x) if x as usize == y => e.s == n,
                                Slot::Var(x) => domains[x as usize][e.s as usize] && e.s != n,
                            }
                    });
                    if !ok {
                        domains[y][n as usize] = false;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    domains
}

/// Order in which pattern triples are matched: repeatedly the cheapest
/// triple among those touching something already bound.
fn triple_order(graph: &KnowledgeGraph, pattern: &Pattern, domains: &[Vec<bool>]) -> Vec<usize> {
    let domain_size: Vec<usize> = domains.iter().map(|d| d.iter().filter(|&&b| b).count()).collect();
    let mut bound = vec![false; pattern.node_vars()];
    let mut order = Vec::with_capacity(pattern.len());
    let mut used = vec![false; pattern.len()];
    let is_bound = |slot: Slot, bound: &[bool]| match slot {
        Slot::Const(_) => true,
        Slot::Var(x) => bound[x as usize],
    };
    for _ in 0..pattern.len() {
        let mut best: Option<(usize, usize)> = None;
        for (i, t) in pattern.triples().iter().enumerate() {
            if used[i] {
                continue;
            }
            let (sb, ob) = (is_bound(t.s, &bound), is_bound(t.o, &bound));
            if !order.is_empty() && !sb && !ob {
                continue;
            }
            let cost = estimate(graph, t, sb, ob, &domain_size);
            if best.is_none_or(|(c, _)| cost < c) {
                best = Some((cost, i));
            }
        }
        let (_, i) = best.expect("pattern is connected");
        used[i] = true;
        order.push(i);
        let t = pattern.triples()[i];
        for slot in [t.s, t.o] {
            if let Slot::Var(x) = slot {
                bound[x as usize] = true;
            }
        }
    }
    order
}

fn estimate(graph: &KnowledgeGraph, t: &PatternTriple, sb: bool, ob: bool, domain_size: &[usize]) -> usize {
    let avg = |total: usize, over: usize| total.div_ceil(over.max(1));
    let m = graph.m();
    let rel_share = match t.p {
        Slot::Const(p) => graph.rel_degree(p),
        Slot::Var(_) => m,
    };
    let base = match (t.s, t.o) {
        (Slot::Const(s), _) => graph.out_degree(s),
        (_, Slot::Const(o)) => graph.in_degree(o),
        _ if sb && ob => 1,
        _ if sb || ob => avg(rel_share, graph.v()),
        (Slot::Var(x), Slot::Var(y)) => rel_share
            .min(domain_size[x as usize] * avg(m, graph.v()))
            .min(domain_size[y as usize] * avg(m, graph.v())),
    };
    // fully bound triples are pure checks
    if sb && ob {
        base.min(1)
    } else {
        base
    }
}

struct Search<'a> {
    graph: &'a KnowledgeGraph,
    pattern: &'a Pattern,
    order: Vec<usize>,
    domains: Vec<Vec<bool>>,
    nodes: Vec<Option<u32>>,
    relations: Vec<Option<u32>>,
    matched: Vec<Triple>,
    out: Vec<Instance>,
    budget: MatchBudget,
    deadline: Option<Instant>,
    steps: u64,
    stopped: bool,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.steps += 1;
        if self.budget.max_steps.is_some_and(|max| self.steps > max) {
            self.stopped = true;
        }
        if self.steps.is_multiple_of(1024) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.stopped = true;
                }
            }
        }
        !self.stopped
    }

    fn node_value(&self, slot: Slot) -> Option<u32> {
        match slot {
            Slot::Const(c) => Some(c),
            Slot::Var(x) => self.nodes[x as usize],
        }
    }

    fn rel_value(&self, slot: Slot) -> Option<u32> {
        match slot {
            Slot::Const(c) => Some(c),
            Slot::Var(j) => self.relations[j as usize],
        }
    }

    fn node_free(&self, var: u32, n: u32) -> bool {
        self.domains[var as usize][n as usize]
            && self
                .nodes
                .iter()
                .enumerate()
                .all(|(i, b)| i == var as usize || *b != Some(n))
    }

    fn run(&mut self, depth: usize) {
        if self.stopped {
            return;
        }
        if depth == self.order.len() {
            let inst = Instance::new(
                self.nodes.iter().map(|n| n.expect("all bound")).collect(),
                self.relations.iter().map(|r| r.expect("all bound")).collect(),
            );
            self.out.push(inst);
            if self.budget.max_instances.is_some_and(|max| self.out.len() >= max) {
                self.stopped = true;
            }
            return;
        }
        let t = self.pattern.triples()[self.order[depth]];
        let (s, p, o) = (self.node_value(t.s), self.rel_value(t.p), self.node_value(t.o));

        // Candidates are collected up front so the graph borrow ends before
        // bindings change; lists are short since they are adjacency slices.
        let candidates: Vec<Triple> = match (s, p, o) {
            (Some(s), Some(p), _) => self.graph.out_edges_with(s, p).to_vec(),
            (Some(s), None, _) => self.graph.out_edges(s).to_vec(),
            (None, Some(p), Some(o)) => self.graph.in_edges_with(o, p).collect(),
            (None, None, Some(o)) => self.graph.in_edges(o).collect(),
            (None, Some(p), None) => self.graph.rel_edges(p).collect(),
            (None, None, None) => self.graph.triples().to_vec(),
        };

        for e in candidates {
            if !self.tick() {
                return;
            }
            if o.is_some_and(|o| e.o != o) {
                continue;
            }
            if self.matched.contains(&e) {
                continue;
            }
            // bind subject
            let mut bound_s = None;
            if s.is_none() {
                let Slot::Var(x) = t.s else { unreachable!() };
                if !self.node_free(x, e.s) {
                    continue;
                }
                self.nodes[x as usize] = Some(e.s);
                bound_s = Some(x);
            }
            // bind object, which may be the same variable as the subject
            let mut bound_o = None;
            let o_ok = match (o, t.o) {
                (Some(_), _) => true,
                (None, Slot::Var(y)) => match self.nodes[y as usize] {
                    Some(v) => v == e.o,
                    None => {
                        if self.node_free(y, e.o) {
                            self.nodes[y as usize] = Some(e.o);
                            bound_o = Some(y);
                            true
                        } else {
                            false
                        }
                    }
                },
                (None, Slot::Const(_)) => unreachable!(),
            };
            let mut bound_p = None;
            if o_ok {
                if p.is_none() {
                    let Slot::Var(j) = t.p else { unreachable!() };
                    self.relations[j as usize] = Some(e.p);
                    bound_p = Some(j);
                }
                self.matched.push(e);
                self.run(depth + 1);
                self.matched.pop();
            }
            if let Some(j) = bound_p {
                self.relations[j as usize] = None;
            }
            if let Some(y) = bound_o {
                self.nodes[y as usize] = None;
            }
            if let Some(x) = bound_s {
                self.nodes[x as usize] = None;
            }
            if self.stopped {
                return;
            }
        }
    }
}

/// Enumerates instances of `pattern` in `graph` within `budget`.
pub fn find_instances(graph: &KnowledgeGraph, pattern: &Pattern, budget: &MatchBudget) -> Result<MatchResult> {
    check_constants(graph, pattern)?;
    let start = Instant::now();
    let domains = candidate_domains(graph, pattern);
    if domains.iter().any(|d| !d.iter().any(|&b| b)) {
        return Ok(MatchResult {
            instances: Vec::new(),
            complete: true,
        });
    }
    let order = triple_order(graph, pattern, &domains);
    let mut search = Search {
        graph,
        pattern,
        order,
        domains,
        nodes: vec![None; pattern.node_vars()],
        relations: vec![None; pattern.rel_vars()],
        matched: Vec::with_capacity(pattern.len()),
        out: Vec::new(),
        budget: *budget,
        deadline: budget.wall_clock_limit.map(|d| start + d),
        steps: 0,
        stopped: false,
    };
    search.run(0);
    Ok(MatchResult {
        complete: !search.stopped,
        instances: search.out,
    })
}

/// Greedy overlap pruning: keeps an instance iff none of its triples was
/// produced by an instance kept before it.
pub fn prune_overlap(instances: &[Instance], pattern: &Pattern) -> Vec<Instance> {
    let mut seen: HashSet<Triple> = HashSet::new();
    let mut kept = Vec::new();
    for inst in instances {
        let triples = inst.triples(pattern);
        if triples.iter().any(|t| seen.contains(t)) {
            continue;
        }
        seen.extend(triples);
        kept.push(inst.clone());
    }
    kept
}
