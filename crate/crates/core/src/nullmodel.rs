//! The edge-list (EL) approximation of the degree-sequence model.
//!
//! The EL probability of a graph given its degree sequence `D` is
//! `m! / |S_D|`, where `S_D` counts the triples of sequences (subjects,
//! predicates, objects) consistent with `D`. It never exceeds the uniform
//! probability over graphs with degree sequence `D`, so using it as the
//! null model only makes the test more conservative.
//!
//! `D` itself is encoded in one of two ways: by its own empirical
//! distribution (a lower bound that favours the null model) or by the
//! Pitman-Yor code (a fair code, used inside the motif code).

use std::collections::HashMap;

use crate::codes::{length_nonneg_int, log2_factorial, pitman_yor_length, sum_log2_factorials, Bits, PitmanYorConfig};
use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, KnowledgeGraph};

/// `2 log2(m!) - sum log2(D_in!) - sum log2(D_rel!) - sum log2(D_out!)`.
pub fn el_structure_bits(d: &DegreeSequence) -> Result<Bits> {
    if !d.is_consistent() {
        return Err(Error::Contract(
            "degree sequence sums disagree".into(),
        ));
    }
    let m = d.m();
    let degrees = d.d_in.iter().chain(&d.d_rel).chain(&d.d_out).copied();
    Ok(2.0 * log2_factorial(m) - sum_log2_factorials(degrees))
}

/// Empirical-entropy codelength of one sequence: `-sum_i log2(c(x_i) / n)`.
pub fn empirical_bits(seq: &[u64]) -> Bits {
    if seq.is_empty() {
        return 0.0;
    }
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for &x in seq {
        *counts.entry(x).or_default() += 1;
    }
    let n = seq.len() as f64;
    let mut counts: Vec<u64> = counts.into_values().collect();
    counts.sort_unstable();
    let bits: f64 = counts
        .into_iter()
        .map(|c| {
            let c = c as f64;
            c * (n / c).log2()
        })
        .sum();
    bits.max(0.0)
}

/// Degree encoding that cheats in favour of the null model: each of the
/// three sequences is coded with its own empirical distribution, with no
/// charge for the distribution.
pub fn degree_bits_lowerbound(d: &DegreeSequence) -> Bits {
    empirical_bits(&d.d_in) + empirical_bits(&d.d_rel) + empirical_bits(&d.d_out)
}

/// Fair degree encoding: the Pitman-Yor code on each sequence.
pub fn degree_bits_fair(d: &DegreeSequence, cfg: &PitmanYorConfig) -> Result<Bits> {
    Ok(pitman_yor_length(&d.d_in, cfg)?
        + pitman_yor_length(&d.d_rel, cfg)?
        + pitman_yor_length(&d.d_out, cfg)?)
}

/// The base code used inside the motif code: fair degrees plus EL structure.
pub fn base_bits(d: &DegreeSequence, cfg: &PitmanYorConfig) -> Result<Bits> {
    Ok(degree_bits_fair(d, cfg)? + el_structure_bits(d)?)
}

/// Codelength of `graph` under the null model: dimension headers, the
/// lower-bound degree encoding and the EL structure.
pub fn null_bits(graph: &KnowledgeGraph) -> Bits {
    let d = graph.degree_sequence();
    length_nonneg_int(graph.v() as u64)
        + length_nonneg_int(graph.r() as u64)
        + degree_bits_lowerbound(&d)
        + el_structure_bits(&d).expect("degree sequence of a graph is consistent")
}
