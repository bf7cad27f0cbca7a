//! Motif discovery for knowledge graphs.
//!
//! A pattern is a small triple graph whose nodes and relations may be
//! variables. A pattern is reported as a motif when describing the graph
//! through the pattern, its instances and the leftover template is shorter
//! than describing it with a degree-sequence null model. The length
//! difference in bits is the pattern's *log-factor*; values above 10 bits
//! reject the null model at p < 0.001.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: integer-indexed graphs, the term dictionary and N-Triples input
//! - [`codes`]: prefix-free codelength primitives
//! - [`nullmodel`]: the edge-list approximation of the configuration model
//! - [`pattern`]: patterns with variables, text syntax and canonical forms
//! - [`matcher`]: instance enumeration and overlap pruning
//! - [`motifcode`]: the motif codelength and log-factor scoring
//! - [`search`]: simulated-annealing search over pattern space
//! - [`synth`]: random graphs, random patterns and injection experiments
//! - [`cli`]: command implementations, result tables and run manifests
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod cli;
pub mod codes;
pub mod error;
pub mod graph;
pub mod matcher;
pub mod motifcode;
pub mod nullmodel;
pub mod pattern;
pub mod search;
pub mod synth;

pub use codes::{Bits, PitmanYorConfig};
pub use error::{Error, Result};
pub use graph::{DegreeSequence, Dictionary, KnowledgeGraph, Term, Triple};
pub use matcher::{find_instances, prune_overlap, Instance, MatchBudget, MatchResult};
pub use motifcode::{log_factor, motif_bits, CodeBreakdown, ScoredMotif};
pub use nullmodel::null_bits;
pub use pattern::{Pattern, PatternTriple, PrefixMap, Slot};
pub use search::{run_search, SearchConfig};
