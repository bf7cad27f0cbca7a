//! Integer-indexed knowledge graphs, the term dictionary and N-Triples input.
//!
//! Nodes and relations are dense integer ranges `0..v` and `0..r`. Terms are
//! only kept in the [`Dictionary`] so results can be printed; every
//! computation works on indices.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// One edge `(subject, predicate, object)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub s: u32,
    pub p: u32,
    pub o: u32,
}

impl Triple {
    pub const fn new(s: u32, p: u32, o: u32) -> Self {
        Triple { s, p, o }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.s, self.p, self.o)
    }
}

/// A directed, relation-labelled graph with a duplicate-free triple set.
///
/// Triples are stored sorted by `(s, p, o)`, which doubles as the
/// by-subject index. Object and predicate indexes are built on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeGraph {
    v: usize,
    r: usize,
    triples: Vec<Triple>,
    out_offsets: Vec<usize>,
    in_offsets: Vec<usize>,
    in_index: Vec<u32>,
    rel_offsets: Vec<usize>,
    rel_index: Vec<u32>,
}

fn offsets_by(v: usize, keys: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut offsets = vec![0usize; v + 1];
    for k in keys {
        offsets[k + 1] += 1;
    }
    for i in 0..v {
        offsets[i + 1] += offsets[i];
    }
    offsets
}

impl KnowledgeGraph {
    /// Builds a graph, collapsing duplicate triples.
    ///
    /// Fails if any triple refers to a node `>= v` or a relation `>= r`.
    pub fn new(v: usize, r: usize, triples: impl IntoIterator<Item = Triple>) -> Result<Self> {
        let mut triples: Vec<Triple> = triples.into_iter().collect();
        if let Some(t) = triples
            .iter()
            .find(|t| t.s as usize >= v || t.o as usize >= v || t.p as usize >= r)
        {
            return Err(Error::Contract(format!(
                "triple {t} out of range for v={v}, r={r}"
            )));
        }
        triples.sort_unstable();
        triples.dedup();
        Ok(Self::from_sorted(v, r, triples))
    }

    fn from_sorted(v: usize, r: usize, triples: Vec<Triple>) -> Self {
        let out_offsets = offsets_by(v, triples.iter().map(|t| t.s as usize));

        let mut in_index: Vec<u32> = (0..triples.len() as u32).collect();
        in_index.sort_unstable_by_key(|&i| {
            let t = triples[i as usize];
            (t.o, t.p, t.s)
        });
        let in_offsets = offsets_by(v, triples.iter().map(|t| t.o as usize));

        let mut rel_index: Vec<u32> = (0..triples.len() as u32).collect();
        rel_index.sort_unstable_by_key(|&i| {
            let t = triples[i as usize];
            (t.p, t.s, t.o)
        });
        let rel_offsets = offsets_by(r, triples.iter().map(|t| t.p as usize));

        KnowledgeGraph {
            v,
            r,
            triples,
            out_offsets,
            in_offsets,
            in_index,
            rel_offsets,
            rel_index,
        }
    }

    pub fn empty(v: usize, r: usize) -> Self {
        Self::from_sorted(v, r, Vec::new())
    }

    /// Number of nodes.
    pub fn v(&self) -> usize {
        self.v
    }

    /// Number of relations.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of triples.
    pub fn m(&self) -> usize {
        self.triples.len()
    }

    /// All triples, sorted by `(s, p, o)`.
    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    /// Outgoing triples of `s`, sorted by `(p, o)`.
    pub fn out_edges(&self, s: u32) -> &[Triple] {
        let s = s as usize;
        &self.triples[self.out_offsets[s]..self.out_offsets[s + 1]]
    }

    /// Incoming triples of `o`, sorted by `(p, s)`.
    pub fn in_edges(&self, o: u32) -> impl ExactSizeIterator<Item = Triple> + Clone + '_ {
        let o = o as usize;
        self.in_index[self.in_offsets[o]..self.in_offsets[o + 1]]
            .iter()
            .map(move |&i| self.triples[i as usize])
    }

    /// Triples with predicate `p`, sorted by `(s, o)`.
    pub fn rel_edges(&self, p: u32) -> impl ExactSizeIterator<Item = Triple> + Clone + '_ {
        let p = p as usize;
        self.rel_index[self.rel_offsets[p]..self.rel_offsets[p + 1]]
            .iter()
            .map(move |&i| self.triples[i as usize])
    }

    /// Outgoing triples of `s` with predicate `p`, sorted by object.
    pub fn out_edges_with(&self, s: u32, p: u32) -> &[Triple] {
        let edges = self.out_edges(s);
        let lo = edges.partition_point(|t| t.p < p);
        let hi = edges.partition_point(|t| t.p <= p);
        &edges[lo..hi]
    }

    /// Incoming triples of `o` with predicate `p`, sorted by subject.
    pub fn in_edges_with(&self, o: u32, p: u32) -> impl ExactSizeIterator<Item = Triple> + Clone + '_ {
        let ids = &self.in_index[self.in_offsets[o as usize]..self.in_offsets[o as usize + 1]];
        let lo = ids.partition_point(|&i| self.triples[i as usize].p < p);
        let hi = ids.partition_point(|&i| self.triples[i as usize].p <= p);
        ids[lo..hi].iter().map(move |&i| self.triples[i as usize])
    }

    pub fn out_degree(&self, s: u32) -> usize {
        let s = s as usize;
        self.out_offsets[s + 1] - self.out_offsets[s]
    }

    pub fn in_degree(&self, o: u32) -> usize {
        let o = o as usize;
        self.in_offsets[o + 1] - self.in_offsets[o]
    }

    pub fn rel_degree(&self, p: u32) -> usize {
        let p = p as usize;
        self.rel_offsets[p + 1] - self.rel_offsets[p]
    }

    pub fn contains(&self, t: Triple) -> bool {
        if t.s as usize >= self.v {
            return false;
        }
        self.out_edges(t.s)
            .binary_search_by(|e| (e.p, e.o).cmp(&(t.p, t.o)))
            .is_ok()
    }

    /// In-, relation- and out-degrees of every node and relation.
    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence {
            d_in: (0..self.v as u32).map(|i| self.in_degree(i) as u64).collect(),
            d_rel: (0..self.r as u32).map(|p| self.rel_degree(p) as u64).collect(),
            d_out: (0..self.v as u32).map(|i| self.out_degree(i) as u64).collect(),
        }
    }

    /// The same graph with `drop` removed. Dimensions are kept, so nodes may
    /// become isolated.
    pub fn remove_triples(&self, drop: &[Triple]) -> Result<Self> {
        let mut drop = drop.to_vec();
        drop.sort_unstable();
        drop.dedup();
        if let Some(t) = drop.iter().find(|t| !self.contains(**t)) {
            return Err(Error::Contract(format!("cannot remove absent triple {t}")));
        }
        let kept = self
            .triples
            .iter()
            .filter(|t| drop.binary_search(t).is_err())
            .copied()
            .collect();
        Ok(Self::from_sorted(self.v, self.r, kept))
    }

    /// A graph with the same dimensions and `extra` added.
    pub fn with_triples(&self, extra: impl IntoIterator<Item = Triple>) -> Result<Self> {
        Self::new(
            self.v,
            self.r,
            self.triples.iter().copied().chain(extra),
        )
    }

    /// Writes the integer edge list: a `v r m` header, then one `s p o` line
    /// per triple.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{} {} {}", self.v, self.r, self.m())?;
        for t in &self.triples {
            writeln!(out, "{} {} {}", t.s, t.p, t.o)?;
        }
        Ok(())
    }

    pub fn read_edge_list<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines().enumerate();
        let header = match lines.next() {
            Some((_, line)) => line?,
            None => {
                return Err(Error::Parse {
                    line: 1,
                    message: "missing `v r m` header".into(),
                })
            }
        };
        let dims = parse_ints::<usize>(&header, 1, 3)?;
        let (v, r, m) = (dims[0], dims[1], dims[2]);
        let mut triples = Vec::with_capacity(m);
        for (i, line) in lines {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let x = parse_ints::<u32>(&line, i + 1, 3)?;
            triples.push(Triple::new(x[0], x[1], x[2]));
        }
        if triples.len() != m {
            return Err(Error::Parse {
                line: 1,
                message: format!("header announces {m} triples, found {}", triples.len()),
            });
        }
        Self::new(v, r, triples)
    }
}

fn parse_ints<T: std::str::FromStr>(line: &str, lineno: usize, n: usize) -> Result<Vec<T>> {
    let parts: Vec<&str> = line.split(' ').collect();
    if parts.len() != n {
        return Err(Error::Parse {
            line: lineno,
            message: format!("expected {n} integers"),
        });
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<T>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("not an integer: `{p}`"),
            })
        })
        .collect()
}

/// In-, relation- and out-degrees of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeSequence {
    pub d_in: Vec<u64>,
    pub d_rel: Vec<u64>,
    pub d_out: Vec<u64>,
}

impl DegreeSequence {
    /// Number of triples implied by the relation degrees.
    pub fn m(&self) -> u64 {
        self.d_rel.iter().sum()
    }

    pub fn is_consistent(&self) -> bool {
        let m = self.m();
        self.d_in.iter().sum::<u64>() == m
            && self.d_out.iter().sum::<u64>() == m
            && self.d_in.len() == self.d_out.len()
    }
}

/// An RDF term, kept only for presentation. Literals keep their datatype or
/// language suffix verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(String),
    Literal(String),
    Blank(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Literal(lit) => f.write_str(lit),
            Term::Blank(id) => write!(f, "_:{id}"),
        }
    }
}

/// Parses one term at the start of `s`, returning it and the unparsed rest.
///
/// Accepts `<iri>`, `_:id` and `"literal"` with an optional `@lang` or
/// `^^<datatype>` suffix. Returns `None` on anything else.
pub fn parse_term(s: &str) -> Option<(Term, &str)> {
    let s = s.trim_start();
    if let Some(rest) = s.strip_prefix('<') {
        let end = rest.find('>')?;
        return Some((Term::Iri(rest[..end].to_string()), &rest[end + 1..]));
    }
    if let Some(rest) = s.strip_prefix("_:") {
        let mut end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        // a label may contain dots but not end with one
        while end > 0 && rest.as_bytes()[end - 1] == b'.' {
            end -= 1;
        }
        let id = &rest[..end];
        if id.is_empty() {
            return None;
        }
        return Some((Term::Blank(id.to_string()), &rest[end..]));
    }
    if s.starts_with('"') {
        let bytes = s.as_bytes();
        let mut i = 1;
        let mut closed = None;
        while i < bytes.len() {
            match bytes[i] {
                b'\\' => i += 2,
                b'"' => {
                    closed = Some(i);
                    break;
                }
                _ => i += 1,
            }
        }
        let mut end = closed? + 1;
        let rest = &s[end..];
        if let Some(lang) = rest.strip_prefix('@') {
            let n = lang
                .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-'))
                .unwrap_or(lang.len());
            end += 1 + n;
        } else if let Some(dt) = rest.strip_prefix("^^<") {
            end += 3 + dt.find('>')? + 1;
        }
        return Some((Term::Literal(s[..end].to_string()), &s[end..]));
    }
    None
}

/// Bijective maps between terms and indices, one namespace for nodes and
/// one for relations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dictionary {
    nodes: Vec<Term>,
    relations: Vec<Term>,
    node_ids: HashMap<Term, u32>,
    relation_ids: HashMap<Term, u32>,
}

impl Dictionary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index of `term` as a node, inserting it if new.
    pub fn intern_node(&mut self, term: Term) -> u32 {
        intern(&mut self.nodes, &mut self.node_ids, term)
    }

    /// Index of `term` as a relation, inserting it if new.
    pub fn intern_relation(&mut self, term: Term) -> u32 {
        intern(&mut self.relations, &mut self.relation_ids, term)
    }

    pub fn node_id(&self, term: &Term) -> Option<u32> {
        self.node_ids.get(term).copied()
    }

    pub fn relation_id(&self, term: &Term) -> Option<u32> {
        self.relation_ids.get(term).copied()
    }

    pub fn node(&self, id: u32) -> Option<&Term> {
        self.nodes.get(id as usize)
    }

    pub fn relation(&self, id: u32) -> Option<&Term> {
        self.relations.get(id as usize)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }
}

fn intern(terms: &mut Vec<Term>, ids: &mut HashMap<Term, u32>, term: Term) -> u32 {
    if let Some(&id) = ids.get(&term) {
        return id;
    }
    let id = terms.len() as u32;
    ids.insert(term.clone(), id);
    terms.push(term);
    id
}

/// Parses one N-Triples statement. `Ok(None)` for blank and comment lines.
fn parse_statement(line: &str, lineno: usize) -> Result<Option<[Term; 3]>> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let err = |message: &str| Error::Parse {
        line: lineno,
        message: message.to_string(),
    };
    let mut rest = line;
    let mut terms = Vec::with_capacity(3);
    while terms.len() < 3 {
        let trimmed = rest.trim_start();
        if trimmed.starts_with('.') || trimmed.is_empty() {
            return Err(err(&format!(
                "expected 3 terms before `.`, found {}",
                terms.len()
            )));
        }
        let (term, tail) = parse_term(trimmed).ok_or_else(|| err("unrecognised term"))?;
        terms.push(term);
        rest = tail;
    }
    let tail = rest.trim_start();
    if !tail.starts_with('.') {
        return Err(err("expected `.` after the object"));
    }
    let tail = tail[1..].trim_start();
    if !(tail.is_empty() || tail.starts_with('#')) {
        return Err(err("trailing content after `.`"));
    }
    let o = terms.pop().unwrap();
    let p = terms.pop().unwrap();
    let s = terms.pop().unwrap();
    Ok(Some([s, p, o]))
}

/// Reads line-oriented N-Triples into a graph and dictionary.
///
/// Subjects and objects share the node namespace; predicates get their own.
/// Both are numbered in order of first appearance.
pub fn load_ntriples<R: BufRead>(input: R) -> Result<(KnowledgeGraph, Dictionary)> {
    let mut dict = Dictionary::new();
    let mut triples = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if let Some([s, p, o]) = parse_statement(&line, i + 1)? {
            let s = dict.intern_node(s);
            let p = dict.intern_relation(p);
            let o = dict.intern_node(o);
            triples.push(Triple::new(s, p, o));
        }
    }
    let graph = KnowledgeGraph::new(dict.node_count(), dict.relation_count(), triples)?;
    Ok((graph, dict))
}

/// Convenience wrapper over [`load_ntriples`] for in-memory text.
pub fn load_ntriples_str(text: &str) -> Result<(KnowledgeGraph, Dictionary)> {
    load_ntriples(text.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: usize, r: usize, t: &[(u32, u32, u32)]) -> KnowledgeGraph {
        KnowledgeGraph::new(v, r, t.iter().map(|&(s, p, o)| Triple::new(s, p, o))).unwrap()
    }

    #[test]
    fn single_triple() {
        let (graph, dict) = load_ntriples_str("<a> <p> <b> .\n").unwrap();
        assert_eq!((graph.v(), graph.r(), graph.m()), (2, 1, 1));
        assert_eq!(graph.triples(), &[Triple::new(0, 0, 1)]);
        assert_eq!(dict.node(0), Some(&Term::Iri("a".into())));
    }

    #[test]
    fn literal_is_one_node() {
        let (graph, _) = load_ntriples_str("<a> <p> \"x\" .\n<a> <q> \"x\" .\n").unwrap();
        assert_eq!((graph.v(), graph.r()), (2, 2));
    }

    #[test]
    fn literal_and_iri_are_distinct() {
        let (graph, dict) = load_ntriples_str("<a> <p> \"x\" .\n<a> <p> <x> .\n").unwrap();
        assert_eq!(graph.v(), 3);
        assert_eq!(dict.node(1), Some(&Term::Literal("\"x\"".into())));
    }

    #[test]
    fn literal_suffixes_and_blanks() {
        let text = "_:b1 <p> \"1\"^^<http://www.w3.org/2001/XMLSchema#int> .\n\
                    _:b1 <p> \"chat\"@fr .\n\
                    # comment\n\
                    \n\
                    _:b1 <p> \"a \\\"quoted\\\" . string\" .\n";
        let (graph, dict) = load_ntriples_str(text).unwrap();
        assert_eq!(graph.m(), 3);
        assert_eq!(dict.node(0), Some(&Term::Blank("b1".into())));
        assert_eq!(
            dict.node(1),
            Some(&Term::Literal(
                "\"1\"^^<http://www.w3.org/2001/XMLSchema#int>".into()
            ))
        );
        assert_eq!(dict.node(2), Some(&Term::Literal("\"chat\"@fr".into())));
    }

    #[test]
    fn duplicates_collapse_and_self_loops_are_kept() {
        let (graph, _) = load_ntriples_str("<a> <p> <a> .\n<a> <p> <a> .\n").unwrap();
        assert_eq!((graph.v(), graph.m()), (1, 1));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = load_ntriples_str("<a> <p> <b> .\n\n<a> <p> .\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(load_ntriples_str("<a> <p> <b>\n").is_err());
    }

    #[test]
    fn degree_sequences() {
        let d = g(2, 1, &[(0, 0, 1)]).degree_sequence();
        assert_eq!((d.d_in, d.d_out, d.d_rel), (vec![0, 1], vec![1, 0], vec![1]));

        let d = g(2, 1, &[(0, 0, 1), (1, 0, 0)]).degree_sequence();
        assert_eq!((d.d_in, d.d_out, d.d_rel), (vec![1, 1], vec![1, 1], vec![2]));

        let d = KnowledgeGraph::empty(3, 1).degree_sequence();
        assert_eq!((d.d_in, d.d_out, d.d_rel), (vec![0; 3], vec![0; 3], vec![0]));
    }

    #[test]
    fn remove_triples_cases() {
        let graph = g(2, 1, &[(0, 0, 1), (1, 0, 0)]);
        assert_eq!(graph.remove_triples(&[]).unwrap(), graph);

        let rest = graph.remove_triples(&[Triple::new(0, 0, 1)]).unwrap();
        assert_eq!(rest.triples(), &[Triple::new(1, 0, 0)]);
        assert_eq!((rest.v(), rest.r()), (2, 1));

        let all = graph.remove_triples(graph.triples()).unwrap();
        assert_eq!((all.v(), all.r(), all.m()), (2, 1, 0));

        assert!(matches!(
            graph.remove_triples(&[Triple::new(0, 0, 0)]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn out_of_range_triple_rejected() {
        assert!(KnowledgeGraph::new(2, 1, [Triple::new(0, 1, 1)]).is_err());
    }

    #[test]
    fn adjacency_indexes() {
        let graph = g(3, 2, &[(0, 1, 2), (0, 0, 1), (2, 0, 1), (1, 1, 0)]);
        assert_eq!(graph.out_edges(0), &[Triple::new(0, 0, 1), Triple::new(0, 1, 2)]);
        let into1: Vec<_> = graph.in_edges(1).collect();
        assert_eq!(into1, vec![Triple::new(0, 0, 1), Triple::new(2, 0, 1)]);
        let rel1: Vec<_> = graph.rel_edges(1).collect();
        assert_eq!(rel1, vec![Triple::new(0, 1, 2), Triple::new(1, 1, 0)]);
        assert_eq!(graph.out_edges_with(0, 1), &[Triple::new(0, 1, 2)]);
        assert!(graph.out_edges_with(2, 1).is_empty());
        let into1: Vec<_> = graph.in_edges_with(1, 0).collect();
        assert_eq!(into1, vec![Triple::new(0, 0, 1), Triple::new(2, 0, 1)]);
        assert_eq!(graph.in_edges_with(1, 1).count(), 0);
        assert!(graph.contains(Triple::new(2, 0, 1)));
        assert!(!graph.contains(Triple::new(2, 1, 1)));
    }

    #[test]
    fn edge_list_format_is_exact() {
        let graph = g(3, 2, &[(2, 1, 0), (0, 0, 1)]);
        let mut buf = Vec::new();
        graph.write_edge_list(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "3 2 2\n0 0 1\n2 1 0\n");
        assert_eq!(KnowledgeGraph::read_edge_list(&buf[..]).unwrap(), graph);
    }

    #[test]
    fn ingestion_is_deterministic() {
        let text = "<a> <p> <b> .\n<c> <q> <a> .\n<b> <p> \"l\" .\n";
        assert_eq!(load_ntriples_str(text).unwrap(), load_ntriples_str(text).unwrap());
    }
}
