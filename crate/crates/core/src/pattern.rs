//! Basic graph patterns with node and relation variables.
//!
//! In integer form a pattern uses nonnegative labels for graph constants and
//! negative labels for variables: node variables are `-1..=-v'`, relation
//! variables continue below them at `-(v'+1)..=-(v'+r')`. Internally slots
//! are kept as [`Slot`] values and converted on demand.
//!
//! The text syntax is a list of `subject predicate object .` triples where
//! `?name` is a variable and constants are `<iri>`, `"literal"`, `_:blank` or
//! a prefixed name such as `foaf:maker`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{parse_term, Dictionary, Term};

/// Largest number of node variables [`Pattern::canonicalize`] accepts.
pub const MAX_CANONICAL_NODE_VARS: usize = 10;

/// One position of a pattern triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Const(u32),
    Var(u32),
}

impl Slot {
    pub fn is_var(self) -> bool {
        matches!(self, Slot::Var(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternTriple {
    pub s: Slot,
    pub p: Slot,
    pub o: Slot,
}

impl PatternTriple {
    pub const fn new(s: Slot, p: Slot, o: Slot) -> Self {
        PatternTriple { s, p, o }
    }
}

/// A valid pattern: at least one triple, no duplicates, weakly connected,
/// variable ids contiguous from zero in each namespace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    triples: Vec<PatternTriple>,
    node_vars: usize,
    rel_vars: usize,
}

impl Pattern {
    /// Validates `triples` as a pattern. Variable ids must already be
    /// contiguous; see [`Pattern::compact`] otherwise.
    pub fn new(triples: Vec<PatternTriple>) -> Result<Self> {
        if triples.is_empty() {
            return Err(Error::InvalidPattern("a pattern needs at least one triple".into()));
        }
        let node_vars = contiguous_vars(triples.iter().flat_map(|t| [t.s, t.o]), "node")?;
        let rel_vars = contiguous_vars(triples.iter().map(|t| t.p), "relation")?;

        let mut sorted = triples.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPattern("duplicate triple".into()));
        }
        if !is_connected(&triples) {
            return Err(Error::InvalidPattern("pattern is disconnected".into()));
        }
        Ok(Pattern {
            triples,
            node_vars,
            rel_vars,
        })
    }

    /// Renumbers variables to `0..` in order of first occurrence, then
    /// validates.
    pub fn compact(triples: Vec<PatternTriple>) -> Result<Self> {
        let mut nodes: HashMap<u32, u32> = HashMap::new();
        let mut rels: HashMap<u32, u32> = HashMap::new();
        let renumber = |slot: Slot, map: &mut HashMap<u32, u32>| match slot {
            Slot::Var(id) => {
                let next = map.len() as u32;
                Slot::Var(*map.entry(id).or_insert(next))
            }
            c => c,
        };
        let triples = triples
            .into_iter()
            .map(|t| {
                let s = renumber(t.s, &mut nodes);
                let p = renumber(t.p, &mut rels);
                let o = renumber(t.o, &mut nodes);
                PatternTriple::new(s, p, o)
            })
            .collect();
        Self::new(triples)
    }

    /// Builds a pattern from integer labels.
    pub fn from_labels(labels: &[(i64, i64, i64)]) -> Result<Self> {
        let node_vars = labels
            .iter()
            .flat_map(|&(s, _, o)| [s, o])
            .filter(|&x| x < 0)
            .map(|x| -x)
            .max()
            .unwrap_or(0) as usize;
        let node = |x: i64| -> Result<Slot> {
            if x >= 0 {
                u32::try_from(x)
                    .map(Slot::Const)
                    .map_err(|_| Error::InvalidPattern(format!("label {x} out of range")))
            } else {
                Ok(Slot::Var((-x - 1) as u32))
            }
        };
        let rel = |x: i64| -> Result<Slot> {
            if x >= 0 {
                u32::try_from(x)
                    .map(Slot::Const)
                    .map_err(|_| Error::InvalidPattern(format!("label {x} out of range")))
            } else if -x as usize > node_vars {
                Ok(Slot::Var((-x - 1) as u32 - node_vars as u32))
            } else {
                Err(Error::InvalidPattern(format!(
                    "relation label {x} overlaps the node variable range"
                )))
            }
        };
        let triples = labels
            .iter()
            .map(|&(s, p, o)| Ok(PatternTriple::new(node(s)?, rel(p)?, node(o)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(triples)
    }

    pub fn triples(&self) -> &[PatternTriple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Number of node variables (`v'`).
    pub fn node_vars(&self) -> usize {
        self.node_vars
    }

    /// Number of relation variables (`r'`).
    pub fn rel_vars(&self) -> usize {
        self.rel_vars
    }

    pub fn node_label(&self, slot: Slot) -> i64 {
        match slot {
            Slot::Const(c) => c as i64,
            Slot::Var(i) => -(i as i64) - 1,
        }
    }

    pub fn rel_label(&self, slot: Slot) -> i64 {
        match slot {
            Slot::Const(c) => c as i64,
            Slot::Var(j) => -(self.node_vars as i64) - (j as i64) - 1,
        }
    }

    /// The pattern in integer-label form.
    pub fn to_labels(&self) -> Vec<(i64, i64, i64)> {
        self.triples
            .iter()
            .map(|t| (self.node_label(t.s), self.rel_label(t.p), self.node_label(t.o)))
            .collect()
    }

    /// Distinct constant nodes, in order of first occurrence.
    pub fn constant_nodes(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for t in &self.triples {
            for slot in [t.s, t.o] {
                if let Slot::Const(c) = slot {
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    /// Whether the pattern stays valid without triple `index`.
    pub fn can_remove(&self, index: usize) -> bool {
        if self.triples.len() < 2 {
            return false;
        }
        let mut rest = self.triples.clone();
        rest.remove(index);
        is_connected(&rest)
    }

    /// The canonical representative of this pattern's renaming class.
    pub fn canonicalize(&self) -> Result<Pattern> {
        self.canonicalize_with_limit(MAX_CANONICAL_NODE_VARS)
    }

    /// Canonical form over all renumberings of node variables.
    ///
    /// Node variables are first split into cells by a renaming-invariant
    /// signature, and only permutations inside cells are tried. For each node
    /// numbering, relation variables are numbered by sorting their
    /// occurrence lists, which depends only on the node numbering. The
    /// result is the candidate with the smallest sorted label sequence.
    pub fn canonicalize_with_limit(&self, limit: usize) -> Result<Pattern> {
        if self.node_vars > limit {
            return Err(Error::PatternTooLarge {
                vars: self.node_vars,
                limit,
            });
        }

        let mut invariants: Vec<(NodeInvariant, u32)> = (0..self.node_vars as u32)
            .map(|v| (self.node_invariant(v), v))
            .collect();
        invariants.sort();
        let mut cells: Vec<Vec<u32>> = Vec::new();
        for (i, (inv, v)) in invariants.iter().enumerate() {
            if i > 0 && invariants[i - 1].0 == *inv {
                cells.last_mut().unwrap().push(*v);
            } else {
                cells.push(vec![*v]);
            }
        }

        let mut best: Option<Vec<(i64, i64, i64)>> = None;
        let mut order: Vec<u32> = cells.iter().flatten().copied().collect();
        let mut new_id = vec![0u32; self.node_vars];
        for_each_cell_permutation(&mut order, &cell_bounds(&cells), &mut |order| {
            for (pos, &old) in order.iter().enumerate() {
                new_id[old as usize] = pos as u32;
            }
            let candidate = self.relabel(&new_id);
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        });
        let labels = best.unwrap_or_else(|| {
            let mut l = self.to_labels();
            l.sort_unstable();
            l
        });
        Pattern::from_labels(&labels)
    }

    fn node_invariant(&self, var: u32) -> NodeInvariant {
        let me = Slot::Var(var);
        let describe = |s: Slot| match s {
            Slot::Const(c) => c as i64,
            Slot::Var(_) => -1,
        };
        let mut out = Vec::new();
        let mut inc = Vec::new();
        for t in &self.triples {
            if t.s == me {
                out.push((describe(t.p), if t.o == me { -2 } else { describe(t.o) }));
            }
            if t.o == me {
                inc.push((describe(t.p), if t.s == me { -2 } else { describe(t.s) }));
            }
        }
        out.sort_unstable();
        inc.sort_unstable();
        (out.len(), inc.len(), out, inc)
    }

    /// Sorted labels after renumbering node variables by `new_id` and
    /// relation variables by their occurrence lists.
    fn relabel(&self, new_id: &[u32]) -> Vec<(i64, i64, i64)> {
        let nv = self.node_vars as i64;
        let node = |s: Slot| match s {
            Slot::Const(c) => c as i64,
            Slot::Var(i) => -(new_id[i as usize] as i64) - 1,
        };
        let mut occurrences: Vec<Vec<(i64, i64)>> = vec![Vec::new(); self.rel_vars];
        for t in &self.triples {
            if let Slot::Var(j) = t.p {
                occurrences[j as usize].push((node(t.s), node(t.o)));
            }
        }
        for occ in &mut occurrences {
            occ.sort_unstable();
        }
        let mut rel_order: Vec<usize> = (0..self.rel_vars).collect();
        rel_order.sort_by(|&a, &b| occurrences[a].cmp(&occurrences[b]));
        let mut rel_id = vec![0i64; self.rel_vars];
        for (pos, &old) in rel_order.iter().enumerate() {
            rel_id[old] = pos as i64;
        }
        let mut labels: Vec<(i64, i64, i64)> = self
            .triples
            .iter()
            .map(|t| {
                let p = match t.p {
                    Slot::Const(c) => c as i64,
                    Slot::Var(j) => -nv - rel_id[j as usize] - 1,
                };
                (node(t.s), p, node(t.o))
            })
            .collect();
        labels.sort_unstable();
        labels
    }
}

type NodeInvariant = (usize, usize, Vec<(i64, i64)>, Vec<(i64, i64)>);

fn cell_bounds(cells: &[Vec<u32>]) -> Vec<(usize, usize)> {
    let mut start = 0;
    cells
        .iter()
        .map(|c| {
            let b = (start, start + c.len());
            start += c.len();
            b
        })
        .collect()
}

/// Calls `f` once for every arrangement of `order` that permutes elements
/// only within the given cell ranges.
fn for_each_cell_permutation(
    order: &mut [u32],
    cells: &[(usize, usize)],
    f: &mut dyn FnMut(&[u32]),
) {
    fn permute(
        order: &mut [u32],
        cells: &[(usize, usize)],
        cell: usize,
        k: usize,
        f: &mut dyn FnMut(&[u32]),
    ) {
        if cell == cells.len() {
            f(order);
            return;
        }
        let (start, end) = cells[cell];
        if k == end {
            permute(order, cells, cell + 1, start_of(cells, cell + 1), f);
            return;
        }
        for i in k..end {
            order.swap(k, i);
            permute(order, cells, cell, k + 1, f);
            order.swap(k, i);
        }
        let _ = start;
    }
    fn start_of(cells: &[(usize, usize)], cell: usize) -> usize {
        cells.get(cell).map_or(0, |c| c.0)
    }
    permute(order, cells, 0, start_of(cells, 0), f);
}

fn contiguous_vars(slots: impl Iterator<Item = Slot>, kind: &str) -> Result<usize> {
    let mut seen: Vec<bool> = Vec::new();
    for slot in slots {
        if let Slot::Var(id) = slot {
            let id = id as usize;
            if id >= seen.len() {
                seen.resize(id + 1, false);
            }
            seen[id] = true;
        }
    }
    if seen.iter().all(|&b| b) {
        Ok(seen.len())
    } else {
        Err(Error::InvalidPattern(format!("{kind} variables are not contiguous")))
    }
}

fn is_connected(triples: &[PatternTriple]) -> bool {
    let mut parent: HashMap<Slot, Slot> = HashMap::new();
    fn find(parent: &mut HashMap<Slot, Slot>, x: Slot) -> Slot {
        let p = *parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let root = find(parent, p);
        parent.insert(x, root);
        root
    }
    for t in triples {
        let a = find(&mut parent, t.s);
        let b = find(&mut parent, t.o);
        if a != b {
            parent.insert(a, b);
        }
    }
    let nodes: Vec<Slot> = parent.keys().copied().collect();
    let mut roots = nodes.into_iter().map(|n| find(&mut parent, n));
    match roots.next() {
        Some(first) => roots.all(|r| r == first),
        None => true,
    }
}

/// Namespace abbreviations for reading and printing terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixMap {
    entries: BTreeMap<String, String>,
}

impl Default for PrefixMap {
    fn default() -> Self {
        let mut map = PrefixMap::empty();
        for (p, ns) in [
            ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
            ("rdfs", "http://www.w3.org/2000/01/rdf-schema#"),
            ("owl", "http://www.w3.org/2002/07/owl#"),
            ("xsd", "http://www.w3.org/2001/XMLSchema#"),
            ("foaf", "http://xmlns.com/foaf/0.1/"),
            ("dc", "http://purl.org/dc/elements/1.1/"),
            ("dcterms", "http://purl.org/dc/terms/"),
            ("swrc", "http://swrc.ontoware.org/ontology#"),
            ("swrs", "http://swrc.ontoware.org/ontology#"),
        ] {
            map.insert(p, ns);
        }
        map
    }
}

impl PrefixMap {
    pub fn empty() -> Self {
        PrefixMap {
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, prefix: &str, namespace: &str) {
        self.entries.insert(prefix.to_string(), namespace.to_string());
    }

    /// Adds every entry of `other`, replacing clashing prefixes.
    pub fn extend(&mut self, other: &PrefixMap) {
        for (p, ns) in &other.entries {
            self.insert(p, ns);
        }
    }

    /// Reads prefix declarations, one per line, as `@prefix p: <ns> .`,
    /// `PREFIX p: <ns>` or `p ns`. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = PrefixMap::empty();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let line = line
                .strip_prefix("@prefix")
                .or_else(|| line.strip_prefix("PREFIX"))
                .unwrap_or(line)
                .trim()
                .trim_end_matches('.')
                .trim();
            let mut parts = line.split_whitespace();
            let (Some(prefix), Some(ns), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Parse {
                    line: i + 1,
                    message: "expected `prefix namespace`".into(),
                });
            };
            let prefix = prefix.trim_end_matches(':');
            let ns = ns.trim_start_matches('<').trim_end_matches('>');
            map.insert(prefix, ns);
        }
        Ok(map)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn expand(&self, pname: &str) -> Option<String> {
        let (prefix, local) = pname.split_once(':')?;
        self.entries.get(prefix).map(|ns| format!("{ns}{local}"))
    }

    /// Shortest `prefix:local` form of `iri`, if any namespace matches.
    pub fn abbreviate(&self, iri: &str) -> Option<String> {
        self.entries
            .iter()
            .filter_map(|(p, ns)| {
                let local = iri.strip_prefix(ns.as_str())?;
                let safe = local
                    .chars()
                    .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-'));
                safe.then(|| (ns.len(), format!("{p}:{local}")))
            })
            .max_by_key(|(len, _)| *len)
            .map(|(_, s)| s)
    }

    pub fn render(&self, term: &Term) -> String {
        match term {
            Term::Iri(iri) => self.abbreviate(iri).unwrap_or_else(|| term.to_string()),
            _ => term.to_string(),
        }
    }
}

enum Token {
    Var(String),
    Const(Term),
}

fn next_token<'a>(s: &'a str, prefixes: &PrefixMap) -> Result<(Token, &'a str)> {
    let s = s.trim_start();
    if let Some(rest) = s.strip_prefix('?') {
        let end = rest
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if end == 0 {
            return Err(Error::InvalidPattern("empty variable name".into()));
        }
        return Ok((Token::Var(rest[..end].to_string()), &rest[end..]));
    }
    if let Some((term, rest)) = parse_term(s) {
        return Ok((Token::Const(term), rest));
    }
    // prefixed name; a trailing `.` ends the triple rather than the name
    let mut end = s.find(char::is_whitespace).unwrap_or(s.len());
    while end > 0 && s.as_bytes()[end - 1] == b'.' {
        end -= 1;
    }
    let pname = &s[..end];
    match prefixes.expand(pname) {
        Some(iri) => Ok((Token::Const(Term::Iri(iri)), &s[end..])),
        None if pname.contains(':') => Err(Error::UnknownTerm(pname.to_string())),
        None => Err(Error::InvalidPattern(format!("cannot read term `{pname}`"))),
    }
}

/// Parses the text syntax against `dict`, using the default prefixes.
pub fn parse_pattern(text: &str, dict: &Dictionary) -> Result<Pattern> {
    parse_pattern_with(text, dict, &PrefixMap::default())
}

/// Parses the text syntax. Variables get ids in order of first occurrence,
/// node and relation variables separately.
pub fn parse_pattern_with(text: &str, dict: &Dictionary, prefixes: &PrefixMap) -> Result<Pattern> {
    let mut node_vars: HashMap<String, u32> = HashMap::new();
    let mut rel_vars: HashMap<String, u32> = HashMap::new();
    let mut triples = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let mut slots = [Slot::Const(0); 3];
        for (pos, slot) in slots.iter_mut().enumerate() {
            let (token, tail) = next_token(rest, prefixes)?;
            rest = tail;
            let is_rel = pos == 1;
            *slot = match token {
                Token::Var(name) => {
                    let (own, other) = if is_rel {
                        (&mut rel_vars, &node_vars)
                    } else {
                        (&mut node_vars, &rel_vars)
                    };
                    if other.contains_key(&name) {
                        return Err(Error::InvalidPattern(format!(
                            "?{name} is used as both a node and a relation"
                        )));
                    }
                    let next = own.len() as u32;
                    Slot::Var(*own.entry(name).or_insert(next))
                }
                Token::Const(term) => {
                    let id = if is_rel {
                        dict.relation_id(&term)
                    } else {
                        dict.node_id(&term)
                    };
                    Slot::Const(id.ok_or_else(|| Error::UnknownTerm(term.to_string()))?)
                }
            };
        }
        triples.push(PatternTriple::new(slots[0], slots[1], slots[2]));
        rest = rest.trim_start();
        if let Some(tail) = rest.strip_prefix('.') {
            rest = tail.trim_start();
        } else if !rest.is_empty() {
            return Err(Error::InvalidPattern("expected `.` between triples".into()));
        }
    }
    Pattern::new(triples)
}

/// Renders a pattern in the text syntax, one `s p o .` per triple joined by
/// `sep`. Node variables print as `?nK` and relation variables as `?pK`,
/// where `K` is the absolute value of the integer label.
pub fn print_pattern_with(
    pattern: &Pattern,
    dict: &Dictionary,
    prefixes: &PrefixMap,
    sep: &str,
) -> String {
    let node = |slot: Slot| match slot {
        Slot::Var(_) => format!("?n{}", -pattern.node_label(slot)),
        Slot::Const(c) => dict
            .node(c)
            .map_or_else(|| format!("<#node{c}>"), |t| prefixes.render(t)),
    };
    let rel = |slot: Slot| match slot {
        Slot::Var(_) => format!("?p{}", -pattern.rel_label(slot)),
        Slot::Const(c) => dict
            .relation(c)
            .map_or_else(|| format!("<#rel{c}>"), |t| prefixes.render(t)),
    };
    let mut out = String::new();
    for (i, t) in pattern.triples().iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        let _ = write!(out, "{} {} {} .", node(t.s), rel(t.p), node(t.o));
    }
    out
}

pub fn print_pattern(pattern: &Pattern, dict: &Dictionary) -> String {
    print_pattern_with(pattern, dict, &PrefixMap::default(), " ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_ntriples_str;

    fn dict() -> Dictionary {
        let (_, dict) = load_ntriples_str(
            "<a> <maker> <b> .\n<b> <made> <a> .\n<a> <p> <c> .\n<c> <p> \"lit\" .\n",
        )
        .unwrap();
        dict
    }

    #[test]
    fn all_variable_triple() {
        let p = parse_pattern("?n1 ?p2 ?n2 .", &dict()).unwrap();
        assert_eq!((p.len(), p.node_vars(), p.rel_vars()), (1, 2, 1));
        assert_eq!(p.to_labels(), vec![(-1, -3, -2)]);
    }

    #[test]
    fn two_cycle_with_constant_relations() {
        let d = dict();
        let p = parse_pattern("?n1 <maker> ?n2 . ?n2 <made> ?n1 .", &d).unwrap();
        assert_eq!((p.len(), p.node_vars(), p.rel_vars()), (2, 2, 0));
        assert_eq!(p.to_labels(), vec![(-1, 0, -2), (-2, 1, -1)]);
    }

    #[test]
    fn single_variable_with_constant_node() {
        let d = dict();
        let p = parse_pattern("?n1 <p> <c> .", &d).unwrap();
        assert_eq!((p.node_vars(), p.rel_vars()), (1, 0));
        assert_eq!(p.constant_nodes(), vec![d.node_id(&Term::Iri("c".into())).unwrap()]);
    }

    #[test]
    fn literal_constants_and_missing_final_dot() {
        let p = parse_pattern("?x <p> \"lit\"", &dict()).unwrap();
        assert_eq!(p.node_vars(), 1);
    }

    #[test]
    fn parse_errors() {
        let d = dict();
        assert!(matches!(parse_pattern("?a <nope> ?b .", &d), Err(Error::UnknownTerm(_))));
        assert!(matches!(parse_pattern("?a foo:bar ?b .", &d), Err(Error::UnknownTerm(_))));
        assert!(matches!(
            parse_pattern("?a <p> ?b . ?c <p> ?d .", &d),
            Err(Error::InvalidPattern(_))
        ));
        assert!(matches!(
            parse_pattern("?a <p> ?b . ?a <p> ?b .", &d),
            Err(Error::InvalidPattern(_))
        ));
        assert!(matches!(
            parse_pattern("?a ?a ?b .", &d),
            Err(Error::InvalidPattern(_))
        ));
        assert!(parse_pattern("", &d).is_err());
    }

    #[test]
    fn prefixed_names_expand() {
        let mut d = Dictionary::new();
        d.intern_node(Term::Iri("http://x.org/a".into()));
        d.intern_relation(Term::Iri("http://xmlns.com/foaf/0.1/maker".into()));
        let p = parse_pattern("?n1 foaf:maker <http://x.org/a>.", &d).unwrap();
        assert_eq!(p.len(), 1);
        let mut prefixes = PrefixMap::default();
        prefixes.insert("x", "http://x.org/");
        assert_eq!(
            print_pattern_with(&p, &d, &prefixes, " "),
            "?n1 foaf:maker x:a ."
        );
    }

    #[test]
    fn prefix_file_formats() {
        let map = PrefixMap::parse(
            "# prefixes\n@prefix a: <http://a/> .\nPREFIX b: <http://b/>\nc http://c/\n",
        )
        .unwrap();
        assert_eq!(map.expand("a:x").unwrap(), "http://a/x");
        assert_eq!(map.expand("b:y").unwrap(), "http://b/y");
        assert_eq!(map.abbreviate("http://c/z").unwrap(), "c:z");
        assert!(PrefixMap::parse("only-one-field\n").is_err());
    }

    #[test]
    fn print_and_reparse() {
        let d = dict();
        for text in [
            "?n1 ?p2 ?n2 .",
            "?n1 <maker> ?n2 . ?n2 <made> ?n1 .",
            "?n1 <p> <c> .",
            "?x ?r ?y . ?y ?r <a> . ?y ?q ?x .",
        ] {
            let parsed = parse_pattern(text, &d).unwrap();
            let printed = print_pattern(&parsed, &d);
            assert_eq!(parse_pattern(&printed, &d).unwrap(), parsed, "{text} -> {printed}");
        }
        let p = parse_pattern("?n1 ?p2 ?n2 .", &d).unwrap();
        assert_eq!(print_pattern(&p, &d), "?n1 ?p3 ?n2 .");
    }

    #[test]
    fn labels_round_trip_and_validation() {
        let labels = vec![(-1, -3, -2), (-2, 4, 7)];
        assert_eq!(Pattern::from_labels(&labels).unwrap().to_labels(), labels);
        // node variables must be contiguous
        assert!(Pattern::from_labels(&[(-1, 0, -3)]).is_err());
        // relation variable inside the node range
        assert!(Pattern::from_labels(&[(-1, -1, -2)]).is_err());
        assert!(Pattern::from_labels(&[]).is_err());
    }

    #[test]
    fn compact_renumbers() {
        let p = Pattern::compact(vec![PatternTriple::new(Slot::Var(5), Slot::Var(9), Slot::Var(2))]).unwrap();
        assert_eq!(p.to_labels(), vec![(-1, -3, -2)]);
    }

    #[test]
    fn canonical_examples() {
        let a = Pattern::from_labels(&[(-1, -3, -2)]).unwrap().canonicalize().unwrap();
        let b = Pattern::from_labels(&[(-2, -3, -1)]).unwrap().canonicalize().unwrap();
        assert_eq!(a, b);

        let constant = Pattern::from_labels(&[(3, 1, 4), (4, 0, 3)]).unwrap();
        let canon = constant.canonicalize().unwrap();
        let mut sorted = constant.to_labels();
        sorted.sort();
        assert_eq!(canon.to_labels(), sorted);

        let cycle = Pattern::from_labels(&[(-1, 5, -2), (-2, 6, -1)]).unwrap();
        let relabel = Pattern::from_labels(&[(-2, 5, -1), (-1, 6, -2)]).unwrap();
        assert_eq!(cycle.canonicalize().unwrap(), relabel.canonicalize().unwrap());
    }

    #[test]
    fn canonical_size_bound() {
        let labels: Vec<_> = (1..=11).map(|i| (-i, 0, 0)).collect();
        let star = Pattern::from_labels(&labels).unwrap();
        assert!(matches!(star.canonicalize(), Err(Error::PatternTooLarge { vars: 11, .. })));
        assert!(star.canonicalize_with_limit(11).is_ok());
    }

    #[test]
    fn removal_keeps_connectivity() {
        let path = Pattern::from_labels(&[(-1, 0, -2), (-2, 0, -3)]).unwrap();
        assert!(path.can_remove(0));
        let bridge = Pattern::from_labels(&[(-1, 0, -2), (-2, 0, -3), (-3, 0, -4)]).unwrap();
        assert!(!bridge.can_remove(1));
        let single = Pattern::from_labels(&[(-1, 0, -2)]).unwrap();
        assert!(!single.can_remove(0));
    }

    /// Exhaustive check of renaming invariance on small patterns.
    mod props {
        use super::*;
        use proptest::prelude::*;

        fn permutations(n: usize) -> Vec<Vec<u32>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for perm in permutations(n - 1) {
                for pos in 0..=perm.len() {
                    let mut p = perm.clone();
                    p.insert(pos, (n - 1) as u32);
                    out.push(p);
                }
            }
            out
        }

        fn rename(p: &Pattern, nodes: &[u32], rels: &[u32]) -> Pattern {
            let triples = p
                .triples()
                .iter()
                .map(|t| {
                    let n = |s: Slot| match s {
                        Slot::Var(i) => Slot::Var(nodes[i as usize]),
                        c => c,
                    };
                    let r = match t.p {
                        Slot::Var(j) => Slot::Var(rels[j as usize]),
                        c => c,
                    };
                    PatternTriple::new(n(t.s), r, n(t.o))
                })
                .collect();
            Pattern::new(triples).unwrap()
        }

        fn small_patterns() -> impl Strategy<Value = Pattern> {
            // slots: 0..3 node vars, 3..5 node constants; relations: 0..2 vars, 2..4 constants
            prop::collection::vec((0u32..5, 0u32..4, 0u32..5), 1..5).prop_filter_map(
                "invalid",
                |raw| {
                    let node = |x: u32| if x < 3 { Slot::Var(x) } else { Slot::Const(x - 3) };
                    let rel = |x: u32| if x < 2 { Slot::Var(x) } else { Slot::Const(x - 2) };
                    let triples = raw
                        .into_iter()
                        .map(|(s, p, o)| PatternTriple::new(node(s), rel(p), node(o)))
                        .collect();
                    Pattern::compact(triples).ok()
                },
            )
        }

        proptest! {
            #[test]
            fn renamings_share_a_canonical_form(p in small_patterns()) {
                let canon = p.canonicalize().unwrap();
                prop_assert_eq!(&canon.canonicalize().unwrap(), &canon);
                for nodes in permutations(p.node_vars()) {
                    for rels in permutations(p.rel_vars()) {
                        let q = rename(&p, &nodes, &rels);
                        prop_assert_eq!(&q.canonicalize().unwrap(), &canon);
                    }
                }
            }

            #[test]
            fn distinct_canonical_forms_mean_non_isomorphic(
                a in small_patterns(),
                b in small_patterns(),
            ) {
                let same_class = a.node_vars() == b.node_vars()
                    && a.rel_vars() == b.rel_vars()
                    && permutations(a.node_vars()).iter().any(|nodes| {
                        permutations(a.rel_vars()).iter().any(|rels| {
                            let mut x: Vec<_> = rename(&a, nodes, rels).to_labels();
                            let mut y: Vec<_> = b.to_labels();
                            x.sort();
                            y.sort();
                            x == y
                        })
                    });
                let equal_canon = a.canonicalize().unwrap() == b.canonicalize().unwrap();
                prop_assert_eq!(same_class, equal_canon);
            }
        }
    }
}
