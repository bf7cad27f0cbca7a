//! Load N-Triples, inspect the integer graph and round-trip it through the
//! edge-list format.

use kgmotive::graph::{load_ntriples_str, KnowledgeGraph};

const DATA: &str = r#"
<http://ex.org/paper1> <http://ex.org/author> <http://ex.org/alice> .
<http://ex.org/alice> <http://ex.org/publication> <http://ex.org/paper1> .
<http://ex.org/paper1> <http://ex.org/year> "2004" .
<http://ex.org/paper2> <http://ex.org/author> <http://ex.org/bob> .
<http://ex.org/bob> <http://ex.org/publication> <http://ex.org/paper2> .
<http://ex.org/paper2> <http://ex.org/year> "2004" .
<http://ex.org/paper2> <http://ex.org/cites> <http://ex.org/paper1> .
_:b0 <http://ex.org/label> "anonymous"@en .
"#;

pub fn main() -> kgmotive::Result<()> {
    let (graph, dict) = load_ntriples_str(DATA)?;
    println!("{} nodes, {} relations, {} triples", graph.v(), graph.r(), graph.m());

    for t in graph.triples().iter().take(3) {
        let s = dict.node(t.s).unwrap();
        let p = dict.relation(t.p).unwrap();
        let o = dict.node(t.o).unwrap();
        println!("{t} = {s} {p} {o}");
    }

    let d = graph.degree_sequence();
    println!("out-degrees {:?}", d.d_out);
    println!("in-degrees  {:?}", d.d_in);
    println!("relation degrees {:?}", d.d_rel);

    let mut buf = Vec::new();
    graph.write_edge_list(&mut buf)?;
    let back = KnowledgeGraph::read_edge_list(buf.as_slice())?;
    assert_eq!(back, graph);
    println!("edge list round trip ok ({} bytes)", buf.len());
    Ok(())
}
