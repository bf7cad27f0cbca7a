//! Score patterns by log-factor on a small bibliographic graph.

use kgmotive::graph::load_ntriples_str;
use kgmotive::pattern::{parse_pattern, print_pattern};
use kgmotive::{log_factor, MatchBudget, PitmanYorConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Papers with an author, the reverse link back, a year and a few random
/// citations.
fn bibliography(papers: usize, authors: usize, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::new();
    for i in 0..papers {
        let a = rng.gen_range(0..authors);
        let y = rng.gen_range(1995..2010);
        text += &format!("<paper{i}> <author> <person{a}> .\n");
        text += &format!("<person{a}> <publication> <paper{i}> .\n");
        text += &format!("<paper{i}> <year> \"{y}\" .\n");
        let c = rng.gen_range(0..papers);
        if c != i {
            text += &format!("<paper{i}> <cites> <paper{c}> .\n");
        }
    }
    text
}

pub fn main() -> kgmotive::Result<()> {
    let (graph, dict) = load_ntriples_str(&bibliography(300, 80, 1))?;
    println!("{} nodes, {} triples", graph.v(), graph.m());
    let py = PitmanYorConfig::default();
    let budget = MatchBudget::counted(100_000, 10_000_000);

    for text in [
        "?n1 <author> ?n2 . ?n2 <publication> ?n1 .",
        "?n1 <year> ?n3 . ?n2 <year> ?n3 .",
        "?n1 <cites> ?n2 .",
    ] {
        let pattern = parse_pattern(text, &dict)?;
        let m = log_factor(&graph, &pattern, &budget, &py)?;
        let b = &m.breakdown;
        println!("{}", print_pattern(&pattern, &dict));
        println!(
            "  log-factor {:.1} bits, frequency {}, significant {}",
            m.log_factor,
            m.frequency,
            m.is_significant()
        );
        println!(
            "  dims {:.1} + pattern {:.1} + template {:.1} + instances {:.1} = {:.1}",
            b.b_dim, b.b_pattern, b.b_template, b.b_instances, b.total
        );
    }
    Ok(())
}
