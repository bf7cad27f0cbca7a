//! Find the instances of a pattern and prune overlapping ones.

use kgmotive::graph::load_ntriples_str;
use kgmotive::pattern::{parse_pattern, print_pattern};
use kgmotive::{find_instances, prune_overlap, MatchBudget};

const DATA: &str = "
<a> <knows> <b> .
<b> <knows> <a> .
<b> <knows> <c> .
<c> <knows> <b> .
<c> <likes> <a> .
";

pub fn main() -> kgmotive::Result<()> {
    let (graph, dict) = load_ntriples_str(DATA)?;
    let pattern = parse_pattern("?n1 <knows> ?n2 . ?n2 <knows> ?n1 .", &dict)?;
    println!("pattern: {}", print_pattern(&pattern, &dict));

    let found = find_instances(&graph, &pattern, &MatchBudget::unlimited())?;
    println!("{} instances, complete: {}", found.instances.len(), found.complete);
    for inst in &found.instances {
        let names: Vec<String> = inst.nodes.iter().map(|&n| dict.node(n).unwrap().to_string()).collect();
        println!("  ?n1={} ?n2={}", names[0], names[1]);
    }

    // Each 2-cycle matches twice, once per orientation; pruning keeps one.
    let pruned = prune_overlap(&found.instances, &pattern);
    println!("{} after pruning", pruned.len());

    // Budgets cap work on large graphs.
    let capped = find_instances(&graph, &pattern, &MatchBudget::counted(1, 1_000))?;
    println!("capped at 1: {} instance(s), complete: {}", capped.instances.len(), capped.complete);
    Ok(())
}
