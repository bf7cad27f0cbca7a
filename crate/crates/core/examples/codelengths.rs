//! Codelengths of the basic integer and sequence codes, and of a graph
//! under the null model.

use kgmotive::codes::{length_int, length_nonneg_int, length_pos_int, log2_factorial, pitman_yor_length};
use kgmotive::graph::load_ntriples_str;
use kgmotive::nullmodel::{degree_bits_fair, degree_bits_lowerbound, el_structure_bits, null_bits};
use kgmotive::PitmanYorConfig;

pub fn main() -> kgmotive::Result<()> {
    for n in [1u64, 2, 10, 1000] {
        println!(
            "n={n:<5} L_pos={:.3} L_nonneg={:.3} L_int(-n)={:.3}",
            length_pos_int(n)?,
            length_nonneg_int(n),
            length_int(-(n as i64))
        );
    }
    println!("log2 100! = {:.3}", log2_factorial(100));

    // Repeated symbols get cheaper under the Pitman-Yor code.
    let py = PitmanYorConfig::default();
    for seq in [vec![0u64, 1, 2, 3, 4, 5], vec![0, 0, 0, 0, 0, 0], vec![7, 7, 3, 7, 3, 7]] {
        println!("{seq:?}: {:.2} bits", pitman_yor_length(&seq, &py)?);
    }

    let (graph, _) = load_ntriples_str(
        "<a> <knows> <b> .\n<b> <knows> <a> .\n<b> <knows> <c> .\n<c> <likes> <a> .\n",
    )?;
    let d = graph.degree_sequence();
    println!("EL structure: {:.3} bits", el_structure_bits(&d)?);
    println!("degrees, empirical bound: {:.3} bits", degree_bits_lowerbound(&d));
    println!("degrees, Pitman-Yor: {:.3} bits", degree_bits_fair(&d, &py)?);
    println!("null model total: {:.3} bits", null_bits(&graph));
    Ok(())
}
