//! Simulated-annealing search on a random graph with a planted motif.

use kgmotive::synth::{inject, sample_er_kg, Dims};
use kgmotive::{log_factor, run_search, MatchBudget, Pattern, PitmanYorConfig, SearchConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 1;

pub fn main() -> kgmotive::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let base = sample_er_kg(Dims::new(300, 1200, 6), &mut rng)?;
    // A 2-cycle over relations 0 and 1, with a third edge back along 2.
    let planted = Pattern::from_labels(&[(-1, 0, -2), (-2, 1, -1), (-1, 2, -2)])?.canonicalize()?;
    let (graph, _) = inject(&base, &planted, 100, &mut rng)?;

    let cfg = SearchConfig {
        iterations: 5000,
        workers: 2,
        budget: MatchBudget::counted(20_000, 2_000_000),
        seed: SEED,
        ..SearchConfig::default()
    };
    let direct = log_factor(&graph, &planted, &cfg.budget, &PitmanYorConfig::default())?;
    println!("planted pattern scores {:.1} bits directly", direct.log_factor);

    let ranked = run_search(&graph, &cfg)?;
    let positives = ranked.iter().filter(|m| m.log_factor > 0.0).count();
    println!("{} patterns visited, {} with positive log-factor", ranked.len(), positives);
    for m in ranked.iter().take(5) {
        println!("{:>8.1} {:>4} {:?}", m.log_factor, m.frequency, m.pattern.to_labels());
    }
    match ranked.iter().position(|m| m.pattern == planted) {
        Some(i) => println!("planted pattern at rank {}", i + 1),
        None => println!("planted pattern not visited"),
    }
    Ok(())
}
