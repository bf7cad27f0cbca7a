//! Plant a random pattern into a random graph and watch its log-factor grow
//! with the number of instances.

use kgmotive::synth::{inject, sample_er_kg, sample_pattern, Dims};
use kgmotive::{log_factor, MatchBudget, PitmanYorConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// Many random patterns are mostly constants and admit only a handful of
// non-overlapping instances. This seed draws one with enough variables.
const SEED: u64 = 5;

pub fn main() -> kgmotive::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let base = sample_er_kg(Dims::new(1000, 4000, 8), &mut rng)?;
    let pattern = sample_pattern(&base, &mut rng)?;
    println!("pattern {:?}", pattern.to_labels());

    let py = PitmanYorConfig::default();
    let budget = MatchBudget::counted(50_000, 5_000_000);
    for k in [0, 10, 40, 80] {
        let (graph, planted) = inject(&base, &pattern, k, &mut rng)?;
        let m = log_factor(&graph, &pattern, &budget, &py)?;
        println!(
            "k={k:<3} planted {:<3} pruned frequency {:<3} log-factor {:.1}",
            planted.len(),
            m.frequency,
            m.log_factor
        );
    }
    Ok(())
}
