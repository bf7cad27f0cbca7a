//! The repeated injection experiment: random patterns over a range of k.

use kgmotive::synth::{mean_log_factor_by_k, rows_to_csv, run_injection_experiment, Dims, ExperimentConfig};
use kgmotive::{MatchBudget, PitmanYorConfig};

pub fn main() -> kgmotive::Result<()> {
    let cfg = ExperimentConfig {
        dims: Dims::new(500, 2000, 6),
        k_values: vec![0, 20, 40],
        repeats: 4,
        seed: 3,
        budget: MatchBudget::counted(20_000, 2_000_000),
        py: PitmanYorConfig::default(),
    };
    let rows = run_injection_experiment(&cfg)?;
    print!("{}", rows_to_csv(&rows));
    for (k, mean) in mean_log_factor_by_k(&rows, 5) {
        match mean {
            Some(m) => println!("k={k}: mean log-factor {m:.1}"),
            None => println!("k={k}: no repeat reached 5 instances"),
        }
    }
    Ok(())
}
