//! Prefix-free codelength primitives.
//!
//! Nothing here produces bitstrings. Every function returns the ideal
//! codelength in bits (`-log2 p`) of a code that could be realised, so the
//! lengths can be added up across the parts of a composite description.

use std::collections::HashMap;
use std::sync::OnceLock;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// A codelength in bits.
pub type Bits = f64;

const LN_2: f64 = std::f64::consts::LN_2;

/// Code for positive integers from `p(n) = 1 / (n (n + 1))`.
pub fn length_pos_int(n: u64) -> Result<Bits> {
    if n == 0 {
        return Err(Error::Domain("length_pos_int needs n >= 1".into()));
    }
    let n = n as f64;
    Ok(n.log2() + (n + 1.0).log2())
}

/// Code for nonnegative integers: the positive code on `n + 1`.
pub fn length_nonneg_int(n: u64) -> Bits {
    let n = n as f64 + 1.0;
    n.log2() + (n + 1.0).log2()
}

/// Code for all integers: one sign bit, then the positive code for negative
/// values and the nonnegative code otherwise.
pub fn length_int(z: i64) -> Bits {
    if z < 0 {
        1.0 + length_pos_int(z.unsigned_abs()).expect("|z| >= 1")
    } else {
        1.0 + length_nonneg_int(z as u64)
    }
}

const EXACT_FACTORIALS: usize = 4096;

fn factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(EXACT_FACTORIALS);
        let mut acc = 0.0f64;
        let mut comp = 0.0f64;
        table.push(0.0);
        for i in 1..EXACT_FACTORIALS {
            // Kahan summation keeps the table accurate to a few ulps
            let y = (i as f64).log2() - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
            table.push(acc);
        }
        table
    })
}

/// `log2(n!)`.
///
/// Small arguments come from a table of compensated sums; larger ones use
/// Stirling's series, which is accurate to f64 precision in that range.
pub fn log2_factorial(n: u64) -> Bits {
    if (n as usize) < EXACT_FACTORIALS {
        return factorial_table()[n as usize];
    }
    let x = n as f64;
    let x2 = x * x;
    let ln = x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x * x2)
        + 1.0 / (1260.0 * x2 * x2 * x);
    ln / LN_2
}

/// `sum_i log2(values_i!)`, independent of the order of `values`.
///
/// Values are grouped by multiplicity before summing, so two collections
/// holding the same multiset give bit-identical results.
pub fn sum_log2_factorials(values: impl IntoIterator<Item = u64>) -> Bits {
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for v in values {
        if v > 1 {
            *counts.entry(v).or_default() += 1;
        }
    }
    let mut counts: Vec<(u64, u64)> = counts.into_iter().collect();
    counts.sort_unstable();
    counts
        .into_iter()
        .map(|(v, c)| c as f64 * log2_factorial(v))
        .sum()
}

/// Concentration `alpha` and discount `d` of the Pitman-Yor sequence code.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PitmanYorConfig {
    pub alpha: f64,
    pub d: f64,
}

impl Default for PitmanYorConfig {
    fn default() -> Self {
        PitmanYorConfig { alpha: 0.5, d: 0.1 }
    }
}

impl PitmanYorConfig {
    pub fn new(alpha: f64, d: f64) -> Result<Self> {
        let cfg = PitmanYorConfig { alpha, d };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.d.is_finite()) {
            return Err(Error::Domain("Pitman-Yor parameters must be finite".into()));
        }
        if !(0.0..1.0).contains(&self.d) {
            return Err(Error::Domain(format!(
                "Pitman-Yor discount must be in [0, 1), got {}",
                self.d
            )));
        }
        if self.alpha <= -self.d || (self.d == 0.0 && self.alpha <= 0.0) {
            return Err(Error::Domain(format!(
                "Pitman-Yor concentration must exceed -d, got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// Cost of the vocabulary header: sequence length, vocabulary size, the
/// first member, then signed gaps between consecutive members in order of
/// first occurrence.
pub fn vocabulary_bits(len: usize, members_in_order: &[u64]) -> Bits {
    let mut bits = length_nonneg_int(len as u64) + length_nonneg_int(members_in_order.len() as u64);
    if let Some(&first) = members_in_order.first() {
        bits += length_nonneg_int(first);
        bits += members_in_order
            .windows(2)
            .map(|w| length_int(w[1] as i64 - w[0] as i64))
            .sum::<f64>();
    }
    bits
}

/// `-log2` of the Pitman-Yor probability of a sequence with the given
/// symbol counts, given its vocabulary.
///
/// With `n` symbols seen so far and `K` of them distinct, a new symbol has
/// probability `(alpha + d K) / (n + alpha)` and a seen symbol with count
/// `f` has `(f - d) / (n + alpha)`. The product only depends on the counts.
pub fn pitman_yor_sequence_bits(counts: &[u64], cfg: &PitmanYorConfig) -> Bits {
    let n: u64 = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let (alpha, d) = (cfg.alpha, cfg.d);
    let k = counts.iter().filter(|&&c| c > 0).count();
    // The first symbol has probability alpha / alpha = 1 and is skipped, which
    // keeps every gamma argument positive for alpha in (-d, 0].
    // denominator: prod_{i=1}^{n-1} (i + alpha)
    let mut ln_p = -(ln_gamma(n as f64 + alpha) - ln_gamma(1.0 + alpha));
    // new-symbol numerators: prod_{j=1}^{K-1} (alpha + d j)
    let fresh = (k - 1) as f64;
    ln_p += if d > 0.0 {
        fresh * d.ln() + ln_gamma(alpha / d + k as f64) - ln_gamma(alpha / d + 1.0)
    } else {
        fresh * alpha.ln()
    };
    // repeat numerators: prod_{t=1}^{f-1} (t - d)
    for &f in counts {
        if f > 1 {
            ln_p += ln_gamma(f as f64 - d) - ln_gamma(1.0 - d);
        }
    }
    (-ln_p / LN_2).max(0.0)
}

/// Full Pitman-Yor codelength of `seq`: vocabulary header plus sequence.
pub fn pitman_yor_length(seq: &[u64], cfg: &PitmanYorConfig) -> Result<Bits> {
    cfg.validate()?;
    let mut order: Vec<u64> = Vec::new();
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut counts: Vec<u64> = Vec::new();
    for &x in seq {
        let slot = *index.entry(x).or_insert_with(|| {
            order.push(x);
            counts.push(0);
            counts.len() - 1
        });
        counts[slot] += 1;
    }
    Ok(vocabulary_bits(seq.len(), &order) + pitman_yor_sequence_bits(&counts, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-9;

    /// Position-by-position product, kept separate from the closed form.
    fn py_sequence_oracle(seq: &[u64], cfg: &PitmanYorConfig) -> f64 {
        let mut counts: HashMap<u64, u64> = HashMap::new();
        let mut bits = 0.0;
        for (n, &x) in seq.iter().enumerate() {
            let k = counts.len() as f64;
            let p = match counts.get(&x) {
                None if n == 0 => 1.0,
                None => (cfg.alpha + cfg.d * k) / (n as f64 + cfg.alpha),
                Some(&f) => (f as f64 - cfg.d) / (n as f64 + cfg.alpha),
            };
            bits -= p.log2();
            *counts.entry(x).or_default() += 1;
        }
        bits
    }

    #[test]
    fn positive_integers() {
        assert!((length_pos_int(1).unwrap() - 1.0).abs() < EPS);
        assert!((length_pos_int(3).unwrap() - 12f64.log2()).abs() < EPS);
        assert!((length_pos_int(100).unwrap() - 10100f64.log2()).abs() < EPS);
        assert!((length_pos_int(100).unwrap() - 13.302).abs() < 1e-3);
        assert!(length_pos_int(0).is_err());
    }

    #[test]
    fn nonnegative_integers() {
        assert!((length_nonneg_int(0) - 1.0).abs() < EPS);
        assert!((length_nonneg_int(2) - 12f64.log2()).abs() < EPS);
        assert!((length_nonneg_int(9) - 110f64.log2()).abs() < EPS);
    }

    #[test]
    fn signed_integers() {
        assert!((length_int(0) - 2.0).abs() < EPS);
        assert!((length_int(-1) - 2.0).abs() < EPS);
        assert!((length_int(5) - (1.0 + 42f64.log2())).abs() < EPS);
        assert!((length_int(5) - 6.392).abs() < 1e-3);
    }

    #[test]
    fn factorials_against_exact_products() {
        assert_eq!(log2_factorial(0), 0.0);
        assert_eq!(log2_factorial(1), 0.0);
        assert!((log2_factorial(5) - 120f64.log2()).abs() < EPS);
        let twenty: u64 = (1..=20).product();
        assert!((log2_factorial(20) - (twenty as f64).log2()).abs() < EPS);
        assert!((log2_factorial(20) - 61.0774).abs() < 1e-4);
    }

    #[test]
    fn stirling_branch_agrees_with_summation() {
        let mut acc = factorial_table()[EXACT_FACTORIALS - 1];
        for n in EXACT_FACTORIALS as u64..EXACT_FACTORIALS as u64 + 2000 {
            acc += (n as f64).log2();
            let rel = (log2_factorial(n) - acc).abs() / acc;
            assert!(rel < 1e-13, "n={n}: rel error {rel}");
        }
        // log-gamma as an independent route
        for n in [10_000u64, 123_456, 1_000_000_000] {
            let lg = ln_gamma(n as f64 + 1.0) / LN_2;
            assert!((log2_factorial(n) - lg).abs() / lg < 1e-13);
        }
    }

    #[test]
    fn factorial_sums_are_order_independent() {
        let a = sum_log2_factorials([5, 3, 0, 9, 3, 1]);
        let b = sum_log2_factorials([3, 1, 9, 3, 0, 5]);
        assert_eq!(a.to_bits(), b.to_bits());
        let direct: f64 = [5u64, 3, 9, 3].iter().map(|&v| log2_factorial(v)).sum();
        assert!((a - direct).abs() < EPS);
    }

    #[test]
    fn pitman_yor_examples() {
        let cfg = PitmanYorConfig::default();
        let single = pitman_yor_length(&[7], &cfg).unwrap();
        let expect = 2.0 * length_nonneg_int(1) + length_nonneg_int(7);
        assert!((single - expect).abs() < EPS);
        // log2(6) + log2(6) + log2(72)
        assert!((single - 11.34).abs() < 1e-2);

        let seq_bits = pitman_yor_sequence_bits(&[2], &cfg);
        assert!((seq_bits + 0.6f64.log2()).abs() < EPS);
        assert!((seq_bits - 0.737).abs() < 1e-3);
        let pair = pitman_yor_length(&[4, 4], &cfg).unwrap();
        let header = length_nonneg_int(2) + length_nonneg_int(1) + length_nonneg_int(4);
        assert!((pair - header - seq_bits).abs() < EPS);

        assert!((pitman_yor_length(&[], &cfg).unwrap() - 2.0).abs() < EPS);
    }

    #[test]
    fn pitman_yor_closed_form_matches_product() {
        for cfg in [
            PitmanYorConfig::default(),
            PitmanYorConfig::new(-0.05, 0.1).unwrap(),
            PitmanYorConfig::new(2.0, 0.0).unwrap(),
        ] {
            closed_form_matches_product(&cfg);
        }
    }

    fn closed_form_matches_product(cfg: &PitmanYorConfig) {
        let seqs: [&[u64]; 5] = [
            &[0, 0, 0, 1, 0, 2, 2, 0],
            &[5, 4, 3, 2, 1],
            &[1; 40],
            &[3, 1, 3, 1, 3, 1, 0, 9, 9, 9, 9],
            &[],
        ];
        for seq in seqs {
            let mut order = Vec::new();
            let mut counts: HashMap<u64, u64> = HashMap::new();
            for &x in seq {
                if !counts.contains_key(&x) {
                    order.push(x);
                }
                *counts.entry(x).or_default() += 1;
            }
            let counts: Vec<u64> = order.iter().map(|x| counts[x]).collect();
            let closed = pitman_yor_sequence_bits(&counts, cfg);
            let oracle = py_sequence_oracle(seq, cfg);
            assert!((closed - oracle).abs() < 1e-9, "{seq:?}: {closed} vs {oracle}");
        }
    }

    #[test]
    fn pitman_yor_vocabulary_gaps_can_be_negative() {
        let cfg = PitmanYorConfig::default();
        let bits = pitman_yor_length(&[9, 2, 9], &cfg).unwrap();
        let header = length_nonneg_int(3) + length_nonneg_int(2) + length_nonneg_int(9) + length_int(-7);
        let seq = py_sequence_oracle(&[9, 2, 9], &cfg);
        assert!((bits - header - seq).abs() < EPS);
    }

    #[test]
    fn invalid_config_rejected() {
        assert!(PitmanYorConfig::new(0.5, 1.0).is_err());
        assert!(PitmanYorConfig::new(0.5, -0.1).is_err());
        assert!(PitmanYorConfig::new(-0.2, 0.1).is_err());
        assert!(PitmanYorConfig::new(f64::NAN, 0.1).is_err());
        let bad = PitmanYorConfig { alpha: 0.5, d: 2.0 };
        assert!(pitman_yor_length(&[1], &bad).is_err());
    }

    #[test]
    fn repetition_compresses() {
        let cfg = PitmanYorConfig::default();
        for n in 3..30u64 {
            let constant = vec![4u64; n as usize];
            let fresh: Vec<u64> = (0..n).collect();
            assert!(
                pitman_yor_length(&constant, &cfg).unwrap()
                    < pitman_yor_length(&fresh, &cfg).unwrap()
            );
        }
    }

    #[test]
    fn positive_code_is_monotone() {
        let mut prev = 0.0;
        for n in 1..10_000 {
            let l = length_pos_int(n).unwrap();
            assert!(l > prev);
            prev = l;
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn pitman_yor_is_finite_and_nonnegative(
                seq in prop::collection::vec(0u64..50, 0..200),
                alpha in 0.01f64..5.0,
                d in 0.0f64..0.95,
            ) {
                let cfg = PitmanYorConfig::new(alpha, d).unwrap();
                let bits = pitman_yor_length(&seq, &cfg).unwrap();
                prop_assert!(bits.is_finite() && bits >= 0.0);
            }

            #[test]
            fn integer_codes_are_finite_and_positive(z in any::<i32>()) {
                let l = length_int(z as i64);
                prop_assert!(l.is_finite() && l >= 2.0);
            }
        }
    }
}
