//! Expected delivery delay of a carrier serving `n` customers whose
//! destinations are independent draws from the terminal probabilities.
//!
//! The delay of a given workload depends only on the *set* of terminals
//! that received at least one package, so the expectation reduces to a sum
//! over the `2^T - 1` nonempty terminal subsets weighted by the probability
//! that exactly that set is hit. [`expected_delay`] computes those weights
//! by inclusion-exclusion; [`expected_delay_naive`] enumerates all `T^n`
//! destination tuples instead and exists as an independent oracle.
//!
//! Terminal subsets are bitmasks: bit `j - 1` stands for terminal `j`.

use crate::error::{Error, Result};
use crate::scenario::Scenario;
use crate::vrp::{solve_vrp, DemandVector, RoutePlan};

/// Optimal traveling delay per terminal subset for one carrier.
///
/// `delay(0)` is 0 by convention (nothing to deliver).
#[derive(Debug, Clone, PartialEq)]
pub struct DelayTable {
    num_terminals: usize,
    delays: Vec<f64>,
}

impl DelayTable {
    /// Builds a table from per-mask delays; index 0 must hold 0.
    pub fn from_delays(num_terminals: usize, delays: Vec<f64>) -> Result<DelayTable> {
        if delays.len() != 1 << num_terminals {
            return Err(Error::Dimension(format!(
                "delay table needs {} entries, got {}",
                1usize << num_terminals,
                delays.len()
            )));
        }
        Ok(DelayTable {
            num_terminals,
            delays,
        })
    }

    pub fn num_terminals(&self) -> usize {
        self.num_terminals
    }

    /// Delay in minutes for the subset encoded by `mask`.
    pub fn delay(&self, mask: u32) -> f64 {
        self.delays[mask as usize]
    }
}

/// Human-readable subset label: sorted terminal ids joined by dashes.
pub fn subset_label(mask: u32) -> String {
    let ids: Vec<String> = (0..32)
        .filter(|b| mask & (1 << b) != 0)
        .map(|b| (b + 1).to_string())
        .collect();
    ids.join("-")
}

/// Masks of all nonempty subsets ordered by size, then by their id lists.
pub fn subset_masks_by_size(num_terminals: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (1..(1u32 << num_terminals)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
}

const MAX_TABLE_TERMINALS: usize = 12;

/// Optimal routing solution for every nonempty terminal subset (unit demand
/// per visited terminal), indexed by mask. Entry 0 is the empty plan.
pub fn solve_subset_plans(scenario: &Scenario, carrier_id: u32) -> Result<Vec<RoutePlan>> {
    let t = scenario.num_terminals();
    if t > MAX_TABLE_TERMINALS {
        return Err(Error::TooLarge(format!(
            "subset tables handle at most {MAX_TABLE_TERMINALS} terminals, got {t}"
        )));
    }
    let mut plans = Vec::with_capacity(1 << t);
    plans.push(RoutePlan::empty());
    for mask in 1..(1u32 << t) {
        let demand: DemandVector = (0..t as u32)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| (b + 1, 1))
            .collect();
        plans.push(solve_vrp(scenario, carrier_id, &demand)?);
    }
    Ok(plans)
}

/// Optimal traveling delay for every nonempty terminal subset of a carrier.
pub fn build_delay_table(scenario: &Scenario, carrier_id: u32) -> Result<DelayTable> {
    let plans = solve_subset_plans(scenario, carrier_id)?;
    DelayTable::from_delays(
        scenario.num_terminals(),
        plans.into_iter().map(|p| p.total_delay).collect(),
    )
}

fn validate_probs(probs: &[f64]) -> Result<()> {
    if probs.is_empty() {
        return Err(Error::Dimension("probability vector is empty".into()));
    }
    if probs.iter().any(|p| *p < 0.0 || !p.is_finite()) {
        return Err(Error::Validation(
            "probabilities must be nonnegative".into(),
        ));
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::Validation(format!(
            "probabilities must sum to 1 (got {sum})"
        )));
    }
    Ok(())
}

/// Exact distribution of the visited terminal set after `n` independent
/// draws, indexed by subset mask. The empty set has probability 1 iff
/// `n == 0`.
///
/// For a subset S, inclusion-exclusion over its subsets A gives
/// `P[visited = S] = sum_A (-1)^(|S|-|A|) (sum_{j in A} p_j)^n`.
pub fn visited_set_distribution(n: u32, probs: &[f64]) -> Result<Vec<f64>> {
    validate_probs(probs)?;
    let t = probs.len();
    let full = 1usize << t;
    let mut prob_sum = vec![0.0; full];
    for m in 1..full {
        let low = m.trailing_zeros() as usize;
        prob_sum[m] = prob_sum[m & (m - 1)] + probs[low];
    }
    let mut weights = Vec::with_capacity(full);
    for s in 0..full {
        let mut acc = 0.0;
        let mut a = s;
        loop {
            let removed = (s ^ a).count_ones();
            let term = prob_sum[a].powi(n as i32);
            acc += if removed % 2 == 0 { term } else { -term };
            if a == 0 {
                break;
            }
            a = (a - 1) & s;
        }
        // Exact zeros can come out as tiny negatives.
        weights.push(acc.max(0.0));
    }
    Ok(weights)
}

/// Expected delivery delay for `n` customers: total unloading time plus the
/// subset-weighted optimal traveling delays. Fast exact path.
pub fn expected_delay(
    n: u32,
    probs: &[f64],
    table: &DelayTable,
    unload_minutes: f64,
) -> Result<f64> {
    if probs.len() != table.num_terminals() {
        return Err(Error::Dimension(format!(
            "{} probabilities for a {}-terminal delay table",
            probs.len(),
            table.num_terminals()
        )));
    }
    let weights = visited_set_distribution(n, probs)?;
    let mut delay = n as f64 * unload_minutes;
    for (mask, w) in weights.iter().enumerate().skip(1) {
        delay += w * table.delay(mask as u32);
    }
    Ok(delay)
}

const MAX_NAIVE_TUPLES: f64 = 1e7;

/// Reference evaluation of [`expected_delay`] by direct enumeration of all
/// `T^n` destination tuples. Guarded, slow, and kept as the oracle.
pub fn expected_delay_naive(
    n: u32,
    probs: &[f64],
    table: &DelayTable,
    unload_minutes: f64,
) -> Result<f64> {
    validate_probs(probs)?;
    if probs.len() != table.num_terminals() {
        return Err(Error::Dimension(format!(
            "{} probabilities for a {}-terminal delay table",
            probs.len(),
            table.num_terminals()
        )));
    }
    let t = probs.len();
    if (t as f64).powi(n as i32) > MAX_NAIVE_TUPLES {
        return Err(Error::TooLarge(format!(
            "naive enumeration of {t}^{n} destination tuples exceeds the guard"
        )));
    }
    let n_usize = n as usize;
    let mut digits = vec![0usize; n_usize];
    let mut acc = 0.0;
    loop {
        let mut prob = 1.0;
        let mut mask = 0u32;
        for &d in &digits {
            prob *= probs[d];
            mask |= 1 << d;
        }
        acc += prob * table.delay(mask);
        // Odometer over base-T digits.
        let mut pos = 0;
        loop {
            if pos == n_usize {
                return Ok(n as f64 * unload_minutes + acc);
            }
            digits[pos] += 1;
            if digits[pos] < t {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::load_scenario;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn reference_table(carrier: u32) -> DelayTable {
        let s = load_scenario(crate::scenario::tests::reference_path()).unwrap();
        build_delay_table(&s, carrier).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn single_terminal_table_has_one_entry() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = crate::scenario::tests::random_euclidean(&mut rng, 1);
        let table = build_delay_table(&s, 1).unwrap();
        assert_eq!(table.num_terminals(), 1);
        let d = crate::scenario::distance_matrix(&s, 1).unwrap();
        close(table.delay(1), 2.0 * d.get(0, 1) * 60.0 / 40.0, 1e-12);
        assert_eq!(table.delay(0), 0.0);
    }

    #[test]
    fn reference_singletons_match_round_trips() {
        let table = reference_table(1);
        close(table.delay(0b001), 2.400, 1e-9);
        close(table.delay(0b010), 8.625, 1e-9);
        close(table.delay(0b100), 9.450, 1e-9);
    }

    #[test]
    fn reference_full_set_uses_the_optimal_order() {
        let table = reference_table(1);
        close(table.delay(0b111), 25.275, 1e-9);
    }

    #[test]
    fn no_customers_means_no_delay() {
        let table = reference_table(1);
        let probs = [1.0 / 3.0; 3];
        assert_eq!(expected_delay(0, &probs, &table, 5.0).unwrap(), 0.0);
        assert_eq!(expected_delay_naive(0, &probs, &table, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn one_uniform_customer_averages_the_singletons() {
        let table = reference_table(1);
        let probs = [1.0 / 3.0; 3];
        close(expected_delay_naive(1, &probs, &table, 5.0).unwrap(), 11.825, 1e-9);
        close(expected_delay(1, &probs, &table, 5.0).unwrap(), 11.825, 1e-9);
    }

    #[test]
    fn deterministic_destination_pins_the_subset() {
        let table = reference_table(1);
        let probs = [1.0, 0.0, 0.0];
        let expected = 2.0 * 5.0 + table.delay(0b001);
        close(expected_delay_naive(2, &probs, &table, 5.0).unwrap(), expected, 1e-12);
        close(expected_delay(2, &probs, &table, 5.0).unwrap(), expected, 1e-12);
    }

    #[test]
    fn naive_guard_rejects_huge_enumerations() {
        let table = reference_table(1);
        let probs = [1.0 / 3.0; 3];
        assert!(matches!(
            expected_delay_naive(20, &probs, &table, 5.0),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn fast_path_matches_naive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let t: usize = rng.random_range(1..=4);
            let s = crate::scenario::tests::random_euclidean(&mut rng, t);
            let table = build_delay_table(&s, 1).unwrap();
            let mut probs: Vec<f64> = (0..t).map(|_| rng.random_range(0.01..1.0)).collect();
            let sum: f64 = probs.iter().sum();
            probs.iter_mut().for_each(|p| *p /= sum);
            for n in 0..=6 {
                let fast = expected_delay(n, &probs, &table, 5.0).unwrap();
                let naive = expected_delay_naive(n, &probs, &table, 5.0).unwrap();
                close(fast, naive, 1e-9);
            }
        }
    }

    #[test]
    fn visited_distribution_small_cases() {
        let empty_only = visited_set_distribution(0, &[0.5, 0.5]).unwrap();
        assert_eq!(empty_only[0], 1.0);
        assert_eq!(empty_only[1..].iter().sum::<f64>(), 0.0);

        let one_uniform = visited_set_distribution(1, &[1.0 / 3.0; 3]).unwrap();
        for singleton in [0b001, 0b010, 0b100] {
            close(one_uniform[singleton], 1.0 / 3.0, 1e-12);
        }

        let two_uniform = visited_set_distribution(2, &[0.5, 0.5]).unwrap();
        close(two_uniform[0b01], 0.25, 1e-12);
        close(two_uniform[0b10], 0.25, 1e-12);
        close(two_uniform[0b11], 0.5, 1e-12);
    }

    #[test]
    fn visited_distribution_sums_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let t: usize = rng.random_range(1..=8);
            let mut probs: Vec<f64> = (0..t).map(|_| rng.random_range(0.0..1.0)).collect();
            let sum: f64 = probs.iter().sum();
            probs.iter_mut().for_each(|p| *p /= sum);
            let n: u32 = rng.random_range(0..12);
            let dist = visited_set_distribution(n, &probs).unwrap();
            close(dist.iter().sum::<f64>(), 1.0, 1e-12);
        }
    }

    #[test]
    fn zero_probability_terminal_carries_no_weight() {
        let dist = visited_set_distribution(5, &[0.6, 0.4, 0.0]).unwrap();
        for (mask, w) in dist.iter().enumerate() {
            if mask & 0b100 != 0 {
                assert_eq!(*w, 0.0, "mask {mask}");
            }
        }
    }

    #[test]
    fn delay_grows_by_at_least_the_unload_time_in_the_euclidean_case() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let t: usize = rng.random_range(1..=4);
            let s = crate::scenario::tests::random_euclidean(&mut rng, t);
            let table = build_delay_table(&s, 1).unwrap();
            let probs = vec![1.0 / t as f64; t];
            let unload = 5.0;
            let mut prev = expected_delay(0, &probs, &table, unload).unwrap();
            for n in 1..=8 {
                let cur = expected_delay(n, &probs, &table, unload).unwrap();
                assert!(cur + 1e-9 >= prev + unload, "n={n}: {cur} vs {prev}");
                prev = cur;
            }
        }
    }

    #[test]
    fn relabeling_terminals_leaves_the_expectation_unchanged() {
        let table = reference_table(1);
        let t = table.num_terminals();
        // Cyclic relabeling: new label j came from old label perm[j].
        let perm = [2usize, 0, 1];
        let probs = [0.5, 0.3, 0.2];
        let permuted_probs: Vec<f64> = (0..t).map(|j| probs[perm[j]]).collect();
        let mut permuted_delays = vec![0.0; 1 << t];
        for (mask, delays) in permuted_delays.iter_mut().enumerate() {
            let mut old_mask = 0u32;
            for (j, &p) in perm.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    old_mask |= 1 << p;
                }
            }
            *delays = table.delay(old_mask);
        }
        let permuted = DelayTable::from_delays(t, permuted_delays).unwrap();
        for n in 0..=8 {
            let before = expected_delay(n, &probs, &table, 5.0).unwrap();
            let after = expected_delay(n, &permuted_probs, &permuted, 5.0).unwrap();
            close(before, after, 1e-12);
        }
    }

    #[test]
    fn subset_labels_are_sorted_dash_joined() {
        assert_eq!(subset_label(0b101), "1-3");
        assert_eq!(subset_label(0b1), "1");
        let masks = subset_masks_by_size(3);
        assert_eq!(masks, vec![0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]);
    }
}
