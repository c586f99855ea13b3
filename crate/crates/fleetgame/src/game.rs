//! Carrier selection as a stochastic evolutionary game.
//!
//! The population of S customers splits across N carriers; a state of the
//! game is the occupancy vector `(n_1, ..., n_N)`. Customers switch
//! carriers one at a time: a switch that strictly lowers the mover's
//! disutility runs at a rate proportional to the disutility gap and the
//! number of customers who could make it, every other switch runs at the
//! small perturbation rate epsilon (irrational decisions). The resulting
//! continuous-time Markov chain is irreducible for epsilon > 0, and its
//! stationary distribution identifies the stochastically stable states:
//! those whose probability does not vanish as epsilon shrinks.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expectation::{build_delay_table, expected_delay};
use crate::scenario::Scenario;

/// Customer counts per carrier; entries sum to the population size.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PopulationState {
    pub occupancy: Vec<u32>,
}

impl PopulationState {
    pub fn new(occupancy: Vec<u32>) -> Self {
        PopulationState { occupancy }
    }

    pub fn population(&self) -> u32 {
        self.occupancy.iter().sum()
    }
}

impl std::fmt::Display for PopulationState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.occupancy.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Disutility `U_c(n) = fee_c + expected_delay_c(n)` for every carrier `c`
/// and occupancy `n` from 0 to the population size.
#[derive(Debug, Clone, PartialEq)]
pub struct DisutilityProfile {
    u: Vec<Vec<f64>>,
}

impl DisutilityProfile {
    pub fn new(u: Vec<Vec<f64>>) -> Result<DisutilityProfile> {
        if u.is_empty() || u[0].is_empty() {
            return Err(Error::Dimension("disutility profile is empty".into()));
        }
        let len = u[0].len();
        if u.iter().any(|row| row.len() != len) {
            return Err(Error::Dimension(
                "disutility rows must cover the same occupancy range".into(),
            ));
        }
        if u.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Validation("disutilities must be finite".into()));
        }
        Ok(DisutilityProfile { u })
    }

    pub fn num_carriers(&self) -> usize {
        self.u.len()
    }

    /// Largest occupancy the profile covers.
    pub fn max_occupancy(&self) -> u32 {
        (self.u[0].len() - 1) as u32
    }

    /// Disutility of carrier `c` (zero-based) at occupancy `n`.
    pub fn value(&self, carrier: usize, n: u32) -> f64 {
        self.u[carrier][n as usize]
    }

    /// Copy with the same constant added to every carrier's fee.
    pub fn with_uniform_fee_shift(&self, delta: f64) -> DisutilityProfile {
        DisutilityProfile {
            u: self
                .u
                .iter()
                .map(|row| row.iter().map(|v| v + delta).collect())
                .collect(),
        }
    }
}

/// Disutility profile of a scenario: per-customer fee plus the expected
/// delivery delay at every occupancy 0..=S.
pub fn build_disutility_profile(scenario: &Scenario) -> Result<DisutilityProfile> {
    let s = scenario.game.num_customers;
    let probs = &scenario.game.terminal_probs;
    let unload = scenario.cost.unload_minutes_per_customer;
    let mut u = Vec::with_capacity(scenario.num_carriers());
    for carrier in &scenario.carriers {
        let table = build_delay_table(scenario, carrier.id)?;
        let mut row = Vec::with_capacity(s as usize + 1);
        for n in 0..=s {
            row.push(carrier.fee + expected_delay(n, probs, &table, unload)?);
        }
        u.push(row);
    }
    DisutilityProfile::new(u)
}

/// How the two disutilities entering a switch rate are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RateConvention {
    /// Both carriers evaluated at the source state's occupancies.
    SourceState,
    /// The mover compares its current disutility with the disutility it
    /// would experience after joining the target carrier (occupancy
    /// `n_c' + 1`). This is the default: it makes the switch condition
    /// consistent with the state the mover actually ends up in.
    #[default]
    MoverPerspective,
}

const MAX_STATES: usize = 100_000;

/// Number of occupancy vectors: `C(S + N - 1, N - 1)`.
pub fn state_space_size(num_carriers: usize, num_customers: u32) -> u128 {
    let n = num_customers as u128 + num_carriers as u128 - 1;
    let k = num_carriers as u128 - 1;
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul(n - i) / (i + 1);
    }
    result
}

/// All occupancy vectors of `num_customers` customers over `num_carriers`
/// carriers, in ascending lexicographic order.
pub fn build_state_space(num_carriers: usize, num_customers: u32) -> Result<Vec<PopulationState>> {
    if num_carriers == 0 {
        return Err(Error::Dimension("at least one carrier is required".into()));
    }
    let count = state_space_size(num_carriers, num_customers);
    if count > MAX_STATES as u128 {
        return Err(Error::TooLarge(format!(
            "state space has {count} states (cap {MAX_STATES})"
        )));
    }
    let mut states = Vec::with_capacity(count as usize);
    let mut current = vec![0u32; num_carriers];
    fill_states(&mut states, &mut current, 0, num_customers);
    Ok(states)
}

fn fill_states(
    states: &mut Vec<PopulationState>,
    current: &mut Vec<u32>,
    position: usize,
    remaining: u32,
) {
    if position == current.len() - 1 {
        current[position] = remaining;
        states.push(PopulationState::new(current.clone()));
        return;
    }
    for n in 0..=remaining {
        current[position] = n;
        fill_states(states, current, position + 1, remaining - n);
    }
}

/// The single-customer move turning `state` into `target`, if any.
fn single_move(state: &PopulationState, target: &PopulationState) -> Option<(usize, usize)> {
    let mut from = None;
    let mut to = None;
    for (c, (&a, &b)) in state.occupancy.iter().zip(&target.occupancy).enumerate() {
        match b as i64 - a as i64 {
            0 => {}
            -1 if from.is_none() => from = Some(c),
            1 if to.is_none() => to = Some(c),
            _ => return None,
        }
    }
    from.zip(to)
}

/// Transition rate between two distinct states under the default
/// convention. Zero unless the states differ by a single customer's
/// switch; epsilon when the switch does not strictly improve the mover.
pub fn transition_rate(
    state: &PopulationState,
    target: &PopulationState,
    profile: &DisutilityProfile,
    decision_rate: f64,
    epsilon: f64,
) -> Result<f64> {
    transition_rate_with(
        RateConvention::default(),
        state,
        target,
        profile,
        decision_rate,
        epsilon,
    )
}

pub fn transition_rate_with(
    convention: RateConvention,
    state: &PopulationState,
    target: &PopulationState,
    profile: &DisutilityProfile,
    decision_rate: f64,
    epsilon: f64,
) -> Result<f64> {
    if state.occupancy.len() != target.occupancy.len()
        || state.population() != target.population()
    {
        return Err(Error::Dimension(
            "states do not belong to the same population".into(),
        ));
    }
    if state.occupancy.len() != profile.num_carriers() {
        return Err(Error::Dimension(
            "profile does not cover all carriers".into(),
        ));
    }
    if state == target {
        return Err(Error::Validation(
            "transition_rate is defined for distinct states".into(),
        ));
    }
    let Some((from, to)) = single_move(state, target) else {
        return Ok(0.0);
    };
    let movers = state.occupancy[from];
    let u_from = profile.value(from, state.occupancy[from]);
    let u_to = match convention {
        RateConvention::SourceState => profile.value(to, state.occupancy[to]),
        RateConvention::MoverPerspective => profile.value(to, state.occupancy[to] + 1),
    };
    if u_from > u_to {
        Ok(decision_rate * movers as f64 * (u_from - u_to))
    } else {
        Ok(epsilon)
    }
}

/// Transition-rate matrix of the game chain for one epsilon.
#[derive(Debug, Clone)]
pub struct RateMatrix {
    pub epsilon: f64,
    states: Vec<PopulationState>,
    q: Vec<f64>,
}

impl RateMatrix {
    pub fn order(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[PopulationState] {
        &self.states
    }

    pub fn rate(&self, i: usize, j: usize) -> f64 {
        self.q[i * self.states.len() + j]
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        let n = self.states.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.rate(i, j).abs()).sum())
            .fold(0.0, f64::max)
    }

    pub fn index_of(&self, state: &PopulationState) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }
}

const MAX_DENSE_STATES: usize = 2048;

/// Builds the dense rate matrix over `states` under the default convention:
/// off-diagonals from [`transition_rate`], diagonal set so rows sum to zero.
pub fn build_rate_matrix(
    states: &[PopulationState],
    profile: &DisutilityProfile,
    decision_rate: f64,
    epsilon: f64,
) -> Result<RateMatrix> {
    build_rate_matrix_with(
        RateConvention::default(),
        states,
        profile,
        decision_rate,
        epsilon,
    )
}

pub fn build_rate_matrix_with(
    convention: RateConvention,
    states: &[PopulationState],
    profile: &DisutilityProfile,
    decision_rate: f64,
    epsilon: f64,
) -> Result<RateMatrix> {
    if states.is_empty() {
        return Err(Error::Dimension("empty state space".into()));
    }
    if states.len() > MAX_DENSE_STATES {
        return Err(Error::TooLarge(format!(
            "dense rate matrix over {} states (cap {MAX_DENSE_STATES})",
            states.len()
        )));
    }
    let population = states[0].population();
    if profile.max_occupancy() < population {
        return Err(Error::Dimension(format!(
            "profile covers occupancies up to {}, population is {population}",
            profile.max_occupancy()
        )));
    }
    let n = states.len();
    let index: HashMap<&PopulationState, usize> =
        states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut q = vec![0.0; n * n];
    let num_carriers = states[0].occupancy.len();
    for (i, state) in states.iter().enumerate() {
        let mut out_rate = 0.0;
        for from in 0..num_carriers {
            if state.occupancy[from] == 0 {
                continue;
            }
            for to in 0..num_carriers {
                if to == from {
                    continue;
                }
                let mut target = state.clone();
                target.occupancy[from] -= 1;
                target.occupancy[to] += 1;
                let j = *index.get(&target).expect("neighbor is a valid composition");
                let rate = transition_rate_with(
                    convention,
                    state,
                    &target,
                    profile,
                    decision_rate,
                    epsilon,
                )?;
                q[i * n + j] = rate;
                out_rate += rate;
            }
        }
        q[i * n + i] = -out_rate;
    }
    Ok(RateMatrix {
        epsilon,
        states: states.to_vec(),
        q,
    })
}

/// Stationary distribution of the chain: solves `beta^T Q = 0` with the
/// normalization `sum beta = 1` by dense state elimination.
///
/// States are censored one by one from the back, redistributing each
/// eliminated state's outflow over the remaining ones; the stationary
/// weights are then recovered front to back and normalized. Every
/// intermediate quantity is a sum or product of nonnegative rates, so the
/// result is accurate entrywise even when the chain mixes through deep
/// probability valleys, where ordinary elimination on `Q^T` loses digits
/// to cancellation.
pub fn stationary_distribution(matrix: &RateMatrix) -> Result<Vec<f64>> {
    let n = matrix.order();
    if n == 1 {
        return Ok(vec![1.0]);
    }
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                q[i * n + j] = matrix.rate(i, j);
            }
        }
    }
    // Censor states n-1 .. 1. departure[k] is state k's total rate into
    // lower-indexed states at the moment it is eliminated.
    let mut departure = vec![0.0; n];
    for k in (1..n).rev() {
        let s: f64 = (0..k).map(|j| q[k * n + j]).sum();
        if s <= 0.0 {
            return Err(Error::Singular(format!(
                "state {k} cannot reach lower-indexed states; the chain is reducible (epsilon = 0?)"
            )));
        }
        departure[k] = s;
        for i in 0..k {
            let weight = q[i * n + k] / s;
            if weight == 0.0 {
                continue;
            }
            for j in 0..k {
                if j != i {
                    q[i * n + j] += weight * q[k * n + j];
                }
            }
        }
    }
    let mut beta = vec![0.0; n];
    beta[0] = 1.0;
    for k in 1..n {
        let inflow: f64 = (0..k).map(|i| beta[i] * q[i * n + k]).sum();
        beta[k] = inflow / departure[k];
        if beta[k] > 1e250 {
            for b in &mut beta[..=k] {
                *b *= 1e-250;
            }
        }
    }
    let sum: f64 = beta.iter().sum();
    if !(sum.is_finite() && sum > 0.0) {
        return Err(Error::Singular("stationary solve did not normalize".into()));
    }
    for b in beta.iter_mut() {
        *b /= sum;
    }

    let tolerance = 1e-10 * matrix.inf_norm().max(f64::MIN_POSITIVE);
    let mut residual = 0.0f64;
    for j in 0..n {
        let r: f64 = (0..n).map(|i| beta[i] * matrix.rate(i, j)).sum();
        residual = residual.max(r.abs());
    }
    if residual > tolerance {
        return Err(Error::Singular(format!(
            "stationary residual {residual} exceeds tolerance {tolerance}"
        )));
    }
    Ok(beta)
}

/// Stationary probabilities across the epsilon sweep and the detected
/// stochastically stable states.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub states: Vec<PopulationState>,
    /// Descending epsilons, as configured.
    pub epsilons: Vec<f64>,
    /// One stationary vector per epsilon, aligned with `epsilons`.
    pub betas: Vec<Vec<f64>>,
    pub stable: Vec<PopulationState>,
    pub threshold: f64,
}

impl StabilityReport {
    /// Stationary vector at the smallest epsilon in the sweep.
    pub fn beta_at_smallest_epsilon(&self) -> &[f64] {
        self.betas.last().expect("nonempty sweep")
    }
}

/// Runs the full epsilon sweep for a scenario and reports the states whose
/// stationary probability stays at or above the stability threshold at the
/// two smallest epsilons.
pub fn stable_states(scenario: &Scenario) -> Result<StabilityReport> {
    let profile = build_disutility_profile(scenario)?;
    stable_states_with_profile(scenario, &profile)
}

/// Same as [`stable_states`] but with a precomputed disutility profile.
pub fn stable_states_with_profile(
    scenario: &Scenario,
    profile: &DisutilityProfile,
) -> Result<StabilityReport> {
    let states = build_state_space(scenario.num_carriers(), scenario.game.num_customers)?;
    let epsilons = scenario.game.epsilon_sweep.clone();
    let mut betas = Vec::with_capacity(epsilons.len());
    for &eps in &epsilons {
        let q = build_rate_matrix(&states, profile, scenario.game.decision_rate, eps)?;
        betas.push(stationary_distribution(&q)?);
    }
    let threshold = scenario.game.stability_threshold;
    let persistent = betas.len().min(2);
    let stable = states
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            betas
                .iter()
                .rev()
                .take(persistent)
                .all(|beta| beta[*i] >= threshold)
        })
        .map(|(_, s)| s.clone())
        .collect();
    Ok(StabilityReport {
        states,
        epsilons,
        betas,
        stable,
        threshold,
    })
}

/// Event-driven simulation of the chain: exponential holding times at the
/// diagonal rate, jumps proportional to the off-diagonal rates. Returns the
/// time-weighted fraction spent in each state. Deterministic given a seed.
pub fn simulate_chain(
    matrix: &RateMatrix,
    initial: &PopulationState,
    num_events: u64,
    seed: u64,
) -> Result<Vec<f64>> {
    let n = matrix.order();
    let mut current = matrix
        .index_of(initial)
        .ok_or_else(|| Error::Dimension(format!("initial state {initial} is not in the chain")))?;
    if n == 1 {
        return Ok(vec![1.0]);
    }
    if num_events == 0 {
        return Err(Error::Validation("at least one event is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut held = vec![0.0; n];
    for _ in 0..num_events {
        let exit_rate = -matrix.rate(current, current);
        if exit_rate <= 0.0 {
            return Err(Error::AbsorbingState(current));
        }
        // Uniform in (0, 1] so the log is finite.
        let u: f64 = 1.0 - rng.random::<f64>();
        held[current] += -u.ln() / exit_rate;
        let mut draw: f64 = rng.random::<f64>() * exit_rate;
        let mut next = current;
        for j in 0..n {
            if j == current {
                continue;
            }
            let rate = matrix.rate(current, j);
            if rate <= 0.0 {
                continue;
            }
            next = j;
            draw -= rate;
            if draw <= 0.0 {
                break;
            }
        }
        current = next;
    }
    let total: f64 = held.iter().sum();
    Ok(held.iter().map(|t| t / total).collect())
}

/// Expected number of customers per carrier under a state distribution.
pub fn mean_occupancy(beta: &[f64], states: &[PopulationState]) -> Result<Vec<f64>> {
    if beta.len() != states.len() {
        return Err(Error::Dimension(format!(
            "{} probabilities for {} states",
            beta.len(),
            states.len()
        )));
    }
    if states.is_empty() {
        return Err(Error::Dimension("empty state space".into()));
    }
    let num_carriers = states[0].occupancy.len();
    let mut means = vec![0.0; num_carriers];
    for (b, state) in beta.iter().zip(states) {
        for (c, &n) in state.occupancy.iter().enumerate() {
            means[c] += b * n as f64;
        }
    }
    Ok(means)
}
