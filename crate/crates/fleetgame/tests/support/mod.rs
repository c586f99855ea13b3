//! Shared oracles and generators for the integration suites. Everything
//! here recomputes expected values independently of the library paths it
//! is used to check.
#![allow(dead_code)] // each test target uses a different subset

use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use fleetgame::game::RateMatrix;
use fleetgame::scenario::{
    Carrier, CostParams, GameParams, Point, Scenario, Terminal, Vehicle, DEFAULT_EPSILON_SWEEP,
    DEFAULT_STABILITY_THRESHOLD,
};
use fleetgame::vrp::DemandVector;

pub fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

#[track_caller]
pub fn assert_close(actual: f64, expected: f64, tol: f64) {
    assert!(
        (actual - expected).abs() <= tol,
        "expected {expected}, got {actual} (tolerance {tol})"
    );
}

/// Reference round-trip delays in minutes for the two-carrier scenario:
/// per carrier, the seven subsets [1], [2], [3], [1,2], [1,3], [2,3],
/// [1,2,3] visited in ascending id order.
pub const REFERENCE_FIXED_ORDER_DELAYS: [[f64; 7]; 2] = [
    [2.400, 8.625, 9.450, 13.425, 14.250, 26.700, 31.500],
    [18.228, 17.376, 17.340, 29.253, 30.078, 35.415, 47.328],
];

pub const REFERENCE_SPEED_KMH: f64 = 40.0;

/// Rebuilds a carrier's distance matrix from its single- and pair-subset
/// round-trip delays. The depot leg comes from half a single round trip,
/// pair legs from subtracting the two depot legs from the pair round trip.
/// The three-terminal rows are deliberately not used: they are predictions.
pub fn reconstruct_distances(delays: &[f64; 7], speed_kmh: f64) -> [[f64; 4]; 4] {
    let km = |minutes: f64| minutes * speed_kmh / 60.0;
    let d01 = km(delays[0]) / 2.0;
    let d02 = km(delays[1]) / 2.0;
    let d03 = km(delays[2]) / 2.0;
    let d12 = km(delays[3]) - d01 - d02;
    let d13 = km(delays[4]) - d01 - d03;
    let d23 = km(delays[5]) - d02 - d03;
    [
        [0.0, d01, d02, d03],
        [d01, 0.0, d12, d13],
        [d02, d12, 0.0, d23],
        [d03, d13, d23, 0.0],
    ]
}

/// Stationary distribution of a birth-death chain from the closed-form
/// product of up/down rate ratios, evaluated in log space.
pub fn birth_death_stationary(q: &RateMatrix) -> Vec<f64> {
    let n = q.order();
    let mut log_beta = vec![0.0f64; n];
    for k in 1..n {
        log_beta[k] = log_beta[k - 1] + q.rate(k - 1, k).ln() - q.rate(k, k - 1).ln();
    }
    let max = log_beta.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = log_beta.iter().map(|l| (l - max).exp()).collect();
    let sum: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / sum).collect()
}

pub fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

fn default_game(num_terminals: usize) -> GameParams {
    GameParams {
        num_customers: 4,
        terminal_probs: vec![1.0 / num_terminals as f64; num_terminals],
        decision_rate: 1.0,
        epsilon_sweep: DEFAULT_EPSILON_SWEEP.to_vec(),
        stability_threshold: DEFAULT_STABILITY_THRESHOLD,
    }
}

/// Single-carrier scenario with random depot and terminal coordinates.
pub fn random_euclidean_scenario(rng: &mut ChaCha8Rng, num_terminals: usize) -> Scenario {
    let point = |rng: &mut ChaCha8Rng| Point {
        x: rng.random_range(-10.0..10.0),
        y: rng.random_range(-10.0..10.0),
    };
    Scenario {
        terminals: (1..=num_terminals as u32)
            .map(|id| Terminal {
                id,
                location: Some(point(rng)),
            })
            .collect(),
        carriers: vec![Carrier {
            id: 1,
            depot: Some(point(rng)),
            fee: 0.0,
            vehicles: vec![Vehicle {
                capacity: 1000,
                initial_cost: 0.0,
            }],
            distance_override: None,
        }],
        cost: CostParams {
            price_per_km: 1.0,
            misc_cost_per_visit: 0.0,
            speed_kmh: 40.0,
            unload_minutes_per_customer: 5.0,
        },
        game: default_game(num_terminals),
    }
}

/// Single-carrier instance on a dyadic grid: distances are multiples of
/// 1/8 km, prices of 1/4, so every cost sum is exact in f64 and optimal
/// objective values compare exactly across solvers.
#[allow(clippy::needless_range_loop)] // symmetric matrix fill
pub fn random_dyadic_instance(rng: &mut ChaCha8Rng) -> (Scenario, DemandVector) {
    let t: usize = rng.random_range(1..=6);
    let n = t + 1;
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = rng.random_range(1..=800) as f64 / 8.0;
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    let num_vehicles: usize = rng.random_range(1..=3);
    let vehicles = (0..num_vehicles)
        .map(|_| Vehicle {
            capacity: rng.random_range(2..=8),
            initial_cost: rng.random_range(0..=40) as f64 / 4.0,
        })
        .collect();
    let scenario = Scenario {
        terminals: (1..=t as u32).map(|id| Terminal { id, location: None }).collect(),
        carriers: vec![Carrier {
            id: 1,
            depot: None,
            fee: 0.0,
            vehicles,
            distance_override: Some(rows),
        }],
        cost: CostParams {
            price_per_km: rng.random_range(1..=8) as f64 / 4.0,
            misc_cost_per_visit: rng.random_range(0..=16) as f64 / 8.0,
            speed_kmh: 40.0,
            unload_minutes_per_customer: 5.0,
        },
        game: default_game(t),
    };
    let mut demand = DemandVector::new();
    for id in 1..=t as u32 {
        if rng.random_bool(0.8) {
            demand.insert(id, rng.random_range(1..=3));
        }
    }
    if demand.is_empty() {
        demand.insert(1, 1);
    }
    (scenario, demand)
}
