//! Cross-check the analytic stationary distribution with an event-driven
//! simulation of the same chain.
//!
//! ```bash
//! cargo run -p fleetgame --example simulate
//! ```

use std::path::Path;

use fleetgame::game::{
    build_disutility_profile, build_rate_matrix, build_state_space, simulate_chain,
    stationary_distribution,
};
use fleetgame::load_scenario;

fn main() -> Result<(), fleetgame::Error> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/reference.json");
    let scenario = load_scenario(path)?;
    let epsilon = 1e-3;
    let events = 1_000_000;
    let seed = 42;

    let profile = build_disutility_profile(&scenario)?;
    let states = build_state_space(scenario.num_carriers(), scenario.game.num_customers)?;
    let q = build_rate_matrix(&states, &profile, scenario.game.decision_rate, epsilon)?;
    let beta = stationary_distribution(&q)?;
    let occupancy = simulate_chain(&q, &states[0], events, seed)?;

    println!("{:>8} {:>12} {:>12}", "state", "beta", "simulated");
    for ((state, b), o) in states.iter().zip(&beta).zip(&occupancy) {
        if *b > 1e-6 || *o > 1e-6 {
            println!("{:>8} {b:>12.6} {o:>12.6}", state.to_string());
        }
    }
    let tv: f64 = 0.5 * beta.iter().zip(&occupancy).map(|(b, o)| (b - o).abs()).sum::<f64>();
    println!("\n{events} events at epsilon {epsilon:e}, seed {seed}");
    println!("total variation distance: {tv:.6}");
    Ok(())
}
