//! Stochastically stable customer splits: sweep the perturbation rate
//! downwards and watch where the stationary probability settles.
//!
//! ```bash
//! cargo run -p fleetgame --example stable_states
//! ```

use std::path::Path;

use fleetgame::game::{mean_occupancy, stable_states};
use fleetgame::load_scenario;

fn main() -> Result<(), fleetgame::Error> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/reference.json");
    let scenario = load_scenario(path)?;
    let report = stable_states(&scenario)?;

    print!("{:>8}", "state");
    for eps in &report.epsilons {
        print!(" {eps:>10.0e}");
    }
    println!();
    for (i, state) in report.states.iter().enumerate() {
        print!("{:>8}", state.to_string());
        for beta in &report.betas {
            print!(" {:>10.6}", beta[i]);
        }
        println!();
    }

    println!();
    for state in &report.stable {
        println!("stochastically stable: {state}");
    }
    let means = mean_occupancy(report.beta_at_smallest_epsilon(), &report.states)?;
    println!(
        "mean occupancy at epsilon {:e}: ({:.3}, {:.3})",
        report.epsilons.last().unwrap(),
        means[0],
        means[1]
    );
    Ok(())
}
