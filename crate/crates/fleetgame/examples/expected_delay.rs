//! Expected delivery delay of each carrier as a function of how many
//! customers choose it.
//!
//! ```bash
//! cargo run -p fleetgame --example expected_delay
//! ```

use std::path::Path;

use fleetgame::expectation::{build_delay_table, expected_delay};
use fleetgame::load_scenario;

fn main() -> Result<(), fleetgame::Error> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/reference.json");
    let scenario = load_scenario(path)?;
    let probs = &scenario.game.terminal_probs;
    let unload = scenario.cost.unload_minutes_per_customer;

    let tables = scenario
        .carriers
        .iter()
        .map(|c| build_delay_table(&scenario, c.id))
        .collect::<Result<Vec<_>, _>>()?;

    println!("{:>4} {:>12} {:>12}", "n", "carrier 1", "carrier 2");
    for n in 0..=scenario.game.num_customers {
        let row = tables
            .iter()
            .map(|t| expected_delay(n, probs, t, unload))
            .collect::<Result<Vec<_>, _>>()?;
        println!("{n:>4} {:>12.4} {:>12.4}", row[0], row[1]);
    }
    println!("\nexpected delay in minutes: n x unload time plus the optimal");
    println!("traveling delay averaged over the random visited terminal sets");
    Ok(())
}
