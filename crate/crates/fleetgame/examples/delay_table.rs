//! Traveling delay of every terminal subset, optimized versus the fixed
//! ascending visit order.
//!
//! ```bash
//! cargo run -p fleetgame --example delay_table
//! ```

use std::path::Path;

use fleetgame::expectation::{build_delay_table, subset_label, subset_masks_by_size};
use fleetgame::load_scenario;
use fleetgame::vrp::fixed_order_delay;

fn main() -> Result<(), fleetgame::Error> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/reference.json");
    let scenario = load_scenario(path)?;

    println!("{:<8} {:<8} {:>12} {:>12}", "carrier", "subset", "fixed", "optimized");
    for carrier in &scenario.carriers {
        let table = build_delay_table(&scenario, carrier.id)?;
        for mask in subset_masks_by_size(scenario.num_terminals()) {
            let order: Vec<u32> = (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
            let fixed = fixed_order_delay(&scenario, carrier.id, &order)?;
            println!(
                "{:<8} {:<8} {:>12.3} {:>12.3}",
                carrier.id,
                subset_label(mask),
                fixed,
                table.delay(mask)
            );
        }
    }
    println!("\ndelays in minutes; optimized uses the exact routing solver");
    Ok(())
}
