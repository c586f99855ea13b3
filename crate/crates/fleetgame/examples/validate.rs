//! Load the bundled scenarios and print their summaries.
//!
//! ```bash
//! cargo run -p fleetgame --example validate
//! ```

use std::path::Path;

use fleetgame::cli::scenario_summary;
use fleetgame::load_scenario;

fn main() -> Result<(), fleetgame::Error> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    for name in ["reference.json", "colocated.json"] {
        let scenario = load_scenario(dir.join(name))?;
        println!("{name}: {}", scenario_summary(&scenario));
        for carrier in &scenario.carriers {
            let mode = if carrier.distance_override.is_some() {
                "distance matrix"
            } else {
                "coordinates"
            };
            println!(
                "  carrier {}: {} vehicle(s), fee {}, geometry from {mode}",
                carrier.id,
                carrier.vehicles.len(),
                carrier.fee
            );
        }
    }
    Ok(())
}
