//! Carrier 1's expected routing cost when customers pick carriers through
//! the game, versus the baseline where every customer irrationally picks
//! carrier 1.
//!
//! ```bash
//! cargo run -p fleetgame --example compare_baseline
//! ```

use std::path::Path;

use fleetgame::cli::run_compare_baseline;
use fleetgame::load_scenario;

fn main() -> Result<(), fleetgame::Error> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/reference.json");
    let scenario = load_scenario(path)?;
    let result = run_compare_baseline(&scenario)?;

    println!("{:>10} {:>14} {:>14}", "customers", "game", "all-on-one");
    for row in &result.rows {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        println!("{:>10} {:>14} {:>14}", cells[0], cells[1], cells[2]);
    }
    println!("\nexpected cost of carrier 1 in currency units");
    Ok(())
}
