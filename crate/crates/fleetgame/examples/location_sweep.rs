//! Move carrier 2 east, kilometer by kilometer, and watch customers
//! abandon it. Both carriers start at the same depot.
//!
//! ```bash
//! cargo run -p fleetgame --example location_sweep
//! ```

use std::path::Path;

use fleetgame::cli::run_sweep;
use fleetgame::load_scenario;

fn main() -> Result<(), fleetgame::Error> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/colocated.json");
    let scenario = load_scenario(path)?;
    let dx: Vec<f64> = (0..=10).map(f64::from).collect();
    let result = run_sweep(&scenario, 2, &dx)?;

    println!("{:>6} {:>12} {:>12}", "dx km", "E[n_1]", "E[n_2]");
    for row in &result.rows {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        println!("{:>6} {:>12} {:>12}", cells[0], cells[1], cells[2]);
    }
    println!("\nmean customers per carrier at the smallest sweep epsilon");
    Ok(())
}
