//! Experiment runners and the command-line interface.
//!
//! Every subcommand loads a scenario file, runs one analysis, and writes
//! CSV results plus a `run.json` echoing the resolved parameters. All
//! analytical paths are deterministic; `--seed` only controls the optional
//! stochastic simulation cross-check of the `game` command.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::expectation::{
    build_delay_table, expected_delay, solve_subset_plans, subset_label, subset_masks_by_size,
    visited_set_distribution,
};
use crate::game::{
    build_disutility_profile, build_rate_matrix, build_state_space, mean_occupancy,
    simulate_chain, stable_states_with_profile, state_space_size, stationary_distribution,
};
use crate::scenario::{load_scenario, shift_carrier, Scenario};
use crate::vrp::fixed_order_delay;

/// One cell of a CSV result.
#[derive(Debug, Clone, PartialEq)]
pub enum CsvValue {
    Int(i64),
    Num(f64),
    Text(String),
}

impl std::fmt::Display for CsvValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CsvValue::Int(v) => write!(f, "{v}"),
            CsvValue::Num(v) => {
                let v = if *v == 0.0 { 0.0 } else { *v };
                write!(f, "{v:.6}")
            }
            CsvValue::Text(v) => {
                if v.contains(',') || v.contains('"') || v.contains('\n') {
                    write!(f, "\"{}\"", v.replace('"', "\"\""))
                } else {
                    write!(f, "{v}")
                }
            }
        }
    }
}

/// Rectangular table of experiment output.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub kind: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<CsvValue>>,
}

impl ExperimentResult {
    pub fn new(kind: impl Into<String>, columns: Vec<String>) -> Self {
        ExperimentResult {
            kind: kind.into(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<CsvValue>) {
        assert_eq!(row.len(), self.columns.len(), "rows must match the header");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// One-line description used by `validate`.
pub fn scenario_summary(scenario: &Scenario) -> String {
    format!(
        "{} carriers, {} terminals, {} customers, {} states",
        scenario.num_carriers(),
        scenario.num_terminals(),
        scenario.game.num_customers,
        state_space_size(scenario.num_carriers(), scenario.game.num_customers)
    )
}

fn selected_carriers(scenario: &Scenario, carrier: Option<u32>) -> Result<Vec<u32>> {
    match carrier {
        Some(id) => {
            scenario.carrier(id)?;
            Ok(vec![id])
        }
        None => Ok(scenario.carriers.iter().map(|c| c.id).collect()),
    }
}

/// Traveling delay per terminal subset, optimized or in fixed ascending
/// visit order.
pub fn run_delay_table(
    scenario: &Scenario,
    carrier: Option<u32>,
    fixed_order: bool,
) -> Result<ExperimentResult> {
    let kind = if fixed_order {
        "delay-table-fixed-order"
    } else {
        "delay-table"
    };
    let mut result = ExperimentResult::new(
        kind,
        vec!["carrier".into(), "subset".into(), "delay_minutes".into()],
    );
    let masks = subset_masks_by_size(scenario.num_terminals());
    for id in selected_carriers(scenario, carrier)? {
        let table = if fixed_order {
            None
        } else {
            Some(build_delay_table(scenario, id)?)
        };
        for &mask in &masks {
            let delay = match &table {
                Some(t) => t.delay(mask),
                None => {
                    let order: Vec<u32> = (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
                    fixed_order_delay(scenario, id, &order)?
                }
            };
            result.push_row(vec![
                CsvValue::Int(id as i64),
                CsvValue::Text(subset_label(mask)),
                CsvValue::Num(delay),
            ]);
        }
    }
    Ok(result)
}

/// Expected delivery delay per occupancy, one column per carrier.
pub fn run_expected_delay(
    scenario: &Scenario,
    carrier: Option<u32>,
    n_range: (u32, u32),
    all_on_one: bool,
) -> Result<ExperimentResult> {
    let (lo, hi) = n_range;
    if lo > hi {
        return Err(Error::Validation(format!("empty range {lo}..{hi}")));
    }
    let ids = selected_carriers(scenario, carrier)?;
    let mut columns = vec!["n".to_string()];
    columns.extend(ids.iter().map(|id| format!("pi_{id}")));
    let kind = if all_on_one {
        "expected-delay-all-on-one"
    } else {
        "expected-delay"
    };
    let mut result = ExperimentResult::new(kind, columns);
    let probs = &scenario.game.terminal_probs;
    let unload = scenario.cost.unload_minutes_per_customer;
    let tables = ids
        .iter()
        .map(|&id| build_delay_table(scenario, id))
        .collect::<Result<Vec<_>>>()?;
    for n in lo..=hi {
        let mut row = vec![CsvValue::Int(n as i64)];
        for table in &tables {
            row.push(CsvValue::Num(expected_delay(n, probs, table, unload)?));
        }
        result.push_row(row);
    }
    Ok(result)
}

/// Everything the `game` command emits.
pub struct GameArtifacts {
    /// One row per (epsilon, state): the stationary probability sweep.
    pub beta: ExperimentResult,
    /// Stochastically stable states.
    pub stable: ExperimentResult,
    /// Expected customers per carrier at the smallest epsilon.
    pub mean: ExperimentResult,
    pub report: crate::game::StabilityReport,
}

/// Full stability analysis: epsilon sweep, stable states, mean occupancy.
pub fn run_game(scenario: &Scenario) -> Result<GameArtifacts> {
    let profile = build_disutility_profile(scenario)?;
    let report = stable_states_with_profile(scenario, &profile)?;
    let n_carriers = scenario.num_carriers();

    let mut columns = vec!["epsilon".to_string()];
    columns.extend((1..=n_carriers).map(|c| format!("n_{c}")));
    columns.push("beta".into());
    let mut beta = ExperimentResult::new("game", columns);
    for (eps, betas) in report.epsilons.iter().zip(&report.betas) {
        for (state, b) in report.states.iter().zip(betas) {
            let mut row = vec![CsvValue::Num(*eps)];
            row.extend(state.occupancy.iter().map(|&n| CsvValue::Int(n as i64)));
            row.push(CsvValue::Num(*b));
            beta.push_row(row);
        }
    }

    let columns: Vec<String> = (1..=n_carriers).map(|c| format!("n_{c}")).collect();
    let mut stable = ExperimentResult::new("game-stable", columns);
    for state in &report.stable {
        stable.push_row(
            state
                .occupancy
                .iter()
                .map(|&n| CsvValue::Int(n as i64))
                .collect(),
        );
    }

    let means = mean_occupancy(report.beta_at_smallest_epsilon(), &report.states)?;
    let mut mean = ExperimentResult::new(
        "game-mean",
        vec!["carrier".into(), "mean_customers".into()],
    );
    for (c, m) in means.iter().enumerate() {
        mean.push_row(vec![CsvValue::Int(c as i64 + 1), CsvValue::Num(*m)]);
    }

    Ok(GameArtifacts {
        beta,
        stable,
        mean,
        report,
    })
}

/// Mean occupancies as one carrier's depot is shifted east step by step.
pub fn run_sweep(scenario: &Scenario, carrier: u32, dx_list: &[f64]) -> Result<ExperimentResult> {
    scenario.carrier(carrier)?;
    let mut columns = vec!["dx".to_string()];
    columns.extend((1..=scenario.num_carriers()).map(|c| format!("mean_n_{c}")));
    let mut result = ExperimentResult::new("sweep", columns);
    let epsilon = *scenario.game.epsilon_sweep.last().expect("validated: nonempty");
    for &dx in dx_list {
        let shifted = shift_carrier(scenario, carrier, dx)?;
        let profile = build_disutility_profile(&shifted)?;
        let states = build_state_space(shifted.num_carriers(), shifted.game.num_customers)?;
        let q = build_rate_matrix(&states, &profile, shifted.game.decision_rate, epsilon)?;
        let beta = stationary_distribution(&q)?;
        let means = mean_occupancy(&beta, &states)?;
        let mut row = vec![CsvValue::Num(dx)];
        row.extend(means.iter().map(|&m| CsvValue::Num(m)));
        result.push_row(row);
    }
    Ok(result)
}

/// Expected routing cost of the first carrier for each population size,
/// under the game's stationary occupancy versus everyone choosing it.
pub fn run_compare_baseline(scenario: &Scenario) -> Result<ExperimentResult> {
    let carrier_id = scenario.carriers[0].id;
    let plans = solve_subset_plans(scenario, carrier_id)?;
    let subset_costs: Vec<f64> = plans.iter().map(|p| p.total_cost).collect();
    let probs = &scenario.game.terminal_probs;
    let s_max = scenario.game.num_customers;
    let epsilon = *scenario.game.epsilon_sweep.last().expect("validated: nonempty");
    let profile = build_disutility_profile(scenario)?;

    // Expected optimal cost of serving n customers' random destinations.
    let mut cost_at = Vec::with_capacity(s_max as usize + 1);
    for n in 0..=s_max {
        let weights = visited_set_distribution(n, probs)?;
        cost_at.push(weights.iter().zip(&subset_costs).map(|(w, c)| w * c).sum::<f64>());
    }

    let mut result = ExperimentResult::new(
        "compare-baseline",
        vec!["customers".into(), "cost_proposed".into(), "cost_baseline".into()],
    );
    for s in 0..=s_max {
        let states = build_state_space(scenario.num_carriers(), s)?;
        let q = build_rate_matrix(&states, &profile, scenario.game.decision_rate, epsilon)?;
        let beta = stationary_distribution(&q)?;
        let proposed: f64 = beta
            .iter()
            .zip(&states)
            .map(|(b, state)| b * cost_at[state.occupancy[0] as usize])
            .sum();
        result.push_row(vec![
            CsvValue::Int(s as i64),
            CsvValue::Num(proposed),
            CsvValue::Num(cost_at[s as usize]),
        ]);
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// Command line
// ---------------------------------------------------------------------------

const SIMULATION_EVENTS: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "fleetgame",
    version,
    about = "Exact truck routing and carrier-selection game analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a scenario file and print a summary.
    Validate {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Traveling delay of every terminal subset per carrier.
    DelayTable {
        #[arg(long)]
        scenario: PathBuf,
        /// Restrict output to one carrier.
        #[arg(long)]
        carrier: Option<u32>,
        /// Visit terminals in ascending id order instead of optimizing.
        #[arg(long)]
        fixed_order: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Expected delivery delay per number of customers.
    ExpectedDelay {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        carrier: Option<u32>,
        /// Inclusive occupancy range, e.g. 0..16. Defaults to 0..S.
        #[arg(long)]
        n_range: Option<String>,
        /// Label the output as the everyone-on-one-carrier baseline.
        #[arg(long)]
        all_on_one: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Stationary distributions across the epsilon sweep, stable states,
    /// and mean occupancy.
    Game {
        #[arg(long)]
        scenario: PathBuf,
        /// Also run the stochastic simulation cross-check with this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Mean occupancies while shifting one carrier's depot east.
    Sweep {
        #[arg(long)]
        scenario: PathBuf,
        /// Carrier to shift; must be in coordinate mode.
        #[arg(long)]
        carrier: u32,
        /// Comma-separated shifts in kilometers, e.g. 0,1,2. May be empty.
        #[arg(long, default_value = "0,1,2,3,4,5,6,7,8,9,10")]
        dx_list: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Expected cost of carrier 1 under the game versus everyone on it.
    CompareBaseline {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn parse_n_range(text: &str) -> Result<(u32, u32)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| Error::Validation(format!("range must look like a..b, got {text:?}")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| Error::Validation(format!("bad range bound {s:?}")))
    };
    Ok((parse(lo)?, parse(hi)?))
}

fn parse_dx_list(text: &str) -> Result<Vec<f64>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Validation(format!("bad dx value {s:?}")))
        })
        .collect()
}

fn write_text(dir: &Path, name: &str, text: &str) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let path = dir.join(name);
    std::fs::write(&path, text).map_err(|source| Error::Io { path, source })
}

fn write_result(dir: &Path, name: &str, result: &ExperimentResult) -> Result<()> {
    write_text(dir, name, &result.to_csv())?;
    println!("wrote {} ({} rows)", dir.join(name).display(), result.rows.len());
    Ok(())
}

fn write_run_json(dir: &Path, params: serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&params).expect("json parameters");
    text.push('\n');
    write_text(dir, "run.json", &text)
}

/// Executes a parsed command, returning the process exit code.
pub fn run(cli: Cli) -> i32 {
    match try_run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn try_run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { scenario } => {
            let s = load_scenario(&scenario)?;
            println!("{}", scenario_summary(&s));
            Ok(())
        }
        Command::DelayTable {
            scenario,
            carrier,
            fixed_order,
            out,
        } => {
            let s = load_scenario(&scenario)?;
            let result = run_delay_table(&s, carrier, fixed_order)?;
            write_result(&out, "delay-table.csv", &result)?;
            write_run_json(
                &out,
                serde_json::json!({
                    "command": "delay-table",
                    "scenario": scenario.display().to_string(),
                    "carrier": carrier,
                    "fixed_order": fixed_order,
                    "out": out.display().to_string(),
                }),
            )
        }
        Command::ExpectedDelay {
            scenario,
            carrier,
            n_range,
            all_on_one,
            out,
        } => {
            let s = load_scenario(&scenario)?;
            let range = match &n_range {
                Some(text) => parse_n_range(text)?,
                None => (0, s.game.num_customers),
            };
            let result = run_expected_delay(&s, carrier, range, all_on_one)?;
            write_result(&out, "expected-delay.csv", &result)?;
            write_run_json(
                &out,
                serde_json::json!({
                    "command": "expected-delay",
                    "scenario": scenario.display().to_string(),
                    "carrier": carrier,
                    "n_range": [range.0, range.1],
                    "all_on_one": all_on_one,
                    "out": out.display().to_string(),
                }),
            )
        }
        Command::Game { scenario, seed, out } => {
            let s = load_scenario(&scenario)?;
            let artifacts = run_game(&s)?;
            write_result(&out, "game.csv", &artifacts.beta)?;
            write_result(&out, "game_stable.csv", &artifacts.stable)?;
            write_result(&out, "game_mean.csv", &artifacts.mean)?;
            for state in &artifacts.report.stable {
                println!("stable state {state}");
            }
            if let Some(seed) = seed {
                let report = &artifacts.report;
                let epsilon = *report.epsilons.last().expect("nonempty sweep");
                let profile = build_disutility_profile(&s)?;
                let q = build_rate_matrix(&report.states, &profile, s.game.decision_rate, epsilon)?;
                let occupancy =
                    simulate_chain(&q, &report.states[0], SIMULATION_EVENTS, seed)?;
                let beta = report.beta_at_smallest_epsilon();
                let tv = 0.5
                    * occupancy
                        .iter()
                        .zip(beta)
                        .map(|(o, b)| (o - b).abs())
                        .sum::<f64>();
                let mut columns: Vec<String> =
                    (1..=s.num_carriers()).map(|c| format!("n_{c}")).collect();
                columns.push("occupancy".into());
                let mut sim = ExperimentResult::new("game-sim", columns);
                for (state, o) in report.states.iter().zip(&occupancy) {
                    let mut row: Vec<CsvValue> = state
                        .occupancy
                        .iter()
                        .map(|&n| CsvValue::Int(n as i64))
                        .collect();
                    row.push(CsvValue::Num(*o));
                    sim.push_row(row);
                }
                write_result(&out, "game_sim.csv", &sim)?;
                println!(
                    "simulation at epsilon {epsilon:e}: total variation from beta = {tv:.6}"
                );
            }
            write_run_json(
                &out,
                serde_json::json!({
                    "command": "game",
                    "scenario": scenario.display().to_string(),
                    "epsilon_sweep": s.game.epsilon_sweep,
                    "stability_threshold": s.game.stability_threshold,
                    "seed": seed,
                    "simulation_events": seed.map(|_| SIMULATION_EVENTS),
                    "out": out.display().to_string(),
                }),
            )
        }
        Command::Sweep {
            scenario,
            carrier,
            dx_list,
            out,
        } => {
            let s = load_scenario(&scenario)?;
            let dxs = parse_dx_list(&dx_list)?;
            let result = run_sweep(&s, carrier, &dxs)?;
            write_result(&out, "sweep.csv", &result)?;
            write_run_json(
                &out,
                serde_json::json!({
                    "command": "sweep",
                    "scenario": scenario.display().to_string(),
                    "carrier": carrier,
                    "dx_list": dxs,
                    "epsilon": s.game.epsilon_sweep.last(),
                    "out": out.display().to_string(),
                }),
            )
        }
        Command::CompareBaseline { scenario, out } => {
            let s = load_scenario(&scenario)?;
            let result = run_compare_baseline(&s)?;
            write_result(&out, "compare-baseline.csv", &result)?;
            write_run_json(
                &out,
                serde_json::json!({
                    "command": "compare-baseline",
                    "scenario": scenario.display().to_string(),
                    "carrier": s.carriers[0].id,
                    "epsilon": s.game.epsilon_sweep.last(),
                    "out": out.display().to_string(),
                }),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::load_scenario;

    fn reference() -> Scenario {
        load_scenario(crate::scenario::tests::reference_path()).unwrap()
    }

    #[test]
    fn csv_formatting_is_six_decimal_places() {
        let mut r = ExperimentResult::new("demo", vec!["a".into(), "b".into()]);
        r.push_row(vec![CsvValue::Int(3), CsvValue::Num(1.0 / 3.0)]);
        r.push_row(vec![CsvValue::Text("1-2".into()), CsvValue::Num(-0.0)]);
        assert_eq!(r.to_csv(), "a,b\n3,0.333333\n1-2,0.000000\n");
    }

    #[test]
    #[should_panic(expected = "rows must match the header")]
    fn ragged_rows_are_rejected() {
        let mut r = ExperimentResult::new("demo", vec!["a".into(), "b".into()]);
        r.push_row(vec![CsvValue::Int(1)]);
    }

    #[test]
    fn summary_matches_reference_fixture() {
        assert_eq!(
            scenario_summary(&reference()),
            "2 carriers, 3 terminals, 16 customers, 17 states"
        );
    }

    #[test]
    fn delay_table_has_one_row_per_subset_per_carrier() {
        let s = reference();
        let all = run_delay_table(&s, None, false).unwrap();
        assert_eq!(all.rows.len(), 2 * 7);
        let one = run_delay_table(&s, Some(1), true).unwrap();
        assert_eq!(one.rows.len(), 7);
        assert!(matches!(run_delay_table(&s, Some(9), false), Err(Error::UnknownCarrier(9))));
    }

    #[test]
    fn single_terminal_scenario_has_a_single_subset_row() {
        let s = Scenario::from_json(
            r#"{
                "terminals": [{"id": 1, "x": 3.0, "y": 4.0}],
                "carriers": [{"id": 1, "depot": {"x": 0.0, "y": 0.0}, "fee": 0.0,
                              "vehicles": [{"capacity": 5, "initial_cost": 0.0}]}],
                "cost": {"price_per_km": 1.0, "misc_cost_per_visit": 0.0,
                         "speed_kmh": 40.0, "unload_minutes_per_customer": 5.0},
                "game": {"num_customers": 4, "decision_rate": 1.0}
            }"#,
        )
        .unwrap();
        let r = run_delay_table(&s, None, false).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0][1], CsvValue::Text("1".into()));
    }

    #[test]
    fn expected_delay_rows_start_at_zero() {
        let s = reference();
        let r = run_expected_delay(&s, None, (0, 3), false).unwrap();
        assert_eq!(r.columns, vec!["n", "pi_1", "pi_2"]);
        assert_eq!(r.rows[0][0], CsvValue::Int(0));
        match (&r.rows[0][1], &r.rows[0][2]) {
            (CsvValue::Num(a), CsvValue::Num(b)) => {
                assert_eq!(*a, 0.0);
                assert_eq!(*b, 0.0);
            }
            other => panic!("unexpected cells {other:?}"),
        }
    }

    #[test]
    fn n_range_parsing() {
        assert_eq!(parse_n_range("0..16").unwrap(), (0, 16));
        assert_eq!(parse_n_range("3..3").unwrap(), (3, 3));
        assert!(parse_n_range("5").is_err());
        assert!(parse_n_range("a..b").is_err());
    }

    #[test]
    fn dx_list_parsing() {
        assert_eq!(parse_dx_list("").unwrap(), Vec::<f64>::new());
        assert_eq!(parse_dx_list("0, 1.5,2").unwrap(), vec![0.0, 1.5, 2.0]);
        assert!(parse_dx_list("0,x").is_err());
    }

    #[test]
    fn empty_sweep_has_headers_only() {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/colocated.json");
        let s = load_scenario(path).unwrap();
        let r = run_sweep(&s, 2, &[]).unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.to_csv(), "dx,mean_n_1,mean_n_2\n");
    }

    #[test]
    fn colocated_carriers_split_customers_evenly() {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/colocated.json");
        let s = load_scenario(path).unwrap();
        let r = run_sweep(&s, 2, &[0.0]).unwrap();
        let (CsvValue::Num(n1), CsvValue::Num(n2)) = (&r.rows[0][1], &r.rows[0][2]) else {
            panic!("unexpected cells");
        };
        assert!((n1 - n2).abs() < 1e-9, "asymmetric split {n1} vs {n2}");
        assert!((n1 + n2 - 16.0).abs() < 1e-9);
    }

    #[test]
    fn compare_baseline_starts_at_zero_cost() {
        let s = reference();
        let r = run_compare_baseline(&s).unwrap();
        assert_eq!(r.rows.len(), 17);
        match (&r.rows[0][1], &r.rows[0][2]) {
            (CsvValue::Num(p), CsvValue::Num(b)) => {
                assert_eq!(*p, 0.0);
                assert_eq!(*b, 0.0);
            }
            other => panic!("unexpected cells {other:?}"),
        }
        // A single customer can pick the other carrier, never a worse one.
        match (&r.rows[1][1], &r.rows[1][2]) {
            (CsvValue::Num(p), CsvValue::Num(b)) => assert!(p <= b),
            other => panic!("unexpected cells {other:?}"),
        }
    }
}
