//! Scenario data model: carriers, terminals, cost and game parameters.
//!
//! A [`Scenario`] is the single source of truth for every analysis in this
//! crate. It is loaded from a JSON file (see [`load_scenario`]), validated
//! eagerly, and immutable afterwards, so it can be shared freely across
//! worker threads.
//!
//! Carrier geometry comes in two modes: either the carrier has a depot
//! location and every terminal has coordinates (distances are Euclidean),
//! or the carrier carries an explicit distance matrix over the node order
//! `0 (depot), 1, ..., T`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Planar location in kilometers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

/// Delivery terminal. Ids are 1-based and contiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct Terminal {
    pub id: u32,
    pub location: Option<Point>,
}

/// One vehicle of a carrier's fleet.
#[derive(Debug, Clone, PartialEq)]
pub struct Vehicle {
    /// Capacity in packages.
    pub capacity: u32,
    /// Cost incurred whenever the vehicle is used at all.
    pub initial_cost: f64,
}

/// A less-than-truckload carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct Carrier {
    pub id: u32,
    pub depot: Option<Point>,
    /// Service fee charged per customer.
    pub fee: f64,
    pub vehicles: Vec<Vehicle>,
    /// Explicit `(T+1) x (T+1)` distance matrix over `{depot} U terminals`,
    /// row-major in node order `0, 1, ..., T`. When present it takes
    /// precedence over coordinates.
    pub distance_override: Option<Vec<Vec<f64>>>,
}

/// Cost and timing parameters shared by all carriers.
#[derive(Debug, Clone, PartialEq)]
pub struct CostParams {
    pub price_per_km: f64,
    pub misc_cost_per_visit: f64,
    pub speed_kmh: f64,
    pub unload_minutes_per_customer: f64,
}

/// Parameters of the carrier-selection game.
#[derive(Debug, Clone, PartialEq)]
pub struct GameParams {
    /// Population size S.
    pub num_customers: u32,
    /// Probability that a customer's package goes to terminal j
    /// (index j-1). Defaults to uniform when omitted from the file.
    pub terminal_probs: Vec<f64>,
    /// Decision-making rate constant K.
    pub decision_rate: f64,
    /// Strictly decreasing perturbation rates used for the stability sweep.
    pub epsilon_sweep: Vec<f64>,
    /// A state is stochastically stable when its stationary probability
    /// stays at or above this threshold at the two smallest epsilons.
    pub stability_threshold: f64,
}

/// Full problem description.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub terminals: Vec<Terminal>,
    pub carriers: Vec<Carrier>,
    pub cost: CostParams,
    pub game: GameParams,
}

pub const DEFAULT_EPSILON_SWEEP: [f64; 5] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
pub const DEFAULT_STABILITY_THRESHOLD: f64 = 0.01;

/// Square distance matrix over `{depot 0} U terminals`, indexed by node id.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    nodes: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let nodes = rows.len();
        let mut d = Vec::with_capacity(nodes * nodes);
        for row in rows {
            d.extend_from_slice(row);
        }
        DistanceMatrix { nodes, d }
    }

    /// Number of nodes, i.e. `T + 1`.
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// Distance in kilometers between nodes `i` and `j` (0 is the depot).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.nodes + j]
    }
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

/// Raw serde mirror of the scenario file. Unknown keys are rejected.
mod file {
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct ScenarioFile {
        pub terminals: Vec<TerminalFile>,
        pub carriers: Vec<CarrierFile>,
        pub cost: CostFile,
        pub game: GameFile,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct TerminalFile {
        pub id: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub x: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub y: Option<f64>,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct CarrierFile {
        pub id: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub depot: Option<super::Point>,
        pub fee: f64,
        pub vehicles: Vec<VehicleFile>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub distance_matrix: Option<Vec<Vec<f64>>>,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct VehicleFile {
        pub capacity: u32,
        pub initial_cost: f64,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct CostFile {
        pub price_per_km: f64,
        pub misc_cost_per_visit: f64,
        pub speed_kmh: f64,
        pub unload_minutes_per_customer: f64,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct GameFile {
        pub num_customers: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub terminal_probs: Option<Vec<f64>>,
        pub decision_rate: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub epsilon_sweep: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub stability_threshold: Option<f64>,
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

impl Scenario {
    fn from_file(raw: file::ScenarioFile) -> Result<Scenario> {
        let num_terminals = raw.terminals.len();
        let terminals = raw
            .terminals
            .into_iter()
            .map(|t| {
                let location = match (t.x, t.y) {
                    (Some(x), Some(y)) => Some(Point { x, y }),
                    (None, None) => None,
                    _ => {
                        return Err(invalid(format!(
                            "terminal {} must have both x and y or neither",
                            t.id
                        )))
                    }
                };
                Ok(Terminal { id: t.id, location })
            })
            .collect::<Result<Vec<_>>>()?;

        let carriers = raw
            .carriers
            .into_iter()
            .map(|c| Carrier {
                id: c.id,
                depot: c.depot,
                fee: c.fee,
                vehicles: c
                    .vehicles
                    .into_iter()
                    .map(|v| Vehicle {
                        capacity: v.capacity,
                        initial_cost: v.initial_cost,
                    })
                    .collect(),
                distance_override: c.distance_matrix,
            })
            .collect();

        let uniform = vec![1.0 / num_terminals.max(1) as f64; num_terminals];
        let game = GameParams {
            num_customers: raw.game.num_customers,
            terminal_probs: raw.game.terminal_probs.unwrap_or(uniform),
            decision_rate: raw.game.decision_rate,
            epsilon_sweep: raw
                .game
                .epsilon_sweep
                .unwrap_or_else(|| DEFAULT_EPSILON_SWEEP.to_vec()),
            stability_threshold: raw
                .game
                .stability_threshold
                .unwrap_or(DEFAULT_STABILITY_THRESHOLD),
        };

        let scenario = Scenario {
            terminals,
            carriers,
            cost: CostParams {
                price_per_km: raw.cost.price_per_km,
                misc_cost_per_visit: raw.cost.misc_cost_per_visit,
                speed_kmh: raw.cost.speed_kmh,
                unload_minutes_per_customer: raw.cost.unload_minutes_per_customer,
            },
            game,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    fn to_file(&self) -> file::ScenarioFile {
        file::ScenarioFile {
            terminals: self
                .terminals
                .iter()
                .map(|t| file::TerminalFile {
                    id: t.id,
                    x: t.location.map(|p| p.x),
                    y: t.location.map(|p| p.y),
                })
                .collect(),
            carriers: self
                .carriers
                .iter()
                .map(|c| file::CarrierFile {
                    id: c.id,
                    depot: c.depot,
                    fee: c.fee,
                    vehicles: c
                        .vehicles
                        .iter()
                        .map(|v| file::VehicleFile {
                            capacity: v.capacity,
                            initial_cost: v.initial_cost,
                        })
                        .collect(),
                    distance_matrix: c.distance_override.clone(),
                })
                .collect(),
            cost: file::CostFile {
                price_per_km: self.cost.price_per_km,
                misc_cost_per_visit: self.cost.misc_cost_per_visit,
                speed_kmh: self.cost.speed_kmh,
                unload_minutes_per_customer: self.cost.unload_minutes_per_customer,
            },
            game: file::GameFile {
                num_customers: self.game.num_customers,
                terminal_probs: Some(self.game.terminal_probs.clone()),
                decision_rate: self.game.decision_rate,
                epsilon_sweep: Some(self.game.epsilon_sweep.clone()),
                stability_threshold: Some(self.game.stability_threshold),
            },
        }
    }

    /// Parse and validate a scenario from a JSON string.
    pub fn from_json(text: &str) -> Result<Scenario> {
        let raw: file::ScenarioFile = serde_json::from_str(text)?;
        Scenario::from_file(raw)
    }

    /// Serialize to the JSON file format. Defaults are written out
    /// explicitly, so load(save(s)) == s.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("scenario serialization")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn num_terminals(&self) -> usize {
        self.terminals.len()
    }

    pub fn num_carriers(&self) -> usize {
        self.carriers.len()
    }

    pub fn carrier(&self, id: u32) -> Result<&Carrier> {
        self.carriers
            .iter()
            .find(|c| c.id == id)
            .ok_or(Error::UnknownCarrier(id))
    }

    /// Checks every invariant, reporting the first violated one.
    pub fn validate(&self) -> Result<()> {
        let t = self.terminals.len();
        if t == 0 {
            return Err(invalid("at least one terminal is required"));
        }
        if self.carriers.is_empty() {
            return Err(invalid("at least one carrier is required"));
        }
        for (i, term) in self.terminals.iter().enumerate() {
            if term.id != i as u32 + 1 {
                return Err(invalid(format!(
                    "terminal ids must be contiguous from 1 (position {} has id {})",
                    i + 1,
                    term.id
                )));
            }
            if let Some(p) = term.location {
                if !p.x.is_finite() || !p.y.is_finite() {
                    return Err(invalid(format!("terminal {} has non-finite coordinates", term.id)));
                }
            }
        }
        for (i, c) in self.carriers.iter().enumerate() {
            if c.id != i as u32 + 1 {
                return Err(invalid(format!(
                    "carrier ids must be contiguous from 1 (position {} has id {})",
                    i + 1,
                    c.id
                )));
            }
            if c.vehicles.is_empty() {
                return Err(invalid(format!("carrier {} has no vehicles", c.id)));
            }
            if !(c.fee >= 0.0 && c.fee.is_finite()) {
                return Err(invalid(format!("carrier {} fee must be nonnegative", c.id)));
            }
            for (vi, v) in c.vehicles.iter().enumerate() {
                if v.capacity < 1 {
                    return Err(invalid(format!(
                        "carrier {} vehicle {} capacity must be at least 1",
                        c.id, vi
                    )));
                }
                if !(v.initial_cost >= 0.0 && v.initial_cost.is_finite()) {
                    return Err(invalid(format!(
                        "carrier {} vehicle {} initial_cost must be nonnegative",
                        c.id, vi
                    )));
                }
            }
            if let Some(m) = &c.distance_override {
                validate_override(c.id, m, t)?;
            } else {
                if c.depot.is_none() {
                    return Err(invalid(format!(
                        "carrier {} needs either a depot location or a distance_matrix",
                        c.id
                    )));
                }
                let depot = c.depot.unwrap();
                if !depot.x.is_finite() || !depot.y.is_finite() {
                    return Err(invalid(format!("carrier {} depot has non-finite coordinates", c.id)));
                }
                if let Some(missing) = self.terminals.iter().find(|t| t.location.is_none()) {
                    return Err(invalid(format!(
                        "carrier {} uses coordinates but terminal {} has no location",
                        c.id, missing.id
                    )));
                }
            }
        }
        let cp = &self.cost;
        for (name, value) in [
            ("price_per_km", cp.price_per_km),
            ("misc_cost_per_visit", cp.misc_cost_per_visit),
            ("unload_minutes_per_customer", cp.unload_minutes_per_customer),
        ] {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(invalid(format!("{name} must be nonnegative")));
            }
        }
        if !(cp.speed_kmh > 0.0 && cp.speed_kmh.is_finite()) {
            return Err(invalid("speed_kmh must be positive"));
        }

        let g = &self.game;
        if g.terminal_probs.len() != t {
            return Err(invalid(format!(
                "terminal_probs must have one entry per terminal ({} expected, got {})",
                t,
                g.terminal_probs.len()
            )));
        }
        if g.terminal_probs.iter().any(|p| *p < 0.0 || !p.is_finite()) {
            return Err(invalid("terminal_probs entries must be nonnegative"));
        }
        let sum: f64 = g.terminal_probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(invalid(format!("terminal_probs must sum to 1 (got {sum})")));
        }
        if !(g.decision_rate > 0.0 && g.decision_rate.is_finite()) {
            return Err(invalid("decision_rate must be positive"));
        }
        if g.epsilon_sweep.is_empty() {
            return Err(invalid("epsilon_sweep must be nonempty"));
        }
        if g.epsilon_sweep.iter().any(|e| *e <= 0.0 || !e.is_finite()) {
            return Err(invalid("epsilon_sweep entries must be positive"));
        }
        for w in g.epsilon_sweep.windows(2) {
            if w[1] >= w[0] {
                return Err(invalid("epsilon_sweep must be strictly decreasing"));
            }
        }
        if !(0.0..=1.0).contains(&g.stability_threshold) {
            return Err(invalid("stability_threshold must be a probability"));
        }
        Ok(())
    }
}

fn validate_override(carrier_id: u32, m: &[Vec<f64>], num_terminals: usize) -> Result<()> {
    let n = num_terminals + 1;
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(invalid(format!(
            "carrier {carrier_id} distance_matrix must be {n}x{n} over depot and terminals"
        )));
    }
    for (i, row) in m.iter().enumerate() {
        if row[i] != 0.0 {
            return Err(invalid(format!(
                "carrier {carrier_id} distance_matrix diagonal must be zero"
            )));
        }
        for (j, &v) in row.iter().enumerate() {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(format!(
                    "carrier {carrier_id} distance_matrix entries must be nonnegative"
                )));
            }
            if v != m[j][i] {
                return Err(invalid(format!(
                    "carrier {carrier_id} distance_matrix must be symmetric"
                )));
            }
        }
    }
    Ok(())
}

/// Load, parse, and validate a scenario file.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Scenario::from_json(&text)
}

/// Distance matrix for one carrier: the explicit override if present,
/// otherwise Euclidean distances between depot and terminal coordinates.
pub fn distance_matrix(scenario: &Scenario, carrier_id: u32) -> Result<DistanceMatrix> {
    let carrier = scenario.carrier(carrier_id)?;
    if let Some(rows) = &carrier.distance_override {
        return Ok(DistanceMatrix::from_rows(rows));
    }
    let mut points = Vec::with_capacity(scenario.num_terminals() + 1);
    points.push(carrier.depot.expect("validated: depot present"));
    for t in &scenario.terminals {
        points.push(t.location.expect("validated: terminal located"));
    }
    let n = points.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let dist = (points[i].x - points[j].x).hypot(points[i].y - points[j].y);
            d[i * n + j] = dist;
            d[j * n + i] = dist;
        }
    }
    Ok(DistanceMatrix { nodes: n, d })
}

/// Returns a copy of the scenario with the carrier's depot moved `dx`
/// kilometers east. Requires the carrier to be in coordinate mode.
pub fn shift_carrier(scenario: &Scenario, carrier_id: u32, dx: f64) -> Result<Scenario> {
    let carrier = scenario.carrier(carrier_id)?;
    if carrier.distance_override.is_some() {
        return Err(Error::CoordinateModeRequired(carrier_id));
    }
    let mut shifted = scenario.clone();
    let c = shifted
        .carriers
        .iter_mut()
        .find(|c| c.id == carrier_id)
        .expect("carrier exists");
    let depot = c.depot.as_mut().expect("validated: depot present");
    depot.x += dx;
    Ok(shifted)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn minimal_json() -> String {
        r#"{
            "terminals": [{"id": 1, "x": 3.0, "y": 4.0}],
            "carriers": [{"id": 1, "depot": {"x": 0.0, "y": 0.0}, "fee": 0.0,
                          "vehicles": [{"capacity": 5, "initial_cost": 0.0}]}],
            "cost": {"price_per_km": 1.0, "misc_cost_per_visit": 0.0,
                     "speed_kmh": 40.0, "unload_minutes_per_customer": 5.0},
            "game": {"num_customers": 4, "decision_rate": 1.0}
        }"#
        .to_string()
    }

    pub(crate) fn reference_path() -> std::path::PathBuf {
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/reference.json")
    }

    #[test]
    fn minimal_scenario_loads_with_defaults() {
        let s = Scenario::from_json(&minimal_json()).unwrap();
        assert_eq!(s.num_terminals(), 1);
        assert_eq!(s.num_carriers(), 1);
        assert_eq!(s.game.terminal_probs, vec![1.0]);
        assert_eq!(s.game.epsilon_sweep, DEFAULT_EPSILON_SWEEP.to_vec());
        assert_eq!(s.game.stability_threshold, DEFAULT_STABILITY_THRESHOLD);
    }

    #[test]
    fn bad_probability_sum_is_rejected() {
        let text = minimal_json().replace(
            "\"num_customers\": 4",
            "\"terminal_probs\": [0.9], \"num_customers\": 4",
        );
        let err = Scenario::from_json(&text).unwrap_err();
        assert!(err.to_string().contains("terminal_probs must sum to 1"), "{err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = minimal_json().replace("\"fee\": 0.0", "\"fee\": 0.0, \"color\": \"red\"");
        assert!(matches!(Scenario::from_json(&text), Err(Error::Parse(_))));
    }

    #[test]
    fn reference_fixture_matches_expected_shape() {
        let s = load_scenario(reference_path()).unwrap();
        assert_eq!(s.num_carriers(), 2);
        assert_eq!(s.num_terminals(), 3);
        assert_eq!(s.game.num_customers, 16);
        assert_eq!(s.carriers[0].vehicles[0].capacity, 20);
        assert_eq!(s.carriers[1].vehicles[0].capacity, 30);
    }

    #[test]
    fn euclidean_distances_from_coordinates() {
        let s = Scenario::from_json(&minimal_json()).unwrap();
        let d = distance_matrix(&s, 1).unwrap();
        assert_eq!(d.get(0, 1), 5.0);
        assert_eq!(d.get(1, 0), 5.0);
        assert_eq!(d.get(0, 0), 0.0);
    }

    #[test]
    fn coincident_points_have_zero_distance() {
        let text = minimal_json().replace("\"x\": 3.0, \"y\": 4.0", "\"x\": 0.0, \"y\": 0.0");
        let s = Scenario::from_json(&text).unwrap();
        let d = distance_matrix(&s, 1).unwrap();
        assert_eq!(d.get(0, 1), 0.0);
    }

    #[test]
    fn override_matrix_is_returned_verbatim() {
        let s = load_scenario(reference_path()).unwrap();
        let d = distance_matrix(&s, 1).unwrap();
        for (i, j, want) in [
            (0, 1, 0.8),
            (0, 2, 2.875),
            (0, 3, 3.15),
            (1, 2, 5.275),
            (1, 3, 5.55),
            (2, 3, 11.775),
        ] {
            assert_eq!(d.get(i, j), want);
            assert_eq!(d.get(j, i), want);
        }
    }

    #[test]
    fn distance_matrix_is_symmetric_with_zero_diagonal() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let t: usize = rng.random_range(1..6);
            let s = random_euclidean(&mut rng, t);
            let d = distance_matrix(&s, 1).unwrap();
            for i in 0..d.nodes() {
                assert_eq!(d.get(i, i), 0.0);
                for j in 0..d.nodes() {
                    assert_eq!(d.get(i, j), d.get(j, i));
                }
            }
        }
    }

    #[test]
    fn euclidean_matrices_satisfy_triangle_inequality() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let t: usize = rng.random_range(2..6);
            let s = random_euclidean(&mut rng, t);
            let d = distance_matrix(&s, 1).unwrap();
            let n = d.nodes();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        assert!(d.get(i, k) <= d.get(i, j) + d.get(j, k) + 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn save_load_round_trip_is_identity() {
        let fixture = load_scenario(reference_path()).unwrap();
        let reloaded = Scenario::from_json(&fixture.to_json()).unwrap();
        assert_eq!(fixture, reloaded);

        let minimal = Scenario::from_json(&minimal_json()).unwrap();
        let reloaded = Scenario::from_json(&minimal.to_json()).unwrap();
        assert_eq!(minimal, reloaded);
    }

    #[test]
    fn shift_by_zero_is_identity() {
        let s = Scenario::from_json(&minimal_json()).unwrap();
        assert_eq!(shift_carrier(&s, 1, 0.0).unwrap(), s);
    }

    #[test]
    fn shift_moves_only_the_depot_x() {
        let mut s = Scenario::from_json(&minimal_json()).unwrap();
        s.carriers[0].depot = Some(Point { x: 1.0, y: 1.0 });
        let shifted = shift_carrier(&s, 1, 2.0).unwrap();
        assert_eq!(shifted.carriers[0].depot, Some(Point { x: 3.0, y: 1.0 }));
        assert_eq!(shifted.terminals, s.terminals);
    }

    #[test]
    fn shifts_compose_additively() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let s = Scenario::from_json(&minimal_json()).unwrap();
        for _ in 0..20 {
            let a: f64 = rng.random_range(-5.0..5.0);
            let b: f64 = rng.random_range(-5.0..5.0);
            let two_steps = shift_carrier(&shift_carrier(&s, 1, a).unwrap(), 1, b).unwrap();
            let one_step = shift_carrier(&s, 1, a + b).unwrap();
            let x2 = two_steps.carriers[0].depot.unwrap().x;
            let x1 = one_step.carriers[0].depot.unwrap().x;
            assert!((x2 - x1).abs() < 1e-12);
        }
    }

    #[test]
    fn shifting_an_override_carrier_fails() {
        let s = load_scenario(reference_path()).unwrap();
        assert!(matches!(
            shift_carrier(&s, 2, 1.0),
            Err(Error::CoordinateModeRequired(2))
        ));
    }

    pub(crate) fn random_euclidean(rng: &mut rand_chacha::ChaCha8Rng, t: usize) -> Scenario {
        use rand::Rng;
        let terminals = (1..=t as u32)
            .map(|id| Terminal {
                id,
                location: Some(Point {
                    x: rng.random_range(-10.0..10.0),
                    y: rng.random_range(-10.0..10.0),
                }),
            })
            .collect();
        Scenario {
            terminals,
            carriers: vec![Carrier {
                id: 1,
                depot: Some(Point {
                    x: rng.random_range(-10.0..10.0),
                    y: rng.random_range(-10.0..10.0),
                }),
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
            game: GameParams {
                num_customers: 4,
                terminal_probs: vec![1.0 / t as f64; t],
                decision_rate: 1.0,
                epsilon_sweep: DEFAULT_EPSILON_SWEEP.to_vec(),
                stability_threshold: DEFAULT_STABILITY_THRESHOLD,
            },
        }
    }
}
