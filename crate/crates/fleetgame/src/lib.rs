//! Exact truck routing and carrier selection for shared less-than-truckload
//! delivery.
//!
//! Given a scenario with carriers, terminals, and a customer population,
//! this crate answers three connected questions:
//!
//! - what is a carrier's cheapest way to deliver a given set of packages
//!   ([`vrp`]: an exact capacitated vehicle routing solver);
//! - how long does delivery take on average when `n` customers with random
//!   destinations choose the carrier ([`expectation`]);
//! - how does a population of customers split across carriers when each one
//!   keeps switching toward lower fees and delays, with a small rate of
//!   irrational switches ([`game`]: a perturbed continuous-time Markov
//!   chain whose stationary distribution reveals the stochastically stable
//!   outcomes).
//!
//! The [`cli`] module packages these into experiment commands; the
//! `fleetgame` binary is a thin wrapper around it. The `examples/`
//! directory has one runnable example per capability, driven by the
//! scenario files under `scenarios/`.
//!
//! ```no_run
//! let scenario = fleetgame::load_scenario("scenarios/reference.json")?;
//! let report = fleetgame::game::stable_states(&scenario)?;
//! for state in &report.stable {
//!     println!("stable split: {state}");
//! }
//! # Ok::<(), fleetgame::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod expectation;
pub mod game;
pub mod scenario;
pub mod vrp;

pub use error::{Error, Result};
pub use expectation::DelayTable;
pub use game::{PopulationState, StabilityReport};
pub use scenario::{load_scenario, Scenario};
pub use vrp::{DemandVector, RoutePlan};
