//! Exact capacitated vehicle routing for a single carrier.
//!
//! Routes are closed tours: a vehicle leaves the depot, visits its assigned
//! terminals once each, and returns. The solver is exact at desk scale: a
//! bitmask dynamic program (Held-Karp) finds the optimal visiting order for
//! every terminal subset, and a set-partition dynamic program assigns
//! subsets to vehicles, accounting for per-vehicle initial costs and
//! capacities. [`brute_force_vrp`] is a deliberately naive enumeration kept
//! as an independent oracle for the solver.
//!
//! Cost of a plan is the sum of three terms: initial cost of every used
//! vehicle, price-per-km times the traveled distance, and a fixed
//! miscellaneous cost per visited terminal. Traveling delay is distance
//! over speed, converted to minutes.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenario::{Carrier, CostParams, DistanceMatrix, Scenario};

/// Demand in packages per terminal id. Only positive entries are present.
pub type DemandVector = BTreeMap<u32, u32>;

/// One vehicle's closed tour. The depot is implicit at both ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Route {
    /// Index into the carrier's vehicle list.
    pub vehicle: usize,
    /// Terminal ids in visit order; nonempty and duplicate-free.
    pub sequence: Vec<u32>,
    /// Total packages on board when leaving the depot.
    pub load: u32,
}

/// A complete routing solution for one carrier and demand vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoutePlan {
    pub routes: Vec<Route>,
    pub total_cost: f64,
    pub total_delay: f64,
}

impl RoutePlan {
    pub fn empty() -> Self {
        RoutePlan {
            routes: Vec::new(),
            total_cost: 0.0,
            total_delay: 0.0,
        }
    }

    /// Route sequences concatenated in route order; used for tie-breaking.
    pub fn flattened(&self) -> Vec<u32> {
        self.routes
            .iter()
            .flat_map(|r| r.sequence.iter().copied())
            .collect()
    }

    pub fn vehicles_used(&self) -> usize {
        self.routes.len()
    }
}

/// Round-trip distance of a visit sequence, summed depot-out to depot-return.
fn sequence_distance(dist: &DistanceMatrix, sequence: &[u32]) -> f64 {
    let mut prev = 0usize;
    let mut total = 0.0;
    for &t in sequence {
        total += dist.get(prev, t as usize);
        prev = t as usize;
    }
    total + dist.get(prev, 0)
}

fn check_route_nodes(plan: &RoutePlan, carrier: &Carrier, dist: &DistanceMatrix) -> Result<()> {
    for route in &plan.routes {
        if route.vehicle >= carrier.vehicles.len() {
            return Err(Error::Validation(format!(
                "route references unknown vehicle index {}",
                route.vehicle
            )));
        }
        for &t in &route.sequence {
            if t == 0 || t as usize >= dist.nodes() {
                return Err(Error::UnknownTerminal(t));
            }
        }
    }
    Ok(())
}

/// Total cost of a plan: initial costs of used vehicles, traveling cost
/// over every traversed arc, and the per-visit miscellaneous cost.
pub fn plan_cost(
    plan: &RoutePlan,
    carrier: &Carrier,
    cost: &CostParams,
    dist: &DistanceMatrix,
) -> Result<f64> {
    check_route_nodes(plan, carrier, dist)?;
    let mut total = 0.0;
    for route in &plan.routes {
        total += route_cost(route, carrier, cost, dist);
    }
    Ok(total)
}

fn route_cost(route: &Route, carrier: &Carrier, cost: &CostParams, dist: &DistanceMatrix) -> f64 {
    carrier.vehicles[route.vehicle].initial_cost
        + cost.price_per_km * sequence_distance(dist, &route.sequence)
        + cost.misc_cost_per_visit * route.sequence.len() as f64
}

/// Traveling delay of a plan in minutes: every traversed arc at the uniform
/// speed, including depot-out and depot-return arcs.
pub fn plan_delay(plan: &RoutePlan, cost: &CostParams, dist: &DistanceMatrix) -> Result<f64> {
    for route in &plan.routes {
        for &t in &route.sequence {
            if t == 0 || t as usize >= dist.nodes() {
                return Err(Error::UnknownTerminal(t));
            }
        }
    }
    let mut total = 0.0;
    for route in &plan.routes {
        total += 60.0 * sequence_distance(dist, &route.sequence) / cost.speed_kmh;
    }
    Ok(total)
}

/// Delay in minutes of a single round trip visiting `order` exactly as
/// given, with no optimization.
pub fn fixed_order_delay(scenario: &Scenario, carrier_id: u32, order: &[u32]) -> Result<f64> {
    if order.is_empty() {
        return Err(Error::Validation("visit order must be nonempty".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for &t in order {
        if !seen.insert(t) {
            return Err(Error::Validation(format!("terminal {t} repeated in visit order")));
        }
    }
    let dist = crate::scenario::distance_matrix(scenario, carrier_id)?;
    for &t in order {
        if t == 0 || t as usize >= dist.nodes() {
            return Err(Error::UnknownTerminal(t));
        }
    }
    Ok(60.0 * sequence_distance(&dist, order) / scenario.cost.speed_kmh)
}

// ---------------------------------------------------------------------------
// Exact solver
// ---------------------------------------------------------------------------

/// Optimal closed tour over one terminal subset: canonical visit order and
/// its round-trip distance.
struct SubsetTour {
    sequence: Vec<u32>,
    distance: f64,
}

/// Held-Karp over all subsets of `terms`: `tours[mask]` is the optimal
/// closed tour visiting exactly the terminals whose bits are set.
///
/// The visit order is reconstructed greedily from the DP table and then
/// oriented so the lexicographically smaller direction is kept; the stored
/// distance is recomputed along the canonical order so that all downstream
/// cost arithmetic agrees with [`plan_cost`].
fn optimal_tours(dist: &DistanceMatrix, terms: &[u32]) -> Vec<Option<SubsetTour>> {
    let k = terms.len();
    let full = 1usize << k;
    // g[m * k + i]: cost of a path that starts at terminal i, visits the
    // rest of mask m, and ends back at the depot.
    let mut g = vec![f64::INFINITY; full * k];
    for i in 0..k {
        g[(1 << i) * k + i] = dist.get(terms[i] as usize, 0);
    }
    for m in 1..full {
        if (m & (m - 1)) == 0 {
            continue; // singletons already set
        }
        for i in 0..k {
            if m & (1 << i) == 0 {
                continue;
            }
            let rest = m ^ (1 << i);
            let mut best = f64::INFINITY;
            for j in 0..k {
                if rest & (1 << j) == 0 {
                    continue;
                }
                let cand = dist.get(terms[i] as usize, terms[j] as usize) + g[rest * k + j];
                if cand < best {
                    best = cand;
                }
            }
            g[m * k + i] = best;
        }
    }

    let mut tours: Vec<Option<SubsetTour>> = Vec::with_capacity(full);
    tours.push(None);
    for m in 1..full {
        // First stop: smallest index attaining the optimal closed cost.
        let mut first = usize::MAX;
        let mut best = f64::INFINITY;
        for i in 0..k {
            if m & (1 << i) == 0 {
                continue;
            }
            let cand = dist.get(0, terms[i] as usize) + g[m * k + i];
            if cand < best {
                best = cand;
                first = i;
            }
        }
        // Greedy descent through the DP table; re-finding each argmin
        // reproduces the same float values the table was built from.
        let mut order = vec![first];
        let mut prev = first;
        let mut rem = m ^ (1 << first);
        while rem != 0 {
            let mut next = usize::MAX;
            let mut best_step = f64::INFINITY;
            for j in 0..k {
                if rem & (1 << j) == 0 {
                    continue;
                }
                let cand =
                    dist.get(terms[prev] as usize, terms[j] as usize) + g[rem * k + j];
                if cand < best_step {
                    best_step = cand;
                    next = j;
                }
            }
            order.push(next);
            prev = next;
            rem ^= 1 << next;
        }
        let mut sequence: Vec<u32> = order.into_iter().map(|i| terms[i]).collect();
        canonicalize(&mut sequence);
        let distance = sequence_distance(dist, &sequence);
        tours.push(Some(SubsetTour { sequence, distance }));
    }
    tours
}

/// Keep the lexicographically smaller of a tour and its reversal. Both
/// traverse the same arcs, so this only fixes the reported direction.
fn canonicalize(sequence: &mut [u32]) {
    let reversed_is_smaller = sequence.iter().rev().lt(sequence.iter());
    if reversed_is_smaller {
        sequence.reverse();
    }
}

fn demand_positions(
    scenario: &Scenario,
    demand: &DemandVector,
) -> Result<(Vec<u32>, Vec<u32>)> {
    let t = scenario.num_terminals() as u32;
    let mut terms = Vec::with_capacity(demand.len());
    let mut loads = Vec::with_capacity(demand.len());
    for (&id, &packages) in demand {
        if id == 0 || id > t {
            return Err(Error::UnknownTerminal(id));
        }
        if packages == 0 {
            return Err(Error::Validation(format!(
                "demand for terminal {id} must be at least 1 package"
            )));
        }
        terms.push(id);
        loads.push(packages);
    }
    Ok((terms, loads))
}

fn mask_load(loads: &[u32], mask: usize) -> u32 {
    let mut total = 0;
    for (i, &l) in loads.iter().enumerate() {
        if mask & (1 << i) != 0 {
            total += l;
        }
    }
    total
}

/// Exact bin-packing feasibility: can the demanded loads be split across
/// the fleet without exceeding any capacity?
fn packable(loads: &[u32], capacities: &[u32]) -> bool {
    let full = 1usize << loads.len();
    let load_of: Vec<u32> = (0..full).map(|m| mask_load(loads, m)).collect();
    let mut reachable = vec![false; full];
    reachable[0] = true;
    for &cap in capacities {
        let mut next = reachable.clone();
        for m in 0..full {
            if !reachable[m] {
                continue;
            }
            let free = !m & (full - 1);
            let mut sub = free;
            loop {
                if sub != 0 && load_of[sub] <= cap {
                    next[m | sub] = true;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
        reachable = next;
        if reachable[full - 1] {
            return true;
        }
    }
    reachable[full - 1]
}

/// Candidate value in the partition DP, ordered by cost, then number of
/// vehicles used, then the flattened visit sequence.
#[derive(Clone)]
struct Partial {
    cost: f64,
    used: u32,
    flat: Vec<u32>,
}

impl Partial {
    fn better_than(&self, other: &Partial) -> bool {
        if self.cost != other.cost {
            return self.cost < other.cost;
        }
        if self.used != other.used {
            return self.used < other.used;
        }
        self.flat < other.flat
    }
}

const MAX_EXACT_TERMINALS: usize = 16;

/// Exact minimum-cost routing of `demand` for one carrier.
///
/// Ties are broken deterministically: fewer vehicles used, then the
/// lexicographically smallest flattened visit sequence.
pub fn solve_vrp(scenario: &Scenario, carrier_id: u32, demand: &DemandVector) -> Result<RoutePlan> {
    let carrier = scenario.carrier(carrier_id)?;
    let (terms, loads) = demand_positions(scenario, demand)?;
    if terms.is_empty() {
        return Ok(RoutePlan::empty());
    }
    if terms.len() > MAX_EXACT_TERMINALS {
        return Err(Error::TooLarge(format!(
            "exact solver handles at most {MAX_EXACT_TERMINALS} demanded terminals, got {}",
            terms.len()
        )));
    }
    let capacities: Vec<u32> = carrier.vehicles.iter().map(|v| v.capacity).collect();
    if !packable(&loads, &capacities) {
        return Err(Error::Infeasible(format!(
            "total demand {} cannot be packed into vehicle capacities {:?}",
            loads.iter().sum::<u32>(),
            capacities
        )));
    }
    let dist = crate::scenario::distance_matrix(scenario, carrier_id)?;
    let tours = optimal_tours(&dist, &terms);
    let full = (1usize << terms.len()) - 1;
    assign_subsets(scenario, carrier, &dist, &terms, &loads, &tours, full)
        .ok_or_else(|| Error::Infeasible("no capacity-feasible assignment".into()))
}

/// Set-partition DP over vehicles, processed back to front so the stored
/// flattened sequences compose in vehicle order.
fn assign_subsets(
    scenario: &Scenario,
    carrier: &Carrier,
    dist: &DistanceMatrix,
    terms: &[u32],
    loads: &[u32],
    tours: &[Option<SubsetTour>],
    full: usize,
) -> Option<RoutePlan> {
    let num_vehicles = carrier.vehicles.len();
    let num_masks = full + 1;
    let cost = &scenario.cost;

    let subset_cost = |vehicle: usize, mask: usize| -> f64 {
        carrier.vehicles[vehicle].initial_cost
            + cost.price_per_km * tours[mask].as_ref().expect("nonempty mask").distance
            + cost.misc_cost_per_visit * (mask.count_ones() as f64)
    };

    // dp[v][m]: best completion serving mask m with vehicles v..end.
    let mut dp: Vec<Vec<Option<Partial>>> = vec![vec![None; num_masks]; num_vehicles + 1];
    let mut choice: Vec<Vec<usize>> = vec![vec![usize::MAX; num_masks]; num_vehicles];
    dp[num_vehicles][0] = Some(Partial {
        cost: 0.0,
        used: 0,
        flat: Vec::new(),
    });

    for v in (0..num_vehicles).rev() {
        let cap = carrier.vehicles[v].capacity;
        for m in 0..num_masks {
            let mut best: Option<Partial> = None;
            let mut best_sub = usize::MAX;
            let mut sub = m;
            loop {
                let feasible = sub == 0 || mask_load(loads, sub) <= cap;
                if feasible {
                    if let Some(rest) = dp[v + 1][m ^ sub].as_ref() {
                        let cand = if sub == 0 {
                            rest.clone()
                        } else {
                            let tour = tours[sub].as_ref().expect("nonempty mask");
                            let mut flat =
                                Vec::with_capacity(tour.sequence.len() + rest.flat.len());
                            flat.extend_from_slice(&tour.sequence);
                            flat.extend_from_slice(&rest.flat);
                            Partial {
                                cost: subset_cost(v, sub) + rest.cost,
                                used: rest.used + 1,
                                flat,
                            }
                        };
                        if best.as_ref().is_none_or(|b| cand.better_than(b)) {
                            best = Some(cand);
                            best_sub = sub;
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
            dp[v][m] = best;
            choice[v][m] = best_sub;
        }
    }

    dp[0][full].as_ref()?;
    let mut routes = Vec::new();
    let mut mask = full;
    for (v, chosen) in choice.iter().enumerate() {
        let sub = chosen[mask];
        if sub != 0 && sub != usize::MAX {
            let tour = tours[sub].as_ref().expect("nonempty mask");
            routes.push(Route {
                vehicle: v,
                sequence: tour.sequence.clone(),
                load: mask_load(loads, sub),
            });
            mask ^= sub;
        }
    }
    debug_assert_eq!(mask, 0);
    let _ = terms;

    let mut plan = RoutePlan {
        routes,
        total_cost: 0.0,
        total_delay: 0.0,
    };
    plan.total_cost = plan_cost(&plan, carrier, cost, dist).expect("solver plan is valid");
    plan.total_delay = plan_delay(&plan, cost, dist).expect("solver plan is valid");
    Some(plan)
}

const MAX_BRUTE_TERMINALS: usize = 8;

/// Exhaustive oracle: every assignment of demanded terminals to vehicles,
/// every visit permutation per vehicle. Same tie-breaking as [`solve_vrp`].
pub fn brute_force_vrp(
    scenario: &Scenario,
    carrier_id: u32,
    demand: &DemandVector,
) -> Result<RoutePlan> {
    let carrier = scenario.carrier(carrier_id)?;
    let (terms, loads) = demand_positions(scenario, demand)?;
    if terms.is_empty() {
        return Ok(RoutePlan::empty());
    }
    if terms.len() > MAX_BRUTE_TERMINALS {
        return Err(Error::TooLarge(format!(
            "brute force handles at most {MAX_BRUTE_TERMINALS} demanded terminals, got {}",
            terms.len()
        )));
    }
    let capacities: Vec<u32> = carrier.vehicles.iter().map(|v| v.capacity).collect();
    if !packable(&loads, &capacities) {
        return Err(Error::Infeasible(format!(
            "total demand {} cannot be packed into vehicle capacities {:?}",
            loads.iter().sum::<u32>(),
            capacities
        )));
    }
    let dist = crate::scenario::distance_matrix(scenario, carrier_id)?;
    let num_vehicles = carrier.vehicles.len();

    let mut assignment = vec![0usize; terms.len()];
    let mut best: Option<(Partial, RoutePlan)> = None;
    enumerate_assignments(&mut assignment, 0, num_vehicles, &mut |assignment| {
        let mut groups: Vec<Vec<u32>> = vec![Vec::new(); num_vehicles];
        let mut group_load = vec![0u32; num_vehicles];
        for (pos, &v) in assignment.iter().enumerate() {
            groups[v].push(terms[pos]);
            group_load[v] += loads[pos];
        }
        for v in 0..num_vehicles {
            if group_load[v] > capacities[v] {
                return;
            }
        }
        let mut routes = Vec::new();
        for v in 0..num_vehicles {
            if groups[v].is_empty() {
                continue;
            }
            let (seq, _) = best_permutation(&dist, &groups[v]);
            routes.push(Route {
                vehicle: v,
                sequence: seq,
                load: group_load[v],
            });
        }
        let mut plan = RoutePlan {
            routes,
            total_cost: 0.0,
            total_delay: 0.0,
        };
        plan.total_cost =
            plan_cost(&plan, carrier, &scenario.cost, &dist).expect("enumerated plan is valid");
        plan.total_delay =
            plan_delay(&plan, &scenario.cost, &dist).expect("enumerated plan is valid");
        let cand = Partial {
            cost: plan.total_cost,
            used: plan.vehicles_used() as u32,
            flat: plan.flattened(),
        };
        if best.as_ref().is_none_or(|(b, _)| cand.better_than(b)) {
            best = Some((cand, plan));
        }
    });
    Ok(best.expect("packable instance has at least one plan").1)
}

fn enumerate_assignments(
    assignment: &mut [usize],
    pos: usize,
    num_vehicles: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if pos == assignment.len() {
        visit(assignment);
        return;
    }
    for v in 0..num_vehicles {
        assignment[pos] = v;
        enumerate_assignments(assignment, pos + 1, num_vehicles, visit);
    }
}

/// Cheapest canonical visit order of a terminal group, by full enumeration.
fn best_permutation(dist: &DistanceMatrix, group: &[u32]) -> (Vec<u32>, f64) {
    let mut best_seq: Option<Vec<u32>> = None;
    let mut best_dist = f64::INFINITY;
    for perm in group.iter().copied().permutations(group.len()) {
        let mut seq = perm;
        canonicalize(&mut seq);
        let d = sequence_distance(dist, &seq);
        let better = d < best_dist
            || (d == best_dist && best_seq.as_ref().is_none_or(|b| seq < *b));
        if better {
            best_dist = d;
            best_seq = Some(seq);
        }
    }
    (best_seq.expect("nonempty group"), best_dist)
}

// ---------------------------------------------------------------------------
// Independent constraint checker
// ---------------------------------------------------------------------------

/// Verifies a plan against the routing constraints from first principles:
/// each demanded terminal visited exactly once by exactly one vehicle, no
/// undemanded visits, one route per vehicle, loads within capacity at every
/// prefix, and the cost/delay fields consistent with the evaluators.
pub fn check_plan(
    plan: &RoutePlan,
    scenario: &Scenario,
    carrier_id: u32,
    demand: &DemandVector,
) -> std::result::Result<(), String> {
    let carrier = scenario.carrier(carrier_id).map_err(|e| e.to_string())?;
    let dist = crate::scenario::distance_matrix(scenario, carrier_id).map_err(|e| e.to_string())?;

    if plan.routes.len() > carrier.vehicles.len() {
        return Err(format!(
            "{} routes exceed the {} available vehicles",
            plan.routes.len(),
            carrier.vehicles.len()
        ));
    }
    let mut vehicles_seen = std::collections::BTreeSet::new();
    let mut visit_count: BTreeMap<u32, u32> = BTreeMap::new();
    for route in &plan.routes {
        if route.vehicle >= carrier.vehicles.len() {
            return Err(format!("route references unknown vehicle {}", route.vehicle));
        }
        if !vehicles_seen.insert(route.vehicle) {
            return Err(format!("vehicle {} has more than one route", route.vehicle));
        }
        if route.sequence.is_empty() {
            return Err(format!("vehicle {} has an empty route", route.vehicle));
        }
        let cap = carrier.vehicles[route.vehicle].capacity;
        let mut prefix = 0u32;
        let mut seen = std::collections::BTreeSet::new();
        for &t in &route.sequence {
            if !seen.insert(t) {
                return Err(format!("terminal {t} visited twice on one route"));
            }
            let packages = *demand
                .get(&t)
                .ok_or_else(|| format!("terminal {t} visited without demand"))?;
            prefix += packages;
            if prefix > cap {
                return Err(format!(
                    "cumulative load {prefix} exceeds capacity {cap} on vehicle {}",
                    route.vehicle
                ));
            }
            *visit_count.entry(t).or_insert(0) += 1;
        }
        let load: u32 = route.sequence.iter().map(|t| demand[t]).sum();
        if route.load != load {
            return Err(format!(
                "route load {} does not match demand sum {}",
                route.load, load
            ));
        }
    }
    for (&t, &packages) in demand {
        if packages > 0 && visit_count.get(&t).copied().unwrap_or(0) != 1 {
            return Err(format!("terminal {t} must be visited exactly once"));
        }
    }
    let cost = plan_cost(plan, carrier, &scenario.cost, &dist).map_err(|e| e.to_string())?;
    if cost != plan.total_cost {
        return Err(format!(
            "total_cost {} does not match evaluated cost {}",
            plan.total_cost, cost
        ));
    }
    let delay = plan_delay(plan, &scenario.cost, &dist).map_err(|e| e.to_string())?;
    if delay != plan.total_delay {
        return Err(format!(
            "total_delay {} does not match evaluated delay {}",
            plan.total_delay, delay
        ));
    }
    Ok(())
}
