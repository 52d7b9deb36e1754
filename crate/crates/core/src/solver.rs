//! The solve loop: message passing interleaved with separation rounds and
//! primal rounding.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::factors::FactorGraph;
use crate::instance::{EdgeLabeling, MulticutInstance};
use crate::message_passing::{
    compute_factor_order, edge_receive_sweep, edge_send_sweep, run_iteration, FactorOrder,
};
use crate::rounding::round_solution;
use crate::separation::{
    attach_odd_wheel, separate_cycles, separate_odd_wheels, triangulate_cycle,
};

/// Gap below which a solution counts as certified optimal.
pub const OPTIMALITY_GAP: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Tighten {
    Cycles,
    #[default]
    CyclesAndOddWheels,
}

impl Tighten {
    pub fn odd_wheels(self) -> bool {
        self == Tighten::CyclesAndOddWheels
    }
}

impl FromStr for Tighten {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycles" => Ok(Tighten::Cycles),
            "cycles+oddwheels" => Ok(Tighten::CyclesAndOddWheels),
            other => Err(Error::Config(format!(
                "unknown tighten mode {other:?}, expected cycles or cycles+oddwheels"
            ))),
        }
    }
}

impl fmt::Display for Tighten {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tighten::Cycles => "cycles",
            Tighten::CyclesAndOddWheels => "cycles+oddwheels",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveConfig {
    pub max_iterations: usize,
    pub separation_interval: usize,
    pub rounding_interval: usize,
    pub epsilon: f64,
    pub tighten: Tighten,
    pub time_limit: Duration,
    /// Reserved; the solver is deterministic and never reads it.
    pub seed: u64,
    /// Odd wheels kept per center node and separation round.
    pub max_wheels_per_center: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            max_iterations: 1000,
            separation_interval: 10,
            rounding_interval: 100,
            epsilon: 1e-4,
            tighten: Tighten::default(),
            time_limit: Duration::from_secs(3600),
            seed: 0,
            max_wheels_per_center: 1,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        if self.separation_interval == 0 || self.rounding_interval == 0 {
            return Err(Error::Config("intervals must be at least 1".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Config(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if self.time_limit.is_zero() {
            return Err(Error::Config("time limit must be positive".into()));
        }
        Ok(())
    }
}

/// One row of the convergence log.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRecord {
    pub wall_time: f64,
    pub iteration: usize,
    /// Best bound seen so far.
    pub lower_bound: f64,
    /// Cheapest multicut found so far.
    pub best_upper_bound: f64,
    pub edges: usize,
    pub triangles: usize,
    pub lollipops: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparationRound {
    pub iteration: usize,
    /// Bound right before the round.
    pub lower_bound_before: f64,
    /// Bound right before the next round, or at termination.
    pub lower_bound_after: f64,
    pub cycles: usize,
    pub wheels: usize,
    pub triangles_added: usize,
    pub lollipops_added: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    IterationLimit,
    TimeLimit,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::IterationLimit => "iteration_limit",
            SolveStatus::TimeLimit => "time_limit",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    /// Labeling of the input instance's edges.
    pub labeling: EdgeLabeling,
    pub upper_bound: f64,
    pub lower_bound: f64,
    pub status: SolveStatus,
    pub iterations: usize,
    pub records: Vec<ConvergenceRecord>,
    pub separation_rounds: Vec<SeparationRound>,
    /// Final decomposition and reparameterized costs.
    pub state: FactorGraph,
}

impl SolveResult {
    pub fn gap(&self) -> f64 {
        self.upper_bound - self.lower_bound
    }
}

/// Adds subproblems for violated cycles (and odd wheels when enabled) on the
/// current costs. Returns the round minus its bounds.
fn separation_round(
    state: &mut FactorGraph,
    config: &SolveConfig,
    iteration: usize,
) -> SeparationRound {
    let (t0, l0) = (state.triangle_count(), state.lollipop_count());
    edge_receive_sweep(state);
    let cycles = separate_cycles(state, config.epsilon);
    let wheels = if config.tighten.odd_wheels() {
        // the wheel test reads triangle tables, so they must hold the edge mass
        edge_send_sweep(state);
        separate_odd_wheels(state, config.epsilon, config.max_wheels_per_center)
    } else {
        Vec::new()
    };
    for c in &cycles {
        triangulate_cycle(state, c);
    }
    for w in &wheels {
        attach_odd_wheel(state, w);
    }
    SeparationRound {
        iteration,
        lower_bound_before: f64::NAN,
        lower_bound_after: f64::NAN,
        cycles: cycles.len(),
        wheels: wheels.len(),
        triangles_added: state.triangle_count() - t0,
        lollipops_added: state.lollipop_count() - l0,
    }
}

fn reorder(state: &FactorGraph) -> Result<FactorOrder> {
    let order = compute_factor_order(state);
    order.validate(state)?;
    Ok(order)
}

pub fn solve(instance: &MulticutInstance, config: &SolveConfig) -> Result<SolveResult> {
    config.validate()?;
    let start = Instant::now();
    let mut state = FactorGraph::new(instance.clone());
    let mut order = reorder(&state)?;
    let mut rounds: Vec<SeparationRound> = Vec::new();

    let first = round_solution(&mut state);
    let (mut labeling, mut upper) = (first.labeling, first.cost);
    let mut lower = state.dual_lower_bound();
    let record = |state: &FactorGraph, iteration, lower, upper| ConvergenceRecord {
        wall_time: start.elapsed().as_secs_f64(),
        iteration,
        lower_bound: lower,
        best_upper_bound: upper,
        edges: state.edge_count(),
        triangles: state.triangle_count(),
        lollipops: state.lollipop_count(),
    };
    let mut records = vec![record(&state, 0, lower, upper)];

    let mut status = SolveStatus::IterationLimit;
    let mut iterations = 0;
    let mut rounded_last = true;
    loop {
        if upper - lower <= OPTIMALITY_GAP {
            status = SolveStatus::Optimal;
            break;
        }
        if iterations >= config.max_iterations {
            break;
        }
        if start.elapsed() >= config.time_limit {
            status = SolveStatus::TimeLimit;
            break;
        }
        iterations += 1;
        let it = iterations;
        lower = lower.max(run_iteration(&mut state, &order));

        if it % config.separation_interval == 0 {
            if let Some(prev) = rounds.last_mut() {
                prev.lower_bound_after = lower;
            }
            let mut round = separation_round(&mut state, config, it);
            round.lower_bound_before = lower;
            order = reorder(&state)?;
            lower = lower.max(state.dual_lower_bound());
            rounds.push(round);
        }

        rounded_last = it % config.rounding_interval == 0;
        if rounded_last {
            let r = round_solution(&mut state);
            if r.cost < upper {
                labeling = r.labeling;
                upper = r.cost;
            }
            lower = lower.max(state.dual_lower_bound());
        }
        records.push(record(&state, it, lower, upper));
    }
    if !rounded_last && status != SolveStatus::Optimal {
        let r = round_solution(&mut state);
        if r.cost < upper {
            labeling = r.labeling;
            upper = r.cost;
        }
        lower = lower.max(state.dual_lower_bound());
        if upper - lower <= OPTIMALITY_GAP {
            status = SolveStatus::Optimal;
        }
        if let Some(last) = records.last_mut() {
            last.lower_bound = lower;
            last.best_upper_bound = upper;
        }
    }
    if let Some(prev) = rounds.last_mut() {
        prev.lower_bound_after = lower;
    }
    if lower > upper + 1e-6 {
        return Err(Error::Internal(format!(
            "lower bound {lower} exceeds upper bound {upper}"
        )));
    }
    Ok(SolveResult {
        labeling,
        upper_bound: upper,
        lower_bound: lower,
        status,
        iterations,
        records,
        separation_rounds: rounds,
        state,
    })
}
