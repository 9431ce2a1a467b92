//! Quadratic multiple knapsack problem with heterogeneous profits.
//!
//! Items are placed into knapsacks subject to weight capacities. Placing
//! item `i` into knapsack `u` earns `p[u][i]`; placing both `i` and `j` into
//! the same knapsack `u` additionally earns the joint profit `pj[u][i][j]`.
//! Unlike the classic problem, both profit kinds depend on the knapsack.
//! Each unordered pair in a knapsack is counted once.

mod baselines;
mod exhaustive;
mod greedy;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use baselines::{assign_random, assign_rr_block, assign_rr_profits, assign_rr_simple};
pub use exhaustive::{exhaustive_solve, MAX_ENUMERATION};
pub use greedy::{greedy_construct, greedy_construct_traced, GreedyStep};

/// An immutable problem instance. Profits may be negative.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct Instance {
    weights: Vec<f64>,
    capacities: Vec<f64>,
    profits: Vec<Vec<f64>>,
    joint_profits: Vec<Vec<Vec<f64>>>,
}

/// Serialized form of [`Instance`].
#[derive(Serialize, Deserialize)]
struct RawInstance {
    weights: Vec<f64>,
    capacities: Vec<f64>,
    /// `profits[u][i]`
    profits: Vec<Vec<f64>>,
    /// `joint_profits[u][i][j]`, symmetric in `i, j`
    joint_profits: Vec<Vec<Vec<f64>>>,
}

impl TryFrom<RawInstance> for Instance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Self> {
        Instance::new(raw.weights, raw.capacities, raw.profits, raw.joint_profits)
    }
}

impl From<Instance> for RawInstance {
    fn from(i: Instance) -> Self {
        RawInstance {
            weights: i.weights,
            capacities: i.capacities,
            profits: i.profits,
            joint_profits: i.joint_profits,
        }
    }
}

fn malformed(msg: String) -> Error {
    Error::MalformedInstance(msg)
}

impl Instance {
    /// `profits` is `K x N` and `joint_profits` is `K x N x N`, indexed by
    /// knapsack first. Diagonal joint entries are ignored.
    pub fn new(
        weights: Vec<f64>,
        capacities: Vec<f64>,
        profits: Vec<Vec<f64>>,
        joint_profits: Vec<Vec<Vec<f64>>>,
    ) -> Result<Self> {
        let n = weights.len();
        let k = capacities.len();
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w >= 0.0)) {
            return Err(malformed(format!(
                "weights[{i}] = {w} is not a finite non-negative number"
            )));
        }
        if let Some((u, c)) = capacities
            .iter()
            .enumerate()
            .find(|(_, c)| !(c.is_finite() && **c >= 0.0))
        {
            return Err(malformed(format!(
                "capacities[{u}] = {c} is not a finite non-negative number"
            )));
        }
        if profits.len() != k {
            return Err(malformed(format!("profits has {} rows, expected {k}", profits.len())));
        }
        if joint_profits.len() != k {
            return Err(malformed(format!(
                "joint_profits has {} rows, expected {k}",
                joint_profits.len()
            )));
        }
        for u in 0..k {
            if profits[u].len() != n {
                return Err(malformed(format!(
                    "profits[{u}] has {} entries, expected {n}",
                    profits[u].len()
                )));
            }
            if let Some(i) = profits[u].iter().position(|p| !p.is_finite()) {
                return Err(malformed(format!("profits[{u}][{i}] is not finite")));
            }
            if joint_profits[u].len() != n {
                return Err(malformed(format!(
                    "joint_profits[{u}] has {} rows, expected {n}",
                    joint_profits[u].len()
                )));
            }
            for i in 0..n {
                if joint_profits[u][i].len() != n {
                    return Err(malformed(format!(
                        "joint_profits[{u}][{i}] has {} entries, expected {n}",
                        joint_profits[u][i].len()
                    )));
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    let (a, b) = (joint_profits[u][i][j], joint_profits[u][j][i]);
                    if !a.is_finite() || a != b {
                        return Err(malformed(format!(
                            "joint_profits[{u}] not symmetric and finite at ({i}, {j}): {a} vs {b}"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            weights,
            capacities,
            profits,
            joint_profits,
        })
    }

    /// Unit weights and capacity two for every knapsack.
    pub fn frequency_assignment(profits: Vec<Vec<f64>>, joint_profits: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let k = profits.len();
        let n = profits.first().map_or(0, Vec::len);
        Self::new(vec![1.0; n], vec![2.0; k], profits, joint_profits)
    }

    pub fn is_frequency_assignment(&self) -> bool {
        self.weights.iter().all(|&w| w == 1.0) && self.capacities.iter().all(|&c| c == 2.0)
    }

    pub fn n_items(&self) -> usize {
        self.weights.len()
    }

    pub fn n_knapsacks(&self) -> usize {
        self.capacities.len()
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn capacity(&self, u: usize) -> f64 {
        self.capacities[u]
    }

    pub fn profit(&self, u: usize, i: usize) -> f64 {
        self.profits[u][i]
    }

    pub fn joint_profit(&self, u: usize, i: usize, j: usize) -> f64 {
        self.joint_profits[u][i][j]
    }

    fn check_item(&self, i: usize) -> Result<()> {
        if i < self.n_items() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                what: "item",
                index: i,
                size: self.n_items(),
            })
        }
    }

    fn check_knapsack(&self, u: usize) -> Result<()> {
        if u < self.n_knapsacks() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                what: "knapsack",
                index: u,
                size: self.n_knapsacks(),
            })
        }
    }
}

/// Items held by each knapsack, in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub allocation: Vec<Vec<usize>>,
}

impl Assignment {
    pub fn empty(n_knapsacks: usize) -> Self {
        Self {
            allocation: vec![Vec::new(); n_knapsacks],
        }
    }

    pub fn items(&self, u: usize) -> &[usize] {
        &self.allocation[u]
    }

    pub fn n_assigned(&self) -> usize {
        self.allocation.iter().map(Vec::len).sum()
    }

    /// Same allocation with each knapsack's items sorted, for comparisons.
    pub fn normalized(&self) -> Self {
        let mut allocation = self.allocation.clone();
        allocation.iter_mut().for_each(|a| a.sort_unstable());
        Self { allocation }
    }

    fn check_shape(&self, instance: &Instance) -> Result<()> {
        if self.allocation.len() != instance.n_knapsacks() {
            return Err(Error::IndexOutOfRange {
                what: "knapsack",
                index: self.allocation.len().saturating_sub(1).max(instance.n_knapsacks()),
                size: instance.n_knapsacks(),
            });
        }
        self.allocation
            .iter()
            .flatten()
            .try_for_each(|&i| instance.check_item(i))
    }
}

/// Relative slack allowed when comparing summed weights to capacities.
const CAPACITY_EPS: f64 = 1e-9;

fn fits(load: f64, capacity: f64) -> bool {
    load <= capacity + CAPACITY_EPS * capacity.abs().max(1.0)
}

fn violation(instance: &Instance, assignment: &Assignment) -> Option<String> {
    let mut owner = vec![None; instance.n_items()];
    for (u, items) in assignment.allocation.iter().enumerate() {
        for &i in items {
            if let Some(prev) = owner[i].replace(u) {
                return Some(format!("item {i} is held by knapsacks {prev} and {u}"));
            }
        }
        let load: f64 = items.iter().map(|&i| instance.weight(i)).sum();
        if !fits(load, instance.capacity(u)) {
            return Some(format!(
                "knapsack {u} holds weight {load} over capacity {}",
                instance.capacity(u)
            ));
        }
    }
    None
}

/// True iff every item is in at most one knapsack and no capacity is
/// exceeded. Fails only on out-of-range indices or a wrong knapsack count.
pub fn feasible(instance: &Instance, assignment: &Assignment) -> Result<bool> {
    assignment.check_shape(instance)?;
    Ok(violation(instance, assignment).is_none())
}

/// Total profit: item profits plus one joint profit per unordered pair
/// sharing a knapsack.
pub fn objective(instance: &Instance, assignment: &Assignment) -> Result<f64> {
    assignment.check_shape(instance)?;
    if let Some(why) = violation(instance, assignment) {
        return Err(Error::Infeasible(why));
    }
    Ok(assignment
        .allocation
        .iter()
        .enumerate()
        .map(|(u, items)| knapsack_profit(instance, u, items))
        .sum())
}

pub(crate) fn knapsack_profit(instance: &Instance, u: usize, items: &[usize]) -> f64 {
    let mut total = 0.0;
    for (a, &i) in items.iter().enumerate() {
        total += instance.profit(u, i);
        for &j in &items[a + 1..] {
            total += instance.joint_profit(u, i, j);
        }
    }
    total
}

/// Value of adding item `i` to knapsack `u` given the context items,
/// per unit weight. `i` itself is skipped if it appears in `context`.
pub fn value_density(instance: &Instance, u: usize, i: usize, context: &[usize]) -> Result<f64> {
    instance.check_knapsack(u)?;
    instance.check_item(i)?;
    context.iter().try_for_each(|&j| instance.check_item(j))?;
    let w = instance.weight(i);
    if w == 0.0 {
        return Err(Error::ZeroWeight(i));
    }
    Ok(density_unchecked(instance, u, i, context.iter().copied()))
}

pub(crate) fn density_unchecked(
    instance: &Instance,
    u: usize,
    i: usize,
    context: impl IntoIterator<Item = usize>,
) -> f64 {
    let joint: f64 = context
        .into_iter()
        .filter(|&j| j != i)
        .map(|j| instance.joint_profit(u, i, j))
        .sum();
    (instance.profit(u, i) + joint) / instance.weight(i)
}

/// `N x K` matrix of value densities, `get(i, u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueDensityMatrix {
    n_items: usize,
    n_knapsacks: usize,
    values: Vec<f64>,
}

impl ValueDensityMatrix {
    pub fn shape(&self) -> (usize, usize) {
        (self.n_items, self.n_knapsacks)
    }

    pub fn get(&self, i: usize, u: usize) -> f64 {
        self.values[i * self.n_knapsacks + u]
    }

    pub(crate) fn set(&mut self, i: usize, u: usize, v: f64) {
        self.values[i * self.n_knapsacks + u] = v;
    }
}

/// Densities of every item in every knapsack with the same context set.
pub fn value_density_matrix(instance: &Instance, context: &[usize]) -> Result<ValueDensityMatrix> {
    context.iter().try_for_each(|&j| instance.check_item(j))?;
    let (n, k) = (instance.n_items(), instance.n_knapsacks());
    if let Some(i) = (0..n).find(|&i| instance.weight(i) == 0.0) {
        return Err(Error::ZeroWeight(i));
    }
    let mut values = Vec::with_capacity(n * k);
    for i in 0..n {
        for u in 0..k {
            values.push(density_unchecked(instance, u, i, context.iter().copied()));
        }
    }
    Ok(ValueDensityMatrix {
        n_items: n,
        n_knapsacks: k,
        values,
    })
}
