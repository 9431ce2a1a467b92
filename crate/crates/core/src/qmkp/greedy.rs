//! Greedy constructive procedure driven by value densities.

use super::{density_unchecked, fits, value_density_matrix, violation, Assignment, Instance};
use crate::{Error, Result};

/// One assignment made by the greedy procedure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreedyStep {
    pub item: usize,
    pub knapsack: usize,
    /// Density entry that selected this (item, knapsack) combination.
    pub density: f64,
}

/// Completes `initial` greedily. Items already placed in `initial` are
/// never moved.
///
/// The first densities use the whole set of unassigned items as context.
/// Each round sorts all (item, knapsack) densities in descending order
/// (ties: lower item, then lower knapsack) and places the first
/// combination whose item still fits. Afterwards every remaining density is
/// recomputed against the items the knapsack currently holds. The procedure
/// stops when all items are placed or nothing fits anywhere.
pub fn greedy_construct(instance: &Instance, initial: &Assignment) -> Result<Assignment> {
    greedy_construct_traced(instance, initial).map(|(a, _)| a)
}

/// [`greedy_construct`], also returning the sequence of placements.
pub fn greedy_construct_traced(instance: &Instance, initial: &Assignment) -> Result<(Assignment, Vec<GreedyStep>)> {
    initial.check_shape(instance)?;
    if let Some(why) = violation(instance, initial) {
        return Err(Error::Infeasible(format!("initial assignment: {why}")));
    }

    let (n, k) = (instance.n_items(), instance.n_knapsacks());
    let mut assignment = initial.clone();
    let mut remaining: Vec<f64> = (0..k)
        .map(|u| instance.capacity(u) - initial.items(u).iter().map(|&i| instance.weight(i)).sum::<f64>())
        .collect();
    let mut placed = vec![false; n];
    initial.allocation.iter().flatten().for_each(|&i| placed[i] = true);
    let mut unassigned: Vec<usize> = (0..n).filter(|&i| !placed[i]).collect();
    if let Some(&i) = unassigned.iter().find(|&&i| instance.weight(i) == 0.0) {
        return Err(Error::ZeroWeight(i));
    }

    let mut densities = value_density_matrix(instance, &unassigned)?;
    let mut steps = Vec::new();
    let mut ranked: Vec<(f64, usize, usize)> = Vec::with_capacity(unassigned.len() * k);

    while !unassigned.is_empty() {
        ranked.clear();
        for &i in &unassigned {
            for u in 0..k {
                ranked.push((densities.get(i, u), i, u));
            }
        }
        ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

        let Some(&(density, item, knapsack)) = ranked.iter().find(|&&(_, i, u)| fits(instance.weight(i), remaining[u]))
        else {
            break;
        };

        assignment.allocation[knapsack].push(item);
        remaining[knapsack] -= instance.weight(item);
        unassigned.retain(|&i| i != item);
        steps.push(GreedyStep {
            item,
            knapsack,
            density,
        });

        for &i in &unassigned {
            for u in 0..k {
                let held = assignment.allocation[u].iter().copied();
                densities.set(i, u, density_unchecked(instance, u, i, held));
            }
        }
    }

    Ok((assignment, steps))
}
