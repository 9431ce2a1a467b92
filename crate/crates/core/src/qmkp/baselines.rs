//! Reference assignment schemes for the frequency instantiation (unit
//! weights, two items per knapsack). Items are assumed to be indexed in
//! ascending frequency order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{density_unchecked, Assignment, Instance};
use crate::{Error, Result};

fn require_frequency_instance(instance: &Instance) -> Result<()> {
    if instance.is_frequency_assignment() {
        Ok(())
    } else {
        Err(Error::NotFrequencyInstance)
    }
}

/// Picks `min(2K, N)` distinct items uniformly at random and deals them
/// round-robin, so each knapsack receives two when there are enough items
/// and one per round otherwise.
pub fn assign_random(instance: &Instance, seed: u64) -> Result<Assignment> {
    require_frequency_instance(instance)?;
    let (n, k) = (instance.n_items(), instance.n_knapsacks());
    let mut assignment = Assignment::empty(k);
    if k == 0 {
        return Ok(assignment);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked = rand::seq::index::sample(&mut rng, n, (2 * k).min(n));
    for (slot, item) in picked.iter().enumerate() {
        assignment.allocation[slot % k].push(item);
    }
    Ok(assignment)
}

/// Knapsack `u` gets items `u` and `u + K`.
pub fn assign_rr_simple(instance: &Instance) -> Result<Assignment> {
    require_frequency_instance(instance)?;
    let (n, k) = (instance.n_items(), instance.n_knapsacks());
    if n < k {
        return Err(Error::InvalidConfig(format!(
            "rr-simple needs at least as many items as knapsacks ({n} < {k})"
        )));
    }
    Ok(Assignment {
        allocation: (0..k)
            .map(|u| [u, u + k].into_iter().filter(|&i| i < n).collect())
            .collect(),
    })
}

/// Knapsack `u` gets the adjacent items `2u` and `2u + 1`.
pub fn assign_rr_block(instance: &Instance) -> Result<Assignment> {
    require_frequency_instance(instance)?;
    let (n, k) = (instance.n_items(), instance.n_knapsacks());
    Ok(Assignment {
        allocation: (0..k)
            .map(|u| [2 * u, 2 * u + 1].into_iter().filter(|&i| i < n).collect())
            .collect(),
    })
}

/// Two rounds of turns in knapsack order. On its turn a knapsack takes the
/// free item with the highest value density given what it already holds
/// (ties: lower item index).
pub fn assign_rr_profits(instance: &Instance) -> Result<Assignment> {
    require_frequency_instance(instance)?;
    let (n, k) = (instance.n_items(), instance.n_knapsacks());
    let mut assignment = Assignment::empty(k);
    let mut free = vec![true; n];
    for _round in 0..2 {
        for u in 0..k {
            let held = &assignment.allocation[u];
            let best = (0..n)
                .filter(|&i| free[i])
                .map(|i| (i, density_unchecked(instance, u, i, held.iter().copied())))
                .fold(None, |best: Option<(usize, f64)>, (i, v)| match best {
                    Some((_, bv)) if bv >= v => best,
                    _ => Some((i, v)),
                });
            let Some((item, _)) = best else {
                return Ok(assignment);
            };
            free[item] = false;
            assignment.allocation[u].push(item);
        }
    }
    Ok(assignment)
}
