//! Exhaustive enumeration, the optimality oracle for small instances.

use super::{fits, Assignment, Instance};
use crate::{Error, Result};

/// Largest `(K + 1)^N` accepted by [`exhaustive_solve`].
pub const MAX_ENUMERATION: f64 = 1e7;

/// Returns an optimal assignment by enumerating every allocation.
///
/// Allocations are visited in lexicographic order of the per-item choice
/// vector, where item 0 is most significant and "unassigned" sorts before
/// knapsack 0. The first optimum found is kept.
pub fn exhaustive_solve(instance: &Instance) -> Result<Assignment> {
    let (n, k) = (instance.n_items(), instance.n_knapsacks());
    let space = ((k + 1) as f64).powi(n as i32);
    if space > MAX_ENUMERATION {
        return Err(Error::TooLarge(space));
    }
    let mut search = Search {
        instance,
        current: Assignment::empty(k),
        load: vec![0.0; k],
        best: Assignment::empty(k),
        best_value: 0.0,
    };
    search.visit(0, 0.0);
    Ok(search.best)
}

struct Search<'a> {
    instance: &'a Instance,
    current: Assignment,
    load: Vec<f64>,
    best: Assignment,
    best_value: f64,
}

impl Search<'_> {
    fn visit(&mut self, item: usize, value: f64) {
        if item == self.instance.n_items() {
            if value > self.best_value {
                self.best_value = value;
                self.best = self.current.clone();
            }
            return;
        }
        self.visit(item + 1, value);
        let w = self.instance.weight(item);
        for u in 0..self.instance.n_knapsacks() {
            if !fits(self.load[u] + w, self.instance.capacity(u)) {
                continue;
            }
            let gain = self.instance.profit(u, item)
                + self.current.allocation[u]
                    .iter()
                    .map(|&j| self.instance.joint_profit(u, item, j))
                    .sum::<f64>();
            self.current.allocation[u].push(item);
            self.load[u] += w;
            self.visit(item + 1, value + gain);
            self.load[u] -= w;
            self.current.allocation[u].pop();
        }
    }
}
