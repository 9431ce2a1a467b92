//! Per-user profit tables for the frequency assignment knapsack.
//!
//! A user holding a single frequency gets its single-carrier worst case at
//! full transmit power. A user holding two frequencies gets the worst case
//! of the dual-carrier envelope bound, with the power split between the
//! carriers. The joint profit is whatever has to be added to the two single
//! profits to reach that dual-carrier worst case. Over short intervals the
//! dual-carrier envelope stays far above either single-carrier null, so the
//! joint profit is typically positive and dominant.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{CarrierFrequency, FrequencyPair, PhysicalConstants, SceneGeometry, TwoRayLink};
use crate::qmkp::Instance;
use crate::worstcase::{worst_case_pair, worst_case_single, DistanceInterval};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UserProfile {
    /// Receiver height, m.
    pub h_rx: f64,
    pub interval: DistanceInterval,
}

impl UserProfile {
    pub fn new(h_rx: f64, d_min: f64, d_max: f64) -> Result<Self> {
        if !(h_rx.is_finite() && h_rx > 0.0) {
            return Err(Error::InvalidHeight(h_rx));
        }
        Ok(Self {
            h_rx,
            interval: DistanceInterval::new(d_min, d_max)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    /// Transmitter height, m.
    pub h_tx: f64,
    /// Total transmit power per user, W.
    pub tx_power: f64,
    #[serde(default)]
    pub constants: PhysicalConstants,
}

impl SystemConfig {
    pub fn new(h_tx: f64, tx_power: f64) -> Result<Self> {
        let system = Self {
            h_tx,
            tx_power,
            constants: PhysicalConstants::default(),
        };
        system.validate()?;
        Ok(system)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h_tx.is_finite() && self.h_tx > 0.0) {
            return Err(Error::InvalidHeight(self.h_tx));
        }
        if !(self.tx_power.is_finite() && self.tx_power > 0.0) {
            return Err(Error::InvalidPower(self.tx_power));
        }
        PhysicalConstants::new(self.constants.speed_of_light)?;
        Ok(())
    }

    pub fn link_for(&self, user: &UserProfile) -> Result<TwoRayLink> {
        Ok(TwoRayLink::with_constants(
            SceneGeometry::new(self.h_tx, user.h_rx)?,
            self.constants,
        ))
    }
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self {
            h_tx: 10.0,
            tx_power: 1.0,
            constants: PhysicalConstants::default(),
        }
    }
}

/// Profit of giving `freq` alone to `user`, W.
pub fn single_profit(user: &UserProfile, freq: CarrierFrequency, system: &SystemConfig) -> Result<f64> {
    let link = system.link_for(user)?;
    Ok(worst_case_single(&link, &user.interval, freq, system.tx_power)?.power)
}

/// Joint profit of `f_i` and `f_j` for `user`, W. Symmetric in its
/// frequency arguments.
pub fn pair_profit(
    user: &UserProfile,
    f_i: CarrierFrequency,
    f_j: CarrierFrequency,
    system: &SystemConfig,
) -> Result<f64> {
    let total = pair_worst_case(user, f_i, f_j, system)?;
    Ok(total - single_profit(user, f_i, system)? - single_profit(user, f_j, system)?)
}

fn pair_worst_case(
    user: &UserProfile,
    f_i: CarrierFrequency,
    f_j: CarrierFrequency,
    system: &SystemConfig,
) -> Result<f64> {
    let link = system.link_for(user)?;
    let pair = FrequencyPair::new(f_i, f_j)?;
    Ok(worst_case_pair(&link, &user.interval, &pair, system.tx_power)?.power)
}

/// Worst-case receive power of `user` holding `freqs` (zero, one or two
/// carriers), computed directly from the channel model rather than from a
/// profit table.
pub fn assigned_worst_case(user: &UserProfile, freqs: &[CarrierFrequency], system: &SystemConfig) -> Result<f64> {
    match *freqs {
        [] => Ok(0.0),
        [f] => single_profit(user, f, system),
        [a, b] => pair_worst_case(user, a, b, system),
        _ => Err(Error::InvalidConfig(format!(
            "a user can hold at most two frequencies, got {}",
            freqs.len()
        ))),
    }
}

/// Heterogeneous profits for every (user, frequency) and (user, frequency
/// pair). Frequencies are stored in ascending order; item `i` of the
/// derived knapsack instance is `frequencies_hz[i]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfitTable {
    pub system: SystemConfig,
    pub users: Vec<UserProfile>,
    pub frequencies_hz: Vec<f64>,
    /// `single[u][i]`, W.
    pub single: Vec<Vec<f64>>,
    /// `pair[u][i][j]`, W. Symmetric; the diagonal is zero and unused.
    pub pair: Vec<Vec<Vec<f64>>>,
}

impl ProfitTable {
    pub fn n_users(&self) -> usize {
        self.users.len()
    }

    pub fn n_frequencies(&self) -> usize {
        self.frequencies_hz.len()
    }

    pub fn frequency(&self, i: usize) -> CarrierFrequency {
        CarrierFrequency::from_hz(self.frequencies_hz[i]).expect("validated on construction")
    }

    /// Knapsack view: unit item weights, capacity two per user.
    pub fn to_instance(&self) -> Instance {
        Instance::frequency_assignment(self.single.clone(), self.pair.clone())
            .expect("profit table has consistent shapes")
    }
}

/// Builds the profit table. Frequencies are sorted ascending first and must
/// be pairwise distinct.
pub fn build_profit_table(
    users: &[UserProfile],
    freqs: &[CarrierFrequency],
    system: &SystemConfig,
) -> Result<ProfitTable> {
    if users.is_empty() {
        return Err(Error::InvalidConfig("at least one user is required".into()));
    }
    system.validate()?;
    let mut sorted: Vec<CarrierFrequency> = freqs.to_vec();
    sorted.sort_by(|a, b| a.hz().total_cmp(&b.hz()));
    if let Some(w) = sorted.windows(2).find(|w| w[0].hz() == w[1].hz()) {
        return Err(Error::DuplicateFrequency(w[0].hz()));
    }

    let n = sorted.len();
    let rows: Vec<(Vec<f64>, Vec<Vec<f64>>)> = users
        .par_iter()
        .map(|user| {
            let link = system.link_for(user)?;
            let single = sorted
                .iter()
                .map(|&f| Ok(worst_case_single(&link, &user.interval, f, system.tx_power)?.power))
                .collect::<Result<Vec<f64>>>()?;
            let mut pair = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    let fp = FrequencyPair::new(sorted[i], sorted[j])?;
                    let total = worst_case_pair(&link, &user.interval, &fp, system.tx_power)?.power;
                    let joint = total - single[i] - single[j];
                    pair[i][j] = joint;
                    pair[j][i] = joint;
                }
            }
            Ok((single, pair))
        })
        .collect::<Result<_>>()?;
    let (single, pair) = rows.into_iter().unzip();

    Ok(ProfitTable {
        system: *system,
        users: users.to_vec(),
        frequencies_hz: sorted.iter().map(|f| f.hz()).collect(),
        single,
        pair,
    })
}
