//! Minimum receive power over a distance-uncertainty interval.
//!
//! On a single carrier the receive power only dips at the null distances
//! `d_k`, and the dip is deepest at the largest `d_k`. The minimum over
//! `[d_min, d_max]` is therefore found among three candidates: both endpoints
//! and the largest null inside the interval. The same argument applies to the
//! dual-carrier envelope lower bound, whose nulls are those of the carrier
//! spacing.
//!
//! [`grid_min`] is an independent dense scan used to check those candidates.

use serde::{Deserialize, Serialize};

use crate::channel::{CarrierFrequency, FrequencyPair, TwoRayLink};
use crate::{Error, Result};

/// Closed interval of possible ground distances, meters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct DistanceInterval {
    d_min: f64,
    d_max: f64,
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    d_min: f64,
    d_max: f64,
}

impl TryFrom<RawInterval> for DistanceInterval {
    type Error = Error;

    fn try_from(raw: RawInterval) -> Result<Self> {
        Self::new(raw.d_min, raw.d_max)
    }
}

impl From<DistanceInterval> for RawInterval {
    fn from(i: DistanceInterval) -> Self {
        RawInterval {
            d_min: i.d_min,
            d_max: i.d_max,
        }
    }
}

impl DistanceInterval {
    pub fn new(d_min: f64, d_max: f64) -> Result<Self> {
        if d_min.is_finite() && d_max.is_finite() && d_min > 0.0 && d_min <= d_max {
            Ok(Self { d_min, d_max })
        } else {
            Err(Error::InvalidInterval { d_min, d_max })
        }
    }

    pub fn d_min(&self) -> f64 {
        self.d_min
    }

    pub fn d_max(&self) -> f64 {
        self.d_max
    }

    pub fn width(&self) -> f64 {
        self.d_max - self.d_min
    }

    pub fn contains(&self, d: f64) -> bool {
        self.d_min <= d && d <= self.d_max
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateKind {
    LowerEndpoint,
    UpperEndpoint,
    /// A null distance for the closed-form results; any interior point for
    /// [`grid_min`].
    InteriorNull,
}

impl std::fmt::Display for CandidateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CandidateKind::LowerEndpoint => "lower_endpoint",
            CandidateKind::UpperEndpoint => "upper_endpoint",
            CandidateKind::InteriorNull => "interior_null",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorstCaseResult {
    /// Watts.
    pub power: f64,
    pub argmin_distance: f64,
    pub candidate_kind: CandidateKind,
}

/// Evaluates `curve` at the endpoints and at the largest null inside the
/// interval; returns the smallest. Ties go to the earlier candidate in that
/// order. `nulls` must be sorted descending.
fn min_over_candidates(
    curve: impl Fn(f64) -> Result<f64>,
    interval: &DistanceInterval,
    nulls: &[f64],
) -> Result<WorstCaseResult> {
    let interior = nulls.iter().copied().find(|&d| interval.contains(d));
    let candidates = [
        Some((interval.d_min, CandidateKind::LowerEndpoint)),
        Some((interval.d_max, CandidateKind::UpperEndpoint)),
        interior.map(|d| (d, CandidateKind::InteriorNull)),
    ];
    let mut best: Option<WorstCaseResult> = None;
    for (d, kind) in candidates.into_iter().flatten() {
        let power = curve(d)?;
        if best.is_none_or(|b| power < b.power) {
            best = Some(WorstCaseResult {
                power,
                argmin_distance: d,
                candidate_kind: kind,
            });
        }
    }
    Ok(best.expect("endpoints are always candidates"))
}

/// Worst-case single-carrier receive power over `interval` at transmit
/// power `tx_power`.
pub fn worst_case_single(
    link: &TwoRayLink,
    interval: &DistanceInterval,
    freq: CarrierFrequency,
    tx_power: f64,
) -> Result<WorstCaseResult> {
    min_over_candidates(
        |d| link.receive_power(d, freq, tx_power),
        interval,
        &link.null_distances(freq),
    )
}

/// Worst case of the dual-carrier envelope lower bound over `interval`. The
/// power is split evenly between the two carriers.
pub fn worst_case_pair(
    link: &TwoRayLink,
    interval: &DistanceInterval,
    pair: &FrequencyPair,
    tx_power: f64,
) -> Result<WorstCaseResult> {
    min_over_candidates(
        |d| link.sum_power_lower_bound(d, pair, tx_power),
        interval,
        &link.null_distances(pair.spacing()),
    )
}

/// How finely [`grid_min`] samples the interval.
#[derive(Clone, Copy, Debug)]
pub enum ResolutionPolicy {
    /// Step so that the ray phase difference at angular frequency `omega`
    /// changes by at most `max_phase_step` radians between samples.
    PhaseAdaptive {
        link: TwoRayLink,
        omega: f64,
        max_phase_step: f64,
    },
    /// Fixed step in meters.
    Uniform { step: f64 },
}

/// Phase change per grid step used by the `for_*` constructors, radians.
pub const DEFAULT_PHASE_STEP: f64 = 0.01;

/// Minimum number of grid cells regardless of phase, so slowly varying
/// amplitude terms are still resolved.
const MIN_CELLS: f64 = 1000.0;

/// Phase step as a fraction of the local null half-width. Sampling a
/// quadratic well this finely puts a sample within about 0.01 dB of its
/// bottom.
const NULL_RESOLUTION: f64 = 0.1;

impl ResolutionPolicy {
    pub fn for_carrier(link: &TwoRayLink, freq: CarrierFrequency) -> Self {
        ResolutionPolicy::PhaseAdaptive {
            link: *link,
            omega: freq.omega(),
            max_phase_step: DEFAULT_PHASE_STEP,
        }
    }

    /// The envelope bound oscillates with the carrier spacing only.
    pub fn for_pair(link: &TwoRayLink, pair: &FrequencyPair) -> Self {
        ResolutionPolicy::PhaseAdaptive {
            link: *link,
            omega: pair.delta_omega(),
            max_phase_step: DEFAULT_PHASE_STEP,
        }
    }

    /// Step to take from distance `d`.
    fn step_from(&self, d: f64) -> f64 {
        match *self {
            ResolutionPolicy::Uniform { step } => step,
            ResolutionPolicy::PhaseAdaptive {
                link,
                omega,
                max_phase_step,
            } => {
                // |d/dd (l_ref - l_los)| <= min(1, 2 h_tx h_rx / d^2), and the
                // bound only shrinks as d grows.
                let g = link.geometry();
                let slope = if d > 0.0 {
                    (2.0 * g.h_tx() * g.h_rx() / (d * d)).min(1.0)
                } else {
                    1.0
                };
                // Near a null the power is ~ A^2 + x^2 / (l_los l_ref) in the
                // phase offset x, with A = 1/l_los - 1/l_ref. Its half-width
                // A sqrt(l_los l_ref) = (l_ref - l_los) / sqrt(l_los l_ref)
                // gets tiny at long range. The envelope bound's wells are
                // wider, so the same cap is safe there.
                let width = link
                    .path_lengths(d)
                    .map(|p| p.difference(g) / (p.los * p.reflected).sqrt())
                    .unwrap_or(f64::INFINITY);
                let phase_step = max_phase_step.min(NULL_RESOLUTION * width);
                phase_step / (omega / link.speed_of_light() * slope)
            }
        }
    }
}

/// Dense scan of `curve` over `interval` followed by a golden-section
/// refinement around the best grid point.
pub fn grid_min(curve: impl Fn(f64) -> f64, interval: &DistanceInterval, policy: &ResolutionPolicy) -> WorstCaseResult {
    let (lo, hi) = (interval.d_min, interval.d_max);
    let max_step = if hi > lo { (hi - lo) / MIN_CELLS } else { f64::INFINITY };

    let mut grid = vec![lo];
    let mut d = lo;
    while d < hi {
        let step = policy.step_from(d);
        let step = if step.is_finite() && step > 0.0 {
            step.min(max_step)
        } else {
            max_step
        };
        d = if d + step >= hi { hi } else { d + step };
        grid.push(d);
    }

    // first strict minimum wins ties
    let (mut best_idx, mut value) = (0, curve(lo));
    for (i, &x) in grid.iter().enumerate().skip(1) {
        let p = curve(x);
        if p < value {
            best_idx = i;
            value = p;
        }
    }
    let mut arg = grid[best_idx];

    let a = grid[best_idx.saturating_sub(1)];
    let b = grid[(best_idx + 1).min(grid.len() - 1)];
    if b > a {
        let (x, fx) = golden_section(&curve, a, b);
        if fx < value {
            arg = x;
            value = fx;
        }
    }

    let candidate_kind = if arg == lo {
        CandidateKind::LowerEndpoint
    } else if arg == hi {
        CandidateKind::UpperEndpoint
    } else {
        CandidateKind::InteriorNull
    };
    WorstCaseResult {
        power: value,
        argmin_distance: arg,
        candidate_kind,
    }
}

fn golden_section(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if b - a <= 1e-12 * b.abs().max(1.0) {
            break;
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{to_decibel, SceneGeometry, SPEED_OF_LIGHT};
    use proptest::prelude::*;

    fn example_link() -> TwoRayLink {
        TwoRayLink::new(SceneGeometry::new(10.0, 1.5).unwrap())
    }

    fn interval(a: f64, b: f64) -> DistanceInterval {
        DistanceInterval::new(a, b).unwrap()
    }

    fn db(p: f64) -> f64 {
        to_decibel(p, 1.0)
    }

    #[test]
    fn interval_validation() {
        assert!(DistanceInterval::new(0.0, 1.0).is_err());
        assert!(DistanceInterval::new(5.0, 4.0).is_err());
        assert!(DistanceInterval::new(5.0, f64::NAN).is_err());
        assert!(DistanceInterval::new(5.0, 5.0).is_ok());
        let i = interval(30.0, 100.0);
        assert!(i.contains(30.0) && i.contains(100.0) && !i.contains(100.000001));
        let json = serde_json::to_string(&i).unwrap();
        assert_eq!(serde_json::from_str::<DistanceInterval>(&json).unwrap(), i);
        assert!(serde_json::from_str::<DistanceInterval>(r#"{"d_min":3,"d_max":2}"#).is_err());
    }

    #[test]
    fn single_carrier_examples() {
        let link = example_link();
        let i = interval(30.0, 100.0);
        let low = CarrierFrequency::from_angular(10.0 * SPEED_OF_LIGHT).unwrap();
        let r = worst_case_single(&link, &i, low, 1.0).unwrap();
        assert!((db(r.power) + 97.0).abs() < 0.5);
        assert!((r.argmin_distance - 46.7).abs() < 0.05);
        assert_eq!(r.candidate_kind, CandidateKind::InteriorNull);

        let high = CarrierFrequency::from_hz(2.4e9).unwrap();
        let r = worst_case_single(&link, &i, high, 1.0).unwrap();
        assert!((db(r.power) + 125.0).abs() < 0.5);
        assert!((r.argmin_distance - 79.4).abs() < 0.1);
        assert_eq!(r.candidate_kind, CandidateKind::InteriorNull);
    }

    #[test]
    fn degenerate_interval_is_lower_endpoint() {
        let link = example_link();
        let f = CarrierFrequency::from_hz(2.4e9).unwrap();
        let r = worst_case_single(&link, &interval(42.0, 42.0), f, 1.0).unwrap();
        assert_eq!(r.candidate_kind, CandidateKind::LowerEndpoint);
        assert_eq!(r.argmin_distance, 42.0);
        assert_eq!(r.power, link.receive_power(42.0, f, 1.0).unwrap());

        let pair = FrequencyPair::from_hz(2.4e9, 2.65e9).unwrap();
        let r = worst_case_pair(&link, &interval(42.0, 42.0), &pair, 1.0).unwrap();
        assert_eq!(r.power, link.sum_power_lower_bound(42.0, &pair, 1.0).unwrap());
    }

    #[test]
    fn pair_example() {
        let link = example_link();
        let pair = FrequencyPair::from_hz(2.4e9, 2.65e9).unwrap();
        let nulls = link.null_distances(pair.spacing());
        assert_eq!(nulls.len(), 2);
        assert!((nulls[0] - 22.9).abs() < 0.1 && (nulls[1] - 7.5).abs() < 0.1);
        let r = worst_case_pair(&link, &interval(30.0, 100.0), &pair, 1.0).unwrap();
        assert!((db(r.power) + 82.9).abs() < 0.2);
        assert_ne!(r.candidate_kind, CandidateKind::InteriorNull);

        let true_min = grid_min(
            |d| link.sum_power(d, &pair, 1.0).unwrap(),
            &interval(30.0, 100.0),
            &ResolutionPolicy::for_carrier(&link, pair.high()),
        );
        assert!(r.power <= true_min.power);
    }

    #[test]
    fn no_null_inside_uses_endpoints_only() {
        let link = example_link();
        let f = CarrierFrequency::from_angular(10.0 * SPEED_OF_LIGHT).unwrap();
        // nulls at 46.7 and 21.6 m; none inside [25, 40]
        let r = worst_case_single(&link, &interval(25.0, 40.0), f, 1.0).unwrap();
        assert_ne!(r.candidate_kind, CandidateKind::InteriorNull);
        let lo = link.receive_power(25.0, f, 1.0).unwrap();
        let hi = link.receive_power(40.0, f, 1.0).unwrap();
        assert_eq!(r.power, lo.min(hi));
    }

    #[test]
    fn grid_on_constant_function() {
        let r = grid_min(|_| 3.0, &interval(1.0, 9.0), &ResolutionPolicy::Uniform { step: 0.5 });
        assert_eq!(r.power, 3.0);
        assert_eq!(r.argmin_distance, 1.0);
        assert_eq!(r.candidate_kind, CandidateKind::LowerEndpoint);
    }

    #[test]
    fn grid_refines_smooth_minimum() {
        let r = grid_min(
            |d| (d - 3.3).powi(2) + 1.0,
            &interval(1.0, 9.0),
            &ResolutionPolicy::Uniform { step: 0.7 },
        );
        assert!((r.argmin_distance - 3.3).abs() < 1e-6);
        assert!((r.power - 1.0).abs() < 1e-12);
        assert_eq!(r.candidate_kind, CandidateKind::InteriorNull);
        let r = grid_min(|d| -d, &interval(1.0, 9.0), &ResolutionPolicy::Uniform { step: 0.0 });
        assert_eq!(r.argmin_distance, 9.0);
        assert_eq!(r.candidate_kind, CandidateKind::UpperEndpoint);
    }

    #[test]
    fn grid_agrees_with_examples() {
        let link = example_link();
        let i = interval(30.0, 100.0);
        for f in [477.1345e6, 2.4e9] {
            let f = CarrierFrequency::from_hz(f).unwrap();
            let closed = worst_case_single(&link, &i, f, 1.0).unwrap();
            let grid = grid_min(
                |d| link.receive_power(d, f, 1.0).unwrap(),
                &i,
                &ResolutionPolicy::for_carrier(&link, f),
            );
            assert!((db(closed.power) - db(grid.power)).abs() <= 0.01);
        }
        let pair = FrequencyPair::from_hz(2.4e9, 2.65e9).unwrap();
        let closed = worst_case_pair(&link, &i, &pair, 1.0).unwrap();
        let grid = grid_min(
            |d| link.sum_power_lower_bound(d, &pair, 1.0).unwrap(),
            &i,
            &ResolutionPolicy::for_pair(&link, &pair),
        );
        assert!((db(closed.power) - db(grid.power)).abs() <= 0.01);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn argmin_is_an_evaluated_candidate(h_tx in 1.0f64..15.0, h_rx in 1.0f64..15.0,
                                            f in 0.4e9f64..3e9, df in 1e6f64..5e8,
                                            a in 5.0f64..500.0, b in 5.0f64..500.0) {
            let link = TwoRayLink::new(SceneGeometry::new(h_tx, h_rx).unwrap());
            let i = interval(a.min(b), a.max(b));
            let f = CarrierFrequency::from_hz(f).unwrap();
            let r = worst_case_single(&link, &i, f, 1.0).unwrap();
            prop_assert!(i.contains(r.argmin_distance));
            prop_assert_eq!(r.power, link.receive_power(r.argmin_distance, f, 1.0).unwrap());
            match r.candidate_kind {
                CandidateKind::LowerEndpoint => prop_assert_eq!(r.argmin_distance, i.d_min()),
                CandidateKind::UpperEndpoint => prop_assert_eq!(r.argmin_distance, i.d_max()),
                CandidateKind::InteriorNull => {
                    prop_assert!(link.null_distances(f).contains(&r.argmin_distance))
                }
            }

            let pair = FrequencyPair::from_hz(f.hz(), f.hz() + df).unwrap();
            let r = worst_case_pair(&link, &i, &pair, 1.0).unwrap();
            prop_assert!(i.contains(r.argmin_distance));
            prop_assert_eq!(r.power, link.sum_power_lower_bound(r.argmin_distance, &pair, 1.0).unwrap());
        }

        #[test]
        fn bound_minimum_below_true_minimum(h_tx in 1.0f64..15.0, h_rx in 1.0f64..15.0,
                                            f in 2.4e9f64..2.5e9, df in 1e6f64..1e8,
                                            a in 20.0f64..40.0, w in 10.0f64..100.0) {
            let link = TwoRayLink::new(SceneGeometry::new(h_tx, h_rx).unwrap());
            let i = interval(a, a + w);
            let pair = FrequencyPair::from_hz(f, f + df).unwrap();
            let bound_min = grid_min(
                |d| link.sum_power_lower_bound(d, &pair, 1.0).unwrap(),
                &i,
                &ResolutionPolicy::for_pair(&link, &pair),
            );
            let true_min = grid_min(
                |d| link.sum_power(d, &pair, 1.0).unwrap(),
                &i,
                &ResolutionPolicy::for_carrier(&link, pair.high()),
            );
            prop_assert!(bound_min.power <= true_min.power + 1e-12);
        }
    }
}
