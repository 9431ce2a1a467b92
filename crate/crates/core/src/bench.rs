//! Monte-Carlo benchmarking of the assignment schemes on random scenarios.
//!
//! Every trial draws its own users and frequencies from a ChaCha8 stream
//! keyed by `(master_seed, trial_index)`, so trials can run in any order or
//! in parallel and still produce identical numbers.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{to_decibel, CarrierFrequency};
use crate::format::{sig6, write_atomic};
use crate::profits::{build_profit_table, SystemConfig, UserProfile};
use crate::qmkp::{
    assign_random, assign_rr_block, assign_rr_profits, assign_rr_simple, feasible, greedy_construct, objective,
    Assignment, Instance,
};
use crate::{Error, Result};

/// How the `N` frequencies of a scenario are placed in the band.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrequencyLayout {
    /// Independent uniform draws, sorted, redrawn on collision.
    #[default]
    Uniform,
    /// Evenly spaced including both band edges; a single frequency sits at
    /// the band centre. Users stay random.
    Grid,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Number of users `K`.
    #[serde(alias = "K")]
    pub k: usize,
    /// Number of frequencies `N`.
    #[serde(alias = "N")]
    pub n: usize,
    /// `[f_lo, f_hi]`, Hz.
    #[serde(default = "default_band")]
    pub band: [f64; 2],
    #[serde(default = "default_h_tx")]
    pub h_tx: f64,
    /// Transmit power per user, W.
    #[serde(default = "default_tx_power")]
    pub tx_power: f64,
    #[serde(default = "default_h_rx_range")]
    pub h_rx_range: [f64; 2],
    #[serde(default = "default_d_min_range")]
    pub d_min_range: [f64; 2],
    /// Range of `d_max - d_min`, m.
    #[serde(default = "default_span_range")]
    pub span_range: [f64; 2],
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub layout: FrequencyLayout,
}

fn default_band() -> [f64; 2] {
    [2.4e9, 2.5e9]
}
fn default_h_tx() -> f64 {
    10.0
}
fn default_tx_power() -> f64 {
    1.0
}
fn default_h_rx_range() -> [f64; 2] {
    [1.0, 3.0]
}
fn default_d_min_range() -> [f64; 2] {
    [20.0, 40.0]
}
fn default_span_range() -> [f64; 2] {
    [10.0, 100.0]
}
fn default_trials() -> usize {
    100
}

impl ScenarioConfig {
    /// Defaults for everything except the problem size.
    pub fn new(k: usize, n: usize) -> Self {
        Self {
            k,
            n,
            band: default_band(),
            h_tx: default_h_tx(),
            tx_power: default_tx_power(),
            h_rx_range: default_h_rx_range(),
            d_min_range: default_d_min_range(),
            span_range: default_span_range(),
            trials: default_trials(),
            master_seed: 0,
            layout: FrequencyLayout::Uniform,
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, master_seed: u64) -> Self {
        self.master_seed = master_seed;
        self
    }

    pub fn system(&self) -> Result<SystemConfig> {
        SystemConfig::new(self.h_tx, self.tx_power)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.k == 0 || self.n == 0 {
            return bad(format!("K and N must be at least 1, got K={} N={}", self.k, self.n));
        }
        // rr-simple hands out item u to user u
        if self.n < self.k {
            return bad(format!(
                "need at least as many frequencies as users, got K={} N={}",
                self.k, self.n
            ));
        }
        let [lo, hi] = self.band;
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
            return bad(format!("band [{lo}, {hi}] must satisfy 0 < f_lo < f_hi"));
        }
        for (name, [a, b], min) in [
            ("h_rx_range", self.h_rx_range, f64::MIN_POSITIVE),
            ("d_min_range", self.d_min_range, f64::MIN_POSITIVE),
            ("span_range", self.span_range, 0.0),
        ] {
            if !(a.is_finite() && b.is_finite() && a >= min && a <= b) {
                return bad(format!("{name} [{a}, {b}] is not a valid range"));
            }
        }
        self.system()?;
        Ok(())
    }
}

/// Per-trial random stream, independent of every other trial.
fn trial_rng(master_seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial_index);
    rng
}

fn uniform(rng: &mut impl Rng, [a, b]: [f64; 2]) -> f64 {
    if a == b {
        a
    } else {
        rng.random_range(a..=b)
    }
}

fn draw_frequencies(
    rng: &mut impl Rng,
    [lo, hi]: [f64; 2],
    n: usize,
    layout: FrequencyLayout,
) -> Result<Vec<CarrierFrequency>> {
    let mut hz: Vec<f64> = match layout {
        FrequencyLayout::Uniform => {
            let mut drawn = Vec::with_capacity(n);
            while drawn.len() < n {
                let f = rng.random_range(lo..=hi);
                if !drawn.contains(&f) {
                    drawn.push(f);
                }
            }
            drawn
        }
        FrequencyLayout::Grid if n == 1 => vec![0.5 * (lo + hi)],
        FrequencyLayout::Grid => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n).map(|i| lo + step * i as f64).collect()
        }
    };
    hz.sort_by(f64::total_cmp);
    hz.into_iter().map(CarrierFrequency::from_hz).collect()
}

/// `n` distinct frequencies in `band`, ascending, drawn the same way as in
/// [`generate_scenario`].
pub fn sample_frequencies(
    band: [f64; 2],
    n: usize,
    layout: FrequencyLayout,
    seed: u64,
) -> Result<Vec<CarrierFrequency>> {
    let [lo, hi] = band;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
        return Err(Error::InvalidConfig(format!(
            "band [{lo}, {hi}] must satisfy 0 < f_lo < f_hi"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidConfig("need at least one frequency".into()));
    }
    draw_frequencies(&mut ChaCha8Rng::seed_from_u64(seed), band, n, layout)
}

/// One random draw of users and frequencies, plus the seed the random
/// baseline should use.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub users: Vec<UserProfile>,
    /// Ascending.
    pub freqs: Vec<CarrierFrequency>,
    pub baseline_seed: u64,
}

/// Draws the scenario of trial `trial_index`. Deterministic in
/// `(config.master_seed, trial_index)`.
pub fn generate_scenario(config: &ScenarioConfig, trial_index: u64) -> Result<Scenario> {
    config.validate()?;
    let mut rng = trial_rng(config.master_seed, trial_index);

    let freqs = draw_frequencies(&mut rng, config.band, config.n, config.layout)?;

    let users = (0..config.k)
        .map(|_| {
            let h_rx = uniform(&mut rng, config.h_rx_range);
            let d_min = uniform(&mut rng, config.d_min_range);
            let span = uniform(&mut rng, config.span_range);
            UserProfile::new(h_rx, d_min, d_min + span)
        })
        .collect::<Result<_>>()?;

    Ok(Scenario {
        users,
        freqs,
        baseline_seed: rng.next_u64(),
    })
}

/// Assignment schemes compared by the benchmark, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Greedy,
    Random,
    RrSimple,
    RrBlock,
    RrProfits,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::Greedy,
        Scheme::Random,
        Scheme::RrSimple,
        Scheme::RrBlock,
        Scheme::RrProfits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Greedy => "greedy",
            Scheme::Random => "random",
            Scheme::RrSimple => "rr-simple",
            Scheme::RrBlock => "rr-block",
            Scheme::RrProfits => "rr-profits",
        }
    }

    /// Runs the scheme. `seed` only matters for [`Scheme::Random`].
    pub fn solve(self, instance: &Instance, seed: u64) -> Result<Assignment> {
        match self {
            Scheme::Greedy => greedy_construct(instance, &Assignment::empty(instance.n_knapsacks())),
            Scheme::Random => assign_random(instance, seed),
            Scheme::RrSimple => assign_rr_simple(instance),
            Scheme::RrBlock => assign_rr_block(instance),
            Scheme::RrProfits => assign_rr_profits(instance),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown scheme '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeOutcome {
    pub scheme: Scheme,
    pub assignment: Assignment,
    /// Sum of the users' worst-case powers, W.
    pub objective: f64,
    /// `objective / (K * P_t)` in dB.
    pub mean_db: f64,
    /// Wall time of the solver alone, s.
    pub time_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub trial_index: u64,
    /// Wall time spent building the profit table, s.
    pub profit_time_s: f64,
    /// One entry per scheme, in [`Scheme::ALL`] order.
    pub outcomes: Vec<SchemeOutcome>,
}

impl TrialResult {
    pub fn outcome(&self, scheme: Scheme) -> Option<&SchemeOutcome> {
        self.outcomes.iter().find(|o| o.scheme == scheme)
    }
}

/// Builds the profit table once and evaluates every scheme on it.
pub fn run_trial(
    users: &[UserProfile],
    freqs: &[CarrierFrequency],
    system: &SystemConfig,
    baseline_seed: u64,
) -> Result<TrialResult> {
    let start = Instant::now();
    let table = build_profit_table(users, freqs, system)?;
    let profit_time_s = start.elapsed().as_secs_f64();
    let instance = table.to_instance();
    let scale = users.len() as f64 * system.tx_power;

    let outcomes = Scheme::ALL
        .into_iter()
        .map(|scheme| {
            let start = Instant::now();
            let assignment = scheme.solve(&instance, baseline_seed)?;
            let time_s = start.elapsed().as_secs_f64();
            debug_assert!(feasible(&instance, &assignment)?);
            let objective = objective(&instance, &assignment)?;
            Ok(SchemeOutcome {
                scheme,
                assignment,
                objective,
                mean_db: to_decibel(objective, scale),
                time_s,
            })
        })
        .collect::<Result<_>>()?;

    Ok(TrialResult {
        trial_index: 0,
        profit_time_s,
        outcomes,
    })
}

fn run_indexed(config: &ScenarioConfig, system: &SystemConfig, trial_index: u64) -> Result<TrialResult> {
    let s = generate_scenario(config, trial_index)?;
    let mut result = run_trial(&s.users, &s.freqs, system, s.baseline_seed)?;
    result.trial_index = trial_index;
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeSummary {
    pub scheme: Scheme,
    /// Mean objective over trials, W.
    pub mean_objective: f64,
    /// Mean objective over `K * P_t`, in dB. Averaging happens in watts.
    pub mean_db: f64,
    pub time_mean_s: f64,
    pub time_min_s: f64,
    pub time_max_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub config: ScenarioConfig,
    pub summary: Vec<SchemeSummary>,
    pub trials: Vec<TrialResult>,
}

impl BenchReport {
    pub fn seed(&self) -> u64 {
        self.config.master_seed
    }

    pub fn summary_for(&self, scheme: Scheme) -> Option<&SchemeSummary> {
        self.summary.iter().find(|s| s.scheme == scheme)
    }

    /// Aggregates trials in the order given.
    pub fn from_trials(config: ScenarioConfig, trials: Vec<TrialResult>) -> Result<Self> {
        if trials.is_empty() {
            return Err(Error::InvalidConfig("a report needs at least one trial".into()));
        }
        let count = trials.len() as f64;
        let scale = config.k as f64 * config.tx_power;
        let summary = Scheme::ALL
            .into_iter()
            .map(|scheme| {
                let outcomes = trials
                    .iter()
                    .map(|t| {
                        t.outcome(scheme).ok_or_else(|| {
                            Error::InvalidConfig(format!("trial {} has no {scheme} outcome", t.trial_index))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mean_objective = outcomes.iter().map(|o| o.objective).sum::<f64>() / count;
                let times = outcomes.iter().map(|o| o.time_s);
                Ok(SchemeSummary {
                    scheme,
                    mean_objective,
                    mean_db: to_decibel(mean_objective, scale),
                    time_mean_s: times.clone().sum::<f64>() / count,
                    time_min_s: times.clone().fold(f64::INFINITY, f64::min),
                    time_max_s: times.fold(0.0, f64::max),
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            config,
            summary,
            trials,
        })
    }
}

/// Runs all trials on the rayon pool and aggregates them in index order.
pub fn run_benchmark(config: &ScenarioConfig) -> Result<BenchReport> {
    config.validate()?;
    let system = config.system()?;
    let trials = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| run_indexed(config, &system, t))
        .collect::<Result<Vec<_>>>()?;
    BenchReport::from_trials(config.clone(), trials)
}

/// [`run_benchmark`] on the calling thread only.
pub fn run_benchmark_serial(config: &ScenarioConfig) -> Result<BenchReport> {
    config.validate()?;
    let system = config.system()?;
    let trials = (0..config.trials as u64)
        .map(|t| run_indexed(config, &system, t))
        .collect::<Result<Vec<_>>>()?;
    BenchReport::from_trials(config.clone(), trials)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::InvalidConfig(format!(
                "unknown format '{s}' (expected csv or json)"
            ))),
        }
    }
}

pub const CSV_HEADER: [&str; 7] = ["K", "N", "scheme", "mean_db", "time_mean_s", "time_min_s", "time_max_s"];

/// Writes the CSV summary of `reports` to any writer.
pub fn write_csv(reports: &[BenchReport], out: &mut dyn std::io::Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in reports {
        for s in &r.summary {
            w.write_record([
                r.config.k.to_string(),
                r.config.n.to_string(),
                s.scheme.to_string(),
                sig6(s.mean_db),
                sig6(s.time_mean_s),
                sig6(s.time_min_s),
                sig6(s.time_max_s),
            ])?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Writes one report. JSON holds the full report; CSV holds one row per
/// scheme.
pub fn export_report(report: &BenchReport, format: ExportFormat, path: &Path) -> Result<()> {
    match format {
        ExportFormat::Csv => export_reports(std::slice::from_ref(report), format, path),
        ExportFormat::Json => write_json(report, path),
    }
}

/// Writes several reports. CSV concatenates their rows under one header;
/// JSON writes an array.
pub fn export_reports(reports: &[BenchReport], format: ExportFormat, path: &Path) -> Result<()> {
    match format {
        ExportFormat::Csv => write_atomic(path, |out| write_csv(reports, out)),
        ExportFormat::Json => write_json(&reports, path),
    }
}

fn write_json(value: &impl Serialize, path: &Path) -> Result<()> {
    write_atomic(path, |out| {
        serde_json::to_writer_pretty(&mut *out, value).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            source,
        })?;
        out.write_all(b"\n").map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    })
}

/// Reads a report written by [`export_report`] in JSON format.
pub fn import_report(path: &Path) -> Result<BenchReport> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ScenarioConfig {
        ScenarioConfig::new(3, 10).with_trials(4).with_seed(7)
    }

    #[test]
    fn scenario_is_deterministic_and_in_range() {
        let c = small();
        let a = generate_scenario(&c, 3).unwrap();
        assert_eq!(a, generate_scenario(&c, 3).unwrap());
        assert_ne!(a, generate_scenario(&c, 4).unwrap());
        assert_eq!(a.freqs.len(), 10);
        assert!(a.freqs.windows(2).all(|w| w[0].hz() < w[1].hz()));
        assert!(a.freqs.iter().all(|f| (2.4e9..=2.5e9).contains(&f.hz())));
        for u in &a.users {
            assert!((1.0..=3.0).contains(&u.h_rx));
            assert!((20.0..=40.0).contains(&u.interval.d_min()));
            assert!((10.0..=100.0 + 1e-12).contains(&u.interval.width()));
        }
    }

    #[test]
    fn receiver_height_mean() {
        let c = ScenarioConfig::new(100, 100);
        let mut sum = 0.0;
        for t in 0..100 {
            sum += generate_scenario(&c, t)
                .unwrap()
                .users
                .iter()
                .map(|u| u.h_rx)
                .sum::<f64>();
        }
        assert!((sum / 1e4 - 2.0).abs() < 0.05);
    }

    #[test]
    fn collisions_are_redrawn() {
        // a band this narrow has only a handful of representable values
        let mut c = ScenarioConfig::new(1, 5);
        c.band = [1e9, 1e9 + 1e-6];
        let s = generate_scenario(&c, 0).unwrap();
        assert!(s.freqs.windows(2).all(|w| w[0].hz() < w[1].hz()));
    }

    #[test]
    fn grid_layout() {
        let mut c = ScenarioConfig::new(2, 5);
        c.layout = FrequencyLayout::Grid;
        let hz: Vec<f64> = generate_scenario(&c, 0).unwrap().freqs.iter().map(|f| f.hz()).collect();
        assert_eq!(hz, vec![2.4e9, 2.425e9, 2.45e9, 2.475e9, 2.5e9]);
        c.n = 1;
        c.k = 1;
        assert_eq!(generate_scenario(&c, 0).unwrap().freqs[0].hz(), 2.45e9);
    }

    #[test]
    fn invalid_configs() {
        for f in [
            |c: &mut ScenarioConfig| c.k = 0,
            |c: &mut ScenarioConfig| c.n = 2,
            |c: &mut ScenarioConfig| c.band = [2.5e9, 2.4e9],
            |c: &mut ScenarioConfig| c.h_rx_range = [0.0, 1.0],
            |c: &mut ScenarioConfig| c.span_range = [5.0, 1.0],
            |c: &mut ScenarioConfig| c.tx_power = 0.0,
        ] {
            let mut c = small();
            f(&mut c);
            assert!(matches!(
                c.validate(),
                Err(Error::InvalidConfig(_)) | Err(Error::InvalidPower(_))
            ));
        }
    }

    #[test]
    fn trial_records_every_scheme() {
        let c = small();
        let s = generate_scenario(&c, 0).unwrap();
        let sys = c.system().unwrap();
        let t = run_trial(&s.users, &s.freqs, &sys, s.baseline_seed).unwrap();
        let schemes: Vec<Scheme> = t.outcomes.iter().map(|o| o.scheme).collect();
        assert_eq!(schemes, Scheme::ALL);
        let inst = build_profit_table(&s.users, &s.freqs, &sys).unwrap().to_instance();
        for o in &t.outcomes {
            assert!(feasible(&inst, &o.assignment).unwrap());
            assert!(o.assignment.allocation.iter().all(|a| !a.is_empty()));
            assert!(o.mean_db.is_finite());
            assert_eq!(o.mean_db, 10.0 * (o.objective / 3.0).log10());
        }
    }

    #[test]
    fn single_trial_report_equals_trial() {
        let c = small().with_trials(1);
        let r = run_benchmark(&c).unwrap();
        for (s, o) in r.summary.iter().zip(&r.trials[0].outcomes) {
            assert_eq!(s.mean_objective, o.objective);
            assert_eq!(s.mean_db, o.mean_db);
            assert_eq!((s.time_min_s, s.time_max_s), (o.time_s, o.time_s));
        }
    }

    fn numbers(r: &BenchReport) -> Vec<f64> {
        let mut v: Vec<f64> = r.summary.iter().flat_map(|s| [s.mean_objective, s.mean_db]).collect();
        v.extend(r.trials.iter().flat_map(|t| t.outcomes.iter().map(|o| o.objective)));
        v
    }

    #[test]
    fn parallel_matches_serial_bitwise() {
        let c = small();
        let a = run_benchmark(&c).unwrap();
        let b = run_benchmark_serial(&c).unwrap();
        let (x, y) = (numbers(&a), numbers(&b));
        assert!(x.iter().zip(&y).all(|(p, q)| p.to_bits() == q.to_bits()));
        assert_eq!(
            a.trials.iter().map(|t| &t.outcomes[1].assignment).collect::<Vec<_>>(),
            b.trials.iter().map(|t| &t.outcomes[1].assignment).collect::<Vec<_>>()
        );
        assert_ne!(numbers(&run_benchmark(&c.clone().with_seed(8)).unwrap()), x);
    }

    #[test]
    fn export_round_trip_and_csv_shape() {
        let dir = tempfile::tempdir().unwrap();
        let r = run_benchmark(&small().with_trials(2)).unwrap();
        let json = dir.path().join("r.json");
        export_report(&r, ExportFormat::Json, &json).unwrap();
        assert_eq!(import_report(&json).unwrap(), r);

        let csv_path = dir.path().join("r.csv");
        let mut other = r.clone();
        other.config.k = 4;
        export_reports(&[r, other], ExportFormat::Csv, &csv_path).unwrap();
        let text = std::fs::read_to_string(&csv_path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "K,N,scheme,mean_db,time_mean_s,time_min_s,time_max_s");
        assert_eq!(lines.len(), 1 + 2 * Scheme::ALL.len());
        assert!(lines[1].starts_with("3,10,greedy,"));
        assert!(lines[6].starts_with("4,10,greedy,"));
    }

    #[test]
    fn export_error_names_destination() {
        let r = run_benchmark(&small().with_trials(1)).unwrap();
        let bad = Path::new("/nonexistent-dir/r.csv");
        let err = export_report(&r, ExportFormat::Csv, bad).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/r.csv"));
    }

    #[test]
    fn config_json_defaults_and_aliases() {
        let c: ScenarioConfig = serde_json::from_str(r#"{"K": 3, "N": 10, "master_seed": 5}"#).unwrap();
        assert_eq!(c, ScenarioConfig::new(3, 10).with_seed(5));
        assert!(serde_json::from_str::<ScenarioConfig>(r#"{"k": 3, "n": 10, "bogus": 1}"#).is_err());
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{}\"", s.name()));
        }
        assert!("best".parse::<Scheme>().is_err());
    }
}
