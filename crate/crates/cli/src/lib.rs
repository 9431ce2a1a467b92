//! Argument definitions and subcommand drivers for the `tworay` binary.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use tworay_core::bench::{
    export_report, export_reports, run_benchmark, sample_frequencies, write_csv, BenchReport, ExportFormat,
    FrequencyLayout, ScenarioConfig, Scheme,
};
use tworay_core::channel::{to_decibel, CarrierFrequency, FrequencyPair, SceneGeometry, TwoRayLink};
use tworay_core::format::{sig6, write_atomic};
use tworay_core::profits::{build_profit_table, SystemConfig, UserProfile};
use tworay_core::qmkp::{objective, Instance};
use tworay_core::worstcase::{grid_min, worst_case_pair, worst_case_single, DistanceInterval, ResolutionPolicy};

#[derive(Debug, Parser)]
#[command(
    name = "tworay",
    version,
    about = "Worst-case two-ray link budgets and frequency assignment"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Receive power over log-spaced distances, as CSV.
    PowerCurve(PowerCurveArgs),
    /// Distances of the interior power minima of one carrier.
    Minima(MinimaArgs),
    /// Worst-case receive power over a distance interval.
    WorstCase(WorstCaseArgs),
    /// Assign frequency pairs to users.
    Assign(AssignArgs),
    /// Monte-Carlo comparison of the assignment schemes.
    Bench(BenchArgs),
}

/// Accepts plain Hz or a k/M/G suffix, with or without a trailing "Hz".
pub fn parse_hz(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let t = t.strip_suffix("Hz").or_else(|| t.strip_suffix("hz")).unwrap_or(t);
    let (num, scale) = match t.char_indices().last() {
        Some((i, 'k' | 'K')) => (&t[..i], 1e3),
        Some((i, 'M')) => (&t[..i], 1e6),
        Some((i, 'G' | 'g')) => (&t[..i], 1e9),
        _ => (t, 1.0),
    };
    let v: f64 = num.trim().parse().map_err(|_| format!("'{s}' is not a frequency"))?;
    let hz = v * scale;
    if hz.is_finite() && hz > 0.0 {
        Ok(hz)
    } else {
        Err(format!("frequency must be positive, got '{s}'"))
    }
}

#[derive(Debug, Clone, Args)]
pub struct LinkArgs {
    /// Transmitter height, m.
    #[arg(long = "htx", default_value_t = 10.0)]
    pub h_tx: f64,
    /// Receiver height, m.
    #[arg(long = "hrx")]
    pub h_rx: f64,
    /// Transmit power, W. Also the dB reference.
    #[arg(long = "pt", default_value_t = 1.0)]
    pub tx_power: f64,
}

impl LinkArgs {
    fn link(&self) -> Result<TwoRayLink> {
        ensure!(
            self.tx_power.is_finite() && self.tx_power > 0.0,
            "--pt must be positive, got {}",
            self.tx_power
        );
        Ok(TwoRayLink::new(SceneGeometry::new(self.h_tx, self.h_rx)?))
    }
}

#[derive(Debug, Clone, Args)]
pub struct CarrierArgs {
    /// Carrier frequency (Hz, or with a k/M/G suffix).
    #[arg(long = "freq", value_parser = parse_hz)]
    pub freq: f64,
    /// Second carrier; switches to the dual-carrier model.
    #[arg(long = "freq2", value_parser = parse_hz)]
    pub freq2: Option<f64>,
}

enum Carriers {
    Single(CarrierFrequency),
    Pair(FrequencyPair),
}

impl CarrierArgs {
    fn carriers(&self) -> Result<Carriers> {
        Ok(match self.freq2 {
            None => Carriers::Single(CarrierFrequency::from_hz(self.freq)?),
            Some(f2) => Carriers::Pair(FrequencyPair::from_hz(self.freq, f2)?),
        })
    }
}

/// Sends `render`'s output to `out`, or to stdout when no path is given.
/// Files are replaced atomically.
fn emit(out: Option<&Path>, stdout: &mut dyn Write, render: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let mut buf = Vec::new();
    render(&mut buf)?;
    match out {
        Some(path) => {
            write_atomic(path, |w| {
                w.write_all(&buf).map_err(|source| tworay_core::Error::Io {
                    path: path.to_path_buf(),
                    source,
                })
            })?;
        }
        None => stdout.write_all(&buf)?,
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct PowerCurveArgs {
    #[command(flatten)]
    pub link: LinkArgs,
    #[command(flatten)]
    pub carriers: CarrierArgs,
    /// Smallest distance, m.
    #[arg(long = "dmin", default_value_t = 1.0)]
    pub d_min: f64,
    /// Largest distance, m.
    #[arg(long = "dmax", default_value_t = 1000.0)]
    pub d_max: f64,
    /// Number of log-spaced samples, endpoints included.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `n >= 2` log-spaced points from `a` to `b`, with exact endpoints.
pub fn log_space(a: f64, b: f64, n: usize) -> Vec<f64> {
    let ratio = (b / a).ln();
    (0..n)
        .map(|i| match i {
            0 => a,
            _ if i == n - 1 => b,
            _ => a * (ratio * i as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

pub fn cmd_power_curve(args: &PowerCurveArgs, stdout: &mut dyn Write) -> Result<()> {
    let link = args.link.link()?;
    let carriers = args.carriers.carriers()?;
    ensure!(args.samples >= 2, "--samples must be at least 2, got {}", args.samples);
    ensure!(
        args.d_min.is_finite() && args.d_min > 0.0 && args.d_min < args.d_max && args.d_max.is_finite(),
        "need 0 < --dmin < --dmax, got {} and {}",
        args.d_min,
        args.d_max
    );
    let pt = args.link.tx_power;

    let mut rows = Vec::with_capacity(args.samples);
    for d in log_space(args.d_min, args.d_max, args.samples) {
        let row = match &carriers {
            Carriers::Single(f) => vec![d, to_decibel(link.receive_power(d, *f, pt)?, pt)],
            Carriers::Pair(p) => vec![
                d,
                to_decibel(link.sum_power(d, p, pt)?, pt),
                to_decibel(link.sum_power_lower_bound(d, p, pt)?, pt),
            ],
        };
        rows.push(row);
    }
    let header = match carriers {
        Carriers::Single(_) => "distance,power_db",
        Carriers::Pair(_) => "distance,power_sum_db,lower_bound_db",
    };
    emit(args.out.as_deref(), stdout, |w| {
        writeln!(w, "# dB reference: P_t = {} W", sig6(pt))?;
        writeln!(w, "{header}")?;
        for row in rows {
            let cells: Vec<String> = row.into_iter().map(sig6).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    })
}

#[derive(Debug, Args)]
pub struct MinimaArgs {
    #[command(flatten)]
    pub link: LinkArgs,
    /// Carrier frequency (Hz, or with a k/M/G suffix).
    #[arg(long = "freq", value_parser = parse_hz)]
    pub freq: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn cmd_minima(args: &MinimaArgs, stdout: &mut dyn Write) -> Result<()> {
    let link = args.link.link()?;
    let f = CarrierFrequency::from_hz(args.freq)?;
    let pt = args.link.tx_power;
    let nulls = link.null_distances(f);
    if nulls.is_empty() {
        eprintln!(
            "note: no interior minima; the maximum phase shift {} rad is below 2*pi",
            sig6(link.max_phase_shift(f))
        );
    }
    let rows = nulls
        .iter()
        .enumerate()
        .map(|(i, &d)| Ok((i + 1, d, to_decibel(link.receive_power(d, f, pt)?, pt))))
        .collect::<Result<Vec<_>>>()?;
    emit(args.out.as_deref(), stdout, |w| {
        writeln!(w, "k,distance,power_db")?;
        for (k, d, db) in rows {
            writeln!(w, "{k},{},{}", sig6(d), sig6(db))?;
        }
        Ok(())
    })
}

#[derive(Debug, Args)]
pub struct WorstCaseArgs {
    #[command(flatten)]
    pub link: LinkArgs,
    #[command(flatten)]
    pub carriers: CarrierArgs,
    #[arg(long = "dmin")]
    pub d_min: f64,
    #[arg(long = "dmax")]
    pub d_max: f64,
    /// Also search a dense grid and report the difference.
    #[arg(long)]
    pub verify_grid: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WorstCaseReport {
    pub worst_case_db: f64,
    pub worst_case_w: f64,
    pub argmin_m: f64,
    pub candidate: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_argmin_m: Option<f64>,
    /// Closed form minus grid, dB.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy_db: Option<f64>,
}

pub fn worst_case_report(args: &WorstCaseArgs) -> Result<WorstCaseReport> {
    let link = args.link.link()?;
    let interval = DistanceInterval::new(args.d_min, args.d_max)?;
    let pt = args.link.tx_power;
    let (result, grid) = match args.carriers.carriers()? {
        Carriers::Single(f) => {
            let r = worst_case_single(&link, &interval, f, pt)?;
            let g = args.verify_grid.then(|| {
                let policy = ResolutionPolicy::for_carrier(&link, f);
                grid_min(|d| link.receive_power(d, f, pt).unwrap_or(f64::NAN), &interval, &policy)
            });
            (r, g)
        }
        Carriers::Pair(p) => {
            let r = worst_case_pair(&link, &interval, &p, pt)?;
            let g = args.verify_grid.then(|| {
                let policy = ResolutionPolicy::for_pair(&link, &p);
                grid_min(
                    |d| link.sum_power_lower_bound(d, &p, pt).unwrap_or(f64::NAN),
                    &interval,
                    &policy,
                )
            });
            (r, g)
        }
    };
    let worst_case_db = to_decibel(result.power, pt);
    let grid_db = grid.as_ref().map(|g| to_decibel(g.power, pt));
    Ok(WorstCaseReport {
        worst_case_db,
        worst_case_w: result.power,
        argmin_m: result.argmin_distance,
        candidate: result.candidate_kind.to_string(),
        grid_db,
        grid_argmin_m: grid.map(|g| g.argmin_distance),
        discrepancy_db: grid_db.map(|g| worst_case_db - g),
    })
}

pub fn cmd_worst_case(args: &WorstCaseArgs, stdout: &mut dyn Write) -> Result<()> {
    let report = worst_case_report(args)?;
    emit(args.out.as_deref(), stdout, |w| {
        match args.format {
            ReportFormat::Json => {
                serde_json::to_writer_pretty(&mut *w, &report)?;
                writeln!(w)?;
            }
            ReportFormat::Text => {
                writeln!(w, "worst_case_db: {}", sig6(report.worst_case_db))?;
                writeln!(w, "worst_case_w: {}", sig6(report.worst_case_w))?;
                writeln!(w, "argmin_m: {}", sig6(report.argmin_m))?;
                writeln!(w, "candidate: {}", report.candidate)?;
                if let (Some(g), Some(a), Some(x)) = (report.grid_db, report.grid_argmin_m, report.discrepancy_db) {
                    writeln!(w, "grid_db: {}", sig6(g))?;
                    writeln!(w, "grid_argmin_m: {}", sig6(a))?;
                    writeln!(w, "discrepancy_db: {}", sig6(x))?;
                }
            }
        }
        Ok(())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Greedy,
    Random,
    RrSimple,
    RrBlock,
    RrProfits,
    All,
}

impl SchemeArg {
    fn schemes(self) -> Vec<Scheme> {
        match self {
            SchemeArg::Greedy => vec![Scheme::Greedy],
            SchemeArg::Random => vec![Scheme::Random],
            SchemeArg::RrSimple => vec![Scheme::RrSimple],
            SchemeArg::RrBlock => vec![Scheme::RrBlock],
            SchemeArg::RrProfits => vec![Scheme::RrProfits],
            SchemeArg::All => Scheme::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Args)]
pub struct AssignArgs {
    /// JSON array of {"h_rx_m", "d_min_m", "d_max_m"} objects.
    #[arg(long)]
    pub users: PathBuf,
    /// JSON array of frequencies in Hz.
    #[arg(long, conflicts_with_all = ["band", "n"])]
    pub freqs: Option<PathBuf>,
    /// Band to draw frequencies from when no file is given.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], value_parser = parse_hz, requires = "n")]
    pub band: Option<Vec<f64>>,
    /// Number of frequencies to draw from the band.
    #[arg(long, requires = "band")]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = SchemeArg::Greedy)]
    pub scheme: SchemeArg,
    /// Seeds the frequency draw and the random scheme.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "htx", default_value_t = 10.0)]
    pub h_tx: f64,
    #[arg(long = "pt", default_value_t = 1.0)]
    pub tx_power: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UserRecord {
    pub h_rx_m: f64,
    pub d_min_m: f64,
    pub d_max_m: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SchemeAssignment {
    pub scheme: Scheme,
    /// Item indices per user, into `frequencies_hz`.
    pub allocation: Vec<Vec<usize>>,
    /// The same allocation as frequencies.
    pub frequencies_hz: Vec<Vec<f64>>,
    pub objective_w: f64,
    /// Worst-case power of each user relative to P_t; null for a user
    /// left without frequencies.
    pub per_user_db: Vec<Option<f64>>,
    /// Objective over K * P_t, dB.
    pub mean_db: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AssignOutput {
    pub frequencies_hz: Vec<f64>,
    pub results: Vec<SchemeAssignment>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {what} file {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {what} file {}", path.display()))
}

fn user_profit(instance: &Instance, u: usize, items: &[usize]) -> f64 {
    let mut total = 0.0;
    for (a, &i) in items.iter().enumerate() {
        total += instance.profit(u, i);
        for &j in &items[a + 1..] {
            total += instance.joint_profit(u, i, j);
        }
    }
    total
}

pub fn assign(args: &AssignArgs) -> Result<AssignOutput> {
    let records: Vec<UserRecord> = read_json(&args.users, "users")?;
    ensure!(
        !records.is_empty(),
        "users file {} lists no users",
        args.users.display()
    );
    let users = records
        .iter()
        .enumerate()
        .map(|(u, r)| {
            UserProfile::new(r.h_rx_m, r.d_min_m, r.d_max_m)
                .with_context(|| format!("user {u} in {}", args.users.display()))
        })
        .collect::<Result<Vec<_>>>()?;
    let freqs = match (&args.freqs, &args.band, args.n) {
        (Some(path), _, _) => {
            let hz: Vec<f64> = read_json(path, "frequencies")?;
            hz.iter()
                .enumerate()
                .map(|(i, &f)| CarrierFrequency::from_hz(f).with_context(|| format!("entry {i} of {}", path.display())))
                .collect::<Result<Vec<_>>>()?
        }
        (None, Some(band), Some(n)) => sample_frequencies([band[0], band[1]], n, FrequencyLayout::Uniform, args.seed)?,
        _ => bail!("give either --freqs FILE or --band LO HI with --n"),
    };
    let system = SystemConfig::new(args.h_tx, args.tx_power)?;
    let table = build_profit_table(&users, &freqs, &system)?;
    let instance = table.to_instance();
    let scale = users.len() as f64 * system.tx_power;

    let results = args
        .scheme
        .schemes()
        .into_iter()
        .map(|scheme| {
            let a = scheme
                .solve(&instance, args.seed)
                .with_context(|| format!("scheme {scheme}"))?;
            let objective_w = objective(&instance, &a)?;
            let per_user_db = a
                .allocation
                .iter()
                .enumerate()
                .map(|(u, items)| {
                    (!items.is_empty()).then(|| to_decibel(user_profit(&instance, u, items), system.tx_power))
                })
                .collect();
            Ok(SchemeAssignment {
                scheme,
                frequencies_hz: a
                    .allocation
                    .iter()
                    .map(|items| items.iter().map(|&i| table.frequencies_hz[i]).collect())
                    .collect(),
                allocation: a.allocation,
                objective_w,
                per_user_db,
                mean_db: to_decibel(objective_w, scale),
            })
        })
        .collect::<Result<_>>()?;
    Ok(AssignOutput {
        frequencies_hz: table.frequencies_hz,
        results,
    })
}

pub fn cmd_assign(args: &AssignArgs, stdout: &mut dyn Write) -> Result<()> {
    let output = assign(args)?;
    emit(args.out.as_deref(), stdout, |w| {
        serde_json::to_writer_pretty(&mut *w, &output)?;
        writeln!(w)?;
        Ok(())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchFormat {
    Csv,
    Json,
    Both,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// JSON scenario config, or an array of configs.
    #[arg(long, conflicts_with_all = ["k", "n"])]
    pub config: Option<PathBuf>,
    /// Number of users.
    #[arg(short = 'k', long = "k")]
    pub k: Option<usize>,
    /// Number of frequencies.
    #[arg(short = 'n', long = "n")]
    pub n: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Master seed; overrides the config file.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Place frequencies on an even grid instead of drawing them.
    #[arg(long)]
    pub grid: bool,
    /// Output stem; writes STEM.csv and/or STEM.json. Without it the CSV
    /// summary goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = BenchFormat::Both)]
    pub format: BenchFormat,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(ScenarioConfig),
    Many(Vec<ScenarioConfig>),
}

pub fn bench_configs(args: &BenchArgs) -> Result<Vec<ScenarioConfig>> {
    let mut configs = match (&args.config, args.k, args.n) {
        (Some(path), _, _) => match read_json::<OneOrMany>(path, "config")? {
            OneOrMany::One(c) => vec![c],
            OneOrMany::Many(v) => v,
        },
        (None, Some(k), Some(n)) => vec![ScenarioConfig::new(k, n)],
        _ => bail!("give either --config FILE or both -k and -n"),
    };
    ensure!(!configs.is_empty(), "no configurations to run");
    for c in &mut configs {
        if let Some(t) = args.trials {
            c.trials = t;
        }
        if let Some(s) = args.seed {
            c.master_seed = s;
        }
        if args.grid {
            c.layout = FrequencyLayout::Grid;
        }
        ensure!(c.trials >= 1, "trials must be at least 1");
        c.validate()?;
    }
    Ok(configs)
}

fn with_extension(stem: &Path, ext: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

pub fn cmd_bench(args: &BenchArgs, stdout: &mut dyn Write) -> Result<()> {
    let configs = bench_configs(args)?;
    let reports = configs
        .iter()
        .map(run_benchmark)
        .collect::<tworay_core::Result<Vec<BenchReport>>>()?;
    let Some(stem) = &args.out else {
        write_csv(&reports, stdout)?;
        return Ok(());
    };
    if matches!(args.format, BenchFormat::Csv | BenchFormat::Both) {
        export_reports(&reports, ExportFormat::Csv, &with_extension(stem, "csv"))?;
    }
    if matches!(args.format, BenchFormat::Json | BenchFormat::Both) {
        let path = with_extension(stem, "json");
        match reports.as_slice() {
            [one] => export_report(one, ExportFormat::Json, &path)?,
            many => export_reports(many, ExportFormat::Json, &path)?,
        }
    }
    for r in &reports {
        for s in &r.summary {
            eprintln!(
                "K={} N={} {:<10} {} dB",
                r.config.k,
                r.config.n,
                s.scheme.name(),
                sig6(s.mean_db)
            );
        }
    }
    Ok(())
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::PowerCurve(a) => cmd_power_curve(a, stdout),
        Command::Minima(a) => cmd_minima(a, stdout),
        Command::WorstCase(a) => cmd_worst_case(a, stdout),
        Command::Assign(a) => cmd_assign(a, stdout),
        Command::Bench(a) => cmd_bench(a, stdout),
    }
}
