//! Scenario to profit table to assignment, end to end.

use proptest::prelude::*;

use tworay_core::bench::{generate_scenario, run_benchmark, run_benchmark_serial, ScenarioConfig, Scheme};
use tworay_core::channel::CarrierFrequency;
use tworay_core::profits::{assigned_worst_case, build_profit_table, SystemConfig, UserProfile};
use tworay_core::qmkp::{feasible, objective};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn table_reconstructs_pair_worst_case(seed in any::<u64>(), k in 1usize..4, n in 2usize..7) {
        let s = generate_scenario(&ScenarioConfig::new(k, n.max(k)).with_seed(seed), 0).unwrap();
        let sys = SystemConfig::default();
        let t = build_profit_table(&s.users, &s.freqs, &sys).unwrap();
        for u in 0..t.n_users() {
            for i in 0..t.n_frequencies() {
                for j in 0..t.n_frequencies() {
                    prop_assert_eq!(t.pair[u][i][j], t.pair[u][j][i]);
                    if i == j {
                        continue;
                    }
                    let want = assigned_worst_case(&t.users[u], &[t.frequency(i), t.frequency(j)], &sys).unwrap();
                    let got = t.single[u][i] + t.single[u][j] + t.pair[u][i][j];
                    prop_assert!((got - want).abs() <= 1e-12 * want);
                }
            }
        }
    }

    #[test]
    fn trial_objectives_match_channel_model(seed in any::<u64>()) {
        let config = ScenarioConfig::new(3, 8).with_trials(1).with_seed(seed);
        let r = run_benchmark(&config).unwrap();
        let s = generate_scenario(&config, 0).unwrap();
        let sys = config.system().unwrap();
        let t = build_profit_table(&s.users, &s.freqs, &sys).unwrap();
        let inst = t.to_instance();
        for o in &r.trials[0].outcomes {
            prop_assert!(feasible(&inst, &o.assignment).unwrap());
            prop_assert_eq!(o.objective, objective(&inst, &o.assignment).unwrap());
            let direct: f64 = o
                .assignment
                .allocation
                .iter()
                .enumerate()
                .map(|(u, items)| {
                    let f: Vec<CarrierFrequency> = items.iter().map(|&i| t.frequency(i)).collect();
                    assigned_worst_case(&s.users[u], &f, &sys).unwrap()
                })
                .sum();
            prop_assert!((direct - o.objective).abs() <= 1e-9 * o.objective);
        }
    }
}

#[test]
fn identical_users_get_identical_rows() {
    let u = UserProfile::new(2.0, 25.0, 90.0).unwrap();
    let freqs: Vec<_> = [2.41e9, 2.44e9, 2.47e9]
        .map(|f| CarrierFrequency::from_hz(f).unwrap())
        .to_vec();
    let t = build_profit_table(&[u, u], &freqs, &SystemConfig::default()).unwrap();
    assert_eq!(t.single[0], t.single[1]);
    assert_eq!(t.pair[0], t.pair[1]);
}

#[test]
fn benchmark_is_reproducible_and_order_free() {
    let config = ScenarioConfig::new(4, 12).with_trials(12).with_seed(99);
    let a = run_benchmark(&config).unwrap();
    let b = run_benchmark(&config).unwrap();
    let c = run_benchmark_serial(&config).unwrap();
    for other in [&b, &c] {
        for (x, y) in a.summary.iter().zip(&other.summary) {
            assert_eq!(x.scheme, y.scheme);
            assert_eq!(x.mean_objective.to_bits(), y.mean_objective.to_bits());
            assert_eq!(x.mean_db.to_bits(), y.mean_db.to_bits());
        }
        for (x, y) in a.trials.iter().zip(&other.trials) {
            assert_eq!(x.trial_index, y.trial_index);
            for (p, q) in x.outcomes.iter().zip(&y.outcomes) {
                assert_eq!(p.assignment, q.assignment);
                assert_eq!(p.objective.to_bits(), q.objective.to_bits());
            }
        }
    }
    let schemes: Vec<Scheme> = a.summary.iter().map(|s| s.scheme).collect();
    assert_eq!(schemes, Scheme::ALL);
}

#[test]
fn greedy_dominates_random_on_typical_small_scenarios() {
    // statistical, over many trials rather than per instance
    let r = run_benchmark(&ScenarioConfig::new(3, 10).with_trials(200).with_seed(2)).unwrap();
    let g = r.summary_for(Scheme::Greedy).unwrap().mean_db;
    let x = r.summary_for(Scheme::Random).unwrap().mean_db;
    assert!(g > x + 2.0, "greedy {g} vs random {x}");
}
