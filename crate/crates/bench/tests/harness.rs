use recon_bench::*;
use recon_core::{format_word, point_of_no_information, Engine, Limits};

const FIXTURE: &str = include_str!("fixtures/gen_n16_m8_seed42.txt");

#[test]
fn generator_matches_golden_fixture() {
    let set = gen_random_set(16, 8, 42).unwrap();
    let first: Vec<String> = set.rows().iter().take(5).map(|r| format_word(r)).collect();
    let expected: Vec<&str> = FIXTURE.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(first, expected);
}

fn run(cfg: &ExperimentConfig) -> String {
    let mut sink = CsvSink::new(Vec::new()).unwrap();
    run_experiment(cfg, Limits::default(), |r| sink.write(&r)).unwrap();
    String::from_utf8(sink.finish().unwrap()).unwrap()
}

#[test]
fn reruns_agree_outside_timing_columns() {
    let mut cfg = ExperimentConfig::new(vec![8, 10], vec![12, 40], vec![2, 3, 5], 2024);
    cfg.trials = Some(2);
    let a = run(&cfg);
    let b = run(&cfg);
    assert_eq!(strip_timing(&a).unwrap(), strip_timing(&b).unwrap());
    let recs = read_csv(a.as_bytes()).unwrap();
    assert_eq!(recs.len(), 2 * 2 * 3 * 2 * 3);
    assert!(cross_engine_mismatches(&recs).is_empty());
}

#[test]
fn sweeping_k_reuses_each_trial_dataset() {
    let mut cfg = ExperimentConfig::new(vec![9], vec![30], vec![1, 2, 3, 4, 5, 6, 7, 8, 9], 3);
    cfg.trials = Some(3);
    cfg.engines = vec![Engine::Overlap];
    let mut recs = Vec::new();
    run_experiment(&cfg, Limits::default(), |r| {
        recs.push(r);
        Ok(())
    })
    .unwrap();
    for trial in 0..3 {
        let curve: Vec<usize> = recs.iter().filter(|r| r.trial == trial).map(|r| r.extra_strings.unwrap()).collect();
        assert!(curve.windows(2).all(|w| w[0] >= w[1]), "{curve:?}");
        assert_eq!(*curve.last().unwrap(), 0);
    }
}

#[test]
fn no_information_cells_report_every_missing_string() {
    for trial in 0..5 {
        let seed = trial_seed(11, 10, 200, trial);
        let set = gen_random_set(10, 200, seed).unwrap();
        let p = point_of_no_information(&set);
        for k in 1..=p {
            for rec in run_cell(10, 200, k, trial, seed, &Engine::ALL, Limits::default()).unwrap() {
                assert_eq!(rec.extra_strings, Some(1024 - 200));
            }
        }
    }
}

#[test]
fn toml_config_drives_a_run() {
    let cfg = ExperimentConfig::from_toml("n = 7\nm = [10, 20]\nk = \"2-3\"\ntrials = 1\nseed = 5\n").unwrap();
    let recs = read_csv(run(&cfg).as_bytes()).unwrap();
    assert_eq!(recs.len(), 2 * 2 * 3);
    let engines: Vec<Engine> = recs.iter().take(3).map(|r| r.engine).collect();
    assert_eq!(engines, vec![Engine::Brute, Engine::Greedy, Engine::Overlap]);
    let summary = summarize(&recs);
    assert_eq!(summary.len(), 12);
    let mut out = Vec::new();
    write_summary(&mut out, &summary).unwrap();
    assert_eq!(String::from_utf8(out).unwrap().lines().count(), 13);
}
