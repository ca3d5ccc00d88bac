use rayon::ThreadPoolBuilder;
use urnlab::montecarlo::{
    estimate, frequency_table, tally, tally_range, ModelSpec, SimModel, DEFAULT_SEED,
};

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn worker_count_does_not_change_results() {
    for kind in SimModel::ALL {
        let model = ModelSpec::new(kind, 40).unwrap();
        let one = in_pool(1, || estimate(&model, 150_000, 99).unwrap());
        let four = in_pool(4, || estimate(&model, 150_000, 99).unwrap());
        assert_eq!(one, four);
        assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&four).unwrap());
    }
}

#[test]
fn arbitrary_partitions_merge_exactly() {
    let model = ModelSpec::new(SimModel::UniformComposition, 13).unwrap();
    let trials = 100_003u64;
    let serial = tally_range(&model, 5, 0..trials);
    let cuts = [0, 1, 777, 40_000, 40_001, 99_999, trials];
    let merged = cuts
        .windows(2)
        .rev()
        .map(|w| tally_range(&model, 5, w[0]..w[1]))
        .fold(Default::default(), urnlab::montecarlo::Tally::merge);
    assert_eq!(serial, merged);
    assert_eq!(serial, tally(&model, 5, trials));
}

#[test]
fn different_seeds_differ() {
    let model = ModelSpec::new(SimModel::WeightedRedPick, 100).unwrap();
    assert_ne!(tally(&model, 1, 50_000), tally(&model, 2, 50_000));
}

#[test]
fn ordering_is_symmetric() {
    let model = ModelSpec::new(SimModel::UniformComposition, 100).unwrap();
    let t = frequency_table(&model, 1_000_000, DEFAULT_SEED).unwrap();
    let m = t.trials as f64;
    let (gr, rg) = (t.frequencies[1], t.frequencies[2]);
    // Var(p̂_RG - p̂_GR) for a multinomial with both cells at 1/6.
    let (p1, p2) = (1.0 / 6.0, 1.0 / 6.0);
    let se = ((p1 + p2 - (p1 - p2) * (p1 - p2)) / m).sqrt();
    assert!((rg - gr).abs() <= 5.0 * se, "RG {rg} vs GR {gr}");
    assert!(t.verdict.passed(), "{t:?}");
}

#[test]
fn small_urns_simulate_correctly() {
    for kind in SimModel::ALL {
        let r = estimate(&ModelSpec::new(kind, 2).unwrap(), 300_000, DEFAULT_SEED).unwrap();
        assert!(r.all_passed(), "{r:?}");
    }
}
