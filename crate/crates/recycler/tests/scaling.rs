use recycler::bench::{ratio_spread, run_bench, summarize};
use recycler::model::ModelSpec;
use recycler_core::{ColoringParams, HardcoreParams, RejectionScope, Variant};

#[test]
fn coloring_linear_on_cycles_for_large_k() {
    // k = 7 = Δ² + Δ + 1 on cycles
    let spec = ModelSpec::Coloring(ColoringParams::new(7, RejectionScope::Neighbors).unwrap());
    let rows = run_bench(&spec, "cycle", &[100, 1000, 10_000], 100, 21, false).unwrap();
    let summary = summarize(&rows);
    assert!(ratio_spread(&summary) <= 0.2, "{summary:?}");
}

#[test]
fn hardcore_basic_linear_below_threshold() {
    let spec = ModelSpec::Hardcore(HardcoreParams::new(0.1, Variant::Basic).unwrap());
    let rows = run_bench(&spec, "grid2d", &[10, 30, 60], 50, 22, false).unwrap();
    let summary = summarize(&rows);
    for s in &summary {
        assert!(s.mean_t >= s.n as f64);
    }
    assert!(ratio_spread(&summary) <= 0.2, "{summary:?}");
}
