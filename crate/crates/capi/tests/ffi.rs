//! Exercises the C entry points the way a foreign caller would: through raw
//! pointers and status codes.

use std::ptr;

use poisson_er_capi::*;

#[test]
fn generated_header_ships_with_the_crate() {
    let header = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("poisson_er.h");
    let text = std::fs::read_to_string(&header).expect("header generated by build.rs");
    for symbol in [
        "poisson_er_stream_new",
        "poisson_er_poisson_sample",
        "poisson_er_beta",
        "poisson_er_graph_sample_fixed",
        "poisson_er_walk_graph",
        "poisson_er_walk_hitting_time",
        "PoissonErStatus",
        "PoissonErTheoryTargets",
    ] {
        assert!(text.contains(symbol), "header is missing {symbol}");
    }
}

#[test]
fn end_to_end_giant_estimate_through_the_c_abi() {
    unsafe {
        let mut beta = 0.0f64;
        assert_eq!(poisson_er_beta(2.0, &mut beta), PoissonErStatus::PoissonErOk);

        // Average the largest-component fraction over a few Poissonized
        // cores at c = 2 and compare with beta(2) loosely.
        let n = 20_000u64;
        let trials = 5;
        let mut total = 0.0;
        for trial in 0..trials {
            let stream = poisson_er_stream_new(123, trial);
            let mut graph = ptr::null_mut();
            assert_eq!(
                poisson_er_graph_sample_poissonized(stream, n as f64, 2.0 / n as f64, &mut graph),
                PoissonErStatus::PoissonErOk
            );
            let mut walk = ptr::null_mut();
            assert_eq!(
                poisson_er_walk_graph(stream, graph, 2.0 / n as f64, &mut walk),
                PoissonErStatus::PoissonErOk
            );
            let mut largest = 0u64;
            assert_eq!(
                poisson_er_walk_top_components(walk, &mut largest, ptr::null_mut()),
                PoissonErStatus::PoissonErOk
            );
            total += largest as f64 / n as f64;
            poisson_er_walk_free(walk);
            poisson_er_graph_free(graph);
            poisson_er_stream_free(stream);
        }
        let mean = total / trials as f64;
        assert!((mean - beta).abs() < 0.05, "mean fraction {mean} vs beta {beta}");
    }
}

#[test]
fn streams_are_reproducible_across_the_boundary() {
    unsafe {
        let mut draws = [[0u64; 8]; 2];
        for (run, out) in draws.iter_mut().enumerate() {
            let _ = run;
            let stream = poisson_er_stream_new(77, 5);
            for slot in out.iter_mut() {
                assert_eq!(
                    poisson_er_geometric_skip(stream, 0.25, slot),
                    PoissonErStatus::PoissonErOk
                );
            }
            poisson_er_stream_free(stream);
        }
        assert_eq!(draws[0], draws[1]);
    }
}
