//! Unbounded resampling, plus a step-limited run on an uncolourable input.

use hglca::global::resample;
use hglca::hypergraph::{generate, GenParams};

fn main() {
    let h = generate(&GenParams {
        n: 150,
        m: 40,
        k: 5,
        max_edge_degree: 2,
        seed: 3,
        clustering: None,
    })
    .expect("feasible parameters");
    let edges: Vec<Vec<usize>> = h.edges().map(<[usize]>::to_vec).collect();
    let steps: Vec<usize> = (0..20).map(|s| resample(&edges, s, None).expect("unbounded").steps).collect();
    println!("steps over 20 seeds: {steps:?} (m/Δ = {})", h.m() / h.max_edge_degree().max(1));

    let fano = vec![
        vec![0, 1, 2],
        vec![0, 3, 4],
        vec![0, 5, 6],
        vec![1, 3, 5],
        vec![1, 4, 6],
        vec![2, 3, 6],
        vec![2, 4, 5],
    ];
    println!("fano: {:?}", resample(&fano, 0, Some(10_000)).map(|o| o.steps));
}
