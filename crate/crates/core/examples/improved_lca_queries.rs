//! Query every vertex with the improved engine and check the result.

use hglca::hypergraph::{generate, GenParams};
use hglca::verify::check_proper;
use hglca::{Engine, LllParams, Mode};

fn main() {
    let h = generate(&GenParams {
        n: 150,
        m: 40,
        k: 9,
        max_edge_degree: 8,
        seed: 107,
        clustering: None,
    })
    .expect("feasible parameters");
    let params = LllParams::new(9, 3, h.max_edge_degree(), 107).expect("valid");
    let mut engine = Engine::new(&h, params, Mode::Improved)
        .expect("matching k")
        .with_self_check(true);
    for v in 0..h.n() {
        engine.query(v).expect("query succeeds");
    }
    let report = check_proper(&h, &engine.state().accepted_coloring());
    println!("proper: {}", report.is_proper());
    println!("{:?}", engine.stats());
    for comp in engine.components() {
        println!(
            "component {:?}: {} trimmed edges, {} exclusions",
            comp.bad,
            comp.trimmed.len(),
            comp.exclusions
        );
    }
}
