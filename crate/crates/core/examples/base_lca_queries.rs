//! Answer vertex queries one at a time with the base engine.

use hglca::hypergraph::{generate, GenParams};
use hglca::{Engine, LllParams, Mode};

fn main() {
    let h = generate(&GenParams {
        n: 200,
        m: 50,
        k: 8,
        max_edge_degree: 6,
        seed: 3,
        clustering: None,
    })
    .expect("feasible parameters");
    let params = LllParams::new(h.k(), 2, h.max_edge_degree(), 11).expect("valid");
    let mut engine = Engine::new(&h, params, Mode::Base).expect("matching k");
    for v in [0, 17, 42, 17, 199] {
        let c = engine.query(v).expect("query succeeds");
        let q = engine.last_query();
        println!(
            "v{v:<3} -> {}  (edge probes {}, component {:?})",
            c.bit(),
            q.edges_explored,
            q.component_bad_edges
        );
    }
    println!("{:?}", engine.stats());
}
