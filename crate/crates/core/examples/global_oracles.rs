//! Run both whole-graph procedures over the same vertex order.

use hglca::global::{global_base, global_improved};
use hglca::hypergraph::{generate, GenParams};
use hglca::verify::check_proper;
use hglca::LllParams;

fn main() {
    let h = generate(&GenParams {
        n: 200,
        m: 50,
        k: 8,
        max_edge_degree: 6,
        seed: 5,
        clustering: None,
    })
    .expect("feasible parameters");
    let params = LllParams::new(8, 2, h.max_edge_degree(), 5).expect("valid");
    let order: Vec<usize> = (0..h.n()).rev().collect();
    for (name, out) in [
        ("global-base", global_base(&h, &order, &params)),
        ("global-improved", global_improved(&h, &order, &params)),
    ] {
        match out {
            Ok(o) => {
                let proper = check_proper(&h, &o.state.accepted_coloring()).is_proper();
                println!("{name}: {:?}, proper {proper}", o.summary());
            }
            Err(e) => println!("{name}: {e}"),
        }
    }
}
