//! Evaluate the regime inequalities and component bound for a few triples.

use hglca::params::{check_params, comp_bound, LllParams};

fn main() {
    for (k, t, delta) in [(30, 10, 5), (30, 10, 6), (20, 5, 12), (3, 1, 1)] {
        let r = check_params(k, t, delta);
        println!("k={k:>2} t={t:>2} Δ={delta:>2}: cond_i={} cond_ii={}", r.cond_i, r.cond_ii);
    }
    let p = LllParams::new(30, 10, 5, 0).expect("valid");
    for m in [2, 1024, 4998] {
        println!("comp_bound(Δ=5, m={m}) = {}", comp_bound(&p, m));
    }
}
