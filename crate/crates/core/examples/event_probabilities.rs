//! Monte Carlo estimates of the single-edge events against their bounds.

use hglca::analysis::{estimate_event_prob, EventKind};

fn main() {
    for (kind, k, t) in [(EventKind::M, 10, 3), (EventKind::B, 12, 4), (EventKind::U, 9, 3)] {
        let e = estimate_event_prob(kind, k, t, 200_000, 1).expect("valid");
        println!(
            "{kind:?} k={k} t={t}: {:.5} ± {:.5} (bound {:.5})",
            e.mean, e.stderr, e.bound
        );
    }
}
