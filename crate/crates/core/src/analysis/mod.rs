//! Desk-scale checks of the witness-structure argument: (2,3)-tree and
//! witness enumeration against their counting bounds, basic-event
//! probabilities, and the amortization inequalities.

mod bounds;
mod events;
mod trees;
mod witness;

pub use bounds::{
    amortization_bound_check, max_delta, witness_prob_condition, AmortizationReport, SixthExponents, DELTA_CAP,
};
pub use events::{
    estimate_event_prob, Estimate, EventError, EventKind, EventProbabilities, EXTERNAL_TROUBLE, MIN_SAMPLES,
};
pub use trees::{enumerate_23_trees, line_graph_distances, TooManyEdges, MAX_EDGES};
pub use witness::{
    count_homomorphisms, count_witness_structures, unlabeled_trees, witness_count_bounds, witness_satisfied, Label,
    WitnessCountReport, WitnessError, WitnessStructure, MAX_WITNESS_SIZE,
};
