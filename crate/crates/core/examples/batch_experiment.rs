//! Seeded batch over generated instances, summarised as JSON.

use hglca::harness::{run_experiment, Algo, ExperimentSpec, InstanceSource, OrderPolicy, RunConfig};
use hglca::hypergraph::GenParams;

fn main() {
    let spec = ExperimentSpec {
        source: InstanceSource::Generate(GenParams {
            n: 36 * 40,
            m: 6 * 40,
            k: 30,
            max_edge_degree: 5,
            seed: 0,
            clustering: Some(36),
        }),
        algo: Algo::Improved,
        order: OrderPolicy::Random,
        seeds: (0..8).collect(),
        repetitions: 1,
        config: RunConfig {
            t: Some(10),
            extend_every: Some(100),
            ..RunConfig::default()
        },
    };
    let report = run_experiment(&spec);
    println!("{}", serde_json::to_string_pretty(&report.summary).expect("serializable"));
}
