use super::{build_component_hypergraph, shatter, GlobalError, GlobalOutcome, Partition};
use crate::hypergraph::{Hypergraph, VertexId};
use crate::lca::{Failure, Inclusion, Mode};
use crate::params::LllParams;

/// Base procedure: shatter in `order`, join bad-components linked by
/// unsafe edges into final components and resample each one together with
/// every unsafe edge around it.
pub fn global_base(h: &Hypergraph, order: &[VertexId], params: &LllParams) -> Result<GlobalOutcome, GlobalError> {
    let mut ws = shatter(h, order, params, Mode::Base)?;
    let shattering = ws.log.clone();
    let ch = build_component_hypergraph(h, &ws.state, params.bad_threshold());
    let mut part = Partition::new(ch.nodes.len());
    for (_, met) in &ch.hyperedges {
        for w in met.windows(2) {
            part.union(w[0], w[1]);
        }
    }
    let bound = params.component_limit(h.m());
    let mut finals = Vec::new();
    let (mut trials, mut steps) = (0, 0);
    for group in part.classes() {
        let mut bad: Vec<_> = group.iter().flat_map(|&x| ch.nodes[x].iter().copied()).collect();
        bad.sort_unstable();
        if bad.len() > bound {
            return Err(Failure::ComponentBound { size: bad.len(), bound }.into());
        }
        let mut around: Vec<_> = group.iter().flat_map(|&x| ch.unsafe_of_node[x].iter().copied()).collect();
        around.sort_unstable();
        around.dedup();
        let c = ws.color_residual(&bad, &around, Inclusion::AllUnsafe)?;
        trials += c.trials;
        steps += c.steps;
        finals.push(bad);
    }
    Ok(GlobalOutcome {
        state: ws.state,
        shattering,
        components: ch,
        final_components: finals,
        trials,
        steps,
    })
}
