//! Global oracle procedures: unbounded RESAMPLE and the two whole-graph
//! colourings the local algorithms simulate.

mod base;
mod components;
mod improved;
mod resample;

use serde::Serialize;

use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::lca::{Failure, Mode, Workspace};
use crate::params::{LllParams, ParamError};
use crate::state::{ColoringState, VertexStatus};

pub use base::global_base;
pub use components::{build_component_hypergraph, ComponentHypergraph, Partition};
pub use improved::global_improved;
pub use resample::{resample, BudgetExhausted, ResampleInstance, ResampleOutcome};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GlobalError {
    #[error("order is not a permutation of 0..{n}")]
    NotPermutation { n: usize },
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("{0}")]
    Failure(#[from] Failure),
}

/// Result of a whole-graph run.
#[derive(Debug, Clone)]
pub struct GlobalOutcome {
    pub state: ColoringState,
    /// Shattering statuses in processing order.
    pub shattering: Vec<(VertexId, VertexStatus)>,
    pub components: ComponentHypergraph,
    /// Bad edges of every final component, in colouring order.
    pub final_components: Vec<Vec<EdgeId>>,
    pub trials: usize,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GlobalSummary {
    pub bad_components: usize,
    pub final_components: usize,
    pub max_component_bad_edges: usize,
    pub trials: usize,
    pub steps: usize,
}

impl GlobalOutcome {
    pub fn summary(&self) -> GlobalSummary {
        GlobalSummary {
            bad_components: self.components.nodes.len(),
            final_components: self.final_components.len(),
            max_component_bad_edges: self.final_components.iter().map(Vec::len).max().unwrap_or(0),
            trials: self.trials,
            steps: self.steps,
        }
    }
}

/// Runs the shattering phase over `order`.
pub fn shatter<'h>(
    h: &'h Hypergraph,
    order: &[VertexId],
    params: &LllParams,
    mode: Mode,
) -> Result<Workspace<'h>, GlobalError> {
    params.validate()?;
    if params.k != h.k() {
        return Err(ParamError::EdgeSize {
            params: params.k,
            graph: h.k(),
        }
        .into());
    }
    let n = h.n();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(GlobalError::NotPermutation { n });
    }
    let mut ws = Workspace::new(h, params.clone(), mode);
    for &v in order {
        ws.process_vertex(v);
    }
    Ok(ws)
}
