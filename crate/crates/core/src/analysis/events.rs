use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Chance that a vertex of the simulated edge is already troubled through
/// some other bad edge when it is processed.
pub const EXTERNAL_TROUBLE: f64 = 0.5;

pub const MIN_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
pub enum EventKind {
    /// Every vertex of the edge ends with one colour.
    M,
    /// The edge turns bad.
    B,
    /// The edge is unsafe with at least `k − 2t` accepted vertices.
    U,
}

/// Upper bounds on the basic-event probabilities of one edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EventProbabilities {
    /// `2^(1−k)`
    pub p_m: f64,
    /// `2^(1−(k−t))`
    pub p_b: f64,
    /// `2^(1−(k−2t))`
    pub p_u: f64,
    /// `2^(1−k/3)`
    pub q: f64,
}

impl EventProbabilities {
    pub fn new(k: usize, t: usize) -> Self {
        let (k, t) = (k as f64, t as f64);
        Self {
            p_m: (1.0 - k).exp2(),
            p_b: (1.0 - (k - t)).exp2(),
            p_u: (1.0 - (k - 2.0 * t)).exp2(),
            q: (1.0 - k / 3.0).exp2(),
        }
    }

    pub fn bound(&self, kind: EventKind) -> f64 {
        match kind {
            EventKind::M => self.p_m,
            EventKind::B => self.p_b,
            EventKind::U => self.p_u,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub kind: EventKind,
    pub k: usize,
    pub t: usize,
    pub samples: usize,
    pub hits: usize,
    pub mean: f64,
    pub stderr: f64,
    pub bound: f64,
}

impl Estimate {
    /// `mean ≤ bound + z·stderr`.
    pub fn below_bound(&self, z: f64) -> bool {
        self.mean <= self.bound + z * self.stderr
    }

    /// `|mean − bound| ≤ z·stderr`.
    pub fn matches_bound(&self, z: f64) -> bool {
        (self.mean - self.bound).abs() <= z * self.stderr
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EventError {
    #[error("need at least {MIN_SAMPLES} samples, got {0}")]
    TooFewSamples(usize),
    #[error("need 1 <= t <= k, got t = {t}, k = {k}")]
    Threshold { k: usize, t: usize },
}

/// Shatters one edge: vertices are processed in order, each draws a colour,
/// and becomes troubled if the edge is already bad or, independently, with
/// probability [`EXTERNAL_TROUBLE`]. Returns whether `kind` occurred.
fn shatter_edge(kind: EventKind, k: usize, t: usize, rng: &mut ChaCha8Rng) -> bool {
    let threshold = k - t;
    let mut accepted = [0usize; 2];
    let mut all = [0usize; 2];
    for _ in 0..k {
        let c = rng.gen::<bool>() as usize;
        all[c] += 1;
        let bad = accepted[0] + accepted[1] >= threshold && (accepted[0] == 0 || accepted[1] == 0);
        let external = rng.gen_bool(EXTERNAL_TROUBLE);
        if !bad && !external {
            accepted[c] += 1;
        }
    }
    let mono_accepted = accepted[0] == 0 || accepted[1] == 0;
    let total = accepted[0] + accepted[1];
    match kind {
        EventKind::M => all[0] == k || all[1] == k,
        EventKind::B => mono_accepted && total >= threshold,
        EventKind::U => mono_accepted && total < threshold && total >= k.saturating_sub(2 * t),
    }
}

/// Monte Carlo frequency of a basic event over independent single-edge
/// shatterings.
pub fn estimate_event_prob(
    kind: EventKind,
    k: usize,
    t: usize,
    samples: usize,
    seed: u64,
) -> Result<Estimate, EventError> {
    if samples < MIN_SAMPLES {
        return Err(EventError::TooFewSamples(samples));
    }
    if t == 0 || t > k {
        return Err(EventError::Threshold { k, t });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hits = (0..samples).filter(|_| shatter_edge(kind, k, t, &mut rng)).count();
    let mean = hits as f64 / samples as f64;
    let stderr = (mean * (1.0 - mean) / samples as f64).sqrt();
    Ok(Estimate {
        kind,
        k,
        t,
        samples,
        hits,
        mean,
        stderr,
        bound: EventProbabilities::new(k, t).bound(kind),
    })
}
