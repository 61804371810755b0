//! Algorithm parameters and the exact evaluation of the regime conditions.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParamError {
    #[error("need 2 <= t <= k, got t = {t}, k = {k}")]
    Threshold { k: usize, t: usize },
    #[error("factor `{name}` must be finite and positive, got {value}")]
    Factor { name: &'static str, value: f64 },
    #[error("parameters are for k = {params}, hypergraph has k = {graph}")]
    EdgeSize { params: usize, graph: usize },
}

/// Parameters shared by every coloring procedure.
///
/// `t` fixes α = t/k: an edge turns bad once `k - t` accepted vertices agree,
/// and `t` is the minimum number of recolourable vertices an edge keeps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LllParams {
    pub k: usize,
    pub t: usize,
    /// Edge-degree bound Δ of the instance (exclusive count).
    pub delta: usize,
    pub comp_bound_factor: f64,
    pub trials_factor: f64,
    pub steps_factor: f64,
    pub seed: u64,
}

impl LllParams {
    pub fn new(k: usize, t: usize, delta: usize, seed: u64) -> Result<Self, ParamError> {
        let p = Self {
            k,
            t,
            delta,
            comp_bound_factor: 2.0,
            trials_factor: 2.0,
            steps_factor: 2.0,
            seed,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if self.t < 2 || self.t > self.k {
            return Err(ParamError::Threshold { k: self.k, t: self.t });
        }
        for (name, value) in [
            ("comp_bound_factor", self.comp_bound_factor),
            ("trials_factor", self.trials_factor),
            ("steps_factor", self.steps_factor),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(ParamError::Factor { name, value });
            }
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        self.t as f64 / self.k as f64
    }

    /// Accepted same-colour vertices that make an edge bad: (1-α)k.
    pub fn bad_threshold(&self) -> usize {
        self.k - self.t
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Maximum number of bad edges in a final component or search area.
    /// `m <= 1` is special-cased to 1 so a lone bad edge can still be coloured.
    pub fn component_limit(&self, m: usize) -> usize {
        if m <= 1 {
            1
        } else {
            comp_bound(self, m)
        }
    }

    /// Number of bounded RESAMPLE trials, at least one.
    pub fn trial_limit(&self, m: usize) -> usize {
        ceil_usize(self.trials_factor * log2(m)).max(1)
    }

    /// Resampling steps allowed per trial for a residual hypergraph with
    /// `edges` restricted edges.
    pub fn step_limit(&self, edges: usize) -> usize {
        let expected = edges as f64 / self.delta.max(1) as f64;
        ceil_usize(self.steps_factor * expected)
    }
}

fn log2(m: usize) -> f64 {
    if m == 0 {
        0.0
    } else {
        (m as f64).log2()
    }
}

fn ceil_usize(x: f64) -> usize {
    // Guard against 120.00000000000001-style float noise on exact products.
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.ceil() as usize
    }
}

/// `⌈comp_bound_factor · (Δ+1) · log₂ m⌉`.
pub fn comp_bound(p: &LllParams, m: usize) -> usize {
    ceil_usize(p.comp_bound_factor * (p.delta as f64 + 1.0) * log2(m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamReport {
    /// `2e(Δ+1) < 2^t`
    pub cond_i: bool,
    /// `Δ <= 2^{k/3} / 192`
    pub cond_ii: bool,
}

/// Evaluates both regime inequalities. `t` is not required to be a valid
/// engine threshold here so out-of-regime triples can be inspected.
pub fn check_params(k: usize, t: usize, delta: usize) -> ParamReport {
    ParamReport {
        cond_i: lll_condition_holds(t, delta),
        cond_ii: degree_condition_holds(k, delta),
    }
}

/// `2e(Δ+1) < 2^t`, i.e. `e(Δ+1) < 2^{t-1}`. e is irrational so equality is
/// impossible; double precision separates the sides for every t the crate
/// can meaningfully use (t < 1000).
pub fn lll_condition_holds(t: usize, delta: usize) -> bool {
    let lhs = std::f64::consts::E * (delta as f64 + 1.0);
    let rhs = 2f64.powi(t as i32 - 1);
    lhs < rhs
}

/// `192Δ <= 2^{k/3}`, decided exactly as `(192Δ)³ <= 2^k`.
pub fn degree_condition_holds(k: usize, delta: usize) -> bool {
    let lhs = BigUint::from(192u32) * BigUint::from(delta);
    let cube = &lhs * &lhs * &lhs;
    cube <= (BigUint::one() << k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regime_conditions_at_k30() {
        assert_eq!(check_params(30, 10, 5), ParamReport { cond_i: true, cond_ii: true });
        let r = check_params(30, 10, 6);
        assert!(r.cond_i);
        assert!(!r.cond_ii);
        assert!(!check_params(3, 1, 1).cond_i);
    }

    #[test]
    fn cond_i_boundary() {
        // 2e·6 ≈ 32.62: fails at t = 5 (32), passes at t = 6 (64).
        assert!(!lll_condition_holds(5, 5));
        assert!(lll_condition_holds(6, 5));
    }

    #[test]
    fn comp_bound_examples() {
        let mut p = LllParams::new(30, 10, 5, 0).unwrap();
        assert_eq!(comp_bound(&p, 1024), 120);
        assert_eq!(comp_bound(&p, 1), 0);
        assert_eq!(p.component_limit(1), 1);
        p.delta = 0;
        assert_eq!(comp_bound(&p, 2), 2);
    }

    #[test]
    fn limits() {
        let p = LllParams::new(30, 10, 5, 0).unwrap();
        assert_eq!(p.trial_limit(1024), 20);
        assert_eq!(p.trial_limit(1), 1);
        assert_eq!(p.step_limit(10), 4);
        assert_eq!(p.step_limit(1), 1);
        assert_eq!(p.step_limit(0), 0);
    }

    #[test]
    fn validation() {
        assert!(LllParams::new(10, 1, 3, 0).is_err());
        assert!(LllParams::new(10, 11, 3, 0).is_err());
        let mut p = LllParams::new(10, 3, 3, 0).unwrap();
        p.steps_factor = 0.0;
        assert!(matches!(p.validate(), Err(ParamError::Factor { .. })));
    }
}
