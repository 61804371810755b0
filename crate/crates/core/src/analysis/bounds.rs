use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::params::{degree_condition_holds, lll_condition_holds};

/// Exponents of two in sixths, so cube and square roots stay integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SixthExponents {
    /// `q = 2^(1−k/3)`
    pub q: i64,
    /// `p_M^(1/3)`
    pub p_m_cbrt: i64,
    /// `p_B^(1/2)`
    pub p_b_sqrt: i64,
    /// `p_U`
    pub p_u: i64,
}

impl SixthExponents {
    pub fn new(k: usize, t: usize) -> Self {
        let (k, t) = (k as i64, t as i64);
        Self {
            q: 6 - 2 * k,
            p_m_cbrt: 2 - 2 * k,
            p_b_sqrt: 3 - 3 * (k - t),
            p_u: 6 - 6 * (k - 2 * t),
        }
    }

    /// `max(p_M^(1/3), p_B^(1/2), p_U) ≤ q`
    pub fn common_bound_holds(&self) -> bool {
        self.p_m_cbrt.max(self.p_b_sqrt).max(self.p_u) <= self.q
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AmortizationReport {
    pub k: usize,
    pub t: usize,
    pub exponents_sixths: SixthExponents,
    pub common_bound_holds: bool,
    /// Largest Δ with `8Δ³ / 2^(k−t) < 1/2`.
    pub max_delta_witness_prob: Option<u64>,
    /// Largest Δ with `2e(Δ+1) < 2^t`.
    pub max_delta_cond_i: Option<u64>,
    /// Largest Δ with `Δ ≤ 2^(k/3) / 192`.
    pub max_delta_cond_ii: Option<u64>,
    /// Largest Δ with `48Δq ≤ 1/2`.
    pub max_delta_witness_sum: Option<u64>,
}

/// Searches are capped here; a condition still holding at the cap reports it.
pub const DELTA_CAP: u64 = 1 << 62;

/// Largest Δ in `0..=DELTA_CAP` satisfying a condition that is monotone
/// decreasing in Δ, or `None` if even Δ = 0 fails.
pub fn max_delta(holds: impl Fn(u64) -> bool) -> Option<u64> {
    if !holds(0) {
        return None;
    }
    let mut hi = 1u64;
    while hi < DELTA_CAP && holds(hi) {
        hi = (hi * 2).min(DELTA_CAP);
    }
    if holds(hi) {
        return Some(hi);
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

/// `16Δ³ < 2^(k−t)`, the integer form of `8Δ³ / 2^(k−t) < 1/2`.
pub fn witness_prob_condition(k: usize, t: usize, delta: u64) -> bool {
    let d = BigUint::from(delta);
    BigUint::from(16u32) * &d * &d * &d < (BigUint::one() << k.saturating_sub(t))
}

pub fn amortization_bound_check(k: usize, t: usize) -> AmortizationReport {
    let exps = SixthExponents::new(k, t);
    AmortizationReport {
        k,
        t,
        exponents_sixths: exps,
        common_bound_holds: exps.common_bound_holds(),
        max_delta_witness_prob: max_delta(|d| witness_prob_condition(k, t, d)),
        max_delta_cond_i: max_delta(|d| lll_condition_holds(t, d as usize)),
        max_delta_cond_ii: max_delta(|d| degree_condition_holds(k, d as usize)),
        // 48Δ · 2^(1−k/3) ≤ 1/2  ⟺  (192Δ)³ ≤ 2^k
        max_delta_witness_sum: max_delta(|d| degree_condition_holds(k, d as usize)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k30_t10() {
        let e = SixthExponents::new(30, 10);
        assert_eq!(e.q, -54);
        assert_eq!(e.p_b_sqrt, -57);
        assert!(e.common_bound_holds());
        let r = amortization_bound_check(30, 10);
        assert_eq!(r.max_delta_cond_ii, Some(5));
    }

    #[test]
    fn k20_t5_prop_condition() {
        let r = amortization_bound_check(20, 5);
        assert_eq!(r.max_delta_witness_prob, Some(12));
        assert!(witness_prob_condition(20, 5, 12));
        assert!(!witness_prob_condition(20, 5, 13));
    }

    #[test]
    fn alpha_one_fails() {
        for k in 1..40 {
            let e = SixthExponents::new(k, k);
            assert_eq!(e.p_b_sqrt, 3);
            assert!(!e.common_bound_holds());
        }
    }

    #[test]
    fn max_delta_search() {
        assert_eq!(max_delta(|d| d <= 1000), Some(1000));
        assert_eq!(max_delta(|_| false), None);
        assert_eq!(max_delta(|_| true), Some(DELTA_CAP));
    }
}
