//! Reward signal combining response-time deviation with resource usage.
//!
//! `reward = beta * U_rt + (1 - beta) * U_env` where `U_rt` grows linearly
//! from 0 at the requirement to 1 at the breaking threshold, and `U_env` is
//! the sensitivity-weighted sum of the raw utilization improvements.

use crate::sim::QualityMeasurement;
use crate::sut::SutInstance;

/// Weighting between the stress aspects; `beta` prioritizes response-time
/// deviation over resource usage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewardParams {
    pub beta: f64,
}

impl RewardParams {
    pub fn new(beta: f64) -> Option<Self> {
        (0.0..=1.0).contains(&beta).then_some(Self { beta })
    }
}

impl Default for RewardParams {
    fn default() -> Self {
        Self { beta: 0.5 }
    }
}

/// Response-time deviation utility in [0, 1].
pub fn rt_deviation_utility(response_time_ms: f64, instance: &SutInstance) -> f64 {
    let requirement = instance.rt_requirement_ms;
    if response_time_ms <= requirement {
        0.0
    } else {
        let span = instance.breaking_threshold_ms() - requirement;
        ((response_time_ms - requirement) / span).min(1.0)
    }
}

/// Sensitivity-weighted resource-usage utility.
pub fn resource_usage_utility(m: &QualityMeasurement, instance: &SutInstance) -> f64 {
    let sen = &instance.profile.sensitivity;
    sen.cpu * m.cpu_util_improvement
        + sen.mem * m.mem_util_improvement
        + sen.disk * m.disk_util_improvement
}

/// The combined reward for one measurement.
pub fn compute_reward(
    m: &QualityMeasurement,
    instance: &SutInstance,
    params: &RewardParams,
) -> f64 {
    params.beta * rt_deviation_utility(m.response_time_ms, instance)
        + (1.0 - params.beta) * resource_usage_utility(m, instance)
}
