//! Performance simulation of a SUT under a granted resource configuration.
//!
//! Throughput scales with the sensitivity-weighted mean of the granted/demanded
//! resource ratios; response time is its reciprocal. Utilization improvements
//! are modeled as inverse proportional to the granted capacity, saturating at
//! [`UTILIZATION_IMPROVEMENT_CAP`].

use crate::sut::{ResourceConfig, SutInstance};

/// Utilization cannot improve beyond four times its initial level.
pub const UTILIZATION_IMPROVEMENT_CAP: f64 = 4.0;

/// One observation of the simulated SUT.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityMeasurement {
    /// Response time in milliseconds.
    pub response_time_ms: f64,
    /// Ratio of current CPU utilization to utilization at the initial config.
    pub cpu_util_improvement: f64,
    pub mem_util_improvement: f64,
    pub disk_util_improvement: f64,
}

/// Sensitivity-weighted throughput factor in (0, 1]; equals 1 at the initial
/// configuration. Ratios are capped at 1: over-provisioning does not raise
/// throughput.
fn throughput_factor(instance: &SutInstance, granted: &ResourceConfig) -> f64 {
    let init = &instance.initial_resources;
    let sen = &instance.profile.sensitivity;
    let ratio = |g: f64, i: f64| (g / i).min(1.0);
    (ratio(granted.cpu, init.cpu) * sen.cpu
        + ratio(granted.mem, init.mem) * sen.mem
        + ratio(granted.disk, init.disk) * sen.disk)
        / sen.sum()
}

/// Simulated throughput in 1/ms.
pub fn throughput(instance: &SutInstance, granted: &ResourceConfig) -> f64 {
    throughput_factor(instance, granted) / instance.nominal_rt_ms
}

/// Simulated response time in milliseconds (reciprocal of throughput).
pub fn response_time(instance: &SutInstance, granted: &ResourceConfig) -> f64 {
    instance.nominal_rt_ms / throughput_factor(instance, granted)
}

/// Per-resource utilization improvement: `min(initial / granted, cap)`.
pub fn utilization_improvements(
    instance: &SutInstance,
    granted: &ResourceConfig,
) -> (f64, f64, f64) {
    let init = &instance.initial_resources;
    let improve = |i: f64, g: f64| (i / g).min(UTILIZATION_IMPROVEMENT_CAP);
    (
        improve(init.cpu, granted.cpu),
        improve(init.mem, granted.mem),
        improve(init.disk, granted.disk),
    )
}

/// Bundles response time and utilization improvements for one configuration.
pub fn measure(instance: &SutInstance, granted: &ResourceConfig) -> QualityMeasurement {
    let (cpu, mem, disk) = utilization_improvements(instance, granted);
    QualityMeasurement {
        response_time_ms: response_time(instance, granted),
        cpu_util_improvement: cpu,
        mem_util_improvement: mem,
        disk_util_improvement: disk,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sut::{Catalog, ProgramProfile, SensitivityVector};

    fn build_apache(nominal_rt: f64) -> SutInstance {
        SutInstance::new(
            Catalog::builtin().profiles()[0].clone(),
            ResourceConfig::new(4.0, 16.0, 100.0).unwrap(),
            2.0 * nominal_rt,
            nominal_rt,
            1.5,
        )
        .unwrap()
    }

    fn pure_cpu(nominal_rt: f64) -> SutInstance {
        SutInstance::new(
            ProgramProfile::new("pure-cpu", SensitivityVector::new(1.0, 0.0, 0.0).unwrap()),
            ResourceConfig::new(4.0, 16.0, 100.0).unwrap(),
            2.0 * nominal_rt,
            nominal_rt,
            1.5,
        )
        .unwrap()
    }

    #[test]
    fn initial_configuration_gives_nominal_throughput() {
        let inst = build_apache(500.0);
        let granted = inst.initial_resources;
        let nominal_thr = 1.0 / inst.nominal_rt_ms;
        assert_eq!(throughput(&inst, &granted), nominal_thr);
        assert_eq!(response_time(&inst, &granted), 500.0);
        assert_eq!(measure(&inst, &granted).cpu_util_improvement, 1.0);
        assert_eq!(measure(&inst, &granted).mem_util_improvement, 1.0);
        assert_eq!(measure(&inst, &granted).disk_util_improvement, 1.0);
    }

    #[test]
    fn cpu_halved_scales_throughput_by_weighted_ratio() {
        // Direct substitution: (0.5*0.96 + 1*0.04 + 1*0.00) / 1.00 = 0.52.
        let inst = build_apache(500.0);
        let granted = ResourceConfig::new(2.0, 16.0, 100.0).unwrap();
        let expected_factor = (0.5 * 0.96 + 1.0 * 0.04 + 1.0 * 0.00) / (0.96 + 0.04 + 0.00);
        let nominal_thr = 1.0 / inst.nominal_rt_ms;
        assert!((throughput(&inst, &granted) - expected_factor * nominal_thr).abs() < 1e-15);
        assert!((response_time(&inst, &granted) - 500.0 / 0.52).abs() < 1e-9);
    }

    #[test]
    fn pure_cpu_quartered() {
        let inst = pure_cpu(500.0);
        let granted = ResourceConfig::new(1.0, 16.0, 100.0).unwrap();
        let nominal_thr = 1.0 / inst.nominal_rt_ms;
        assert!((throughput(&inst, &granted) - 0.25 * nominal_thr).abs() < 1e-15);
        // Reduced to a quarter of demanded: 500 / 0.25.
        assert_eq!(response_time(&inst, &granted), 2000.0);
    }

    #[test]
    fn over_provisioning_is_capped() {
        let inst = pure_cpu(500.0);
        let granted = ResourceConfig::new(8.0, 16.0, 100.0).unwrap();
        assert_eq!(response_time(&inst, &granted), 500.0);
    }

    #[test]
    fn utilization_improvements_follow_inverse_ratio_with_cap() {
        let inst = build_apache(500.0);
        let halved = ResourceConfig::new(2.0, 16.0, 100.0).unwrap();
        assert_eq!(utilization_improvements(&inst, &halved), (2.0, 1.0, 1.0));
        let eighth = ResourceConfig::new(0.5, 16.0, 100.0).unwrap();
        assert_eq!(utilization_improvements(&inst, &eighth), (4.0, 1.0, 1.0));
    }

    #[test]
    fn measurement_composes_parts() {
        let inst = build_apache(500.0);
        let granted = ResourceConfig::new(2.0, 16.0, 100.0).unwrap();
        let m = measure(&inst, &granted);
        assert_eq!(m.response_time_ms, response_time(&inst, &granted));
        assert_eq!(m.cpu_util_improvement, 2.0);
        assert_eq!(m.mem_util_improvement, 1.0);
        assert_eq!(m.disk_util_improvement, 1.0);
    }

    #[test]
    fn insensitive_resource_leaves_throughput_unchanged() {
        // n-queens has zero memory and disk sensitivity.
        let inst = SutInstance::new(
            Catalog::builtin().profiles()[1].clone(),
            ResourceConfig::new(4.0, 16.0, 100.0).unwrap(),
            1000.0,
            500.0,
            1.5,
        )
        .unwrap();
        let shrunk = ResourceConfig::new(4.0, 1.0, 2.0).unwrap();
        assert_eq!(
            throughput(&inst, &shrunk),
            throughput(&inst, &inst.initial_resources.clone())
        );
    }

    #[test]
    fn reciprocal_relation_within_one_ulp() {
        let inst = build_apache(750.0);
        for cpu in [4.0, 3.0, 2.5, 1.75, 0.25] {
            let granted = ResourceConfig::new(cpu, 16.0, 100.0).unwrap();
            let prod = response_time(&inst, &granted) * throughput(&inst, &granted);
            assert!((prod - 1.0).abs() < 1e-15, "rt*thr = {prod}");
        }
    }
}
