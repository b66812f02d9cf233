//! The typical stress-testing baseline: random resource reductions, no learning.

use rand::Rng;

use safrel::{
    compute_reward, detect_state, measure, Action, ActionSpace, AgentConfig, EpisodeResult,
    RuleBase, SutInstance, TraceStep,
};

/// Drives one SUT by uniformly random applicable reductions until the
/// breaking point or the trial cap.
///
/// NoAction is excluded from the random draw; it is taken only when every
/// reducing action is floor-masked, so the baseline keeps counting trials in
/// lockstep with the agent.
pub fn run_baseline(
    instance: &SutInstance,
    cfg: &AgentConfig,
    rng: &mut impl Rng,
) -> EpisodeResult {
    let space = ActionSpace::new(cfg.floor);
    let rules = RuleBase::full();
    let mut granted = instance.initial_resources;
    let mut trace = Vec::new();
    let mut reached = false;

    while trace.len() < cfg.learning.max_trials_per_episode {
        let state = detect_state(
            &measure(instance, &granted),
            instance.rt_requirement_ms,
            &cfg.memberships,
            &rules,
        )
        .expect("simulated measurements are positive");
        let reducing: Vec<Action> = space
            .enumerate(&granted)
            .into_iter()
            .filter(|a| *a != Action::NoAction)
            .collect();
        let action = if reducing.is_empty() {
            Action::NoAction
        } else {
            reducing[rng.gen_range(0..reducing.len())]
        };
        let next = space
            .apply(&granted, action)
            .expect("action drawn from the applicable set");
        let m = measure(instance, &next);
        trace.push(TraceStep {
            config_before: granted,
            state,
            action,
            reward: compute_reward(&m, instance, &cfg.reward),
        });
        granted = next;
        if instance.is_breaking_point(m.response_time_ms) {
            reached = true;
            break;
        }
    }

    EpisodeResult {
        trials: trace.len(),
        reached_breaking_point: reached,
        final_config: granted,
        trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use safrel::{Catalog, ProgramProfile, ResourceConfig, SensitivityVector};

    fn cpu_instance() -> SutInstance {
        SutInstance::new(
            ProgramProfile::new("pure-cpu", SensitivityVector::new(1.0, 0.0, 0.0).unwrap()),
            ResourceConfig::new(8.0, 16.0, 200.0).unwrap(),
            1000.0,
            900.0,
            1.5,
        )
        .unwrap()
    }

    #[test]
    fn baseline_reaches_the_breaking_point_on_a_cpu_bound_sut() {
        let cfg = AgentConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let result = run_baseline(&cpu_instance(), &cfg, &mut rng);
        assert!(result.reached_breaking_point);
        assert!(result.trials < cfg.learning.max_trials_per_episode);
    }

    #[test]
    fn baseline_never_chooses_noaction_while_reductions_exist() {
        let cfg = AgentConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let result = run_baseline(&cpu_instance(), &cfg, &mut rng);
        assert!(result.trace.iter().all(|s| s.action != Action::NoAction));
    }

    #[test]
    fn baseline_is_deterministic_per_seed() {
        let cfg = AgentConfig::default();
        let inst = cpu_instance();
        let run = || run_baseline(&inst, &cfg, &mut ChaCha8Rng::seed_from_u64(21));
        assert_eq!(run(), run());
        let other = run_baseline(
            &Catalog::builtin()
                .profiles()
                .first()
                .map(|p| {
                    SutInstance::new(
                        p.clone(),
                        ResourceConfig::new(8.0, 16.0, 200.0).unwrap(),
                        1000.0,
                        900.0,
                        1.5,
                    )
                    .unwrap()
                })
                .unwrap(),
            &cfg,
            &mut ChaCha8Rng::seed_from_u64(22),
        );
        assert!(other.trials >= 1);
    }
}
