//! Scenario configuration and validation.

use std::path::PathBuf;

use safrel::{
    AgentConfig, Catalog, EpsilonMode, LearningParams, MembershipConfig, ResourceConfig,
    RewardParams, DEFAULT_RESOURCE_FLOOR, EPSILON_EXPLOIT,
};

use crate::error::HarnessError;

/// The experiment families the harness can reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Scenario {
    /// Repeated learning episodes on one CPU-intensive SUT.
    InitialConvergence,
    /// Initial learning plus policy transfer across CPU-intensive SUTs,
    /// paired with the random baseline.
    HomogeneousTransfer,
    /// Initial learning plus transfer across the full catalog, paired with
    /// the random baseline.
    HeterogeneousTransfer,
    /// Mean-trials grid over learning rate and discount factor.
    SensitivitySweep,
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::InitialConvergence => "initial-convergence",
            Scenario::HomogeneousTransfer => "homogeneous-transfer",
            Scenario::HeterogeneousTransfer => "heterogeneous-transfer",
            Scenario::SensitivitySweep => "sensitivity-sweep",
        }
    }

    /// Exploration mode the scenario uses unless overridden.
    pub fn default_epsilon_mode(&self) -> EpsilonMode {
        match self {
            Scenario::HeterogeneousTransfer => EpsilonMode::Adaptive,
            _ => EpsilonMode::Fixed(EPSILON_EXPLOIT),
        }
    }
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything one scenario run needs; fully determines the report.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub sut_count: usize,
    pub seed: u64,
    /// Episodes of initial learning.
    pub episodes: usize,
    /// Fixed epsilon used for the initial-learning phase of transfer scenarios.
    pub initial_epsilon: f64,
    pub learning: LearningParams,
    pub reward: RewardParams,
    pub floor: ResourceConfig,
    pub memberships: MembershipConfig,
    pub catalog: Catalog,
    pub output_dir: PathBuf,
}

impl ScenarioConfig {
    pub fn new(scenario: Scenario) -> Self {
        Self {
            scenario,
            sut_count: 50,
            seed: 0,
            episodes: 100,
            initial_epsilon: EPSILON_EXPLOIT,
            learning: LearningParams {
                epsilon_mode: scenario.default_epsilon_mode(),
                ..LearningParams::default()
            },
            reward: RewardParams::default(),
            floor: DEFAULT_RESOURCE_FLOOR,
            memberships: MembershipConfig::default(),
            catalog: Catalog::builtin(),
            output_dir: PathBuf::from("out"),
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let unit = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(HarnessError::Config(format!(
                    "{name} must lie in [0, 1], got {v}"
                )))
            }
        };
        if self.sut_count < 1 {
            return Err(HarnessError::Config("sut_count must be at least 1".into()));
        }
        if self.episodes < 1 {
            return Err(HarnessError::Config("episodes must be at least 1".into()));
        }
        unit("alpha", self.learning.alpha)?;
        unit("gamma", self.learning.gamma)?;
        unit("beta", self.reward.beta)?;
        unit("initial epsilon", self.initial_epsilon)?;
        match self.learning.epsilon_mode {
            EpsilonMode::Fixed(e) => unit("epsilon", e)?,
            EpsilonMode::Decaying { initial, rate } => {
                unit("decaying epsilon start", initial)?;
                if rate < 0.0 {
                    return Err(HarnessError::Config(format!(
                        "decay rate must be nonnegative, got {rate}"
                    )));
                }
            }
            EpsilonMode::Adaptive => {}
        }
        self.memberships
            .validate()
            .map_err(|e| HarnessError::Config(e.to_string()))?;
        if self.catalog.is_empty() {
            return Err(HarnessError::Config("catalog has no programs".into()));
        }
        Ok(())
    }

    /// Agent configuration for the transfer phase (scenario epsilon mode).
    pub fn agent_config(&self) -> AgentConfig {
        AgentConfig {
            learning: self.learning,
            reward: self.reward,
            floor: self.floor,
            memberships: self.memberships,
        }
    }

    /// Agent configuration for the initial-learning phase.
    pub fn initial_agent_config(&self) -> AgentConfig {
        let mut cfg = self.agent_config();
        cfg.learning.epsilon_mode = EpsilonMode::Fixed(self.initial_epsilon);
        cfg
    }

    /// Short descriptor of the exploration mode, e.g. `fixed:0.2`.
    pub fn epsilon_desc(&self) -> String {
        epsilon_desc(&self.learning.epsilon_mode)
    }
}

pub fn epsilon_desc(mode: &EpsilonMode) -> String {
    match mode {
        EpsilonMode::Fixed(e) => format!("fixed:{e}"),
        EpsilonMode::Decaying { initial, rate } => format!("decaying:{initial}:{rate}"),
        EpsilonMode::Adaptive => "adaptive".to_string(),
    }
}

/// Parses `fixed:<v>`, `decaying[:<e0>:<rate>]` or `adaptive`.
pub fn parse_epsilon(text: &str) -> Result<EpsilonMode, HarnessError> {
    let bad = || HarnessError::Config(format!("invalid epsilon spec {text:?}"));
    if text == "adaptive" {
        return Ok(EpsilonMode::Adaptive);
    }
    if text == "decaying" {
        return Ok(EpsilonMode::DECAYING_DEFAULT);
    }
    if let Some(rest) = text.strip_prefix("fixed:") {
        let v: f64 = rest.parse().map_err(|_| bad())?;
        return Ok(EpsilonMode::Fixed(v));
    }
    if let Some(rest) = text.strip_prefix("decaying:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() == 2 {
            let initial: f64 = parts[0].parse().map_err(|_| bad())?;
            let rate: f64 = parts[1].parse().map_err(|_| bad())?;
            return Ok(EpsilonMode::Decaying { initial, rate });
        }
    }
    Err(bad())
}
