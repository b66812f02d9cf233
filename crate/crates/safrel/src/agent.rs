//! The tabular fuzzy Q-learning agent and its two learning phases.
//!
//! An episode drives one SUT from its initial configuration toward the
//! breaking point: detect the fuzzy state, pick an action epsilon-greedily,
//! apply it, measure, reward, and fold the result back into the Q-table
//! weighted by the detected state's membership degree. Initial learning
//! repeats episodes on a single SUT; transfer learning walks a stream of
//! SUTs with one episode each, optionally adapting epsilon from the cosine
//! similarity of consecutive sensitivity vectors.

use rand::Rng;

use crate::action::{Action, ActionSpace, ACTION_COUNT};
use crate::error::AgentError;
use crate::fuzzy::{detect_state, FuzzyState, MembershipConfig, RuleBase, StateLabel, STATE_COUNT};
use crate::reward::{compute_reward, RewardParams};
use crate::sim::measure;
use crate::sut::{ResourceConfig, SutInstance, DEFAULT_RESOURCE_FLOOR};

/// Epsilon used when the agent should favor exploitation.
pub const EPSILON_EXPLOIT: f64 = 0.2;
/// Epsilon used when the agent should favor exploration.
pub const EPSILON_EXPLORE: f64 = 0.5;
/// Similarity at or above which two SUTs count as alike.
pub const SIMILARITY_THRESHOLD: f64 = 0.8;

/// Tabular state-action utilities; 24 x 13 cells, zero at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    cells: [[f64; ACTION_COUNT]; STATE_COUNT],
}

impl QTable {
    pub fn new() -> Self {
        Self {
            cells: [[0.0; ACTION_COUNT]; STATE_COUNT],
        }
    }

    pub fn get(&self, state: StateLabel, action: Action) -> f64 {
        self.cells[state.index()][action.index()]
    }

    pub fn set(&mut self, state: StateLabel, action: Action, value: f64) {
        self.cells[state.index()][action.index()] = value;
    }

    /// Maximum utility over every action in the given state.
    pub fn max_value(&self, state: StateLabel) -> f64 {
        self.cells[state.index()]
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Cells in canonical (state, action) order.
    pub fn iter(&self) -> impl Iterator<Item = (StateLabel, Action, f64)> + '_ {
        StateLabel::all().flat_map(move |state| {
            Action::ALL
                .iter()
                .map(move |&action| (state, action, self.get(state, action)))
        })
    }
}

impl Default for QTable {
    fn default() -> Self {
        Self::new()
    }
}

/// Exploration strategy over episodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsilonMode {
    Fixed(f64),
    /// `initial / (1 + rate * t)` with `t` the episode index.
    Decaying {
        initial: f64,
        rate: f64,
    },
    /// Similarity-driven choice between [`EPSILON_EXPLOIT`] and
    /// [`EPSILON_EXPLORE`]; falls back to exploring when no similarity
    /// history exists.
    Adaptive,
}

impl EpsilonMode {
    pub const DECAYING_DEFAULT: EpsilonMode = EpsilonMode::Decaying {
        initial: 0.85,
        rate: 0.05,
    };

    /// Epsilon for episode `t` when no similarity signal is available.
    pub fn epsilon_for_episode(&self, t: usize) -> f64 {
        match *self {
            EpsilonMode::Fixed(e) => e,
            EpsilonMode::Decaying { initial, rate } => initial / (1.0 + rate * t as f64),
            EpsilonMode::Adaptive => EPSILON_EXPLORE,
        }
    }
}

/// Q-update and episode-control parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearningParams {
    pub alpha: f64,
    pub gamma: f64,
    pub epsilon_mode: EpsilonMode,
    pub max_trials_per_episode: usize,
}

impl Default for LearningParams {
    fn default() -> Self {
        Self {
            alpha: 0.1,
            gamma: 0.5,
            epsilon_mode: EpsilonMode::Fixed(EPSILON_EXPLOIT),
            max_trials_per_episode: 200,
        }
    }
}

/// Everything an episode needs besides the SUT and the Q-table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgentConfig {
    pub learning: LearningParams,
    pub reward: RewardParams,
    pub floor: ResourceConfig,
    pub memberships: MembershipConfig,
}

impl Default for AgentConfig {
    fn default() -> Self {
        Self {
            learning: LearningParams::default(),
            reward: RewardParams::default(),
            floor: DEFAULT_RESOURCE_FLOOR,
            memberships: MembershipConfig::default(),
        }
    }
}

/// One trial: the state observed, the action taken there, and the reward
/// received after applying it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceStep {
    /// Configuration in force when the action was chosen.
    pub config_before: ResourceConfig,
    pub state: FuzzyState,
    pub action: Action,
    pub reward: f64,
}

/// Outcome of driving one SUT for one episode.
#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeResult {
    pub trials: usize,
    pub reached_breaking_point: bool,
    pub final_config: ResourceConfig,
    pub trace: Vec<TraceStep>,
}

/// Epsilon-greedy selection over the applicable actions.
///
/// Exploits by maximizing `Q(state, .)` over `applicable`, breaking ties by
/// canonical action order; explores uniformly with probability `epsilon`.
pub fn select_action(
    q: &QTable,
    state: &FuzzyState,
    applicable: &[Action],
    epsilon: f64,
    rng: &mut impl Rng,
) -> Result<Action, AgentError> {
    if applicable.is_empty() {
        return Err(AgentError::EmptyActionSet);
    }
    if rng.gen::<f64>() < epsilon {
        return Ok(applicable[rng.gen_range(0..applicable.len())]);
    }
    let mut best = applicable[0];
    let mut best_value = q.get(state.label, best);
    for &action in &applicable[1..] {
        let value = q.get(state.label, action);
        if value > best_value {
            best = action;
            best_value = value;
        }
    }
    Ok(best)
}

/// Membership-weighted Q-update:
/// `Q(s,a) <- mu * ((1-alpha) Q(s,a) + alpha (r + gamma max_a' Q(s',a')))`
/// where `mu` is the membership of the state in which the action was taken.
pub fn update_q(
    q: &mut QTable,
    state: &FuzzyState,
    action: Action,
    reward: f64,
    next_state: &FuzzyState,
    params: &LearningParams,
) {
    let old = q.get(state.label, action);
    let target = reward + params.gamma * q.max_value(next_state.label);
    let value = state.membership * ((1.0 - params.alpha) * old + params.alpha * target);
    q.set(state.label, action, value);
}

/// Similarity-driven epsilon: exploit only when both available lags clear the
/// threshold; a missing second lag counts as dissimilar.
pub fn adapt_epsilon(sim_prev1: f64, sim_prev2: Option<f64>) -> f64 {
    if sim_prev1 >= SIMILARITY_THRESHOLD && sim_prev2.is_some_and(|s| s >= SIMILARITY_THRESHOLD) {
        EPSILON_EXPLOIT
    } else {
        EPSILON_EXPLORE
    }
}

/// Runs one episode against `instance`, updating `q` in place.
///
/// The SUT starts from its initial resources; the loop stops at the breaking
/// point or after `max_trials_per_episode` trials.
pub fn run_episode(
    instance: &SutInstance,
    q: &mut QTable,
    cfg: &AgentConfig,
    epsilon: f64,
    rng: &mut impl Rng,
) -> EpisodeResult {
    let space = ActionSpace::new(cfg.floor);
    let rules = RuleBase::full();
    let detect = |granted: &ResourceConfig| {
        let m = measure(instance, granted);
        let state = detect_state(&m, instance.rt_requirement_ms, &cfg.memberships, &rules)
            .expect("simulated measurements are positive and the partition covers the domain");
        (m, state)
    };

    let mut granted = instance.initial_resources;
    let (_, mut state) = detect(&granted);
    let mut trace = Vec::new();
    let mut reached = false;

    while trace.len() < cfg.learning.max_trials_per_episode {
        let applicable = space.enumerate(&granted);
        let action = select_action(q, &state, &applicable, epsilon, rng)
            .expect("NoAction is always applicable");
        let next_granted = space
            .apply(&granted, action)
            .expect("selected action came from the applicable set");
        let (next_m, next_state) = detect(&next_granted);
        let reward = compute_reward(&next_m, instance, &cfg.reward);
        update_q(q, &state, action, reward, &next_state, &cfg.learning);
        trace.push(TraceStep {
            config_before: granted,
            state,
            action,
            reward,
        });
        granted = next_granted;
        state = next_state;
        if instance.is_breaking_point(next_m.response_time_ms) {
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

/// Repeats episodes on one SUT starting from a fresh zero table, carrying the
/// table across episodes. Returns the converged table and per-episode results.
pub fn initial_learning(
    instance: &SutInstance,
    episodes: usize,
    cfg: &AgentConfig,
    rng: &mut impl Rng,
) -> (QTable, Vec<EpisodeResult>) {
    let mut q = QTable::new();
    let results = (0..episodes)
        .map(|t| {
            let epsilon = cfg.learning.epsilon_mode.epsilon_for_episode(t);
            run_episode(instance, &mut q, cfg, epsilon, rng)
        })
        .collect();
    (q, results)
}

/// One transfer step: the episode plus the similarity signals and the epsilon
/// actually used.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferOutcome {
    pub sim_prev1: Option<f64>,
    pub sim_prev2: Option<f64>,
    pub epsilon: f64,
    pub episode: EpisodeResult,
}

/// Runs one episode per SUT in order, reusing and updating `q` throughout.
///
/// In adaptive mode the similarity lags are taken within the stream itself;
/// the first SUT has no history and starts exploring.
pub fn transfer_learning(
    suts: &[SutInstance],
    q: &mut QTable,
    cfg: &AgentConfig,
    rng: &mut impl Rng,
) -> Vec<TransferOutcome> {
    let mut out = Vec::with_capacity(suts.len());
    for (k, sut) in suts.iter().enumerate() {
        let similarity_to = |lag: usize| {
            k.checked_sub(lag).map(|i| {
                sut.profile
                    .sensitivity
                    .cosine_similarity(&suts[i].profile.sensitivity)
            })
        };
        let sim_prev1 = similarity_to(1);
        let sim_prev2 = similarity_to(2);
        let epsilon = match cfg.learning.epsilon_mode {
            EpsilonMode::Adaptive => match sim_prev1 {
                Some(s1) => adapt_epsilon(s1, sim_prev2),
                None => EPSILON_EXPLORE,
            },
            mode => mode.epsilon_for_episode(k),
        };
        let episode = run_episode(sut, q, cfg, epsilon, rng);
        out.push(TransferOutcome {
            sim_prev1,
            sim_prev2,
            epsilon,
            episode,
        });
    }
    out
}
