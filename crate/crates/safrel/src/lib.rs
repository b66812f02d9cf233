//! Self-adaptive fuzzy reinforcement-learning stress tester.
//!
//! The crate drives simulated systems under test (SUTs) to their performance
//! breaking point, the point where response time exceeds a multiple of the
//! requirement, by reducing granted CPU, memory and disk capacity step by
//! step. A tabular Q-learning agent observes a fuzzy state built from
//! response time and utilization improvements, learns which reductions pay
//! off on a first SUT, and transfers the learned policy across further SUTs
//! while adapting its exploration rate to how similar consecutive SUTs are.
//!
//! Module map:
//! - [`sut`]: program catalog, sensitivity vectors, SUT instances, generator.
//! - [`sim`]: throughput, response-time and utilization simulation.
//! - [`fuzzy`]: normalization, membership functions, 24-rule state inference.
//! - [`action`]: the 13-action reduction space with floor-aware masking.
//! - [`reward`]: the stress-oriented reward signal.
//! - [`agent`]: Q-table, epsilon-greedy control, episode and phase loops.
//! - [`policy`]: plain-text persistence of learned policies.
//!
//! ```
//! use rand::SeedableRng;
//! use rand_chacha::ChaCha8Rng;
//! use safrel::{generate_instances, initial_learning, AgentConfig, Catalog, ProfileFilter};
//!
//! let catalog = Catalog::builtin();
//! let sut = generate_instances(&catalog, 1, 7, ProfileFilter::CpuIntensive)?.remove(0);
//! let config = AgentConfig::default();
//! let mut rng = ChaCha8Rng::seed_from_u64(7);
//! let (policy, episodes) = initial_learning(&sut, 20, &config, &mut rng);
//! assert_eq!(episodes.len(), 20);
//! assert!(episodes.last().unwrap().reached_breaking_point);
//! # let _ = policy;
//! # Ok::<(), safrel::SutError>(())
//! ```

pub mod action;
pub mod agent;
pub mod error;
pub mod fuzzy;
pub mod policy;
pub mod reward;
pub mod sim;
pub mod sut;

pub use action::{Action, ActionSpace, ACTION_COUNT};
pub use agent::{
    adapt_epsilon, initial_learning, run_episode, select_action, transfer_learning, update_q,
    AgentConfig, EpisodeResult, EpsilonMode, LearningParams, QTable, TraceStep, TransferOutcome,
    EPSILON_EXPLOIT, EPSILON_EXPLORE, SIMILARITY_THRESHOLD,
};
pub use error::{ActionError, AgentError, FuzzyError, PolicyIoError, SutError};
pub use fuzzy::{
    detect_state, fuzzify, infer_state, normalize, FuzzyState, MembershipConfig,
    NormalizedMeasurement, RuleBase, StateLabel, STATE_COUNT,
};
pub use policy::{catalog_hash, load_policy, save_policy, PolicyMeta};
pub use reward::{compute_reward, RewardParams};
pub use sim::{measure, response_time, throughput, utilization_improvements, QualityMeasurement};
pub use sut::{
    generate_instances, Catalog, ProfileFilter, ProgramProfile, ResourceConfig, SensitivityVector,
    SutInstance, CPU_INTENSIVE_PROGRAMS, DEFAULT_BREAKING_MULTIPLIER, DEFAULT_RESOURCE_FLOOR,
    NOMINAL_RT_RATIO,
};
