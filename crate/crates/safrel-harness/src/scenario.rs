//! Scenario execution: initial convergence, paired transfer runs, and the
//! learning-parameter sweep.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use safrel::{
    generate_instances, initial_learning, transfer_learning, AgentConfig, EpsilonMode,
    ProfileFilter, QTable, SutInstance, TransferOutcome,
};

use crate::baseline::run_baseline;
use crate::config::{epsilon_desc, Scenario, ScenarioConfig};
use crate::error::HarnessError;
use crate::report::{summarize, ScenarioReport, SutRow};

/// Learning-rate / discount-factor grid used by the sensitivity sweep.
pub const SWEEP_GRID: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
/// Seeds per sweep cell.
pub const SWEEP_REPLICATIONS: u64 = 10;

/// Runs one scenario to completion. Identical configs produce identical
/// reports.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioReport, HarnessError> {
    config.validate()?;
    match config.scenario {
        Scenario::InitialConvergence => run_initial_convergence(config),
        Scenario::HomogeneousTransfer => run_transfer(config, ProfileFilter::CpuIntensive),
        Scenario::HeterogeneousTransfer => run_transfer(config, ProfileFilter::All),
        Scenario::SensitivitySweep => run_sweep(config),
    }
}

/// Derives the (instance, agent, baseline) RNG seeds from the scenario seed.
/// The derivation is independent of the epsilon mode, so variant runs with
/// the same seed face byte-identical SUT instances.
fn sub_seeds(seed: u64) -> (u64, u64, u64) {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (master.next_u64(), master.next_u64(), master.next_u64())
}

fn run_initial_convergence(config: &ScenarioConfig) -> Result<ScenarioReport, HarnessError> {
    let (instance_seed, agent_seed, _) = sub_seeds(config.seed);
    let instance = generate_instances(
        &config.catalog,
        1,
        instance_seed,
        ProfileFilter::CpuIntensive,
    )?
    .remove(0);

    let cfg = config.agent_config();
    let mut rng = ChaCha8Rng::seed_from_u64(agent_seed);
    let (q, episodes) = initial_learning(&instance, config.episodes, &cfg, &mut rng);

    let sen = &instance.profile.sensitivity;
    let rows: Vec<SutRow> = episodes
        .iter()
        .enumerate()
        .map(|(t, ep)| SutRow {
            sut_id: t,
            program: instance.profile.name.clone(),
            sen_c: sen.cpu,
            sen_m: sen.mem,
            sen_d: sen.disk,
            rt_req_ms: instance.rt_requirement_ms,
            sim_prev1: None,
            sim_prev2: None,
            epsilon_used: cfg.learning.epsilon_mode.epsilon_for_episode(t),
            trials: ep.trials,
            reached: ep.reached_breaking_point,
            baseline_trials: None,
        })
        .collect();

    let desc = config.epsilon_desc();
    let summary = summarize(config.scenario.name(), &desc, &rows);
    Ok(ScenarioReport {
        scenario: config.scenario,
        epsilon_mode: desc,
        rows,
        summaries: vec![summary],
        policy: Some(q),
    })
}

/// Outcome of one initial-learning + transfer + paired-baseline pipeline.
struct TransferRun {
    rows: Vec<SutRow>,
    policy: QTable,
}

fn transfer_pipeline(
    config: &ScenarioConfig,
    filter: ProfileFilter,
    seed: u64,
    transfer_cfg: &AgentConfig,
) -> Result<TransferRun, HarnessError> {
    let (instance_seed, agent_seed, baseline_seed) = sub_seeds(seed);
    let instances =
        generate_instances(&config.catalog, config.sut_count + 1, instance_seed, filter)?;
    let (first, stream) = instances.split_first().expect("count >= 1");

    let mut init_cfg = *transfer_cfg;
    init_cfg.learning.epsilon_mode = EpsilonMode::Fixed(config.initial_epsilon);
    let mut rng = ChaCha8Rng::seed_from_u64(agent_seed);
    let (mut q, _) = initial_learning(first, config.episodes, &init_cfg, &mut rng);
    let outcomes = transfer_learning(stream, &mut q, transfer_cfg, &mut rng);

    let mut baseline_rng = ChaCha8Rng::seed_from_u64(baseline_seed);
    let rows = outcomes
        .iter()
        .zip(stream)
        .enumerate()
        .map(|(k, (outcome, sut))| {
            let baseline = run_baseline(sut, transfer_cfg, &mut baseline_rng);
            to_row(k, sut, outcome, Some(baseline.trials))
        })
        .collect();
    Ok(TransferRun { rows, policy: q })
}

fn to_row(
    k: usize,
    sut: &SutInstance,
    outcome: &TransferOutcome,
    baseline_trials: Option<usize>,
) -> SutRow {
    let sen = &sut.profile.sensitivity;
    SutRow {
        sut_id: k,
        program: sut.profile.name.clone(),
        sen_c: sen.cpu,
        sen_m: sen.mem,
        sen_d: sen.disk,
        rt_req_ms: sut.rt_requirement_ms,
        sim_prev1: outcome.sim_prev1,
        sim_prev2: outcome.sim_prev2,
        epsilon_used: outcome.epsilon,
        trials: outcome.episode.trials,
        reached: outcome.episode.reached_breaking_point,
        baseline_trials,
    }
}

fn run_transfer(
    config: &ScenarioConfig,
    filter: ProfileFilter,
) -> Result<ScenarioReport, HarnessError> {
    let run = transfer_pipeline(config, filter, config.seed, &config.agent_config())?;
    let desc = config.epsilon_desc();
    let summary = summarize(config.scenario.name(), &desc, &run.rows);
    Ok(ScenarioReport {
        scenario: config.scenario,
        epsilon_mode: desc,
        rows: run.rows,
        summaries: vec![summary],
        policy: Some(run.policy),
    })
}

fn run_sweep(config: &ScenarioConfig) -> Result<ScenarioReport, HarnessError> {
    let populations: [(&str, ProfileFilter, EpsilonMode); 2] = [
        (
            "homogeneous",
            ProfileFilter::CpuIntensive,
            EpsilonMode::Fixed(safrel::EPSILON_EXPLOIT),
        ),
        ("heterogeneous", ProfileFilter::All, EpsilonMode::Adaptive),
    ];
    let mut summaries = Vec::new();
    for (population, filter, mode) in populations {
        for varied in ["alpha", "gamma"] {
            for value in SWEEP_GRID {
                let mut cell_cfg = config.agent_config();
                cell_cfg.learning.epsilon_mode = mode;
                match varied {
                    "alpha" => {
                        cell_cfg.learning.alpha = value;
                        cell_cfg.learning.gamma = 0.5;
                    }
                    _ => {
                        cell_cfg.learning.alpha = 0.1;
                        cell_cfg.learning.gamma = value;
                    }
                }
                let mut cell_rows = Vec::new();
                for rep in 0..SWEEP_REPLICATIONS {
                    let run = transfer_pipeline(
                        config,
                        filter,
                        config.seed.wrapping_add(rep),
                        &cell_cfg,
                    )?;
                    cell_rows.extend(run.rows);
                }
                let desc = format!(
                    "{},alpha={},gamma={},{}",
                    epsilon_desc(&mode),
                    cell_cfg.learning.alpha,
                    cell_cfg.learning.gamma,
                    population
                );
                summaries.push(summarize(config.scenario.name(), &desc, &cell_rows));
            }
        }
    }
    Ok(ScenarioReport {
        scenario: config.scenario,
        epsilon_mode: config.epsilon_desc(),
        rows: Vec::new(),
        summaries,
        policy: None,
    })
}
