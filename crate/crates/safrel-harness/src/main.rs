//! `safrel`: resource-stress experiment runner.

use std::path::PathBuf;

use anyhow::Context;
use clap::Parser;

use safrel::{Catalog, MembershipConfig};
use safrel_harness::{emit_report, parse_epsilon, run_scenario, Scenario, ScenarioConfig};

#[derive(Parser)]
#[command(
    name = "safrel",
    version,
    about = "Learns resource-reduction test cases that drive simulated programs to their performance breaking point, and compares against random stress testing."
)]
struct Cli {
    /// Scenario to run.
    #[arg(value_enum)]
    scenario: Scenario,
    /// Number of SUT instances in the transfer stream.
    #[arg(long, default_value_t = 50)]
    suts: usize,
    /// Master seed; fixes instances, agent and baseline randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Learning rate.
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    /// Discount factor.
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    /// Exploration mode: `fixed:<v>` | `decaying[:<e0>:<rate>]` | `adaptive`.
    /// Defaults to the scenario's own mode (adaptive for heterogeneous
    /// transfer, fixed:0.2 otherwise).
    #[arg(long)]
    epsilon: Option<String>,
    /// Reward weight between response-time deviation and resource usage.
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    /// Initial-learning episodes.
    #[arg(long, default_value_t = 100)]
    episodes: usize,
    /// Trial cap per episode.
    #[arg(long, default_value_t = 200)]
    max_trials: usize,
    /// Output directory for CSV reports, metadata and the learned policy.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Program catalog file (name + three sensitivity values per line);
    /// defaults to the embedded twelve-program catalog.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// TOML file overriding the fuzzy membership breakpoints.
    #[arg(long)]
    fuzzy_config: Option<PathBuf>,
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();

    let mut config = ScenarioConfig::new(cli.scenario);
    config.sut_count = cli.suts;
    config.seed = cli.seed;
    config.episodes = cli.episodes;
    config.learning.alpha = cli.alpha;
    config.learning.gamma = cli.gamma;
    config.learning.max_trials_per_episode = cli.max_trials;
    config.reward.beta = cli.beta;
    config.output_dir = cli.out;
    if let Some(spec) = &cli.epsilon {
        config.learning.epsilon_mode = parse_epsilon(spec)?;
    }
    if let Some(path) = &cli.catalog {
        config.catalog = Catalog::from_path(path)
            .with_context(|| format!("loading catalog from {}", path.display()))?;
    }
    if let Some(path) = &cli.fuzzy_config {
        config.memberships = MembershipConfig::from_path(path)
            .with_context(|| format!("loading membership config from {}", path.display()))?;
    }

    let report = run_scenario(&config)?;
    let artifacts = emit_report(&report, &config)?;

    println!(
        "{} (seed {}, epsilon {})",
        config.scenario.name(),
        config.seed,
        report.epsilon_mode
    );
    for s in &report.summaries {
        match (s.baseline_mean, s.improvement_pct, s.frac_below_baseline_mean) {
            (Some(b), Some(i), Some(f)) => println!(
                "  [{}] mean trials {:.2} | baseline {:.2} | improvement {:.1}% | below-baseline {:.0}%",
                s.epsilon_mode,
                s.safrel_mean,
                b,
                i,
                f * 100.0
            ),
            _ => println!("  [{}] mean trials {:.2}", s.epsilon_mode, s.safrel_mean),
        }
    }
    println!("  per-SUT rows: {}", artifacts.per_sut_csv.display());
    println!("  summary:      {}", artifacts.summary_csv.display());
    println!("  metadata:     {}", artifacts.metadata.display());
    if let Some(p) = &artifacts.policy {
        println!("  policy:       {}", p.display());
    }
    Ok(())
}
