//! Fuzzy state detection: normalization, fuzzification and rule-based inference.
//!
//! The environment state is read off four quality signals: response time and
//! the three utilization improvements. Each signal is normalized to [0, 1],
//! mapped to linguistic-term memberships, and the 24-rule base picks the
//! state whose rule has the maximum support degree (min over antecedents).
//!
//! Membership shapes: trapezoidal shoulders for High/Low, a triangle for the
//! Normal response-time band centered on the requirement anchor (normalized
//! response time 0.5). Per variable the term memberships always sum to 1.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::FuzzyError;
use crate::sim::QualityMeasurement;

/// Quality signals mapped to [0, 1].
///
/// Response time maps through `(2/π)·atan(rt / requirement)` so the
/// requirement itself lands at 0.5; utilization improvements map through
/// their reciprocal, clamped to at most 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedMeasurement {
    pub rt: f64,
    pub cui: f64,
    pub mui: f64,
    pub dui: f64,
}

/// Maps a raw measurement into normalized coordinates.
pub fn normalize(
    m: &QualityMeasurement,
    rt_requirement_ms: f64,
) -> Result<NormalizedMeasurement, FuzzyError> {
    for v in [
        m.response_time_ms,
        rt_requirement_ms,
        m.cpu_util_improvement,
        m.mem_util_improvement,
        m.disk_util_improvement,
    ] {
        if v.is_nan() || v <= 0.0 {
            return Err(FuzzyError::NonPositiveInput(v));
        }
    }
    let recip = |improvement: f64| (1.0 / improvement).min(1.0);
    Ok(NormalizedMeasurement {
        rt: 2.0 * (m.response_time_ms / rt_requirement_ms).atan() / PI,
        cui: recip(m.cpu_util_improvement),
        mui: recip(m.mem_util_improvement),
        dui: recip(m.disk_util_improvement),
    })
}

/// Breakpoints of the response-time partition: Low is full up to
/// `low_shoulder`, Normal peaks at `apex`, High is full from `high_shoulder`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RtBreakpoints {
    pub low_shoulder: f64,
    pub apex: f64,
    pub high_shoulder: f64,
}

/// Breakpoints of a utilization-improvement partition over the normalized
/// reciprocal `v = 1/improvement`: High (improvement) is full up to
/// `high_shoulder`, Low is full from `low_shoulder`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UtilBreakpoints {
    pub high_shoulder: f64,
    pub low_shoulder: f64,
}

/// Piecewise-linear membership breakpoints for all four variables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipConfig {
    pub rt: RtBreakpoints,
    pub util: UtilBreakpoints,
}

impl Default for MembershipConfig {
    fn default() -> Self {
        Self {
            rt: RtBreakpoints {
                low_shoulder: 0.35,
                apex: 0.5,
                high_shoulder: 0.65,
            },
            util: UtilBreakpoints {
                high_shoulder: 0.5,
                low_shoulder: 0.6,
            },
        }
    }
}

impl MembershipConfig {
    pub fn validate(&self) -> Result<(), FuzzyError> {
        let r = &self.rt;
        if !(0.0 <= r.low_shoulder
            && r.low_shoulder < r.apex
            && r.apex < r.high_shoulder
            && r.high_shoulder <= 1.0)
        {
            return Err(FuzzyError::InvalidBreakpoints(format!(
                "rt breakpoints must satisfy 0 <= low < apex < high <= 1, got {r:?}"
            )));
        }
        let u = &self.util;
        if !(0.0 <= u.high_shoulder && u.high_shoulder < u.low_shoulder && u.low_shoulder <= 1.0) {
            return Err(FuzzyError::InvalidBreakpoints(format!(
                "util breakpoints must satisfy 0 <= high < low <= 1, got {u:?}"
            )));
        }
        Ok(())
    }

    /// Loads breakpoints from a TOML file with `[rt]` and `[util]` tables.
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, FuzzyError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| FuzzyError::Config(format!("{}: {e}", path.as_ref().display())))?;
        let cfg: Self = toml::from_str(&text).map_err(|e| FuzzyError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Linguistic terms over a utilization-improvement variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UtilTerm {
    High,
    Low,
}

impl UtilTerm {
    pub const ALL: [UtilTerm; 2] = [UtilTerm::High, UtilTerm::Low];

    fn code(self) -> char {
        match self {
            UtilTerm::High => 'H',
            UtilTerm::Low => 'L',
        }
    }
}

/// Linguistic terms over the normalized response time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RtTerm {
    High,
    Normal,
    Low,
}

impl RtTerm {
    pub const ALL: [RtTerm; 3] = [RtTerm::High, RtTerm::Normal, RtTerm::Low];

    fn code(self) -> char {
        match self {
            RtTerm::High => 'H',
            RtTerm::Normal => 'N',
            RtTerm::Low => 'L',
        }
    }
}

/// Per-term membership degrees for all four variables.
///
/// Utilization slots are ordered [High, Low]; the response-time slot is
/// ordered [High, Normal, Low], matching [`UtilTerm::ALL`] and [`RtTerm::ALL`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Memberships {
    pub cui: [f64; 2],
    pub mui: [f64; 2],
    pub dui: [f64; 2],
    pub rt: [f64; 3],
}

impl Memberships {
    pub fn util(&self, var: UtilVar, term: UtilTerm) -> f64 {
        let slot = match var {
            UtilVar::Cpu => &self.cui,
            UtilVar::Mem => &self.mui,
            UtilVar::Disk => &self.dui,
        };
        match term {
            UtilTerm::High => slot[0],
            UtilTerm::Low => slot[1],
        }
    }

    pub fn rt(&self, term: RtTerm) -> f64 {
        match term {
            RtTerm::High => self.rt[0],
            RtTerm::Normal => self.rt[1],
            RtTerm::Low => self.rt[2],
        }
    }
}

/// Which utilization variable a term refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UtilVar {
    Cpu,
    Mem,
    Disk,
}

// 1 up to `full_until`, falling linearly to 0 at `zero_at`.
fn falling_edge(v: f64, full_until: f64, zero_at: f64) -> f64 {
    if v <= full_until {
        1.0
    } else if v >= zero_at {
        0.0
    } else {
        (zero_at - v) / (zero_at - full_until)
    }
}

// 0 up to `zero_until`, rising linearly to 1 at `full_at`.
fn rising_edge(v: f64, zero_until: f64, full_at: f64) -> f64 {
    if v <= zero_until {
        0.0
    } else if v >= full_at {
        1.0
    } else {
        (v - zero_until) / (full_at - zero_until)
    }
}

fn triangle(v: f64, left: f64, apex: f64, right: f64) -> f64 {
    if v <= left || v >= right {
        0.0
    } else if v <= apex {
        (v - left) / (apex - left)
    } else {
        (right - v) / (right - apex)
    }
}

/// Computes all per-variable term memberships for a normalized measurement.
pub fn fuzzify(n: &NormalizedMeasurement, cfg: &MembershipConfig) -> Memberships {
    let util = |v: f64| {
        [
            falling_edge(v, cfg.util.high_shoulder, cfg.util.low_shoulder),
            rising_edge(v, cfg.util.high_shoulder, cfg.util.low_shoulder),
        ]
    };
    let rt = [
        rising_edge(n.rt, cfg.rt.apex, cfg.rt.high_shoulder),
        triangle(n.rt, cfg.rt.low_shoulder, cfg.rt.apex, cfg.rt.high_shoulder),
        falling_edge(n.rt, cfg.rt.low_shoulder, cfg.rt.apex),
    ];
    Memberships {
        cui: util(n.cui),
        mui: util(n.mui),
        dui: util(n.dui),
        rt,
    }
}

/// One of the 24 linguistic state codes over (CUI, MUI, DUI, RT).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateLabel {
    pub cui: UtilTerm,
    pub mui: UtilTerm,
    pub dui: UtilTerm,
    pub rt: RtTerm,
}

/// Number of distinct state labels (2 x 2 x 2 x 3).
pub const STATE_COUNT: usize = 24;

impl StateLabel {
    /// All labels in canonical order: CUI varies slowest, RT fastest.
    pub fn all() -> impl Iterator<Item = StateLabel> {
        UtilTerm::ALL.into_iter().flat_map(|cui| {
            UtilTerm::ALL.into_iter().flat_map(move |mui| {
                UtilTerm::ALL.into_iter().flat_map(move |dui| {
                    RtTerm::ALL
                        .into_iter()
                        .map(move |rt| StateLabel { cui, mui, dui, rt })
                })
            })
        })
    }

    /// Position in canonical order, in 0..24.
    pub fn index(&self) -> usize {
        let u = |t: UtilTerm| match t {
            UtilTerm::High => 0,
            UtilTerm::Low => 1,
        };
        let r = match self.rt {
            RtTerm::High => 0,
            RtTerm::Normal => 1,
            RtTerm::Low => 2,
        };
        ((u(self.cui) * 2 + u(self.mui)) * 2 + u(self.dui)) * 3 + r
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}{}",
            self.cui.code(),
            self.mui.code(),
            self.dui.code(),
            self.rt.code()
        )
    }
}

impl FromStr for StateLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != 4 {
            return Err(format!("state label must have 4 symbols, got {s:?}"));
        }
        let util = |c: char| match c {
            'H' => Ok(UtilTerm::High),
            'L' => Ok(UtilTerm::Low),
            other => Err(format!("invalid utilization term {other:?} in {s:?}")),
        };
        let rt = match chars[3] {
            'H' => RtTerm::High,
            'N' => RtTerm::Normal,
            'L' => RtTerm::Low,
            other => return Err(format!("invalid response-time term {other:?} in {s:?}")),
        };
        Ok(StateLabel {
            cui: util(chars[0])?,
            mui: util(chars[1])?,
            dui: util(chars[2])?,
            rt,
        })
    }
}

/// Detected environment state: winning label plus its support degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzyState {
    pub label: StateLabel,
    pub membership: f64,
}

/// A rule pairing one term per input variable with its state consequent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzyRule {
    pub antecedent: StateLabel,
    pub consequent: StateLabel,
}

/// The full enumeration of the 24 term combinations, in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleBase {
    rules: Vec<FuzzyRule>,
}

impl RuleBase {
    /// Builds the 2x2x2x3 enumeration; each consequent equals its antecedent.
    pub fn full() -> Self {
        let rules = StateLabel::all()
            .map(|label| FuzzyRule {
                antecedent: label,
                consequent: label,
            })
            .collect();
        Self { rules }
    }

    pub fn rules(&self) -> &[FuzzyRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

impl Default for RuleBase {
    fn default() -> Self {
        Self::full()
    }
}

/// Support degree of one rule: min over its four antecedent memberships.
pub fn rule_support(m: &Memberships, antecedent: &StateLabel) -> f64 {
    m.util(UtilVar::Cpu, antecedent.cui)
        .min(m.util(UtilVar::Mem, antecedent.mui))
        .min(m.util(UtilVar::Disk, antecedent.dui))
        .min(m.rt(antecedent.rt))
}

/// Picks the maximum-support rule; ties go to the earliest rule in canonical
/// order. The partition property guarantees a strictly positive winner.
pub fn infer_state(m: &Memberships, rules: &RuleBase) -> Result<FuzzyState, FuzzyError> {
    let mut best: Option<FuzzyState> = None;
    for rule in rules.rules() {
        let support = rule_support(m, &rule.antecedent);
        if best.is_none_or(|b| support > b.membership) {
            best = Some(FuzzyState {
                label: rule.consequent,
                membership: support,
            });
        }
    }
    match best {
        Some(state) if state.membership > 0.0 => Ok(state),
        _ => Err(FuzzyError::DegenerateInput),
    }
}

/// Full detection pipeline: normalize, fuzzify, infer.
pub fn detect_state(
    m: &QualityMeasurement,
    rt_requirement_ms: f64,
    cfg: &MembershipConfig,
    rules: &RuleBase,
) -> Result<FuzzyState, FuzzyError> {
    let normalized = normalize(m, rt_requirement_ms)?;
    infer_state(&fuzzify(&normalized, cfg), rules)
}
