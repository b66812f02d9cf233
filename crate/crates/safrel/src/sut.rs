//! Programs, sensitivity vectors, SUT instances and the breaking-point predicate.
//!
//! A system under test (SUT) is a named program characterized by how sensitive
//! its performance is to CPU, memory and disk capacity, plus the concrete
//! resources it was granted and its response-time requirement.

use std::fmt;
use std::path::Path;

use rand::distributions::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SutError;

/// Default multiplier applied to the response-time requirement to obtain the
/// breaking threshold.
pub const DEFAULT_BREAKING_MULTIPLIER: f64 = 1.5;

/// Nominal response time as a fraction of the requirement for generated
/// instances.
///
/// At 0.9 every generated SUT starts healthy and its breaking point is
/// reachable through the action space: breaking needs the throughput factor
/// below 0.6, and the worst floor-limited CPU ratio is 0.4.
pub const NOMINAL_RT_RATIO: f64 = 0.9;

/// Smallest resource configuration any action is allowed to reach.
///
/// Keeps the simulated throughput well-defined: repeated CPU reductions are
/// absolute quarter-core steps and would otherwise cross zero.
pub const DEFAULT_RESOURCE_FLOOR: ResourceConfig = ResourceConfig {
    cpu: 0.25,
    mem: 0.25,
    disk: 1.0,
};

/// Degrees in [0, 1] to which a program's performance depends on CPU, memory
/// and disk capacity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityVector {
    pub cpu: f64,
    pub mem: f64,
    pub disk: f64,
}

impl SensitivityVector {
    /// Validates components in [0, 1] and rejects the all-zero vector.
    pub fn new(cpu: f64, mem: f64, disk: f64) -> Result<Self, SutError> {
        let v = Self { cpu, mem, disk };
        for c in [cpu, mem, disk] {
            if !(0.0..=1.0).contains(&c) {
                return Err(SutError::InvalidSensitivity(v));
            }
        }
        if v.sum() == 0.0 {
            return Err(SutError::ZeroSensitivity);
        }
        Ok(v)
    }

    pub fn sum(&self) -> f64 {
        self.cpu + self.mem + self.disk
    }

    fn dot(&self, other: &Self) -> f64 {
        self.cpu * other.cpu + self.mem * other.mem + self.disk * other.disk
    }

    fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Cosine of the angle between two sensitivity vectors.
    ///
    /// Total because construction rejects the zero vector; nonnegative because
    /// components are nonnegative.
    pub fn cosine_similarity(&self, other: &Self) -> f64 {
        self.dot(other) / (self.norm() * other.norm())
    }
}

impl fmt::Display for SensitivityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.cpu, self.mem, self.disk)
    }
}

/// A named program with its performance-sensitivity vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProgramProfile {
    pub name: String,
    pub sensitivity: SensitivityVector,
}

impl ProgramProfile {
    pub fn new(name: impl Into<String>, sensitivity: SensitivityVector) -> Self {
        Self {
            name: name.into(),
            sensitivity,
        }
    }
}

/// CPU cores and memory/disk gigabytes granted to a SUT.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResourceConfig {
    pub cpu: f64,
    pub mem: f64,
    pub disk: f64,
}

impl ResourceConfig {
    /// Validates strictly positive components.
    pub fn new(cpu: f64, mem: f64, disk: f64) -> Result<Self, SutError> {
        let c = Self { cpu, mem, disk };
        if cpu > 0.0 && mem > 0.0 && disk > 0.0 {
            Ok(c)
        } else {
            Err(SutError::InvalidResources(c))
        }
    }

    /// True when every component is at or above the floor's.
    pub fn meets_floor(&self, floor: &ResourceConfig) -> bool {
        self.cpu >= floor.cpu && self.mem >= floor.mem && self.disk >= floor.disk
    }
}

/// A concrete SUT: profile, the demanded (initially granted) resources, and
/// its response-time contract.
#[derive(Debug, Clone, PartialEq)]
pub struct SutInstance {
    pub profile: ProgramProfile,
    /// Demanded amounts; ratios in the throughput model are taken against these.
    pub initial_resources: ResourceConfig,
    /// Response-time requirement in milliseconds.
    pub rt_requirement_ms: f64,
    /// Response time at the initial configuration (reciprocal of nominal throughput).
    pub nominal_rt_ms: f64,
    /// The breaking threshold is `breaking_multiplier * rt_requirement_ms`.
    pub breaking_multiplier: f64,
}

impl SutInstance {
    pub fn new(
        profile: ProgramProfile,
        initial_resources: ResourceConfig,
        rt_requirement_ms: f64,
        nominal_rt_ms: f64,
        breaking_multiplier: f64,
    ) -> Result<Self, SutError> {
        if rt_requirement_ms <= 0.0 || nominal_rt_ms <= 0.0 {
            return Err(SutError::InvalidRequirement {
                rt_requirement_ms,
                nominal_rt_ms,
            });
        }
        if nominal_rt_ms >= rt_requirement_ms {
            return Err(SutError::UnhealthyStart {
                rt_requirement_ms,
                nominal_rt_ms,
            });
        }
        if breaking_multiplier <= 1.0 {
            return Err(SutError::InvalidBreakingMultiplier(breaking_multiplier));
        }
        Ok(Self {
            profile,
            initial_resources,
            rt_requirement_ms,
            nominal_rt_ms,
            breaking_multiplier,
        })
    }

    /// Response time above which the SUT is considered broken.
    pub fn breaking_threshold_ms(&self) -> f64 {
        self.breaking_multiplier * self.rt_requirement_ms
    }

    /// True iff the measured response time strictly exceeds the breaking threshold.
    pub fn is_breaking_point(&self, measured_rt_ms: f64) -> bool {
        measured_rt_ms > self.breaking_threshold_ms()
    }
}

/// The built-in program catalog, or one loaded from a catalog file.
#[derive(Debug, Clone, PartialEq)]
pub struct Catalog {
    profiles: Vec<ProgramProfile>,
}

/// Programs treated as CPU-intensive by the named preset filter.
pub const CPU_INTENSIVE_PROGRAMS: [&str; 7] = [
    "Build-apache",
    "n-queens",
    "John-the-ripper",
    "Apache",
    "Dcraw",
    "Build-php",
    "X264",
];

impl Catalog {
    /// The embedded twelve-program catalog.
    pub fn builtin() -> Self {
        let rows: [(&str, f64, f64, f64); 12] = [
            ("Build-apache", 0.96, 0.04, 0.00),
            ("n-queens", 0.97, 0.00, 0.00),
            ("John-the-ripper", 0.96, 0.00, 0.00),
            ("Apache", 0.97, 0.03, 0.00),
            ("Dcraw", 0.48, 0.04, 0.00),
            ("X264", 0.41, 0.02, 0.00),
            ("Unpack-linux", 0.18, 0.09, 0.35),
            ("Build-php", 0.97, 0.07, 0.00),
            ("Blogbench", 0.11, 0.81, 0.18),
            ("Bork", 0.00, 0.53, 0.20),
            ("Compress-gzip", 0.00, 0.00, 0.47),
            ("Aio-stress", 0.00, 0.30, 0.80),
        ];
        let profiles = rows
            .into_iter()
            .map(|(name, c, m, d)| {
                ProgramProfile::new(name, SensitivityVector::new(c, m, d).expect("builtin row"))
            })
            .collect();
        Self { profiles }
    }

    pub fn from_profiles(profiles: Vec<ProgramProfile>) -> Result<Self, SutError> {
        if profiles.is_empty() {
            return Err(SutError::EmptyCatalog);
        }
        for (i, p) in profiles.iter().enumerate() {
            if profiles[..i].iter().any(|q| q.name == p.name) {
                return Err(SutError::DuplicateProgram(p.name.clone()));
            }
        }
        Ok(Self { profiles })
    }

    /// Parses catalog text: one `name, sen_cpu, sen_mem, sen_disk` record per
    /// line; blank lines and `#` comments ignored.
    pub fn parse(text: &str) -> Result<Self, SutError> {
        let mut profiles = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 4 {
                return Err(SutError::MalformedCatalogLine {
                    line: lineno + 1,
                    content: raw.to_string(),
                });
            }
            let mut vals = [0.0f64; 3];
            for (slot, field) in vals.iter_mut().zip(&fields[1..]) {
                *slot = field.parse().map_err(|_| SutError::MalformedCatalogLine {
                    line: lineno + 1,
                    content: raw.to_string(),
                })?;
            }
            let sensitivity = SensitivityVector::new(vals[0], vals[1], vals[2])?;
            profiles.push(ProgramProfile::new(fields[0], sensitivity));
        }
        Self::from_profiles(profiles)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, SutError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| SutError::Io(path.as_ref().display().to_string(), e))?;
        Self::parse(&text)
    }

    pub fn profiles(&self) -> &[ProgramProfile] {
        &self.profiles
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }
}

/// Predicate selecting which catalog programs a generator may draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProfileFilter {
    /// Every catalog program.
    #[default]
    All,
    /// The named CPU-intensive preset ([`CPU_INTENSIVE_PROGRAMS`]).
    CpuIntensive,
}

impl ProfileFilter {
    pub fn admits(&self, profile: &ProgramProfile) -> bool {
        match self {
            ProfileFilter::All => true,
            ProfileFilter::CpuIntensive => CPU_INTENSIVE_PROGRAMS.contains(&profile.name.as_str()),
        }
    }
}

/// Draws `count` SUT instances from the filtered catalog.
///
/// Per instance: profile uniform over the admitted programs, cpu in [1, 10]
/// cores, mem in [1, 50] GB, disk in [100, 1000] GB, requirement in
/// [500, 3000] ms, nominal response time [`NOMINAL_RT_RATIO`] of the
/// requirement. Pure function of `(catalog, count, seed, filter)`.
pub fn generate_instances(
    catalog: &Catalog,
    count: usize,
    seed: u64,
    filter: ProfileFilter,
) -> Result<Vec<SutInstance>, SutError> {
    let admitted: Vec<&ProgramProfile> = catalog
        .profiles()
        .iter()
        .filter(|p| filter.admits(p))
        .collect();
    if admitted.is_empty() {
        return Err(SutError::EmptyCatalog);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cpu_range = Uniform::new_inclusive(1.0, 10.0);
    let mem_range = Uniform::new_inclusive(1.0, 50.0);
    let disk_range = Uniform::new_inclusive(100.0, 1000.0);
    let rt_range = Uniform::new_inclusive(500.0, 3000.0);

    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let profile = admitted[rng.gen_range(0..admitted.len())].clone();
        let resources = ResourceConfig {
            cpu: cpu_range.sample(&mut rng),
            mem: mem_range.sample(&mut rng),
            disk: disk_range.sample(&mut rng),
        };
        let rt_requirement_ms = rt_range.sample(&mut rng);
        let instance = SutInstance::new(
            profile,
            resources,
            rt_requirement_ms,
            NOMINAL_RT_RATIO * rt_requirement_ms,
            DEFAULT_BREAKING_MULTIPLIER,
        )
        .expect("generated instance within documented ranges");
        out.push(instance);
    }
    Ok(out)
}
