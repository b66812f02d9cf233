//! Learned-policy persistence.
//!
//! A policy file is plain text: a magic line, a header carrying the learning
//! parameters and the catalog hash, then one `label action-index q-value`
//! record per cell. Values are rendered with the shortest decimal form that
//! round-trips, so save followed by load reproduces the table bit for bit.

use std::path::Path;

use sha2::{Digest, Sha256};

use crate::action::{Action, ACTION_COUNT};
use crate::agent::QTable;
use crate::error::PolicyIoError;
use crate::fuzzy::{StateLabel, STATE_COUNT};
use crate::sut::Catalog;

const MAGIC: &str = "safrel-policy 1";

/// Provenance recorded alongside the q-values.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyMeta {
    pub alpha: f64,
    pub gamma: f64,
    pub catalog_hash: String,
}

/// SHA-256 over a canonical rendering of the catalog.
pub fn catalog_hash(catalog: &Catalog) -> String {
    let mut hasher = Sha256::new();
    for profile in catalog.profiles() {
        let s = &profile.sensitivity;
        hasher.update(format!("{},{},{},{}\n", profile.name, s.cpu, s.mem, s.disk));
    }
    format!("{:x}", hasher.finalize())
}

/// Serializes the table and header to `destination`.
pub fn save_policy(
    destination: impl AsRef<Path>,
    q: &QTable,
    meta: &PolicyMeta,
) -> Result<(), PolicyIoError> {
    let mut text = String::new();
    text.push_str(MAGIC);
    text.push('\n');
    text.push_str(&format!("alpha {}\n", meta.alpha));
    text.push_str(&format!("gamma {}\n", meta.gamma));
    text.push_str(&format!("catalog {}\n", meta.catalog_hash));
    for (state, action, value) in q.iter() {
        text.push_str(&format!("{} {} {}\n", state, action.index(), value));
    }
    std::fs::write(destination.as_ref(), text)
        .map_err(|e| PolicyIoError::Io(destination.as_ref().display().to_string(), e))
}

/// Parses a policy file, requiring every one of the 24 x 13 cells exactly once.
pub fn load_policy(source: impl AsRef<Path>) -> Result<(PolicyMeta, QTable), PolicyIoError> {
    let text = std::fs::read_to_string(source.as_ref())
        .map_err(|e| PolicyIoError::Io(source.as_ref().display().to_string(), e))?;
    let mut lines = text.lines();

    if lines.next() != Some(MAGIC) {
        return Err(PolicyIoError::Malformed(format!(
            "missing magic line {MAGIC:?}"
        )));
    }
    let mut header_value = |key: &str| -> Result<String, PolicyIoError> {
        let line = lines
            .next()
            .ok_or_else(|| PolicyIoError::Malformed(format!("missing {key} header")))?;
        line.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| PolicyIoError::Malformed(format!("expected {key} header, got {line:?}")))
    };
    let parse_f64 = |key: &str, raw: String| -> Result<f64, PolicyIoError> {
        raw.parse()
            .map_err(|_| PolicyIoError::Malformed(format!("invalid {key} value {raw:?}")))
    };
    let alpha = parse_f64("alpha", header_value("alpha")?)?;
    let gamma = parse_f64("gamma", header_value("gamma")?)?;
    let catalog_hash = header_value("catalog")?;

    let mut q = QTable::new();
    let mut seen = [[false; ACTION_COUNT]; STATE_COUNT];
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (label_raw, index_raw, value_raw) =
            match (fields.next(), fields.next(), fields.next(), fields.next()) {
                (Some(a), Some(b), Some(c), None) => (a, b, c),
                _ => {
                    return Err(PolicyIoError::Malformed(format!(
                        "expected `label action value` record, got {line:?}"
                    )))
                }
            };
        let label: StateLabel = label_raw.parse().map_err(PolicyIoError::Malformed)?;
        let action = index_raw
            .parse::<usize>()
            .ok()
            .and_then(Action::from_index)
            .ok_or_else(|| {
                PolicyIoError::Malformed(format!("invalid action index {index_raw:?}"))
            })?;
        let value: f64 = value_raw
            .parse()
            .map_err(|_| PolicyIoError::Malformed(format!("invalid q-value {value_raw:?}")))?;
        if seen[label.index()][action.index()] {
            return Err(PolicyIoError::Malformed(format!(
                "duplicate record for {label} {}",
                action.index()
            )));
        }
        seen[label.index()][action.index()] = true;
        q.set(label, action, value);
    }
    if seen.iter().flatten().any(|&s| !s) {
        return Err(PolicyIoError::Malformed(format!(
            "incomplete table: expected {} records",
            STATE_COUNT * ACTION_COUNT
        )));
    }
    Ok((
        PolicyMeta {
            alpha,
            gamma,
            catalog_hash,
        },
        q,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agent::{initial_learning, AgentConfig};
    use crate::sut::{generate_instances, ProfileFilter};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn meta() -> PolicyMeta {
        PolicyMeta {
            alpha: 0.1,
            gamma: 0.5,
            catalog_hash: catalog_hash(&Catalog::builtin()),
        }
    }

    #[test]
    fn zero_table_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("policy.txt");
        let q = QTable::new();
        save_policy(&path, &q, &meta()).unwrap();
        let (loaded_meta, loaded) = load_policy(&path).unwrap();
        assert_eq!(loaded, q);
        assert_eq!(loaded_meta, meta());
    }

    #[test]
    fn trained_table_round_trips_bitwise() {
        let catalog = Catalog::builtin();
        let instance =
            generate_instances(&catalog, 1, 17, ProfileFilter::CpuIntensive).unwrap()[0].clone();
        let cfg = AgentConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let (q, _) = initial_learning(&instance, 40, &cfg, &mut rng);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("policy.txt");
        save_policy(&path, &q, &meta()).unwrap();
        let (_, loaded) = load_policy(&path).unwrap();
        assert_eq!(loaded, q);
    }

    #[test]
    fn truncated_file_is_malformed() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("policy.txt");
        save_policy(&path, &QTable::new(), &meta()).unwrap();
        let full = std::fs::read_to_string(&path).unwrap();
        let cut: String = full.lines().take(100).collect::<Vec<_>>().join("\n");
        std::fs::write(&path, cut).unwrap();
        assert!(matches!(
            load_policy(&path),
            Err(PolicyIoError::Malformed(_))
        ));
    }

    #[test]
    fn missing_file_is_an_io_error() {
        assert!(matches!(
            load_policy("/nonexistent/safrel/policy.txt"),
            Err(PolicyIoError::Io(_, _))
        ));
    }

    #[test]
    fn garbage_headers_and_records_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("policy.txt");
        std::fs::write(&path, "not a policy\n").unwrap();
        assert!(matches!(
            load_policy(&path),
            Err(PolicyIoError::Malformed(_))
        ));

        let good_header = format!("{MAGIC}\nalpha 0.1\ngamma 0.5\ncatalog abc\n");
        std::fs::write(&path, format!("{good_header}XXXX 0 1.0\n")).unwrap();
        assert!(matches!(
            load_policy(&path),
            Err(PolicyIoError::Malformed(_))
        ));
        std::fs::write(&path, format!("{good_header}HHHH 99 1.0\n")).unwrap();
        assert!(matches!(
            load_policy(&path),
            Err(PolicyIoError::Malformed(_))
        ));
    }

    #[test]
    fn catalog_hash_is_stable_and_content_sensitive() {
        let builtin = Catalog::builtin();
        assert_eq!(catalog_hash(&builtin), catalog_hash(&Catalog::builtin()));
        let custom = Catalog::parse("only-one, 0.5, 0.0, 0.0").unwrap();
        assert_ne!(catalog_hash(&builtin), catalog_hash(&custom));
    }
}
