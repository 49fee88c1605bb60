//! Builders that turn real-world trace or ratings CSVs into empirical bandit
//! instances: group values by an id column, keep the busiest (or a seeded
//! random sample of) ids as arms, and treat each group as an empirical reward
//! distribution.

use std::io::Write;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{gap_summary, ArmDistribution, EgalMabInstance};

/// How the kept ids are chosen once the file is grouped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionMode {
    /// Ids with the most entries, ties by first appearance.
    TopCount,
    /// A seeded uniform sample of the distinct ids, kept in first-appearance
    /// order.
    Random { seed: u64 },
}

/// What to read and how to turn it into arms.
#[derive(Debug, Clone)]
pub struct TraceSpec {
    pub path: PathBuf,
    pub id_column: String,
    pub value_column: String,
    /// Negate every value (for traces where lower is better).
    pub negate: bool,
    /// Number of arms to build.
    pub top_k: usize,
    /// Read at most this many data rows.
    pub max_rows: Option<usize>,
    pub selection: SelectionMode,
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn csv_err(path: &Path, source: csv::Error) -> Error {
    Error::Csv {
        path: path.display().to_string(),
        source,
    }
}

/// Loads a grouped-trace instance per `spec`. Returns the instance and the
/// arm-index to original-id map (index `a` holds the id behind arm `a`).
pub fn load_instance(spec: &TraceSpec) -> Result<(EgalMabInstance, Vec<String>)> {
    let path = &spec.path;
    let mut reader = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    let headers = reader.headers().map_err(|e| csv_err(path, e))?;
    let find = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn {
                path: path.display().to_string(),
                column: name.to_string(),
            })
    };
    let id_idx = find(&spec.id_column)?;
    let value_idx = find(&spec.value_column)?;

    // Groups in first-appearance order.
    let mut slot_of_id = std::collections::HashMap::<String, usize>::new();
    let mut groups: Vec<(String, Vec<f64>)> = Vec::new();
    for (row, record) in reader.records().enumerate() {
        if let Some(limit) = spec.max_rows {
            if row >= limit {
                break;
            }
        }
        let record = record.map_err(|e| csv_err(path, e))?;
        let data_row = row + 1;
        let id = record.get(id_idx).ok_or_else(|| Error::MalformedRow {
            path: path.display().to_string(),
            row: data_row,
            message: format!("missing field `{}`", spec.id_column),
        })?;
        let raw = record.get(value_idx).ok_or_else(|| Error::MalformedRow {
            path: path.display().to_string(),
            row: data_row,
            message: format!("missing field `{}`", spec.value_column),
        })?;
        let value: f64 = raw.trim().parse().map_err(|_| Error::MalformedValue {
            path: path.display().to_string(),
            row: data_row,
            value: raw.to_string(),
        })?;
        if !value.is_finite() {
            return Err(Error::MalformedValue {
                path: path.display().to_string(),
                row: data_row,
                value: raw.to_string(),
            });
        }
        let slot = *slot_of_id.entry(id.to_string()).or_insert_with(|| {
            groups.push((id.to_string(), Vec::new()));
            groups.len() - 1
        });
        groups[slot].1.push(if spec.negate { -value } else { value });
    }

    if groups.len() < spec.top_k || spec.top_k == 0 {
        return Err(Error::InsufficientIds {
            path: path.display().to_string(),
            found: groups.len(),
            requested: spec.top_k,
        });
    }

    let kept: Vec<usize> = match spec.selection {
        SelectionMode::TopCount => {
            let mut slots: Vec<usize> = (0..groups.len()).collect();
            // Stable sort keeps first-appearance order among equal counts.
            slots.sort_by_key(|&s| std::cmp::Reverse(groups[s].1.len()));
            slots.truncate(spec.top_k);
            slots
        }
        SelectionMode::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut slots =
                rand::seq::index::sample(&mut rng, groups.len(), spec.top_k).into_vec();
            slots.sort_unstable();
            slots
        }
    };

    let mut ids = Vec::with_capacity(spec.top_k);
    let mut arms = Vec::with_capacity(spec.top_k);
    for &slot in &kept {
        ids.push(groups[slot].0.clone());
        arms.push(ArmDistribution::empirical(groups[slot].1.clone())?);
    }
    Ok((EgalMabInstance::new(arms)?, ids))
}

/// Writes the arm-index map as CSV with header
/// `arm_index,original_id,n_samples,mean` (arm indices from 1). Ids are
/// quoted as needed.
pub fn write_id_map_csv<W: Write>(
    mut w: W,
    instance: &EgalMabInstance,
    ids: &[String],
    header_lines: &[String],
) -> Result<()> {
    for line in header_lines {
        writeln!(w, "# {line}").map_err(|e| io_err(Path::new("<id map>"), e))?;
    }
    let mut writer = csv::Writer::from_writer(w);
    writer
        .write_record(["arm_index", "original_id", "n_samples", "mean"])
        .and_then(|_| {
            for (arm, id) in ids.iter().enumerate() {
                let dist = instance.arm(arm);
                writer.write_record([
                    (arm + 1).to_string(),
                    id.clone(),
                    dist.sample_count().map(|n| n.to_string()).unwrap_or_default(),
                    dist.mean().to_string(),
                ])?;
            }
            writer.flush().map_err(csv::Error::from)
        })
        .map_err(|e| csv_err(Path::new("<id map>"), e))
}

/// Renders a plain text/CSV report of an instance: gap statistics as comment
/// lines, then one row per arm.
pub fn instance_summary(instance: &EgalMabInstance, num_users: usize) -> Result<String> {
    let summary = gap_summary(instance, num_users)?;
    let mut out = String::new();
    out.push_str(&format!(
        "# arms={} users={}\n",
        instance.num_arms(),
        num_users
    ));
    let delta_min = summary
        .delta_min
        .map(|d| d.to_string())
        .unwrap_or_else(|| "undefined".to_string());
    let top: Vec<String> = summary.top_set.iter().map(|a| (a + 1).to_string()).collect();
    out.push_str(&format!(
        "# mu_star={} delta_min={} delta_max={} top_set={}\n",
        summary.mu_star,
        delta_min,
        summary.delta_max,
        top.join(";")
    ));
    out.push_str("arm_index,kind,n_samples,mean\n");
    for (arm, dist) in instance.arms().iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            arm + 1,
            dist.kind_name(),
            dist.sample_count().map(|n| n.to_string()).unwrap_or_default(),
            dist.mean()
        ));
    }
    Ok(out)
}
