//! Reader for the on-disk instance format.
//!
//! An instance file is a CSV with header `arm_id,kind,p1,p2`. `arm_id` must
//! run 1..K in row order. `kind` is one of:
//!
//! * `gaussian` — `p1` = mean, `p2` = std
//! * `bernoulli` — `p1` = mean, `p2` empty
//! * `empirical-ref` — `p1` = path to a one-float-per-line sample file,
//!   resolved relative to the instance file; `p2` empty

use std::path::Path;

use crate::error::{Error, Result};
use crate::instance::{ArmDistribution, EgalMabInstance};

fn malformed(path: &Path, row: usize, message: impl Into<String>) -> Error {
    Error::MalformedRow {
        path: path.display().to_string(),
        row,
        message: message.into(),
    }
}

fn parse_number(path: &Path, row: usize, raw: &str) -> Result<f64> {
    raw.trim().parse().map_err(|_| Error::MalformedValue {
        path: path.display().to_string(),
        row,
        value: raw.to_string(),
    })
}

/// Reads a one-column sample file: one float per line, blank lines skipped.
pub fn read_samples_file(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let mut samples = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        samples.push(parse_number(path, i + 1, line)?);
    }
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    Ok(samples)
}

/// Loads an instance file, pulling in any referenced sample files.
pub fn read_instance_csv(path: &Path) -> Result<EgalMabInstance> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_path(path)
        .map_err(|e| Error::Csv {
            path: path.display().to_string(),
            source: e,
        })?;
    {
        let headers = reader.headers().map_err(|e| Error::Csv {
            path: path.display().to_string(),
            source: e,
        })?;
        let expected = ["arm_id", "kind", "p1", "p2"];
        let got: Vec<&str> = headers.iter().map(str::trim).collect();
        if got != expected {
            return Err(malformed(
                path,
                0,
                format!("header must be `arm_id,kind,p1,p2`, got `{}`", got.join(",")),
            ));
        }
    }
    let base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();

    let mut arms = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| Error::Csv {
            path: path.display().to_string(),
            source: e,
        })?;
        let field = |idx: usize| record.get(idx).unwrap_or("").trim().to_string();
        let arm_id: usize = field(0)
            .parse()
            .map_err(|_| malformed(path, row, format!("bad arm_id `{}`", field(0))))?;
        if arm_id != row {
            return Err(malformed(
                path,
                row,
                format!("arm_id {arm_id} out of order, expected {row}"),
            ));
        }
        let kind = field(1);
        let p1 = field(2);
        let p2 = field(3);
        let arm = match kind.as_str() {
            "gaussian" => ArmDistribution::gaussian(
                parse_number(path, row, &p1)?,
                parse_number(path, row, &p2)?,
            )?,
            "bernoulli" => ArmDistribution::bernoulli(parse_number(path, row, &p1)?)?,
            "empirical-ref" => {
                if p1.is_empty() {
                    return Err(malformed(path, row, "empirical-ref needs a sample path"));
                }
                ArmDistribution::empirical(read_samples_file(&base_dir.join(&p1))?)?
            }
            other => {
                return Err(malformed(
                    path,
                    row,
                    format!("unknown kind `{other}` (expected gaussian, bernoulli or empirical-ref)"),
                ))
            }
        };
        arms.push(arm);
    }
    EgalMabInstance::new(arms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_file(dir: &Path, name: &str, contents: &str) -> std::path::PathBuf {
        let path = dir.join(name);
        let mut file = std::fs::File::create(&path).unwrap();
        file.write_all(contents.as_bytes()).unwrap();
        path
    }

    #[test]
    fn reads_all_three_kinds() {
        let dir = tempfile::tempdir().unwrap();
        write_file(dir.path(), "samples.txt", "1.5\n\n2.5\n");
        let path = write_file(
            dir.path(),
            "instance.csv",
            "arm_id,kind,p1,p2\n\
             1,gaussian,0.3,1.0\n\
             2,bernoulli,0.8,\n\
             3,empirical-ref,samples.txt,\n",
        );
        let instance = read_instance_csv(&path).unwrap();
        assert_eq!(instance.num_arms(), 3);
        assert_eq!(instance.arm(0).mean(), 0.3);
        assert_eq!(instance.arm(0).gaussian_std(), Some(1.0));
        assert_eq!(instance.arm(1).mean(), 0.8);
        assert_eq!(instance.arm(2).mean(), 2.0);
        assert_eq!(instance.arm(2).sample_count(), Some(2));
    }

    #[test]
    fn rejects_wrong_headers_and_kinds() {
        let dir = tempfile::tempdir().unwrap();
        let bad_header = write_file(dir.path(), "h.csv", "id,kind,p1,p2\n1,bernoulli,0.5,\n");
        assert!(read_instance_csv(&bad_header).is_err());

        let bad_kind = write_file(
            dir.path(),
            "k.csv",
            "arm_id,kind,p1,p2\n1,poisson,0.5,\n",
        );
        let err = read_instance_csv(&bad_kind).unwrap_err();
        assert!(err.to_string().contains("poisson"), "{err}");
    }

    #[test]
    fn rejects_out_of_order_arm_ids() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(
            dir.path(),
            "o.csv",
            "arm_id,kind,p1,p2\n2,bernoulli,0.5,\n",
        );
        assert!(read_instance_csv(&path).is_err());
    }

    #[test]
    fn sample_files_must_be_numeric() {
        let dir = tempfile::tempdir().unwrap();
        write_file(dir.path(), "s.txt", "1.0\nnope\n");
        let path = write_file(
            dir.path(),
            "i.csv",
            "arm_id,kind,p1,p2\n1,empirical-ref,s.txt,\n",
        );
        let err = read_instance_csv(&path).unwrap_err();
        assert!(matches!(err, Error::MalformedValue { row: 2, .. }), "{err}");
    }
}
