//! Staged output files: everything is written to `<path>.tmp` and renamed
//! into place only when the whole command succeeds, so failures leave no
//! partial outputs behind.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

pub struct StagedOutputs {
    staged: Vec<(PathBuf, PathBuf)>,
    committed: bool,
}

impl StagedOutputs {
    pub fn new() -> Self {
        Self {
            staged: Vec::new(),
            committed: false,
        }
    }

    /// Opens a buffered writer on the temporary twin of `path`.
    pub fn stage(&mut self, path: &Path) -> Result<BufWriter<fs::File>> {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent)
                    .with_context(|| format!("cannot create {}", parent.display()))?;
            }
        }
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        let file = fs::File::create(&tmp)
            .with_context(|| format!("cannot create {}", tmp.display()))?;
        self.staged.push((tmp, path.to_path_buf()));
        Ok(BufWriter::new(file))
    }

    /// Writes one file in a single closure call.
    pub fn write_file(
        &mut self,
        path: &Path,
        write: impl FnOnce(&mut dyn Write) -> Result<()>,
    ) -> Result<()> {
        let mut w = self.stage(path)?;
        write(&mut w)?;
        w.flush()
            .with_context(|| format!("cannot write {}", path.display()))?;
        Ok(())
    }

    /// Renames every staged file into place.
    pub fn commit(mut self) -> Result<()> {
        for (tmp, final_path) in &self.staged {
            fs::rename(tmp, final_path).with_context(|| {
                format!("cannot move {} to {}", tmp.display(), final_path.display())
            })?;
        }
        self.committed = true;
        Ok(())
    }
}

impl Drop for StagedOutputs {
    fn drop(&mut self) {
        if !self.committed {
            for (tmp, _) in &self.staged {
                let _ = fs::remove_file(tmp);
            }
        }
    }
}
