//! Flag and config-file resolution.
//!
//! Every option can come from the command line or from a flat `key=value`
//! config file (`--config`); command-line values win. Unknown file keys are
//! hard errors, and the fully resolved configuration is echoed into each
//! output header so a run can be reproduced from its own artifacts.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};

use egalbandit::bounds::hard_instance;
use egalbandit::instance_file::read_instance_csv;
use egalbandit::ingest::SelectionMode;
use egalbandit::{EgalMabInstance, PolicyKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed offset for the default uniform-means stream, so instance generation
/// and episode rewards never share a stream.
const MEANS_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn parse_config_file(path: &PathBuf) -> Result<BTreeMap<String, Vec<String>>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    let mut map: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("config line {}: expected key=value, got `{line}`", i + 1))?;
        map.entry(key.trim().to_string())
            .or_default()
            .push(value.trim().to_string());
    }
    Ok(map)
}

/// Merges command-line values with config-file values (command line wins)
/// and rejects keys the active mode does not know.
pub struct Resolver {
    file: BTreeMap<String, Vec<String>>,
}

impl Resolver {
    pub fn new(
        mode: &str,
        file: BTreeMap<String, Vec<String>>,
        allowed_keys: &[&str],
    ) -> Result<Self> {
        for key in file.keys() {
            if key == "mode" {
                continue;
            }
            if !allowed_keys.contains(&key.as_str()) {
                bail!("unknown config key `{key}` for mode {mode}");
            }
        }
        if let Some(modes) = file.get("mode") {
            for m in modes {
                if m != mode {
                    bail!("config file sets mode={m} but the command line says {mode}");
                }
            }
        }
        Ok(Self { file })
    }

    fn file_single(&self, key: &str) -> Result<Option<&str>> {
        match self.file.get(key).map(Vec::as_slice) {
            None => Ok(None),
            Some([one]) => Ok(Some(one)),
            Some(_) => bail!("config key `{key}` given more than once"),
        }
    }

    pub fn string(&self, cli: Option<&str>, key: &str) -> Result<Option<String>> {
        if let Some(v) = cli {
            return Ok(Some(v.to_string()));
        }
        Ok(self.file_single(key)?.map(str::to_string))
    }

    pub fn parsed<T: FromStr>(&self, cli: Option<&str>, key: &str) -> Result<Option<T>> {
        self.string(cli, key)?
            .map(|raw| {
                raw.parse()
                    .map_err(|_| anyhow!("invalid value for {key}: `{raw}`"))
            })
            .transpose()
    }

    pub fn required<T: FromStr>(&self, cli: Option<&str>, key: &str) -> Result<T> {
        self.parsed(cli, key)?
            .ok_or_else(|| anyhow!("missing required option --{key}"))
    }

    pub fn parsed_or<T: FromStr>(&self, cli: Option<&str>, key: &str, default: T) -> Result<T> {
        Ok(self.parsed(cli, key)?.unwrap_or(default))
    }

    pub fn flag(&self, cli: bool, key: &str) -> Result<bool> {
        if cli {
            return Ok(true);
        }
        match self.file_single(key)? {
            None => Ok(false),
            Some("true") => Ok(true),
            Some("false") => Ok(false),
            Some(other) => bail!("invalid value for {key}: `{other}` (expected true or false)"),
        }
    }

    /// List-valued key: the command line replaces the file wholesale.
    pub fn list(&self, cli: &[String], key: &str) -> Vec<String> {
        if !cli.is_empty() {
            return cli.to_vec();
        }
        self.file.get(key).cloned().unwrap_or_default()
    }
}

/// Comma-separated user counts, e.g. `2,4,8`.
pub fn parse_user_list(raw: &[String]) -> Result<Vec<usize>> {
    let mut users = Vec::new();
    for chunk in raw.iter().flat_map(|s| s.split(',')) {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        users.push(
            chunk
                .parse()
                .map_err(|_| anyhow!("invalid value for U: `{chunk}`"))?,
        );
    }
    Ok(users)
}

/// Where the arms come from.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    File(PathBuf),
    /// Means drawn once from `uniform[lo, hi]` with the given seed.
    Uniform {
        family: UniformFamily,
        lo: f64,
        hi: f64,
        seed: u64,
    },
    /// Bernoulli arms with mean `hi` on the first `U` arms, `lo` elsewhere.
    Step { hi: f64, lo: f64 },
    /// The Gaussian lower-bound construction for the current `(K, U, T)`.
    Hard,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UniformFamily {
    Gaussian { std: f64 },
    Bernoulli,
}

impl InstanceSource {
    /// True when the generated arms depend on the number of users or the
    /// horizon, so a sweep has to rebuild per U.
    pub fn depends_on_users(&self) -> bool {
        matches!(self, InstanceSource::Step { .. } | InstanceSource::Hard)
    }

    /// Config tokens reproducing this source (`gen=` lines or `instance=`).
    pub fn provenance(&self) -> Vec<String> {
        match self {
            InstanceSource::File(path) => vec![format!("instance={}", path.display())],
            InstanceSource::Uniform {
                family,
                lo,
                hi,
                seed,
            } => {
                let fam = match family {
                    UniformFamily::Gaussian { std } => format!("gen=gaussian:{std}"),
                    UniformFamily::Bernoulli => "gen=bernoulli".to_string(),
                };
                vec![fam, format!("gen=uniform-means:{lo},{hi},{seed}")]
            }
            InstanceSource::Step { hi, lo } => vec![format!("gen=step:{hi},{lo}")],
            InstanceSource::Hard => vec!["gen=hard".to_string()],
        }
    }

    /// Builds the instance for one `(K, U, T)` cell.
    pub fn build(&self, num_arms: usize, num_users: usize, horizon: u64) -> Result<EgalMabInstance> {
        match self {
            InstanceSource::File(path) => {
                read_instance_csv(path).map_err(anyhow::Error::from)
            }
            InstanceSource::Uniform {
                family,
                lo,
                hi,
                seed,
            } => {
                if !(hi >= lo) {
                    bail!("uniform-means range [{lo}, {hi}] is empty");
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let means: Vec<f64> = (0..num_arms)
                    .map(|_| lo + (hi - lo) * rng.random::<f64>())
                    .collect();
                match family {
                    UniformFamily::Gaussian { std } => {
                        EgalMabInstance::gaussian(&means, *std).map_err(anyhow::Error::from)
                    }
                    UniformFamily::Bernoulli => {
                        EgalMabInstance::bernoulli(&means).map_err(anyhow::Error::from)
                    }
                }
            }
            InstanceSource::Step { hi, lo } => {
                let means: Vec<f64> = (0..num_arms)
                    .map(|a| if a < num_users { *hi } else { *lo })
                    .collect();
                EgalMabInstance::bernoulli(&means).map_err(anyhow::Error::from)
            }
            InstanceSource::Hard => Ok(hard_instance(num_arms, num_users, horizon)?.0),
        }
    }
}

/// Resolves the instance source from `--instance` and repeatable `--gen`
/// tokens. Tokens compose: one family (`gaussian:σ`, `bernoulli`,
/// `step:hi,lo` or `hard`) plus an optional `uniform-means:lo,hi,seed` for
/// the uniform families. With nothing given, defaults to `gaussian:1` with
/// `uniform-means:0.01,0.99,<seed-derived>`.
pub fn resolve_source(
    instance: Option<String>,
    gen_tokens: &[String],
    base_seed: u64,
) -> Result<InstanceSource> {
    if let Some(path) = instance {
        if !gen_tokens.is_empty() {
            bail!("--instance and --gen cannot be combined");
        }
        return Ok(InstanceSource::File(PathBuf::from(path)));
    }

    let mut family: Option<UniformFamily> = None;
    let mut step: Option<(f64, f64)> = None;
    let mut hard = false;
    let mut means: Option<(f64, f64, u64)> = None;

    let float = |raw: &str, token: &str| -> Result<f64> {
        raw.parse()
            .map_err(|_| anyhow!("invalid number `{raw}` in --gen {token}"))
    };

    for token in gen_tokens {
        let (name, rest) = token.split_once(':').unwrap_or((token.as_str(), ""));
        match name {
            "gaussian" => {
                if rest.is_empty() {
                    bail!("--gen gaussian needs a std, e.g. gaussian:1.0");
                }
                set_once(&mut family, UniformFamily::Gaussian { std: float(rest, token)? })?;
            }
            "bernoulli" => set_once(&mut family, UniformFamily::Bernoulli)?,
            "uniform-means" => {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 3 {
                    bail!("--gen uniform-means needs lo,hi,seed");
                }
                let seed: u64 = parts[2]
                    .trim()
                    .parse()
                    .map_err(|_| anyhow!("invalid seed `{}` in --gen {token}", parts[2]))?;
                set_once(
                    &mut means,
                    (float(parts[0], token)?, float(parts[1], token)?, seed),
                )?;
            }
            "step" => {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 2 {
                    bail!("--gen step needs hi,lo");
                }
                set_once(&mut step, (float(parts[0], token)?, float(parts[1], token)?))?;
            }
            "hard" => hard = true,
            other => bail!("unknown generator `{other}`"),
        }
    }

    let exclusive = [family.is_some(), step.is_some(), hard]
        .iter()
        .filter(|&&x| x)
        .count();
    if exclusive > 1 {
        bail!("--gen family given more than once");
    }
    if hard {
        if means.is_some() {
            bail!("--gen hard does not take uniform-means");
        }
        return Ok(InstanceSource::Hard);
    }
    if let Some((hi, lo)) = step {
        if means.is_some() {
            bail!("--gen step does not take uniform-means");
        }
        return Ok(InstanceSource::Step { hi, lo });
    }
    let family = family.unwrap_or(UniformFamily::Gaussian { std: 1.0 });
    let (lo, hi, seed) =
        means.unwrap_or((0.01, 0.99, base_seed.wrapping_add(MEANS_SEED_OFFSET)));
    Ok(InstanceSource::Uniform {
        family,
        lo,
        hi,
        seed,
    })
}

fn set_once<T>(slot: &mut Option<T>, value: T) -> Result<()> {
    if slot.is_some() {
        bail!("--gen token of this kind given more than once");
    }
    *slot = Some(value);
    Ok(())
}

/// Applies the divisibility rule: either `horizon` is a multiple of `users`,
/// or `--round-horizon` trims it down with a warning on stderr.
pub fn effective_horizon(horizon: u64, users: usize, round: bool) -> Result<u64> {
    let u = users as u64;
    if u == 0 {
        bail!("U must be at least 1");
    }
    let rem = horizon % u;
    if rem == 0 {
        if horizon == 0 {
            bail!("T must be at least one block ({u} steps)");
        }
        return Ok(horizon);
    }
    if !round {
        bail!("horizon not divisible by users ({horizon} steps, {users} users); pass --round-horizon to trim");
    }
    let trimmed = horizon - rem;
    if trimmed == 0 {
        bail!("horizon {horizon} is shorter than one block of {users} users");
    }
    eprintln!("warning: rounding horizon {horizon} down to {trimmed} (multiple of {users})");
    Ok(trimmed)
}

pub fn parse_selection_mode(raw: &str) -> Result<SelectionMode> {
    if raw == "top-count" {
        return Ok(SelectionMode::TopCount);
    }
    if let Some(seed) = raw.strip_prefix("random:") {
        let seed = seed
            .parse()
            .map_err(|_| anyhow!("invalid seed in --select {raw}"))?;
        return Ok(SelectionMode::Random { seed });
    }
    bail!("invalid value for select: `{raw}` (expected top-count or random:SEED)")
}

pub fn selection_mode_token(mode: SelectionMode) -> String {
    match mode {
        SelectionMode::TopCount => "top-count".to_string(),
        SelectionMode::Random { seed } => format!("random:{seed}"),
    }
}

pub fn parse_policy(raw: Option<String>) -> Result<PolicyKind> {
    match raw {
        None => Ok(PolicyKind::EgalUcb),
        Some(raw) => PolicyKind::from_str(&raw).map_err(|e| anyhow!(e)),
    }
}

/// `key=value` provenance lines shared by every command.
pub fn common_provenance(
    mode: &str,
    num_arms: usize,
    users: &[usize],
    horizon: u64,
    runs: usize,
    seed: u64,
    policy: PolicyKind,
    round_horizon: bool,
    source: &InstanceSource,
) -> Vec<String> {
    let mut lines = vec![format!("mode={mode}")];
    lines.push(format!("K={num_arms}"));
    let mut u_line = String::new();
    for (i, u) in users.iter().enumerate() {
        if i > 0 {
            u_line.push(',');
        }
        let _ = write!(u_line, "{u}");
    }
    lines.push(format!("U={u_line}"));
    lines.push(format!("T={horizon}"));
    lines.extend(source.provenance());
    lines.push(format!("policy={policy}"));
    lines.push(format!("round-horizon={round_horizon}"));
    lines.push(format!("runs={runs}"));
    lines.push(format!("seed={seed}"));
    lines
}
