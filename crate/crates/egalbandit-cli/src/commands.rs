use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};

use egalbandit::bounds::BoundReport;
use egalbandit::ingest::{load_instance, write_id_map_csv, TraceSpec};
use egalbandit::sim::{
    aggregate_runs, fit_loglog_slope, replicate, replicate_runs, write_aggregate_csv,
    write_runs_csv,
};
use egalbandit::EgalMabInstance;

use crate::config::{
    common_provenance, effective_horizon, parse_policy, parse_selection_mode, parse_user_list,
    resolve_source, selection_mode_token, InstanceSource, Resolver,
};
use crate::output::StagedOutputs;
use crate::{single_user_count, with_suffix, BoundsArgs, IngestArgs, SimulateArgs, SweepArgs};

const COMMON_KEYS: &[&str] = &[
    "K",
    "U",
    "T",
    "runs",
    "seed",
    "policy",
    "out",
    "round-horizon",
    "instance",
    "gen",
];

fn common_keys_plus(extra: &[&str]) -> Vec<&'static str> {
    let mut keys = COMMON_KEYS.to_vec();
    for &k in extra {
        // Leak-free: extras are 'static literals from the call sites.
        keys.push(Box::leak(k.to_string().into_boxed_str()));
    }
    keys
}

/// Resolves the instance and arm count: files fix K themselves, generators
/// need `--K`.
fn build_instance(
    source: &InstanceSource,
    num_arms_flag: Option<usize>,
    num_users: usize,
    horizon: u64,
) -> Result<(EgalMabInstance, usize)> {
    match source {
        InstanceSource::File(_) => {
            let instance = source.build(0, num_users, horizon)?;
            let num_arms = instance.num_arms();
            if let Some(k) = num_arms_flag {
                if k != num_arms {
                    bail!("--K {k} disagrees with the instance file ({num_arms} arms)");
                }
            }
            Ok((instance, num_arms))
        }
        _ => {
            let num_arms = num_arms_flag.ok_or_else(|| anyhow!("missing required option --K"))?;
            let instance = source.build(num_arms, num_users, horizon)?;
            Ok((instance, num_arms))
        }
    }
}

pub fn simulate(args: SimulateArgs, file: BTreeMap<String, Vec<String>>) -> Result<()> {
    let c = args.common;
    let r = Resolver::new("simulate", file, COMMON_KEYS)?;

    let seed: u64 = r.required(c.seed.as_deref(), "seed")?;
    let users = parse_user_list(&r.list(&c.users, "U"))?;
    let num_users = single_user_count(&users)?;
    let horizon: u64 = r.required(c.horizon.as_deref(), "T")?;
    let runs: usize = r.parsed_or(c.runs.as_deref(), "runs", 1)?;
    let policy = parse_policy(r.string(c.policy.as_deref(), "policy")?)?;
    let round = r.flag(c.round_horizon, "round-horizon")?;
    let out = PathBuf::from(r.required::<String>(c.out.as_deref(), "out")?);
    let num_arms_flag: Option<usize> = r.parsed(c.num_arms.as_deref(), "K")?;
    let source = resolve_source(r.string(c.instance.as_deref(), "instance")?, &r.list(&c.gen, "gen"), seed)?;

    let horizon = effective_horizon(horizon, num_users, round)?;
    let (instance, num_arms) = build_instance(&source, num_arms_flag, num_users, horizon)?;

    let mut header = common_provenance(
        "simulate",
        num_arms,
        &[num_users],
        horizon,
        runs,
        seed,
        policy,
        round,
        &source,
    );
    header.push(format!("out={}", out.display()));

    let results = replicate_runs(&instance, num_users, horizon, policy, runs, seed)?;
    let aggregate = aggregate_runs(&results)?;

    let mut staged = StagedOutputs::new();
    staged.write_file(&with_suffix(&out, "_runs.csv"), |w| {
        write_runs_csv(w, policy, &results, &header).map_err(Into::into)
    })?;
    staged.write_file(&with_suffix(&out, "_aggregate.csv"), |w| {
        write_aggregate_csv(w, policy, &aggregate, &header).map_err(Into::into)
    })?;
    staged.commit()
}

pub fn sweep_users(args: SweepArgs, file: BTreeMap<String, Vec<String>>) -> Result<()> {
    let c = args.common;
    let keys = common_keys_plus(&["fit-slope"]);
    let r = Resolver::new("sweep-users", file, &keys)?;

    let seed: u64 = r.required(c.seed.as_deref(), "seed")?;
    let users = parse_user_list(&r.list(&c.users, "U"))?;
    if users.is_empty() {
        bail!("missing required option --U");
    }
    let horizon: u64 = r.required(c.horizon.as_deref(), "T")?;
    let runs: usize = r.parsed_or(c.runs.as_deref(), "runs", 1)?;
    let policy = parse_policy(r.string(c.policy.as_deref(), "policy")?)?;
    let round = r.flag(c.round_horizon, "round-horizon")?;
    let fit_slope = r.flag(args.fit_slope, "fit-slope")?;
    let out = PathBuf::from(r.required::<String>(c.out.as_deref(), "out")?);
    let num_arms_flag: Option<usize> = r.parsed(c.num_arms.as_deref(), "K")?;
    let source = resolve_source(r.string(c.instance.as_deref(), "instance")?, &r.list(&c.gen, "gen"), seed)?;

    // A user-independent source is built once and swept; step and hard
    // instances are rebuilt for every U.
    let shared = if source.depends_on_users() {
        None
    } else {
        let horizon0 = effective_horizon(horizon, users[0], round)?;
        Some(build_instance(&source, num_arms_flag, users[0], horizon0)?)
    };

    let mut header = common_provenance(
        "sweep-users",
        shared
            .as_ref()
            .map(|(_, k)| *k)
            .or(num_arms_flag)
            .ok_or_else(|| anyhow!("missing required option --K"))?,
        &users,
        horizon,
        runs,
        seed,
        policy,
        round,
        &source,
    );
    header.push(format!("fit-slope={fit_slope}"));
    header.push(format!("out={}", out.display()));

    let mut rows = Vec::new();
    let mut fit_points = Vec::new();
    for &num_users in &users {
        let horizon_u = effective_horizon(horizon, num_users, round)?;
        let built;
        let instance = match &shared {
            Some((instance, _)) => instance,
            None => {
                built = build_instance(&source, num_arms_flag, num_users, horizon_u)?;
                &built.0
            }
        };
        let aggregate = replicate(instance, num_users, horizon_u, policy, runs, seed)?;
        let last = aggregate.num_blocks() - 1;
        let final_mean = aggregate.mean_regret()[last];
        rows.push(format!(
            "{},{},{},{},{},{},{}",
            policy,
            num_users,
            aggregate.boundary_time(last),
            final_mean,
            aggregate.min_regret()[last],
            aggregate.max_regret()[last],
            aggregate.n_runs(),
        ));
        if final_mean > 0.0 {
            fit_points.push((num_users as f64, final_mean));
        }
    }

    let slope_line = if fit_slope {
        let slope = fit_loglog_slope(&fit_points)
            .context("cannot fit a slope (need two user counts with positive mean regret)")?;
        Some(format!("# fitted_loglog_slope={slope}"))
    } else {
        None
    };

    let mut staged = StagedOutputs::new();
    staged.write_file(&out, |w| {
        for line in &header {
            writeln!(w, "# {line}")?;
        }
        writeln!(w, "policy,U,t,mean_regret,min_regret,max_regret,n_runs")?;
        for row in &rows {
            writeln!(w, "{row}")?;
        }
        if let Some(line) = &slope_line {
            writeln!(w, "{line}")?;
        }
        Ok(())
    })?;
    staged.commit()
}

pub fn bounds(args: BoundsArgs, file: BTreeMap<String, Vec<String>>) -> Result<()> {
    let c = args.common;
    let keys = common_keys_plus(&["delta-min", "delta-max"]);
    let r = Resolver::new("bounds", file, &keys)?;

    let users = parse_user_list(&r.list(&c.users, "U"))?;
    let num_users = single_user_count(&users)?;
    let horizon: u64 = r.required(c.horizon.as_deref(), "T")?;
    let num_arms_flag: Option<usize> = r.parsed(c.num_arms.as_deref(), "K")?;
    let mut delta_min: Option<f64> = r.parsed(args.delta_min.as_deref(), "delta-min")?;
    let mut delta_max: Option<f64> = r.parsed(args.delta_max.as_deref(), "delta-max")?;
    let out: Option<String> = r.string(c.out.as_deref(), "out")?;

    let instance_path = r.string(c.instance.as_deref(), "instance")?;
    let gen_tokens = r.list(&c.gen, "gen");
    let mut source_lines = Vec::new();
    let num_arms = if instance_path.is_some() || !gen_tokens.is_empty() {
        let seed: u64 = r.parsed_or(c.seed.as_deref(), "seed", 0)?;
        let source = resolve_source(instance_path, &gen_tokens, seed)?;
        let (instance, num_arms) = build_instance(&source, num_arms_flag, num_users, horizon)?;
        let summary = egalbandit::gap_summary(&instance, num_users)?;
        // Explicit gap flags still win over instance-derived gaps.
        delta_min = delta_min.or(summary.delta_min);
        delta_max = delta_max.or(Some(summary.delta_max));
        source_lines = source.provenance();
        num_arms
    } else {
        num_arms_flag.ok_or_else(|| anyhow!("missing required option --K"))?
    };

    let report = BoundReport::evaluate(num_arms, num_users, horizon, delta_min, delta_max)?;

    let mut header = vec![
        "mode=bounds".to_string(),
        format!("K={num_arms}"),
        format!("U={num_users}"),
        format!("T={horizon}"),
    ];
    header.extend(source_lines);
    if let Some(d) = delta_min {
        header.push(format!("delta-min={d}"));
    }
    if let Some(d) = delta_max {
        header.push(format!("delta-max={d}"));
    }

    let render = |w: &mut dyn Write| -> Result<()> {
        for line in &header {
            writeln!(w, "# {line}")?;
        }
        writeln!(w, "{}", BoundReport::CSV_HEADER)?;
        writeln!(w, "{}", report.csv_row())?;
        Ok(())
    };

    match out {
        Some(path) => {
            let path = PathBuf::from(path);
            let mut staged = StagedOutputs::new();
            staged.write_file(&path, render)?;
            staged.commit()
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            render(&mut lock)?;
            Ok(())
        }
    }
}

pub fn ingest_run(args: IngestArgs, file: BTreeMap<String, Vec<String>>) -> Result<()> {
    let c = args.common;
    let keys: Vec<&str> = [
        "U",
        "T",
        "runs",
        "seed",
        "policy",
        "out",
        "round-horizon",
        "data",
        "id-col",
        "value-col",
        "negate",
        "top-k",
        "max-rows",
        "select",
    ]
    .to_vec();
    let r = Resolver::new("ingest-run", file, &keys)?;

    let spec = TraceSpec {
        path: PathBuf::from(r.required::<String>(args.data.as_deref(), "data")?),
        id_column: r.required(args.id_column.as_deref(), "id-col")?,
        value_column: r.required(args.value_column.as_deref(), "value-col")?,
        negate: r.flag(args.negate, "negate")?,
        top_k: r.required(args.top_k.as_deref(), "top-k")?,
        max_rows: r.parsed(args.max_rows.as_deref(), "max-rows")?,
        selection: match r.string(args.select.as_deref(), "select")? {
            Some(raw) => parse_selection_mode(&raw)?,
            None => egalbandit::ingest::SelectionMode::TopCount,
        },
    };

    let seed: u64 = r.required(c.seed.as_deref(), "seed")?;
    let users = parse_user_list(&r.list(&c.users, "U"))?;
    let num_users = single_user_count(&users)?;
    let horizon: u64 = r.required(c.horizon.as_deref(), "T")?;
    let runs: usize = r.parsed_or(c.runs.as_deref(), "runs", 1)?;
    let policy = parse_policy(r.string(c.policy.as_deref(), "policy")?)?;
    let round = r.flag(c.round_horizon, "round-horizon")?;
    let out = PathBuf::from(r.required::<String>(c.out.as_deref(), "out")?);

    let horizon = effective_horizon(horizon, num_users, round)?;
    let (instance, ids) = load_instance(&spec)?;

    let mut header = vec![
        "mode=ingest-run".to_string(),
        format!("data={}", spec.path.display()),
        format!("id-col={}", spec.id_column),
        format!("value-col={}", spec.value_column),
        format!("negate={}", spec.negate),
        format!("top-k={}", spec.top_k),
        format!("select={}", selection_mode_token(spec.selection)),
    ];
    if let Some(limit) = spec.max_rows {
        header.push(format!("max-rows={limit}"));
    }
    header.push(format!("U={num_users}"));
    header.push(format!("T={horizon}"));
    header.push(format!("policy={policy}"));
    header.push(format!("round-horizon={round}"));
    header.push(format!("runs={runs}"));
    header.push(format!("seed={seed}"));
    header.push(format!("out={}", out.display()));

    let results = replicate_runs(&instance, num_users, horizon, policy, runs, seed)?;
    let aggregate = aggregate_runs(&results)?;

    let mut staged = StagedOutputs::new();
    staged.write_file(&with_suffix(&out, "_idmap.csv"), |w| {
        write_id_map_csv(w, &instance, &ids, &header).map_err(Into::into)
    })?;
    staged.write_file(&with_suffix(&out, "_runs.csv"), |w| {
        write_runs_csv(w, policy, &results, &header).map_err(Into::into)
    })?;
    staged.write_file(&with_suffix(&out, "_aggregate.csv"), |w| {
        write_aggregate_csv(w, policy, &aggregate, &header).map_err(Into::into)
    })?;
    staged.commit()
}
