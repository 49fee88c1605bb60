//! Numeric evaluation of the regret bounds and construction of the
//! lower-bound instance pair.
//!
//! Evaluators take the gap quantities as plain numbers so they work on
//! hypothetical `(K, U, T)` grids; [`BoundReport::for_instance`] wires in the
//! gaps of a concrete instance. All logarithms are natural.

use crate::error::{Error, Result};
use crate::instance::{gap_summary, ArmDistribution, EgalMabInstance};

/// Confidence radius of an arm played for `blocks_played` blocks, evaluated
/// after block `block`: `sqrt(6 ln(bU) / (b'U))`.
pub fn confidence_radius(block: u64, blocks_played: u64, num_users: u64) -> Result<f64> {
    if block == 0 {
        return Err(Error::ZeroBlockIndex(block));
    }
    if blocks_played == 0 {
        return Err(Error::ZeroBlockIndex(blocks_played));
    }
    if num_users == 0 {
        return Err(Error::UserCountOutOfRange { users: 0, arms: 0 });
    }
    let numerator = 6.0 * ((block * num_users) as f64).ln();
    Ok((numerator / ((blocks_played * num_users) as f64)).sqrt())
}

/// Problem-dependent regret upper bound:
/// `2136 (K - U) ln(T) / delta_min + 4 K delta_max / U`.
pub fn dependent_upper_bound(
    num_arms: usize,
    num_users: usize,
    horizon: u64,
    delta_min: f64,
    delta_max: f64,
) -> Result<f64> {
    if num_users == 0 || num_users > num_arms {
        return Err(Error::UserCountOutOfRange {
            users: num_users,
            arms: num_arms,
        });
    }
    if num_users == num_arms {
        return Err(Error::NoSuboptimalArms {
            users: num_users,
            arms: num_arms,
        });
    }
    if horizon < 2 {
        return Err(Error::HorizonBelowMinimum {
            horizon,
            min: 2,
        });
    }
    if !(delta_min > 0.0) || !delta_min.is_finite() {
        return Err(Error::DeltaMinNotPositive(delta_min));
    }
    if !(delta_max >= 0.0) || !delta_max.is_finite() {
        return Err(Error::DeltaMaxNegative(delta_max));
    }
    let k = num_arms as f64;
    let u = num_users as f64;
    let gap_term = 2136.0 * (k - u) * (horizon as f64).ln() / delta_min;
    Ok(gap_term + 4.0 * k * delta_max / u)
}

/// Problem-independent regret upper bound:
/// `sqrt(8544 (K - U) T ln(T) / U) + 4 K min(U, K - U) / U`.
pub fn independent_upper_bound(num_arms: usize, num_users: usize, horizon: u64) -> Result<f64> {
    if num_users == 0 || num_users > num_arms {
        return Err(Error::UserCountOutOfRange {
            users: num_users,
            arms: num_arms,
        });
    }
    if horizon < 2 {
        return Err(Error::HorizonBelowMinimum {
            horizon,
            min: 2,
        });
    }
    let k = num_arms as f64;
    let u = num_users as f64;
    let t = horizon as f64;
    let sqrt_term = (8544.0 * (k - u) * t * t.ln() / u).sqrt();
    let tail = 4.0 * k * num_users.min(num_arms - num_users) as f64 / u;
    Ok(sqrt_term + tail)
}

/// Policy-independent regret lower bound: `sqrt((K - U) T) / (76 U)`.
/// Requires at least twice as many arms as users.
pub fn lower_bound_value(num_arms: usize, num_users: usize, horizon: u64) -> Result<f64> {
    if num_users == 0 {
        return Err(Error::UserCountOutOfRange {
            users: 0,
            arms: num_arms,
        });
    }
    if num_arms < 2 * num_users {
        return Err(Error::TooFewArmsForLowerBound {
            arms: num_arms,
            users: num_users,
        });
    }
    if horizon == 0 {
        return Err(Error::HorizonBelowMinimum { horizon, min: 1 });
    }
    let spread = ((num_arms - num_users) as f64) * horizon as f64;
    Ok(spread.sqrt() / (76.0 * num_users as f64))
}

/// Mean separation of the hard instance pair: `sqrt((K - U) / (8 T U^2))`.
pub fn hard_instance_delta(num_arms: usize, num_users: usize, horizon: u64) -> Result<f64> {
    if num_users == 0 {
        return Err(Error::UserCountOutOfRange {
            users: 0,
            arms: num_arms,
        });
    }
    if num_arms < 2 * num_users {
        return Err(Error::TooFewArmsForLowerBound {
            arms: num_arms,
            users: num_users,
        });
    }
    if horizon == 0 {
        return Err(Error::HorizonBelowMinimum { horizon, min: 1 });
    }
    let u = num_users as f64;
    Ok((((num_arms - num_users) as f64) / (8.0 * horizon as f64 * u * u)).sqrt())
}

/// The instance any policy struggles on: unit-variance Gaussian arms with
/// mean `delta` on the first `U` arms and `0` elsewhere. Returns the instance
/// together with `delta`.
pub fn hard_instance(
    num_arms: usize,
    num_users: usize,
    horizon: u64,
) -> Result<(EgalMabInstance, f64)> {
    let delta = hard_instance_delta(num_arms, num_users, horizon)?;
    if delta > 1.0 {
        // Means must stay inside [0, 1]; solve delta <= 1 for the horizon.
        let min_horizon =
            ((num_arms - num_users) as f64 / (8.0 * (num_users * num_users) as f64)).ceil() as u64;
        return Err(Error::HardInstanceMeanOutOfRange {
            delta,
            min_horizon: min_horizon.max(1),
        });
    }
    let arms = (0..num_arms)
        .map(|a| ArmDistribution::gaussian(if a < num_users { delta } else { 0.0 }, 1.0))
        .collect::<Result<_>>()?;
    Ok((EgalMabInstance::new(arms)?, delta))
}

/// The `U` sub-optimal arms (indices `U..K`) with the fewest recorded plays,
/// ties by lexicographically smallest index set; ascending order.
pub fn least_played_suboptimal_set(
    num_arms: usize,
    num_users: usize,
    play_counts: &[u64],
) -> Result<Vec<usize>> {
    if num_arms < 2 * num_users || num_users == 0 {
        return Err(Error::TooFewArmsForLowerBound {
            arms: num_arms,
            users: num_users,
        });
    }
    if play_counts.len() != num_arms {
        return Err(Error::PlayCountLengthMismatch {
            expected: num_arms,
            got: play_counts.len(),
        });
    }
    // Picking the U smallest counts minimizes the subset sum; the stable
    // index tie-break makes the winner the lexicographically smallest set.
    let mut candidates: Vec<usize> = (num_users..num_arms).collect();
    candidates.sort_by_key(|&a| (play_counts[a], a));
    let mut chosen = candidates[..num_users].to_vec();
    chosen.sort_unstable();
    Ok(chosen)
}

/// The partner instance of [`hard_instance`]: mean `2 delta` on the least
/// played sub-optimal arm set, the original means elsewhere.
pub fn adversarial_partner(
    nu: &EgalMabInstance,
    delta: f64,
    num_users: usize,
    play_counts: &[u64],
) -> Result<EgalMabInstance> {
    let least_played = least_played_suboptimal_set(nu.num_arms(), num_users, play_counts)?;
    let mut means = nu.means();
    for &arm in &least_played {
        means[arm] = 2.0 * delta;
    }
    EgalMabInstance::gaussian(&means, 1.0)
}

/// Evaluated bounds for one `(K, U, T)` cell, plus the gap inputs they
/// consumed. Optional values are absent when their hypotheses do not hold.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub num_arms: usize,
    pub num_users: usize,
    pub horizon: u64,
    pub delta_min: Option<f64>,
    pub delta_max: Option<f64>,
    pub dependent_upper: Option<f64>,
    pub independent_upper: f64,
    pub lower: Option<f64>,
}

impl BoundReport {
    /// Evaluates every bound whose hypothesis the inputs satisfy. The
    /// dependent bound needs both gaps with `delta_min > 0` and at least one
    /// sub-optimal arm; the lower bound needs `K >= 2U`.
    pub fn evaluate(
        num_arms: usize,
        num_users: usize,
        horizon: u64,
        delta_min: Option<f64>,
        delta_max: Option<f64>,
    ) -> Result<Self> {
        let independent_upper = independent_upper_bound(num_arms, num_users, horizon)?;
        let dependent_upper = match (delta_min, delta_max) {
            (Some(dmin), Some(dmax)) if num_users < num_arms => Some(dependent_upper_bound(
                num_arms, num_users, horizon, dmin, dmax,
            )?),
            _ => None,
        };
        let lower = (num_arms >= 2 * num_users)
            .then(|| lower_bound_value(num_arms, num_users, horizon))
            .transpose()?;
        Ok(BoundReport {
            num_arms,
            num_users,
            horizon,
            delta_min,
            delta_max,
            dependent_upper,
            independent_upper,
            lower,
        })
    }

    /// Evaluates the bounds with the gaps of a concrete instance.
    pub fn for_instance(
        instance: &EgalMabInstance,
        num_users: usize,
        horizon: u64,
    ) -> Result<Self> {
        let summary = gap_summary(instance, num_users)?;
        Self::evaluate(
            instance.num_arms(),
            num_users,
            horizon,
            summary.delta_min,
            Some(summary.delta_max),
        )
    }

    /// The report as one CSV row under the header
    /// `K,U,T,delta_min,delta_max,dep_upper,indep_upper,lower`; absent values
    /// become empty fields.
    pub fn csv_row(&self) -> String {
        fn opt(v: Option<f64>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{}",
            self.num_arms,
            self.num_users,
            self.horizon,
            opt(self.delta_min),
            opt(self.delta_max),
            opt(self.dependent_upper),
            self.independent_upper,
            opt(self.lower),
        )
    }

    pub const CSV_HEADER: &'static str = "K,U,T,delta_min,delta_max,dep_upper,indep_upper,lower";
}
