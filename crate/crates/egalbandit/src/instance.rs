//! Arm reward distributions, bandit instances, assignments and gap statistics.
//!
//! Arms are indexed from 0 throughout the API; reports and CSV output number
//! them from 1.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{AssignmentViolation, Error, Result};

/// A reward law for one arm, with an exactly computable mean.
#[derive(Debug, Clone, PartialEq)]
pub struct ArmDistribution {
    inner: Inner,
}

#[derive(Debug, Clone, PartialEq)]
enum Inner {
    Gaussian { mean: f64, std: f64 },
    Bernoulli { mean: f64 },
    Empirical { samples: Vec<f64>, mean: f64 },
}

impl ArmDistribution {
    pub fn gaussian(mean: f64, std: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::NonFiniteMean(mean));
        }
        if !std.is_finite() || std < 0.0 {
            return Err(Error::InvalidGaussianStd(std));
        }
        Ok(Self {
            inner: Inner::Gaussian { mean, std },
        })
    }

    pub fn bernoulli(mean: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&mean) {
            return Err(Error::BernoulliMeanOutOfRange(mean));
        }
        Ok(Self {
            inner: Inner::Bernoulli { mean },
        })
    }

    /// Empirical distribution: draws uniformly with replacement from `samples`.
    pub fn empirical(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySamples);
        }
        if let Some(&bad) = samples.iter().find(|s| !s.is_finite()) {
            return Err(Error::NonFiniteSample(bad));
        }
        let mean = samples.iter().sum::<f64>() / samples.len() as f64;
        Ok(Self {
            inner: Inner::Empirical { samples, mean },
        })
    }

    /// Exact expectation: the parameter for Gaussian/Bernoulli, the arithmetic
    /// average of the stored samples for Empirical.
    pub fn mean(&self) -> f64 {
        match &self.inner {
            Inner::Gaussian { mean, .. } => *mean,
            Inner::Bernoulli { mean } => *mean,
            Inner::Empirical { mean, .. } => *mean,
        }
    }

    /// One draw from the distribution. Identical stream state gives an
    /// identical draw.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match &self.inner {
            Inner::Gaussian { mean, std } => {
                // validated at construction
                Normal::new(*mean, *std).expect("valid gaussian").sample(rng)
            }
            Inner::Bernoulli { mean } => {
                if rng.random::<f64>() < *mean {
                    1.0
                } else {
                    0.0
                }
            }
            Inner::Empirical { samples, .. } => samples[rng.random_range(0..samples.len())],
        }
    }

    /// Short lowercase name used in summaries: "gaussian", "bernoulli" or
    /// "empirical".
    pub fn kind_name(&self) -> &'static str {
        match &self.inner {
            Inner::Gaussian { .. } => "gaussian",
            Inner::Bernoulli { .. } => "bernoulli",
            Inner::Empirical { .. } => "empirical",
        }
    }

    /// Number of stored samples for empirical arms, `None` otherwise.
    pub fn sample_count(&self) -> Option<usize> {
        match &self.inner {
            Inner::Empirical { samples, .. } => Some(samples.len()),
            _ => None,
        }
    }

    /// Standard deviation parameter for Gaussian arms, `None` otherwise.
    pub fn gaussian_std(&self) -> Option<f64> {
        match &self.inner {
            Inner::Gaussian { std, .. } => Some(*std),
            _ => None,
        }
    }
}

/// An ordered collection of `K >= 1` arm distributions: the environment a
/// policy interacts with. No ordering of the means is assumed.
#[derive(Debug, Clone, PartialEq)]
pub struct EgalMabInstance {
    arms: Vec<ArmDistribution>,
}

impl EgalMabInstance {
    pub fn new(arms: Vec<ArmDistribution>) -> Result<Self> {
        if arms.is_empty() {
            return Err(Error::NoArms);
        }
        Ok(Self { arms })
    }

    /// Convenience constructor for Gaussian arms with a shared std.
    pub fn gaussian(means: &[f64], std: f64) -> Result<Self> {
        Self::new(
            means
                .iter()
                .map(|&m| ArmDistribution::gaussian(m, std))
                .collect::<Result<_>>()?,
        )
    }

    /// Convenience constructor for Bernoulli arms.
    pub fn bernoulli(means: &[f64]) -> Result<Self> {
        Self::new(
            means
                .iter()
                .map(|&m| ArmDistribution::bernoulli(m))
                .collect::<Result<_>>()?,
        )
    }

    pub fn num_arms(&self) -> usize {
        self.arms.len()
    }

    pub fn arms(&self) -> &[ArmDistribution] {
        &self.arms
    }

    pub fn arm(&self, index: usize) -> &ArmDistribution {
        &self.arms[index]
    }

    pub fn means(&self) -> Vec<f64> {
        self.arms.iter().map(|a| a.mean()).collect()
    }
}

/// One time step's user-to-arm map: entry `u` is the arm played by user `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub user_to_arm: Vec<usize>,
}

impl Assignment {
    pub fn new(user_to_arm: Vec<usize>) -> Self {
        Self { user_to_arm }
    }

    pub fn num_users(&self) -> usize {
        self.user_to_arm.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.user_to_arm
    }
}

/// Checks that an assignment maps `num_users` users to distinct in-range
/// arms, reporting the first violation found.
pub fn validate_assignment(
    assignment: &Assignment,
    num_arms: usize,
    num_users: usize,
) -> std::result::Result<(), AssignmentViolation> {
    let entries = &assignment.user_to_arm;
    if entries.len() != num_users {
        return Err(AssignmentViolation::WrongLength {
            expected: num_users,
            got: entries.len(),
        });
    }
    let mut seen = vec![false; num_arms];
    for (user, &arm) in entries.iter().enumerate() {
        if arm >= num_arms {
            return Err(AssignmentViolation::OutOfRange {
                user,
                arm,
                num_arms,
            });
        }
        if seen[arm] {
            return Err(AssignmentViolation::DuplicateArm { arm });
        }
        seen[arm] = true;
    }
    Ok(())
}

/// Optimum and gap statistics of an instance for a fixed number of users.
#[derive(Debug, Clone, PartialEq)]
pub struct GapSummary {
    /// Sum of the `U` largest means.
    pub mu_star: f64,
    /// Gap between the U-th and (U+1)-th largest mean; `None` when `U = K` or
    /// when the two are exactly equal.
    pub delta_min: Option<f64>,
    /// Gap of the worst size-`U` arm set; zero exactly when `U = K`.
    pub delta_max: f64,
    /// Indices of the `U` largest means, ties broken by ascending index;
    /// always sorted ascending.
    pub top_set: Vec<usize>,
}

/// Arm indices ordered by descending mean, ties by ascending index.
fn arms_by_descending_mean(means: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..means.len()).collect();
    order.sort_by(|&a, &b| {
        means[b]
            .partial_cmp(&means[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    order
}

/// Sum of `means` over a set of arm indices, accumulated in ascending index
/// order so that equal sets always produce bit-identical sums.
fn mean_sum_ascending(means: &[f64], set: &[usize]) -> f64 {
    debug_assert!(set.windows(2).all(|w| w[0] < w[1]));
    set.iter().map(|&a| means[a]).sum()
}

/// Computes `mu_star`, `delta_min`, `delta_max` and the top arm set for
/// `num_users` users of `instance`.
pub fn gap_summary(instance: &EgalMabInstance, num_users: usize) -> Result<GapSummary> {
    let num_arms = instance.num_arms();
    if num_users == 0 || num_users > num_arms {
        return Err(Error::UserCountOutOfRange {
            users: num_users,
            arms: num_arms,
        });
    }
    let means = instance.means();
    let order = arms_by_descending_mean(&means);

    let mut top_set: Vec<usize> = order[..num_users].to_vec();
    top_set.sort_unstable();
    let mu_star = mean_sum_ascending(&means, &top_set);

    let delta_min = if num_users < num_arms {
        let boundary = means[order[num_users - 1]];
        let next = means[order[num_users]];
        (boundary != next).then(|| boundary - next)
    } else {
        None
    };

    let mut bottom_set: Vec<usize> = order[num_arms - num_users..].to_vec();
    bottom_set.sort_unstable();
    let delta_max = mu_star - mean_sum_ascending(&means, &bottom_set);

    Ok(GapSummary {
        mu_star,
        delta_min,
        delta_max,
        top_set,
    })
}

/// Sub-optimality gap of `arm_set`: the top-`U` mean sum minus the set's mean
/// sum. Zero exactly for the top set itself.
pub fn suboptimality_gap(
    instance: &EgalMabInstance,
    num_users: usize,
    arm_set: &[usize],
) -> Result<f64> {
    let summary = gap_summary(instance, num_users)?;
    let mut set = arm_set.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() != num_users || arm_set.len() != num_users {
        return Err(Error::WrongSetSize {
            expected: num_users,
            got: set.len().min(arm_set.len()),
        });
    }
    if let Some(&bad) = set.iter().find(|&&a| a >= instance.num_arms()) {
        return Err(Error::ArmIndexOutOfRange {
            arm: bad,
            num_arms: instance.num_arms(),
        });
    }
    let means = instance.means();
    Ok(summary.mu_star - mean_sum_ascending(&means, &set))
}
