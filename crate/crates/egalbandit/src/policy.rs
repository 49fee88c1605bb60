//! The EgalUCB assignment policy plus oracle and random baselines.
//!
//! EgalUCB partitions the horizon into blocks of `U` steps. At the start of a
//! block it picks the `U` arms with the highest upper confidence bounds and
//! rotates them across users so that, within the block, every user plays every
//! chosen arm exactly once. Confidence bounds are refreshed once per block.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::instance::{gap_summary, validate_assignment, Assignment, EgalMabInstance};

/// Per-arm upper confidence bound. Arms that were never played rank above
/// every finite value; among themselves they are ordered by arm index. This
/// avoids floating-point infinity arithmetic in subset-sum comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UcbValue {
    Unplayed,
    Finite(f64),
}

impl UcbValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            UcbValue::Finite(v) => Some(v),
            UcbValue::Unplayed => None,
        }
    }
}

/// Ordering used everywhere a selection is made: higher UCB first, unplayed
/// above all finite values, every tie broken by ascending arm index.
fn selection_order(a: usize, ua: UcbValue, b: usize, ub: UcbValue) -> Ordering {
    match (ua, ub) {
        (UcbValue::Unplayed, UcbValue::Unplayed) => a.cmp(&b),
        (UcbValue::Unplayed, UcbValue::Finite(_)) => Ordering::Less,
        (UcbValue::Finite(_), UcbValue::Unplayed) => Ordering::Greater,
        (UcbValue::Finite(x), UcbValue::Finite(y)) => y
            .partial_cmp(&x)
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b)),
    }
}

/// The `num_users` arms with the highest UCBs, sorted ascending. Equivalent
/// to the argmax of summed UCBs over all size-`U` subsets under the index tie
/// rule.
pub fn select_top_ucb(ucbs: &[UcbValue], num_users: usize) -> Vec<usize> {
    debug_assert!(num_users >= 1 && num_users <= ucbs.len());
    let mut order: Vec<usize> = (0..ucbs.len()).collect();
    if num_users < ucbs.len() {
        order.select_nth_unstable_by(num_users - 1, |&a, &b| {
            selection_order(a, ucbs[a], b, ucbs[b])
        });
        order.truncate(num_users);
    }
    order.sort_unstable();
    order
}

/// Round-robin assignment for one step of a block.
///
/// `step_in_block` counts from 0. The index vector starts as the identity and
/// is circularly shifted one position to the right after every step, so user
/// `u` receives `arm_set[(u + U - step) mod U]`. Over the `U` steps of a block
/// each user plays every arm of the set exactly once.
pub fn round_robin_assignment(arm_set: &[usize], step_in_block: usize) -> Assignment {
    let num_users = arm_set.len();
    debug_assert!(step_in_block < num_users);
    let user_to_arm = (0..num_users)
        .map(|user| arm_set[(user + num_users - step_in_block) % num_users])
        .collect();
    Assignment::new(user_to_arm)
}

/// Mutable per-episode state of the EgalUCB policy.
#[derive(Debug, Clone)]
pub struct EgalUcbState {
    num_arms: usize,
    num_users: usize,
    /// Completed blocks, `b`.
    completed_blocks: u64,
    /// Blocks in which each arm was played, `B_a`.
    blocks_played: Vec<u64>,
    /// Cumulative reward collected by each arm, `S_a`.
    cum_reward: Vec<f64>,
    ucb: Vec<UcbValue>,
    /// Rotation vector `ind`; always a permutation of `0..U`.
    rr_index: Vec<usize>,
    steps_observed: usize,
    plays_this_block: Vec<u32>,
    touched: Vec<usize>,
}

impl EgalUcbState {
    /// Fresh state: zero counts, every UCB unplayed, identity rotation.
    pub fn new(num_arms: usize, num_users: usize) -> Result<Self> {
        if num_users == 0 || num_users > num_arms {
            return Err(Error::UserCountOutOfRange {
                users: num_users,
                arms: num_arms,
            });
        }
        Ok(Self {
            num_arms,
            num_users,
            completed_blocks: 0,
            blocks_played: vec![0; num_arms],
            cum_reward: vec![0.0; num_arms],
            ucb: vec![UcbValue::Unplayed; num_arms],
            rr_index: (0..num_users).collect(),
            steps_observed: 0,
            plays_this_block: vec![0; num_arms],
            touched: Vec::with_capacity(num_users),
        })
    }

    /// Arm set for the next block: the `U` arms with the highest UCBs.
    pub fn select(&self) -> Vec<usize> {
        select_top_ucb(&self.ucb, self.num_users)
    }

    /// Assignment for the current step of the block, using the internal
    /// rotation vector. `arm_set` must be sorted ascending.
    pub fn schedule(&self, arm_set: &[usize]) -> Assignment {
        debug_assert_eq!(arm_set.len(), self.num_users);
        let user_to_arm = (0..self.num_users)
            .map(|user| arm_set[self.rr_index[user]])
            .collect();
        Assignment::new(user_to_arm)
    }

    /// Records one step's rewards: each played arm's cumulative reward grows
    /// by the reward its user obtained, and the rotation advances.
    pub fn observe(&mut self, assignment: &Assignment, rewards: &[f64]) -> Result<()> {
        if self.steps_observed == self.num_users {
            return Err(Error::BlockComplete {
                observed: self.steps_observed,
            });
        }
        validate_assignment(assignment, self.num_arms, self.num_users)?;
        if rewards.len() != self.num_users {
            return Err(Error::RewardLengthMismatch {
                expected: self.num_users,
                got: rewards.len(),
            });
        }
        for (&arm, &reward) in assignment.as_slice().iter().zip(rewards) {
            self.cum_reward[arm] += reward;
            if self.plays_this_block[arm] == 0 {
                self.touched.push(arm);
            }
            self.plays_this_block[arm] += 1;
        }
        self.steps_observed += 1;
        self.rr_index.rotate_right(1);
        Ok(())
    }

    /// Closes the block after exactly `U` observed steps: bumps the block
    /// counter and the played arms' block counts, then recomputes
    /// `UCB_a = S_a / (B_a U) + sqrt(6 ln(bU) / (B_a U))` for every arm that
    /// has been played at least once. Unplayed arms stay unplayed.
    pub fn finalize_block(&mut self) -> Result<()> {
        if self.steps_observed != self.num_users {
            return Err(Error::FinalizeMidBlock {
                observed: self.steps_observed,
                required: self.num_users,
            });
        }
        self.completed_blocks += 1;
        for &arm in &self.touched {
            self.blocks_played[arm] += 1;
            self.plays_this_block[arm] = 0;
        }
        self.touched.clear();
        self.steps_observed = 0;
        debug_assert!(self.rr_index.iter().enumerate().all(|(u, &i)| u == i));

        let users = self.num_users as u64;
        let log_term = 6.0 * ((self.completed_blocks * users) as f64).ln();
        for arm in 0..self.num_arms {
            if self.blocks_played[arm] > 0 {
                let pulls = (self.blocks_played[arm] * users) as f64;
                let value = self.cum_reward[arm] / pulls + (log_term / pulls).sqrt();
                self.ucb[arm] = UcbValue::Finite(value);
            }
        }
        Ok(())
    }

    pub fn num_arms(&self) -> usize {
        self.num_arms
    }

    pub fn num_users(&self) -> usize {
        self.num_users
    }

    pub fn completed_blocks(&self) -> u64 {
        self.completed_blocks
    }

    pub fn blocks_played(&self) -> &[u64] {
        &self.blocks_played
    }

    pub fn cum_rewards(&self) -> &[f64] {
        &self.cum_reward
    }

    pub fn ucb_values(&self) -> &[UcbValue] {
        &self.ucb
    }

    pub fn rr_index(&self) -> &[usize] {
        &self.rr_index
    }
}

/// The assignment policies the simulator can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyKind {
    EgalUcb,
    OracleRoundRobin,
    RandomAssignment,
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolicyKind::EgalUcb => "egalucb",
            PolicyKind::OracleRoundRobin => "oracle",
            PolicyKind::RandomAssignment => "random",
        })
    }
}

impl FromStr for PolicyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "egalucb" => Ok(PolicyKind::EgalUcb),
            "oracle" => Ok(PolicyKind::OracleRoundRobin),
            "random" => Ok(PolicyKind::RandomAssignment),
            other => Err(format!(
                "unknown policy `{other}` (expected egalucb, oracle or random)"
            )),
        }
    }
}

/// The true top-`U` arm set, ascending: what a clairvoyant round-robin plays.
pub fn oracle_select(instance: &EgalMabInstance, num_users: usize) -> Result<Vec<usize>> {
    Ok(gap_summary(instance, num_users)?.top_set)
}

/// A uniformly random size-`U` subset of the arms, ascending.
pub fn random_select<R: Rng + ?Sized>(
    num_arms: usize,
    num_users: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if num_users == 0 || num_users > num_arms {
        return Err(Error::UserCountOutOfRange {
            users: num_users,
            arms: num_arms,
        });
    }
    let mut set = rand::seq::index::sample(rng, num_arms, num_users).into_vec();
    set.sort_unstable();
    Ok(set)
}
