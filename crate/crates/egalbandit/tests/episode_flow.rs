//! Cross-module checks: the policy's bonus against the standalone confidence
//! radius, episode accounting against the gap evaluators, and the
//! lower-bound construction driven through real episodes.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use egalbandit::bounds::{adversarial_partner, confidence_radius, hard_instance};
use egalbandit::{
    gap_summary, pseudo_regret_curve, replicate, replicate_sequential, run_episode,
    suboptimality_gap, Assignment, EgalMabInstance, EgalUcbState, PolicyKind, UcbValue,
};

/// The state's refreshed bound must equal mean + confidence radius computed
/// through the standalone evaluator, bit for bit.
#[test]
fn policy_bonus_equals_the_confidence_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let num_arms = 6usize;
    let num_users = 3usize;
    let mut state = EgalUcbState::new(num_arms, num_users).unwrap();
    for _ in 0..40 {
        let arm_set = state.select();
        for _ in 0..num_users {
            let assignment = state.schedule(&arm_set);
            let rewards: Vec<f64> = (0..num_users).map(|_| rng.random::<f64>()).collect();
            state.observe(&assignment, &rewards).unwrap();
        }
        state.finalize_block().unwrap();

        let block = state.completed_blocks();
        for arm in 0..num_arms {
            let played = state.blocks_played()[arm];
            match state.ucb_values()[arm] {
                UcbValue::Unplayed => assert_eq!(played, 0),
                UcbValue::Finite(value) => {
                    let pulls = (played * num_users as u64) as f64;
                    let mean = state.cum_rewards()[arm] / pulls;
                    let radius =
                        confidence_radius(block, played, num_users as u64).unwrap();
                    assert_eq!(value, mean + radius, "arm {arm} at block {block}");
                }
            }
        }
    }
}

#[test]
fn episodes_on_the_hard_instance_support_the_partner_construction() {
    let num_arms = 6usize;
    let num_users = 2usize;
    let horizon = 4_000u64;
    let (nu, delta) = hard_instance(num_arms, num_users, horizon).unwrap();

    let run = run_episode(&nu, num_users, horizon, PolicyKind::EgalUcb, 11).unwrap();
    let counts = run.play_counts(num_arms);
    assert_eq!(counts.iter().sum::<u64>(), horizon * num_users as u64);

    let partner = adversarial_partner(&nu, delta, num_users, &counts).unwrap();
    let lifted: Vec<usize> = partner
        .means()
        .iter()
        .enumerate()
        .filter(|&(_, &m)| m == 2.0 * delta)
        .map(|(a, _)| a)
        .collect();
    assert_eq!(lifted.len(), num_users);
    assert!(lifted.iter().all(|&a| a >= num_users));
    // The partner agrees with the original everywhere else.
    for (a, (&m_nu, &m_part)) in nu.means().iter().zip(partner.means().iter()).enumerate() {
        if !lifted.contains(&a) {
            assert_eq!(m_nu, m_part);
        }
    }
}

#[test]
fn ingested_instances_simulate_cleanly() {
    use std::io::Write;
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        "id,score\na,1.0\na,3.0\nb,0.5\nb,0.5\nc,4.0\nc,2.0\nc,3.0\n"
    )
    .unwrap();
    file.flush().unwrap();
    let spec = egalbandit::ingest::TraceSpec {
        path: file.path().to_path_buf(),
        id_column: "id".into(),
        value_column: "score".into(),
        negate: false,
        top_k: 3,
        max_rows: None,
        selection: egalbandit::ingest::SelectionMode::TopCount,
    };
    let (instance, ids) = egalbandit::ingest::load_instance(&spec).unwrap();
    assert_eq!(ids[0], "c");

    // The oracle plays the true top set forever, so its regret is zero even
    // on empirical arms.
    let run = run_episode(&instance, 2, 100, PolicyKind::OracleRoundRobin, 3).unwrap();
    assert!(run.pseudo_regret().iter().all(|&r| r == 0.0));

    let summary = gap_summary(&instance, 2).unwrap();
    assert_eq!(summary.mu_star, 3.0 + 2.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn episode_accounting_is_exact_for_any_policy(
        means in prop::collection::vec(0.0f64..1.0, 2..7),
        users in 1usize..4,
        blocks in 1u64..20,
        seed in any::<u64>(),
        policy_pick in 0u8..3,
    ) {
        prop_assume!(users <= means.len());
        let policy = match policy_pick {
            0 => PolicyKind::EgalUcb,
            1 => PolicyKind::OracleRoundRobin,
            _ => PolicyKind::RandomAssignment,
        };
        let instance = EgalMabInstance::bernoulli(&means).unwrap();
        let horizon = blocks * users as u64;
        let run = run_episode(&instance, users, horizon, policy, seed).unwrap();

        // Recorded curve equals the recomputed one and is non-decreasing.
        let recomputed = pseudo_regret_curve(&run, &instance).unwrap();
        prop_assert_eq!(&recomputed, run.pseudo_regret());
        for pair in run.pseudo_regret().windows(2) {
            prop_assert!(pair[1] >= pair[0]);
        }

        // The curve is exactly the running sum of the per-set gap evaluator.
        let mut total = 0.0;
        for block in 0..run.num_blocks() {
            total += suboptimality_gap(&instance, users, run.arm_set(block)).unwrap();
            prop_assert_eq!(run.pseudo_regret()[block], total);
        }

        // Total plays conserve the step count.
        let counts = run.play_counts(instance.num_arms());
        prop_assert_eq!(counts.iter().sum::<u64>(), horizon * users as u64);
    }

    #[test]
    fn replication_is_schedule_invariant(
        means in prop::collection::vec(0.0f64..1.0, 2..6),
        users in 1usize..3,
        seed in any::<u64>(),
    ) {
        prop_assume!(users <= means.len());
        let instance = EgalMabInstance::bernoulli(&means).unwrap();
        let horizon = 8 * users as u64;
        let par = replicate(&instance, users, horizon, PolicyKind::EgalUcb, 5, seed).unwrap();
        let seq = replicate_sequential(&instance, users, horizon, PolicyKind::EgalUcb, 5, seed)
            .unwrap();
        prop_assert_eq!(par, seq);
    }

    #[test]
    fn observe_rejects_collisions(
        arm in 0usize..4,
        users in 2usize..4,
    ) {
        let mut state = EgalUcbState::new(4, users).unwrap();
        let collision = Assignment::new(vec![arm; users]);
        prop_assert!(state.observe(&collision, &vec![0.0; users]).is_err());
    }
}
