use blackbox_core::protocol::{accuracy, Verdict};
use blackbox_core::{list_environments, EnvFilter, Session, Stage, TurnBudget};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const POOL: &[&str] = &[
    "0", "1.5", "(1, 0, 1, 1)", "(1, 1, 1, 1, 1, 1, 1, 1)", "Hello World", "load", "shoot 1", "rock", "paper",
    "card 1", "Bandit A", "Number 50", "AIRPLANE", "arr = [3, 1, 2]", "(1, 1)", "(4, 5)", "", "???",
    "Left: Coin 1; Right: Coin 2",
];

/// Drives a session with seeded random inputs, mixing in correct answers.
fn fuzz(env_id: &str, budget: TurnBudget, seed: u64, input_seed: u64) -> Session {
    let mut r = ChaCha8Rng::seed_from_u64(input_seed);
    let mut s = Session::new(env_id, budget, seed).unwrap();
    let mut moves: Vec<String> = Vec::new();
    for _ in 0..2000 {
        if s.stage() == Stage::Done {
            break;
        }
        let input = if s.stage() == Stage::Evaluation && r.random_bool(0.5) {
            if moves.is_empty() {
                moves = s.env().expected(s.sample_index());
                moves.reverse();
            }
            moves.pop().unwrap_or_default()
        } else {
            String::from(POOL[r.random_range(0..POOL.len())])
        };
        s.submit(&input).unwrap();
    }
    s
}

#[test]
fn identical_inputs_give_identical_transcripts() {
    let envs = list_environments(EnvFilter::default());
    let mut r = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..100u64 {
        let env = envs[r.random_range(0..envs.len())].id;
        let budget = TurnBudget::new(r.random_range(1..=4), r.random_range(1..=2));
        let seed = r.random_range(0..1000);
        let a = fuzz(env, budget, seed, k);
        let b = fuzz(env, budget, seed, k);
        assert_eq!(a.transcript().to_json(), b.transcript().to_json(), "{env}");
        if a.stage() == Stage::Done {
            assert_eq!(a.score().unwrap(), b.score().unwrap());
            let rep = a.score().unwrap();
            assert_eq!(rep.per_sample.len(), a.sample_count());
            assert!((0.0..=1.0).contains(&rep.accuracy));
            for v in &rep.per_sample {
                assert!(v.attempts_used >= 1 && v.attempts_used <= budget.shots_per_sample);
            }
        }
        let explored = a.history().iter().filter(|e| e.stage == Stage::Exploration && e.step == 0).count();
        assert!(explored >= 1);
    }
}

#[test]
fn deferred_release_matches_instant_feedback() {
    let envs = list_environments(EnvFilter::default());
    let mut r = ChaCha8Rng::seed_from_u64(7);
    for spec in envs.iter().filter(|s| !matches!(s.family, blackbox_core::Family::Gsi)) {
        let t = r.random_range(1..=6);
        let queries: Vec<&str> = (0..t).map(|_| POOL[r.random_range(0..POOL.len())]).collect();
        let mut instant = Session::new(spec.id, TurnBudget::new(t, 1), 3).unwrap();
        let mut deferred = Session::new(spec.id, TurnBudget::new(t, 1).deferred(), 3).unwrap();
        let mut last = String::new();
        for q in &queries {
            instant.submit_exploration(q).unwrap();
            last = deferred.submit_exploration(q).unwrap();
        }
        assert_eq!(instant.episode_observations(), deferred.episode_observations(), "{}", spec.id);
        for (n, (q, obs)) in queries.iter().zip(instant.episode_observations()).enumerate() {
            let entry = format!("[Query {}] {q}\n[Feedback {}] {obs}", n + 1, n + 1);
            assert!(last.contains(&entry), "{}: missing {entry:?}", spec.id);
        }
        for rec in instant.history() {
            if let Some(body) = rec.feedback.split_once("> ").map(|(_, b)| b) {
                assert!(body.starts_with(&rec.observation), "{}", spec.id);
            }
        }
    }
}

fn verdicts(bits: &[bool]) -> Vec<Verdict> {
    bits.iter()
        .enumerate()
        .map(|(i, c)| Verdict { sample_index: i, correct: *c, attempts_used: 1, credit: if *c { 1.0 } else { 0.0 } })
        .collect()
}

#[test]
fn accuracy_examples() {
    assert_eq!(accuracy(&verdicts(&[true, true, false, true])), 0.75);
}

proptest! {
    #[test]
    fn accuracy_is_a_fraction(bits in prop::collection::vec(any::<bool>(), 1..40)) {
        let a = accuracy(&verdicts(&bits));
        prop_assert!((0.0..=1.0).contains(&a));
        let k = bits.iter().filter(|b| **b).count() as f64;
        prop_assert!((a - k / bits.len() as f64).abs() < 1e-12);
    }

    #[test]
    fn flipping_a_verdict_never_lowers_accuracy(bits in prop::collection::vec(any::<bool>(), 1..40), i in 0usize..40) {
        let i = i % bits.len();
        let mut up = bits.clone();
        up[i] = true;
        prop_assert!(accuracy(&verdicts(&up)) >= accuracy(&verdicts(&bits)));
    }
}
