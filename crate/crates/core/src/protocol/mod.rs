//! The two-stage interaction protocol.
//!
//! A [`Session`] binds one environment instance to a [`TurnBudget`]. The
//! agent first spends `T` exploration turns, then answers every test sample
//! with up to `s` attempts ("T@s"). Every exchange is kept in the history,
//! including evaluation answers and their correctness feedback.

mod session;
pub mod text;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use session::{AnswerResult, AnswerStatus, Session};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stage {
    Exploration,
    Evaluation,
    Done,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum FeedbackMode {
    #[default]
    Instant,
    /// Exploration feedback is withheld and released as one list at the
    /// last exploration turn.
    Deferred,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TurnBudget {
    pub exploration_turns: u32,
    pub shots_per_sample: u32,
    #[serde(default)]
    pub feedback_mode: FeedbackMode,
    /// Malformed exploration queries that may be corrected within the same
    /// turn before a malformed query starts consuming turns.
    #[serde(default)]
    pub corrections_per_turn: u32,
}

impl TurnBudget {
    pub fn new(exploration_turns: u32, shots_per_sample: u32) -> Self {
        TurnBudget {
            exploration_turns,
            shots_per_sample,
            feedback_mode: FeedbackMode::Instant,
            corrections_per_turn: 0,
        }
    }

    pub fn deferred(mut self) -> Self {
        self.feedback_mode = FeedbackMode::Deferred;
        self
    }

    pub fn with_corrections(mut self, n: u32) -> Self {
        self.corrections_per_turn = n;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.exploration_turns == 0 {
            return Err(Error::InvalidBudget("exploration turns must be at least 1".to_string()));
        }
        if self.shots_per_sample == 0 {
            return Err(Error::InvalidBudget("shots per sample must be at least 1".to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for TurnBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.exploration_turns, self.shots_per_sample)
    }
}

/// Parses `T@s`; the result is validated.
impl FromStr for TurnBudget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (t, shots) = s
            .trim()
            .split_once('@')
            .ok_or_else(|| Error::InvalidBudget(format!("expected T@s, got `{s}`")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidBudget(format!("`{x}` is not a non-negative integer")))
        };
        let budget = TurnBudget::new(parse(t)?, parse(shots)?);
        budget.validate()?;
        Ok(budget)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExchangeRecord {
    pub stage: Stage,
    /// Test sample the exchange belongs to; `None` for shared exploration.
    pub sample: Option<usize>,
    /// Exploration turn (1..=T) or evaluation attempt (1..=s).
    pub index: u32,
    /// Position inside the turn or attempt: game moves and corrections.
    pub step: u32,
    pub query: String,
    /// What the environment produced.
    pub observation: String,
    /// What the agent was shown (differs from `observation` in deferred mode
    /// and when protocol banners are added).
    pub feedback: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub sample_index: usize,
    pub correct: bool,
    pub attempts_used: u32,
    /// 0 or 1 for judged answers; the clipped score ratio for games.
    pub credit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub env_id: String,
    pub seed: u64,
    pub budget: TurnBudget,
    pub accuracy: f64,
    pub correct: usize,
    pub samples: usize,
    pub per_sample: Vec<Verdict>,
}

impl ScoreReport {
    pub fn from_verdicts(env_id: &str, seed: u64, budget: TurnBudget, verdicts: &[Verdict]) -> Self {
        ScoreReport {
            env_id: env_id.to_string(),
            seed,
            budget,
            accuracy: accuracy(verdicts),
            correct: verdicts.iter().filter(|v| v.correct).count(),
            samples: verdicts.len(),
            per_sample: verdicts.to_vec(),
        }
    }
}

/// Mean credit; 0 for an empty list.
pub fn accuracy(verdicts: &[Verdict]) -> f64 {
    if verdicts.is_empty() {
        return 0.0;
    }
    let total: f64 = verdicts.iter().map(|v| v.credit.clamp(0.0, 1.0)).sum();
    total / verdicts.len() as f64
}

/// Score ratio against the optimum, clipped to [0, 1]. Negative totals count
/// as a trivial strategy and score zero.
pub fn score_ratio(total: f64, optimal: f64) -> f64 {
    if optimal <= 0.0 {
        return if total >= optimal { 1.0 } else { 0.0 };
    }
    (total / optimal).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub env_id: String,
    pub seed: u64,
    pub budget: TurnBudget,
    pub preamble: String,
    pub exchanges: Vec<ExchangeRecord>,
    pub verdicts: Vec<Verdict>,
    pub report: Option<ScoreReport>,
}

impl Transcript {
    /// Agent inputs in submission order.
    pub fn inputs(&self) -> impl Iterator<Item = &str> {
        self.exchanges.iter().map(|e| e.query.as_str())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_default()
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Data(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn v(i: usize, credit: f64) -> Verdict {
        Verdict { sample_index: i, correct: credit >= 1.0, attempts_used: 1, credit }
    }

    #[test]
    fn budget_notation() {
        let b: TurnBudget = "10@1".parse().unwrap();
        assert_eq!(b, TurnBudget::new(10, 1));
        assert_eq!(b.to_string(), "10@1");
        assert!("0@1".parse::<TurnBudget>().is_err());
        assert!("5@0".parse::<TurnBudget>().is_err());
        assert!("5".parse::<TurnBudget>().is_err());
    }

    #[test]
    fn accuracy_examples() {
        let vs = vec![v(0, 1.0), v(1, 1.0), v(2, 0.0), v(3, 1.0)];
        assert_eq!(accuracy(&vs), 0.75);
        assert_eq!(score_ratio(-3.0, 6.0), 0.0);
        assert_eq!(score_ratio(6.0, 6.0), 1.0);
        assert_eq!(score_ratio(3.0, 6.0), 0.5);
    }

    proptest! {
        #[test]
        fn accuracy_bounded_and_monotone(bits in proptest::collection::vec(any::<bool>(), 1..40), flip in any::<prop::sample::Index>()) {
            let vs: Vec<Verdict> = bits.iter().enumerate().map(|(i, b)| v(i, if *b { 1.0 } else { 0.0 })).collect();
            let a = accuracy(&vs);
            prop_assert!((0.0..=1.0).contains(&a));
            let mut flipped = vs.clone();
            let k = flip.index(flipped.len());
            flipped[k] = v(k, 1.0);
            prop_assert!(accuracy(&flipped) >= a);
        }
    }
}
