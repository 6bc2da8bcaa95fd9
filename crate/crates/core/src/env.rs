//! The contract every environment implements.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Family {
    Cii,
    Cri,
    Psi,
    Eri,
    Ipi,
    Gsi,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::Cii, Family::Cri, Family::Psi, Family::Eri, Family::Ipi, Family::Gsi];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Cii => "CII",
            Family::Cri => "CRI",
            Family::Psi => "PSI",
            Family::Eri => "ERI",
            Family::Ipi => "IPI",
            Family::Gsi => "GSI",
        }
    }

    /// Case-insensitive; accepts the id prefix (`eri`) as well.
    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.as_str().eq_ignore_ascii_case(s.trim()))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Difficulty {
    Easy,
    Hard,
}

impl Difficulty {
    pub fn as_str(self) -> &'static str {
        match self {
            Difficulty::Easy => "Easy",
            Difficulty::Hard => "Hard",
        }
    }

    pub fn parse(s: &str) -> Option<Difficulty> {
        match s.trim().to_ascii_lowercase().as_str() {
            "easy" => Some(Difficulty::Easy),
            "hard" => Some(Difficulty::Hard),
            _ => None,
        }
    }
}

impl fmt::Display for Difficulty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Registry entry. `description` is public: it never states the hidden rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnvSpec {
    pub id: &'static str,
    pub family: Family,
    pub difficulty: Difficulty,
    pub description: &'static str,
    pub default_test_count: usize,
}

/// How exploration and evaluation interleave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Layout {
    /// One exploration stage, then every test sample.
    Shared,
    /// Each sample is a fresh puzzle: explore it, then answer it.
    Puzzle,
    /// Each sample is a game length: explore with full games, then play
    /// scored games. Credit is the best score ratio over the attempts.
    Game,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    /// The exploration turn is complete.
    TurnDone,
    /// The turn continues (a game move inside an exploration game).
    Continue,
    /// The query was malformed; the text is a format correction.
    Invalid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reply {
    pub text: String,
    pub outcome: Outcome,
}

impl Reply {
    pub fn done(text: impl Into<String>) -> Self {
        Reply { text: text.into(), outcome: Outcome::TurnDone }
    }

    pub fn more(text: impl Into<String>) -> Self {
        Reply { text: text.into(), outcome: Outcome::Continue }
    }

    pub fn invalid(text: impl Into<String>) -> Self {
        Reply { text: text.into(), outcome: Outcome::Invalid }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Judgement {
    /// A move inside an evaluation game; the attempt is not over.
    Pending(String),
    /// The attempt is over. `text` is environment feedback shown before
    /// the protocol's verdict line (often empty).
    Graded { credit: f64, correct: bool, text: String },
}

impl Judgement {
    pub fn binary(correct: bool) -> Self {
        Judgement::Graded { credit: if correct { 1.0 } else { 0.0 }, correct, text: String::new() }
    }
}

/// A seeded, live environment instance.
///
/// The protocol calls `explore` during exploration and `answer` during
/// evaluation; `sample` is the test-sample index (always 0 during shared
/// exploration). All randomness must come from the instance seed.
pub trait BlackBox: Send {
    fn spec(&self) -> &'static EnvSpec;

    fn layout(&self) -> Layout {
        Layout::Shared
    }

    /// Agent-facing rules placed after the family introduction.
    fn briefing(&self) -> String;

    fn sample_count(&self) -> usize;

    /// Text that opens exploration turn `turn` (1-based) of `sample`.
    fn open_turn(&mut self, _sample: usize, _turn: u32) -> Option<String> {
        None
    }

    fn explore(&mut self, sample: usize, query: &str) -> Reply;

    /// The evaluation prompt for `sample`.
    fn question(&mut self, sample: usize) -> String;

    /// Text that opens evaluation attempt `attempt` (0-based) of `sample`.
    fn open_attempt(&mut self, _sample: usize, _attempt: u32) -> Option<String> {
        None
    }

    fn answer(&mut self, sample: usize, answer: &str) -> Judgement;

    /// Answer texts that earn full credit in one attempt, in order. Games
    /// against stochastic opponents return the best stationary action
    /// sequence, which earns full credit only in expectation.
    fn expected(&self, sample: usize) -> Vec<String>;

    /// Renderings of hidden state that must never reach the agent.
    fn secrets(&self) -> Vec<String>;
}
