//! Games against hidden opponent strategies. Each sample fixes a round
//! count; every exploration turn is one full unscored game, then up to
//! `shots` scored games follow and the best ratio to the optimum counts.

pub mod game;
pub mod rules;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use rand::Rng;

use crate::env::{BlackBox, Difficulty, EnvSpec, Family, Judgement, Layout, Reply};
use crate::protocol::score_ratio;
use crate::rng;
pub use game::{optimal_moves, optimal_score, GameKind, Match, Move, Step};

pub const MIN_ROUNDS: usize = 8;
pub const MAX_ROUNDS: usize = 15;

pub struct GsiEnv {
    spec: &'static EnvSpec,
    seed: u64,
    kind: GameKind,
    rounds: Vec<usize>,
    current: Option<Match>,
    games_started: u64,
}

impl GsiEnv {
    pub fn new(spec: &'static EnvSpec, kind: GameKind, seed: u64) -> Self {
        let mut r = rng::stream(spec.id, seed, "rounds", 0);
        let rounds = (0..spec.default_test_count).map(|_| r.random_range(MIN_ROUNDS..=MAX_ROUNDS)).collect();
        GsiEnv { spec, seed, kind, rounds, current: None, games_started: 0 }
    }

    pub fn rounds(&self, sample: usize) -> usize {
        self.rounds[sample]
    }

    pub fn kind(&self) -> GameKind {
        self.kind
    }

    fn start(&mut self, sample: usize) -> String {
        let stream = rng::stream(self.spec.id, self.seed, "opponent", self.games_started);
        self.games_started += 1;
        let m = Match::new(self.kind, self.rounds[sample], stream);
        let prompt = m.prompt();
        self.current = Some(m);
        prompt
    }

    fn step(&mut self, sample: usize, text: &str) -> (Step, i32) {
        if self.current.as_ref().is_none_or(Match::is_over) {
            self.start(sample);
        }
        let m = self.current.as_mut().expect("match started");
        let step = m.play(text);
        (step, m.total())
    }
}

impl BlackBox for GsiEnv {
    fn spec(&self) -> &'static EnvSpec {
        self.spec
    }

    fn layout(&self) -> Layout {
        Layout::Game
    }

    fn briefing(&self) -> String {
        self.kind.description()
    }

    fn sample_count(&self) -> usize {
        self.rounds.len()
    }

    fn open_turn(&mut self, sample: usize, _turn: u32) -> Option<String> {
        Some(self.start(sample))
    }

    fn explore(&mut self, sample: usize, query: &str) -> Reply {
        match self.step(sample, query).0 {
            Step::Invalid(t) | Step::Next(t) => Reply::more(t),
            Step::Finished(t) => Reply::done(t),
        }
    }

    fn question(&mut self, _sample: usize) -> String {
        String::new()
    }

    fn open_attempt(&mut self, sample: usize, _attempt: u32) -> Option<String> {
        Some(self.start(sample))
    }

    fn answer(&mut self, sample: usize, answer: &str) -> Judgement {
        match self.step(sample, answer) {
            (Step::Invalid(t) | Step::Next(t), _) => Judgement::Pending(t),
            (Step::Finished(t), total) => {
                let credit = score_ratio(total as f64, optimal_score(self.kind, self.rounds[sample]));
                Judgement::Graded { credit, correct: credit >= 1.0, text: t }
            }
        }
    }

    fn expected(&self, sample: usize) -> Vec<String> {
        optimal_moves(self.kind, self.rounds[sample]).0
    }

    fn secrets(&self) -> Vec<String> {
        alloc::vec![self.kind.strategy(), format!("{:?}", self.kind)]
    }
}

const fn spec(id: &'static str, difficulty: Difficulty, description: &'static str) -> EnvSpec {
    EnvSpec { id, family: Family::Gsi, difficulty, description, default_test_count: 4 }
}

pub(crate) const SPECS: &[(EnvSpec, GameKind)] = &[
    (spec("gsi/rps7-random", Difficulty::Easy, "Seven-hand rock paper scissors."), GameKind::Rps7Random),
    (spec("gsi/rps7-cycle", Difficulty::Easy, "Seven-hand rock paper scissors."), GameKind::Rps7Cycle),
    (spec("gsi/lsd-defender", Difficulty::Easy, "Load, shoot, defend."), GameKind::LsdDefender),
    (spec("gsi/cards-ascending-10", Difficulty::Easy, "Comparing cards."), GameKind::CardsAscending),
    (spec("gsi/lsd-balance", Difficulty::Hard, "Load, shoot, defend."), GameKind::LsdBalance),
    (spec("gsi/lsd-attacker", Difficulty::Hard, "Load, shoot, defend."), GameKind::LsdAttacker),
    (spec("gsi/anti-rps-random", Difficulty::Hard, "Reversed rock paper scissors."), GameKind::AntiRpsRandom),
];

/// The game behind a catalog id.
pub fn kind_for(id: &str) -> Option<GameKind> {
    SPECS.iter().find(|(s, _)| s.id == id).map(|(_, k)| *k)
}

pub(crate) fn build(id: &str, seed: u64) -> Option<Box<dyn BlackBox>> {
    SPECS
        .iter()
        .find(|(s, _)| s.id == id)
        .map(|(s, k)| Box::new(GsiEnv::new(s, *k, seed)) as Box<dyn BlackBox>)
}
