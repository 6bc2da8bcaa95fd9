//! Interactive puzzles. Every test sample is its own puzzle: the agent
//! queries it for the turn budget and then names the hidden answer.

pub mod puzzle;
pub mod wordle;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use rand::seq::index;

use crate::env::{BlackBox, Difficulty, EnvSpec, Family, Judgement, Layout, Reply};
use crate::rng;
pub use puzzle::{Hidden, Puzzle, PuzzleKind};

pub struct IpiEnv {
    spec: &'static EnvSpec,
    kind: PuzzleKind,
    puzzles: Vec<Puzzle>,
}

impl IpiEnv {
    pub fn new(spec: &'static EnvSpec, kind: PuzzleKind, seed: u64) -> Self {
        let n = spec.default_test_count;
        let mut r = rng::stream(spec.id, seed, "answers", 0);
        let picks: Vec<usize> = match kind.domain_size() {
            usize::MAX => (0..n).collect(),
            size => index::sample(&mut r, size, n.min(size)).into_vec(),
        };
        let puzzles = picks
            .into_iter()
            .enumerate()
            .map(|(k, i)| Puzzle::new(kind.hidden(i, &mut r), rng::stream(spec.id, seed, "feedback", k as u64)))
            .collect();
        IpiEnv { spec, kind, puzzles }
    }

    pub fn kind(&self) -> PuzzleKind {
        self.kind
    }

    pub fn puzzle(&self, sample: usize) -> &Puzzle {
        &self.puzzles[sample]
    }
}

impl BlackBox for IpiEnv {
    fn spec(&self) -> &'static EnvSpec {
        self.spec
    }

    fn layout(&self) -> Layout {
        Layout::Puzzle
    }

    fn briefing(&self) -> String {
        self.kind.description()
    }

    fn sample_count(&self) -> usize {
        self.puzzles.len()
    }

    fn explore(&mut self, sample: usize, query: &str) -> Reply {
        match self.puzzles[sample].step(query) {
            Ok(text) => Reply::done(text),
            Err(fix) => Reply::invalid(fix),
        }
    }

    fn question(&mut self, _sample: usize) -> String {
        String::new()
    }

    fn answer(&mut self, sample: usize, answer: &str) -> Judgement {
        Judgement::binary(answer.trim() == self.puzzles[sample].hidden.answer())
    }

    fn expected(&self, sample: usize) -> Vec<String> {
        vec![self.puzzles[sample].hidden.answer()]
    }

    fn secrets(&self) -> Vec<String> {
        self.puzzles
            .iter()
            .map(|p| match &p.hidden {
                Hidden::Bandit(prob) => alloc::format!("{prob:?}"),
                h => h.answer(),
            })
            .collect()
    }
}

const fn spec(id: &'static str, difficulty: Difficulty, description: &'static str) -> EnvSpec {
    EnvSpec { id, family: Family::Ipi, difficulty, description, default_test_count: 6 }
}

pub(crate) const SPECS: &[(EnvSpec, PuzzleKind)] = &[
    (spec("ipi/bandit", Difficulty::Easy, "Find the best of three slot machines."), PuzzleKind::Bandit),
    (spec("ipi/battleship", Difficulty::Easy, "Locate one ship on a 9x9 grid."), PuzzleKind::Battleship),
    (spec("ipi/wordle-8", Difficulty::Easy, "Guess a hidden 8-letter word."), PuzzleKind::Wordle { len: 8 }),
    (spec("ipi/heavy-coin", Difficulty::Easy, "Find the heavy coin with an unreliable scale."), PuzzleKind::HeavyCoin),
    (spec("ipi/number-guessing", Difficulty::Easy, "Guess a secret integer from 0 to 100."), PuzzleKind::NumberGuessing),
    (spec("ipi/wordle-hard-11", Difficulty::Hard, "Guess a hidden 11-letter word."), PuzzleKind::Wordle { len: 11 }),
];

/// The puzzle behind a catalog id.
pub fn kind_for(id: &str) -> Option<PuzzleKind> {
    SPECS.iter().find(|(s, _)| s.id == id).map(|(_, k)| *k)
}

pub(crate) fn build(id: &str, seed: u64) -> Option<Box<dyn BlackBox>> {
    SPECS
        .iter()
        .find(|(s, _)| s.id == id)
        .map(|(s, k)| Box::new(IpiEnv::new(s, *k, seed)) as Box<dyn BlackBox>)
}
