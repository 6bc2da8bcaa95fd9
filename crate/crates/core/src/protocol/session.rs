use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::text;
use super::{ExchangeRecord, FeedbackMode, ScoreReport, Stage, Transcript, TurnBudget, Verdict};
use crate::env::{BlackBox, Judgement, Layout, Outcome};
use crate::error::Error;
use crate::registry;

#[derive(Debug, Clone, PartialEq)]
pub enum AnswerStatus {
    /// A move inside an evaluation game was accepted.
    Continue,
    /// Wrong answer, attempts remain on the same sample.
    Retry,
    Verdict(Verdict),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnswerResult {
    pub status: AnswerStatus,
    pub feedback: String,
}

pub struct Session {
    env_id: String,
    seed: u64,
    budget: TurnBudget,
    layout: Layout,
    env: Box<dyn BlackBox>,
    samples: usize,
    stage: Stage,
    preamble: String,
    prompt: String,
    history: Vec<ExchangeRecord>,
    verdicts: Vec<Verdict>,
    sample: usize,
    turns_used: u32,
    step: u32,
    corrections: u32,
    attempts: u32,
    best_credit: f64,
    // first history index of the current exploration episode
    episode_start: usize,
}

impl core::fmt::Debug for Session {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Session")
            .field("env_id", &self.env_id)
            .field("seed", &self.seed)
            .field("budget", &self.budget)
            .field("stage", &self.stage)
            .field("sample", &self.sample)
            .finish_non_exhaustive()
    }
}

impl Session {
    pub fn new(env_id: &str, budget: TurnBudget, seed: u64) -> Result<Self, Error> {
        budget.validate()?;
        let env = registry::instantiate(env_id, seed)?;
        Self::with_env(env, budget, seed)
    }

    pub fn with_env(env: Box<dyn BlackBox>, budget: TurnBudget, seed: u64) -> Result<Self, Error> {
        budget.validate()?;
        let spec = env.spec();
        let layout = env.layout();
        let name = spec.id.split_once('/').map_or(spec.id, |(_, n)| n);
        let mut preamble = text::introduction(spec.family, name, &env.briefing());
        preamble.push_str("\n\n");
        preamble.push_str(&text::episode_opening(layout, &budget));
        let samples = env.sample_count();
        let mut s = Session {
            env_id: spec.id.to_string(),
            seed,
            budget,
            layout,
            samples,
            stage: Stage::Exploration,
            preamble: String::new(),
            prompt: String::new(),
            history: Vec::new(),
            verdicts: Vec::new(),
            sample: 0,
            turns_used: 0,
            step: 0,
            corrections: 0,
            attempts: 0,
            best_credit: 0.0,
            episode_start: 0,
            env,
        };
        if let Some(open) = s.turn_opening(1) {
            preamble.push_str("\n\n");
            preamble.push_str(&open);
        }
        s.prompt = preamble.clone();
        s.preamble = preamble;
        Ok(s)
    }

    /// Replays agent inputs against a fresh instance.
    pub fn replay<'a>(
        env_id: &str,
        budget: TurnBudget,
        seed: u64,
        inputs: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self, Error> {
        let mut s = Session::new(env_id, budget, seed)?;
        for input in inputs {
            s.submit(input)?;
        }
        Ok(s)
    }

    pub fn env_id(&self) -> &str {
        &self.env_id
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn budget(&self) -> TurnBudget {
        self.budget
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn preamble(&self) -> &str {
        &self.preamble
    }

    /// The most recent text addressed to the agent.
    pub fn prompt(&self) -> &str {
        &self.prompt
    }

    pub fn history(&self) -> &[ExchangeRecord] {
        &self.history
    }

    pub fn verdicts(&self) -> &[Verdict] {
        &self.verdicts
    }

    pub fn sample_count(&self) -> usize {
        self.samples
    }

    /// Index of the sample being explored or answered.
    pub fn sample_index(&self) -> usize {
        self.sample
    }

    pub fn turns_remaining(&self) -> u32 {
        match self.stage {
            Stage::Exploration => self.budget.exploration_turns - self.turns_used,
            _ => 0,
        }
    }

    pub fn attempts_remaining(&self) -> u32 {
        match self.stage {
            Stage::Evaluation => self.budget.shots_per_sample - self.attempts,
            _ => 0,
        }
    }

    pub fn env(&self) -> &dyn BlackBox {
        self.env.as_ref()
    }

    /// Routes `text` to exploration or evaluation by the current stage.
    pub fn submit(&mut self, text: &str) -> Result<String, Error> {
        match self.stage {
            Stage::Exploration => self.submit_exploration(text),
            Stage::Evaluation => self.submit_answer(text).map(|r| r.feedback),
            Stage::Done => Err(Error::StageViolation { expected: Stage::Evaluation, actual: Stage::Done }),
        }
    }

    fn env_sample(&self) -> usize {
        match self.layout {
            Layout::Shared => 0,
            _ => self.sample,
        }
    }

    fn record_sample(&self) -> Option<usize> {
        match (self.layout, self.stage) {
            (Layout::Shared, Stage::Exploration) => None,
            _ => Some(self.sample),
        }
    }

    fn turn_opening(&mut self, turn: u32) -> Option<String> {
        let sample = self.env_sample();
        let open = self.env.open_turn(sample, turn);
        match self.layout {
            Layout::Game => {
                let mut s = text::exploration_round(turn, self.budget.exploration_turns);
                if let Some(o) = open {
                    s.push_str("\n\n");
                    s.push_str(&o);
                }
                Some(s)
            }
            _ => open,
        }
    }

    pub fn submit_exploration(&mut self, query: &str) -> Result<String, Error> {
        if self.stage != Stage::Exploration {
            return Err(Error::StageViolation { expected: Stage::Exploration, actual: self.stage });
        }
        let sample = self.env_sample();
        let reply = self.env.explore(sample, query);
        let deferred = self.budget.feedback_mode == FeedbackMode::Deferred;
        let total = self.budget.exploration_turns;

        let consumes = match reply.outcome {
            Outcome::TurnDone => true,
            Outcome::Continue => false,
            Outcome::Invalid => {
                if self.corrections < self.budget.corrections_per_turn {
                    self.corrections += 1;
                    false
                } else {
                    true
                }
            }
        };

        let turn = self.turns_used + 1;
        let mut feedback = if !consumes {
            if deferred { String::from(text::ACK) } else { reply.text.clone() }
        } else {
            let body = if deferred { text::ACK } else { reply.text.as_str() };
            format!("{} {}", text::turn_banner(turn, total), body)
        };

        self.history.push(ExchangeRecord {
            stage: Stage::Exploration,
            sample: self.record_sample(),
            index: turn,
            step: self.step,
            query: query.to_string(),
            observation: reply.text,
            feedback: String::new(),
        });

        if consumes {
            self.turns_used = turn;
            self.step = 0;
            self.corrections = 0;
            if self.turns_used == total {
                if deferred {
                    feedback.push('\n');
                    feedback.push_str(&self.release());
                }
                self.begin_evaluation(&mut feedback);
            } else if let Some(open) = self.turn_opening(turn + 1) {
                feedback.push_str("\n\n");
                feedback.push_str(&open);
            }
        } else {
            self.step += 1;
        }

        if let Some(last) = self.history.last_mut() {
            last.feedback = feedback.clone();
        }
        self.prompt = feedback.clone();
        Ok(feedback)
    }

    fn release(&self) -> String {
        let mut out = String::from(text::release_header());
        for (n, e) in self.history[self.episode_start..].iter().enumerate() {
            out.push('\n');
            out.push_str(&text::release_entry(n + 1, &e.query, &e.observation));
        }
        out
    }

    /// Observations released at the end of the current or last episode, in
    /// submission order.
    pub fn episode_observations(&self) -> Vec<&str> {
        self.history[self.episode_start..]
            .iter()
            .filter(|e| e.stage == Stage::Exploration)
            .map(|e| e.observation.as_str())
            .collect()
    }

    fn begin_evaluation(&mut self, out: &mut String) {
        self.stage = Stage::Evaluation;
        self.attempts = 0;
        self.best_credit = 0.0;
        self.step = 0;
        let opening = text::evaluation_opening(self.layout, &self.budget, 0);
        match self.layout {
            Layout::Shared => {
                let q = self.env.question(self.sample);
                out.push(' ');
                out.push_str(&opening);
                out.push(' ');
                out.push_str(&text::ask(&q));
            }
            Layout::Puzzle => {
                out.push_str(&opening);
                let q = self.env.question(self.sample);
                if !q.is_empty() {
                    out.push(' ');
                    out.push_str(&q);
                }
            }
            Layout::Game => {
                out.push_str("\n\n");
                out.push_str(&opening);
                if let Some(open) = self.env.open_attempt(self.sample, 0) {
                    out.push_str("\n\n");
                    out.push_str(&open);
                }
            }
        }
    }

    pub fn submit_answer(&mut self, answer: &str) -> Result<AnswerResult, Error> {
        if self.stage != Stage::Evaluation {
            return Err(Error::StageViolation { expected: Stage::Evaluation, actual: self.stage });
        }
        let judgement = self.env.answer(self.sample, answer);
        let attempt = self.attempts + 1;
        let mut record = ExchangeRecord {
            stage: Stage::Evaluation,
            sample: Some(self.sample),
            index: attempt,
            step: self.step,
            query: answer.to_string(),
            observation: String::new(),
            feedback: String::new(),
        };

        let (status, feedback) = match judgement {
            Judgement::Pending(t) => {
                record.observation = t.clone();
                self.step += 1;
                (AnswerStatus::Continue, t)
            }
            Judgement::Graded { credit, correct, text: t } => {
                record.observation = t.clone();
                self.attempts = attempt;
                self.step = 0;
                let credit = credit.clamp(0.0, 1.0);
                if credit > self.best_credit {
                    self.best_credit = credit;
                }
                let shots = self.budget.shots_per_sample;
                let mut out = t;
                let resolved = match self.layout {
                    Layout::Game => self.best_credit >= 1.0 || attempt == shots,
                    _ => correct || attempt == shots,
                };
                if !resolved {
                    match self.layout {
                        Layout::Game => {
                            push_block(&mut out, &text::evaluation_opening(self.layout, &self.budget, attempt));
                            if let Some(open) = self.env.open_attempt(self.sample, attempt) {
                                push_block(&mut out, &open);
                            }
                        }
                        Layout::Shared => {
                            push_line(&mut out, &text::wrong_retry(shots - attempt));
                            let q = self.env.question(self.sample);
                            out.push(' ');
                            out.push_str(&text::ask(&q));
                        }
                        Layout::Puzzle => push_line(&mut out, &text::wrong_retry(shots - attempt)),
                    }
                    (AnswerStatus::Retry, out)
                } else {
                    let verdict = Verdict {
                        sample_index: self.sample,
                        correct: if self.layout == Layout::Game { self.best_credit >= 1.0 } else { correct },
                        attempts_used: attempt,
                        credit: if self.layout == Layout::Game { self.best_credit } else if correct { 1.0 } else { 0.0 },
                    };
                    if self.layout != Layout::Game {
                        push_line(&mut out, if correct { text::CORRECT } else { text::WRONG_FINAL });
                    }
                    self.verdicts.push(verdict.clone());
                    self.advance(&mut out);
                    (AnswerStatus::Verdict(verdict), out)
                }
            }
        };
        record.feedback = feedback.clone();
        self.history.push(record);
        self.prompt = feedback.clone();
        Ok(AnswerResult { status, feedback })
    }

    fn advance(&mut self, out: &mut String) {
        self.sample += 1;
        self.attempts = 0;
        self.best_credit = 0.0;
        if self.sample >= self.samples {
            self.stage = Stage::Done;
            push_block(out, text::FINISHED);
            return;
        }
        match self.layout {
            Layout::Shared => {
                let q = self.env.question(self.sample);
                push_line(out, &text::ask(&q));
            }
            Layout::Puzzle | Layout::Game => {
                self.stage = Stage::Exploration;
                self.turns_used = 0;
                self.step = 0;
                self.corrections = 0;
                self.episode_start = self.history.len() + 1;
                push_block(out, &text::episode_opening(self.layout, &self.budget));
                if let Some(open) = self.turn_opening(1) {
                    push_block(out, &open);
                }
            }
        }
    }

    pub fn score(&self) -> Result<ScoreReport, Error> {
        if self.stage != Stage::Done {
            return Err(Error::StageViolation { expected: Stage::Done, actual: self.stage });
        }
        Ok(ScoreReport::from_verdicts(&self.env_id, self.seed, self.budget, &self.verdicts))
    }

    pub fn transcript(&self) -> Transcript {
        Transcript {
            env_id: self.env_id.clone(),
            seed: self.seed,
            budget: self.budget,
            preamble: self.preamble.clone(),
            exchanges: self.history.clone(),
            verdicts: self.verdicts.clone(),
            report: self.score().ok(),
        }
    }
}

fn push_line(out: &mut String, s: &str) {
    if !out.is_empty() {
        out.push('\n');
    }
    out.push_str(s);
}

fn push_block(out: &mut String, s: &str) {
    if !out.is_empty() {
        out.push_str("\n\n");
    }
    out.push_str(s);
}
