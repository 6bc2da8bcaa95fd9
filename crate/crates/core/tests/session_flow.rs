use blackbox_core::env::Layout;
use blackbox_core::protocol::{AnswerStatus, FeedbackMode};
use blackbox_core::{Error, Session, Stage, TurnBudget};

fn budget(t: u32, s: u32) -> TurnBudget {
    TurnBudget::new(t, s)
}

#[test]
fn new_session_state() {
    let s = Session::new("eri/caesar-8", budget(10, 1), 7).unwrap();
    assert_eq!(s.stage(), Stage::Exploration);
    assert_eq!(s.turns_remaining(), 10);
    assert!(s.history().is_empty());
    assert!(matches!(Session::new("nonexistent", budget(10, 1), 0), Err(Error::NotFound(_))));
    let g = Session::new("gsi/cards-ascending-10", budget(1, 1), 3).unwrap();
    assert!(g.preamble().contains("Now Let's Play the Game cards-ascending-10, the Description Is that"));
}

#[test]
fn conical_pendulum_first_turn() {
    let mut s = Session::new("psi/conical-pendulum", budget(6, 1), 0).unwrap();
    assert_eq!(s.submit_exploration("0").unwrap(), "<Current Turn: 1, 5 Turns Remaining> {'object1': (2.5, 0.0, -4.33)}");
}

#[test]
fn stage_moves_to_evaluation_after_last_turn() {
    let mut s = Session::new("eri/caesar-8", budget(2, 1), 0).unwrap();
    s.submit_exploration("abc").unwrap();
    assert_eq!(s.stage(), Stage::Exploration);
    let fb = s.submit_exploration("xyz").unwrap();
    assert_eq!(s.stage(), Stage::Evaluation);
    assert!(fb.contains("********Evaluation Starts, You Have 1 Chances for Answering Each Question******** Now answer the question:"));
    assert!(matches!(s.submit_exploration("more"), Err(Error::StageViolation { .. })));
}

#[test]
fn invalid_queries_consume_turns_unless_corrections_remain() {
    let mut s = Session::new("eri/caesar-8", budget(3, 1), 0).unwrap();
    let fb = s.submit_exploration("abc1").unwrap();
    assert!(fb.starts_with("<Current Turn: 1, 2 Turns Remaining> Invalid string."));
    let mut c = Session::new("eri/caesar-8", budget(3, 1).with_corrections(1), 0).unwrap();
    c.submit_exploration("abc1").unwrap();
    assert_eq!(c.turns_remaining(), 3);
    c.submit_exploration("abc2").unwrap();
    assert_eq!(c.turns_remaining(), 2);
}

#[test]
fn shots_and_verdicts() {
    let mut s = Session::new("eri/caesar-8", budget(1, 2), 0).unwrap();
    s.submit_exploration("a").unwrap();
    let first = s.submit_answer("nope").unwrap();
    assert_eq!(first.status, AnswerStatus::Retry);
    assert!(first.feedback.starts_with("Your answer is wrong. You have 1 more chance(s) for this question."));
    assert_eq!(s.sample_index(), 0);
    let second = s.submit_answer("nope").unwrap();
    assert!(matches!(second.status, AnswerStatus::Verdict(ref v) if !v.correct && v.attempts_used == 2));
    assert!(second.feedback.starts_with("Your answer is wrong. Let's move to next question."));
    assert!(matches!(s.score(), Err(Error::StageViolation { .. })));
    let n = s.sample_count();
    for i in 1..n {
        let exp = s.env().expected(i).remove(0);
        let r = s.submit_answer(&exp).unwrap();
        assert!(r.feedback.starts_with("Your answer is correct."));
    }
    assert_eq!(s.stage(), Stage::Done);
    let report = s.score().unwrap();
    assert_eq!(report.per_sample.len(), n);
    assert!((report.accuracy - (n - 1) as f64 / n as f64).abs() < 1e-12);
    assert!(s.prompt().ends_with("All test samples are finished."));
}

#[test]
fn deferred_acknowledges_then_releases() {
    let mut s = Session::new("eri/caesar-8", budget(2, 1).deferred(), 0).unwrap();
    assert_eq!(s.budget().feedback_mode, FeedbackMode::Deferred);
    let a = s.submit_exploration("abc").unwrap();
    assert_eq!(a, "<Current Turn: 1, 1 Turns Remaining> Query received. Feedback is withheld until the last exploration turn.");
    let b = s.submit_exploration("Yes").unwrap();
    assert!(b.contains("The feedback of all your queries in this exploration stage is listed below.\n[Query 1] abc\n[Feedback 1] ijk\n[Query 2] Yes\n[Feedback 2] Gma"));
}

#[test]
fn puzzle_layout_runs_an_episode_per_sample() {
    let mut s = Session::new("ipi/number-guessing", budget(2, 1), 5).unwrap();
    assert_eq!(s.layout(), Layout::Puzzle);
    assert!(s.preamble().contains("Now Let's Solve the Puzzle number-guessing."));
    assert!(s.preamble().ends_with(
        "********A New Puzzle Starts, You can Make 2 Queries Before Answering Each Question. And Then You Have 1 Chances for Answering. Output the Value Only.********"
    ));
    s.submit_exploration("Number 50").unwrap();
    let fb = s.submit_exploration("Number 10").unwrap();
    assert!(fb.ends_with("********Evaluation Starts, You Have 1 Chances for Answering, Please Output the Answer DIRECTLY.********"));
    let exp = s.env().expected(0).remove(0);
    let r = s.submit_answer(&exp).unwrap();
    assert!(r.feedback.starts_with("Your answer is correct."));
    assert!(r.feedback.contains("********A New Puzzle Starts"));
    assert_eq!(s.stage(), Stage::Exploration);
    assert_eq!(s.sample_index(), 1);
    assert_eq!(s.turns_remaining(), 2);
}

#[test]
fn game_layout_plays_full_games() {
    let mut s = Session::new("gsi/lsd-defender", budget(1, 2), 0).unwrap();
    assert_eq!(s.layout(), Layout::Game);
    assert!(s.preamble().contains(
        "********Exploration Phase Starts, We wll Play the Game for 1 Times. Your Actions Will Not Be Recorded, and Your Score Does Not Matter.**********\n\n***Exploration Round <1/1> Start***\n\nTurn 1/"
    ));
    // moves do not consume exploration turns until the game ends
    let mut fb = String::new();
    while s.stage() == Stage::Exploration {
        fb = s.submit_exploration("load").unwrap();
    }
    assert!(fb.contains("Game over."));
    assert!(fb.contains(
        "********Evaluation Phase Starts, We Will Play the Game for 2 Time. Now is the 0 time. The highest score Will Be Recorded.**********"
    ));
    let moves = s.env().expected(0);
    let mut last = None;
    for m in &moves {
        last = Some(s.submit_answer(m).unwrap());
    }
    match last.unwrap().status {
        AnswerStatus::Verdict(v) => {
            assert_eq!(v.credit, 1.0);
            assert_eq!(v.attempts_used, 1);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn game_best_attempt_counts() {
    let mut s = Session::new("gsi/rps7-cycle", budget(1, 2), 0).unwrap();
    while s.stage() == Stage::Exploration {
        s.submit_exploration("rock").unwrap();
    }
    let rounds = s.env().expected(0).len();
    // first attempt: all rock scores a tie against rock, paper, ... ; retry then optimal
    let mut status = AnswerStatus::Continue;
    for _ in 0..rounds {
        status = s.submit_answer("rock").unwrap().status;
    }
    assert_eq!(status, AnswerStatus::Retry);
    for m in s.env().expected(0) {
        status = s.submit_answer(&m).unwrap().status;
    }
    assert!(matches!(status, AnswerStatus::Verdict(ref v) if v.credit == 1.0 && v.attempts_used == 2));
}

#[test]
fn replay_reproduces_report() {
    let mut s = Session::new("cri/and-tree", budget(3, 1), 4).unwrap();
    for q in ["(1, 1, 1, 1, 1, 1, 1, 1)", "bad", "(0, 0, 0, 0, 0, 0, 0, 0)"] {
        s.submit_exploration(q).unwrap();
    }
    for i in 0..s.sample_count() {
        let a = if i % 2 == 0 { s.env().expected(i).remove(0) } else { String::from("[0]") };
        s.submit_answer(&a).unwrap();
    }
    let t = s.transcript();
    let back = blackbox_core::protocol::Transcript::from_json(&t.to_json()).unwrap();
    let r = Session::replay(&back.env_id, back.budget, back.seed, back.inputs()).unwrap();
    assert_eq!(r.score().unwrap(), s.score().unwrap());
    assert_eq!(r.transcript().to_json(), t.to_json());
}
