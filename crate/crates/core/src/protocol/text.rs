//! Fixed session text: family introductions and protocol banners.

use alloc::format;
use alloc::string::String;

use crate::env::{Family, Layout};
use crate::protocol::TurnBudget;

const CII: &str = include_str!("prompts/cii.md");
const CRI: &str = include_str!("prompts/cri.md");
const PSI: &str = include_str!("prompts/psi.md");
const ERI: &str = include_str!("prompts/eri.md");
const IPI: &str = include_str!("prompts/ipi.md");
const GSI: &str = include_str!("prompts/gsi.md");

pub const CORRECT: &str = "Your answer is correct.";
pub const WRONG_FINAL: &str = "Your answer is wrong. Let's move to next question.";
pub const ACK: &str = "Query received. Feedback is withheld until the last exploration turn.";
pub const FINISHED: &str = "All test samples are finished.";

/// The family introduction with the environment's public briefing.
pub fn introduction(family: Family, name: &str, briefing: &str) -> String {
    let template = match family {
        Family::Cii => CII,
        Family::Cri => CRI,
        Family::Psi => PSI,
        Family::Eri => ERI,
        Family::Ipi => IPI,
        Family::Gsi => GSI,
    };
    if template.contains("{description}") {
        let briefing = briefing.trim_end().trim_end_matches('.');
        template.replace("{name}", name).replace("{description}", briefing).trim_end().into()
    } else {
        format!("{}\n\n{}", template.trim_end(), briefing.trim_end())
    }
}

pub fn turn_banner(turn: u32, total: u32) -> String {
    format!("<Current Turn: {turn}, {} Turns Remaining>", total.saturating_sub(turn))
}

pub fn shared_start(budget: &TurnBudget) -> String {
    format!(
        "You have {} interaction turns to understand the black-box. Now the interaction starts. \
         Only output the value and DO NOT contain any unrelated text.",
        budget.exploration_turns
    )
}

pub fn episode_opening(layout: Layout, budget: &TurnBudget) -> String {
    match layout {
        Layout::Shared => shared_start(budget),
        Layout::Puzzle => format!(
            "********A New Puzzle Starts, You can Make {} Queries Before Answering Each Question. \
             And Then You Have {} Chances for Answering. Output the Value Only.********",
            budget.exploration_turns, budget.shots_per_sample
        ),
        Layout::Game => format!(
            "********Exploration Phase Starts, We wll Play the Game for {} Times. Your Actions Will Not Be \
             Recorded, and Your Score Does Not Matter.**********",
            budget.exploration_turns
        ),
    }
}

pub fn exploration_round(turn: u32, total: u32) -> String {
    format!("***Exploration Round <{turn}/{total}> Start***")
}

pub fn evaluation_opening(layout: Layout, budget: &TurnBudget, attempt: u32) -> String {
    let s = budget.shots_per_sample;
    match layout {
        Layout::Shared => format!("********Evaluation Starts, You Have {s} Chances for Answering Each Question********"),
        Layout::Puzzle => {
            format!("********Evaluation Starts, You Have {s} Chances for Answering, Please Output the Answer DIRECTLY.********")
        }
        Layout::Game => format!(
            "********Evaluation Phase Starts, We Will Play the Game for {s} Time. Now is the {attempt} time. \
             The highest score Will Be Recorded.**********"
        ),
    }
}

pub fn ask(question: &str) -> String {
    format!("Now answer the question: {question}")
}

pub fn wrong_retry(left: u32) -> String {
    format!("Your answer is wrong. You have {left} more chance(s) for this question.")
}

pub fn release_header() -> &'static str {
    "The feedback of all your queries in this exploration stage is listed below."
}

pub fn release_entry(n: usize, query: &str, observation: &str) -> String {
    format!("[Query {n}] {query}\n[Feedback {n}] {observation}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn game_intro_names_the_game() {
        let t = introduction(Family::Gsi, "cards-ascending-10", "Both players hold cards.");
        assert!(t.contains("Now Let's Play the Game cards-ascending-10, the Description Is that Both players hold cards."));
        assert!(!t.contains("{description}"));
    }

    #[test]
    fn banner_counts_down() {
        assert_eq!(turn_banner(1, 6), "<Current Turn: 1, 5 Turns Remaining>");
        assert_eq!(turn_banner(6, 6), "<Current Turn: 6, 0 Turns Remaining>");
    }
}
