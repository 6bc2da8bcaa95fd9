//! Wordle scoring and the hidden-word lists.

use alloc::string::String;
use alloc::vec::Vec;

pub const WORDS_8: &str = include_str!("../../data/words-8.txt");
pub const WORDS_11: &str = include_str!("../../data/words-11.txt");

pub fn word_list(len: usize) -> Vec<&'static str> {
    let src = if len == 11 { WORDS_11 } else { WORDS_8 };
    src.lines().map(str::trim).filter(|w| w.len() == len).collect()
}

/// Two-pass scoring: exact hits first, then misplaced letters while
/// unmatched copies remain in the hidden word.
pub fn feedback(hidden: &str, guess: &str) -> String {
    let h = hidden.as_bytes();
    let g = guess.as_bytes();
    let mut marks = alloc::vec![b'X'; g.len()];
    let mut spare = [0u32; 256];
    for i in 0..g.len() {
        if g[i] == h[i] {
            marks[i] = b'A';
        } else {
            spare[h[i] as usize] += 1;
        }
    }
    for i in 0..g.len() {
        if marks[i] != b'A' && spare[g[i] as usize] > 0 {
            spare[g[i] as usize] -= 1;
            marks[i] = b'M';
        }
    }
    marks.into_iter().map(char::from).collect()
}
