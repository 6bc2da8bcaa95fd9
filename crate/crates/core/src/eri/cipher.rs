//! The cipher catalog. Every cipher takes letters and blank spaces.

use alloc::string::String;
use alloc::vec::Vec;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Cipher {
    Caesar { shift: u8 },
    BaconXY,
    Zigzag { rails: usize },
    Fibonacci,
    IndexShift,
    Substitution { alphabet: &'static str },
    CurveTable { columns: usize },
    SequentialFeedback { seed: char },
    DynamicCurve,
    Vigenere { keyword: &'static str },
    Hill { key: [[u32; 2]; 2] },
    PositionalKeyword { keyword: &'static str },
    Playfair { keyword: &'static str },
}

/// True when the text uses only ASCII letters and blank spaces.
pub fn is_plaintext(text: &str) -> bool {
    text.chars().all(|c| c.is_ascii_alphabetic() || c == ' ')
}

// a=0..z=25, A=26..Z=51
fn lower_first(c: char) -> u32 {
    if c.is_ascii_lowercase() {
        c as u32 - 'a' as u32
    } else {
        c as u32 - 'A' as u32 + 26
    }
}

fn from_lower_first(v: u32) -> char {
    let v = v % 52;
    if v < 26 {
        (b'a' + v as u8) as char
    } else {
        (b'A' + (v - 26) as u8) as char
    }
}

// A=0..Z=25, a=26..z=51
fn upper_first(c: char) -> u32 {
    (lower_first(c) + 26) % 52
}

fn from_upper_first(v: u32) -> char {
    from_lower_first(v + 26)
}

fn alpha_index(c: char) -> u32 {
    c.to_ascii_lowercase() as u32 - 'a' as u32
}

fn shift_case(c: char, by: u32) -> char {
    let base = if c.is_ascii_uppercase() { b'A' } else { b'a' };
    (base + ((alpha_index(c) + by) % 26) as u8) as char
}

/// Applies `f(letter, letter_index)` to letters, leaving spaces in place.
fn per_letter(text: &str, mut f: impl FnMut(char, usize) -> char) -> String {
    let mut i = 0;
    text.chars()
        .map(|c| {
            if c == ' ' {
                c
            } else {
                let out = f(c, i);
                i += 1;
                out
            }
        })
        .collect()
}

fn letters(text: &str) -> Vec<char> {
    text.chars().filter(|c| *c != ' ').collect()
}

impl Cipher {
    pub fn encrypt(&self, text: &str) -> String {
        match *self {
            Cipher::Caesar { shift } => per_letter(text, |c, _| shift_case(c, shift as u32)),
            Cipher::BaconXY => bacon(text),
            Cipher::Zigzag { rails } => zigzag(text, rails),
            Cipher::Fibonacci => {
                let (mut a, mut b) = (1u32, 1u32);
                per_letter(text, |c, _| {
                    let out = from_lower_first(lower_first(c) + a);
                    (a, b) = (b, (a + b) % 52);
                    out
                })
            }
            Cipher::IndexShift => per_letter(text, |c, i| from_lower_first(lower_first(c) + (i % 52) as u32)),
            Cipher::Substitution { alphabet } => per_letter(text, |c, _| {
                let sub = alphabet.as_bytes()[alpha_index(c) as usize] as char;
                if c.is_ascii_uppercase() { sub.to_ascii_uppercase() } else { sub }
            }),
            Cipher::CurveTable { columns } => curve(text, columns),
            Cipher::DynamicCurve => curve(text, letters(text).len() % 3 + 3),
            Cipher::SequentialFeedback { seed } => {
                let mut prev = upper_first(seed);
                per_letter(text, |c, _| {
                    prev = (upper_first(c) + prev) % 52;
                    from_upper_first(prev)
                })
            }
            Cipher::Vigenere { keyword } => {
                let key = keyword.as_bytes();
                per_letter(text, |c, i| {
                    shift_case(c.to_ascii_uppercase(), alpha_index(key[i % key.len()] as char))
                })
            }
            Cipher::Hill { key } => hill(text, key),
            Cipher::PositionalKeyword { keyword } => {
                let key = keyword.as_bytes();
                per_letter(text, |c, i| from_upper_first(upper_first(c) + upper_first(key[i % key.len()] as char)))
            }
            Cipher::Playfair { keyword } => playfair(text, keyword),
        }
    }
}

fn bacon(text: &str) -> String {
    let mut out = String::new();
    for c in letters(text) {
        let idx = alpha_index(c);
        let v = if idx < 13 { idx } else { idx + 6 };
        let (zero, one) = if c.is_ascii_uppercase() { ('X', 'Y') } else { ('x', 'y') };
        for bit in (0..5).rev() {
            out.push(if (v >> bit) & 1 == 1 { one } else { zero });
        }
    }
    out
}

fn zigzag(text: &str, rails: usize) -> String {
    let ls = letters(text);
    if rails < 2 {
        return ls.into_iter().collect();
    }
    let cycle = 2 * (rails - 1);
    let rail = |i: usize| {
        let p = i % cycle;
        if p < rails { p } else { cycle - p }
    };
    let mut out = String::new();
    for r in 0..rails {
        out.extend(ls.iter().enumerate().filter(|(i, _)| rail(*i) == r).map(|(_, c)| *c));
    }
    out
}

// Row-major fill into `columns` columns, then a serpentine column read
// from the last occupied column leftward, the first column read bottom-up.
fn curve(text: &str, columns: usize) -> String {
    let ls = letters(text);
    let n = ls.len();
    let last = n.min(columns);
    let mut groups: Vec<String> = Vec::new();
    for (step, col) in (0..last).rev().enumerate() {
        let mut group: Vec<char> = (col..n).step_by(columns).map(|i| ls[i]).collect();
        if step % 2 == 0 {
            group.reverse();
        }
        groups.push(group.into_iter().collect());
    }
    groups.join(" ")
}

fn hill(text: &str, key: [[u32; 2]; 2]) -> String {
    let mut vals: Vec<u32> = letters(text).into_iter().map(alpha_index).collect();
    if vals.len() % 2 == 1 {
        vals.push(alpha_index('x'));
    }
    let mut enc = Vec::with_capacity(vals.len());
    for pair in vals.chunks(2) {
        for row in key {
            enc.push(((row[0] * pair[0] + row[1] * pair[1]) % 26) as u8);
        }
    }
    let mut enc = enc.into_iter().map(|v| (b'a' + v) as char);
    let mut out: String = text.chars().map(|c| if c == ' ' { ' ' } else { enc.next().unwrap() }).collect();
    out.extend(enc);
    out
}

/// 5×5 grid: keyword letters, then the rest of the alphabet, J folded into I.
pub fn playfair_grid(keyword: &str) -> [u8; 25] {
    let mut grid = [0u8; 25];
    let mut n = 0;
    for c in keyword.bytes().chain(b'A'..=b'Z') {
        let c = match c.to_ascii_uppercase() {
            b'J' => b'I',
            c => c,
        };
        if !grid[..n].contains(&c) {
            grid[n] = c;
            n += 1;
        }
    }
    grid
}

fn playfair(text: &str, keyword: &str) -> String {
    let grid = playfair_grid(keyword);
    let pos = |c: u8| grid.iter().position(|g| *g == c).unwrap();
    let ls: Vec<u8> = letters(text)
        .into_iter()
        .map(|c| match c.to_ascii_uppercase() as u8 {
            b'J' => b'I',
            c => c,
        })
        .collect();
    // X cannot separate an X from itself, so Q fills in that case.
    let filler = |a: u8| if a == b'X' { b'Q' } else { b'X' };
    let mut out = String::new();
    let mut i = 0;
    while i < ls.len() {
        let a = ls[i];
        let b = match ls.get(i + 1) {
            Some(&b) if b != a => {
                i += 2;
                b
            }
            _ => {
                i += 1;
                filler(a)
            }
        };
        let (pa, pb) = (pos(a), pos(b));
        let (ra, ca, rb, cb) = (pa / 5, pa % 5, pb / 5, pb % 5);
        let (x, y) = if ra == rb {
            (ra * 5 + (ca + 1) % 5, rb * 5 + (cb + 1) % 5)
        } else if ca == cb {
            (((ra + 1) % 5) * 5 + ca, ((rb + 1) % 5) * 5 + cb)
        } else {
            (ra * 5 + cb, rb * 5 + ca)
        };
        out.push(grid[x] as char);
        out.push(grid[y] as char);
    }
    out
}
