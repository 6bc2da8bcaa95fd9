//! Named catalog circuits. None of them depend on the seed.

use alloc::vec::Vec;

use super::circuit::{wire, Builder, Circuit, Source};
use crate::error::Error;

const RANDOM_SMALL_4: &str = include_str!("../../data/random-small-4.json");

pub const NAMES: [&str; 8] = [
    "swap-9",
    "random-small-4",
    "consequence-8",
    "xor-sequence-8",
    "palindrome-8",
    "and-tree-8",
    "add-10",
    "compare-10",
];

pub fn build_named(name: &str) -> Result<Circuit, Error> {
    match name {
        "swap-9" => Ok(swap()),
        "random-small-4" => Circuit::from_json(RANDOM_SMALL_4),
        "consequence-8" => Ok(consequence()),
        "xor-sequence-8" => Ok(xor_sequence()),
        "palindrome-8" => Ok(palindrome()),
        "and-tree-8" => Ok(and_tree()),
        "add-10" => Ok(add()),
        "compare-10" => Ok(compare()),
        _ => Err(Error::NotFound(name.into())),
    }
}

/// Copies as `w AND w`: gates 1..4 carry wires 6..9, gates 5..9 wires 1..5.
fn swap() -> Circuit {
    let mut b = Builder::new(9);
    for w in (6..=9).chain(1..=5) {
        b.and(wire(w), wire(w));
    }
    b.finish()
}

fn consequence() -> Circuit {
    let mut c = Builder::new(8);
    let pairs: Vec<Source> = (2..=8).map(|i| c.and(wire(i - 1), wire(i))).collect();
    let mut s = pairs[0];
    for p in &pairs[1..] {
        s = c.or(*p, s);
    }
    c.finish()
}

fn xor_sequence() -> Circuit {
    let mut c = Builder::new(8);
    let mut s = wire(1);
    for i in 2..=8 {
        s = c.xor(s, wire(i));
    }
    c.finish()
}

fn palindrome() -> Circuit {
    let n = 8;
    let mut c = Builder::new(n);
    let mut checks = Vec::new();
    for i in 1..=n / 2 {
        let mirror = n - i + 1;
        let b = c.and(wire(i), wire(mirror));
        let or = c.or(wire(i), wire(mirror));
        let nor = c.not(or);
        let d = c.or(b, nor);
        let shifted = i + n / 2;
        let e = c.and(wire(i), wire(shifted));
        let f = c.or(wire(i), wire(shifted));
        let nf = c.not(f);
        let g = c.or(e, nf);
        checks.push((d, g));
    }
    let mut s = c.and(checks[0].0, checks[0].1);
    for &(d, g) in &checks[1..] {
        let sd = c.and(s, d);
        s = c.and(sd, g);
    }
    c.finish()
}

fn and_tree() -> Circuit {
    let mut c = Builder::new(8);
    let g1 = c.and(wire(1), wire(2));
    let g2 = c.and(wire(3), wire(4));
    let g3 = c.and(wire(5), wire(6));
    let g4 = c.and(wire(7), wire(8));
    let high = c.and(g3, g4);
    let low = c.and(g1, g2);
    c.and(low, high);
    c.finish()
}

/// Adds wire 1 to the number written on wires 2..10 (wire 10 is the least
/// significant bit). Per bit: the sum via XOR, then the carry.
fn add() -> Circuit {
    let n = 10;
    let mut c = Builder::new(n);
    let mut carry = wire(1);
    for i in 1..n {
        let a = wire(n - i + 1);
        c.xor(a, carry);
        carry = c.and(a, carry);
    }
    c.finish()
}

/// Compares x = wires 1..5 with y = wires 6..10, x1 most significant. The
/// last two gates are `x > y` and `x < y`.
fn compare() -> Circuit {
    let mut c = Builder::new(10);
    let mut digits = Vec::new();
    for i in 1..=5 {
        let (x, y) = (wire(i), wire(i + 5));
        let ny = c.not(y);
        let gt = c.and(x, ny);
        let nx = c.not(x);
        let lt = c.and(y, nx);
        let any = c.or(gt, lt);
        let eq = c.not(any);
        digits.push((gt, lt, eq));
    }
    let (mut gt, mut lt, _) = digits[4];
    for &(g, l, e) in digits[..4].iter().rev() {
        let carry_gt = c.and(e, gt);
        let carry_lt = c.and(e, lt);
        gt = c.or(g, carry_gt);
        lt = c.or(l, carry_lt);
    }
    c.finish()
}
