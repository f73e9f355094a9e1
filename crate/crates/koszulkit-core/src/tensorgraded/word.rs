//! Words over a finite alphabet and their positions in the word basis of `V^(n)`.
//!
//! Letters are generator indices in declaration order. The word basis of `V^(n)` is
//! ordered lexicographically, which makes the index of a word its base-`d` expansion with
//! the first letter most significant.

use crate::error::{Error, Result};

/// A generator index.
pub type Letter = u8;

/// A word: a sequence of generator indices.
pub type Word = Vec<Letter>;

/// `d^n`, or `None` on overflow.
pub fn checked_pow(d: usize, n: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..n {
        acc = acc.checked_mul(d)?;
    }
    Some(acc)
}

/// `d^n`, panicking on overflow. Callers bound `n` through the ambient budget first.
pub fn pow(d: usize, n: usize) -> usize {
    checked_pow(d, n).expect("ambient dimension overflows usize")
}

/// Position of `w` in the lexicographic word basis of `V^(|w|)`.
pub fn word_index(w: &[Letter], d: usize) -> usize {
    w.iter().fold(0usize, |acc, &l| acc * d + l as usize)
}

/// The word of length `len` at position `idx`.
pub fn word_at(mut idx: usize, len: usize, d: usize) -> Word {
    let mut w = vec![0; len];
    for k in (0..len).rev() {
        w[k] = (idx % d) as Letter;
        idx /= d;
    }
    w
}

/// Reversal of the word at position `idx` among words of length `len`.
pub fn reversed_index(idx: usize, len: usize, d: usize) -> usize {
    let mut w = word_at(idx, len, d);
    w.reverse();
    word_index(&w, d)
}

/// Renders a word with generator names; the empty word is written `1`.
pub fn format_word(w: &[Letter], names: &[String]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter().map(|&l| names[l as usize].as_str()).collect()
}

/// Splits `s` into generator names by longest match.
pub fn parse_word(s: &str, names: &[String]) -> Result<Word> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let best = names
            .iter()
            .enumerate()
            .filter(|(_, n)| !n.is_empty() && rest.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len());
        match best {
            Some((i, n)) => {
                out.push(i as Letter);
                rest = &rest[n.len()..];
            }
            None => {
                return Err(Error::Parse(format!(
                    "word '{s}' uses an undeclared generator near '{rest}'"
                )))
            }
        }
    }
    Ok(out)
}
