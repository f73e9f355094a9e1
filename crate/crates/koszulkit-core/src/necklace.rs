//! Cyclic binary words and the counting functions used for Hochschild homology bases.
//!
//! Words are over `{x, y}` with `x < y`. The routines reproduce a reference program
//! operation for operation:
//!
//! - the normal form of a word is its lexicographically least rotation;
//! - `delete` maps a list of words to the sorted union of the normal forms of the words and
//!   of their `x ↔ y` swaps;
//! - `ker(n, t)` takes every composition of `n - t - 1` into parts `<= t` whose last part is
//!   below `t` or whose part count is even, turns it into alternating blocks starting with
//!   `y`, wraps it as `x^t · blocks · y` and applies `delete`;
//! - `generators(n)` concatenates `ker(n, t)` for `t = 2..=n-2`;
//! - cyclic containment rotates `w` right by `0..|v|` and looks for `v` as a factor;
//! - `predim2` and `predim3` count padded words avoiding `x⁴` and `y⁴` as linear factors.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Letter `x`.
pub const X: u8 = 0;
/// Letter `y`.
pub const Y: u8 = 1;

/// Longest word length the exhaustive routines accept.
pub const MAX_LENGTH: usize = 40;

/// A binary word with its minimal rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord {
    letters: Vec<u8>,
    canonical: Vec<u8>,
}

impl CyclicWord {
    /// Wraps a word over `{0 = x, 1 = y}`.
    pub fn new(letters: Vec<u8>) -> Self {
        let canonical = normal_form(&letters);
        CyclicWord { letters, canonical }
    }

    /// Parses a string over `x` and `y`.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::new(parse(s)?))
    }

    /// The letters as given.
    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// The minimal rotation.
    pub fn canonical(&self) -> &[u8] {
        &self.canonical
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.letters))
    }
}

/// Parses a string over `x` and `y`.
pub fn parse(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            'x' => Ok(X),
            'y' => Ok(Y),
            other => Err(Error::Parse(format!("letter '{other}' is not x or y"))),
        })
        .collect()
}

/// Renders a word over `{x, y}`.
pub fn render(w: &[u8]) -> String {
    w.iter().map(|&l| if l == X { 'x' } else { 'y' }).collect()
}

fn check_length(n: usize) -> Result<()> {
    if n > MAX_LENGTH {
        return Err(Error::Budget(format!("word length {n} exceeds the enumeration limit {MAX_LENGTH}")));
    }
    Ok(())
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n < 1 {
        return Err(Error::Domain("euler_phi needs n >= 1".into()));
    }
    let (mut m, mut out, mut p) = (n, n, 2u64);
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    Ok(out)
}

/// `ρ(n) = (1/n) Σ_{m | n} φ(m) 2^{n/m}`, the number of binary necklaces of length `n`.
pub fn rho(n: u64) -> Result<BigUint> {
    if n < 1 {
        return Err(Error::Domain("rho needs n >= 1".into()));
    }
    let mut total = BigUint::zero();
    for m in (1..=n).filter(|m| n % m == 0) {
        total += BigUint::from(euler_phi(m)?) << ((n / m) as usize);
    }
    let nn = BigUint::from(n);
    debug_assert!((&total % &nn).is_zero());
    Ok(total / nn)
}

fn rotate_right(w: &[u8], k: usize) -> Vec<u8> {
    let len = w.len();
    if len == 0 {
        return Vec::new();
    }
    let k = k % len;
    let mut out = Vec::with_capacity(len);
    out.extend_from_slice(&w[len - k..]);
    out.extend_from_slice(&w[..len - k]);
    out
}

/// The lexicographically least rotation of `w`.
pub fn normal_form(w: &[u8]) -> Vec<u8> {
    (0..w.len().max(1)).map(|k| rotate_right(w, k)).min().unwrap_or_default()
}

fn swap(w: &[u8]) -> Vec<u8> {
    w.iter().map(|&l| 1 - l).collect()
}

/// Sorted union of the normal forms of the words and of their letter swaps.
pub fn delete(words: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let set: BTreeSet<Vec<u8>> =
        words.iter().map(|w| normal_form(w)).chain(words.iter().map(|w| normal_form(&swap(w)))).collect();
    set.into_iter().collect()
}

/// Whether `v` is a factor of `w`.
pub fn linear_contains(w: &[u8], v: &[u8]) -> bool {
    v.is_empty() || w.windows(v.len()).any(|win| win == v)
}

/// Whether some rotation of `w` contains `v` as a factor.
pub fn cyclic_contains(w: &[u8], v: &[u8]) -> bool {
    if v.is_empty() {
        return true;
    }
    if v.len() > w.len() {
        return false;
    }
    (0..v.len()).any(|k| linear_contains(&rotate_right(w, k), v))
}

fn compositions(d: usize, t: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if d == 0 {
        out.push(prefix.clone());
        return;
    }
    for p in 1..=t.min(d) {
        prefix.push(p);
        compositions(d - p, t, prefix, out);
        prefix.pop();
    }
}

/// The family `ker(n, t)` of the reference program.
pub fn ker(n: usize, t: usize) -> Vec<Vec<u8>> {
    if t < 1 || n < t + 1 {
        return Vec::new();
    }
    let d = n - t - 1;
    let mut comps = Vec::new();
    compositions(d, t, &mut Vec::new(), &mut comps);
    let words: Vec<Vec<u8>> = comps
        .into_iter()
        .filter(|c| c.last().is_some_and(|&last| last < t) || c.len() % 2 == 0)
        .map(|c| {
            let mut w = vec![X; t];
            for (k, &part) in c.iter().enumerate() {
                let letter = if k % 2 == 0 { Y } else { X };
                w.extend(std::iter::repeat(letter).take(part));
            }
            w.push(Y);
            w
        })
        .collect();
    delete(&words)
}

/// Concatenation of `ker(n, t)` for `t = 2..=n-2`; empty for `n < 4`.
pub fn generators(n: usize) -> Result<Vec<CyclicWord>> {
    check_length(n)?;
    if n < 4 {
        return Ok(Vec::new());
    }
    Ok((2..=n - 2).flat_map(|t| ker(n, t)).map(CyclicWord::new).collect())
}

/// `|generators(n)|`.
pub fn predim1(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::Domain("predim1 needs n >= 3".into()));
    }
    Ok(generators(n)?.len())
}

/// Leading word of the degree-`a` relation: `x² · w · y²` with `w` alternating.
///
/// The alternating block of length `a - 4` reads `x y x y …`; when its length is even it is
/// rotated right by one, so that it ends in `x`.
pub fn a_pattern(a: usize) -> Result<Vec<u8>> {
    if a < 4 {
        return Err(Error::Domain(format!("the a-pattern needs a >= 4, got {a}")));
    }
    let mut block: Vec<u8> = (0..a - 4).map(|k| if k % 2 == 0 { X } else { Y }).collect();
    if block.len() % 2 == 0 {
        block = rotate_right(&block, 1);
    }
    let mut w = vec![X, X];
    w.extend(block);
    w.extend([Y, Y]);
    Ok(w)
}

/// Leading word of the degree-`b` relation: `x² y^{b-4} x y`.
pub fn b_pattern(b: usize) -> Result<Vec<u8>> {
    if b < 4 {
        return Err(Error::Domain(format!("the b-pattern needs b >= 4, got {b}")));
    }
    let mut w = vec![X, X];
    w.extend(std::iter::repeat(Y).take(b - 4));
    w.extend([X, Y]);
    Ok(w)
}

/// Words of `generators(n)` cyclically avoiding both patterns of `(a, b)`.
pub fn predim0(n: usize, a: usize, b: usize) -> Result<usize> {
    if a >= b {
        return Err(Error::Domain(format!("predim0 needs a < b, got a={a}, b={b}")));
    }
    let (pa, pb) = (a_pattern(a)?, b_pattern(b)?);
    Ok(generators(n)?
        .iter()
        .filter(|w| !(cyclic_contains(w.letters(), &pa) || cyclic_contains(w.letters(), &pb)))
        .count())
}

/// Words of `generators(n)` cyclically avoiding `x⁴` and `y⁴`.
pub fn ppredim0(n: usize) -> Result<usize> {
    let (x4, y4) = ([X; 4], [Y; 4]);
    Ok(generators(n)?
        .iter()
        .filter(|w| !(cyclic_contains(w.letters(), &x4) || cyclic_contains(w.letters(), &y4)))
        .count())
}

fn count_padded(n: usize, head: usize, tail: usize) -> Result<u64> {
    check_length(n)?;
    let free = n - head - tail;
    let (x4, y4) = ([X; 4], [Y; 4]);
    let mut good = 0u64;
    let mut w = vec![X; n];
    for bits in 0..(1u64 << free) {
        for k in 0..free {
            w[head + k] = ((bits >> (free - 1 - k)) & 1) as u8;
        }
        if !(linear_contains(&w, &x4) || linear_contains(&w, &y4)) {
            good += 1;
        }
    }
    Ok(good)
}

/// Words `x · w · x³` with `|w| = n - 4` avoiding `x⁴` and `y⁴` as linear factors.
pub fn predim2(n: usize) -> Result<u64> {
    if n < 5 {
        return Err(Error::Domain("predim2 needs n >= 5".into()));
    }
    count_padded(n, 1, 3)
}

/// Words `x³ · w · x³` with `|w| = n - 6` avoiding `x⁴` and `y⁴` as linear factors.
pub fn predim3(n: usize) -> Result<u64> {
    if n < 7 {
        return Err(Error::Domain("predim3 needs n >= 7".into()));
    }
    count_padded(n, 3, 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<u8> {
        parse(s).unwrap()
    }

    #[test]
    fn rho_values() {
        let r: Vec<u64> = (1..=5).map(|n| rho(n).unwrap().try_into().unwrap()).collect();
        assert_eq!(r, vec![2, 3, 4, 6, 8]);
        assert!(rho(0).is_err());
        assert_eq!(euler_phi(12).unwrap(), 4);
    }

    #[test]
    fn containment() {
        assert!(cyclic_contains(&w("xyx"), &w("xx")));
        assert!(!cyclic_contains(&w("xyxy"), &w("xx")));
        assert!(cyclic_contains(&w("xy"), &[]));
        assert!(!cyclic_contains(&w("xy"), &w("xyx")));
    }

    #[test]
    fn generator_lists() {
        let g: Vec<String> = generators(5).unwrap().iter().map(|c| c.to_string()).collect();
        assert_eq!(g, vec!["xxyxy", "xyxyy", "xxxyy", "xxyyy"]);
        assert_eq!(ker(4, 2), vec![w("xxyy")]);
        assert!(generators(3).unwrap().is_empty());
    }

    #[test]
    fn patterns() {
        assert_eq!(render(&a_pattern(4).unwrap()), "xxyy");
        assert_eq!(render(&a_pattern(5).unwrap()), "xxxyy");
        assert_eq!(render(&a_pattern(6).unwrap()), "xxyxyy");
        assert_eq!(render(&b_pattern(5).unwrap()), "xxyxy");
        assert_eq!(render(&b_pattern(7).unwrap()), "xxyyyxy");
    }

    #[test]
    fn padded_counts() {
        assert_eq!(predim2(5).unwrap(), 1);
        assert_eq!(predim3(7).unwrap(), 1);
        assert!(predim2(4).is_err());
    }
}
