//! Reduced words in the free group on two generators `x`, `y`.
//!
//! A [`Word`] is stored as signed run-length blocks `(generator, exponent)`
//! with cancellation applied at block boundaries as blocks are pushed, so a
//! power such as `x^(q+1)` costs one block instead of `q+1` letters. The
//! semantics are always those of the flat letter sequence: [`Word::len`] is
//! the number of letters and equality is equality of reduced forms.
//!
//! Text form is whitespace-separated `generator^exponent` tokens, e.g.
//! `x^3 y^-1 x`; exponent 1 is written bare and the identity is `1`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X,
    Y,
}

impl Generator {
    pub fn symbol(self) -> char {
        match self {
            Generator::X => 'x',
            Generator::Y => 'y',
        }
    }
}

/// A single letter of the flat sequence. The declaration order is the
/// enumeration order used by [`enumerate_reduced`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    XInv,
    Y,
    YInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::X, Letter::XInv, Letter::Y, Letter::YInv];

    pub fn generator(self) -> Generator {
        match self {
            Letter::X | Letter::XInv => Generator::X,
            Letter::Y | Letter::YInv => Generator::Y,
        }
    }

    pub fn exponent(self) -> i64 {
        match self {
            Letter::X | Letter::Y => 1,
            Letter::XInv | Letter::YInv => -1,
        }
    }

    pub fn inverse(self) -> Letter {
        match self {
            Letter::X => Letter::XInv,
            Letter::XInv => Letter::X,
            Letter::Y => Letter::YInv,
            Letter::YInv => Letter::Y,
        }
    }

    fn from_parts(g: Generator, positive: bool) -> Letter {
        match (g, positive) {
            (Generator::X, true) => Letter::X,
            (Generator::X, false) => Letter::XInv,
            (Generator::Y, true) => Letter::Y,
            (Generator::Y, false) => Letter::YInv,
        }
    }
}

/// Largest exponent magnitude accepted by the text parser.
pub const MAX_PARSED_EXPONENT: i64 = 1 << 40;
/// Largest total letter count accepted by the text parser.
pub const MAX_PARSED_LENGTH: u64 = 1 << 48;

/// A freely reduced word in F(x, y).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    blocks: Vec<(Generator, i64)>,
    len: u64,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn x() -> Word {
        Word::generator_power(Generator::X, 1)
    }

    pub fn y() -> Word {
        Word::generator_power(Generator::Y, 1)
    }

    pub fn generator_power(g: Generator, e: i64) -> Word {
        let mut w = Word::identity();
        w.push_block(g, e);
        w
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut w = Word::identity();
        for l in letters {
            w.push_block(l.generator(), l.exponent());
        }
        w
    }

    /// Reduces a sequence of signed blocks; zero exponents are allowed.
    pub fn from_blocks<I: IntoIterator<Item = (Generator, i64)>>(blocks: I) -> Word {
        let mut w = Word::identity();
        for (g, e) in blocks {
            w.push_block(g, e);
        }
        w
    }

    /// Appends `g^e`, cancelling against the current last block.
    pub fn push_block(&mut self, g: Generator, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.blocks.last_mut() {
            if last.0 == g {
                let merged = last.1.checked_add(e).expect("word exponent overflow");
                self.len = self.len - last.1.unsigned_abs() + merged.unsigned_abs();
                if merged == 0 {
                    self.blocks.pop();
                } else {
                    last.1 = merged;
                }
                return;
            }
        }
        self.blocks.push((g, e));
        self.len += e.unsigned_abs();
    }

    fn push_word(&mut self, other: &Word) {
        for &(g, e) in &other.blocks {
            self.push_block(g, e);
        }
    }

    fn push_inverse(&mut self, other: &Word) {
        for &(g, e) in other.blocks.iter().rev() {
            self.push_block(g, -e);
        }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Same as [`Word::is_identity`].
    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn blocks(&self) -> &[(Generator, i64)] {
        &self.blocks
    }

    /// The flat letter sequence.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.blocks
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n(Letter::from_parts(g, e > 0), e.unsigned_abs() as usize))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.push_word(other);
        w
    }

    pub fn inverse(&self) -> Word {
        let mut w = Word::identity();
        w.push_inverse(self);
        w
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        let mut w = a.clone();
        w.push_word(b);
        w.push_inverse(a);
        w.push_inverse(b);
        w
    }

    /// `t w t^-1`.
    pub fn conjugate_by(&self, t: &Word) -> Word {
        let mut w = t.clone();
        w.push_word(self);
        w.push_inverse(t);
        w
    }

    /// Image under the endomorphism `x -> u`, `y -> v`.
    pub fn substitute(&self, u: &Word, v: &Word) -> Word {
        let images = [PowerPlan::new(u), PowerPlan::new(v)];
        let mut out = Word::identity();
        for &(g, e) in &self.blocks {
            let plan = match g {
                Generator::X => &images[0],
                Generator::Y => &images[1],
            };
            plan.push_power(&mut out, e);
        }
        out
    }

    /// `w^e`. For a single-block cyclic core the exponent is scaled instead of
    /// repeating letters.
    pub fn pow(&self, e: u64) -> Word {
        let mut out = Word::identity();
        let e = i64::try_from(e).expect("power exponent overflow");
        PowerPlan::new(self).push_power(&mut out, e);
        out
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.blocks.first(), self.blocks.last()) {
            (Some(a), Some(b)) if self.blocks.len() > 1 && a.0 == b.0 => (a.1 > 0) == (b.1 > 0),
            _ => true,
        }
    }

    /// Splits `w = conjugator * core * conjugator^-1` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut blocks: std::collections::VecDeque<(Generator, i64)> = self.blocks.iter().copied().collect();
        let mut conj = Word::identity();
        while blocks.len() > 1 {
            let (fg, fe) = blocks[0];
            let (lg, le) = blocks[blocks.len() - 1];
            if fg != lg || (fe > 0) == (le > 0) {
                break;
            }
            let k = fe.abs().min(le.abs());
            let step = k * fe.signum();
            conj.push_block(fg, step);
            blocks[0].1 -= step;
            let last = blocks.len() - 1;
            blocks[last].1 += step;
            if blocks[last].1 == 0 {
                blocks.pop_back();
            }
            if blocks[0].1 == 0 {
                blocks.pop_front();
            }
        }
        (Word::from_blocks(blocks), conj)
    }

    /// Rotates the letter sequence left by `k` (negative `k` rotates right).
    pub fn cyclic_permutation(&self, k: i64) -> Result<Word> {
        if !self.is_cyclically_reduced() {
            return Err(Error::invalid(format!("cyclic permutation needs a cyclically reduced word, got {self}")));
        }
        if self.is_identity() {
            return Ok(Word::identity());
        }
        let n = self.len as i128;
        let mut shift = (k as i128).rem_euclid(n) as u64;
        let mut head = Word::identity();
        let mut idx = 0;
        while shift > 0 {
            let (g, e) = self.blocks[idx];
            let a = e.unsigned_abs();
            if a <= shift {
                head.push_block(g, e);
                shift -= a;
                idx += 1;
            } else {
                let part = shift as i64 * e.signum();
                head.push_block(g, part);
                let mut tail = Word::identity();
                tail.push_block(g, e - part);
                for &(g2, e2) in &self.blocks[idx + 1..] {
                    tail.push_block(g2, e2);
                }
                tail.push_word(&head);
                return Ok(tail);
            }
        }
        let mut tail = Word::from_blocks(self.blocks[idx..].iter().copied());
        tail.push_word(&head);
        Ok(tail)
    }

    /// The generator this word is a power of, if it is one.
    pub fn basis_power(&self) -> Option<Generator> {
        match self.blocks.as_slice() {
            [(g, _)] => Some(*g),
            _ => None,
        }
    }
}

/// Precomputed cyclic decomposition used to raise a word to many powers.
struct PowerPlan {
    conj: Word,
    core: Word,
}

impl PowerPlan {
    fn new(w: &Word) -> PowerPlan {
        let (core, conj) = w.cyclic_reduce();
        PowerPlan { conj, core }
    }

    fn push_power(&self, out: &mut Word, e: i64) {
        if e == 0 || self.core.is_identity() {
            return;
        }
        out.push_word(&self.conj);
        if let Some(g) = self.core.basis_power() {
            let base = self.core.blocks[0].1;
            out.push_block(g, base.checked_mul(e).expect("word exponent overflow"));
        } else if e > 0 {
            for _ in 0..e {
                out.push_word(&self.core);
            }
        } else {
            for _ in 0..e.unsigned_abs() {
                out.push_inverse(&self.core);
            }
        }
        out.push_inverse(&self.conj);
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("1");
        }
        for (i, &(g, e)) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if e == 1 {
                write!(f, "{}", g.symbol())?;
            } else {
                write!(f, "{}^{}", g.symbol(), e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut w = Word::identity();
        let mut total: u64 = 0;
        let mut any = false;
        for tok in s.split_whitespace() {
            any = true;
            if tok == "1" {
                continue;
            }
            let mut chars = tok.chars();
            let g = match chars.next() {
                Some('x') => Generator::X,
                Some('y') => Generator::Y,
                _ => return Err(Error::parse(format!("bad word token {tok:?}"))),
            };
            let rest = chars.as_str();
            let e = if rest.is_empty() {
                1
            } else {
                let digits = rest.strip_prefix('^').ok_or_else(|| Error::parse(format!("bad word token {tok:?}")))?;
                let body = digits.strip_prefix('-').unwrap_or(digits);
                if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::parse(format!("bad exponent in {tok:?}")));
                }
                let e: i64 = digits.parse().map_err(|_| Error::parse(format!("exponent out of range in {tok:?}")))?;
                if e.abs() > MAX_PARSED_EXPONENT {
                    return Err(Error::parse(format!("exponent too large in {tok:?}")));
                }
                e
            };
            total += e.unsigned_abs();
            if total > MAX_PARSED_LENGTH {
                return Err(Error::parse("word too long"));
            }
            w.push_block(g, e);
        }
        if !any {
            return Err(Error::parse("empty word string (the identity is written 1)"));
        }
        Ok(w)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a word file: one word per line, blank lines and `#` comments skipped.
pub fn parse_word_lines(text: &str) -> Result<Vec<Word>> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(str::parse).collect()
}

/// Number of reduced words of length exactly `len`.
pub fn count_reduced_of_length(len: u32) -> u128 {
    if len == 0 {
        1
    } else {
        4 * 3u128.pow(len - 1)
    }
}

/// Number of reduced words of length `1..=max_len`.
pub fn count_reduced_up_to(max_len: u32) -> u128 {
    (1..=max_len).map(count_reduced_of_length).sum()
}

/// Every reduced word of length `1..=max_len`, by length and then in
/// letter order `x, x^-1, y, y^-1`.
pub fn enumerate_reduced(max_len: u32) -> ReducedWords {
    ReducedWords { max_len: max_len as usize, letters: Vec::new(), started: false }
}

/// Iterator returned by [`enumerate_reduced`].
#[derive(Debug, Clone)]
pub struct ReducedWords {
    max_len: usize,
    letters: Vec<Letter>,
    started: bool,
}

impl ReducedWords {
    fn first_valid(prev: Option<Letter>) -> Letter {
        Letter::ALL.into_iter().find(|&l| Some(l.inverse()) != prev).expect("four letters exclude at most one")
    }

    fn next_valid(prev: Option<Letter>, cur: Letter) -> Option<Letter> {
        Letter::ALL.into_iter().filter(|&l| l > cur).find(|&l| Some(l.inverse()) != prev)
    }

    fn fill_from(&mut self, start: usize) {
        for i in start..self.letters.len() {
            let prev = if i == 0 { None } else { Some(self.letters[i - 1]) };
            self.letters[i] = Self::first_valid(prev);
        }
    }

    fn advance(&mut self) -> bool {
        let mut i = self.letters.len();
        while i > 0 {
            i -= 1;
            let prev = if i == 0 { None } else { Some(self.letters[i - 1]) };
            if let Some(l) = Self::next_valid(prev, self.letters[i]) {
                self.letters[i] = l;
                self.fill_from(i + 1);
                return true;
            }
        }
        if self.letters.len() >= self.max_len {
            return false;
        }
        self.letters.push(Letter::X);
        self.fill_from(0);
        true
    }
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if !self.started {
            self.started = true;
            if self.max_len == 0 {
                return None;
            }
            self.letters.push(Letter::X);
        } else if !self.advance() {
            return None;
        }
        Some(Word::reduce(self.letters.iter().copied()))
    }
}
