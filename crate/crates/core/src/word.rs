//! Words over the signed alphabet `{0+, 0-, ..., k+, k-}` and the pair of
//! polarity counting forms defined on their Parikh vectors.
//!
//! The two forms `lambda_plus` / `lambda_minus` count, for a word produced by
//! the signed Hammersley process, the insertions of each polarity that never
//! decremented another letter. Each letter of polarity `s` contributes `+1`
//! to the form of polarity `s`; a letter of value `v < k` and polarity `s`
//! contributes `-(k - v)` to the opposite form. Letters of value `k`
//! contribute nothing to the opposite form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sign attached to letters, permutation entries, and heap slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Polarity {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Polarity {
    pub fn flip(self) -> Self {
        match self {
            Polarity::Plus => Polarity::Minus,
            Polarity::Minus => Polarity::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Polarity::Plus => '+',
            Polarity::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '+' => Some(Polarity::Plus),
            '-' => Some(Polarity::Minus),
            _ => None,
        }
    }

    /// Index used by count tables: plus = 0, minus = 1.
    pub(crate) fn index(self) -> usize {
        match self {
            Polarity::Plus => 0,
            Polarity::Minus => 1,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// One letter `v^s`: a value in `0..=k` together with a polarity.
///
/// Letters order by value first, then `+` before `-`, which fixes the
/// lexicographic order used for word listings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SignedLetter {
    pub value: u32,
    pub polarity: Polarity,
}

impl SignedLetter {
    pub fn new(value: u32, polarity: Polarity) -> Self {
        SignedLetter { value, polarity }
    }

    /// Contribution of this letter to the counting form of polarity `form`,
    /// for ambient arity `k`.
    pub fn lambda_delta(&self, form: Polarity, k: u32) -> i64 {
        if self.polarity == form {
            1
        } else {
            -i64::from(k - self.value)
        }
    }

    fn parse_token(token: &str, k: u32) -> Result<Self> {
        let malformed = || Error::MalformedToken {
            token: token.to_string(),
        };
        let (digits, sign) = token.split_at(token.len().saturating_sub(1));
        let polarity = sign
            .chars()
            .next()
            .and_then(Polarity::from_char)
            .ok_or_else(malformed)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let value: u32 = digits.parse().map_err(|_| malformed())?;
        if value > k {
            return Err(Error::ValueOutOfRange { value, k });
        }
        Ok(SignedLetter { value, polarity })
    }
}

impl fmt::Display for SignedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, self.polarity)
    }
}

/// A finite word over the signed alphabet of arity `k`.
///
/// Every word carries its arity; operations that combine words require equal
/// arities. Words order lexicographically by their letter sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<SignedLetter>,
    k: u32,
}

impl Word {
    pub fn new(letters: Vec<SignedLetter>, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroArity);
        }
        for letter in &letters {
            if letter.value > k {
                return Err(Error::ValueOutOfRange {
                    value: letter.value,
                    k,
                });
            }
        }
        Ok(Word { letters, k })
    }

    pub fn empty(k: u32) -> Self {
        Word {
            letters: Vec::new(),
            k,
        }
    }

    /// Parses whitespace- or comma-separated tokens of the form
    /// `<decimal><sign>`, e.g. `"2+ 1-"` or `"10+,0-"`.
    pub fn parse(text: &str, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroArity);
        }
        let letters = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| SignedLetter::parse_token(t, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word { letters, k })
    }

    pub fn arity(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[SignedLetter] {
        &self.letters
    }

    pub fn first(&self) -> Option<SignedLetter> {
        self.letters.first().copied()
    }

    /// The prefix consisting of the first `len` letters.
    pub fn prefix(&self, len: usize) -> Word {
        Word {
            letters: self.letters[..len].to_vec(),
            k: self.k,
        }
    }

    pub(crate) fn letters_mut(&mut self) -> &mut Vec<SignedLetter> {
        &mut self.letters
    }

    pub fn counts(&self) -> ParikhCounts {
        let mut counts = ParikhCounts::zero(self.k);
        for letter in &self.letters {
            counts.table[letter.value as usize][letter.polarity.index()] += 1;
        }
        counts
    }

    pub fn lambda(&self, form: Polarity) -> i64 {
        self.counts().lambda(form)
    }

    pub(crate) fn check_arity(&self, k: u32) -> Result<()> {
        if self.k == k {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                expected: k,
                actual: self.k,
            })
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for letter in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{letter}")?;
            first = false;
        }
        Ok(())
    }
}

/// Per-letter occurrence counts of a word: `count(v, s)` is the number of
/// letters `v^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParikhCounts {
    k: u32,
    table: Vec<[u64; 2]>,
}

impl ParikhCounts {
    pub fn zero(k: u32) -> Self {
        ParikhCounts {
            k,
            table: vec![[0, 0]; k as usize + 1],
        }
    }

    pub fn arity(&self) -> u32 {
        self.k
    }

    pub fn count(&self, value: u32, polarity: Polarity) -> u64 {
        self.table[value as usize][polarity.index()]
    }

    /// Occurrences of value `value` of either polarity.
    pub fn count_value(&self, value: u32) -> u64 {
        let row = self.table[value as usize];
        row[0] + row[1]
    }

    pub fn total(&self) -> u64 {
        self.table.iter().map(|row| row[0] + row[1]).sum()
    }

    /// The counting form of the given polarity: letters of that polarity each
    /// contribute `+1`; a letter `v^s` of the opposite polarity contributes
    /// `-(k - v)`.
    pub fn lambda(&self, form: Polarity) -> i64 {
        let same: i64 = self
            .table
            .iter()
            .map(|row| row[form.index()] as i64)
            .sum();
        let opposite: i64 = self
            .table
            .iter()
            .enumerate()
            .map(|(value, row)| i64::from(self.k - value as u32) * row[form.flip().index()] as i64)
            .sum();
        same - opposite
    }
}

/// All words of exactly `len` letters over the arity-`k` alphabet, in
/// lexicographic order.
pub fn words_of_length(k: u32, len: usize) -> impl Iterator<Item = Word> {
    let letter_count = 2 * (k as usize + 1);
    let mut odometer = vec![0usize; len];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let letters = odometer
            .iter()
            .map(|&code| SignedLetter {
                value: (code / 2) as u32,
                polarity: if code % 2 == 0 {
                    Polarity::Plus
                } else {
                    Polarity::Minus
                },
            })
            .collect();
        let word = Word { letters, k };
        done = true;
        for slot in odometer.iter_mut().rev() {
            *slot += 1;
            if *slot < letter_count {
                done = false;
                break;
            }
            *slot = 0;
        }
        done |= len == 0;
        Some(word)
    })
}

/// Parses a word; see [`Word::parse`].
pub fn parse_word(text: &str, k: u32) -> Result<Word> {
    Word::parse(text, k)
}

/// Formats a word as space-separated tokens; round-trips with [`parse_word`].
pub fn format_word(w: &Word) -> String {
    w.to_string()
}

/// Parikh counts of a word; see [`Word::counts`].
pub fn counts(w: &Word) -> ParikhCounts {
    w.counts()
}

/// Positive counting form of a word (may be negative for words the process
/// cannot produce).
pub fn lambda_plus(w: &Word) -> i64 {
    w.lambda(Polarity::Plus)
}

/// Negative counting form; polarity mirror of [`lambda_plus`].
pub fn lambda_minus(w: &Word) -> i64 {
    w.lambda(Polarity::Minus)
}
