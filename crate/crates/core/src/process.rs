//! Forward semantics of the signed Hammersley process.
//!
//! A step inserts a letter of value `k` (either polarity) at one of the
//! `|w| + 1` gap positions, then decrements the nearest nonzero letter of the
//! opposite polarity to the right of the insertion. Exhaustive enumeration of
//! all histories gives exact multiplicities and serves as the ground-truth
//! oracle for the recognizer and the reverse-time multiplicity algorithm.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::word::{Polarity, SignedLetter, Word};

/// One insertion: a gap position in `1..=|w|+1` (1 = before the first
/// letter) and the polarity of the inserted value-`k` letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InsertionEvent {
    pub position: usize,
    pub polarity: Polarity,
}

impl InsertionEvent {
    pub fn new(position: usize, polarity: Polarity) -> Self {
        InsertionEvent { position, polarity }
    }
}

/// Which side of the insertion the decrement scan walks.
///
/// The process proper kills to the right; the slot-word dynamics of greedy
/// heap decomposition follows the left-killing mirror.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KillDirection {
    Right,
    Left,
}

/// Exact multiplicity of each word, keyed in lexicographic order.
pub type MultiplicityMap = BTreeMap<Word, BigUint>;

/// Caps on memory-proportional state, checked explicitly instead of evicting.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Maximum number of distinct words held by a single enumeration level.
    pub max_distinct_words: usize,
    /// Maximum number of memoized multiplicity entries.
    pub max_memo_entries: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_distinct_words: 10_000_000,
            max_memo_entries: 10_000_000,
        }
    }
}

impl Limits {
    /// Reads overrides from `HAMMERSLEY_MAX_WORDS` and `HAMMERSLEY_MAX_MEMO`.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = read_env_usize("HAMMERSLEY_MAX_WORDS") {
            limits.max_distinct_words = v;
        }
        if let Some(v) = read_env_usize("HAMMERSLEY_MAX_MEMO") {
            limits.max_memo_entries = v;
        }
        limits
    }
}

fn read_env_usize(name: &str) -> Option<usize> {
    std::env::var(name).ok()?.trim().parse().ok()
}

/// Applies one process step: insert a value-`k` letter of `e.polarity` at gap
/// `e.position`, then decrement the nearest nonzero opposite-polarity letter
/// to the right.
pub fn step(w: &Word, e: InsertionEvent) -> Result<Word> {
    step_dir(w, e, KillDirection::Right)
}

/// The left-killing mirror of [`step`]; the decrement scan walks left from
/// the insertion instead of right.
pub fn step_mirrored(w: &Word, e: InsertionEvent) -> Result<Word> {
    step_dir(w, e, KillDirection::Left)
}

pub fn step_dir(w: &Word, e: InsertionEvent, direction: KillDirection) -> Result<Word> {
    let max = w.len() + 1;
    if e.position == 0 || e.position > max {
        return Err(Error::PositionOutOfRange {
            position: e.position,
            max,
        });
    }
    let k = w.arity();
    let mut out = w.clone();
    let insert_at = e.position - 1;
    out.letters_mut()
        .insert(insert_at, SignedLetter::new(k, e.polarity));
    let target = e.polarity.flip();
    let letters = out.letters_mut();
    let eligible = |i: &usize| letters[*i].polarity == target && letters[*i].value >= 1;
    let victim = match direction {
        KillDirection::Right => (insert_at + 1..letters.len()).find(eligible),
        KillDirection::Left => (0..insert_at).rev().find(eligible),
    };
    if let Some(idx) = victim {
        letters[idx].value -= 1;
    }
    Ok(out)
}

/// Exact multiplicity of every word reachable in exactly `n` steps, counting
/// each history (sequence of insertion events) once. The total mass is
/// `2^n * n!`: at step `m` there are `m` positions and two polarities.
pub fn enumerate(k: u32, n: usize) -> Result<MultiplicityMap> {
    enumerate_with_limits(k, n, &Limits::default())
}

pub fn enumerate_with_limits(k: u32, n: usize, limits: &Limits) -> Result<MultiplicityMap> {
    if k == 0 {
        return Err(Error::ZeroArity);
    }
    let mut frontier: MultiplicityMap = BTreeMap::new();
    frontier.insert(Word::empty(k), BigUint::one());
    for _ in 0..n {
        let mut next: MultiplicityMap = BTreeMap::new();
        for (word, mult) in &frontier {
            for position in 1..=word.len() + 1 {
                for polarity in [Polarity::Plus, Polarity::Minus] {
                    let child = step(word, InsertionEvent::new(position, polarity))?;
                    *next.entry(child).or_default() += mult;
                }
            }
            if next.len() > limits.max_distinct_words {
                return Err(Error::ResourceLimit {
                    what: "distinct words in enumeration frontier",
                    limit: limits.max_distinct_words,
                });
            }
        }
        frontier = next;
    }
    Ok(frontier)
}

/// Serializes an enumeration as `word<TAB>multiplicity` lines in
/// lexicographic word order.
pub fn enumeration_lines(map: &MultiplicityMap) -> String {
    let mut out = String::new();
    for (word, mult) in map {
        out.push_str(&word.to_string());
        out.push('\t');
        out.push_str(&mult.to_string());
        out.push('\n');
    }
    out
}

/// Samples one trajectory of the process: `n + 1` words starting from the
/// empty word. At step `m` the position is uniform on `1..=m` and the
/// polarity uniform, drawn from a ChaCha stream seeded by `seed`.
pub fn sample_trajectory(k: u32, n: usize, seed: u64) -> Result<Vec<Word>> {
    if k == 0 {
        return Err(Error::ZeroArity);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trajectory = Vec::with_capacity(n + 1);
    trajectory.push(Word::empty(k));
    for m in 1..=n {
        let position = rng.random_range(1..=m);
        let polarity = if rng.random::<bool>() {
            Polarity::Plus
        } else {
            Polarity::Minus
        };
        let next = step(
            trajectory.last().expect("trajectory nonempty"),
            InsertionEvent::new(position, polarity),
        )?;
        trajectory.push(next);
    }
    Ok(trajectory)
}
