//! Reverse-time multiplicity: the number of distinct histories producing a
//! word, computed by enumerating one-step pre-images and summing their
//! multiplicities with memoization. Also the tree-count statistic carried by
//! a word and the expected tree count of a random signed permutation.
//!
//! The pre-image rule inverts the forward step exactly. For each value-`k`
//! letter at position `i` with polarity `s`:
//!
//! * removing it is a valid pre-image iff no opposite-polarity letter of
//!   value >= 1 lies strictly right of `i` (the insertion killed nothing);
//! * for each position `j > i` holding an opposite-polarity letter of value
//!   `v < k` such that every opposite-polarity letter strictly between has
//!   value 0, removing position `i` and raising position `j` to `v + 1` is a
//!   valid pre-image (the insertion killed that letter).
//!
//! Each (pre-image, event) pair corresponds to exactly one forward edge, so
//! summing multiplicities over the list counts histories once each.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::heaps::greedy_decompose;
use crate::perm::SignedPermutation;
use crate::process::{InsertionEvent, Limits, enumerate_with_limits, step};
use crate::recognizer::{StrictnessMode, is_member};
use crate::word::{Polarity, Word};

/// Memo table mapping words to their exact multiplicities.
///
/// Entries are only ever inserted, never evicted; exceeding the cap is an
/// error. A cached value is positive exactly when the word is a member.
#[derive(Debug, Clone)]
pub struct PowerSeriesTable {
    k: u32,
    memo: HashMap<Word, BigUint>,
    max_entries: usize,
}

impl PowerSeriesTable {
    pub fn new(k: u32) -> Self {
        Self::with_limits(k, &Limits::default())
    }

    pub fn with_limits(k: u32, limits: &Limits) -> Self {
        PowerSeriesTable {
            k,
            memo: HashMap::new(),
            max_entries: limits.max_memo_entries,
        }
    }

    pub fn arity(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn cached(&self, w: &Word) -> Option<&BigUint> {
        self.memo.get(w)
    }

    fn insert(&mut self, w: Word, value: BigUint) -> Result<()> {
        if self.memo.len() >= self.max_entries {
            return Err(Error::ResourceLimit {
                what: "memoized multiplicity entries",
                limit: self.max_entries,
            });
        }
        self.memo.insert(w, value);
        Ok(())
    }
}

/// A one-step pre-image: applying `event` to `word` reproduces the target.
/// `kill_position` is the 1-based position in `word` of the letter the
/// insertion decremented, if any.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Predecessor {
    pub word: Word,
    pub event: InsertionEvent,
    pub kill_position: Option<usize>,
}

/// All one-step pre-images of `w`, each listed once. Purely syntactic: the
/// pre-images are not themselves membership-checked.
pub fn predecessors(w: &Word) -> Vec<Predecessor> {
    let k = w.arity();
    let letters = w.letters();
    let mut result = Vec::new();
    for (i, letter) in letters.iter().enumerate() {
        if letter.value != k {
            continue;
        }
        let target = letter.polarity.flip();
        let mut kills = Vec::new();
        let mut blocked = false;
        for (j, candidate) in letters.iter().enumerate().skip(i + 1) {
            if candidate.polarity != target {
                continue;
            }
            if candidate.value == 0 {
                kills.push(j);
            } else {
                if candidate.value < k {
                    kills.push(j);
                }
                blocked = true;
                break;
            }
        }
        let event = InsertionEvent::new(i + 1, letter.polarity);
        if !blocked {
            let mut z = w.clone();
            z.letters_mut().remove(i);
            result.push(Predecessor {
                word: z,
                event,
                kill_position: None,
            });
        }
        for j in kills {
            let mut z = w.clone();
            z.letters_mut().remove(i);
            z.letters_mut()[j - 1].value += 1;
            result.push(Predecessor {
                word: z,
                event,
                kill_position: Some(j),
            });
        }
    }
    result
}

/// The exact multiplicity of `w`: 1 for the empty word, 0 for nonmembers,
/// otherwise the sum of the multiplicities of all one-step pre-images.
pub fn multiplicity(w: &Word, table: &mut PowerSeriesTable) -> Result<BigUint> {
    w.check_arity(table.arity())?;
    if w.is_empty() {
        return Ok(BigUint::one());
    }
    if let Some(cached) = table.cached(w) {
        return Ok(cached.clone());
    }
    if !is_member(w, StrictnessMode::NonStrict) {
        table.insert(w.clone(), BigUint::zero())?;
        return Ok(BigUint::zero());
    }
    let mut total = BigUint::zero();
    for pred in predecessors(w) {
        total += multiplicity(&pred.word, table)?;
    }
    table.insert(w.clone(), total.clone())?;
    Ok(total)
}

/// Number of heap roots encoded by a slot word: the count of value-`k`
/// letters minus `(k - v - 1)` for every letter of value `v < k`, either
/// polarity. Equals the sum of the two counting forms, and may be negative
/// for words the process cannot produce.
pub fn trees_count(w: &Word) -> i64 {
    let k = w.arity();
    let counts = w.counts();
    let mut total = counts.count_value(k) as i64;
    for value in 0..k {
        total -= i64::from(k - value - 1) * counts.count_value(value) as i64;
    }
    total
}

/// The expected number of trees opened by `n` insertions: the
/// multiplicity-weighted average of [`trees_count`] over all length-`n`
/// outputs, normalized by the total mass `2^n * n!`.
pub fn scaling_exact(k: u32, n: usize) -> Result<BigRational> {
    scaling_exact_with_limits(k, n, &Limits::default())
}

pub fn scaling_exact_with_limits(k: u32, n: usize, limits: &Limits) -> Result<BigRational> {
    let map = enumerate_with_limits(k, n, limits)?;
    let mut weighted = BigUint::zero();
    for (word, mult) in &map {
        let trees = trees_count(word);
        debug_assert!(trees >= 0, "process output with negative tree count");
        weighted += mult * BigUint::from(trees as u64);
    }
    let mut mass = BigUint::one();
    for m in 1..=n {
        mass *= BigUint::from(2 * m);
    }
    Ok(BigRational::new(weighted.into(), mass.into()))
}

/// A Monte-Carlo estimate of the expected greedy tree count.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: BigRational,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Estimates the expected tree count by sampling uniform signed permutations
/// of length `n` and running the greedy decomposition. Sample `i` draws from
/// ChaCha stream `i` of `seed`, so results do not depend on evaluation order.
pub fn scaling_montecarlo(k: u32, n: usize, samples: u64, seed: u64) -> Result<MonteCarloEstimate> {
    if k == 0 {
        return Err(Error::ZeroArity);
    }
    let mut sum: u128 = 0;
    let mut sum_sq: u128 = 0;
    for i in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        let perm = random_signed_permutation(n, &mut rng);
        let (_, trees) = greedy_decompose(&perm, k)?;
        sum += trees as u128;
        sum_sq += (trees as u128) * (trees as u128);
    }
    let mean = BigRational::new(BigUint::from(sum).into(), BigUint::from(samples.max(1)).into());
    let stderr = if samples >= 2 {
        let m = samples as f64;
        let variance = (sum_sq as f64 - (sum as f64) * (sum as f64) / m) / (m - 1.0);
        (variance.max(0.0) / m).sqrt()
    } else {
        0.0
    };
    Ok(MonteCarloEstimate {
        mean,
        stderr,
        samples,
        seed,
    })
}

fn random_signed_permutation(n: usize, rng: &mut ChaCha8Rng) -> SignedPermutation {
    let mut values: Vec<i64> = (1..=n as i64).collect();
    for i in (1..values.len()).rev() {
        let j = rng.random_range(0..=i);
        values.swap(i, j);
    }
    let signs = (0..n)
        .map(|_| {
            if rng.random::<bool>() {
                Polarity::Plus
            } else {
                Polarity::Minus
            }
        })
        .collect();
    SignedPermutation::new(values, signs).expect("shuffled values are distinct")
}

/// Brute-force the one-step pre-image relation by applying every event to
/// every candidate word one letter shorter. Test oracle for [`predecessors`].
pub fn predecessors_by_forward_search(w: &Word) -> Vec<Predecessor> {
    let k = w.arity();
    let n = w.len();
    let mut found = Vec::new();
    if n == 0 {
        return found;
    }
    for z in all_words(k, n - 1) {
        for position in 1..=z.len() + 1 {
            for polarity in [Polarity::Plus, Polarity::Minus] {
                let event = InsertionEvent::new(position, polarity);
                let stepped = step(&z, event).expect("position in range");
                if &stepped == w {
                    let kill_position = (0..z.len())
                        .find(|&idx| z.letters()[idx] != stepped.letters()[idx + usize::from(idx + 1 >= position)])
                        .map(|idx| idx + 1);
                    found.push(Predecessor {
                        word: z.clone(),
                        event,
                        kill_position,
                    });
                }
            }
        }
    }
    found
}

fn all_words(k: u32, len: usize) -> Vec<Word> {
    crate::word::words_of_length(k, len).collect()
}
