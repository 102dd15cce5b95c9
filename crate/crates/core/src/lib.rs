//! The signed Hammersley process and the heapability of signed permutations.
//!
//! The process grows words over the alphabet `{0+, 0-, ..., k+, k-}`: each
//! step inserts a value-`k` letter of either polarity anywhere and decrements
//! the nearest nonzero opposite-polarity letter to its right. This crate
//! implements:
//!
//! * [`process`] — the forward step, exhaustive enumeration of all histories
//!   with exact multiplicities (the ground-truth oracle), and seeded
//!   trajectory sampling;
//! * [`recognizer`] — membership in the set of reachable words, decided both
//!   from the prefix-wise dominance characterization and by a pair of
//!   deterministic one-counter automata, with selectable strictness variants;
//! * [`multiplicity`](mod@multiplicity) — the reverse-time algorithm computing the exact number
//!   of histories of a word, the tree-count statistic, and the expected
//!   number of heaps opened by a random signed permutation (exact and
//!   Monte-Carlo);
//! * [`heaps`] — greedy decomposition of signed permutations into a minimal
//!   number of sign-alternating min-heaps, signature domination, multiset
//!   insertion dynamics, sign derivation from unsigned heapability, and the
//!   forest-to-word correspondence that ties the heaps back to the process.
//!
//! All types are immutable values and all operations are pure; everything can
//! be called concurrently.

pub mod error;
pub mod heaps;
pub mod multiplicity;
pub mod perm;
pub mod process;
pub mod recognizer;
pub mod word;

pub use error::{Error, Result};
pub use heaps::{
    HeapForest, KMultiset, Signature, SignaturePair, Slot, Victim, brute_force_min_trees,
    derive_sign, dominates, forest_to_word, greedy_decompose,
};
pub use multiplicity::{
    MonteCarloEstimate, PowerSeriesTable, Predecessor, multiplicity, predecessors, scaling_exact,
    scaling_exact_with_limits, scaling_montecarlo, trees_count,
};
pub use perm::SignedPermutation;
pub use process::{
    InsertionEvent, KillDirection, Limits, MultiplicityMap, enumerate, enumerate_with_limits,
    enumeration_lines, sample_trajectory, step, step_mirrored,
};
pub use recognizer::{
    Acceptance, CounterAutomaton, StrictnessMode, automata_accept, build_a1, build_a2,
    is_k_dominant, is_member,
};
pub use word::{
    ParikhCounts, Polarity, SignedLetter, Word, counts, format_word, lambda_minus, lambda_plus,
    parse_word, words_of_length,
};
