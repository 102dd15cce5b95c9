//! Membership in the language of the signed Hammersley process, decided two
//! independent ways: directly from the prefix-wise dominance characterization
//! and by running a pair of deterministic one-counter automata.
//!
//! A nonempty word is dominant when it starts with a value-`k` letter and
//! both counting forms are nonnegative. The strictness variants differ in
//! what they additionally demand of the full word; `NonStrict` is the default
//! and is the variant that matches the forward enumeration exactly (see the
//! acceptance suite, which also reports where `FirstLetterStrict` disagrees).

use std::collections::BTreeMap;

use serde_json::{Value, json};

use crate::error::{Error, Result};
use crate::word::{Polarity, SignedLetter, Word};

/// Extra condition imposed on the full word beyond prefix-wise nonnegativity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrictnessMode {
    /// Both forms nonnegative on every nonempty prefix; nothing more.
    NonStrict,
    /// The form matching the first letter's polarity must be strictly
    /// positive for the full word.
    FirstLetterStrict,
    /// The two forms must sum to at least 1 for the full word.
    EitherStrict,
}

impl StrictnessMode {
    fn full_word_ok(self, first: Polarity, lambda_plus: i64, lambda_minus: i64) -> bool {
        match self {
            StrictnessMode::NonStrict => true,
            StrictnessMode::FirstLetterStrict => match first {
                Polarity::Plus => lambda_plus >= 1,
                Polarity::Minus => lambda_minus >= 1,
            },
            StrictnessMode::EitherStrict => lambda_plus + lambda_minus >= 1,
        }
    }
}

/// Whether a single nonempty word is dominant: first letter of value `k`,
/// both counting forms nonnegative, and the mode's strictness condition.
pub fn is_k_dominant(w: &Word, mode: StrictnessMode) -> Result<bool> {
    let Some(first) = w.first() else {
        return Err(Error::EmptyWord);
    };
    if first.value != w.arity() {
        return Ok(false);
    }
    let lp = w.lambda(Polarity::Plus);
    let lm = w.lambda(Polarity::Minus);
    Ok(lp >= 0 && lm >= 0 && mode.full_word_ok(first.polarity, lp, lm))
}

/// Whether `w` is a possible output of the process: the empty word is, and a
/// nonempty word is iff every nonempty prefix is dominant. The strictness
/// condition, where the mode has one, applies to the full word only.
pub fn is_member(w: &Word, mode: StrictnessMode) -> bool {
    let Some(first) = w.first() else {
        return true;
    };
    if first.value != w.arity() {
        return false;
    }
    let k = w.arity();
    let mut lp = 0i64;
    let mut lm = 0i64;
    for letter in w.letters() {
        lp += letter.lambda_delta(Polarity::Plus, k);
        lm += letter.lambda_delta(Polarity::Minus, k);
        if lp < 0 || lm < 0 {
            return false;
        }
    }
    mode.full_word_ok(first.polarity, lp, lm)
}

/// State acceptance of a counter automaton, evaluated on the configuration
/// reached after the last input letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Acceptance {
    Accept,
    /// Accept only with a strictly positive counter; this realizes the
    /// strict-inequality check as an end-of-input pop.
    AcceptIfCounterPositive,
    Reject,
}

#[derive(Debug, Clone)]
struct State {
    name: &'static str,
    acceptance: Acceptance,
}

/// A deterministic one-counter acceptor. The counter is a single nonnegative
/// integer; a transition whose delta would drive it below zero rejects
/// immediately. Missing transitions reject.
#[derive(Debug, Clone)]
pub struct CounterAutomaton {
    k: u32,
    /// The counting form the counter tracks, for inspection only.
    tracks: Polarity,
    states: Vec<State>,
    initial: usize,
    transitions: BTreeMap<(usize, SignedLetter), (usize, i64)>,
}

const START: usize = 0;
const FIRST_PLUS: usize = 1;
const FIRST_MINUS: usize = 2;

impl CounterAutomaton {
    pub fn arity(&self) -> u32 {
        self.k
    }

    /// Runs the automaton; accepts iff the end of input is reached without
    /// underflow in a configuration the acceptance condition admits.
    pub fn run(&self, w: &Word) -> bool {
        self.run_trace(w, |_| {})
    }

    /// Like [`run`](Self::run), invoking `observe` with the counter value
    /// after each letter.
    pub fn run_trace<F: FnMut(i64)>(&self, w: &Word, mut observe: F) -> bool {
        let mut state = self.initial;
        let mut counter: i64 = 0;
        for letter in w.letters() {
            let Some(&(next, delta)) = self.transitions.get(&(state, *letter)) else {
                return false;
            };
            counter += delta;
            if counter < 0 {
                return false;
            }
            observe(counter);
            state = next;
        }
        match self.states[state].acceptance {
            Acceptance::Accept => true,
            Acceptance::AcceptIfCounterPositive => counter > 0,
            Acceptance::Reject => false,
        }
    }

    /// JSON description of states, transitions, and deltas, for inspection.
    pub fn to_json(&self) -> Value {
        let states: Vec<Value> = self
            .states
            .iter()
            .enumerate()
            .map(|(id, s)| {
                json!({
                    "id": id,
                    "name": s.name,
                    "accept": match s.acceptance {
                        Acceptance::Accept => "always",
                        Acceptance::AcceptIfCounterPositive => "counter_positive",
                        Acceptance::Reject => "never",
                    },
                })
            })
            .collect();
        let transitions: Vec<Value> = self
            .transitions
            .iter()
            .map(|(&(from, letter), &(to, delta))| {
                json!({
                    "from": from,
                    "letter": letter.to_string(),
                    "to": to,
                    "delta": delta,
                })
            })
            .collect();
        json!({
            "k": self.k,
            "tracks": match self.tracks {
                Polarity::Plus => "plus",
                Polarity::Minus => "minus",
            },
            "initial": self.initial,
            "reject_on_underflow": true,
            "states": states,
            "transitions": transitions,
        })
    }
}

/// The automaton enforcing the positive counting form: its counter after any
/// prefix equals that prefix's `lambda_plus`.
pub fn build_a1(k: u32, mode: StrictnessMode) -> CounterAutomaton {
    build_counter_automaton(k, Polarity::Plus, mode)
}

/// The polarity mirror of [`build_a1`], enforcing the negative form.
pub fn build_a2(k: u32, mode: StrictnessMode) -> CounterAutomaton {
    build_counter_automaton(k, Polarity::Minus, mode)
}

fn build_counter_automaton(k: u32, tracks: Polarity, mode: StrictnessMode) -> CounterAutomaton {
    // Parallel branches remember the first letter's polarity; only the strict
    // mode's acceptance distinguishes them.
    let strict_state = match tracks {
        Polarity::Plus => FIRST_PLUS,
        Polarity::Minus => FIRST_MINUS,
    };
    let acceptance = |id: usize| {
        if mode == StrictnessMode::FirstLetterStrict && id == strict_state {
            Acceptance::AcceptIfCounterPositive
        } else {
            Acceptance::Accept
        }
    };
    let states = vec![
        State {
            name: "start",
            acceptance: acceptance(START),
        },
        State {
            name: "first_plus",
            acceptance: acceptance(FIRST_PLUS),
        },
        State {
            name: "first_minus",
            acceptance: acceptance(FIRST_MINUS),
        },
    ];
    let mut transitions = BTreeMap::new();
    for polarity in [Polarity::Plus, Polarity::Minus] {
        let letter = SignedLetter::new(k, polarity);
        let branch = match polarity {
            Polarity::Plus => FIRST_PLUS,
            Polarity::Minus => FIRST_MINUS,
        };
        transitions.insert((START, letter), (branch, letter.lambda_delta(tracks, k)));
    }
    for branch in [FIRST_PLUS, FIRST_MINUS] {
        for value in 0..=k {
            for polarity in [Polarity::Plus, Polarity::Minus] {
                let letter = SignedLetter::new(value, polarity);
                transitions.insert((branch, letter), (branch, letter.lambda_delta(tracks, k)));
            }
        }
    }
    CounterAutomaton {
        k,
        tracks,
        states,
        initial: START,
        transitions,
    }
}

/// Convenience: conjunction of the two automata built for `(k, mode)`.
pub fn automata_accept(w: &Word, mode: StrictnessMode) -> bool {
    let k = w.arity();
    build_a1(k, mode).run(w) && build_a2(k, mode).run(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn w(text: &str, k: u32) -> Word {
        parse_word(text, k).unwrap()
    }

    #[test]
    fn dominance_single_letters() {
        for text in ["2+", "2-"] {
            for mode in [
                StrictnessMode::NonStrict,
                StrictnessMode::FirstLetterStrict,
                StrictnessMode::EitherStrict,
            ] {
                assert!(is_k_dominant(&w(text, 2), mode).unwrap(), "{text} {mode:?}");
            }
        }
    }

    #[test]
    fn dominance_requires_value_k_first_letter() {
        for mode in [
            StrictnessMode::NonStrict,
            StrictnessMode::FirstLetterStrict,
            StrictnessMode::EitherStrict,
        ] {
            assert!(!is_k_dominant(&w("1+", 2), mode).unwrap());
        }
    }

    #[test]
    fn dominance_strictness_discrepancy() {
        let word = w("2+ 1-", 2);
        assert!(is_k_dominant(&word, StrictnessMode::NonStrict).unwrap());
        assert!(!is_k_dominant(&word, StrictnessMode::FirstLetterStrict).unwrap());
    }

    #[test]
    fn dominance_rejects_empty() {
        assert_eq!(
            is_k_dominant(&Word::empty(2), StrictnessMode::NonStrict),
            Err(Error::EmptyWord)
        );
    }

    #[test]
    fn membership_examples() {
        assert!(is_member(&w("2+ 1-", 2), StrictnessMode::NonStrict));
        for mode in [
            StrictnessMode::NonStrict,
            StrictnessMode::FirstLetterStrict,
            StrictnessMode::EitherStrict,
        ] {
            assert!(!is_member(&w("2+ 0-", 2), mode));
            assert!(is_member(&Word::empty(2), mode));
        }
        assert!(is_member(&w("2- 1+ 2+", 2), StrictnessMode::NonStrict));
    }

    #[test]
    fn membership_checks_every_prefix() {
        // last letter repairs the positive form but the middle prefix dips below zero
        let word = w("2+ 0- 2+", 2);
        assert!(!is_member(&word, StrictnessMode::NonStrict));
    }

    #[test]
    fn automaton_a1_examples() {
        let a1 = build_a1(2, StrictnessMode::NonStrict);
        assert!(a1.run(&w("2+ 1-", 2)));
        assert!(!a1.run(&w("2+ 0-", 2)));
        assert!(!a1.run(&w("1- 2+", 2)));
        assert!(a1.run(&w("2+ 2- 0+ 0-", 2)));

        let mut trace = Vec::new();
        assert!(a1.run_trace(&w("2+ 2- 0+ 0-", 2), |c| trace.push(c)));
        assert_eq!(trace, [1, 1, 2, 0]);
    }

    #[test]
    fn automaton_a2_mirrors_a1() {
        let a2 = build_a2(2, StrictnessMode::NonStrict);
        assert!(a2.run(&w("2- 1+", 2)));
        let mut trace = Vec::new();
        assert!(a2.run_trace(&w("2- 1+", 2), |c| trace.push(c)));
        assert_eq!(trace, [1, 0]);
    }

    #[test]
    fn automaton_accepts_empty_word() {
        for mode in [
            StrictnessMode::NonStrict,
            StrictnessMode::FirstLetterStrict,
            StrictnessMode::EitherStrict,
        ] {
            assert!(build_a1(2, mode).run(&Word::empty(2)));
            assert!(build_a2(2, mode).run(&Word::empty(2)));
        }
    }

    #[test]
    fn strict_mode_demands_positive_counter_at_the_end() {
        let a1 = build_a1(2, StrictnessMode::FirstLetterStrict);
        // positive form ends at 0: rejected in the strict mode
        assert!(!a1.run(&w("2+ 1-", 2)));
        // dips to 0 mid-word but ends at 1: accepted
        assert!(a1.run(&w("2+ 1- 2+", 2)));
        // first letter negative: strictness is the mirror automaton's job
        assert!(a1.run(&w("2- 1+", 2)));
    }

    #[test]
    fn counter_trace_equals_lambda_prefixes() {
        let a1 = build_a1(2, StrictnessMode::NonStrict);
        let word = w("2+ 2- 1+ 1- 0+", 2);
        let mut trace = Vec::new();
        a1.run_trace(&word, |c| trace.push(c));
        for (i, &counter) in trace.iter().enumerate() {
            assert_eq!(counter, word.prefix(i + 1).lambda(Polarity::Plus));
        }
    }

    #[test]
    fn json_export_shape() {
        let a1 = build_a1(2, StrictnessMode::NonStrict);
        let v = a1.to_json();
        assert_eq!(v["k"], 2);
        assert_eq!(v["tracks"], "plus");
        assert_eq!(v["states"].as_array().unwrap().len(), 3);
        // 2 initial transitions + 2 branches * 6 letters
        assert_eq!(v["transitions"].as_array().unwrap().len(), 14);
    }
}
