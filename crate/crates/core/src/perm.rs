//! Signed permutations: a sequence of distinct integers paired with a sign
//! for each entry. Only the relative order of the values matters to the heap
//! algorithms, so arbitrary distinct integers are accepted.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::word::Polarity;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    values: Vec<i64>,
    signs: Vec<Polarity>,
}

impl SignedPermutation {
    pub fn new(values: Vec<i64>, signs: Vec<Polarity>) -> Result<Self> {
        if values.len() != signs.len() {
            return Err(Error::LengthMismatch {
                values: values.len(),
                signs: signs.len(),
            });
        }
        let mut seen = HashSet::with_capacity(values.len());
        for &v in &values {
            if !seen.insert(v) {
                return Err(Error::DuplicateValue { value: v });
            }
        }
        Ok(SignedPermutation { values, signs })
    }

    /// Parses the text form: values as comma-separated decimals and signs as
    /// comma-separated `+`/`-` of equal length, e.g. `"1,8,15"` / `"-,+,-"`.
    pub fn parse(values: &str, signs: &str) -> Result<Self> {
        let values = values
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>().map_err(|_| Error::MalformedToken {
                    token: t.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let signs = signs
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| match t {
                "+" => Ok(Polarity::Plus),
                "-" => Ok(Polarity::Minus),
                other => Err(Error::MalformedSign {
                    token: other.to_string(),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        SignedPermutation::new(values, signs)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn signs(&self) -> &[Polarity] {
        &self.signs
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Polarity)> + '_ {
        self.values.iter().copied().zip(self.signs.iter().copied())
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (value, sign)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{value}{sign}")?;
        }
        Ok(())
    }
}
