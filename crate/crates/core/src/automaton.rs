//! Deterministic semiautomata: a state count and an ordered list of letters.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::transformation::Transformation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Automaton {
    n: usize,
    letters: Vec<Transformation>,
    names: Vec<String>,
}

/// Default display name of the `i`-th letter: `a`..`z`, then `x26`, `x27`, ...
pub fn default_letter_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

impl Automaton {
    pub fn new(letters: Vec<Transformation>) -> Result<Self> {
        let names = (0..letters.len()).map(default_letter_name).collect();
        Self::with_names(letters, names)
    }

    pub fn with_names(letters: Vec<Transformation>, names: Vec<String>) -> Result<Self> {
        let first = letters.first().ok_or(Error::NoLetters)?;
        let n = first.n();
        if let Some(bad) = letters.iter().find(|f| f.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.n(),
            });
        }
        if names.len() != letters.len() {
            return Err(Error::InvalidInput(format!(
                "{} names given for {} letters",
                names.len(),
                letters.len()
            )));
        }
        Ok(Self { n, letters, names })
    }

    /// Builds an automaton from raw image rows, one per letter.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let letters = rows
            .iter()
            .map(|row| Transformation::new(row.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Transformation] {
        &self.letters
    }

    pub fn letter(&self, i: usize) -> Result<&Transformation> {
        self.letters.get(i).ok_or(Error::LetterOutOfRange {
            index: i,
            count: self.letters.len(),
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn word_to_string(&self, word: &[usize]) -> String {
        word.iter()
            .map(|&i| self.names[i].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The transformation induced by a word (identity for the empty word).
    pub fn word_transformation(&self, word: &[usize]) -> Result<Transformation> {
        let mut acc = Transformation::identity(self.n);
        for &i in word {
            acc = acc.then(self.letter(i)?);
        }
        Ok(acc)
    }

    /// Image of a set of states under a word.
    pub fn apply_to_set(&self, word: &[usize], set: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
        if let Some(&q) = set.iter().find(|&&q| q >= self.n) {
            return Err(Error::StateOutOfRange {
                state: q,
                n: self.n,
            });
        }
        let mut current = set.clone();
        for &i in word {
            let f = self.letter(i)?;
            current = current.iter().map(|&q| f.apply(q)).collect();
        }
        Ok(current)
    }

    pub fn all_states(&self) -> BTreeSet<usize> {
        (0..self.n).collect()
    }

    /// Letter digraph: an arc `q -> (q)f` for every letter `f`, deduplicated.
    pub fn successor_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|q| {
                let mut succ: Vec<usize> = self.letters.iter().map(|f| f.apply(q)).collect();
                succ.sort_unstable();
                succ.dedup();
                succ
            })
            .collect()
    }

    /// Renames states through the bijection `sigma` (see
    /// [`Transformation::relabel`]); letter order and names are kept.
    pub fn relabel(&self, sigma: &[usize]) -> Result<Automaton> {
        let letters = self
            .letters
            .iter()
            .map(|f| f.relabel(sigma))
            .collect::<Result<Vec<_>>>()?;
        Automaton::with_names(letters, self.names.clone())
    }

    /// Reorders the letters: the `i`-th letter of the result is letter
    /// `order[i]` of `self`.
    pub fn reorder_letters(&self, order: &[usize]) -> Result<Automaton> {
        let mut letters = Vec::with_capacity(order.len());
        let mut names = Vec::with_capacity(order.len());
        for &i in order {
            letters.push(self.letter(i)?.clone());
            names.push(self.names[i].clone());
        }
        Automaton::with_names(letters, names)
    }

    /// Appends a letter, named by position.
    pub fn with_letter(&self, f: Transformation) -> Result<Automaton> {
        let mut letters = self.letters.clone();
        let mut names = self.names.clone();
        names.push(default_letter_name(letters.len()));
        letters.push(f);
        Automaton::with_names(letters, names)
    }

    pub fn all_permutational(&self) -> bool {
        self.letters.iter().all(Transformation::is_permutation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn construction_checks_shape() {
        assert_eq!(Automaton::new(vec![]).unwrap_err(), Error::NoLetters);
        assert_eq!(
            Automaton::from_rows(&[vec![0, 1], vec![0, 1, 2]]).unwrap_err(),
            Error::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
        let a = Automaton::from_rows(&[vec![0], vec![0]]).unwrap();
        assert_eq!(a.names(), &["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn apply_words_to_sets() {
        let left = fixtures::nonprimitive_sync_3();
        let q = left.all_states();
        assert_eq!(left.apply_to_set(&[0, 1], &q).unwrap(), BTreeSet::from([2]));
        assert_eq!(left.apply_to_set(&[], &q).unwrap(), q);

        let right = fixtures::almost_group_5();
        let q = right.all_states();
        let steps: Vec<BTreeSet<usize>> = (1..=6)
            .map(|len| right.apply_to_set(&[0, 0, 1, 0, 0, 0][..len], &q).unwrap())
            .collect();
        assert_eq!(steps[0], BTreeSet::from([0, 2, 3, 4]));
        assert_eq!(steps[1], BTreeSet::from([0, 3, 4]));
        assert_eq!(steps[2], BTreeSet::from([1, 3, 4]));
        assert_eq!(steps[3], BTreeSet::from([0, 2]));
        assert_eq!(steps[4], BTreeSet::from([3, 4]));
        assert_eq!(steps[5], BTreeSet::from([0]));
    }

    #[test]
    fn bad_letter_index_is_an_error() {
        let a = fixtures::nonprimitive_sync_3();
        assert_eq!(
            a.apply_to_set(&[0, 5], &a.all_states()).unwrap_err(),
            Error::LetterOutOfRange { index: 5, count: 2 }
        );
    }

    #[test]
    fn default_names() {
        assert_eq!(default_letter_name(0), "a");
        assert_eq!(default_letter_name(25), "z");
        assert_eq!(default_letter_name(26), "x26");
    }
}
