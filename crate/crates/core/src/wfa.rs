//! Weighted automata `(α, {M_a}, β)` and their behaviors.
//!
//! The transition matrix is only ever stored as its per-letter family
//! `M_a`; the coefficient of a word is computed as `α·M_w·β` with
//! `M_ε = E_n` and `M_{va} = M_v·M_a`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{inner, is_unit_vector, row_times, Matrix};
use crate::semiring::Semiring;

/// A finite word; letters are single characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<char>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, c: char) {
        self.0.push(c);
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        s.parse().expect("infallible")
    }
}

impl FromIterator<char> for Word {
    fn from_iter<I: IntoIterator<Item = char>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl FromStr for Word {
    type Err = std::convert::Infallible;

    /// `""`, `ε` and `eps` all denote the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ε" || s == "eps" {
            return Ok(Word::empty());
        }
        Ok(Word(s.chars().collect()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

#[derive(Clone)]
pub struct Automaton<S: Semiring> {
    semiring: S,
    alphabet: Vec<char>,
    initial: Matrix<S>,
    transitions: Vec<Matrix<S>>,
    final_weights: Matrix<S>,
}

impl<S: Semiring> PartialEq for Automaton<S> {
    fn eq(&self, other: &Self) -> bool {
        self.semiring == other.semiring
            && self.alphabet == other.alphabet
            && self.initial == other.initial
            && self.transitions == other.transitions
            && self.final_weights == other.final_weights
    }
}

impl<S: Semiring> fmt::Debug for Automaton<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("Automaton");
        d.field("semiring", &self.semiring.id())
            .field("alphabet", &self.alphabet)
            .field("initial", &self.initial);
        for (c, m) in self.alphabet.iter().zip(&self.transitions) {
            d.field(&format!("M_{c}"), m);
        }
        d.field("final", &self.final_weights).finish()
    }
}

impl<S: Semiring> Automaton<S> {
    /// `transitions[i]` is the matrix of `alphabet[i]`.
    pub fn new(
        semiring: S,
        alphabet: Vec<char>,
        initial: Vec<S::Elem>,
        transitions: Vec<Matrix<S>>,
        final_weights: Vec<S::Elem>,
    ) -> Result<Self> {
        let n = initial.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("dimension must be at least 1".into()));
        }
        if final_weights.len() != n {
            return Err(Error::InvalidAutomaton(format!(
                "final vector has {} entries, expected {n}",
                final_weights.len()
            )));
        }
        for (i, c) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(c) {
                return Err(Error::InvalidAutomaton(format!("letter {c:?} listed twice")));
            }
            if c.is_whitespace() {
                return Err(Error::InvalidAutomaton("whitespace letter".into()));
            }
        }
        if transitions.len() != alphabet.len() {
            return Err(Error::InvalidAutomaton(format!(
                "{} transition matrices for {} letters",
                transitions.len(),
                alphabet.len()
            )));
        }
        for (c, m) in alphabet.iter().zip(&transitions) {
            if m.dims() != (n, n) {
                return Err(Error::InvalidAutomaton(format!(
                    "M_{c} is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
            if *m.semiring() != semiring {
                return Err(Error::SemiringMismatch {
                    left: semiring.id(),
                    right: m.semiring().id(),
                });
            }
        }
        Ok(Automaton {
            initial: Matrix::row_vector(semiring.clone(), initial)?,
            final_weights: Matrix::column_vector(semiring.clone(), final_weights)?,
            semiring,
            alphabet,
            transitions,
        })
    }

    pub fn semiring(&self) -> &S {
        &self.semiring
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.initial.cols()
    }

    /// `α` as a `1×n` matrix.
    pub fn initial(&self) -> &Matrix<S> {
        &self.initial
    }

    /// `β` as an `n×1` matrix.
    pub fn final_weights(&self) -> &Matrix<S> {
        &self.final_weights
    }

    /// All `M_a` in alphabet order.
    pub fn transitions(&self) -> &[Matrix<S>] {
        &self.transitions
    }

    pub fn transition(&self, letter: char) -> Result<&Matrix<S>> {
        Ok(&self.transitions[self.letter_index(letter)?])
    }

    pub fn letter_index(&self, letter: char) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|&c| c == letter)
            .ok_or(Error::UnknownLetter(letter))
    }

    /// Mutable access to one transition matrix; dimensions stay fixed.
    pub fn transition_mut(&mut self, index: usize) -> &mut Matrix<S> {
        &mut self.transitions[index]
    }

    pub fn initial_mut(&mut self) -> &mut Matrix<S> {
        &mut self.initial
    }

    pub fn final_weights_mut(&mut self) -> &mut Matrix<S> {
        &mut self.final_weights
    }

    /// `M_w`, folding left from `E_n`.
    pub fn word_matrix(&self, w: &Word) -> Result<Matrix<S>> {
        let mut m = Matrix::identity(self.semiring.clone(), self.dim());
        for &c in w.letters() {
            m = m.mul(self.transition(c)?)?;
        }
        Ok(m)
    }

    /// Row vector `α·M_w`.
    pub fn reach(&self, w: &Word) -> Result<Vec<S::Elem>> {
        let mut v = self.initial.entries().to_vec();
        for &c in w.letters() {
            v = row_times(&self.semiring, &v, self.transition(c)?)?;
        }
        Ok(v)
    }

    /// The coefficient `(|A|, w) = α·M_w·β`.
    pub fn behavior_coeff(&self, w: &Word) -> Result<S::Elem> {
        let v = self.reach(w)?;
        inner(&self.semiring, &v, self.final_weights.entries())
    }

    /// Lazily enumerates `(w, (|A|, w))` for `|w| ≤ max_len` in
    /// length-lexicographic order.
    pub fn coefficients(&self, max_len: usize) -> Coefficients<'_, S> {
        Coefficients::new(self, max_len)
    }

    pub fn enumerate_coeffs(&self, max_len: usize) -> Result<Vec<(Word, S::Elem)>> {
        self.coefficients(max_len).collect()
    }

    /// `α` and every row of every `M_a` are unit vectors.
    pub fn is_deterministic(&self) -> bool {
        let s = &self.semiring;
        is_unit_vector(s, self.initial.entries())
            && self
                .transitions
                .iter()
                .all(|m| m.row_iter().all(|r| is_unit_vector(s, r)))
    }

    pub(crate) fn same_signature(&self, other: &Self) -> Result<()> {
        if self.semiring != other.semiring {
            return Err(Error::SemiringMismatch {
                left: self.semiring.id(),
                right: other.semiring.id(),
            });
        }
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.clone(),
                right: other.alphabet.clone(),
            });
        }
        Ok(())
    }
}

/// Breadth-first coefficient enumerator. Each step extends a stored prefix
/// vector `α·M_v` by one letter.
pub struct Coefficients<'a, S: Semiring> {
    automaton: &'a Automaton<S>,
    max_len: usize,
    queue: VecDeque<(Word, Vec<S::Elem>)>,
    failed: bool,
}

impl<'a, S: Semiring> Coefficients<'a, S> {
    fn new(automaton: &'a Automaton<S>, max_len: usize) -> Self {
        let mut queue = VecDeque::new();
        queue.push_back((Word::empty(), automaton.initial.entries().to_vec()));
        Coefficients {
            automaton,
            max_len,
            queue,
            failed: false,
        }
    }
}

impl<S: Semiring> Iterator for Coefficients<'_, S> {
    type Item = Result<(Word, S::Elem)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let (word, vec) = self.queue.pop_front()?;
        let a = self.automaton;
        let mut step = || -> Result<S::Elem> {
            if word.len() < self.max_len {
                for (&c, m) in a.alphabet.iter().zip(&a.transitions) {
                    let mut w = word.clone();
                    w.push(c);
                    self.queue.push_back((w, row_times(&a.semiring, &vec, m)?));
                }
            }
            inner(&a.semiring, &vec, a.final_weights.entries())
        };
        match step() {
            Ok(c) => Some(Ok((word, c))),
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Boolean, MinPlus, Tropical};
    use crate::Naturals;
    use num_bigint::BigUint;

    fn n(x: u32) -> BigUint {
        BigUint::from(x)
    }

    fn nat_matrix(rows: &[&[u32]]) -> Matrix<Naturals> {
        Matrix::from_rows(
            Naturals::new(),
            rows.iter().map(|r| r.iter().map(|&x| n(x)).collect()).collect(),
        )
        .unwrap()
    }

    fn two_state() -> Automaton<Naturals> {
        Automaton::new(
            Naturals::new(),
            vec!['a', 'b'],
            vec![n(1), n(0)],
            vec![nat_matrix(&[&[0, 1], &[0, 0]]), nat_matrix(&[&[0, 0], &[0, 1]])],
            vec![n(0), n(1)],
        )
        .unwrap()
    }

    #[test]
    fn empty_word_gives_identity() {
        let a = two_state();
        assert_eq!(a.word_matrix(&Word::empty()).unwrap(), Matrix::identity(Naturals::new(), 2));
    }

    #[test]
    fn scalar_power() {
        let a = Automaton::new(Naturals::new(), vec!['a'], vec![n(1)], vec![nat_matrix(&[&[2]])], vec![n(3)])
            .unwrap();
        assert_eq!(a.word_matrix(&"aaa".into()).unwrap(), nat_matrix(&[&[8]]));
        assert_eq!(a.behavior_coeff(&"aa".into()).unwrap(), n(12));
    }

    #[test]
    fn word_matrices_of_two_state_example() {
        let a = two_state();
        assert_eq!(a.word_matrix(&"ab".into()).unwrap(), nat_matrix(&[&[0, 1], &[0, 0]]));
        assert_eq!(a.word_matrix(&"ba".into()).unwrap(), nat_matrix(&[&[0, 0], &[0, 0]]));
        assert_eq!(a.behavior_coeff(&"ab".into()).unwrap(), n(1));
        assert_eq!(a.behavior_coeff(&"ba".into()).unwrap(), n(0));
    }

    #[test]
    fn tropical_coefficient_adds_weights() {
        let t = MinPlus;
        let a = Automaton::new(
            t,
            vec!['a'],
            vec![Tropical::Finite(0)],
            vec![Matrix::from_rows(t, vec![vec![Tropical::Finite(4)]]).unwrap()],
            vec![Tropical::Finite(0)],
        )
        .unwrap();
        assert_eq!(a.behavior_coeff(&"aaa".into()).unwrap(), Tropical::Finite(12));
    }

    #[test]
    fn unknown_letter() {
        assert!(matches!(two_state().behavior_coeff(&"ac".into()), Err(Error::UnknownLetter('c'))));
    }

    #[test]
    fn enumeration_order_and_base_case() {
        let a = two_state();
        let zero = a.enumerate_coeffs(0).unwrap();
        assert_eq!(zero, vec![(Word::empty(), n(0))]);
        let words: Vec<String> = a
            .enumerate_coeffs(2)
            .unwrap()
            .into_iter()
            .map(|(w, _)| w.to_string())
            .collect();
        assert_eq!(words, ["ε", "a", "b", "aa", "ab", "ba", "bb"]);

        let ones = Automaton::new(
            Boolean,
            vec!['a'],
            vec![true],
            vec![Matrix::from_rows(Boolean, vec![vec![true]]).unwrap()],
            vec![true],
        )
        .unwrap();
        let got = ones.enumerate_coeffs(2).unwrap();
        assert_eq!(
            got,
            vec![(Word::empty(), true), ("a".into(), true), ("aa".into(), true)]
        );
    }

    #[test]
    fn determinism() {
        let det = Automaton::new(
            Boolean,
            vec!['a'],
            vec![true, false],
            vec![Matrix::from_rows(Boolean, vec![vec![false, true], vec![true, false]]).unwrap()],
            vec![false, true],
        )
        .unwrap();
        assert!(det.is_deterministic());
        let mut two_starts = det.clone();
        two_starts.initial_mut().set(0, 1, true).unwrap();
        assert!(!two_starts.is_deterministic());
        let weighted =
            Automaton::new(Naturals::new(), vec!['a'], vec![n(2)], vec![nat_matrix(&[&[1]])], vec![n(1)]).unwrap();
        assert!(!weighted.is_deterministic());
    }

    #[test]
    fn rejects_malformed() {
        assert!(Automaton::new(Boolean, vec!['a'], vec![], vec![Matrix::zeros(Boolean, 0, 0)], vec![]).is_err());
        assert!(Automaton::new(Boolean, vec!['a', 'a'], vec![true], vec![Matrix::identity(Boolean, 1); 2], vec![true])
            .is_err());
        assert!(Automaton::new(Boolean, vec!['a'], vec![true], vec![Matrix::identity(Boolean, 2)], vec![true]).is_err());
    }
}
