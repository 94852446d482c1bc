//! Joint automata: given `A = (α, M, β)` and `B = (γ, N, δ)`, build
//! `C = (κ, R, λ)` with simulations `C →X A` and `C →Y B`, or return a word
//! on which `A` and `B` disagree.
//!
//! All three modes explore the row vectors `(α·M_w, γ·N_w)` breadth-first
//! and stop once the explored set (finite mode), its linear span (field
//! mode) or the `ℤ`-module it generates (integer mode) is closed under every
//! letter. The rows of `X` and `Y` are the two halves of the chosen
//! generators, `R_a` expresses each generator's successor under `a` in terms
//! of the generators, and `κ` expresses `(α, γ)`.

mod echelon;
mod finite;
mod hermite;
mod span;

use std::fmt;

use serde::Serialize;

pub use finite::joint_finite;
pub use span::{joint_field, joint_integers};

use crate::error::{Error, Result};
use crate::matrix::{inner, row_times, Matrix};
use crate::semiring::Semiring;
use crate::simulation::{check_simulation, ChainCertificate, Direction, Link, SimulationCertificate};
use crate::wfa::{Automaton, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum JointMode {
    Finite,
    Field,
    Integer,
}

impl fmt::Display for JointMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            JointMode::Finite => "finite",
            JointMode::Field => "field",
            JointMode::Integer => "integer",
        })
    }
}

/// Generators `(α_i, γ_i)` stored as concatenated rows of length `m + n`,
/// each with the word `w` that produced it as `(α·M_w, γ·N_w)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet<S: Semiring> {
    left_dim: usize,
    rows: Vec<Vec<S::Elem>>,
    words: Vec<Word>,
}

impl<S: Semiring> GeneratorSet<S> {
    fn new(left_dim: usize) -> Self {
        GeneratorSet {
            left_dim,
            rows: Vec::new(),
            words: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<S::Elem>, word: Word) -> usize {
        self.rows.push(row);
        self.words.push(word);
        self.rows.len() - 1
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<S::Elem>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[S::Elem] {
        &self.rows[i]
    }

    /// `(α_i, γ_i)`.
    pub fn pair(&self, i: usize) -> (&[S::Elem], &[S::Elem]) {
        self.rows[i].split_at(self.left_dim)
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }
}

/// A word on which the two behaviors differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequivalenceWitness<S: Semiring> {
    pub word: Word,
    pub lhs: S::Elem,
    pub rhs: S::Elem,
}

impl<S: Semiring> InequivalenceWitness<S> {
    /// Recomputes both coefficients and confirms they match the recorded,
    /// distinct values.
    pub fn recheck(&self, a: &Automaton<S>, b: &Automaton<S>) -> Result<bool> {
        Ok(self.lhs != self.rhs
            && a.behavior_coeff(&self.word)? == self.lhs
            && b.behavior_coeff(&self.word)? == self.rhs)
    }
}

#[derive(Debug, Clone)]
pub struct JointResult<S: Semiring> {
    /// `C = (κ, R, λ)` of dimension `p`.
    pub automaton: Automaton<S>,
    /// `p×m`, rows `α_1 … α_p`.
    pub x: Matrix<S>,
    /// `p×n`, rows `γ_1 … γ_p`.
    pub y: Matrix<S>,
    pub generators: GeneratorSet<S>,
    pub mode: JointMode,
    /// Breadth-first layers explored until the closure stabilized.
    pub iterations: usize,
}

impl<S: Semiring> JointResult<S> {
    pub fn certificate_x(&self, a: &Automaton<S>) -> Result<SimulationCertificate<S>> {
        SimulationCertificate::new(self.automaton.clone(), a.clone(), self.x.clone())
    }

    pub fn certificate_y(&self, b: &Automaton<S>) -> Result<SimulationCertificate<S>> {
        SimulationCertificate::new(self.automaton.clone(), b.clone(), self.y.clone())
    }
}

#[derive(Debug, Clone)]
pub enum JointOutcome<S: Semiring> {
    Joint(JointResult<S>),
    Inequivalent(InequivalenceWitness<S>),
    /// Integer mode only: the module had not stabilized within the cap.
    CapExhausted { iterations: usize, generators: usize },
}

impl<S: Semiring> JointOutcome<S> {
    pub fn joint(self) -> Option<JointResult<S>> {
        match self {
            JointOutcome::Joint(j) => Some(j),
            _ => None,
        }
    }

    pub fn witness(self) -> Option<InequivalenceWitness<S>> {
        match self {
            JointOutcome::Inequivalent(w) => Some(w),
            _ => None,
        }
    }
}

/// The chain `A ←X C →Y B`.
pub fn emit_chain<S: Semiring>(j: &JointResult<S>, a: &Automaton<S>, b: &Automaton<S>) -> ChainCertificate<S> {
    ChainCertificate {
        automata: vec![a.clone(), j.automaton.clone(), b.clone()],
        links: vec![
            Link {
                direction: Direction::Backward,
                matrix: j.x.clone(),
            },
            Link {
                direction: Direction::Forward,
                matrix: j.y.clone(),
            },
        ],
    }
}

/// `(α_i·M_a, γ_i·N_a)`.
fn successor<S: Semiring>(a: &Automaton<S>, b: &Automaton<S>, row: &[S::Elem], letter: usize) -> Result<Vec<S::Elem>> {
    let (left, right) = row.split_at(a.dim());
    let mut v = row_times(a.semiring(), left, &a.transitions()[letter])?;
    v.extend(row_times(b.semiring(), right, &b.transitions()[letter])?);
    Ok(v)
}

/// `(α·M_w·β, γ·N_w·δ)` read off a generator row.
fn witness_for<S: Semiring>(
    a: &Automaton<S>,
    b: &Automaton<S>,
    row: &[S::Elem],
    word: &Word,
) -> Result<Option<InequivalenceWitness<S>>> {
    let (left, right) = row.split_at(a.dim());
    let lhs = inner(a.semiring(), left, a.final_weights().entries())?;
    let rhs = inner(b.semiring(), right, b.final_weights().entries())?;
    Ok((lhs != rhs).then(|| InequivalenceWitness {
        word: word.clone(),
        lhs,
        rhs,
    }))
}

fn seed<S: Semiring>(a: &Automaton<S>, b: &Automaton<S>) -> Vec<S::Elem> {
    a.initial().entries().iter().chain(b.initial().entries()).cloned().collect()
}

fn check_inputs<S: Semiring>(a: &Automaton<S>, b: &Automaton<S>) -> Result<()> {
    a.same_signature(b)
}

fn unsupported<S: Semiring>(s: &S, operation: &'static str, reason: &'static str) -> Error {
    Error::UnsupportedSemiring {
        semiring: s.id(),
        operation,
        reason,
    }
}

/// Builds `C`, `X`, `Y` from generators and the solved coefficients, then
/// re-verifies both simulations.
fn assemble<S: Semiring>(
    a: &Automaton<S>,
    b: &Automaton<S>,
    generators: GeneratorSet<S>,
    kappa: Vec<S::Elem>,
    transitions: Vec<Vec<Vec<S::Elem>>>,
    mode: JointMode,
    iterations: usize,
) -> Result<JointResult<S>> {
    let s = a.semiring().clone();
    let (m, n) = (a.dim(), b.dim());
    let (x, y) = if generators.is_empty() {
        (Matrix::zeros(s.clone(), 1, m), Matrix::zeros(s.clone(), 1, n))
    } else {
        let xs = (0..generators.len()).map(|i| generators.pair(i).0.to_vec()).collect();
        let ys = (0..generators.len()).map(|i| generators.pair(i).1.to_vec()).collect();
        (Matrix::from_rows(s.clone(), xs)?, Matrix::from_rows(s.clone(), ys)?)
    };
    let lambda = x.mul(a.final_weights())?;
    if lambda != y.mul(b.final_weights())? {
        return Err(Error::SelfCheck("Xβ differs from Yδ".into()));
    }
    let r = transitions
        .into_iter()
        .map(|rows| Matrix::from_rows(s.clone(), rows))
        .collect::<Result<Vec<_>>>()?;
    let c = Automaton::new(s, a.alphabet().to_vec(), kappa, r, lambda.entries().to_vec())?;
    for (target, mat, name) in [(a, &x, "X"), (b, &y, "Y")] {
        if let crate::simulation::SimulationReport::Fail(f) = check_simulation(&c, target, mat)? {
            return Err(Error::SelfCheck(format!("{name}: {f}")));
        }
    }
    Ok(JointResult {
        automaton: c,
        x,
        y,
        generators,
        mode,
        iterations,
    })
}
