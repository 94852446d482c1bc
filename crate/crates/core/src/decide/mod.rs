//! Equivalence procedures.
//!
//! * [`semidecide_inequivalent`] scans words in length-lexicographic order
//!   and stops at the first disagreement.
//! * [`search_chain_finite`] enumerates zig-zag chains of simulations over a
//!   finite carrier.
//! * [`decide_by_enumeration`] interleaves the two searches fairly.
//! * [`decide_equiv`] dispatches to the joint construction where one exists
//!   and falls back to the searches otherwise.
//! * [`tropical_probe`] looks for witnesses and single bounded simulation
//!   matrices between tropical automata.
//!
//! Every budget is explicit in [`Budget`]; nothing runs unbounded.

mod search;
mod tropical;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub use search::{search_chain_finite, ChainSearch, SearchStatus};
pub use tropical::{tropical_probe, DirectionOutcome, ProbeReport, ProbeSummary};

use crate::error::{Error, Result};
use crate::joint::{emit_chain, joint_field, joint_finite, joint_integers, InequivalenceWitness, JointOutcome};
use crate::semiring::{Boolean, MinPlus, Numeric, Semiring, Table};
use crate::simulation::{verify_chain, ChainCertificate};
use crate::wfa::{Automaton, Coefficients};

/// Search bounds. `max_intermediate_dim = None` means `m + n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    pub max_word_len: usize,
    pub max_chain_len: usize,
    pub max_intermediate_dim: Option<usize>,
    pub max_steps: u64,
    pub integer_cap: usize,
    /// Largest finite entry tried by the tropical simulation search.
    pub tropical_entry_bound: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_word_len: 12,
            max_chain_len: 2,
            max_intermediate_dim: None,
            max_steps: 1_000_000,
            integer_cap: 64,
            tropical_entry_bound: 4,
        }
    }
}

impl Budget {
    pub fn intermediate_dim(&self, m: usize, n: usize) -> usize {
        self.max_intermediate_dim.unwrap_or(m + n)
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "max_word_len = {}", self.max_word_len)?;
        writeln!(f, "max_chain_len = {}", self.max_chain_len)?;
        match self.max_intermediate_dim {
            Some(d) => writeln!(f, "max_intermediate_dim = {d}")?,
            None => writeln!(f, "max_intermediate_dim = m + n (dimensions of the two inputs)")?,
        }
        writeln!(f, "max_steps = {}", self.max_steps)?;
        writeln!(f, "integer_cap = {}", self.integer_cap)?;
        write!(f, "tropical_entry_bound = {}", self.tropical_entry_bound)
    }
}

/// Why a search gave up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exhausted {
    pub words_checked: usize,
    pub max_word_len: usize,
    pub chain_steps: u64,
    pub reason: String,
}

impl fmt::Display for Exhausted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}; {} words up to length {} agree",
            self.reason, self.words_checked, self.max_word_len
        )?;
        if self.chain_steps > 0 {
            write!(f, "; {} chain candidates examined", self.chain_steps)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum Verdict<S: Semiring> {
    Equivalent(ChainCertificate<S>),
    Inequivalent(InequivalenceWitness<S>),
    Inconclusive(Exhausted),
}

impl<S: Semiring> Verdict<S> {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Equivalent(_) => "EQUIVALENT",
            Verdict::Inequivalent(_) => "INEQUIVALENT",
            Verdict::Inconclusive(_) => "INCONCLUSIVE",
        }
    }

    /// Re-verifies the attached evidence against the inputs.
    pub fn recheck(&self, a: &Automaton<S>, b: &Automaton<S>) -> Result<bool> {
        match self {
            Verdict::Equivalent(chain) => Ok(verify_chain(chain, a, b)?.is_pass()),
            Verdict::Inequivalent(w) => w.recheck(a, b),
            Verdict::Inconclusive(_) => Ok(true),
        }
    }
}

/// Outcome of a word scan.
#[derive(Debug, Clone)]
pub enum WordSearch<S: Semiring> {
    Witness(InequivalenceWitness<S>),
    Exhausted { words_checked: usize },
}

/// Walks two coefficient enumerators in lockstep.
struct WordScan<'a, S: Semiring> {
    left: Coefficients<'a, S>,
    right: Coefficients<'a, S>,
    checked: usize,
}

enum ScanStep<S: Semiring> {
    Agree,
    Differ(InequivalenceWitness<S>),
    Done,
}

impl<'a, S: Semiring> WordScan<'a, S> {
    fn new(a: &'a Automaton<S>, b: &'a Automaton<S>, max_len: usize) -> Self {
        WordScan {
            left: a.coefficients(max_len),
            right: b.coefficients(max_len),
            checked: 0,
        }
    }

    fn step(&mut self) -> Result<ScanStep<S>> {
        match (self.left.next(), self.right.next()) {
            (Some(l), Some(r)) => {
                let (word, lhs) = l?;
                let (_, rhs) = r?;
                self.checked += 1;
                Ok(if lhs == rhs {
                    ScanStep::Agree
                } else {
                    ScanStep::Differ(InequivalenceWitness { word, lhs, rhs })
                })
            }
            _ => Ok(ScanStep::Done),
        }
    }
}

/// Returns the first word (length-lex) with differing coefficients, among
/// words of length at most `budget.max_word_len`.
pub fn semidecide_inequivalent<S: Semiring>(
    a: &Automaton<S>,
    b: &Automaton<S>,
    budget: &Budget,
) -> Result<WordSearch<S>> {
    a.same_signature(b)?;
    let mut scan = WordScan::new(a, b, budget.max_word_len);
    loop {
        match scan.step()? {
            ScanStep::Agree => {}
            ScanStep::Differ(w) => return Ok(WordSearch::Witness(w)),
            ScanStep::Done => {
                return Ok(WordSearch::Exhausted {
                    words_checked: scan.checked,
                })
            }
        }
    }
}

/// Chain candidates examined per round of [`decide_by_enumeration`].
pub const CHAIN_BATCH: usize = 64;

/// Alternates one word comparison with one batch of chain candidates until
/// either search succeeds or both budgets run out. Finite semirings only.
pub fn decide_by_enumeration<S: Semiring>(a: &Automaton<S>, b: &Automaton<S>, budget: &Budget) -> Result<Verdict<S>> {
    a.same_signature(b)?;
    let mut scan = WordScan::new(a, b, budget.max_word_len);
    let mut search = ChainSearch::new(a, b, budget)?;
    let (mut words_done, mut chains_done) = (false, false);
    loop {
        if !words_done {
            match scan.step()? {
                ScanStep::Agree => {}
                ScanStep::Differ(w) => return Ok(Verdict::Inequivalent(w)),
                ScanStep::Done => words_done = true,
            }
        }
        if !chains_done {
            match search.run_units(CHAIN_BATCH)? {
                SearchStatus::Found(chain) => return Ok(Verdict::Equivalent(chain)),
                SearchStatus::Exhausted { .. } => chains_done = true,
                SearchStatus::Pending => {}
            }
        }
        if words_done && chains_done {
            return Ok(Verdict::Inconclusive(Exhausted {
                words_checked: scan.checked,
                max_word_len: budget.max_word_len,
                chain_steps: search.steps(),
                reason: "no witness and no simulation chain within budget".into(),
            }));
        }
    }
}

/// Semirings with a joint-automaton construction, and the mode each uses.
pub trait JointConstruction: Semiring {
    fn construct_joint(a: &Automaton<Self>, b: &Automaton<Self>, budget: &Budget) -> Result<JointOutcome<Self>>;
}

impl JointConstruction for Boolean {
    fn construct_joint(a: &Automaton<Self>, b: &Automaton<Self>, _: &Budget) -> Result<JointOutcome<Self>> {
        joint_finite(a, b)
    }
}

impl JointConstruction for Table {
    fn construct_joint(a: &Automaton<Self>, b: &Automaton<Self>, _: &Budget) -> Result<JointOutcome<Self>> {
        joint_finite(a, b)
    }
}

impl JointConstruction for Numeric<BigRational> {
    fn construct_joint(a: &Automaton<Self>, b: &Automaton<Self>, _: &Budget) -> Result<JointOutcome<Self>> {
        joint_field(a, b)
    }
}

impl JointConstruction for Numeric<BigInt> {
    fn construct_joint(a: &Automaton<Self>, b: &Automaton<Self>, budget: &Budget) -> Result<JointOutcome<Self>> {
        joint_integers(a, b, budget.integer_cap)
    }
}

impl JointConstruction for Numeric<BigUint> {
    fn construct_joint(a: &Automaton<Self>, _: &Automaton<Self>, _: &Budget) -> Result<JointOutcome<Self>> {
        Err(Error::UnsupportedSemiring {
            semiring: a.semiring().id(),
            operation: "joint construction",
            reason: "no construction is implemented for the naturals (modes: finite, field, integer)",
        })
    }
}

impl JointConstruction for MinPlus {
    fn construct_joint(a: &Automaton<Self>, _: &Automaton<Self>, _: &Budget) -> Result<JointOutcome<Self>> {
        Err(Error::UnsupportedSemiring {
            semiring: a.semiring().id(),
            operation: "joint construction",
            reason: "the tropical semiring admits equivalent automata with no connecting simulation chain",
        })
    }
}

/// Decides equivalence where a construction exists and otherwise searches
/// within the budget. Evidence is re-verified before it is returned.
pub fn decide_equiv<S: JointConstruction>(a: &Automaton<S>, b: &Automaton<S>, budget: &Budget) -> Result<Verdict<S>> {
    a.same_signature(b)?;
    let words_only = |reason: &str| -> Result<Verdict<S>> {
        Ok(match semidecide_inequivalent(a, b, budget)? {
            WordSearch::Witness(w) => Verdict::Inequivalent(w),
            WordSearch::Exhausted { words_checked } => Verdict::Inconclusive(Exhausted {
                words_checked,
                max_word_len: budget.max_word_len,
                chain_steps: 0,
                reason: reason.into(),
            }),
        })
    };
    let verdict = match S::construct_joint(a, b, budget) {
        Ok(JointOutcome::Joint(j)) => Verdict::Equivalent(emit_chain(&j, a, b)),
        Ok(JointOutcome::Inequivalent(w)) => Verdict::Inequivalent(w),
        Ok(JointOutcome::CapExhausted { iterations, .. }) => {
            words_only(&format!("integer module did not stabilize within {iterations} iterations"))?
        }
        Err(Error::UnsupportedSemiring { .. }) if a.semiring().flags().is_finite => decide_by_enumeration(a, b, budget)?,
        Err(Error::UnsupportedSemiring { .. }) => {
            words_only("no joint construction for this semiring and no witness within budget")?
        }
        Err(e) => return Err(e),
    };
    if !verdict.recheck(a, b)? {
        return Err(Error::SelfCheck(format!("{} evidence does not verify", verdict.label())));
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::semiring::Tropical;
    use crate::wfa::Word;
    use crate::{Naturals, Rationals};

    fn tropical_pair() -> (Automaton<MinPlus>, Automaton<MinPlus>) {
        use Tropical::*;
        let t = MinPlus;
        let a = Automaton::new(t, vec!['a'], vec![Finite(0)], vec![Matrix::from_rows(t, vec![vec![Finite(1)]]).unwrap()], vec![Finite(0)])
            .unwrap();
        let b = Automaton::new(
            t,
            vec!['a'],
            vec![Finite(0), Finite(0)],
            vec![Matrix::from_rows(t, vec![vec![Finite(1), Infinity], vec![Infinity, Finite(2)]]).unwrap()],
            vec![Finite(0), Infinity],
        )
        .unwrap();
        (a, b)
    }

    fn nat1(m: u32) -> Automaton<Naturals> {
        let s = Naturals::new();
        Automaton::new(s, vec!['a'], vec![1u32.into()], vec![Matrix::from_rows(s, vec![vec![m.into()]]).unwrap()], vec![1u32.into()])
            .unwrap()
    }

    #[test]
    fn naturals_witness_and_self_exhaustion() {
        let b = Budget::default();
        match semidecide_inequivalent(&nat1(1), &nat1(2), &b).unwrap() {
            WordSearch::Witness(w) => {
                assert_eq!(w.word, Word::from("a"));
                assert_eq!((w.lhs, w.rhs), (1u32.into(), 2u32.into()));
            }
            other => panic!("{other:?}"),
        }
        for len in [0, 3, 12] {
            let budget = Budget { max_word_len: len, ..Budget::default() };
            assert!(matches!(
                semidecide_inequivalent(&nat1(2), &nat1(2), &budget).unwrap(),
                WordSearch::Exhausted { words_checked } if words_checked == len + 1
            ));
        }
        assert!(matches!(decide_equiv(&nat1(2), &nat1(2), &b).unwrap(), Verdict::Inconclusive(_)));
    }

    #[test]
    fn tropical_witness() {
        use Tropical::*;
        let t = MinPlus;
        let one = |w| {
            Automaton::new(t, vec!['a'], vec![Finite(0)], vec![Matrix::from_rows(t, vec![vec![Finite(w)]]).unwrap()], vec![Finite(0)])
                .unwrap()
        };
        match semidecide_inequivalent(&one(1), &one(2), &Budget::default()).unwrap() {
            WordSearch::Witness(w) => assert_eq!((w.lhs, w.rhs), (Finite(1), Finite(2))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tropical_equivalent_pair_is_inconclusive() {
        let (a, b) = tropical_pair();
        for (w, c) in a.enumerate_coeffs(8).unwrap() {
            assert_eq!(c, Tropical::Finite(w.len() as u64));
            assert_eq!(b.behavior_coeff(&w).unwrap(), c);
        }
        for len in [0, 5, 20] {
            let budget = Budget { max_word_len: len, ..Budget::default() };
            assert!(matches!(decide_equiv(&a, &b, &budget).unwrap(), Verdict::Inconclusive(_)));
        }
    }

    #[test]
    fn rational_example_is_equivalent() {
        let s = Rationals::new();
        let q = |x: i64| num_rational::BigRational::from_integer(x.into());
        let a = Automaton::new(
            s,
            vec!['a'],
            vec![q(1), q(0)],
            vec![Matrix::from_rows(s, vec![vec![q(1), q(1)], vec![q(1), q(1)]]).unwrap()],
            vec![q(1), q(1)],
        )
        .unwrap();
        let b = Automaton::new(s, vec!['a'], vec![q(1)], vec![Matrix::from_rows(s, vec![vec![q(2)]]).unwrap()], vec![q(1)]).unwrap();
        match decide_equiv(&a, &b, &Budget::default()).unwrap() {
            Verdict::Equivalent(chain) => {
                assert_eq!(chain.links.len(), 2);
                assert!(verify_chain(&chain, &a, &b).unwrap().is_pass());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_display_lists_defaults() {
        let text = Budget::default().to_string();
        assert!(text.contains("max_word_len = 12"));
        assert!(text.contains("integer_cap = 64"));
        assert!(text.contains("max_steps = 1000000"));
    }
}
