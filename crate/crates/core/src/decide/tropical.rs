use std::fmt;

use serde::Serialize;

use super::{semidecide_inequivalent, Budget, WordSearch};
use crate::error::Result;
use crate::joint::InequivalenceWitness;
use crate::matrix::Matrix;
use crate::semiring::{MinPlus, Tropical};
use crate::simulation::check_simulation;
use crate::wfa::Automaton;

/// Result of the bounded search for one simulation direction.
#[derive(Debug, Clone, PartialEq)]
pub enum DirectionOutcome {
    Found(Matrix<MinPlus>),
    /// Every matrix with entries in `{0, …, bound, ∞}` was tried.
    NoneWithinBound { candidates: u64 },
    /// `max_steps` ran out before the bounded space was covered.
    BudgetExhausted { candidates: u64 },
}

impl DirectionOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, DirectionOutcome::Found(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeSummary {
    WitnessFound,
    SimulationFound,
    NeitherWithinBudget,
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub witness: Option<InequivalenceWitness<MinPlus>>,
    pub words_checked: usize,
    pub max_word_len: usize,
    pub entry_bound: u64,
    /// Simulations `A → B`.
    pub forward: DirectionOutcome,
    /// Simulations `B → A`.
    pub backward: DirectionOutcome,
}

impl ProbeReport {
    pub fn summary(&self) -> ProbeSummary {
        if self.witness.is_some() {
            ProbeSummary::WitnessFound
        } else if self.forward.is_found() || self.backward.is_found() {
            ProbeSummary::SimulationFound
        } else {
            ProbeSummary::NeitherWithinBudget
        }
    }
}

fn describe(out: &DirectionOutcome, bound: u64) -> String {
    match out {
        DirectionOutcome::Found(x) => format!("simulation found: {x:?}"),
        DirectionOutcome::NoneWithinBound { candidates } => {
            format!("no simulation with entries in {{0..{bound}, inf}} ({candidates} candidates)")
        }
        DirectionOutcome::BudgetExhausted { candidates } => {
            format!("step budget exhausted after {candidates} candidates")
        }
    }
}

impl fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(w) => writeln!(f, "witness: {} ({} vs {})", w.word, w.lhs, w.rhs)?,
            None => writeln!(
                f,
                "witness: none ({} words up to length {} agree)",
                self.words_checked, self.max_word_len
            )?,
        }
        writeln!(f, "A -> B: {}", describe(&self.forward, self.entry_bound))?;
        writeln!(f, "B -> A: {}", describe(&self.backward, self.entry_bound))?;
        write!(f, "summary: ")?;
        match self.summary() {
            ProbeSummary::WitnessFound => f.write_str("witness found: the automata are not equivalent"),
            ProbeSummary::SimulationFound => f.write_str("simulation found: the automata are equivalent"),
            ProbeSummary::NeitherWithinBudget => f.write_str(
                "neither within budget; this is a bounded search result, \
                 not a proof that no simulation or witness exists",
            ),
        }
    }
}

fn bounded_entries(bound: u64) -> Vec<Tropical> {
    (0..=bound).map(Tropical::Finite).chain([Tropical::Infinity]).collect()
}

fn search_direction(src: &Automaton<MinPlus>, dst: &Automaton<MinPlus>, entries: &[Tropical], max_steps: u64) -> Result<DirectionOutcome> {
    let (r, c) = (src.dim(), dst.dim());
    let len = r * c;
    let base = entries.len();
    let mut digits = vec![0usize; len];
    let mut candidates = 0u64;
    loop {
        if candidates >= max_steps {
            return Ok(DirectionOutcome::BudgetExhausted { candidates });
        }
        candidates += 1;
        let x = Matrix::new(MinPlus, r, c, digits.iter().map(|&d| entries[d]).collect())?;
        if check_simulation(src, dst, &x)?.is_pass() {
            return Ok(DirectionOutcome::Found(x));
        }
        // odometer, first entry fastest
        let mut i = 0;
        loop {
            if i == len {
                return Ok(DirectionOutcome::NoneWithinBound { candidates });
            }
            digits[i] += 1;
            if digits[i] < base {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Looks for a distinguishing word and, independently, for a single
/// simulation matrix in each direction with entries in
/// `{0, …, budget.tropical_entry_bound, ∞}`. The search order is fixed, so
/// reports are reproducible.
pub fn tropical_probe(a: &Automaton<MinPlus>, b: &Automaton<MinPlus>, budget: &Budget) -> Result<ProbeReport> {
    let (witness, words_checked) = match semidecide_inequivalent(a, b, budget)? {
        WordSearch::Witness(w) => (Some(w), 0),
        WordSearch::Exhausted { words_checked } => (None, words_checked),
    };
    let entries = bounded_entries(budget.tropical_entry_bound);
    let forward = search_direction(a, b, &entries, budget.max_steps)?;
    let backward = search_direction(b, a, &entries, budget.max_steps)?;
    Ok(ProbeReport {
        witness,
        words_checked,
        max_word_len: budget.max_word_len,
        entry_bound: budget.tropical_entry_bound,
        forward,
        backward,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Tropical::*;

    fn one_state(w: u64) -> Automaton<MinPlus> {
        let t = MinPlus;
        Automaton::new(t, vec!['a'], vec![Finite(0)], vec![Matrix::from_rows(t, vec![vec![Finite(w)]]).unwrap()], vec![Finite(0)])
            .unwrap()
    }

    fn two_state() -> Automaton<MinPlus> {
        let t = MinPlus;
        Automaton::new(
            t,
            vec!['a'],
            vec![Finite(0), Finite(0)],
            vec![Matrix::from_rows(t, vec![vec![Finite(1), Infinity], vec![Infinity, Finite(2)]]).unwrap()],
            vec![Finite(0), Infinity],
        )
        .unwrap()
    }

    #[test]
    fn identity_is_found_for_equal_automata() {
        let a = two_state();
        let r = tropical_probe(&a, &a, &Budget::default()).unwrap();
        assert_eq!(r.summary(), ProbeSummary::SimulationFound);
        assert_eq!(r.forward, DirectionOutcome::Found(Matrix::identity(MinPlus, 2)));
    }

    #[test]
    fn inequivalent_pair_has_witness() {
        let r = tropical_probe(&one_state(1), &one_state(2), &Budget::default()).unwrap();
        assert_eq!(r.summary(), ProbeSummary::WitnessFound);
    }

    #[test]
    fn documented_pair_directions() {
        // A -> B forces X = γ = (0 0), which fails M X = X N; B -> A is
        // satisfied by (0, inf)ᵀ.
        let r = tropical_probe(&one_state(1), &two_state(), &Budget::default()).unwrap();
        assert!(r.witness.is_none());
        assert_eq!(r.forward, DirectionOutcome::NoneWithinBound { candidates: 36 });
        assert_eq!(
            r.backward,
            DirectionOutcome::Found(Matrix::column_vector(MinPlus, vec![Finite(0), Infinity]).unwrap())
        );
        assert!(r.to_string().contains("B -> A: simulation found"));
    }
}
