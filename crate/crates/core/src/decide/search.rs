use super::Budget;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::Semiring;
use crate::simulation::{check_simulation, ChainCertificate, Direction, Link};
use crate::wfa::Automaton;

#[derive(Debug, Clone)]
pub enum SearchStatus<S: Semiring> {
    Found(ChainCertificate<S>),
    /// `complete` is true when the whole bounded space was enumerated, false
    /// when `max_steps` ran out first.
    Exhausted { steps: u64, complete: bool },
    /// More candidates remain.
    Pending,
}

/// Position in the enumeration: chain length, dimensions of the
/// intermediate automata, and their indices in the carrier encoding.
#[derive(Debug, Clone)]
struct Cursor {
    length: usize,
    dims: Vec<usize>,
    indices: Vec<u128>,
}

/// Resumable enumeration of simulation chains `A = C_0, …, C_k = B` over a
/// finite carrier.
///
/// Candidates are ordered by chain length, then by the tuple of
/// intermediate dimensions, then by the intermediate automata themselves
/// (mixed-radix over the carrier). For fixed intermediate automata the
/// links are independent, so each link is searched separately: forward
/// matrices first, then backward ones. The search space grows like
/// `|S|^{O(d²)}` and is only practical for tiny instances.
pub struct ChainSearch<'a, S: Semiring> {
    a: &'a Automaton<S>,
    b: &'a Automaton<S>,
    carrier: Vec<S::Elem>,
    max_chain_len: usize,
    max_dim: usize,
    max_steps: u64,
    steps: u64,
    cursor: Option<Cursor>,
}

fn saturating_pow(base: u128, exp: usize) -> u128 {
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .unwrap_or(u128::MAX)
}

impl<'a, S: Semiring> ChainSearch<'a, S> {
    pub fn new(a: &'a Automaton<S>, b: &'a Automaton<S>, budget: &Budget) -> Result<Self> {
        a.same_signature(b)?;
        let carrier = a.semiring().carrier().filter(|_| a.semiring().flags().is_finite).ok_or_else(|| {
            Error::UnsupportedSemiring {
                semiring: a.semiring().id(),
                operation: "chain search",
                reason: "matrix enumeration needs a finite carrier",
            }
        })?;
        Ok(ChainSearch {
            a,
            b,
            carrier,
            max_chain_len: budget.max_chain_len,
            max_dim: budget.intermediate_dim(a.dim(), b.dim()),
            max_steps: budget.max_steps,
            steps: 0,
            cursor: Some(Cursor {
                length: 0,
                dims: Vec::new(),
                indices: Vec::new(),
            }),
        })
    }

    /// Candidates examined so far (intermediate automata and link matrices).
    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn automaton_count(&self, dim: usize) -> u128 {
        let letters = self.a.alphabet().len();
        saturating_pow(self.carrier.len() as u128, 2 * dim + letters * dim * dim)
    }

    fn digits(&self, mut index: u128, len: usize) -> Vec<S::Elem> {
        let base = self.carrier.len() as u128;
        (0..len)
            .map(|_| {
                let d = (index % base) as usize;
                index /= base;
                self.carrier[d].clone()
            })
            .collect()
    }

    fn decode_automaton(&self, dim: usize, index: u128) -> Result<Automaton<S>> {
        let letters = self.a.alphabet().len();
        let mut digits = self.digits(index, 2 * dim + letters * dim * dim).into_iter();
        let s = self.a.semiring();
        let initial: Vec<_> = digits.by_ref().take(dim).collect();
        let mut transitions = Vec::with_capacity(letters);
        for _ in 0..letters {
            transitions.push(Matrix::new(s.clone(), dim, dim, digits.by_ref().take(dim * dim).collect())?);
        }
        let final_weights: Vec<_> = digits.collect();
        Automaton::new(s.clone(), self.a.alphabet().to_vec(), initial, transitions, final_weights)
    }

    /// Advances the cursor; `None` once the bounded space is exhausted.
    fn advance(&self, mut c: Cursor) -> Option<Cursor> {
        for i in (0..c.indices.len()).rev() {
            c.indices[i] += 1;
            if c.indices[i] < self.automaton_count(c.dims[i]) {
                return Some(c);
            }
            c.indices[i] = 0;
        }
        for i in (0..c.dims.len()).rev() {
            c.dims[i] += 1;
            if c.dims[i] <= self.max_dim {
                return Some(c);
            }
            c.dims[i] = 1;
        }
        let length = c.length + 1;
        if length > self.max_chain_len || (length >= 2 && self.max_dim == 0) {
            return None;
        }
        Some(Cursor {
            length,
            dims: vec![1; length.saturating_sub(1)],
            indices: vec![0; length.saturating_sub(1)],
        })
    }

    fn out_of_steps(&self) -> bool {
        self.steps >= self.max_steps
    }

    /// First simulation matrix between `p` and `q` in either direction.
    /// The inner `Err(())` means the step budget ran out.
    fn find_link(&mut self, p: &Automaton<S>, q: &Automaton<S>) -> Result<Result<Option<Link<S>>, ()>> {
        for direction in [Direction::Forward, Direction::Backward] {
            let (src, dst) = match direction {
                Direction::Forward => (p, q),
                Direction::Backward => (q, p),
            };
            let (r, c) = (src.dim(), dst.dim());
            let count = saturating_pow(self.carrier.len() as u128, r * c);
            let mut index = 0u128;
            while index < count {
                if self.out_of_steps() {
                    return Ok(Err(()));
                }
                self.steps += 1;
                let x = Matrix::new(src.semiring().clone(), r, c, self.digits(index, r * c))?;
                if check_simulation(src, dst, &x)?.is_pass() {
                    return Ok(Ok(Some(Link { direction, matrix: x })));
                }
                index += 1;
            }
        }
        Ok(Ok(None))
    }

    /// Examines the candidate at the cursor. `Ok(None)` on budget exhaustion.
    fn examine(&mut self, c: &Cursor) -> Result<Option<Option<ChainCertificate<S>>>> {
        if c.length == 0 {
            if self.out_of_steps() {
                return Ok(None);
            }
            self.steps += 1;
            return Ok(Some((self.a == self.b).then(|| ChainCertificate {
                automata: vec![self.a.clone()],
                links: Vec::new(),
            })));
        }
        let mut automata = Vec::with_capacity(c.length + 1);
        automata.push(self.a.clone());
        for (&d, &i) in c.dims.iter().zip(&c.indices) {
            if self.out_of_steps() {
                return Ok(None);
            }
            self.steps += 1;
            automata.push(self.decode_automaton(d, i)?);
        }
        automata.push(self.b.clone());
        let mut links = Vec::with_capacity(c.length);
        for k in 0..c.length {
            match self.find_link(&automata[k], &automata[k + 1])? {
                Err(()) => return Ok(None),
                Ok(None) => return Ok(Some(None)),
                Ok(Some(link)) => links.push(link),
            }
        }
        Ok(Some(Some(ChainCertificate { automata, links })))
    }

    /// Examines up to `units` candidate tuples of intermediate automata.
    pub fn run_units(&mut self, units: usize) -> Result<SearchStatus<S>> {
        for _ in 0..units {
            let Some(cursor) = self.cursor.take() else {
                return Ok(SearchStatus::Exhausted {
                    steps: self.steps,
                    complete: true,
                });
            };
            match self.examine(&cursor)? {
                None => {
                    self.cursor = Some(cursor);
                    return Ok(SearchStatus::Exhausted {
                        steps: self.steps,
                        complete: false,
                    });
                }
                Some(Some(chain)) => {
                    self.cursor = self.advance(cursor);
                    return Ok(SearchStatus::Found(chain));
                }
                Some(None) => self.cursor = self.advance(cursor),
            }
        }
        Ok(if self.cursor.is_none() {
            SearchStatus::Exhausted {
                steps: self.steps,
                complete: true,
            }
        } else {
            SearchStatus::Pending
        })
    }
}

/// Runs [`ChainSearch`] to completion or budget exhaustion.
pub fn search_chain_finite<S: Semiring>(a: &Automaton<S>, b: &Automaton<S>, budget: &Budget) -> Result<SearchStatus<S>> {
    let mut search = ChainSearch::new(a, b, budget)?;
    loop {
        match search.run_units(usize::MAX)? {
            SearchStatus::Pending => continue,
            done => return Ok(done),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Boolean;
    use crate::simulation::verify_chain;

    fn b_aut(alpha: &[u8], m: &[&[u8]], beta: &[u8]) -> Automaton<Boolean> {
        let bits = |v: &[u8]| v.iter().map(|&x| x == 1).collect::<Vec<_>>();
        Automaton::new(
            Boolean,
            vec!['a'],
            bits(alpha),
            vec![Matrix::from_rows(Boolean, m.iter().map(|r| bits(r)).collect()).unwrap()],
            bits(beta),
        )
        .unwrap()
    }

    #[test]
    fn identical_automata_give_empty_chain() {
        let a = b_aut(&[1, 0], &[&[0, 1], &[0, 1]], &[0, 1]);
        match search_chain_finite(&a, &a, &Budget::default()).unwrap() {
            SearchStatus::Found(chain) => assert!(chain.links.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn finds_chain_for_two_layouts() {
        let a = b_aut(&[1, 0], &[&[0, 1], &[0, 1]], &[0, 1]);
        let b = b_aut(&[0, 1], &[&[1, 0], &[1, 0]], &[1, 0]);
        let budget = Budget {
            max_intermediate_dim: Some(3),
            ..Budget::default()
        };
        match search_chain_finite(&a, &b, &budget).unwrap() {
            SearchStatus::Found(chain) => assert!(verify_chain(&chain, &a, &b).unwrap().is_pass()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn length_zero_budget_exhausts_on_distinct_automata() {
        let a = b_aut(&[1, 0], &[&[0, 1], &[0, 1]], &[0, 1]);
        let b = b_aut(&[0, 1], &[&[1, 0], &[1, 0]], &[1, 0]);
        let budget = Budget {
            max_chain_len: 0,
            ..Budget::default()
        };
        assert!(matches!(
            search_chain_finite(&a, &b, &budget).unwrap(),
            SearchStatus::Exhausted { complete: true, .. }
        ));
    }

    #[test]
    fn step_budget_is_respected() {
        let a = b_aut(&[1, 0], &[&[0, 1], &[0, 1]], &[0, 1]);
        let b = b_aut(&[1], &[&[0]], &[0]);
        let budget = Budget {
            max_steps: 10,
            ..Budget::default()
        };
        match search_chain_finite(&a, &b, &budget).unwrap() {
            SearchStatus::Exhausted { steps, complete } => {
                assert_eq!(steps, 10);
                assert!(!complete);
            }
            other => panic!("{other:?}"),
        }
    }
}
