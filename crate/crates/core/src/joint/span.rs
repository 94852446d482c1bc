use super::echelon::Echelon;
use super::hermite::Hermite;
use super::{assemble, check_inputs, seed, successor, unsupported, witness_for, GeneratorSet, JointMode, JointOutcome};
use crate::error::Result;
use crate::semiring::{EuclideanRing, Field, Semiring};
use crate::wfa::Automaton;

/// Incrementally maintained submodule of `S^{1×k}` spanned by a list of
/// generators.
pub(crate) trait Span<S: Semiring> {
    /// Coefficients `c` with `v = Σ c_j g_j` over the generators inserted so
    /// far, or `None` when `v` lies outside the span.
    fn express(&self, v: &[S::Elem]) -> Result<Option<Vec<S::Elem>>>;

    /// Adds a generator known to lie outside the current span.
    fn insert(&mut self, v: Vec<S::Elem>) -> Result<()>;
}

/// Joint construction over a field: generators stay linearly independent,
/// so there are at most `m + n` of them and the coefficients are unique.
pub fn joint_field<S: Field>(a: &Automaton<S>, b: &Automaton<S>) -> Result<JointOutcome<S>> {
    check_inputs(a, b)?;
    let s = a.semiring();
    if !s.flags().is_field {
        return Err(unsupported(s, "joint_field", "the semiring is not a field"));
    }
    close(a, b, Echelon::new(s.clone()), None, JointMode::Field)
}

/// Joint construction over the integers: the generated module is kept in
/// Hermite normal form and the closure runs until it stops growing or `cap`
/// layers have been explored.
pub fn joint_integers<S: EuclideanRing>(a: &Automaton<S>, b: &Automaton<S>, cap: usize) -> Result<JointOutcome<S>> {
    check_inputs(a, b)?;
    close(a, b, Hermite::new(a.semiring().clone()), Some(cap.max(1)), JointMode::Integer)
}

fn close<S: Semiring, P: Span<S>>(
    a: &Automaton<S>,
    b: &Automaton<S>,
    mut span: P,
    cap: Option<usize>,
    mode: JointMode,
) -> Result<JointOutcome<S>> {
    let s = a.semiring();
    let letters = a.alphabet().len();
    let mut gens = GeneratorSet::new(a.dim());
    let start = seed(a, b);

    if start.iter().all(|e| s.is_zero(e)) {
        // Both behaviors vanish; C is the one-state zero automaton.
        let zero = vec![vec![s.zero()]];
        return assemble(a, b, gens, vec![s.zero()], vec![zero; letters], mode, 0).map(JointOutcome::Joint);
    }
    if let Some(w) = witness_for(a, b, &start, &crate::wfa::Word::empty())? {
        return Ok(JointOutcome::Inequivalent(w));
    }
    span.insert(start.clone())?;
    gens.push(start.clone(), crate::wfa::Word::empty());

    let mut frontier = vec![0usize];
    let mut iterations = 0;
    while !frontier.is_empty() {
        if cap.is_some_and(|c| iterations >= c) {
            return Ok(JointOutcome::CapExhausted {
                iterations,
                generators: gens.len(),
            });
        }
        iterations += 1;
        let mut next = Vec::new();
        for i in frontier {
            for l in 0..letters {
                let v = successor(a, b, gens.row(i), l)?;
                if span.express(&v)?.is_some() {
                    continue;
                }
                let mut w = gens.word(i).clone();
                w.push(a.alphabet()[l]);
                if let Some(wit) = witness_for(a, b, &v, &w)? {
                    return Ok(JointOutcome::Inequivalent(wit));
                }
                span.insert(v.clone())?;
                next.push(gens.push(v, w));
            }
        }
        frontier = next;
    }

    let p = gens.len();
    let solve = |v: &[S::Elem]| -> Result<Vec<S::Elem>> {
        let mut c = span
            .express(v)?
            .ok_or_else(|| crate::error::Error::SelfCheck("closed span misses a successor".into()))?;
        c.resize(p, s.zero());
        Ok(c)
    };
    let kappa = solve(&start)?;
    let mut transitions = Vec::with_capacity(letters);
    for l in 0..letters {
        let rows = (0..p)
            .map(|i| solve(&successor(a, b, gens.row(i), l)?))
            .collect::<Result<Vec<_>>>()?;
        transitions.push(rows);
    }
    assemble(a, b, gens, kappa, transitions, mode, iterations).map(JointOutcome::Joint)
}
