use std::collections::HashMap;

use super::{assemble, check_inputs, seed, successor, unsupported, witness_for, GeneratorSet, JointMode, JointOutcome};
use crate::error::Result;
use crate::semiring::Semiring;
use crate::wfa::Automaton;

/// Joint construction over a finite semiring. The generators are exactly
/// the distinct vectors `(α·M_w, γ·N_w)`, so `C` is deterministic: `κ` is
/// the first unit vector and row `i` of `R_a` is the unit vector pointing at
/// the successor of generator `i`.
pub fn joint_finite<S: Semiring>(a: &Automaton<S>, b: &Automaton<S>) -> Result<JointOutcome<S>> {
    check_inputs(a, b)?;
    let s = a.semiring();
    if !s.flags().is_finite {
        return Err(unsupported(s, "joint_finite", "the semiring is not finite"));
    }
    let letters = a.alphabet().len();
    let mut gens = GeneratorSet::new(a.dim());
    let mut index: HashMap<Vec<S::Elem>, usize> = HashMap::new();

    let start = seed(a, b);
    if let Some(w) = witness_for(a, b, &start, &crate::wfa::Word::empty())? {
        return Ok(JointOutcome::Inequivalent(w));
    }
    index.insert(start.clone(), gens.push(start, crate::wfa::Word::empty()));

    // targets[i][l] = index of the successor of generator i under letter l
    let mut targets: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < gens.len() {
        let mut row = Vec::with_capacity(letters);
        for l in 0..letters {
            let v = successor(a, b, gens.row(i), l)?;
            let j = match index.get(&v) {
                Some(&j) => j,
                None => {
                    let mut w = gens.word(i).clone();
                    w.push(a.alphabet()[l]);
                    if let Some(wit) = witness_for(a, b, &v, &w)? {
                        return Ok(JointOutcome::Inequivalent(wit));
                    }
                    let j = gens.push(v.clone(), w);
                    index.insert(v, j);
                    j
                }
            };
            row.push(j);
        }
        targets.push(row);
        i += 1;
    }

    let p = gens.len();
    let unit = |j: usize| {
        let mut v = vec![s.zero(); p];
        v[j] = s.one();
        v
    };
    let transitions = (0..letters)
        .map(|l| targets.iter().map(|t| unit(t[l])).collect())
        .collect();
    let iterations = gens.words().iter().map(|w| w.len()).max().unwrap_or(0) + 1;
    assemble(a, b, gens, unit(0), transitions, JointMode::Finite, iterations).map(JointOutcome::Joint)
}
