//! Random automata and random simulations, for property tests.
//!
//! The expansion helpers take an automaton `C` and return a larger automaton
//! together with a simulation matrix connecting it to `C`, so equivalent
//! pairs with known certificates can be produced over any semiring.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::semiring::{Boolean, MinPlus, Numeric, Ring, Semiring, Table, Tropical};
use crate::wfa::Automaton;

/// Semirings that can sample small random elements.
pub trait RandomElement: Semiring {
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Random `k` elements whose sum is `v`. The default places `v` at one
    /// random position and zero elsewhere, which is valid in every semiring.
    fn split<R: Rng + ?Sized>(&self, v: &Self::Elem, k: usize, rng: &mut R) -> Vec<Self::Elem> {
        let mut out = vec![self.zero(); k];
        out[rng.gen_range(0..k)] = v.clone();
        out
    }
}

fn ring_split<S: Ring + RandomElement, R: Rng + ?Sized>(s: &S, v: &S::Elem, k: usize, rng: &mut R) -> Vec<S::Elem> {
    let mut out: Vec<S::Elem> = (1..k).map(|_| s.random_elem(rng)).collect();
    let rest = out.iter().fold(v.clone(), |acc, x| s.sub(&acc, x));
    out.push(rest);
    out.shuffle(rng);
    out
}

impl RandomElement for Boolean {
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        rng.gen_bool(0.5)
    }

    fn split<R: Rng + ?Sized>(&self, v: &bool, k: usize, rng: &mut R) -> Vec<bool> {
        let mut out: Vec<bool> = (0..k).map(|_| *v && rng.gen_bool(0.5)).collect();
        if *v {
            out[rng.gen_range(0..k)] = true;
        }
        out
    }
}

impl RandomElement for Numeric<BigUint> {
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        if rng.gen_bool(0.4) {
            BigUint::from(0u32)
        } else {
            BigUint::from(rng.gen_range(1u32..=3))
        }
    }

    fn split<R: Rng + ?Sized>(&self, v: &BigUint, k: usize, rng: &mut R) -> Vec<BigUint> {
        let Some(mut rest) = v.to_u64() else {
            let mut out = vec![BigUint::from(0u32); k];
            out[rng.gen_range(0..k)] = v.clone();
            return out;
        };
        let mut out = Vec::with_capacity(k);
        for _ in 1..k {
            let part = rng.gen_range(0..=rest);
            rest -= part;
            out.push(BigUint::from(part));
        }
        out.push(BigUint::from(rest));
        out.shuffle(rng);
        out
    }
}

impl RandomElement for Numeric<BigInt> {
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigInt {
        if rng.gen_bool(0.3) {
            BigInt::from(0)
        } else {
            BigInt::from(rng.gen_range(-2i32..=2))
        }
    }

    fn split<R: Rng + ?Sized>(&self, v: &BigInt, k: usize, rng: &mut R) -> Vec<BigInt> {
        ring_split(self, v, k, rng)
    }
}

impl RandomElement for Numeric<BigRational> {
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        if rng.gen_bool(0.3) {
            BigRational::from_integer(0.into())
        } else {
            BigRational::new(rng.gen_range(-2i32..=2).into(), rng.gen_range(1i32..=2).into())
        }
    }

    fn split<R: Rng + ?Sized>(&self, v: &BigRational, k: usize, rng: &mut R) -> Vec<BigRational> {
        ring_split(self, v, k, rng)
    }
}

impl RandomElement for MinPlus {
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Tropical {
        if rng.gen_bool(0.3) {
            Tropical::Infinity
        } else {
            Tropical::Finite(rng.gen_range(0..=4))
        }
    }

    /// Every part is `v` or larger, and at least one is `v`.
    fn split<R: Rng + ?Sized>(&self, v: &Tropical, k: usize, rng: &mut R) -> Vec<Tropical> {
        let mut out: Vec<Tropical> = (0..k)
            .map(|_| match v {
                Tropical::Finite(x) if rng.gen_bool(0.5) => Tropical::Finite(x + rng.gen_range(0..=2)),
                _ => Tropical::Infinity,
            })
            .collect();
        out[rng.gen_range(0..k)] = *v;
        out
    }
}

impl RandomElement for Table {
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        rng.gen_range(0..self.table().len())
    }
}

pub fn random_matrix<S: RandomElement, R: Rng + ?Sized>(s: &S, rows: usize, cols: usize, rng: &mut R) -> Matrix<S> {
    let entries = (0..rows * cols).map(|_| s.random_elem(rng)).collect();
    Matrix::new(s.clone(), rows, cols, entries).expect("sampled elements lie in the carrier")
}

pub fn random_automaton<S: RandomElement, R: Rng + ?Sized>(
    s: &S,
    alphabet: &[char],
    dim: usize,
    rng: &mut R,
) -> Automaton<S> {
    let initial = (0..dim).map(|_| s.random_elem(rng)).collect();
    let transitions = alphabet.iter().map(|_| random_matrix(s, dim, dim, rng)).collect();
    let final_weights = (0..dim).map(|_| s.random_elem(rng)).collect();
    Automaton::new(s.clone(), alphabet.to_vec(), initial, transitions, final_weights)
        .expect("random automaton is well formed")
}

/// Assignment of the states of the larger automaton: a copy of a state of
/// the smaller one, or a dead state.
fn assignment<R: Rng + ?Sized>(small: usize, extra: usize, rng: &mut R) -> Vec<Option<usize>> {
    let mut map: Vec<Option<usize>> = (0..small).map(Some).collect();
    for _ in 0..extra {
        map.push(if rng.gen_bool(0.25) {
            None
        } else {
            Some(rng.gen_range(0..small))
        });
    }
    map.shuffle(rng);
    map
}

fn zero_one<S: Semiring>(s: &S, map: &[Option<usize>], small: usize) -> Matrix<S> {
    let mut x = Matrix::zeros(s.clone(), map.len(), small);
    for (i, f) in map.iter().enumerate() {
        if let Some(j) = f {
            x.set(i, *j, s.one()).expect("one is in the carrier");
        }
    }
    x
}

/// Builds `A` with `dim(A) = dim(C) + extra` and a simulation `A →X C`.
///
/// Each state of `A` is either a copy of a state of `C`, splitting that
/// state's incoming and initial weights among the copies, or a dead state
/// that no live state depends on.
pub fn expand_source<S: RandomElement, R: Rng + ?Sized>(
    c: &Automaton<S>,
    extra: usize,
    rng: &mut R,
) -> Result<(Automaton<S>, Matrix<S>)> {
    let s = c.semiring();
    let n = c.dim();
    let g = assignment(n, extra, rng);
    let m = g.len();
    let copies: Vec<Vec<usize>> = (0..n).map(|j| (0..m).filter(|&i| g[i] == Some(j)).collect()).collect();

    let mut alpha: Vec<_> = (0..m).map(|_| s.random_elem(rng)).collect();
    for (j, members) in copies.iter().enumerate() {
        for (&i, part) in members.iter().zip(s.split(c.initial().get(0, j), members.len(), rng)) {
            alpha[i] = part;
        }
    }
    let beta = g
        .iter()
        .map(|f| f.map_or_else(|| s.zero(), |j| c.final_weights().get(j, 0).clone()))
        .collect();
    let mut transitions = Vec::with_capacity(c.alphabet().len());
    for n_a in c.transitions() {
        let mut m_a = Matrix::zeros(s.clone(), m, m);
        for i in 0..m {
            for k in 0..m {
                // weights into dead states are invisible through X
                if g[k].is_none() {
                    m_a.set(i, k, s.random_elem(rng))?;
                }
            }
            let Some(src) = g[i] else { continue };
            for (j, members) in copies.iter().enumerate() {
                for (&k, part) in members.iter().zip(s.split(n_a.get(src, j), members.len(), rng)) {
                    m_a.set(i, k, part)?;
                }
            }
        }
        transitions.push(m_a);
    }
    let a = Automaton::new(s.clone(), c.alphabet().to_vec(), alpha, transitions, beta)?;
    Ok((a, zero_one(s, &g, n)))
}

/// Builds `B` with `dim(B) = dim(A) + extra` and a simulation `A →X B`.
///
/// Dual to [`expand_source`]: copies of a state of `A` share its outgoing
/// and final weights, dead states are unreachable from live ones.
pub fn expand_target<S: RandomElement, R: Rng + ?Sized>(
    a: &Automaton<S>,
    extra: usize,
    rng: &mut R,
) -> Result<(Automaton<S>, Matrix<S>)> {
    let s = a.semiring();
    let m = a.dim();
    let f = assignment(m, extra, rng);
    let n = f.len();
    let copies: Vec<Vec<usize>> = (0..m).map(|i| (0..n).filter(|&j| f[j] == Some(i)).collect()).collect();

    let gamma = f
        .iter()
        .map(|g| g.map_or_else(|| s.zero(), |i| a.initial().get(0, i).clone()))
        .collect();
    let mut delta = vec![s.zero(); n];
    for j in 0..n {
        if f[j].is_none() {
            delta[j] = s.random_elem(rng);
        }
    }
    for (i, members) in copies.iter().enumerate() {
        for (&j, part) in members.iter().zip(s.split(a.final_weights().get(i, 0), members.len(), rng)) {
            delta[j] = part;
        }
    }
    let mut transitions = Vec::with_capacity(a.alphabet().len());
    for m_a in a.transitions() {
        let mut n_a = Matrix::zeros(s.clone(), n, n);
        for k in 0..n {
            if f[k].is_none() {
                for j in 0..n {
                    n_a.set(k, j, s.random_elem(rng))?;
                }
            }
        }
        for j in 0..n {
            let Some(tgt) = f[j] else { continue };
            for (i, members) in copies.iter().enumerate() {
                for (&k, part) in members.iter().zip(s.split(m_a.get(i, tgt), members.len(), rng)) {
                    n_a.set(k, j, part)?;
                }
            }
        }
        transitions.push(n_a);
    }
    let b = Automaton::new(s.clone(), a.alphabet().to_vec(), gamma, transitions, delta)?;
    Ok((b, zero_one(s, &f, m).transpose()))
}

/// `B = (αP, P⁻¹M_aP, P⁻¹β)` for a random product `P` of `shears`
/// elementary matrices `I + c·e_ij`, so that `A →P B`.
pub fn change_basis<S: Ring + RandomElement, R: Rng + ?Sized>(
    a: &Automaton<S>,
    shears: usize,
    rng: &mut R,
) -> Result<(Automaton<S>, Matrix<S>)> {
    let s = a.semiring();
    let n = a.dim();
    let mut p = Matrix::identity(s.clone(), n);
    let mut p_inv = Matrix::identity(s.clone(), n);
    if n >= 2 {
        for _ in 0..shears {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let c = s.random_elem(rng);
            let mut e = Matrix::identity(s.clone(), n);
            e.set(i, j, c.clone())?;
            let mut e_inv = Matrix::identity(s.clone(), n);
            e_inv.set(i, j, s.neg(&c))?;
            p = p.mul(&e)?;
            p_inv = e_inv.mul(&p_inv)?;
        }
    }
    let gamma = a.initial().mul(&p)?;
    let delta = p_inv.mul(a.final_weights())?;
    let transitions = a
        .transitions()
        .iter()
        .map(|m| p_inv.mul(m)?.mul(&p))
        .collect::<Result<Vec<_>>>()?;
    let b = Automaton::new(
        s.clone(),
        a.alphabet().to_vec(),
        gamma.entries().to_vec(),
        transitions,
        delta.entries().to_vec(),
    )?;
    Ok((b, p))
}

/// Copy of `a` with one randomly chosen coefficient replaced by a different
/// element. The result need not be inequivalent to `a`.
pub fn perturb<S: RandomElement, R: Rng + ?Sized>(a: &Automaton<S>, rng: &mut R) -> Automaton<S> {
    let s = a.semiring().clone();
    let n = a.dim();
    let letters = a.alphabet().len();
    let mut out = a.clone();
    let slot = rng.gen_range(0..2 * n + letters * n * n);
    let (target, i, j) = if slot < n {
        (out.initial_mut(), 0, slot)
    } else if slot < 2 * n {
        (out.final_weights_mut(), slot - n, 0)
    } else {
        let k = slot - 2 * n;
        (out.transition_mut(k / (n * n)), (k % (n * n)) / n, k % n)
    };
    let old = target.get(i, j).clone();
    let mut new = s.random_elem(rng);
    for _ in 0..64 {
        if new != old {
            break;
        }
        new = s.random_elem(rng);
    }
    if new == old {
        new = if s.is_zero(&old) { s.one() } else { s.zero() };
    }
    target.set(i, j, new).expect("sampled element lies in the carrier");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulation::check_simulation;
    use crate::{Integers, Naturals, Rationals};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn exercise<S: RandomElement>(s: S, seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..50 {
            let dim = rng.gen_range(1..=3);
            let c = random_automaton(&s, &['a', 'b'], dim, &mut rng);
            let extra = rng.gen_range(0..=2);
            let (a, x) = expand_source(&c, extra, &mut rng).unwrap();
            assert!(check_simulation(&a, &c, &x).unwrap().is_pass());
            let (b, y) = expand_target(&c, extra, &mut rng).unwrap();
            assert!(check_simulation(&c, &b, &y).unwrap().is_pass());
        }
    }

    #[test]
    fn expansions_are_simulations() {
        exercise(Boolean, 1);
        exercise(Naturals::new(), 2);
        exercise(Integers::new(), 3);
        exercise(Rationals::new(), 4);
        exercise(MinPlus, 5);
        exercise(Table::new(crate::TableSemiring::integers_mod(4)).unwrap(), 6);
    }

    #[test]
    fn change_basis_is_a_simulation() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let a = random_automaton(&Integers::new(), &['a'], 3, &mut rng);
            let (b, p) = change_basis(&a, 4, &mut rng).unwrap();
            assert!(check_simulation(&a, &b, &p).unwrap().is_pass());
        }
    }

    #[test]
    fn split_sums_back() {
        let mut rng = StdRng::seed_from_u64(8);
        let t = MinPlus;
        for v in [Tropical::Finite(3), Tropical::Infinity] {
            let parts = t.split(&v, 3, &mut rng);
            assert_eq!(parts.iter().fold(t.zero(), |acc, x| t.add(&acc, x)), v);
        }
        let n = Naturals::new();
        let parts = n.split(&BigUint::from(7u32), 4, &mut rng);
        assert_eq!(parts.iter().sum::<BigUint>(), BigUint::from(7u32));
    }

    #[test]
    fn perturb_changes_exactly_one_entry() {
        let mut rng = StdRng::seed_from_u64(9);
        let a = random_automaton(&Boolean, &['a'], 2, &mut rng);
        let b = perturb(&a, &mut rng);
        let flat = |x: &Automaton<Boolean>| {
            let mut v = x.initial().entries().to_vec();
            v.extend_from_slice(x.final_weights().entries());
            for m in x.transitions() {
                v.extend_from_slice(m.entries());
            }
            v
        };
        let diff = flat(&a).iter().zip(flat(&b)).filter(|(p, q)| **p != *q).count();
        assert_eq!(diff, 1);
    }
}
