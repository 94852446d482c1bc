use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use simwfa::random::{expand_source, expand_target, random_automaton, random_matrix, RandomElement};
use simwfa::semiring::laws::check_semimodule;
use simwfa::simulation::{check_simulation, compose, SimulationCertificate};
use simwfa::{Automaton, Boolean, Integers, Matrix, MinPlus, Naturals, Rationals, Semiring, Table, TableSemiring, Word};

fn z4() -> Table {
    Table::new(TableSemiring::integers_mod(4)).unwrap()
}

fn words(alphabet: &[char], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| alphabet.iter().map(move |&c| w.concat(&Word::from_iter([c]))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn matrix_laws<S: RandomElement>(s: &S, seed: u64) {
    let mut rng = StdRng::seed_from_u64(seed);
    let (p, q, r, t) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
    let a = random_matrix(s, p, q, &mut rng);
    let b = random_matrix(s, q, r, &mut rng);
    let b2 = random_matrix(s, q, r, &mut rng);
    let c = random_matrix(s, r, t, &mut rng);
    assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    assert_eq!(
        a.mul(&b.add(&b2).unwrap()).unwrap(),
        a.mul(&b).unwrap().add(&a.mul(&b2).unwrap()).unwrap()
    );
    assert_eq!(
        b.add(&b2).unwrap().mul(&c).unwrap(),
        b.mul(&c).unwrap().add(&b2.mul(&c).unwrap()).unwrap()
    );
    assert_eq!(Matrix::identity(s.clone(), p).mul(&a).unwrap(), a);
    assert_eq!(b.add(&Matrix::zeros(s.clone(), q, r)).unwrap(), b);
}

fn multiplicative<S: RandomElement>(s: &S, seed: u64) {
    let mut rng = StdRng::seed_from_u64(seed);
    let a = random_automaton(s, &['a', 'b'], rng.gen_range(1..=4), &mut rng);
    let all = words(a.alphabet(), 3);
    for _ in 0..8 {
        let u = &all[rng.gen_range(0..all.len())];
        let v = &all[rng.gen_range(0..all.len())];
        let uv = a.word_matrix(&u.concat(v)).unwrap();
        assert_eq!(uv, a.word_matrix(u).unwrap().mul(&a.word_matrix(v).unwrap()).unwrap());
    }
}

fn enumeration_agrees<S: RandomElement>(s: &S, seed: u64) {
    let mut rng = StdRng::seed_from_u64(seed);
    let a = random_automaton(s, &['a', 'b'], rng.gen_range(1..=3), &mut rng);
    let listed = a.enumerate_coeffs(4).unwrap();
    let expected = words(a.alphabet(), 4);
    assert_eq!(listed.len(), expected.len());
    for ((w, c), e) in listed.iter().zip(&expected) {
        assert_eq!(w, e);
        // independent evaluation: explicit left-to-right vector-matrix products
        let mut row = a.initial().clone();
        for &l in w.letters() {
            row = row.mul(a.transition(l).unwrap()).unwrap();
        }
        assert_eq!(*c, row.dot(a.final_weights()).unwrap());
    }
}

fn soundness<S: RandomElement>(s: &S, seed: u64) {
    let mut rng = StdRng::seed_from_u64(seed);
    let c = random_automaton(s, &['a', 'b'], rng.gen_range(1..=2), &mut rng);
    let (a, x) = expand_source(&c, rng.gen_range(0..=2), &mut rng).unwrap();
    let (b, y) = expand_target(&c, rng.gen_range(0..=2), &mut rng).unwrap();
    assert!(check_simulation(&a, &c, &x).unwrap().is_pass());
    let first = SimulationCertificate::new(a.clone(), c.clone(), x).unwrap();
    let second = SimulationCertificate::new(c, b.clone(), y).unwrap();
    let composed = compose(&first, &second).unwrap();
    assert!(check_simulation(&a, &b, composed.matrix()).unwrap().is_pass());
    for w in words(a.alphabet(), 5) {
        assert_eq!(a.behavior_coeff(&w).unwrap(), b.behavior_coeff(&w).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_product_laws(seed in any::<u64>()) {
        matrix_laws(&Boolean, seed);
        matrix_laws(&Naturals::new(), seed);
        matrix_laws(&Integers::new(), seed);
        matrix_laws(&Rationals::new(), seed);
        matrix_laws(&MinPlus, seed);
        matrix_laws(&z4(), seed);
    }

    #[test]
    fn word_matrix_is_multiplicative(seed in any::<u64>()) {
        multiplicative(&Boolean, seed);
        multiplicative(&Naturals::new(), seed);
        multiplicative(&Integers::new(), seed);
        multiplicative(&Rationals::new(), seed);
        multiplicative(&MinPlus, seed);
    }

    #[test]
    fn enumeration_matches_pointwise(seed in any::<u64>()) {
        enumeration_agrees(&Boolean, seed);
        enumeration_agrees(&Integers::new(), seed);
        enumeration_agrees(&MinPlus, seed);
        enumeration_agrees(&z4(), seed);
    }

    #[test]
    fn simulations_preserve_behavior(seed in any::<u64>()) {
        soundness(&Boolean, seed);
        soundness(&Naturals::new(), seed);
        soundness(&Rationals::new(), seed);
        soundness(&MinPlus, seed);
        soundness(&z4(), seed);
    }

    #[test]
    fn boolean_support_is_the_nfa_language(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a: Automaton<Boolean> = random_automaton(&Boolean, &['a', 'b'], rng.gen_range(1..=4), &mut rng);
        let n = a.dim();
        // subset construction on the underlying NFA
        let start: BTreeSet<usize> = (0..n).filter(|&i| *a.initial().get(0, i)).collect();
        for w in words(a.alphabet(), 5) {
            let mut current = start.clone();
            for &l in w.letters() {
                let m = a.transition(l).unwrap();
                current = current.iter().flat_map(|&i| (0..n).filter(move |&j| *m.get(i, j))).collect();
            }
            let accepted = current.iter().any(|&i| *a.final_weights().get(i, 0));
            prop_assert_eq!(accepted, a.behavior_coeff(&w).unwrap());
        }
    }
}

fn exhaustive_module<S: Semiring>(s: &S, k: usize) {
    let carrier = s.carrier().unwrap();
    let mut vectors: Vec<Vec<S::Elem>> = vec![Vec::new()];
    for _ in 0..k {
        vectors = vectors
            .iter()
            .flat_map(|v| {
                carrier.iter().map(move |e| {
                    let mut v = v.clone();
                    v.push(e.clone());
                    v
                })
            })
            .collect();
    }
    for a in &carrier {
        for b in &carrier {
            for u in &vectors {
                for v in &vectors {
                    for w in &vectors {
                        assert!(check_semimodule(s, a, b, u, v, w).unwrap().is_empty());
                    }
                }
            }
        }
    }
}

#[test]
fn semimodule_laws_exhaustive_for_finite_instances() {
    exhaustive_module(&Boolean, 2);
    exhaustive_module(&Table::new(TableSemiring::gf2()).unwrap(), 2);
    exhaustive_module(&z4(), 2);
}

/// Sample count per infinite instance.
const MODULE_SAMPLES: usize = 10_000;

fn sampled_module<S: RandomElement>(s: &S, seed: u64) {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..MODULE_SAMPLES {
        let k = rng.gen_range(1..=3);
        let a = s.random_elem(&mut rng);
        let b = s.random_elem(&mut rng);
        let vec = |rng: &mut StdRng| (0..k).map(|_| s.random_elem(rng)).collect::<Vec<_>>();
        let (u, v, w) = (vec(&mut rng), vec(&mut rng), vec(&mut rng));
        assert!(check_semimodule(s, &a, &b, &u, &v, &w).unwrap().is_empty());
    }
}

#[test]
fn semimodule_laws_sampled_for_infinite_instances() {
    sampled_module(&Naturals::new(), 11);
    sampled_module(&Integers::new(), 12);
    sampled_module(&Rationals::new(), 13);
    sampled_module(&MinPlus, 14);
}

#[test]
fn tropical_infinity_absorbs() {
    let t = MinPlus;
    let mut rng = StdRng::seed_from_u64(15);
    for _ in 0..1000 {
        let x = t.random_elem(&mut rng);
        assert_eq!(t.add(&x, &simwfa::Tropical::Infinity), x);
        assert_eq!(t.mul(&x, &simwfa::Tropical::Infinity).unwrap(), simwfa::Tropical::Infinity);
    }
}
