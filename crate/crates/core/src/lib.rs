//! Weighted finite automata over pluggable semirings.
//!
//! An automaton `A = (α, {M_a}, β)` over a semiring `S` assigns every word
//! `w` the coefficient `α·M_w·β`. This crate evaluates those behaviors,
//! checks and composes simulation matrices between automata, builds joint
//! automata `A ← C → B` witnessing equivalence (finite semirings, fields and
//! the integers), and runs budgeted equivalence procedures that emit
//! re-verifiable certificates.
//!
//! Everything is generic over [`Semiring`]; the numeric instances are a
//! single [`Numeric`] type parameterized by an exact scalar, and the aliases
//! below name the shipped ones.
//!
//! ```
//! use simwfa::{Automaton, Matrix, Naturals, Word};
//! use num_bigint::BigUint;
//!
//! let s = Naturals::new();
//! let m = Matrix::from_rows(s, vec![vec![BigUint::from(2u32)]]).unwrap();
//! let a = Automaton::new(s, vec!['a'], vec![1u32.into()], vec![m], vec![3u32.into()]).unwrap();
//! assert_eq!(a.behavior_coeff(&Word::from("aa")).unwrap(), BigUint::from(12u32));
//! ```

pub mod decide;
pub mod error;
pub mod io;
pub mod joint;
pub mod matrix;
pub mod random;
pub mod semiring;
pub mod simulation;
pub mod wfa;

pub use error::{Error, Result};
pub use joint::{
    emit_chain, joint_field, joint_finite, joint_integers, InequivalenceWitness, JointMode, JointOutcome,
    JointResult,
};
pub use matrix::{mat_add, mat_identity, mat_mul, Matrix};
pub use semiring::{Boolean, Flags, MinPlus, Numeric, Semiring, Table, TableSemiring, Tropical};
pub use simulation::{
    check_simulation, compose, verify_chain, ChainCertificate, ChainReport, Direction, Link, SimulationCertificate,
    SimulationReport,
};
pub use wfa::{Automaton, Word};

/// `(ℕ, +, ·, 0, 1)` with arbitrary precision.
pub type Naturals = Numeric<num_bigint::BigUint>;
/// `(ℤ, +, ·, 0, 1)` with arbitrary precision.
pub type Integers = Numeric<num_bigint::BigInt>;
/// `(ℚ, +, ·, 0, 1)` with exact fractions.
pub type Rationals = Numeric<num_rational::BigRational>;

pub type BoolAutomaton = Automaton<Boolean>;
pub type NatAutomaton = Automaton<Naturals>;
pub type IntAutomaton = Automaton<Integers>;
pub type RatAutomaton = Automaton<Rationals>;
pub type TropicalAutomaton = Automaton<MinPlus>;
pub type TableAutomaton = Automaton<Table>;
