//! Simulation matrices between automata and chains of them.
//!
//! `X` is a simulation `A → B` when `αX = γ`, `M_a X = X N_a` for every
//! letter, and `β = Xδ`. Any such `X` forces `|A| = |B|`, and so does any
//! finite zig-zag chain of simulations.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::Semiring;
use crate::wfa::Automaton;

/// Which of the three defining identities failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "letter")]
pub enum Identity {
    /// `αX = γ`
    Initial,
    /// `M_a X = X N_a`
    Transition(char),
    /// `β = Xδ`
    Final,
}

/// First mismatching entry, in the order initial, transitions by letter,
/// final; row-major within a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub identity: Identity,
    pub row: usize,
    pub col: usize,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.identity {
            Identity::Initial => write!(f, "initial identity αX = γ fails at entry ({}, {})", self.row, self.col),
            Identity::Transition(c) => {
                write!(f, "transition identity M_{c}X = XN_{c} fails at entry ({}, {})", self.row, self.col)
            }
            Identity::Final => write!(f, "final identity β = Xδ fails at entry ({}, {})", self.row, self.col),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimulationReport {
    Pass,
    Fail(Mismatch),
}

impl SimulationReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, SimulationReport::Pass)
    }
}

fn first_mismatch<S: Semiring>(lhs: &Matrix<S>, rhs: &Matrix<S>, identity: Identity) -> Option<Mismatch> {
    let cols = lhs.cols();
    lhs.entries()
        .iter()
        .zip(rhs.entries())
        .position(|(a, b)| a != b)
        .map(|k| Mismatch {
            identity,
            row: k / cols,
            col: k % cols,
        })
}

/// Checks whether `x` is a simulation `a → b`.
pub fn check_simulation<S: Semiring>(a: &Automaton<S>, b: &Automaton<S>, x: &Matrix<S>) -> Result<SimulationReport> {
    a.same_signature(b)?;
    if *x.semiring() != *a.semiring() {
        return Err(Error::SemiringMismatch {
            left: a.semiring().id(),
            right: x.semiring().id(),
        });
    }
    if x.dims() != (a.dim(), b.dim()) {
        return Err(Error::DimensionMismatch {
            op: "simulation",
            left: (a.dim(), b.dim()),
            right: x.dims(),
        });
    }
    if let Some(m) = first_mismatch(&a.initial().mul(x)?, b.initial(), Identity::Initial) {
        return Ok(SimulationReport::Fail(m));
    }
    for ((&c, ma), nb) in a.alphabet().iter().zip(a.transitions()).zip(b.transitions()) {
        if let Some(m) = first_mismatch(&ma.mul(x)?, &x.mul(nb)?, Identity::Transition(c)) {
            return Ok(SimulationReport::Fail(m));
        }
    }
    if let Some(m) = first_mismatch(a.final_weights(), &x.mul(b.final_weights())?, Identity::Final) {
        return Ok(SimulationReport::Fail(m));
    }
    Ok(SimulationReport::Pass)
}

/// A verified simulation `source → target`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationCertificate<S: Semiring> {
    source: Automaton<S>,
    target: Automaton<S>,
    matrix: Matrix<S>,
}

impl<S: Semiring> SimulationCertificate<S> {
    /// Validates the matrix before accepting it.
    pub fn new(source: Automaton<S>, target: Automaton<S>, matrix: Matrix<S>) -> Result<Self> {
        match check_simulation(&source, &target, &matrix)? {
            SimulationReport::Pass => Ok(SimulationCertificate { source, target, matrix }),
            SimulationReport::Fail(m) => Err(Error::InvalidCertificate(m.to_string())),
        }
    }

    pub fn identity(a: Automaton<S>) -> Self {
        let matrix = Matrix::identity(a.semiring().clone(), a.dim());
        SimulationCertificate {
            target: a.clone(),
            source: a,
            matrix,
        }
    }

    pub fn source(&self) -> &Automaton<S> {
        &self.source
    }

    pub fn target(&self) -> &Automaton<S> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn into_parts(self) -> (Automaton<S>, Automaton<S>, Matrix<S>) {
        (self.source, self.target, self.matrix)
    }
}

/// Composes `A →X B` and `B →Y C` into `A →XY C`.
pub fn compose<S: Semiring>(
    first: &SimulationCertificate<S>,
    second: &SimulationCertificate<S>,
) -> Result<SimulationCertificate<S>> {
    if first.target != second.source {
        return Err(Error::MiddleMismatch);
    }
    let product = first.matrix.mul(&second.matrix)?;
    SimulationCertificate::new(first.source.clone(), second.target.clone(), product)
        .map_err(|e| Error::SelfCheck(format!("composition: {e}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `C_i →X C_{i+1}`, `X` is `dim(C_i) × dim(C_{i+1})`.
    Forward,
    /// `C_{i+1} →X C_i`, `X` is `dim(C_{i+1}) × dim(C_i)`.
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Link<S: Semiring> {
    pub direction: Direction,
    pub matrix: Matrix<S>,
}

/// Automata `C_0 … C_k` and `k` links between consecutive ones.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainCertificate<S: Semiring> {
    pub automata: Vec<Automaton<S>>,
    pub links: Vec<Link<S>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Endpoint {
    Start,
    End,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainReport {
    /// Every link verified, hence the endpoints have equal behaviors.
    Pass { links: usize },
    EndpointMismatch(Endpoint),
    /// `link` is 1-based.
    LinkFailed { link: usize, mismatch: Mismatch },
}

impl ChainReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, ChainReport::Pass { .. })
    }
}

impl fmt::Display for ChainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainReport::Pass { links } => {
                write!(f, "pass: {links} link(s) verified; the endpoint automata are equivalent")
            }
            ChainReport::EndpointMismatch(Endpoint::Start) => f.write_str("fail: chain does not start at A"),
            ChainReport::EndpointMismatch(Endpoint::End) => f.write_str("fail: chain does not end at B"),
            ChainReport::LinkFailed { link, mismatch } => write!(f, "fail: link {link}: {mismatch}"),
        }
    }
}

/// Verifies each link in its stated direction, without normalizing the
/// chain.
pub fn verify_chain<S: Semiring>(chain: &ChainCertificate<S>, a: &Automaton<S>, b: &Automaton<S>) -> Result<ChainReport> {
    let autos = &chain.automata;
    if autos.is_empty() || chain.links.len() + 1 != autos.len() {
        return Err(Error::MalformedChain(format!(
            "{} automata with {} links",
            autos.len(),
            chain.links.len()
        )));
    }
    if autos[0] != *a {
        return Ok(ChainReport::EndpointMismatch(Endpoint::Start));
    }
    if autos[autos.len() - 1] != *b {
        return Ok(ChainReport::EndpointMismatch(Endpoint::End));
    }
    for (i, link) in chain.links.iter().enumerate() {
        let (src, dst) = match link.direction {
            Direction::Forward => (&autos[i], &autos[i + 1]),
            Direction::Backward => (&autos[i + 1], &autos[i]),
        };
        let report = check_simulation(src, dst, &link.matrix)
            .map_err(|e| Error::MalformedChain(format!("link {}: {e}", i + 1)))?;
        if let SimulationReport::Fail(mismatch) = report {
            return Ok(ChainReport::LinkFailed { link: i + 1, mismatch });
        }
    }
    Ok(ChainReport::Pass {
        links: chain.links.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Boolean;
    use crate::Naturals;
    use num_bigint::BigUint;

    fn n(x: u32) -> BigUint {
        BigUint::from(x)
    }

    fn nat(rows: &[&[u32]]) -> Matrix<Naturals> {
        Matrix::from_rows(
            Naturals::new(),
            rows.iter().map(|r| r.iter().map(|&x| n(x)).collect()).collect(),
        )
        .unwrap()
    }

    fn pair() -> (Automaton<Naturals>, Automaton<Naturals>, Matrix<Naturals>) {
        let a = Automaton::new(
            Naturals::new(),
            vec!['a'],
            vec![n(1), n(0)],
            vec![nat(&[&[1, 1], &[1, 1]])],
            vec![n(1), n(1)],
        )
        .unwrap();
        let b = Automaton::new(Naturals::new(), vec!['a'], vec![n(1)], vec![nat(&[&[2]])], vec![n(1)]).unwrap();
        (a, b, nat(&[&[1], &[1]]))
    }

    #[test]
    fn identity_simulates() {
        let (a, _, _) = pair();
        let e = Matrix::identity(Naturals::new(), 2);
        assert!(check_simulation(&a, &a, &e).unwrap().is_pass());
    }

    #[test]
    fn aggregation_example_passes() {
        let (a, b, x) = pair();
        assert_eq!(check_simulation(&a, &b, &x).unwrap(), SimulationReport::Pass);
    }

    #[test]
    fn zero_matrix_fails_at_final_identity() {
        let (a, b, _) = pair();
        // αX = 0 ≠ γ would fire first, so use a target whose γ is zero.
        let mut b0 = b.clone();
        b0.initial_mut().set(0, 0, n(0)).unwrap();
        let mut a0 = a.clone();
        a0.initial_mut().set(0, 0, n(0)).unwrap();
        let z = Matrix::zeros(Naturals::new(), 2, 1);
        assert_eq!(
            check_simulation(&a0, &b0, &z).unwrap(),
            SimulationReport::Fail(Mismatch {
                identity: Identity::Final,
                row: 0,
                col: 0
            })
        );
    }

    #[test]
    fn mismatched_shapes_are_errors() {
        let (a, b, _) = pair();
        assert!(check_simulation(&a, &b, &Matrix::identity(Naturals::new(), 2)).is_err());
        let other = Automaton::new(Naturals::new(), vec!['b'], vec![n(1)], vec![nat(&[&[2]])], vec![n(1)]).unwrap();
        assert!(matches!(
            check_simulation(&a, &other, &nat(&[&[1], &[1]])),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn composition() {
        let (a, b, x) = pair();
        let c = SimulationCertificate::new(a.clone(), b.clone(), x.clone()).unwrap();
        let id_b = SimulationCertificate::identity(b.clone());
        assert_eq!(compose(&c, &id_b).unwrap().matrix(), &x);
        let id_a = SimulationCertificate::identity(a.clone());
        assert_eq!(compose(&id_a, &id_a).unwrap(), id_a);
        assert!(matches!(compose(&id_b, &c), Err(Error::MiddleMismatch)));
    }

    #[test]
    fn chains() {
        let (a, b, x) = pair();
        let empty = ChainCertificate {
            automata: vec![a.clone()],
            links: vec![],
        };
        assert!(verify_chain(&empty, &a, &a).unwrap().is_pass());
        assert_eq!(
            verify_chain(&empty, &a, &b).unwrap(),
            ChainReport::EndpointMismatch(Endpoint::End)
        );
        let mut chain = ChainCertificate {
            automata: vec![a.clone(), b.clone()],
            links: vec![Link {
                direction: Direction::Forward,
                matrix: x,
            }],
        };
        assert!(verify_chain(&chain, &a, &b).unwrap().is_pass());
        chain.links[0].matrix.set(1, 0, n(0)).unwrap();
        assert!(matches!(
            verify_chain(&chain, &a, &b).unwrap(),
            ChainReport::LinkFailed { link: 1, .. }
        ));
    }

    /// A → B holds via (1,1)ᵀ, but no 1×2 matrix simulates B → A.
    #[test]
    fn direction_matters() {
        let s = Boolean;
        let a = Automaton::new(
            s,
            vec!['a'],
            vec![true, false],
            vec![Matrix::from_rows(s, vec![vec![false, true], vec![false, true]]).unwrap()],
            vec![true, true],
        )
        .unwrap();
        let b = Automaton::new(s, vec!['a'], vec![true], vec![Matrix::identity(s, 1)], vec![true]).unwrap();
        let x = Matrix::column_vector(s, vec![true, true]).unwrap();
        assert!(check_simulation(&a, &b, &x).unwrap().is_pass());
        for bits in 0..4u8 {
            let y = Matrix::row_vector(s, vec![bits & 1 != 0, bits & 2 != 0]).unwrap();
            assert!(!check_simulation(&b, &a, &y).unwrap().is_pass());
        }
    }
}
