//! Executable semiring and semimodule axioms.
//!
//! The checks are phrased over explicit element tuples so the same code
//! serves exhaustive validation of finite tables and randomized sampling of
//! the infinite instances.

use std::fmt;

use serde::Serialize;

use super::Semiring;
use crate::error::Overflow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    MulAssociative,
    MulLeftIdentity,
    MulRightIdentity,
    LeftDistributive,
    RightDistributive,
    LeftAnnihilation,
    RightAnnihilation,
    Nontrivial,
}

impl Law {
    pub fn arity(self) -> usize {
        match self {
            Law::Nontrivial => 0,
            Law::AddIdentity
            | Law::MulLeftIdentity
            | Law::MulRightIdentity
            | Law::LeftAnnihilation
            | Law::RightAnnihilation => 1,
            Law::AddCommutative => 2,
            Law::AddAssociative | Law::MulAssociative | Law::LeftDistributive | Law::RightDistributive => 3,
        }
    }

    /// Whether the law holds for the given witnesses.
    pub fn holds<S: Semiring>(self, s: &S, w: &[S::Elem]) -> Result<bool, Overflow> {
        let z = s.zero();
        let o = s.one();
        Ok(match self {
            Law::Nontrivial => z != o,
            Law::AddIdentity => s.add(&w[0], &z) == w[0] && s.add(&z, &w[0]) == w[0],
            Law::MulLeftIdentity => s.mul(&o, &w[0])? == w[0],
            Law::MulRightIdentity => s.mul(&w[0], &o)? == w[0],
            Law::LeftAnnihilation => s.mul(&z, &w[0])? == z,
            Law::RightAnnihilation => s.mul(&w[0], &z)? == z,
            Law::AddCommutative => s.add(&w[0], &w[1]) == s.add(&w[1], &w[0]),
            Law::AddAssociative => {
                s.add(&s.add(&w[0], &w[1]), &w[2]) == s.add(&w[0], &s.add(&w[1], &w[2]))
            }
            Law::MulAssociative => {
                s.mul(&s.mul(&w[0], &w[1])?, &w[2])? == s.mul(&w[0], &s.mul(&w[1], &w[2])?)?
            }
            Law::LeftDistributive => {
                s.mul(&w[0], &s.add(&w[1], &w[2]))?
                    == s.add(&s.mul(&w[0], &w[1])?, &s.mul(&w[0], &w[2])?)
            }
            Law::RightDistributive => {
                s.mul(&s.add(&w[0], &w[1]), &w[2])?
                    == s.add(&s.mul(&w[0], &w[2])?, &s.mul(&w[1], &w[2])?)
            }
        })
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::AddAssociative => "(a+b)+c = a+(b+c)",
            Law::AddCommutative => "a+b = b+a",
            Law::AddIdentity => "a+0 = a = 0+a",
            Law::MulAssociative => "(ab)c = a(bc)",
            Law::MulLeftIdentity => "1a = a",
            Law::MulRightIdentity => "a1 = a",
            Law::LeftDistributive => "a(b+c) = ab+ac",
            Law::RightDistributive => "(a+b)c = ac+bc",
            Law::LeftAnnihilation => "0a = 0",
            Law::RightAnnihilation => "a0 = 0",
            Law::Nontrivial => "0 != 1",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation<E> {
    pub law: Law,
    pub witnesses: Vec<E>,
}

const UNARY: [Law; 5] = [
    Law::AddIdentity,
    Law::MulLeftIdentity,
    Law::MulRightIdentity,
    Law::LeftAnnihilation,
    Law::RightAnnihilation,
];
const TERNARY: [Law; 4] = [
    Law::AddAssociative,
    Law::MulAssociative,
    Law::LeftDistributive,
    Law::RightDistributive,
];

fn record<S: Semiring>(
    s: &S,
    law: Law,
    w: &[S::Elem],
    out: &mut Vec<LawViolation<S::Elem>>,
) -> Result<(), Overflow> {
    if !law.holds(s, w)? {
        out.push(LawViolation {
            law,
            witnesses: w.to_vec(),
        });
    }
    Ok(())
}

/// Checks every law on every combination drawn from `elems`: `|elems|³`
/// triples for associativity and distributivity.
pub fn check_exhaustive<S: Semiring>(
    s: &S,
    elems: &[S::Elem],
) -> Result<Vec<LawViolation<S::Elem>>, Overflow> {
    let mut out = Vec::new();
    record(s, Law::Nontrivial, &[], &mut out)?;
    for law in UNARY {
        for a in elems {
            record(s, law, std::slice::from_ref(a), &mut out)?;
        }
    }
    for a in elems {
        for b in elems {
            record(s, Law::AddCommutative, &[a.clone(), b.clone()], &mut out)?;
        }
    }
    for law in TERNARY {
        for a in elems {
            for b in elems {
                for c in elems {
                    record(s, law, &[a.clone(), b.clone(), c.clone()], &mut out)?;
                }
            }
        }
    }
    Ok(out)
}

/// Checks every law on one sampled triple (unary laws on each component).
pub fn check_sample<S: Semiring>(
    s: &S,
    a: &S::Elem,
    b: &S::Elem,
    c: &S::Elem,
) -> Result<Vec<LawViolation<S::Elem>>, Overflow> {
    let mut out = Vec::new();
    record(s, Law::Nontrivial, &[], &mut out)?;
    for law in UNARY {
        for x in [a, b, c] {
            record(s, law, std::slice::from_ref(x), &mut out)?;
        }
    }
    record(s, Law::AddCommutative, &[a.clone(), b.clone()], &mut out)?;
    for law in TERNARY {
        record(s, law, &[a.clone(), b.clone(), c.clone()], &mut out)?;
    }
    Ok(out)
}

/// Laws of the left action of `S` on row vectors `S^{1×k}`, together with
/// the commutative-monoid laws of vector addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModuleLaw {
    /// (s+s')v = sv + s'v
    ScalarSum,
    /// s(v+v') = sv + sv'
    VectorSum,
    /// (ss')v = s(s'v)
    ScalarProduct,
    /// 1v = v
    Unit,
    /// s0 = 0
    ZeroVector,
    /// 0v = 0
    ZeroScalar,
    VectorAddAssociative,
    VectorAddCommutative,
    VectorAddIdentity,
}

fn vadd<S: Semiring>(s: &S, u: &[S::Elem], v: &[S::Elem]) -> Vec<S::Elem> {
    u.iter().zip(v).map(|(x, y)| s.add(x, y)).collect()
}

fn vscale<S: Semiring>(s: &S, c: &S::Elem, v: &[S::Elem]) -> Result<Vec<S::Elem>, Overflow> {
    v.iter().map(|x| s.mul(c, x)).collect()
}

/// Returns the violated semimodule laws for scalars `a, b` and vectors
/// `u, v, w` of equal length.
pub fn check_semimodule<S: Semiring>(
    s: &S,
    a: &S::Elem,
    b: &S::Elem,
    u: &[S::Elem],
    v: &[S::Elem],
    w: &[S::Elem],
) -> Result<Vec<ModuleLaw>, Overflow> {
    let zero_vec = vec![s.zero(); u.len()];
    let mut bad = Vec::new();
    let mut check = |law, ok: bool| {
        if !ok {
            bad.push(law)
        }
    };
    check(
        ModuleLaw::ScalarSum,
        vscale(s, &s.add(a, b), u)? == vadd(s, &vscale(s, a, u)?, &vscale(s, b, u)?),
    );
    check(
        ModuleLaw::VectorSum,
        vscale(s, a, &vadd(s, u, v))? == vadd(s, &vscale(s, a, u)?, &vscale(s, a, v)?),
    );
    check(
        ModuleLaw::ScalarProduct,
        vscale(s, &s.mul(a, b)?, u)? == vscale(s, a, &vscale(s, b, u)?)?,
    );
    check(ModuleLaw::Unit, vscale(s, &s.one(), u)? == u);
    check(ModuleLaw::ZeroVector, vscale(s, a, &zero_vec)? == zero_vec);
    check(ModuleLaw::ZeroScalar, vscale(s, &s.zero(), u)? == zero_vec);
    check(
        ModuleLaw::VectorAddAssociative,
        vadd(s, &vadd(s, u, v), w) == vadd(s, u, &vadd(s, v, w)),
    );
    check(ModuleLaw::VectorAddCommutative, vadd(s, u, v) == vadd(s, v, u));
    check(ModuleLaw::VectorAddIdentity, vadd(s, u, &zero_vec) == u);
    Ok(bad)
}
