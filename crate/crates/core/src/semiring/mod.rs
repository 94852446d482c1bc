//! Semiring abstraction and the shipped instances.
//!
//! A semiring is passed around as a *handle* value implementing [`Semiring`].
//! Most handles are zero-sized (`Boolean`, `MinPlus`, the [`Numeric`] family),
//! while [`Table`] carries its operation tables at runtime. Elements are plain
//! values of the associated `Elem` type and every operation goes through the
//! handle, so finite semirings loaded from files and built-in ones share one
//! code path.

mod boolean;
pub mod laws;
mod numeric;
mod table;
mod tropical;

use std::fmt::Debug;
use std::hash::Hash;

pub use boolean::Boolean;
pub use numeric::{Numeric, Scalar};
pub use table::{validate_table_semiring, Table, TableSemiring, TableViolation};
pub use tropical::{MinPlus, Tropical};

use crate::error::Overflow;

/// Capability flags of a semiring instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct Flags {
    pub is_finite: bool,
    pub is_field: bool,
    pub is_ring: bool,
    pub is_commutative: bool,
}

pub trait Semiring: Clone + PartialEq + Debug {
    type Elem: Clone + Eq + Hash + Debug;

    /// Symbolic name used in file headers (`bool`, `nat`, `table <path>`, ...).
    fn id(&self) -> String;

    fn zero(&self) -> Self::Elem;

    fn one(&self) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Product; only the tropical instance can overflow.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Overflow>;

    fn flags(&self) -> Flags;

    /// Exhaustive, duplicate-free element list when the semiring is finite.
    fn carrier(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn contains(&self, _a: &Self::Elem) -> bool {
        true
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn format_elem(&self, a: &Self::Elem) -> String;

    fn parse_elem(&self, s: &str) -> Option<Self::Elem>;
}

/// Semirings with additive inverses.
pub trait Ring: Semiring {
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// Commutative rings whose nonzero elements are invertible. Whether a
/// [`Table`] really is a field is a runtime property; callers check
/// [`Flags::is_field`] first.
pub trait Field: Ring {
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// Rings with a division algorithm, used for Hermite normal forms.
pub trait EuclideanRing: Ring {
    /// Quotient and remainder with `a = q*b + r` and `r` the canonical
    /// residue modulo `b`. `b` must be nonzero.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Unit `u` such that `u*a` is the canonical associate of `a`.
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;
}

/// Sum of an iterator of elements, starting from zero.
pub fn sum<'a, S, I>(s: &S, items: I) -> S::Elem
where
    S: Semiring,
    S::Elem: 'a,
    I: IntoIterator<Item = &'a S::Elem>,
{
    items.into_iter().fold(s.zero(), |acc, x| s.add(&acc, x))
}
