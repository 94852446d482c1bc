use std::fmt;

use super::{Flags, Semiring};
use crate::error::Overflow;

/// An element of `ℕ ∪ {∞}`. Variant order makes every finite value smaller
/// than `Infinity`, so the derived `Ord` is the tropical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tropical {
    Finite(u64),
    Infinity,
}

impl fmt::Display for Tropical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tropical::Finite(n) => write!(f, "{n}"),
            Tropical::Infinity => f.write_str("inf"),
        }
    }
}

/// The tropical semiring `(ℕ ∪ {∞}, min, +, ∞, 0)` over 64-bit naturals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MinPlus;

impl Semiring for MinPlus {
    type Elem = Tropical;

    fn id(&self) -> String {
        "tropical".into()
    }

    fn zero(&self) -> Tropical {
        Tropical::Infinity
    }

    fn one(&self) -> Tropical {
        Tropical::Finite(0)
    }

    fn add(&self, a: &Tropical, b: &Tropical) -> Tropical {
        *a.min(b)
    }

    fn mul(&self, a: &Tropical, b: &Tropical) -> Result<Tropical, Overflow> {
        match (a, b) {
            (Tropical::Finite(x), Tropical::Finite(y)) => {
                x.checked_add(*y).map(Tropical::Finite).ok_or(Overflow)
            }
            _ => Ok(Tropical::Infinity),
        }
    }

    fn flags(&self) -> Flags {
        Flags {
            is_finite: false,
            is_field: false,
            is_ring: false,
            is_commutative: true,
        }
    }

    fn format_elem(&self, a: &Tropical) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Option<Tropical> {
        if s == "inf" {
            return Some(Tropical::Infinity);
        }
        if !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok().map(Tropical::Finite)
    }
}
