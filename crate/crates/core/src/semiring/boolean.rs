use super::{Flags, Semiring};
use crate::error::Overflow;

/// The two-element Boolean semiring (OR, AND, 0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Boolean;

impl Semiring for Boolean {
    type Elem = bool;

    fn id(&self) -> String {
        "bool".into()
    }

    fn zero(&self) -> bool {
        false
    }

    fn one(&self) -> bool {
        true
    }

    fn add(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }

    fn mul(&self, a: &bool, b: &bool) -> Result<bool, Overflow> {
        Ok(*a && *b)
    }

    fn flags(&self) -> Flags {
        Flags {
            is_finite: true,
            is_field: false,
            is_ring: false,
            is_commutative: true,
        }
    }

    fn carrier(&self) -> Option<Vec<bool>> {
        Some(vec![false, true])
    }

    fn format_elem(&self, a: &bool) -> String {
        if *a { "1" } else { "0" }.into()
    }

    fn parse_elem(&self, s: &str) -> Option<bool> {
        match s {
            "0" => Some(false),
            "1" => Some(true),
            _ => None,
        }
    }
}
