use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::marker::PhantomData;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};

use super::{EuclideanRing, Field, Flags, Ring, Semiring};
use crate::error::Overflow;

/// Exact number types usable as the carrier of [`Numeric`].
pub trait Scalar: Num + Clone + Eq + Hash + Debug + Display + FromStr + 'static {
    const ID: &'static str;
    const IS_RING: bool;
    const IS_FIELD: bool;
}

impl Scalar for BigUint {
    const ID: &'static str = "nat";
    const IS_RING: bool = false;
    const IS_FIELD: bool = false;
}

impl Scalar for BigInt {
    const ID: &'static str = "int";
    const IS_RING: bool = true;
    const IS_FIELD: bool = false;
}

impl Scalar for BigRational {
    const ID: &'static str = "rat";
    const IS_RING: bool = true;
    const IS_FIELD: bool = true;
}

/// The ordinary `(+, ·, 0, 1)` semiring over an exact scalar type.
pub struct Numeric<T>(PhantomData<fn() -> T>);

impl<T> Numeric<T> {
    pub const fn new() -> Self {
        Numeric(PhantomData)
    }
}

impl<T> Default for Numeric<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for Numeric<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for Numeric<T> {}

impl<T> PartialEq for Numeric<T> {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl<T> Eq for Numeric<T> {}

impl<T: Scalar> Debug for Numeric<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Numeric<{}>", T::ID)
    }
}

impl<T: Scalar> Semiring for Numeric<T> {
    type Elem = T;

    fn id(&self) -> String {
        T::ID.into()
    }

    fn zero(&self) -> T {
        T::zero()
    }

    fn one(&self) -> T {
        T::one()
    }

    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }

    fn mul(&self, a: &T, b: &T) -> Result<T, Overflow> {
        Ok(a.clone() * b.clone())
    }

    fn flags(&self) -> Flags {
        Flags {
            is_finite: false,
            is_field: T::IS_FIELD,
            is_ring: T::IS_RING,
            is_commutative: true,
        }
    }

    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }

    fn format_elem(&self, a: &T) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Option<T> {
        if s.starts_with('+') {
            return None;
        }
        s.parse().ok()
    }
}

impl<T: Scalar + Signed> Ring for Numeric<T> {
    fn neg(&self, a: &T) -> T {
        -a.clone()
    }

    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }
}

impl Field for Numeric<BigRational> {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

impl EuclideanRing for Numeric<BigInt> {
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        a.div_mod_floor(b)
    }

    fn normalizing_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            BigInt::from(-1)
        } else {
            BigInt::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Integers, Naturals, Rationals};

    #[test]
    fn serialization_formats() {
        let q = Rationals::new();
        let half = q.parse_elem("2/4").unwrap();
        assert_eq!(q.format_elem(&half), "1/2");
        assert_eq!(q.format_elem(&q.parse_elem("-3").unwrap()), "-3");
        assert!(q.parse_elem("1/0").is_none());
        assert!(Naturals::new().parse_elem("-1").is_none());
        assert!(Naturals::new().parse_elem("+1").is_none());
        let big = "123456789012345678901234567890";
        assert_eq!(Integers::new().format_elem(&Integers::new().parse_elem(big).unwrap()), big);
    }

    #[test]
    fn floor_division_keeps_remainder_nonnegative() {
        let z = Integers::new();
        let (q, r) = z.div_rem(&BigInt::from(-7), &BigInt::from(3));
        assert_eq!((q, r), (BigInt::from(-3), BigInt::from(2)));
    }
}
