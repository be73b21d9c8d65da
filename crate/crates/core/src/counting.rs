//! Counting scalars.
//!
//! Every counting routine in this crate is generic over [`Count`], a scalar
//! defined through `num-traits` bounds. [`BigNat`] is the concrete alias used
//! by default: Euler tour counts grow factorially, so the production path is
//! always arbitrary precision. Unsigned machine integers also satisfy the
//! trait and are useful in tests to cross-check the generic code on small
//! instances.

use std::fmt;
use std::ops::{AddAssign, Mul};

use num_traits::{One, Zero};

/// Arbitrary-precision non-negative integer; the default counting scalar.
/// Serializes to plain decimal via `Display`.
pub type BigNat = num_bigint::BigUint;

/// Scalar type counts are accumulated in.
///
/// Only semiring operations are required: counting never subtracts or
/// divides. Implemented for [`BigNat`], `u64` and `u128` via the blanket
/// impl.
pub trait Count:
    Clone
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + From<u64>
    + for<'a> AddAssign<&'a Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
}

impl<T> Count for T where
    T: Clone
        + Eq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + From<u64>
        + for<'a> AddAssign<&'a Self>
        + for<'a> Mul<&'a Self, Output = Self>
{
}

/// `k!` as a counting scalar.
pub fn factorial<C: Count>(k: usize) -> C {
    let mut acc = C::one();
    for i in 2..=k as u64 {
        let f = C::from(i);
        acc = acc * &f;
    }
    acc
}

/// Binomial coefficient `C(n, k)`, computed additively (Pascal row) so the
/// scalar never needs division.
pub fn binomial<C: Count>(n: usize, k: usize) -> C {
    if k > n {
        return C::zero();
    }
    let k = k.min(n - k);
    let mut row: Vec<C> = Vec::with_capacity(k + 1);
    row.push(C::one());
    row.resize(k + 1, C::zero());
    for _ in 1..=n {
        for j in (1..=k).rev() {
            let prev = row[j - 1].clone();
            row[j] += &prev;
        }
    }
    row.pop().unwrap()
}
