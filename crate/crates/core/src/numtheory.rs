//! Small integer helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// `[a|b]`: the largest divisor of `b` coprime to `a`, i.e. `b` with every
/// prime dividing `a` removed.
pub fn bracket(a: &BigInt, b: &BigInt) -> Result<BigInt> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::UndefinedBracketArgument);
    }
    let mut c = b.clone();
    loop {
        let g = c.gcd(a);
        if g.is_one() {
            return Ok(c);
        }
        c /= g;
    }
}

/// Whether `a` and `b` are divisible by exactly the same primes.
///
/// `ℤ[1/a] ≅ ℤ[1/b]` exactly when this holds. Zero has no such set and
/// always compares unequal.
pub fn same_prime_support(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    let (a, b) = (a.abs(), b.abs());
    // `[b|a] = 1` means every prime of a divides b.
    bracket(&b, &a).is_ok_and(|r| r.is_one()) && bracket(&a, &b).is_ok_and(|r| r.is_one())
}
