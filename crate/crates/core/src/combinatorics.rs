//! Closed forms for the sums the urn solvers reduce to.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Result, UrnError};
use crate::rational::Rational;

/// Triangular number `n(n+1)/2`.
pub fn sum_integers(n: u64) -> Rational {
    let n = BigUint::from(n);
    Rational::from(&n * (&n + 1u32) / 2u32)
}

/// Square pyramidal number `n(n+1)(2n+1)/6`, the sum of the first `n` squares.
pub fn square_pyramidal(n: u64) -> Rational {
    let n = BigUint::from(n);
    Rational::from(&n * (&n + 1u32) * (&n * 2u32 + 1u32) / 6u32)
}

/// `C(n, k)` by the multiplicative formula; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Rational {
    Rational::from(binomial_int(n, k))
}

pub(crate) fn binomial_int(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    // Each partial product C(n-k+i, i) is an integer, so the division is exact.
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * (n - k + i) / i;
    }
    acc
}

/// `sum_{x=r}^{n} C(x, r)` by direct summation. The result equals `C(n+1, r+1)`.
pub fn hockey_stick_sum(r: u64, n: u64) -> Result<Rational> {
    if r > n {
        return Err(UrnError::domain(format!(
            "hockey stick sum needs r <= n, got r = {r}, n = {n}"
        )));
    }
    // C(x, r) for successive x via C(x+1, r) = C(x, r)(x+1)/(x+1-r).
    let mut term = BigUint::one();
    let mut total = BigUint::one();
    for x in r..n {
        term = term * (x + 1) / (x + 1 - r);
        total += &term;
    }
    Ok(Rational::from(total))
}
