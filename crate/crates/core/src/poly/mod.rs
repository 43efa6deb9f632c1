//! Exact sparse multivariate polynomials over the rationals.
//!
//! Two sorts of variables share one polynomial type: space variables `x_i`
//! and matrix-entry variables `g_i_j`. Symbolic group actions therefore
//! produce ordinary polynomials, and coefficients with respect to the space
//! variables are recovered by grouping.

mod monomial;
pub(crate) mod parse;
mod polynomial;
mod var;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use monomial::{monomials_of_degree, Monomial};
pub use polynomial::Polynomial;
pub use var::Var;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// `C(n, k)` extended to all integers: zero for `k < 0` and for
/// `0 <= n < k`; for negative `n` the falling-factorial quotient
/// `n (n-1) ... (n-k+1) / k!`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || (n >= 0 && k > n) {
        return BigInt::zero();
    }
    // symmetric shortcut keeps the loop short for n >= 0
    let k = if n >= 0 { k.min(n - k) } else { k };
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn integer(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}
