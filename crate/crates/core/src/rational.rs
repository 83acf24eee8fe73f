//! Exact rational scalars and degree bounds shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use std::fmt;

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator (maintained by `num-rational`).
pub type Rational = BigRational;

/// Shorthand constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for integer rationals.
pub fn rint(num: i64) -> Rational {
    Rational::from(BigInt::from(num))
}

/// A truncation or residual bound on total degree.
///
/// `Finite(t)` means "everything below total degree `t` is exact";
/// `Unbounded` is the exact/no-truncation case (the `+inf` sentinel used for
/// residual floors of exact roots).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeBound {
    Finite(Rational),
    Unbounded,
}

impl DegreeBound {
    pub fn finite(num: i64, den: i64) -> Self {
        DegreeBound::Finite(rat(num, den))
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, DegreeBound::Unbounded)
    }

    /// True when a term of the given total degree lies strictly below the bound.
    pub fn admits(&self, degree: &Rational) -> bool {
        match self {
            DegreeBound::Unbounded => true,
            DegreeBound::Finite(t) => degree < t,
        }
    }

    pub fn min(self, other: DegreeBound) -> DegreeBound {
        match (self, other) {
            (DegreeBound::Unbounded, b) => b,
            (a, DegreeBound::Unbounded) => a,
            (DegreeBound::Finite(a), DegreeBound::Finite(b)) => {
                DegreeBound::Finite(if a <= b { a } else { b })
            }
        }
    }

    /// Shift the bound by a degree offset (used when multiplying by a monomial
    /// or dividing out a power of a variable).
    pub fn shift(self, offset: &Rational) -> DegreeBound {
        match self {
            DegreeBound::Unbounded => DegreeBound::Unbounded,
            DegreeBound::Finite(t) => DegreeBound::Finite(t + offset),
        }
    }

    /// Scale the bound (used by `apply_map` frontier recomputation).
    pub fn scale(self, factor: &Rational) -> DegreeBound {
        match self {
            DegreeBound::Unbounded => DegreeBound::Unbounded,
            DegreeBound::Finite(t) => DegreeBound::Finite(t * factor),
        }
    }

    pub fn meets(&self, threshold: &Rational) -> bool {
        match self {
            DegreeBound::Unbounded => true,
            DegreeBound::Finite(t) => t >= threshold,
        }
    }
}

impl PartialOrd for DegreeBound {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DegreeBound {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use DegreeBound::*;
        match (self, other) {
            (Unbounded, Unbounded) => std::cmp::Ordering::Equal,
            (Unbounded, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Unbounded) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for DegreeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeBound::Unbounded => write!(f, "exact"),
            DegreeBound::Finite(t) => write!(f, "{}", t),
        }
    }
}

/// Format a rational without the `num` crate's `Ratio { .. }` debug noise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of two positive integers.
pub fn lcm_u64(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// Denominator of a rational as `u64`, panicking on overflow (exponent
/// denominators in this crate stay tiny).
pub fn denominator_u64(r: &Rational) -> u64 {
    use num_traits::ToPrimitive;
    r.denom()
        .abs()
        .to_u64()
        .expect("exponent denominator exceeds u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_bound_ordering() {
        let a = DegreeBound::finite(3, 1);
        let b = DegreeBound::finite(7, 2);
        assert!(a < b);
        assert!(b < DegreeBound::Unbounded);
        assert_eq!(a.clone().min(DegreeBound::Unbounded), a);
    }

    #[test]
    fn admits_is_strict() {
        let b = DegreeBound::finite(2, 1);
        assert!(b.admits(&rat(3, 2)));
        assert!(!b.admits(&rint(2)));
        assert!(DegreeBound::Unbounded.admits(&rint(1000)));
    }
}
