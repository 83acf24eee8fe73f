//! The coefficient field: exact rationals, plus the univariate root oracle
//! the Newton base case needs.
//!
//! The procedure is stated over an algebraically closed field of
//! characteristic zero; the shipped instance is the rationals with a
//! rational-root-theorem oracle. Polynomials that do not split report
//! `Unsplittable` instead of guessing.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Element of the base field k: an exact rational. `num-rational` keeps it
/// in lowest terms with a positive denominator.
pub type FieldElement = Rational;

/// Dense univariate polynomial over k, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariatePoly {
    coeffs: Vec<FieldElement>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        UnivariatePoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UnivariatePoly::new(coeffs.iter().map(|&c| Rational::from(BigInt::from(c))).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact division by `(x - r)`; the caller guarantees `r` is a root.
    fn deflate(&self, r: &FieldElement) -> UnivariatePoly {
        let mut out = vec![Rational::zero(); self.degree()];
        let mut carry = Rational::zero();
        for i in (1..self.coeffs.len()).rev() {
            carry = &self.coeffs[i] + &carry * r;
            out[i - 1] = carry.clone();
        }
        debug_assert!((&self.coeffs[0] + &carry * r).is_zero(), "not a root");
        UnivariatePoly::new(out)
    }
}

/// All rational roots with multiplicities, in ascending order.
///
/// Zero roots are stripped first; the rest come from rational-root-theorem
/// candidates on the primitive integer polynomial, each verified by exact
/// evaluation and removed by repeated deflation. If a nonconstant factor
/// remains afterwards, the polynomial does not split over the rationals.
pub fn univariate_roots(p: &UnivariatePoly) -> Result<Vec<(FieldElement, usize)>> {
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    assert!(p.degree() >= 1, "root oracle needs degree >= 1");

    let mut roots: Vec<(FieldElement, usize)> = Vec::new();

    // x^k factor
    let zero_mult = p.coeffs.iter().take_while(|c| c.is_zero()).count();
    let mut work = UnivariatePoly::new(p.coeffs[zero_mult..].to_vec());
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }
    if work.degree() == 0 {
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        return Ok(roots);
    }

    // Clear denominators to a primitive integer polynomial.
    let denom_lcm = work
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let int_coeffs: Vec<BigInt> = work
        .coeffs
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let content = int_coeffs
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let int_coeffs: Vec<BigInt> = int_coeffs.iter().map(|c| c / &content).collect();

    let lead = int_coeffs.last().unwrap().abs();
    let tail = int_coeffs.first().unwrap().abs();

    let mut candidates: Vec<Rational> = Vec::new();
    for num in divisors(&tail) {
        for den in divisors(&lead) {
            let r = Rational::new(num.clone(), den.clone());
            if !candidates.contains(&r) {
                let neg = -r.clone();
                candidates.push(r);
                candidates.push(neg);
            }
        }
    }
    candidates.sort();
    candidates.dedup();

    for cand in candidates {
        let mut mult = 0usize;
        while work.degree() >= 1 && work.eval(&cand).is_zero() {
            work = work.deflate(&cand);
            mult += 1;
        }
        if mult > 0 {
            roots.push((cand, mult));
        }
        if work.degree() == 0 {
            break;
        }
    }

    if work.degree() >= 1 {
        return Err(Error::Unsplittable { remainder: work });
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        // Only reachable for the zero polynomial, which is rejected earlier.
        return vec![BigInt::one()];
    }
    if let Some(small) = n.to_u128() {
        let mut out = Vec::new();
        let mut i: u128 = 1;
        while i * i <= small {
            if small % i == 0 {
                out.push(BigInt::from(i));
                out.push(BigInt::from(small / i));
            }
            i += 1;
        }
        out.sort();
        out.dedup();
        return out;
    }
    // Coefficients beyond u128 do not occur in practice; fall back to a
    // correct but slow BigInt scan.
    let mut out = Vec::new();
    let mut i = BigInt::one();
    let n = n.abs();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            out.push(i.clone());
            out.push(&n / &i);
        }
        i += 1;
    }
    out.sort();
    out.dedup();
    out
}
