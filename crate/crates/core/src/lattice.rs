//! Exponent vectors of monomials `x^(a/d)` with lexicographic and product
//! orders.
//!
//! Vectors live in `(1/d)Z^n`; the shared denominator `d` is tracked by the
//! containing series, so coordinates here are plain exact rationals.

use crate::error::{Error, Result};
use crate::rational::{rint, Rational};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// Exponent of a monomial: a point of `(1/d)Z^n`.
///
/// `Ord` is the lexicographic order, which also makes these usable as sorted
/// map keys for series terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<Rational>);

/// Result of a product-order comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductOrder {
    Equal,
    LessEqual,
    GreaterEqual,
    Incomparable,
}

impl ExponentVector {
    /// Dimension 0 is allowed: it is the exponent lattice of the base field
    /// itself, reached at the bottom of the solver's recursion on variables.
    pub fn new(coords: Vec<Rational>) -> Self {
        ExponentVector(coords)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![Rational::zero(); n])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        ExponentVector(coords.iter().map(|&c| rint(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        use num_traits::One;
        self.0.iter().all(|c| c.denom().is_one())
    }

    pub fn total_degree(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Sign of the first nonzero coordinate; 0 iff the vector is zero.
    pub fn first_nonzero_sign(&self) -> i32 {
        for c in &self.0 {
            if c.is_positive() {
                return 1;
            }
            if c.is_negative() {
                return -1;
            }
        }
        0
    }

    pub fn is_lex_positive(&self) -> bool {
        self.first_nonzero_sign() == 1
    }

    /// Lexicographic comparison; errors on dimension mismatch.
    pub fn lex_compare(&self, other: &Self) -> Result<Ordering> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self.cmp(other))
    }

    /// Product order `<<`: coordinatewise comparison, partial.
    pub fn product_compare(&self, other: &Self) -> Result<ProductOrder> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        let mut le = true;
        let mut ge = true;
        for (a, b) in self.0.iter().zip(&other.0) {
            if a > b {
                le = false;
            }
            if a < b {
                ge = false;
            }
        }
        Ok(match (le, ge) {
            (true, true) => ProductOrder::Equal,
            (true, false) => ProductOrder::LessEqual,
            (false, true) => ProductOrder::GreaterEqual,
            (false, false) => ProductOrder::Incomparable,
        })
    }

    /// True iff `self << other` (allowing equality).
    pub fn leq_product(&self, other: &Self) -> bool {
        matches!(
            self.product_compare(other),
            Ok(ProductOrder::LessEqual) | Ok(ProductOrder::Equal)
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(ExponentVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(ExponentVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        ExponentVector(self.0.iter().map(|c| c * factor).collect())
    }

    /// Drop the first coordinate (projection used by the characteristic
    /// equation, which lives in one fewer variable).
    pub fn drop_first(&self) -> Self {
        assert!(self.dim() >= 1, "cannot drop below dimension 0");
        ExponentVector(self.0[1..].to_vec())
    }

    /// Prepend a coordinate (lifting a series in `x2..xn` to `n` variables).
    pub fn prepend(&self, first: Rational) -> Self {
        let mut coords = Vec::with_capacity(self.dim() + 1);
        coords.push(first);
        coords.extend_from_slice(&self.0);
        ExponentVector(coords)
    }

    pub(crate) fn coords_for_error(&self) -> Vec<String> {
        self.0.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// A finite set of integer lattice points, the input shape of
/// principalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSet {
    n: usize,
    elements: BTreeSet<ExponentVector>,
}

impl LatticeSet {
    /// Builds a set of nonnegative integer points; rejects empty input and
    /// points outside `Z>=0^n`.
    pub fn new(points: Vec<ExponentVector>) -> Result<Self> {
        let n = points.first().ok_or(Error::EmptyLatticeSet)?.dim();
        let mut elements = BTreeSet::new();
        for p in points {
            if p.dim() != n {
                return Err(Error::DimensionMismatch(p.dim(), n));
            }
            if !p.is_integral() || !p.is_nonnegative() {
                return Err(Error::InvalidLatticePoint);
            }
            elements.insert(p);
        }
        Ok(LatticeSet { n, elements })
    }

    pub fn from_ints(points: &[&[i64]]) -> Result<Self> {
        LatticeSet::new(points.iter().map(|p| ExponentVector::from_ints(p)).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn iter(&self) -> impl Iterator<Item = &ExponentVector> {
        self.elements.iter()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements not dominated (in the product order) by another element.
    pub fn minimal_elements(&self) -> Vec<ExponentVector> {
        self.elements
            .iter()
            .filter(|m| {
                !self
                    .elements
                    .iter()
                    .any(|u| u != *m && u.leq_product(m))
            })
            .cloned()
            .collect()
    }
}

impl FromIterator<ExponentVector> for LatticeSet {
    fn from_iter<I: IntoIterator<Item = ExponentVector>>(iter: I) -> Self {
        LatticeSet::new(iter.into_iter().collect()).expect("invalid lattice set")
    }
}
