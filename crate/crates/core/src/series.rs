//! Sparse exact arithmetic on truncated multivariate Puiseux series.
//!
//! Terms are kept in a map sorted by the lexicographic order on exponents,
//! which is also the order the Newton procedure queries. A series carries a
//! `precision` bound: every term of total degree below it is exact and none
//! is missing. Arithmetic truncates its result at the propagated bound, so a
//! series never stores terms at or beyond its own precision; the one
//! exception is `apply_map`, which relabels exponents exactly and only
//! recomputes the bound.

use crate::blowup::MonomialMap;
use crate::cone;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::lattice::ExponentVector;
use crate::rational::{denominator_u64, format_rational, lcm_u64, DegreeBound, Rational};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A truncated multivariate Puiseux series: finitely many exact terms plus a
/// total-degree exactness bound.
#[derive(Clone)]
pub struct PuiseuxSeries {
    n: usize,
    d: u64,
    terms: BTreeMap<ExponentVector, FieldElement>,
    precision: DegreeBound,
}

/// Equality compares the stored terms; the denominator is derived data and
/// the precision bound is knowledge about *missing* terms, not content.
impl PartialEq for PuiseuxSeries {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

impl Eq for PuiseuxSeries {}

impl PuiseuxSeries {
    pub fn zero(n: usize) -> Self {
        PuiseuxSeries {
            n,
            d: 1,
            terms: BTreeMap::new(),
            precision: DegreeBound::Unbounded,
        }
    }

    pub fn zero_with_precision(n: usize, precision: DegreeBound) -> Self {
        PuiseuxSeries {
            n,
            d: 1,
            terms: BTreeMap::new(),
            precision,
        }
    }

    pub fn constant(n: usize, value: FieldElement) -> Self {
        let mut s = PuiseuxSeries::zero(n);
        if !value.is_zero() {
            s.terms.insert(ExponentVector::zero(n), value);
        }
        s
    }

    pub fn one(n: usize) -> Self {
        PuiseuxSeries::constant(n, Rational::one())
    }

    pub fn monomial(exponent: ExponentVector, coeff: FieldElement) -> Self {
        let n = exponent.dim();
        let mut s = PuiseuxSeries::zero(n);
        if !coeff.is_zero() {
            s.d = exponent_denominator(&exponent);
            s.terms.insert(exponent, coeff);
        }
        s
    }

    /// Builds a series from raw terms: merges duplicates, drops zeros and
    /// truncates at the precision bound.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (ExponentVector, FieldElement)>,
        precision: DegreeBound,
    ) -> Self {
        let mut map: BTreeMap<ExponentVector, FieldElement> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.dim(), n, "exponent dimension mismatch");
            if c.is_zero() {
                continue;
            }
            match map.entry(e) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let sum = o.get() + &c;
                    if sum.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = sum;
                    }
                }
            }
        }
        let mut s = PuiseuxSeries {
            n,
            d: 1,
            terms: map,
            precision,
        };
        s.retruncate();
        s.refresh_denominator();
        s
    }

    fn retruncate(&mut self) {
        if let DegreeBound::Finite(_) = &self.precision {
            let bound = self.precision.clone();
            self.terms.retain(|e, _| bound.admits(&e.total_degree()));
        }
    }

    fn refresh_denominator(&mut self) {
        let mut d = 1u64;
        for e in self.terms.keys() {
            d = lcm_u64(d, exponent_denominator(e));
        }
        self.d = d;
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn denominator(&self) -> u64 {
        self.d
    }

    pub fn precision(&self) -> &DegreeBound {
        &self.precision
    }

    pub fn with_precision(mut self, precision: DegreeBound) -> Self {
        self.precision = precision;
        self.retruncate();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&ExponentVector::zero(self.n))
                .map_or(false, |c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_coefficient(&self) -> FieldElement {
        self.coefficient(&ExponentVector::zero(self.n))
    }

    /// The Newton diagram: the support of the series.
    pub fn newton_diagram(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    /// Smallest total degree among stored terms.
    pub fn min_total_degree(&self) -> Option<Rational> {
        self.terms.keys().map(|e| e.total_degree()).min()
    }

    /// Lower bound on the order of the full series (unknown terms included).
    fn order_bound(&self) -> DegreeBound {
        match self.min_total_degree() {
            Some(o) => DegreeBound::Finite(o),
            None => self.precision.clone(),
        }
    }

    /// Order in `x1`: the least first coordinate of the support.
    pub fn x1_order(&self) -> Option<Rational> {
        self.terms.keys().map(|e| e.coord(0).clone()).min()
    }

    pub fn has_nonnegative_support(&self) -> bool {
        self.terms.keys().all(|e| e.is_nonnegative())
    }

    pub fn negative_support_witness(&self) -> Option<&ExponentVector> {
        self.terms.keys().find(|e| !e.is_nonnegative())
    }

    pub fn leading_term(&self) -> Option<(&ExponentVector, &FieldElement)> {
        self.terms.iter().next()
    }

    pub fn add(&self, other: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let precision = self.precision.clone().min(other.precision.clone());
        Ok(PuiseuxSeries::from_terms(
            self.n,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, c)| (e.clone(), c.clone())),
            precision,
        ))
    }

    pub fn sub(&self, other: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> PuiseuxSeries {
        PuiseuxSeries {
            n: self.n,
            d: self.d,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            precision: self.precision.clone(),
        }
    }

    /// Product, exact below the propagated bound
    /// `min(T_f + ord(g), T_g + ord(f), T_f + T_g)`.
    pub fn mul(&self, other: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let precision = mul_precision(
            &self.precision,
            &self.order_bound(),
            &other.precision,
            &other.order_bound(),
        );
        let mut terms: Vec<(ExponentVector, FieldElement)> = Vec::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb)?;
                if precision.admits(&e.total_degree()) {
                    terms.push((e, ca * cb));
                }
            }
        }
        Ok(PuiseuxSeries::from_terms(self.n, terms, precision))
    }

    pub fn mul_scalar(&self, c: &FieldElement) -> PuiseuxSeries {
        if c.is_zero() {
            return PuiseuxSeries::zero_with_precision(self.n, self.precision.clone());
        }
        PuiseuxSeries {
            n: self.n,
            d: self.d,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
            precision: self.precision.clone(),
        }
    }

    /// Multiply by a monomial: exponent shift plus scaling. The precision
    /// bound shifts by the monomial's total degree.
    pub fn mul_monomial(&self, shift: &ExponentVector, c: &FieldElement) -> PuiseuxSeries {
        assert_eq!(shift.dim(), self.n);
        if c.is_zero() {
            return PuiseuxSeries::zero_with_precision(
                self.n,
                self.precision.clone().shift(&shift.total_degree()),
            );
        }
        let mut s = PuiseuxSeries {
            n: self.n,
            d: 1,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.add(shift).expect("same dimension"), v * c))
                .collect(),
            precision: self.precision.clone().shift(&shift.total_degree()),
        };
        s.refresh_denominator();
        s
    }

    /// Exact division by a monomial; every term must be divisible.
    pub fn div_monomial(&self, shift: &ExponentVector) -> Result<PuiseuxSeries> {
        for e in self.terms.keys() {
            if !shift.leq_product(e) {
                return Err(Error::ExactnessViolation(
                    "monomial division leaves the support",
                ));
            }
        }
        let neg = ExponentVector::zero(self.n).sub(shift)?;
        Ok(self.mul_monomial(&neg, &Rational::one()))
    }

    pub fn pow(&self, k: usize) -> Result<PuiseuxSeries> {
        let mut acc = PuiseuxSeries::one(self.n);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Drop every term at or above the bound and cap the precision.
    pub fn truncate(&self, bound: &DegreeBound) -> PuiseuxSeries {
        let mut s = self.clone();
        s.precision = s.precision.min(bound.clone());
        s.retruncate();
        s
    }

    /// Inverse of a unit of `k[[x^(1/d)]]` up to `target`: requires
    /// nonnegative support and a nonzero constant term. Inverting a
    /// non-constant unit to unbounded precision is rejected.
    pub fn invert_unit(&self, target: &DegreeBound) -> Result<PuiseuxSeries> {
        if !self.has_nonnegative_support() {
            return Err(Error::NotAUnit);
        }
        let c0 = self.constant_coefficient();
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let c0_inv = c0.recip();
        let bound = self.precision.clone().min(target.clone());
        // f = c0 (1 - u), ord(u) > 0
        let u = PuiseuxSeries::constant(self.n, Rational::one())
            .sub(&self.mul_scalar(&c0_inv))?;
        if u.is_zero() {
            // The inverse of a constant is exact to the full precision of
            // the input, independent of the requested target.
            return Ok(
                PuiseuxSeries::constant(self.n, c0_inv).with_precision(self.precision.clone())
            );
        }
        if bound.is_unbounded() {
            return Err(Error::UnboundedInverse);
        }
        let mut acc = PuiseuxSeries::one(self.n).with_precision(bound.clone());
        let mut pow = u.truncate(&bound);
        while !pow.is_zero() {
            acc = acc.add(&pow)?;
            pow = pow.mul(&u)?.truncate(&bound);
        }
        Ok(acc.mul_scalar(&c0_inv).with_precision(bound))
    }

    /// Push the series through a monomial map: exponents are relabelled
    /// `a -> a * M`, coefficients unchanged. Terms are kept verbatim (the
    /// relabelling is exact); the precision bound is recomputed as the
    /// minimum image degree of the cut-off frontier, `T * min(row sums)`.
    pub fn apply_map(&self, map: &MonomialMap) -> PuiseuxSeries {
        assert_eq!(map.dim(), self.n, "dimension mismatch in apply_map");
        let precision = match &self.precision {
            DegreeBound::Unbounded => DegreeBound::Unbounded,
            DegreeBound::Finite(t) => {
                let min_row = map
                    .row_sums()
                    .into_iter()
                    .min()
                    .expect("nonempty matrix");
                DegreeBound::Finite(t * min_row)
            }
        };
        let mut s = PuiseuxSeries {
            n: self.n,
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (map.apply(e), c.clone()))
                .collect(),
            precision,
        };
        s.refresh_denominator();
        s
    }

    /// True iff every support point lies in the simplicial cone of the given
    /// blow-down composition.
    pub fn support_in_cone(&self, cert: &MonomialMap) -> bool {
        self.terms.keys().all(|e| cone::contains(cert, e))
    }

    /// The coefficient of `x1^nu` as a series in one fewer variable.
    pub fn coefficient_of_x1_power(&self, nu: &Rational) -> PuiseuxSeries {
        assert!(self.n >= 1);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.coord(0) == nu)
            .map(|(e, c)| (e.drop_first(), c.clone()));
        PuiseuxSeries::from_terms(
            self.n - 1,
            terms,
            self.precision.clone().shift(&-nu.clone()),
        )
    }

    /// Evaluation at `x1 = 0`, projected to the remaining variables.
    pub fn eval_x1_zero(&self) -> PuiseuxSeries {
        self.coefficient_of_x1_power(&Rational::zero())
    }

    /// Lift a series in `x2..xn` to `n` variables with `x1`-exponent zero.
    pub fn lift_prepend_zero(&self) -> PuiseuxSeries {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.prepend(Rational::zero()), c.clone()));
        PuiseuxSeries::from_terms(self.n + 1, terms, self.precision.clone())
    }

    /// Deterministic total ordering, used to merge branch results.
    pub fn canonical_cmp(&self, other: &PuiseuxSeries) -> Ordering {
        let mut a = self.terms.iter();
        let mut b = other.terms.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ea, ca)), Some((eb, cb))) => {
                    match ea.cmp(eb).then_with(|| ca.cmp(cb)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
            }
        }
    }
}

fn mul_precision(
    ta: &DegreeBound,
    orda: &DegreeBound,
    tb: &DegreeBound,
    ordb: &DegreeBound,
) -> DegreeBound {
    add_bounds(ta, ordb)
        .min(add_bounds(tb, orda))
        .min(add_bounds(ta, tb))
}

fn add_bounds(a: &DegreeBound, b: &DegreeBound) -> DegreeBound {
    match (a, b) {
        (DegreeBound::Finite(x), DegreeBound::Finite(y)) => DegreeBound::Finite(x + y),
        _ => DegreeBound::Unbounded,
    }
}

pub(crate) fn exponent_denominator(e: &ExponentVector) -> u64 {
    e.coords()
        .iter()
        .fold(1u64, |acc, c| lcm_u64(acc, denominator_u64(c)))
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", format_term(&mag, e))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (T={})", self, self.precision)
    }
}

fn format_term(mag: &Rational, e: &ExponentVector) -> String {
    let mut factors: Vec<String> = Vec::new();
    if !mag.is_one() || e.is_zero() {
        factors.push(format_rational(mag));
    }
    for (i, c) in e.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_one() {
            factors.push(format!("x{}", i + 1));
        } else if c.denom().is_one() && c.is_positive() {
            factors.push(format!("x{}^{}", i + 1, c.numer()));
        } else {
            factors.push(format!("x{}^({})", i + 1, format_rational(c)));
        }
    }
    factors.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rint};

    fn x(n: usize, i: usize) -> PuiseuxSeries {
        let mut coords = vec![Rational::zero(); n];
        coords[i] = Rational::one();
        PuiseuxSeries::monomial(ExponentVector::new(coords), Rational::one())
    }

    fn xpow(n: usize, i: usize, num: i64, den: i64) -> PuiseuxSeries {
        let mut coords = vec![Rational::zero(); n];
        coords[i] = rat(num, den);
        PuiseuxSeries::monomial(ExponentVector::new(coords), Rational::one())
    }

    #[test]
    fn add_zero_is_identity() {
        let f = x(2, 0).add(&PuiseuxSeries::one(2)).unwrap();
        let z = PuiseuxSeries::zero(2);
        assert_eq!(f.add(&z).unwrap(), f);
    }

    #[test]
    fn half_powers_multiply_to_one_power() {
        let h = xpow(1, 0, 1, 2);
        assert_eq!(h.mul(&h).unwrap(), x(1, 0));
    }

    #[test]
    fn difference_of_squares() {
        let one = PuiseuxSeries::one(1);
        let a = one.add(&x(1, 0)).unwrap();
        let b = one.sub(&x(1, 0)).unwrap();
        let p = a.mul(&b).unwrap();
        let expect = one.sub(&x(1, 0).mul(&x(1, 0)).unwrap()).unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn geometric_inverse() {
        let one = PuiseuxSeries::one(1);
        let f = one.sub(&x(1, 0)).unwrap();
        let g = f.invert_unit(&DegreeBound::finite(4, 1)).unwrap();
        // 1 + x + x^2 + x^3
        assert_eq!(g.num_terms(), 4);
        let prod = f.mul(&g).unwrap();
        assert!(prod.is_one() || prod.sub(&one).unwrap().is_zero());
    }

    #[test]
    fn inverse_of_shifted_unit() {
        // 2 + x2^(1/2) over two variables
        let f = PuiseuxSeries::constant(2, rint(2))
            .add(&xpow(2, 1, 1, 2))
            .unwrap();
        let t = DegreeBound::finite(2, 1);
        let g = f.invert_unit(&t).unwrap();
        assert_eq!(
            g.coefficient(&ExponentVector::zero(2)),
            rat(1, 2)
        );
        let half = ExponentVector::new(vec![Rational::zero(), rat(1, 2)]);
        assert_eq!(g.coefficient(&half), rat(-1, 4));
        let one_exp = ExponentVector::new(vec![Rational::zero(), rint(1)]);
        assert_eq!(g.coefficient(&one_exp), rat(1, 8));
        let prod = f.mul(&g).unwrap();
        assert!(prod.sub(&PuiseuxSeries::one(2)).unwrap().is_zero());
    }

    #[test]
    fn invert_rejects_non_units() {
        assert!(x(1, 0).invert_unit(&DegreeBound::finite(4, 1)).is_err());
        let laurent = PuiseuxSeries::monomial(
            ExponentVector::new(vec![rint(-1)]),
            Rational::one(),
        );
        assert!(laurent
            .add(&PuiseuxSeries::one(1))
            .unwrap()
            .invert_unit(&DegreeBound::finite(4, 1))
            .is_err());
    }

    #[test]
    fn apply_map_moves_exponents() {
        let phi = MonomialMap::elementary(2, 0, 1, 1).unwrap();
        assert_eq!(x(2, 0).apply_map(&phi), x(2, 0).mul(&x(2, 1)).unwrap());
        let id = MonomialMap::identity(2);
        let f = x(2, 0).add(&xpow(2, 1, 3, 2)).unwrap();
        assert_eq!(f.apply_map(&id), f);
        // x1 * x2^{-1} through phi_12 becomes x1
        let laurent = PuiseuxSeries::monomial(
            ExponentVector::new(vec![rint(1), rint(-1)]),
            Rational::one(),
        );
        assert_eq!(laurent.apply_map(&phi), x(2, 0));
    }

    #[test]
    fn diagram_and_cone_queries() {
        assert!(PuiseuxSeries::zero(2).newton_diagram().is_empty());
        let f = x(2, 0).add(&x(2, 1).pow(2).unwrap()).unwrap();
        let dg = f.newton_diagram();
        assert_eq!(dg.len(), 2);
        assert!(f.support_in_cone(&MonomialMap::identity(2)));
        let g = PuiseuxSeries::monomial(
            ExponentVector::new(vec![rint(-1), rint(0)]),
            Rational::one(),
        );
        assert!(!g.support_in_cone(&MonomialMap::identity(2)));
    }

    #[test]
    fn truncation_respects_bound() {
        let one = PuiseuxSeries::one(1);
        let f = one
            .add(&x(1, 0))
            .unwrap()
            .add(&x(1, 0).pow(2).unwrap())
            .unwrap();
        let t = f.truncate(&DegreeBound::finite(2, 1));
        assert_eq!(t.num_terms(), 2);
        assert_eq!(t.precision(), &DegreeBound::finite(2, 1));
    }

    #[test]
    fn slices_and_lifts() {
        // f = x1 * x2 + x2^2
        let f = x(2, 0)
            .mul(&x(2, 1))
            .unwrap()
            .add(&x(2, 1).pow(2).unwrap())
            .unwrap();
        let at_zero = f.eval_x1_zero();
        assert_eq!(at_zero.vars(), 1);
        assert_eq!(at_zero, x(1, 0).pow(2).unwrap());
        let slice = f.coefficient_of_x1_power(&rint(1));
        assert_eq!(slice, x(1, 0));
        assert_eq!(slice.lift_prepend_zero().vars(), 2);
    }

    #[test]
    fn denominator_tracking() {
        let f = xpow(2, 0, 1, 2).add(&xpow(2, 1, 2, 3)).unwrap();
        assert_eq!(f.denominator(), 6);
    }

    #[test]
    fn display_round_style() {
        let f = PuiseuxSeries::monomial(
            ExponentVector::new(vec![rat(1, 2), rat(-3, 2)]),
            rat(3, 2),
        );
        assert_eq!(format!("{}", f), "3/2*x1^(1/2)*x2^(-3/2)");
    }
}
