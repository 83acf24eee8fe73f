//! The regular shape: every coefficient except the linear one vanishes at
//! `x1 = 0`. Such an equation has exactly one root of positive `x1`-order,
//! and the Newton step is forced: a two-point segment whose characteristic
//! equation is linear. After bringing the reduced linear coefficient to a
//! monomial times a unit (once), the iteration needs no further blowups and
//! no new denominators.

use crate::blowup::{self, MonomialMap};
use crate::error::{Error, Result};
use crate::lattice::{ExponentVector, LatticeSet};
use crate::rational::{DegreeBound, Rational};
use crate::series::PuiseuxSeries;
use crate::zpoly::ZPolynomial;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// True iff `coeffs[b]` vanishes at `x1 = 0` for every `b` in
/// `{0} ∪ {2..m}` while the linear coefficient does not.
pub fn detect_regular(poly: &ZPolynomial) -> bool {
    let m = poly.degree();
    if m < 1 {
        return false;
    }
    if poly.coeff(1).eval_x1_zero().is_zero() {
        return false;
    }
    for b in (2..=m).chain([0]) {
        if !poly.coeff(b).eval_x1_zero().is_zero() {
            return false;
        }
    }
    true
}

/// Blowups (lifted from `x2..xn`) making the `x1 = 0` part of the linear
/// coefficient a monomial times a unit.
pub struct RegularSetup {
    pub poly: ZPolynomial,
    pub map: MonomialMap,
}

pub fn regular_setup(poly: &ZPolynomial, cap: usize) -> Result<RegularSetup> {
    let n = poly.vars();
    let beta_hat = poly.coeff(1).eval_x1_zero();
    debug_assert!(!beta_hat.is_zero());

    if n < 2 || is_monomial_times_unit(&beta_hat) {
        return Ok(RegularSetup {
            poly: poly.clone(),
            map: MonomialMap::identity(n),
        });
    }
    let d = poly.denominator();
    let d_rat = Rational::from_integer(BigInt::from(d));
    let scaled: Vec<ExponentVector> = beta_hat
        .newton_diagram()
        .into_iter()
        .map(|e| e.scale(&d_rat))
        .collect();
    let principal = blowup::principalize(&[LatticeSet::new(scaled)?], cap)?;
    let lifted = principal.map.lift_fixing_first();
    Ok(RegularSetup {
        poly: poly.apply_map(&lifted),
        map: lifted,
    })
}

fn is_monomial_times_unit(series: &PuiseuxSeries) -> bool {
    match series.leading_term() {
        None => false,
        Some((apex, _)) => {
            let apex = apex.clone();
            series.terms().all(|(e, _)| apex.leq_product(e))
        }
    }
}

/// The full regular-shape normalization, applied when a forced step would
/// leave the first quadrant: `phi_1n^{a_n} ... phi_12^{a_2}` with the integer
/// apex coordinates of the linear coefficient, after which the whole
/// equation is divisible by the apex monomial; dividing it out leaves the
/// reduced linear coefficient a unit.
pub struct HardNormalization {
    pub poly: ZPolynomial,
    pub map: MonomialMap,
    /// The monomial in `x2..xn` divided out of the equation.
    pub monomial: ExponentVector,
}

pub fn regular_normalize_hard(poly: &ZPolynomial) -> Result<HardNormalization> {
    let n = poly.vars();
    let beta_hat = poly.coeff(1).eval_x1_zero();
    let apex = beta_hat
        .leading_term()
        .map(|(e, _)| e.clone())
        .ok_or(Error::ExactnessViolation("zero linear coefficient"))?;
    let d = poly.denominator();
    let d_rat = Rational::from_integer(BigInt::from(d));
    let apex_scaled = apex.scale(&d_rat);

    let mut ordering = MonomialMap::identity(n);
    for j in 0..apex_scaled.dim() {
        let a_j: i64 = apex_scaled
            .coord(j)
            .to_integer()
            .try_into()
            .map_err(|_| Error::ExactnessViolation("apex coordinate overflow"))?;
        if a_j != 0 {
            ordering = ordering.compose(&MonomialMap::elementary_power(n, 0, j + 1, a_j)?)?;
        }
    }
    let mut out = poly.apply_map(&ordering);
    let monomial = apex.prepend(Rational::zero());
    if !monomial.is_zero() {
        out = out.div_monomial(&monomial)?;
    }
    let check = out.coeff(1).eval_x1_zero();
    if check.constant_coefficient().is_zero() {
        return Err(Error::ExactnessViolation(
            "linear coefficient not a unit after regular normalization",
        ));
    }
    Ok(HardNormalization {
        poly: out,
        map: ordering,
        monomial,
    })
}

/// One forced step of the regular iteration: the segment through `(0, 1)`
/// and `(nu_x1(w_m), 0)`, characteristic equation `beta * alpha + alpha' = 0`.
pub struct ForcedStep {
    pub gamma: Rational,
    pub alpha: PuiseuxSeries,
    pub poly: ZPolynomial,
}

/// Outcome of attempting a forced step.
pub enum ForcedOutcome {
    /// The constant coefficient is the zero series; the accumulated prefix
    /// is a root as far as it is known.
    Root,
    /// Dividing by the linear coefficient left the first quadrant; the hard
    /// normalization is required before continuing.
    NeedsNormalization,
    Step(ForcedStep),
}

/// Extract the unique next term; `target` bounds the precision to which
/// `alpha` is computed.
pub fn forced_step(poly: &ZPolynomial, target: &DegreeBound) -> Result<ForcedOutcome> {
    let w_m = poly.coeff(0);
    if w_m.is_zero() {
        return Ok(ForcedOutcome::Root);
    }
    let gamma = w_m.x1_order().expect("nonzero constant coefficient");
    if !gamma.is_positive() {
        return Err(Error::ExactnessViolation(
            "regular iteration expects positive x1-order of the constant term",
        ));
    }
    let alpha_num = w_m.coefficient_of_x1_power(&gamma);
    let beta_hat = poly.coeff(1).eval_x1_zero();
    // beta_hat is a monomial times a unit; divide exactly by the monomial and
    // invert the unit.
    let apex = beta_hat
        .leading_term()
        .map(|(e, _)| e.clone())
        .ok_or(Error::ExactnessViolation("zero linear coefficient"))?;
    let unit = beta_hat.div_monomial(&apex)?;
    let unit_target = target.clone().shift(&apex.total_degree());
    let unit_inv = unit.invert_unit(&unit_target)?;
    let neg_apex = ExponentVector::zero(apex.dim()).sub(&apex)?;
    let alpha = alpha_num
        .negate()
        .mul(&unit_inv)?
        .mul_monomial(&neg_apex, &Rational::one())
        .truncate(target);
    if !alpha.has_nonnegative_support() {
        return Ok(ForcedOutcome::NeedsNormalization);
    }
    let alpha_lifted = alpha.lift_prepend_zero();
    let next = super::engine::step_substitute(poly, &gamma, &alpha_lifted, &gamma)?;
    Ok(ForcedOutcome::Step(ForcedStep {
        gamma,
        alpha: alpha_lifted,
        poly: next,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rint;

    fn mono1(c: i64, e: i64) -> PuiseuxSeries {
        PuiseuxSeries::monomial(ExponentVector::from_ints(&[e]), rint(c))
    }

    #[test]
    fn detect_examples() {
        // z^2 + (1 + x2) z - x1: the z^2 coefficient is 1 at x1 = 0
        let one_plus_x2 = PuiseuxSeries::one(2)
            .add(&PuiseuxSeries::monomial(
                ExponentVector::from_ints(&[0, 1]),
                rint(1),
            ))
            .unwrap();
        let x1 = PuiseuxSeries::monomial(ExponentVector::from_ints(&[1, 0]), rint(1));
        let p = ZPolynomial::new(vec![x1.negate(), one_plus_x2.clone(), PuiseuxSeries::one(2)])
            .unwrap();
        assert!(!detect_regular(&p));

        // x1 z^2 + (1 + x2) z - x1 x2
        let x1x2 = PuiseuxSeries::monomial(ExponentVector::from_ints(&[1, 1]), rint(1));
        let q = ZPolynomial::new(vec![x1x2.negate(), one_plus_x2, x1]).unwrap();
        assert!(detect_regular(&q));

        // z - x1
        let l = ZPolynomial::new(vec![mono1(-1, 1), PuiseuxSeries::one(1)]).unwrap();
        assert!(detect_regular(&l));
    }

    #[test]
    fn setup_principalizes_non_monomial_beta() {
        // x1 z^2 + (x2 + x3) z - x1 x2: beta = x2 + x3 needs principalizing
        let x2 = PuiseuxSeries::monomial(ExponentVector::from_ints(&[0, 1, 0]), rint(1));
        let x3 = PuiseuxSeries::monomial(ExponentVector::from_ints(&[0, 0, 1]), rint(1));
        let x1 = PuiseuxSeries::monomial(ExponentVector::from_ints(&[1, 0, 0]), rint(1));
        let x1x2 = PuiseuxSeries::monomial(ExponentVector::from_ints(&[1, 1, 0]), rint(1));
        let p = ZPolynomial::new(vec![x1x2.negate(), x2.add(&x3).unwrap(), x1]).unwrap();
        assert!(detect_regular(&p));
        let setup = regular_setup(&p, 10_000).unwrap();
        assert!(!setup.map.is_identity());
        let beta_hat = setup.poly.coeff(1).eval_x1_zero();
        assert!(is_monomial_times_unit(&beta_hat));
    }

    #[test]
    fn hard_normalization_when_a_step_leaves_the_quadrant() {
        // x1 z^2 + x2 z + x1: the forced alpha would be -x2^(-1); the full
        // normalization multiplies the equation into divisibility by x2 and
        // leaves a unit linear coefficient.
        let x1 = PuiseuxSeries::monomial(ExponentVector::from_ints(&[1, 0]), rint(1));
        let x2 = PuiseuxSeries::monomial(ExponentVector::from_ints(&[0, 1]), rint(1));
        let p = ZPolynomial::new(vec![x1.clone(), x2, x1]).unwrap();
        assert!(detect_regular(&p));
        let setup = regular_setup(&p, 10_000).unwrap();
        assert!(setup.map.is_identity());

        let t = DegreeBound::finite(6, 1);
        assert!(matches!(
            forced_step(&setup.poly, &t).unwrap(),
            ForcedOutcome::NeedsNormalization
        ));
        let hard = regular_normalize_hard(&setup.poly).unwrap();
        assert_eq!(
            hard.map,
            MonomialMap::elementary(2, 0, 1, 1).unwrap()
        );
        assert_eq!(hard.monomial, ExponentVector::from_ints(&[0, 1]));
        // now the reduced linear coefficient is a unit and the step works
        let beta_hat = hard.poly.coeff(1).eval_x1_zero();
        assert!(!beta_hat.constant_coefficient().is_zero());
        match forced_step(&hard.poly, &t).unwrap() {
            ForcedOutcome::Step(step) => {
                assert_eq!(step.gamma, Rational::from_integer(1.into()));
                assert!(step.alpha.has_nonnegative_support());
            }
            _ => panic!("expected a forced step after normalization"),
        }
    }

    #[test]
    fn forced_steps_reverse_a_series() {
        // x1 z^2 + z - x1: root x1 - x1^3 + 2 x1^5 - ...
        let p = ZPolynomial::new(vec![mono1(-1, 1), PuiseuxSeries::one(1), mono1(1, 1)]).unwrap();
        assert!(detect_regular(&p));
        let setup = regular_setup(&p, 10_000).unwrap();
        assert!(setup.map.is_identity());

        let t = DegreeBound::finite(6, 1);
        let mut poly = setup.poly;
        let mut acc = PuiseuxSeries::zero(1);
        let mut shift = Rational::zero();
        loop {
            let step = match forced_step(&poly, &t).unwrap() {
                ForcedOutcome::Step(s) => s,
                _ => break,
            };
            let shift_vec = ExponentVector::new(vec![shift.clone() + &step.gamma]);
            acc = acc
                .add(&step.alpha.mul_monomial(&shift_vec, &Rational::one()))
                .unwrap();
            shift += &step.gamma;
            poly = step.poly;
            if shift >= rint(6) {
                break;
            }
        }
        // x1 - x1^3 + 2 x1^5
        assert_eq!(acc.coefficient(&ExponentVector::from_ints(&[1])), rint(1));
        assert_eq!(acc.coefficient(&ExponentVector::from_ints(&[2])), rint(0));
        assert_eq!(acc.coefficient(&ExponentVector::from_ints(&[3])), rint(-1));
        assert_eq!(acc.coefficient(&ExponentVector::from_ints(&[5])), rint(2));
    }
}
