//! Segment preparation: blowing up the coefficients on an admissible segment
//! until each is a monomial times a unit and the monomials are totally
//! ordered for the product order, so that the characteristic equation can be
//! normalized to an equation of integral dependence.

use super::diagram::AdmissibleSegment;
use crate::blowup::{self, MonomialMap};
use crate::error::{Error, Result};
use crate::field::UnivariatePoly;
use crate::lattice::{ExponentVector, LatticeSet};
use crate::rational::{DegreeBound, Rational};
use crate::series::PuiseuxSeries;
use crate::zpoly::ZPolynomial;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Result of preparing a sloped segment.
pub struct PreparedSegment {
    pub map: MonomialMap,
    pub poly: ZPolynomial,
    /// Exponent of the ordering blowups `phi_1n^e ... phi_12^e`, when needed.
    pub e: Option<i64>,
}

/// Make every on-segment coefficient a monomial times a unit with
/// product-ordered monomials. The `x1`-exponents of all monomials are
/// untouched, so the diagram and the segment survive unchanged.
pub fn prepare_segment(
    poly: &ZPolynomial,
    segment: &AdmissibleSegment,
    cap: usize,
) -> Result<PreparedSegment> {
    let n = poly.vars();
    if n <= 1 {
        // Coefficients are series in x1 alone; stripping x1 already leaves
        // constants, so nothing to prepare.
        return Ok(PreparedSegment {
            map: MonomialMap::identity(n),
            poly: poly.clone(),
            e: None,
        });
    }
    let d = poly.denominator();
    let degrees = segment.z_degrees();

    // Principalize the supports of all on-segment coefficients jointly.
    let mut sets = Vec::with_capacity(degrees.len());
    for &b in &degrees {
        let coeff = poly.coeff(b);
        let scaled: Vec<ExponentVector> = coeff
            .newton_diagram()
            .into_iter()
            .map(|e| e.scale(&Rational::from_integer(BigInt::from(d))))
            .collect();
        sets.push(LatticeSet::new(scaled)?);
    }
    let principal = blowup::principalize(&sets, cap)?;
    let mut map = principal.map.clone();
    let mut out = poly.apply_map(&map);
    let d_rat = Rational::from_integer(BigInt::from(d));
    let mut apexes: Vec<ExponentVector> = principal
        .apexes
        .iter()
        .map(|a| a.scale(&(Rational::one() / &d_rat)))
        .collect();

    // Product-order the apexes: b_{m_1} << ... << b_{m_s} along descending
    // z-degree (ascending x1-order).
    let mut e_used = None;
    if !is_product_chain(&apexes) {
        let mut omega1: Option<Rational> = None;
        let mut omega2: Option<Rational> = None;
        for t in 0..apexes.len() {
            for t2 in (t + 1)..apexes.len() {
                let nu_diff = apexes[t2].coord(0) - apexes[t].coord(0);
                debug_assert!(nu_diff.is_positive());
                if omega1.as_ref().map_or(true, |w| nu_diff < *w) {
                    omega1 = Some(nu_diff);
                }
                for j in 1..n {
                    let diff = apexes[t].coord(j) - apexes[t2].coord(j);
                    if omega2.as_ref().map_or(true, |w| diff > *w) {
                        omega2 = Some(diff);
                    }
                }
            }
        }
        let w1 = omega1.ok_or(Error::ExactnessViolation("segment with a single point"))?;
        let w2 = omega2.expect("n >= 2 yields at least one pair");
        // least positive integer with e * w1 > w2
        let ratio = w2 / &w1;
        let mut e = ratio.floor().to_integer() + BigInt::one();
        if e < BigInt::one() {
            e = BigInt::one();
        }
        let e: i64 = e
            .try_into()
            .map_err(|_| Error::ExactnessViolation("ordering exponent overflow"))?;
        let mut ordering = MonomialMap::identity(n);
        for j in 1..n {
            ordering = ordering.compose(&MonomialMap::elementary_power(n, 0, j, e)?)?;
        }
        out = out.apply_map(&ordering);
        map = map.compose(&ordering)?;
        apexes = apexes.iter().map(|a| ordering.apply(a)).collect();
        e_used = Some(e);
        if !is_product_chain(&apexes) {
            return Err(Error::ExactnessViolation(
                "apexes not product-ordered after preparation",
            ));
        }
    }

    // Postcondition: each on-segment coefficient is its apex monomial times
    // a unit.
    for (&b, apex) in degrees.iter().zip(&apexes) {
        let coeff = out.coeff(b);
        if coeff.coefficient(apex).is_zero() {
            return Err(Error::ExactnessViolation("apex term missing"));
        }
        for (e, _) in coeff.terms() {
            if !apex.leq_product(e) {
                return Err(Error::ExactnessViolation(
                    "coefficient is not monomial times unit after preparation",
                ));
            }
        }
    }

    Ok(PreparedSegment { map, poly: out, e: e_used })
}

fn is_product_chain(apexes: &[ExponentVector]) -> bool {
    apexes
        .windows(2)
        .all(|w| w[0].leq_product(&w[1]))
}

/// Characteristic equation of a segment, over one fewer variable.
pub enum CharacteristicEquation {
    /// Base case (single-variable equation): constant coefficients.
    Constants(UnivariatePoly),
    /// Coefficients in `x2..xn`.
    Series(ZPolynomial),
    /// The on-segment data lies entirely beyond the precision carried by the
    /// coefficients; the segment's roots are known only up to the current
    /// prefix.
    Exhausted,
}

/// Build the characteristic equation of an admissible segment.
///
/// For the vertical segment this is the whole equation at `x1 = 0`. For a
/// sloped segment (the polynomial must be prepared first) every on-segment
/// coefficient contributes its `x1^nu` slice, and the result is normalized
/// monic by dividing through by the slice of highest z-degree, a monomial
/// times a unit. Zero roots are not of interest, so the `alpha`-power of the
/// result is divided out before returning.
pub fn characteristic_equation(
    poly: &ZPolynomial,
    segment: &AdmissibleSegment,
    working: &DegreeBound,
) -> Result<CharacteristicEquation> {
    let n = poly.vars();
    let m = poly.degree();
    let mut coeffs: Vec<PuiseuxSeries> = vec![PuiseuxSeries::zero(n.saturating_sub(1)); m + 1];

    if segment.is_vertical() {
        for b in 0..=m {
            coeffs[b] = poly.coeff(b).eval_x1_zero();
        }
    } else {
        let degrees = segment.z_degrees();
        for &b in &degrees {
            let nu = on_segment_exponent(segment, b)?;
            coeffs[b] = poly.coeff(b).coefficient_of_x1_power(&nu);
            if coeffs[b].is_zero() {
                // The diagram point exists, so the slice was nonempty before
                // the precision bound cut it off.
                return Ok(CharacteristicEquation::Exhausted);
            }
        }
        let bmax = degrees[0];
        let lead = coeffs[bmax].clone();
        if !lead.is_one() {
            let apex = lead
                .leading_term()
                .map(|(e, _)| e.clone())
                .ok_or(Error::ExactnessViolation("empty leading slice"))?;
            // leading term of a monomial-times-unit slice is its apex in the
            // product order as well; verified during preparation
            let unit = lead.div_monomial(&apex)?;
            let unit_inv = unit.invert_unit(working)?;
            for b in &degrees {
                if *b == bmax {
                    coeffs[*b] = PuiseuxSeries::one(n - 1);
                } else {
                    coeffs[*b] = coeffs[*b].div_monomial(&apex)?.mul(&unit_inv)?;
                }
            }
        }
    }

    let zp = ZPolynomial::new(coeffs)?;
    let ord = zp.z_order();
    let zp = if ord > 0 { zp.deflate(ord)? } else { zp };

    if n == 1 {
        let consts: Vec<Rational> = zp
            .coeffs()
            .iter()
            .map(|c| c.constant_coefficient())
            .collect();
        Ok(CharacteristicEquation::Constants(UnivariatePoly::new(
            consts,
        )))
    } else {
        Ok(CharacteristicEquation::Series(zp))
    }
}

fn on_segment_exponent(segment: &AdmissibleSegment, b: usize) -> Result<Rational> {
    segment
        .points
        .iter()
        .find(|(_, deg)| *deg == b)
        .map(|(nu, _)| nu.clone())
        .ok_or(Error::ExactnessViolation("z-degree not on segment"))
}
