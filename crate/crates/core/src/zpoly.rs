//! Polynomials in the distinguished unknown `z` with Puiseux-series
//! coefficients.

use crate::blowup::MonomialMap;
use crate::error::{Error, Result};
use crate::lattice::ExponentVector;
use crate::rational::{lcm_u64, Rational};
use crate::series::PuiseuxSeries;
use num_traits::{One, Zero};
use std::fmt;

/// `coeffs[i]` multiplies `z^i`; the leading coefficient is nonzero unless
/// the polynomial is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct ZPolynomial {
    coeffs: Vec<PuiseuxSeries>,
}

impl ZPolynomial {
    pub fn new(mut coeffs: Vec<PuiseuxSeries>) -> Result<Self> {
        let n = coeffs
            .first()
            .map(|c| c.vars())
            .ok_or(Error::ExactnessViolation("empty coefficient list"))?;
        for c in &coeffs {
            if c.vars() != n {
                return Err(Error::DimensionMismatch(c.vars(), n));
            }
        }
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(ZPolynomial { coeffs })
    }

    /// `z - f`.
    pub fn linear_root(f: &PuiseuxSeries) -> Self {
        ZPolynomial {
            coeffs: vec![f.negate(), PuiseuxSeries::one(f.vars())],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn vars(&self) -> usize {
        self.coeffs[0].vars()
    }

    pub fn coeff(&self, i: usize) -> &PuiseuxSeries {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[PuiseuxSeries] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Common denominator across all coefficients.
    pub fn denominator(&self) -> u64 {
        self.coeffs
            .iter()
            .fold(1u64, |acc, c| lcm_u64(acc, c.denominator()))
    }

    pub fn map_coefficients<F: FnMut(&PuiseuxSeries) -> PuiseuxSeries>(&self, mut f: F) -> Self {
        ZPolynomial {
            coeffs: self.coeffs.iter().map(|c| f(c)).collect(),
        }
    }

    pub fn apply_map(&self, map: &MonomialMap) -> Self {
        self.map_coefficients(|c| c.apply_map(map))
    }

    /// Number of leading zero coefficients, i.e. the multiplicity of `z = 0`.
    pub fn z_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divide by `z^k` (shift coefficients down).
    pub fn deflate(&self, k: usize) -> Result<Self> {
        if self.z_order() < k {
            return Err(Error::ExactnessViolation("deflation by a non-root"));
        }
        ZPolynomial::new(self.coeffs[k..].to_vec())
    }

    /// Divide every coefficient by `x1^beta`; errors if any term has a
    /// smaller `x1`-exponent.
    pub fn div_x1_power(&self, beta: &Rational) -> Result<Self> {
        if beta.is_zero() {
            return Ok(self.clone());
        }
        let n = self.vars();
        let mut shift_coords = vec![Rational::zero(); n];
        shift_coords[0] = beta.clone();
        let shift = ExponentVector::new(shift_coords);
        for c in &self.coeffs {
            if let Some(nu) = c.x1_order() {
                if nu < *beta {
                    return Err(Error::ExactnessViolation(
                        "a term with x1-exponent below the segment minimum survived",
                    ));
                }
            }
        }
        let neg = ExponentVector::zero(n).sub(&shift)?;
        Ok(self.map_coefficients(|c| c.mul_monomial(&neg, &Rational::one())))
    }

    /// Divide every coefficient by the monomial `x^shift` exactly.
    pub fn div_monomial(&self, shift: &ExponentVector) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.div_monomial(shift)?);
        }
        ZPolynomial::new(out)
    }

    /// Evaluate at a series: `sum coeffs[i] * f^i` (Horner), the residual
    /// oracle behind root verification.
    pub fn substitute_root(&self, f: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        if f.vars() != self.vars() {
            return Err(Error::DimensionMismatch(f.vars(), self.vars()));
        }
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(f)?.add(c)?;
        }
        Ok(acc)
    }

    pub fn mul(&self, other: &ZPolynomial) -> Result<ZPolynomial> {
        if self.vars() != other.vars() {
            return Err(Error::DimensionMismatch(self.vars(), other.vars()));
        }
        let n = self.vars();
        let deg = self.degree() + other.degree();
        let mut out = vec![PuiseuxSeries::zero(n); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        ZPolynomial::new(out)
    }
}

impl fmt::Display for ZPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "({})", c)?;
            } else if c.is_one() {
                write!(f, "{}", zpow(i))?;
            } else {
                write!(f, "({})*{}", c, zpow(i))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ZPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn zpow(i: usize) -> String {
    if i == 1 {
        "z".to_string()
    } else {
        format!("z^{}", i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rint;

    fn x(n: usize, i: usize) -> PuiseuxSeries {
        let mut coords = vec![Rational::zero(); n];
        coords[i] = Rational::one();
        PuiseuxSeries::monomial(ExponentVector::new(coords), Rational::one())
    }

    #[test]
    fn substitute_exact_roots() {
        // z - x1 at x1
        let p = ZPolynomial::linear_root(&x(2, 0));
        assert!(p.substitute_root(&x(2, 0)).unwrap().is_zero());

        // z^2 - x1 x2 at x1^(1/2) x2^(1/2)
        let x1x2 = x(2, 0).mul(&x(2, 1)).unwrap();
        let p2 = ZPolynomial::new(vec![
            x1x2.negate(),
            PuiseuxSeries::zero(2),
            PuiseuxSeries::one(2),
        ])
        .unwrap();
        let root = PuiseuxSeries::monomial(
            ExponentVector::new(vec![crate::rational::rat(1, 2), crate::rational::rat(1, 2)]),
            Rational::one(),
        );
        assert!(p2.substitute_root(&root).unwrap().is_zero());
    }

    #[test]
    fn product_of_linear_factors() {
        let f = x(1, 0);
        let g = x(1, 0).mul_scalar(&rint(2));
        let p = ZPolynomial::linear_root(&f)
            .mul(&ZPolynomial::linear_root(&g))
            .unwrap();
        assert_eq!(p.degree(), 2);
        assert!(p.is_monic());
        assert!(p.substitute_root(&f).unwrap().is_zero());
        assert!(p.substitute_root(&g).unwrap().is_zero());
    }

    #[test]
    fn x1_division_guard() {
        let p = ZPolynomial::new(vec![x(2, 0), PuiseuxSeries::one(2)]).unwrap();
        assert!(p.div_x1_power(&rint(1)).is_err());
        let q = ZPolynomial::new(vec![x(2, 0), x(2, 0)]).unwrap();
        let r = q.div_x1_power(&rint(1)).unwrap();
        assert!(r.coeff(0).is_one());
    }

    #[test]
    fn deflation() {
        let p = ZPolynomial::new(vec![
            PuiseuxSeries::zero(1),
            x(1, 0),
            PuiseuxSeries::one(1),
        ])
        .unwrap();
        assert_eq!(p.z_order(), 1);
        let q = p.deflate(1).unwrap();
        assert_eq!(q.degree(), 1);
    }
}
