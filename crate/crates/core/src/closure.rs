//! Integral-closure tools: cone rings, Galois conjugates of finite Puiseux
//! elements, minimal polynomials over the formal power series ring, and the
//! solver entry point for equations with cone-supported coefficients.
//!
//! Roots of unity are kept symbolic: a conjugate carries a power of a
//! primitive d-th root of unity per term, and orbit products accumulate in
//! the group algebra of Z/d, reduced at the end modulo the d-th cyclotomic
//! polynomial. A nonzero residue there is a bug guard, not a recoverable
//! condition: symmetric functions of a full conjugate orbit are rational.

use crate::blowup::MonomialMap;
use crate::cone::common_enclosing;
use crate::error::{Error, Result};
use crate::lattice::ExponentVector;
use crate::newton::{self, PuiseuxRoot, SolveConfig};
use crate::rational::Rational;
use crate::series::PuiseuxSeries;
use crate::zpoly::ZPolynomial;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A Puiseux series together with the blow-down certificate of the S-cone
/// holding its support.
#[derive(Clone, Debug)]
pub struct ConeRingElement {
    pub series: PuiseuxSeries,
    pub cone: MonomialMap,
}

impl ConeRingElement {
    pub fn new(series: PuiseuxSeries, cone: MonomialMap) -> Result<Self> {
        if !cone.is_blowdown_composition() {
            return Err(Error::NotBlowdown);
        }
        if let Some(w) = series
            .newton_diagram()
            .into_iter()
            .find(|e| !crate::cone::contains(&cone, e))
        {
            return Err(Error::NegativeSupport {
                witness: w.coords_for_error(),
            });
        }
        Ok(ConeRingElement { series, cone })
    }

    /// Element of `k[[x]]` itself: the first-quadrant cone.
    pub fn quadrant(series: PuiseuxSeries) -> Result<Self> {
        let n = series.vars();
        ConeRingElement::new(series, MonomialMap::identity(n))
    }
}

/// The exponent twist of one Galois conjugation: a residue mod d per
/// variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateCharacter {
    residues: Vec<u64>,
}

impl ConjugateCharacter {
    pub fn new(residues: Vec<u64>, d: u64) -> Self {
        ConjugateCharacter {
            residues: residues.into_iter().map(|r| r % d.max(1)).collect(),
        }
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

/// A series whose term coefficients carry a power of a primitive d-th root
/// of unity, in canonical form (for even d the power is reduced below d/2 by
/// `zeta^(d/2) = -1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedSeries {
    d: u64,
    n: usize,
    terms: BTreeMap<ExponentVector, (Rational, u64)>,
}

impl TwistedSeries {
    pub fn order(&self) -> u64 {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &(Rational, u64))> {
        self.terms.iter()
    }

    /// Back to a plain series when every twist is trivial.
    pub fn to_rational_series(&self) -> Option<PuiseuxSeries> {
        if self.terms.values().any(|(_, pow)| *pow != 0) {
            return None;
        }
        Some(PuiseuxSeries::from_terms(
            self.n,
            self.terms
                .iter()
                .map(|(e, (c, _))| (e.clone(), c.clone())),
            crate::rational::DegreeBound::Unbounded,
        ))
    }
}

fn canonical_twist(d: u64, coeff: Rational, pow: u64) -> (Rational, u64) {
    let mut pow = pow % d;
    let mut coeff = coeff;
    if d % 2 == 0 && pow >= d / 2 {
        pow -= d / 2;
        coeff = -coeff;
    }
    (coeff, pow)
}

/// Twist every term of `f` by `zeta^(<a d, c>)`, where `d` is the
/// denominator of `f` and `zeta` a primitive d-th root of unity.
pub fn conjugate(f: &PuiseuxSeries, chi: &ConjugateCharacter) -> TwistedSeries {
    let d = f.denominator();
    let d_big = BigInt::from(d);
    let mut terms = BTreeMap::new();
    for (e, c) in f.terms() {
        let mut dot = BigInt::zero();
        for (coord, &r) in e.coords().iter().zip(chi.residues.iter()) {
            let scaled = coord * Rational::from_integer(d_big.clone());
            debug_assert!(scaled.denom().is_one());
            dot += scaled.numer() * BigInt::from(r);
        }
        let pow_big = ((dot % &d_big) + &d_big) % &d_big;
        let pow: u64 = pow_big.try_into().expect("residue fits");
        let (coeff, pow) = canonical_twist(d, c.clone(), pow);
        terms.insert(e.clone(), (coeff, pow));
    }
    TwistedSeries {
        d,
        n: f.vars(),
        terms,
    }
}

/// The d-th cyclotomic polynomial, dense integer coefficients, constant
/// first: `(x^d - 1) / prod_{e | d, e < d} Phi_e(x)`.
fn cyclotomic(d: u64) -> Vec<BigInt> {
    let mut numer: Vec<BigInt> = vec![BigInt::zero(); (d + 1) as usize];
    numer[0] = -BigInt::one();
    numer[d as usize] = BigInt::one();
    for e in 1..d {
        if d % e == 0 {
            let phi_e = cyclotomic(e);
            numer = exact_div(&numer, &phi_e);
        }
    }
    numer
}

fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        quot[k] = c.clone();
        if c.is_zero() {
            continue;
        }
        for (i, dc) in den.iter().enumerate() {
            rem[k + i] -= &c * dc;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact division");
    quot
}

/// Reduce a group-algebra vector `sum c_j zeta^j` modulo the d-th cyclotomic
/// polynomial; `Some(value)` when the remainder is a constant.
fn reduce_mod_cyclotomic(d: u64, comps: &[Rational]) -> Option<Rational> {
    if d == 1 {
        return Some(comps[0].clone());
    }
    let phi = cyclotomic(d);
    let deg = phi.len() - 1;
    let mut rem: Vec<Rational> = comps.to_vec();
    for k in (deg..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        rem[k] = Rational::zero();
        for (i, pc) in phi.iter().enumerate().take(deg) {
            let delta = &c * Rational::from_integer(pc.clone());
            rem[k - deg + i] -= delta;
        }
    }
    if rem[1..deg.min(rem.len())].iter().all(|c| c.is_zero()) {
        Some(rem[0].clone())
    } else {
        None
    }
}

/// Series over the group algebra of Z/d: the scratch representation for
/// orbit products.
#[derive(Clone)]
struct CycSeries {
    d: u64,
    n: usize,
    terms: BTreeMap<ExponentVector, Vec<Rational>>,
}

impl CycSeries {
    fn zero(d: u64, n: usize) -> Self {
        CycSeries {
            d,
            n,
            terms: BTreeMap::new(),
        }
    }

    fn one(d: u64, n: usize) -> Self {
        let mut s = CycSeries::zero(d, n);
        let mut v = vec![Rational::zero(); d as usize];
        v[0] = Rational::one();
        s.terms.insert(ExponentVector::zero(n), v);
        s
    }

    fn from_twisted(t: &TwistedSeries) -> Self {
        let mut s = CycSeries::zero(t.d, t.n);
        for (e, (c, pow)) in &t.terms {
            let mut v = vec![Rational::zero(); t.d as usize];
            v[*pow as usize] = c.clone();
            s.terms.insert(e.clone(), v);
        }
        s
    }

    fn add_assign_term(&mut self, e: ExponentVector, v: &[Rational]) {
        let entry = self
            .terms
            .entry(e)
            .or_insert_with(|| vec![Rational::zero(); self.d as usize]);
        for (a, b) in entry.iter_mut().zip(v) {
            *a += b;
        }
    }

    fn sub_assign(&mut self, other: &CycSeries) {
        for (e, v) in &other.terms {
            let neg: Vec<Rational> = v.iter().map(|c| -c).collect();
            self.add_assign_term(e.clone(), &neg);
        }
        self.prune();
    }

    fn add_assign(&mut self, other: &CycSeries) {
        for (e, v) in &other.terms {
            self.add_assign_term(e.clone(), v);
        }
        self.prune();
    }

    fn mul(&self, other: &CycSeries) -> CycSeries {
        let d = self.d as usize;
        let mut out = CycSeries::zero(self.d, self.n);
        for (ea, va) in &self.terms {
            for (eb, vb) in &other.terms {
                let e = ea.add(eb).expect("same dimension");
                // zeta-convolution mod d
                let mut v = vec![Rational::zero(); d];
                for (i, ca) in va.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (j, cb) in vb.iter().enumerate() {
                        if cb.is_zero() {
                            continue;
                        }
                        v[(i + j) % d] += ca * cb;
                    }
                }
                out.add_assign_term(e, &v);
            }
        }
        out.prune();
        out
    }

    fn prune(&mut self) {
        self.terms.retain(|_, v| v.iter().any(|c| !c.is_zero()));
    }

    fn to_rational(&self) -> Result<PuiseuxSeries> {
        let mut terms = Vec::new();
        for (e, v) in &self.terms {
            let value = reduce_mod_cyclotomic(self.d, v).ok_or(Error::ZetaResidue)?;
            if !value.is_zero() {
                terms.push((e.clone(), value));
            }
        }
        Ok(PuiseuxSeries::from_terms(
            self.n,
            terms,
            crate::rational::DegreeBound::Unbounded,
        ))
    }
}

/// Minimal polynomial of a finite-support Puiseux element over the formal
/// power series field: the product of `z - g` over the distinct conjugates
/// `g` of `f`. Monic; the degree divides `d^n`.
pub fn minimal_polynomial(f: &PuiseuxSeries) -> Result<ZPolynomial> {
    if !f.precision().is_unbounded() {
        return Err(Error::ExactnessViolation(
            "minimal polynomial needs a finite (exact) element",
        ));
    }
    let n = f.vars();
    let d = f.denominator();

    // Distinct conjugates under the full character group (Z/d)^n.
    let mut orbit: Vec<TwistedSeries> = Vec::new();
    let mut chi = vec![0u64; n];
    loop {
        let sigma = conjugate(f, &ConjugateCharacter::new(chi.clone(), d));
        if !orbit.contains(&sigma) {
            orbit.push(sigma);
        }
        // increment the character counter in base d
        let mut k = 0;
        while k < n {
            chi[k] += 1;
            if chi[k] < d {
                break;
            }
            chi[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }

    // Expand prod (z - sigma(f)) with group-algebra coefficients.
    let mut coeffs: Vec<CycSeries> = vec![CycSeries::one(d, n)];
    for sigma in &orbit {
        let g = CycSeries::from_twisted(sigma);
        let mut next: Vec<CycSeries> = vec![CycSeries::zero(d, n); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1].add_assign(c);
            let prod = g.mul(c);
            next[i].sub_assign(&prod);
        }
        coeffs = next;
    }

    let mut rational_coeffs = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        rational_coeffs.push(c.to_rational()?);
    }
    ZPolynomial::new(rational_coeffs)
}

/// True iff every coefficient's support lies in `Z>=0^n`, i.e. all
/// coefficients belong to `k[[x]]`. The witness is the lex-least offending
/// exponent.
pub fn is_integral_over_formal(minpoly: &ZPolynomial) -> (bool, Option<ExponentVector>) {
    let mut witness: Option<ExponentVector> = None;
    for c in minpoly.coeffs() {
        for e in c.newton_diagram() {
            if !(e.is_nonnegative() && e.is_integral()) {
                match &witness {
                    Some(w) if *w <= e => {}
                    _ => witness = Some(e),
                }
            }
        }
    }
    (witness.is_none(), witness)
}

/// Solve a monic equation whose coefficients live in cone rings: merge the
/// coefficient cones into a common enclosing cone, pull the equation back to
/// first-quadrant coefficients, run the Newton solver, and push the
/// certificates forward.
///
/// A non-monic equation with a nonzero constant leading coefficient is
/// normalized by dividing through; other leading coefficients are rejected.
pub fn solve_over_cone_ring(
    coefficients: &[ConeRingElement],
    cfg: &SolveConfig,
) -> Result<Vec<PuiseuxRoot>> {
    if coefficients.len() < 2 {
        return Err(Error::NotMonic);
    }
    let n = coefficients[0].series.vars();
    let lead = &coefficients[coefficients.len() - 1].series;
    let scale = if lead.is_one() {
        None
    } else {
        let c = lead.constant_coefficient();
        if lead.num_terms() == 1 && !c.is_zero() {
            Some(c)
        } else {
            return Err(Error::NotInvertibleLead);
        }
    };

    // Fold the coefficient cones into one enclosing blow-down.
    let mut merged = MonomialMap::identity(n);
    for c in coefficients {
        if c.series.is_zero() {
            continue;
        }
        merged = common_enclosing(&merged, &c.cone)?;
    }
    let inverse = merged.inverse();

    let mut pulled = Vec::with_capacity(coefficients.len());
    for c in coefficients {
        let mut s = c.series.apply_map(&inverse);
        if let Some(scalar) = &scale {
            s = s.mul_scalar(&scalar.recip());
        }
        if let Some(w) = s.negative_support_witness() {
            return Err(Error::NegativeSupport {
                witness: w.coords_for_error(),
            });
        }
        pulled.push(s);
    }
    let poly = ZPolynomial::new(pulled)?;

    let inner = newton::solve(&poly, cfg)?;
    inner
        .into_iter()
        .map(|r| {
            let certificate = r.certificate.compose(&merged)?;
            Ok(PuiseuxRoot {
                certificate,
                ..r
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rint};

    fn mono(coords: &[(i64, i64)], c: (i64, i64)) -> PuiseuxSeries {
        PuiseuxSeries::monomial(
            ExponentVector::new(coords.iter().map(|&(p, q)| rat(p, q)).collect()),
            rat(c.0, c.1),
        )
    }

    #[test]
    fn conjugation_examples() {
        // d = 1: every character fixes f
        let f = mono(&[(1, 1), (1, 1)], (1, 1));
        let sigma = conjugate(&f, &ConjugateCharacter::new(vec![1, 1], 1));
        assert_eq!(sigma.to_rational_series().unwrap(), f);

        // f = x1^(1/2), c = (1, 0): zeta = -1
        let h = mono(&[(1, 2), (0, 1)], (1, 1));
        let sigma = conjugate(&h, &ConjugateCharacter::new(vec![1, 0], 2));
        assert_eq!(sigma.to_rational_series().unwrap(), h.negate());

        // f = x1^(1/2) + x2^(1/2), c = (1, 1): both terms flip
        let g = mono(&[(1, 2), (0, 1)], (1, 1))
            .add(&mono(&[(0, 1), (1, 2)], (1, 1)))
            .unwrap();
        let sigma = conjugate(&g, &ConjugateCharacter::new(vec![1, 1], 2));
        assert_eq!(sigma.to_rational_series().unwrap(), g.negate());
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(cyclotomic(2), vec![BigInt::from(1), BigInt::from(1)]);
        // Phi_3 = x^2 + x + 1
        assert_eq!(
            cyclotomic(3),
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)]
        );
        // Phi_6 = x^2 - x + 1
        assert_eq!(
            cyclotomic(6),
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]
        );
        // 1 + zeta + zeta^2 = 0 for d = 3
        let v = vec![rint(1), rint(1), rint(1)];
        assert_eq!(reduce_mod_cyclotomic(3, &v), Some(rint(0)));
        // 1 + zeta is not rational for d = 3
        let w = vec![rint(1), rint(1), rint(0)];
        assert_eq!(reduce_mod_cyclotomic(3, &w), None);
    }

    #[test]
    fn minimal_polynomial_examples() {
        // d = 1: z - f
        let f = mono(&[(1, 1), (1, 1)], (1, 1));
        let p = minimal_polynomial(&f).unwrap();
        assert_eq!(p.degree(), 1);
        assert!(p.is_monic());
        assert_eq!(p.coeff(0), &f.negate());

        // f = x1^(1/2) x2^(1/2): orbit {f, -f}, minpoly z^2 - x1 x2
        let g = mono(&[(1, 2), (1, 2)], (1, 1));
        let q = minimal_polynomial(&g).unwrap();
        assert_eq!(q.degree(), 2);
        assert!(q.coeff(1).is_zero());
        assert_eq!(q.coeff(0), &mono(&[(1, 1), (1, 1)], (-1, 1)));
        // evaluating the minimal polynomial at f gives zero
        assert!(q.substitute_root(&g).unwrap().is_zero());
    }

    #[test]
    fn minimal_polynomial_of_cube_root() {
        // f = x1^(1/3): minpoly z^3 - x1, through the d = 3 group algebra
        let f = mono(&[(1, 3)], (1, 1));
        let p = minimal_polynomial(&f).unwrap();
        assert_eq!(p.degree(), 3);
        assert!(p.coeff(1).is_zero());
        assert!(p.coeff(2).is_zero());
        assert_eq!(p.coeff(0), &mono(&[(1, 1)], (-1, 1)));
    }

    #[test]
    fn integrality_examples() {
        // z - x1 x2 is integral
        let p = ZPolynomial::linear_root(&mono(&[(1, 1), (1, 1)], (1, 1)));
        assert!(is_integral_over_formal(&p).0);

        // z^2 - x1 x2 is integral
        let q = ZPolynomial::new(vec![
            mono(&[(1, 1), (1, 1)], (-1, 1)),
            PuiseuxSeries::zero(2),
            PuiseuxSeries::one(2),
        ])
        .unwrap();
        assert!(is_integral_over_formal(&q).0);

        // z^2 - x (1 - x/y) = z^2 - x + x^2 y^{-1}: not integral,
        // witness (2, -1)
        let c = mono(&[(1, 1), (0, 1)], (-1, 1))
            .add(&mono(&[(2, 1), (-1, 1)], (1, 1)))
            .unwrap();
        let r = ZPolynomial::new(vec![c, PuiseuxSeries::zero(2), PuiseuxSeries::one(2)]).unwrap();
        let (ok, witness) = is_integral_over_formal(&r);
        assert!(!ok);
        assert_eq!(witness.unwrap(), ExponentVector::from_ints(&[2, -1]));
    }

    #[test]
    fn cone_ring_solve_matches_quadrant_solve() {
        // coefficients already in k[[x]]: identical to newton::solve
        let x1x2 = mono(&[(1, 1), (1, 1)], (-1, 1));
        let coeffs = vec![
            ConeRingElement::quadrant(x1x2.clone()).unwrap(),
            ConeRingElement::quadrant(PuiseuxSeries::zero(2)).unwrap(),
            ConeRingElement::quadrant(PuiseuxSeries::one(2)).unwrap(),
        ];
        let cfg = SolveConfig::with_precision(rint(6));
        let roots = solve_over_cone_ring(&coeffs, &cfg).unwrap();
        assert_eq!(roots.len(), 2);
        let direct = newton::solve(
            &ZPolynomial::new(vec![x1x2, PuiseuxSeries::zero(2), PuiseuxSeries::one(2)]).unwrap(),
            &cfg,
        )
        .unwrap();
        for (a, b) in roots.iter().zip(&direct) {
            assert_eq!(a.series, b.series);
            assert_eq!(a.certificate, b.certificate);
        }
    }

    #[test]
    fn cone_ring_solve_with_disguised_coefficient() {
        // z^2 - x1 x2 with the constant coefficient declared in the cone of
        // phi_12^{-1} rather than the quadrant.
        let disguised = mono(&[(1, 1), (1, 1)], (-1, 1));
        let cone = MonomialMap::from_rows(&[&[1, -1], &[0, 1]]).unwrap();
        let coeffs = vec![
            ConeRingElement::new(disguised, cone).unwrap(),
            ConeRingElement::quadrant(PuiseuxSeries::zero(2)).unwrap(),
            ConeRingElement::quadrant(PuiseuxSeries::one(2)).unwrap(),
        ];
        let cfg = SolveConfig::with_precision(rint(6));
        let roots = solve_over_cone_ring(&coeffs, &cfg).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            // external root squares to x1 x2
            let ext = r.series.apply_map(&r.certificate);
            let sq = ext.mul(&ext).unwrap();
            assert_eq!(sq, mono(&[(1, 1), (1, 1)], (1, 1)));
            assert!(ext.support_in_cone(&r.certificate));
        }
    }

    #[test]
    fn non_monic_constant_lead_is_normalized() {
        // 2 z^2 - 2 x1 x2
        let coeffs = vec![
            ConeRingElement::quadrant(mono(&[(1, 1), (1, 1)], (-2, 1))).unwrap(),
            ConeRingElement::quadrant(PuiseuxSeries::zero(2)).unwrap(),
            ConeRingElement::quadrant(PuiseuxSeries::constant(2, rint(2))).unwrap(),
        ];
        let cfg = SolveConfig::with_precision(rint(6));
        let roots = solve_over_cone_ring(&coeffs, &cfg).unwrap();
        assert_eq!(roots.len(), 2);

        // a non-constant leading coefficient is rejected
        let bad = vec![
            ConeRingElement::quadrant(mono(&[(1, 1), (1, 1)], (-1, 1))).unwrap(),
            ConeRingElement::quadrant(PuiseuxSeries::zero(2)).unwrap(),
            ConeRingElement::quadrant(mono(&[(1, 1), (0, 1)], (1, 1))).unwrap(),
        ];
        assert!(matches!(
            solve_over_cone_ring(&bad, &cfg),
            Err(Error::NotInvertibleLead)
        ));
    }
}
