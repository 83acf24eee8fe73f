//! Polyhedral cones spanned by exponent vectors.
//!
//! The solver only ever produces simplicial cones `Phi(R>=0^n)` for a
//! blow-down composition `Phi` (the rows of its matrix are the generators);
//! arbitrary generator lists are supported through `is_s_cone` and
//! `bring_to_first_quadrant`.

use crate::blowup::MonomialMap;
use crate::error::{Error, Result};
use crate::lattice::ExponentVector;
use num_traits::{Signed, Zero};

/// A cone given by a finite generator list: all nonnegative rational
/// combinations of the generators.
#[derive(Clone, Debug)]
pub struct Cone {
    n: usize,
    generators: Vec<ExponentVector>,
}

/// Certificate that a cone is an S-cone: an order-preserving blowup
/// composition sending every generator into the first quadrant.
#[derive(Clone, Debug)]
pub struct SConeCertificate {
    pub reduction: MonomialMap,
}

pub const DEFAULT_REDUCTION_CAP: usize = 10_000;

impl Cone {
    pub fn new(generators: Vec<ExponentVector>) -> Result<Self> {
        let n = generators
            .first()
            .map(|g| g.dim())
            .ok_or(Error::ZeroGenerator)?;
        for g in &generators {
            if g.dim() != n {
                return Err(Error::DimensionMismatch(g.dim(), n));
            }
        }
        Ok(Cone { n, generators })
    }

    /// The cone `Phi(R>=0^n)` of a blow-down composition: generated by the
    /// rows of its matrix.
    pub fn of_blowdown(map: &MonomialMap) -> Self {
        Cone {
            n: map.dim(),
            generators: map.rows(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// True iff every generator is lexicographically positive. Errors on a
    /// zero generator.
    pub fn is_s_cone(&self) -> Result<bool> {
        for g in &self.generators {
            match g.first_nonzero_sign() {
                0 => return Err(Error::ZeroGenerator),
                1 => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Finds an order-preserving blowup composition taking every generator
    /// into the first quadrant.
    ///
    /// Strategy: among generators with a negative entry, pick the one whose
    /// first-nonzero index i0 is smallest, take its first negative index j,
    /// and apply `phi_{i0 j}` `ceil(|v_j| / v_{i0})` times. Every such burst
    /// only increases column j across generators, so the number of negative
    /// entries strictly decreases; the cap is a safety net.
    pub fn bring_to_first_quadrant(&self, cap: usize) -> Result<SConeCertificate> {
        if !self.is_s_cone()? {
            let witness = self
                .generators
                .iter()
                .find(|g| g.first_nonzero_sign() != 1)
                .expect("non-S-cone has a witness");
            return Err(Error::NotSCone {
                witness: witness.coords_for_error(),
            });
        }
        let n = self.n;
        let mut gens = self.generators.clone();
        let mut reduction = MonomialMap::identity(n);
        for _ in 0..cap {
            let target = gens
                .iter()
                .filter(|g| g.coords().iter().any(|c| c.is_negative()))
                .min_by_key(|g| {
                    g.coords()
                        .iter()
                        .position(|c| !c.is_zero())
                        .expect("nonzero generator")
                });
            let Some(v) = target else {
                return Ok(SConeCertificate { reduction });
            };
            let i0 = v
                .coords()
                .iter()
                .position(|c| !c.is_zero())
                .expect("nonzero generator");
            let j = v
                .coords()
                .iter()
                .position(|c| c.is_negative())
                .expect("generator has a negative entry");
            debug_assert!(i0 < j, "first nonzero of a lex-positive vector is positive");
            let pivot = v.coord(i0).clone();
            let deficit = -v.coord(j).clone();
            // ceil(deficit / pivot)
            let q = (&deficit / &pivot).ceil();
            let count = q
                .to_integer()
                .try_into()
                .map_err(|_| Error::ExactnessViolation("burst count overflow"))?;
            let burst = MonomialMap::elementary_power(n, i0, j, count)?;
            reduction = reduction.compose(&burst)?;
            for g in gens.iter_mut() {
                *g = burst.apply(g);
            }
        }
        Err(Error::IterationCapExceeded {
            cap,
            context: "bring_to_first_quadrant",
        })
    }
}

/// Membership in the simplicial cone of a blow-down composition: exact,
/// since `a` is in the cone iff `a * M^{-1}` has nonnegative coordinates.
pub fn contains(map: &MonomialMap, a: &ExponentVector) -> bool {
    map.inverse().apply(a).is_nonnegative()
}

/// A common enclosing cone for two blow-down compositions: a blow-down `Phi`
/// with `m1(R>=0^n)` and `m2(R>=0^n)` both inside `Phi(R>=0^n)`.
///
/// Construction: bring the union of the two row sets to the first quadrant
/// with a blowup composition `B`; then `B^{-1}` works, because the rows of
/// `A1` and `A2` become nonnegative combinations of the rows of `B^{-1}`.
pub fn common_enclosing(m1: &MonomialMap, m2: &MonomialMap) -> Result<MonomialMap> {
    common_enclosing_with_cap(m1, m2, DEFAULT_REDUCTION_CAP)
}

pub fn common_enclosing_with_cap(
    m1: &MonomialMap,
    m2: &MonomialMap,
    cap: usize,
) -> Result<MonomialMap> {
    if m1.dim() != m2.dim() {
        return Err(Error::DimensionMismatch(m1.dim(), m2.dim()));
    }
    if !m1.is_blowdown_composition() || !m2.is_blowdown_composition() {
        return Err(Error::NotBlowdown);
    }
    let mut gens = m1.rows();
    gens.extend(m2.rows());
    let cone = Cone::new(gens)?;
    let cert = cone.bring_to_first_quadrant(cap)?;
    Ok(cert.reduction.inverse())
}
