//! Order-preserving monomial blowing-ups and blowing-downs as unit
//! upper-triangular integer matrices, plus principalization of finite
//! exponent sets.
//!
//! A map acts on exponent row vectors on the right, `a -> a * B`, so
//! composing `m1` then `m2` is the matrix product `M1 * M2`.

use crate::error::{Error, Result};
use crate::lattice::{ExponentVector, LatticeSet};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;

/// A finite composition of monomial blowing-ups or blowing-downs: a unit
/// upper-triangular integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialMap {
    n: usize,
    entries: Vec<i64>, // row-major
}

impl MonomialMap {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        MonomialMap { n, entries }
    }

    /// Builds a map from rows, checking unitriangularity. The determinant of a
    /// unit upper-triangular matrix is forced to 1; asserted anyway.
    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        let n = rows.len();
        let mut entries = vec![0i64; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(row.len(), n));
            }
            for (j, &v) in row.iter().enumerate() {
                if i == j && v != 1 {
                    return Err(Error::ExactnessViolation("diagonal entry must be 1"));
                }
                if i > j && v != 0 {
                    return Err(Error::ExactnessViolation(
                        "entry below the diagonal must be 0",
                    ));
                }
                entries[i * n + j] = v;
            }
        }
        let m = MonomialMap { n, entries };
        assert_eq!(m.determinant(), 1);
        Ok(m)
    }

    /// The elementary map `E_ij(sign)`: identity except for `sign` at `(i, j)`.
    /// `sign = +1` is the blowing-up `phi_ij`, `-1` its inverse. Indices are
    /// 0-based.
    ///
    /// A blowing-up `phi_ij` preserves the lexicographic order exactly when
    /// `i < j`; this type represents only the order-preserving calculus
    /// (unit upper-triangular matrices), so `i > j` is rejected.
    pub fn elementary(n: usize, i: usize, j: usize, sign: i64) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
        if i == j {
            return Err(Error::EqualIndices(i));
        }
        if i > j {
            return Err(Error::NotOrderPreserving { i, j });
        }
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        let mut m = MonomialMap::identity(n);
        m.entries[i * n + j] = sign;
        Ok(m)
    }

    /// `phi_ij` repeated `count` times, i.e. `E_ij(count)`.
    pub fn elementary_power(n: usize, i: usize, j: usize, count: i64) -> Result<Self> {
        let mut m = MonomialMap::elementary(n, i, j, 1)?;
        m.entries[i * n + j] = count;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == MonomialMap::identity(self.n)
    }

    fn determinant(&self) -> i64 {
        (0..self.n).map(|i| self.entry(i, i)).product()
    }

    /// Apply `self` first, then `other`.
    pub fn compose(&self, other: &MonomialMap) -> Result<MonomialMap> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for k in i..n {
                let a = self.entry(i, k);
                if a == 0 {
                    continue;
                }
                for j in k..n {
                    let prod = a.checked_mul(other.entry(k, j)).expect("entry overflow");
                    let cell = &mut entries[i * n + j];
                    *cell = cell.checked_add(prod).expect("entry overflow");
                }
            }
        }
        let m = MonomialMap { n, entries };
        assert_eq!(m.determinant(), 1);
        Ok(m)
    }

    /// Exact inverse via back-substitution on the strictly upper part.
    pub fn inverse(&self) -> MonomialMap {
        let n = self.n;
        let mut inv = MonomialMap::identity(n);
        // Solve X * self = I row by row, from the last column backwards.
        for i in 0..n {
            for j in (i + 1)..n {
                // inv[i][j] = -(sum_{k=i..j-1} inv[i][k] * self[k][j])
                let mut acc: i64 = 0;
                for k in i..j {
                    let prod = inv
                        .entry(i, k)
                        .checked_mul(self.entry(k, j))
                        .expect("entry overflow");
                    acc = acc.checked_add(prod).expect("entry overflow");
                }
                inv.entries[i * n + j] = acc.checked_neg().expect("entry overflow");
            }
        }
        inv
    }

    /// True iff the map is a finite composition of order-preserving
    /// blowing-ups, i.e. all entries are nonnegative.
    pub fn is_blowup_composition(&self) -> bool {
        self.entries.iter().all(|&e| e >= 0)
    }

    /// True iff the inverse is a blowup composition, i.e. this map is a
    /// finite composition of order-preserving blowing-downs.
    pub fn is_blowdown_composition(&self) -> bool {
        self.inverse().is_blowup_composition()
    }

    /// Row-vector action `a -> a * B`.
    pub fn apply(&self, a: &ExponentVector) -> ExponentVector {
        assert_eq!(a.dim(), self.n, "dimension mismatch in map application");
        let coords = (0..self.n)
            .map(|j| {
                let mut acc = Rational::zero();
                for i in 0..=j {
                    let e = self.entry(i, j);
                    if e != 0 {
                        acc += a.coord(i) * Rational::from(BigInt::from(e));
                    }
                }
                acc
            })
            .collect();
        ExponentVector::new(coords)
    }

    /// The rows as exponent vectors; for a blow-down composition these are
    /// the generators of its cone (the images of the canonical basis).
    pub fn rows(&self) -> Vec<ExponentVector> {
        (0..self.n)
            .map(|i| {
                ExponentVector::new(
                    (0..self.n)
                        .map(|j| Rational::from(BigInt::from(self.entry(i, j))))
                        .collect(),
                )
            })
            .collect()
    }

    /// Row sums, used for conservative precision recomputation under
    /// `apply_map`.
    pub fn row_sums(&self) -> Vec<Rational> {
        (0..self.n)
            .map(|i| {
                let s: i64 = (0..self.n).map(|j| self.entry(i, j)).sum();
                Rational::from(BigInt::from(s))
            })
            .collect()
    }

    /// Embed an (n-1)-dimensional map into n dimensions, leaving the first
    /// coordinate invariant.
    pub fn lift_fixing_first(&self) -> MonomialMap {
        let n = self.n + 1;
        let mut m = MonomialMap::identity(n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.entries[(i + 1) * n + (j + 1)] = self.entry(i, j);
            }
        }
        m
    }

    pub fn to_row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j)).collect())
            .collect()
    }
}

impl fmt::Debug for MonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rows(")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, " / ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        write!(f, ")")
    }
}

/// Outcome of principalizing a family of lattice sets: one order-preserving
/// composition and one apex per set, with `map(set) ⊆ apex + Z>=0^n`.
#[derive(Clone, Debug)]
pub struct PrincipalizationResult {
    pub map: MonomialMap,
    pub apexes: Vec<ExponentVector>,
}

pub const DEFAULT_PRINCIPALIZATION_CAP: usize = 10_000;

/// Transforms each set by a common composition of order-preserving
/// blowing-ups so that every image has a unique product-order minimum.
///
/// Reduction step: take the first non-principal set, its two lex-smallest
/// minimal elements u, v, their difference delta = u - v, and an index pair
/// i < j where delta has opposite signs with |delta_i| minimal; apply
/// `phi_ij` once and repeat. Terminates empirically; a cap guards the loop.
pub fn principalize(sets: &[LatticeSet], cap: usize) -> Result<PrincipalizationResult> {
    if sets.is_empty() {
        return Err(Error::EmptyLatticeSet);
    }
    let n = sets[0].dim();
    for s in sets {
        if s.dim() != n {
            return Err(Error::DimensionMismatch(s.dim(), n));
        }
        if s.is_empty() {
            return Err(Error::EmptyLatticeSet);
        }
    }

    let mut images: Vec<Vec<ExponentVector>> =
        sets.iter().map(|s| s.iter().cloned().collect()).collect();
    let mut map = MonomialMap::identity(n);

    for _ in 0..cap {
        match first_non_principal(&images) {
            None => {
                let apexes = images
                    .iter()
                    .map(|img| minimal_elements(img).pop().expect("principal set has a minimum"))
                    .collect();
                return Ok(PrincipalizationResult { map, apexes });
            }
            Some(idx) => {
                let mut minima = minimal_elements(&images[idx]);
                minima.sort();
                let u = &minima[0];
                let v = &minima[1];
                let delta = u.sub(v).expect("same dimension");
                let (i, j) = opposite_sign_pair(&delta)
                    .expect("incomparable minimal elements have opposite-sign coordinates");
                let phi = MonomialMap::elementary(n, i, j, 1).expect("valid indices");
                map = map.compose(&phi)?;
                for img in &mut images {
                    for p in img.iter_mut() {
                        *p = phi.apply(p);
                    }
                }
            }
        }
    }
    Err(Error::IterationCapExceeded {
        cap,
        context: "principalize",
    })
}

/// The induction of the multi-set case: principalize the first set, push the
/// rest through, recurse. Kept as a differential-testing oracle for the joint
/// reduction above.
pub fn principalize_sequential(sets: &[LatticeSet], cap: usize) -> Result<PrincipalizationResult> {
    if sets.is_empty() {
        return Err(Error::EmptyLatticeSet);
    }
    let n = sets[0].dim();
    let mut images: Vec<Vec<ExponentVector>> =
        sets.iter().map(|s| s.iter().cloned().collect()).collect();
    let mut map = MonomialMap::identity(n);
    for k in 0..images.len() {
        let set_k = LatticeSet::new(images[k].clone())?;
        let partial = principalize(std::slice::from_ref(&set_k), cap)?;
        map = map.compose(&partial.map)?;
        for img in &mut images {
            for p in img.iter_mut() {
                *p = partial.map.apply(p);
            }
        }
    }
    let apexes = images
        .iter()
        .map(|img| minimal_elements(img).pop().expect("principal set has a minimum"))
        .collect();
    Ok(PrincipalizationResult { map, apexes })
}

fn minimal_elements(points: &[ExponentVector]) -> Vec<ExponentVector> {
    let mut out: Vec<ExponentVector> = Vec::new();
    for p in points {
        if points.iter().any(|u| u != p && u.leq_product(p)) {
            continue;
        }
        if !out.contains(p) {
            out.push(p.clone());
        }
    }
    out
}

fn first_non_principal(images: &[Vec<ExponentVector>]) -> Option<usize> {
    images
        .iter()
        .position(|img| minimal_elements(img).len() != 1)
}

fn opposite_sign_pair(delta: &ExponentVector) -> Option<(usize, usize)> {
    let n = delta.dim();
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs: Option<Rational> = None;
    for i in 0..n {
        if delta.coord(i).is_zero() {
            continue;
        }
        for j in (i + 1)..n {
            if delta.coord(j).is_zero() {
                continue;
            }
            if delta.coord(i).is_positive() == delta.coord(j).is_positive() {
                continue;
            }
            let abs_i = delta.coord(i).abs();
            if best_abs.as_ref().map_or(true, |b| abs_i < *b) {
                best_abs = Some(abs_i);
                best = Some((i, j));
            }
        }
    }
    best
}

/// Checks the principalization postcondition directly with the product order.
pub fn check_principalization(
    sets: &[LatticeSet],
    result: &PrincipalizationResult,
) -> Result<bool> {
    if !result.map.is_blowup_composition() {
        return Ok(false);
    }
    if result.apexes.len() != sets.len() {
        return Ok(false);
    }
    for (set, apex) in sets.iter().zip(&result.apexes) {
        let image: Vec<ExponentVector> = set.iter().map(|p| result.map.apply(p)).collect();
        if !image.contains(apex) {
            return Ok(false);
        }
        for p in &image {
            if !apex.leq_product(p) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(coords: &[i64]) -> ExponentVector {
        ExponentVector::from_ints(coords)
    }

    #[test]
    fn elementary_action() {
        let up = MonomialMap::elementary(2, 0, 1, 1).unwrap();
        assert_eq!(up.apply(&ev(&[3, 4])), ev(&[3, 7]));
        let down = MonomialMap::elementary(2, 0, 1, -1).unwrap();
        assert_eq!(down.apply(&ev(&[3, 7])), ev(&[3, 4]));
    }

    #[test]
    fn elementary_rejects_bad_indices() {
        assert!(MonomialMap::elementary(2, 1, 1, 1).is_err());
        assert!(MonomialMap::elementary(2, 0, 2, 1).is_err());
    }

    #[test]
    fn lower_index_first_is_order_preserving_criterion() {
        // phi_21 (i > j) does not preserve the lexicographic order and is
        // rejected; its matrix would be lower-triangular.
        assert!(matches!(
            MonomialMap::elementary(2, 1, 0, 1),
            Err(Error::NotOrderPreserving { i: 1, j: 0 })
        ));
        assert!(MonomialMap::from_rows(&[&[1, 0], &[1, 1]]).is_err());
    }

    #[test]
    fn compose_matches_printed_product() {
        let a = MonomialMap::from_rows(&[&[1, -6, -8], &[0, 1, -5], &[0, 0, 1]]).unwrap();
        let b = MonomialMap::from_rows(&[&[1, -3, -6], &[0, 1, -7], &[0, 0, 1]]).unwrap();
        let q = MonomialMap::from_rows(&[&[1, -9, 28], &[0, 1, -12], &[0, 0, 1]]).unwrap();
        assert_eq!(a.compose(&b).unwrap(), q);
        assert!(!q.is_blowup_composition());
        let id = MonomialMap::identity(3);
        assert_eq!(a.compose(&id).unwrap(), a);
    }

    #[test]
    fn inverse_round_trip() {
        let q = MonomialMap::from_rows(&[&[1, -4, 19], &[0, 1, -14], &[0, 0, 1]]).unwrap();
        assert!(q.compose(&q.inverse()).unwrap().is_identity());
        let e = MonomialMap::elementary(3, 0, 1, 1).unwrap();
        assert_eq!(e.inverse(), MonomialMap::elementary(3, 0, 1, -1).unwrap());
        assert_eq!(MonomialMap::identity(4).inverse(), MonomialMap::identity(4));
    }

    #[test]
    fn blowup_composition_detection() {
        assert!(MonomialMap::identity(3).is_blowup_composition());
        let m = MonomialMap::from_rows(&[&[1, 2, 0], &[0, 1, 3], &[0, 0, 1]]).unwrap();
        assert!(m.is_blowup_composition());
        let q = MonomialMap::from_rows(&[&[1, -9, 28], &[0, 1, -12], &[0, 0, 1]]).unwrap();
        assert!(!q.is_blowup_composition());
        assert!(q.is_blowdown_composition());
    }

    #[test]
    fn principalize_singleton_is_identity() {
        let s = LatticeSet::from_ints(&[&[0, 3]]).unwrap();
        let r = principalize(&[s.clone()], DEFAULT_PRINCIPALIZATION_CAP).unwrap();
        assert!(r.map.is_identity());
        assert_eq!(r.apexes, vec![ev(&[0, 3])]);
        assert!(check_principalization(&[s], &r).unwrap());
    }

    #[test]
    fn principalize_axis_pair() {
        let s = LatticeSet::from_ints(&[&[1, 0], &[0, 1]]).unwrap();
        let r = principalize(&[s.clone()], DEFAULT_PRINCIPALIZATION_CAP).unwrap();
        assert_eq!(r.map, MonomialMap::elementary(2, 0, 1, 1).unwrap());
        assert_eq!(r.apexes, vec![ev(&[0, 1])]);
        let image: Vec<_> = s.iter().map(|p| r.map.apply(p)).collect();
        assert!(image.contains(&ev(&[1, 1])));
        assert!(image.contains(&ev(&[0, 1])));
    }

    #[test]
    fn principalize_two_sets_jointly() {
        let s1 = LatticeSet::from_ints(&[&[2, 0], &[0, 3]]).unwrap();
        let s2 = LatticeSet::from_ints(&[&[1, 1]]).unwrap();
        let sets = vec![s1, s2];
        let r = principalize(&sets, DEFAULT_PRINCIPALIZATION_CAP).unwrap();
        assert!(check_principalization(&sets, &r).unwrap());
        let r_seq = principalize_sequential(&sets, DEFAULT_PRINCIPALIZATION_CAP).unwrap();
        assert!(check_principalization(&sets, &r_seq).unwrap());
    }
}
