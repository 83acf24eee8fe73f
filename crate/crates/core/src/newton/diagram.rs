//! The `(x1-exponent, z-degree)` diagram of an equation and its admissible
//! segments: the edges of the Newton polygon with positive gamma, plus the
//! vertical segment available at the first step.

use crate::rational::Rational;
use crate::zpoly::ZPolynomial;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// Projection of every monomial of the equation onto `(x1-exponent, z-degree)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram1 {
    /// All plotted points `(nu, b)`.
    pub points: BTreeSet<(Rational, usize)>,
    /// Degree in z of the underlying polynomial.
    pub z_degree: usize,
}

/// A supporting line `u + gamma * v = beta` of the diagram that meets it in
/// at least two points, or the vertical axis at the first step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSegment {
    pub kind: SegmentKind,
    /// Minimum of the linear form on the diagram (0 for vertical segments).
    pub beta: Rational,
    /// Diagram points attaining the minimum, as `(x1-exponent, z-degree)`.
    pub points: Vec<(Rational, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentKind {
    Sloped { gamma: Rational },
    Vertical,
}

impl AdmissibleSegment {
    pub fn gamma(&self) -> Rational {
        match &self.kind {
            SegmentKind::Sloped { gamma } => gamma.clone(),
            SegmentKind::Vertical => Rational::zero(),
        }
    }

    pub fn is_vertical(&self) -> bool {
        matches!(self.kind, SegmentKind::Vertical)
    }

    /// z-degrees of the on-segment points, descending.
    pub fn z_degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.points.iter().map(|(_, b)| *b).collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out.dedup();
        out
    }

    /// Number of nonzero characteristic roots counted with multiplicity:
    /// the z-span of the segment.
    pub fn root_span(&self) -> usize {
        let degs = self.z_degrees();
        degs.first().copied().unwrap_or(0) - degs.last().copied().unwrap_or(0)
    }
}

/// Plot every monomial of every coefficient.
pub fn e1_diagram(poly: &ZPolynomial) -> Diagram1 {
    let mut points = BTreeSet::new();
    for (b, coeff) in poly.coeffs().iter().enumerate() {
        for (e, _) in coeff.terms() {
            points.insert((e.coord(0).clone(), b));
        }
    }
    Diagram1 {
        points,
        z_degree: poly.degree(),
    }
}

impl Diagram1 {
    /// Least x1-exponent plotted for the given z-degree.
    fn min_exponent(&self, b: usize) -> Option<Rational> {
        self.points
            .iter()
            .filter(|(_, deg)| *deg == b)
            .map(|(nu, _)| nu.clone())
            .min()
    }

    pub fn has_vertical_point_below_top(&self) -> bool {
        self.points
            .iter()
            .any(|(nu, b)| nu.is_zero() && *b != self.z_degree)
    }
}

/// All admissible segments: the positive-gamma edges of the lower hull in
/// order of decreasing gamma, then (when requested and available) the
/// vertical segment.
pub fn admissible_segments(dg: &Diagram1, allow_vertical: bool) -> Vec<AdmissibleSegment> {
    let mut segments = Vec::new();

    // Per-degree minima, ordered by z-degree.
    let mut mins: Vec<(usize, Rational)> = Vec::new();
    for b in 0..=dg.z_degree {
        if let Some(nu) = dg.min_exponent(b) {
            mins.push((b, nu));
        }
    }

    // Lower convex hull of (b, nu) with b on the horizontal axis.
    let mut hull: Vec<(usize, Rational)> = Vec::new();
    for p in &mins {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let m = &hull[hull.len() - 1];
            // Drop m unless it turns strictly upward (convex from below).
            let lhs = (&m.1 - &a.1) * Rational::from_integer((p.0 as i64 - a.0 as i64).into());
            let rhs = (&p.1 - &a.1) * Rational::from_integer((m.0 as i64 - a.0 as i64).into());
            if lhs < rhs {
                break;
            }
            hull.pop();
        }
        hull.push(p.clone());
    }

    for w in hull.windows(2) {
        let (b1, nu1) = &w[0];
        let (b2, nu2) = &w[1];
        let gamma = (nu1 - nu2) / Rational::from_integer(((b2 - b1) as i64).into());
        if !gamma.is_positive() {
            continue;
        }
        let beta = nu1 + &gamma * Rational::from_integer((*b1 as i64).into());
        let points: Vec<(Rational, usize)> = mins
            .iter()
            .filter(|(b, nu)| nu + &gamma * Rational::from_integer((*b as i64).into()) == beta)
            .map(|(b, nu)| (nu.clone(), *b))
            .collect();
        debug_assert!(points.len() >= 2);
        segments.push(AdmissibleSegment {
            kind: SegmentKind::Sloped { gamma },
            beta,
            points,
        });
    }
    // Hull edges come out left to right, i.e. gamma decreasing.
    if allow_vertical && dg.has_vertical_point_below_top() {
        let points: Vec<(Rational, usize)> = dg
            .points
            .iter()
            .filter(|(nu, _)| nu.is_zero())
            .map(|(nu, b)| (nu.clone(), *b))
            .collect();
        segments.push(AdmissibleSegment {
            kind: SegmentKind::Vertical,
            beta: Rational::zero(),
            points,
        });
    }
    segments
}
