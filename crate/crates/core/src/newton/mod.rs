//! The multivariate Newton procedure.
//!
//! `solve` takes a monic equation in `z` whose coefficients are power series
//! in `x1..xn` (nonnegative support) and returns its Puiseux-series roots:
//! for each root a truncated series in prepared coordinates, the blow-down
//! certificate relating prepared to original coordinates, and a verified
//! residual floor.
//!
//! The procedure singles out `x1`, walks the Newton polygon of the equation
//! in `(x1, z)`, and solves each characteristic equation by recursion on the
//! number of variables; blowups applied by inner recursion levels are lifted
//! back, leaving the first coordinate fixed.

mod diagram;
mod engine;
mod prepare;
mod regular;

pub use diagram::{admissible_segments, e1_diagram, AdmissibleSegment, Diagram1, SegmentKind};
pub use engine::step_substitute;
pub use prepare::{characteristic_equation, prepare_segment, CharacteristicEquation, PreparedSegment};
pub use regular::{detect_regular, forced_step, regular_normalize_hard, regular_setup, ForcedOutcome, ForcedStep, HardNormalization, RegularSetup};

use crate::blowup::{MonomialMap, DEFAULT_PRINCIPALIZATION_CAP};
use crate::error::{Error, Result};
use crate::lattice::ExponentVector;
use crate::rational::{rint, DegreeBound, Rational};
use crate::series::PuiseuxSeries;
use crate::zpoly::ZPolynomial;
use num_traits::Signed;

/// Solver configuration.
#[derive(Clone, Debug)]
pub struct SolveConfig {
    /// Total-degree precision bound, measured in prepared coordinates.
    pub precision: Rational,
    /// Cap on Newton steps per branch.
    pub max_steps: usize,
    /// Offer the vertical segment at the first step (needed to reach roots
    /// of `x1`-order zero).
    pub first_vertical: bool,
    /// Iteration cap handed to principalization and cone reduction.
    pub principalization_cap: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            precision: rint(8),
            max_steps: 64,
            first_vertical: true,
            principalization_cap: DEFAULT_PRINCIPALIZATION_CAP,
        }
    }
}

impl SolveConfig {
    pub fn with_precision(precision: Rational) -> Self {
        SolveConfig {
            precision,
            ..SolveConfig::default()
        }
    }
}

/// One event in the trace of a branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchEvent {
    /// The vertical first segment was chosen.
    Vertical,
    /// A sloped segment was chosen.
    Segment { gamma: Rational, beta: Rational },
    /// Preparation blowups applied to the equation (with the ordering
    /// exponent when the apexes needed it).
    Prepared { map: MonomialMap, e: Option<i64> },
    /// Blowups lifted from the recursive solve of a characteristic equation.
    LiftedBlowups { map: MonomialMap },
    /// A characteristic root chosen for this branch.
    CharacteristicRoot { alpha: String },
    /// Normalization entering the regular iteration.
    RegularNormalized {
        map: MonomialMap,
        monomial: ExponentVector,
    },
    /// Forced two-point steps and their gamma values.
    Regular { gammas: Vec<Rational> },
    /// The branch ended at an exact root.
    ExactRoot,
    /// The branch reached the precision budget.
    PrecisionReached,
    /// Truncated coefficient data ran out below the requested degree; the
    /// solver retries such branches with a deeper working budget.
    DataExhausted,
}

/// A computed root.
#[derive(Clone, Debug)]
pub struct PuiseuxRoot {
    /// Truncated root series in prepared coordinates (support in the first
    /// quadrant).
    pub series: PuiseuxSeries,
    /// Blow-down composition carrying prepared exponents back to the
    /// original coordinates; its rows generate the S-cone holding the
    /// external support.
    pub certificate: MonomialMap,
    /// Verified minimal total degree of the residual of the prepared series
    /// in the mapped equation.
    pub residual_floor: DegreeBound,
    /// Common denominator of the root's exponents.
    pub denominator: u64,
    /// The segment choices, characteristic roots and blowups of the branch.
    pub branch_log: Vec<BranchEvent>,
}

impl PuiseuxRoot {
    /// The root in the original coordinates.
    pub fn external_series(&self) -> PuiseuxSeries {
        self.series.apply_map(&self.certificate)
    }

    /// The map accumulated by the branch (inverse of the certificate).
    pub fn accumulated_map(&self) -> MonomialMap {
        self.certificate.inverse()
    }
}

/// Solve the equation, exploring branches in parallel when the crate is
/// built with the `parallel` feature (the default).
pub fn solve(poly: &ZPolynomial, cfg: &SolveConfig) -> Result<Vec<PuiseuxRoot>> {
    solve_with(poly, cfg, cfg!(feature = "parallel"))
}

/// Solve the equation on the current thread only. Output is bit-identical
/// to `solve`.
pub fn solve_sequential(poly: &ZPolynomial, cfg: &SolveConfig) -> Result<Vec<PuiseuxRoot>> {
    solve_with(poly, cfg, false)
}

fn solve_with(poly: &ZPolynomial, cfg: &SolveConfig, parallel: bool) -> Result<Vec<PuiseuxRoot>> {
    validate_input(poly, cfg)?;

    // A branch can run out of truncated data below the requested degree when
    // a characteristic root lies entirely beyond the budget while later
    // slices of the same root do not (deep blow-downs skew total degrees
    // between slices). Retrying with a deeper working precision recovers
    // those terms; outputs are truncated back to the requested bound.
    let mut raw = {
        let ctx = engine::Ctx { cfg, parallel };
        engine::solve_engine(poly, &ctx)?
    };
    let mut factor = rint(1);
    while raw.iter().any(|r| r.budget_limited) && factor < rint(4) {
        factor *= rint(2);
        let deeper = SolveConfig {
            precision: cfg.precision.clone() * &factor,
            ..cfg.clone()
        };
        let ctx = engine::Ctx {
            cfg: &deeper,
            parallel,
        };
        match engine::solve_engine(poly, &ctx) {
            Ok(next) => raw = next,
            // a deeper budget can hit step caps; keep the shallower answer
            Err(_) => break,
        }
    }

    let bound = DegreeBound::Finite(cfg.precision.clone());
    let mut roots = Vec::with_capacity(raw.len());
    for r in raw {
        let series = if r.series.precision().is_unbounded() {
            r.series
        } else {
            r.series.truncate(&bound)
        };
        let certificate = r.accumulated.inverse();
        let floor = verify(poly, &series, &r.accumulated, &cfg.precision)?;
        let denominator = series.denominator();
        roots.push(PuiseuxRoot {
            series,
            certificate,
            residual_floor: floor,
            denominator,
            branch_log: r.log,
        });
    }
    roots.sort_by(|a, b| {
        a.series
            .canonical_cmp(&b.series)
            .then_with(|| a.certificate.to_row_vecs().cmp(&b.certificate.to_row_vecs()))
    });
    Ok(roots)
}

fn validate_input(poly: &ZPolynomial, cfg: &SolveConfig) -> Result<()> {
    if !cfg.precision.is_positive() {
        return Err(Error::NonPositivePrecision);
    }
    if cfg.max_steps == 0 {
        return Err(Error::MaxStepsExceeded(0));
    }
    if poly.degree() < 1 || !poly.is_monic() {
        return Err(Error::NotMonic);
    }
    if poly.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    for c in poly.coeffs() {
        if let Some(w) = c.negative_support_witness() {
            return Err(Error::NegativeSupport {
                witness: w.coords_for_error(),
            });
        }
    }
    Ok(())
}

/// The nonzero roots of a characteristic equation, each paired with the
/// order-preserving blowup composition applied to its variables while
/// solving it (to be lifted into the caller's coordinates, leaving the
/// first coordinate fixed). Constants are delegated to the univariate root
/// oracle; anything larger recurses into the solver.
pub fn solve_characteristic(
    char_eq: &CharacteristicEquation,
    cfg: &SolveConfig,
) -> Result<Vec<(PuiseuxSeries, MonomialMap)>> {
    engine::characteristic_roots(char_eq, cfg, false)
}

/// Residual oracle: push the original equation through the accumulated
/// blowups, substitute the prepared root, and measure the least total degree
/// of what is left. Fails if the floor is below the requested threshold.
pub fn verify(
    original: &ZPolynomial,
    prepared_root: &PuiseuxSeries,
    accumulated: &MonomialMap,
    threshold: &Rational,
) -> Result<DegreeBound> {
    let mapped = original.apply_map(accumulated);
    let residual = mapped.substitute_root(prepared_root)?;
    let floor = match residual.min_total_degree() {
        Some(deg) => DegreeBound::Finite(deg),
        None => residual.precision().clone(),
    };
    if !floor.meets(threshold) {
        return Err(Error::ExactnessViolation(
            "residual floor below the requested precision",
        ));
    }
    Ok(floor)
}
