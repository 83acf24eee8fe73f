//! The branch engine: explores every admissible segment and characteristic
//! root, accumulating order-preserving blowups per branch, until every root
//! is either exact or known below the requested precision.
//!
//! Branches share nothing mutable; with the `parallel` feature they are
//! explored with rayon and merged in deterministic order, so parallel and
//! sequential runs produce identical output.

use super::diagram::{admissible_segments, e1_diagram, AdmissibleSegment};
use super::prepare::{characteristic_equation, prepare_segment, CharacteristicEquation};
use super::regular::{detect_regular, forced_step, regular_normalize_hard, regular_setup, ForcedOutcome};
use super::{BranchEvent, SolveConfig};
use crate::blowup::MonomialMap;
use crate::error::{Error, Result};
use crate::field::univariate_roots;
use crate::lattice::ExponentVector;
use crate::rational::{DegreeBound, Rational};
use crate::series::PuiseuxSeries;
use crate::zpoly::ZPolynomial;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A root as the engine produces it: prepared series plus the blowups that
/// were applied along its branch.
pub(super) struct RawRoot {
    pub series: PuiseuxSeries,
    pub accumulated: MonomialMap,
    pub log: Vec<BranchEvent>,
    /// The branch stopped because truncated coefficient data ran out before
    /// the requested degree was reached; a deeper working budget may
    /// complete it.
    pub budget_limited: bool,
}

#[derive(Clone)]
struct Node {
    poly: ZPolynomial,
    accumulated: MonomialMap,
    prefix: PuiseuxSeries,
    /// Frame monomial: a root of the mapped input equation is
    /// `prefix + x^offset * (root of poly)`. Starts as x1^0 and picks up
    /// x1^gamma per step; maps applied to the equation act on it too, since
    /// the substitution x1 -> x1 xj moves the frame monomial as well.
    offset: ExponentVector,
    depth: usize,
    first: bool,
    log: Vec<BranchEvent>,
}

impl Node {
    fn offset_degree(&self) -> Rational {
        self.offset.total_degree()
    }

    fn apply_map_to_state(&mut self, map: &MonomialMap) -> Result<()> {
        self.poly = self.poly.apply_map(map);
        self.prefix = self.prefix.apply_map(map);
        self.offset = map.apply(&self.offset);
        self.accumulated = self.accumulated.compose(map)?;
        Ok(())
    }
}

pub(super) struct Ctx<'a> {
    pub cfg: &'a SolveConfig,
    pub parallel: bool,
}

/// Substitute `z = x1^gamma * (alpha + z')` and divide by `x1^beta`.
///
/// `alpha` is a series in all `n` variables with `x1`-exponent zero. Every
/// term of the result has nonnegative `x1`-exponent because `beta` is the
/// minimum of the admissible form on the diagram; a violation is an internal
/// bug and is reported as such.
pub fn step_substitute(
    poly: &ZPolynomial,
    gamma: &Rational,
    alpha: &PuiseuxSeries,
    beta: &Rational,
) -> Result<ZPolynomial> {
    let n = poly.vars();
    let m = poly.degree();
    // powers of alpha up to m
    let mut alpha_pows = Vec::with_capacity(m + 1);
    alpha_pows.push(PuiseuxSeries::one(n));
    for k in 1..=m {
        let next = alpha_pows[k - 1].mul(alpha)?;
        alpha_pows.push(next);
    }
    let mut new_coeffs = vec![PuiseuxSeries::zero(n); m + 1];
    for i in 0..=m {
        let ci = poly.coeff(i);
        if ci.is_zero() {
            continue;
        }
        // x1^{gamma * i} * c_i
        let mut shift_coords = vec![Rational::zero(); n];
        shift_coords[0] = gamma * Rational::from_integer(BigInt::from(i as i64));
        let shifted = ci.mul_monomial(&ExponentVector::new(shift_coords), &Rational::one());
        let mut binom = BigInt::one();
        for j in 0..=i {
            // C(i, j) incrementally: C(i,0) = 1, C(i,j) = C(i,j-1)*(i-j+1)/j
            if j > 0 {
                binom = &binom * BigInt::from((i - j + 1) as i64) / BigInt::from(j as i64);
            }
            let term = shifted
                .mul(&alpha_pows[i - j])?
                .mul_scalar(&Rational::from_integer(binom.clone()));
            new_coeffs[j] = new_coeffs[j].add(&term)?;
        }
    }
    ZPolynomial::new(new_coeffs)?.div_x1_power(beta)
}

/// `x1^gamma` as an exponent vector.
fn x1_power(n: usize, gamma: &Rational) -> ExponentVector {
    let mut coords = vec![Rational::zero(); n];
    coords[0] = gamma.clone();
    ExponentVector::new(coords)
}

/// Run every branch closure, in parallel when enabled, and merge results in
/// branch order so output is independent of the execution mode.
fn run_branches<B, F>(branches: Vec<B>, f: F, parallel: bool) -> Result<Vec<RawRoot>>
where
    B: Send,
    F: Fn(B) -> Result<Vec<RawRoot>> + Sync,
    RawRoot: Send,
{
    let results: Vec<Result<Vec<RawRoot>>> = {
        #[cfg(feature = "parallel")]
        {
            if parallel {
                use rayon::prelude::*;
                branches.into_par_iter().map(&f).collect()
            } else {
                branches.into_iter().map(&f).collect()
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = parallel;
            branches.into_iter().map(&f).collect()
        }
    };
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// The nonzero roots of a characteristic equation, each with the blowup
/// composition its branch applied while solving it. Constants go to the
/// univariate oracle; an equation over one or more variables recurses into
/// the solver, and the blowups of each recursive branch are returned for
/// lifting.
pub(super) fn characteristic_roots(
    char_eq: &CharacteristicEquation,
    cfg: &SolveConfig,
    parallel: bool,
) -> Result<Vec<(PuiseuxSeries, MonomialMap)>> {
    match char_eq {
        CharacteristicEquation::Constants(p) => {
            let mut out = Vec::new();
            for (root, mult) in univariate_roots(p)? {
                if root.is_zero() {
                    continue;
                }
                if mult > 1 {
                    return Err(Error::MultipleRoot { multiplicity: mult });
                }
                out.push((PuiseuxSeries::constant(0, root), MonomialMap::identity(0)));
            }
            Ok(out)
        }
        CharacteristicEquation::Series(c) => {
            let ctx = Ctx { cfg, parallel };
            Ok(solve_engine(c, &ctx)?
                .into_iter()
                .map(|r| (r.series, r.accumulated))
                .collect())
        }
        CharacteristicEquation::Exhausted => Ok(Vec::new()),
    }
}

pub(super) fn solve_engine(
    poly: &ZPolynomial,
    ctx: &Ctx<'_>,
) -> Result<Vec<RawRoot>> {
    let node = Node {
        poly: poly.clone(),
        accumulated: MonomialMap::identity(poly.vars()),
        prefix: PuiseuxSeries::zero(poly.vars()),
        offset: ExponentVector::zero(poly.vars()),
        depth: 0,
        first: true,
        log: Vec::new(),
    };
    explore(node, ctx)
}

/// An exact root keeps its full series; anything else claims only the
/// requested bound.
fn emit(node: &Node, exact: bool, bound: &Rational) -> RawRoot {
    let series = if exact {
        node.prefix.clone().with_precision(DegreeBound::Unbounded)
    } else {
        node.prefix.truncate(&DegreeBound::Finite(bound.clone()))
    };
    RawRoot {
        series,
        accumulated: node.accumulated.clone(),
        log: node.log.clone(),
        budget_limited: false,
    }
}

/// Emission for a branch whose data was cut off by truncation below the
/// budget: everything extracted so far is reported, and the root is flagged
/// so the driver can retry with a deeper working precision.
fn emit_exhausted(node: &Node, cfg: &SolveConfig) -> RawRoot {
    let mut root = emit(node, false, &cfg.precision);
    root.log.push(BranchEvent::DataExhausted);
    root.budget_limited = node.offset_degree() < cfg.precision;
    root
}

fn explore(node: Node, ctx: &Ctx<'_>) -> Result<Vec<RawRoot>> {
    let cfg = ctx.cfg;
    if node.depth > cfg.max_steps {
        return Err(Error::MaxStepsExceeded(cfg.max_steps));
    }

    // Every node below the first step carries exactly one root of positive
    // x1-order: its branch came from a simple characteristic root. The
    // first-step node fans out over segments instead.
    let wants_positive_order = node.depth > 0;

    // z = 0 as a root of the current equation: the prefix is a root. Several
    // leading coefficients that are *exactly* zero mean a genuinely multiple
    // root; zero-as-truncated coefficients mean the branch data lies beyond
    // the precision budget.
    let z_ord = node.poly.z_order();
    if z_ord >= 1 {
        let all_exact = (0..z_ord).all(|b| node.poly.coeff(b).precision().is_unbounded());
        if z_ord >= 2 && all_exact {
            return Err(Error::MultipleRoot {
                multiplicity: z_ord,
            });
        }
        if z_ord == 1 && all_exact {
            let mut root = emit(&node, true, &cfg.precision);
            root.log.push(BranchEvent::ExactRoot);
            return Ok(vec![root]);
        }
        // zero only as far as the truncated data can see
        return Ok(vec![emit_exhausted(&node, cfg)]);
    }

    // Monic linear equation: the root is exactly -w_1 in the current frame.
    if node.poly.degree() == 1 && node.poly.coeff(1).is_one() {
        let order = node
            .poly
            .coeff(0)
            .x1_order()
            .expect("nonzero constant coefficient");
        if wants_positive_order && !order.is_positive() {
            // The visible root has order zero, so the branch's own root has
            // been truncated away entirely; report what is known.
            return Ok(vec![emit_exhausted(&node, cfg)]);
        }
        let tail = node
            .poly
            .coeff(0)
            .negate()
            .mul_monomial(&node.offset, &Rational::one());
        let exact = node.poly.coeff(0).precision().is_unbounded()
            && node.poly.coeff(1).precision().is_unbounded()
            && node.prefix.precision().is_unbounded();
        let mut done = node.clone();
        done.prefix = node.prefix.add(&tail)?;
        let mut root = emit(&done, exact, &cfg.precision);
        root.log.push(BranchEvent::ExactRoot);
        return Ok(vec![root]);
    }

    // Precision reached: every further term has total degree >= T.
    if wants_positive_order && node.offset_degree() >= cfg.precision {
        let mut root = emit(&node, false, &cfg.precision);
        root.log.push(BranchEvent::PrecisionReached);
        return Ok(vec![root]);
    }

    // Regular shape: the continuation is forced and needs no further
    // segment analysis.
    if detect_regular(&node.poly) {
        return run_regular(node, ctx);
    }

    let diagram = e1_diagram(&node.poly);
    let allow_vertical = node.first && cfg.first_vertical;
    let segments = admissible_segments(&diagram, allow_vertical);

    if segments.is_empty() && wants_positive_order {
        // Truncation can hide the whole polygon of a followed branch.
        return Ok(vec![emit_exhausted(&node, cfg)]);
    }

    let branches: Vec<(Node, AdmissibleSegment)> = segments
        .into_iter()
        .map(|seg| (node.clone(), seg))
        .collect();
    run_branches(
        branches,
        |(node, seg)| process_segment(node, seg, ctx),
        ctx.parallel,
    )
}

fn process_segment(
    node: Node,
    segment: AdmissibleSegment,
    ctx: &Ctx<'_>,
) -> Result<Vec<RawRoot>> {
    let cfg = ctx.cfg;
    let gamma = segment.gamma();

    // A step whose contribution already lies at or beyond the precision
    // bound: the segment's roots share the current prefix below T.
    if !segment.is_vertical() && node.offset_degree() + &gamma >= cfg.precision {
        let copies = segment.root_span();
        let mut out = Vec::new();
        for _ in 0..copies {
            let mut root = emit(&node, false, &cfg.precision);
            root.log.push(BranchEvent::PrecisionReached);
            out.push(root);
        }
        return Ok(out);
    }

    let mut node = node;
    node.log.push(if segment.is_vertical() {
        BranchEvent::Vertical
    } else {
        BranchEvent::Segment {
            gamma: gamma.clone(),
            beta: segment.beta.clone(),
        }
    });

    // Preparation (sloped segments only).
    if !segment.is_vertical() {
        let prep = prepare_segment(&node.poly, &segment, cfg.principalization_cap)?;
        if !prep.map.is_identity() {
            node.prefix = node.prefix.apply_map(&prep.map);
            node.offset = prep.map.apply(&node.offset);
            node.accumulated = node.accumulated.compose(&prep.map)?;
            node.log.push(BranchEvent::Prepared {
                map: prep.map.clone(),
                e: prep.e,
            });
        }
        node.poly = prep.poly;
    }

    // Preparation blowups can inflate the frame monomial past the budget.
    if !segment.is_vertical() && node.offset_degree() + &gamma >= cfg.precision {
        let copies = segment.root_span();
        let mut out = Vec::new();
        for _ in 0..copies {
            let mut root = emit(&node, false, &cfg.precision);
            root.log.push(BranchEvent::PrecisionReached);
            out.push(root);
        }
        return Ok(out);
    }

    let t_child = cfg.precision.clone() - node.offset_degree() - &gamma;
    debug_assert!(t_child.is_positive());
    let working = DegreeBound::Finite(t_child.clone());
    let char_eq = characteristic_equation(&node.poly, &segment, &working)?;

    if matches!(char_eq, CharacteristicEquation::Exhausted) {
        let copies = segment.root_span();
        return Ok((0..copies).map(|_| emit_exhausted(&node, cfg)).collect());
    }
    let child_cfg = SolveConfig {
        precision: t_child,
        ..cfg.clone()
    };
    let alphas = characteristic_roots(&char_eq, &child_cfg, ctx.parallel)?;

    let branches: Vec<(Node, PuiseuxSeries, MonomialMap)> = alphas
        .into_iter()
        .map(|(alpha, lift)| (node.clone(), alpha, lift))
        .collect();
    let gamma_ref = gamma;
    run_branches(
        branches,
        move |(mut node, alpha, lift)| {
            // Blowups applied while solving the characteristic equation act
            // on x2..xn; lift them to n variables, fixing x1.
            let lifted = lift.lift_fixing_first();
            if !lifted.is_identity() {
                node.apply_map_to_state(&lifted)?;
                node.log.push(BranchEvent::LiftedBlowups {
                    map: lifted.clone(),
                });
            }
            let alpha_n = alpha.lift_prepend_zero();
            node.log.push(BranchEvent::CharacteristicRoot {
                alpha: format!("{}", alpha_n),
            });
            let next_poly =
                step_substitute(&node.poly, &gamma_ref, &alpha_n, &segment.beta)?;
            node.offset = node
                .offset
                .add(&x1_power(node.offset.dim(), &gamma_ref))
                .expect("same dimension");
            let contribution = alpha_n.mul_monomial(&node.offset, &Rational::one());
            node.prefix = node.prefix.add(&contribution)?;
            node.poly = next_poly;
            node.depth += 1;
            node.first = false;
            explore(node, ctx)
        },
        ctx.parallel,
    )
}

fn run_regular(node: Node, ctx: &Ctx<'_>) -> Result<Vec<RawRoot>> {
    let cfg = ctx.cfg;
    let mut node = node;
    let setup = regular_setup(&node.poly, cfg.principalization_cap)?;
    node.poly = setup.poly;
    if !setup.map.is_identity() {
        node.prefix = node.prefix.apply_map(&setup.map);
        node.offset = setup.map.apply(&node.offset);
        node.accumulated = node.accumulated.compose(&setup.map)?;
        node.log.push(BranchEvent::RegularNormalized {
            map: setup.map.clone(),
            monomial: ExponentVector::zero(node.offset.dim()),
        });
    }

    let mut gammas = Vec::new();
    let mut exact = false;
    let mut steps = 0usize;
    let mut hard_normalized = false;
    while node.offset_degree() < cfg.precision {
        if steps > cfg.max_steps {
            return Err(Error::MaxStepsExceeded(cfg.max_steps));
        }
        let remaining = cfg.precision.clone() - node.offset_degree();
        let target = DegreeBound::Finite(remaining);
        match forced_step(&node.poly, &target)? {
            ForcedOutcome::Root => {
                exact = node.poly.coeff(0).precision().is_unbounded();
                break;
            }
            ForcedOutcome::NeedsNormalization => {
                // Dividing by the monomial-times-unit left the quadrant:
                // apply the full regular-shape normalization, after
                // which the reduced linear coefficient is a unit.
                if hard_normalized {
                    return Err(Error::ExactnessViolation(
                        "regular step left the quadrant after normalization",
                    ));
                }
                let hard = regular_normalize_hard(&node.poly)?;
                node.poly = hard.poly;
                node.prefix = node.prefix.apply_map(&hard.map);
                node.offset = hard.map.apply(&node.offset);
                node.accumulated = node.accumulated.compose(&hard.map)?;
                node.log.push(BranchEvent::RegularNormalized {
                    map: hard.map.clone(),
                    monomial: hard.monomial.clone(),
                });
                hard_normalized = true;
            }
            ForcedOutcome::Step(step) => {
                if step.gamma.is_zero() {
                    // a truncated-empty alpha left the order stuck; the data
                    // below the budget is used up
                    return Ok(vec![emit_exhausted(&node, cfg)]);
                }
                node.offset = node
                    .offset
                    .add(&x1_power(node.offset.dim(), &step.gamma))
                    .expect("same dimension");
                if node.offset_degree() < cfg.precision {
                    node.prefix = node
                        .prefix
                        .add(&step.alpha.mul_monomial(&node.offset, &Rational::one()))?;
                }
                gammas.push(step.gamma.clone());
                node.poly = step.poly;
                steps += 1;
            }
        }
    }
    node.log.push(BranchEvent::Regular { gammas });
    if exact {
        node.log.push(BranchEvent::ExactRoot);
    } else {
        node.log.push(BranchEvent::PrecisionReached);
    }
    Ok(vec![emit(&node, exact, &cfg.precision)])
}
