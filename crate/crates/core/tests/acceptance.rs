//! Acceptance suite: exact reproduction of the worked algebraic identities
//! plus the property suites, one criterion per test, each printing a
//! PASS/FAIL line. Run with
//! `cargo test -p puiseux-core --test acceptance -- --nocapture`.

use puiseux_core::blowup::{check_principalization, principalize};
use puiseux_core::closure::{minimal_polynomial, solve_over_cone_ring, ConeRingElement};
use puiseux_core::lattice::{ExponentVector, LatticeSet};
use puiseux_core::newton::{solve, BranchEvent, PuiseuxRoot, SolveConfig};
use puiseux_core::plant::{
    planted_instance, random_blowdown_word, random_blowup_word, random_quadrant_series,
    PlantParams,
};
use puiseux_core::rational::{rat, rint, DegreeBound, Rational};
use puiseux_core::series::PuiseuxSeries;
use puiseux_core::{is_integral_over_formal, parse_zpoly, Cone, MonomialMap};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use std::time::Instant;

fn report(criterion: usize, description: &str, result: Result<(), String>) {
    match &result {
        Ok(()) => println!("criterion {:2}: PASS - {}", criterion, description),
        Err(m) => println!("criterion {:2}: FAIL - {} ({})", criterion, description, m),
    }
    if let Err(m) = result {
        panic!("criterion {} failed: {}", criterion, m);
    }
}

fn ensure(cond: bool, message: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message.to_string())
    }
}

#[test]
fn criterion_01_blowdown_matrix_identity() {
    let run = || -> Result<(), String> {
        let start = Instant::now();
        let a = MonomialMap::from_rows(&[&[1, -6, -8], &[0, 1, -5], &[0, 0, 1]])
            .map_err(|e| e.to_string())?;
        let b = MonomialMap::from_rows(&[&[1, -3, -6], &[0, 1, -7], &[0, 0, 1]])
            .map_err(|e| e.to_string())?;
        let expect = MonomialMap::from_rows(&[&[1, -9, 28], &[0, 1, -12], &[0, 0, 1]])
            .map_err(|e| e.to_string())?;
        ensure(
            a.compose(&b).map_err(|e| e.to_string())? == expect,
            "product of the printed blow-down matrices",
        )?;
        ensure(start.elapsed().as_millis() < 1, "runtime under 1 ms")
    };
    report(1, "composition of printed blow-down matrices", run());
}

#[test]
fn criterion_02_containment_counterexample() {
    let run = || -> Result<(), String> {
        let a = MonomialMap::from_rows(&[&[1, -4, -1], &[0, 1, -8], &[0, 0, 1]])
            .map_err(|e| e.to_string())?;
        let b = MonomialMap::from_rows(&[&[1, 0, -4], &[0, 1, -6], &[0, 0, 1]])
            .map_err(|e| e.to_string())?;
        let q = MonomialMap::from_rows(&[&[1, -4, 19], &[0, 1, -14], &[0, 0, 1]])
            .map_err(|e| e.to_string())?;
        ensure(a.compose(&b).map_err(|e| e.to_string())? == q, "A*B = Q")?;

        let a_qinv = a.compose(&q.inverse()).map_err(|e| e.to_string())?;
        let q_ainv = q.compose(&a.inverse()).map_err(|e| e.to_string())?;
        let expect_aq = MonomialMap::from_rows(&[&[1, 0, -20], &[0, 1, 6], &[0, 0, 1]])
            .map_err(|e| e.to_string())?;
        let expect_qa = MonomialMap::from_rows(&[&[1, 0, 20], &[0, 1, -6], &[0, 0, 1]])
            .map_err(|e| e.to_string())?;
        ensure(a_qinv == expect_aq, "A*Q^{-1} matches the printed matrix")?;
        ensure(q_ainv == expect_qa, "Q*A^{-1} matches the printed matrix")?;
        ensure(
            !a_qinv.is_blowup_composition() && !q_ainv.is_blowup_composition(),
            "both transition matrices have a negative entry",
        )
    };
    report(
        2,
        "neither of the two printed cones contains the other",
        run(),
    );
}

#[test]
fn criterion_03_integrality_counterexample() {
    let run = || -> Result<(), String> {
        let p = parse_zpoly("z^2 - x1*(1 - x1/x2)").map_err(|e| e.to_string())?;
        let (integral, witness) = is_integral_over_formal(&p);
        ensure(!integral, "reported not integral")?;
        ensure(
            witness == Some(ExponentVector::from_ints(&[2, -1])),
            "witness exponent (2,-1)",
        )
    };
    report(3, "z^2 - x(1 - x/y) is not integral over k[[x,y]]", run());
}

#[test]
fn criterion_04_solver_golden_monomial() {
    let run = || -> Result<(), String> {
        let p = parse_zpoly("z^2 - x1*x2").map_err(|e| e.to_string())?;
        let roots = solve(&p, &SolveConfig::with_precision(rint(8))).map_err(|e| e.to_string())?;
        ensure(roots.len() == 2, "two roots")?;
        let half = ExponentVector::new(vec![rat(1, 2), rat(1, 2)]);
        let expect_minus = PuiseuxSeries::monomial(half.clone(), rint(-1));
        let expect_plus = PuiseuxSeries::monomial(half, rint(1));
        ensure(roots[0].series == expect_minus, "root -x1^(1/2) x2^(1/2)")?;
        ensure(roots[1].series == expect_plus, "root +x1^(1/2) x2^(1/2)")?;
        for r in &roots {
            ensure(r.certificate.is_identity(), "identity certificate")?;
            ensure(
                r.residual_floor == DegreeBound::Unbounded,
                "zero residual",
            )?;
            ensure(r.denominator == 2, "denominator d = 2")?;
        }
        Ok(())
    };
    report(4, "z^2 - x1 x2 solved exactly", run());
}

#[test]
fn criterion_05_solver_golden_binomial() {
    let run = || -> Result<(), String> {
        let start = Instant::now();
        let p = parse_zpoly("z^2 - x1 - x2").map_err(|e| e.to_string())?;
        let roots = solve(&p, &SolveConfig::with_precision(rint(6))).map_err(|e| e.to_string())?;
        ensure(roots.len() == 2, "two roots")?;
        // binomial-series oracle in prepared coordinates:
        // +- x2^(1/2) (1 + x1)^(1/2) = sum binom(1/2, k) x1^k x2^(1/2)
        let mut binom = vec![rint(1)];
        for k in 1..6usize {
            let prev = binom[k - 1].clone();
            let factor = (rat(1, 2) - rint(k as i64 - 1)) / rint(k as i64);
            binom.push(prev * factor);
        }
        for (sign, root) in [(-1i64, &roots[0]), (1i64, &roots[1])] {
            ensure(root.series.num_terms() == 6, "six terms below degree 6")?;
            for (k, c) in binom.iter().enumerate() {
                let e = ExponentVector::new(vec![rint(k as i64), rat(1, 2)]);
                ensure(
                    root.series.coefficient(&e) == c * rint(sign),
                    "binomial coefficient matches",
                )?;
            }
            ensure(
                root.branch_log.contains(&BranchEvent::Vertical),
                "vertical first step in the branch log",
            )?;
            let phi12 = MonomialMap::from_rows(&[&[1, 1], &[0, 1]]).map_err(|e| e.to_string())?;
            ensure(
                root.branch_log.iter().any(|ev| matches!(
                    ev,
                    BranchEvent::Prepared { map, e: Some(1) } if *map == phi12
                )),
                "phi_12 preparation with e = 1 in the branch log",
            )?;
            ensure(
                root.residual_floor.meets(&rint(6)),
                "residual floor at least 6",
            )?;
        }
        ensure(start.elapsed().as_secs() < 1, "runtime under 1 s")
    };
    report(5, "z^2 - x1 - x2 matches the binomial oracle at T = 6", run());
}

fn matches_root(f: &PuiseuxSeries, r: &PuiseuxRoot, t: &Rational) -> bool {
    let bound = DegreeBound::Finite(t.clone());
    let prepared_f = f.apply_map(&r.accumulated_map()).truncate(&bound);
    prepared_f == r.series.truncate(&bound)
}

fn multiset_recovered(planted: &[PuiseuxSeries], roots: &[PuiseuxRoot], t: &Rational) -> bool {
    if planted.len() != roots.len() {
        return false;
    }
    let mut idx: Vec<usize> = (0..planted.len()).collect();
    let mut found = false;
    permute(&mut idx, 0, &mut |perm| {
        if !found
            && planted
                .iter()
                .zip(perm.iter())
                .all(|(f, &j)| matches_root(f, &roots[j], t))
        {
            found = true;
        }
    });
    found
}

fn permute(idx: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == idx.len() {
        visit(idx);
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute(idx, k + 1, visit);
        idx.swap(k, i);
    }
}

#[test]
fn criterion_06_planted_root_suite() {
    let run = || -> Result<(), String> {
        let start = Instant::now();
        let t = rint(6);
        let failures: Vec<String> = (0..200u64)
            .into_par_iter()
            .filter_map(|seed| {
                let params = PlantParams {
                    n: 2 + (seed % 2) as usize,
                    m: 2 + ((seed / 2) % 2) as usize,
                    max_terms: 4,
                    max_denominator: 3,
                    blowdown_word: (seed % 3) as usize,
                };
                let inst = planted_instance(seed, &params);
                let cfg = SolveConfig::with_precision(t.clone());
                let solved = if inst.certificate.is_identity() {
                    solve(&inst.poly, &cfg)
                } else {
                    // lex-positive roots outside the quadrant: the equation's
                    // coefficients live in the cone of the planting blow-down
                    let coeffs: Result<Vec<_>, _> = inst
                        .poly
                        .coeffs()
                        .iter()
                        .map(|c| ConeRingElement::new(c.clone(), inst.certificate.clone()))
                        .collect();
                    match coeffs {
                        Ok(cs) => solve_over_cone_ring(&cs, &cfg),
                        Err(e) => Err(e),
                    }
                };
                match solved {
                    Err(e) => Some(format!("seed {}: {}", seed, e)),
                    Ok(roots) => {
                        if !roots.iter().all(|r| r.residual_floor.meets(&t)) {
                            Some(format!("seed {}: residual floor below 6", seed))
                        } else if !multiset_recovered(&inst.roots, &roots, &t) {
                            Some(format!("seed {}: root multiset not recovered", seed))
                        } else {
                            None
                        }
                    }
                }
            })
            .collect();
        ensure(
            failures.is_empty(),
            &format!("{} failed instances: {:?}", failures.len(), failures),
        )?;
        ensure(start.elapsed().as_secs() < 60, "runtime under 60 s")
    };
    report(6, "200 planted instances recovered at T = 6", run());
}

#[test]
fn criterion_07_principalization_suite() {
    let run = || -> Result<(), String> {
        let mut rng = StdRng::seed_from_u64(7);
        for case in 0..1000 {
            let n = rng.gen_range(1..=4usize);
            let count = rng.gen_range(1..=6usize);
            let points: Vec<ExponentVector> = (0..count)
                .map(|_| {
                    ExponentVector::from_ints(
                        &(0..n).map(|_| rng.gen_range(0..=8i64)).collect::<Vec<_>>(),
                    )
                })
                .collect();
            let set = LatticeSet::new(points).map_err(|e| e.to_string())?;
            let result = principalize(std::slice::from_ref(&set), 10_000)
                .map_err(|e| format!("case {}: {}", case, e))?;
            if !check_principalization(std::slice::from_ref(&set), &result)
                .map_err(|e| e.to_string())?
            {
                return Err(format!("case {}: postcondition failed", case));
            }
        }
        Ok(())
    };
    report(
        7,
        "1000 random principalizations, postcondition checked, no cap hits",
        run(),
    );
}

#[test]
fn criterion_08_s_cone_suite() {
    let run = || -> Result<(), String> {
        let mut rng = StdRng::seed_from_u64(8);
        for case in 0..500 {
            let n = rng.gen_range(2..=4usize);
            let word = rng.gen_range(0..=12usize);
            let m = random_blowdown_word(rng.gen(), n, word);
            for row in m.rows() {
                if !row.is_lex_positive() {
                    return Err(format!("case {}: row not lex-positive", case));
                }
            }
            if !m.inverse().is_blowup_composition() {
                return Err(format!("case {}: inverse has a negative entry", case));
            }
        }
        for case in 0..500 {
            let n = rng.gen_range(2..=4usize);
            let mut gens: Vec<ExponentVector> = (0..n)
                .map(|_| {
                    ExponentVector::from_ints(
                        &(0..n).map(|_| rng.gen_range(0..=4i64)).collect::<Vec<_>>(),
                    )
                })
                .collect();
            gens.retain(|g| !g.is_zero());
            // plant one lex-negative vector
            let mut coords = vec![0i64; n];
            let lead = rng.gen_range(0..n);
            coords[lead] = -rng.gen_range(1..=4i64);
            for c in coords.iter_mut().skip(lead + 1) {
                *c = rng.gen_range(-4..=4i64);
            }
            gens.push(ExponentVector::from_ints(&coords));
            let cone = Cone::new(gens).map_err(|e| e.to_string())?;
            if cone.is_s_cone().map_err(|e| e.to_string())? {
                return Err(format!("case {}: lex-negative generator accepted", case));
            }
        }
        Ok(())
    };
    report(
        8,
        "500 blow-down cones lex-positive with nonnegative inverses; 500 counterexamples rejected",
        run(),
    );
}

#[test]
fn criterion_09_automorphism_round_trip() {
    let run = || -> Result<(), String> {
        let mut rng = StdRng::seed_from_u64(9);
        for case in 0..300 {
            let n = rng.gen_range(2..=3usize);
            let f = random_quadrant_series(rng.gen(), n, 5);
            let word = rng.gen_range(0..=8usize);
            let m = if case % 2 == 0 {
                random_blowup_word(rng.gen(), n, word)
            } else {
                random_blowdown_word(rng.gen(), n, word)
            };
            if f.apply_map(&m).apply_map(&m.inverse()) != f {
                return Err(format!("case {}: round trip failed", case));
            }
        }
        for case in 0..300 {
            let n = 2;
            let f = random_quadrant_series(rng.gen(), n, 4);
            let g = random_quadrant_series(rng.gen(), n, 4);
            let m = random_blowup_word(rng.gen(), n, 6);
            let lhs = f.mul(&g).map_err(|e| e.to_string())?.apply_map(&m);
            let rhs = f
                .apply_map(&m)
                .mul(&g.apply_map(&m))
                .map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("case {}: multiplicativity failed", case));
            }
        }
        Ok(())
    };
    report(
        9,
        "300 automorphism round trips and 300 multiplicativity checks",
        run(),
    );
}

#[test]
fn criterion_10_closure_round_trip() {
    let run = || -> Result<(), String> {
        let t = rint(6);
        let mut rng = StdRng::seed_from_u64(10);
        let mut done = 0;
        let mut attempt = 0u64;
        while done < 50 {
            attempt += 1;
            let n = rng.gen_range(1..=2usize);
            // force denominator exactly 2
            let base = random_quadrant_series(rng.gen(), n, 3);
            let mut half_coords = vec![rint(0); n];
            half_coords[0] = rat(1, 2);
            let f = base
                .add(&PuiseuxSeries::monomial(
                    ExponentVector::new(half_coords),
                    rint(1),
                ))
                .map_err(|e| e.to_string())?;
            if f.denominator() != 2 {
                continue;
            }
            done += 1;
            let p = minimal_polynomial(&f)
                .map_err(|e| format!("attempt {}: {}", attempt, e))?;
            if !p.is_monic() {
                return Err(format!("attempt {}: minpoly not monic", attempt));
            }
            for c in p.coeffs() {
                for e in c.newton_diagram() {
                    if !e.is_integral() {
                        return Err(format!(
                            "attempt {}: coefficient exponent not in the d = 1 lattice",
                            attempt
                        ));
                    }
                }
            }
            let residual = p.substitute_root(&f).map_err(|e| e.to_string())?;
            let floor = match residual.min_total_degree() {
                Some(d) => DegreeBound::Finite(d),
                None => residual.precision().clone(),
            };
            if !floor.meets(&t) {
                return Err(format!("attempt {}: residual floor below T", attempt));
            }
        }
        Ok(())
    };
    report(
        10,
        "50 minimal polynomials with d = 2: monic, integral lattice, residual >= T",
        run(),
    );
}
