use puiseux_core::closure::{solve_over_cone_ring, ConeRingElement};
use puiseux_core::newton::{solve_sequential, solve, PuiseuxRoot, SolveConfig};
use puiseux_core::plant::{planted_instance, PlantParams};
use puiseux_core::rational::{rint, DegreeBound, Rational};
use puiseux_core::series::PuiseuxSeries;

fn matches_root(f: &PuiseuxSeries, r: &PuiseuxRoot, t: &Rational) -> bool {
    let bound = DegreeBound::Finite(t.clone());
    let prepared_f = f.apply_map(&r.accumulated_map()).truncate(&bound);
    prepared_f == r.series.truncate(&bound)
}

fn permutation_match(fs: &[PuiseuxSeries], rs: &[PuiseuxRoot], t: &Rational) -> bool {
    let m = fs.len();
    if rs.len() != m { return false; }
    let mut idx: Vec<usize> = (0..m).collect();
    let mut ok = false;
    permute(&mut idx, 0, &mut |perm: &[usize]| {
        if !ok && fs.iter().zip(perm.iter()).all(|(f, &j)| matches_root(f, &rs[j], t)) {
            ok = true;
        }
    });
    ok
}

fn permute(idx: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == idx.len() { visit(idx); return; }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute(idx, k + 1, visit);
        idx.swap(k, i);
    }
}

fn main() {
    let t = rint(6);
    let mut failures = 0u32;
    let mut mismatch = 0u32;
    for seed in 0..1000u64 {
        let params = PlantParams {
            n: 2 + (seed % 3) as usize,           // n in 2..=4
            m: 2 + ((seed / 3) % 2) as usize,     // m in 2..=3
            max_terms: 4,
            max_denominator: 1 + (seed % 3) as u32,
            blowdown_word: (seed % 4) as usize,
        };
        let inst = planted_instance(seed, &params);
        let cfg = SolveConfig::with_precision(t.clone());
        let solved = if inst.certificate.is_identity() {
            solve(&inst.poly, &cfg)
        } else {
            let coeffs: Result<Vec<_>, _> = inst.poly.coeffs().iter()
                .map(|c| ConeRingElement::new(c.clone(), inst.certificate.clone()))
                .collect();
            coeffs.and_then(|cs| solve_over_cone_ring(&cs, &cfg))
        };
        match solved {
            Err(e) => { failures += 1; println!("seed {} n={} m={} w={}: ERROR {}", seed, params.n, params.m, params.blowdown_word, e); }
            Ok(roots) => {
                if !roots.iter().all(|r| r.residual_floor.meets(&t)) {
                    failures += 1; println!("seed {}: floor below T", seed);
                } else if !permutation_match(&inst.roots, &roots, &t) {
                    mismatch += 1; println!("seed {} n={} m={} w={}: multiset mismatch", seed, params.n, params.m, params.blowdown_word);
                }
                // determinism cross-check on a subsample
                if seed % 37 == 0 && inst.certificate.is_identity() {
                    let b = solve_sequential(&inst.poly, &cfg).unwrap();
                    assert_eq!(roots.len(), b.len());
                    for (x, y) in roots.iter().zip(&b) {
                        assert_eq!(x.series, y.series);
                        assert_eq!(x.branch_log, y.branch_log);
                    }
                }
            }
        }
    }
    println!("errors: {}, mismatches: {} / 1000", failures, mismatch);
}
