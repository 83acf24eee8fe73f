use puiseux_core::closure::ConeRingElement;
use puiseux_core::cone::common_enclosing;
use puiseux_core::newton::{
    admissible_segments, e1_diagram, solve_characteristic, step_substitute,
    characteristic_equation, CharacteristicEquation, SolveConfig,
};
use puiseux_core::plant::{planted_instance, PlantParams};
use puiseux_core::rational::{rint, DegreeBound, Rational};
use puiseux_core::zpoly::ZPolynomial;
use puiseux_core::{MonomialMap, PuiseuxSeries};

fn main() {
    let seed = 23u64;
    let params = PlantParams {
        n: 4, m: 3, max_terms: 4, max_denominator: 3, blowdown_word: 3,
    };
    let inst = planted_instance(seed, &params);
    // replicate the cone-ring pull-back
    let mut merged = MonomialMap::identity(4);
    for c in inst.poly.coeffs() {
        if c.is_zero() { continue; }
        let elt = ConeRingElement::new(c.clone(), inst.certificate.clone()).unwrap();
        merged = common_enclosing(&merged, &elt.cone).unwrap();
    }
    println!("merged: {:?}", merged);
    let inv = merged.inverse();
    let pulled = inst.poly.apply_map(&inv);
    println!("pulled-back roots:");
    for f in &inst.roots {
        println!("  {}", f.apply_map(&inv));
    }
    let dg = e1_diagram(&pulled);
    let segs = admissible_segments(&dg, true);
    for s in &segs {
        println!("segment gamma {} beta {}", s.gamma(), s.beta);
    }
    // the vertical characteristic equation
    let vert = segs.iter().find(|s| s.is_vertical()).unwrap();
    let working = DegreeBound::Finite(rint(6));
    let c = characteristic_equation(&pulled, vert, &working).unwrap();
    let cfg = SolveConfig::with_precision(rint(6));
    if let CharacteristicEquation::Series(ref cz) = c {
        println!("C_vert degree {}", cz.degree());
        let alphas = solve_characteristic(&c, &cfg).unwrap();
        for (alpha, lift) in &alphas {
            println!("alpha: {} (precision {}) lift {:?}", alpha, alpha.precision(), lift);
            // substitute and look at the next node
            let alpha_n = alpha.lift_prepend_zero();
            let next = step_substitute(&pulled, &Rational::from_integer(0.into()), &alpha_n, &Rational::from_integer(0.into())).unwrap();
            let dg2 = e1_diagram(&next);
            let segs2 = admissible_segments(&dg2, false);
            for s in &segs2 {
                println!("  next segment gamma {} beta {} span {}", s.gamma(), s.beta, s.root_span());
            }
            if segs2.is_empty() {
                println!("  next: NO segments; poly z-deg {} n-terms {:?}", next.degree(),
                    next.coeffs().iter().map(|c| c.num_terms()).collect::<Vec<_>>());
                for (i, co) in next.coeffs().iter().enumerate() {
                    println!("    coeff[{}] (T={}): {}", i, co.precision(), co);
                }
            }
        }
    }
    let _ = ZPolynomial::new(vec![PuiseuxSeries::one(1)]);
}
