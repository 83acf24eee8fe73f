use puiseux_core::closure::{solve_over_cone_ring, ConeRingElement};
use puiseux_core::newton::SolveConfig;
use puiseux_core::plant::{planted_instance, PlantParams};
use puiseux_core::rational::{rint, DegreeBound};

fn main() {
    let seed = 23u64;
    let params = PlantParams {
        n: 2 + (seed % 3) as usize,
        m: 2 + ((seed / 3) % 2) as usize,
        max_terms: 4,
        max_denominator: 1 + (seed % 3) as u32,
        blowdown_word: (seed % 4) as usize,
    };
    let inst = planted_instance(seed, &params);
    println!("certificate: {:?}", inst.certificate);
    for f in &inst.roots {
        println!("planted: {}", f);
    }
    let t = rint(6);
    let cfg = SolveConfig::with_precision(t.clone());
    let coeffs: Vec<_> = inst.poly.coeffs().iter()
        .map(|c| ConeRingElement::new(c.clone(), inst.certificate.clone()).unwrap())
        .collect();
    let roots = solve_over_cone_ring(&coeffs, &cfg).unwrap();
    let bound = DegreeBound::Finite(t.clone());
    for r in &roots {
        println!("root: {} cert {:?} floor {}\n  log {:?}", r.series, r.certificate, r.residual_floor, r.branch_log);
        for f in &inst.roots {
            let pf = f.apply_map(&r.accumulated_map()).truncate(&bound);
            println!("  vs planted {} -> prepared {}", f, pf);
        }
        println!("  series trunc: {}", r.series.truncate(&bound));
    }
}
