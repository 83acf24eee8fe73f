use puiseux_core::newton::{solve_sequential, SolveConfig};
use puiseux_core::parse::parse_zpoly;
use puiseux_core::rational::rint;

fn main() {
    // the pulled-back equation of the failing instance, rebuilt from its roots
    // g1 = 3/2 x2^2 x4^4, g2 = 1/2 x1^2, g3 = 1/2 x2^2 x4^4 + 2 x1^2 x3 + 3/2 x1^2 x2^2 x4^3
    let g1 = "3/2*x2^2*x4^4";
    let g2 = "1/2*x1^2";
    let g3 = "(1/2*x2^2*x4^4 + 2*x1^2*x3 + 3/2*x1^2*x2^2*x4^3)";
    let poly = parse_zpoly(&format!("(z - {})*(z - {})*(z - {})", g1, g2, g3)).unwrap();
    let cfg = SolveConfig::with_precision(rint(6));
    match solve_sequential(&poly, &cfg) {
        Ok(roots) => {
            for r in roots {
                println!("root: {} floor {}", r.series, r.residual_floor);
                println!("  log {:?}", r.branch_log);
            }
        }
        Err(e) => println!("ERROR {}", e),
    }
}
