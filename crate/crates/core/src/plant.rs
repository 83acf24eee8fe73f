//! Deterministic generation of planted-root instances for tests and
//! benches: random finite lex-positive Puiseux series, expanded into a monic
//! equation whose root multiset is known by construction.

use crate::blowup::MonomialMap;
use crate::lattice::ExponentVector;
use crate::rational::{rat, Rational};
use crate::series::PuiseuxSeries;
use crate::zpoly::ZPolynomial;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Parameters for one random instance.
#[derive(Clone, Debug)]
pub struct PlantParams {
    /// Number of variables.
    pub n: usize,
    /// Number of planted roots (= degree in z).
    pub m: usize,
    /// Maximum number of terms per root.
    pub max_terms: usize,
    /// Largest exponent denominator per root.
    pub max_denominator: u32,
    /// Length of the random blow-down word applied to the roots (0 keeps
    /// supports in the first quadrant).
    pub blowdown_word: usize,
}

impl Default for PlantParams {
    fn default() -> Self {
        PlantParams {
            n: 2,
            m: 2,
            max_terms: 4,
            max_denominator: 3,
            blowdown_word: 0,
        }
    }
}

/// A monic equation together with the data that certifies its roots.
#[derive(Clone, Debug)]
pub struct PlantedInstance {
    /// The expanded equation `prod (z - f_i)`, with `f_i = certificate(g_i)`.
    pub poly: ZPolynomial,
    /// Common blow-down applied to the first-quadrant roots; identity when
    /// `blowdown_word` is 0.
    pub certificate: MonomialMap,
    /// The planted roots in the original coordinates of `poly`.
    pub roots: Vec<PuiseuxSeries>,
    /// The same roots pulled back to the first quadrant.
    pub quadrant_roots: Vec<PuiseuxSeries>,
}

/// Generate a planted instance. The roots are pairwise distinct in their
/// lex-leading terms, which keeps every characteristic equation of the
/// Newton procedure free of repeated roots, so the solver never needs the
/// square-free reduction it deliberately does not implement.
pub fn planted_instance(seed: u64, params: &PlantParams) -> PlantedInstance {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = params.n;
    assert!(n >= 1 && params.m >= 1);

    let mut quadrant_roots: Vec<PuiseuxSeries> = Vec::new();
    while quadrant_roots.len() < params.m {
        let g = random_series(&mut rng, params);
        if g.is_zero() {
            continue;
        }
        let lead = g.leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let clash = quadrant_roots.iter().any(|h| {
            h.leading_term()
                .map(|(e, c)| (*e == lead.0) && (*c == lead.1))
                .unwrap_or(false)
        });
        if !clash {
            quadrant_roots.push(g);
        }
    }

    let certificate = random_blowdown(&mut rng, n, params.blowdown_word);
    let roots: Vec<PuiseuxSeries> = quadrant_roots
        .iter()
        .map(|g| g.apply_map(&certificate))
        .collect();

    let mut poly = ZPolynomial::linear_root(&roots[0]);
    for f in &roots[1..] {
        poly = poly.mul(&ZPolynomial::linear_root(f)).expect("same vars");
    }

    PlantedInstance {
        poly,
        certificate,
        roots,
        quadrant_roots,
    }
}

fn random_series(rng: &mut StdRng, params: &PlantParams) -> PuiseuxSeries {
    let n = params.n;
    let den = rng.gen_range(1..=params.max_denominator) as i64;
    let terms = rng.gen_range(1..=params.max_terms);
    let coeff_pool: [(i64, i64); 6] = [(1, 1), (-1, 1), (1, 2), (-1, 2), (2, 1), (3, 2)];
    let mut out = PuiseuxSeries::zero(n);
    for _ in 0..terms {
        let coords: Vec<Rational> = (0..n)
            .map(|_| rat(rng.gen_range(0..=2 * den), den))
            .collect();
        let e = ExponentVector::new(coords);
        if e.is_zero() {
            // keep supports lex-positive: no constant terms
            continue;
        }
        let (p, q) = coeff_pool[rng.gen_range(0..coeff_pool.len())];
        out = out
            .add(&PuiseuxSeries::monomial(e, rat(p, q)))
            .expect("same vars");
    }
    out
}

fn random_blowdown(rng: &mut StdRng, n: usize, word: usize) -> MonomialMap {
    let mut map = MonomialMap::identity(n);
    if n < 2 {
        return map;
    }
    for _ in 0..word {
        let i = rng.gen_range(0..n - 1);
        let j = rng.gen_range(i + 1..n);
        let down = MonomialMap::elementary(n, i, j, -1).expect("valid indices");
        map = map.compose(&down).expect("same dimension");
    }
    map
}

/// Random blowup composition of the given word length (used by property
/// suites to make S-cones).
pub fn random_blowup_word(seed: u64, n: usize, word: usize) -> MonomialMap {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut map = MonomialMap::identity(n);
    if n < 2 {
        return map;
    }
    for _ in 0..word {
        let i = rng.gen_range(0..n - 1);
        let j = rng.gen_range(i + 1..n);
        let up = MonomialMap::elementary(n, i, j, 1).expect("valid indices");
        map = map.compose(&up).expect("same dimension");
    }
    map
}

/// Random blow-down composition (inverse of a random blowup word).
pub fn random_blowdown_word(seed: u64, n: usize, word: usize) -> MonomialMap {
    random_blowup_word(seed, n, word).inverse()
}

/// Random finite series with nonnegative support and the given term budget,
/// for round-trip and homomorphism property tests.
pub fn random_quadrant_series(seed: u64, n: usize, max_terms: usize) -> PuiseuxSeries {
    let params = PlantParams {
        n,
        m: 1,
        max_terms,
        max_denominator: 3,
        blowdown_word: 0,
    };
    let mut rng = StdRng::seed_from_u64(seed);
    random_series(&mut rng, &params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_roots_are_distinct_and_lex_positive() {
        for seed in 0..20 {
            let params = PlantParams {
                n: 3,
                m: 3,
                blowdown_word: 2,
                ..PlantParams::default()
            };
            let inst = planted_instance(seed, &params);
            assert_eq!(inst.roots.len(), 3);
            for f in &inst.roots {
                for e in f.newton_diagram() {
                    assert!(e.is_lex_positive());
                }
            }
            assert!(inst.poly.is_monic());
            for f in &inst.roots {
                assert!(inst.poly.substitute_root(f).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn quadrant_pullback_matches() {
        let inst = planted_instance(
            7,
            &PlantParams {
                blowdown_word: 3,
                ..PlantParams::default()
            },
        );
        let inverse = inst.certificate.inverse();
        for (f, g) in inst.roots.iter().zip(&inst.quadrant_roots) {
            assert_eq!(&f.apply_map(&inverse), g);
            assert!(g.has_nonnegative_support());
        }
    }
}
