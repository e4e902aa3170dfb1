//! Shared generators for the integration test targets: seeded random
//! ideals on a given graph and seeded random acyclic graphs.
// each test target uses a different subset of these helpers
#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lpa::field::FieldSpec;
use lpa::graph::Graph;
use lpa::ideal::IdealNF;
use lpa::poly::Poly;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random nonzero polynomial of degree 1..=max_deg.
pub fn random_poly(field: FieldSpec, max_deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    loop {
        let deg = rng.gen_range(1..=max_deg);
        let mut coeffs: Vec<i64> = (0..deg).map(|_| rng.gen_range(-3..=3)).collect();
        coeffs.push(rng.gen_range(1..=3)); // nonzero leading coefficient
        let f = Poly::from_ints(field, &coeffs);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random ideal in normal-form domain: a random admissible pair plus a
/// random subset of the exit-free quotient cycles with random polynomials.
/// May be zero, graded, non-graded, or the whole algebra.
pub fn random_ideal(g: &Arc<Graph>, field: FieldSpec, rng: &mut ChaCha8Rng) -> IdealNF {
    let pairs = g.admissible_pairs();
    let pair = pairs[rng.gen_range(0..pairs.len())].clone();
    if pair.h.len() == g.n() {
        return IdealNF::whole(g.clone(), field);
    }
    let q = g.quotient_graph(&pair).expect("admissible pair");
    let mut parts = vec![];
    for c in q.cycles_without_exits() {
        if rng.gen_bool(0.6) {
            parts.push((c, random_poly(field, 3, rng)));
        }
    }
    IdealNF::make(g.clone(), field, pair, parts).expect("generated ideal is valid")
}

/// A random proper ideal (retries away from the whole algebra).
pub fn random_proper_ideal(g: &Arc<Graph>, field: FieldSpec, rng: &mut ChaCha8Rng) -> IdealNF {
    loop {
        let i = random_ideal(g, field, rng);
        if !i.is_whole() {
            return i;
        }
    }
}

/// A random acyclic graph on 2..=5 vertices with finite multiplicities,
/// edges pointing from lower to higher index only.
pub fn random_acyclic_graph(rng: &mut ChaCha8Rng) -> Graph {
    let n: usize = rng.gen_range(2..=5);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut bundles = vec![];
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.4) {
                let mult = lpa::graph::Mult::Finite(rng.gen_range(1..=2));
                bundles.push((format!("e{i}_{j}"), names[i].clone(), names[j].clone(), mult));
            }
        }
    }
    Graph::new(names, bundles).expect("generated graph is valid")
}
